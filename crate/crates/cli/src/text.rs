//! Plain-text rendering of reports.

use std::fmt::Write;

use sym2_core::perm::{SplitnessVerdict, Witness};

use crate::report::{AnalysisReport, CheckReport, GroupFacts, GroupoidReport, InvariantSummary, TableReport};

fn verdict_word(split: Option<bool>) -> &'static str {
    match split {
        Some(true) => "split",
        Some(false) => "non-split",
        None => "inconclusive",
    }
}

fn facts(out: &mut String, g: &GroupFacts) {
    let _ = writeln!(out, "group        {} (order {})", g.reference, g.order);
    let _ = writeln!(out, "             |Z| = {}  |Aut| = {}  |Inn| = {}  |Out| = {}", g.center, g.aut, g.inn, g.out);
}

fn invariants(out: &mut String, s: &InvariantSummary, indent: &str) {
    let action = if s.action_trivial { "trivial action" } else { "nontrivial action" };
    let _ = writeln!(out, "{indent}pi0          {} (order {})", s.pi0, s.pi0_order);
    let _ = writeln!(out, "{indent}pi1          {} (order {}, {action})", s.pi1, s.pi1_order);
    let class = match s.class_trivial {
        Some(true) => "trivial",
        Some(false) => "nontrivial",
        None => "not computed",
    };
    let _ = writeln!(out, "{indent}class        {class}");
    if let Some(e) = &s.equivalent_to {
        let _ = writeln!(out, "{indent}equivalent   {e}");
    }
}

fn verdict(out: &mut String, v: &SplitnessVerdict, indent: &str) {
    let _ = writeln!(out, "{indent}{:<16} {}", v.method.name(), verdict_word(v.split));
    match &v.witness {
        Witness::Trivializer { trivializer, .. } => {
            let _ = writeln!(out, "{indent}  trivializing 2-cochain with {} nonzero values", trivializer.entries.len());
        }
        Witness::Obstruction { .. } => {
            let _ = writeln!(out, "{indent}  no 2-cochain bounds the classifying cocycle");
        }
        Witness::Lifting { section, .. } => {
            let _ = writeln!(out, "{indent}  normalized lifting over section {section:?}");
        }
        Witness::NoLifting { sections_checked, nodes_visited } => {
            let _ = writeln!(out, "{indent}  no lifting over {sections_checked} sections ({nodes_visited} nodes)");
        }
        Witness::Certificate(c) => {
            let _ = writeln!(out, "{indent}  class {} squares to the identity class", c.class_label);
            for m in &c.members {
                let conj: Vec<String> = m.conjugator_labels.iter().map(|(g, _)| format!("c_{g}")).collect();
                let moved: Vec<String> = m.conjugator_labels.iter().map(|(g, h)| format!("{}({g}) = {h} ≠ {g}", m.label)).collect();
                let _ = writeln!(out, "{indent}  {}² = {} = {}; {}", m.label, m.square_label, conj.join(" = "), moved.join(", "));
            }
        }
        Witness::Inconclusive { reason } => {
            let _ = writeln!(out, "{indent}  {reason}");
        }
    }
}

pub fn analysis(r: &AnalysisReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "input        {}", r.input);
    facts(&mut out, &r.group);
    invariants(&mut out, &r.invariants, "");
    let _ = writeln!(out, "verdict      {}", verdict_word(r.split));
    for v in &r.verdicts {
        verdict(&mut out, v, "  ");
    }
    if let Some(t) = r.timing_ms {
        let _ = writeln!(out, "time         {t} ms");
    }
    out
}

pub fn groupoid(r: &GroupoidReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "input        {}", r.input);
    for t in &r.truncations {
        let _ = writeln!(out, "truncated    {t}");
    }
    for (i, c) in r.components.iter().enumerate() {
        let _ = writeln!(out, "component {i}  {}×({})  order {}", c.multiplicity, c.sources.join(" ≅ "), c.group.order);
        invariants(&mut out, &c.invariants, "  ");
        for v in &c.verdicts {
            verdict(&mut out, v, "  ");
        }
    }
    match &r.assembled {
        Some(a) => {
            let _ = writeln!(out, "assembled");
            invariants(&mut out, a, "  ");
        }
        None => {
            let _ = writeln!(out, "assembled    not built");
        }
    }
    if let Some(n) = &r.assembly_note {
        let _ = writeln!(out, "note         {n}");
    }
    let _ = writeln!(out, "verdict      {}", verdict_word(r.split));
    if let Some(t) = r.timing_ms {
        let _ = writeln!(out, "time         {t} ms");
    }
    out
}

pub fn table(r: &TableReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{:>4}  {:>6}  {:>5}  {:>5}  {:<12}  {:<12}  {:<13}  equivalent", "n", "|G|", "|Z|", "|Out|", "pi0", "pi1", "verdict");
    for row in &r.rows {
        let eq = row.invariants.equivalent_to.as_deref().unwrap_or("?");
        let _ = writeln!(
            out,
            "{:>4}  {:>6}  {:>5}  {:>5}  {:<12}  {:<12}  {:<13}  {eq}",
            row.n,
            row.group.order,
            row.group.center,
            row.group.out,
            row.invariants.pi0,
            row.invariants.pi1,
            verdict_word(row.split)
        );
    }
    if let Some(t) = r.timing_ms {
        let _ = writeln!(out, "time {t} ms");
    }
    out
}

pub fn check(r: &CheckReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "seed {}  trials {}", r.seed, r.trials);
    for s in &r.suites {
        let _ = writeln!(out, "{}  {} ({} cases)", if s.passed() { "PASS" } else { "FAIL" }, s.name, s.cases);
        for f in &s.failures {
            let _ = writeln!(out, "      {f}");
        }
    }
    if let Some(t) = r.timing_ms {
        let _ = writeln!(out, "time {t} ms");
    }
    out
}

//! Report types (schema 1) and the code that fills them.

use serde::{Deserialize, Serialize};
use sym2_core::groupoid::{assemble_with, GroupoidSpec, InvariantCache};
use sym2_core::perm::{decide, Method, SplitnessVerdict, SymInvariants, Witness};
use sym2_core::two_group::{group_name, TwoGroupPresentation};
use sym2_core::{Error, FiniteGroup};

use crate::suites::SuiteResult;
use crate::CliError;

pub const SCHEMA: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupFacts {
    pub reference: String,
    pub order: usize,
    pub center: usize,
    pub aut: usize,
    pub inn: usize,
    pub out: usize,
}

impl GroupFacts {
    pub fn of(inv: &SymInvariants) -> Self {
        let o = &inv.outer;
        GroupFacts {
            reference: o.base().reference(),
            order: o.base().order(),
            center: inv.center.embedding.len(),
            aut: o.aut().order(),
            inn: o.inn().len(),
            out: o.out().order(),
        }
    }
}

/// `pi0`, `pi1`, the action and the class of a presentation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantSummary {
    pub pi0: String,
    pub pi0_order: usize,
    pub pi1: String,
    pub pi1_order: usize,
    pub action_trivial: bool,
    /// `None` when the class was not decided.
    pub class_trivial: Option<bool>,
    pub equivalent_to: Option<String>,
}

impl InvariantSummary {
    pub fn of(t: &TwoGroupPresentation, class_trivial: Option<bool>) -> Self {
        InvariantSummary {
            pi0: group_name(t.pi0()),
            pi0_order: t.pi0().order(),
            pi1: group_name(t.pi1().coeff()),
            pi1_order: t.pi1().coeff().order(),
            action_trivial: t.pi1().is_trivial_action(),
            class_trivial,
            equivalent_to: class_trivial.map(|s| t.describe(s)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub schema: u32,
    pub command: String,
    pub input: String,
    pub group: GroupFacts,
    pub invariants: InvariantSummary,
    pub verdicts: Vec<SplitnessVerdict>,
    pub split: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentReport {
    pub multiplicity: usize,
    pub sources: Vec<String>,
    pub group: GroupFacts,
    pub invariants: InvariantSummary,
    pub verdicts: Vec<SplitnessVerdict>,
    pub split: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupoidReport {
    pub schema: u32,
    pub command: String,
    pub input: String,
    /// Range terms such as `symmetric:0..6`, each a truncation of an infinite family.
    pub truncations: Vec<String>,
    pub components: Vec<ComponentReport>,
    /// Invariants of the assembled presentation; absent when it exceeds the caps.
    pub assembled: Option<InvariantSummary>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub assembly_note: Option<String>,
    pub split: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub n: usize,
    pub group: GroupFacts,
    pub invariants: InvariantSummary,
    pub split: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableReport {
    pub schema: u32,
    pub command: String,
    pub family: String,
    pub rows: Vec<TableRow>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub schema: u32,
    pub command: String,
    pub seed: u64,
    pub trials: usize,
    pub suites: Vec<SuiteResult>,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

/// Run each method; a section search over budget becomes an inconclusive
/// verdict. Any two decided verdicts must agree.
pub fn run_methods(inv: &SymInvariants, methods: &[Method]) -> Result<(Vec<SplitnessVerdict>, Option<bool>), CliError> {
    let mut verdicts = Vec::with_capacity(methods.len());
    for &m in methods {
        let v = match decide(inv, m) {
            Ok(v) => v,
            Err(Error::BudgetExhausted(reason)) => {
                SplitnessVerdict { split: None, method: m, witness: Witness::Inconclusive { reason } }
            }
            Err(e) => return Err(e.into()),
        };
        verdicts.push(v);
    }
    let decided: Vec<(Method, bool)> = verdicts.iter().filter_map(|v| v.split.map(|s| (v.method, s))).collect();
    if let Some(&(m0, s0)) = decided.first() {
        if let Some(&(m1, s1)) = decided.iter().find(|d| d.1 != s0) {
            return Err(CliError::Disagreement(format!("{m0} says split={s0} but {m1} says split={s1}")));
        }
        return Ok((verdicts, Some(s0)));
    }
    Ok((verdicts, None))
}

pub fn analysis(input: &str, inv: &SymInvariants, methods: &[Method]) -> Result<AnalysisReport, CliError> {
    let (verdicts, split) = run_methods(inv, methods)?;
    let class_trivial = match verdicts.iter().find(|v| v.method == Method::Coboundary) {
        Some(v) => v.split,
        None => inv.presentation.is_split().ok(),
    };
    Ok(AnalysisReport {
        schema: SCHEMA,
        command: "analyze".into(),
        input: input.into(),
        group: GroupFacts::of(inv),
        invariants: InvariantSummary::of(&inv.presentation, class_trivial),
        verdicts,
        split,
        timing_ms: None,
    })
}

pub fn groupoid(input: &str, spec: &GroupoidSpec, methods: &[Method], cache: &mut InvariantCache) -> Result<GroupoidReport, CliError> {
    let mut components = Vec::new();
    for c in &spec.components {
        let inv = cache.get(&c.group)?;
        let (verdicts, split) = run_methods(&inv, methods)?;
        let class = inv.presentation.is_split().ok();
        components.push(ComponentReport {
            multiplicity: c.multiplicity,
            sources: c.sources.clone(),
            group: GroupFacts::of(&inv),
            invariants: InvariantSummary::of(&inv.presentation, class),
            verdicts,
            split,
        });
    }
    let split = components.iter().try_fold(true, |acc, c| c.split.map(|s| acc && s));
    let (assembled, note) = match assemble_with(spec, cache) {
        Ok(a) => match a.presentation.is_split() {
            Ok(global) => {
                if split.is_some_and(|s| s != global) {
                    return Err(CliError::Disagreement(format!(
                        "assembled class triviality {global} disagrees with the components"
                    )));
                }
                (Some(InvariantSummary::of(&a.presentation, Some(global))), None)
            }
            Err(e @ Error::CapExceeded { .. }) => (Some(InvariantSummary::of(&a.presentation, None)), Some(e.to_string())),
            Err(e) => return Err(e.into()),
        },
        Err(e @ Error::CapExceeded { .. }) => (None, Some(e.to_string())),
        Err(e) => return Err(e.into()),
    };
    Ok(GroupoidReport {
        schema: SCHEMA,
        command: "groupoid".into(),
        input: input.into(),
        truncations: spec.truncations.clone(),
        components,
        assembled,
        assembly_note: note,
        split,
        timing_ms: None,
    })
}

pub fn table_row(n: usize, g: &FiniteGroup, cache: &mut InvariantCache, methods: &[Method]) -> Result<TableRow, CliError> {
    let inv = cache.get(g)?;
    let (_, split) = run_methods(&inv, methods)?;
    let class = inv.presentation.is_split().ok();
    Ok(TableRow { n, group: GroupFacts::of(&inv), invariants: InvariantSummary::of(&inv.presentation, class), split })
}

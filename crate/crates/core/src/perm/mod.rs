//! The permutation 2-group `Sym(G)` of a finite group: its invariants
//! `(Out(G), Z(G), alpha)`, the classifying 3-cocycle, and three splitness
//! deciders.
//!
//! The cocycle attached to an épinglage `(s, t)` is
//! `z(a, b, c) = s_a(T(b, c)) · T(a, bc) · T(ab, c)^-1 · T(a, b)^-1`
//! with `T(x, y) = t(s_x ∘ s_y)`.

pub mod cells;
pub mod coproduct;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::autos::{automorphism_group_arc, dihedral_degree, Epinglage, OuterStructure};
use crate::caps;
use crate::cohomology::{is_coboundary, is_cocycle, Cochain, CochainJson, GModule};
use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup};
use crate::two_group::TwoGroupPresentation;

pub use cells::{sym_cell, sym_compose, sym_object_tensor, sym_tensor, SymCell};

/// `Z(G)` as an `Out(G)`-module: `[phi] ◁ z = s[phi](z)`.
#[derive(Clone, Debug)]
pub struct CenterModule {
    pub module: Arc<GModule>,
    /// Module index to base element.
    pub embedding: Vec<Elem>,
    position: HashMap<Elem, Elem>,
}

impl CenterModule {
    pub fn new(outer: &OuterStructure) -> Result<Self> {
        let g = outer.base();
        let center = g.center();
        let (zg, embedding) = g.subgroup(&center)?;
        let zg = zg.with_family_tag(format!("center({})", g.reference()));
        let position: HashMap<Elem, Elem> = embedding.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        for &i in outer.inn() {
            let phi = outer.aut_element(i);
            if let Some(&z) = embedding.iter().find(|&&z| phi.apply(z) != z) {
                return Err(Error::Internal(format!("inner automorphism {i} moves central element {z}")));
            }
        }
        let section = outer.section().to_vec();
        let module = GModule::from_fn(Arc::new(outer.out().clone()), Arc::new(zg), |o, k| {
            position[&outer.aut_element(section[o]).apply(embedding[k])]
        })?;
        Ok(CenterModule { module: Arc::new(module), embedding, position })
    }

    /// Module index of a central element.
    pub fn index_of(&self, g: Elem) -> Option<Elem> {
        self.position.get(&g).copied()
    }
}

/// Output of [`sym_invariants`].
#[derive(Clone, Debug)]
pub struct SymInvariants {
    pub outer: Arc<OuterStructure>,
    pub center: CenterModule,
    pub presentation: TwoGroupPresentation,
}

impl SymInvariants {
    pub fn base(&self) -> &FiniteGroup {
        self.outer.base()
    }
}

pub fn sym_invariants(g: &FiniteGroup) -> Result<SymInvariants> {
    sym_invariants_from(Arc::new(automorphism_group_arc(Arc::new(g.clone()))?))
}

pub fn sym_invariants_from(outer: Arc<OuterStructure>) -> Result<SymInvariants> {
    let center = CenterModule::new(&outer)?;
    let z = classifying_cocycle_with(&outer, &center, outer.epinglage())?;
    let presentation = TwoGroupPresentation::new(z)?;
    Ok(SymInvariants { outer, center, presentation })
}

/// The classifying cocycle of the canonical épinglage.
pub fn classifying_cocycle(g: &FiniteGroup) -> Result<Cochain> {
    Ok(sym_invariants(g)?.presentation.z().clone())
}

/// The classifying cocycle of an arbitrary épinglage, valued in `Z(G)`.
pub fn classifying_cocycle_with(outer: &OuterStructure, center: &CenterModule, ep: &Epinglage) -> Result<Cochain> {
    outer.check_epinglage(ep)?;
    let g = outer.base();
    let aut = outer.aut();
    let out = outer.out();
    let s = &ep.section;
    let t = &ep.conjugator;
    let tt = |x: usize, y: usize| t[aut.mul(s[x], s[y])];
    let mut escaped = None;
    let z = Cochain::from_fn(center.module.clone(), 3, |v| {
        let (a, b, c) = (v[0], v[1], v[2]);
        let x = outer.aut_element(s[a]).apply(tt(b, c));
        let y = tt(a, out.mul(b, c));
        let w = g.mul_all(&[x, y, g.inv(tt(out.mul(a, b), c)), g.inv(tt(a, b))]);
        match center.index_of(w) {
            Some(k) => k,
            None => {
                escaped.get_or_insert((a, b, c, w));
                center.module.zero()
            }
        }
    })?;
    if let Some((a, b, c, w)) = escaped {
        return Err(Error::Internal(format!("cocycle value {w} at ({a}, {b}, {c}) is not central")));
    }
    if !is_cocycle(&z) {
        return Err(Error::Internal("classifying cochain is not a cocycle".into()));
    }
    Ok(z)
}

/// Decision procedures for splitness of `Sym(G)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Coboundary,
    SectionSearch,
    NonsplitWitness,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Coboundary, Method::SectionSearch, Method::NonsplitWitness];

    pub fn name(self) -> &'static str {
        match self {
            Method::Coboundary => "coboundary",
            Method::SectionSearch => "section-search",
            Method::NonsplitWitness => "nonsplit-witness",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "coboundary" => Ok(Method::Coboundary),
            "section-search" => Ok(Method::SectionSearch),
            "witness" | "nonsplit-witness" => Ok(Method::NonsplitWitness),
            _ => Err(Error::InvalidArgument(format!("unknown method {s:?}"))),
        }
    }
}

/// Method-specific evidence attached to a verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Witness {
    /// `∂c = z`.
    Trivializer { cocycle: CochainJson, trivializer: CochainJson },
    /// The solver proved that no `c` with `∂c = z` exists.
    Obstruction { cocycle: CochainJson },
    /// A normalized section with a normalized lifting satisfying the 2-cocycle equation.
    Lifting {
        section: Vec<usize>,
        section_images: Vec<Vec<Elem>>,
        /// `lifting[a][b] = psi(a, b)`, indexed by Out.
        lifting: Vec<Vec<Elem>>,
    },
    /// Every normalized section and lifting was tried.
    NoLifting { sections_checked: u64, nodes_visited: u64 },
    Certificate(NonsplitCertificate),
    Inconclusive { reason: String },
}

/// Verdict of one decider. `split` is `None` when the method is inconclusive.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitnessVerdict {
    pub split: Option<bool>,
    pub method: Method,
    pub witness: Witness,
}

/// Evidence that an outer class `[phi]` with `[phi]^2 = 1` has no member fixing
/// any `g` with `phi^2 = c_g`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonsplitCertificate {
    pub class: usize,
    pub class_label: String,
    pub members: Vec<MemberEvidence>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MemberEvidence {
    pub automorphism: usize,
    pub label: String,
    pub images: Vec<Elem>,
    pub square: usize,
    pub square_label: String,
    /// `(g, phi(g))` for every `g` with `phi^2 = c_g`; always `phi(g) != g`.
    pub conjugators: Vec<(Elem, Elem)>,
    pub conjugator_labels: Vec<(String, String)>,
}

/// Decide splitness of `Sym(G)` with one method.
pub fn is_permutationally_split(g: &FiniteGroup, method: Method) -> Result<SplitnessVerdict> {
    decide(&sym_invariants(g)?, method)
}

pub fn decide(inv: &SymInvariants, method: Method) -> Result<SplitnessVerdict> {
    match method {
        Method::Coboundary => decide_by_coboundary(inv),
        Method::SectionSearch => decide_by_section_search(&inv.outer),
        Method::NonsplitWitness => Ok(match nonsplit_witness(&inv.outer) {
            Some(cert) => SplitnessVerdict { split: Some(false), method, witness: Witness::Certificate(cert) },
            None => SplitnessVerdict {
                split: None,
                method,
                witness: Witness::Inconclusive { reason: "no outer class meets the sufficient condition".into() },
            },
        }),
    }
}

fn decide_by_coboundary(inv: &SymInvariants) -> Result<SplitnessVerdict> {
    let z = inv.presentation.z();
    let cocycle = z.to_json_value();
    Ok(match is_coboundary(z)? {
        Some(c) => SplitnessVerdict {
            split: Some(true),
            method: Method::Coboundary,
            witness: Witness::Trivializer { cocycle, trivializer: c.to_json_value() },
        },
        None => SplitnessVerdict { split: Some(false), method: Method::Coboundary, witness: Witness::Obstruction { cocycle } },
    })
}

/// Aut-index lists of inner automorphisms to their conjugators.
fn conjugator_table(outer: &OuterStructure) -> HashMap<usize, Vec<Elem>> {
    let mut m: HashMap<usize, Vec<Elem>> = HashMap::new();
    for g in outer.base().elements() {
        m.entry(outer.inner_from(g)).or_default().push(g);
    }
    m
}

/// Result of the exhaustive search over sections and liftings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SectionSearch {
    Found { section: Vec<usize>, lifting: Vec<Vec<Elem>> },
    NotFound { sections_checked: u64, nodes_visited: u64 },
}

/// Search normalized sections `s` (lexicographic in Aut-indices) and
/// normalized liftings `psi` of `ŝ(a, b) = s_a ∘ s_b ∘ s_{ab}^-1` with
/// `psi(a, b) psi(ab, c) = s_a(psi(b, c)) psi(a, bc)`.
pub fn section_search(outer: &OuterStructure) -> Result<SectionSearch> {
    let limits = caps::current();
    let sections = outer.all_sections(limits.section_budget)?;
    let conj = conjugator_table(outer);
    let mut nodes_total = 0u64;
    for section in &sections {
        let (found, nodes) = search_liftings(outer, section, &conj, limits.lifting_budget)?;
        nodes_total += nodes;
        if let Some(lifting) = found {
            return Ok(SectionSearch::Found { section: section.clone(), lifting });
        }
    }
    Ok(SectionSearch::NotFound { sections_checked: sections.len() as u64, nodes_visited: nodes_total })
}

fn search_liftings(
    outer: &OuterStructure,
    s: &[usize],
    conj: &HashMap<usize, Vec<Elem>>,
    budget: u64,
) -> Result<(Option<Vec<Vec<Elem>>>, u64)> {
    let g = outer.base();
    let aut = outer.aut();
    let out = outer.out();
    let m = out.order();
    let e = g.identity();
    if m == 1 {
        return Ok((Some(vec![vec![e]]), 0));
    }
    let w = m - 1;
    let var = |a: usize, b: usize| -> Option<usize> { (a != 0 && b != 0).then(|| (a - 1) * w + (b - 1)) };
    let nvars = w * w;
    let mut candidates: Vec<&[Elem]> = Vec::with_capacity(nvars);
    for a in 1..m {
        for b in 1..m {
            let hat = aut.mul(aut.mul(s[a], s[b]), aut.inv(s[out.mul(a, b)]));
            match conj.get(&hat) {
                Some(c) => candidates.push(c),
                None => return Err(Error::Internal("ŝ is not inner".into())),
            }
        }
    }
    // equations attached to the last variable they mention
    let mut attached: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); nvars];
    for a in 1..m {
        for b in 1..m {
            for c in 1..m {
                let vs = [var(a, b), var(out.mul(a, b), c), var(b, c), var(a, out.mul(b, c))];
                if let Some(last) = vs.iter().flatten().max() {
                    attached[*last].push((a, b, c));
                }
            }
        }
    }
    let mut psi = vec![vec![e; m]; m];
    let mut nodes = 0u64;
    let holds = |psi: &Vec<Vec<Elem>>, (a, b, c): (usize, usize, usize)| {
        let lhs = g.mul(psi[a][b], psi[out.mul(a, b)][c]);
        let rhs = g.mul(outer.aut_element(s[a]).apply(psi[b][c]), psi[a][out.mul(b, c)]);
        lhs == rhs
    };
    fn rec(
        v: usize,
        nvars: usize,
        w: usize,
        candidates: &[&[Elem]],
        attached: &[Vec<(usize, usize, usize)>],
        psi: &mut Vec<Vec<Elem>>,
        nodes: &mut u64,
        budget: u64,
        holds: &dyn Fn(&Vec<Vec<Elem>>, (usize, usize, usize)) -> bool,
    ) -> Result<bool> {
        if v == nvars {
            return Ok(true);
        }
        let (a, b) = (v / w + 1, v % w + 1);
        for &x in candidates[v] {
            *nodes += 1;
            if *nodes > budget {
                return Err(Error::BudgetExhausted(format!("more than {budget} lifting nodes for one section")));
            }
            psi[a][b] = x;
            if attached[v].iter().all(|&eq| holds(psi, eq))
                && rec(v + 1, nvars, w, candidates, attached, psi, nodes, budget, holds)?
            {
                return Ok(true);
            }
        }
        Ok(false)
    }
    let ok = rec(0, nvars, w, &candidates, &attached, &mut psi, &mut nodes, budget, &holds)?;
    Ok((ok.then_some(psi), nodes))
}

fn decide_by_section_search(outer: &OuterStructure) -> Result<SplitnessVerdict> {
    Ok(match section_search(outer)? {
        SectionSearch::Found { section, lifting } => SplitnessVerdict {
            split: Some(true),
            method: Method::SectionSearch,
            witness: Witness::Lifting {
                section_images: section.iter().map(|&a| outer.aut_element(a).images.clone()).collect(),
                section,
                lifting,
            },
        },
        SectionSearch::NotFound { sections_checked, nodes_visited } => SplitnessVerdict {
            split: Some(false),
            method: Method::SectionSearch,
            witness: Witness::NoLifting { sections_checked, nodes_visited },
        },
    })
}

/// Check that a section and lifting meet every defining equation.
pub fn check_lifting(outer: &OuterStructure, section: &[usize], lifting: &[Vec<Elem>]) -> bool {
    let g = outer.base();
    let aut = outer.aut();
    let out = outer.out();
    let m = out.order();
    if outer.epinglage_for_section(section.to_vec()).is_err() || lifting.len() != m {
        return false;
    }
    let e = g.identity();
    for a in 0..m {
        if lifting[a].len() != m || lifting[0][a] != e || lifting[a][0] != e {
            return false;
        }
        for b in 0..m {
            let hat = aut.mul(aut.mul(section[a], section[b]), aut.inv(section[out.mul(a, b)]));
            if lifting[a][b] >= g.order() || outer.inner_from(lifting[a][b]) != hat {
                return false;
            }
            for c in 0..m {
                let lhs = g.mul(lifting[a][b], lifting[out.mul(a, b)][c]);
                let rhs = g.mul(outer.aut_element(section[a]).apply(lifting[b][c]), lifting[a][out.mul(b, c)]);
                if lhs != rhs {
                    return false;
                }
            }
        }
    }
    true
}

/// The first nontrivial outer class `[phi]` with `[phi]^2 = 1` such that no
/// member `phi` fixes any `g` with `phi^2 = c_g`.
pub fn nonsplit_witness(outer: &OuterStructure) -> Option<NonsplitCertificate> {
    let g = outer.base();
    let aut = outer.aut();
    let out = outer.out();
    let conj = conjugator_table(outer);
    'classes: for o in 1..out.order() {
        if out.mul(o, o) != out.identity() {
            continue;
        }
        let mut members = Vec::new();
        for &a in &outer.classes()[o] {
            let phi = outer.aut_element(a);
            let sq = aut.mul(a, a);
            let gs = conj.get(&sq)?;
            let mut pairs = Vec::new();
            for &x in gs {
                let y = phi.apply(x);
                if y == x {
                    continue 'classes;
                }
                pairs.push((x, y));
            }
            members.push(MemberEvidence {
                automorphism: a,
                label: aut.label(a),
                images: phi.images.clone(),
                square: sq,
                square_label: aut.label(sq),
                conjugator_labels: pairs.iter().map(|&(x, y)| (g.label(x), g.label(y))).collect(),
                conjugators: pairs,
            });
        }
        return Some(NonsplitCertificate { class: o, class_label: out.label(o), members });
    }
    None
}

/// Re-check a certificate against the definitions.
pub fn check_certificate(outer: &OuterStructure, cert: &NonsplitCertificate) -> bool {
    let out = outer.out();
    let aut = outer.aut();
    let o = cert.class;
    if o == 0 || o >= out.order() || out.mul(o, o) != out.identity() {
        return false;
    }
    let members: Vec<usize> = cert.members.iter().map(|m| m.automorphism).collect();
    if members != outer.classes()[o] {
        return false;
    }
    cert.members.iter().all(|m| {
        let phi = outer.aut_element(m.automorphism);
        let sq = aut.mul(m.automorphism, m.automorphism);
        let gs = outer.conjugators_of(sq);
        sq == m.square
            && gs.len() == outer.base().center().len()
            && gs == m.conjugators.iter().map(|p| p.0).collect::<Vec<_>>()
            && gs.iter().all(|&x| phi.apply(x) != x)
    })
}

/// Re-verify a verdict's witness under its method's defining equations.
pub fn verify_verdict(inv: &SymInvariants, v: &SplitnessVerdict) -> Result<bool> {
    let z = inv.presentation.z();
    let module = z.module_arc().clone();
    Ok(match (&v.witness, v.split) {
        (Witness::Trivializer { cocycle, trivializer }, Some(true)) => {
            let zz = Cochain::from_json_value(module.clone(), cocycle)?;
            let c = Cochain::from_json_value(module, trivializer)?;
            zz == *z && crate::cohomology::coboundary(&c)? == zz
        }
        (Witness::Obstruction { cocycle }, Some(false)) => {
            let zz = Cochain::from_json_value(module, cocycle)?;
            zz == *z && is_coboundary(&zz)?.is_none()
        }
        (Witness::Lifting { section, section_images, lifting }, Some(true)) => {
            section.iter().zip(section_images).all(|(&a, im)| inv.outer.aut_element(a).images == *im)
                && check_lifting(&inv.outer, section, lifting)
        }
        (Witness::NoLifting { .. }, Some(false)) => matches!(section_search(&inv.outer)?, SectionSearch::NotFound { .. }),
        (Witness::Certificate(cert), Some(false)) => check_certificate(&inv.outer, cert),
        (Witness::Inconclusive { .. }, None) => nonsplit_witness(&inv.outer).is_none(),
        _ => false,
    })
}

/// Labels `(p, q)` of a dihedral automorphism (`r -> r^q`, `s -> s r^p`).
pub fn dihedral_label(outer: &OuterStructure, a: usize) -> Option<(usize, usize)> {
    let n = dihedral_degree(outer.base())?;
    Some(crate::autos::dihedral_parameters(n, outer.aut_element(a)))
}

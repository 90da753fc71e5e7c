//! Finite-type groupoids in the normal form `{(n_i, G_i)}` and the invariants
//! of their permutation 2-groups, assembled from wreath and direct products.
//!
//! Specs are written `2×dihedral:4, 1×symmetric:3`. `x` or `*` may replace
//! `×`, a missing multiplicity means 1, and `1×symmetric:0..6` expands to one
//! term per degree. A JSON array of `{"n": 2, "group": "dihedral:4"}` objects
//! (where `group` may also be a group table object) is accepted as well.

use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::autos::is_isomorphic;
use crate::caps;
use crate::cohomology::is_coboundary;
use crate::error::{Error, Result};
use crate::expr::{Cursor, GroupExpr};
use crate::group::FiniteGroup;
use crate::perm::{decide, sym_invariants, Method, SplitnessVerdict, SymInvariants};
use crate::two_group::{product_presentation, wreath_presentation, TwoGroupPresentation};

/// One term of an unnormalized spec.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawTerm {
    pub multiplicity: usize,
    pub group: FiniteGroup,
    pub source: String,
}

/// Parser output before normalization.
#[derive(Clone, Debug, Default)]
pub struct RawGroupoid {
    pub terms: Vec<RawTerm>,
    /// Range terms as written, such as `symmetric:0..6`.
    pub truncations: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    pub multiplicity: usize,
    pub group: FiniteGroup,
    /// The input terms merged into this component.
    pub sources: Vec<String>,
}

/// Normal form: pairwise non-isomorphic base groups with positive multiplicities.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupoidSpec {
    pub components: Vec<Component>,
    pub truncations: Vec<String>,
}

impl GroupoidSpec {
    pub fn parse(src: &str) -> Result<Self> {
        let raw = parse_groupoid(src)?;
        let mut spec = normalize(raw.terms);
        spec.truncations = raw.truncations;
        Ok(spec)
    }
}

pub fn parse_groupoid(src: &str) -> Result<RawGroupoid> {
    let t = src.trim_start();
    if t.starts_with('[') || t.starts_with('{') {
        return parse_json(src);
    }
    let mut cur = Cursor::new(src);
    let mut raw = RawGroupoid::default();
    loop {
        cur.skip_ws();
        let start = cur.pos();
        let multiplicity = if cur.rest().starts_with(|c: char| c.is_ascii_digit()) {
            let n = cur.number()?;
            if !(cur.eat("×") || cur.eat("x") || cur.eat("*")) {
                return Err(cur.error("expected × after the multiplicity"));
            }
            n
        } else {
            1
        };
        if multiplicity == 0 {
            return Err(Error::Parse { pos: start, msg: "multiplicity must be at least 1".into() });
        }
        let expr_start = cur.pos();
        let exprs = cur.term(true)?;
        let text = src[expr_start..cur.pos()].trim().to_string();
        if exprs.len() > 1 {
            raw.truncations.push(text);
        }
        for e in exprs {
            let group = e.build()?;
            raw.terms.push(RawTerm { multiplicity, group, source: e.to_string() });
        }
        if !cur.eat(",") {
            break;
        }
    }
    cur.skip_ws();
    if !cur.at_end() {
        return Err(cur.error("unexpected trailing input"));
    }
    Ok(raw)
}

fn parse_json(src: &str) -> Result<RawGroupoid> {
    let v: Value = serde_json::from_str(src)?;
    let items = match &v {
        Value::Array(a) => a.clone(),
        Value::Object(o) => match o.get("components") {
            Some(Value::Array(a)) => a.clone(),
            _ => return Err(Error::Serialization("expected a \"components\" array".into())),
        },
        _ => return Err(Error::Serialization("expected an array of components".into())),
    };
    let mut raw = RawGroupoid::default();
    for (i, item) in items.iter().enumerate() {
        let n = item
            .get("n")
            .or_else(|| item.get("multiplicity"))
            .map_or(Some(1), Value::as_u64)
            .ok_or_else(|| Error::Serialization(format!("component {i}: multiplicity is not a number")))?
            as usize;
        if n == 0 {
            return Err(Error::Serialization(format!("component {i}: multiplicity must be at least 1")));
        }
        match item.get("group") {
            Some(Value::String(s)) => {
                let e = GroupExpr::parse(s)?;
                raw.terms.push(RawTerm { multiplicity: n, group: e.build()?, source: e.to_string() });
            }
            Some(g @ Value::Object(_)) => {
                let group: FiniteGroup = serde_json::from_value(g.clone())?;
                let source = group.reference();
                raw.terms.push(RawTerm { multiplicity: n, group, source });
            }
            _ => return Err(Error::Serialization(format!("component {i}: missing \"group\""))),
        }
    }
    Ok(raw)
}

/// Merge isomorphic base groups by summing multiplicities. Each class keeps
/// the member with the least flat table, and classes are ordered by
/// `(|G|, table)`, so the result does not depend on the input order.
/// Terms with multiplicity 0 are dropped.
pub fn normalize(raw: Vec<RawTerm>) -> GroupoidSpec {
    let mut comps: Vec<Component> = Vec::new();
    for t in raw.into_iter().filter(|t| t.multiplicity > 0) {
        let hit = comps.iter_mut().find(|c| c.group.table() == t.group.table() || is_isomorphic(&c.group, &t.group).is_some());
        match hit {
            Some(c) => {
                c.multiplicity += t.multiplicity;
                c.sources.push(t.source);
                if t.group.table() < c.group.table() {
                    c.group = t.group;
                }
            }
            None => comps.push(Component { multiplicity: t.multiplicity, group: t.group, sources: vec![t.source] }),
        }
    }
    comps.sort_by(|a, b| (a.group.order(), a.group.table()).cmp(&(b.group.order(), b.group.table())));
    GroupoidSpec { components: comps, truncations: Vec::new() }
}

/// `Sym(G)` invariants keyed by table digest, so a group analysed twice is
/// only searched once.
#[derive(Default)]
pub struct InvariantCache {
    map: HashMap<String, Arc<SymInvariants>>,
}

impl InvariantCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&mut self, g: &FiniteGroup) -> Result<Arc<SymInvariants>> {
        let key = g.digest();
        if let Some(inv) = self.map.get(&key) {
            return Ok(inv.clone());
        }
        let inv = Arc::new(sym_invariants(g)?);
        self.map.insert(key, inv.clone());
        Ok(inv)
    }
}

/// Per-component data and the assembled presentation.
#[derive(Clone, Debug)]
pub struct Assembly {
    pub components: Vec<AssembledComponent>,
    pub presentation: TwoGroupPresentation,
}

#[derive(Clone, Debug)]
pub struct AssembledComponent {
    pub component: Component,
    pub invariants: Arc<SymInvariants>,
    pub wreath: TwoGroupPresentation,
}

pub fn assemble_invariants(spec: &GroupoidSpec) -> Result<Assembly> {
    assemble_with(spec, &mut InvariantCache::new())
}

/// The product over components of `wreath_presentation(n_i, Sym(G_i))`.
pub fn assemble_with(spec: &GroupoidSpec, cache: &mut InvariantCache) -> Result<Assembly> {
    let cap = caps::current().group_order as u128;
    let mut comps = Vec::with_capacity(spec.components.len());
    for (i, c) in spec.components.iter().enumerate() {
        let label = || format!("component {i} ({}×{})", c.multiplicity, c.sources.join("+"));
        let inv = cache.get(&c.group).map_err(|e| match e {
            Error::CapExceeded { what, size, cap } => Error::CapExceeded { what: format!("{}: {what}", label()), size, cap },
            e => e,
        })?;
        let fact = (1..=c.multiplicity as u128).try_fold(1u128, |a, k| a.checked_mul(k)).unwrap_or(u128::MAX);
        let size = fact.saturating_mul((inv.presentation.pi0().order() as u128).saturating_pow(c.multiplicity as u32));
        if size > cap {
            return Err(Error::cap(format!("{}: |S_n wr Out(G)|", label()), size, cap));
        }
        let wreath = wreath_presentation(c.multiplicity, &inv.presentation)?;
        comps.push(AssembledComponent { component: c.clone(), invariants: inv, wreath });
    }
    let family: Vec<&TwoGroupPresentation> = comps.iter().map(|c| &c.wreath).collect();
    let presentation = product_presentation(&family)?;
    Ok(Assembly { components: comps, presentation })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentVerdict {
    pub multiplicity: usize,
    pub sources: Vec<String>,
    pub verdict: SplitnessVerdict,
}

/// Componentwise verdicts and their conjunction. `global_split` is the
/// triviality of the assembled class, or `None` when that system exceeds the
/// solver caps.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteTypeVerdict {
    pub split: bool,
    pub global_split: Option<bool>,
    pub components: Vec<ComponentVerdict>,
}

pub fn is_split_finite_type(spec: &GroupoidSpec) -> Result<FiniteTypeVerdict> {
    is_split_with(spec, &mut InvariantCache::new())
}

/// Componentwise coboundary verdicts, checked against the assembled class
/// whenever the assembled cochains fit under the caps.
pub fn is_split_with(spec: &GroupoidSpec, cache: &mut InvariantCache) -> Result<FiniteTypeVerdict> {
    let mut components = Vec::new();
    for c in &spec.components {
        let verdict = decide(&*cache.get(&c.group)?, Method::Coboundary)?;
        components.push(ComponentVerdict { multiplicity: c.multiplicity, sources: c.sources.clone(), verdict });
    }
    let split = components.iter().all(|c| c.verdict.split == Some(true));
    let global = assemble_with(spec, cache).and_then(|a| is_coboundary(a.presentation.z()));
    let global_split = match global {
        Ok(w) => Some(w.is_some()),
        Err(Error::CapExceeded { .. }) | Err(Error::BudgetExhausted(_)) => None,
        Err(e) => return Err(e),
    };
    if global_split.is_some_and(|g| g != split) {
        return Err(Error::Internal(format!("global class triviality {global_split:?} disagrees with components ({split})")));
    }
    Ok(FiniteTypeVerdict { split, global_split, components })
}

//! Skeletal special 2-groups `A[1] ⋊_z G[0]`.
//!
//! Objects are elements `x` of `pi0`, morphisms are cells `(u, x)` with `u` in
//! `pi1`. Tensor is `(u, x) ⊗ (u', x') = (u + x ◁ u', x x')`, composition adds
//! the `u`, and the associator at `(x, y, w)` is `(z(x, y, w), x y w)`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::autos::{all_isomorphisms, GroupHom};
use crate::caps;
use crate::cohomology::{
    cocycle_violation, is_coboundary, wreath_module, xi, zeta, Cochain, CochainJson, CyclicDecomposition, GModule,
};
use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup};

/// `(pi0, pi1, z)` with `z` a normalized 3-cocycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoGroupPresentation {
    pi1: Arc<GModule>,
    z: Cochain,
}

/// A morphism `(u, [x]) : [x] -> [x]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TwoCell {
    pub u: Elem,
    pub x: Elem,
}

impl TwoCell {
    pub fn new(u: Elem, x: Elem) -> Self {
        TwoCell { u, x }
    }
}

impl TwoGroupPresentation {
    pub fn new(z: Cochain) -> Result<Self> {
        if z.degree() != 3 {
            return Err(Error::InvalidCochain(format!("expected a 3-cochain, got degree {}", z.degree())));
        }
        if let Some(t) = cocycle_violation(&z) {
            return Err(Error::InvalidCochain(format!("not a cocycle: ∂z{t:?} ≠ 0")));
        }
        Ok(TwoGroupPresentation { pi1: z.module_arc().clone(), z })
    }

    /// The strict presentation `A[1] ⋊ G[0]` (zero cocycle).
    pub fn elementary(pi1: Arc<GModule>) -> Result<Self> {
        let z = Cochain::zero(pi1.clone(), 3)?;
        Ok(TwoGroupPresentation { pi1, z })
    }

    pub fn pi0(&self) -> &FiniteGroup {
        self.pi1.acting()
    }

    pub fn pi1(&self) -> &GModule {
        &self.pi1
    }

    pub fn pi1_arc(&self) -> &Arc<GModule> {
        &self.pi1
    }

    pub fn z(&self) -> &Cochain {
        &self.z
    }

    pub fn unit(&self) -> TwoCell {
        TwoCell { u: self.pi1.zero(), x: self.pi0().identity() }
    }

    pub fn identity_cell(&self, x: Elem) -> TwoCell {
        TwoCell { u: self.pi1.zero(), x }
    }

    pub fn tensor_cells(&self, a: TwoCell, b: TwoCell) -> TwoCell {
        let m = &self.pi1;
        TwoCell { u: m.add(a.u, m.act(a.x, b.u)), x: self.pi0().mul(a.x, b.x) }
    }

    /// `a ∘ b`; both must live on the same object.
    pub fn compose_cells(&self, a: TwoCell, b: TwoCell) -> Result<TwoCell> {
        if a.x != b.x {
            return Err(Error::InvalidCell(format!("cannot compose cells on objects {} and {}", a.x, b.x)));
        }
        Ok(TwoCell { u: self.pi1.add(a.u, b.u), x: a.x })
    }

    pub fn inverse_cell(&self, a: TwoCell) -> TwoCell {
        TwoCell { u: self.pi1.neg(a.u), x: a.x }
    }

    pub fn associator(&self, x: Elem, y: Elem, w: Elem) -> TwoCell {
        associator_of(&self.z, x, y, w)
    }

    /// True when `z = ∂c` for some normalized `c`.
    pub fn is_split(&self) -> Result<bool> {
        Ok(is_coboundary(&self.z)?.is_some())
    }

    /// Product over a family: componentwise `pi0`, `pi1` and action, `z = ζ(z_i)`.
    pub fn product(family: &[&TwoGroupPresentation]) -> Result<Self> {
        product_presentation(family)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(&self.to_json_value())?)
    }

    pub fn to_json_value(&self) -> PresentationJson {
        PresentationJson {
            pi0: self.pi0().clone(),
            pi1: self.pi1.coeff().clone(),
            action: self.pi0().elements().map(|g| self.pi1.action_of(g)).collect(),
            z: self.z.to_json_value(),
        }
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let j: PresentationJson = serde_json::from_str(s)?;
        Self::from_json_value(j)
    }

    pub fn from_json_value(j: PresentationJson) -> Result<Self> {
        let m = Arc::new(GModule::new(Arc::new(j.pi0), Arc::new(j.pi1), j.action)?);
        let z = Cochain::from_json_value(m, &j.z)?;
        Self::new(z)
    }

    /// Short name such as `Z2[1]×Z2[0]`; `split` is the triviality of the class.
    pub fn describe(&self, split: bool) -> String {
        let p0 = group_name(self.pi0());
        let p1 = group_name(self.pi1.coeff());
        match (self.pi0().is_trivial(), self.pi1.coeff().is_trivial()) {
            (true, true) => "1".into(),
            (false, true) => format!("{p0}[0]"),
            (true, false) => format!("{p1}[1]"),
            (false, false) if !split => format!("{p1}[1]⋊_z{p0}[0]"),
            (false, false) if self.pi1.is_trivial_action() => format!("{p1}[1]×{p0}[0]"),
            (false, false) => format!("{p1}[1]⋊{p0}[0]"),
        }
    }
}

fn associator_of(z: &Cochain, x: Elem, y: Elem, w: Elem) -> TwoCell {
    let g = z.module().acting();
    TwoCell { u: z.get(&[x, y, w]), x: g.mul_all(&[x, y, w]) }
}

/// Serialized presentation.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PresentationJson {
    pub pi0: FiniteGroup,
    pub pi1: FiniteGroup,
    pub action: Vec<Vec<Elem>>,
    pub z: CochainJson,
}

/// Name for reports: invariant factors for abelian groups (`Z2×Z4`), `1` for
/// the trivial group, the constructor tag or order otherwise.
pub fn group_name(g: &FiniteGroup) -> String {
    if g.is_trivial() {
        return "1".into();
    }
    if g.is_abelian() {
        if let Ok(d) = CyclicDecomposition::new(g) {
            return invariant_factors(&d).iter().map(|n| format!("Z{n}")).collect::<Vec<_>>().join("×");
        }
    }
    match g.family_tag() {
        Some(t) if t.len() <= 40 => t.to_string(),
        _ => format!("G{}", g.order()),
    }
}

/// Invariant factors `d_1 | d_2 | ...` from the primary orders.
pub fn invariant_factors(d: &CyclicDecomposition) -> Vec<usize> {
    let mut by_prime: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for i in 0..d.rank() {
        by_prime.entry(d.primes[i]).or_default().push(d.order_of(i));
    }
    let len = by_prime.values().map(|v| v.len()).max().unwrap_or(0);
    let mut factors = vec![1usize; len];
    for v in by_prime.values_mut() {
        v.sort_unstable_by(|a, b| b.cmp(a));
        for (i, &q) in v.iter().enumerate() {
            factors[len - 1 - i] *= q;
        }
    }
    factors
}

/// Outcome of re-deriving the pentagon and triangle from cell arithmetic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoherenceReport {
    pub pentagon_holds: bool,
    pub triangle_holds: bool,
    pub cocycle: bool,
    pub normalized: bool,
    /// Pentagon holds exactly where `∂z` vanishes, over all quadruples.
    pub pentagon_matches_cocycle: bool,
    pub pentagon_violation: Option<[Elem; 4]>,
    pub triangle_violation: Option<[Elem; 2]>,
}

impl CoherenceReport {
    pub fn passed(&self) -> bool {
        self.pentagon_holds && self.triangle_holds && self.pentagon_matches_cocycle
    }
}

pub fn verify_coherence(t: &TwoGroupPresentation) -> CoherenceReport {
    verify_coherence_of(t.z())
}

/// Coherence check for an arbitrary normalized 3-cochain (not necessarily a cocycle).
pub fn verify_coherence_of(z: &Cochain) -> CoherenceReport {
    let m = z.module();
    let g = m.acting();
    let zero = m.zero();
    let tensor = |a: TwoCell, b: TwoCell| TwoCell { u: m.add(a.u, m.act(a.x, b.u)), x: g.mul(a.x, b.x) };
    let compose = |a: TwoCell, b: TwoCell| -> TwoCell {
        debug_assert_eq!(a.x, b.x);
        TwoCell { u: m.add(a.u, b.u), x: a.x }
    };
    let id = |x: Elem| TwoCell { u: zero, x };
    let assoc = |x, y, w| associator_of(z, x, y, w);
    let mut pentagon_violation = None;
    let mut matches = true;
    let mut buf = Vec::with_capacity(4);
    'outer: for x in g.elements() {
        for y in g.elements() {
            for v in g.elements() {
                for w in g.elements() {
                    let lhs = compose(assoc(x, y, g.mul(v, w)), assoc(g.mul(x, y), v, w));
                    let rhs = compose(
                        tensor(id(x), assoc(y, v, w)),
                        compose(assoc(x, g.mul(y, v), w), tensor(assoc(x, y, v), id(w))),
                    );
                    let ok = lhs == rhs;
                    let d = crate::cohomology::coboundary_at(z, &[x, y, v, w], &mut buf);
                    if ok != (d == zero) {
                        matches = false;
                    }
                    if !ok && pentagon_violation.is_none() {
                        pentagon_violation = Some([x, y, v, w]);
                    }
                    if pentagon_violation.is_some() && !matches {
                        break 'outer;
                    }
                }
            }
        }
    }
    // triangle with strict unitors: (id_x ⊗ l_y) ∘ a_{x,e,y} = r_x ⊗ id_y
    let e = g.identity();
    let mut triangle_violation = None;
    'tri: for x in g.elements() {
        for y in g.elements() {
            let lhs = compose(tensor(id(x), id(y)), assoc(x, e, y));
            if lhs != tensor(id(x), id(y)) {
                triangle_violation = Some([x, y]);
                break 'tri;
            }
        }
    }
    let normalized = g.elements().all(|a| {
        g.elements().all(|b| z.get(&[e, a, b]) == zero && z.get(&[a, e, b]) == zero && z.get(&[a, b, e]) == zero)
    });
    CoherenceReport {
        pentagon_holds: pentagon_violation.is_none(),
        triangle_holds: triangle_violation.is_none(),
        cocycle: cocycle_violation(z).is_none(),
        normalized,
        pentagon_matches_cocycle: matches,
        pentagon_violation,
        triangle_violation,
    }
}

/// `pi0 = ∏ pi0_i`, `pi1 = ∏ pi1_i` with componentwise action, `z = ζ(z_i)`.
pub fn product_presentation(family: &[&TwoGroupPresentation]) -> Result<TwoGroupPresentation> {
    let mods: Vec<&GModule> = family.iter().map(|t| t.pi1()).collect();
    let module = Arc::new(GModule::product(&mods)?);
    let zs: Vec<&Cochain> = family.iter().map(|t| t.z()).collect();
    let z = if zs.is_empty() { Cochain::zero(module, 3)? } else { zeta(module, &zs)? };
    TwoGroupPresentation::new(z)
}

/// `pi0 = S_n wr pi0`, `pi1 = pi1^n` permuted then acted on, `z = ξ_n(z)`.
pub fn wreath_presentation(n: usize, t: &TwoGroupPresentation) -> Result<TwoGroupPresentation> {
    let wm = wreath_module(n, t.pi1())?;
    let z = xi(&wm, t.z())?;
    TwoGroupPresentation::new(z)
}

/// `(sigma, x) ⊗ (sigma', x') = (sigma sigma', (x_{sigma'(i)} x'_i)_i)`.
pub fn wreath_object_tensor(
    base: &FiniteGroup,
    a: (&[usize], &[Elem]),
    b: (&[usize], &[Elem]),
) -> Result<(Vec<usize>, Vec<Elem>)> {
    let n = a.0.len();
    if [a.1.len(), b.0.len(), b.1.len()].iter().any(|&l| l != n) {
        return Err(Error::InvalidArgument("wreath objects of different lengths".into()));
    }
    let sigma: Vec<usize> = (0..n).map(|i| a.0[b.0[i]]).collect();
    let x: Vec<Elem> = (0..n).map(|i| base.mul(a.1[b.0[i]], b.1[i])).collect();
    Ok((sigma, x))
}

/// Data of an equivalence `T -> T'`: `rho` on `pi0`, `beta` on `pi1`, and
/// `w` with `beta ∘ z - rho^*(z') = ∂w` over `pi1'` pulled back along `rho`.
#[derive(Clone, Debug)]
pub struct TwoGroupMorphismData {
    pub rho: GroupHom,
    pub beta: GroupHom,
    pub w: Cochain,
}

/// Search isomorphisms `rho`, compatible module isomorphisms `beta`, and a
/// coboundary witness for the transported class difference.
pub fn presentations_equivalent(
    t: &TwoGroupPresentation,
    u: &TwoGroupPresentation,
) -> Result<Option<TwoGroupMorphismData>> {
    let (g, h) = (t.pi0(), u.pi0());
    let (a, b) = (t.pi1().coeff(), u.pi1().coeff());
    if g.order() != h.order() || a.order() != b.order() {
        return Ok(None);
    }
    let limits = caps::current();
    if g.order() > limits.iso_pi0 {
        return Err(Error::cap("equivalence search |pi0|", g.order(), limits.iso_pi0));
    }
    if a.order() > limits.iso_pi1 {
        return Err(Error::cap("equivalence search |pi1|", a.order(), limits.iso_pi1));
    }
    let rhos = all_isomorphisms(g, h);
    let betas = all_isomorphisms(a, b);
    for rho in &rhos {
        let pulled = Arc::new(GModule::from_fn(t.pi1().acting_arc().clone(), u.pi1().coeff_arc().clone(), |x, v| {
            u.pi1().act(rho.apply(x), v)
        })?);
        for beta in &betas {
            let compatible = g
                .elements()
                .all(|x| a.elements().all(|v| beta.apply(t.pi1().act(x, v)) == u.pi1().act(rho.apply(x), beta.apply(v))));
            if !compatible {
                continue;
            }
            let diff = Cochain::from_fn(pulled.clone(), 3, |s| {
                let lhs = beta.apply(t.z().get(s));
                let rhs = u.z().get(&[rho.apply(s[0]), rho.apply(s[1]), rho.apply(s[2])]);
                pulled.sub(lhs, rhs)
            })?;
            if let Some(w) = is_coboundary(&diff)? {
                return Ok(Some(TwoGroupMorphismData { rho: rho.clone(), beta: beta.clone(), w }));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic, direct_product};
    use rand::SeedableRng;

    fn z2z2() -> Arc<GModule> {
        let z2 = Arc::new(cyclic(2).unwrap());
        Arc::new(GModule::trivial(z2.clone(), z2).unwrap())
    }

    fn nontrivial() -> TwoGroupPresentation {
        TwoGroupPresentation::new(Cochain::from_fn(z2z2(), 3, |_| 1).unwrap()).unwrap()
    }

    #[test]
    fn cell_arithmetic() {
        let t = TwoGroupPresentation::elementary(z2z2()).unwrap();
        let c = TwoCell::new(1, 1);
        assert_eq!(t.tensor_cells(t.unit(), c), c);
        assert_eq!(t.tensor_cells(c, c), TwoCell::new(0, 0));
        assert_eq!(t.compose_cells(c, t.inverse_cell(c)).unwrap(), TwoCell::new(0, 1));
        assert!(t.compose_cells(c, TwoCell::new(0, 0)).is_err());
        assert_eq!(nontrivial().associator(1, 1, 1), TwoCell::new(1, 1));
        assert_eq!(nontrivial().associator(0, 1, 1), TwoCell::new(0, 0));
    }

    #[test]
    fn associativity_up_to_associator() {
        let t = nontrivial();
        let cells: Vec<TwoCell> = (0..2).flat_map(|u| (0..2).map(move |x| TwoCell::new(u, x))).collect();
        for &a in &cells {
            for &b in &cells {
                for &c in &cells {
                    let l = t.tensor_cells(t.tensor_cells(a, b), c);
                    let r = t.tensor_cells(a, t.tensor_cells(b, c));
                    let assoc = t.associator(a.x, b.x, c.x);
                    // a ∘ ((a⊗b)⊗c) = (a⊗(b⊗c)) ∘ a
                    assert_eq!(t.compose_cells(assoc, l).unwrap(), t.compose_cells(r, assoc).unwrap());
                }
            }
        }
    }

    #[test]
    fn corrupted_cocycle_fails_pentagon() {
        let z2 = Arc::new(cyclic(2).unwrap());
        let v = Arc::new(direct_product(&z2, &z2).unwrap());
        let m = Arc::new(GModule::trivial(v, z2).unwrap());
        let mut z = Cochain::zero(m, 3).unwrap();
        z.set(&[1, 2, 3], 1).unwrap();
        let report = verify_coherence_of(&z);
        assert!(!report.pentagon_holds);
        assert!(!report.cocycle);
        assert!(report.pentagon_matches_cocycle);
        assert!(report.pentagon_violation.is_some());
        let ok = verify_coherence(&TwoGroupPresentation::elementary(z.module_arc().clone()).unwrap());
        assert!(ok.passed());
    }

    #[test]
    fn equivalence_search() {
        let t = nontrivial();
        let u = TwoGroupPresentation::elementary(z2z2()).unwrap();
        assert!(presentations_equivalent(&t, &t).unwrap().is_some());
        assert!(presentations_equivalent(&t, &u).unwrap().is_none());
        let one = Arc::new(cyclic(1).unwrap());
        let z2 = Arc::new(cyclic(2).unwrap());
        let a1 = TwoGroupPresentation::elementary(Arc::new(GModule::trivial(one.clone(), z2.clone()).unwrap())).unwrap();
        let a0 = TwoGroupPresentation::elementary(Arc::new(GModule::trivial(z2, one).unwrap())).unwrap();
        assert!(presentations_equivalent(&a1, &a0).unwrap().is_none());
        assert_eq!(a1.describe(true), "Z2[1]");
        assert_eq!(a0.describe(true), "Z2[0]");
    }

    #[test]
    fn product_and_wreath() {
        let one = Arc::new(cyclic(1).unwrap());
        let z2 = Arc::new(cyclic(2).unwrap());
        let a1 = TwoGroupPresentation::elementary(Arc::new(GModule::trivial(one.clone(), z2.clone()).unwrap())).unwrap();
        let a0 = TwoGroupPresentation::elementary(Arc::new(GModule::trivial(z2.clone(), one).unwrap())).unwrap();
        let p = product_presentation(&[&a1, &a0]).unwrap();
        assert_eq!((p.pi0().order(), p.pi1().coeff().order()), (2, 2));
        assert!(p.z().is_zero());
        assert_eq!(p.describe(true), "Z2[1]×Z2[0]");
        let t = nontrivial();
        let w1 = wreath_presentation(1, &t).unwrap();
        assert_eq!(w1.pi0().table(), t.pi0().table());
        assert_eq!(w1.z().nonzero_entries(), t.z().nonzero_entries());
        let w2 = wreath_presentation(2, &t).unwrap();
        assert!(!w2.is_split().unwrap());
    }

    #[test]
    fn wreath_object_tensor_examples() {
        let g = direct_product(&cyclic(2).unwrap(), &cyclic(3).unwrap()).unwrap();
        let (a, b, c, d) = (1, 2, 3, 4);
        let swap = [1usize, 0];
        let id = [0usize, 1];
        assert_eq!(wreath_object_tensor(&g, (&swap, &[a, b]), (&id, &[c, d])).unwrap(), (swap.to_vec(), vec![g.mul(a, c), g.mul(b, d)]));
        assert_eq!(wreath_object_tensor(&g, (&id, &[a, b]), (&swap, &[c, d])).unwrap(), (swap.to_vec(), vec![g.mul(b, c), g.mul(a, d)]));
    }

    #[test]
    fn json_roundtrip() {
        let t = nontrivial();
        let back = TwoGroupPresentation::from_json(&t.to_json().unwrap()).unwrap();
        assert_eq!(back, t);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        let _ = Cochain::random(z2z2(), 2, &mut rng).unwrap();
    }
}

//! Seeded property suites shared by `sym2 check` and the acceptance run.

use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};
use sym2_core::autos::{automorphism_group, OuterStructure};
use sym2_core::cohomology::{
    coboundary, coboundary_of_fn_at, is_coboundary, is_cocycle, wreath_module, xi, xi_at, zeta, Cochain, GModule,
};
use sym2_core::group::{cyclic, dihedral, direct_product, symmetric, Elem, FiniteGroup};
use sym2_core::perm::coproduct::transport_check;
use sym2_core::perm::{classifying_cocycle_with, sym_cell, sym_compose, sym_tensor, CenterModule};
use sym2_core::two_group::verify_coherence_of;
use sym2_core::Result;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteResult {
    pub name: String,
    pub cases: u64,
    pub failures: Vec<String>,
}

impl SuiteResult {
    fn new(name: &str) -> Self {
        SuiteResult { name: name.into(), ..Default::default() }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.cases > 0
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.failures.len() < 20 {
            self.failures.push(what());
        }
    }
}

fn trivial_module(g: FiniteGroup, a: FiniteGroup) -> Result<Arc<GModule>> {
    Ok(Arc::new(GModule::trivial(Arc::new(g), Arc::new(a))?))
}

/// A random normalized `k`-tuple of non-identity elements.
fn random_tuple<R: Rng>(g: &FiniteGroup, k: usize, rng: &mut R) -> Vec<Elem> {
    let e = g.identity();
    (0..k)
        .map(|_| loop {
            let x = rng.gen_range(0..g.order());
            if x != e {
                break x;
            }
        })
        .collect()
}

/// Pentagon and triangle hold iff the associator cochain is a cocycle. All
/// normalized 3-cochains over `(Z2, Z2)`, then `trials` random cochains over
/// each of `(Z2×Z2, Z2)` and `(Z3, Z3)`, half of them built as coboundaries.
pub fn coherence<R: Rng>(trials: usize, rng: &mut R) -> Result<SuiteResult> {
    let mut r = SuiteResult::new("pentagon iff cocycle");
    let z2 = trivial_module(cyclic(2)?, cyclic(2)?)?;
    for v in 0..2 {
        let z = Cochain::from_fn(z2.clone(), 3, |_| v)?;
        let c = verify_coherence_of(&z);
        r.check(c.passed() == is_cocycle(&z) && c.pentagon_matches_cocycle, || format!("(Z2, Z2) value {v}"));
    }
    let v4 = direct_product(&cyclic(2)?, &cyclic(2)?)?;
    for (name, m) in [("(Z2×Z2, Z2)", trivial_module(v4, cyclic(2)?)?), ("(Z3, Z3)", trivial_module(cyclic(3)?, cyclic(3)?)?)] {
        let (mut cocycles, mut others) = (0, 0);
        for i in 0..trials {
            let z = if i % 2 == 0 {
                Cochain::random(m.clone(), 3, rng)?
            } else {
                coboundary(&Cochain::random(m.clone(), 2, rng)?)?
            };
            let cocycle = is_cocycle(&z);
            if cocycle {
                cocycles += 1;
            } else {
                others += 1;
            }
            let c = verify_coherence_of(&z);
            r.check(c.passed() == cocycle && c.pentagon_matches_cocycle, || format!("{name} trial {i}"));
        }
        r.check(cocycles > 0 && others > 0, || format!("{name}: only one kind of cochain drawn"));
    }
    Ok(r)
}

/// `∂ ∘ ξ_n = ξ_n ∘ ∂` for `G ∈ {Z2, Z3}`, `n ∈ {2, 3}`, degrees 2 and 3,
/// over `trials` random cochains per configuration. Each cochain is compared
/// on `points` random tuples; the smallest configurations are compared in full.
pub fn chain_map<R: Rng>(trials: usize, points: usize, rng: &mut R) -> Result<SuiteResult> {
    let mut r = SuiteResult::new("wreath transfer is a chain map");
    for p in [2usize, 3] {
        let m = trivial_module(cyclic(p)?, cyclic(p)?)?;
        for n in [2usize, 3] {
            let wm = wreath_module(n, &m)?;
            let w = wm.wreath.group().clone();
            for k in [2usize, 3] {
                let full = w.order() <= 20;
                for i in 0..trials {
                    let c = Cochain::random(m.clone(), k, rng)?;
                    let dc = coboundary(&c)?;
                    if full {
                        let ok = coboundary(&xi(&wm, &c)?)? == xi(&wm, &dc)?;
                        r.check(ok, || format!("Z{p}, n={n}, degree {k}, trial {i}"));
                        continue;
                    }
                    let mut buf = Vec::new();
                    let mut ok = true;
                    for _ in 0..points {
                        let t = random_tuple(&w, k + 1, rng);
                        let lhs = coboundary_of_fn_at(&wm.module, k, |s| xi_at(&wm, &c, s).expect("tuple length"), &t, &mut buf);
                        ok &= lhs == xi_at(&wm, &dc, &t)?;
                    }
                    r.check(ok, || format!("Z{p}, n={n}, degree {k}, trial {i}"));
                }
            }
        }
    }
    Ok(r)
}

/// `ζ` is injective on classes: over two `(Z2, Z2)` factors, in degrees 2
/// and 3, `ζ(z1, z2)` is a coboundary iff both factors are, for every pair
/// of normalized cocycles.
pub fn zeta_injective() -> Result<SuiteResult> {
    let mut r = SuiteResult::new("product map is injective on classes");
    let m = trivial_module(cyclic(2)?, cyclic(2)?)?;
    let prod = Arc::new(GModule::product(&[&m, &m])?);
    for k in [2usize, 3] {
        let all: Vec<Cochain> = (0..2).map(|v| Cochain::from_fn(m.clone(), k, |_| v)).collect::<Result<_>>()?;
        let cocycles: Vec<&Cochain> = all.iter().filter(|z| is_cocycle(z)).collect();
        for a in &cocycles {
            for b in &cocycles {
                let both = is_coboundary(a)?.is_some() && is_coboundary(b)?.is_some();
                let img = zeta(prod.clone(), &[a, b])?;
                r.check(is_coboundary(&img)?.is_some() == both, || format!("degree {k}: {:?}", (a.get(&vec![1; k]), b.get(&vec![1; k]))));
            }
        }
    }
    Ok(r)
}

/// The interchange law `(β∘α) ⊗ (δ∘γ) = (β⊗δ) ∘ (α⊗γ)` on random cells of `Sym(G)`.
pub fn interchange<R: Rng>(outer: &OuterStructure, trials: usize, rng: &mut R) -> Result<SuiteResult> {
    let mut r = SuiteResult::new(&format!("interchange law in Sym({})", outer.base().reference()));
    let (na, ng) = (outer.aut().order(), outer.base().order());
    for i in 0..trials {
        let alpha = sym_cell(outer, rng.gen_range(0..ng), rng.gen_range(0..na));
        let beta = sym_cell(outer, rng.gen_range(0..ng), alpha.target);
        let gamma = sym_cell(outer, rng.gen_range(0..ng), rng.gen_range(0..na));
        let delta = sym_cell(outer, rng.gen_range(0..ng), gamma.target);
        let lhs = sym_tensor(outer, sym_compose(outer, beta, alpha)?, sym_compose(outer, delta, gamma)?)?;
        let rhs = sym_compose(outer, sym_tensor(outer, beta, delta)?, sym_tensor(outer, alpha, gamma)?)?;
        r.check(lhs == rhs, || format!("quadruple {i}"));
    }
    Ok(r)
}

/// `T_{2,S3}` on all object pairs and `trials` random cell pairs.
pub fn transport<R: Rng>(trials: usize, rng: &mut R) -> Result<SuiteResult> {
    let outer = automorphism_group(&symmetric(3)?)?;
    let rep = transport_check(&outer, 2, trials, rng)?;
    let mut r = SuiteResult::new("T_{2,S3} is a strict monoidal isomorphism");
    r.cases = rep.object_pairs + rep.cell_pairs + rep.composition_pairs;
    r.failures = rep.failures;
    Ok(r)
}

/// Every épinglage of `G` gives the same class: the distinct classifying
/// cocycles are pairwise cohomologous.
pub fn epinglage_independence(g: &FiniteGroup) -> Result<SuiteResult> {
    let mut r = SuiteResult::new(&format!("épinglage independence for {}", g.reference()));
    let outer = automorphism_group(g)?;
    let center = CenterModule::new(&outer)?;
    let mut distinct: Vec<Cochain> = Vec::new();
    for ep in outer.all_epinglages(1_000_000)? {
        let z = classifying_cocycle_with(&outer, &center, &ep)?;
        r.cases += 1;
        if !distinct.contains(&z) {
            distinct.push(z);
        }
    }
    for (i, a) in distinct.iter().enumerate() {
        for b in &distinct[i + 1..] {
            let ok = is_coboundary(&a.sub(b)?)?.is_some();
            r.check(ok, || "two épinglages give different classes".into());
        }
    }
    Ok(r)
}

/// Every suite with the default corpus, as run by `sym2 check`.
pub fn all<R: Rng>(trials: usize, rng: &mut R) -> Result<Vec<SuiteResult>> {
    let d4 = automorphism_group(&dihedral(4)?)?;
    let d8 = automorphism_group(&dihedral(8)?)?;
    Ok(vec![
        coherence(trials, rng)?,
        chain_map(trials, 16, rng)?,
        zeta_injective()?,
        interchange(&d4, trials, rng)?,
        interchange(&d8, trials, rng)?,
        transport(trials, rng)?,
        epinglage_independence(&dihedral(4)?)?,
        epinglage_independence(&dihedral(5)?)?,
    ])
}

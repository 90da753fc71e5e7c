//! `Sym(⊔ⁿG)`: objects `E(σ, Φ)` and cells of the coproduct of `n` copies of
//! the one-object groupoid `G`, the transport map to the wreath 2-product, and
//! a brute-force enumeration of self-equivalences.

use std::collections::{BTreeMap, HashMap};

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::cells::{sym_compose, sym_tensor, SymCell};
use crate::autos::{GroupHom, OuterStructure};
use crate::caps;
use crate::error::{Error, Result};
use crate::group::{permutations_lex, Elem, FiniteGroup, WreathProduct};
use crate::two_group::wreath_object_tensor;

/// `E(σ, Φ)`: copy `i` goes to copy `σ(i)` through the automorphism `Φ_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CoproductObject {
    pub sigma: Vec<usize>,
    pub phi: Vec<usize>,
}

/// A natural isomorphism `E(σ, Φ) ⇒ E(σ, Φ̃)` with components `g_i`, where
/// `Φ̃_i = c_{g_i} ∘ Φ_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CoproductCell {
    pub source: CoproductObject,
    pub target: CoproductObject,
    pub g: Vec<Elem>,
}

/// Arithmetic of `Sym(⊔ⁿG)` over a fixed `Aut(G)`.
#[derive(Clone, Copy, Debug)]
pub struct Coproduct<'a> {
    pub outer: &'a OuterStructure,
    pub n: usize,
}

impl<'a> Coproduct<'a> {
    pub fn new(outer: &'a OuterStructure, n: usize) -> Result<Self> {
        let count = object_count(n, outer.aut().order());
        let cap = caps::current().group_order as u128;
        if count > cap {
            return Err(Error::cap("objects of Sym(⊔ⁿG)", count, cap));
        }
        Ok(Coproduct { outer, n })
    }

    pub fn objects(&self) -> Vec<CoproductObject> {
        let a = self.outer.aut().order();
        let mut out = Vec::new();
        for sigma in permutations_lex(self.n) {
            let mut phi = vec![0; self.n];
            loop {
                out.push(CoproductObject { sigma: sigma.clone(), phi: phi.clone() });
                if !odometer(&mut phi, a) {
                    break;
                }
            }
        }
        out
    }

    pub fn is_object(&self, x: &CoproductObject) -> bool {
        let mut seen = vec![false; self.n];
        x.sigma.len() == self.n
            && x.phi.len() == self.n
            && x.sigma.iter().all(|&i| i < self.n && !std::mem::replace(&mut seen[i], true))
            && x.phi.iter().all(|&p| p < self.outer.aut().order())
    }

    pub fn cell(&self, source: CoproductObject, g: Vec<Elem>) -> Result<CoproductCell> {
        let aut = self.outer.aut();
        if !self.is_object(&source) || g.len() != self.n || g.iter().any(|&x| x >= self.outer.base().order()) {
            return Err(Error::InvalidCell("malformed coproduct cell".into()));
        }
        let phi = (0..self.n).map(|i| aut.mul(self.outer.inner_from(g[i]), source.phi[i])).collect();
        let target = CoproductObject { sigma: source.sigma.clone(), phi };
        Ok(CoproductCell { source, target, g })
    }

    fn check(&self, c: &CoproductCell) -> Result<()> {
        let ok = self.is_object(&c.source)
            && c.source.sigma == c.target.sigma
            && c.g.len() == self.n
            && self.cell(c.source.clone(), c.g.clone()).is_ok_and(|d| d.target == c.target);
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidCell("coproduct cell target is not c_g ∘ source".into()))
        }
    }

    /// `E(σ, Φ) ⊗ E(σ', Φ') = E(σσ', (Φ_{σ'(i)} ∘ Φ'_i)_i)`.
    pub fn tensor_objects(&self, a: &CoproductObject, b: &CoproductObject) -> CoproductObject {
        let aut = self.outer.aut();
        CoproductObject {
            sigma: (0..self.n).map(|i| a.sigma[b.sigma[i]]).collect(),
            phi: (0..self.n).map(|i| aut.mul(a.phi[b.sigma[i]], b.phi[i])).collect(),
        }
    }

    /// Component `i` of the tensor is `g_{σ'(i)} · Φ_{σ'(i)}(g'_i)`.
    pub fn tensor_cells(&self, a: &CoproductCell, b: &CoproductCell) -> Result<CoproductCell> {
        self.check(a)?;
        self.check(b)?;
        let g = self.outer.base();
        let sp = &b.source.sigma;
        let comps = (0..self.n)
            .map(|i| g.mul(a.g[sp[i]], self.outer.aut_element(a.source.phi[sp[i]]).apply(b.g[i])))
            .collect();
        let out = self.cell(self.tensor_objects(&a.source, &b.source), comps)?;
        if out.target != self.tensor_objects(&a.target, &b.target) {
            return Err(Error::Internal("tensor of cells has the wrong target".into()));
        }
        Ok(out)
    }

    pub fn compose(&self, later: &CoproductCell, earlier: &CoproductCell) -> Result<CoproductCell> {
        self.check(later)?;
        self.check(earlier)?;
        if later.source != earlier.target {
            return Err(Error::InvalidCell("composed cells do not meet".into()));
        }
        let g = self.outer.base();
        let comps = (0..self.n).map(|i| g.mul(later.g[i], earlier.g[i])).collect();
        self.cell(earlier.source.clone(), comps)
    }

    /// `T_{n,G}` on objects: the element `(σ, Φ)` of `S_n ≀ Aut(G)`.
    pub fn transport_object(&self, x: &CoproductObject) -> (Vec<usize>, Vec<Elem>) {
        (x.sigma.clone(), x.phi.clone())
    }

    /// `T_{n,G}` on cells: `(σ, (τ(g_i; Φ_i, Φ̃_i))_i)`.
    pub fn transport_cell(&self, c: &CoproductCell) -> (Vec<usize>, Vec<SymCell>) {
        let cells = (0..self.n).map(|i| SymCell { g: c.g[i], source: c.source.phi[i], target: c.target.phi[i] }).collect();
        (c.source.sigma.clone(), cells)
    }
}

fn object_count(n: usize, aut: usize) -> u128 {
    let fact: u128 = (1..=n as u128).product();
    fact.saturating_mul((aut as u128).saturating_pow(n as u32))
}

fn odometer(digits: &mut [usize], radix: usize) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < radix {
            return true;
        }
        *d = 0;
    }
    false
}

/// Wreath 2-product tensor of transported cells: `(σ, f) ⊗ (σ', f') = (σσ', (f_{σ'(i)} ⊗ f'_i)_i)`.
pub fn wreath_cell_tensor(
    outer: &OuterStructure,
    a: &(Vec<usize>, Vec<SymCell>),
    b: &(Vec<usize>, Vec<SymCell>),
) -> Result<(Vec<usize>, Vec<SymCell>)> {
    let n = a.0.len();
    let sigma = (0..n).map(|i| a.0[b.0[i]]).collect();
    let cells = (0..n).map(|i| sym_tensor(outer, a.1[b.0[i]], b.1[i])).collect::<Result<_>>()?;
    Ok((sigma, cells))
}

/// Counts from [`transport_check`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransportReport {
    pub object_pairs: u64,
    pub cell_pairs: u64,
    pub composition_pairs: u64,
    pub failures: Vec<String>,
}

impl TransportReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Check that `T_{n,G}` is a strict monoidal isomorphism: bijective on
/// objects, `T(a ⊗ b) = T(a) ⊗ T(b)` on all object pairs (also against the
/// multiplication of `S_n ≀ Aut(G)`), and on `cell_pairs` random pairs of
/// cells for both tensor and composition.
pub fn transport_check<R: Rng>(outer: &OuterStructure, n: usize, cell_pairs: usize, rng: &mut R) -> Result<TransportReport> {
    let cp = Coproduct::new(outer, n)?;
    let aut = outer.aut();
    let wreath = WreathProduct::new(n, aut)?;
    let objects = cp.objects();
    let mut report = TransportReport::default();
    let fail = |report: &mut TransportReport, msg: String| {
        if report.failures.len() < 16 {
            report.failures.push(msg);
        }
    };
    let encoded: Vec<Elem> = objects
        .iter()
        .map(|x| {
            let (s, p) = cp.transport_object(x);
            wreath.encode(wreath.perm_index(&s), &p)
        })
        .collect();
    let mut seen = encoded.clone();
    seen.sort_unstable();
    seen.dedup();
    if seen.len() != objects.len() || objects.len() != wreath.group().order() {
        fail(&mut report, "T is not a bijection on objects".into());
    }
    for (i, a) in objects.iter().enumerate() {
        for (j, b) in objects.iter().enumerate() {
            report.object_pairs += 1;
            let t = cp.transport_object(&cp.tensor_objects(a, b));
            let (ta, tb) = (cp.transport_object(a), cp.transport_object(b));
            let w = wreath_object_tensor(aut, (&ta.0, &ta.1), (&tb.0, &tb.1))?;
            let prod = wreath.group().mul(encoded[i], encoded[j]);
            if t != w || wreath.encode(wreath.perm_index(&t.0), &t.1) != prod {
                fail(&mut report, format!("object pair {a:?} ⊗ {b:?}"));
            }
        }
    }
    let order = outer.base().order();
    let random_cell = |rng: &mut R| -> Result<CoproductCell> {
        let src = objects[rng.gen_range(0..objects.len())].clone();
        cp.cell(src, (0..n).map(|_| rng.gen_range(0..order)).collect())
    };
    for _ in 0..cell_pairs {
        let a = random_cell(rng)?;
        let b = random_cell(rng)?;
        report.cell_pairs += 1;
        let lhs = cp.transport_cell(&cp.tensor_cells(&a, &b)?);
        let rhs = wreath_cell_tensor(outer, &cp.transport_cell(&a), &cp.transport_cell(&b))?;
        if lhs != rhs {
            fail(&mut report, format!("cell pair {a:?} ⊗ {b:?}"));
        }
        let later = cp.cell(a.target.clone(), (0..n).map(|_| rng.gen_range(0..order)).collect())?;
        report.composition_pairs += 1;
        let lhs = cp.transport_cell(&cp.compose(&later, &a)?);
        let (tl, ta) = (cp.transport_cell(&later), cp.transport_cell(&a));
        let rhs: Vec<SymCell> = (0..n).map(|i| sym_compose(outer, tl.1[i], ta.1[i])).collect::<Result<_>>()?;
        if lhs != (ta.0.clone(), rhs) {
            fail(&mut report, format!("composition {later:?} ∘ {a:?}"));
        }
    }
    Ok(report)
}

/// Every endomorphism of `g`, found by trying all images of a generating set
/// and keeping those accepted by [`GroupHom::new`].
pub fn endomorphisms(g: &FiniteGroup) -> Result<Vec<GroupHom>> {
    let gens = g.greedy_generators();
    let total = (g.order() as u128).saturating_pow(gens.len() as u32);
    let cap = caps::current().section_budget as u128;
    if total > cap {
        return Err(Error::cap("endomorphism candidates", total, cap));
    }
    let mut out = Vec::new();
    let mut imgs = vec![0; gens.len()];
    loop {
        if let Some(map) = extend_on_words(g, &gens, &imgs) {
            if let Ok(h) = GroupHom::new(g, g, map) {
                out.push(h);
            }
        }
        if !odometer(&mut imgs, g.order()) {
            break;
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

fn extend_on_words(g: &FiniteGroup, gens: &[Elem], imgs: &[Elem]) -> Option<Vec<Elem>> {
    let mut map = vec![usize::MAX; g.order()];
    map[g.identity()] = g.identity();
    let mut queue = vec![g.identity()];
    while let Some(x) = queue.pop() {
        for (&s, &t) in gens.iter().zip(imgs) {
            let y = g.mul(x, s);
            let fy = g.mul(map[x], t);
            if map[y] == usize::MAX {
                map[y] = fy;
                queue.push(y);
            } else if map[y] != fy {
                return None;
            }
        }
    }
    Some(map)
}

/// A functor `⊔ⁿG → ⊔ⁿG`: copy `i` goes to copy `f(i)` through `h_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupoidFunctor {
    pub f: Vec<usize>,
    pub h: Vec<GroupHom>,
}

impl GroupoidFunctor {
    pub fn is_equivalence(&self) -> bool {
        let mut seen = vec![false; self.f.len()];
        self.f.iter().all(|&i| !std::mem::replace(&mut seen[i], true)) && self.h.iter().all(GroupHom::is_bijective)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &GroupoidFunctor) -> GroupoidFunctor {
        GroupoidFunctor {
            f: other.f.iter().map(|&j| self.f[j]).collect(),
            h: (0..other.f.len()).map(|i| self.h[other.f[i]].compose(&other.h[i])).collect(),
        }
    }
}

/// All functors `⊔ⁿG → ⊔ⁿG` that are equivalences, by exhaustion over object
/// maps and componentwise endomorphisms.
pub fn self_equivalences(g: &FiniteGroup, n: usize) -> Result<Vec<GroupoidFunctor>> {
    let ends = endomorphisms(g)?;
    let total = (n as u128).saturating_pow(n as u32).saturating_mul((ends.len() as u128).saturating_pow(n as u32));
    let cap = caps::current().section_budget as u128;
    if total > cap {
        return Err(Error::cap("functors of ⊔ⁿG", total, cap));
    }
    let mut out = Vec::new();
    let mut f = vec![0; n];
    loop {
        let mut hs = vec![0; n];
        loop {
            let fun = GroupoidFunctor { f: f.clone(), h: hs.iter().map(|&k| ends[k].clone()).collect() };
            if fun.is_equivalence() {
                out.push(fun);
            }
            if !odometer(&mut hs, ends.len()) {
                break;
            }
        }
        if !odometer(&mut f, n) {
            break;
        }
    }
    out.sort();
    Ok(out)
}

/// The group of self-equivalences under composition.
pub fn self_equivalence_group(equivalences: &[GroupoidFunctor]) -> Result<FiniteGroup> {
    let index: HashMap<&GroupoidFunctor, usize> = equivalences.iter().enumerate().map(|(i, f)| (f, i)).collect();
    let mut rows = Vec::with_capacity(equivalences.len());
    for a in equivalences {
        let mut row = Vec::with_capacity(equivalences.len());
        for b in equivalences {
            match index.get(&a.compose(b)) {
                Some(&k) => row.push(k),
                None => return Err(Error::Internal("self-equivalences are not closed under composition".into())),
            }
        }
        rows.push(row);
    }
    FiniteGroup::from_table(rows)
}

/// Classes of self-equivalences up to natural isomorphism: `(f, h) ≅ (f, h')`
/// iff each `h'_i = c_g ∘ h_i` for some `g`. Returns the class of each
/// equivalence and the quotient group of classes.
pub fn isomorphism_classes(g: &FiniteGroup, equivalences: &[GroupoidFunctor]) -> Result<(Vec<usize>, FiniteGroup)> {
    let conj = |h: &GroupHom| -> Vec<Vec<Elem>> {
        let mut orbit: Vec<Vec<Elem>> =
            g.elements().map(|x| h.images.iter().map(|&y| g.conjugate(x, y)).collect()).collect();
        orbit.sort();
        orbit.dedup();
        orbit
    };
    let mut keys: BTreeMap<(Vec<usize>, Vec<Vec<Vec<Elem>>>), usize> = BTreeMap::new();
    let mut class_of = Vec::with_capacity(equivalences.len());
    let mut reps = Vec::new();
    for (i, e) in equivalences.iter().enumerate() {
        let key = (e.f.clone(), e.h.iter().map(conj).collect());
        let next = keys.len();
        let k = *keys.entry(key).or_insert(next);
        if k == next {
            reps.push(i);
        }
        class_of.push(k);
    }
    let index: HashMap<&GroupoidFunctor, usize> = equivalences.iter().enumerate().map(|(i, f)| (f, i)).collect();
    let mut rows = Vec::with_capacity(reps.len());
    for &a in &reps {
        let mut row = Vec::with_capacity(reps.len());
        for &b in &reps {
            let c = index
                .get(&equivalences[a].compose(&equivalences[b]))
                .ok_or_else(|| Error::Internal("composition left the equivalences".into()))?;
            row.push(class_of[*c]);
        }
        rows.push(row);
    }
    Ok((class_of, FiniteGroup::from_table(rows)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::autos::{automorphism_group, is_isomorphic};
    use crate::group::{cyclic, symmetric};
    use rand::SeedableRng;

    #[test]
    fn n_one_is_sym_tensor() {
        let o = automorphism_group(&symmetric(3).unwrap()).unwrap();
        let cp = Coproduct::new(&o, 1).unwrap();
        let a = cp.cell(CoproductObject { sigma: vec![0], phi: vec![2] }, vec![3]).unwrap();
        let b = cp.cell(CoproductObject { sigma: vec![0], phi: vec![4] }, vec![1]).unwrap();
        let t = cp.tensor_cells(&a, &b).unwrap();
        let s = sym_tensor(&o, cp.transport_cell(&a).1[0], cp.transport_cell(&b).1[0]).unwrap();
        assert_eq!((t.g[0], t.source.phi[0], t.target.phi[0]), (s.g, s.source, s.target));
    }

    #[test]
    fn s3_pair_counts() {
        let s3 = symmetric(3).unwrap();
        assert_eq!(endomorphisms(&s3).unwrap().len(), 10);
        let eq = self_equivalences(&s3, 2).unwrap();
        assert_eq!(eq.len(), 72);
        let grp = self_equivalence_group(&eq).unwrap();
        let o = automorphism_group(&s3).unwrap();
        let w = WreathProduct::new(2, o.aut()).unwrap();
        assert!(is_isomorphic(&grp, w.group()).is_some());
        let (_, classes) = isomorphism_classes(&s3, &eq).unwrap();
        assert_eq!(classes.order(), 2);
    }

    #[test]
    fn z2_pair_classes() {
        let z2 = cyclic(2).unwrap();
        let eq = self_equivalences(&z2, 2).unwrap();
        let (_, classes) = isomorphism_classes(&z2, &eq).unwrap();
        assert_eq!(classes.order(), 2);
    }

    #[test]
    fn transport_small() {
        let o = automorphism_group(&symmetric(3).unwrap()).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        let r = transport_check(&o, 2, 50, &mut rng).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
        assert_eq!(r.object_pairs, 72 * 72);
    }
}

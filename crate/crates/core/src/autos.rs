//! Automorphism groups, inner and outer automorphisms, and épinglage data.
//!
//! Automorphisms are found by backtracking over images of a small generating
//! set. Candidate images must match the generator's order and conjugacy-class
//! size; a partial assignment is extended along the Cayley graph of the
//! subgroup generated so far, and every edge `x -> x g` is checked, which is
//! the homomorphism law in full.

use std::collections::HashMap;
use std::ops::ControlFlow;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::caps;
use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup};

const NONE: usize = usize::MAX;

/// A homomorphism given by its image array.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupHom {
    pub images: Vec<Elem>,
}

impl GroupHom {
    /// Check the identity and homomorphism laws over all pairs.
    pub fn new(domain: &FiniteGroup, codomain: &FiniteGroup, images: Vec<Elem>) -> Result<Self> {
        if images.len() != domain.order() {
            return Err(Error::InvalidArgument(format!(
                "{} images for a domain of order {}",
                images.len(),
                domain.order()
            )));
        }
        if let Some(&y) = images.iter().find(|&&y| y >= codomain.order()) {
            return Err(Error::InvalidArgument(format!("image {y} out of range")));
        }
        if images[domain.identity()] != codomain.identity() {
            return Err(Error::InvalidArgument("identity is not sent to identity".into()));
        }
        for x in domain.elements() {
            for y in domain.elements() {
                if images[domain.mul(x, y)] != codomain.mul(images[x], images[y]) {
                    return Err(Error::InvalidArgument(format!("homomorphism law fails at ({x}, {y})")));
                }
            }
        }
        Ok(GroupHom { images })
    }

    pub fn identity(order: usize) -> Self {
        GroupHom { images: (0..order).collect() }
    }

    #[inline]
    pub fn apply(&self, x: Elem) -> Elem {
        self.images[x]
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &GroupHom) -> GroupHom {
        GroupHom { images: other.images.iter().map(|&x| self.images[x]).collect() }
    }

    pub fn is_bijective(&self) -> bool {
        let mut seen = vec![false; self.images.len()];
        self.images.iter().all(|&y| y < seen.len() && !std::mem::replace(&mut seen[y], true))
    }

    pub fn inverse(&self) -> GroupHom {
        let mut inv = vec![0; self.images.len()];
        for (x, &y) in self.images.iter().enumerate() {
            inv[y] = x;
        }
        GroupHom { images: inv }
    }
}

/// A choice of normalized section `s` of `Aut -> Out` and conjugator witness
/// `t` with `phi = c_{t(phi)} ∘ s[p(phi)]` and `t(s[o]) = e`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Epinglage {
    pub section: Vec<usize>,
    pub conjugator: Vec<Elem>,
}

/// `Aut(G)` with `Inn(G)`, `Out(G)` and a canonical épinglage.
#[derive(Clone, Debug)]
pub struct OuterStructure {
    base: Arc<FiniteGroup>,
    generators: Vec<Elem>,
    aut: FiniteGroup,
    aut_elements: Vec<GroupHom>,
    lookup: HashMap<Vec<Elem>, usize>,
    inner_map: Vec<usize>,
    inn: Vec<usize>,
    out: FiniteGroup,
    projection: Vec<usize>,
    classes: Vec<Vec<usize>>,
    epinglage: Epinglage,
}

impl OuterStructure {
    pub fn base(&self) -> &FiniteGroup {
        &self.base
    }

    pub fn base_arc(&self) -> &Arc<FiniteGroup> {
        &self.base
    }

    /// Generating set of the base used by the search.
    pub fn generators(&self) -> &[Elem] {
        &self.generators
    }

    /// `Aut(G)` under `a * b = a ∘ b`.
    pub fn aut(&self) -> &FiniteGroup {
        &self.aut
    }

    pub fn aut_elements(&self) -> &[GroupHom] {
        &self.aut_elements
    }

    pub fn aut_element(&self, a: usize) -> &GroupHom {
        &self.aut_elements[a]
    }

    /// Aut-index of an automorphism, located by its generator images.
    pub fn index_of(&self, phi: &GroupHom) -> Option<usize> {
        let key: Vec<Elem> = self.generators.iter().map(|&g| phi.apply(g)).collect();
        self.lookup.get(&key).copied().filter(|&a| self.aut_elements[a] == *phi)
    }

    /// Sorted Aut-indices of inner automorphisms.
    pub fn inn(&self) -> &[usize] {
        &self.inn
    }

    /// Aut-index of `c_g`.
    pub fn inner_from(&self, g: Elem) -> usize {
        self.inner_map[g]
    }

    pub fn out(&self) -> &FiniteGroup {
        &self.out
    }

    /// The projection `p: Aut -> Out`.
    pub fn projection(&self) -> &[usize] {
        &self.projection
    }

    /// Members of each outer class, sorted; class 0 is `Inn(G)`.
    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn section(&self) -> &[usize] {
        &self.epinglage.section
    }

    pub fn conjugator(&self) -> &[Elem] {
        &self.epinglage.conjugator
    }

    pub fn epinglage(&self) -> &Epinglage {
        &self.epinglage
    }

    /// All `g` with `c_g = aut element a` (empty unless `a` is inner).
    pub fn conjugators_of(&self, a: usize) -> Vec<Elem> {
        self.base.elements().filter(|&g| self.inner_map[g] == a).collect()
    }

    /// The least conjugator witnesses for an arbitrary normalized section.
    pub fn epinglage_for_section(&self, section: Vec<usize>) -> Result<Epinglage> {
        self.check_section(&section)?;
        let mut conjugator = vec![NONE; self.aut.order()];
        for &s in &section {
            for g in self.base.elements() {
                let b = self.aut.mul(self.inner_map[g], s);
                if conjugator[b] == NONE {
                    conjugator[b] = g;
                }
            }
        }
        if conjugator.contains(&NONE) {
            return Err(Error::Internal("conjugator map is not total".into()));
        }
        let ep = Epinglage { section, conjugator };
        self.check_epinglage(&ep)?;
        Ok(ep)
    }

    fn check_section(&self, section: &[usize]) -> Result<()> {
        if section.len() != self.out.order() {
            return Err(Error::InvalidArgument("section has wrong length".into()));
        }
        if section[0] != self.aut.identity() {
            return Err(Error::InvalidArgument("section is not normalized".into()));
        }
        for (o, &a) in section.iter().enumerate() {
            if a >= self.aut.order() || self.projection[a] != o {
                return Err(Error::InvalidArgument(format!("section fails p(s({o})) = {o}")));
            }
        }
        Ok(())
    }

    /// Check the section law, normalization and `phi = c_{t(phi)} ∘ s[p(phi)]`.
    pub fn check_epinglage(&self, ep: &Epinglage) -> Result<()> {
        self.check_section(&ep.section)?;
        if ep.conjugator.len() != self.aut.order() {
            return Err(Error::InvalidArgument("conjugator map has wrong length".into()));
        }
        for (o, &s) in ep.section.iter().enumerate() {
            if ep.conjugator[s] != self.base.identity() {
                return Err(Error::InvalidArgument(format!("t(s[{o}]) is not the identity")));
            }
        }
        for a in self.aut.elements() {
            let g = ep.conjugator[a];
            if g >= self.base.order()
                || self.aut.mul(self.inner_map[g], ep.section[self.projection[a]]) != a
            {
                return Err(Error::InvalidArgument(format!("épinglage identity fails at automorphism {a}")));
            }
        }
        Ok(())
    }

    /// Every normalized section, ordered lexicographically by chosen
    /// Aut-indices. Fails if more than `budget` would be produced.
    pub fn all_sections(&self, budget: u64) -> Result<Vec<Vec<usize>>> {
        let mut count: u128 = 1;
        for c in &self.classes[1..] {
            count = count.saturating_mul(c.len() as u128);
        }
        if count > budget as u128 {
            return Err(Error::BudgetExhausted(format!("{count} sections exceed the budget of {budget}")));
        }
        let mut out = vec![vec![self.aut.identity()]];
        for c in &self.classes[1..] {
            let mut next = Vec::with_capacity(out.len() * c.len());
            for prefix in &out {
                for &a in c {
                    let mut s = prefix.clone();
                    s.push(a);
                    next.push(s);
                }
            }
            out = next;
        }
        Ok(out)
    }

    /// Every épinglage: each normalized section with every choice of
    /// conjugator witnesses (`|Z(G)|` per automorphism off the section).
    /// Fails if more than `budget` would be produced.
    pub fn all_epinglages(&self, budget: u64) -> Result<Vec<Epinglage>> {
        let sections = self.all_sections(budget)?;
        let free = self.aut.order() - self.out.order();
        let per = (self.base.center().len() as u128).saturating_pow(free as u32);
        let total = per.saturating_mul(sections.len() as u128);
        if total > budget as u128 {
            return Err(Error::BudgetExhausted(format!("{total} épinglages exceed the budget of {budget}")));
        }
        let mut out = Vec::with_capacity(total as usize);
        for section in sections {
            let mut partial = vec![vec![NONE; self.aut.order()]];
            for a in self.aut.elements() {
                let s = section[self.projection[a]];
                let choices: Vec<Elem> = if s == a {
                    vec![self.base.identity()]
                } else {
                    let target = self.aut.mul(a, self.aut.inv(s));
                    self.conjugators_of(target)
                };
                let mut next = Vec::with_capacity(partial.len() * choices.len());
                for p in &partial {
                    for &g in &choices {
                        let mut q = p.clone();
                        q[a] = g;
                        next.push(q);
                    }
                }
                partial = next;
            }
            for conjugator in partial {
                let ep = Epinglage { section: section.clone(), conjugator };
                self.check_epinglage(&ep)?;
                out.push(ep);
            }
        }
        Ok(out)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(&OuterJson::from(self))?)
    }
}

#[derive(Serialize)]
struct OuterJson<'a> {
    base_ref: String,
    aut: &'a FiniteGroup,
    aut_elements: &'a [GroupHom],
    inn: &'a [usize],
    out: &'a FiniteGroup,
    projection: &'a [usize],
    section: &'a [usize],
    conjugator: &'a [Elem],
}

impl<'a> From<&'a OuterStructure> for OuterJson<'a> {
    fn from(o: &'a OuterStructure) -> Self {
        OuterJson {
            base_ref: o.base.reference(),
            aut: &o.aut,
            aut_elements: &o.aut_elements,
            inn: &o.inn,
            out: &o.out,
            projection: &o.projection,
            section: &o.epinglage.section,
            conjugator: &o.epinglage.conjugator,
        }
    }
}

/// Generators chosen greedily: each step takes the element that enlarges the
/// generated subgroup most, then the one with the fewest same-fingerprint
/// elements (fewest candidate images), then the least index.
fn search_generators(g: &FiniteGroup, fps: &[(usize, usize)]) -> Vec<Elem> {
    let mut counts: HashMap<(usize, usize), usize> = HashMap::new();
    for fp in fps {
        *counts.entry(*fp).or_default() += 1;
    }
    let mut gens: Vec<Elem> = Vec::new();
    let mut current = vec![g.identity()];
    while current.len() < g.order() {
        let mut member = vec![false; g.order()];
        for &x in &current {
            member[x] = true;
        }
        let mut best: Option<((usize, std::cmp::Reverse<usize>), Elem)> = None;
        for x in g.elements() {
            if member[x] {
                continue;
            }
            let mut cand = gens.clone();
            cand.push(x);
            let size = g.generated(&cand).len();
            let key = (size, std::cmp::Reverse(counts[&fps[x]]));
            if best.as_ref().map_or(true, |(k, _)| key > *k) {
                best = Some((key, x));
            }
        }
        let (_, x) = best.expect("a non-member exists");
        gens.push(x);
        current = g.generated(&gens);
    }
    gens
}

/// Enumerate injective homomorphisms `G -> H` determined by generator images
/// drawn from `candidates[i]`, in lexicographic order of the image tuple.
fn for_each_extension<F>(
    g: &FiniteGroup,
    h: &FiniteGroup,
    gens: &[Elem],
    candidates: &[Vec<Elem>],
    mut visit: F,
) -> ControlFlow<()>
where
    F: FnMut(&[Elem], &[Elem]) -> ControlFlow<()>,
{
    let mut map = vec![NONE; g.order()];
    map[g.identity()] = h.identity();
    let mut used = vec![false; h.order()];
    used[h.identity()] = true;
    let mut imgs = Vec::with_capacity(gens.len());
    rec(g, h, gens, candidates, 0, &mut map, &mut used, &mut imgs, &mut visit)
}

#[allow(clippy::too_many_arguments)]
fn rec<F>(
    g: &FiniteGroup,
    h: &FiniteGroup,
    gens: &[Elem],
    candidates: &[Vec<Elem>],
    level: usize,
    map: &mut Vec<usize>,
    used: &mut Vec<bool>,
    imgs: &mut Vec<Elem>,
    visit: &mut F,
) -> ControlFlow<()>
where
    F: FnMut(&[Elem], &[Elem]) -> ControlFlow<()>,
{
    if level == gens.len() {
        return visit(imgs, map);
    }
    let defined: Vec<Elem> = g.elements().filter(|&x| map[x] != NONE).collect();
    for &y in &candidates[level] {
        imgs.push(y);
        let mut m = map.clone();
        let mut u = used.clone();
        if extend(g, h, &gens[..=level], imgs, &defined, &mut m, &mut u) {
            rec(g, h, gens, candidates, level + 1, &mut m, &mut u, imgs, visit)?;
        }
        imgs.pop();
    }
    ControlFlow::Continue(())
}

/// Extend `map` from the subgroup it is defined on to the subgroup generated
/// by `gens`, checking `map(x g_j) = map(x) imgs_j` on every edge and injectivity.
fn extend(
    g: &FiniteGroup,
    h: &FiniteGroup,
    gens: &[Elem],
    imgs: &[Elem],
    defined: &[Elem],
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    let mut queue: Vec<Elem> = defined.to_vec();
    let mut i = 0;
    while i < queue.len() {
        let x = queue[i];
        i += 1;
        for (j, &gj) in gens.iter().enumerate() {
            let y = g.mul(x, gj);
            let val = h.mul(map[x], imgs[j]);
            if map[y] == NONE {
                if used[val] {
                    return false;
                }
                used[val] = true;
                map[y] = val;
                queue.push(y);
            } else if map[y] != val {
                return false;
            }
        }
    }
    true
}

/// Sorted fingerprint multiset; equal for isomorphic groups.
fn fingerprint_profile(fps: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let mut v = fps.to_vec();
    v.sort_unstable();
    v
}

/// Compute `Aut(G)`, `Inn(G)`, `Out(G)` and the canonical épinglage.
pub fn automorphism_group(g: &FiniteGroup) -> Result<OuterStructure> {
    automorphism_group_arc(Arc::new(g.clone()))
}

pub fn automorphism_group_arc(base: Arc<FiniteGroup>) -> Result<OuterStructure> {
    let g = &*base;
    let cap = caps::current().group_order;
    if g.order() > cap {
        return Err(Error::cap("group order", g.order(), cap));
    }
    let fps = g.fingerprints();
    let gens = search_generators(g, &fps);
    let candidates: Vec<Vec<Elem>> =
        gens.iter().map(|&x| g.elements().filter(|&y| fps[y] == fps[x]).collect()).collect();
    let mut autos: Vec<Vec<Elem>> = Vec::new();
    let mut over = false;
    let _ = for_each_extension(g, g, &gens, &candidates, |_, map| {
        if autos.len() >= cap {
            over = true;
            return ControlFlow::Break(());
        }
        autos.push(map.to_vec());
        ControlFlow::Continue(())
    });
    if over {
        return Err(Error::cap("automorphism group order", autos.len() + 1, cap));
    }
    autos.sort_unstable();
    let aut_elements: Vec<GroupHom> = autos.into_iter().map(|images| GroupHom { images }).collect();
    let na = aut_elements.len();
    let key = |phi: &GroupHom| -> Vec<Elem> { gens.iter().map(|&x| phi.apply(x)).collect() };
    let mut lookup = HashMap::with_capacity(na);
    for (a, phi) in aut_elements.iter().enumerate() {
        lookup.insert(key(phi), a);
    }
    let find = |k: &Vec<Elem>| -> Result<usize> {
        lookup.get(k).copied().ok_or_else(|| Error::Internal("composite automorphism not enumerated".into()))
    };
    let mut table = Vec::with_capacity(na * na);
    for phi in &aut_elements {
        for psi in &aut_elements {
            let k: Vec<Elem> = gens.iter().map(|&x| phi.apply(psi.apply(x))).collect();
            table.push(find(&k)? as u32);
        }
    }
    let id_aut = find(&gens.clone())?;
    let labels = automorphism_labels(g, &aut_elements);
    let aut = FiniteGroup::from_parts(na, table, id_aut, labels, Some(format!("aut({})", g.reference())))?;

    let mut inner_map = Vec::with_capacity(g.order());
    for x in g.elements() {
        let k: Vec<Elem> = gens.iter().map(|&y| g.conjugate(x, y)).collect();
        inner_map.push(find(&k)?);
    }
    let mut inn = inner_map.clone();
    inn.sort_unstable();
    inn.dedup();

    // outer classes: Inn first, then by least member
    let mut projection = vec![NONE; na];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut assign = |a: usize, projection: &mut Vec<usize>| {
        let o = classes.len();
        let mut members: Vec<usize> = inn.iter().map(|&i| aut.mul(i, a)).collect();
        members.sort_unstable();
        for &b in &members {
            projection[b] = o;
        }
        classes.push(members);
    };
    assign(id_aut, &mut projection);
    for a in 0..na {
        if projection[a] == NONE {
            assign(a, &mut projection);
        }
    }
    let no = classes.len();
    if na != inn.len() * no {
        return Err(Error::Internal("|Aut| != |Inn| |Out|".into()));
    }
    let section: Vec<usize> =
        classes.iter().enumerate().map(|(o, c)| if o == 0 { id_aut } else { c[0] }).collect();
    let mut out_table = Vec::with_capacity(no * no);
    for &s1 in &section {
        for &s2 in &section {
            out_table.push(projection[aut.mul(s1, s2)] as u32);
        }
    }
    let out_labels = (0..no).map(|o| format!("[{}]", aut.label(section[o]))).collect();
    let out = FiniteGroup::from_parts(no, out_table, 0, Some(out_labels), Some(format!("out({})", g.reference())))?;
    let mut outer = OuterStructure {
        base: base.clone(),
        generators: gens.clone(),
        aut,
        aut_elements,
        lookup,
        inner_map,
        inn,
        out,
        projection,
        classes,
        epinglage: Epinglage { section: Vec::new(), conjugator: Vec::new() },
    };
    outer.epinglage = outer.epinglage_for_section(section)?;
    outer.check_projection_homomorphism()?;
    Ok(outer)
}

impl OuterStructure {
    fn check_projection_homomorphism(&self) -> Result<()> {
        for a in self.aut.elements() {
            for b in self.aut.elements() {
                if self.projection[self.aut.mul(a, b)] != self.out.mul(self.projection[a], self.projection[b]) {
                    return Err(Error::Internal(format!("projection is not a homomorphism at ({a}, {b})")));
                }
            }
        }
        Ok(())
    }
}

/// Labels `phi(p,q)` (`r -> r^q`, `s -> s r^p`) for dihedral bases, `a<i>` otherwise.
fn automorphism_labels(g: &FiniteGroup, autos: &[GroupHom]) -> Option<Vec<String>> {
    if let Some(n) = dihedral_degree(g) {
        if n >= 3 {
            return Some(
                autos
                    .iter()
                    .map(|phi| {
                        let (p, q) = dihedral_parameters(n, phi);
                        format!("φ({p},{q})")
                    })
                    .collect(),
            );
        }
    }
    Some((0..autos.len()).map(|a| format!("a{a}")).collect())
}

/// The `n` of a group built by `dihedral(n)`.
pub fn dihedral_degree(g: &FiniteGroup) -> Option<usize> {
    let tag = g.family_tag()?;
    tag.strip_prefix("dihedral(")?.strip_suffix(')')?.parse().ok()
}

/// `(p, q)` with `phi(r) = r^q`, `phi(s) = s r^p`, for the canonical layout of `dihedral(n)`.
pub fn dihedral_parameters(n: usize, phi: &GroupHom) -> (usize, usize) {
    (phi.apply(n) - n, phi.apply(1))
}

/// An isomorphism `G -> H`, the first in canonical search order, if any.
pub fn is_isomorphic(g: &FiniteGroup, h: &FiniteGroup) -> Option<GroupHom> {
    let mut found = None;
    isomorphism_search(g, h, |phi| {
        found = Some(phi);
        ControlFlow::Break(())
    });
    found
}

/// Every isomorphism `G -> H`, sorted by image array.
pub fn all_isomorphisms(g: &FiniteGroup, h: &FiniteGroup) -> Vec<GroupHom> {
    let mut all = Vec::new();
    isomorphism_search(g, h, |phi| {
        all.push(phi);
        ControlFlow::Continue(())
    });
    all.sort();
    all
}

fn isomorphism_search<F: FnMut(GroupHom) -> ControlFlow<()>>(g: &FiniteGroup, h: &FiniteGroup, mut visit: F) {
    if g.order() != h.order() {
        return;
    }
    let fg = g.fingerprints();
    let fh = h.fingerprints();
    if fingerprint_profile(&fg) != fingerprint_profile(&fh) {
        return;
    }
    let gens = search_generators(g, &fg);
    let candidates: Vec<Vec<Elem>> =
        gens.iter().map(|&x| h.elements().filter(|&y| fh[y] == fg[x]).collect()).collect();
    let _ = for_each_extension(g, h, &gens, &candidates, |_, map| visit(GroupHom { images: map.to_vec() }));
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic, dihedral, direct_product, symmetric};

    fn euler_phi(n: usize) -> usize {
        (1..=n).filter(|&k| crate::group::gcd(k, n) == 1).count()
    }

    /// Independent count: all pairs (image of r, image of s) that satisfy the
    /// defining relations and generate.
    fn brute_force_dihedral_aut_count(n: usize) -> usize {
        let g = dihedral(n).unwrap();
        let (r, s) = (1, n);
        let mut count = 0;
        for a in g.elements() {
            for b in g.elements() {
                let ok = g.element_order(a) == n
                    && g.element_order(b) == 2
                    && g.mul(b, a) == g.mul(g.inv(a), b)
                    && g.generated(&[a, b]).len() == g.order();
                if ok {
                    count += 1;
                }
            }
        }
        let _ = (r, s);
        count
    }

    #[test]
    fn dihedral_aut_orders() {
        for n in 3..=12 {
            let o = automorphism_group(&dihedral(n).unwrap()).unwrap();
            assert_eq!(o.aut().order(), n * euler_phi(n), "n = {n}");
            assert_eq!(o.aut().order(), brute_force_dihedral_aut_count(n), "n = {n}");
        }
    }

    #[test]
    fn d8_structure() {
        let o = automorphism_group(&dihedral(8).unwrap()).unwrap();
        assert_eq!((o.aut().order(), o.inn().len(), o.out().order()), (32, 8, 4));
        let classes: Vec<String> = o.section().iter().map(|&a| o.aut().label(a)).collect();
        assert_eq!(classes, ["φ(0,1)", "φ(1,1)", "φ(0,3)", "φ(1,3)"]);
        // c_{r^l} = φ(-2l, 1)
        for l in 0..8 {
            let c = o.aut_element(o.inner_from(l));
            assert_eq!(dihedral_parameters(8, c), ((16 - 2 * l) % 8, 1));
        }
        assert_eq!(o.conjugators_of(o.inner_from(2)), vec![2, 6]);
    }

    #[test]
    fn symmetric_outer_orders() {
        assert_eq!(automorphism_group(&symmetric(5).unwrap()).unwrap().out().order(), 1);
        assert_eq!(automorphism_group(&symmetric(3).unwrap()).unwrap().aut().order(), 6);
    }

    #[test]
    fn abelian_aut_is_out() {
        let o = automorphism_group(&cyclic(12).unwrap()).unwrap();
        assert_eq!(o.inn(), &[o.aut().identity()]);
        assert_eq!(o.out().order(), 4);
    }

    #[test]
    fn epinglage_invariants() {
        for g in [dihedral(4).unwrap(), dihedral(6).unwrap(), symmetric(4).unwrap()] {
            let o = automorphism_group(&g).unwrap();
            o.check_epinglage(o.epinglage()).unwrap();
            for sec in o.all_sections(1000).unwrap() {
                let ep = o.epinglage_for_section(sec).unwrap();
                o.check_epinglage(&ep).unwrap();
            }
            // kernel of g -> c_g is the center
            let kernel: Vec<Elem> = g.elements().filter(|&x| o.inner_from(x) == o.aut().identity()).collect();
            assert_eq!(kernel, g.center());
        }
    }

    #[test]
    fn isomorphism_queries() {
        let z2 = cyclic(2).unwrap();
        assert!(is_isomorphic(&symmetric(2).unwrap(), &z2).is_some());
        assert!(is_isomorphic(&dihedral(4).unwrap(), &cyclic(8).unwrap()).is_none());
        let d6 = dihedral(6).unwrap();
        let target = direct_product(&z2, &symmetric(3).unwrap()).unwrap();
        let phi = is_isomorphic(&d6, &target).unwrap();
        GroupHom::new(&d6, &target, phi.images.clone()).unwrap();
        assert!(phi.is_bijective());
        assert_eq!(all_isomorphisms(&d6, &d6).len(), 12);
    }

    #[test]
    fn json_has_all_arrays() {
        let o = automorphism_group(&dihedral(4).unwrap()).unwrap();
        let v: serde_json::Value = serde_json::from_str(&o.to_json().unwrap()).unwrap();
        for k in ["aut", "aut_elements", "inn", "out", "projection", "section", "conjugator"] {
            assert!(v.get(k).is_some(), "{k}");
        }
    }
}

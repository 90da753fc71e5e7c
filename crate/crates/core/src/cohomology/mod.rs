//! Normalized cochains with values in a finite `G`-module, the bar
//! differential, and an exact coboundary decision.
//!
//! `(∂c)(g_1..g_{k+1}) = g_1 ◁ c(g_2..) + Σ_i (-1)^i c(.., g_i g_{i+1}, ..) + (-1)^{k+1} c(g_1..g_k)`.

mod abelian;
mod solver;
mod transfer;

use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::caps;
use crate::error::{Error, Result};
use crate::group::{direct_product_all, Elem, FiniteGroup};

pub use abelian::CyclicDecomposition;
pub use transfer::{wreath_module, xi, xi_at, zeta, WreathModule};

/// A finite abelian group (written additively) with a left action.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GModule {
    acting: Arc<FiniteGroup>,
    coeff: Arc<FiniteGroup>,
    action: Vec<u32>,
}

impl GModule {
    /// `action[g][a] = g ◁ a`; the action law is checked exhaustively.
    pub fn new(acting: Arc<FiniteGroup>, coeff: Arc<FiniteGroup>, action: Vec<Vec<Elem>>) -> Result<Self> {
        if !coeff.is_abelian() {
            return Err(Error::InvalidModule("coefficient group is not abelian".into()));
        }
        if action.len() != acting.order() || action.iter().any(|r| r.len() != coeff.order()) {
            return Err(Error::InvalidModule("action array has the wrong shape".into()));
        }
        let flat: Vec<u32> = action.into_iter().flatten().map(|a| a as u32).collect();
        let m = GModule { acting, coeff, action: flat };
        m.check()?;
        Ok(m)
    }

    /// Build from a closure without materializing nested vectors.
    pub fn from_fn(
        acting: Arc<FiniteGroup>,
        coeff: Arc<FiniteGroup>,
        mut f: impl FnMut(Elem, Elem) -> Elem,
    ) -> Result<Self> {
        if !coeff.is_abelian() {
            return Err(Error::InvalidModule("coefficient group is not abelian".into()));
        }
        let mut flat = Vec::with_capacity(acting.order() * coeff.order());
        for g in acting.elements() {
            for a in coeff.elements() {
                flat.push(f(g, a) as u32);
            }
        }
        let m = GModule { acting, coeff, action: flat };
        m.check()?;
        Ok(m)
    }

    pub fn trivial(acting: Arc<FiniteGroup>, coeff: Arc<FiniteGroup>) -> Result<Self> {
        Self::from_fn(acting, coeff, |_, a| a)
    }

    fn check(&self) -> Result<()> {
        let (g, a) = (&*self.acting, &*self.coeff);
        if let Some(&v) = self.action.iter().find(|&&v| v as usize >= a.order()) {
            return Err(Error::InvalidModule(format!("action value {v} out of range")));
        }
        for x in a.elements() {
            if self.act(g.identity(), x) != x {
                return Err(Error::InvalidModule(format!("identity acts nontrivially on {x}")));
            }
        }
        for h in g.elements() {
            let mut seen = vec![false; a.order()];
            for x in a.elements() {
                let y = self.act(h, x);
                if std::mem::replace(&mut seen[y], true) {
                    return Err(Error::InvalidModule(format!("{h} does not act bijectively")));
                }
                for w in a.elements() {
                    if self.act(h, a.mul(x, w)) != a.mul(y, self.act(h, w)) {
                        return Err(Error::InvalidModule(format!("{h} does not act additively")));
                    }
                }
            }
        }
        for h in g.elements() {
            for k in g.elements() {
                let hk = g.mul(h, k);
                for x in a.elements() {
                    if self.act(hk, x) != self.act(h, self.act(k, x)) {
                        return Err(Error::InvalidModule(format!("action law fails at ({h}, {k}, {x})")));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn acting(&self) -> &FiniteGroup {
        &self.acting
    }

    pub fn acting_arc(&self) -> &Arc<FiniteGroup> {
        &self.acting
    }

    pub fn coeff(&self) -> &FiniteGroup {
        &self.coeff
    }

    pub fn coeff_arc(&self) -> &Arc<FiniteGroup> {
        &self.coeff
    }

    #[inline]
    pub fn act(&self, g: Elem, a: Elem) -> Elem {
        self.action[g * self.coeff.order() + a] as usize
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.coeff.mul(a, b)
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.coeff.inv(a)
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.coeff.mul(a, self.coeff.inv(b))
    }

    #[inline]
    pub fn zero(&self) -> Elem {
        self.coeff.identity()
    }

    pub fn is_trivial_action(&self) -> bool {
        self.acting.elements().all(|g| self.coeff.elements().all(|a| self.act(g, a) == a))
    }

    /// Image array of the action of `g`.
    pub fn action_of(&self, g: Elem) -> Vec<Elem> {
        self.coeff.elements().map(|a| self.act(g, a)).collect()
    }

    /// The product module over `∏ G_i` acting componentwise on `∏ A_i`.
    pub fn product(modules: &[&GModule]) -> Result<GModule> {
        let gs: Vec<&FiniteGroup> = modules.iter().map(|m| m.acting()).collect();
        let as_: Vec<&FiniteGroup> = modules.iter().map(|m| m.coeff()).collect();
        let g = Arc::new(direct_product_all(&gs)?);
        let a = Arc::new(direct_product_all(&as_)?);
        let gd = crate::group::MixedRadix::new(gs.iter().map(|x| x.order()).collect());
        let ad = crate::group::MixedRadix::new(as_.iter().map(|x| x.order()).collect());
        let mut buf = vec![0; modules.len()];
        GModule::from_fn(g, a, |x, u| {
            for (i, m) in modules.iter().enumerate() {
                buf[i] = m.act(gd.digit(x, i), ad.digit(u, i));
            }
            ad.encode(&buf)
        })
    }
}

/// Dense indexing of tuples of non-identity elements.
#[derive(Clone, Copy, Debug)]
pub(crate) struct TupleIndex {
    identity: Elem,
    base: usize,
}

impl TupleIndex {
    pub(crate) fn new(g: &FiniteGroup) -> Self {
        TupleIndex { identity: g.identity(), base: g.order() - 1 }
    }

    #[inline]
    fn reduce(&self, x: Elem) -> usize {
        if x > self.identity {
            x - 1
        } else {
            x
        }
    }

    #[inline]
    fn expand(&self, r: usize) -> Elem {
        if r >= self.identity {
            r + 1
        } else {
            r
        }
    }

    /// Index of a tuple, or `None` if some entry is the identity.
    #[inline]
    pub(crate) fn index(&self, t: &[Elem]) -> Option<usize> {
        let mut idx = 0;
        for &x in t {
            if x == self.identity {
                return None;
            }
            idx = idx * self.base + self.reduce(x);
        }
        Some(idx)
    }

    pub(crate) fn count(&self, k: usize) -> Option<usize> {
        self.base.checked_pow(k as u32)
    }

    pub(crate) fn decode_into(&self, mut idx: usize, out: &mut [Elem]) {
        for slot in out.iter_mut().rev() {
            *slot = self.expand(idx % self.base);
            idx /= self.base;
        }
    }
}

/// A normalized cochain: zero whenever an argument is the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    module: Arc<GModule>,
    degree: usize,
    values: Vec<u32>,
}

impl Cochain {
    fn entries_for(module: &GModule, degree: usize) -> Result<usize> {
        let cap = caps::current().cochain_entries;
        let n = TupleIndex::new(module.acting())
            .count(degree)
            .ok_or_else(|| Error::cap("cochain entries", u128::MAX, cap))?;
        if n > cap {
            return Err(Error::cap("cochain entries", n, cap));
        }
        Ok(n)
    }

    pub fn zero(module: Arc<GModule>, degree: usize) -> Result<Self> {
        let n = Self::entries_for(&module, degree)?;
        let z = module.zero() as u32;
        Ok(Cochain { module, degree, values: vec![z; n] })
    }

    /// Evaluate `f` on every tuple of non-identity arguments.
    pub fn from_fn(module: Arc<GModule>, degree: usize, mut f: impl FnMut(&[Elem]) -> Elem) -> Result<Self> {
        let n = Self::entries_for(&module, degree)?;
        let ti = TupleIndex::new(module.acting());
        let mut t = vec![0; degree];
        let mut values = Vec::with_capacity(n);
        let order = module.coeff().order();
        for idx in 0..n {
            ti.decode_into(idx, &mut t);
            let v = f(&t);
            if v >= order {
                return Err(Error::InvalidCochain(format!("value {v} out of range")));
            }
            values.push(v as u32);
        }
        Ok(Cochain { module, degree, values })
    }

    /// Uniformly random normalized cochain.
    pub fn random<R: Rng + ?Sized>(module: Arc<GModule>, degree: usize, rng: &mut R) -> Result<Self> {
        let m = module.coeff().order();
        Self::from_fn(module, degree, |_| rng.gen_range(0..m))
    }

    pub fn module(&self) -> &GModule {
        &self.module
    }

    pub fn module_arc(&self) -> &Arc<GModule> {
        &self.module
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    fn index(&self) -> TupleIndex {
        TupleIndex::new(self.module.acting())
    }

    /// `c(t)`; zero if any argument is the identity.
    #[inline]
    pub fn get(&self, t: &[Elem]) -> Elem {
        debug_assert_eq!(t.len(), self.degree);
        match self.index().index(t) {
            Some(i) => self.values[i] as usize,
            None => self.module.zero(),
        }
    }

    /// Set `c(t)`. Tuples containing the identity are rejected.
    pub fn set(&mut self, t: &[Elem], v: Elem) -> Result<()> {
        if t.len() != self.degree || v >= self.module.coeff().order() {
            return Err(Error::InvalidCochain("bad tuple length or value".into()));
        }
        match self.index().index(t) {
            Some(i) => {
                self.values[i] = v as u32;
                Ok(())
            }
            None if v == self.module.zero() => Ok(()),
            None => Err(Error::InvalidCochain("normalized cochains vanish on identity arguments".into())),
        }
    }

    #[cfg(test)]
    pub(crate) fn raw_values(&self) -> &[u32] {
        &self.values
    }

    pub(crate) fn from_raw(module: Arc<GModule>, degree: usize, values: Vec<u32>) -> Self {
        Cochain { module, degree, values }
    }

    pub fn is_zero(&self) -> bool {
        let z = self.module.zero() as u32;
        self.values.iter().all(|&v| v == z)
    }

    /// Non-identity tuples with nonzero value, in index order.
    pub fn nonzero_entries(&self) -> Vec<(Vec<Elem>, Elem)> {
        let ti = self.index();
        let z = self.module.zero() as u32;
        let mut t = vec![0; self.degree];
        let mut out = Vec::new();
        for (i, &v) in self.values.iter().enumerate() {
            if v != z {
                ti.decode_into(i, &mut t);
                out.push((t.clone(), v as usize));
            }
        }
        out
    }

    fn same_shape(&self, other: &Cochain) -> Result<()> {
        if self.degree != other.degree || *self.module != *other.module {
            return Err(Error::InvalidCochain("cochains live in different complexes".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Cochain) -> Result<Cochain> {
        self.same_shape(other)?;
        let m = &self.module;
        let values = self.values.iter().zip(&other.values).map(|(&a, &b)| m.add(a as usize, b as usize) as u32).collect();
        Ok(Cochain { module: self.module.clone(), degree: self.degree, values })
    }

    pub fn sub(&self, other: &Cochain) -> Result<Cochain> {
        self.same_shape(other)?;
        let m = &self.module;
        let values = self.values.iter().zip(&other.values).map(|(&a, &b)| m.sub(a as usize, b as usize) as u32).collect();
        Ok(Cochain { module: self.module.clone(), degree: self.degree, values })
    }

    pub fn neg(&self) -> Cochain {
        let m = &self.module;
        let values = self.values.iter().map(|&a| m.neg(a as usize) as u32).collect();
        Cochain { module: self.module.clone(), degree: self.degree, values }
    }

    /// Same values over an equal module held in another `Arc`.
    pub fn rebind(&self, module: Arc<GModule>) -> Result<Cochain> {
        if *module != *self.module {
            return Err(Error::InvalidCochain("modules differ".into()));
        }
        Ok(Cochain { module, degree: self.degree, values: self.values.clone() })
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(&self.to_json_value())?)
    }

    pub fn to_json_value(&self) -> CochainJson {
        CochainJson {
            degree: self.degree,
            acting_group_ref: self.module.acting().reference(),
            coeff_ref: self.module.coeff().reference(),
            entries: self.nonzero_entries(),
        }
    }

    /// Parse against a known module; refs must match.
    pub fn from_json(module: Arc<GModule>, s: &str) -> Result<Cochain> {
        let j: CochainJson = serde_json::from_str(s)?;
        Self::from_json_value(module, &j)
    }

    pub fn from_json_value(module: Arc<GModule>, j: &CochainJson) -> Result<Cochain> {
        if j.acting_group_ref != module.acting().reference() || j.coeff_ref != module.coeff().reference() {
            return Err(Error::Serialization("cochain refers to a different module".into()));
        }
        let mut c = Cochain::zero(module, j.degree)?;
        for (t, v) in &j.entries {
            c.set(t, *v)?;
        }
        Ok(c)
    }
}

/// Serialized cochain: only nonzero entries are listed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CochainJson {
    pub degree: usize,
    pub acting_group_ref: String,
    pub coeff_ref: String,
    pub entries: Vec<(Vec<Elem>, Elem)>,
}

/// `(∂c)(t)` at one `(k+1)`-tuple.
pub fn coboundary_at(c: &Cochain, t: &[Elem], buf: &mut Vec<Elem>) -> Elem {
    coboundary_of_fn_at(c.module(), c.degree, |s| c.get(s), t, buf)
}

/// `(∂c)(t)` for a `k`-cochain given pointwise by `c`, which is never called
/// on tuples containing the identity.
pub fn coboundary_of_fn_at(
    m: &GModule,
    k: usize,
    c: impl Fn(&[Elem]) -> Elem,
    t: &[Elem],
    buf: &mut Vec<Elem>,
) -> Elem {
    let g = m.acting();
    debug_assert_eq!(t.len(), k + 1);
    let e = g.identity();
    let get = |s: &[Elem]| if s.contains(&e) { m.zero() } else { c(s) };
    let mut acc = m.act(t[0], get(&t[1..]));
    for i in 0..k {
        buf.clear();
        buf.extend_from_slice(&t[..i]);
        buf.push(g.mul(t[i], t[i + 1]));
        buf.extend_from_slice(&t[i + 2..]);
        let v = get(buf);
        acc = if (i + 1) % 2 == 1 { m.sub(acc, v) } else { m.add(acc, v) };
    }
    let last = get(&t[..k]);
    if (k + 1) % 2 == 1 {
        m.sub(acc, last)
    } else {
        m.add(acc, last)
    }
}

/// The bar differential.
pub fn coboundary(c: &Cochain) -> Result<Cochain> {
    let mut buf = Vec::with_capacity(c.degree + 1);
    Cochain::from_fn(c.module.clone(), c.degree + 1, |t| coboundary_at(c, t, &mut buf))
}

/// First non-identity tuple where `∂z` is nonzero.
pub fn cocycle_violation(z: &Cochain) -> Option<Vec<Elem>> {
    let ti = TupleIndex::new(z.module.acting());
    let n = ti.count(z.degree + 1)?;
    let mut t = vec![0; z.degree + 1];
    let mut buf = Vec::with_capacity(z.degree + 1);
    let zero = z.module.zero();
    for idx in 0..n {
        ti.decode_into(idx, &mut t);
        if coboundary_at(z, &t, &mut buf) != zero {
            return Some(t);
        }
    }
    None
}

pub fn is_cocycle(z: &Cochain) -> bool {
    cocycle_violation(z).is_none()
}

/// A normalized `c` with `∂c = z`, or `None` if the class of `z` is nonzero.
///
/// The equation is solved as a linear system over each primary component of
/// the coefficients; exhaustive search is used only when the system exceeds
/// the solver limits but the unknowns are few. Any witness is re-checked.
pub fn is_coboundary(z: &Cochain) -> Result<Option<Cochain>> {
    if z.degree == 0 {
        return Err(Error::InvalidArgument("degree-0 cochains are not coboundaries".into()));
    }
    if z.is_zero() {
        return Ok(Some(Cochain::zero(z.module.clone(), z.degree - 1)?));
    }
    let found = match solver::solve_linear(z) {
        Ok(r) => r,
        Err(Error::CapExceeded { .. }) | Err(Error::BudgetExhausted(_)) => match solver::solve_by_enumeration(z)? {
            Some(r) => r,
            None => {
                return Err(Error::BudgetExhausted(
                    "coboundary system exceeds both the linear solver and the enumeration limits".into(),
                ))
            }
        },
        Err(e) => return Err(e),
    };
    if let Some(c) = &found {
        if coboundary(c)? != *z {
            return Err(Error::Internal("coboundary witness does not verify".into()));
        }
    }
    Ok(found)
}

/// Exhaustive coboundary search, for cross-checking; `None` if too large.
pub fn is_coboundary_by_enumeration(z: &Cochain) -> Result<Option<Option<Cochain>>> {
    solver::solve_by_enumeration(z)
}

//! Cochain maps into wreath products and direct products.

use std::sync::Arc;

use super::{Cochain, GModule};
use crate::error::{Error, Result};
use crate::group::{direct_product_all, Elem, FiniteGroup, MixedRadix, WreathProduct};

/// `S_n wr G` acting on `A^n` by `((sigma, g) ◁ a)_i = g_{sigma^-1(i)} ◁ a_{sigma^-1(i)}`.
#[derive(Clone, Debug)]
pub struct WreathModule {
    pub wreath: WreathProduct,
    pub module: Arc<GModule>,
    coeff_digits: MixedRadix,
}

impl WreathModule {
    pub fn power_digits(&self) -> &MixedRadix {
        &self.coeff_digits
    }
}

pub fn wreath_module(n: usize, base: &GModule) -> Result<WreathModule> {
    let wreath = WreathProduct::new(n, base.acting())?;
    let factors: Vec<&FiniteGroup> = std::iter::repeat(base.coeff()).take(n).collect();
    let power = Arc::new(direct_product_all(&factors)?);
    let digits = MixedRadix::new(vec![base.coeff().order(); n]);
    let inverses: Vec<Vec<usize>> = (0..wreath.symmetric().order()).map(|s| invert(wreath.perm(s))).collect();
    let decoded: Vec<(usize, Vec<Elem>)> = wreath.group().elements().map(|w| wreath.decode(w)).collect();
    let mut out = vec![0; n];
    let module = GModule::from_fn(Arc::new(wreath.group().clone()), power, |w, a| {
        let (s, g) = &decoded[w];
        let inv = &inverses[*s];
        for i in 0..n {
            let src = inv[i];
            out[i] = base.act(g[src], digits.digit(a, src));
        }
        digits.encode(&out)
    })?;
    Ok(WreathModule { wreath, module: Arc::new(module), coeff_digits: digits })
}

fn invert(p: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; p.len()];
    for (i, &x) in p.iter().enumerate() {
        inv[x] = i;
    }
    inv
}

/// The wreath transfer: component `j` of the image at
/// `((sigma_1, g_1), .., (sigma_k, g_k))` is
/// `c(g_{1, pi_1^-1(j)}, .., g_{k, pi_k^-1(j)})` with `pi_l = sigma_1 .. sigma_l`.
pub fn xi(target: &WreathModule, c: &Cochain) -> Result<Cochain> {
    check_base(target, c)?;
    let w = &target.wreath;
    let decoded: Vec<(usize, Vec<Elem>)> = w.group().elements().map(|x| w.decode(x)).collect();
    let sym = w.symmetric();
    let inverses: Vec<Vec<usize>> = (0..sym.order()).map(|s| invert(w.perm(s))).collect();
    let mut scratch = XiScratch::new(w.degree(), c.degree());
    Cochain::from_fn(target.module.clone(), c.degree(), |t| {
        scratch.eval(target, c, |x| &decoded[x], &inverses, t)
    })
}

/// One value of [`xi`] without tabulating the image.
pub fn xi_at(target: &WreathModule, c: &Cochain, t: &[Elem]) -> Result<Elem> {
    check_base(target, c)?;
    if t.len() != c.degree() {
        return Err(Error::InvalidCochain("tuple length differs from the degree".into()));
    }
    let w = &target.wreath;
    if t.contains(&w.group().identity()) {
        return Ok(target.module.zero());
    }
    let decoded: Vec<(usize, Vec<Elem>)> = t.iter().map(|&x| w.decode(x)).collect();
    let sym = w.symmetric();
    let inverses: Vec<Vec<usize>> = (0..sym.order()).map(|s| invert(w.perm(s))).collect();
    let pos: Vec<usize> = (0..t.len()).collect();
    let mut scratch = XiScratch::new(w.degree(), c.degree());
    Ok(scratch.eval(target, c, |l| &decoded[l], &inverses, &pos))
}

fn check_base(target: &WreathModule, c: &Cochain) -> Result<()> {
    if target.wreath.base() != c.module().acting() {
        return Err(Error::InvalidCochain("wreath base differs from the cochain's group".into()));
    }
    Ok(())
}

struct XiScratch {
    args: Vec<Vec<Elem>>,
    comps: Vec<Elem>,
}

impl XiScratch {
    fn new(n: usize, k: usize) -> Self {
        XiScratch { args: vec![vec![0; k]; n], comps: vec![0; n] }
    }

    fn eval<'d>(
        &mut self,
        target: &WreathModule,
        c: &Cochain,
        decoded: impl Fn(Elem) -> &'d (usize, Vec<Elem>),
        inverses: &[Vec<usize>],
        t: &[Elem],
    ) -> Elem {
        let sym = target.wreath.symmetric();
        let n = target.wreath.degree();
        let mut pi = sym.identity();
        for (l, &x) in t.iter().enumerate() {
            let (s, g) = decoded(x);
            pi = sym.mul(pi, *s);
            let inv = &inverses[pi];
            for j in 0..n {
                self.args[j][l] = g[inv[j]];
            }
        }
        for j in 0..n {
            self.comps[j] = c.get(&self.args[j]);
        }
        target.coeff_digits.encode(&self.comps)
    }
}

/// The product map: component `i` at `(x^1, .., x^k)` is `z_i(x^1_i, .., x^k_i)`.
/// `module` must be `GModule::product` of the family's modules.
pub fn zeta(module: Arc<GModule>, family: &[&Cochain]) -> Result<Cochain> {
    let k = family.first().map_or(0, |c| c.degree());
    if family.iter().any(|c| c.degree() != k) {
        return Err(Error::InvalidCochain("family has mixed degrees".into()));
    }
    let mods: Vec<&GModule> = family.iter().map(|c| c.module()).collect();
    let expected = GModule::product(&mods)?;
    if expected != *module {
        return Err(Error::InvalidCochain("module is not the product of the family's modules".into()));
    }
    let gd = MixedRadix::new(mods.iter().map(|m| m.acting().order()).collect());
    let ad = MixedRadix::new(mods.iter().map(|m| m.coeff().order()).collect());
    let mut args = vec![0; k];
    let mut comps = vec![0; family.len()];
    Cochain::from_fn(module, k, |t| {
        for (i, c) in family.iter().enumerate() {
            for (l, &x) in t.iter().enumerate() {
                args[l] = gd.digit(x, i);
            }
            comps[i] = c.get(&args);
        }
        ad.encode(&comps)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::{coboundary, is_coboundary};
    use crate::group::cyclic;
    use rand::SeedableRng;

    fn z2_module() -> Arc<GModule> {
        let z2 = Arc::new(cyclic(2).unwrap());
        Arc::new(GModule::trivial(z2.clone(), z2).unwrap())
    }

    #[test]
    fn xi_is_chain_map() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let m = z2_module();
        let wm = wreath_module(2, &m).unwrap();
        for _ in 0..20 {
            let c = Cochain::random(m.clone(), 2, &mut rng).unwrap();
            let lhs = coboundary(&xi(&wm, &c).unwrap()).unwrap();
            let rhs = xi(&wm, &coboundary(&c).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn xi_explicit_component() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        let z3 = Arc::new(cyclic(3).unwrap());
        let m = Arc::new(GModule::trivial(z3.clone(), Arc::new(cyclic(5).unwrap())).unwrap());
        let wm = wreath_module(2, &m).unwrap();
        let c = Cochain::random(m.clone(), 2, &mut rng).unwrap();
        let x = xi(&wm, &c).unwrap();
        let w = &wm.wreath;
        // sigma_1 = (12), sigma_2 = id: component 1 (index 0) is c(g_{1,2}, g_{2,(s1 s2)^-1(1)}) = c(g_{1,2}, g_{2,2})
        let (g1, g2) = ([1, 2], [2, 1]);
        let a = w.encode(1, &g1);
        let b = w.encode(0, &g2);
        let v = x.get(&[a, b]);
        let comps = wm.power_digits().decode(v);
        assert_eq!(comps[0], c.get(&[g1[1], g2[1]]));
        assert_eq!(comps[1], c.get(&[g1[0], g2[0]]));
    }

    #[test]
    fn pointwise_matches_table() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2);
        let m = z2_module();
        let wm = wreath_module(3, &m).unwrap();
        let c = Cochain::random(m, 2, &mut rng).unwrap();
        let x = xi(&wm, &c).unwrap();
        for a in 0..wm.wreath.group().order() {
            for b in [0, 5, 17, 40] {
                assert_eq!(xi_at(&wm, &c, &[a, b]).unwrap(), x.get(&[a, b]));
            }
        }
    }

    #[test]
    fn zeta_of_zero_and_singleton() {
        let m = z2_module();
        let z = Cochain::from_fn(m.clone(), 3, |_| 1).unwrap();
        let prod = Arc::new(GModule::product(&[&m]).unwrap());
        let single = zeta(prod.clone(), &[&z]).unwrap();
        assert_eq!(single.get(&[1, 1, 1]), 1);
        assert!(is_coboundary(&single).unwrap().is_none());
        let zero = Cochain::zero(m.clone(), 3).unwrap();
        let prod2 = Arc::new(GModule::product(&[&m, &m]).unwrap());
        assert!(zeta(prod2, &[&zero, &zero]).unwrap().is_zero());
    }
}

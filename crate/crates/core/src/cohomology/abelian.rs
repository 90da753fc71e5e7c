//! Decomposition of a finite abelian group into cyclic groups of prime-power order.

use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup};

/// A basis `b_1..b_r` of a finite abelian group `A`, with `b_i` of order
/// `p_i^{e_i}`, so that `A = ⊕ <b_i>`, plus coordinates of every element.
#[derive(Clone, Debug)]
pub struct CyclicDecomposition {
    pub basis: Vec<Elem>,
    pub primes: Vec<usize>,
    pub exponents: Vec<u32>,
    coords: Vec<Vec<u32>>,
}

fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut ps = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            ps.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        ps.push(n);
    }
    ps
}

impl CyclicDecomposition {
    pub fn new(a: &FiniteGroup) -> Result<Self> {
        if !a.is_abelian() {
            return Err(Error::InvalidModule("not abelian".into()));
        }
        let orders: Vec<usize> = a.elements().map(|x| a.element_order(x)).collect();
        let mut basis = Vec::new();
        let mut primes = Vec::new();
        let mut exponents = Vec::new();
        for p in prime_factors(a.order()) {
            let sylow: Vec<Elem> = a.elements().filter(|&x| is_power_of(orders[x], p)).collect();
            // c_k = #{x in A_p : p^k x = 0} = p^{sum_i min(e_i, k)}
            let mut d = Vec::new();
            let mut prev = 0u32;
            let mut k = 1u32;
            loop {
                let pk = p.pow(k);
                let ck = sylow.iter().filter(|&&x| pk % orders[x] == 0).count();
                let lk = log_exact(ck, p)?;
                if lk == prev {
                    break;
                }
                d.push(lk - prev);
                prev = lk;
                k += 1;
            }
            // d[k-1] = #{i : e_i >= k}
            let mut types = Vec::new();
            for k in (1..=d.len()).rev() {
                let at_least = d[k - 1];
                let more = if k < d.len() { d[k] } else { 0 };
                for _ in 0..(at_least - more) {
                    types.push(k as u32);
                }
            }
            let chosen = choose_basis(a, &sylow, &orders, p, &types)
                .ok_or_else(|| Error::Internal("no basis found for abelian p-group".into()))?;
            for (b, e) in chosen.into_iter().zip(types) {
                basis.push(b);
                primes.push(p);
                exponents.push(e);
            }
        }
        let mut coords = vec![Vec::new(); a.order()];
        let radices: Vec<usize> = primes.iter().zip(&exponents).map(|(&p, &e)| p.pow(e)).collect();
        let total: usize = radices.iter().product();
        if total != a.order() {
            return Err(Error::Internal("basis orders do not multiply to |A|".into()));
        }
        let mut digits = vec![0usize; basis.len()];
        for _ in 0..total {
            let mut x = a.identity();
            for (i, &b) in basis.iter().enumerate() {
                x = a.mul(x, a.pow(b, digits[i] as i64));
            }
            if !coords[x].is_empty() {
                return Err(Error::Internal("basis is not independent".into()));
            }
            coords[x] = digits.iter().map(|&d| d as u32).collect();
            for i in (0..digits.len()).rev() {
                digits[i] += 1;
                if digits[i] < radices[i] {
                    break;
                }
                digits[i] = 0;
            }
        }
        if basis.is_empty() {
            coords = vec![Vec::new(); a.order()];
        }
        Ok(CyclicDecomposition { basis, primes, exponents, coords })
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn order_of(&self, i: usize) -> usize {
        self.primes[i].pow(self.exponents[i])
    }

    /// Coordinates of `x` in the basis.
    pub fn coords(&self, x: Elem) -> &[u32] {
        &self.coords[x]
    }

    /// Element with the given coordinates.
    pub fn element(&self, a: &FiniteGroup, coords: &[usize]) -> Elem {
        let mut x = a.identity();
        for (i, &b) in self.basis.iter().enumerate() {
            x = a.mul(x, a.pow(b, coords[i] as i64));
        }
        x
    }

    /// Invariant description, e.g. `[2, 4]`, sorted.
    pub fn primary_orders(&self) -> Vec<usize> {
        let mut v: Vec<usize> = (0..self.rank()).map(|i| self.order_of(i)).collect();
        v.sort_unstable();
        v
    }
}

fn is_power_of(mut n: usize, p: usize) -> bool {
    while n % p == 0 {
        n /= p;
    }
    n == 1
}

fn log_exact(n: usize, p: usize) -> Result<u32> {
    let mut k = 0;
    let mut m = 1;
    while m < n {
        m *= p;
        k += 1;
    }
    if m == n {
        Ok(k)
    } else {
        Err(Error::Internal(format!("{n} is not a power of {p}")))
    }
}

/// Backtrack for elements of orders `p^{types[i]}` generating a subgroup of
/// order `p^{sum types}`.
fn choose_basis(a: &FiniteGroup, sylow: &[Elem], orders: &[usize], p: usize, types: &[u32]) -> Option<Vec<Elem>> {
    fn rec(
        a: &FiniteGroup,
        sylow: &[Elem],
        orders: &[usize],
        p: usize,
        types: &[u32],
        chosen: &mut Vec<Elem>,
        size: usize,
    ) -> bool {
        let i = chosen.len();
        if i == types.len() {
            return true;
        }
        let target = p.pow(types[i]);
        for &x in sylow {
            if orders[x] != target {
                continue;
            }
            chosen.push(x);
            if a.generated(chosen).len() == size * target && rec(a, sylow, orders, p, types, chosen, size * target) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    let mut chosen = Vec::new();
    rec(a, sylow, orders, p, types, &mut chosen, 1).then_some(chosen)
}

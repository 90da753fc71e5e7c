//! Linear solvers for `∂c = z`.
//!
//! Each primary component `⊕ Z/p^{e_i}` of the coefficients is embedded in
//! `(Z/p^E)^m` by scaling coordinate `i` with `p^{E-e_i}`, which keeps every
//! equation well defined. Rows are inserted one at a time into a Howell-style
//! echelon basis (bit-packed and fully reduced when `p^E = 2`).

use std::sync::Arc;

use super::abelian::CyclicDecomposition;
use super::{coboundary, Cochain, GModule, TupleIndex};
use crate::caps;
use crate::error::{Error, Result};
use crate::group::Elem;

const NONE: usize = usize::MAX;

trait RowSolver {
    /// Add an equation; `false` once the system is known to be inconsistent.
    fn insert(&mut self, cols: &[(usize, u64)], rhs: u64) -> bool;
    fn solution(&self) -> Result<Vec<u64>>;
}

/// Reduced row echelon form over F_2 with bit-packed rows.
struct F2Solver {
    n: usize,
    words: usize,
    rows: Vec<Vec<u64>>,
    row_col: Vec<usize>,
    col_row: Vec<usize>,
    scratch: Vec<u64>,
}

impl F2Solver {
    fn new(n: usize) -> Self {
        let words = (n + 1).div_ceil(64);
        F2Solver { n, words, rows: Vec::new(), row_col: Vec::new(), col_row: vec![NONE; n], scratch: vec![0; words] }
    }

    #[inline]
    fn bit(v: &[u64], i: usize) -> bool {
        v[i / 64] >> (i % 64) & 1 == 1
    }
}

impl RowSolver for F2Solver {
    fn insert(&mut self, cols: &[(usize, u64)], rhs: u64) -> bool {
        let mut r = std::mem::take(&mut self.scratch);
        r.iter_mut().for_each(|w| *w = 0);
        for &(c, v) in cols {
            if v & 1 == 1 {
                r[c / 64] ^= 1 << (c % 64);
            }
        }
        if rhs & 1 == 1 {
            r[self.n / 64] ^= 1 << (self.n % 64);
        }
        for &(c, v) in cols {
            if v & 1 == 1 && self.col_row[c] != NONE {
                let p = &self.rows[self.col_row[c]];
                for (a, b) in r.iter_mut().zip(p) {
                    *a ^= b;
                }
            }
        }
        // only non-pivot columns can remain set
        let lead = (0..self.words).find_map(|w| {
            let mut word = r[w];
            if w == self.n / 64 {
                word &= (1u64 << (self.n % 64)) - 1;
            }
            (word != 0).then(|| w * 64 + word.trailing_zeros() as usize)
        });
        match lead {
            None => {
                let ok = !Self::bit(&r, self.n);
                self.scratch = r;
                ok
            }
            Some(c) => {
                for row in self.rows.iter_mut() {
                    if Self::bit(row, c) {
                        for (a, b) in row.iter_mut().zip(&r) {
                            *a ^= b;
                        }
                    }
                }
                self.col_row[c] = self.rows.len();
                self.row_col.push(c);
                self.rows.push(r);
                self.scratch = vec![0; self.words];
                true
            }
        }
    }

    fn solution(&self) -> Result<Vec<u64>> {
        let mut x = vec![0; self.n];
        for (row, &c) in self.rows.iter().zip(&self.row_col) {
            x[c] = Self::bit(row, self.n) as u64;
        }
        Ok(x)
    }
}

/// Echelon basis over `Z/p^E` with Howell closure: whenever a row with
/// leading entry `p^v`, `v > 0`, is installed, `p^{E-v}` times it is inserted too.
struct ZpeSolver {
    p: u64,
    e: u32,
    q: u64,
    n: usize,
    rows: Vec<Vec<u64>>,
    row_col: Vec<usize>,
    row_val: Vec<u32>,
    col_row: Vec<usize>,
}

impl ZpeSolver {
    fn new(p: u64, e: u32, n: usize) -> Self {
        ZpeSolver {
            p,
            e,
            q: p.pow(e),
            n,
            rows: Vec::new(),
            row_col: Vec::new(),
            row_val: Vec::new(),
            col_row: vec![NONE; n],
        }
    }

    fn val(&self, mut x: u64) -> u32 {
        let mut v = 0;
        while x % self.p == 0 && v < self.e {
            x /= self.p;
            v += 1;
        }
        v
    }

    fn unit_inverse(&self, u: u64) -> u64 {
        // u is a unit mod q; q is small
        let (mut t, mut newt) = (0i64, 1i64);
        let (mut r, mut newr) = (self.q as i64, (u % self.q) as i64);
        while newr != 0 {
            let quot = r / newr;
            (t, newt) = (newt, t - quot * newt);
            (r, newr) = (newr, r - quot * newr);
        }
        t.rem_euclid(self.q as i64) as u64
    }

    /// Scale so that the entry at `c` becomes exactly `p^v`.
    fn normalize(&self, r: &mut [u64], c: usize, v: u32) {
        let unit = r[c] / self.p.pow(v);
        let inv = self.unit_inverse(unit);
        for x in r[c..].iter_mut() {
            *x = *x * inv % self.q;
        }
    }

    fn scaled(&self, r: &[u64], f: u64) -> Vec<u64> {
        r.iter().map(|&x| x * f % self.q).collect()
    }
}

impl RowSolver for ZpeSolver {
    fn insert(&mut self, cols: &[(usize, u64)], rhs: u64) -> bool {
        let w = self.n + 1;
        let mut r = vec![0u64; w];
        for &(c, v) in cols {
            r[c] = (r[c] + v) % self.q;
        }
        r[self.n] = rhs % self.q;
        let mut stack = vec![r];
        while let Some(mut r) = stack.pop() {
            let mut c = 0;
            loop {
                while c < w && r[c] == 0 {
                    c += 1;
                }
                if c == w {
                    break;
                }
                if c == self.n {
                    return false;
                }
                let v = self.val(r[c]);
                match self.col_row[c] {
                    NONE => {
                        self.normalize(&mut r, c, v);
                        if v > 0 {
                            stack.push(self.scaled(&r, self.p.pow(self.e - v)));
                        }
                        self.col_row[c] = self.rows.len();
                        self.row_col.push(c);
                        self.row_val.push(v);
                        self.rows.push(r);
                        break;
                    }
                    pi => {
                        let pw = self.row_val[pi];
                        if v >= pw {
                            let f = r[c] / self.p.pow(pw);
                            let piv = &self.rows[pi];
                            for j in c..w {
                                r[j] = (r[j] + self.q - f * piv[j] % self.q) % self.q;
                            }
                        } else {
                            self.normalize(&mut r, c, v);
                            if v > 0 {
                                stack.push(self.scaled(&r, self.p.pow(self.e - v)));
                            }
                            let old = std::mem::replace(&mut self.rows[pi], r);
                            self.row_val[pi] = v;
                            stack.push(old);
                            break;
                        }
                    }
                }
            }
        }
        true
    }

    fn solution(&self) -> Result<Vec<u64>> {
        let mut x = vec![0u64; self.n];
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&i| std::cmp::Reverse(self.row_col[i]));
        for i in order {
            let (row, c, v) = (&self.rows[i], self.row_col[i], self.row_val[i]);
            let mut t = row[self.n];
            for j in c + 1..self.n {
                if row[j] != 0 && x[j] != 0 {
                    t = (t + self.q - row[j] * x[j] % self.q) % self.q;
                }
            }
            let pv = self.p.pow(v);
            if t % pv != 0 {
                return Err(Error::Internal("echelon basis lacks the Howell property".into()));
            }
            x[c] = t / pv;
        }
        Ok(x)
    }
}

/// Solve `∂c = z` exactly. `Ok(None)` means the class of `z` is nonzero.
pub(super) fn solve_linear(z: &Cochain) -> Result<Option<Cochain>> {
    let module = z.module_arc().clone();
    let g = module.acting();
    let a = module.coeff();
    let k = z.degree();
    let dec = CyclicDecomposition::new(a)?;
    let ti = TupleIndex::new(g);
    let n_unk = ti.count(k - 1).ok_or_else(|| Error::cap("unknowns", u128::MAX, 0))?;
    let n_eq = ti.count(k).ok_or_else(|| Error::cap("equations", u128::MAX, 0))?;
    let limits = caps::current();

    // coordinates of every unknown value, per basis element
    let mut coords = vec![vec![0u64; n_unk]; dec.rank()];
    let mut primes: Vec<usize> = dec.primes.clone();
    primes.dedup();
    for p in primes {
        let local: Vec<usize> = (0..dec.rank()).filter(|&i| dec.primes[i] == p).collect();
        let e_max = local.iter().map(|&i| dec.exponents[i]).max().unwrap_or(0);
        let q = (p as u64).pow(e_max);
        let m = local.len();
        let unknowns = n_unk * m;
        if q == 2 {
            if unknowns > limits.solver_unknowns_f2 {
                return Err(Error::cap("F_2 solver unknowns", unknowns, limits.solver_unknowns_f2));
            }
        } else if unknowns > limits.solver_unknowns {
            return Err(Error::cap("solver unknowns", unknowns, limits.solver_unknowns));
        }
        let scale: Vec<u64> = local.iter().map(|&i| (p as u64).pow(e_max - dec.exponents[i])).collect();
        // mat[g][i][j] = coordinate i of g ◁ b_j
        let mat: Vec<Vec<Vec<u64>>> = g
            .elements()
            .map(|h| {
                local
                    .iter()
                    .map(|&i| local.iter().map(|&j| dec.coords(module.act(h, dec.basis[j]))[i] as u64).collect())
                    .collect()
            })
            .collect();
        let mut solver: Box<dyn RowSolver> = if q == 2 {
            Box::new(F2Solver::new(unknowns))
        } else {
            Box::new(ZpeSolver::new(p as u64, e_max, unknowns))
        };
        let mut t = vec![0; k];
        let mut buf: Vec<Elem> = Vec::with_capacity(k);
        let mut cols: Vec<(usize, u64)> = Vec::new();
        for idx in 0..n_eq {
            ti.decode_into(idx, &mut t);
            let zv = dec.coords(z.get(&t)).to_vec();
            let first = ti.index(&t[1..]).expect("non-identity tail");
            let last = ti.index(&t[..k - 1]).expect("non-identity head");
            let mut faces: Vec<(usize, bool)> = Vec::with_capacity(k);
            for f in 0..k.saturating_sub(1) {
                buf.clear();
                buf.extend_from_slice(&t[..f]);
                buf.push(g.mul(t[f], t[f + 1]));
                buf.extend_from_slice(&t[f + 2..]);
                if let Some(fi) = ti.index(&buf) {
                    faces.push((fi, f % 2 == 0));
                }
            }
            for (li, &i) in local.iter().enumerate() {
                cols.clear();
                let s = scale[li];
                for lj in 0..m {
                    let coef = mat[t[0]][li][lj] * s % q;
                    if coef != 0 {
                        cols.push((first * m + lj, coef));
                    }
                }
                for &(fi, negative) in &faces {
                    cols.push((fi * m + li, if negative { (q - s) % q } else { s }));
                }
                let last_negative = k % 2 == 1;
                cols.push((last * m + li, if last_negative { (q - s) % q } else { s }));
                merge_columns(&mut cols, q);
                let rhs = zv[i] as u64 * s % q;
                if !solver.insert(&cols, rhs) {
                    return Ok(None);
                }
            }
        }
        let x = solver.solution()?;
        for (li, &i) in local.iter().enumerate() {
            let ord = dec.order_of(i) as u64;
            for u in 0..n_unk {
                coords[i][u] = x[u * m + li] % ord;
            }
        }
    }
    let mut values = Vec::with_capacity(n_unk);
    let mut digits = vec![0usize; dec.rank()];
    for u in 0..n_unk {
        for i in 0..dec.rank() {
            digits[i] = coords[i][u] as usize;
        }
        values.push(dec.element(a, &digits) as u32);
    }
    Ok(Some(Cochain::from_raw(module, k - 1, values)))
}

fn merge_columns(cols: &mut Vec<(usize, u64)>, q: u64) {
    cols.sort_unstable_by_key(|&(c, _)| c);
    let mut out: Vec<(usize, u64)> = Vec::with_capacity(cols.len());
    for &(c, v) in cols.iter() {
        match out.last_mut() {
            Some((lc, lv)) if *lc == c => *lv = (*lv + v) % q,
            _ => out.push((c, v % q)),
        }
    }
    out.retain(|&(_, v)| v != 0);
    *cols = out;
}

/// Try every normalized `(k-1)`-cochain. `Ok(None)` if there are more than 20
/// unknown values or more than 2^22 candidates.
pub(super) fn solve_by_enumeration(z: &Cochain) -> Result<Option<Option<Cochain>>> {
    let module: Arc<GModule> = z.module_arc().clone();
    let k = z.degree();
    let ti = TupleIndex::new(module.acting());
    let Some(m) = ti.count(k - 1) else { return Ok(None) };
    let base = module.coeff().order() as u128;
    if m > 20 || base.checked_pow(m as u32).is_none_or(|c| c > 1 << 22) {
        return Ok(None);
    }
    let mut digits = vec![0u32; m];
    loop {
        let c = Cochain::from_raw(module.clone(), k - 1, digits.clone());
        if coboundary(&c)? == *z {
            return Ok(Some(Some(c)));
        }
        let mut i = 0;
        loop {
            if i == m {
                return Ok(Some(None));
            }
            digits[i] += 1;
            if (digits[i] as u128) < base {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f2_solver_detects_inconsistency() {
        let mut s = F2Solver::new(3);
        assert!(s.insert(&[(0, 1), (1, 1)], 1));
        assert!(s.insert(&[(1, 1), (2, 1)], 0));
        assert!(!s.insert(&[(0, 1), (2, 1)], 0));
    }

    #[test]
    fn f2_solver_solves() {
        let mut s = F2Solver::new(3);
        assert!(s.insert(&[(0, 1), (1, 1)], 1));
        assert!(s.insert(&[(1, 1), (2, 1)], 1));
        assert!(s.insert(&[(2, 1)], 1));
        assert_eq!(s.solution().unwrap(), vec![1, 0, 1]);
    }

    #[test]
    fn zpe_solver_non_unit_pivots() {
        // over Z/8: 2x = 4, 4y = 0, x + 2y = 2 + 2y  (x = 2 or 6)
        let mut s = ZpeSolver::new(2, 3, 2);
        assert!(s.insert(&[(0, 2)], 4));
        assert!(s.insert(&[(1, 4)], 0));
        let x = s.solution().unwrap();
        assert_eq!(2 * x[0] % 8, 4);
        assert_eq!(4 * x[1] % 8, 0);
        // 4x = 2 has no solution
        let mut t = ZpeSolver::new(2, 3, 1);
        assert!(!t.insert(&[(0, 4)], 2));
    }

    #[test]
    fn zpe_solver_hidden_inconsistency() {
        // 2x + y = 1 and y = 0 force 2x = 1, impossible over Z/4
        let mut s = ZpeSolver::new(2, 2, 2);
        assert!(s.insert(&[(0, 2), (1, 1)], 1));
        assert!(!s.insert(&[(1, 1)], 0));
    }
}

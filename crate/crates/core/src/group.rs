//! Finite groups stored as dense multiplication tables.
//!
//! Elements are plain indices `0..order`. Every constructor fixes a canonical
//! element order, so that all later lexicographic tie-breaks are reproducible.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::caps;
use crate::error::{Error, Result};

/// An element of a [`FiniteGroup`], given by its index in the table.
pub type Elem = usize;

/// A finite group as a validated multiplication table.
#[derive(Clone, Serialize, Deserialize)]
#[serde(try_from = "GroupJson", into = "GroupJson")]
pub struct FiniteGroup {
    order: usize,
    table: Vec<u32>,
    identity: Elem,
    inverses: Vec<u32>,
    labels: Option<Vec<String>>,
    family_tag: Option<String>,
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order
            && self.identity == other.identity
            && self.table == other.table
            && self.labels == other.labels
            && self.family_tag == other.family_tag
    }
}

impl Eq for FiniteGroup {}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("order", &self.order)
            .field("family_tag", &self.family_tag)
            .finish_non_exhaustive()
    }
}

impl FiniteGroup {
    /// Validate a square table given as rows and detect its identity.
    pub fn from_table(rows: Vec<Vec<usize>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidTable("empty table".into()));
        }
        let mut flat = Vec::with_capacity(n * n);
        for (a, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidTable(format!(
                    "row {a} has length {} but the table has {n} rows",
                    row.len()
                )));
            }
            for (b, &c) in row.iter().enumerate() {
                if c >= n {
                    return Err(Error::InvalidTable(format!("entry {a}*{b} = {c} is out of range")));
                }
                flat.push(c as u32);
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| flat[e * n + x] as usize == x && flat[x * n + e] as usize == x))
            .ok_or_else(|| Error::InvalidTable("no two-sided identity element".into()))?;
        Self::build(n, flat, identity, None, None)
    }

    /// Validate a row-major table with a declared identity.
    pub fn from_parts(
        order: usize,
        table: Vec<u32>,
        identity: Elem,
        labels: Option<Vec<String>>,
        family_tag: Option<String>,
    ) -> Result<Self> {
        Self::build(order, table, identity, labels, family_tag)
    }

    fn build(
        n: usize,
        table: Vec<u32>,
        identity: Elem,
        labels: Option<Vec<String>>,
        family_tag: Option<String>,
    ) -> Result<Self> {
        let cap = caps::current().group_order;
        if n > cap {
            return Err(Error::cap("group order", n, cap));
        }
        if n == 0 || table.len() != n * n {
            return Err(Error::InvalidTable(format!("table has {} entries, expected {}", table.len(), n * n)));
        }
        if identity >= n {
            return Err(Error::InvalidTable(format!("identity {identity} out of range")));
        }
        if let Some(l) = &labels {
            if l.len() != n {
                return Err(Error::InvalidTable(format!("{} labels for {n} elements", l.len())));
            }
        }
        if let Some(&c) = table.iter().find(|&&c| c as usize >= n) {
            return Err(Error::InvalidTable(format!("entry {c} is out of range")));
        }
        for x in 0..n {
            if table[identity * n + x] as usize != x || table[x * n + identity] as usize != x {
                return Err(Error::InvalidTable(format!(
                    "identity law fails at ({identity}, {x}): e*x = {}, x*e = {}",
                    table[identity * n + x],
                    table[x * n + identity]
                )));
            }
        }
        check_latin(n, &table)?;
        let gens = right_generators(n, &table, identity);
        check_associative(n, &table, &gens)?;
        let mut inverses = vec![0u32; n];
        for a in 0..n {
            for b in 0..n {
                if table[a * n + b] as usize == identity {
                    inverses[a] = b as u32;
                    break;
                }
            }
        }
        Ok(FiniteGroup { order: n, table, identity, inverses, labels, family_tag })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.order {
            return Err(Error::InvalidArgument(format!("{} labels for {} elements", labels.len(), self.order)));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn with_family_tag(mut self, tag: impl Into<String>) -> Self {
        self.family_tag = Some(tag.into());
        self
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> Elem {
        self.identity
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.order
    }

    /// Elements other than the identity, in canonical order.
    pub fn nontrivial(&self) -> impl Iterator<Item = Elem> + '_ {
        let e = self.identity;
        (0..self.order).filter(move |&x| x != e)
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inverses[a] as usize
    }

    pub fn mul_all(&self, xs: &[Elem]) -> Elem {
        xs.iter().fold(self.identity, |acc, &x| self.mul(acc, x))
    }

    /// `a^k` for any integer `k`.
    pub fn pow(&self, a: Elem, k: i64) -> Elem {
        let base = if k < 0 { self.inv(a) } else { a };
        let mut k = k.unsigned_abs();
        let mut acc = self.identity;
        let mut sq = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, sq);
            }
            sq = self.mul(sq, sq);
            k >>= 1;
        }
        acc
    }

    pub fn element_order(&self, a: Elem) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> usize {
        self.elements().map(|a| self.element_order(a)).fold(1, lcm)
    }

    pub fn commute(&self, a: Elem, b: Elem) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order;
        (0..n).all(|a| (a + 1..n).all(|b| self.commute(a, b)))
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    /// `g x g^-1`.
    pub fn conjugate(&self, g: Elem, x: Elem) -> Elem {
        self.mul(self.mul(g, x), self.inv(g))
    }

    /// The elements commuting with everything, in canonical order.
    pub fn center(&self) -> Vec<Elem> {
        self.elements().filter(|&z| self.elements().all(|g| self.commute(z, g))).collect()
    }

    /// Size of the conjugacy class of every element.
    pub fn class_sizes(&self) -> Vec<usize> {
        let mut seen = vec![usize::MAX; self.order];
        let mut sizes = vec![0; self.order];
        for x in self.elements() {
            if seen[x] != usize::MAX {
                continue;
            }
            let mut class: Vec<Elem> = self.elements().map(|g| self.conjugate(g, x)).collect();
            class.sort_unstable();
            class.dedup();
            for &y in &class {
                seen[y] = x;
                sizes[y] = class.len();
            }
        }
        sizes
    }

    /// Isomorphism-invariant fingerprint `(element order, class size)` per element.
    pub fn fingerprints(&self) -> Vec<(usize, usize)> {
        let sizes = self.class_sizes();
        self.elements().map(|x| (self.element_order(x), sizes[x])).collect()
    }

    /// The subgroup generated by `gens`, sorted.
    pub fn generated(&self, gens: &[Elem]) -> Vec<Elem> {
        let mut member = vec![false; self.order];
        member[self.identity] = true;
        let mut out = vec![self.identity];
        let mut i = 0;
        while i < out.len() {
            let x = out[i];
            for &g in gens {
                let y = self.mul(x, g);
                if !member[y] {
                    member[y] = true;
                    out.push(y);
                }
            }
            i += 1;
        }
        out.sort_unstable();
        out
    }

    /// A small generating set: each step adds the element that enlarges the
    /// generated subgroup the most, ties broken by the smallest index.
    pub fn greedy_generators(&self) -> Vec<Elem> {
        let mut gens = Vec::new();
        let mut current = vec![self.identity];
        while current.len() < self.order {
            let mut member = vec![false; self.order];
            for &x in &current {
                member[x] = true;
            }
            let mut best: Option<(usize, Elem)> = None;
            for x in self.elements() {
                if member[x] {
                    continue;
                }
                let mut cand = gens.clone();
                cand.push(x);
                let h = self.generated(&cand);
                if best.map_or(true, |(s, _)| h.len() > s) {
                    best = Some((h.len(), x));
                }
                if h.len() == self.order {
                    break;
                }
            }
            let (_, x) = best.expect("a non-member exists");
            gens.push(x);
            current = self.generated(&gens);
        }
        gens
    }

    /// Whether `elems` (any order, duplicates allowed) is a subgroup.
    pub fn is_subgroup(&self, elems: &[Elem]) -> bool {
        let mut member = vec![false; self.order];
        for &x in elems {
            member[x] = true;
        }
        member[self.identity]
            && elems.iter().all(|&a| member[self.inv(a)] && elems.iter().all(|&b| member[self.mul(a, b)]))
    }

    /// The subgroup on `elems` as a group in its own right, together with the
    /// embedding (subgroup index to ambient index). Elements keep their
    /// relative order.
    pub fn subgroup(&self, elems: &[Elem]) -> Result<(FiniteGroup, Vec<Elem>)> {
        let mut emb: Vec<Elem> = elems.to_vec();
        emb.sort_unstable();
        emb.dedup();
        if !self.is_subgroup(&emb) {
            return Err(Error::InvalidArgument("elements do not form a subgroup".into()));
        }
        let mut pos = HashMap::with_capacity(emb.len());
        for (i, &x) in emb.iter().enumerate() {
            pos.insert(x, i);
        }
        let m = emb.len();
        let mut table = Vec::with_capacity(m * m);
        for &a in &emb {
            for &b in &emb {
                table.push(pos[&self.mul(a, b)] as u32);
            }
        }
        let labels = self.labels.as_ref().map(|l| emb.iter().map(|&x| l[x].clone()).collect());
        let g = Self::build(m, table, pos[&self.identity], labels, None)?;
        Ok((g, emb))
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Human-readable name of `x`; falls back to the index.
    pub fn label(&self, x: Elem) -> String {
        match &self.labels {
            Some(l) => l[x].clone(),
            None => x.to_string(),
        }
    }

    pub fn family_tag(&self) -> Option<&str> {
        self.family_tag.as_deref()
    }

    /// Row-major table.
    pub fn table(&self) -> &[u32] {
        &self.table
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(|r| r.iter().map(|&c| c as usize).collect()).collect()
    }

    /// Hex SHA-256 of the order, identity and table; identifies the table
    /// exactly (labels excluded).
    pub fn digest(&self) -> String {
        let mut h = Sha256::new();
        h.update((self.order as u64).to_le_bytes());
        h.update((self.identity as u64).to_le_bytes());
        for &c in &self.table {
            h.update(c.to_le_bytes());
        }
        h.finalize().iter().map(|b| format!("{b:02x}")).collect()
    }

    /// Short reference used by serialized cochains.
    pub fn reference(&self) -> String {
        match &self.family_tag {
            Some(t) => t.clone(),
            None => format!("sha256:{}", self.digest()),
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

fn check_latin(n: usize, table: &[u32]) -> Result<()> {
    let mut seen = vec![usize::MAX; n];
    for a in 0..n {
        for b in 0..n {
            let c = table[a * n + b] as usize;
            if seen[c] == a {
                let b0 = (0..b).find(|&b0| table[a * n + b0] as usize == c).unwrap_or(0);
                return Err(Error::InvalidTable(format!(
                    "not a Latin square: row {a} repeats {c} at columns {b0} and {b}"
                )));
            }
            seen[c] = a;
        }
    }
    seen.iter_mut().for_each(|s| *s = usize::MAX);
    for b in 0..n {
        for a in 0..n {
            let c = table[a * n + b] as usize;
            if seen[c] == b {
                let a0 = (0..a).find(|&a0| table[a0 * n + b] as usize == c).unwrap_or(0);
                return Err(Error::InvalidTable(format!(
                    "not a Latin square: column {b} repeats {c} at rows {a0} and {a}"
                )));
            }
            seen[c] = b;
        }
    }
    Ok(())
}

/// Greedy set `S` such that every element is a left-normed product `e s_1 s_2 ...`.
/// Valid for a Latin square with identity before associativity is known.
fn right_generators(n: usize, table: &[u32], identity: Elem) -> Vec<Elem> {
    let mut reached = vec![false; n];
    reached[identity] = true;
    let mut frontier = vec![identity];
    let mut gens: Vec<Elem> = Vec::new();
    let mut all: Vec<Elem> = vec![identity];
    loop {
        while let Some(x) = frontier.pop() {
            for &g in &gens {
                let y = table[x * n + g] as usize;
                if !reached[y] {
                    reached[y] = true;
                    frontier.push(y);
                    all.push(y);
                }
            }
        }
        match (0..n).find(|&x| !reached[x]) {
            None => return gens,
            Some(x) => {
                gens.push(x);
                frontier = all.clone();
            }
        }
    }
}

/// Light's associativity test: if `(x s) y = x (s y)` for every `s` in a
/// generating set, the whole table is associative.
fn check_associative(n: usize, table: &[u32], gens: &[Elem]) -> Result<()> {
    for &s in gens {
        for x in 0..n {
            let xs = table[x * n + s] as usize;
            for y in 0..n {
                let sy = table[s * n + y] as usize;
                if table[xs * n + y] != table[x * n + sy] {
                    // recover an explicit failing triple with the generator in the middle
                    return Err(Error::InvalidTable(format!(
                        "not associative: ({x}*{s})*{y} = {} but {x}*({s}*{y}) = {}",
                        table[xs * n + y],
                        table[x * n + sy]
                    )));
                }
            }
        }
    }
    Ok(())
}

pub(crate) fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// The cyclic group `Z/n`, elements `0..n` under addition.
pub fn cyclic(n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::InvalidArgument("cyclic(n) needs n >= 1".into()));
    }
    let cap = caps::current().group_order;
    if n > cap {
        return Err(Error::cap("group order", n, cap));
    }
    let table = (0..n * n).map(|i| ((i / n + i % n) % n) as u32).collect();
    let labels = (0..n).map(|k| k.to_string()).collect();
    FiniteGroup::build(n, table, 0, Some(labels), Some(format!("cyclic({n})")))
}

/// The dihedral group of order `2n`, elements `e, r, ..., r^{n-1}, s, sr, ..., sr^{n-1}`.
pub fn dihedral(n: usize) -> Result<FiniteGroup> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("dihedral(n) needs n >= 2, got {n}")));
    }
    let order = 2 * n;
    let cap = caps::current().group_order;
    if order > cap {
        return Err(Error::cap("group order", order, cap));
    }
    // index k < n is r^k, index n + k is s r^k; r^a s = s r^{-a}
    let mul = |x: usize, y: usize| -> usize {
        let (xs, a) = (x >= n, x % n);
        let (ys, b) = (y >= n, y % n);
        match (xs, ys) {
            (false, false) => (a + b) % n,
            (false, true) => n + (b + n - a) % n,
            (true, false) => n + (a + b) % n,
            (true, true) => (b + n - a) % n,
        }
    };
    let mut table = Vec::with_capacity(order * order);
    for x in 0..order {
        for y in 0..order {
            table.push(mul(x, y) as u32);
        }
    }
    let power = |k: usize| match k {
        0 => String::new(),
        1 => "r".to_string(),
        _ => format!("r^{k}"),
    };
    let mut labels: Vec<String> = (0..n).map(|k| if k == 0 { "e".into() } else { power(k) }).collect();
    labels.extend((0..n).map(|k| format!("s{}", power(k))));
    FiniteGroup::build(order, table, 0, Some(labels), Some(format!("dihedral({n})")))
}

/// All permutations of `0..n` in lexicographic order of one-line notation.
pub fn permutations_lex(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        out.push(p.clone());
        // next permutation
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else { break };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).expect("successor exists");
        p.swap(i - 1, j);
        p[i..].reverse();
    }
    out
}

/// Lexicographic rank of a permutation of `0..n`.
pub fn permutation_rank(p: &[usize]) -> usize {
    let n = p.len();
    let mut rank = 0;
    let mut fact = vec![1usize; n + 1];
    for i in 1..=n {
        fact[i] = fact[i - 1] * i;
    }
    for i in 0..n {
        let smaller = p[i + 1..].iter().filter(|&&q| q < p[i]).count();
        rank += smaller * fact[n - 1 - i];
    }
    rank
}

/// Cycle notation on letters `1..=n`, `()` for the identity.
pub fn cycle_notation(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut s = String::new();
    for i in 0..p.len() {
        if seen[i] || p[i] == i {
            continue;
        }
        s.push('(');
        let mut j = i;
        let mut first = true;
        while !seen[j] {
            seen[j] = true;
            if !first {
                s.push(' ');
            }
            s.push_str(&(j + 1).to_string());
            first = false;
            j = p[j];
        }
        s.push(')');
    }
    if s.is_empty() {
        s.push_str("()");
    }
    s
}

/// The symmetric group on `n` letters under the process cap on `n`.
pub fn symmetric(n: usize) -> Result<FiniteGroup> {
    let cap = caps::current().symmetric_degree;
    symmetric_with_cap(n, cap)
}

/// `S_n` with elements ordered lexicographically by one-line notation and
/// product `(p q)(i) = p(q(i))`.
pub fn symmetric_with_cap(n: usize, cap: usize) -> Result<FiniteGroup> {
    if n > cap {
        return Err(Error::cap("symmetric degree", n, cap));
    }
    let order: usize = (1..=n).product();
    let ocap = caps::current().group_order;
    if order > ocap {
        return Err(Error::cap("group order", order, ocap));
    }
    let perms = permutations_lex(n);
    let mut table = Vec::with_capacity(order * order);
    let mut prod = vec![0; n];
    for p in &perms {
        for q in &perms {
            for i in 0..n {
                prod[i] = p[q[i]];
            }
            table.push(permutation_rank(&prod) as u32);
        }
    }
    let labels = perms.iter().map(|p| cycle_notation(p)).collect();
    FiniteGroup::build(order, table, 0, Some(labels), Some(format!("symmetric({n})")))
}

/// `G x H` with `(g, h)` at index `g |H| + h`.
pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> Result<FiniteGroup> {
    direct_product_all(&[g, h])
}

/// Iterated direct product; the first factor is the most significant digit.
/// The empty family gives the trivial group.
pub fn direct_product_all(factors: &[&FiniteGroup]) -> Result<FiniteGroup> {
    let orders: Vec<usize> = factors.iter().map(|f| f.order()).collect();
    let order = checked_product(&orders)?;
    let digits = MixedRadix::new(orders.clone());
    let mut table = Vec::with_capacity(order * order);
    let decoded: Vec<Vec<Elem>> = (0..order).map(|x| digits.decode(x)).collect();
    let mut buf = vec![0; factors.len()];
    for x in &decoded {
        for y in &decoded {
            for (i, f) in factors.iter().enumerate() {
                buf[i] = f.mul(x[i], y[i]);
            }
            table.push(digits.encode(&buf) as u32);
        }
    }
    let identity = digits.encode(&factors.iter().map(|f| f.identity()).collect::<Vec<_>>());
    let labels = decoded
        .iter()
        .map(|x| {
            let parts: Vec<String> = factors.iter().zip(x).map(|(f, &xi)| f.label(xi)).collect();
            format!("({})", parts.join(","))
        })
        .collect();
    let tag = format!(
        "product({})",
        factors.iter().map(|f| f.reference()).collect::<Vec<_>>().join(",")
    );
    FiniteGroup::build(order, table, identity, Some(labels), Some(tag))
}

fn checked_product(orders: &[usize]) -> Result<usize> {
    let cap = caps::current().group_order;
    let mut order: u128 = 1;
    for &o in orders {
        order = order.saturating_mul(o as u128);
        if order > cap as u128 {
            return Err(Error::cap("group order", order, cap));
        }
    }
    Ok(order as usize)
}

/// Mixed-radix encoding with the first digit most significant.
#[derive(Clone, Debug)]
pub struct MixedRadix {
    radices: Vec<usize>,
    weights: Vec<usize>,
}

impl MixedRadix {
    pub fn new(radices: Vec<usize>) -> Self {
        let mut weights = vec![1; radices.len()];
        for i in (0..radices.len().saturating_sub(1)).rev() {
            weights[i] = weights[i + 1] * radices[i + 1];
        }
        MixedRadix { radices, weights }
    }

    pub fn len(&self) -> usize {
        self.radices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.radices.is_empty()
    }

    pub fn encode(&self, digits: &[usize]) -> usize {
        digits.iter().zip(&self.weights).map(|(d, w)| d * w).sum()
    }

    pub fn decode(&self, mut x: usize) -> Vec<usize> {
        let mut out = vec![0; self.radices.len()];
        for i in 0..self.radices.len() {
            out[i] = x / self.weights[i];
            x %= self.weights[i];
        }
        out
    }

    pub fn digit(&self, x: usize, i: usize) -> usize {
        (x / self.weights[i]) % self.radices[i]
    }
}

/// `S_n wr G` together with its coordinate system.
///
/// Elements are pairs `(sigma, x)` with `x in G^n`; the product is
/// `(sigma, x)(sigma', x') = (sigma sigma', (x |> sigma') x')` where
/// `(x |> sigma)_i = x_{sigma(i)}`. Index: `rank(sigma) |G|^n + digits(x)`.
#[derive(Clone, Debug)]
pub struct WreathProduct {
    group: FiniteGroup,
    sym: FiniteGroup,
    perms: Vec<Vec<usize>>,
    base: FiniteGroup,
    digits: MixedRadix,
    n: usize,
}

impl WreathProduct {
    pub fn new(n: usize, base: &FiniteGroup) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("wreath product needs n >= 1".into()));
        }
        let sym = symmetric_with_cap(n, n.max(caps::current().symmetric_degree))?;
        let perms = permutations_lex(n);
        let m = base.order();
        let mut orders = vec![perms.len()];
        orders.extend(std::iter::repeat(m).take(n));
        let order = checked_product(&orders)?;
        let digits = MixedRadix::new(vec![m; n]);
        let bsize = m.pow(n as u32);
        let decoded: Vec<(usize, Vec<Elem>)> = (0..order).map(|w| (w / bsize, digits.decode(w % bsize))).collect();
        let mut table = Vec::with_capacity(order * order);
        let mut buf = vec![0; n];
        for (s, x) in &decoded {
            for (t, y) in &decoded {
                let p = &perms[*t];
                for i in 0..n {
                    buf[i] = base.mul(x[p[i]], y[i]);
                }
                table.push((sym.mul(*s, *t) * bsize + digits.encode(&buf)) as u32);
            }
        }
        let identity = base_identity_index(&digits, base, n);
        let labels = decoded
            .iter()
            .map(|(s, x)| {
                let parts: Vec<String> = x.iter().map(|&xi| base.label(xi)).collect();
                format!("[{};{}]", sym.label(*s), parts.join(","))
            })
            .collect();
        let tag = format!("wreath({n},{})", base.reference());
        let group = FiniteGroup::build(order, table, identity, Some(labels), Some(tag))?;
        Ok(WreathProduct { group, sym, perms, base: base.clone(), digits, n })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn into_group(self) -> FiniteGroup {
        self.group
    }

    pub fn base(&self) -> &FiniteGroup {
        &self.base
    }

    pub fn symmetric(&self) -> &FiniteGroup {
        &self.sym
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    /// One-line notation of the permutation with index `sigma`.
    pub fn perm(&self, sigma: usize) -> &[usize] {
        &self.perms[sigma]
    }

    pub fn perm_index(&self, p: &[usize]) -> usize {
        permutation_rank(p)
    }

    pub fn encode(&self, sigma: usize, x: &[Elem]) -> Elem {
        sigma * self.base_size() + self.digits.encode(x)
    }

    pub fn decode(&self, w: Elem) -> (usize, Vec<Elem>) {
        let b = self.base_size();
        (w / b, self.digits.decode(w % b))
    }

    fn base_size(&self) -> usize {
        self.base.order().pow(self.n as u32)
    }
}

fn base_identity_index(digits: &MixedRadix, base: &FiniteGroup, n: usize) -> usize {
    digits.encode(&vec![base.identity(); n])
}

/// Convenience wrapper returning only the wreath product group.
pub fn wreath_product(n: usize, base: &FiniteGroup) -> Result<FiniteGroup> {
    Ok(WreathProduct::new(n, base)?.into_group())
}

#[derive(Serialize, Deserialize)]
struct GroupJson {
    order: usize,
    table: Vec<Vec<u32>>,
    identity: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    family_tag: Option<String>,
}

impl From<FiniteGroup> for GroupJson {
    fn from(g: FiniteGroup) -> Self {
        GroupJson {
            order: g.order,
            table: g.table.chunks(g.order).map(|r| r.to_vec()).collect(),
            identity: g.identity,
            labels: g.labels,
            family_tag: g.family_tag,
        }
    }
}

impl TryFrom<GroupJson> for FiniteGroup {
    type Error = Error;

    fn try_from(j: GroupJson) -> Result<Self> {
        if j.table.len() != j.order || j.table.iter().any(|r| r.len() != j.order) {
            return Err(Error::InvalidTable(format!("table is not {0}x{0}", j.order)));
        }
        let flat = j.table.into_iter().flatten().collect();
        FiniteGroup::build(j.order, flat, j.identity, j.labels, j.family_tag)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dihedral_orders_and_centers() {
        let d4 = dihedral(4).unwrap();
        assert_eq!(d4.order(), 8);
        let d8 = dihedral(8).unwrap();
        assert_eq!(d8.center(), vec![0, 4]);
        assert_eq!(d8.label(4), "r^4");
        assert_eq!(dihedral(5).unwrap().center(), vec![0]);
        assert!(dihedral(1).is_err());
    }

    #[test]
    fn dihedral_relations() {
        let n = 7;
        let d = dihedral(n).unwrap();
        let (r, s) = (1, n);
        assert_eq!(d.pow(r, n as i64), d.identity());
        assert_eq!(d.mul(s, s), d.identity());
        assert_eq!(d.mul(s, r), d.mul(d.inv(r), s));
        assert_eq!(d.mul(s, d.pow(r, 3)), n + 3);
    }

    #[test]
    fn conjugation_in_d8() {
        let d8 = dihedral(8).unwrap();
        // r s r^-1 = s r^-2 = s r^6
        assert_eq!(d8.conjugate(1, 8), 8 + 6);
        assert_eq!(d8.label(d8.conjugate(1, 8)), "sr^6");
        for x in d8.elements() {
            assert_eq!(d8.conjugate(d8.identity(), x), x);
        }
    }

    #[test]
    fn symmetric_groups() {
        assert_eq!(symmetric(0).unwrap().order(), 1);
        assert_eq!(symmetric(3).unwrap().order(), 6);
        let s4 = symmetric(4).unwrap();
        assert_eq!(s4.center(), vec![0]);
        assert_eq!(symmetric(6).unwrap().center(), vec![0]);
        assert!(symmetric(9).is_err());
        assert_eq!(s4.label(1), "(3 4)");
    }

    #[test]
    fn lex_rank_roundtrip() {
        for (i, p) in permutations_lex(5).iter().enumerate() {
            assert_eq!(permutation_rank(p), i);
        }
    }

    #[test]
    fn klein_four() {
        let z2 = cyclic(2).unwrap();
        let v = direct_product(&z2, &z2).unwrap();
        assert_eq!(v.order(), 4);
        assert_eq!(v.exponent(), 2);
        assert!(v.is_abelian());
        assert_eq!(v.center().len(), 4);
        assert_eq!(cyclic(1).unwrap().order(), 1);
    }

    #[test]
    fn from_table_rejects_bad_tables() {
        let bad_latin = vec![vec![0, 1, 2], vec![1, 1, 0], vec![2, 0, 1]];
        let err = FiniteGroup::from_table(bad_latin).unwrap_err();
        assert!(err.to_string().contains("Latin"), "{err}");
        // a Latin square with identity that is not associative (order 5 loop)
        let loop5 = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        let err = FiniteGroup::from_table(loop5).unwrap_err();
        assert!(err.to_string().contains("associative"), "{err}");
    }

    #[test]
    fn from_table_accepts_d4() {
        let d4 = dihedral(4).unwrap();
        let g = FiniteGroup::from_table(d4.rows()).unwrap();
        assert_eq!(g.table(), d4.table());
    }

    #[test]
    fn json_roundtrip() {
        let d4 = dihedral(4).unwrap();
        let s = d4.to_json().unwrap();
        let back = FiniteGroup::from_json(&s).unwrap();
        assert_eq!(back, d4);
        assert_eq!(back.to_json().unwrap(), s);
    }

    #[test]
    fn wreath_product_layout() {
        let z2 = cyclic(2).unwrap();
        let w = WreathProduct::new(2, &z2).unwrap();
        assert_eq!(w.group().order(), 8);
        let g = w.group();
        // (id,(a,b))((12),(c,d)) = ((12),(b c, a d))
        let x = w.encode(0, &[1, 0]);
        let y = w.encode(1, &[0, 0]);
        assert_eq!(w.decode(g.mul(x, y)), (1, vec![0, 1]));
        assert!(!g.is_abelian());
    }

    #[test]
    fn subgroup_extraction() {
        let d8 = dihedral(8).unwrap();
        let (z, emb) = d8.subgroup(&d8.center()).unwrap();
        assert_eq!(z.order(), 2);
        assert_eq!(emb, vec![0, 4]);
        assert!(d8.subgroup(&[0, 1]).is_err());
    }

    #[test]
    fn greedy_generators_generate() {
        for g in [dihedral(6).unwrap(), symmetric(4).unwrap(), cyclic(12).unwrap()] {
            let gens = g.greedy_generators();
            assert_eq!(g.generated(&gens).len(), g.order());
            assert!(gens.len() <= 2);
        }
    }
}

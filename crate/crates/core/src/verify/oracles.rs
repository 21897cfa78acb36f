//! Brute-force reference computations. None of these call the algorithms
//! they are compared against.

use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

use crate::quotient::FiniteQuotient;
use crate::ExactRational;

/// Letters as nonzero integers: `g+1` for a generator, `-(g+1)` for its inverse.
pub type Letters = Vec<i32>;

pub fn free_reduce(word: &[i32]) -> Letters {
    let mut out: Letters = Vec::with_capacity(word.len());
    for &a in word {
        if out.last() == Some(&-a) {
            out.pop();
        } else {
            out.push(a);
        }
    }
    out
}

pub fn invert(word: &[i32]) -> Letters {
    word.iter().rev().map(|a| -a).collect()
}

pub fn power(word: &[i32], n: usize) -> Letters {
    let mut out = Vec::with_capacity(word.len() * n);
    for _ in 0..n {
        out.extend_from_slice(word);
    }
    free_reduce(&out)
}

/// All freely reduced words of length at most `max_len` over `gens` generators.
pub fn all_reduced_words(gens: i32, max_len: usize) -> Vec<Letters> {
    let letters: Vec<i32> = (1..=gens).flat_map(|g| [g, -g]).collect();
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for &a in &letters {
                if w.last() != Some(&-a) {
                    let mut v: Letters = w.clone();
                    v.push(a);
                    next.push(v);
                }
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// For every reduced word `w` of length at most `max_len`, the set of `n ≥ 2`
/// such that `w = v^n` for some word `v`, as a bit mask.
pub fn power_table(gens: i32, max_len: usize) -> HashMap<Letters, u64> {
    let mut table: HashMap<Letters, u64> = HashMap::new();
    for v in all_reduced_words(gens, max_len) {
        if v.is_empty() {
            continue;
        }
        // |v^n| ≥ n for nontrivial v, so exponents above max_len never fit.
        for n in 2..=max_len.max(2) {
            let w = power(&v, n);
            if w.len() <= max_len {
                *table.entry(w).or_default() |= 1 << n;
            }
        }
    }
    table
}

/// Largest `k` with `p^k` in `{1} ∪ exponents`.
pub fn nu_from_powers(mask: u64, p: u64) -> u32 {
    // Exponent sets are closed under divisors, so p, p², … can be scanned in order.
    let mut k = 0;
    let mut pk = p;
    while pk < 64 {
        if mask & (1 << pk) != 0 {
            k += 1;
            pk *= p;
        } else {
            break;
        }
    }
    k
}

pub fn det(m: &[Vec<BigInt>]) -> BigInt {
    match m.len() {
        0 => BigInt::one(),
        1 => m[0][0].clone(),
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<BigInt>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, x)| x.clone()).collect())
                    .collect();
                let term = &m[0][j] * det(&minor);
                if j % 2 == 0 {
                    term
                } else {
                    -term
                }
            })
            .sum(),
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if n < k {
        return Vec::new();
    }
    let mut out = combinations(n - 1, k);
    for mut c in combinations(n - 1, k - 1) {
        c.push(n - 1);
        out.push(c);
    }
    out
}

/// gcd of all `k × k` minors (zero if all vanish).
pub fn gcd_of_minors(a: &[Vec<BigInt>], k: usize) -> BigInt {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut g = BigInt::zero();
    for rs in combinations(rows, k) {
        for cs in combinations(cols, k) {
            let minor: Vec<Vec<BigInt>> =
                rs.iter().map(|&i| cs.iter().map(|&j| a[i][j].clone()).collect()).collect();
            g = g.gcd(&det(&minor));
        }
    }
    g.abs()
}

/// Free rank and nontrivial invariant factors from determinantal divisors.
pub fn invariants_by_minors(a: &[Vec<BigInt>], cols: usize) -> (usize, Vec<BigInt>) {
    let mut prev = BigInt::one();
    let mut factors = Vec::new();
    let mut rank = 0;
    for k in 1..=a.len().min(cols) {
        let g = gcd_of_minors(a, k);
        if g.is_zero() {
            break;
        }
        rank = k;
        let f = &g / &prev;
        if !f.is_one() {
            factors.push(f);
        }
        prev = g;
    }
    (cols - rank, factors)
}

/// Rank of an integer matrix reduced mod `p`.
pub fn rank_mod_p(rows: &[Vec<i64>], p: i64) -> usize {
    let mut m: Vec<Vec<i64>> = rows.iter().map(|r| r.iter().map(|x| x.rem_euclid(p)).collect()).collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = (1..p).find(|x| x * m[rank][c] % p == 1).expect("p is prime");
        for x in m[rank].iter_mut() {
            *x = *x * inv % p;
        }
        for i in 0..m.len() {
            if i != rank && m[i][c] != 0 {
                let f = m[i][c];
                for j in 0..cols {
                    m[i][j] = (m[i][j] - f * m[rank][j]).rem_euclid(p);
                }
            }
        }
        rank += 1;
    }
    rank
}

/// `r - 1 + Σ (1 - p^{-ν_p(e)})` by repeated division.
pub fn cyclic_sum_formula(free_rank: usize, orders: &[u64], p: u64) -> ExactRational {
    let mut total = Ratio::from_integer(BigInt::from(free_rank as i64 - 1));
    for &e in orders {
        let mut e = e;
        let mut pk = 1u64;
        while e % p == 0 {
            e /= p;
            pk *= p;
        }
        total += Ratio::one() - Ratio::new(BigInt::one(), BigInt::from(pk));
    }
    total
}

/// Cyclic reduction followed by the lexicographically least rotation.
pub fn cyclic_canonical(word: &[i32]) -> Letters {
    let mut w = free_reduce(word);
    while w.len() >= 2 && w[0] == -w[w.len() - 1] {
        w.remove(0);
        w.pop();
    }
    (0..w.len().max(1))
        .map(|i| {
            let mut r = w[i.min(w.len())..].to_vec();
            r.extend_from_slice(&w[..i.min(w.len())]);
            r
        })
        .min()
        .unwrap_or_default()
}

/// Largest `n` such that the cyclically reduced form is an `n`-fold repetition.
pub fn cyclic_power(word: &[i32]) -> usize {
    let w = cyclic_canonical(word);
    let len = w.len();
    (1..=len)
        .rev()
        .find(|&n| len.is_multiple_of(n) && (0..len).all(|i| w[i] == w[(i + len / n) % len]))
        .unwrap_or(0)
}

/// Letter-by-letter Reidemeister–Schreier over a depth-first spanning tree of
/// the regular action of the image group.
pub struct NaiveKernel<'a> {
    q: &'a FiniteQuotient,
    tree_words: Vec<Letters>,
    tree_edges: HashSet<(usize, usize)>,
}

impl<'a> NaiveKernel<'a> {
    pub fn new(q: &'a FiniteQuotient) -> Self {
        let n = q.rank();
        let d = q.order();
        let mut tree_words: Vec<Option<Letters>> = vec![None; d];
        tree_words[0] = Some(Vec::new());
        let mut tree_edges = HashSet::new();
        let mut stack = vec![0usize];
        while let Some(c) = stack.pop() {
            for g in (0..n).rev() {
                let fwd = self_mul(q, c, g, false);
                if tree_words[fwd].is_none() {
                    let mut w = tree_words[c].clone().unwrap();
                    w.push(g as i32 + 1);
                    tree_words[fwd] = Some(w);
                    tree_edges.insert((c, g));
                    stack.push(fwd);
                }
                let back = self_mul(q, c, g, true);
                if tree_words[back].is_none() {
                    let mut w = tree_words[c].clone().unwrap();
                    w.push(-(g as i32 + 1));
                    tree_words[back] = Some(w);
                    tree_edges.insert((back, g));
                    stack.push(back);
                }
            }
        }
        NaiveKernel {
            q,
            tree_words: tree_words.into_iter().map(Option::unwrap).collect(),
            tree_edges,
        }
    }

    pub fn coset_words(&self) -> &[Letters] {
        &self.tree_words
    }

    /// Symbols are `±(1 + c·n + g)` for non-tree edges `(c, g)`.
    pub fn rewrite(&self, word: &[i32]) -> Option<Letters> {
        let n = self.q.rank();
        let mut c = 0;
        let mut out = Vec::new();
        for &a in word {
            let g = (a.unsigned_abs() - 1) as usize;
            if a > 0 {
                if !self.tree_edges.contains(&(c, g)) {
                    out.push((1 + c * n + g) as i32);
                }
                c = self_mul(self.q, c, g, false);
            } else {
                let prev = self_mul(self.q, c, g, true);
                if !self.tree_edges.contains(&(prev, g)) {
                    out.push(-((1 + prev * n + g) as i32));
                }
                c = prev;
            }
        }
        (c == 0).then(|| free_reduce(&out))
    }
}

fn self_mul(q: &FiniteQuotient, c: usize, g: usize, inverse: bool) -> usize {
    let img = &q.images()[g];
    let e = &q.elements()[c];
    let prod = if inverse { e.then(&img.inverse()) } else { e.then(img) };
    q.element_index(&prod).expect("closed under multiplication")
}

fn permutations(items: &[u64]) -> Vec<Vec<u64>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

/// First of `a`–`d` whose literal condition holds for some ordering of the
/// periods.
pub fn classify_by_labelings(genus: u64, periods: &[u64], p: u64) -> Option<char> {
    if genus >= 1 {
        return Some('a');
    }
    let orderings = permutations(periods);
    let holds = |cond: &dyn Fn(&[u64]) -> bool| orderings.iter().any(|e| cond(e));
    let div = |e: &[u64], k: usize, m: u64| e.len() >= k && e[..k].iter().all(|x| x % m == 0);
    if p >= 3 && holds(&|e| div(e, 3, p)) {
        return Some('b');
    }
    if p == 2 && holds(&|e| div(e, 4, 2)) {
        return Some('c');
    }
    if p == 2 && holds(&|e| div(e, 2, 4) && e.len() >= 3 && e[2] % 2 == 0) {
        return Some('d');
    }
    None
}

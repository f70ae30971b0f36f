//! Affine linearized polynomials f(x) = c + a_0 x + a_1 x^p + .. + a_h x^{p^h}
//! over GF(q), their root sets, and F_p-subspaces of GF(q).
//!
//! For c = 0 the polynomial is F_p-linear and its null set is a subspace; for
//! c ≠ 0 the null set is empty or a coset of that subspace. The brute-force
//! counters here enumerate every coefficient vector and are used as oracles
//! for the closed forms in [`crate::combinatorics`].

use std::collections::HashMap;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::gf::{Field, FieldElement};
use crate::linalg::RowSpace;
use crate::{checked_pow, Error, Result};

/// Refusal threshold for the brute-force kernel counters.
pub const BRUTE_FORCE_LIMIT: u64 = 1 << 28;

/// f_{c,a}(x) = c + Σ a_i x^{p^i}; `a` holds a_0..a_h.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AffinePoly {
    pub c: FieldElement,
    pub a: Vec<FieldElement>,
}

impl AffinePoly {
    pub fn new(c: FieldElement, a: Vec<FieldElement>) -> Self {
        assert!(!a.is_empty(), "an affine polynomial needs at least a_0");
        AffinePoly { c, a }
    }

    /// The linear part f_{0,a}.
    pub fn linear(a: Vec<FieldElement>) -> Self {
        Self::new(FieldElement::ZERO, a)
    }

    pub fn h(&self) -> usize {
        self.a.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_zero() && self.a.iter().all(|x| x.is_zero())
    }
}

pub fn evaluate(field: &Field, f: &AffinePoly, x: FieldElement) -> FieldElement {
    let mut acc = f.c;
    let mut power = x;
    for &coef in &f.a {
        acc = field.add(acc, field.mul(coef, power));
        power = field.frobenius(power, 1);
    }
    acc
}

/// Root set of `f`, ascending by encoding.
pub fn null_set(field: &Field, f: &AffinePoly) -> Vec<FieldElement> {
    field.elements().filter(|&x| evaluate(field, f, x).is_zero()).collect()
}

/// log_p of the number of roots of f_{0,a}.
pub fn kernel_dimension(field: &Field, a: &[FieldElement]) -> u32 {
    let roots = null_set(field, &AffinePoly::linear(a.to_vec())).len() as u64;
    log_p(roots, field.p())
}

fn log_p(mut n: u64, p: u64) -> u32 {
    let mut k = 0;
    while n > 1 {
        debug_assert_eq!(n % p, 0, "root count is a power of p");
        n /= p;
        k += 1;
    }
    k
}

/// Table of x^{p^i} for every x and 0 ≤ i ≤ h, indexed `[i][code(x)]`.
///
/// Evaluating through the table avoids the per-term Frobenius lookups in
/// [`evaluate`]; both routes must agree.
#[derive(Clone, Debug)]
pub struct PowerTable {
    rows: Vec<Vec<FieldElement>>,
}

impl PowerTable {
    pub fn new(field: &Field, h: usize) -> Self {
        let mut rows: Vec<Vec<FieldElement>> = vec![field.elements().collect()];
        for i in 1..=h {
            let next = rows[i - 1].iter().map(|&x| field.frobenius(x, 1)).collect();
            rows.push(next);
        }
        PowerTable { rows }
    }

    /// f_{0,a}(x); `a` may be shorter than the table.
    #[inline]
    pub fn eval_linear(&self, field: &Field, a: &[FieldElement], x: FieldElement) -> FieldElement {
        let i = x.code() as usize;
        a.iter()
            .zip(&self.rows)
            .fold(FieldElement::ZERO, |acc, (&coef, row)| {
                field.add(acc, field.mul(coef, row[i]))
            })
    }

    pub fn row(&self, i: usize) -> &[FieldElement] {
        &self.rows[i]
    }
}

/// An F_p-subspace of GF(q) held as a basis in reduced row-echelon form.
///
/// Each element is read as its m-digit coefficient vector; a basis vector's
/// pivot is its lowest-index nonzero digit, normalized to 1, and pivots
/// increase down the basis. The form is unique per subspace, so derived
/// equality and hashing are set semantics.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Subspace {
    basis: Vec<FieldElement>,
}

impl Subspace {
    pub fn zero() -> Self {
        Subspace { basis: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[FieldElement] {
        &self.basis
    }

    /// Number of elements, p^dim.
    pub fn size(&self, field: &Field) -> u64 {
        field.p().pow(self.dim() as u32)
    }

    /// All p^dim elements, ascending by encoding.
    pub fn elements(&self, field: &Field) -> Vec<FieldElement> {
        let mut out = vec![FieldElement::ZERO];
        for &b in &self.basis {
            let mut next = Vec::with_capacity(out.len() * field.p() as usize);
            for k in 0..field.p() {
                let kb = field.scale(k, b);
                next.extend(out.iter().map(|&x| field.add(x, kb)));
            }
            out = next;
        }
        out.sort_unstable();
        out
    }

    pub fn contains(&self, field: &Field, x: FieldElement) -> bool {
        let p = field.p() as u32;
        let mut v = field.digits(x);
        for b in &self.basis {
            let row = field.digits(*b);
            let pivot = row.iter().position(|&d| d != 0).expect("basis vectors are nonzero");
            let coef = v[pivot];
            if coef != 0 {
                for (x, &r) in v.iter_mut().zip(&row) {
                    *x = (*x + (p - coef) * r % p) % p;
                }
            }
        }
        v.iter().all(|&d| d == 0)
    }

    pub fn is_subspace_of(&self, field: &Field, other: &Subspace) -> bool {
        self.basis.iter().all(|&b| other.contains(field, b))
    }
}

/// Reduced row-echelon form over F_p of digit vectors; rows with pivots ascending.
fn echelon(rows: Vec<Vec<u32>>, p: u32, m: usize) -> Vec<Vec<u32>> {
    let p64 = p as u64;
    let inv = |d: u32| -> u32 {
        // d^(p-2) mod p
        let (mut base, mut e, mut acc) = (d as u64, p64 - 2, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p64;
            }
            base = base * base % p64;
            e >>= 1;
        }
        acc as u32
    };
    let mut rows = rows;
    let mut rank = 0;
    for col in 0..m {
        let Some(found) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, found);
        let s = inv(rows[rank][col]) as u64;
        for d in rows[rank].iter_mut() {
            *d = (*d as u64 * s % p64) as u32;
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == rank || row[col] == 0 {
                continue;
            }
            let coef = row[col] as u64;
            for (x, &y) in row.iter_mut().zip(&pivot_row) {
                *x = ((*x as u64 + (p64 - coef) * y as u64) % p64) as u32;
            }
        }
        rank += 1;
    }
    rows.truncate(rank);
    rows
}

/// The F_p-span of `gens` in canonical form.
pub fn span(field: &Field, gens: &[FieldElement]) -> Subspace {
    let rows = gens.iter().map(|&g| field.digits(g)).collect();
    let basis = echelon(rows, field.p() as u32, field.m() as usize)
        .iter()
        .map(|r| field.from_digits(r))
        .collect();
    Subspace { basis }
}

/// Every `dim`-dimensional F_p-subspace of GF(q), each exactly once.
///
/// Pivot column sets come in lexicographic order; within one pivot set the
/// free entries count up as a base-p odometer, last free entry fastest.
pub fn enumerate_subspaces(field: &Field, dim: usize) -> SubspaceIter<'_> {
    let m = field.m() as usize;
    let pivots = if dim <= m { Some((0..dim).collect()) } else { None };
    let mut it = SubspaceIter {
        field,
        m,
        pivots,
        free: Vec::new(),
        counter: Vec::new(),
        exhausted_pivot: true,
    };
    it.reset_free();
    it
}

pub struct SubspaceIter<'f> {
    field: &'f Field,
    m: usize,
    pivots: Option<Vec<usize>>,
    /// (row, column) positions that may hold any digit.
    free: Vec<(usize, usize)>,
    counter: Vec<u32>,
    exhausted_pivot: bool,
}

impl SubspaceIter<'_> {
    fn reset_free(&mut self) {
        let Some(pivots) = &self.pivots else {
            return;
        };
        self.free = pivots
            .iter()
            .enumerate()
            .flat_map(|(r, &pc)| {
                ((pc + 1)..self.m)
                    .filter(|c| !pivots.contains(c))
                    .map(move |c| (r, c))
            })
            .collect();
        self.counter = vec![0; self.free.len()];
        self.exhausted_pivot = false;
    }

    fn advance_pivots(&mut self) {
        let Some(pivots) = self.pivots.as_mut() else {
            return;
        };
        let (k, m) = (pivots.len(), self.m);
        // next k-combination of 0..m in lexicographic order
        let Some(i) = (0..k).rev().find(|&i| pivots[i] < m - k + i) else {
            self.pivots = None;
            return;
        };
        pivots[i] += 1;
        for j in i + 1..k {
            pivots[j] = pivots[j - 1] + 1;
        }
        self.reset_free();
    }

    fn advance_counter(&mut self) {
        let p = self.field.p() as u32;
        for d in self.counter.iter_mut().rev() {
            *d += 1;
            if *d < p {
                return;
            }
            *d = 0;
        }
        self.exhausted_pivot = true;
    }
}

impl Iterator for SubspaceIter<'_> {
    type Item = Subspace;

    fn next(&mut self) -> Option<Subspace> {
        if self.exhausted_pivot {
            self.advance_pivots();
        }
        let pivots = self.pivots.as_ref()?;
        let mut rows = vec![vec![0u32; self.m]; pivots.len()];
        for (r, &pc) in pivots.iter().enumerate() {
            rows[r][pc] = 1;
        }
        for (&(r, c), &d) in self.free.iter().zip(&self.counter) {
            rows[r][c] = d;
        }
        let basis = rows.iter().map(|r| self.field.from_digits(r)).collect();
        self.advance_counter();
        Some(Subspace { basis })
    }
}

/// Rank over GF(q) of the Moore matrix with rows (x, x^p, .., x^{p^h}).
pub fn moore_rank(field: &Field, xs: &[FieldElement], h: usize) -> usize {
    let rows = xs
        .iter()
        .map(|&x| (0..=h as u64).map(|i| field.frobenius(x, i)).collect())
        .collect();
    RowSpace::new(field, rows).rank()
}

fn brute_force_size(field: &Field, h: usize) -> Result<u64> {
    match checked_pow(field.q(), h as u32 + 1) {
        Some(n) if n <= BRUTE_FORCE_LIMIT => Ok(n),
        n => Err(Error::BruteForceTooLarge {
            needed: n.map_or_else(|| format!("{}^{}", field.q(), h + 1), |n| n.to_string()),
            limit: BRUTE_FORCE_LIMIT,
        }),
    }
}

/// The coefficient vector with lexicographic index `index`, a_0 most significant.
pub(crate) fn coefficients_at(field: &Field, mut index: u64, len: usize) -> Vec<FieldElement> {
    let q = field.q();
    let mut a = vec![FieldElement::ZERO; len];
    for slot in a.iter_mut().rev() {
        *slot = FieldElement::from_code((index % q) as u32);
        index /= q;
    }
    a
}

/// Number of a ∈ GF(q)^{h+1} whose linear null set contains `u`, by enumeration.
pub fn count_g(field: &Field, u: &Subspace, h: usize) -> Result<BigUint> {
    let total = brute_force_size(field, h)?;
    let table = PowerTable::new(field, h);
    let points = u.elements(field);
    let count: u64 = (0..total)
        .into_par_iter()
        .filter(|&i| {
            let a = coefficients_at(field, i, h + 1);
            points.iter().all(|&x| table.eval_linear(field, &a, x).is_zero())
        })
        .count() as u64;
    Ok(BigUint::from(count))
}

/// Number of a ∈ GF(q)^{h+1} whose linear null set is exactly `u`, by enumeration.
pub fn count_f(field: &Field, u: &Subspace, h: usize) -> Result<BigUint> {
    let total = brute_force_size(field, h)?;
    let table = PowerTable::new(field, h);
    let points = u.elements(field);
    let count: u64 = (0..total)
        .into_par_iter()
        .filter(|&i| {
            let a = coefficients_at(field, i, h + 1);
            points.iter().all(|&x| table.eval_linear(field, &a, x).is_zero())
                && field
                    .elements()
                    .filter(|&x| table.eval_linear(field, &a, x).is_zero())
                    .count()
                    == points.len()
        })
        .count() as u64;
    Ok(BigUint::from(count))
}

/// Tally of the exact null set of f_{0,a} over every a ∈ GF(q)^{h+1}.
///
/// One pass answers `count_f` and `count_g` for every subspace at once.
#[derive(Clone, Debug, Default)]
pub struct KernelCensus {
    tally: HashMap<Subspace, u64>,
}

impl KernelCensus {
    pub fn new(field: &Field, h: usize) -> Result<Self> {
        let total = brute_force_size(field, h)?;
        let table = PowerTable::new(field, h);
        let tally = (0..total)
            .into_par_iter()
            .fold(HashMap::new, |mut acc: HashMap<Subspace, u64>, i| {
                let a = coefficients_at(field, i, h + 1);
                let roots: Vec<FieldElement> = field
                    .elements()
                    .filter(|&x| table.eval_linear(field, &a, x).is_zero())
                    .collect();
                let kernel = span(field, &roots);
                debug_assert_eq!(kernel.size(field), roots.len() as u64);
                *acc.entry(kernel).or_default() += 1;
                acc
            })
            .reduce(HashMap::new, |mut a, b| {
                for (k, v) in b {
                    *a.entry(k).or_default() += v;
                }
                a
            });
        Ok(KernelCensus { tally })
    }

    pub fn exact(&self, u: &Subspace) -> BigUint {
        BigUint::from(self.tally.get(u).copied().unwrap_or(0))
    }

    pub fn containing(&self, field: &Field, u: &Subspace) -> BigUint {
        let n: u64 = self
            .tally
            .iter()
            .filter(|(k, _)| u.is_subspace_of(field, k))
            .map(|(_, &n)| n)
            .sum();
        BigUint::from(n)
    }

    pub fn total(&self) -> u64 {
        self.tally.values().sum()
    }

    pub fn kernels(&self) -> impl Iterator<Item = (&Subspace, u64)> {
        self.tally.iter().map(|(k, &n)| (k, n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::gaussian_binomial;

    fn gf(p: u64, m: u32) -> Field {
        Field::new(p, m).unwrap()
    }

    #[test]
    fn evaluate_examples() {
        let f = gf(2, 3);
        let a = f.alpha();
        let zero = FieldElement::ZERO;
        let konst = AffinePoly::new(a, vec![zero, zero]);
        assert!(f.elements().all(|x| evaluate(&f, &konst, x) == a));
        let ident = AffinePoly::linear(vec![FieldElement::ONE, zero]);
        assert!(f.elements().all(|x| evaluate(&f, &ident, x) == x));
        let g = AffinePoly::linear(vec![FieldElement::ONE, FieldElement::ONE]);
        assert_eq!(evaluate(&f, &g, a), f.add(a, f.mul(a, a)));
    }

    #[test]
    fn null_set_examples() {
        let f = gf(2, 3);
        let zero = FieldElement::ZERO;
        assert_eq!(null_set(&f, &AffinePoly::linear(vec![zero, zero])).len(), 8);
        assert!(null_set(&f, &AffinePoly::new(FieldElement::ONE, vec![zero, zero])).is_empty());
        let g = AffinePoly::linear(vec![FieldElement::ONE, FieldElement::ONE]);
        assert_eq!(null_set(&f, &g), vec![FieldElement::ZERO, FieldElement::ONE]);
    }

    #[test]
    fn kernel_dimension_examples() {
        let f = gf(2, 3);
        let (zero, one) = (FieldElement::ZERO, FieldElement::ONE);
        assert_eq!(kernel_dimension(&f, &[one, zero]), 0);
        assert_eq!(kernel_dimension(&f, &[zero, zero]), 3);
        assert_eq!(kernel_dimension(&f, &[one, one]), 1);
    }

    #[test]
    fn power_table_matches_evaluate() {
        let f = gf(3, 2);
        let table = PowerTable::new(&f, 1);
        for i in 0..81 {
            let a = coefficients_at(&f, i, 2);
            let poly = AffinePoly::linear(a.clone());
            for x in f.elements() {
                assert_eq!(table.eval_linear(&f, &a, x), evaluate(&f, &poly, x));
            }
        }
    }

    #[test]
    fn span_examples() {
        let f = gf(2, 3);
        let a = f.alpha();
        assert_eq!(span(&f, &[]).dim(), 0);
        assert_eq!(span(&f, &[a, a]).dim(), 1);
        let s = span(&f, &[FieldElement::ONE, a, f.add(FieldElement::ONE, a)]);
        assert_eq!(s.dim(), 2);
        assert_eq!(s.elements(&f).len(), 4);
        // canonical: any generating set of the same space gives the same basis
        assert_eq!(s, span(&f, &[f.add(FieldElement::ONE, a), a]));
    }

    #[test]
    fn subspace_counts_match_gaussian_binomials() {
        for (p, m) in [(2, 3), (2, 4), (3, 2), (3, 3), (5, 2)] {
            let f = gf(p, m);
            for j in 0..=m as usize {
                let all: Vec<Subspace> = enumerate_subspaces(&f, j).collect();
                let distinct: std::collections::HashSet<_> = all.iter().cloned().collect();
                assert_eq!(distinct.len(), all.len());
                assert_eq!(BigUint::from(all.len()), gaussian_binomial(m as i64, j as i64, p));
                for s in &all {
                    assert_eq!(s.dim(), j);
                    // re-spanning the basis reproduces the canonical form
                    assert_eq!(&span(&f, s.basis()), s);
                }
            }
            assert_eq!(enumerate_subspaces(&f, m as usize + 1).count(), 0);
        }
    }

    #[test]
    fn enumeration_is_deterministic_and_ordered() {
        let f = gf(2, 3);
        let lines: Vec<Subspace> = enumerate_subspaces(&f, 1).collect();
        assert_eq!(lines.len(), 7);
        assert_eq!(lines, enumerate_subspaces(&f, 1).collect::<Vec<_>>());
        let full: Vec<Subspace> = enumerate_subspaces(&f, 3).collect();
        assert_eq!(full.len(), 1);
        assert_eq!(full[0].elements(&f).len(), 8);
    }

    #[test]
    fn moore_rank_examples() {
        let f = gf(2, 3);
        let a = f.alpha();
        assert_eq!(moore_rank(&f, &[FieldElement::ZERO], 1), 0);
        assert_eq!(moore_rank(&f, &[a], 1), 1);
        assert_eq!(moore_rank(&f, &[FieldElement::ONE, a], 1), 2);
        // F_2-dependent elements lose rank
        assert_eq!(moore_rank(&f, &[a, a, FieldElement::ZERO], 2), 1);
    }

    #[test]
    fn moore_rank_of_independent_sets_is_full() {
        let f = gf(2, 4);
        for h in 0..4usize {
            for j in 1..=(h + 1).min(4) {
                for u in enumerate_subspaces(&f, j) {
                    assert_eq!(moore_rank(&f, u.basis(), h), j);
                }
            }
        }
    }

    #[test]
    fn count_g_examples() {
        let f = gf(2, 3);
        assert_eq!(count_g(&f, &Subspace::zero(), 1).unwrap(), BigUint::from(64u32));
        let line = span(&f, &[FieldElement::ONE]);
        assert_eq!(count_g(&f, &line, 1).unwrap(), BigUint::from(8u32));
        let plane = span(&f, &[FieldElement::ONE, f.alpha()]);
        assert_eq!(count_g(&f, &plane, 1).unwrap(), BigUint::from(1u32));
    }

    #[test]
    fn count_f_examples() {
        let f = gf(2, 3);
        assert_eq!(count_f(&f, &Subspace::zero(), 1).unwrap(), BigUint::from(14u32));
        let line = span(&f, &[f.alpha()]);
        assert_eq!(count_f(&f, &line, 1).unwrap(), BigUint::from(7u32));
        let f9 = gf(3, 2);
        let line9 = span(&f9, &[f9.alpha()]);
        assert_eq!(count_f(&f9, &line9, 1).unwrap(), BigUint::from(8u32));
    }

    #[test]
    fn brute_force_refuses_huge_spaces() {
        let f = gf(2, 10);
        assert!(matches!(
            count_g(&f, &Subspace::zero(), 3),
            Err(Error::BruteForceTooLarge { .. })
        ));
    }

    #[test]
    fn census_agrees_with_direct_counters() {
        let f = gf(2, 3);
        let census = KernelCensus::new(&f, 1).unwrap();
        assert_eq!(census.total(), 64);
        for j in 0..=3 {
            for u in enumerate_subspaces(&f, j) {
                assert_eq!(census.exact(&u), count_f(&f, &u, 1).unwrap());
                assert_eq!(census.containing(&f, &u), count_g(&f, &u, 1).unwrap());
            }
        }
    }

    #[test]
    fn containment_counts_sum_exact_counts() {
        // count_g(U) = Σ_{V ⊇ U} count_f(V), over the whole lattice for m = 4
        let f = gf(2, 4);
        let h = 1;
        let census = KernelCensus::new(&f, h).unwrap();
        let lattice: Vec<Subspace> = (0..=4).flat_map(|j| enumerate_subspaces(&f, j)).collect();
        for u in &lattice {
            let sum: BigUint = lattice
                .iter()
                .filter(|v| u.is_subspace_of(&f, v))
                .map(|v| census.exact(v))
                .sum();
            assert_eq!(sum, census.containing(&f, u));
        }
    }
}

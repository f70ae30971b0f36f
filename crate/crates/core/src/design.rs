//! Block sets from codeword supports and exhaustive t-design verification.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::Serialize;

use crate::code::check_h;
use crate::combinatorics::{
    binomial, block_count_formula, complement_three_design, design_identity_check,
    exact_kernel_count, three_design_lambda, two_design_lambda, DesignParams,
};
use crate::gf::Field;
use crate::linearized::{coefficients_at, PowerTable};
use crate::{check_budget, Error, Result};

/// A subset of the points 1..=n as a fixed-width bit mask.
///
/// Ordered lexicographically by ascending point sequence.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PointSet {
    words: Vec<u64>,
}

impl PointSet {
    pub fn empty(n: u64) -> Self {
        PointSet {
            words: vec![0; n.div_ceil(64) as usize],
        }
    }

    pub fn full(n: u64) -> Self {
        let mut s = Self::empty(n);
        for i in 1..=n {
            s.insert(i);
        }
        s
    }

    pub fn from_points(n: u64, points: impl IntoIterator<Item = u64>) -> Self {
        let mut s = Self::empty(n);
        for i in points {
            s.insert(i);
        }
        s
    }

    pub fn insert(&mut self, point: u64) {
        let i = point - 1;
        self.words[(i / 64) as usize] |= 1 << (i % 64);
    }

    pub fn contains(&self, point: u64) -> bool {
        let i = point - 1;
        self.words
            .get((i / 64) as usize)
            .is_some_and(|w| w >> (i % 64) & 1 == 1)
    }

    pub fn len(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Points in ascending order.
    pub fn points(&self) -> impl Iterator<Item = u64> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut bits = w;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let b = bits.trailing_zeros() as u64;
                bits &= bits - 1;
                Some(wi as u64 * 64 + b + 1)
            })
        })
    }

    pub fn complement(&self, n: u64) -> Self {
        let mut words: Vec<u64> = self.words.iter().map(|w| !w).collect();
        let tail = n % 64;
        if tail != 0 {
            if let Some(last) = words.last_mut() {
                *last &= (1u64 << tail) - 1;
            }
        }
        PointSet { words }
    }
}

impl Ord for PointSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.points().cmp(other.points())
    }
}

impl PartialOrd for PointSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Where a block set came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockSource {
    pub p: u64,
    pub m: u32,
    pub h: u32,
    pub weight: u64,
    /// True when the blocks are the complements of the supports.
    pub complemented: bool,
}

/// Distinct k-subsets of 1..=n, ascending lexicographically, each realized by
/// `multiplicity` codewords.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockSet {
    pub n: u64,
    pub k: u64,
    pub blocks: Vec<PointSet>,
    pub multiplicity: u64,
    pub source: Option<BlockSource>,
}

impl BlockSet {
    /// A block set from explicit point lists; blocks must share one size and be distinct.
    pub fn from_blocks(n: u64, blocks: Vec<Vec<u64>>) -> Result<Self> {
        let k = blocks.first().map_or(0, |b| b.len() as u64);
        let mut sets = Vec::with_capacity(blocks.len());
        for b in blocks {
            if b.iter().any(|&i| i == 0 || i > n) {
                return Err(Error::bad(format!("block {b:?} has points outside 1..={n}")));
            }
            let s = PointSet::from_points(n, b.iter().copied());
            if s.len() != b.len() as u64 || s.len() != k {
                return Err(Error::bad(format!("block {b:?} is not a {k}-subset")));
            }
            sets.push(s);
        }
        sets.sort();
        if sets.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::bad("repeated block"));
        }
        Ok(BlockSet {
            n,
            k,
            blocks: sets,
            multiplicity: 1,
            source: None,
        })
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// `n k b` on the first line, then one block per line as ascending 1-based points.
    pub fn to_design_text(&self) -> String {
        let mut out = format!("{} {} {}\n", self.n, self.k, self.blocks.len());
        for b in &self.blocks {
            let line: Vec<String> = b.points().map(|i| i.to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn parse_design_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header: Vec<u64> = lines
            .next()
            .ok_or_else(|| Error::bad("empty design text"))?
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| Error::bad(format!("bad header token {t:?}"))))
            .collect::<Result<_>>()?;
        let [n, k, b] = header[..] else {
            return Err(Error::bad("header must be `n k b`"));
        };
        let blocks: Vec<Vec<u64>> = lines
            .map(|l| {
                l.split_whitespace()
                    .map(|t| t.parse().map_err(|_| Error::bad(format!("bad point {t:?}"))))
                    .collect()
            })
            .collect::<Result<_>>()?;
        if blocks.len() as u64 != b {
            return Err(Error::bad(format!("header announces {b} blocks, found {}", blocks.len())));
        }
        let set = Self::from_blocks(n, blocks)?;
        if b > 0 && set.k != k {
            return Err(Error::bad(format!("header announces block size {k}, found {}", set.k)));
        }
        Ok(BlockSet { k, ..set })
    }
}

impl fmt::Display for BlockSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_design_text())
    }
}

fn realized_weight_class(field: &Field, h: usize, w: u64) -> Option<Option<u32>> {
    let (p, q) = (field.p(), field.q());
    if w == q {
        return Some(None);
    }
    (0..=h as u32).find(|&j| q - p.pow(j) == w).map(Some)
}

/// Collects supports of every nonzero codeword whose weight is in `weights`,
/// with the number of codewords per support.
fn collect_supports(
    field: &Field,
    h: usize,
    weights: &[u64],
    budget: u64,
) -> Result<HashMap<u64, HashMap<PointSet, u64>>> {
    check_h(field, h)?;
    check_budget(field.q(), h as u32 + 2, budget)?;
    let q = field.q();
    let table = PowerTable::new(field, h);
    let coord: Vec<u64> = field.elements().map(|x| field.tau_inv(x)).collect();
    type Acc = HashMap<u64, HashMap<PointSet, u64>>;
    let merged = (0..q.pow(h as u32 + 1))
        .into_par_iter()
        .fold(Acc::new, |mut acc, i| {
            let a = coefficients_at(field, i, h + 1);
            let values: Vec<u32> = field
                .elements()
                .map(|x| table.eval_linear(field, &a, x).code())
                .collect();
            let mut hist = vec![0u64; q as usize];
            for &v in &values {
                hist[v as usize] += 1;
            }
            let a_zero = a.iter().all(|x| x.is_zero());
            for c in field.elements() {
                if a_zero && c.is_zero() {
                    continue;
                }
                let target = field.neg(c).code();
                let w = q - hist[target as usize];
                if !weights.contains(&w) {
                    continue;
                }
                let mut zeros = PointSet::empty(q);
                for (x, &v) in values.iter().enumerate() {
                    if v == target {
                        zeros.insert(coord[x]);
                    }
                }
                *acc.entry(w).or_default().entry(zeros.complement(q)).or_default() += 1;
            }
            acc
        })
        .reduce(Acc::new, |mut a, b| {
            for (w, inner) in b {
                let slot = a.entry(w).or_default();
                for (s, n) in inner {
                    *slot.entry(s).or_default() += n;
                }
            }
            a
        });
    Ok(merged)
}

fn into_block_set(field: &Field, h: usize, w: u64, supports: HashMap<PointSet, u64>) -> Result<BlockSet> {
    let min = supports.values().copied().min().unwrap_or(0);
    let max = supports.values().copied().max().unwrap_or(0);
    if min != max {
        return Err(Error::NonconstantMultiplicity { weight: w, min, max });
    }
    let mut blocks: Vec<PointSet> = supports.into_keys().collect();
    blocks.sort();
    Ok(BlockSet {
        n: field.q(),
        k: w,
        blocks,
        multiplicity: max,
        source: Some(BlockSource {
            p: field.p(),
            m: field.m(),
            h: h as u32,
            weight: w,
            complemented: false,
        }),
    })
}

/// Distinct supports of all weight-`w` codewords.
///
/// Fails with [`Error::NonconstantMultiplicity`] if two supports are shared by
/// different numbers of codewords.
pub fn blocks_of_weight(field: &Field, h: usize, w: u64, budget: u64) -> Result<BlockSet> {
    check_h(field, h)?;
    if realized_weight_class(field, h, w).is_none() {
        return Err(Error::bad(format!("weight {w} is not a weight of this code")));
    }
    let mut all = collect_supports(field, h, &[w], budget)?;
    into_block_set(field, h, w, all.remove(&w).unwrap_or_default())
}

/// Block sets for every weight q - p^j, 0 ≤ j ≤ h, from one enumeration pass.
pub fn blocks_by_weight(field: &Field, h: usize, budget: u64) -> Result<BTreeMap<u64, BlockSet>> {
    check_h(field, h)?;
    let weights: Vec<u64> = (0..=h as u32).map(|j| field.q() - field.p().pow(j)).collect();
    let mut all = collect_supports(field, h, &weights, budget)?;
    weights
        .iter()
        .map(|&w| Ok((w, into_block_set(field, h, w, all.remove(&w).unwrap_or_default())?)))
        .collect()
}

pub fn complement_blocks(b: &BlockSet) -> BlockSet {
    let mut blocks: Vec<PointSet> = b.blocks.iter().map(|s| s.complement(b.n)).collect();
    blocks.sort();
    BlockSet {
        n: b.n,
        k: b.n - b.k,
        blocks,
        multiplicity: b.multiplicity,
        source: b.source.clone().map(|s| BlockSource {
            complemented: !s.complemented,
            ..s
        }),
    }
}

/// Caps for [`verify_t_design`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DesignLimits {
    pub max_t: u32,
    /// Largest C(n,t) counting table.
    pub table_entries: u64,
    /// Largest |B|·C(k,t) number of t-subset visits.
    pub work: u64,
}

impl Default for DesignLimits {
    fn default() -> Self {
        DesignLimits {
            max_t: 3,
            table_entries: 1 << 27,
            work: 1 << 36,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DesignVerdict {
    pub t: u32,
    pub holds: bool,
    #[serde(with = "crate::serde_big::option")]
    pub lambda: Option<BigUint>,
    #[serde(with = "crate::serde_big")]
    pub min_cover: BigUint,
    #[serde(with = "crate::serde_big")]
    pub max_cover: BigUint,
    pub params: Option<DesignParams>,
}

/// Colex rank table: `ranks[x][r] = C(x, r)` for points x < n and r ≤ t.
fn colex_table(n: u64, t: u32) -> Vec<Vec<u64>> {
    let mut c = vec![vec![0u64; t as usize + 1]; n as usize + 1];
    for x in 0..=n as usize {
        c[x][0] = 1;
        for r in 1..=(t as usize).min(x) {
            c[x][r] = c[x - 1][r - 1] + c[x - 1][r];
        }
    }
    c
}

/// Counts, for every t-subset of the points, how many blocks contain it.
///
/// Each block's own t-subsets are expanded into a dense table indexed by
/// colex rank, so the cost is |B|·C(k,t) rather than C(n,t)·|B|.
pub fn verify_t_design(b: &BlockSet, t: u32, limits: &DesignLimits) -> Result<DesignVerdict> {
    if t == 0 || t as u64 > b.k || b.k > b.n {
        return Err(Error::bad(format!(
            "need 1 ≤ t ≤ k ≤ n, got t={t} k={} n={}",
            b.k, b.n
        )));
    }
    if t > limits.max_t {
        return Err(Error::BudgetExceeded {
            needed: format!("verification at t={t}"),
            budget: limits.max_t as u64,
        });
    }
    let table_size = binomial(b.n, t as u64);
    let work = binomial(b.k, t as u64) * b.blocks.len();
    if table_size > BigUint::from(limits.table_entries) {
        return Err(Error::BudgetExceeded {
            needed: format!("a counting table of {table_size} entries"),
            budget: limits.table_entries,
        });
    }
    if work > BigUint::from(limits.work) {
        return Err(Error::BudgetExceeded {
            needed: format!("{work} t-subset visits"),
            budget: limits.work,
        });
    }
    if b.blocks.len() as u64 > u32::MAX as u64 {
        return Err(Error::BudgetExceeded {
            needed: format!("{} blocks", b.blocks.len()),
            budget: u32::MAX as u64,
        });
    }
    let table_size: usize = table_size.try_into().expect("bounded by limits");
    let colex = colex_table(b.n, t);
    let mut counts = vec![0u32; table_size];
    let t = t as usize;
    let mut idx: Vec<usize> = Vec::with_capacity(t);
    for block in &b.blocks {
        let pts: Vec<usize> = block.points().map(|i| i as usize - 1).collect();
        // odometer over increasing index tuples into pts
        idx.clear();
        idx.extend(0..t);
        loop {
            let rank: u64 = idx
                .iter()
                .enumerate()
                .map(|(r, &i)| colex[pts[i]][r + 1])
                .sum();
            counts[rank as usize] += 1;
            let Some(pos) = (0..t).rev().find(|&r| idx[r] < pts.len() - t + r) else {
                break;
            };
            idx[pos] += 1;
            for r in pos + 1..t {
                idx[r] = idx[r - 1] + 1;
            }
        }
    }
    let min = counts.iter().copied().min().unwrap_or(0);
    let max = counts.iter().copied().max().unwrap_or(0);
    let holds = min == max;
    let params = holds.then(|| DesignParams {
        t: t as u32,
        n: b.n,
        k: b.k,
        lambda: BigUint::from(min),
        block_count: BigUint::from(b.blocks.len()),
        simple: true,
    });
    if let Some(p) = &params {
        debug_assert!(design_identity_check(p));
    }
    Ok(DesignVerdict {
        t: t as u32,
        holds,
        lambda: holds.then(|| BigUint::from(min)),
        min_cover: BigUint::from(min),
        max_cover: BigUint::from(max),
        params,
    })
}

/// What the observed λ of a verdict is compared against.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Basis {
    /// A closed form proven for these parameters.
    Theorem,
    /// No closed form applies; the verdict is reported as observed.
    EmpiricalOnly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerdictReport {
    #[serde(flatten)]
    pub verdict: DesignVerdict,
    pub basis: Basis,
    #[serde(with = "crate::serde_big::option")]
    pub expected_lambda: Option<BigUint>,
    /// `None` when no closed form applies.
    pub matches: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightClassReport {
    pub j: u32,
    #[serde(serialize_with = "crate::serde_big::display")]
    pub weight: u64,
    pub block_size: u64,
    #[serde(serialize_with = "crate::serde_big::display")]
    pub block_count: u64,
    #[serde(with = "crate::serde_big")]
    pub expected_block_count: BigUint,
    #[serde(serialize_with = "crate::serde_big::display")]
    pub multiplicity: u64,
    #[serde(with = "crate::serde_big")]
    pub expected_multiplicity: BigUint,
    pub verdicts: Vec<VerdictReport>,
    /// The 3-design on the complements of the minimum-weight supports (p = 2, h ≥ 2).
    pub complement: Option<VerdictReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DesignReport {
    pub p: u64,
    pub m: u32,
    pub h: u32,
    pub q: u64,
    pub t_max: u32,
    pub classes: Vec<WeightClassReport>,
    pub mismatches: Vec<String>,
}

impl DesignReport {
    pub fn all_match(&self) -> bool {
        self.mismatches.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("design report serializes")
    }
}

fn reconcile(verdict: DesignVerdict, expected: Option<BigUint>) -> VerdictReport {
    let matches = expected
        .as_ref()
        .map(|e| verdict.holds && verdict.lambda.as_ref() == Some(e));
    VerdictReport {
        basis: if expected.is_some() {
            Basis::Theorem
        } else {
            Basis::EmpiricalOnly
        },
        verdict,
        expected_lambda: expected,
        matches,
    }
}

/// Verifies every weight class q - p^j for t = 1..=t_max and reconciles the
/// observed parameters with the closed forms where one applies.
pub fn design_report(
    field: &Field,
    h: usize,
    t_max: u32,
    budget: u64,
    limits: &DesignLimits,
) -> Result<DesignReport> {
    check_h(field, h)?;
    let (p, m, q) = (field.p(), field.m(), field.q());
    let hh = h as u32;
    let sets = blocks_by_weight(field, h, budget)?;
    let mut classes = Vec::new();
    let mut mismatches = Vec::new();
    // ascending weight, i.e. descending j
    for j in (0..=hh).rev() {
        let w = q - p.pow(j);
        let set = &sets[&w];
        let expected_blocks = block_count_formula(p, m, hh, j)?;
        let expected_mult = exact_kernel_count(p, m, hh, j)?;
        if BigUint::from(set.len()) != expected_blocks {
            mismatches.push(format!(
                "weight {w}: {} blocks, expected {expected_blocks}",
                set.len()
            ));
        }
        if BigUint::from(set.multiplicity) != expected_mult {
            mismatches.push(format!(
                "weight {w}: multiplicity {}, expected {expected_mult}",
                set.multiplicity
            ));
        }
        let three_design_case = p == 2 && hh >= 2 && j == hh;
        let mut verdicts = Vec::new();
        for t in 1..=t_max.min(w as u32) {
            let verdict = verify_t_design(set, t, limits)?;
            let expected = match t {
                2 => Some(two_design_lambda(p, m, hh, j)?.lambda),
                3 if three_design_case => Some(three_design_lambda(m, hh)?.lambda),
                _ => None,
            };
            let report = reconcile(verdict, expected);
            if report.matches == Some(false) {
                mismatches.push(format!(
                    "weight {w}, t={t}: observed λ {:?}, expected {}",
                    report.verdict.lambda.as_ref().map(|l| l.to_string()),
                    report.expected_lambda.as_ref().expect("theorem case")
                ));
            }
            if let Some(params) = &report.verdict.params {
                if !design_identity_check(params) {
                    mismatches.push(format!("weight {w}, t={t}: block-count identity fails"));
                }
            }
            verdicts.push(report);
        }
        let complement = if three_design_case && t_max >= 3 {
            let comp = complement_blocks(set);
            let expected = complement_three_design(m, hh)?.lambda;
            let report = reconcile(verify_t_design(&comp, 3, limits)?, Some(expected));
            if report.matches == Some(false) {
                mismatches.push(format!(
                    "complement of weight {w}: observed λ {:?}, expected {}",
                    report.verdict.lambda.as_ref().map(|l| l.to_string()),
                    report.expected_lambda.as_ref().expect("theorem case")
                ));
            }
            Some(report)
        } else {
            None
        };
        classes.push(WeightClassReport {
            j,
            weight: w,
            block_size: set.k,
            block_count: set.len() as u64,
            expected_block_count: expected_blocks,
            multiplicity: set.multiplicity,
            expected_multiplicity: expected_mult,
            verdicts,
            complement,
        });
    }
    Ok(DesignReport {
        p,
        m,
        h: hh,
        q,
        t_max,
        classes,
        mismatches,
    })
}

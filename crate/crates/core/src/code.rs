//! The code C_{D_h}: generator matrix, codewords, weight distribution and
//! structural audits.
//!
//! A codeword is indexed by its message (c, a_0, .., a_h) and equals the
//! evaluation of f_{c,a} at τ(1), .., τ(q). Enumeration runs over messages in
//! lexicographic order of their encodings, c most significant.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::combinatorics::{full_weight_count, weight_count_formula};
use crate::gf::{Field, FieldElement};
use crate::linalg::RowSpace;
use crate::linearized::{coefficients_at, evaluate, null_set, AffinePoly, PowerTable};
use crate::{check_budget, Error, Result, DEFAULT_BUDGET};

/// Seed for sampled cyclicity checks.
pub const SAMPLE_SEED: u64 = 0x5eed_c0de;

pub(crate) fn check_h(field: &Field, h: usize) -> Result<()> {
    if h >= field.m() as usize {
        return Err(Error::bad(format!("h={h} must be less than m={}", field.m())));
    }
    Ok(())
}

/// The (h+2) × q matrix D_h. Row 0 is all ones; row 1+i holds τ(j)^{p^i} in
/// column j, so the last column is (1, 0, .., 0).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorMatrix {
    rows: Vec<Vec<FieldElement>>,
}

impl GeneratorMatrix {
    pub fn rows(&self) -> &[Vec<FieldElement>] {
        &self.rows
    }

    pub fn h(&self) -> usize {
        self.rows.len() - 2
    }

    pub fn column(&self, j: usize) -> Vec<FieldElement> {
        self.rows.iter().map(|r| r[j]).collect()
    }

    pub fn rank(&self, field: &Field) -> usize {
        RowSpace::new(field, self.rows.clone()).rank()
    }

    /// message · D_h for a message (c, a_0, .., a_h).
    pub fn encode(&self, field: &Field, message: &[FieldElement]) -> Vec<FieldElement> {
        assert_eq!(message.len(), self.rows.len(), "message length must be h+2");
        let mut out = vec![FieldElement::ZERO; self.rows[0].len()];
        for (&coef, row) in message.iter().zip(&self.rows) {
            for (o, &r) in out.iter_mut().zip(row) {
                *o = field.add(*o, field.mul(coef, r));
            }
        }
        out
    }
}

/// Field elements in coordinate order τ(1), .., τ(q).
pub fn coordinates(field: &Field) -> Vec<FieldElement> {
    (1..=field.q()).map(|i| field.tau(i).expect("in range")).collect()
}

pub fn build_generator(field: &Field, h: usize) -> Result<GeneratorMatrix> {
    check_h(field, h)?;
    let coords = coordinates(field);
    let mut rows = vec![vec![FieldElement::ONE; coords.len()]];
    for i in 0..=h as u64 {
        rows.push(coords.iter().map(|&x| field.frobenius(x, i)).collect());
    }
    Ok(GeneratorMatrix { rows })
}

pub fn verify_dimension(field: &Field, h: usize) -> Result<bool> {
    Ok(build_generator(field, h)?.rank(field) == h + 2)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Codeword {
    pub poly: AffinePoly,
    pub weight: u64,
    /// Nonzero coordinates, ascending, within 1..=q.
    pub support: Vec<u64>,
}

impl Codeword {
    pub fn values(&self, field: &Field) -> Vec<FieldElement> {
        coordinates(field)
            .into_iter()
            .map(|x| evaluate(field, &self.poly, x))
            .collect()
    }
}

/// The codeword of `f`; its weight comes from the size of the null set.
pub fn codeword_of(field: &Field, f: &AffinePoly) -> Codeword {
    let roots = null_set(field, f);
    let mut support: Vec<u64> = field
        .elements()
        .filter(|x| roots.binary_search(x).is_err())
        .map(|x| field.tau_inv(x))
        .collect();
    support.sort_unstable();
    Codeword {
        poly: f.clone(),
        weight: field.q() - roots.len() as u64,
        support,
    }
}

/// Exact weight distribution of the nonzero codewords.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightDistribution {
    pub p: u64,
    pub m: u32,
    pub h: u32,
    #[serde(with = "crate::serde_big::map")]
    pub counts: BTreeMap<u64, BigUint>,
}

impl WeightDistribution {
    /// The closed-form distribution: A_{q-p^j} for 0 ≤ j ≤ h, then A_q.
    pub fn from_formula(p: u64, m: u32, h: u32) -> Result<Self> {
        let q = crate::checked_pow(p, m).ok_or_else(|| Error::bad("q overflows 64 bits"))?;
        let mut counts = BTreeMap::new();
        for j in 0..=h {
            counts.insert(q - p.pow(j), weight_count_formula(p, m, h, j)?);
        }
        counts.insert(q, full_weight_count(p, m, h)?);
        Ok(WeightDistribution { p, m, h, counts })
    }

    fn from_tally(field: &Field, h: usize, tally: BTreeMap<u64, u64>) -> Self {
        WeightDistribution {
            p: field.p(),
            m: field.m(),
            h: h as u32,
            counts: tally
                .into_iter()
                .filter(|&(_, n)| n > 0)
                .map(|(w, n)| (w, BigUint::from(n)))
                .collect(),
        }
    }

    pub fn get(&self, weight: u64) -> BigUint {
        self.counts.get(&weight).cloned().unwrap_or_default()
    }

    pub fn total(&self) -> BigUint {
        self.counts.values().sum()
    }

    pub fn min_weight(&self) -> Option<u64> {
        self.counts.keys().next().copied()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("weight distribution serializes")
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("weight,count\n");
        for (w, n) in &self.counts {
            out.push_str(&format!("{w},{n}\n"));
        }
        out
    }
}

fn merge_tallies(mut a: BTreeMap<u64, u64>, b: BTreeMap<u64, u64>) -> BTreeMap<u64, u64> {
    for (w, n) in b {
        *a.entry(w).or_default() += n;
    }
    a
}

/// Weight distribution by streaming over every message (c, a).
///
/// For each a the values of f_{0,a} are computed once and tallied; the
/// codeword for c then has one zero per x with f_{0,a}(x) = -c, so every
/// codeword is counted without re-evaluating the polynomial.
pub fn weight_distribution(field: &Field, h: usize, budget: u64) -> Result<WeightDistribution> {
    check_h(field, h)?;
    check_budget(field.q(), h as u32 + 2, budget)?;
    let q = field.q();
    let table = PowerTable::new(field, h);
    let tally = (0..q.pow(h as u32 + 1))
        .into_par_iter()
        .fold(BTreeMap::new, |mut acc: BTreeMap<u64, u64>, i| {
            let a = coefficients_at(field, i, h + 1);
            let mut hist = vec![0u64; q as usize];
            for x in field.elements() {
                hist[table.eval_linear(field, &a, x).code() as usize] += 1;
            }
            let a_zero = a.iter().all(|x| x.is_zero());
            for c in field.elements() {
                if a_zero && c.is_zero() {
                    continue;
                }
                let zeros = hist[field.neg(c).code() as usize];
                *acc.entry(q - zeros).or_default() += 1;
            }
            acc
        })
        .reduce(BTreeMap::new, merge_tallies);
    Ok(WeightDistribution::from_tally(field, h, tally))
}

/// Weight distribution by evaluating every nonzero codeword at every point.
pub fn weight_distribution_naive(field: &Field, h: usize, budget: u64) -> Result<WeightDistribution> {
    check_h(field, h)?;
    let total = check_budget(field.q(), h as u32 + 2, budget)?;
    let q = field.q();
    let tally = (1..total)
        .into_par_iter()
        .fold(BTreeMap::new, |mut acc: BTreeMap<u64, u64>, i| {
            let msg = coefficients_at(field, i, h + 2);
            let f = AffinePoly::new(msg[0], msg[1..].to_vec());
            let nonzero = field
                .elements()
                .filter(|&x| !evaluate(field, &f, x).is_zero())
                .count() as u64;
            debug_assert!(nonzero <= q);
            *acc.entry(nonzero).or_default() += 1;
            acc
        })
        .reduce(BTreeMap::new, merge_tallies);
    Ok(WeightDistribution::from_tally(field, h, tally))
}

/// Nonzero codewords of weight `weight`, in message order.
pub fn codewords_of_weight(
    field: &Field,
    h: usize,
    weight: u64,
    budget: u64,
) -> Result<impl Iterator<Item = Codeword> + '_> {
    check_h(field, h)?;
    let total = check_budget(field.q(), h as u32 + 2, budget)?;
    let table = PowerTable::new(field, h);
    let q = field.q();
    Ok((1..total).filter_map(move |i| {
        let msg = coefficients_at(field, i, h + 2);
        let (c, a) = (msg[0], &msg[1..]);
        let zeros = field
            .elements()
            .filter(|&x| field.add(c, table.eval_linear(field, a, x)).is_zero())
            .count() as u64;
        (q - zeros == weight).then(|| codeword_of(field, &AffinePoly::new(c, a.to_vec())))
    }))
}

/// Codewords of weight q - p^h.
pub fn min_weight_codewords(
    field: &Field,
    h: usize,
    budget: u64,
) -> Result<impl Iterator<Item = Codeword> + '_> {
    check_h(field, h)?;
    let w = field.q() - field.p().pow(h as u32);
    codewords_of_weight(field, h, w, budget)
}

/// Outcome of the cyclic-shift audit on the punctured code.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CyclicityReport {
    pub checked: u64,
    pub exhaustive: bool,
    pub closed: bool,
}

/// Checks that the code punctured at coordinate q is closed under the cyclic
/// shift. Every codeword is checked when q^{h+2} ≤ `sample_budget`; otherwise
/// `sample_budget` messages are drawn with a fixed seed.
pub fn cyclicity_audit(field: &Field, h: usize, sample_budget: u64) -> Result<CyclicityReport> {
    check_h(field, h)?;
    if sample_budget > DEFAULT_BUDGET {
        return Err(Error::BudgetExceeded {
            needed: format!("a sample of {sample_budget} codewords"),
            budget: DEFAULT_BUDGET,
        });
    }
    let q = field.q();
    let n = q as usize - 1;
    let gen = build_generator(field, h)?;
    let punctured: Vec<Vec<FieldElement>> = gen.rows().iter().map(|r| r[..n].to_vec()).collect();
    let space = RowSpace::new(field, punctured.clone());
    let table = PowerTable::new(field, h);
    let coords = coordinates(field);

    let shifted_is_member = |msg: &[FieldElement]| {
        let (c, a) = (msg[0], &msg[1..]);
        let word: Vec<FieldElement> = coords[..n]
            .iter()
            .map(|&x| field.add(c, table.eval_linear(field, a, x)))
            .collect();
        let mut shifted = Vec::with_capacity(n);
        shifted.push(word[n - 1]);
        shifted.extend_from_slice(&word[..n - 1]);
        space.contains(field, shifted)
    };

    let total = crate::checked_pow(q, h as u32 + 2);
    let (checked, exhaustive, closed) = match total {
        Some(total) if total <= sample_budget => {
            let closed = (0..total)
                .into_par_iter()
                .all(|i| shifted_is_member(&coefficients_at(field, i, h + 2)));
            (total, true, closed)
        }
        _ => {
            let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
            let messages: Vec<Vec<FieldElement>> = (0..sample_budget)
                .map(|_| {
                    (0..h + 2)
                        .map(|_| FieldElement::from_code(rng.gen_range(0..q as u32)))
                        .collect()
                })
                .collect();
            let closed = messages.par_iter().all(|m| shifted_is_member(m));
            (sample_budget, false, closed)
        }
    };
    Ok(CyclicityReport {
        checked,
        exhaustive,
        closed,
    })
}

pub fn punctured_cyclicity_check(field: &Field, h: usize, sample_budget: u64) -> Result<bool> {
    Ok(cyclicity_audit(field, h, sample_budget)?.closed)
}

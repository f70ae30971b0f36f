//! Exact counts: binomials, Gaussian binomials, and the closed forms for the
//! weight distribution and design parameters of the code.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::gf::is_prime;
use crate::{Error, Result};

pub type BigCount = BigUint;

fn pow(base: u64, exp: u64) -> BigUint {
    BigUint::from(base).pow(exp as u32)
}

/// The Gaussian binomial coefficient [n choose k]_p.
///
/// Zero for k < 0 or k > n, one for k = 0. The product is built so that the
/// i-th partial product equals [n-k+i choose i]_p, so every division is exact.
pub fn gaussian_binomial(n: i64, k: i64, p: u64) -> BigUint {
    if k < 0 || k > n {
        return BigUint::zero();
    }
    let mut acc = BigUint::one();
    for i in 1..=k {
        let num = pow(p, (n - k + i) as u64) - 1u32;
        let den = pow(p, i as u64) - 1u32;
        acc *= num;
        debug_assert!((&acc % &den).is_zero());
        acc /= den;
    }
    acc
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 1..=k {
        acc *= n - k + i;
        acc /= i;
    }
    acc
}

fn validate(p: u64, m: u32, h: u32) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if m == 0 {
        return Err(Error::bad("m must be positive"));
    }
    if h >= m {
        return Err(Error::bad(format!("h={h} must be less than m={m}")));
    }
    Ok(())
}

fn validate_j(p: u64, m: u32, h: u32, j: u32) -> Result<()> {
    validate(p, m, h)?;
    if j > h {
        return Err(Error::bad(format!("j={j} must not exceed h={h}")));
    }
    Ok(())
}

/// Number of a ∈ GF(q)^{h+1} whose linear null set is a fixed subspace of
/// dimension j ≤ h (the Möbius-inverted alternating sum).
pub fn exact_kernel_count(p: u64, m: u32, h: u32, j: u32) -> Result<BigUint> {
    validate_j(p, m, h, j)?;
    let q = BigInt::from(p).pow(m);
    let mut sum = BigInt::zero();
    for i in 0..=(h - j) {
        let iu = i as u64;
        let sign = if i % 2 == 0 { 1 } else { -1 };
        let term = BigInt::from(sign)
            * BigInt::from(p).pow((iu * iu.saturating_sub(1) / 2) as u32)
            * BigInt::from(gaussian_binomial((m - j) as i64, i as i64, p))
            * (q.pow(h + 1 - j - i) - 1);
        sum += term;
    }
    // a count cannot be negative
    assert!(!sum.is_negative(), "alternating kernel sum went negative");
    Ok(sum.to_biguint().expect("non-negative"))
}

/// Number of a ∈ GF(q)^{h+1} whose linear null set contains a fixed subspace
/// of dimension j: q^{h+1-j} for j ≤ h, otherwise only a = 0.
pub fn containing_kernel_count(p: u64, m: u32, h: u32, j: u32) -> Result<BigUint> {
    validate(p, m, h)?;
    if j > m {
        return Err(Error::bad(format!("j={j} exceeds m={m}")));
    }
    Ok(if j <= h {
        pow(p, m as u64 * (h + 1 - j) as u64)
    } else {
        BigUint::one()
    })
}

/// A_{q-p^j}, the number of codewords of weight q - p^j.
pub fn weight_count_formula(p: u64, m: u32, h: u32, j: u32) -> Result<BigUint> {
    let inner = exact_kernel_count(p, m, h, j)?;
    Ok(gaussian_binomial(m as i64, j as i64, p) * pow(p, (m - j) as u64) * inner)
}

/// A_q = q^{h+2} - 1 - Σ_j A_{q-p^j}.
pub fn full_weight_count(p: u64, m: u32, h: u32) -> Result<BigUint> {
    validate(p, m, h)?;
    let total = pow(p, m as u64 * (h + 2) as u64) - 1u32;
    let mut rest = BigUint::zero();
    for j in 0..=h {
        rest += weight_count_formula(p, m, h, j)?;
    }
    Ok(total - rest)
}

/// Parameters of a t-(n, k, λ) design with its block count.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DesignParams {
    pub t: u32,
    pub n: u64,
    pub k: u64,
    #[serde(with = "crate::serde_big")]
    pub lambda: BigUint,
    #[serde(rename = "blocks", with = "crate::serde_big")]
    pub block_count: BigUint,
    pub simple: bool,
}

impl DesignParams {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("design parameters serialize")
    }
}

/// C(n,t)·λ = C(k,t)·|B|.
pub fn design_identity_check(d: &DesignParams) -> bool {
    binomial(d.n, d.t as u64) * &d.lambda == binomial(d.k, d.t as u64) * &d.block_count
}

/// Number of distinct supports of weight q - p^j: one per coset of each
/// j-dimensional subspace.
pub fn block_count_formula(p: u64, m: u32, h: u32, j: u32) -> Result<BigUint> {
    validate_j(p, m, h, j)?;
    Ok(gaussian_binomial(m as i64, j as i64, p) * pow(p, (m - j) as u64))
}

/// The 2-(q, q-p^j, λ_j) design held by the weight q - p^j supports.
pub fn two_design_lambda(p: u64, m: u32, h: u32, j: u32) -> Result<DesignParams> {
    let blocks = block_count_formula(p, m, h, j)?;
    let q = p.pow(m);
    let k = q - p.pow(j);
    let lambda = BigUint::from(k - 1) * gaussian_binomial(m as i64 - 1, j as i64, p);
    let params = DesignParams {
        t: 2,
        n: q,
        k,
        lambda,
        block_count: blocks,
        simple: true,
    };
    debug_assert!(design_identity_check(&params));
    Ok(params)
}

fn check_three_design_range(m: u32, h: u32) -> Result<()> {
    validate(2, m, h)?;
    if h < 2 {
        return Err(Error::bad(format!("the 3-design needs h ≥ 2, got h={h}")));
    }
    Ok(())
}

/// The 3-(2^m, 2^m - 2^h, λ) design held by the minimum-weight supports when p = 2.
pub fn three_design_lambda(m: u32, h: u32) -> Result<DesignParams> {
    check_three_design_range(m, h)?;
    let q = 1u64 << m;
    let k = q - (1u64 << h);
    let blocks = block_count_formula(2, m, h, h)?;
    let numerator = &blocks * binomial(k, 3);
    let denominator = binomial(q, 3);
    let (lambda, rem) = numerator.div_rem(&denominator);
    if !rem.is_zero() {
        return Err(Error::NonIntegerLambda {
            numerator: numerator.to_string(),
            denominator: denominator.to_string(),
        });
    }
    Ok(DesignParams {
        t: 3,
        n: q,
        k,
        lambda,
        block_count: blocks,
        simple: true,
    })
}

/// The 3-(2^m, 2^h, [m-2 choose h-2]_2) design formed by the minimum-weight
/// null sets, i.e. the complements of the minimum-weight supports.
pub fn complement_three_design(m: u32, h: u32) -> Result<DesignParams> {
    check_three_design_range(m, h)?;
    Ok(DesignParams {
        t: 3,
        n: 1u64 << m,
        k: 1u64 << h,
        lambda: gaussian_binomial(m as i64 - 2, h as i64 - 2, 2),
        block_count: block_count_formula(2, m, h, h)?,
        simple: true,
    })
}

//! Extended primitive cyclic codes built from affine linearized polynomials
//! over GF(p^m), their exact weight distributions, and the 2- and 3-designs
//! held by the supports of their fixed-weight codewords.
//!
//! The crate is organized bottom-up:
//!
//! - [`gf`]: prime-power fields with exp/log tables and the coordinate map τ.
//! - [`linalg`]: row reduction over GF(q).
//! - [`linearized`]: affine linearized polynomials, their null sets, F_p-subspaces
//!   and brute-force kernel counts.
//! - [`combinatorics`]: exact Gaussian binomials and the closed-form counts.
//! - [`code`]: the generator matrix, codeword enumeration and structural audits.
//! - [`design`]: block extraction and exhaustive t-design verification.

pub mod code;
pub mod combinatorics;
pub mod design;
mod error;
pub mod gf;
pub mod linalg;
pub mod linearized;
mod serde_big;

pub use code::{
    build_generator, codeword_of, min_weight_codewords, punctured_cyclicity_check,
    verify_dimension, weight_distribution, weight_distribution_naive, Codeword, GeneratorMatrix,
    WeightDistribution,
};
pub use combinatorics::{
    binomial, design_identity_check, full_weight_count, gaussian_binomial, three_design_lambda,
    two_design_lambda, weight_count_formula, BigCount, DesignParams,
};
pub use design::{
    blocks_of_weight, complement_blocks, design_report, verify_t_design, BlockSet, DesignLimits,
    DesignReport, DesignVerdict, PointSet,
};
pub use error::{Error, Result};
pub use gf::{Field, FieldElement};
pub use linearized::{AffinePoly, Subspace};

/// Default cap on the number of codewords (or candidate vectors) any
/// exhaustive enumeration may visit.
pub const DEFAULT_BUDGET: u64 = 1 << 26;

/// `base^exp` as a `u64`, or `None` on overflow.
pub fn checked_pow(base: u64, exp: u32) -> Option<u64> {
    let mut acc: u64 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}

/// Fails with [`Error::BudgetExceeded`] when `q^exp` candidates would be visited.
pub(crate) fn check_budget(q: u64, exp: u32, budget: u64) -> Result<u64> {
    match checked_pow(q, exp) {
        Some(n) if n <= budget => Ok(n),
        needed => Err(Error::BudgetExceeded {
            needed: format!(
                "enumeration of {} candidates",
                needed.map(|n| n.to_string()).unwrap_or_else(|| format!("{q}^{exp}"))
            ),
            budget,
        }),
    }
}

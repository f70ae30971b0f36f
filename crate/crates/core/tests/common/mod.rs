//! Property checks shared by the `properties` and `acceptance` targets.
//!
//! Each check is exhaustive when q ≤ 16 and otherwise draws a fixed-seed
//! sample of `SAMPLES` cases. A check returns the number of cases it examined.

#![allow(dead_code)]

use cycdes_core::gf::Field;
use cycdes_core::linearized::{enumerate_subspaces, null_set, AffinePoly};
use cycdes_core::{binomial, gaussian_binomial, FieldElement};
use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const SEED: u64 = 0x5eed_cafe;
pub const SAMPLES: usize = 10_000;
pub const EXHAUSTIVE_Q: u64 = 16;

/// Fields every property suite runs over.
pub const FIELDS: &[(u64, u32)] = &[
    (2, 1),
    (2, 2),
    (2, 3),
    (2, 4),
    (3, 1),
    (3, 2),
    (5, 1),
    (7, 1),
    (13, 1),
    (2, 5),
    (2, 6),
    (2, 8),
    (3, 3),
    (3, 4),
    (5, 2),
    (7, 2),
    (11, 2),
    (5, 3),
];

pub type Check = Result<u64, String>;

/// `arity`-tuples of field elements: all of them when q ≤ 16, else a seeded sample.
pub fn tuples(field: &Field, arity: usize) -> Vec<Vec<FieldElement>> {
    let q = field.q();
    if q <= EXHAUSTIVE_Q {
        let total = q.pow(arity as u32);
        (0..total)
            .map(|mut i| {
                (0..arity)
                    .map(|_| {
                        let x = FieldElement::from_code((i % q) as u32);
                        i /= q;
                        x
                    })
                    .collect()
            })
            .collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ q);
        (0..SAMPLES)
            .map(|_| {
                (0..arity)
                    .map(|_| FieldElement::from_code(rng.gen_range(0..q as u32)))
                    .collect()
            })
            .collect()
    }
}

pub fn field_axioms(p: u64, m: u32) -> Check {
    let f = Field::new(p, m).map_err(|e| e.to_string())?;
    let (zero, one) = (FieldElement::ZERO, FieldElement::ONE);
    let cases = tuples(&f, 3);
    for t in &cases {
        let (x, y, z) = (t[0], t[1], t[2]);
        let ok = f.add(x, y) == f.add(y, x)
            && f.mul(x, y) == f.mul(y, x)
            && f.add(f.add(x, y), z) == f.add(x, f.add(y, z))
            && f.mul(f.mul(x, y), z) == f.mul(x, f.mul(y, z))
            && f.mul(x, f.add(y, z)) == f.add(f.mul(x, y), f.mul(x, z))
            && f.add(x, zero) == x
            && f.mul(x, one) == x
            && f.add(x, f.neg(x)) == zero
            && f.sub(f.add(x, y), y) == x
            && (x.is_zero() || f.mul(x, f.inv(x).map_err(|e| e.to_string())?) == one);
        if !ok {
            return Err(format!("GF({p}^{m}): axiom fails at ({x:?}, {y:?}, {z:?})"));
        }
    }
    if f.pow(f.alpha(), f.q() - 1) != one || f.elements().filter(|x| !x.is_zero()).any(|x| f.log(x).is_none()) {
        return Err(format!("GF({p}^{m}): alpha is not primitive"));
    }
    Ok(cases.len() as u64)
}

pub fn frobenius_additivity(p: u64, m: u32) -> Check {
    let f = Field::new(p, m).map_err(|e| e.to_string())?;
    let cases = tuples(&f, 2);
    for t in &cases {
        let (x, y) = (t[0], t[1]);
        for k in 0..m as u64 {
            let sum = f.frobenius(f.add(x, y), k);
            let prod = f.frobenius(f.mul(x, y), k);
            if sum != f.add(f.frobenius(x, k), f.frobenius(y, k))
                || prod != f.mul(f.frobenius(x, k), f.frobenius(y, k))
                || f.frobenius(x, k) != f.pow(x, p.pow(k as u32))
            {
                return Err(format!("GF({p}^{m}): Frobenius^{k} fails at ({x:?}, {y:?})"));
            }
        }
    }
    Ok(cases.len() as u64)
}

/// |N(f_{c,a})| is 0 or |N(f_{0,a})| for every affine linearized polynomial of degree p^h.
pub fn coset_law(p: u64, m: u32) -> Check {
    let f = Field::new(p, m).map_err(|e| e.to_string())?;
    let mut checked = 0;
    for h in 0..(m as usize).min(3) {
        for t in tuples(&f, h + 2) {
            let poly = AffinePoly::new(t[0], t[1..].to_vec());
            let kernel = null_set(&f, &AffinePoly::linear(t[1..].to_vec()));
            let roots = null_set(&f, &poly);
            if !(roots.is_empty() || roots.len() == kernel.len()) {
                return Err(format!("GF({p}^{m}) h={h}: |N| = {} for kernel size {}", roots.len(), kernel.len()));
            }
            // a nonempty null set is a translate of the kernel
            if let Some(&x0) = roots.first() {
                let mut shifted: Vec<_> = kernel.iter().map(|&k| f.add(x0, k)).collect();
                let mut sorted = roots.clone();
                shifted.sort();
                sorted.sort();
                if shifted != sorted {
                    return Err(format!("GF({p}^{m}) h={h}: null set is not a coset"));
                }
            }
            checked += 1;
        }
    }
    Ok(checked)
}

/// Gauss(n,k) = Gauss(n,n-k), Gauss(n,k) = Gauss(n-1,k-1) + p^k Gauss(n-1,k),
/// and Gauss(n,k) ≡ C(n,k) mod p-1, since the polynomial in p reduces to C(n,k) at 1.
pub fn gaussian_identities(primes: &[u64], max_n: i64) -> Check {
    let mut checked = 0;
    for &p in primes {
        for n in 0..=max_n {
            for k in 0..=n {
                let g = gaussian_binomial(n, k, p);
                if g != gaussian_binomial(n, n - k, p) {
                    return Err(format!("Gauss({n},{k})_{p} is not symmetric"));
                }
                if n >= 1 && k >= 1 {
                    let rhs = gaussian_binomial(n - 1, k - 1, p)
                        + BigUint::from(p).pow(k as u32) * gaussian_binomial(n - 1, k, p);
                    if g != rhs {
                        return Err(format!("Gauss({n},{k})_{p} fails the Pascal recurrence"));
                    }
                }
                if p > 2 && g.clone() % (p - 1) != binomial(n as u64, k as u64) % (p - 1) {
                    return Err(format!("Gauss({n},{k})_{p} disagrees with C({n},{k}) mod {}", p - 1));
                }
                checked += 1;
            }
            if gaussian_binomial(n, n + 1, p) != BigUint::default() || gaussian_binomial(n, -1, p) != BigUint::default() {
                return Err(format!("Gauss({n},k)_{p} is nonzero outside 0..=n"));
            }
        }
    }
    Ok(checked)
}

/// Enumerated subspaces of each dimension are distinct, of the right size, and
/// Gauss(m,j)_p in number.
pub fn subspace_counts(p: u64, m: u32) -> Check {
    let f = Field::new(p, m).map_err(|e| e.to_string())?;
    let mut checked = 0;
    for j in 0..=m as usize {
        let subs: Vec<_> = enumerate_subspaces(&f, j).collect();
        let expected = gaussian_binomial(m as i64, j as i64, p);
        if BigUint::from(subs.len()) != expected {
            return Err(format!("GF({p}^{m}): {} subspaces of dim {j}, expected {expected}", subs.len()));
        }
        let mut seen = std::collections::HashSet::new();
        for u in &subs {
            if u.dim() != j || u.size(&f) != p.pow(j as u32) || !seen.insert(u.clone()) {
                return Err(format!("GF({p}^{m}): bad or repeated subspace of dim {j}"));
            }
        }
        checked += subs.len() as u64;
    }
    Ok(checked)
}

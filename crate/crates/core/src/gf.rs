//! Prime-power fields GF(p^m) backed by exp/log tables.
//!
//! An element is the residue of a polynomial of degree < m over F_p. It is
//! stored as the base-p integer whose i-th digit is the coefficient of x^i,
//! so encodings run over `0..q`. The modulus is the smallest monic primitive
//! polynomial of degree m when the lower coefficients are read as a base-p
//! integer with c_0 least significant, and α is the class of x itself.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Largest field order for which tables are built.
pub const TABLE_LIMIT: u64 = 1 << 20;
/// Largest extension degree accepted by [`Field::new`].
pub const MAX_DEGREE: u32 = 24;
/// Largest characteristic accepted by [`Field::new`].
pub const MAX_PRIME: u64 = 1 << 31;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    /// Wraps a base-p encoding without range checks; see [`Field::element`].
    pub const fn from_code(code: u32) -> Self {
        FieldElement(code)
    }

    pub const fn code(self) -> u32 {
        self.0
    }

    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// The JSON form of a field: `{p, m, modulus: [c_0, .., c_m]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub p: u64,
    pub m: u32,
    pub modulus: Vec<u32>,
}

/// GF(p^m) with its modulus, primitive element α and exp/log tables.
///
/// Immutable once built; share it freely across threads.
#[derive(Clone, Debug)]
pub struct Field {
    p: u32,
    m: u32,
    q: u32,
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// `a * b mod f` for polynomials over F_p of degree < m; `f` is monic of degree m
/// and given by its m lower coefficients.
fn poly_mulmod(a: &[u64], b: &[u64], low: &[u64], p: u64) -> Vec<u64> {
    let m = low.len();
    let mut prod = vec![0u64; 2 * m];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    // x^m = -(c_0 + .. + c_{m-1} x^{m-1})
    for d in (m..2 * m).rev() {
        let top = prod[d];
        if top == 0 {
            continue;
        }
        prod[d] = 0;
        for (i, &c) in low.iter().enumerate() {
            let k = d - m + i;
            prod[k] = (prod[k] + (p - c) * top) % p;
        }
    }
    prod.truncate(m);
    prod
}

fn poly_powmod_x(mut e: u64, low: &[u64], p: u64) -> Vec<u64> {
    let m = low.len();
    let mut result = vec![0u64; m];
    result[0] = 1;
    let mut base = vec![0u64; m];
    if m == 1 {
        base[0] = (p - low[0]) % p;
    } else {
        base[1] = 1;
    }
    while e > 0 {
        if e & 1 == 1 {
            result = poly_mulmod(&result, &base, low, p);
        }
        base = poly_mulmod(&base, &base, low, p);
        e >>= 1;
    }
    result
}

/// True iff the class of x has multiplicative order exactly p^m - 1 modulo the
/// monic polynomial with lower coefficients `low`.
fn is_primitive(low: &[u64], p: u64, order: u64, factors: &[u64]) -> bool {
    if low[0] == 0 {
        return false;
    }
    let is_one = |v: &[u64]| v[0] == 1 && v[1..].iter().all(|&c| c == 0);
    if !is_one(&poly_powmod_x(order, low, p)) {
        return false;
    }
    factors
        .iter()
        .all(|&r| !is_one(&poly_powmod_x(order / r, low, p)))
}

impl Field {
    /// Builds GF(p^m) over the lexicographically smallest monic primitive modulus.
    pub fn new(p: u64, m: u32) -> Result<Self> {
        if !is_prime(p) || p > MAX_PRIME {
            return Err(Error::NotPrime(p));
        }
        if m == 0 || m > MAX_DEGREE {
            return Err(Error::bad(format!("extension degree m={m} must lie in 1..={MAX_DEGREE}")));
        }
        let q = match crate::checked_pow(p, m) {
            Some(q) if q <= TABLE_LIMIT => q,
            _ => {
                return Err(Error::TooLarge {
                    p,
                    m,
                    limit: TABLE_LIMIT,
                })
            }
        };
        let order = q - 1;
        let factors = prime_factors(order);
        let low = (1..q)
            .map(|n| digits_of(n, p, m))
            .find(|low| is_primitive(low, p, order, &factors))
            .expect("a primitive polynomial of every degree exists");
        let mut modulus: Vec<u32> = low.iter().map(|&c| c as u32).collect();
        modulus.push(1);
        Ok(Self::with_modulus(p as u32, m, q as u32, modulus))
    }

    fn with_modulus(p: u32, m: u32, q: u32, modulus: Vec<u32>) -> Self {
        let mut field = Field {
            p,
            m,
            q,
            modulus,
            exp: Vec::with_capacity(q as usize - 1),
            log: vec![0; q as usize],
        };
        let mut x = 1u32;
        for i in 0..q - 1 {
            field.exp.push(x);
            field.log[x as usize] = i;
            x = field.times_alpha(x);
        }
        debug_assert_eq!(x, 1);
        field
    }

    /// Multiplies an encoded element by α with a digit shift and one reduction.
    fn times_alpha(&self, x: u32) -> u32 {
        let (p, m) = (self.p as u64, self.m as usize);
        let mut digits = digits_of(x as u64, p, self.m);
        let top = digits[m - 1];
        digits.rotate_right(1);
        digits[0] = 0;
        for (d, &c) in digits.iter_mut().zip(&self.modulus) {
            *d = (*d + (p - c as u64) * top) % p;
        }
        encode_digits(&digits, p) as u32
    }

    pub fn p(&self) -> u64 {
        self.p as u64
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn q(&self) -> u64 {
        self.q as u64
    }

    /// Coefficients c_0..c_m of the modulus, c_m = 1.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn alpha(&self) -> FieldElement {
        FieldElement(self.exp[1 % self.exp.len()])
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor {
            p: self.p(),
            m: self.m,
            modulus: self.modulus.clone(),
        }
    }

    /// Checked conversion from a base-p encoding.
    pub fn element(&self, code: u64) -> Option<FieldElement> {
        (code < self.q as u64).then_some(FieldElement(code as u32))
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.q).map(FieldElement)
    }

    pub fn digits(&self, x: FieldElement) -> Vec<u32> {
        digits_of(x.0 as u64, self.p as u64, self.m)
            .into_iter()
            .map(|d| d as u32)
            .collect()
    }

    pub fn from_digits(&self, digits: &[u32]) -> FieldElement {
        debug_assert!(digits.len() <= self.m as usize);
        let mut code = 0u32;
        for &d in digits.iter().rev() {
            code = code * self.p + d % self.p;
        }
        FieldElement(code)
    }

    pub fn add(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        if self.p == 2 {
            return FieldElement(x.0 ^ y.0);
        }
        let p = self.p;
        let (mut a, mut b, mut place, mut out) = (x.0, y.0, 1u32, 0u32);
        while a > 0 || b > 0 {
            out += (a % p + b % p) % p * place;
            a /= p;
            b /= p;
            place = place.wrapping_mul(p);
        }
        FieldElement(out)
    }

    pub fn neg(&self, x: FieldElement) -> FieldElement {
        if self.p == 2 {
            return x;
        }
        let p = self.p;
        let (mut a, mut place, mut out) = (x.0, 1u32, 0u32);
        while a > 0 {
            out += (p - a % p) % p * place;
            a /= p;
            place = place.wrapping_mul(p);
        }
        FieldElement(out)
    }

    pub fn sub(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        self.add(x, self.neg(y))
    }

    pub fn mul(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        if x.0 == 0 || y.0 == 0 {
            return FieldElement::ZERO;
        }
        let n = self.q as u64 - 1;
        let e = (self.log[x.0 as usize] as u64 + self.log[y.0 as usize] as u64) % n;
        FieldElement(self.exp[e as usize])
    }

    /// Multiplies by an element of the prime subfield given as an integer.
    pub fn scale(&self, k: u64, x: FieldElement) -> FieldElement {
        self.mul(FieldElement((k % self.p as u64) as u32), x)
    }

    pub fn inv(&self, x: FieldElement) -> Result<FieldElement> {
        if x.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        let n = self.q - 1;
        let l = self.log[x.0 as usize];
        Ok(FieldElement(self.exp[((n - l) % n) as usize]))
    }

    /// `x^e`, with `0^0 = 1`.
    pub fn pow(&self, x: FieldElement, e: u64) -> FieldElement {
        if x.0 == 0 {
            return if e == 0 { FieldElement::ONE } else { FieldElement::ZERO };
        }
        let n = self.q as u64 - 1;
        let l = self.log[x.0 as usize] as u64;
        FieldElement(self.exp[((l * (e % n)) % n) as usize])
    }

    /// α^e for any integer exponent.
    pub fn alpha_pow(&self, e: i64) -> FieldElement {
        let n = self.q as i64 - 1;
        FieldElement(self.exp[e.rem_euclid(n) as usize])
    }

    /// Discrete log to base α; `None` for zero.
    pub fn log(&self, x: FieldElement) -> Option<u64> {
        (x.0 != 0).then(|| self.log[x.0 as usize] as u64)
    }

    /// `x^(p^k)`.
    pub fn frobenius(&self, x: FieldElement, k: u64) -> FieldElement {
        if x.0 == 0 {
            return x;
        }
        let n = self.q as u64 - 1;
        let mut e = 1u64 % n;
        for _ in 0..k % self.m as u64 {
            e = e * self.p as u64 % n;
        }
        let l = self.log[x.0 as usize] as u64;
        FieldElement(self.exp[(l * e % n) as usize])
    }

    /// Coordinate map: τ(i) = α^i for 1 ≤ i ≤ q-1 and τ(q) = 0.
    pub fn tau(&self, i: u64) -> Result<FieldElement> {
        let q = self.q as u64;
        match i {
            0 => Err(Error::OutOfRange { index: i, q }),
            i if i < q => Ok(FieldElement(self.exp[(i % (q - 1)) as usize])),
            i if i == q => Ok(FieldElement::ZERO),
            _ => Err(Error::OutOfRange { index: i, q }),
        }
    }

    /// Inverse of [`Field::tau`], returning a coordinate in 1..=q.
    pub fn tau_inv(&self, x: FieldElement) -> u64 {
        let q = self.q as u64;
        if x.0 == 0 {
            return q;
        }
        match self.log[x.0 as usize] as u64 {
            0 => q - 1,
            l => l,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.descriptor()).expect("descriptor serializes")
    }

    /// Rebuilds a field from its descriptor, rejecting moduli that are not primitive.
    pub fn from_descriptor(d: &FieldDescriptor) -> Result<Self> {
        let reference = Field::new(d.p, d.m)?;
        if d.modulus.len() != d.m as usize + 1
            || d.modulus[d.m as usize] != 1
            || d.modulus.iter().any(|&c| c as u64 >= d.p)
        {
            return Err(Error::bad("modulus must be monic of degree m over F_p"));
        }
        if d.modulus == reference.modulus {
            return Ok(reference);
        }
        let low: Vec<u64> = d.modulus[..d.m as usize].iter().map(|&c| c as u64).collect();
        let order = reference.q() - 1;
        if !is_primitive(&low, d.p, order, &prime_factors(order)) {
            return Err(Error::bad("modulus is not primitive"));
        }
        Ok(Self::with_modulus(
            d.p as u32,
            d.m,
            reference.q,
            d.modulus.clone(),
        ))
    }
}

fn digits_of(mut n: u64, p: u64, m: u32) -> Vec<u64> {
    (0..m)
        .map(|_| {
            let d = n % p;
            n /= p;
            d
        })
        .collect()
}

fn encode_digits(digits: &[u64], p: u64) -> u64 {
    digits.iter().rev().fold(0, |acc, &d| acc * p + d)
}

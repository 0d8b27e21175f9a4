//! Residue fields F_{p^m} for odd primes p.
//!
//! Elements are stored as a packed code `c_0 + c_1 p + ... + c_{m-1} p^{m-1}`
//! over the canonical modulus returned by [`find_irreducible`]. Ascending code
//! order is the lexicographic enumeration order, so `0` comes first and `1`
//! second.

pub(crate) mod poly;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest characteristic accepted; keeps coefficient products inside `u64`.
pub const MAX_CHARACTERISTIC: u64 = 1 << 31;

/// Identifies a field up to the canonical choice of modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldId {
    pub p: u64,
    pub m: u32,
}

impl fmt::Display for FieldId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "fq:p={},m={}", self.p, self.m)
    }
}

#[derive(Debug)]
struct FieldParams {
    id: FieldId,
    order: u64,
    /// Monic, ascending, length m + 1.
    modulus: Vec<u64>,
}

/// The finite field F_{p^m} with its canonical modulus.
#[derive(Clone, Debug)]
pub struct FiniteField {
    params: Arc<FieldParams>,
}

/// An element of some [`FiniteField`]; carries the field id so mixing fields
/// is detected.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElement {
    field: FieldId,
    code: u64,
}

/// Strategy for [`FiniteField::inv_with`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InverseMethod {
    /// Extended Euclid against the modulus.
    Euclid,
    /// `a^(q-2)`.
    Power,
}

impl FieldElement {
    pub(crate) fn from_parts(field: FieldId, code: u64) -> Self {
        FieldElement { field, code }
    }

    pub fn field_id(&self) -> FieldId {
        self.field
    }

    /// Position in the enumeration order of the field.
    pub fn code(&self) -> u64 {
        self.code
    }

    pub fn is_zero(&self) -> bool {
        self.code == 0
    }

    /// The `m` residues `c_0, ..., c_{m-1}`.
    pub fn coeffs(&self) -> Vec<u64> {
        decode_digits(self.code, self.field.p, self.field.m as usize)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_poly(&self.coeffs()))
    }
}

pub(crate) fn decode_digits(mut code: u64, base: u64, len: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(code % base);
        code /= base;
    }
    out
}

pub(crate) fn encode_digits(digits: &[u64], base: u64) -> u64 {
    digits.iter().rev().fold(0u64, |acc, &d| acc * base + d)
}

pub(crate) fn checked_pow(base: u64, exp: u32) -> Option<u64> {
    (0..exp).try_fold(1u64, |acc, _| acc.checked_mul(base))
}

impl FiniteField {
    /// Builds F_{p^m} over the canonical modulus.
    ///
    /// Rejects p = 2, non-primes and fields whose order does not fit in `u64`.
    pub fn new(p: u64, m: u32) -> Result<Self> {
        validate_characteristic(p)?;
        if m == 0 {
            return Err(Error::Validation("extension degree m must be >= 1".into()));
        }
        let order = checked_pow(p, m)
            .filter(|&q| q < (1u64 << 62))
            .ok_or_else(|| Error::Validation(format!("field order {p}^{m} is too large")))?;
        let modulus = find_irreducible(p, m)?;
        Ok(FiniteField {
            params: Arc::new(FieldParams {
                id: FieldId { p, m },
                order,
                modulus,
            }),
        })
    }

    pub fn id(&self) -> FieldId {
        self.params.id
    }

    pub fn characteristic(&self) -> u64 {
        self.params.id.p
    }

    pub fn degree(&self) -> u32 {
        self.params.id.m
    }

    /// q = p^m.
    pub fn order(&self) -> u64 {
        self.params.order
    }

    /// The canonical monic modulus, ascending coefficients.
    pub fn modulus(&self) -> &[u64] {
        &self.params.modulus
    }

    pub fn zero(&self) -> FieldElement {
        self.wrap(0)
    }

    pub fn one(&self) -> FieldElement {
        self.wrap(1)
    }

    /// Element from residues `c_0, c_1, ...`; missing high coefficients are zero.
    pub fn element(&self, coeffs: &[u64]) -> Result<FieldElement> {
        let p = self.characteristic();
        let m = self.degree() as usize;
        if coeffs.len() > m {
            return Err(Error::Validation(format!(
                "{} coefficients given for a degree-{m} field",
                coeffs.len()
            )));
        }
        if let Some(&c) = coeffs.iter().find(|&&c| c >= p) {
            return Err(Error::Validation(format!(
                "coefficient {c} not in [0, {p})"
            )));
        }
        Ok(self.wrap(encode_digits(coeffs, p)))
    }

    pub fn from_code(&self, code: u64) -> Result<FieldElement> {
        if code >= self.order() {
            return Err(Error::Validation(format!(
                "code {code} out of range for field of order {}",
                self.order()
            )));
        }
        Ok(self.wrap(code))
    }

    /// Integer n mapped through Z -> F.
    pub fn from_int(&self, n: i64) -> FieldElement {
        let p = self.characteristic() as i64;
        self.wrap(n.rem_euclid(p) as u64)
    }

    pub(crate) fn wrap(&self, code: u64) -> FieldElement {
        debug_assert!(code < self.order());
        FieldElement {
            field: self.id(),
            code,
        }
    }

    fn check(&self, a: &FieldElement) -> Result<()> {
        if a.field != self.id() {
            return Err(Error::ParameterMismatch(format!(
                "element of {} used with {}",
                a.field,
                self.id()
            )));
        }
        Ok(())
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.wrap(self.add_code(a.code, b.code)))
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.wrap(self.sub_code(a.code, b.code)))
    }

    pub fn neg(&self, a: &FieldElement) -> Result<FieldElement> {
        self.check(a)?;
        Ok(self.wrap(self.neg_code(a.code)))
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.wrap(self.mul_code(a.code, b.code)))
    }

    pub fn pow(&self, a: &FieldElement, exp: u64) -> Result<FieldElement> {
        self.check(a)?;
        Ok(self.wrap(self.pow_code(a.code, exp)))
    }

    /// Multiplicative inverse via extended Euclid.
    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement> {
        self.inv_with(a, InverseMethod::Euclid)
    }

    pub fn inv_with(&self, a: &FieldElement, method: InverseMethod) -> Result<FieldElement> {
        self.check(a)?;
        if a.is_zero() {
            return Err(Error::NotAUnit(a.to_string()));
        }
        let code = match method {
            InverseMethod::Euclid => self.inv_code(a.code),
            InverseMethod::Power => self.pow_code(a.code, self.order() - 2),
        };
        Ok(self.wrap(code))
    }

    /// All q elements in ascending code order.
    pub fn enumerate(&self) -> Vec<FieldElement> {
        (0..self.order()).map(|c| self.wrap(c)).collect()
    }

    /// Parses a comma-separated coefficient list such as `1,2`.
    pub fn parse_element(&self, s: &str) -> Result<FieldElement> {
        let coeffs = parse_poly(s)?;
        self.element(&coeffs)
            .map_err(|e| Error::parse(s, e.to_string()))
    }

    // Code-level arithmetic used by the ring layer.

    pub(crate) fn add_code(&self, a: u64, b: u64) -> u64 {
        let p = self.characteristic();
        if self.degree() == 1 {
            return (a + b) % p;
        }
        let (mut a, mut b) = (a, b);
        let (mut out, mut scale) = (0u64, 1u64);
        for _ in 0..self.degree() {
            out += ((a % p + b % p) % p) * scale;
            a /= p;
            b /= p;
            scale = scale.wrapping_mul(p);
        }
        out
    }

    pub(crate) fn neg_code(&self, a: u64) -> u64 {
        let p = self.characteristic();
        if self.degree() == 1 {
            return (p - a) % p;
        }
        let mut a = a;
        let (mut out, mut scale) = (0u64, 1u64);
        for _ in 0..self.degree() {
            out += ((p - a % p) % p) * scale;
            a /= p;
            scale = scale.wrapping_mul(p);
        }
        out
    }

    pub(crate) fn sub_code(&self, a: u64, b: u64) -> u64 {
        self.add_code(a, self.neg_code(b))
    }

    pub(crate) fn mul_code(&self, a: u64, b: u64) -> u64 {
        let p = self.characteristic();
        if self.degree() == 1 {
            return a * b % p;
        }
        let m = self.degree() as usize;
        let prod = poly::mul_mod(
            &decode_digits(a, p, m),
            &decode_digits(b, p, m),
            self.modulus(),
            p,
        );
        encode_digits(&prod, p)
    }

    pub(crate) fn pow_code(&self, a: u64, mut exp: u64) -> u64 {
        let (mut base, mut acc) = (a, 1u64);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul_code(acc, base);
            }
            base = self.mul_code(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Caller guarantees `a != 0`.
    pub(crate) fn inv_code(&self, a: u64) -> u64 {
        let p = self.characteristic();
        let m = self.degree() as usize;
        if m == 1 {
            return poly::inv_int(a, p);
        }
        let inv = poly::inv_mod(&decode_digits(a, p, m), self.modulus(), p)
            .expect("nonzero element of a field is invertible");
        encode_digits(&inv, p)
    }
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.id() == other.id()
    }
}

impl Eq for FiniteField {}

impl fmt::Display for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.id().fmt(f)
    }
}

/// Parses `fq:p=<p>,m=<m>`.
impl FromStr for FiniteField {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let body = s
            .strip_prefix("fq:")
            .ok_or_else(|| Error::parse(s, "field spec must start with `fq:`"))?;
        let (mut p, mut m) = (None, None);
        for part in body.split(',') {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| Error::parse(part, "expected key=value"))?;
            let value: u64 = value
                .parse()
                .map_err(|_| Error::parse(part, "value is not an unsigned integer"))?;
            match key {
                "p" => p = Some(value),
                "m" => m = Some(value),
                _ => return Err(Error::parse(part, "unknown field parameter")),
            }
        }
        let p = p.ok_or_else(|| Error::parse(s, "missing p"))?;
        let m = m.ok_or_else(|| Error::parse(s, "missing m"))?;
        let m = u32::try_from(m).map_err(|_| Error::parse(s, "m too large"))?;
        FiniteField::new(p, m).map_err(|e| Error::parse(s, e.to_string()))
    }
}

pub(crate) fn validate_characteristic(p: u64) -> Result<()> {
    if p == 2 {
        return Err(Error::Validation(
            "characteristic 2 is not supported: 2 must be a unit".into(),
        ));
    }
    if !poly::is_prime(p) {
        return Err(Error::Validation(format!("p = {p} is not prime")));
    }
    if p >= MAX_CHARACTERISTIC {
        return Err(Error::Validation(format!("p = {p} is too large")));
    }
    Ok(())
}

/// Rabin's test: `f` of degree m is irreducible over Z/p iff
/// `x^(p^m) = x mod f` and `gcd(x^(p^(m/l)) - x, f) = 1` for each prime `l | m`.
///
/// `f` is an ascending coefficient list and must be monic of degree >= 1.
pub fn is_irreducible(f: &[u64], p: u64) -> Result<bool> {
    if !poly::is_prime(p) {
        return Err(Error::Validation(format!("p = {p} is not prime")));
    }
    if let Some(&c) = f.iter().find(|&&c| c >= p) {
        return Err(Error::Validation(format!(
            "coefficient {c} not in [0, {p})"
        )));
    }
    let deg = poly::degree(f)
        .filter(|&d| d >= 1)
        .ok_or_else(|| Error::Validation("polynomial must have degree >= 1".into()))?;
    if f[deg] != 1 {
        return Err(Error::Validation("polynomial is not monic".into()));
    }
    let f = &f[..=deg];
    if deg == 1 {
        return Ok(true);
    }
    let x = [0u64, 1];
    if poly::frobenius_pow(&x, deg, f, p) != poly::rem(&x, f, p) {
        return Ok(false);
    }
    for l in poly::prime_factors(deg as u64) {
        let h = poly::frobenius_pow(&x, deg / l as usize, f, p);
        let g = poly::gcd(&poly::sub(&h, &x, p), f, p);
        if g != [1] {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The first monic irreducible of degree `m` over Z/p when the lower
/// coefficients `(c_0, ..., c_{m-1})` are scanned as the integer
/// `c_0 + c_1 p + ...` in ascending order. Returns `m + 1` ascending coefficients.
pub fn find_irreducible(p: u64, m: u32) -> Result<Vec<u64>> {
    if !poly::is_prime(p) {
        return Err(Error::Validation(format!("p = {p} is not prime")));
    }
    if m == 0 {
        return Err(Error::Validation("degree must be >= 1".into()));
    }
    let m = m as usize;
    let mut code = 0u64;
    loop {
        let mut f = decode_digits(code, p, m);
        f.push(1);
        if is_irreducible(&f, p)? {
            return Ok(f);
        }
        code += 1;
    }
}

/// `1,0,1` for 1 + x^2. The zero polynomial prints as `0`.
pub fn format_poly(coeffs: &[u64]) -> String {
    if coeffs.is_empty() {
        return "0".into();
    }
    coeffs
        .iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

pub fn parse_poly(s: &str) -> Result<Vec<u64>> {
    s.split(',')
        .map(|tok| {
            let tok = tok.trim();
            tok.parse::<u64>()
                .map_err(|_| Error::parse(tok, "coefficient is not an unsigned integer"))
        })
        .collect()
}

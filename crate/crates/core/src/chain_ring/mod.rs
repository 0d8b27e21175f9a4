//! Finite chain rings of order q^r.
//!
//! Two constructive families are provided:
//!
//! * `gr` — the Galois ring GR(p^k, m) = Z_{p^k}[x]/(f), f monic of degree m
//!   and irreducible mod p. Covers Z_{p^k} (m = 1) and F_{p^m} (k = 1).
//!   Here q = p^m, r = k and the uniformizer is p.
//! * `ec` — the equal-characteristic ring F_{p^m}[t]/(t^k), with q = p^m,
//!   r = k and uniformizer t.
//!
//! Elements are packed into a single code. For `gr` the code is
//! `sum c_i (p^k)^i` over the m residues `c_i in [0, p^k)`; for `ec` it is
//! `sum a_j q^j` over the field codes of the t-adic coefficients `a_j`.
//! Codes are dense in `[0, q^r)` and ascending code order is the enumeration
//! order.

mod tables;

pub(crate) use tables::Arith;

use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use rand::Rng;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::finite_field::{
    checked_pow, decode_digits, encode_digits, find_irreducible, poly, validate_characteristic,
    FieldElement, FiniteField,
};

/// Default cap on [`Ring::enumerate`].
pub const DEFAULT_ENUMERATION_CAP: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    /// Galois ring GR(p^k, m).
    Galois,
    /// F_{p^m}[t]/(t^k).
    EqualChar,
}

impl Family {
    fn prefix(self) -> &'static str {
        match self {
            Family::Galois => "gr",
            Family::EqualChar => "ec",
        }
    }
}

/// Parameters of a chain ring; validated on construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RingSpec {
    family: Family,
    p: u64,
    k: u32,
    m: u32,
}

impl RingSpec {
    pub fn new(family: Family, p: u64, k: u32, m: u32) -> Result<Self> {
        validate_characteristic(p)?;
        if k == 0 || m == 0 {
            return Err(Error::Validation("k and m must be >= 1".into()));
        }
        let too_large = || {
            Error::Validation(format!(
                "ring {}:p={p},k={k},m={m} is too large",
                family.prefix()
            ))
        };
        if family == Family::Galois {
            checked_pow(p, k)
                .filter(|&b| b < (1 << 31))
                .ok_or_else(too_large)?;
        }
        checked_pow(p, m)
            .and_then(|q| checked_pow(q, k))
            .filter(|&n| n < (1 << 62))
            .ok_or_else(too_large)?;
        Ok(RingSpec { family, p, k, m })
    }

    pub fn galois(p: u64, k: u32, m: u32) -> Result<Self> {
        Self::new(Family::Galois, p, k, m)
    }

    pub fn equal_char(p: u64, k: u32, m: u32) -> Result<Self> {
        Self::new(Family::EqualChar, p, k, m)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// Residue field size p^m.
    pub fn q(&self) -> u64 {
        self.p.pow(self.m)
    }

    /// Nilpotency degree of the uniformizer.
    pub fn r(&self) -> u32 {
        self.k
    }

    /// q^r.
    pub fn order(&self) -> u64 {
        self.q().pow(self.k)
    }

    /// Whether an element serializes with more than one top-level component.
    pub fn has_compound_elements(&self) -> bool {
        match self.family {
            Family::Galois => self.m > 1,
            Family::EqualChar => self.k > 1,
        }
    }

    fn digit_base(&self) -> u64 {
        match self.family {
            Family::Galois => self.p.pow(self.k),
            Family::EqualChar => self.q(),
        }
    }

    fn digit_count(&self) -> usize {
        match self.family {
            Family::Galois => self.m as usize,
            Family::EqualChar => self.k as usize,
        }
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}:p={},k={},m={}",
            self.family.prefix(),
            self.p,
            self.k,
            self.m
        )
    }
}

impl Serialize for RingSpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Grammar: `gr:p=<p>,k=<k>,m=<m>` or `ec:p=<p>,k=<k>,m=<m>`.
///
/// A ramification index `e=<n>` is accepted only as `e=1`.
impl FromStr for RingSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (prefix, body) = s
            .split_once(':')
            .ok_or_else(|| Error::parse(s, "expected `gr:` or `ec:` prefix"))?;
        let family = match prefix {
            "gr" => Family::Galois,
            "ec" => Family::EqualChar,
            _ => {
                return Err(Error::parse(
                    prefix,
                    "unknown ring family (expected gr or ec)",
                ))
            }
        };
        let mut vals: [Option<u64>; 3] = [None; 3];
        for part in body.split(',') {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| Error::parse(part, "expected key=value"))?;
            let value: u64 = value
                .trim()
                .parse()
                .map_err(|_| Error::parse(part, "value is not an unsigned integer"))?;
            let slot = match key.trim() {
                "p" => 0,
                "k" => 1,
                "m" => 2,
                "e" if value == 1 => continue,
                "e" => {
                    return Err(Error::parse(
                        part,
                        "ramified chain rings are not supported (only e=1)",
                    ))
                }
                _ => return Err(Error::parse(part, "unknown ring parameter")),
            };
            if vals[slot].replace(value).is_some() {
                return Err(Error::parse(part, "parameter given twice"));
            }
        }
        let get = |i: usize, name: &str| -> Result<u64> {
            vals[i].ok_or_else(|| Error::parse(s, format!("missing parameter {name}")))
        };
        let p = get(0, "p")?;
        let k = u32::try_from(get(1, "k")?).map_err(|_| Error::parse(s, "k too large"))?;
        let m = u32::try_from(get(2, "m")?).map_err(|_| Error::parse(s, "m too large"))?;
        RingSpec::new(family, p, k, m).map_err(|e| Error::parse(s, e.to_string()))
    }
}

/// An element of a chain ring; carries its [`RingSpec`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RingElement {
    spec: RingSpec,
    code: u64,
}

/// Native coefficient view of an element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Coefficients {
    /// m residues in [0, p^k).
    Galois(Vec<u64>),
    /// k t-adic coefficients in F_{p^m}.
    EqualChar(Vec<FieldElement>),
}

impl RingElement {
    pub fn spec(&self) -> RingSpec {
        self.spec
    }

    /// Index of the element in [`Ring::enumerate`].
    pub fn code(&self) -> u64 {
        self.code
    }

    pub fn is_zero(&self) -> bool {
        self.code == 0
    }

    pub fn coefficients(&self) -> Coefficients {
        let s = &self.spec;
        let digits = decode_digits(self.code, s.digit_base(), s.digit_count());
        match s.family {
            Family::Galois => Coefficients::Galois(digits),
            Family::EqualChar => {
                // Field ids are determined by (p, m); no field handle needed.
                let field = crate::finite_field::FieldId { p: s.p, m: s.m };
                Coefficients::EqualChar(
                    digits
                        .into_iter()
                        .map(|c| FieldElement::from_parts(field, c))
                        .collect(),
                )
            }
        }
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = match self.coefficients() {
            Coefficients::Galois(c) => c.iter().map(u64::to_string).collect(),
            Coefficients::EqualChar(c) => c
                .iter()
                .map(|fe| {
                    fe.coeffs()
                        .iter()
                        .map(u64::to_string)
                        .collect::<Vec<_>>()
                        .join(";")
                })
                .collect(),
        };
        f.write_str(&parts.join(","))
    }
}

impl Serialize for RingElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

struct RingInner {
    spec: RingSpec,
    residue_field: FiniteField,
    /// Galois only: monic lift of the residue-field modulus, m + 1 coefficients.
    modulus: Vec<u64>,
    tables: OnceLock<Option<tables::Tables>>,
}

/// A constructed chain ring. Cheap to clone.
#[derive(Clone)]
pub struct Ring {
    inner: Arc<RingInner>,
}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("Ring").field(&self.inner.spec).finish()
    }
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        self.spec() == other.spec()
    }
}

impl Eq for Ring {}

impl Ring {
    pub fn new(spec: RingSpec) -> Result<Self> {
        let residue_field = FiniteField::new(spec.p, spec.m)?;
        let modulus = match spec.family {
            Family::Galois => find_irreducible(spec.p, spec.m)?,
            Family::EqualChar => Vec::new(),
        };
        Ok(Ring {
            inner: Arc::new(RingInner {
                spec,
                residue_field,
                modulus,
                tables: OnceLock::new(),
            }),
        })
    }

    pub fn parse(s: &str) -> Result<Self> {
        Ring::new(s.parse()?)
    }

    pub fn spec(&self) -> RingSpec {
        self.inner.spec
    }

    pub fn q(&self) -> u64 {
        self.spec().q()
    }

    pub fn r(&self) -> u32 {
        self.spec().r()
    }

    pub fn order(&self) -> u64 {
        self.spec().order()
    }

    /// The residue field F = R/(π).
    pub fn residue_field(&self) -> &FiniteField {
        &self.inner.residue_field
    }

    /// Galois family: the lifted modulus over Z_{p^k}. Empty for `ec`.
    pub fn galois_modulus(&self) -> &[u64] {
        &self.inner.modulus
    }

    pub fn zero(&self) -> RingElement {
        self.wrap(0)
    }

    pub fn one(&self) -> RingElement {
        self.wrap(1)
    }

    /// Image of the integer `n` under Z -> R.
    pub fn from_int(&self, n: i64) -> RingElement {
        let s = self.spec();
        let modulus = match s.family {
            Family::Galois => s.p.pow(s.k),
            Family::EqualChar => s.p,
        };
        self.wrap(n.rem_euclid(modulus as i64) as u64)
    }

    pub fn from_code(&self, code: u64) -> Result<RingElement> {
        if code >= self.order() {
            return Err(Error::Validation(format!(
                "code {code} out of range for ring of order {}",
                self.order()
            )));
        }
        Ok(self.wrap(code))
    }

    /// Galois family: element from residues `c_0, ..., c_{m-1}` in [0, p^k).
    pub fn galois_element(&self, coeffs: &[u64]) -> Result<RingElement> {
        let s = self.spec();
        if s.family != Family::Galois {
            return Err(Error::ParameterMismatch(format!(
                "{s} is not a Galois ring"
            )));
        }
        let base = s.digit_base();
        if coeffs.len() > s.m as usize {
            return Err(Error::Validation(format!("too many coefficients for {s}")));
        }
        if let Some(c) = coeffs.iter().find(|&&c| c >= base) {
            return Err(Error::Validation(format!(
                "coefficient {c} not in [0, {base})"
            )));
        }
        Ok(self.wrap(encode_digits(coeffs, base)))
    }

    /// Equal-characteristic family: element `sum a_j t^j`.
    pub fn t_adic_element(&self, coeffs: &[FieldElement]) -> Result<RingElement> {
        let s = self.spec();
        if s.family != Family::EqualChar {
            return Err(Error::ParameterMismatch(format!("{s} is not an ec ring")));
        }
        if coeffs.len() > s.k as usize {
            return Err(Error::Validation(format!(
                "too many t-coefficients for {s}"
            )));
        }
        let field = self.residue_field().id();
        if let Some(bad) = coeffs.iter().find(|c| c.field_id() != field) {
            return Err(Error::ParameterMismatch(format!(
                "coefficient in {} used with {s}",
                bad.field_id()
            )));
        }
        let codes: Vec<u64> = coeffs.iter().map(FieldElement::code).collect();
        Ok(self.wrap(encode_digits(&codes, s.q())))
    }

    /// Parses the native serialization (see [`RingElement`]'s `Display`).
    ///
    /// Galois: `c0,c1,...`. Equal-characteristic: t-coefficients separated by
    /// commas, each a `;`-separated residue-field coefficient list. Trailing
    /// zero components may be omitted.
    pub fn parse_element(&self, s: &str) -> Result<RingElement> {
        let spec = self.spec();
        let s = s.trim();
        let parse_num = |tok: &str, bound: u64| -> Result<u64> {
            let v: u64 = tok
                .trim()
                .parse()
                .map_err(|_| Error::parse(tok, "not an unsigned integer"))?;
            if v >= bound {
                return Err(Error::parse(
                    tok,
                    format!("coefficient not in [0, {bound})"),
                ));
            }
            Ok(v)
        };
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() > spec.digit_count() {
            return Err(Error::parse(s, format!("too many components for {spec}")));
        }
        let digits = match spec.family {
            Family::Galois => parts
                .iter()
                .map(|t| parse_num(t, spec.digit_base()))
                .collect::<Result<Vec<_>>>()?,
            Family::EqualChar => parts
                .iter()
                .map(|part| {
                    let inner: Vec<&str> = part.split(';').collect();
                    if inner.len() > spec.m as usize {
                        return Err(Error::parse(*part, "too many residue-field coefficients"));
                    }
                    let c = inner
                        .iter()
                        .map(|t| parse_num(t, spec.p))
                        .collect::<Result<Vec<_>>>()?;
                    Ok(encode_digits(&c, spec.p))
                })
                .collect::<Result<Vec<_>>>()?,
        };
        Ok(self.wrap(encode_digits(&digits, spec.digit_base())))
    }

    pub(crate) fn wrap(&self, code: u64) -> RingElement {
        debug_assert!(code < self.order());
        RingElement {
            spec: self.spec(),
            code,
        }
    }

    pub(crate) fn check(&self, a: &RingElement) -> Result<()> {
        if a.spec != self.spec() {
            return Err(Error::ParameterMismatch(format!(
                "element of {} used with {}",
                a.spec,
                self.spec()
            )));
        }
        Ok(())
    }

    pub fn add(&self, a: &RingElement, b: &RingElement) -> Result<RingElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.wrap(self.add_code(a.code, b.code)))
    }

    pub fn sub(&self, a: &RingElement, b: &RingElement) -> Result<RingElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.wrap(self.sub_code(a.code, b.code)))
    }

    pub fn neg(&self, a: &RingElement) -> Result<RingElement> {
        self.check(a)?;
        Ok(self.wrap(self.neg_code(a.code)))
    }

    pub fn mul(&self, a: &RingElement, b: &RingElement) -> Result<RingElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.wrap(self.mul_code(a.code, b.code)))
    }

    /// Largest i with `a ∈ (π^i)`; `valuation(0) = r`.
    pub fn valuation(&self, a: &RingElement) -> Result<u32> {
        self.check(a)?;
        Ok(self.valuation_code(a.code))
    }

    pub fn is_unit(&self, a: &RingElement) -> Result<bool> {
        Ok(self.valuation(a)? == 0)
    }

    /// Inverse of a unit by Newton/Hensel lifting of the residue-field inverse.
    pub fn inv_unit(&self, a: &RingElement) -> Result<RingElement> {
        self.check(a)?;
        if self.valuation_code(a.code) != 0 {
            return Err(Error::NotAUnit(a.to_string()));
        }
        Ok(self.wrap(self.inv_unit_code(a.code)))
    }

    /// Inverse of a unit by scanning the whole ring. Small rings only.
    pub fn inv_unit_exhaustive(&self, a: &RingElement) -> Result<RingElement> {
        self.check(a)?;
        if self.order() > DEFAULT_ENUMERATION_CAP {
            return Err(Error::Capacity(format!(
                "exhaustive inverse over {} elements",
                self.order()
            )));
        }
        (0..self.order())
            .find(|&b| self.mul_code(a.code, b) == 1)
            .map(|b| self.wrap(b))
            .ok_or_else(|| Error::NotAUnit(a.to_string()))
    }

    /// p for Galois rings, t for equal-characteristic rings. Zero when r = 1.
    pub fn uniformizer(&self) -> RingElement {
        let s = self.spec();
        match s.family {
            Family::Galois => self.from_int(s.p as i64),
            Family::EqualChar if s.k >= 2 => self.wrap(s.q()),
            Family::EqualChar => self.zero(),
        }
    }

    /// Reduction modulo the maximal ideal.
    pub fn residue(&self, a: &RingElement) -> Result<FieldElement> {
        self.check(a)?;
        Ok(self.residue_field().wrap(self.residue_code(a.code)))
    }

    /// All q^r elements in ascending code order, subject to the default cap.
    pub fn enumerate(&self) -> Result<Vec<RingElement>> {
        self.enumerate_capped(DEFAULT_ENUMERATION_CAP)
    }

    pub fn enumerate_capped(&self, cap: u64) -> Result<Vec<RingElement>> {
        if self.order() > cap {
            return Err(Error::Capacity(format!(
                "{} has {} elements, enumeration cap is {cap}",
                self.spec(),
                self.order()
            )));
        }
        Ok((0..self.order()).map(|c| self.wrap(c)).collect())
    }

    /// Uniform draw from R.
    pub fn random_element<G: Rng + ?Sized>(&self, rng: &mut G) -> RingElement {
        self.wrap(rng.random_range(0..self.order()))
    }

    /// Number of units, q^r - q^(r-1).
    pub fn unit_count(&self) -> u64 {
        self.order() - self.order() / self.q()
    }

    pub(crate) fn arith(&self) -> Arith<'_> {
        Arith::new(self, self.tables())
    }

    fn tables(&self) -> Option<&tables::Tables> {
        self.inner
            .tables
            .get_or_init(|| tables::Tables::build(self))
            .as_ref()
    }

    // Code-level arithmetic.

    pub(crate) fn add_code(&self, a: u64, b: u64) -> u64 {
        let s = self.spec();
        match s.family {
            Family::Galois => digitwise(a, b, s.digit_base(), s.m as usize, |x, y, n| (x + y) % n),
            Family::EqualChar => digitwise(a, b, s.p, (s.k * s.m) as usize, |x, y, n| (x + y) % n),
        }
    }

    pub(crate) fn neg_code(&self, a: u64) -> u64 {
        let s = self.spec();
        match s.family {
            Family::Galois => digitwise(a, 0, s.digit_base(), s.m as usize, |x, _, n| (n - x) % n),
            Family::EqualChar => digitwise(a, 0, s.p, (s.k * s.m) as usize, |x, _, n| (n - x) % n),
        }
    }

    pub(crate) fn sub_code(&self, a: u64, b: u64) -> u64 {
        self.add_code(a, self.neg_code(b))
    }

    pub(crate) fn mul_code(&self, a: u64, b: u64) -> u64 {
        let s = self.spec();
        let base = s.digit_base();
        match s.family {
            Family::Galois if s.m == 1 => a * b % base,
            Family::Galois => {
                let m = s.m as usize;
                let x = decode_digits(a, base, m);
                let y = decode_digits(b, base, m);
                let mut prod = vec![0u64; 2 * m - 1];
                for (i, &xi) in x.iter().enumerate() {
                    if xi == 0 {
                        continue;
                    }
                    for (j, &yj) in y.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + xi * yj % base) % base;
                    }
                }
                // x^m = -(f_0 + ... + f_{m-1} x^{m-1}); f is monic
                let f = self.galois_modulus();
                for deg in (m..prod.len()).rev() {
                    let c = prod[deg];
                    if c == 0 {
                        continue;
                    }
                    prod[deg] = 0;
                    for (i, &fi) in f[..m].iter().enumerate() {
                        let idx = deg - m + i;
                        prod[idx] = (prod[idx] + base - c * fi % base) % base;
                    }
                }
                encode_digits(&prod[..m], base)
            }
            Family::EqualChar => {
                let field = self.residue_field();
                let k = s.k as usize;
                if k == 1 {
                    return field.mul_code(a, b);
                }
                let x = decode_digits(a, base, k);
                let y = decode_digits(b, base, k);
                let mut out = vec![0u64; k];
                for (i, &xi) in x.iter().enumerate() {
                    if xi == 0 {
                        continue;
                    }
                    for (j, &yj) in y[..k - i].iter().enumerate() {
                        out[i + j] = field.add_code(out[i + j], field.mul_code(xi, yj));
                    }
                }
                encode_digits(&out, base)
            }
        }
    }

    pub(crate) fn valuation_code(&self, a: u64) -> u32 {
        let s = self.spec();
        let base = s.digit_base();
        match s.family {
            Family::Galois => decode_digits(a, base, s.m as usize)
                .into_iter()
                .filter(|&c| c != 0)
                .map(|mut c| {
                    let mut v = 0;
                    while c % s.p == 0 {
                        c /= s.p;
                        v += 1;
                    }
                    v
                })
                .min()
                .unwrap_or(s.k),
            Family::EqualChar => decode_digits(a, base, s.k as usize)
                .iter()
                .position(|&c| c != 0)
                .map_or(s.k, |i| i as u32),
        }
    }

    pub(crate) fn residue_code(&self, a: u64) -> u64 {
        let s = self.spec();
        match s.family {
            Family::Galois => {
                let digits: Vec<u64> = decode_digits(a, s.digit_base(), s.m as usize)
                    .into_iter()
                    .map(|c| c % s.p)
                    .collect();
                encode_digits(&digits, s.p)
            }
            Family::EqualChar => a % s.q(),
        }
    }

    /// Caller guarantees `a` is a unit.
    pub(crate) fn inv_unit_code(&self, a: u64) -> u64 {
        let s = self.spec();
        let field = self.residue_field();
        let r_inv = field.inv_code(self.residue_code(a));
        // Residue-field inverse embedded as a ring element (digits < p fit in
        // both representations).
        let mut b = match s.family {
            Family::Galois => {
                let digits = decode_digits(r_inv, s.p, s.m as usize);
                encode_digits(&digits, s.digit_base())
            }
            Family::EqualChar => r_inv,
        };
        let two = self.from_int(2).code;
        // Newton step b <- b(2 - ab) doubles the π-adic precision.
        let mut precision = 1;
        while precision < s.k {
            b = self.mul_code(b, self.sub_code(two, self.mul_code(a, b)));
            precision *= 2;
        }
        debug_assert_eq!(self.mul_code(a, b), 1);
        b
    }
}

fn digitwise(a: u64, b: u64, base: u64, n: usize, op: impl Fn(u64, u64, u64) -> u64) -> u64 {
    if n == 1 {
        return op(a, b, base);
    }
    let (mut a, mut b) = (a, b);
    let (mut out, mut scale) = (0u64, 1u64);
    for _ in 0..n {
        out += op(a % base, b % base, base) * scale;
        a /= base;
        b /= base;
        scale = scale.wrapping_mul(base);
    }
    out
}

/// Comma-separated element list; elements with several components are
/// bracketed (`[1,2],[0,1]`). Inverse of [`Ring::parse_subset`].
pub fn format_subset(a: &[RingElement]) -> String {
    let compound = a.first().is_some_and(|x| x.spec().has_compound_elements());
    a.iter()
        .map(|x| {
            if compound {
                format!("[{x}]")
            } else {
                x.to_string()
            }
        })
        .collect::<Vec<_>>()
        .join(",")
}

impl Ring {
    /// Parses a nonempty, duplicate-free element list written as by
    /// [`format_subset`]. Brackets are optional for single-component elements
    /// and mandatory otherwise.
    pub fn parse_subset(&self, text: &str) -> Result<Vec<RingElement>> {
        let text = text.trim();
        if text.is_empty() {
            return Err(Error::parse(text, "empty element list"));
        }
        let tokens: Vec<&str> = if text.contains('[') {
            let mut out = Vec::new();
            let mut rest = text;
            loop {
                let body = rest
                    .strip_prefix('[')
                    .ok_or_else(|| Error::parse(rest, "expected '['"))?;
                let end = body
                    .find(']')
                    .ok_or_else(|| Error::parse(rest, "missing ']'"))?;
                out.push(&body[..end]);
                rest = body[end + 1..].trim_start();
                if rest.is_empty() {
                    break;
                }
                rest = rest
                    .strip_prefix(',')
                    .ok_or_else(|| Error::parse(rest, "expected ',' between elements"))?
                    .trim_start();
            }
            out
        } else if self.spec().has_compound_elements() {
            return Err(Error::parse(
                text,
                format!(
                    "elements of {} must be bracketed, e.g. [1,0],[0,1]",
                    self.spec()
                ),
            ));
        } else {
            text.split(',').collect()
        };
        let mut seen = std::collections::HashSet::new();
        tokens
            .into_iter()
            .map(|tok| {
                let x = self.parse_element(tok)?;
                if !seen.insert(x) {
                    return Err(Error::parse(tok, "duplicate element"));
                }
                Ok(x)
            })
            .collect()
    }
}

/// `p`-adic valuation helper exposed for tests of the Galois family.
pub fn int_valuation(mut n: u64, p: u64, cap: u32) -> u32 {
    if n == 0 {
        return cap;
    }
    let mut v = 0;
    while n.is_multiple_of(p) && v < cap {
        n /= p;
        v += 1;
    }
    v
}

/// Checks that the Galois modulus reduces to the residue-field modulus.
pub fn is_basic_irreducible(ring: &Ring) -> bool {
    let s = ring.spec();
    if s.family != Family::Galois {
        return false;
    }
    let reduced: Vec<u64> = ring.galois_modulus().iter().map(|c| c % s.p).collect();
    poly::degree(&reduced) == Some(s.m as usize)
        && crate::finite_field::is_irreducible(&reduced, s.p).unwrap_or(false)
}

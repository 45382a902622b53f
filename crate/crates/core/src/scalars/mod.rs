//! Exact field arithmetic over ℚ, GF(p) and the cyclotomic fields ℚ(ζ_m).
//!
//! A [`Field`] is a cheap, shareable handle (an `Arc`) that owns whatever the
//! backend precomputes: the cyclotomic modulus `Φ_m` or, for small primes, a
//! discrete-logarithm table. Every [`Scalar`] carries its field handle, so the
//! usual operator traits work directly on scalars. Mixing fields in an operator
//! panics; the `checked_*` methods report [`Error::FieldMismatch`] instead.
//!
//! ```
//! use evoalg::scalars::{Field, FieldDescriptor};
//!
//! let q = Field::rationals();
//! let half = q.parse("1/2").unwrap();
//! let third = q.parse("1/3").unwrap();
//! assert_eq!((&half + &third).to_string(), "5/6");
//!
//! let k = Field::new(FieldDescriptor::Cyclotomic(3)).unwrap();
//! let z = k.zeta().unwrap();
//! assert_eq!((&z * &z).to_string(), "-1 - z");
//! ```

pub mod poly;
mod roots;
mod text;

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock};

use num::{BigInt, BigRational, Integer, One, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub use poly::cyclotomic_polynomial;
pub use roots::{RootOfUnityGroup, RootsOutcome};

/// Largest prime for which a full discrete-logarithm table is built.
pub const DLOG_TABLE_LIMIT: u64 = 1_000_000;

/// Which field a scalar lives in.
///
/// `Cyclotomic(1)` and `Rationals` denote the same field and compare equal.
#[derive(Debug, Clone, Copy)]
pub enum FieldDescriptor {
    Rationals,
    /// GF(p) for a prime `p < 2^31`.
    PrimeField(u32),
    /// ℚ(ζ_m) for a conductor `m >= 1`.
    Cyclotomic(u32),
}

impl FieldDescriptor {
    pub fn normalized(self) -> Self {
        match self {
            FieldDescriptor::Cyclotomic(1) => FieldDescriptor::Rationals,
            d => d,
        }
    }

    pub fn characteristic(self) -> u32 {
        match self {
            FieldDescriptor::PrimeField(p) => p,
            _ => 0,
        }
    }

    fn key(self) -> (u8, u32) {
        match self.normalized() {
            FieldDescriptor::Rationals => (0, 1),
            FieldDescriptor::PrimeField(p) => (1, p),
            FieldDescriptor::Cyclotomic(m) => (2, m),
        }
    }
}

impl PartialEq for FieldDescriptor {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}

impl Eq for FieldDescriptor {}

impl Hash for FieldDescriptor {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.key().hash(state);
    }
}

impl PartialOrd for FieldDescriptor {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FieldDescriptor {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.normalized() {
            FieldDescriptor::Rationals => write!(f, "Q"),
            FieldDescriptor::PrimeField(p) => write!(f, "GF({p})"),
            FieldDescriptor::Cyclotomic(m) => write!(f, "Q(zeta_{m})"),
        }
    }
}

impl std::str::FromStr for FieldDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::InvalidField(format!("cannot parse field descriptor {s:?}"));
        if t == "Q" {
            return Ok(FieldDescriptor::Rationals);
        }
        if let Some(inner) = t.strip_prefix("GF(").and_then(|r| r.strip_suffix(')')) {
            return inner.parse().map(FieldDescriptor::PrimeField).map_err(|_| bad());
        }
        if let Some(inner) = t.strip_prefix("Q(zeta_").and_then(|r| r.strip_suffix(')')) {
            let m: u32 = inner.parse().map_err(|_| bad())?;
            return Ok(FieldDescriptor::Cyclotomic(m).normalized());
        }
        Err(bad())
    }
}

/// Canonical value representation; equality of values is equality of these.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) enum Repr {
    Rational(BigRational),
    Residue(u64),
    /// Coefficients of `1, z, ..., z^{deg-1}` reduced modulo `Φ_m`.
    Cyclotomic(Vec<BigRational>),
}

struct PrimeData {
    p: u64,
    generator: u64,
    /// `log[x] = e` with `generator^e = x`, for `p <= DLOG_TABLE_LIMIT`.
    log: Option<Vec<u32>>,
}

struct CycloData {
    m: u32,
    phi: Vec<BigInt>,
}

enum Backend {
    Rational,
    Prime(PrimeData),
    Cyclotomic(CycloData),
}

struct FieldInner {
    desc: FieldDescriptor,
    backend: Backend,
    /// Exponent lookup for the root-of-unity group of characteristic-0 fields.
    unity_log: OnceLock<HashMap<Repr, u64>>,
}

/// Shareable field handle.
#[derive(Clone)]
pub struct Field {
    inner: Arc<FieldInner>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Field({})", self.inner.desc)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.inner.desc.fmt(f)
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner.desc == other.inner.desc
    }
}

impl Eq for Field {}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
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

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

impl PrimeData {
    fn new(p: u64) -> Self {
        let factors = prime_factors(p - 1);
        let generator = (1..p)
            .find(|&g| factors.iter().all(|q| pow_mod(g, (p - 1) / q, p) != 1))
            .expect("a prime field has a primitive root");
        let log = (p <= DLOG_TABLE_LIMIT).then(|| {
            let mut table = vec![0u32; p as usize];
            let mut x = 1u64;
            for e in 0..p - 1 {
                table[x as usize] = e as u32;
                x = x * generator % p;
            }
            table
        });
        PrimeData { p, generator, log }
    }

    /// Discrete logarithm of a nonzero residue to the base `generator`.
    fn dlog(&self, x: u64) -> u64 {
        if let Some(table) = &self.log {
            return table[x as usize] as u64;
        }
        // Baby-step giant-step.
        let order = self.p - 1;
        let m = (order as f64).sqrt().ceil() as u64 + 1;
        let mut baby = HashMap::with_capacity(m as usize);
        let mut cur = 1u64;
        for j in 0..m {
            baby.entry(cur).or_insert(j);
            cur = cur * self.generator % self.p;
        }
        let factor = pow_mod(pow_mod(self.generator, m, self.p), self.p - 2, self.p);
        let mut gamma = x;
        for i in 0..=m {
            if let Some(j) = baby.get(&gamma) {
                return (i * m + j) % order;
            }
            gamma = gamma * factor % self.p;
        }
        unreachable!("generator is primitive, every residue has a logarithm")
    }
}

impl Field {
    /// Builds a field handle; rejects non-prime `p`, `p >= 2^31` and `m = 0`.
    pub fn new(desc: FieldDescriptor) -> Result<Field> {
        let desc = desc.normalized();
        let backend = match desc {
            FieldDescriptor::Rationals => Backend::Rational,
            FieldDescriptor::PrimeField(p) => {
                if !is_prime(p as u64) {
                    return Err(Error::InvalidField(format!("{p} is not prime")));
                }
                if p as u64 >= 1 << 31 {
                    return Err(Error::InvalidField(format!("{p} exceeds 2^31")));
                }
                Backend::Prime(PrimeData::new(p as u64))
            }
            FieldDescriptor::Cyclotomic(0) => {
                return Err(Error::InvalidField("cyclotomic conductor must be >= 1".into()))
            }
            FieldDescriptor::Cyclotomic(m) => Backend::Cyclotomic(CycloData {
                m,
                phi: cyclotomic_polynomial(m),
            }),
        };
        Ok(Field {
            inner: Arc::new(FieldInner {
                desc,
                backend,
                unity_log: OnceLock::new(),
            }),
        })
    }

    pub fn rationals() -> Field {
        Field::new(FieldDescriptor::Rationals).unwrap()
    }

    pub fn prime(p: u32) -> Result<Field> {
        Field::new(FieldDescriptor::PrimeField(p))
    }

    pub fn cyclotomic(m: u32) -> Result<Field> {
        Field::new(FieldDescriptor::Cyclotomic(m))
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        self.inner.desc
    }

    pub fn characteristic(&self) -> u32 {
        self.inner.desc.characteristic()
    }

    /// Number of elements for finite fields.
    pub fn size(&self) -> Option<u64> {
        match &self.inner.backend {
            Backend::Prime(pd) => Some(pd.p),
            _ => None,
        }
    }

    /// Degree over the prime field.
    pub fn degree(&self) -> usize {
        match &self.inner.backend {
            Backend::Cyclotomic(c) => c.phi.len() - 1,
            _ => 1,
        }
    }

    /// The modulus `Φ_m` of a cyclotomic field, ascending coefficients.
    pub fn cyclotomic_modulus(&self) -> Option<&[BigInt]> {
        match &self.inner.backend {
            Backend::Cyclotomic(c) => Some(&c.phi),
            _ => None,
        }
    }

    pub(crate) fn wrap(&self, repr: Repr) -> Scalar {
        Scalar {
            field: self.clone(),
            repr,
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        self.from_rational(&BigRational::from_integer(BigInt::from(v)))
            .expect("integers embed in every field")
    }

    /// Embeds a rational number; fails in GF(p) when `p` divides the denominator.
    pub fn from_rational(&self, q: &BigRational) -> Result<Scalar> {
        let repr = match &self.inner.backend {
            Backend::Rational => Repr::Rational(q.clone()),
            Backend::Prime(pd) => {
                let p = BigInt::from(pd.p);
                let num = q.numer().mod_floor(&p).to_u64().unwrap();
                let den = q.denom().mod_floor(&p).to_u64().unwrap();
                if den == 0 {
                    return Err(Error::DivisionByZero);
                }
                Repr::Residue(num * pow_mod(den, pd.p - 2, pd.p) % pd.p)
            }
            Backend::Cyclotomic(c) => {
                let mut v = vec![BigRational::zero(); c.phi.len() - 1];
                v[0] = q.clone();
                Repr::Cyclotomic(v)
            }
        };
        Ok(self.wrap(repr))
    }

    /// The residue class of `v` in GF(p).
    pub fn residue(&self, v: u64) -> Option<Scalar> {
        match &self.inner.backend {
            Backend::Prime(pd) => Some(self.wrap(Repr::Residue(v % pd.p))),
            _ => None,
        }
    }

    /// The distinguished primitive `m`-th root of unity `z` of ℚ(ζ_m), `m >= 2`.
    pub fn zeta(&self) -> Option<Scalar> {
        match &self.inner.backend {
            Backend::Cyclotomic(c) => {
                let deg = c.phi.len() - 1;
                let mut v = vec![BigRational::zero(); deg + 1];
                v[1] = BigRational::one();
                Some(self.wrap(Repr::Cyclotomic(poly::reduce(v, &c.phi))))
            }
            _ => None,
        }
    }

    /// All elements of a finite field, in residue order.
    pub fn elements(&self) -> Option<Vec<Scalar>> {
        match &self.inner.backend {
            Backend::Prime(pd) => Some((0..pd.p).map(|r| self.wrap(Repr::Residue(r))).collect()),
            _ => None,
        }
    }

    /// Builds an element of ℚ(ζ_m) from coefficients of powers of `z`; any
    /// length is accepted and reduced modulo `Φ_m`.
    pub fn from_coefficients(&self, coeffs: Vec<BigRational>) -> Result<Scalar> {
        match &self.inner.backend {
            Backend::Cyclotomic(c) => Ok(self.wrap(Repr::Cyclotomic(poly::reduce(coeffs, &c.phi)))),
            _ => {
                let mut coeffs = coeffs;
                poly::trim(&mut coeffs);
                match coeffs.len() {
                    0 => Ok(self.zero()),
                    1 => self.from_rational(&coeffs[0]),
                    _ => Err(Error::Parse(format!("{self} has no element z"))),
                }
            }
        }
    }

    fn check(&self, other: &Field) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::FieldMismatch {
                left: self.to_string(),
                right: other.to_string(),
            })
        }
    }

    fn add_repr(&self, a: &Repr, b: &Repr) -> Repr {
        match (&self.inner.backend, a, b) {
            (Backend::Rational, Repr::Rational(x), Repr::Rational(y)) => Repr::Rational(x + y),
            (Backend::Prime(pd), Repr::Residue(x), Repr::Residue(y)) => Repr::Residue((x + y) % pd.p),
            (Backend::Cyclotomic(_), Repr::Cyclotomic(x), Repr::Cyclotomic(y)) => {
                Repr::Cyclotomic(x.iter().zip(y).map(|(u, v)| u + v).collect())
            }
            _ => unreachable!("representation does not match backend"),
        }
    }

    fn neg_repr(&self, a: &Repr) -> Repr {
        match (&self.inner.backend, a) {
            (Backend::Rational, Repr::Rational(x)) => Repr::Rational(-x),
            (Backend::Prime(pd), Repr::Residue(x)) => Repr::Residue((pd.p - x) % pd.p),
            (Backend::Cyclotomic(_), Repr::Cyclotomic(x)) => {
                Repr::Cyclotomic(x.iter().map(|u| -u).collect())
            }
            _ => unreachable!("representation does not match backend"),
        }
    }

    fn mul_repr(&self, a: &Repr, b: &Repr) -> Repr {
        match (&self.inner.backend, a, b) {
            (Backend::Rational, Repr::Rational(x), Repr::Rational(y)) => Repr::Rational(x * y),
            (Backend::Prime(pd), Repr::Residue(x), Repr::Residue(y)) => Repr::Residue(x * y % pd.p),
            (Backend::Cyclotomic(c), Repr::Cyclotomic(x), Repr::Cyclotomic(y)) => {
                Repr::Cyclotomic(poly::reduce(poly::mul(x, y), &c.phi))
            }
            _ => unreachable!("representation does not match backend"),
        }
    }

    fn inv_repr(&self, a: &Repr) -> Result<Repr> {
        match (&self.inner.backend, a) {
            (Backend::Rational, Repr::Rational(x)) => {
                if x.is_zero() {
                    Err(Error::DivisionByZero)
                } else {
                    Ok(Repr::Rational(x.recip()))
                }
            }
            (Backend::Prime(pd), Repr::Residue(x)) => {
                if *x == 0 {
                    Err(Error::DivisionByZero)
                } else {
                    Ok(Repr::Residue(pow_mod(*x, pd.p - 2, pd.p)))
                }
            }
            (Backend::Cyclotomic(c), Repr::Cyclotomic(x)) => poly::inverse_mod(x, &c.phi)
                .map(Repr::Cyclotomic)
                .ok_or(Error::DivisionByZero),
            _ => unreachable!("representation does not match backend"),
        }
    }

    pub(crate) fn dlog_residue(&self, x: u64) -> Option<u64> {
        match &self.inner.backend {
            Backend::Prime(pd) if !x.is_multiple_of(pd.p) => Some(pd.dlog(x % pd.p)),
            _ => None,
        }
    }
}

/// An exact field element together with its field.
#[derive(Clone)]
pub struct Scalar {
    field: Field,
    repr: Repr,
}

impl Scalar {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Rational(x) => x.is_zero(),
            Repr::Residue(x) => *x == 0,
            Repr::Cyclotomic(v) => v.iter().all(Zero::is_zero),
        }
    }

    pub fn is_one(&self) -> bool {
        *self == self.field.one()
    }

    /// The value as a rational number, when it lies in ℚ (characteristic 0 only).
    pub fn to_rational(&self) -> Option<BigRational> {
        match &self.repr {
            Repr::Rational(x) => Some(x.clone()),
            Repr::Cyclotomic(v) => v[1..].iter().all(Zero::is_zero).then(|| v[0].clone()),
            Repr::Residue(_) => None,
        }
    }

    /// The residue in `0..p` of a GF(p) element.
    pub fn residue(&self) -> Option<u64> {
        match &self.repr {
            Repr::Residue(x) => Some(*x),
            _ => None,
        }
    }

    /// Coefficients over the power basis `1, z, …` of a cyclotomic element.
    pub fn coefficients(&self) -> Option<&[BigRational]> {
        match &self.repr {
            Repr::Cyclotomic(v) => Some(v),
            _ => None,
        }
    }

    pub fn checked_add(&self, rhs: &Scalar) -> Result<Scalar> {
        self.field.check(&rhs.field)?;
        Ok(self.field.wrap(self.field.add_repr(&self.repr, &rhs.repr)))
    }

    pub fn checked_sub(&self, rhs: &Scalar) -> Result<Scalar> {
        self.field.check(&rhs.field)?;
        let neg = self.field.neg_repr(&rhs.repr);
        Ok(self.field.wrap(self.field.add_repr(&self.repr, &neg)))
    }

    pub fn checked_mul(&self, rhs: &Scalar) -> Result<Scalar> {
        self.field.check(&rhs.field)?;
        Ok(self.field.wrap(self.field.mul_repr(&self.repr, &rhs.repr)))
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Scalar> {
        self.field.check(&rhs.field)?;
        let inv = self.field.inv_repr(&rhs.repr)?;
        Ok(self.field.wrap(self.field.mul_repr(&self.repr, &inv)))
    }

    pub fn inv(&self) -> Result<Scalar> {
        Ok(self.field.wrap(self.field.inv_repr(&self.repr)?))
    }

    pub fn square(&self) -> Scalar {
        self * self
    }

    pub fn pow(&self, mut exp: u64) -> Scalar {
        let mut acc = self.field.one();
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = base.square();
            }
        }
        acc
    }

    /// `self^exp` for signed exponents; negative powers of zero fail.
    pub fn pow_signed(&self, exp: i64) -> Result<Scalar> {
        if exp >= 0 {
            Ok(self.pow(exp as u64))
        } else {
            Ok(self.inv()?.pow(exp.unsigned_abs()))
        }
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.repr == other.repr
    }
}

impl Eq for Scalar {}

impl Hash for Scalar {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.descriptor().hash(state);
        self.repr.hash(state);
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Total order used for deterministic output: by field, then by the canonical
/// representation (rational value, residue, or coefficient vector).
impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        self.field
            .descriptor()
            .cmp(&other.field.descriptor())
            .then_with(|| self.repr.cmp(&other.repr))
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {}", self, self.field)
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{}", e))
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);
binop!(Div, div, checked_div);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.field.wrap(self.field.neg_repr(&self.repr))
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(s: &str) -> Scalar {
        Field::rationals().parse(s).unwrap()
    }

    #[test]
    fn descriptor_parsing_and_equality() {
        assert_eq!("Q".parse::<FieldDescriptor>().unwrap(), FieldDescriptor::Rationals);
        assert_eq!("GF(7)".parse::<FieldDescriptor>().unwrap(), FieldDescriptor::PrimeField(7));
        assert_eq!(
            "Q(zeta_7)".parse::<FieldDescriptor>().unwrap(),
            FieldDescriptor::Cyclotomic(7)
        );
        assert_eq!(FieldDescriptor::Cyclotomic(1), FieldDescriptor::Rationals);
        assert_eq!(FieldDescriptor::Cyclotomic(1).to_string(), "Q");
        assert!("GF7".parse::<FieldDescriptor>().is_err());
    }

    #[test]
    fn field_construction_errors() {
        assert!(matches!(Field::prime(8), Err(Error::InvalidField(_))));
        assert!(matches!(Field::prime(1), Err(Error::InvalidField(_))));
        assert!(matches!(Field::cyclotomic(0), Err(Error::InvalidField(_))));
        assert_eq!(Field::prime(7).unwrap().size(), Some(7));
        assert_eq!(Field::cyclotomic(3).unwrap().degree(), 2);
        assert_eq!(Field::cyclotomic(1).unwrap(), Field::rationals());
        let phi3: Vec<i64> = Field::cyclotomic(3)
            .unwrap()
            .cyclotomic_modulus()
            .unwrap()
            .iter()
            .map(|c| c.to_i64().unwrap())
            .collect();
        assert_eq!(phi3, vec![1, 1, 1]);
    }

    #[test]
    fn basic_arithmetic() {
        assert_eq!(&q("1/2") + &q("1/3"), q("5/6"));
        let gf7 = Field::prime(7).unwrap();
        assert_eq!(gf7.from_i64(2).inv().unwrap(), gf7.from_i64(4));
        assert_eq!(gf7.from_i64(-1).residue(), Some(6));
        let k = Field::cyclotomic(3).unwrap();
        let z = k.zeta().unwrap();
        let expected = &(-k.one()) - &z;
        assert_eq!(&z * &z, expected);
        assert_eq!(z.pow(3), k.one());
    }

    #[test]
    fn division_by_zero_and_mismatch() {
        assert_eq!(q("0").inv().unwrap_err(), Error::DivisionByZero);
        let gf5 = Field::prime(5).unwrap();
        assert_eq!(gf5.zero().inv().unwrap_err(), Error::DivisionByZero);
        let k = Field::cyclotomic(5).unwrap();
        assert_eq!(k.zero().inv().unwrap_err(), Error::DivisionByZero);
        assert!(matches!(
            q("1").checked_add(&gf5.one()),
            Err(Error::FieldMismatch { .. })
        ));
        assert_eq!(gf5.from_rational(&BigRational::new(1.into(), 5.into())).unwrap_err(), Error::DivisionByZero);
    }

    #[test]
    fn cyclotomic_inverse_roundtrip() {
        let k = Field::cyclotomic(7).unwrap();
        let x = k.parse("2 + z - 3/4*z^5").unwrap();
        let y = x.inv().unwrap();
        assert!((&x * &y).is_one());
    }

    #[test]
    fn bsgs_matches_table() {
        // 1000003 is prime and exceeds the table limit.
        let big = Field::prime(1_000_003).unwrap();
        for v in [2u64, 3, 999_999, 123_456] {
            let e = big.dlog_residue(v).unwrap();
            let g = match &big.inner.backend {
                Backend::Prime(pd) => pd.generator,
                _ => unreachable!(),
            };
            assert_eq!(pow_mod(g, e, 1_000_003), v);
        }
    }

    fn arb_field() -> impl Strategy<Value = Field> {
        prop_oneof![
            Just(Field::rationals()),
            Just(Field::prime(7).unwrap()),
            Just(Field::prime(13).unwrap()),
            Just(Field::cyclotomic(3).unwrap()),
            Just(Field::cyclotomic(7).unwrap()),
            Just(Field::cyclotomic(12).unwrap()),
        ]
    }

    fn arb_elem(field: Field) -> impl Strategy<Value = Scalar> {
        let deg = field.degree();
        prop::collection::vec((-5i64..=5, 1i64..=4), deg).prop_map(move |cs| {
            let coeffs = cs
                .into_iter()
                .map(|(n, d)| BigRational::new(n.into(), d.into()))
                .collect::<Vec<_>>();
            match field.descriptor() {
                FieldDescriptor::PrimeField(_) => field
                    .from_rational(&BigRational::from_integer(coeffs[0].numer().clone()))
                    .unwrap(),
                _ => field.from_coefficients(coeffs).unwrap(),
            }
        })
    }

    fn arb_triple() -> impl Strategy<Value = (Scalar, Scalar, Scalar)> {
        arb_field().prop_flat_map(|f| (arb_elem(f.clone()), arb_elem(f.clone()), arb_elem(f)))
    }

    proptest! {
        #[test]
        fn field_axioms((a, b, c) in arb_triple()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert!((&a - &a).is_zero());
            prop_assert_eq!(&(&a + &b) + &c, &(&c + &a) + &b);
            if !a.is_zero() {
                prop_assert!((&a * &a.inv().unwrap()).is_one());
                prop_assert_eq!(&(&b / &a) * &a, b.clone());
            }
        }
    }
}

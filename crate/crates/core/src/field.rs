//! Coefficient fields.
//!
//! All algebra in this crate is exact. Two fields are provided: the binary
//! field [`Gf2`] (the default) and the rationals [`Rational`], backed by
//! arbitrary-precision integers.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// Runtime tag for the coefficient field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
pub enum FieldKind {
    #[default]
    #[serde(rename = "gf2")]
    Gf2,
    #[serde(rename = "q")]
    Rational,
}

impl FieldKind {
    pub fn tag(self) -> &'static str {
        match self {
            FieldKind::Gf2 => "gf2",
            FieldKind::Rational => "q",
        }
    }
}

impl fmt::Display for FieldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for FieldKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "gf2" | "GF2" | "f2" => Ok(FieldKind::Gf2),
            "q" | "Q" | "rational" => Ok(FieldKind::Rational),
            other => Err(format!("unknown field `{other}` (expected gf2 or q)")),
        }
    }
}

/// A field element with exact arithmetic.
pub trait Field:
    Clone + PartialEq + Eq + fmt::Debug + fmt::Display + Send + Sync + 'static
{
    const KIND: FieldKind;

    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self) -> Self;
    /// Image of an integer under the canonical ring map.
    fn from_i64(v: i64) -> Self;
    /// Parse the canonical string form produced by `Display`.
    fn parse(s: &str) -> Option<Self>;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    /// `self -= a * b`
    fn sub_mul_assign(&mut self, a: &Self, b: &Self) {
        *self = self.sub(&a.mul(b));
    }

    fn div(&self, rhs: &Self) -> Self {
        self.mul(&rhs.inv())
    }
}

/// Element of the two-element field.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Gf2(bool);

impl Gf2 {
    pub const ZERO: Gf2 = Gf2(false);
    pub const ONE: Gf2 = Gf2(true);

    pub fn new(bit: bool) -> Self {
        Gf2(bit)
    }

    pub fn bit(self) -> bool {
        self.0
    }
}

impl fmt::Debug for Gf2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", u8::from(self.0))
    }
}

impl fmt::Display for Gf2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", u8::from(self.0))
    }
}

impl Field for Gf2 {
    const KIND: FieldKind = FieldKind::Gf2;

    fn zero() -> Self {
        Gf2(false)
    }
    fn one() -> Self {
        Gf2(true)
    }
    fn is_zero(&self) -> bool {
        !self.0
    }
    fn add(&self, rhs: &Self) -> Self {
        Gf2(self.0 ^ rhs.0)
    }
    fn sub(&self, rhs: &Self) -> Self {
        Gf2(self.0 ^ rhs.0)
    }
    fn mul(&self, rhs: &Self) -> Self {
        Gf2(self.0 & rhs.0)
    }
    fn neg(&self) -> Self {
        *self
    }
    fn inv(&self) -> Self {
        assert!(self.0, "inverse of zero in GF(2)");
        *self
    }
    fn from_i64(v: i64) -> Self {
        Gf2(v.rem_euclid(2) == 1)
    }
    fn parse(s: &str) -> Option<Self> {
        match s.trim() {
            "0" => Some(Gf2(false)),
            "1" => Some(Gf2(true)),
            _ => None,
        }
    }
    fn sub_mul_assign(&mut self, a: &Self, b: &Self) {
        self.0 ^= a.0 & b.0;
    }
}

/// Exact rational number, always in lowest terms with a positive denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numer: i64, denom: i64) -> Self {
        Rational(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn as_big(&self) -> &BigRational {
        &self.0
    }
}

impl From<BigRational> for Rational {
    fn from(v: BigRational) -> Self {
        Rational(v)
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl Field for Rational {
    const KIND: FieldKind = FieldKind::Rational;

    fn zero() -> Self {
        Rational(BigRational::zero())
    }
    fn one() -> Self {
        Rational(BigRational::one())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn add(&self, rhs: &Self) -> Self {
        Rational(&self.0 + &rhs.0)
    }
    fn sub(&self, rhs: &Self) -> Self {
        Rational(&self.0 - &rhs.0)
    }
    fn mul(&self, rhs: &Self) -> Self {
        Rational(&self.0 * &rhs.0)
    }
    fn neg(&self) -> Self {
        Rational(-&self.0)
    }
    fn inv(&self) -> Self {
        assert!(!self.0.is_zero(), "inverse of zero rational");
        Rational(self.0.recip())
    }
    fn from_i64(v: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(v)))
    }
    fn parse(s: &str) -> Option<Self> {
        let s = s.trim();
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.parse::<BigInt>().ok()?, d.parse::<BigInt>().ok()?),
            None => (s.parse::<BigInt>().ok()?, BigInt::one()),
        };
        if d.is_zero() {
            return None;
        }
        Some(Rational(BigRational::new(n, d)))
    }
    fn sub_mul_assign(&mut self, a: &Self, b: &Self) {
        if a.0.is_zero() || b.0.is_zero() {
            return;
        }
        self.0 -= &a.0 * &b.0;
    }
}

impl Rational {
    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf2_arithmetic() {
        let (z, o) = (Gf2::zero(), Gf2::one());
        assert_eq!(o.add(&o), z);
        assert_eq!(o.mul(&o), o);
        assert_eq!(o.neg(), o);
        assert_eq!(Gf2::from_i64(-3), o);
        assert_eq!(Gf2::from_i64(4), z);
    }

    #[test]
    fn rationals_stay_normalized() {
        let a = Rational::new(2, -4);
        assert_eq!(a.to_string(), "-1/2");
        assert_eq!(a.denom(), &BigInt::from(2));
        let b = a.add(&Rational::new(3, 2));
        assert_eq!(b.to_string(), "1");
        assert_eq!(Rational::parse("6/4"), Some(Rational::new(3, 2)));
        assert_eq!(Rational::parse("1/0"), None);
    }

    #[test]
    fn field_kind_parses() {
        assert_eq!("gf2".parse::<FieldKind>().unwrap(), FieldKind::Gf2);
        assert_eq!("q".parse::<FieldKind>().unwrap(), FieldKind::Rational);
        assert!("z".parse::<FieldKind>().is_err());
    }
}

//! Exact arithmetic for the two shipped idempotent semifields.
//!
//! Every other module is generic over [`Semifield`]. The two instances are
//! the Booleans [`Boolean`] (`or`, `and`) and the max-plus tropical numbers
//! over the rationals [`Tropical`] (`max`, `+`, with `-inf` as zero).
//! Both are totally ordered by the natural order `a <= b  <=>  a + b = b`,
//! which is what `Ord` implements for them.
//!
//! [`Scalar`] is the dynamically tagged form used at parse boundaries, where
//! mixing semifields is a runtime error rather than a type error.

use alloc::string::ToString;
use core::fmt;
use core::hash::Hash;
use core::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};

/// Which semifield a value or a file belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SemifieldKind {
    /// `{0, 1}` with or/and.
    Boolean,
    /// `Q ∪ {-inf}` with max/+.
    TropicalRational,
}

impl SemifieldKind {
    pub fn tag(self) -> &'static str {
        match self {
            SemifieldKind::Boolean => "B",
            SemifieldKind::TropicalRational => "TQ",
        }
    }
}

impl fmt::Display for SemifieldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for SemifieldKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "B" => Ok(SemifieldKind::Boolean),
            "TQ" => Ok(SemifieldKind::TropicalRational),
            other => Err(Error::ParseScalar(alloc::format!("unknown semifield {other}"))),
        }
    }
}

/// An idempotent semifield with a total natural order.
///
/// Implementations must keep values canonical so that `==` is semantic
/// equality; all algorithms in this crate rely on exact comparisons.
pub trait Semifield:
    Clone + Eq + Ord + Hash + fmt::Debug + fmt::Display + FromStr<Err = Error> + Send + Sync + 'static
{
    const KIND: SemifieldKind;

    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    /// Multiplicative inverse, `None` exactly for zero.
    fn inv(&self) -> Option<Self>;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn div(&self, rhs: &Self) -> Result<Self> {
        rhs.inv().map(|r| self.mul(&r)).ok_or(Error::DivisionByZero)
    }

    /// Natural order: `a <= b` iff `a + b = b`.
    fn natural_le(&self, rhs: &Self) -> bool {
        self.add(rhs) == *rhs
    }

    fn sum<'a, I>(items: I) -> Self
    where
        I: IntoIterator<Item = &'a Self>,
    {
        items.into_iter().fold(Self::zero(), |acc, x| acc.add(x))
    }

    fn product<'a, I>(items: I) -> Self
    where
        I: IntoIterator<Item = &'a Self>,
    {
        items.into_iter().fold(Self::one(), |acc, x| acc.mul(x))
    }

    fn into_scalar(self) -> Scalar;
    fn from_scalar(s: Scalar) -> Result<Self>;
}

/// The Boolean semifield `{0, 1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Boolean(pub bool);

impl Boolean {
    pub const ZERO: Boolean = Boolean(false);
    pub const ONE: Boolean = Boolean(true);
}

impl Semifield for Boolean {
    const KIND: SemifieldKind = SemifieldKind::Boolean;

    fn zero() -> Self {
        Boolean::ZERO
    }
    fn one() -> Self {
        Boolean::ONE
    }
    fn is_zero(&self) -> bool {
        !self.0
    }
    fn add(&self, rhs: &Self) -> Self {
        Boolean(self.0 | rhs.0)
    }
    fn mul(&self, rhs: &Self) -> Self {
        Boolean(self.0 & rhs.0)
    }
    fn inv(&self) -> Option<Self> {
        self.0.then_some(Boolean::ONE)
    }
    fn into_scalar(self) -> Scalar {
        Scalar::Boolean(self)
    }
    fn from_scalar(s: Scalar) -> Result<Self> {
        match s {
            Scalar::Boolean(b) => Ok(b),
            Scalar::Tropical(_) => Err(Error::MixedSemifield {
                left: SemifieldKind::Boolean,
                right: SemifieldKind::TropicalRational,
            }),
        }
    }
}

impl fmt::Display for Boolean {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.0 { "1" } else { "0" })
    }
}

impl FromStr for Boolean {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "0" => Ok(Boolean::ZERO),
            "1" => Ok(Boolean::ONE),
            other => Err(Error::ParseScalar(other.to_string())),
        }
    }
}

/// Max-plus tropical numbers over the rationals.
///
/// The variant order makes the derived `Ord` the natural order, with
/// `NegInf` as the bottom element.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tropical {
    #[default]
    NegInf,
    Finite(BigRational),
}

impl Tropical {
    pub fn from_int(v: i64) -> Self {
        Tropical::Finite(BigRational::from_integer(BigInt::from(v)))
    }

    /// `numer / denom`; panics on a zero denominator.
    pub fn from_ratio(numer: i64, denom: i64) -> Self {
        Tropical::Finite(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn finite(&self) -> Option<&BigRational> {
        match self {
            Tropical::NegInf => None,
            Tropical::Finite(q) => Some(q),
        }
    }
}

impl From<Boolean> for Tropical {
    /// The embedding `B ⊂ T`: one ↦ 0, zero ↦ -inf.
    fn from(b: Boolean) -> Self {
        if b.0 {
            Tropical::one()
        } else {
            Tropical::NegInf
        }
    }
}

impl Semifield for Tropical {
    const KIND: SemifieldKind = SemifieldKind::TropicalRational;

    fn zero() -> Self {
        Tropical::NegInf
    }
    fn one() -> Self {
        Tropical::Finite(BigRational::zero())
    }
    fn is_zero(&self) -> bool {
        matches!(self, Tropical::NegInf)
    }
    fn add(&self, rhs: &Self) -> Self {
        if self >= rhs {
            self.clone()
        } else {
            rhs.clone()
        }
    }
    fn mul(&self, rhs: &Self) -> Self {
        match (self, rhs) {
            (Tropical::Finite(a), Tropical::Finite(b)) => Tropical::Finite(a + b),
            _ => Tropical::NegInf,
        }
    }
    fn inv(&self) -> Option<Self> {
        self.finite().map(|q| Tropical::Finite(-q))
    }
    fn is_one(&self) -> bool {
        self.finite().is_some_and(|q| q.is_zero())
    }
    fn into_scalar(self) -> Scalar {
        Scalar::Tropical(self)
    }
    fn from_scalar(s: Scalar) -> Result<Self> {
        match s {
            Scalar::Tropical(t) => Ok(t),
            Scalar::Boolean(_) => Err(Error::MixedSemifield {
                left: SemifieldKind::TropicalRational,
                right: SemifieldKind::Boolean,
            }),
        }
    }
}

impl fmt::Display for Tropical {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tropical::NegInf => f.write_str("-inf"),
            // Ratio prints "p" when the denominator is one, "p/q" otherwise.
            Tropical::Finite(q) => write!(f, "{q}"),
        }
    }
}

impl FromStr for Tropical {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "-inf" {
            return Ok(Tropical::NegInf);
        }
        let bad = || Error::ParseScalar(s.to_string());
        let (numer, denom) = match s.split_once('/') {
            Some((p, q)) => (p, q),
            None => (s, "1"),
        };
        let numer: BigInt = numer.parse().map_err(|_| bad())?;
        let denom: BigInt = denom.parse().map_err(|_| bad())?;
        if denom.is_zero() {
            return Err(bad());
        }
        Ok(Tropical::Finite(BigRational::new(numer, denom)))
    }
}

/// A scalar tagged with its semifield.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Boolean(Boolean),
    Tropical(Tropical),
}

impl Scalar {
    pub fn kind(&self) -> SemifieldKind {
        match self {
            Scalar::Boolean(_) => SemifieldKind::Boolean,
            Scalar::Tropical(_) => SemifieldKind::TropicalRational,
        }
    }

    pub fn parse(kind: SemifieldKind, s: &str) -> Result<Self> {
        Ok(match kind {
            SemifieldKind::Boolean => Scalar::Boolean(s.parse()?),
            SemifieldKind::TropicalRational => Scalar::Tropical(s.parse()?),
        })
    }

    pub fn zero(kind: SemifieldKind) -> Self {
        match kind {
            SemifieldKind::Boolean => Scalar::Boolean(Boolean::ZERO),
            SemifieldKind::TropicalRational => Scalar::Tropical(Tropical::NegInf),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Boolean(b) => b.is_zero(),
            Scalar::Tropical(t) => t.is_zero(),
        }
    }

    fn mixed(&self, rhs: &Scalar) -> Error {
        Error::MixedSemifield {
            left: self.kind(),
            right: rhs.kind(),
        }
    }

    pub fn add(&self, rhs: &Scalar) -> Result<Scalar> {
        match (self, rhs) {
            (Scalar::Boolean(a), Scalar::Boolean(b)) => Ok(Scalar::Boolean(a.add(b))),
            (Scalar::Tropical(a), Scalar::Tropical(b)) => Ok(Scalar::Tropical(a.add(b))),
            _ => Err(self.mixed(rhs)),
        }
    }

    pub fn mul(&self, rhs: &Scalar) -> Result<Scalar> {
        match (self, rhs) {
            (Scalar::Boolean(a), Scalar::Boolean(b)) => Ok(Scalar::Boolean(a.mul(b))),
            (Scalar::Tropical(a), Scalar::Tropical(b)) => Ok(Scalar::Tropical(a.mul(b))),
            _ => Err(self.mixed(rhs)),
        }
    }

    pub fn div(&self, rhs: &Scalar) -> Result<Scalar> {
        match (self, rhs) {
            (Scalar::Boolean(a), Scalar::Boolean(b)) => Ok(Scalar::Boolean(a.div(b)?)),
            (Scalar::Tropical(a), Scalar::Tropical(b)) => Ok(Scalar::Tropical(a.div(b)?)),
            _ => Err(self.mixed(rhs)),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Boolean(b) => b.fmt(f),
            Scalar::Tropical(t) => t.fmt(f),
        }
    }
}

impl From<Boolean> for Scalar {
    fn from(b: Boolean) -> Self {
        Scalar::Boolean(b)
    }
}

impl From<Tropical> for Scalar {
    fn from(t: Tropical) -> Self {
        Scalar::Tropical(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn is_canonical(q: &BigRational) -> bool {
        use num_integer::Integer;
        use num_traits::One;
        q.numer().gcd(q.denom()).is_one() && q.denom() > &BigInt::zero()
    }

    fn t(s: &str) -> Tropical {
        s.parse().unwrap()
    }

    #[test]
    fn tropical_add_is_max() {
        assert_eq!(t("3").add(&t("-inf")), t("3"));
        assert_eq!(t("2").add(&t("5")), t("5"));
        assert_eq!(Boolean::ONE.add(&Boolean::ONE), Boolean::ONE);
    }

    #[test]
    fn tropical_mul_is_plus() {
        assert_eq!(t("2").mul(&t("5")), t("7"));
        assert_eq!(t("3").mul(&t("-inf")), t("-inf"));
        assert_eq!(Boolean::ONE.mul(&Boolean::ZERO), Boolean::ZERO);
    }

    #[test]
    fn division() {
        assert_eq!(t("7").div(&t("2")).unwrap(), t("5"));
        assert_eq!(t("-inf").div(&t("4")).unwrap(), t("-inf"));
        assert_eq!(Boolean::ONE.div(&Boolean::ONE).unwrap(), Boolean::ONE);
        assert_eq!(t("1").div(&t("-inf")), Err(Error::DivisionByZero));
        assert_eq!(Boolean::ONE.div(&Boolean::ZERO), Err(Error::DivisionByZero));
    }

    #[test]
    fn literals_round_trip_in_lowest_terms() {
        assert_eq!(t("-10/4").to_string(), "-5/2");
        assert_eq!(t("6/3").to_string(), "2");
        assert_eq!(t("-inf").to_string(), "-inf");
        assert_eq!(t("4/-2"), t("-2"));
        assert!("1/0".parse::<Tropical>().is_err());
        assert!("inf".parse::<Tropical>().is_err());
        assert!("2".parse::<Boolean>().is_err());
        assert_eq!("1".parse::<Boolean>().unwrap(), Boolean::ONE);
    }

    #[test]
    fn mixed_scalars_are_rejected() {
        let b = Scalar::Boolean(Boolean::ONE);
        let q = Scalar::Tropical(t("1"));
        assert!(matches!(b.add(&q), Err(Error::MixedSemifield { .. })));
        assert!(matches!(q.mul(&b), Err(Error::MixedSemifield { .. })));
        assert!(matches!(q.div(&b), Err(Error::MixedSemifield { .. })));
        assert_eq!(q.add(&q).unwrap(), q);
        assert!(Boolean::from_scalar(q).is_err());
    }

    #[test]
    fn natural_order_matches_ord() {
        assert!(t("-inf").natural_le(&t("-3")));
        assert!(t("1/2").natural_le(&t("1")));
        assert!(!t("1").natural_le(&t("1/2")));
        assert!(Boolean::ZERO.natural_le(&Boolean::ONE));
    }

    fn tropical() -> impl Strategy<Value = Tropical> {
        prop_oneof![
            1 => Just(Tropical::NegInf),
            6 => (-40i64..40, 1i64..7).prop_map(|(p, q)| Tropical::from_ratio(p, q)),
        ]
    }

    proptest! {
        #[test]
        fn semiring_axioms(a in tropical(), b in tropical(), c in tropical()) {
            prop_assert_eq!(a.add(&b), b.add(&a));
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            prop_assert_eq!(a.add(&a), a.clone());
            prop_assert_eq!(a.mul(&Tropical::zero()), Tropical::zero());
            prop_assert_eq!(a.mul(&Tropical::one()), a.clone());
        }

        #[test]
        fn natural_order_is_total(a in tropical(), b in tropical()) {
            prop_assert!(a.natural_le(&b) || b.natural_le(&a));
            prop_assert_eq!(a.natural_le(&b), a <= b);
        }

        #[test]
        fn div_mul_round_trip(a in tropical(), b in tropical()) {
            prop_assume!(!b.is_zero());
            prop_assert_eq!(a.div(&b).unwrap().mul(&b), a.clone());
            if let Some(q) = a.finite() {
                prop_assert!(is_canonical(q));
            }
        }

        #[test]
        fn boolean_axioms(a: bool, b: bool, c: bool) {
            let (a, b, c) = (Boolean(a), Boolean(b), Boolean(c));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            prop_assert_eq!(a.add(&a), a);
            prop_assert_eq!(a.natural_le(&b), a <= b);
        }
    }
}

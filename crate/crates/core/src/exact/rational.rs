//! Exact rational numbers.
//!
//! Values that fit in a pair of `i64` are kept inline and combined through
//! `i128` intermediates; anything larger is promoted to a `BigRational` and
//! demoted again as soon as it fits. Both representations are always fully
//! reduced with a positive denominator, so structural equality is numeric
//! equality.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseRationalError {
    #[error("empty rational string")]
    Empty,
    #[error("malformed rational {0:?}: expected \"p\", \"p/q\" or an exact decimal")]
    Malformed(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
}

#[derive(Clone)]
enum Repr {
    /// `den > 0`, `gcd(|num|, den) == 1`, `num != i64::MIN`.
    Small { num: i64, den: i64 },
    /// Reduced, and never representable as `Small`.
    Big(BigRational),
}

/// An exact fraction with arbitrary precision.
#[derive(Clone)]
pub struct Rational(Repr);

impl Rational {
    pub fn zero() -> Self {
        Rational(Repr::Small { num: 0, den: 1 })
    }

    pub fn one() -> Self {
        Rational(Repr::Small { num: 1, den: 1 })
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_i128(n as i128, 1)
    }

    /// Builds `num / den`. Panics if `den == 0`.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_i128(num as i128, den as i128)
    }

    pub fn from_bigints(num: BigInt, den: BigInt) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        Self::from_big(BigRational::new(num, den))
    }

    fn from_i128(mut num: i128, mut den: i128) -> Self {
        debug_assert!(den != 0);
        if den < 0 {
            num = -num;
            den = -den;
        }
        let g = num.gcd(&den);
        if g > 1 {
            num /= g;
            den /= g;
        }
        if num > i64::MIN as i128 && num <= i64::MAX as i128 && den <= i64::MAX as i128 {
            Rational(Repr::Small {
                num: num as i64,
                den: den as i64,
            })
        } else {
            Rational(Repr::Big(BigRational::new_raw(num.into(), den.into())))
        }
    }

    fn from_big(r: BigRational) -> Self {
        // BigRational::new reduces and fixes the sign; new_raw callers reduce themselves.
        if let (Some(n), Some(d)) = (r.numer().to_i64(), r.denom().to_i64()) {
            if n != i64::MIN {
                return Rational(Repr::Small { num: n, den: d });
            }
        }
        Rational(Repr::Big(r))
    }

    fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small { num, den } => BigRational::new_raw(BigInt::from(*num), BigInt::from(*den)),
            Repr::Big(b) => b.clone(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match &self.0 {
            Repr::Small { num, .. } => BigInt::from(*num),
            Repr::Big(b) => b.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match &self.0 {
            Repr::Small { den, .. } => BigInt::from(*den),
            Repr::Big(b) => b.denom().clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small { num: 0, .. })
    }

    pub fn is_one(&self) -> bool {
        matches!(self.0, Repr::Small { num: 1, den: 1 })
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small { den, .. } => *den == 1,
            Repr::Big(b) => b.is_integer(),
        }
    }

    pub fn signum(&self) -> i32 {
        match &self.0 {
            Repr::Small { num, .. } => num.signum() as i32,
            Repr::Big(b) => match b.numer().sign() {
                Sign::Minus => -1,
                Sign::NoSign => 0,
                Sign::Plus => 1,
            },
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn recip(&self) -> Self {
        Rational::one() / self
    }

    pub fn min(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }

    pub fn max(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    /// Lossy conversion, for display only.
    pub fn to_f64(&self) -> f64 {
        match &self.0 {
            Repr::Small { num, den } => *num as f64 / *den as f64,
            Repr::Big(b) => b.to_f64().unwrap_or(f64::NAN),
        }
    }

    /// Decimal rendering rounded half away from zero to `places` digits.
    pub fn to_decimal_string(&self, places: u32) -> String {
        let scale = BigInt::from(10u32).pow(places);
        let num = self.numer().abs() * &scale;
        let den = self.denom();
        let (q, r) = num.div_rem(&den);
        let q = if r * 2u32 >= den { q + 1u32 } else { q };
        let digits = q.to_string();
        let neg = self.is_negative() && !q.is_zero();
        let sign = if neg { "-" } else { "" };
        if places == 0 {
            return format!("{sign}{digits}");
        }
        let places = places as usize;
        let padded = if digits.len() <= places {
            format!("{}{}", "0".repeat(places + 1 - digits.len()), digits)
        } else {
            digits
        };
        let (int, frac) = padded.split_at(padded.len() - places);
        format!("{sign}{int}.{frac}")
    }

    fn add_ref(&self, other: &Self) -> Self {
        match (&self.0, &other.0) {
            (Repr::Small { num: n1, den: d1 }, Repr::Small { num: n2, den: d2 }) => {
                if d1 == d2 {
                    Self::from_i128(*n1 as i128 + *n2 as i128, *d1 as i128)
                } else {
                    Self::from_i128(
                        *n1 as i128 * *d2 as i128 + *n2 as i128 * *d1 as i128,
                        *d1 as i128 * *d2 as i128,
                    )
                }
            }
            _ => Self::from_big(self.to_big() + other.to_big()),
        }
    }

    fn sub_ref(&self, other: &Self) -> Self {
        match (&self.0, &other.0) {
            (Repr::Small { num: n1, den: d1 }, Repr::Small { num: n2, den: d2 }) => {
                if d1 == d2 {
                    Self::from_i128(*n1 as i128 - *n2 as i128, *d1 as i128)
                } else {
                    Self::from_i128(
                        *n1 as i128 * *d2 as i128 - *n2 as i128 * *d1 as i128,
                        *d1 as i128 * *d2 as i128,
                    )
                }
            }
            _ => Self::from_big(self.to_big() - other.to_big()),
        }
    }

    fn mul_ref(&self, other: &Self) -> Self {
        match (&self.0, &other.0) {
            (Repr::Small { num: n1, den: d1 }, Repr::Small { num: n2, den: d2 }) => {
                if *n1 == 0 || *n2 == 0 {
                    return Rational::zero();
                }
                Self::from_i128(*n1 as i128 * *n2 as i128, *d1 as i128 * *d2 as i128)
            }
            _ => Self::from_big(self.to_big() * other.to_big()),
        }
    }

    fn div_ref(&self, other: &Self) -> Self {
        assert!(!other.is_zero(), "division by zero");
        match (&self.0, &other.0) {
            (Repr::Small { num: n1, den: d1 }, Repr::Small { num: n2, den: d2 }) => {
                Self::from_i128(*n1 as i128 * *d2 as i128, *d1 as i128 * *n2 as i128)
            }
            _ => Self::from_big(self.to_big() / other.to_big()),
        }
    }
}

impl Default for Rational {
    fn default() -> Self {
        Rational::zero()
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

impl From<i32> for Rational {
    fn from(n: i32) -> Self {
        Rational::from_integer(n as i64)
    }
}

impl From<BigRational> for Rational {
    fn from(r: BigRational) -> Self {
        Rational::from_big(r)
    }
}

impl From<&Rational> for BigRational {
    fn from(r: &Rational) -> Self {
        r.to_big()
    }
}

impl PartialEq for Rational {
    fn eq(&self, other: &Self) -> bool {
        match (&self.0, &other.0) {
            (Repr::Small { num: n1, den: d1 }, Repr::Small { num: n2, den: d2 }) => {
                n1 == n2 && d1 == d2
            }
            (Repr::Big(a), Repr::Big(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for Rational {}

impl Hash for Rational {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match &self.0 {
            Repr::Small { num, den } => {
                0u8.hash(state);
                num.hash(state);
                den.hash(state);
            }
            Repr::Big(b) => {
                1u8.hash(state);
                b.hash(state);
            }
        }
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small { num: n1, den: d1 }, Repr::Small { num: n2, den: d2 }) => {
                (*n1 as i128 * *d2 as i128).cmp(&(*n2 as i128 * *d1 as i128))
            }
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small { num, den: 1 } => write!(f, "{num}"),
            Repr::Small { num, den } => write!(f, "{num}/{den}"),
            Repr::Big(b) if b.is_integer() => write!(f, "{}", b.numer()),
            Repr::Big(b) => write!(f, "{}/{}", b.numer(), b.denom()),
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn all_digits(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit())
}

impl FromStr for Rational {
    type Err = ParseRationalError;

    /// Accepts `-?[0-9]+(/[1-9][0-9]*)?` and exact decimals `-?[0-9]+\.[0-9]+`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.is_empty() {
            return Err(ParseRationalError::Empty);
        }
        let malformed = || ParseRationalError::Malformed(s.to_string());
        let (neg, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s),
        };
        let (num, den) = if let Some((n, d)) = body.split_once('/') {
            if !all_digits(n) || !all_digits(d) {
                return Err(malformed());
            }
            if d.starts_with('0') {
                return Err(if d.bytes().all(|b| b == b'0') {
                    ParseRationalError::ZeroDenominator(s.to_string())
                } else {
                    malformed()
                });
            }
            (n.parse::<BigInt>().map_err(|_| malformed())?, d.parse::<BigInt>().map_err(|_| malformed())?)
        } else if let Some((int, frac)) = body.split_once('.') {
            if !all_digits(int) || !all_digits(frac) {
                return Err(malformed());
            }
            let digits = format!("{int}{frac}");
            let num = digits.parse::<BigInt>().map_err(|_| malformed())?;
            (num, BigInt::from(10u32).pow(frac.len() as u32))
        } else {
            if !all_digits(body) {
                return Err(malformed());
            }
            (body.parse::<BigInt>().map_err(|_| malformed())?, BigInt::one())
        };
        let num = if neg { -num } else { num };
        Ok(Rational::from_bigints(num, den))
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! forward_binop {
    ($Trait:ident, $method:ident, $inner:ident, $AssignTrait:ident, $assign:ident) => {
        impl $Trait<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                self.$inner(rhs)
            }
        }
        impl $Trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                self.$inner(&rhs)
            }
        }
        impl $Trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                self.$inner(rhs)
            }
        }
        impl $Trait<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                self.$inner(&rhs)
            }
        }
        impl $AssignTrait<&Rational> for Rational {
            fn $assign(&mut self, rhs: &Rational) {
                *self = self.$inner(rhs);
            }
        }
        impl $AssignTrait<Rational> for Rational {
            fn $assign(&mut self, rhs: Rational) {
                *self = self.$inner(&rhs);
            }
        }
    };
}

forward_binop!(Add, add, add_ref, AddAssign, add_assign);
forward_binop!(Sub, sub, sub_ref, SubAssign, sub_assign);
forward_binop!(Mul, mul, mul_ref, MulAssign, mul_assign);
forward_binop!(Div, div, div_ref, DivAssign, div_assign);

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        match &self.0 {
            Repr::Small { num, den } => Rational(Repr::Small { num: -num, den: *den }),
            Repr::Big(b) => Rational::from_big(-b),
        }
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        -&self
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl Product for Rational {
    fn product<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::one(), |acc, x| acc * x)
    }
}

/// Shorthand for `Rational::new(num, den)`.
pub fn q(num: i64, den: i64) -> Rational {
    Rational::new(num, den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(n: &str, d: &str) -> BigRational {
        BigRational::new(n.parse().unwrap(), d.parse().unwrap())
    }

    #[test]
    fn canonical_form() {
        let r = Rational::new(6, -4);
        assert_eq!(r.to_string(), "-3/2");
        assert_eq!(r.denom(), BigInt::from(2));
        assert_eq!(Rational::new(0, -7), Rational::zero());
        assert_eq!(Rational::new(4, 2).to_string(), "2");
    }

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!("17/40".parse::<Rational>().unwrap(), q(17, 40));
        assert_eq!("0.425".parse::<Rational>().unwrap(), q(17, 40));
        assert_eq!("-0.5".parse::<Rational>().unwrap(), q(-1, 2));
        assert_eq!("-3".parse::<Rational>().unwrap(), q(-3, 1));
        assert_eq!("2/4".parse::<Rational>().unwrap(), q(1, 2));
        for bad in ["", "1/0", "1/02", "1.", ".5", "+1", "1e3", "0.1.2", "a/b", "1/-2"] {
            assert!(bad.parse::<Rational>().is_err(), "{bad:?} should not parse");
        }
        assert!(matches!("3/0".parse::<Rational>(), Err(ParseRationalError::ZeroDenominator(_))));
    }

    #[test]
    fn overflow_promotes_and_demotes() {
        let a = Rational::from_integer(i64::MAX);
        let b = &a + &a;
        assert_eq!(b.numer(), BigInt::from(i64::MAX) * 2);
        let c = &b - &a;
        assert_eq!(c, a);
        assert!(matches!(c.0, Repr::Small { .. }));
        let tiny = Rational::new(1, i64::MAX);
        let t2 = &tiny * &tiny;
        assert_eq!(&t2 * &Rational::from_integer(i64::MAX), tiny);
        // i64::MIN is never stored inline
        let m = Rational::from_integer(i64::MIN + 1) - Rational::one();
        assert_eq!(m.numer(), BigInt::from(i64::MIN));
        assert_eq!(-(-m.clone()), m);
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(q(2, 5).to_decimal_string(6), "0.400000");
        assert_eq!(q(-1, 3).to_decimal_string(6), "-0.333333");
        assert_eq!(q(2, 3).to_decimal_string(6), "0.666667");
        assert_eq!(q(-1, 10_000_000).to_decimal_string(6), "0.000000");
        assert_eq!(q(7, 2).to_decimal_string(0), "4");
    }

    fn small() -> impl Strategy<Value = Rational> {
        (-1000i64..1000, 1i64..1000).prop_map(|(n, d)| Rational::new(n, d))
    }

    fn wide() -> impl Strategy<Value = Rational> {
        (any::<i64>(), 1i64..i64::MAX).prop_map(|(n, d)| Rational::new(n.max(i64::MIN + 1), d))
    }

    proptest! {
        #[test]
        fn matches_bigrational(a in wide(), b in wide()) {
            let (ba, bb) = (a.to_big(), b.to_big());
            prop_assert_eq!((&a + &b).to_big(), &ba + &bb);
            prop_assert_eq!((&a - &b).to_big(), &ba - &bb);
            prop_assert_eq!((&a * &b).to_big(), &ba * &bb);
            if !b.is_zero() {
                prop_assert_eq!((&a / &b).to_big(), &ba / &bb);
            }
            prop_assert_eq!(a.cmp(&b), ba.cmp(&bb));
        }

        #[test]
        fn display_parse_round_trip(a in wide()) {
            let s = a.to_string();
            prop_assert_eq!(s.parse::<Rational>().unwrap(), a);
        }

        #[test]
        fn field_identities(a in small(), b in small(), c in small()) {
            prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
            prop_assert_eq!(&(&a - &b) + &b, a.clone());
            if !b.is_zero() {
                prop_assert_eq!(&(&a / &b) * &b, a.clone());
            }
        }
    }

    #[test]
    fn big_values_compare_with_small() {
        let huge = Rational::from(big("123456789012345678901234567890", "7"));
        assert!(huge > q(1, 1));
        assert!(-huge.clone() < q(-1, 1));
        assert_eq!(huge.signum(), 1);
    }
}

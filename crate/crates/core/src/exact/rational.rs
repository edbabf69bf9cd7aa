use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Exact ratio of two arbitrary-precision integers, always kept in lowest
/// terms with a positive denominator.
///
/// The text form is `num/den`, or just `num` when the denominator is 1. That
/// is also the serde representation.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

/// The four field operations, for callers that pick one at runtime.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl Rational {
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self> {
        let den = den.into();
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Rational(BigRational::new(num.into(), den)))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    /// Shorthand for small literals. Panics on a zero denominator.
    pub fn frac(num: i64, den: i64) -> Self {
        Self::new(num, den).expect("nonzero denominator")
    }

    pub fn int(n: i64) -> Self {
        Self::from_integer(n)
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    /// `1 / 10^k`.
    pub fn ten_pow_neg(k: u32) -> Self {
        Rational(BigRational::new(
            BigInt::one(),
            num_traits::pow(BigInt::from(10), k as usize),
        ))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Rational(self.0.recip()))
    }

    /// `1/self` for a value known to be nonzero.
    pub(crate) fn recip_unchecked(&self) -> Self {
        Rational(self.0.recip())
    }

    pub fn checked_div(&self, rhs: &Rational) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Rational(&self.0 / &rhs.0))
    }

    pub fn arith(op: ArithOp, x: &Rational, y: &Rational) -> Result<Self> {
        Ok(match op {
            ArithOp::Add => x + y,
            ArithOp::Sub => x - y,
            ArithOp::Mul => x * y,
            ArithOp::Div => x.checked_div(y)?,
        })
    }

    pub fn floor(&self) -> BigInt {
        self.0.numer().div_floor(self.0.denom())
    }

    pub fn ceil(&self) -> BigInt {
        let (q, r) = self.0.numer().div_mod_floor(self.0.denom());
        if r.is_zero() {
            q
        } else {
            q + 1
        }
    }

    pub fn pow(&self, exp: i32) -> Self {
        Rational(self.0.pow(exp))
    }

    pub fn half(&self) -> Self {
        Rational(&self.0 / BigInt::from(2))
    }

    pub fn min<'a>(&'a self, other: &'a Rational) -> &'a Rational {
        if self <= other {
            self
        } else {
            other
        }
    }

    pub fn max<'a>(&'a self, other: &'a Rational) -> &'a Rational {
        if self >= other {
            self
        } else {
            other
        }
    }

    /// Fixed-point decimal rendering with `digits` fractional digits, rounded
    /// half-to-even. Approximate by construction; never parse it back.
    /// `num/den` in lowest terms with a positive denominator, integers
    /// included (`3/1`). This is the serialized form.
    pub fn canonical(&self) -> String {
        format!("{}/{}", self.0.numer(), self.0.denom())
    }

    pub fn to_decimal(&self, digits: u32) -> String {
        let scale = num_traits::pow(BigInt::from(10), digits as usize);
        let scaled = &self.0.abs() * BigRational::from_integer(scale.clone());
        let floor = scaled.floor().to_integer();
        let frac = &scaled - BigRational::from_integer(floor.clone());
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let rounded = match frac.cmp(&half) {
            Ordering::Less => floor,
            Ordering::Greater => floor + 1,
            Ordering::Equal if floor.is_even() => floor,
            Ordering::Equal => floor + 1,
        };
        let (int_part, frac_part) = rounded.div_rem(&scale);
        let mut out = String::new();
        if self.is_negative() && !rounded.is_zero() {
            out.push('-');
        }
        out.push_str(&int_part.to_string());
        if digits > 0 {
            out.push('.');
            out.push_str(&format!("{:0>width$}", frac_part.to_string(), width = digits as usize));
        }
        out
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational::from_integer(n)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_err(input: &str, reason: &str) -> Error {
    Error::Parse {
        input: input.to_string(),
        reason: reason.to_string(),
    }
}

fn parse_int(input: &str, digits: &str) -> Result<BigInt> {
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(parse_err(input, "expected decimal digits"));
    }
    digits.parse::<BigInt>().map_err(|e| parse_err(input, &e.to_string()))
}

/// Accepts `p/q`, integers, and decimal literals such as `2.75`, `-0.5` or
/// `1e-6`. Decimals are read exactly: `2.7` is `27/10`.
impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let text = s.trim();
        let (negative, body) = match text.as_bytes().first() {
            Some(b'-') => (true, &text[1..]),
            Some(b'+') => (false, &text[1..]),
            _ => (false, text),
        };
        let value = if let Some((num, den)) = body.split_once('/') {
            let num = parse_int(s, num)?;
            let den = parse_int(s, den)?;
            Rational::new(num, den)?
        } else {
            let (mantissa, exponent) = match body.split_once(['e', 'E']) {
                Some((m, e)) => {
                    let exp: i32 = e.parse().map_err(|_| parse_err(s, "bad exponent"))?;
                    (m, exp)
                }
                None => (body, 0),
            };
            let (int_digits, frac_digits) = mantissa.split_once('.').unwrap_or((mantissa, ""));
            if int_digits.is_empty() && frac_digits.is_empty() {
                return Err(parse_err(s, "empty number"));
            }
            let all = format!("{int_digits}{frac_digits}");
            let mantissa_int = parse_int(s, &all)?;
            let shift = exponent - frac_digits.len() as i32;
            let ten = BigRational::from_integer(BigInt::from(10));
            Rational(BigRational::from_integer(mantissa_int) * ten.pow(shift))
        };
        Ok(if negative { -value } else { value })
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.canonical())
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational($trait::$method(&self.0, &rhs.0))
            }
        }
        impl $trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational($trait::$method(self.0, rhs.0))
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational($trait::$method(self.0, &rhs.0))
            }
        }
        impl $trait<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational($trait::$method(&self.0, rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
// Panics on a zero divisor, like the integer types; use `checked_div` for
// untrusted input.
forward_binop!(Div, div);

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        self.0 -= &rhs.0;
    }
}

impl MulAssign<&Rational> for Rational {
    fn mul_assign(&mut self, rhs: &Rational) {
        self.0 *= &rhs.0;
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl std::iter::Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl<'a> std::iter::Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        assert_eq!(Rational::new(2, 4).unwrap(), Rational::frac(1, 2));
        let r = Rational::new(-3, -6).unwrap();
        assert_eq!(r.to_string(), "1/2");
        assert_eq!(Rational::new(11, 4).unwrap().to_string(), "11/4");
        assert_eq!(Rational::new(3, -7).unwrap().to_string(), "-3/7");
        assert_eq!(Rational::new(4, 2).unwrap().to_string(), "2");
        assert!(matches!(Rational::new(1, 0), Err(Error::ZeroDenominator)));
    }

    #[test]
    fn arithmetic_examples() {
        let two_fifths = Rational::frac(2, 5);
        let s = Rational::arith(ArithOp::Add, &two_fifths, &two_fifths).unwrap();
        let s = Rational::arith(ArithOp::Add, &s, &Rational::frac(1, 5)).unwrap();
        assert_eq!(s, Rational::one());
        let z = Rational::arith(ArithOp::Mul, &Rational::frac(3, 4), &Rational::zero()).unwrap();
        assert!(z.is_zero());
        let third = Rational::arith(ArithOp::Div, &Rational::one(), &Rational::int(3)).unwrap();
        assert_eq!(third, Rational::frac(1, 3));
        assert!(matches!(
            Rational::arith(ArithOp::Div, &Rational::one(), &Rational::zero()),
            Err(Error::ZeroDenominator)
        ));
    }

    #[test]
    fn comparisons() {
        assert_eq!(Rational::frac(27, 10).cmp(&Rational::frac(11, 4)), Ordering::Less);
        assert_eq!(Rational::frac(1, 2).cmp(&Rational::frac(1, 2)), Ordering::Equal);
        assert_eq!(Rational::frac(2, 3).cmp(&Rational::frac(3, 4)), Ordering::Less);
    }

    #[test]
    fn parse_forms() {
        assert_eq!("2.75".parse::<Rational>().unwrap(), Rational::frac(11, 4));
        assert_eq!("2.7".parse::<Rational>().unwrap().to_string(), "27/10");
        assert_eq!("-3/7".parse::<Rational>().unwrap(), Rational::frac(-3, 7));
        assert_eq!("1/1000000".parse::<Rational>().unwrap(), Rational::ten_pow_neg(6));
        assert_eq!("1e-6".parse::<Rational>().unwrap(), Rational::ten_pow_neg(6));
        assert_eq!("-.5".parse::<Rational>().unwrap(), Rational::frac(-1, 2));
        assert_eq!("42".parse::<Rational>().unwrap(), Rational::int(42));
        assert!("1/0".parse::<Rational>().is_err());
        assert!("abc".parse::<Rational>().is_err());
        assert!("1/-2".parse::<Rational>().is_err());
        assert!("".parse::<Rational>().is_err());
    }

    #[test]
    fn floor_and_ceil() {
        assert_eq!(Rational::frac(7, 2).floor(), BigInt::from(3));
        assert_eq!(Rational::frac(7, 2).ceil(), BigInt::from(4));
        assert_eq!(Rational::frac(-7, 2).floor(), BigInt::from(-4));
        assert_eq!(Rational::frac(-7, 2).ceil(), BigInt::from(-3));
        assert_eq!(Rational::int(5).ceil(), BigInt::from(5));
    }

    #[test]
    fn decimal_rendering_half_even() {
        assert_eq!(Rational::frac(1, 3).to_decimal(6), "0.333333");
        assert_eq!(Rational::frac(2, 3).to_decimal(6), "0.666667");
        assert_eq!(Rational::frac(5, 2).to_decimal(0), "2");
        assert_eq!(Rational::frac(7, 2).to_decimal(0), "4");
        assert_eq!(Rational::frac(-7, 2).to_decimal(0), "-4");
        assert_eq!(Rational::frac(1, 8).to_decimal(2), "0.12");
        assert_eq!(Rational::frac(-1, 10_000_000).to_decimal(6), "0.000000");
        assert_eq!(Rational::int(12).to_decimal(3), "12.000");
    }

    #[test]
    fn serde_as_string() {
        let r = Rational::frac(-3, 7);
        let json = serde_json::to_string(&r).unwrap();
        assert_eq!(json, "\"-3/7\"");
        let back: Rational = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
    }
}

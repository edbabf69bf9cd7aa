use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::approx::{best_lower, best_upper};
use super::Rational;
use crate::error::{Error, Result};

/// Closed interval `[lo, hi]` of exact rationals enclosing one real value.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Interval {
    lo: Rational,
    hi: Rational,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self> {
        if lo > hi {
            return Err(Error::domain(format!("interval endpoints out of order: [{lo}, {hi}]")));
        }
        Ok(Interval { lo, hi })
    }

    pub fn point(x: Rational) -> Self {
        Interval { lo: x.clone(), hi: x }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn into_bounds(self) -> (Rational, Rational) {
        (self.lo, self.hi)
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi).half()
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    /// `self ⊆ other`.
    pub fn is_subset(&self, other: &Interval) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    pub fn intersects(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn add(&self, other: &Interval) -> Interval {
        Interval {
            lo: &self.lo + &other.lo,
            hi: &self.hi + &other.hi,
        }
    }

    pub fn sub(&self, other: &Interval) -> Interval {
        Interval {
            lo: &self.lo - &other.hi,
            hi: &self.hi - &other.lo,
        }
    }

    pub fn neg(&self) -> Interval {
        Interval {
            lo: -&self.hi,
            hi: -&self.lo,
        }
    }

    /// `x - self` for an exact `x`.
    pub fn sub_from(&self, x: &Rational) -> Interval {
        Interval {
            lo: x - &self.hi,
            hi: x - &self.lo,
        }
    }

    pub fn scale(&self, k: &Rational) -> Interval {
        let (a, b) = (&self.lo * k, &self.hi * k);
        if k.is_negative() {
            Interval { lo: b, hi: a }
        } else {
            Interval { lo: a, hi: b }
        }
    }

    /// Widens to endpoints with denominators at most `max_den`, rounding `lo`
    /// down and `hi` up to their best one-sided rational approximations.
    pub fn round_outward(&self, max_den: &BigInt) -> Result<Interval> {
        if max_den < &BigInt::from(1) {
            return Err(Error::domain("max_den must be at least 1"));
        }
        Ok(Interval {
            lo: best_lower(&self.lo, max_den),
            hi: best_upper(&self.hi, max_den),
        })
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(a: Rational, b: Rational) -> Interval {
        Interval::new(a, b).unwrap()
    }

    #[test]
    fn rejects_reversed() {
        assert!(Interval::new(Rational::one(), Rational::zero()).is_err());
    }

    #[test]
    fn round_outward_examples() {
        let third = iv(Rational::frac(1, 3), Rational::frac(1, 3));
        assert_eq!(third.round_outward(&BigInt::from(10)).unwrap(), third);

        let unit = iv(Rational::zero(), Rational::one());
        assert_eq!(unit.round_outward(&BigInt::from(1)).unwrap(), unit);

        let tiny = Rational::new(1, 1_000_000_000).unwrap();
        let pi_ish = Rational::frac(355, 113);
        let narrow = iv(&pi_ish - &tiny, &pi_ish + &tiny);
        let rounded = narrow.round_outward(&BigInt::from(113)).unwrap();
        assert!(narrow.is_subset(&rounded));
        assert!(rounded.lo().denom() <= &BigInt::from(113));
        assert!(rounded.hi().denom() <= &BigInt::from(113));

        assert!(unit.round_outward(&BigInt::from(0)).is_err());
    }

    #[test]
    fn arithmetic() {
        let a = iv(Rational::int(1), Rational::int(2));
        let b = iv(Rational::int(-1), Rational::int(3));
        assert_eq!(a.add(&b), iv(Rational::int(0), Rational::int(5)));
        assert_eq!(a.sub(&b), iv(Rational::int(-2), Rational::int(3)));
        assert_eq!(a.scale(&Rational::int(-2)), iv(Rational::int(-4), Rational::int(-2)));
        assert_eq!(a.sub_from(&Rational::int(5)), iv(Rational::int(3), Rational::int(4)));
        assert!(a.intersects(&b));
        assert!(!a.is_subset(&iv(Rational::int(0), Rational::frac(3, 2))));
    }
}

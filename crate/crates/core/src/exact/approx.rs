//! One-sided best rational approximations under a denominator budget.
//!
//! The search walks the Stern–Brocot tree with whole runs of identical moves
//! taken at once, which visits exactly the convergents and semiconvergents of
//! the continued fraction of `x`. When the next mediant would exceed the
//! budget, the two current bounds are Farey neighbours straddling `x`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use super::Rational;

struct Bracket {
    lo_num: BigInt,
    lo_den: BigInt,
    hi_num: BigInt,
    hi_den: BigInt,
}

/// Farey neighbours `lo < x < hi` with denominators `<= max_den`, for an `x`
/// whose own denominator exceeds `max_den`.
fn farey_bracket(x: &Rational, max_den: &BigInt) -> Bracket {
    let f = x.floor();
    let mut b = Bracket {
        lo_num: f.clone(),
        lo_den: BigInt::one(),
        hi_num: f + 1,
        hi_den: BigInt::one(),
    };
    loop {
        let med_den = &b.lo_den + &b.hi_den;
        if &med_den > max_den {
            return b;
        }
        let med = Rational::from(&b.lo_num + &b.hi_num) / Rational::from(med_den);
        if &med < x {
            // advance lo toward hi: lo_k = (lo + k*hi) stays below x while
            // k*(hi_num - x*hi_den) < x*lo_den - lo_num
            let gap_hi = Rational::from(b.hi_num.clone()) - x * Rational::from(b.hi_den.clone());
            let gap_lo = x * Rational::from(b.lo_den.clone()) - Rational::from(b.lo_num.clone());
            let by_value: BigInt = (gap_lo / gap_hi).ceil() - 1;
            let by_den = (Rational::from(max_den - &b.lo_den) / Rational::from(b.hi_den.clone())).floor();
            let k = by_value.min(by_den);
            b.lo_num += &k * &b.hi_num;
            b.lo_den += &k * &b.hi_den;
        } else {
            let gap_lo = x * Rational::from(b.lo_den.clone()) - Rational::from(b.lo_num.clone());
            let gap_hi = Rational::from(b.hi_num.clone()) - x * Rational::from(b.hi_den.clone());
            let by_value: BigInt = (gap_hi / gap_lo).ceil() - 1;
            let by_den = (Rational::from(max_den - &b.hi_den) / Rational::from(b.lo_den.clone())).floor();
            let k = by_value.min(by_den);
            b.hi_num += &k * &b.lo_num;
            b.hi_den += &k * &b.lo_den;
        }
    }
}

/// Largest rational `<= x` whose denominator is at most `max_den`.
pub fn best_lower(x: &Rational, max_den: &BigInt) -> Rational {
    if x.denom() <= max_den {
        return x.clone();
    }
    let b = farey_bracket(x, max_den);
    Rational::new(b.lo_num, b.lo_den).expect("positive denominator")
}

/// Smallest rational `>= x` whose denominator is at most `max_den`.
pub fn best_upper(x: &Rational, max_den: &BigInt) -> Rational {
    if x.denom() <= max_den {
        return x.clone();
    }
    let b = farey_bracket(x, max_den);
    Rational::new(b.hi_num, b.hi_den).expect("positive denominator")
}

/// `floor(x * scale)`.
pub fn floor_scaled(x: &Rational, scale: &BigInt) -> BigInt {
    (x.numer() * scale).div_floor(x.denom())
}

/// `ceil(x * scale)`.
pub fn ceil_scaled(x: &Rational, scale: &BigInt) -> BigInt {
    (x.numer() * scale).div_ceil(x.denom())
}

/// `floor(x * scale) / scale`.
pub fn floor_to_grid(x: &Rational, scale: &BigInt) -> Rational {
    Rational::new(floor_scaled(x, scale), scale.clone()).expect("positive scale")
}

/// `ceil(x * scale) / scale`.
pub fn ceil_to_grid(x: &Rational, scale: &BigInt) -> Rational {
    Rational::new(ceil_scaled(x, scale), scale.clone()).expect("positive scale")
}

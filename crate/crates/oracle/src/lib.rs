//! Reference values for tests, computed by routes that share nothing with
//! `lncert-core`: the artanh series for `ln`, the factorial series for `e`,
//! and plain big-integer powers.
//!
//! Everything here works on bare `num_rational::BigRational` so that a bug in
//! the core crate's number types cannot leak into the oracle.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Q = BigRational;

pub fn q(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

/// `2 * sum_{k=0}^{terms-1} t^(2k+1)/(2k+1)` together with the geometric tail
/// bound `2|t|^(2K+1) / ((2K+1)(1-t^2))` where `K = terms`.
fn artanh_series(t: &Q, terms: usize) -> (Q, Q) {
    assert!(t.abs() < Q::one(), "artanh series needs |t| < 1");
    let t2 = t * t;
    let mut power = t.clone();
    let mut sum = Q::zero();
    for k in 0..terms {
        sum += &power / Q::from_integer(BigInt::from(2 * k + 1));
        power *= &t2;
    }
    let two = Q::from_integer(BigInt::from(2));
    let odd = Q::from_integer(BigInt::from(2 * terms + 1));
    let tail = &two * power.abs() / (odd * (Q::one() - t2));
    (two * sum, tail)
}

/// Rigorous enclosure of `ln(2^m * y)` style reduced arguments.
fn ln_reduced(y: &Q, terms: usize) -> (Q, Q) {
    let t = (y - Q::one()) / (y + Q::one());
    let (s, tail) = artanh_series(&t, terms);
    if t.is_negative() {
        (&s - &tail, s)
    } else {
        (s.clone(), s + tail)
    }
}

/// Enclosure `[lo, hi]` of `ln x` using `terms` artanh terms for both the
/// reduced argument and `ln 2`.
pub fn ln_interval(x: &Q, terms: usize) -> (Q, Q) {
    assert!(x.is_positive(), "ln oracle needs x > 0");
    let two = Q::from_integer(BigInt::from(2));
    let upper = q(4, 3);
    let lower = q(2, 3);
    let mut y = x.clone();
    let mut m: i64 = 0;
    while y > upper {
        y /= &two;
        m += 1;
    }
    while y < lower {
        y *= &two;
        m -= 1;
    }
    let (ylo, yhi) = ln_reduced(&y, terms);
    if m == 0 {
        return (ylo, yhi);
    }
    let (l2lo, l2hi) = ln_reduced(&two, terms);
    let mq = Q::from_integer(BigInt::from(m));
    let (a, b) = (&mq * &l2lo, &mq * &l2hi);
    let (mlo, mhi) = if m > 0 { (a, b) } else { (b, a) };
    (mlo + ylo, mhi + yhi)
}

/// Enclosure of `ln x` with width at most `width`.
pub fn ln_interval_within(x: &Q, width: &Q) -> (Q, Q) {
    let mut terms = 4;
    loop {
        let (lo, hi) = ln_interval(x, terms);
        if &(&hi - &lo) <= width {
            return (lo, hi);
        }
        terms *= 2;
        assert!(terms < 1 << 16, "ln oracle failed to converge");
    }
}

/// `sum_{k=0}^{K} 1/k!`.
pub fn e_partial_sum(k_max: u32) -> Q {
    let mut fact = BigInt::one();
    let mut sum = Q::zero();
    for k in 0..=k_max {
        if k > 0 {
            fact *= BigInt::from(k);
        }
        sum += Q::new(BigInt::one(), fact.clone());
    }
    sum
}

/// Tail bound `sum_{k>K} 1/k! < 1/(K * K!)`, valid for `K >= 1`.
pub fn e_tail_bound(k_max: u32) -> Q {
    assert!(k_max >= 1);
    let mut fact = BigInt::one();
    for k in 1..=k_max {
        fact *= BigInt::from(k);
    }
    Q::new(BigInt::one(), fact * BigInt::from(k_max))
}

/// `[S_K, S_K + 1/(K*K!)]`, an enclosure of `e`.
pub fn e_interval(k_max: u32) -> (Q, Q) {
    let s = e_partial_sum(k_max);
    let t = e_tail_bound(k_max);
    (s.clone(), s + t)
}

/// Exact `b^a < a^b` for positive integers.
pub fn power_less(a: u32, b: u32) -> bool {
    let lhs = num_traits::pow(BigInt::from(b), a as usize);
    let rhs = num_traits::pow(BigInt::from(a), b as usize);
    lhs < rhs
}

/// `H_n` by direct summation.
pub fn harmonic(n: u64) -> Q {
    (1..=n).fold(Q::zero(), |acc, k| acc + q(1, k as i64))
}

/// Crude `f64` view, for messages only.
pub fn approx(x: &Q) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or(f64::NAN)
}

#![allow(dead_code)]

use lncert_core::Rational;
use lncert_oracle::Q;
use proptest::prelude::*;

pub fn big(r: &Rational) -> Q {
    r.to_string().parse().expect("num/den")
}

pub fn rat(s: &str) -> Rational {
    s.parse().expect("rational")
}

/// Positive rationals up to `max`, denominators up to 1000.
pub fn positive(max: i64) -> impl Strategy<Value = Rational> {
    (1..=1000i64).prop_flat_map(move |den| (1..=max * den, Just(den)).prop_map(|(n, d)| Rational::frac(n, d)))
}

/// `0 < a < b <= max`.
pub fn ordered_pair(max: i64) -> impl Strategy<Value = (Rational, Rational)> {
    (positive(max), positive(max))
        .prop_filter("distinct", |(a, b)| a != b)
        .prop_map(|(a, b)| if a < b { (a, b) } else { (b, a) })
}

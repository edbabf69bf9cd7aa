//! Shared inputs for the criterion benches.

use lncert_core::Rational;

/// Arguments spanning near-1 ratios to large ones.
pub fn ln_arguments() -> Vec<(&'static str, Rational)> {
    vec![
        ("101/100", Rational::frac(101, 100)),
        ("2", Rational::int(2)),
        ("22/7", Rational::frac(22, 7)),
        ("1000", Rational::int(1000)),
    ]
}

pub fn widths() -> Vec<(&'static str, Rational)> {
    vec![("1e-6", Rational::ten_pow_neg(6)), ("1e-12", Rational::ten_pow_neg(12))]
}

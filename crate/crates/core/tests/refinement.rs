mod common;

use common::{big, positive};
use lncert_core::ln::{ln_enclosure_with, ln_refinement, LnConfig};
use lncert_core::{ln_enclosure, Error, Rational};
use lncert_oracle::{ln_interval_within, q};
use num_bigint::BigInt;
use proptest::prelude::*;

fn r(n: i64, d: i64) -> Rational {
    Rational::frac(n, d)
}

#[test]
fn one_is_exact() {
    for eps in [r(1, 2), Rational::ten_pow_neg(20)] {
        let i = ln_enclosure(&Rational::one(), &eps).unwrap();
        assert_eq!((i.lo(), i.hi()), (&Rational::zero(), &Rational::zero()));
    }
}

#[test]
fn two_at_one_twelfth() {
    let i = ln_enclosure(&r(2, 1), &r(1, 12)).unwrap();
    assert!(i.lo() >= &r(2, 3) && i.hi() <= &r(3, 4));
    assert!(i.width() <= r(1, 12));
    let (lo, hi) = ln_interval_within(&q(2, 1), &q(1, 1 << 40));
    assert!(big(i.lo()) <= lo && hi <= big(i.hi()));
}

#[test]
fn reciprocal_is_negation() {
    let eps = r(1, 12);
    let a = ln_enclosure(&r(2, 1), &eps).unwrap();
    let b = ln_enclosure(&r(1, 2), &eps).unwrap();
    assert_eq!(b, a.neg());
}

#[test]
fn errors() {
    assert!(matches!(
        ln_enclosure(&Rational::zero(), &r(1, 10)),
        Err(Error::Domain(_))
    ));
    assert!(matches!(ln_enclosure(&r(-3, 1), &r(1, 10)), Err(Error::Domain(_))));
    assert!(matches!(
        ln_enclosure(&r(3, 1), &Rational::zero()),
        Err(Error::Domain(_))
    ));
    let tight = LnConfig {
        max_bisections: 3,
        ..LnConfig::default()
    };
    assert!(matches!(
        ln_enclosure_with(&r(1000, 1), &Rational::ten_pow_neg(12), &tight),
        Err(Error::Precision(_))
    ));
}

#[test]
fn bisection_order_is_deterministic() {
    let eps = Rational::ten_pow_neg(8);
    let a = ln_refinement(&r(355, 113), &eps, &LnConfig::default()).unwrap();
    let b = ln_refinement(&r(355, 113), &eps, &LnConfig::default()).unwrap();
    assert_eq!(a.partition, b.partition);
    assert_eq!(a.enclosure, b.enclosure);
}

#[test]
fn denominator_budget_widens_soundly() {
    let eps = Rational::ten_pow_neg(9);
    let cfg = LnConfig {
        max_den: Some(BigInt::from(1_000_000_000_000i64)),
        ..LnConfig::default()
    };
    let rounded = ln_enclosure_with(&r(7, 3), &eps, &cfg).unwrap();
    assert!(rounded.width() <= eps);
    let cap = BigInt::from(1_000_000_000_000i64);
    assert!(rounded.lo().denom() <= &cap && rounded.hi().denom() <= &cap);
    let (lo, hi) = ln_interval_within(&q(7, 3), &q(1, 1 << 50));
    assert!(big(rounded.lo()) <= lo && hi <= big(rounded.hi()));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn width_and_soundness(x in positive(50), k in 2u32..8) {
        let eps = Rational::ten_pow_neg(k);
        let i = ln_enclosure(&x, &eps).unwrap();
        prop_assert!(i.width() <= eps);
        let (lo, hi) = ln_interval_within(&big(&x), &q(1, 1 << 60));
        prop_assert!(big(i.lo()) <= hi && lo <= big(i.hi()));
    }

    #[test]
    fn additivity(x in positive(30), y in positive(30)) {
        let eps = Rational::ten_pow_neg(6);
        let xy = ln_enclosure(&(&x * &y), &eps).unwrap();
        let sum = ln_enclosure(&x, &eps).unwrap().add(&ln_enclosure(&y, &eps).unwrap());
        prop_assert!(xy.intersects(&sum));
    }

    #[test]
    fn tighter_eps_nests_around_truth(x in positive(20)) {
        let coarse = ln_enclosure(&x, &Rational::ten_pow_neg(3)).unwrap();
        let fine = ln_enclosure(&x, &Rational::ten_pow_neg(7)).unwrap();
        prop_assert!(coarse.intersects(&fine));
    }
}

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use super::{check_eps, params, refine_until, Certificate, ClaimKind, Policy, Step};
use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::ln::{ln_refinement, BoundMethod, BoundTerm};

/// `(2/(1+r), (1+1/r)/2)` for `r = a_n1 / a_n`, the bounds on
/// `ln(r) / (r - 1)`.
pub fn euler_limit_sandwich(a_n: &Rational, a_n1: &Rational) -> Result<(Rational, Rational)> {
    if !a_n.is_positive() || a_n1 <= a_n {
        return Err(Error::domain(format!("need 0 < a_n < a_n1, got {a_n} and {a_n1}")));
    }
    let r = a_n1 / a_n;
    Ok(sandwich_of_ratio(&r))
}

fn sandwich_of_ratio(r: &Rational) -> (Rational, Rational) {
    let one = Rational::one();
    let lower = Rational::int(2) / (&one + r);
    let upper = (&one + r.recip_unchecked()).half();
    (lower, upper)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EulerSequence {
    /// `A_n = n`.
    Identity,
    /// `A_n = n^2`.
    Square,
    /// Ratios `(2n+2)/(2n+1)`, so `A_n` grows like `sqrt(n)`.
    SqrtLike,
    /// `A_{n+1}/A_n` given directly for `n = 1, 2, ...`.
    ExplicitRatios(Vec<Rational>),
}

impl EulerSequence {
    fn ratio(&self, n: u64) -> Rational {
        let r = |k: u64| Rational::from(BigInt::from(k));
        match self {
            EulerSequence::Identity => r(n + 1) / r(n),
            EulerSequence::Square => (r(n + 1) / r(n)).pow(2),
            EulerSequence::SqrtLike => r(2 * n + 2) / r(2 * n + 1),
            EulerSequence::ExplicitRatios(v) => v[(n - 1) as usize].clone(),
        }
    }
}

impl fmt::Display for EulerSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EulerSequence::Identity => f.write_str("identity"),
            EulerSequence::Square => f.write_str("square"),
            EulerSequence::SqrtLike => f.write_str("sqrt-like"),
            EulerSequence::ExplicitRatios(v) => {
                f.write_str("ratios:")?;
                for (i, r) in v.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{r}")?;
                }
                Ok(())
            }
        }
    }
}

/// `identity`, `square`, `sqrt-like` or `ratios:R1,R2,...`.
impl FromStr for EulerSequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "identity" => Ok(EulerSequence::Identity),
            "square" => Ok(EulerSequence::Square),
            "sqrt-like" => Ok(EulerSequence::SqrtLike),
            _ => {
                let list = s.strip_prefix("ratios:").ok_or_else(|| Error::Parse {
                    input: s.to_string(),
                    reason: "expected identity, square, sqrt-like or ratios:R1,R2,...".to_string(),
                })?;
                let ratios = list.split(',').map(str::parse).collect::<Result<Vec<Rational>>>()?;
                Ok(EulerSequence::ExplicitRatios(ratios))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EulerRow {
    pub n: u64,
    pub ratio: Rational,
    pub lower: Rational,
    pub upper: Rational,
    pub gap: Rational,
    /// For the identity sequence: whether `n ln((n+1)/n)` was shown to lie
    /// strictly between the bounds.
    pub inside: Option<bool>,
}

impl EulerRow {
    pub fn certificate(&self) -> Certificate {
        let one = Rational::one();
        let terms = vec![
            BoundTerm::new(&one, &self.ratio, BoundMethod::MidpointLower).expect("ratio > 1"),
            BoundTerm::new(&one, &self.ratio, BoundMethod::TrapezoidUpper).expect("ratio > 1"),
        ];
        let mut config = BTreeMap::new();
        config.insert("arithmetic".to_string(), "exact".to_string());
        Certificate::assemble(
            ClaimKind::EulerLimitSandwich,
            format!("{} < ln(r)/(r-1) < {} for r = {}", self.lower, self.upper, self.ratio),
            params([
                ("n", Rational::from(BigInt::from(self.n))),
                ("ratio", self.ratio.clone()),
            ]),
            Vec::new(),
            terms,
            config,
        )
        .expect("sandwich terms are consistent")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EulerTable {
    pub sequence: EulerSequence,
    pub n_max: u64,
    pub rows: Vec<EulerRow>,
}

/// `1..=10`, the powers of ten up to `n_max`, and `n_max`.
fn sample_points(n_max: u64) -> Vec<u64> {
    let mut v: Vec<u64> = (1..=n_max.min(10)).collect();
    let mut p = 100u64;
    while p <= n_max {
        v.push(p);
        p = match p.checked_mul(10) {
            Some(q) => q,
            None => break,
        };
    }
    if v.last() != Some(&n_max) {
        v.push(n_max);
    }
    v
}

/// Shows `lower < n ln((n+1)/n) < upper` by refining the enclosure of the
/// logarithm until both comparisons resolve.
fn identity_inside(
    n: u64,
    r: &Rational,
    lower: &Rational,
    upper: &Rational,
    eps: &Rational,
    policy: &Policy,
) -> Result<Option<bool>> {
    let nr = Rational::from(BigInt::from(n));
    refine_until(eps, policy, |w| {
        let e = ln_refinement(r, w, &policy.ln)?;
        let lo = &nr * e.lower();
        let hi = &nr * e.upper();
        if &lo >= lower && &hi <= upper {
            Ok(Step::Done(true))
        } else if &hi <= lower || &lo >= upper {
            Ok(Step::Done(false))
        } else {
            Ok(Step::Refine(Some(e.enclosure.width())))
        }
    })
}

/// Sandwich rows for a sequence. Every ratio up to `n_max` is checked to
/// exceed `1`; rows are reported at the sample points.
pub fn euler_limit_demo(seq: &EulerSequence, n_max: u64, eps: &Rational, policy: &Policy) -> Result<EulerTable> {
    check_eps(eps)?;
    if n_max < 1 {
        return Err(Error::domain("n_max must be at least 1"));
    }
    let one = Rational::one();
    let points = match seq {
        EulerSequence::ExplicitRatios(v) => {
            if (v.len() as u64) < n_max {
                return Err(Error::domain(format!("{} ratios given, n_max is {n_max}", v.len())));
            }
            if let Some((i, r)) = v.iter().take(n_max as usize).enumerate().find(|(_, r)| *r <= &one) {
                return Err(Error::NonIncreasingSequence {
                    index: i + 1,
                    ratio: r.to_string(),
                });
            }
            (1..=n_max).collect()
        }
        _ => sample_points(n_max),
    };
    let mut rows = Vec::with_capacity(points.len());
    for n in points {
        let ratio = seq.ratio(n);
        if ratio <= one {
            return Err(Error::NonIncreasingSequence {
                index: n as usize,
                ratio: ratio.to_string(),
            });
        }
        let (lower, upper) = sandwich_of_ratio(&ratio);
        let inside = if *seq == EulerSequence::Identity {
            identity_inside(n, &ratio, &lower, &upper, eps, policy)?
        } else {
            None
        };
        rows.push(EulerRow {
            n,
            gap: &upper - &lower,
            ratio,
            lower,
            upper,
            inside,
        });
    }
    Ok(EulerTable {
        sequence: seq.clone(),
        n_max,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sequence_names_round_trip() {
        for text in ["identity", "square", "sqrt-like", "ratios:2,3/2"] {
            let seq: EulerSequence = text.parse().unwrap();
            assert_eq!(seq.to_string(), text);
        }
        assert_eq!("ratios:1.5".parse::<EulerSequence>().unwrap().to_string(), "ratios:3/2");
        assert!("cubic".parse::<EulerSequence>().is_err());
    }

    #[test]
    fn sandwich_at_two() {
        let (lo, hi) = euler_limit_sandwich(&Rational::one(), &Rational::int(2)).unwrap();
        assert_eq!(lo, Rational::frac(2, 3));
        assert_eq!(hi, Rational::frac(3, 4));
        assert!(euler_limit_sandwich(&Rational::int(2), &Rational::int(2)).is_err());
        assert!(euler_limit_sandwich(&Rational::zero(), &Rational::int(2)).is_err());
    }

    #[test]
    fn identity_rows() {
        let t = euler_limit_demo(
            &EulerSequence::Identity,
            1000,
            &Rational::ten_pow_neg(12),
            &Policy::default(),
        )
        .unwrap();
        for row in &t.rows {
            assert_eq!(row.inside, Some(true), "n = {}", row.n);
            let n = Rational::from(BigInt::from(row.n));
            let two = Rational::int(2);
            let closed = (&two * &n + Rational::one()) * (&two * &n + &two);
            assert_eq!(row.gap, closed.recip_unchecked());
            row.certificate().replay().unwrap();
        }
        assert_eq!(t.rows.last().unwrap().n, 1000);
    }

    #[test]
    fn explicit_ratios() {
        let t = euler_limit_demo(
            &EulerSequence::ExplicitRatios(vec![Rational::int(2)]),
            1,
            &Rational::ten_pow_neg(6),
            &Policy::default(),
        )
        .unwrap();
        assert_eq!(t.rows.len(), 1);
        assert_eq!(
            (t.rows[0].lower.clone(), t.rows[0].upper.clone()),
            (Rational::frac(2, 3), Rational::frac(3, 4))
        );
        let err = euler_limit_demo(
            &EulerSequence::ExplicitRatios(vec![Rational::int(2), Rational::one()]),
            2,
            &Rational::ten_pow_neg(6),
            &Policy::default(),
        )
        .unwrap_err();
        assert!(matches!(err, Error::NonIncreasingSequence { index: 2, .. }));
    }
}

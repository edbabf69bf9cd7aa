use std::collections::BTreeMap;

use super::{check_eps, params, refine_until, Certificate, ClaimKind, Evidence, Policy, Step};
use crate::error::{Error, Result};
use crate::exact::{Interval, Rational};
use crate::ln::{ln_refinement, BoundMethod, Partition};

/// Split points whose midpoint-lower sum is exactly `1`, so `e < 11/4`.
pub const E_UPPER_SPLITS: [i64; 4] = [4, 6, 9, 11];
/// Split points whose trapezoid-upper sum is below `1`, so `e > 27/10`.
pub const E_LOWER_SPLITS: [i64; 7] = [10, 12, 15, 18, 21, 24, 27];

fn fixed_upper_evidence() -> Evidence {
    Evidence::exact(
        Partition::from_integers(&E_UPPER_SPLITS).expect("valid partition"),
        BoundMethod::MidpointLower,
    )
}

fn fixed_lower_evidence() -> Evidence {
    Evidence::exact(
        Partition::from_integers(&E_LOWER_SPLITS).expect("valid partition"),
        BoundMethod::TrapezoidUpper,
    )
}

fn exact_config() -> BTreeMap<String, String> {
    let mut m = BTreeMap::new();
    m.insert("arithmetic".to_string(), "exact".to_string());
    m
}

/// The two fixed-partition certificates: `e < 11/4`, then `e > 27/10`.
pub fn certify_e_paper() -> (Certificate, Certificate) {
    let upper = Certificate::assemble(
        ClaimKind::EUpper,
        "ln(11/4) > 1, hence e < 11/4".to_string(),
        params([("target", Rational::frac(11, 4))]),
        vec![fixed_upper_evidence()],
        Vec::new(),
        exact_config(),
    )
    .expect("fixed certificate assembles");
    let lower = Certificate::assemble(
        ClaimKind::ELower,
        "ln(27/10) < 1, hence e > 27/10".to_string(),
        params([("target", Rational::frac(27, 10))]),
        vec![fixed_lower_evidence()],
        Vec::new(),
        exact_config(),
    )
    .expect("fixed certificate assembles");
    (upper, lower)
}

/// An enclosure of `e` together with the partitions proving each end.
#[derive(Debug, Clone)]
pub struct EEnclosure {
    pub interval: Interval,
    /// Upper sum for `ln(lo)`, at most `1`.
    pub(crate) below: Evidence,
    /// Lower sum for `ln(hi)`, at least `1`.
    pub(crate) above: Evidence,
    pub(crate) eps: Rational,
    pub(crate) policy: Policy,
}

impl EEnclosure {
    pub fn lo(&self) -> &Rational {
        self.interval.lo()
    }

    pub fn hi(&self) -> &Rational {
        self.interval.hi()
    }

    pub fn certificate(&self) -> Certificate {
        Certificate::assemble(
            ClaimKind::EEnclosure,
            format!("{} < e < {}", self.lo(), self.hi()),
            params([
                ("lo", self.lo().clone()),
                ("hi", self.hi().clone()),
                ("eps", self.eps.clone()),
            ]),
            vec![self.below.clone(), self.above.clone()],
            Vec::new(),
            self.policy.config(&self.eps),
        )
        .expect("enclosure evidence is consistent")
    }
}

enum Side {
    Below(Evidence),
    Above(Evidence),
}

/// Decides whether `t` lies below or above `e` by refining `ln t` until the
/// enclosure excludes `1`.
fn locate(t: &Rational, start: &Rational, policy: &Policy) -> Result<Side> {
    let found = refine_until(start, policy, |w| {
        let r = ln_refinement(t, w, &policy.ln)?;
        let one = Rational::one();
        // Grid sums of the recorded partitions never fall outside the
        // enclosure, so the certificate inherits each decision.
        if r.upper() < &one {
            let ev = Evidence::from_refinement(&r, BoundMethod::TrapezoidUpper).expect("t > 1");
            return Ok(Step::Done(Side::Below(ev)));
        }
        if r.lower() > &one {
            let ev = Evidence::from_refinement(&r, BoundMethod::MidpointLower).expect("t > 1");
            return Ok(Step::Done(Side::Above(ev)));
        }
        Ok(Step::Refine(None))
    })?;
    found.ok_or_else(|| {
        Error::Precision(format!(
            "could not place {t} relative to e within the bisection cap and refinement floor"
        ))
    })
}

/// An interval of width at most `eps` containing `e`, by exact bisection of
/// `[27/10, 11/4]`.
pub fn e_enclosure(eps: &Rational, policy: &Policy) -> Result<EEnclosure> {
    check_eps(eps)?;
    let mut lo = Rational::frac(27, 10);
    let mut hi = Rational::frac(11, 4);
    let mut below = fixed_lower_evidence();
    let mut above = fixed_upper_evidence();
    while &(&hi - &lo) > eps {
        let t = (&lo + &hi).half();
        let start = (&hi - &lo) / Rational::int(8);
        match locate(&t, &start, policy)? {
            Side::Below(ev) => {
                lo = t;
                below = ev;
            }
            Side::Above(ev) => {
                hi = t;
                above = ev;
            }
        }
    }
    Ok(EEnclosure {
        interval: Interval::new(lo, hi)?,
        below,
        above,
        eps: eps.clone(),
        policy: policy.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cert::Verdict;

    #[test]
    fn fixed_partition_certificates() {
        let (upper, lower) = certify_e_paper();
        assert_eq!(upper.total("lower_sum"), Some(&Rational::one()));
        assert_eq!(upper.verdict, Verdict::Certified);
        assert_eq!(lower.total("upper_sum"), Some(&Rational::frac(629, 630)));
        assert_eq!(lower.verdict, Verdict::Certified);
        upper.replay().unwrap();
        lower.replay().unwrap();
    }

    #[test]
    fn coarse_enclosure_is_fixed_interval() {
        let e = e_enclosure(&Rational::frac(1, 20), &Policy::default()).unwrap();
        assert_eq!(e.lo(), &Rational::frac(27, 10));
        assert_eq!(e.hi(), &Rational::frac(11, 4));
        let c = e.certificate();
        assert_eq!(c.verdict, Verdict::Certified);
        c.replay().unwrap();
    }

    #[test]
    fn refined_enclosure_replays() {
        let eps = Rational::ten_pow_neg(4);
        let e = e_enclosure(&eps, &Policy::default()).unwrap();
        assert!(e.interval.width() <= eps);
        let c = e.certificate();
        assert_eq!(c.verdict, Verdict::Certified);
        c.replay().unwrap();
        let back = Certificate::from_json(&c.to_json()).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn zero_eps_rejected() {
        assert!(matches!(
            e_enclosure(&Rational::zero(), &Policy::default()),
            Err(Error::Domain(_))
        ));
    }
}

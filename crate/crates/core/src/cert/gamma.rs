use std::cmp::Ordering;

use num_bigint::BigInt;
use rayon::prelude::*;

use super::derive::{harmonic_exact, sandwich_layout};
use super::{check_eps, params, refine_until, Certificate, ClaimKind, Evidence, Policy, Step};
use crate::error::{Error, Result};
use crate::exact::{Interval, Rational};
use crate::ln::{ln_refinement, BoundMethod, BoundTerm, LnRefinement, Partition};

/// `H_n = 1 + 1/2 + ... + 1/n`, summed exactly.
pub fn harmonic(n: u64) -> Result<Rational> {
    if n < 1 {
        return Err(Error::domain("harmonic number needs n >= 1"));
    }
    Ok(harmonic_exact(n))
}

fn rat(n: u64) -> Rational {
    Rational::from(BigInt::from(n))
}

/// Enclosures of `gamma_n = H_n - ln n`, `A_n = H_n - ln(n+1)` and
/// `Gamma_n = H_n - ln(n + 1/2)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaTriple {
    pub n: u64,
    pub gamma_n: Interval,
    pub a_n: Interval,
    pub big_gamma_n: Interval,
}

fn check_n(n: u64, eps: &Rational) -> Result<()> {
    check_eps(eps)?;
    if n < 1 {
        return Err(Error::domain("n must be at least 1"));
    }
    Ok(())
}

pub fn gamma_sequences(n: u64, eps: &Rational, policy: &Policy) -> Result<GammaTriple> {
    check_n(n, eps)?;
    let h = harmonic_exact(n);
    let nr = rat(n);
    let (ln_n, (ln_n1, ln_nh)) = rayon::join(
        || ln_refinement(&nr, eps, &policy.ln),
        || {
            rayon::join(
                || ln_refinement(&(&nr + Rational::one()), eps, &policy.ln),
                || ln_refinement(&(&nr + Rational::frac(1, 2)), eps, &policy.ln),
            )
        },
    );
    Ok(GammaTriple {
        n,
        gamma_n: ln_n?.enclosure.sub_from(&h),
        a_n: ln_n1?.enclosure.sub_from(&h),
        big_gamma_n: ln_nh?.enclosure.sub_from(&h),
    })
}

fn enclosure_parts(n: u64, eps: &Rational, policy: &Policy) -> Result<(LnRefinement, LnRefinement)> {
    check_n(n, eps)?;
    let nr = rat(n);
    let (up, down) = rayon::join(
        || ln_refinement(&(&nr + Rational::one()), eps, &policy.ln),
        || ln_refinement(&(&nr + Rational::frac(1, 2)), eps, &policy.ln),
    );
    Ok((up?, down?))
}

/// `[lower(A_n), upper(Gamma_n)]`, which contains Euler's constant.
pub fn gamma_enclosure(n: u64, eps: &Rational, policy: &Policy) -> Result<Interval> {
    let (ln_n1, ln_nh) = enclosure_parts(n, eps, policy)?;
    let h = harmonic_exact(n);
    Interval::new(&h - ln_n1.upper(), &h - ln_nh.lower())
}

/// Replayable form of [`gamma_enclosure`], certified when the interval lies
/// in `[1/2, 1)`.
pub fn gamma_enclosure_certificate(n: u64, eps: &Rational, policy: &Policy) -> Result<Certificate> {
    let (ln_n1, ln_nh) = enclosure_parts(n, eps, policy)?;
    let evidence = vec![
        Evidence::from_refinement(&ln_n1, BoundMethod::TrapezoidUpper).expect("n + 1 > 1"),
        Evidence::from_refinement(&ln_nh, BoundMethod::MidpointLower).expect("n + 1/2 > 1"),
    ];
    Certificate::assemble(
        ClaimKind::GammaEnclosure,
        format!("A_{n} < gamma < Gamma_{n}, inside [1/2, 1)"),
        params([("eps", eps.clone()), ("n", rat(n))]),
        evidence,
        Vec::new(),
        policy.config(eps),
    )
}

/// Resolves `ln x` against `target`, refining from width `eps` down to the
/// floor. `None` when it cannot be decided.
fn compare_ln(x: &Rational, target: &Rational, eps: &Rational, policy: &Policy) -> Result<Option<Ordering>> {
    if x == &Rational::one() {
        return Ok(Some(Rational::zero().cmp(target)));
    }
    refine_until(eps, policy, |w| {
        let r = ln_refinement(x, w, &policy.ln)?;
        Ok(if r.lower() >= target {
            Step::Done(Ordering::Greater)
        } else if r.upper() <= target {
            Step::Done(Ordering::Less)
        } else {
            Step::Refine(Some(r.enclosure.width()))
        })
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Outcome {
    Pass,
    Fail,
    Undecided,
}

impl Outcome {
    fn expect(got: Option<Ordering>, want: Ordering) -> Outcome {
        match got {
            None => Outcome::Undecided,
            Some(o) if o == want => Outcome::Pass,
            Some(_) => Outcome::Fail,
        }
    }

    fn and(self, other: Outcome) -> Outcome {
        match (self, other) {
            (Outcome::Fail, _) | (_, Outcome::Fail) => Outcome::Fail,
            (Outcome::Undecided, _) | (_, Outcome::Undecided) => Outcome::Undecided,
            _ => Outcome::Pass,
        }
    }
}

pub const GAMMA_CHECKS: [(&str, &str); 7] = [
    ("i", "gamma_n strictly decreasing"),
    ("ii", "A_n strictly increasing"),
    ("iii", "Gamma_n strictly decreasing"),
    ("iv", "A_n < Gamma_n < gamma_n"),
    ("v", "1/(2n+1) < gamma_n - Gamma_n < 1/(2n)"),
    ("vi", "Gamma_n > 1/2"),
    ("vii", "gamma_n < 1 for n >= 2"),
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaCheck {
    pub id: &'static str,
    pub description: &'static str,
    pub tested: u64,
    pub passed: u64,
}

/// A comparison that resolved the wrong way.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaFailure {
    pub check: &'static str,
    pub n: u64,
}

#[derive(Debug, Clone)]
pub struct GammaReport {
    pub n_max: u64,
    pub eps: Rational,
    pub checks: Vec<GammaCheck>,
    pub failures: Vec<GammaFailure>,
    /// `gamma_1 = H_1 - ln 1` equals `1` exactly.
    pub gamma_1_exact: bool,
    policy: Policy,
}

impl GammaReport {
    pub fn all_passed(&self) -> bool {
        self.failures.is_empty() && self.gamma_1_exact && self.checks.iter().all(|c| c.passed == c.tested)
    }

    /// Exact witness terms for each check, plus the outcome of the enclosure
    /// comparisons above.
    pub fn certificate(&self) -> Result<Certificate> {
        let n_max = self.n_max;
        let ints = Partition::new((1..=n_max).map(rat).collect())?;
        let evidence = vec![
            Evidence::exact(ints.clone(), BoundMethod::TrapezoidUpper),
            Evidence::exact(ints, BoundMethod::ChordLower),
        ];
        let loose = (1..=n_max)
            .flat_map(|n| sandwich_layout(n, n_max))
            .map(|(a, b, m)| BoundTerm::new(&a, &b, m))
            .collect::<Result<Vec<_>>>()?;
        Certificate::assemble(
            ClaimKind::GammaSandwich,
            format!("A_n < Gamma_n < gamma_n with the sandwich bounds for n <= {n_max}; gamma in [1/2, 1)"),
            params([
                ("enclosure_failures", rat(self.failures.len() as u64)),
                ("eps", self.eps.clone()),
                ("n_max", rat(n_max)),
            ]),
            evidence,
            loose,
            self.policy.config(&self.eps),
        )
    }
}

/// Upper and lower sums of `ln n` for `n = 1..=n_max+1` and of `ln(n + 1/2)`
/// for `n = 1..=n_max`, each of width at most `eps`, built from prefix sums
/// of step enclosures `ln((k+1)/k)`.
fn ln_table(n_max: u64, eps: &Rational, policy: &Policy) -> Result<(Vec<Interval>, Vec<Interval>)> {
    let c = Rational::from(harmonic_exact(n_max + 1).ceil());
    let steps: Vec<Interval> = (1..=n_max)
        .into_par_iter()
        .map(|k| {
            let budget = eps / &(Rational::int(2) * rat(k) * &c);
            let x = rat(k + 1) / rat(k);
            ln_refinement(&x, &budget, &policy.ln).map(|r| r.enclosure)
        })
        .collect::<Result<_>>()?;
    let halves: Vec<Interval> = (1..=n_max)
        .into_par_iter()
        .map(|n| {
            let x = rat(2 * n + 1) / rat(2 * n);
            ln_refinement(&x, &eps.half(), &policy.ln).map(|r| r.enclosure)
        })
        .collect::<Result<_>>()?;
    let mut ln_n = Vec::with_capacity(n_max as usize + 1);
    ln_n.push(Interval::point(Rational::zero()));
    for s in &steps {
        let next = ln_n.last().expect("seeded").add(s);
        ln_n.push(next);
    }
    let ln_nh = halves.iter().zip(&ln_n).map(|(h, l)| l.add(h)).collect();
    Ok((ln_n, ln_nh))
}

/// Runs the seven sandwich checks for every `n <= n_max`.
pub fn verify_gamma_sandwich(n_max: u64, eps: &Rational, policy: &Policy) -> Result<GammaReport> {
    check_eps(eps)?;
    if n_max < 2 {
        return Err(Error::domain("n_max must be at least 2"));
    }
    let (ln_n, ln_nh) = ln_table(n_max, eps, policy)?;
    let mut hs = Vec::with_capacity(n_max as usize);
    let mut h = Rational::zero();
    for n in 1..=n_max {
        h += &rat(n).recip_unchecked();
        hs.push(h.clone());
    }
    let half = Rational::frac(1, 2);
    let one = Rational::one();

    let per_n: Vec<Vec<(usize, Outcome)>> = (1..=n_max)
        .into_par_iter()
        .map(|n| -> Result<Vec<(usize, Outcome)>> {
            let idx = (n - 1) as usize;
            let hn = &hs[idx];
            let inv = rat(n + 1).recip_unchecked();
            let cmp = |x: Rational, t: &Rational| compare_ln(&x, t, eps, policy);
            let mut out = Vec::with_capacity(7);
            if n < n_max {
                out.push((0, Outcome::expect(cmp(rat(n + 1) / rat(n), &inv)?, Ordering::Greater)));
                out.push((1, Outcome::expect(cmp(rat(n + 2) / rat(n + 1), &inv)?, Ordering::Less)));
                out.push((
                    2,
                    Outcome::expect(cmp(rat(2 * n + 3) / rat(2 * n + 1), &inv)?, Ordering::Greater),
                ));
            }
            let zero = Rational::zero();
            let step = rat(2 * n + 1) / rat(2 * n);
            let iv = Outcome::expect(cmp(rat(2 * n + 2) / rat(2 * n + 1), &zero)?, Ordering::Greater)
                .and(Outcome::expect(cmp(step.clone(), &zero)?, Ordering::Greater));
            out.push((3, iv));
            let v = Outcome::expect(cmp(step.clone(), &rat(2 * n + 1).recip_unchecked())?, Ordering::Greater).and(
                Outcome::expect(cmp(step, &rat(2 * n).recip_unchecked())?, Ordering::Less),
            );
            out.push((4, v));
            let big_gamma = ln_nh[idx].sub_from(hn);
            let vi = if big_gamma.lo() > &half {
                Outcome::Pass
            } else {
                Outcome::expect(cmp(rat(n) + &half, &(hn - &half))?, Ordering::Less)
            };
            out.push((5, vi));
            if n >= 2 {
                let gamma = ln_n[idx].sub_from(hn);
                let vii = if gamma.hi() < &one {
                    Outcome::Pass
                } else {
                    Outcome::expect(cmp(rat(n), &(hn - &one))?, Ordering::Greater)
                };
                out.push((6, vii));
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;

    let mut checks: Vec<GammaCheck> = GAMMA_CHECKS
        .iter()
        .map(|&(id, description)| GammaCheck {
            id,
            description,
            tested: 0,
            passed: 0,
        })
        .collect();
    let mut failures = Vec::new();
    for (n, row) in (1..=n_max).zip(per_n) {
        for (i, outcome) in row {
            checks[i].tested += 1;
            match outcome {
                Outcome::Pass => checks[i].passed += 1,
                Outcome::Fail => failures.push(GammaFailure { check: checks[i].id, n }),
                Outcome::Undecided => {
                    return Err(Error::Precision(format!(
                        "check ({}) at n = {n} unresolved above the refinement floor",
                        checks[i].id
                    )))
                }
            }
        }
    }
    let gamma_1_exact = &hs[0] - ln_n[0].hi() == one && ln_n[0].width().is_zero();
    Ok(GammaReport {
        n_max,
        eps: eps.clone(),
        checks,
        failures,
        gamma_1_exact,
        policy: policy.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cert::Verdict;

    #[test]
    fn harmonic_values() {
        assert_eq!(harmonic(1).unwrap(), Rational::one());
        assert_eq!(harmonic(2).unwrap(), Rational::frac(3, 2));
        assert_eq!(harmonic(4).unwrap(), Rational::frac(25, 12));
        assert!(harmonic(0).is_err());
    }

    #[test]
    fn gamma_one_exact() {
        let t = gamma_sequences(1, &Rational::ten_pow_neg(6), &Policy::default()).unwrap();
        assert_eq!(t.gamma_n, Interval::point(Rational::one()));
    }

    #[test]
    fn small_sandwich() {
        let r = verify_gamma_sandwich(30, &Rational::ten_pow_neg(6), &Policy::default()).unwrap();
        assert!(r.all_passed(), "{:?}", r.failures);
        let c = r.certificate().unwrap();
        assert_eq!(c.verdict, Verdict::Certified);
        assert_eq!(c.total("witness_failures"), Some(&Rational::zero()));
        c.replay().unwrap();
    }

    #[test]
    fn enclosure_certificate() {
        let c = gamma_enclosure_certificate(10, &Rational::ten_pow_neg(6), &Policy::default()).unwrap();
        assert_eq!(c.verdict, Verdict::Certified);
        c.replay().unwrap();
    }
}

use std::fmt;

use super::e::{e_enclosure, EEnclosure};
use super::{check_eps, params, refine_until, Certificate, ClaimKind, Evidence, Policy, Step};
use crate::error::{Error, Result};
use crate::exact::{Interval, Rational};
use crate::ln::{ln_refinement, BoundMethod, LnRefinement};

/// The base `a` of `b^a < a^b`: a rational, or `e` itself.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PowerBase {
    Rational(Rational),
    E,
}

impl fmt::Display for PowerBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PowerBase::Rational(a) => write!(f, "{a}"),
            PowerBase::E => f.write_str("e"),
        }
    }
}

/// `[223/71, 22/7]`.
pub fn archimedes_pi() -> Interval {
    Interval::new(Rational::frac(223, 71), Rational::frac(22, 7)).expect("ordered")
}

/// Where `x` sits relative to `e`, by refining the enclosure of `e` from the
/// fixed-partition interval down to the floor.
fn compare_with_e(x: &Rational, policy: &Policy) -> Result<Option<std::cmp::Ordering>> {
    use std::cmp::Ordering;
    refine_until(&Rational::frac(1, 20), policy, |w| {
        let e = e_enclosure(w, policy)?;
        Ok(if x >= e.hi() {
            Step::Done(Ordering::Greater)
        } else if x < e.lo() {
            Step::Done(Ordering::Less)
        } else {
            Step::Refine(None)
        })
    })
}

fn ln_pair(x: &Rational, y: &Rational, w: &Rational, policy: &Policy) -> Result<(LnRefinement, LnRefinement)> {
    let (rx, ry) = rayon::join(|| ln_refinement(x, w, &policy.ln), || ln_refinement(y, w, &policy.ln));
    Ok((rx?, ry?))
}

fn evidence(r: &LnRefinement, method: BoundMethod) -> Evidence {
    Evidence::from_refinement(r, method).expect("argument above 1")
}

/// Certifies `b^a < a^b` for `e <= a < b`.
pub fn certify_power(a: &PowerBase, b: &Rational, eps: &Rational, policy: &Policy) -> Result<Certificate> {
    check_eps(eps)?;
    if !b.is_positive() {
        return Err(Error::domain(format!("b must be positive, got {b}")));
    }
    match a {
        PowerBase::Rational(a) => certify_rational_base(a, b, eps, policy),
        PowerBase::E => certify_e_base(b, eps, policy),
    }
}

fn certify_rational_base(a: &Rational, b: &Rational, eps: &Rational, policy: &Policy) -> Result<Certificate> {
    use std::cmp::Ordering;
    if b <= a {
        return Err(Error::domain(format!("need a < b, got a = {a}, b = {b}")));
    }
    match compare_with_e(a, policy)? {
        Some(Ordering::Less) => {
            return Err(Error::PreconditionRefuted(format!("a = {a} is below e")));
        }
        Some(_) => {}
        None => {
            return Err(Error::Precision(format!(
                "could not compare a = {a} with e above the floor"
            )))
        }
    }
    let statement = format!("{b}^{a} < {a}^{b}");
    let build = |evs: Vec<Evidence>, w: &Rational| {
        Certificate::assemble(
            ClaimKind::PowerInequality,
            statement.clone(),
            params([
                ("a", a.clone()),
                ("a_is_e", Rational::zero()),
                ("b", b.clone()),
                ("eps", w.clone()),
            ]),
            evs,
            Vec::new(),
            policy.config(w),
        )
    };
    let mut last = None;
    let found = refine_until(eps, policy, |w| {
        let (ra, rb) = ln_pair(a, b, w, policy)?;
        let (la, ub) = (
            evidence(&ra, BoundMethod::MidpointLower),
            evidence(&rb, BoundMethod::TrapezoidUpper),
        );
        if a * rb.upper() < b * ra.lower() {
            return Ok(Step::Done(build(vec![la, ub], w)?));
        }
        if a * rb.lower() > b * ra.upper() {
            let (ua, lb) = (
                evidence(&ra, BoundMethod::TrapezoidUpper),
                evidence(&rb, BoundMethod::MidpointLower),
            );
            return Ok(Step::Done(build(vec![ua, lb], w)?));
        }
        last = Some((vec![la, ub], w.clone()));
        Ok(Step::Refine(None))
    })?;
    match (found, last) {
        (Some(c), _) => Ok(c),
        (None, Some((evs, w))) => build(evs, &w),
        (None, None) => Err(Error::Precision(format!(
            "ln enclosures for a = {a}, b = {b} hit the bisection cap"
        ))),
    }
}

fn certify_e_base(b: &Rational, eps: &Rational, policy: &Policy) -> Result<Certificate> {
    use std::cmp::Ordering;
    match compare_with_e(b, policy)? {
        Some(Ordering::Less) => return Err(Error::domain(format!("need e < b, got b = {b}"))),
        Some(_) => {}
        None => {
            return Err(Error::Precision(format!(
                "could not compare b = {b} with e above the floor"
            )))
        }
    }
    let statement = format!("{b}^e < e^{b}");
    let build = |e: &EEnclosure, ub: Evidence, w: &Rational| {
        Certificate::assemble(
            ClaimKind::PowerInequality,
            statement.clone(),
            params([
                ("a_is_e", Rational::one()),
                ("b", b.clone()),
                ("e_upper", e.hi().clone()),
                ("eps", w.clone()),
            ]),
            vec![e.above.clone(), ub],
            Vec::new(),
            policy.config(w),
        )
    };
    let mut last = None;
    let found = refine_until(eps, policy, |w| {
        let (e, rb) = rayon::join(|| e_enclosure(w, policy), || ln_refinement(b, w, &policy.ln));
        let (e, rb) = (e?, rb?);
        let ub = evidence(&rb, BoundMethod::TrapezoidUpper);
        if e.hi() * rb.upper() < *b {
            return Ok(Step::Done(build(&e, ub, w)?));
        }
        last = Some((e, ub, w.clone()));
        Ok(Step::Refine(None))
    })?;
    match (found, last) {
        (Some(c), _) => Ok(c),
        (None, Some((e, ub, w))) => build(&e, ub, &w),
        (None, None) => Err(Error::Precision(format!(
            "ln enclosure for b = {b} hit the bisection cap"
        ))),
    }
}

/// Certifies `pi^e < e^pi` from a caller-supplied enclosure of `pi`.
pub fn certify_pi_e(pi: &Interval, eps: &Rational, policy: &Policy) -> Result<Certificate> {
    check_eps(eps)?;
    if pi.lo() < &Rational::int(3) {
        return Err(Error::domain(format!(
            "pi enclosure must have lo >= 3, got {}",
            pi.lo()
        )));
    }
    let (pi_lo, pi_hi) = (pi.lo(), pi.hi());
    let source = if pi == &archimedes_pi() { "archimedes" } else { "caller" };
    let build = |e: &EEnclosure, ub: Evidence, w: &Rational| {
        let mut config = policy.config(w);
        config.insert(
            "pi_enclosure".to_string(),
            format!("[{}, {}]", pi_lo.canonical(), pi_hi.canonical()),
        );
        config.insert("pi_source".to_string(), source.to_string());
        Certificate::assemble(
            ClaimKind::PiE,
            "pi^e < e^pi".to_string(),
            params([
                ("e_upper", e.hi().clone()),
                ("eps", w.clone()),
                ("pi_hi", pi_hi.clone()),
                ("pi_lo", pi_lo.clone()),
            ]),
            vec![e.above.clone(), ub],
            Vec::new(),
            config,
        )
    };
    let mut last = None;
    let found = refine_until(eps, policy, |w| {
        let (e, r) = rayon::join(|| e_enclosure(w, policy), || ln_refinement(pi_hi, w, &policy.ln));
        let (e, r) = (e?, r?);
        let ub = evidence(&r, BoundMethod::TrapezoidUpper);
        if e.hi() * r.upper() < *pi_lo {
            return Ok(Step::Done(build(&e, ub, w)?));
        }
        // e * ln(pi_hi) already exceeds pi_lo: no refinement can help.
        if e.lo() * r.lower() >= *pi_lo {
            return Ok(Step::Done(build(&e, ub, w)?));
        }
        last = Some((e, ub, w.clone()));
        Ok(Step::Refine(None))
    })?;
    match (found, last) {
        (Some(c), _) => Ok(c),
        (None, Some((e, ub, w))) => build(&e, ub, &w),
        (None, None) => Err(Error::Precision(
            "ln enclosure of pi_hi hit the bisection cap".to_string(),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cert::Verdict;

    #[test]
    fn three_four() {
        let c = certify_power(
            &PowerBase::Rational(Rational::int(3)),
            &Rational::int(4),
            &Rational::frac(1, 1000),
            &Policy::default(),
        )
        .unwrap();
        assert_eq!(c.verdict, Verdict::Certified);
        c.replay().unwrap();
    }

    #[test]
    fn below_e_refuted_precondition() {
        let err = certify_power(
            &PowerBase::Rational(Rational::int(2)),
            &Rational::int(3),
            &Rational::frac(1, 1000),
            &Policy::default(),
        )
        .unwrap_err();
        assert!(matches!(err, Error::PreconditionRefuted(_)));
        let err = certify_power(
            &PowerBase::Rational(Rational::int(4)),
            &Rational::int(3),
            &Rational::frac(1, 1000),
            &Policy::default(),
        )
        .unwrap_err();
        assert!(matches!(err, Error::Domain(_)));
    }

    #[test]
    fn e_base() {
        let c = certify_power(
            &PowerBase::E,
            &Rational::int(3),
            &Rational::frac(1, 1000),
            &Policy::default(),
        )
        .unwrap();
        assert_eq!(c.verdict, Verdict::Certified);
        assert_eq!(c.parameter("a_is_e"), Some(&Rational::one()));
        c.replay().unwrap();
        let err = certify_power(
            &PowerBase::E,
            &Rational::frac(27, 10),
            &Rational::frac(1, 1000),
            &Policy::default(),
        )
        .unwrap_err();
        assert!(matches!(err, Error::Domain(_)));
    }

    #[test]
    fn pi_e() {
        let c = certify_pi_e(&archimedes_pi(), &Rational::frac(1, 1000), &Policy::default()).unwrap();
        assert_eq!(c.verdict, Verdict::Certified);
        assert_eq!(c.config.get("pi_enclosure").map(String::as_str), Some("[223/71, 22/7]"));
        c.replay().unwrap();
        let wide = Interval::new(Rational::int(3), Rational::int(4)).unwrap();
        let c = certify_pi_e(&wide, &Rational::frac(1, 1000), &Policy::default()).unwrap();
        assert_eq!(c.verdict, Verdict::Undecided);
        c.replay().unwrap();
    }
}

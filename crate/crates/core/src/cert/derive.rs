//! Totals and verdicts recomputed from certificate terms. Construction and
//! replay both go through [`derive`], so they cannot disagree.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::{Certificate, ClaimKind, Verdict};
use crate::error::{Error, Result};
use crate::exact::{ceil_scaled, floor_scaled, Rational};
use crate::ln::{BoundMethod, BoundTerm, Partition};

pub(crate) struct Group<'a> {
    partition: &'a Partition,
    method: BoundMethod,
    terms: &'a [BoundTerm],
    scale: Option<BigInt>,
}

impl Group<'_> {
    fn sum(&self) -> Rational {
        let Some(s) = &self.scale else {
            return self.terms.iter().map(|t| t.value.clone()).sum();
        };
        let round = if self.method.is_lower() {
            floor_scaled
        } else {
            ceil_scaled
        };
        let acc: BigInt = self.terms.iter().map(|t| round(&t.value, s)).sum();
        Rational::new(acc, s.clone()).expect("positive scale")
    }

    /// The argument whose logarithm this group bounds.
    fn ratio(&self) -> Rational {
        self.partition.last() / self.partition.first()
    }
}

fn replay_err(msg: impl Into<String>) -> Error {
    Error::Replay(msg.into())
}

/// Splits terms into one group per partition plus the loose remainder.
pub(crate) fn split_terms(cert: &Certificate) -> Result<(Vec<Group<'_>>, &[BoundTerm])> {
    let mut rest = cert.terms.as_slice();
    let mut groups = Vec::with_capacity(cert.partitions.len());
    for (i, p) in cert.partitions.iter().enumerate() {
        let n = p.segment_count();
        if rest.len() < n {
            return Err(replay_err(format!(
                "partition {i} has {n} segments but only {} terms remain",
                rest.len()
            )));
        }
        let (mine, tail) = rest.split_at(n);
        rest = tail;
        let method = mine[0].method;
        for (t, (a, b)) in mine.iter().zip(p.segments()) {
            if &t.a != a || &t.b != b {
                return Err(replay_err(format!(
                    "partition {i}: term on [{}, {}] does not match segment [{a}, {b}]",
                    t.a, t.b
                )));
            }
            if t.method != method {
                return Err(replay_err(format!("partition {i} mixes {method} and {}", t.method)));
            }
        }
        let scale = match cert.parameters.get(&format!("scale_{i}")) {
            None => None,
            Some(s) if s.is_integer() && s.is_positive() => Some(s.numer().clone()),
            Some(s) => return Err(replay_err(format!("scale_{i} must be a positive integer, got {s}"))),
        };
        groups.push(Group {
            partition: p,
            method,
            terms: mine,
            scale,
        });
    }
    Ok((groups, rest))
}

struct Params<'a>(&'a BTreeMap<String, Rational>);

impl Params<'_> {
    fn get(&self, name: &str) -> Result<&Rational> {
        self.0
            .get(name)
            .ok_or_else(|| replay_err(format!("missing parameter {name}")))
    }

    fn count(&self, name: &str) -> Result<u64> {
        let v = self.get(name)?;
        if !v.is_integer() || v.is_negative() {
            return Err(replay_err(format!(
                "parameter {name} must be a nonnegative integer, got {v}"
            )));
        }
        v.numer()
            .to_u64()
            .ok_or_else(|| replay_err(format!("parameter {name} too large")))
    }
}

fn expect_layout(groups: &[Group<'_>], methods: &[BoundMethod]) -> Result<()> {
    let got: Vec<BoundMethod> = groups.iter().map(|g| g.method).collect();
    if got != methods {
        return Err(replay_err(format!(
            "expected partitions summed with {methods:?}, got {got:?}"
        )));
    }
    Ok(())
}

fn expect_ratio(g: &Group<'_>, want: &Rational, what: &str) -> Result<()> {
    let r = g.ratio();
    if &r != want {
        return Err(replay_err(format!(
            "partition for {what} spans ratio {r}, expected {want}"
        )));
    }
    Ok(())
}

fn expect_loose(loose: &[BoundTerm], expected: &[(Rational, Rational, BoundMethod)]) -> Result<()> {
    if loose.len() != expected.len() {
        return Err(replay_err(format!(
            "expected {} loose terms, got {}",
            expected.len(),
            loose.len()
        )));
    }
    for (i, (t, (a, b, m))) in loose.iter().zip(expected).enumerate() {
        if &t.a != a || &t.b != b || t.method != *m {
            return Err(replay_err(format!(
                "loose term {i}: expected {m} on [{a}, {b}], got {} on [{}, {}]",
                t.method, t.a, t.b
            )));
        }
    }
    Ok(())
}

fn totals<const N: usize>(entries: [(&str, Rational); N]) -> BTreeMap<String, Rational> {
    entries.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

fn certified_if(cond: bool) -> Verdict {
    if cond {
        Verdict::Certified
    } else {
        Verdict::Undecided
    }
}

type Derived = (BTreeMap<String, Rational>, Verdict);

pub(crate) fn derive(
    kind: ClaimKind,
    parameters: &BTreeMap<String, Rational>,
    groups: &[Group<'_>],
    loose: &[BoundTerm],
) -> Result<Derived> {
    let p = Params(parameters);
    let one = Rational::one();
    match kind {
        ClaimKind::EUpper => {
            expect_layout(groups, &[BoundMethod::MidpointLower])?;
            expect_loose(loose, &[])?;
            expect_ratio(&groups[0], p.get("target")?, "target")?;
            let s = groups[0].sum();
            let v = certified_if(s >= one);
            Ok((totals([("lower_sum", s)]), v))
        }
        ClaimKind::ELower => {
            expect_layout(groups, &[BoundMethod::TrapezoidUpper])?;
            expect_loose(loose, &[])?;
            expect_ratio(&groups[0], p.get("target")?, "target")?;
            let s = groups[0].sum();
            let v = certified_if(s <= one);
            Ok((totals([("upper_sum", s)]), v))
        }
        ClaimKind::EEnclosure => {
            expect_layout(groups, &[BoundMethod::TrapezoidUpper, BoundMethod::MidpointLower])?;
            expect_loose(loose, &[])?;
            let (lo, hi) = (p.get("lo")?, p.get("hi")?);
            expect_ratio(&groups[0], lo, "lo")?;
            expect_ratio(&groups[1], hi, "hi")?;
            let (s0, s1) = (groups[0].sum(), groups[1].sum());
            let v = certified_if(s0 <= one && s1 >= one);
            Ok((
                totals([("ln_hi_lower", s1), ("ln_lo_upper", s0), ("width", hi - lo)]),
                v,
            ))
        }
        ClaimKind::PowerInequality => derive_power(&p, groups, loose),
        ClaimKind::PiE => {
            expect_layout(groups, &[BoundMethod::MidpointLower, BoundMethod::TrapezoidUpper])?;
            expect_loose(loose, &[])?;
            let (e_upper, pi_lo, pi_hi) = (p.get("e_upper")?, p.get("pi_lo")?, p.get("pi_hi")?);
            expect_ratio(&groups[0], e_upper, "e_upper")?;
            expect_ratio(&groups[1], pi_hi, "pi_hi")?;
            let (s0, s1) = (groups[0].sum(), groups[1].sum());
            let lhs = e_upper * &s1;
            let v = certified_if(s0 >= one && &lhs < pi_lo);
            Ok((
                totals([
                    ("lhs", lhs),
                    ("ln_e_upper_lower", s0),
                    ("ln_pi_upper", s1),
                    ("rhs", pi_lo.clone()),
                ]),
                v,
            ))
        }
        ClaimKind::GammaEnclosure => {
            expect_layout(groups, &[BoundMethod::TrapezoidUpper, BoundMethod::MidpointLower])?;
            expect_loose(loose, &[])?;
            let n = p.count("n")?;
            if n == 0 {
                return Err(replay_err("parameter n must be positive"));
            }
            let nr = Rational::from(BigInt::from(n));
            expect_ratio(&groups[0], &(&nr + &one), "n + 1")?;
            expect_ratio(&groups[1], &(&nr + one.half()), "n + 1/2")?;
            let h = harmonic_exact(n);
            let (s0, s1) = (groups[0].sum(), groups[1].sum());
            let lower = &h - &s0;
            let upper = &h - &s1;
            let v = certified_if(lower >= one.half() && upper < one);
            Ok((
                totals([
                    ("harmonic", h),
                    ("ln_n1_upper", s0),
                    ("ln_nhalf_lower", s1),
                    ("width", &upper - &lower),
                    ("lower", lower),
                    ("upper", upper),
                ]),
                v,
            ))
        }
        ClaimKind::GammaSandwich => derive_gamma_sandwich(&p, groups, loose),
        ClaimKind::EulerLimitSandwich => {
            expect_layout(groups, &[])?;
            let r = p.get("ratio")?;
            if r <= &one {
                return Err(replay_err(format!("ratio must exceed 1, got {r}")));
            }
            expect_loose(
                loose,
                &[
                    (one.clone(), r.clone(), BoundMethod::MidpointLower),
                    (one.clone(), r.clone(), BoundMethod::TrapezoidUpper),
                ],
            )?;
            let d = r - &one;
            let lower = &loose[0].value / &d;
            let upper = &loose[1].value / &d;
            let v = certified_if(lower < upper);
            Ok((
                totals([("gap", &upper - &lower), ("lower", lower), ("upper", upper)]),
                v,
            ))
        }
        ClaimKind::GeometricIdentity => derive_geometric(&p, groups, loose),
    }
}

fn derive_power(p: &Params<'_>, groups: &[Group<'_>], loose: &[BoundTerm]) -> Result<Derived> {
    expect_loose(loose, &[])?;
    let b = p.get("b")?;
    if p.count("a_is_e")? == 1 {
        expect_layout(groups, &[BoundMethod::MidpointLower, BoundMethod::TrapezoidUpper])?;
        let e_upper = p.get("e_upper")?;
        expect_ratio(&groups[0], e_upper, "e_upper")?;
        expect_ratio(&groups[1], b, "b")?;
        let (s0, s1) = (groups[0].sum(), groups[1].sum());
        let lhs = e_upper * &s1;
        let v = certified_if(s0 >= Rational::one() && &lhs < b);
        return Ok((
            totals([
                ("lhs", lhs),
                ("ln_b_upper", s1),
                ("ln_e_upper_lower", s0),
                ("rhs", b.clone()),
            ]),
            v,
        ));
    }
    let a = p.get("a")?;
    let refuting = groups.first().is_some_and(|g| g.method == BoundMethod::TrapezoidUpper);
    if refuting {
        expect_layout(groups, &[BoundMethod::TrapezoidUpper, BoundMethod::MidpointLower])?;
    } else {
        expect_layout(groups, &[BoundMethod::MidpointLower, BoundMethod::TrapezoidUpper])?;
    }
    expect_ratio(&groups[0], a, "a")?;
    expect_ratio(&groups[1], b, "b")?;
    let (s0, s1) = (groups[0].sum(), groups[1].sum());
    let lhs = a * &s1;
    let rhs = b * &s0;
    if refuting {
        let v = if lhs > rhs {
            Verdict::Refuted
        } else {
            Verdict::Undecided
        };
        Ok((
            totals([("lhs", lhs), ("ln_a_upper", s0), ("ln_b_lower", s1), ("rhs", rhs)]),
            v,
        ))
    } else {
        let v = certified_if(lhs < rhs);
        Ok((
            totals([("lhs", lhs), ("ln_a_lower", s0), ("ln_b_upper", s1), ("rhs", rhs)]),
            v,
        ))
    }
}

pub(crate) fn harmonic_exact(n: u64) -> Rational {
    (1..=n).map(|k| Rational::from(BigInt::from(k)).recip_unchecked()).sum()
}

/// Loose terms recorded for index `n` of a sandwich over `1..=n_max`.
pub(crate) fn sandwich_layout(n: u64, n_max: u64) -> Vec<(Rational, Rational, BoundMethod)> {
    let r = |k: u64| Rational::from(BigInt::from(k));
    let half = Rational::frac(1, 2);
    let mut v = vec![
        (r(2 * n), r(2 * n + 1), BoundMethod::ChordLower),
        (r(2 * n), r(2 * n + 1), BoundMethod::ChordUpper),
        (r(2 * n + 1), r(2 * n + 2), BoundMethod::ChordLower),
        (r(n), r(n) + &half, BoundMethod::ChordUpper),
    ];
    if n < n_max {
        v.push((r(n), r(n + 1), BoundMethod::ChordLower));
        v.push((r(n + 1), r(n + 2), BoundMethod::ChordUpper));
        v.push((r(n) + &half, r(n + 1) + &half, BoundMethod::MidpointLower));
    }
    v
}

fn derive_gamma_sandwich(p: &Params<'_>, groups: &[Group<'_>], loose: &[BoundTerm]) -> Result<Derived> {
    let n_max = p.count("n_max")?;
    if n_max < 2 {
        return Err(replay_err("n_max must be at least 2"));
    }
    expect_layout(groups, &[BoundMethod::TrapezoidUpper, BoundMethod::ChordLower])?;
    let nm = Rational::from(BigInt::from(n_max));
    for g in groups {
        if g.partition.first() != &Rational::one()
            || g.partition.last() != &nm
            || g.partition.segment_count() as u64 != n_max - 1
        {
            return Err(replay_err("sandwich partitions must be {1, 2, ..., n_max}"));
        }
        if g.scale.is_some() {
            return Err(replay_err("sandwich partitions are summed exactly"));
        }
    }
    let expected: Vec<_> = (1..=n_max).flat_map(|n| sandwich_layout(n, n_max)).collect();
    expect_loose(loose, &expected)?;

    let half = Rational::frac(1, 2);
    let mut h = Rational::zero();
    let mut trap_prefix = Rational::zero();
    let mut chord_prefix = Rational::zero();
    let mut checks = 0u64;
    let mut failures = 0u64;
    let mut tally = |ok: bool| {
        checks += 1;
        if !ok {
            failures += 1;
        }
    };
    let mut at = 0usize;
    for n in 1..=n_max {
        let nr = Rational::from(BigInt::from(n));
        h += &nr.recip_unchecked();
        if n >= 2 {
            let i = (n - 2) as usize;
            trap_prefix += &groups[0].terms[i].value;
            chord_prefix += &groups[1].terms[i].value;
        }
        let width = if n < n_max { 7 } else { 4 };
        let t = &loose[at..at + width];
        at += width;
        let two_n = Rational::from(BigInt::from(2 * n));
        // (v) 1/(2n+1) < ln((2n+1)/(2n)) < 1/(2n)
        tally(t[0].value == (&two_n + Rational::one()).recip_unchecked());
        tally(t[1].value == two_n.recip_unchecked());
        // (iv) ln((2n+2)/(2n+1)) > 0 and ln((2n+1)/(2n)) > 0
        tally(t[2].value.is_positive() && t[0].value.is_positive());
        // (vi) ln(n + 1/2) < H_n - 1/2
        tally(&trap_prefix + &t[3].value == &h - &half);
        // (vii) ln n > H_n - 1 for n >= 2
        if n >= 2 {
            tally(chord_prefix == &h - Rational::one());
        }
        if n < n_max {
            let inv = (&nr + Rational::one()).recip_unchecked();
            // (i), (ii), (iii): each step term equals 1/(n+1)
            tally(t[4].value == inv);
            tally(t[5].value == inv);
            tally(t[6].value == inv);
        }
    }
    let enclosure_failures = p.count("enclosure_failures")?;
    let v = if enclosure_failures > 0 {
        Verdict::Refuted
    } else if failures == 0 {
        Verdict::Certified
    } else {
        Verdict::Undecided
    };
    Ok((
        totals([
            ("gamma_1", Rational::one()),
            ("harmonic_n_max", h),
            ("witness_checks", Rational::from(BigInt::from(checks))),
            ("witness_failures", Rational::from(BigInt::from(failures))),
        ]),
        v,
    ))
}

fn derive_geometric(p: &Params<'_>, groups: &[Group<'_>], loose: &[BoundTerm]) -> Result<Derived> {
    expect_layout(groups, &[])?;
    let r = p.get("r")?;
    let one = Rational::one();
    if r <= &one {
        return Err(replay_err(format!("r must exceed 1, got {r}")));
    }
    let m = p.count("m")?;
    let inv = r.recip_unchecked();
    expect_loose(
        loose,
        &[
            (one.clone(), r.clone(), BoundMethod::ChordLower),
            (inv.clone(), one.clone(), BoundMethod::ChordLower),
        ],
    )?;
    let rm1 = r - &one;
    let m_i32 = i32::try_from(m).map_err(|_| replay_err("m too large"))?;
    let partial: Rational = (0..=m_i32).map(|k| inv.pow(k)).sum();
    let tail = (&rm1 * r.pow(m_i32)).recip_unchecked();
    let total = &partial + &tail;
    let target = r / &rm1;
    let rect_left = &one - &inv;
    let strips: Rational = (1..=m_i32).map(|k| (inv.pow(k) - inv.pow(k + 1)) * &rm1).sum();
    let factored = if m == 0 {
        Rational::zero()
    } else {
        let partial_m1: Rational = (0..m_i32).map(|k| inv.pow(k)).sum();
        (&rm1 * &rm1) / (r * r) * partial_m1
    };
    let rect_tail = &rm1 * inv.pow(m_i32 + 1);
    let rect_total = &strips + &rect_tail;
    let ok = total == target && rect_total == rect_left && factored == strips && loose[0].value == loose[1].value;
    Ok((
        totals([
            ("equal_area", loose[0].value.clone()),
            ("partial_sum", partial),
            ("rect_left", rect_left),
            ("rect_strips", strips),
            ("rect_tail", rect_tail),
            ("rect_total", rect_total),
            ("tail", tail),
            ("target", target),
            ("total", total),
        ]),
        certified_if(ok),
    ))
}

//! Adaptive refinement of the trapezoid/midpoint enclosure of `ln x`.
//!
//! Starting from the partition `{1, x}`, the segment with the largest
//! `trapezoid - midpoint` gap is bisected at its exact midpoint until the
//! total width drops to `eps`. Segment values stay exact; the running totals
//! are kept on a dyadic grid, lower terms rounded down and upper terms
//! rounded up, so their denominators cannot grow with the partition.

use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::bounds::BoundMethod;
use super::partition::Partition;
use crate::error::{Error, Result};
use crate::exact::{ceil_scaled, floor_scaled, Interval, Rational};

pub const DEFAULT_MAX_BISECTIONS: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LnConfig {
    pub max_bisections: usize,
    /// When set, the final enclosure is widened to endpoints with
    /// denominators at most this value.
    pub max_den: Option<BigInt>,
}

impl Default for LnConfig {
    fn default() -> Self {
        LnConfig {
            max_bisections: DEFAULT_MAX_BISECTIONS,
            max_den: None,
        }
    }
}

/// Result of one refinement run, with enough data to replay it.
#[derive(Debug, Clone)]
pub struct LnRefinement {
    pub x: Rational,
    /// Partition of `[1, max(x, 1/x)]`; `None` when `x = 1`.
    pub partition: Option<Partition>,
    /// True when the enclosure was obtained by negating that of `1/x`.
    pub reciprocal: bool,
    /// Grid denominator used for the running totals.
    pub scale: BigInt,
    pub enclosure: Interval,
    pub bisections: usize,
}

impl LnRefinement {
    /// Certified lower bound of `ln x`.
    pub fn lower(&self) -> &Rational {
        self.enclosure.lo()
    }

    pub fn upper(&self) -> &Rational {
        self.enclosure.hi()
    }
}

/// A segment `[u, v] / (q * 2^depth)` of the partition. The bounds depend on
/// `v/u` only, so refinement works on the integer pair.
struct Segment {
    u: BigInt,
    v: BigInt,
    depth: u32,
    lower: BigInt,
    upper: BigInt,
}

/// Exact `trapezoid - midpoint = (v-u)^3 / (2uv(u+v))` as a fraction.
struct Gap {
    num: BigInt,
    den: BigInt,
}

struct HeapKey {
    gap: Gap,
    order: Reverse<usize>,
    index: usize,
}

impl PartialEq for HeapKey {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for HeapKey {}
impl PartialOrd for HeapKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for HeapKey {
    fn cmp(&self, other: &Self) -> Ordering {
        let lhs = &self.gap.num * &other.gap.den;
        let rhs = &other.gap.num * &self.gap.den;
        lhs.cmp(&rhs).then(self.order.cmp(&other.order))
    }
}

/// A power of two `>= 4 (cap + 1) / eps`. With at most `cap + 1` segments
/// the grid rounding then adds at most `eps / 2` of width.
pub fn grid_scale(eps: &Rational, cap: usize) -> BigInt {
    let need = (Rational::int(4 * (cap as i64 + 1)) / eps).ceil();
    BigInt::one() << need.bits()
}

fn make_segment(u: BigInt, v: BigInt, depth: u32, shift: u64) -> (Segment, Gap) {
    let diff = &v - &u;
    let sum = &u + &v;
    let prod = &u * &v;
    // floor(2^shift * 2(v-u)/(u+v))
    let lower = (&diff << (shift + 1)) / &sum;
    // ceil(2^shift * (v-u)(u+v) / (2uv))
    let upper_num = (&diff * &sum) << shift;
    let upper_den = &prod << 1;
    let (q, r) = upper_num.div_rem(&upper_den);
    let upper = if r.is_zero() { q } else { q + 1 };
    let gap = Gap {
        num: &diff * &diff * &diff,
        den: (prod << 1) * sum,
    };
    (
        Segment {
            u,
            v,
            depth,
            lower,
            upper,
        },
        gap,
    )
}

/// Refines `[1, x]` for `x > 1`.
fn refine_above_one(x: &Rational, eps: &Rational, cfg: &LnConfig) -> Result<(Partition, BigInt, Interval, usize)> {
    let scale = grid_scale(eps, cfg.max_bisections);
    let shift = scale.bits() - 1;
    // (hi - lo)/scale <= eps  <=>  hi - lo <= floor(eps * scale)
    let limit = (eps * Rational::from(scale.clone())).floor();

    let mut segments: Vec<Segment> = Vec::new();
    let mut heap = BinaryHeap::new();
    let (seg, gap) = make_segment(x.denom().clone(), x.numer().clone(), 0, shift);
    let mut lower = seg.lower.clone();
    let mut upper = seg.upper.clone();
    segments.push(seg);
    heap.push(HeapKey {
        gap,
        order: Reverse(0),
        index: 0,
    });

    let mut bisections = 0usize;
    while &upper - &lower > limit {
        if bisections >= cfg.max_bisections {
            return Err(Error::Precision(format!(
                "ln({x}) did not reach width {eps} within {} bisections",
                cfg.max_bisections
            )));
        }
        let top = heap.pop().expect("at least one segment");
        let old = &segments[top.index];
        lower -= &old.lower;
        upper -= &old.upper;
        let mid2 = &old.u + &old.v;
        let (lu, lv, ru, rv, depth) = if mid2.is_even() {
            let m: BigInt = &mid2 >> 1;
            (old.u.clone(), m.clone(), m, old.v.clone(), old.depth)
        } else {
            (&old.u << 1, mid2.clone(), mid2, &old.v << 1, old.depth + 1)
        };
        let (left, left_gap) = make_segment(lu, lv, depth, shift);
        let (right, right_gap) = make_segment(ru, rv, depth, shift);
        lower += &left.lower + &right.lower;
        upper += &left.upper + &right.upper;

        segments[top.index] = left;
        heap.push(HeapKey {
            gap: left_gap,
            order: Reverse(segments.len()),
            index: top.index,
        });
        heap.push(HeapKey {
            gap: right_gap,
            order: Reverse(segments.len() + 1),
            index: segments.len(),
        });
        segments.push(right);
        bisections += 1;
    }

    let q = x.denom();
    let mut points: Vec<Rational> = segments
        .iter()
        .map(|s| Rational::new(s.u.clone(), q << s.depth))
        .collect::<Result<_>>()?;
    points.push(x.clone());
    points.sort();
    let partition = Partition::new(points)?;
    let enclosure = Interval::new(
        Rational::new(lower, scale.clone())?,
        Rational::new(upper, scale.clone())?,
    )?;
    Ok((partition, scale, enclosure, bisections))
}

/// Enclosure of `ln x` of width at most `eps`, with the replay data.
pub fn ln_refinement(x: &Rational, eps: &Rational, cfg: &LnConfig) -> Result<LnRefinement> {
    if !x.is_positive() {
        return Err(Error::domain(format!("ln needs x > 0, got {x}")));
    }
    if !eps.is_positive() {
        return Err(Error::domain(format!("eps must be positive, got {eps}")));
    }
    if x == &Rational::one() {
        return Ok(LnRefinement {
            x: x.clone(),
            partition: None,
            reciprocal: false,
            scale: BigInt::one(),
            enclosure: Interval::point(Rational::zero()),
            bisections: 0,
        });
    }
    let reciprocal = x < &Rational::one();
    let arg = if reciprocal { x.recip()? } else { x.clone() };

    let target = if cfg.max_den.is_some() { eps.half() } else { eps.clone() };
    let (partition, scale, mut enclosure, bisections) = refine_above_one(&arg, &target, cfg)?;
    if let Some(max_den) = &cfg.max_den {
        enclosure = enclosure.round_outward(max_den)?;
        if &enclosure.width() > eps {
            return Err(Error::Precision(format!(
                "denominator budget {max_den} too small for width {eps}"
            )));
        }
    }
    if reciprocal {
        enclosure = enclosure.neg();
    }
    Ok(LnRefinement {
        x: x.clone(),
        partition: Some(partition),
        reciprocal,
        scale,
        enclosure,
        bisections,
    })
}

/// Enclosure of `ln x` of width at most `eps`, default configuration.
pub fn ln_enclosure(x: &Rational, eps: &Rational) -> Result<Interval> {
    ln_enclosure_with(x, eps, &LnConfig::default())
}

pub fn ln_enclosure_with(x: &Rational, eps: &Rational, cfg: &LnConfig) -> Result<Interval> {
    Ok(ln_refinement(x, eps, cfg)?.enclosure)
}

/// Grid-rounded partition sum as a replay check would recompute it: lower
/// methods are floored and upper methods ceiled to multiples of `1/scale`.
pub fn grid_sum(p: &Partition, method: BoundMethod, scale: &BigInt) -> Rational {
    let mut acc = BigInt::zero();
    for (a, b) in p.segments() {
        let v = method.eval_unchecked(a, b);
        acc += if method.is_lower() {
            floor_scaled(&v, scale)
        } else {
            ceil_scaled(&v, scale)
        };
    }
    Rational::new(acc, scale.clone()).expect("positive scale")
}

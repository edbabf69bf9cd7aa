use serde::{Deserialize, Serialize};

use super::bounds::{BoundMethod, Role};
use crate::error::{Error, Result};
use crate::exact::{Interval, Rational};

/// Strictly increasing sequence of at least two positive rationals.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Rational>", into = "Vec<Rational>")]
pub struct Partition {
    points: Vec<Rational>,
}

impl Partition {
    pub fn new(points: Vec<Rational>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::domain("partition needs at least two points"));
        }
        if !points[0].is_positive() {
            return Err(Error::domain(format!(
                "partition points must be positive, got {}",
                points[0]
            )));
        }
        if let Some(w) = points.windows(2).find(|w| w[0] >= w[1]) {
            return Err(Error::domain(format!(
                "partition must be strictly increasing, got {} then {}",
                w[0], w[1]
            )));
        }
        Ok(Partition { points })
    }

    pub fn from_integers(points: &[i64]) -> Result<Self> {
        Self::new(points.iter().map(|&p| Rational::int(p)).collect())
    }

    pub fn points(&self) -> &[Rational] {
        &self.points
    }

    pub fn first(&self) -> &Rational {
        &self.points[0]
    }

    pub fn last(&self) -> &Rational {
        self.points.last().expect("non-empty")
    }

    pub fn segments(&self) -> impl Iterator<Item = (&Rational, &Rational)> + '_ {
        self.points.windows(2).map(|w| (&w[0], &w[1]))
    }

    pub fn segment_count(&self) -> usize {
        self.points.len() - 1
    }

    /// Splits segment `i` at its midpoint.
    pub fn bisect(&self, i: usize) -> Result<Partition> {
        if i >= self.segment_count() {
            return Err(Error::domain(format!(
                "no segment {i} in a {}-segment partition",
                self.segment_count()
            )));
        }
        let mid = (&self.points[i] + &self.points[i + 1]).half();
        let mut points = self.points.clone();
        points.insert(i + 1, mid);
        Ok(Partition { points })
    }

    /// True when every point of `coarser` also appears here with the same ends.
    pub fn refines(&self, coarser: &Partition) -> bool {
        if self.first() != coarser.first() || self.last() != coarser.last() {
            return false;
        }
        let mut mine = self.points.iter();
        coarser.points.iter().all(|p| mine.any(|q| q == p))
    }

    /// Per-segment terms for one method.
    pub fn terms(&self, method: BoundMethod) -> Vec<BoundTerm> {
        self.segments()
            .map(|(a, b)| BoundTerm {
                a: a.clone(),
                b: b.clone(),
                method,
                value: method.eval_unchecked(a, b),
            })
            .collect()
    }

    pub fn sum(&self, method: BoundMethod) -> Rational {
        self.segments().map(|(a, b)| method.eval_unchecked(a, b)).sum()
    }
}

impl TryFrom<Vec<Rational>> for Partition {
    type Error = Error;
    fn try_from(points: Vec<Rational>) -> Result<Self> {
        Partition::new(points)
    }
}

impl From<Partition> for Vec<Rational> {
    fn from(p: Partition) -> Self {
        p.points
    }
}

/// One evaluated bound on one segment.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundTerm {
    pub a: Rational,
    pub b: Rational,
    pub method: BoundMethod,
    pub value: Rational,
}

impl BoundTerm {
    pub fn new(a: &Rational, b: &Rational, method: BoundMethod) -> Result<Self> {
        Ok(BoundTerm {
            a: a.clone(),
            b: b.clone(),
            method,
            value: method.eval(a, b)?,
        })
    }

    /// Recomputes the value from `(a, b, method)`.
    pub fn replays(&self) -> bool {
        self.method.eval(&self.a, &self.b).is_ok_and(|v| v == self.value)
    }
}

/// `[Σ lower(x_i, x_{i+1}), Σ upper(x_i, x_{i+1})]`, an enclosure of
/// `ln(last/first)`.
pub fn partition_bounds(p: &Partition, lower: BoundMethod, upper: BoundMethod) -> Result<Interval> {
    if lower.role() != Role::Lower {
        return Err(Error::MethodRole {
            method: lower,
            expected: "lower",
        });
    }
    if upper.role() != Role::Upper {
        return Err(Error::MethodRole {
            method: upper,
            expected: "upper",
        });
    }
    Interval::new(p.sum(lower), p.sum(upper))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_lower_partition_sums_to_one() {
        let p = Partition::from_integers(&[4, 6, 9, 11]).unwrap();
        let iv = partition_bounds(&p, BoundMethod::MidpointLower, BoundMethod::TrapezoidUpper).unwrap();
        assert_eq!(iv.lo(), &Rational::one());
    }

    #[test]
    fn fixed_upper_partition_below_one() {
        let p = Partition::from_integers(&[10, 12, 15, 18, 21, 24, 27]).unwrap();
        let iv = partition_bounds(&p, BoundMethod::MidpointLower, BoundMethod::TrapezoidUpper).unwrap();
        // 11/60 + 9/40 + 11/60 + 13/84 + 15/112 + 17/144 = 5032/5040, by hand
        assert_eq!(iv.hi(), &Rational::frac(629, 630));
        assert!(iv.hi() < &Rational::one());
    }

    #[test]
    fn degenerate_partitions_rejected() {
        assert!(Partition::from_integers(&[3]).is_err());
        assert!(Partition::from_integers(&[3, 3]).is_err());
        assert!(Partition::from_integers(&[0, 3]).is_err());
        assert!(Partition::from_integers(&[1, 4, 2]).is_err());
        let bad: std::result::Result<Partition, _> = serde_json::from_str(r#"["2","2"]"#);
        assert!(bad.is_err());
    }

    #[test]
    fn role_mismatch() {
        let p = Partition::from_integers(&[1, 2]).unwrap();
        let err = partition_bounds(&p, BoundMethod::TrapezoidUpper, BoundMethod::ChordUpper).unwrap_err();
        assert!(matches!(err, Error::MethodRole { expected: "lower", .. }));
        let err = partition_bounds(&p, BoundMethod::ChordLower, BoundMethod::MidpointLower).unwrap_err();
        assert!(matches!(err, Error::MethodRole { expected: "upper", .. }));
    }

    #[test]
    fn bisect_refines() {
        let p = Partition::from_integers(&[1, 3, 7]).unwrap();
        let q = p.bisect(1).unwrap();
        assert_eq!(q.points()[2], Rational::int(5));
        assert!(q.refines(&p));
        assert!(!p.refines(&q));
        assert!(p.bisect(2).is_err());
    }
}

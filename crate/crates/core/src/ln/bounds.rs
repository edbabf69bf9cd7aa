use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::Rational;

/// Which side of `ln(b/a)` a bound sits on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Role {
    Lower,
    Upper,
}

/// The four elementary area bounds on `∫_a^b dx/x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BoundMethod {
    /// Straight chord over the curve: `(1/a + 1/b)(b - a) / 2`.
    TrapezoidUpper,
    /// Tangent at the midpoint, under the curve: `2(b - a)/(a + b)`.
    MidpointLower,
    /// Rectangle of height `1/a`: `(b - a)/a`.
    ChordUpper,
    /// Rectangle of height `1/b`: `(b - a)/b`.
    ChordLower,
}

impl BoundMethod {
    pub const ALL: [BoundMethod; 4] = [
        BoundMethod::ChordLower,
        BoundMethod::MidpointLower,
        BoundMethod::TrapezoidUpper,
        BoundMethod::ChordUpper,
    ];

    pub fn role(self) -> Role {
        match self {
            BoundMethod::TrapezoidUpper | BoundMethod::ChordUpper => Role::Upper,
            BoundMethod::MidpointLower | BoundMethod::ChordLower => Role::Lower,
        }
    }

    pub fn is_lower(self) -> bool {
        self.role() == Role::Lower
    }

    pub fn is_upper(self) -> bool {
        self.role() == Role::Upper
    }

    pub fn eval(self, a: &Rational, b: &Rational) -> Result<Rational> {
        match self {
            BoundMethod::TrapezoidUpper => trapezoid_upper(a, b),
            BoundMethod::MidpointLower => midpoint_lower(a, b),
            BoundMethod::ChordUpper => chord_upper(a, b),
            BoundMethod::ChordLower => chord_lower(a, b),
        }
    }

    /// Evaluation for arguments already known to satisfy `0 < a <= b`.
    /// Each bound depends on `b/a = v/u` only.
    pub(crate) fn eval_unchecked(self, a: &Rational, b: &Rational) -> Rational {
        let u = a.numer() * b.denom();
        let v = b.numer() * a.denom();
        let d = &v - &u;
        let (num, den) = match self {
            BoundMethod::TrapezoidUpper => (&d * (&u + &v), (&u * &v) << 1),
            BoundMethod::MidpointLower => (&d << 1, &u + &v),
            BoundMethod::ChordUpper => (d, u),
            BoundMethod::ChordLower => (d, v),
        };
        Rational::new(num, den).expect("positive arguments")
    }
}

impl fmt::Display for BoundMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            BoundMethod::TrapezoidUpper => "TrapezoidUpper",
            BoundMethod::MidpointLower => "MidpointLower",
            BoundMethod::ChordUpper => "ChordUpper",
            BoundMethod::ChordLower => "ChordLower",
        };
        f.write_str(name)
    }
}

fn check_domain(a: &Rational, b: &Rational) -> Result<()> {
    if !a.is_positive() {
        return Err(Error::domain(format!("bound needs a > 0, got a = {a}")));
    }
    if b < a {
        return Err(Error::domain(format!("bound needs a <= b, got a = {a}, b = {b}")));
    }
    Ok(())
}

/// `(1/a + 1/b)(b - a)/2`, strictly above `ln(b/a)` for `a < b`.
pub fn trapezoid_upper(a: &Rational, b: &Rational) -> Result<Rational> {
    check_domain(a, b)?;
    Ok(BoundMethod::TrapezoidUpper.eval_unchecked(a, b))
}

/// `2(b - a)/(a + b)`, strictly below `ln(b/a)` for `a < b`.
pub fn midpoint_lower(a: &Rational, b: &Rational) -> Result<Rational> {
    check_domain(a, b)?;
    Ok(BoundMethod::MidpointLower.eval_unchecked(a, b))
}

/// `(b - a)/a`, the crudest upper bound.
pub fn chord_upper(a: &Rational, b: &Rational) -> Result<Rational> {
    check_domain(a, b)?;
    Ok(BoundMethod::ChordUpper.eval_unchecked(a, b))
}

/// `(b - a)/b`, the crudest lower bound.
pub fn chord_lower(a: &Rational, b: &Rational) -> Result<Rational> {
    check_domain(a, b)?;
    Ok(BoundMethod::ChordLower.eval_unchecked(a, b))
}

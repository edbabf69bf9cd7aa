use std::collections::BTreeMap;

use num_bigint::BigInt;

use super::{params, Certificate, ClaimKind};
use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::ln::{BoundMethod, BoundTerm};

/// Exact check of `sum_{k=0}^m r^-k + 1/((r-1) r^m) = r/(r-1)` and of the
/// rectangle decomposition of `1 - 1/r` into strips of width `r - 1`.
pub fn geometric_identity(r: &Rational, m: u32) -> Result<Certificate> {
    let one = Rational::one();
    if r <= &one {
        return Err(Error::domain(format!("geometric identity needs r > 1, got {r}")));
    }
    if m > i32::MAX as u32 - 1 {
        return Err(Error::domain(format!("m = {m} too large")));
    }
    let inv = r.recip_unchecked();
    // The unit-height strip over [1/r, 1] and the strip over [1, r] bound
    // equal areas under 1/x.
    let terms = vec![
        BoundTerm::new(&one, r, BoundMethod::ChordLower)?,
        BoundTerm::new(&inv, &one, BoundMethod::ChordLower)?,
    ];
    let mut config = BTreeMap::new();
    config.insert("arithmetic".to_string(), "exact".to_string());
    Certificate::assemble(
        ClaimKind::GeometricIdentity,
        format!("sum of {r}^-k over k >= 0 equals {}", r / &(r - &one)),
        params([("m", Rational::from(BigInt::from(m))), ("r", r.clone())]),
        Vec::new(),
        terms,
        config,
    )
}

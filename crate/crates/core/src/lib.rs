//! Certified enclosures of `ln` from four elementary area bounds on the
//! hyperbola `y = 1/x`, and the certificates built on them: bounds on `e`,
//! `b^a < a^b` for `e <= a < b`, `pi^e < e^pi`, the Euler–Mascheroni
//! sandwich, the Euler-limit sandwich and the geometric-series identity.
//!
//! All arithmetic is exact over big rationals. Every enclosure is a closed
//! rational interval that provably contains the true value.

pub mod cert;
pub mod error;
pub mod exact;
pub mod figures;
pub mod ln;

pub use cert::{Certificate, ClaimKind, Policy, Verdict};
pub use error::{Error, Result};
pub use exact::{Interval, Rational};
pub use ln::{ln_enclosure, BoundMethod, Partition};

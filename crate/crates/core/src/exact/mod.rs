//! Exact rationals and rational intervals. No floating point lives here;
//! decimal text is produced only by [`Rational::to_decimal`].

mod approx;
mod interval;
mod rational;

pub use approx::{best_lower, best_upper, ceil_scaled, ceil_to_grid, floor_scaled, floor_to_grid};
pub use interval::Interval;
pub use rational::{ArithOp, Rational};

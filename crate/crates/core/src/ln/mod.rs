//! Elementary area bounds on `∫_a^b dx/x = ln(b/a)` and their refinement.

mod bounds;
mod partition;
mod refine;

pub use bounds::{chord_lower, chord_upper, midpoint_lower, trapezoid_upper, BoundMethod, Role};
pub use partition::{partition_bounds, BoundTerm, Partition};
pub use refine::{
    grid_scale, grid_sum, ln_enclosure, ln_enclosure_with, ln_refinement, LnConfig, LnRefinement,
    DEFAULT_MAX_BISECTIONS,
};

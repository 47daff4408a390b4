//! Schur-convexity checks, majorization dominance of the occupancy count, and the search for
//! the maximizer of `E_p`.

mod condition;
mod dominance;
mod field;
mod optimize;
mod project;

pub use condition::{
    schur_check, schur_condition_at, verify_monotonicity, GradientKind, MonotonicityReport,
    SchurReport, INTERIOR_MARGIN,
};
pub use dominance::{dominance_check, dominance_sweep, DominanceReport, DominanceStatus, DominanceSweep};
pub use field::ScalarField;
pub use optimize::{
    maximize_expectation, ConjectureReport, SearchMethod, DEVIATION_TOLERANCE,
    EXPECTATION_TOLERANCE, STEP_TOLERANCE,
};
pub use project::{simplex_project, simplex_projection};

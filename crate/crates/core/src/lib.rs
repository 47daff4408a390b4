//! Occupied boxes, majorization and Schur-convexity.
//!
//! `N` balls fall independently into `n` boxes, box `i` with probability `p_i`. The number of
//! occupied boxes `X` has mean `E_p = n - Σ (1 - p_i)^N`. Because `Σ (1 - p_i)^N` is
//! Schur-convex, `E_p` is largest at the uniform vector, and more generally `q ≺ p` implies
//! `P_q(X <= k) <= P_p(X <= k)` for every `k`.
//!
//! The crate computes the pmf of `X` exactly (three independent backends) and by Monte Carlo,
//! implements the majorization order, and provides numerical harnesses that check the Schur
//! condition, monotonicity, CDF dominance and the location of the maximizer.
//!
//! Everything numerical is generic over [`Scalar`] (`f64` or `f32`); the aliases below fix
//! the common `f64` case.

pub mod cli;
pub mod error;
pub mod identities;
pub mod majorization;
pub mod occupancy;
pub mod prob;
pub mod rng;
pub mod scalar;
pub mod schur;

pub use error::{Error, Result};
pub use majorization::{compare, point_mass, sample_majorized, t_transform, uniform, Relation};
pub use occupancy::{
    distribution_brute_force, distribution_dp, distribution_inclusion_exclusion,
    expectation_closed_form, expectation_gradient, simulate, EmpiricalDistribution, ExactMethod,
};
pub use prob::{canonicalize, sample_simplex, validate, ExperimentConfig};
pub use scalar::Scalar;
pub use schur::{
    dominance_check, maximize_expectation, schur_check, schur_condition_at, simplex_project,
    verify_monotonicity, SearchMethod,
};

pub type ProbVector = prob::ProbVector<f64>;
pub type ProbVector32 = prob::ProbVector<f32>;
pub type OccupancyDistribution = occupancy::OccupancyDistribution<f64>;
pub type OccupancyDistribution32 = occupancy::OccupancyDistribution<f32>;
pub type MajorizationVerdict = majorization::MajorizationVerdict<f64>;
pub type ScalarField = schur::ScalarField<f64>;
pub type ScalarField32 = schur::ScalarField<f32>;
pub type SchurReport = schur::SchurReport<f64>;
pub type MonotonicityReport = schur::MonotonicityReport<f64>;
pub type DominanceReport = schur::DominanceReport<f64>;
pub type ConjectureReport = schur::ConjectureReport<f64>;
pub type IdentityReport = identities::IdentityReport<f64>;

//! Schur condition and the monotonicity it implies.
//!
//! `φ` is Schur-convex when `(x_i - x_j)(∂φ/∂x_i - ∂φ/∂x_j) >= 0` for every pair; such a `φ`
//! satisfies `φ(q) <= φ(p)` whenever `q ≺ p`. Only checkable directions are exercised:
//! the condition on sampled points, monotonicity on generated pairs, and for non-Schur fields
//! a violating pair found empirically.

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::field::ScalarField;
use crate::error::{Error, Result};
use crate::majorization::{compare_default, sample_majorized};
use crate::prob::{sample_interior, sample_simplex, ProbVector};
use crate::scalar::Scalar;

/// Smallest entry allowed for interior sample points.
pub const INTERIOR_MARGIN: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GradientKind {
    Exact,
    FiniteDifference,
}

/// `(x_i - x_j)(g_i - g_j)` with `g` the gradient of `f` at `x`.
pub fn schur_condition_at<T: Scalar>(f: &ScalarField<T>, x: &[T], i: usize, j: usize) -> Result<T> {
    let n = f.n();
    if x.len() != n {
        return Err(Error::DimensionMismatch { left: x.len(), right: n });
    }
    for index in [i, j] {
        if index >= n {
            return Err(Error::IndexOutOfRange { index, n });
        }
    }
    if i == j {
        return Err(Error::SameIndex(i));
    }
    let g = f.gradient(x)?;
    Ok(pair_condition(x, &g, i, j))
}

fn pair_condition<T: Scalar>(x: &[T], g: &[T], i: usize, j: usize) -> T {
    (x[i] - x[j]) * (g[i] - g[j])
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SchurReport<T> {
    pub field: String,
    pub n: usize,
    pub samples: usize,
    pub pairs_tested: usize,
    pub gradient: GradientKind,
    pub min_condition: T,
    pub worst_point: Vec<T>,
    /// Zero-based `(i, j)` of the worst pair.
    pub worst_pair: (usize, usize),
    pub tolerance: T,
    pub pass: bool,
}

/// Evaluates the Schur condition at `samples` random interior points over every pair `i < j`.
///
/// Passes when the minimum is at least `-1e-12` (exact gradient) or `-1e-6` (finite
/// differences), in `f64`.
pub fn schur_check<T: Scalar, R: Rng + ?Sized>(
    f: &ScalarField<T>,
    samples: usize,
    rng: &mut R,
) -> Result<SchurReport<T>> {
    if samples == 0 {
        return Err(Error::invalid("samples", "must be at least 1"));
    }
    let n = f.n();
    if n == 0 {
        return Err(Error::ZeroDimension);
    }
    let (kind, tolerance) = if f.has_exact_gradient() {
        (GradientKind::Exact, T::lit(T::EXACT_GRADIENT_TOLERANCE))
    } else {
        (GradientKind::FiniteDifference, T::lit(T::FD_GRADIENT_TOLERANCE))
    };
    let margin = T::lit(INTERIOR_MARGIN);

    let mut min_condition = T::infinity();
    let mut worst_point = Vec::new();
    let mut worst_pair = (0, 0);
    let mut pairs_tested = 0;
    for _ in 0..samples {
        let x = sample_interior(n, margin, rng)?;
        let g = f.gradient(x.entries())?;
        for i in 0..n {
            for j in i + 1..n {
                pairs_tested += 1;
                let c = pair_condition(x.entries(), &g, i, j);
                if c < min_condition {
                    min_condition = c;
                    worst_point = x.entries().to_vec();
                    worst_pair = (i, j);
                }
            }
        }
    }
    if pairs_tested == 0 {
        min_condition = T::zero();
    }
    Ok(SchurReport {
        field: f.name().to_string(),
        n,
        samples,
        pairs_tested,
        gradient: kind,
        min_condition,
        worst_point,
        worst_pair,
        tolerance,
        pass: min_condition >= -tolerance,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonotonicityReport<T> {
    pub field: String,
    pub n: usize,
    pub pairs: usize,
    /// Which implication was exercised.
    pub direction: String,
    /// `min f(p) - f(q)` over generated pairs with `q ≺ p`.
    pub min_margin: T,
    pub worst_p: Vec<T>,
    pub worst_q: Vec<T>,
    /// Pairs with `f(q) > f(p) + tolerance`.
    pub violations: usize,
    /// Generated pairs that `compare` failed to confirm as `q ≺ p`; always zero in practice.
    pub order_failures: usize,
    pub tolerance: T,
    pub pass: bool,
}

/// Draws `p` uniformly on the simplex and `q ≺ p` as a random mixture of rearrangements,
/// then checks `f(q) <= f(p) + tolerance`.
pub fn verify_monotonicity<T: Scalar, R: Rng + ?Sized>(
    f: &ScalarField<T>,
    pairs: usize,
    tolerance: T,
    rng: &mut R,
) -> Result<MonotonicityReport<T>> {
    if pairs == 0 {
        return Err(Error::invalid("pairs", "must be at least 1"));
    }
    let n = f.n();
    let mut report = MonotonicityReport {
        field: f.name().to_string(),
        n,
        pairs,
        direction: "schur-convex implies f(q) <= f(p) for q majorized by p".to_string(),
        min_margin: T::infinity(),
        worst_p: Vec::new(),
        worst_q: Vec::new(),
        violations: 0,
        order_failures: 0,
        tolerance,
        pass: false,
    };
    for _ in 0..pairs {
        let p: ProbVector<T> = sample_simplex(n, rng)?;
        let mixes = rng.random_range(1..=n + 1);
        let q = sample_majorized(&p, mixes, rng)?;
        if !compare_default(&p, &q)?.relation.a_majorizes_b() {
            report.order_failures += 1;
        }
        let margin = f.evaluate(p.entries()) - f.evaluate(q.entries());
        if margin < -tolerance {
            report.violations += 1;
        }
        if margin < report.min_margin {
            report.min_margin = margin;
            report.worst_p = p.into_entries();
            report.worst_q = q.into_entries();
        }
    }
    report.pass = report.violations == 0 && report.order_failures == 0;
    Ok(report)
}

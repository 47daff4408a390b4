//! Cross-checks between the exact backends and the closed-form identities.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::occupancy::{
    exact_distribution, expectation_closed_form, ExactMethod, OccupancyDistribution,
};
use crate::prob::{sample_simplex, ProbVector};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityReport<T> {
    pub n: usize,
    pub balls: usize,
    pub vectors: usize,
    /// Backends that were within budget and took part.
    pub backends: Vec<ExactMethod>,
    /// Largest entrywise difference between any two backends.
    pub max_backend_gap: T,
    /// Largest `|mean(pmf) - (n - Σ (1 - p_i)^N)|`.
    pub max_mean_gap: T,
    /// Largest `|Σ_k P(X >= k) - mean(pmf)|`.
    pub max_tail_sum_gap: T,
    /// Largest `|Σ pmf - 1|`.
    pub max_mass_gap: T,
    /// pmf entries that are nonzero where the support forbids it.
    pub support_violations: usize,
    pub tolerance: T,
    pub pass: bool,
}

/// Differences used by [`IdentityReport`] for a single exact pmf.
pub fn identity_gaps<T: Scalar>(p: &ProbVector<T>, d: &OccupancyDistribution<T>) -> (T, T, T) {
    let mean = d.mean();
    (
        (mean - expectation_closed_form(p, d.balls())).abs(),
        (d.tail_sum_expectation() - mean).abs(),
        (d.total() - T::one()).abs(),
    )
}

/// Entries outside `1..=min(n, N)` (or other than `k = 0` when `N = 0`) that exceed `tol`.
pub fn support_violations<T: Scalar>(d: &OccupancyDistribution<T>, tol: T) -> usize {
    let top = d.n().min(d.balls());
    let low = usize::from(d.balls() > 0);
    d.pmf()
        .iter()
        .enumerate()
        .filter(|&(k, &x)| (k < low || k > top) && x.abs() > tol)
        .count()
}

pub fn max_entrywise_gap<T: Scalar>(a: &OccupancyDistribution<T>, b: &OccupancyDistribution<T>) -> T {
    a.pmf().iter().zip(b.pmf()).map(|(&x, &y)| (x - y).abs()).fold(T::zero(), T::max)
}

/// Runs every in-budget exact backend on `vectors` random `p` and checks that they agree, that
/// the mean matches the closed form, and that the tail-sum identity holds.
pub fn verify_identities<T: Scalar, R: Rng + ?Sized>(
    n: usize,
    balls: usize,
    vectors: usize,
    tolerance: T,
    rng: &mut R,
) -> Result<IdentityReport<T>> {
    if vectors == 0 {
        return Err(Error::invalid("trials", "must be at least 1"));
    }
    let mut report = IdentityReport {
        n,
        balls,
        vectors,
        backends: Vec::new(),
        max_backend_gap: T::zero(),
        max_mean_gap: T::zero(),
        max_tail_sum_gap: T::zero(),
        max_mass_gap: T::zero(),
        support_violations: 0,
        tolerance,
        pass: false,
    };
    let probe = sample_simplex::<T, _>(n, rng)?;
    for method in ExactMethod::ALL {
        match exact_distribution(&probe, balls, method) {
            Ok(_) => report.backends.push(method),
            Err(Error::BudgetExceeded { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    if report.backends.is_empty() {
        return Err(Error::BudgetExceeded {
            method: "exact",
            detail: format!("no exact backend handles n = {n}, N = {balls}"),
        });
    }
    for _ in 0..vectors {
        let p = sample_simplex(n, rng)?;
        let dists = report
            .backends
            .iter()
            .map(|&m| exact_distribution(&p, balls, m))
            .collect::<Result<Vec<_>>>()?;
        for (i, d) in dists.iter().enumerate() {
            let (mean_gap, tail_gap, mass_gap) = identity_gaps(&p, d);
            report.max_mean_gap = report.max_mean_gap.max(mean_gap);
            report.max_tail_sum_gap = report.max_tail_sum_gap.max(tail_gap);
            report.max_mass_gap = report.max_mass_gap.max(mass_gap);
            report.support_violations += support_violations(d, tolerance);
            for other in &dists[i + 1..] {
                report.max_backend_gap = report.max_backend_gap.max(max_entrywise_gap(d, other));
            }
        }
    }
    report.pass = report.max_backend_gap <= tolerance
        && report.max_mean_gap <= tolerance
        && report.max_tail_sum_gap <= tolerance
        && report.max_mass_gap <= tolerance
        && report.support_violations == 0;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng;

    #[test]
    fn small_grid_passes_with_all_backends() {
        let r = verify_identities::<f64, _>(3, 4, 50, 1e-9, &mut rng::seeded(0)).unwrap();
        assert!(r.pass, "{r:?}");
        assert_eq!(r.backends.len(), 3);
    }

    #[test]
    fn large_instance_drops_backends() {
        let r = verify_identities::<f64, _>(30, 40, 3, 1e-9, &mut rng::seeded(0)).unwrap();
        assert_eq!(r.backends, vec![ExactMethod::Dp]);
        assert!(r.pass, "{r:?}");
    }

    #[test]
    fn nothing_in_budget() {
        let r = verify_identities::<f64, _>(100, 600, 1, 1e-9, &mut rng::seeded(0));
        assert!(matches!(r, Err(Error::BudgetExceeded { .. })));
    }
}

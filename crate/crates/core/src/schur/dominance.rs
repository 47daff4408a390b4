//! CDF dominance of the occupied-box count under majorization.
//!
//! When `q ≺ p`, the count under `p` is stochastically smaller:
//! `P_q(X <= k) <= P_p(X <= k)` for every `k`.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::majorization::{compare_default, sample_majorized, Relation};
use crate::occupancy::{exact_distribution, ExactMethod};
use crate::prob::{sample_simplex, ProbVector};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DominanceStatus {
    Pass,
    Fail,
    /// `p` does not majorize `q`, so nothing is claimed.
    NotApplicable,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DominanceReport<T> {
    pub p: Vec<T>,
    pub q: Vec<T>,
    pub balls: usize,
    pub method: ExactMethod,
    pub relation: Relation,
    pub cdf_p: Vec<T>,
    pub cdf_q: Vec<T>,
    /// `P_p(X <= k) - P_q(X <= k)` for `k = 0..=n`.
    pub gaps: Vec<T>,
    pub min_gap: T,
    /// `E_q - E_p` from the two pmfs; nonnegative whenever dominance holds.
    pub expectation_gap: T,
    pub tolerance: T,
    pub status: DominanceStatus,
}

impl<T> DominanceReport<T> {
    pub fn passed(&self) -> bool {
        self.status == DominanceStatus::Pass
    }
}

pub fn dominance_check<T: Scalar>(
    p: &ProbVector<T>,
    q: &ProbVector<T>,
    balls: usize,
    method: ExactMethod,
    tolerance: T,
) -> Result<DominanceReport<T>> {
    if p.len() != q.len() {
        return Err(Error::DimensionMismatch { left: p.len(), right: q.len() });
    }
    let relation = compare_default(p, q)?.relation;
    let dp = exact_distribution(p, balls, method)?;
    let dq = exact_distribution(q, balls, method)?;
    let cdf_p = dp.cdf();
    let cdf_q = dq.cdf();
    let gaps: Vec<T> = cdf_p.iter().zip(&cdf_q).map(|(&a, &b)| a - b).collect();
    let min_gap = gaps.iter().copied().fold(T::infinity(), T::min);
    let status = if !relation.a_majorizes_b() {
        DominanceStatus::NotApplicable
    } else if min_gap >= -tolerance {
        DominanceStatus::Pass
    } else {
        DominanceStatus::Fail
    };
    Ok(DominanceReport {
        p: p.entries().to_vec(),
        q: q.entries().to_vec(),
        balls,
        method,
        relation,
        cdf_p,
        cdf_q,
        gaps,
        min_gap,
        expectation_gap: dq.tail_sum_expectation() - dp.tail_sum_expectation(),
        tolerance,
        status,
    })
}

/// Aggregate of [`dominance_check`] over generated pairs `q ≺ p`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DominanceSweep<T> {
    pub n: usize,
    pub balls: usize,
    pub pairs: usize,
    pub method: ExactMethod,
    pub min_gap: T,
    /// Smallest `E_q - E_p` seen; dominance implies it is at least `-tolerance`.
    pub min_expectation_gap: T,
    pub failures: usize,
    pub not_applicable: usize,
    pub worst: Option<DominanceReport<T>>,
    pub tolerance: T,
    pub pass: bool,
}

pub fn dominance_sweep<T: Scalar, R: Rng + ?Sized>(
    n: usize,
    balls: usize,
    pairs: usize,
    method: ExactMethod,
    tolerance: T,
    rng: &mut R,
) -> Result<DominanceSweep<T>> {
    if pairs == 0 {
        return Err(Error::invalid("pairs", "must be at least 1"));
    }
    let mut sweep = DominanceSweep {
        n,
        balls,
        pairs,
        method,
        min_gap: T::infinity(),
        min_expectation_gap: T::infinity(),
        failures: 0,
        not_applicable: 0,
        worst: None,
        tolerance,
        pass: false,
    };
    for _ in 0..pairs {
        let p: ProbVector<T> = sample_simplex(n, rng)?;
        let mixes = rng.random_range(1..=n + 1);
        let q = sample_majorized(&p, mixes, rng)?;
        let report = dominance_check(&p, &q, balls, method, tolerance)?;
        match report.status {
            DominanceStatus::Fail => sweep.failures += 1,
            DominanceStatus::NotApplicable => {
                sweep.not_applicable += 1;
                continue;
            }
            DominanceStatus::Pass => {}
        }
        sweep.min_expectation_gap = sweep.min_expectation_gap.min(report.expectation_gap);
        if report.min_gap < sweep.min_gap {
            sweep.min_gap = report.min_gap;
            sweep.worst = Some(report);
        }
    }
    sweep.pass = sweep.failures == 0
        && sweep.not_applicable == 0
        && sweep.min_expectation_gap >= -tolerance;
    Ok(sweep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::majorization::{point_mass, uniform};
    use crate::prob::validate;
    use crate::rng;

    fn pv(x: &[f64]) -> ProbVector<f64> {
        validate(x).unwrap()
    }

    #[test]
    fn worked_pair() {
        let r = dominance_check(&pv(&[0.7, 0.3]), &pv(&[0.5, 0.5]), 2, ExactMethod::Dp, 1e-9)
            .unwrap();
        assert!(r.passed());
        assert_eq!(r.relation, Relation::Majorizes);
        assert!((r.gaps[1] - 0.08).abs() < 1e-12);
        assert!(r.gaps[2].abs() < 1e-12);
        assert!((r.expectation_gap - 0.08).abs() < 1e-12);
    }

    #[test]
    fn identical_vectors() {
        let p = pv(&[0.6, 0.3, 0.1]);
        let r = dominance_check(&p, &p, 5, ExactMethod::InclusionExclusion, 1e-9).unwrap();
        assert!(r.passed());
        assert!(r.gaps.iter().all(|&g| g == 0.0));
    }

    #[test]
    fn point_mass_versus_uniform() {
        for n in 2..6 {
            for balls in 1..8 {
                let p = point_mass::<f64>(n).unwrap();
                let q = uniform::<f64>(n).unwrap();
                let r = dominance_check(&p, &q, balls, ExactMethod::Dp, 1e-9).unwrap();
                assert!(r.passed());
                assert!((r.cdf_p[1] - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn incomparable_pair_is_not_applicable() {
        let r = dominance_check(&pv(&[0.5, 0.5, 0.0]), &pv(&[0.6, 0.2, 0.2]), 3, ExactMethod::Dp, 1e-9)
            .unwrap();
        assert_eq!(r.status, DominanceStatus::NotApplicable);
        let r = dominance_check(&pv(&[0.5, 0.5]), &pv(&[0.7, 0.3]), 3, ExactMethod::Dp, 1e-9)
            .unwrap();
        assert_eq!(r.status, DominanceStatus::NotApplicable);
    }

    #[test]
    fn errors() {
        assert!(matches!(
            dominance_check(&pv(&[1.0]), &pv(&[0.5, 0.5]), 2, ExactMethod::Dp, 1e-9),
            Err(Error::DimensionMismatch { .. })
        ));
        let big = uniform::<f64>(30).unwrap();
        assert!(matches!(
            dominance_check(&big, &big, 2, ExactMethod::InclusionExclusion, 1e-9),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn sweep_passes() {
        let s = dominance_sweep::<f64, _>(5, 8, 200, ExactMethod::Dp, 1e-9, &mut rng::seeded(2))
            .unwrap();
        assert!(s.pass, "{s:?}");
        assert!(s.min_gap >= -1e-9);
    }
}

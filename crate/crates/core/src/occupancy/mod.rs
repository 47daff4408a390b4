//! Distribution of the number of occupied boxes.
//!
//! `N` balls are dropped independently into `n` boxes, box `i` with probability `p_i`, and
//! `X` counts the boxes holding at least one ball. This module has the closed-form mean
//! `E_p = n - Σ (1 - p_i)^N` and its gradient, three exact backends for the pmf of `X`,
//! a Monte Carlo estimator, and the tail and empty-box views of a pmf.

mod brute;
mod dp;
mod inclusion_exclusion;
mod simulate;

use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::prob::ProbVector;
use crate::scalar::Scalar;

pub use brute::{distribution_brute_force, BRUTE_FORCE_MAX_SEQUENCES};
pub use dp::{distribution_dp, distribution_dp_with_budget, DpBudget};
pub use inclusion_exclusion::{distribution_inclusion_exclusion, INCLUSION_EXCLUSION_MAX_BOXES};
pub use simulate::{simulate, EmpiricalDistribution, TRIALS_PER_BLOCK};

/// Exact pmf of `X` for a fixed `(p, N)`, indexed `k = 0..=n`.
#[derive(Debug, Clone, PartialEq)]
pub struct OccupancyDistribution<T> {
    n: usize,
    balls: usize,
    pmf: Vec<T>,
}

impl<T: Scalar> OccupancyDistribution<T> {
    pub fn new(n: usize, balls: usize, pmf: Vec<T>) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroDimension);
        }
        if pmf.len() != n + 1 {
            return Err(Error::DimensionMismatch { left: pmf.len(), right: n + 1 });
        }
        Ok(Self { n, balls, pmf })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn balls(&self) -> usize {
        self.balls
    }

    /// Raw pmf as accumulated; may hold round-off negatives of order `1e-12`.
    pub fn pmf(&self) -> &[T] {
        &self.pmf
    }

    /// pmf with negative round-off clamped to zero.
    pub fn reported_pmf(&self) -> Vec<T> {
        self.pmf.iter().map(|&x| x.max(T::zero())).collect()
    }

    pub fn total(&self) -> T {
        self.pmf.iter().copied().sum()
    }

    pub fn mean(&self) -> T {
        self.pmf
            .iter()
            .enumerate()
            .map(|(k, &x)| T::from_count(k) * x)
            .sum()
    }

    fn check_k(&self, k: usize) -> Result<()> {
        if k > self.n {
            return Err(Error::OutcomeOutOfRange { k, n: self.n });
        }
        Ok(())
    }

    /// `P(X <= k)`.
    pub fn cdf_leq(&self, k: usize) -> Result<T> {
        self.check_k(k)?;
        Ok(self.pmf[..=k].iter().copied().sum())
    }

    /// `P(X >= k) = 1 - P(X <= k - 1)`.
    pub fn tail_geq(&self, k: usize) -> Result<T> {
        self.check_k(k)?;
        if k == 0 {
            return Ok(T::one());
        }
        Ok(T::one() - self.cdf_leq(k - 1)?)
    }

    /// `Σ_{k=1}^{n} P(X >= k)`, which equals the mean for any pmf on `0..=n`.
    pub fn tail_sum_expectation(&self) -> T {
        (1..=self.n).map(|k| self.tail_geq(k).expect("k in range")).sum()
    }

    /// pmf of the empty-box count `n - X`: entry `m` is `P(X = n - m)`.
    pub fn empty_box_pmf(&self) -> Vec<T> {
        self.pmf.iter().rev().copied().collect()
    }

    pub fn cdf(&self) -> Vec<T> {
        let mut acc = T::zero();
        self.pmf
            .iter()
            .map(|&x| {
                acc = acc + x;
                acc
            })
            .collect()
    }

    pub fn record(&self) -> DistributionRecord<T> {
        DistributionRecord {
            n: self.n,
            balls: self.balls,
            pmf: self.reported_pmf(),
            mean: self.mean(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.record()).expect("distribution serializes")
    }

    /// CSV with header `k,probability`, one row per `k = 0..=n`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("k,probability\n");
        for (k, x) in self.reported_pmf().iter().enumerate() {
            writeln!(out, "{k},{x}").expect("write to string");
        }
        out
    }
}

/// Serialized form of a distribution: `{"n", "balls", "pmf", "mean"}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistributionRecord<T> {
    pub n: usize,
    pub balls: usize,
    pub pmf: Vec<T>,
    pub mean: T,
}

/// `Σ (1 - x_i)^N`, the expected number of empty boxes. Accepts any real point, which lets
/// finite differences step slightly off the simplex.
pub fn expected_empty<T: Scalar>(x: &[T], balls: usize) -> T {
    let exp = exponent(balls);
    x.iter().map(|&xi| (T::one() - xi).powi(exp)).sum()
}

/// `E_p = n - Σ (1 - p_i)^N`.
pub fn expectation_closed_form<T: Scalar>(p: &ProbVector<T>, balls: usize) -> T {
    T::from_count(p.len()) - expected_empty(p.entries(), balls)
}

/// Gradient of `E_p` as a function on `R^n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExpectationGradient<T> {
    /// `N (1 - p_i)^(N-1)`.
    pub components: Vec<T>,
    /// Set when `N = 0`; `E_p` is then identically zero and so is the gradient.
    pub zero_balls: bool,
}

pub fn expectation_gradient<T: Scalar>(p: &ProbVector<T>, balls: usize) -> ExpectationGradient<T> {
    expectation_gradient_at(p.entries(), balls)
}

pub fn expectation_gradient_at<T: Scalar>(x: &[T], balls: usize) -> ExpectationGradient<T> {
    if balls == 0 {
        return ExpectationGradient { components: vec![T::zero(); x.len()], zero_balls: true };
    }
    let scale = T::from_count(balls);
    let exp = exponent(balls - 1);
    let components = x.iter().map(|&xi| scale * (T::one() - xi).powi(exp)).collect();
    ExpectationGradient { components, zero_balls: false }
}

pub(crate) fn exponent(balls: usize) -> i32 {
    i32::try_from(balls).expect("ball count fits in i32")
}

/// Selector for the exact pmf backends.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExactMethod {
    Dp,
    InclusionExclusion,
    BruteForce,
}

impl ExactMethod {
    pub const ALL: [ExactMethod; 3] =
        [ExactMethod::Dp, ExactMethod::InclusionExclusion, ExactMethod::BruteForce];

    pub fn name(self) -> &'static str {
        match self {
            ExactMethod::Dp => "dp",
            ExactMethod::InclusionExclusion => "ie",
            ExactMethod::BruteForce => "brute",
        }
    }
}

impl FromStr for ExactMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dp" => Ok(ExactMethod::Dp),
            "ie" => Ok(ExactMethod::InclusionExclusion),
            "brute" => Ok(ExactMethod::BruteForce),
            other => Err(Error::invalid("method", format!("unknown exact method `{other}`"))),
        }
    }
}

/// Exact pmf of `X` with the chosen backend.
pub fn exact_distribution<T: Scalar>(
    p: &ProbVector<T>,
    balls: usize,
    method: ExactMethod,
) -> Result<OccupancyDistribution<T>> {
    match method {
        ExactMethod::Dp => distribution_dp(p, balls),
        ExactMethod::InclusionExclusion => distribution_inclusion_exclusion(p, balls),
        ExactMethod::BruteForce => distribution_brute_force(p, balls),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::majorization::uniform;
    use crate::prob::{sample_interior, validate};
    use crate::rng;

    fn pv(x: &[f64]) -> ProbVector<f64> {
        validate(x).unwrap()
    }

    #[test]
    fn expectation_examples() {
        assert!((expectation_closed_form(&pv(&[0.2, 0.5, 0.3]), 1) - 1.0).abs() < 1e-15);
        assert!((expectation_closed_form(&pv(&[0.5, 0.5]), 2) - 1.5).abs() < 1e-15);
        assert!((expectation_closed_form(&pv(&[0.7, 0.3]), 3) - 1.63).abs() < 1e-12);
        assert_eq!(expectation_closed_form(&pv(&[0.7, 0.3]), 0), 0.0);
        let u = uniform::<f64>(3).unwrap();
        assert!((expectation_closed_form(&u, 4) - (3.0 - 3.0 * 16.0 / 81.0)).abs() < 1e-12);
    }

    #[test]
    fn gradient_examples() {
        let g = expectation_gradient(&pv(&[0.2, 0.5, 0.3]), 1);
        assert_eq!(g.components, vec![1.0, 1.0, 1.0]);
        let g = expectation_gradient(&pv(&[0.7, 0.3]), 2);
        assert!((g.components[0] - 0.6).abs() < 1e-15);
        assert!((g.components[1] - 1.4).abs() < 1e-15);
        let g = expectation_gradient(&pv(&[0.7, 0.3]), 0);
        assert!(g.zero_balls);
        assert_eq!(g.components, vec![0.0, 0.0]);
    }

    #[test]
    fn gradient_matches_central_differences() {
        let mut r = rng::seeded(2024);
        let h = 1e-6;
        for trial in 0..100 {
            let n = 2 + trial % 5;
            let balls = 1 + trial % 9;
            let p: ProbVector<f64> = sample_interior(n, 1e-3, &mut r).unwrap();
            let g = expectation_gradient(&p, balls);
            for i in 0..n {
                let mut up = p.entries().to_vec();
                let mut down = up.clone();
                up[i] += h;
                down[i] -= h;
                let e = |x: &[f64]| n as f64 - expected_empty(x, balls);
                let fd = (e(&up) - e(&down)) / (2.0 * h);
                assert!((fd - g.components[i]).abs() < 1e-6, "{fd} vs {}", g.components[i]);
            }
        }
    }

    #[test]
    fn expectation_nondecreasing_in_balls() {
        let mut r = rng::seeded(3);
        for _ in 0..50 {
            let p: ProbVector<f64> = crate::prob::sample_simplex(5, &mut r).unwrap();
            for balls in 0..30 {
                assert!(
                    expectation_closed_form(&p, balls + 1) >= expectation_closed_form(&p, balls)
                );
            }
        }
    }

    #[test]
    fn accessors() {
        let d = distribution_dp(&pv(&[0.7, 0.3]), 2).unwrap();
        assert!((d.cdf_leq(1).unwrap() - 0.58).abs() < 1e-12);
        assert_eq!(d.tail_geq(0).unwrap(), 1.0);
        assert!((d.tail_geq(2).unwrap() - 0.42).abs() < 1e-12);
        assert!((d.tail_sum_expectation() - 1.42).abs() < 1e-12);
        assert!((d.mean() - expectation_closed_form(&pv(&[0.7, 0.3]), 2)).abs() < 1e-12);
        assert_eq!(d.cdf_leq(3), Err(Error::OutcomeOutOfRange { k: 3, n: 2 }));
        assert_eq!(d.tail_geq(3), Err(Error::OutcomeOutOfRange { k: 3, n: 2 }));

        let one = OccupancyDistribution::new(1, 4, vec![0.0, 1.0]).unwrap();
        assert_eq!(one.tail_sum_expectation(), 1.0);
    }

    #[test]
    fn empty_box_reflection() {
        let d = distribution_dp(&uniform::<f64>(3).unwrap(), 3).unwrap();
        let e = d.empty_box_pmf();
        let expected = [6.0 / 27.0, 18.0 / 27.0, 3.0 / 27.0, 0.0];
        for (x, y) in e.iter().zip(expected) {
            assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn constructor_checks_length() {
        assert!(OccupancyDistribution::<f64>::new(2, 1, vec![0.0, 1.0]).is_err());
        assert!(OccupancyDistribution::<f64>::new(0, 1, vec![1.0]).is_err());
    }

    #[test]
    fn reporting_clamps_negatives_only() {
        let d = OccupancyDistribution::new(2, 2, vec![-1e-15, 0.5, 0.5]).unwrap();
        assert_eq!(d.reported_pmf(), vec![0.0, 0.5, 0.5]);
        assert_eq!(d.pmf()[0], -1e-15);
    }

    #[test]
    fn serialization_shapes() {
        let d = distribution_dp(&pv(&[0.5, 0.5]), 2).unwrap();
        let json: serde_json::Value = serde_json::from_str(&d.to_json()).unwrap();
        assert_eq!(json["n"], 2);
        assert_eq!(json["balls"], 2);
        assert_eq!(json["pmf"].as_array().unwrap().len(), 3);
        assert_eq!(json["mean"], 1.5);
        assert_eq!(d.to_csv(), "k,probability\n0,0\n1,0.5\n2,0.5\n");
    }

    #[test]
    fn method_names_parse() {
        for m in ExactMethod::ALL {
            assert_eq!(m.name().parse::<ExactMethod>().unwrap(), m);
        }
        assert!("mc".parse::<ExactMethod>().is_err());
    }
}

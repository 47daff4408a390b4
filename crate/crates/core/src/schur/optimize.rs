//! Maximizing `E_p` over the simplex.
//!
//! Projected-gradient ascent moves along `d = proj(x + s g) - x` with `s = 1 / max_i |g_i - ḡ|`,
//! so the trial step has unit size whatever the scale of the gradient. `E_p` is concave, so
//! along `d` the optimal step is where the directional derivative changes sign, which is found
//! by bisection on gradient values alone. Objective values are never compared: for small `n` and
//! large `N` they agree to all printed digits across a wide neighbourhood of the optimum while
//! gradient ratios stay well resolved.
//!
//! When the tangential gradient vanishes (only `N = 1`, where `E_p ≡ 1`), every point is a
//! maximizer; ties are broken toward the minimum-norm maximizer by ascending `-|x|² / 2`
//! instead, and the number of such steps is reported.

use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::project::simplex_project;
use crate::error::{Error, Result};
use crate::majorization::uniform;
use crate::occupancy::{expectation_closed_form, expectation_gradient_at};
use crate::prob::{sample_simplex, ProbVector};
use crate::rng;
use crate::scalar::Scalar;

/// Iterate movement below which ascent stops.
pub const STEP_TOLERANCE: f64 = 1e-12;
/// Pass threshold on `max_i |p_i - 1/n|` for projected gradient.
pub const DEVIATION_TOLERANCE: f64 = 1e-6;
/// Pass threshold on `E(best sample) - E(uniform)` for random search.
pub const EXPECTATION_TOLERANCE: f64 = 1e-12;

const BISECTION_STEPS: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchMethod {
    ProjectedGradient,
    RandomSearch,
}

impl FromStr for SearchMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "projected-gradient" | "pg" => Ok(SearchMethod::ProjectedGradient),
            "random-search" | "rs" => Ok(SearchMethod::RandomSearch),
            other => Err(Error::invalid("method", format!("unknown search method `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConjectureReport<T> {
    pub n: usize,
    pub balls: usize,
    pub method: SearchMethod,
    pub best_point: Vec<T>,
    pub expectation_best: T,
    pub expectation_uniform: T,
    pub max_deviation: T,
    /// Ascent iterations performed (projected gradient only).
    pub iterations: usize,
    /// Points evaluated (random search only).
    pub samples: usize,
    pub tie_break_steps: usize,
    /// Projected gradient stopped on a step smaller than `1e-12`.
    pub converged: bool,
    pub tolerance: T,
    pub pass: bool,
}

impl<T: Scalar> ConjectureReport<T> {
    /// Re-judges the report at a different tolerance.
    pub fn with_tolerance(mut self, tolerance: T) -> Self {
        self.tolerance = tolerance;
        self.pass = self.judge();
        self
    }

    fn judge(&self) -> bool {
        match self.method {
            SearchMethod::ProjectedGradient => self.max_deviation <= self.tolerance,
            SearchMethod::RandomSearch => {
                self.expectation_best <= self.expectation_uniform + self.tolerance
            }
        }
    }
}

/// Searches for the maximizer of `E_p` with `n` boxes and `N` balls.
///
/// `iters` bounds ascent iterations for projected gradient and is the sample count for
/// random search. Running out of iterations is reported through `converged`, not as an error.
pub fn maximize_expectation<T: Scalar>(
    n: usize,
    balls: usize,
    method: SearchMethod,
    iters: usize,
    seed: u64,
) -> Result<ConjectureReport<T>> {
    if n == 0 {
        return Err(Error::ZeroDimension);
    }
    if balls == 0 {
        return Err(Error::invalid("balls", "must be at least 1"));
    }
    if iters == 0 {
        return Err(Error::invalid("iters", "must be at least 1"));
    }
    let mut stream = rng::seeded(seed);
    let u = uniform::<T>(n)?;
    let expectation_uniform = expectation_closed_form(&u, balls);

    let mut report = match method {
        SearchMethod::ProjectedGradient => {
            let start = sample_simplex(n, &mut stream)?;
            let ascent = projected_gradient(start, balls, iters);
            let value = expectation_closed_form(&ascent.point, balls);
            ConjectureReport {
                n,
                balls,
                method,
                max_deviation: max_deviation(&ascent.point),
                best_point: ascent.point.into_entries(),
                expectation_best: value,
                expectation_uniform,
                iterations: ascent.iterations,
                samples: 0,
                tie_break_steps: ascent.tie_break_steps,
                converged: ascent.converged,
                tolerance: T::lit(DEVIATION_TOLERANCE),
                pass: false,
            }
        }
        SearchMethod::RandomSearch => {
            let mut best = sample_simplex::<T, _>(n, &mut stream)?;
            let mut best_value = expectation_closed_form(&best, balls);
            for _ in 1..iters {
                let p = sample_simplex(n, &mut stream)?;
                let value = expectation_closed_form(&p, balls);
                if value > best_value {
                    best_value = value;
                    best = p;
                }
            }
            ConjectureReport {
                n,
                balls,
                method,
                max_deviation: max_deviation(&best),
                best_point: best.into_entries(),
                expectation_best: best_value,
                expectation_uniform,
                iterations: 0,
                samples: iters,
                tie_break_steps: 0,
                converged: false,
                tolerance: T::lit(EXPECTATION_TOLERANCE),
                pass: false,
            }
        }
    };
    report.pass = report.judge();
    Ok(report)
}

fn max_deviation<T: Scalar>(p: &ProbVector<T>) -> T {
    let target = T::one() / T::from_count(p.len());
    p.iter().map(|&x| (x - target).abs()).fold(T::zero(), T::max)
}

struct Ascent<T> {
    point: ProbVector<T>,
    iterations: usize,
    tie_break_steps: usize,
    converged: bool,
}

fn projected_gradient<T: Scalar>(start: ProbVector<T>, balls: usize, iters: usize) -> Ascent<T> {
    let objective = |x: &[T]| expectation_gradient_at(x, balls).components;
    // Gradient of -|x|^2 / 2.
    let spread = |x: &[T]| x.iter().map(|&v| -v).collect::<Vec<T>>();
    let flat = T::lit(8.0) * T::epsilon();
    let step_tol = T::lit(STEP_TOLERANCE);

    let mut x = start;
    let mut ascent = Ascent { point: x.clone(), iterations: 0, tie_break_steps: 0, converged: false };
    for it in 1..=iters {
        ascent.iterations = it;
        let g = objective(x.entries());
        let next = match ascent_step(x.entries(), &g, flat) {
            Some(d) => line_search(x.entries(), &d, &objective),
            None => {
                let h = spread(x.entries());
                match ascent_step(x.entries(), &h, flat) {
                    Some(d) => {
                        ascent.tie_break_steps += 1;
                        line_search(x.entries(), &d, &spread)
                    }
                    None => {
                        ascent.converged = true;
                        break;
                    }
                }
            }
        };
        let moved = x.iter().zip(next.iter()).map(|(&a, &b)| (a - b).abs()).fold(T::zero(), T::max);
        x = next;
        if moved < step_tol {
            ascent.converged = true;
            break;
        }
    }
    ascent.point = x;
    ascent
}

/// Feasible ascent direction `proj(x + s g) - x` with unit-normalized tangential step, or
/// `None` when the tangential part of `g` is zero relative to its size.
fn ascent_step<T: Scalar>(x: &[T], g: &[T], flat: T) -> Option<Vec<T>> {
    let mean = g.iter().copied().sum::<T>() / T::from_count(g.len());
    let spread = g.iter().map(|&v| (v - mean).abs()).fold(T::zero(), T::max);
    let size = g.iter().map(|v| v.abs()).fold(T::zero(), T::max);
    if spread <= flat * size || spread == T::zero() {
        return None;
    }
    let target: Vec<T> = x.iter().zip(g).map(|(&xi, &gi)| xi + (gi - mean) / spread).collect();
    let y = simplex_project(&target).expect("finite target");
    Some(y.iter().zip(x).map(|(&yi, &xi)| yi - xi).collect())
}

/// Maximizes a concave objective on the segment `x + t d`, `t ∈ [0, 1]`, given its gradient.
fn line_search<T: Scalar>(x: &[T], d: &[T], gradient: &impl Fn(&[T]) -> Vec<T>) -> ProbVector<T> {
    let at = |t: T| -> Vec<T> { x.iter().zip(d).map(|(&xi, &di)| xi + t * di).collect() };
    let slope = |t: T| -> T {
        let g = gradient(&at(t));
        // Σ d_i = 0, so centring g only removes cancellation.
        let mean = g.iter().copied().sum::<T>() / T::from_count(g.len());
        g.iter().zip(d).map(|(&gi, &di)| (gi - mean) * di).sum()
    };
    let two = T::lit(2.0);
    let t = if slope(T::one()) >= T::zero() {
        T::one()
    } else {
        let (mut lo, mut hi) = (T::zero(), T::one());
        for _ in 0..BISECTION_STEPS {
            let mid = (lo + hi) / two;
            if mid <= lo || mid >= hi {
                break;
            }
            if slope(mid) >= T::zero() {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        lo
    };
    ProbVector::repair(at(t))
}

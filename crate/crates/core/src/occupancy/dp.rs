//! Sequential-binomial dynamic program for the pmf of `X`.
//!
//! Boxes are processed in label order. Given `t` balls already placed in earlier boxes, the
//! count in box `i` is `Binomial(N - t, p_i / r_i)` with `r_i = Σ_{j >= i} p_j` the residual
//! mass. The state is `(balls placed, boxes occupied)`; a box becomes occupied when it
//! receives at least one ball.


use super::OccupancyDistribution;
use crate::error::{Error, Result};
use crate::prob::ProbVector;
use crate::scalar::Scalar;

/// Residual mass at or below which a box is treated as receiving no balls.
const RESIDUAL_FLOOR: f64 = 1e-15;

/// Size limits for [`distribution_dp`]. Work grows like `n² N²`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DpBudget {
    pub max_boxes: usize,
    pub max_balls: usize,
}

impl Default for DpBudget {
    fn default() -> Self {
        Self { max_boxes: 64, max_balls: 512 }
    }
}

impl DpBudget {
    /// Largest `N` whose binomial rows start from a normal number in `T`.
    ///
    /// Each row starts at the larger tail, `max(q, 1-q)^r >= 2^-r`, so `r` must stay above
    /// the smallest normal exponent.
    pub fn precision_limit<T: Scalar>() -> usize {
        let min_exp = T::min_positive_value().log2().as_f64();
        (-min_exp).floor() as usize
    }

    pub fn check<T: Scalar>(&self, n: usize, balls: usize) -> Result<()> {
        let max_balls = self.max_balls.min(Self::precision_limit::<T>());
        if n > self.max_boxes || balls > max_balls {
            return Err(Error::BudgetExceeded {
                method: "dp",
                detail: format!(
                    "n = {n}, N = {balls} exceeds n <= {}, N <= {max_balls}",
                    self.max_boxes
                ),
            });
        }
        Ok(())
    }
}

/// `Binomial(r, q)` pmf by multiplicative recurrence, started from the heavier end.
pub(crate) fn binomial_row<T: Scalar>(r: usize, q: T, row: &mut Vec<T>) {
    row.clear();
    row.resize(r + 1, T::zero());
    if q <= T::zero() {
        row[0] = T::one();
        return;
    }
    if q >= T::one() {
        row[r] = T::one();
        return;
    }
    let one = T::one();
    let exp = super::exponent(r);
    if q <= T::lit(0.5) {
        let ratio = q / (one - q);
        row[0] = (one - q).powi(exp);
        for c in 0..r {
            row[c + 1] = row[c] * T::from_count(r - c) / T::from_count(c + 1) * ratio;
        }
    } else {
        let ratio = (one - q) / q;
        row[r] = q.powi(exp);
        for c in (1..=r).rev() {
            row[c - 1] = row[c] * T::from_count(c) / T::from_count(r - c + 1) * ratio;
        }
    }
}

/// Exact pmf of `X` under the default [`DpBudget`].
pub fn distribution_dp<T: Scalar>(
    p: &ProbVector<T>,
    balls: usize,
) -> Result<OccupancyDistribution<T>> {
    distribution_dp_with_budget(p, balls, DpBudget::default())
}

pub fn distribution_dp_with_budget<T: Scalar>(
    p: &ProbVector<T>,
    balls: usize,
    budget: DpBudget,
) -> Result<OccupancyDistribution<T>> {
    let n = p.len();
    budget.check::<T>(n, balls)?;

    // Residual masses as suffix sums, so the last positive box gets q = 1 exactly.
    let mut residual = vec![T::zero(); n];
    let mut acc = T::zero();
    for i in (0..n).rev() {
        acc = acc + p[i];
        residual[i] = acc;
    }

    let width = n + 1;
    let mut state = vec![T::zero(); (balls + 1) * width];
    let mut next = state.clone();
    state[0] = T::one();
    let mut row = Vec::with_capacity(balls + 1);
    let floor = T::lit(RESIDUAL_FLOOR);

    for i in 0..n {
        if residual[i] <= floor {
            continue;
        }
        let q = (p[i] / residual[i]).min(T::one());
        next.iter_mut().for_each(|x| *x = T::zero());
        for placed in 0..=balls {
            let occupied_max = i.min(placed);
            let masses = &state[placed * width..placed * width + occupied_max + 1];
            if masses.iter().all(|&m| m == T::zero()) {
                continue;
            }
            let remaining = balls - placed;
            binomial_row(remaining, q, &mut row);
            for (occupied, &mass) in masses.iter().enumerate() {
                if mass == T::zero() {
                    continue;
                }
                let stay = placed * width + occupied;
                next[stay] = next[stay] + mass * row[0];
                for (c, &w) in row.iter().enumerate().skip(1) {
                    let to = (placed + c) * width + occupied + 1;
                    next[to] = next[to] + mass * w;
                }
            }
        }
        std::mem::swap(&mut state, &mut next);
    }

    let pmf = state[balls * width..(balls + 1) * width].to_vec();
    OccupancyDistribution::new(n, balls, pmf)
}

//! Inclusion–exclusion over sets of boxes.
//!
//! With `B_j = Σ_{|T| = j} (1 - Σ_{i ∈ T} p_i)^N`, the probability that exactly `m` boxes are
//! empty is `Σ_{j >= m} (-1)^(j-m) C(j, m) B_j`. Subject to heavy cancellation as `n` grows,
//! hence the cap on `n`.

use super::{exponent, OccupancyDistribution};
use crate::error::{Error, Result};
use crate::prob::ProbVector;
use crate::scalar::{binomial_coefficient, Scalar};

pub const INCLUSION_EXCLUSION_MAX_BOXES: usize = 25;

pub fn distribution_inclusion_exclusion<T: Scalar>(
    p: &ProbVector<T>,
    balls: usize,
) -> Result<OccupancyDistribution<T>> {
    let n = p.len();
    if n > INCLUSION_EXCLUSION_MAX_BOXES {
        return Err(Error::BudgetExceeded {
            method: "ie",
            detail: format!("n = {n} exceeds n <= {INCLUSION_EXCLUSION_MAX_BOXES}"),
        });
    }
    let mut subset_sums = vec![T::zero(); n + 1];
    // `1 - Σ_{T} p_i` is accumulated as the mass outside T, which avoids the subtraction.
    accumulate(p.entries(), 0, 0, T::zero(), exponent(balls), &mut subset_sums);

    let mut empty = vec![T::zero(); n + 1];
    for (m, slot) in empty.iter_mut().enumerate() {
        let mut acc = T::zero();
        for (j, &b) in subset_sums.iter().enumerate().skip(m) {
            let term = binomial_coefficient::<T>(j, m) * b;
            acc = if (j - m) % 2 == 0 { acc + term } else { acc - term };
        }
        *slot = acc;
    }
    let pmf = empty.into_iter().rev().collect();
    OccupancyDistribution::new(n, balls, pmf)
}

fn accumulate<T: Scalar>(
    p: &[T],
    index: usize,
    chosen: usize,
    outside: T,
    exp: i32,
    sums: &mut [T],
) {
    if index == p.len() {
        sums[chosen] = sums[chosen] + outside.powi(exp);
        return;
    }
    accumulate(p, index + 1, chosen + 1, outside, exp, sums);
    accumulate(p, index + 1, chosen, outside + p[index], exp, sums);
}

//! Enumeration of every ball sequence; the ground-truth oracle for small instances.

use super::OccupancyDistribution;
use crate::error::{Error, Result};
use crate::prob::ProbVector;
use crate::scalar::Scalar;

/// Upper bound on `n^N`.
pub const BRUTE_FORCE_MAX_SEQUENCES: u128 = 10_000_000;

/// Sums `Π p_{box}` over all `n^N` sequences, bucketed by number of distinct boxes hit.
pub fn distribution_brute_force<T: Scalar>(
    p: &ProbVector<T>,
    balls: usize,
) -> Result<OccupancyDistribution<T>> {
    let n = p.len();
    let sequences = u32::try_from(balls)
        .ok()
        .and_then(|e| (n as u128).checked_pow(e))
        .filter(|&s| s <= BRUTE_FORCE_MAX_SEQUENCES);
    if sequences.is_none() {
        return Err(Error::BudgetExceeded {
            method: "brute",
            detail: format!("n^N = {n}^{balls} exceeds {BRUTE_FORCE_MAX_SEQUENCES}"),
        });
    }
    let mut walk = Walk { p: p.entries(), balls, hits: vec![0; n], pmf: vec![T::zero(); n + 1] };
    walk.descend(0, 0, T::one());
    OccupancyDistribution::new(n, balls, walk.pmf)
}

struct Walk<'a, T> {
    p: &'a [T],
    balls: usize,
    hits: Vec<u32>,
    pmf: Vec<T>,
}

impl<T: Scalar> Walk<'_, T> {
    fn descend(&mut self, depth: usize, distinct: usize, weight: T) {
        if depth == self.balls {
            self.pmf[distinct] = self.pmf[distinct] + weight;
            return;
        }
        for b in 0..self.p.len() {
            let fresh = self.hits[b] == 0;
            self.hits[b] += 1;
            self.descend(depth + 1, distinct + usize::from(fresh), weight * self.p[b]);
            self.hits[b] -= 1;
        }
    }
}

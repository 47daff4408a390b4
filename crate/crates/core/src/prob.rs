//! Points of the probability simplex and the experiment configuration.

use std::cmp::Ordering;
use std::ops::Index;

use rand::Rng;
use rand_distr::Exp1;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A probability vector `(p_1, ..., p_n)`: nonnegative entries summing to one.
///
/// Entries keep the order they were given in, since box labels matter for the occupancy
/// experiment. Use [`canonicalize`] for the descending order that majorization works with.
/// Entries equal to zero are allowed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ProbVector<T> {
    entries: Vec<T>,
}

impl<T: Scalar> ProbVector<T> {
    /// Same as [`validate`].
    pub fn new(raw: &[T]) -> Result<Self> {
        validate(raw)
    }

    /// Accepts only vectors that already sum to one within `1e-6`, then renormalizes.
    pub fn from_probabilities(raw: &[T]) -> Result<Self> {
        check_entries(raw)?;
        let sum: T = raw.iter().copied().sum();
        if (sum.as_f64() - 1.0).abs() > 1e-6 {
            return Err(Error::NotNormalized { sum: sum.as_f64() });
        }
        validate(raw)
    }

    /// Wraps entries that are already known to be on the simplex.
    pub(crate) fn from_simplex_unchecked(entries: Vec<T>) -> Self {
        debug_assert!(!entries.is_empty());
        debug_assert!(entries.iter().all(|&x| x >= T::zero()));
        Self { entries }
    }

    /// Like [`from_simplex_unchecked`](Self::from_simplex_unchecked) but clamps round-off
    /// negatives and renormalizes.
    pub(crate) fn repair(mut entries: Vec<T>) -> Self {
        for x in entries.iter_mut() {
            if *x < T::zero() {
                *x = T::zero();
            }
        }
        let sum: T = entries.iter().copied().sum();
        for x in entries.iter_mut() {
            *x = *x / sum;
        }
        Self { entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<T> {
        self.entries
    }

    pub fn iter(&self) -> std::slice::Iter<'_, T> {
        self.entries.iter()
    }

    pub fn total(&self) -> T {
        self.entries.iter().copied().sum()
    }

    pub fn min_entry(&self) -> T {
        self.entries.iter().copied().fold(T::infinity(), T::min)
    }

    /// True when every entry is strictly positive.
    pub fn is_interior(&self) -> bool {
        self.entries.iter().all(|&x| x > T::zero())
    }

    pub fn is_canonical(&self) -> bool {
        self.entries.windows(2).all(|w| w[0] >= w[1])
    }

    pub fn to_f64(&self) -> ProbVector<f64> {
        ProbVector { entries: self.entries.iter().map(|x| x.as_f64()).collect() }
    }
}

impl<T> Index<usize> for ProbVector<T> {
    type Output = T;

    fn index(&self, i: usize) -> &T {
        &self.entries[i]
    }
}

impl<'a, T> IntoIterator for &'a ProbVector<T> {
    type Item = &'a T;
    type IntoIter = std::slice::Iter<'a, T>;

    fn into_iter(self) -> Self::IntoIter {
        self.entries.iter()
    }
}

fn check_entries<T: Scalar>(raw: &[T]) -> Result<()> {
    if raw.is_empty() {
        return Err(Error::EmptyVector);
    }
    for (index, &x) in raw.iter().enumerate() {
        if !x.is_finite() {
            return Err(Error::NonFiniteEntry { index });
        }
        if x < T::zero() {
            return Err(Error::NegativeEntry { index, value: x.as_f64() });
        }
    }
    Ok(())
}

/// Builds a [`ProbVector`] from nonnegative weights by dividing by their total.
///
/// Input order is preserved. Rejects empty input, negative or non-finite entries, and
/// all-zero input.
pub fn validate<T: Scalar>(raw: &[T]) -> Result<ProbVector<T>> {
    check_entries(raw)?;
    let sum: T = raw.iter().copied().sum();
    if sum <= T::zero() {
        return Err(Error::ZeroMass);
    }
    let entries = raw.iter().map(|&x| x / sum).collect();
    Ok(ProbVector { entries })
}

/// Descending-order comparator for finite scalars.
pub(crate) fn descending<T: Scalar>(a: &T, b: &T) -> Ordering {
    b.partial_cmp(a).expect("finite entries")
}

/// Same multiset of entries, sorted so that `p_1 >= p_2 >= ... >= p_n`.
pub fn canonicalize<T: Scalar>(p: &ProbVector<T>) -> ProbVector<T> {
    let mut entries = p.entries.clone();
    entries.sort_by(descending);
    ProbVector { entries }
}

/// Uniformly distributed point of the `n`-box simplex: `n` standard exponentials,
/// normalized by their sum.
pub fn sample_simplex<T: Scalar, R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<ProbVector<T>> {
    if n == 0 {
        return Err(Error::ZeroDimension);
    }
    let draws: Vec<f64> = (0..n).map(|_| rng.sample::<f64, _>(Exp1)).collect();
    let total: f64 = draws.iter().sum();
    let entries = draws.iter().map(|&x| T::lit(x / total)).collect();
    Ok(ProbVector { entries })
}

/// Like [`sample_simplex`] but rejects points with an entry below `min_entry`.
pub fn sample_interior<T: Scalar, R: Rng + ?Sized>(
    n: usize,
    min_entry: T,
    rng: &mut R,
) -> Result<ProbVector<T>> {
    if T::from_count(n) * min_entry >= T::one() {
        return Err(Error::invalid("min_entry", "no interior point satisfies the margin"));
    }
    loop {
        let p = sample_simplex(n, rng)?;
        if p.min_entry() >= min_entry {
            return Ok(p);
        }
    }
}

/// Parameters of one occupancy experiment.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    /// Number of balls `N`.
    pub balls: usize,
    pub seed: u64,
    /// Monte Carlo repetitions.
    pub trials: u64,
    /// Number of work shards for Monte Carlo; results do not depend on it.
    pub shards: usize,
    pub tolerance: f64,
}

impl ExperimentConfig {
    pub fn new(balls: usize) -> Self {
        Self { balls, seed: 0, trials: 1, shards: 1, tolerance: 1e-9 }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_trials(mut self, trials: u64) -> Self {
        self.trials = trials;
        self
    }

    pub fn with_shards(mut self, shards: usize) -> Self {
        self.shards = shards;
        self
    }

    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self
    }

    pub fn check(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::invalid("trials", "must be at least 1"));
        }
        if self.shards == 0 {
            return Err(Error::invalid("shards", "must be at least 1"));
        }
        if self.tolerance.is_nan() || self.tolerance <= 0.0 || !self.tolerance.is_finite() {
            return Err(Error::invalid("tolerance", "must be positive and finite"));
        }
        Ok(())
    }
}

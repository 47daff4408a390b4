//! Floating-point scalar abstraction shared by every numerical routine.
//!
//! All of the math in this crate is written against [`Scalar`] so the same code runs in
//! `f64` (the default used by the CLI) and `f32`. Tolerances that depend on the working
//! precision live here rather than being scattered as literals.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, ToPrimitive};
use serde::de::DeserializeOwned;
use serde::Serialize;

/// A real floating-point type usable by the occupancy and majorization routines.
pub trait Scalar:
    Float
    + FromPrimitive
    + ToPrimitive
    + Sum
    + Default
    + Debug
    + Display
    + Send
    + Sync
    + Serialize
    + DeserializeOwned
    + 'static
{
    /// Allowed drift of `Σ p_i` from 1 after renormalization.
    const SUM_TOLERANCE: f64;
    /// Default slack for majorization prefix-sum comparisons.
    const ORDER_TOLERANCE: f64;
    /// Acceptance threshold for the Schur condition with an exact gradient.
    const EXACT_GRADIENT_TOLERANCE: f64;
    /// Acceptance threshold for the Schur condition with finite differences.
    const FD_GRADIENT_TOLERANCE: f64;
    /// Relative step for central finite differences.
    const FD_STEP: f64;

    /// Converts an `f64` literal; every value this crate passes is representable.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal converts to scalar")
    }

    #[inline]
    fn from_count(x: usize) -> Self {
        Self::from_usize(x).expect("count converts to scalar")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().expect("scalar converts to f64")
    }
}

impl Scalar for f64 {
    const SUM_TOLERANCE: f64 = 1e-12;
    const ORDER_TOLERANCE: f64 = 1e-12;
    const EXACT_GRADIENT_TOLERANCE: f64 = 1e-12;
    const FD_GRADIENT_TOLERANCE: f64 = 1e-6;
    const FD_STEP: f64 = 1e-6;
}

impl Scalar for f32 {
    const SUM_TOLERANCE: f64 = 1e-5;
    const ORDER_TOLERANCE: f64 = 1e-5;
    const EXACT_GRADIENT_TOLERANCE: f64 = 1e-5;
    const FD_GRADIENT_TOLERANCE: f64 = 1e-2;
    const FD_STEP: f64 = 1e-3;
}

/// `n choose k` as a scalar, via the multiplicative formula.
pub(crate) fn binomial_coefficient<T: Scalar>(n: usize, k: usize) -> T {
    if k > n {
        return T::zero();
    }
    let k = k.min(n - k);
    let mut acc = 1.0f64;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    T::lit(acc.round())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_small_values() {
        assert_eq!(binomial_coefficient::<f64>(5, 2), 10.0);
        assert_eq!(binomial_coefficient::<f64>(25, 12), 5_200_300.0);
        assert_eq!(binomial_coefficient::<f64>(3, 4), 0.0);
        assert_eq!(binomial_coefficient::<f32>(4, 0), 1.0);
    }
}

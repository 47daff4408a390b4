use crate::error::{Error, Result};
use crate::prob::{descending, ProbVector};
use crate::scalar::Scalar;

/// Euclidean projection onto the probability simplex by sort-and-threshold.
///
/// Returns the projected point and the threshold `θ`, with `w_i = max(v_i - θ, 0)`.
pub fn simplex_projection<T: Scalar>(v: &[T]) -> Result<(Vec<T>, T)> {
    if v.is_empty() {
        return Err(Error::ZeroDimension);
    }
    if let Some(index) = v.iter().position(|x| !x.is_finite()) {
        return Err(Error::NonFiniteEntry { index });
    }
    let mut sorted = v.to_vec();
    sorted.sort_by(descending);
    let mut prefix = T::zero();
    let mut theta = T::zero();
    for (k, &u) in sorted.iter().enumerate() {
        prefix = prefix + u;
        let candidate = (prefix - T::one()) / T::from_count(k + 1);
        // The first entry always qualifies, so theta is always set.
        if k == 0 || u - candidate > T::zero() {
            theta = candidate;
        } else {
            break;
        }
    }
    let w = v.iter().map(|&x| (x - theta).max(T::zero())).collect();
    Ok((w, theta))
}

/// The simplex point closest to `v`.
pub fn simplex_project<T: Scalar>(v: &[T]) -> Result<ProbVector<T>> {
    let (w, _) = simplex_projection(v)?;
    Ok(ProbVector::repair(w))
}

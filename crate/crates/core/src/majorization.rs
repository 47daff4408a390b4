//! The majorization order on the probability simplex.
//!
//! `a` majorizes `b` (`a ≻ b`) when, with both sorted in descending order, every prefix sum
//! of `a` is at least the matching prefix sum of `b`. Totals are equal automatically since
//! both are probability vectors. Comparisons sort private copies; inputs are never reordered.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_distr::Exp1;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::prob::{canonicalize, ProbVector};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    Majorizes,
    MajorizedBy,
    Equal,
    Incomparable,
}

impl Relation {
    /// `a ≻ b` holds (possibly with equality).
    pub fn a_majorizes_b(self) -> bool {
        matches!(self, Relation::Majorizes | Relation::Equal)
    }

    pub fn is_comparable(self) -> bool {
        self != Relation::Incomparable
    }
}

/// Outcome of [`compare`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MajorizationVerdict<T> {
    pub relation: Relation,
    /// Smallest slack of the relation that holds. For `Majorizes` and `Equal` it is
    /// `min_k (A_k - B_k)`, for `MajorizedBy` it is `min_k (B_k - A_k)`, and for
    /// `Incomparable` it is the most negative `A_k - B_k`.
    pub worst_slack: T,
    /// `A_k - B_k` for `k = 1..=n`, where `A`, `B` are prefix sums of the sorted inputs.
    pub prefix_gaps: Vec<T>,
}

/// Prefix-sum gaps `A_k - B_k`, `k = 1..=n`, of the descending rearrangements.
pub fn prefix_gaps<T: Scalar>(a: &ProbVector<T>, b: &ProbVector<T>) -> Result<Vec<T>> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch { left: a.len(), right: b.len() });
    }
    let a = canonicalize(a);
    let b = canonicalize(b);
    let mut sa = T::zero();
    let mut sb = T::zero();
    Ok(a.iter()
        .zip(b.iter())
        .map(|(&x, &y)| {
            sa = sa + x;
            sb = sb + y;
            sa - sb
        })
        .collect())
}

/// Compares `a` and `b` under majorization. A gap in `[-tol, 0)` counts as satisfied.
pub fn compare<T: Scalar>(
    a: &ProbVector<T>,
    b: &ProbVector<T>,
    tol: T,
) -> Result<MajorizationVerdict<T>> {
    let gaps = prefix_gaps(a, b)?;
    let min_gap = gaps.iter().copied().fold(T::infinity(), T::min);
    let max_gap = gaps.iter().copied().fold(T::neg_infinity(), T::max);
    let forward = min_gap >= -tol;
    let backward = max_gap <= tol;
    let (relation, worst_slack) = match (forward, backward) {
        (true, true) => (Relation::Equal, min_gap),
        (true, false) => (Relation::Majorizes, min_gap),
        (false, true) => (Relation::MajorizedBy, -max_gap),
        (false, false) => (Relation::Incomparable, min_gap),
    };
    Ok(MajorizationVerdict { relation, worst_slack, prefix_gaps: gaps })
}

/// [`compare`] at the precision's default tolerance.
pub fn compare_default<T: Scalar>(
    a: &ProbVector<T>,
    b: &ProbVector<T>,
) -> Result<MajorizationVerdict<T>> {
    compare(a, b, T::lit(T::ORDER_TOLERANCE))
}

/// Robin Hood move on boxes `i` and `j` (zero-based): both move toward their average.
///
/// `q_i = λ p_i + (1-λ) p_j`, `q_j = λ p_j + (1-λ) p_i`; everything else is copied.
pub fn t_transform<T: Scalar>(
    p: &ProbVector<T>,
    i: usize,
    j: usize,
    lambda: T,
) -> Result<ProbVector<T>> {
    let n = p.len();
    for index in [i, j] {
        if index >= n {
            return Err(Error::IndexOutOfRange { index, n });
        }
    }
    if i == j {
        return Err(Error::SameIndex(i));
    }
    if !(lambda >= T::zero() && lambda <= T::one()) {
        return Err(Error::LambdaOutOfRange(lambda.as_f64()));
    }
    let mut q = p.entries().to_vec();
    let (pi, pj) = (p[i], p[j]);
    let mu = T::one() - lambda;
    q[i] = lambda * pi + mu * pj;
    q[j] = lambda * pj + mu * pi;
    Ok(ProbVector::from_simplex_unchecked(q))
}

/// Random convex mixture of `mixes` random rearrangements of `p`.
///
/// Any such mixture is `D p` for a doubly stochastic `D`, so the result is majorized by `p`.
/// Weights are a flat Dirichlet draw.
pub fn sample_majorized<T: Scalar, R: Rng + ?Sized>(
    p: &ProbVector<T>,
    mixes: usize,
    rng: &mut R,
) -> Result<ProbVector<T>> {
    if mixes == 0 {
        return Err(Error::invalid("mixes", "must be at least 1"));
    }
    let n = p.len();
    let mut weights: Vec<f64> = (0..mixes).map(|_| rng.sample::<f64, _>(Exp1)).collect();
    let total: f64 = weights.iter().sum();
    weights.iter_mut().for_each(|w| *w /= total);

    let mut perm: Vec<usize> = (0..n).collect();
    let mut q = vec![T::zero(); n];
    for &w in &weights {
        perm.shuffle(rng);
        let w = T::lit(w);
        for (slot, &src) in q.iter_mut().zip(perm.iter()) {
            *slot = *slot + w * p[src];
        }
    }
    Ok(ProbVector::repair(q))
}

/// Uniform mixture over every rearrangement of `p`; always `(1/n, ..., 1/n)`.
///
/// Exponential in `n`; intended for small-`n` checks.
pub fn average_over_permutations<T: Scalar>(p: &ProbVector<T>) -> ProbVector<T> {
    let n = p.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut acc = vec![T::zero(); n];
    let mut count = 0usize;
    // Heap's algorithm, iterative form.
    let mut c = vec![0usize; n];
    let add = |perm: &[usize], acc: &mut [T]| {
        for (slot, &src) in acc.iter_mut().zip(perm) {
            *slot = *slot + p[src];
        }
    };
    add(&perm, &mut acc);
    count += 1;
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            add(&perm, &mut acc);
            count += 1;
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    let count = T::from_count(count);
    ProbVector::repair(acc.into_iter().map(|x| x / count).collect())
}

/// `(1/n, ..., 1/n)`, the minimum of the order.
pub fn uniform<T: Scalar>(n: usize) -> Result<ProbVector<T>> {
    if n == 0 {
        return Err(Error::ZeroDimension);
    }
    let v = T::one() / T::from_count(n);
    Ok(ProbVector::from_simplex_unchecked(vec![v; n]))
}

/// `(1, 0, ..., 0)`, the maximum of the order.
pub fn point_mass<T: Scalar>(n: usize) -> Result<ProbVector<T>> {
    if n == 0 {
        return Err(Error::ZeroDimension);
    }
    let mut e = vec![T::zero(); n];
    e[0] = T::one();
    Ok(ProbVector::from_simplex_unchecked(e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prob::{sample_simplex, validate};
    use crate::rng;

    fn pv(x: &[f64]) -> ProbVector<f64> {
        validate(x).unwrap()
    }

    /// Independent check: brute-force over every k, recomputing each prefix sum from scratch.
    fn brute_majorizes(a: &[f64], b: &[f64], tol: f64) -> bool {
        let mut a = a.to_vec();
        let mut b = b.to_vec();
        a.sort_by(|x, y| y.partial_cmp(x).unwrap());
        b.sort_by(|x, y| y.partial_cmp(x).unwrap());
        (1..=a.len()).all(|k| a[..k].iter().sum::<f64>() - b[..k].iter().sum::<f64>() >= -tol)
    }

    #[test]
    fn compare_examples() {
        let third = 1.0 / 3.0;
        let v = compare(&pv(&[1.0, 0.0, 0.0]), &pv(&[third, third, third]), 1e-12).unwrap();
        assert_eq!(v.relation, Relation::Majorizes);

        let a = pv(&[0.6, 0.25, 0.15]);
        let b = pv(&[0.5, 0.35, 0.15]);
        let v = compare(&a, &b, 1e-12).unwrap();
        assert_eq!(v.relation, Relation::Majorizes);
        let expected = [0.10, 0.0, 0.0];
        for (g, e) in v.prefix_gaps.iter().zip(expected) {
            assert!((g - e).abs() < 1e-15);
        }
        assert!(brute_majorizes(a.entries(), b.entries(), 1e-12));

        let v = compare(&pv(&[0.5, 0.5, 0.0]), &pv(&[0.6, 0.2, 0.2]), 1e-12).unwrap();
        assert_eq!(v.relation, Relation::Incomparable);
        assert!((v.prefix_gaps[0] + 0.10).abs() < 1e-15);
        assert!((v.prefix_gaps[1] - 0.20).abs() < 1e-15);
        assert!((v.worst_slack + 0.10).abs() < 1e-15);
    }

    #[test]
    fn compare_reverse_and_equal() {
        let a = pv(&[0.6, 0.25, 0.15]);
        let b = pv(&[0.5, 0.35, 0.15]);
        let v = compare(&b, &a, 1e-12).unwrap();
        assert_eq!(v.relation, Relation::MajorizedBy);
        assert!(v.worst_slack.abs() < 1e-15);

        let v = compare(&a, &pv(&[0.15, 0.6, 0.25]), 1e-12).unwrap();
        assert_eq!(v.relation, Relation::Equal);
        assert!(v.worst_slack.abs() < 1e-12);
    }

    #[test]
    fn compare_dimension_mismatch() {
        assert_eq!(
            compare(&pv(&[1.0]), &pv(&[0.5, 0.5]), 1e-12),
            Err(Error::DimensionMismatch { left: 1, right: 2 })
        );
    }

    #[test]
    fn compare_never_reorders_inputs() {
        let a = pv(&[0.1, 0.9]);
        let before = a.clone();
        compare(&a, &pv(&[0.5, 0.5]), 1e-12).unwrap();
        assert_eq!(a, before);
    }

    #[test]
    fn uniform_is_below_everything() {
        let mut r = rng::seeded(11);
        for n in 1..8 {
            let u = uniform::<f64>(n).unwrap();
            let e = point_mass::<f64>(n).unwrap();
            for _ in 0..50 {
                let p: ProbVector<f64> = sample_simplex(n, &mut r).unwrap();
                assert!(compare(&p, &u, 1e-12).unwrap().relation.a_majorizes_b());
                assert!(compare(&e, &p, 1e-12).unwrap().relation.a_majorizes_b());
            }
        }
    }

    #[test]
    fn extreme_points() {
        assert_eq!(uniform::<f64>(2).unwrap().entries(), &[0.5, 0.5]);
        assert_eq!(point_mass::<f64>(3).unwrap().entries(), &[1.0, 0.0, 0.0]);
        let v = compare(&point_mass::<f64>(4).unwrap(), &uniform(4).unwrap(), 1e-12).unwrap();
        assert_eq!(v.relation, Relation::Majorizes);
        assert_eq!(uniform::<f64>(0), Err(Error::ZeroDimension));
        assert_eq!(point_mass::<f64>(0), Err(Error::ZeroDimension));
    }

    #[test]
    fn t_transform_examples() {
        let p = pv(&[0.7, 0.3]);
        assert_eq!(t_transform(&p, 0, 1, 1.0).unwrap(), p);
        assert_eq!(t_transform(&p, 0, 1, 0.5).unwrap().entries(), &[0.5, 0.5]);

        let p = pv(&[0.8, 0.2, 0.0]);
        let q = t_transform(&p, 0, 2, 0.75).unwrap();
        for (x, e) in q.iter().zip([0.6, 0.2, 0.2]) {
            assert!((x - e).abs() < 1e-15);
        }
        assert_eq!(compare(&p, &q, 1e-12).unwrap().relation, Relation::Majorizes);
    }

    #[test]
    fn t_transform_errors() {
        let p = pv(&[0.7, 0.3]);
        assert_eq!(t_transform(&p, 0, 2, 0.5), Err(Error::IndexOutOfRange { index: 2, n: 2 }));
        assert_eq!(t_transform(&p, 1, 1, 0.5), Err(Error::SameIndex(1)));
        assert!(matches!(t_transform(&p, 0, 1, 1.5), Err(Error::LambdaOutOfRange(_))));
        assert!(matches!(t_transform(&p, 0, 1, -0.1), Err(Error::LambdaOutOfRange(_))));
        assert!(matches!(t_transform(&p, 0, 1, f64::NAN), Err(Error::LambdaOutOfRange(_))));
    }

    #[test]
    fn sample_majorized_single_identity_mix() {
        // A single mixture whose permutation happens to be the identity returns p.
        let p = pv(&[0.5, 0.3, 0.2]);
        let mut seed = 0;
        loop {
            let q = sample_majorized(&p, 1, &mut rng::seeded(seed)).unwrap();
            if q.entries()[0] == 0.5 && q.entries()[1] == 0.3 {
                assert!((q[2] - 0.2).abs() < 1e-15);
                break;
            }
            seed += 1;
            assert!(seed < 1000);
        }
    }

    #[test]
    fn sample_majorized_is_below_input() {
        let mut r = rng::seeded(99);
        for _ in 0..2000 {
            let n = r.random_range(1..7);
            let p: ProbVector<f64> = sample_simplex(n, &mut r).unwrap();
            let mixes = r.random_range(1..5);
            let q = sample_majorized(&p, mixes, &mut r).unwrap();
            assert!(compare(&p, &q, 1e-12).unwrap().relation.a_majorizes_b());
        }
        assert!(sample_majorized(&pv(&[1.0]), 0, &mut r).is_err());
    }

    #[test]
    fn full_permutation_average_is_uniform() {
        let p = pv(&[0.5, 0.3, 0.15, 0.05]);
        let q = average_over_permutations(&p);
        for x in q.iter() {
            assert!((x - 0.25).abs() < 1e-15);
        }
    }
}

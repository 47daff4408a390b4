use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::occupancy::{exponent, expected_empty};
use crate::scalar::Scalar;

type EvalFn<T> = dyn Fn(&[T]) -> T + Send + Sync;
type GradFn<T> = dyn Fn(&[T]) -> Vec<T> + Send + Sync;

/// A real function on the open simplex, optionally with an exact gradient.
///
/// Without an exact gradient, [`ScalarField::gradient`] uses central differences with step
/// `min(h * max(|x_i|, 1), min_j x_j / 2)`, which keeps every probe inside the positive
/// orthant.
#[derive(Clone)]
pub struct ScalarField<T> {
    n: usize,
    name: String,
    evaluate: Arc<EvalFn<T>>,
    gradient: Option<Arc<GradFn<T>>>,
    fd_step: T,
}

impl<T> fmt::Debug for ScalarField<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ScalarField")
            .field("n", &self.n)
            .field("name", &self.name)
            .field("exact_gradient", &self.gradient.is_some())
            .finish()
    }
}

impl<T: Scalar> ScalarField<T> {
    pub fn new(
        n: usize,
        name: impl Into<String>,
        evaluate: impl Fn(&[T]) -> T + Send + Sync + 'static,
    ) -> Self {
        Self {
            n,
            name: name.into(),
            evaluate: Arc::new(evaluate),
            gradient: None,
            fd_step: T::lit(T::FD_STEP),
        }
    }

    pub fn with_gradient(mut self, gradient: impl Fn(&[T]) -> Vec<T> + Send + Sync + 'static) -> Self {
        self.gradient = Some(Arc::new(gradient));
        self
    }

    /// Drops the exact gradient so finite differences are used.
    pub fn without_gradient(mut self) -> Self {
        self.gradient = None;
        self
    }

    pub fn with_fd_step(mut self, step: T) -> Self {
        self.fd_step = step;
        self
    }

    /// `φ(x) = Σ (1 - x_i)^N`, the expected number of empty boxes.
    pub fn occupancy_phi(n: usize, balls: usize) -> Self {
        let scale = T::from_count(balls);
        let exp = exponent(balls.saturating_sub(1));
        Self::new(n, format!("occupancy-phi(N={balls})"), move |x| expected_empty(x, balls))
            .with_gradient(move |x| {
                if balls == 0 {
                    return vec![T::zero(); x.len()];
                }
                x.iter().map(|&xi| -scale * (T::one() - xi).powi(exp)).collect()
            })
    }

    /// `-φ`; Schur-concave and, for `N >= 2`, not Schur-convex.
    pub fn neg_occupancy_phi(n: usize, balls: usize) -> Self {
        Self::occupancy_phi(n, balls).negated()
    }

    pub fn constant(n: usize, value: T) -> Self {
        Self::new(n, "constant", move |_| value).with_gradient(|x| vec![T::zero(); x.len()])
    }

    /// `Σ x_i`, identically one on the simplex.
    pub fn total_mass(n: usize) -> Self {
        Self::new(n, "total-mass", |x| x.iter().copied().sum())
            .with_gradient(|x| vec![T::one(); x.len()])
    }

    pub fn negated(self) -> Self {
        let eval = self.evaluate.clone();
        let name = format!("neg-{}", self.name);
        let grad = self.gradient.clone();
        let mut out = Self::new(self.n, name, move |x| -eval(x)).with_fd_step(self.fd_step);
        if let Some(g) = grad {
            out = out.with_gradient(move |x| g(x).into_iter().map(|v| -v).collect());
        }
        out
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn has_exact_gradient(&self) -> bool {
        self.gradient.is_some()
    }

    pub fn evaluate(&self, x: &[T]) -> T {
        (self.evaluate)(x)
    }

    pub fn gradient(&self, x: &[T]) -> Result<Vec<T>> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch { left: x.len(), right: self.n });
        }
        match &self.gradient {
            Some(g) => Ok(g(x)),
            None => self.finite_difference_gradient(x),
        }
    }

    pub fn finite_difference_gradient(&self, x: &[T]) -> Result<Vec<T>> {
        let min = x.iter().copied().fold(T::infinity(), T::min);
        if min.is_nan() || min <= T::zero() {
            return Err(Error::BoundaryPoint);
        }
        let guard = min / T::lit(2.0);
        let mut probe = x.to_vec();
        let mut out = Vec::with_capacity(x.len());
        for i in 0..x.len() {
            let h = (self.fd_step * x[i].abs().max(T::one())).min(guard);
            probe[i] = x[i] + h;
            let up = self.evaluate(&probe);
            probe[i] = x[i] - h;
            let down = self.evaluate(&probe);
            probe[i] = x[i];
            out.push((up - down) / (h + h));
        }
        Ok(out)
    }
}

//! Dense coordinate vectors and the incremental weighted-average update.
//!
//! All iterates, gradients and hints in this crate are `Vector`s. Entries are
//! finite by construction: the checked constructors reject NaN/Inf, and every
//! oracle boundary re-validates incoming data before it is stored.

use std::ops::{Add, Mul, Sub};

use crate::error::{Error, Result};

/// Dense real vector of fixed dimension `d >= 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct Vector {
    coords: Vec<f64>,
}

impl Vector {
    /// Checked constructor: rejects empty vectors and non-finite entries.
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::invalid("vector dimension must be at least 1"));
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::Data("non-finite vector entry".into()));
        }
        Ok(Vector { coords })
    }

    pub fn from_slice(coords: &[f64]) -> Result<Self> {
        Vector::new(coords.to_vec())
    }

    pub fn zeros(dim: usize) -> Self {
        assert!(dim >= 1, "vector dimension must be at least 1");
        Vector {
            coords: vec![0.0; dim],
        }
    }

    /// Constant vector `value * ones`.
    pub fn constant(dim: usize, value: f64) -> Result<Self> {
        Vector::new(vec![value; dim])
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn is_finite(&self) -> bool {
        self.coords.iter().all(|c| c.is_finite())
    }

    pub fn dot(&self, other: &Vector) -> f64 {
        assert_eq!(self.dim(), other.dim(), "vector dimension mismatch");
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a * b)
            .sum()
    }

    pub fn norm_sq(&self) -> f64 {
        self.dot(self)
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn dist(&self, other: &Vector) -> f64 {
        assert_eq!(self.dim(), other.dim(), "vector dimension mismatch");
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    }

    /// `self <- self + c * other`.
    pub fn add_scaled_mut(&mut self, c: f64, other: &Vector) {
        assert_eq!(self.dim(), other.dim(), "vector dimension mismatch");
        for (a, b) in self.coords.iter_mut().zip(&other.coords) {
            *a += c * b;
        }
    }

    pub fn scale_mut(&mut self, c: f64) {
        for a in &mut self.coords {
            *a *= c;
        }
    }

    pub fn scaled(&self, c: f64) -> Vector {
        let mut out = self.clone();
        out.scale_mut(c);
        out
    }

    /// `a * x + b * y` in one pass.
    pub fn lincomb(a: f64, x: &Vector, b: f64, y: &Vector) -> Vector {
        assert_eq!(x.dim(), y.dim(), "vector dimension mismatch");
        Vector {
            coords: x
                .coords
                .iter()
                .zip(&y.coords)
                .map(|(xi, yi)| a * xi + b * yi)
                .collect(),
        }
    }
}

impl Add for &Vector {
    type Output = Vector;
    fn add(self, rhs: &Vector) -> Vector {
        Vector::lincomb(1.0, self, 1.0, rhs)
    }
}

impl Sub for &Vector {
    type Output = Vector;
    fn sub(self, rhs: &Vector) -> Vector {
        Vector::lincomb(1.0, self, -1.0, rhs)
    }
}

impl Mul<f64> for &Vector {
    type Output = Vector;
    fn mul(self, rhs: f64) -> Vector {
        self.scaled(rhs)
    }
}

/// One step of the incremental weighted running average:
/// returns `(alpha_cum - alpha_t)/alpha_cum * x_prev + alpha_t/alpha_cum * w_new`.
///
/// With cumulative weight equal to the step weight (the first round) the
/// result is exactly `w_new`, so no virtual "round zero" point is ever needed.
pub fn running_average_update(
    x_prev: &Vector,
    w_new: &Vector,
    alpha_t: f64,
    alpha_cum: f64,
) -> Result<Vector> {
    if alpha_t <= 0.0 || !alpha_t.is_finite() {
        return Err(Error::invalid(format!(
            "step weight must be positive and finite, got {alpha_t}"
        )));
    }
    if alpha_cum < alpha_t || alpha_cum.is_nan() || alpha_cum.is_infinite() {
        return Err(Error::invalid(format!(
            "cumulative weight {alpha_cum} must be at least the step weight {alpha_t}"
        )));
    }
    if x_prev.dim() != w_new.dim() {
        return Err(Error::DimensionMismatch {
            expected: x_prev.dim(),
            got: w_new.dim(),
        });
    }
    if alpha_cum == alpha_t {
        return Ok(w_new.clone());
    }
    let keep = (alpha_cum - alpha_t) / alpha_cum;
    let take = alpha_t / alpha_cum;
    Ok(Vector::lincomb(keep, x_prev, take, w_new))
}

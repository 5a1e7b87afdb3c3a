//! Logistic-loss objectives: stable evaluation and an exact-optimum solve.

use super::{Kind, Objective, ObjectiveInfo, SymMatrix};
use crate::error::{Error, Result};
use crate::vector::Vector;

/// `log(1 + exp(z))` without overflow.
fn softplus(z: f64) -> f64 {
    if z > 0.0 {
        z + (-z).exp().ln_1p()
    } else {
        z.exp().ln_1p()
    }
}

/// `1 / (1 + exp(-z))` without overflow.
fn sigmoid(z: f64) -> f64 {
    if z >= 0.0 {
        1.0 / (1.0 + (-z).exp())
    } else {
        let e = z.exp();
        e / (1.0 + e)
    }
}

/// Mean logistic loss and its gradient in one pass.
pub(super) fn evaluate(features: &[Vector], labels: &[f64], x: &Vector) -> (f64, Vector) {
    let n = features.len() as f64;
    let mut value = 0.0;
    let mut grad = Vector::zeros(x.dim());
    for (a, y) in features.iter().zip(labels) {
        let z = y * a.dot(x);
        value += softplus(-z) / n;
        grad.add_scaled_mut(-sigmoid(-z) * y / n, a);
    }
    (value, grad)
}

fn hessian(features: &[Vector], labels: &[f64], x: &Vector) -> Vec<f64> {
    let d = x.dim();
    let n = features.len() as f64;
    let mut h = vec![0.0; d * d];
    for (a, y) in features.iter().zip(labels) {
        let z = y * a.dot(x);
        let s = sigmoid(z);
        let w = s * (1.0 - s) / n;
        for i in 0..d {
            let wi = w * a.coords()[i];
            for j in 0..d {
                h[i * d + j] += wi * a.coords()[j];
            }
        }
    }
    h
}

/// Solve `H s = b` for symmetric positive definite `H` (dense Cholesky).
fn cholesky_solve(d: usize, h: &[f64], b: &Vector) -> Result<Vector> {
    let mut l = vec![0.0; d * d];
    for i in 0..d {
        for j in 0..=i {
            let mut sum = h[i * d + j];
            for k in 0..j {
                sum -= l[i * d + k] * l[j * d + k];
            }
            if i == j {
                if sum <= 0.0 {
                    return Err(Error::Data(
                        "hessian is not positive definite".to_string(),
                    ));
                }
                l[i * d + i] = sum.sqrt();
            } else {
                l[i * d + j] = sum / l[j * d + j];
            }
        }
    }
    // forward substitution L z = b, then back substitution L^T s = z
    let mut z = b.coords().to_vec();
    for i in 0..d {
        for k in 0..i {
            z[i] -= l[i * d + k] * z[k];
        }
        z[i] /= l[i * d + i];
    }
    for i in (0..d).rev() {
        for k in (i + 1)..d {
            z[i] -= l[k * d + i] * z[k];
        }
        z[i] /= l[i * d + i];
    }
    Vector::new(z)
}

/// Smallest margin `y_i <a_i, x>`. At a finite logistic optimum at least one
/// margin is nonpositive (otherwise scaling `x` up would lower every term),
/// so an all-positive minimum certifies separable data with the minimum at
/// infinity.
fn min_margin(features: &[Vector], labels: &[f64], x: &Vector) -> f64 {
    features
        .iter()
        .zip(labels)
        .map(|(a, y)| y * a.dot(x))
        .fold(f64::MAX, f64::min)
}

/// Damped Newton to the exact minimizer; errors if the data is separable
/// (gradient only vanishes toward infinity).
fn newton_minimize(features: &[Vector], labels: &[f64], dim: usize) -> Result<Vector> {
    let mut x = Vector::zeros(dim);
    let mut value = evaluate(features, labels, &x).0;
    for _ in 0..200 {
        let (_, grad) = evaluate(features, labels, &x);
        if grad.norm() <= 1e-13 {
            if min_margin(features, labels, &x) > 0.0 {
                return Err(Error::Data(
                    "logistic data is separable; no finite minimizer".to_string(),
                ));
            }
            return Ok(x);
        }
        let mut h = hessian(features, labels, &x);
        let step = match cholesky_solve(dim, &h, &grad) {
            Ok(s) => s,
            Err(_) => {
                // tiny ridge rescues a semidefinite hessian
                let trace: f64 = (0..dim).map(|i| h[i * dim + i]).sum();
                let ridge = 1e-12 * (trace / dim as f64).max(1e-300);
                for i in 0..dim {
                    h[i * dim + i] += ridge;
                }
                cholesky_solve(dim, &h, &grad)?
            }
        };
        let slope = grad.dot(&step);
        let mut t = 1.0;
        loop {
            let candidate = Vector::lincomb(1.0, &x, -t, &step);
            let cand_value = evaluate(features, labels, &candidate).0;
            if cand_value <= value - 1e-4 * t * slope {
                x = candidate;
                value = cand_value;
                break;
            }
            t *= 0.5;
            if t < 1e-12 {
                return Err(Error::Data(
                    "logistic minimization stalled; data may be separable".to_string(),
                ));
            }
        }
    }
    let (_, grad) = evaluate(features, labels, &x);
    if grad.norm() <= 1e-10 && min_margin(features, labels, &x) <= 0.0 {
        Ok(x)
    } else {
        Err(Error::Data(
            "logistic data appears separable; no finite minimizer".to_string(),
        ))
    }
}

fn validate(features: &[Vector], labels: &[f64]) -> Result<usize> {
    if features.is_empty() {
        return Err(Error::invalid("logistic needs at least one sample"));
    }
    if features.len() != labels.len() {
        return Err(Error::DimensionMismatch {
            expected: features.len(),
            got: labels.len(),
        });
    }
    let dim = features[0].dim();
    if features.iter().any(|a| a.dim() != dim) {
        return Err(Error::invalid("all feature rows must share one dimension"));
    }
    if labels.iter().any(|y| *y != 1.0 && *y != -1.0) {
        return Err(Error::invalid("labels must be +1 or -1"));
    }
    Ok(dim)
}

fn metadata_parts(features: &[Vector], dim: usize) -> (f64, f64) {
    let n = features.len() as f64;
    // smoothness: top eigenvalue of 1/(4n) * sum a a^T
    let mut gram = vec![0.0; dim * dim];
    for a in features {
        for i in 0..dim {
            let ai = a.coords()[i] / (4.0 * n);
            for j in 0..dim {
                gram[i * dim + j] += ai * a.coords()[j];
            }
        }
    }
    let gram = SymMatrix::from_rows(dim, gram);
    let smoothness = gram.eigen_max();
    // global gradient bound: per-sample gradient norm is at most ||a_i||
    let lipschitz = features.iter().map(Vector::norm).sum::<f64>() / n;
    (smoothness, lipschitz)
}

pub(super) fn build(features: Vec<Vector>, labels: Vec<f64>) -> Result<Objective> {
    let dim = validate(&features, &labels)?;
    let x_star = newton_minimize(&features, &labels, dim)?;
    let f_star = evaluate(&features, &labels, &x_star).0;
    finish(features, labels, dim, x_star, f_star)
}

pub(super) fn build_with_known_optimum(
    features: Vec<Vector>,
    labels: Vec<f64>,
    x_star: Vector,
    f_star: f64,
) -> Result<Objective> {
    let dim = validate(&features, &labels)?;
    finish(features, labels, dim, x_star, f_star)
}

fn finish(
    features: Vec<Vector>,
    labels: Vec<f64>,
    dim: usize,
    x_star: Vector,
    f_star: f64,
) -> Result<Objective> {
    let (smoothness, lipschitz) = metadata_parts(&features, dim);
    Ok(Objective {
        info: ObjectiveInfo {
            dim,
            smoothness: Some(smoothness),
            strong_convexity: None,
            x_star,
            f_star,
            lipschitz: Some(lipschitz),
        },
        kind: Kind::Logistic { features, labels },
    })
}

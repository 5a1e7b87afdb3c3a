//! Small dense symmetric matrices for synthetic quadratics.

use rand::Rng;

use crate::rng::standard_normal;
use crate::vector::Vector;

/// Dense symmetric `n x n` matrix, row-major. Sized for desk-scale problems
/// (`n <= a few hundred`); all operations are plain O(n^2)/O(n^3) loops.
#[derive(Clone, Debug)]
pub struct SymMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SymMatrix {
    pub fn diagonal(diag: &[f64]) -> Self {
        let n = diag.len();
        let mut data = vec![0.0; n * n];
        for (i, d) in diag.iter().enumerate() {
            data[i * n + i] = *d;
        }
        SymMatrix { n, data }
    }

    /// Wrap a row-major buffer that is already symmetric.
    pub(crate) fn from_rows(n: usize, data: Vec<f64>) -> Self {
        assert_eq!(data.len(), n * n, "buffer does not match dimension");
        SymMatrix { n, data }
    }

    /// `Q diag(spectrum) Q^T` for a random orthogonal `Q` drawn from `rng`
    /// (QR of a Gaussian matrix via modified Gram-Schmidt). The eigenvalues
    /// are exactly the spectrum entries up to rounding in the similarity
    /// transform.
    pub fn from_spectrum_rotated(spectrum: &[f64], rng: &mut impl Rng) -> Self {
        let n = spectrum.len();
        if n == 1 {
            return SymMatrix::diagonal(spectrum);
        }
        let q = random_orthogonal(n, rng);
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            for j in i..n {
                let mut sum = 0.0;
                for (k, lambda) in spectrum.iter().enumerate() {
                    sum += lambda * q[k][i] * q[k][j];
                }
                data[i * n + j] = sum;
                data[j * n + i] = sum;
            }
        }
        SymMatrix { n, data }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matvec(&self, x: &Vector) -> Vector {
        assert_eq!(x.dim(), self.n, "matrix-vector dimension mismatch");
        let coords = (0..self.n)
            .map(|i| {
                let row = &self.data[i * self.n..(i + 1) * self.n];
                row.iter().zip(x.coords()).map(|(a, b)| a * b).sum()
            })
            .collect();
        Vector::new(coords).expect("finite matrix times finite vector")
    }

    /// Largest eigenvalue by power iteration with a deterministic start.
    pub fn eigen_max(&self) -> f64 {
        let mut v = Vector::constant(self.n, 1.0 / (self.n as f64).sqrt())
            .expect("constant vector is finite");
        let mut rayleigh = 0.0;
        for _ in 0..20_000 {
            let mv = self.matvec(&v);
            let norm = mv.norm();
            if norm == 0.0 {
                return 0.0;
            }
            let next = mv.scaled(1.0 / norm);
            let r = next.dot(&self.matvec(&next));
            if (r - rayleigh).abs() <= 1e-14 * r.abs().max(1.0) {
                return r;
            }
            rayleigh = r;
            v = next;
        }
        rayleigh
    }
}

/// Rows of a random orthogonal matrix (each row has unit norm, rows are
/// mutually orthogonal).
fn random_orthogonal(n: usize, rng: &mut impl Rng) -> Vec<Vec<f64>> {
    let mut rows: Vec<Vec<f64>> = Vec::with_capacity(n);
    while rows.len() < n {
        let mut v: Vec<f64> = (0..n).map(|_| standard_normal(rng)).collect();
        for prev in &rows {
            let proj: f64 = v.iter().zip(prev).map(|(a, b)| a * b).sum();
            for (vi, pi) in v.iter_mut().zip(prev) {
                *vi -= proj * pi;
            }
        }
        // Re-orthogonalize once; plain Gram-Schmidt drifts for larger n.
        for prev in &rows {
            let proj: f64 = v.iter().zip(prev).map(|(a, b)| a * b).sum();
            for (vi, pi) in v.iter_mut().zip(prev) {
                *vi -= proj * pi;
            }
        }
        let norm: f64 = v.iter().map(|a| a * a).sum::<f64>().sqrt();
        if norm < 1e-8 {
            continue; // near-degenerate draw, try again
        }
        for vi in &mut v {
            *vi /= norm;
        }
        rows.push(v);
    }
    rows
}

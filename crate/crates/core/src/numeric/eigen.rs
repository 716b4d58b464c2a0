//! Cyclic Jacobi eigensolver for dense symmetric matrices.

use super::{Spectrum, SymMatrix};
use crate::error::{Error, Result};

/// Sweep cap for the cyclic Jacobi iteration.
pub const MAX_SWEEPS: usize = 100;
/// Stop once the off-diagonal Frobenius norm falls below this fraction of ‖A‖_F.
const OFF_DIAGONAL_TOL: f64 = 1e-14;
/// Accepted eigenpair residual relative to ‖A‖∞.
const RESIDUAL_TOL: f64 = 1e-10;

/// Eigenvalues (ascending) with matching unit eigenvectors.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    pub values: Vec<f64>,
    /// `vectors[k]` is the eigenvector of `values[k]`.
    pub vectors: Vec<Vec<f64>>,
    pub sweeps: usize,
    pub residual: f64,
}

/// All eigenvalues of `a` in ascending order.
pub fn sym_eigenvalues(a: &SymMatrix) -> Result<Spectrum> {
    Ok(Spectrum::new(sym_eigen(a)?.values))
}

fn off_diagonal_norm(a: &[f64], n: usize) -> f64 {
    let mut s = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            s += 2.0 * a[i * n + j] * a[i * n + j];
        }
    }
    s.sqrt()
}

pub(crate) fn sym_eigen(a: &SymMatrix) -> Result<EigenDecomposition> {
    let n = a.order();
    if (0..n).flat_map(|i| a.row(i)).any(|x| !x.is_finite()) {
        return Err(Error::NumericFailure {
            sweeps: 0,
            residual: f64::NAN,
        });
    }
    let mut w: Vec<f64> = (0..n).flat_map(|i| a.row(i).to_vec()).collect();
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    let threshold = OFF_DIAGONAL_TOL * a.frobenius_norm();

    let mut sweeps = 0;
    let mut converged = off_diagonal_norm(&w, n) <= threshold;
    while !converged && sweeps < MAX_SWEEPS {
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut w, &mut v, n, p, q);
            }
        }
        converged = off_diagonal_norm(&w, n) <= threshold;
    }

    let mut pairs: Vec<(f64, Vec<f64>)> = (0..n)
        .map(|k| (w[k * n + k], (0..n).map(|r| v[r * n + k]).collect()))
        .collect();
    pairs.sort_by(|x, y| x.0.total_cmp(&y.0));

    let residual = max_residual(a, &pairs);
    let scale = a.inf_norm();
    if !converged || residual > RESIDUAL_TOL * scale.max(f64::MIN_POSITIVE) {
        return Err(Error::NumericFailure { sweeps, residual });
    }
    let (values, vectors) = pairs.into_iter().unzip();
    Ok(EigenDecomposition {
        values,
        vectors,
        sweeps,
        residual,
    })
}

/// Annihilates `w[p][q]` with a plane rotation and accumulates it into `v`.
fn rotate(w: &mut [f64], v: &mut [f64], n: usize, p: usize, q: usize) {
    let apq = w[p * n + q];
    if apq == 0.0 {
        return;
    }
    let app = w[p * n + p];
    let aqq = w[q * n + q];
    let theta = (aqq - app) / (2.0 * apq);
    let t = if theta.abs() > 1e150 {
        0.5 / theta
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    let tau = s / (1.0 + c);

    w[p * n + p] = app - t * apq;
    w[q * n + q] = aqq + t * apq;
    w[p * n + q] = 0.0;
    w[q * n + p] = 0.0;
    for r in 0..n {
        if r == p || r == q {
            continue;
        }
        let g = w[r * n + p];
        let h = w[r * n + q];
        let rp = g - s * (h + g * tau);
        let rq = h + s * (g - h * tau);
        w[r * n + p] = rp;
        w[p * n + r] = rp;
        w[r * n + q] = rq;
        w[q * n + r] = rq;
    }
    for r in 0..n {
        let g = v[r * n + p];
        let h = v[r * n + q];
        v[r * n + p] = g - s * (h + g * tau);
        v[r * n + q] = h + s * (g - h * tau);
    }
}

fn max_residual(a: &SymMatrix, pairs: &[(f64, Vec<f64>)]) -> f64 {
    pairs
        .iter()
        .map(|(lambda, q)| {
            a.mul_vec(q)
                .iter()
                .zip(q)
                .map(|(aq, qi)| (aq - lambda * qi).abs())
                .fold(0.0, f64::max)
        })
        .fold(0.0, f64::max)
}

//! Double-precision spectral machinery.

mod eigen;
mod laplacian;
mod pinv;

use std::fmt::Write as _;

pub use eigen::{sym_eigenvalues, EigenDecomposition, MAX_SWEEPS};
pub use laplacian::{
    build_m_n, laplacian, normalized_laplacian, reduced_reconstruction_delta, split_blocks,
    BlockSplit, ReducedMatrices,
};
pub use pinv::{pseudoinverse_psd, pseudoinverse_with_expected_nullity};

pub(crate) use eigen::sym_eigen;

/// Grouping tolerance for eigenvalue multiplicities.
pub const MULTIPLICITY_TOL: f64 = 1e-8;

/// Dense symmetric matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    order: usize,
    data: Vec<f64>,
}

impl SymMatrix {
    /// Builds the matrix from its upper triangle: `f(i, j)` is called for
    /// `i <= j` only and mirrored below the diagonal.
    pub fn from_upper(order: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        assert!(order >= 1, "matrix order must be positive");
        let mut data = vec![0.0; order * order];
        for i in 0..order {
            for j in i..order {
                let v = f(i, j);
                data[i * order + j] = v;
                data[j * order + i] = v;
            }
        }
        SymMatrix { order, data }
    }

    /// Builds from row slices, taking the upper triangle as authoritative.
    pub fn from_rows(rows: &[Vec<f64>]) -> Self {
        let order = rows.len();
        assert!(rows.iter().all(|r| r.len() == order), "rows must be square");
        Self::from_upper(order, |i, j| rows[i][j])
    }

    pub fn zeros(order: usize) -> Self {
        Self::from_upper(order, |_, _| 0.0)
    }

    pub fn identity(order: usize) -> Self {
        Self::from_upper(order, |i, j| if i == j { 1.0 } else { 0.0 })
    }

    pub fn diagonal(values: &[f64]) -> Self {
        Self::from_upper(values.len(), |i, j| if i == j { values[i] } else { 0.0 })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.order + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.order..(i + 1) * self.order]
    }

    pub fn trace(&self) -> f64 {
        (0..self.order).map(|i| self.get(i, i)).sum()
    }

    /// Maximum absolute row sum.
    pub fn inf_norm(&self) -> f64 {
        (0..self.order)
            .map(|i| self.row(i).iter().map(|x| x.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        (0..self.order)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Dense row-major product `self * other`.
    pub fn product(&self, other: &SymMatrix) -> Vec<f64> {
        assert_eq!(self.order, other.order);
        let n = self.order;
        let mut out = vec![0.0; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out[i * n + j] += a * other.get(k, j);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &SymMatrix) -> SymMatrix {
        assert_eq!(self.order, other.order);
        Self::from_upper(self.order, |i, j| self.get(i, j) + other.get(i, j))
    }

    pub fn sub(&self, other: &SymMatrix) -> SymMatrix {
        assert_eq!(self.order, other.order);
        Self::from_upper(self.order, |i, j| self.get(i, j) - other.get(i, j))
    }

    pub fn scale(&self, s: f64) -> SymMatrix {
        Self::from_upper(self.order, |i, j| s * self.get(i, j))
    }

    /// Largest absolute entrywise difference.
    pub fn max_abs_diff(&self, other: &SymMatrix) -> f64 {
        assert_eq!(self.order, other.order);
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    /// CSV dump, one row per line, 17 significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for i in 0..self.order {
            let row: Vec<String> = self.row(i).iter().map(|x| format!("{x:.17e}")).collect();
            let _ = writeln!(out, "{}", row.join(","));
        }
        out
    }
}

/// Ascending eigenvalues of a symmetric matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    values: Vec<f64>,
}

impl Spectrum {
    /// Sorts the given values ascending.
    pub fn new(mut values: Vec<f64>) -> Self {
        values.sort_by(f64::total_cmp);
        Spectrum { values }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }

    /// Merges with another spectrum, keeping ascending order.
    pub fn union(&self, other: &Spectrum) -> Spectrum {
        Spectrum::new(self.values.iter().chain(&other.values).copied().collect())
    }

    /// Multiplicity groups `(representative, count)` under the default tolerance.
    pub fn multiplicity_groups(&self) -> Vec<(f64, usize)> {
        self.groups_with_tol(MULTIPLICITY_TOL)
    }

    /// Consecutive values closer than `tol` share a group; the representative
    /// is the group mean.
    pub fn groups_with_tol(&self, tol: f64) -> Vec<(f64, usize)> {
        let mut groups: Vec<(f64, usize, f64)> = Vec::new();
        for &v in &self.values {
            match groups.last_mut() {
                Some((sum, count, last)) if (v - *last).abs() <= tol => {
                    *sum += v;
                    *count += 1;
                    *last = v;
                }
                _ => groups.push((v, 1, v)),
            }
        }
        groups
            .into_iter()
            .map(|(sum, count, _)| (sum / count as f64, count))
            .collect()
    }

    /// Largest elementwise distance to another spectrum of the same length.
    pub fn max_abs_diff(&self, other: &Spectrum) -> Option<f64> {
        if self.len() != other.len() {
            return None;
        }
        Some(
            self.values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max),
        )
    }
}

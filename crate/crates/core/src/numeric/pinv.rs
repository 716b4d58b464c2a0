use super::{sym_eigen, SymMatrix};
use crate::error::{Error, Result};

/// Eigenvalues below `-NEGATIVE_TOL` mean the input is not PSD.
const NEGATIVE_TOL: f64 = 1e-9;
/// Eigenvalues below `ZERO_CUTOFF · ‖A‖∞` are treated as zero.
const ZERO_CUTOFF: f64 = 1e-10;

/// Moore–Penrose pseudoinverse of a positive semidefinite matrix, allowing
/// the single null direction of a connected graph's Laplacian.
pub fn pseudoinverse_psd(a: &SymMatrix) -> Result<SymMatrix> {
    pseudoinverse_with_expected_nullity(a, 1)
}

/// As [`pseudoinverse_psd`] with an explicit bound on the null-space dimension.
pub fn pseudoinverse_with_expected_nullity(a: &SymMatrix, expected: usize) -> Result<SymMatrix> {
    let decomposition = sym_eigen(a)?;
    let cutoff = ZERO_CUTOFF * a.inf_norm();
    if let Some(&lowest) = decomposition.values.first() {
        if lowest < -NEGATIVE_TOL {
            return Err(Error::NotPositiveSemidefinite(lowest));
        }
    }
    let null = decomposition
        .values
        .iter()
        .filter(|&&v| v.max(0.0) <= cutoff)
        .count();
    if null > expected {
        return Err(Error::RankAnomaly {
            expected,
            found: null,
        });
    }
    let kept: Vec<(f64, &[f64])> = decomposition
        .values
        .iter()
        .zip(&decomposition.vectors)
        .filter(|(v, _)| v.max(0.0) > cutoff)
        .map(|(v, q)| (1.0 / v, q.as_slice()))
        .collect();
    Ok(SymMatrix::from_upper(a.order(), |i, j| {
        kept.iter().map(|(inv, q)| inv * q[i] * q[j]).sum()
    }))
}

//! Laplacians, the twin-block split of a strong prism, and the reduced
//! tridiagonal matrices `M` and `N`.

use super::{sym_eigenvalues, Spectrum, SymMatrix};
use crate::error::{Error, Result};
use crate::graph::{prism_pairing, strong_prism_polyomino, Graph};

/// Combinatorial Laplacian `D - A`.
pub fn laplacian(g: &Graph) -> SymMatrix {
    SymMatrix::from_upper(g.order(), |i, j| {
        if i == j {
            g.degree(i) as f64
        } else if g.has_edge(i, j) {
            -1.0
        } else {
            0.0
        }
    })
}

/// Normalized Laplacian `D^{-1/2} L D^{-1/2}`.
///
/// Isolated vertices use `d^{-1/2} = 0`, so their row and column are zero.
pub fn normalized_laplacian(g: &Graph) -> SymMatrix {
    SymMatrix::from_upper(g.order(), |i, j| {
        let (di, dj) = (g.degree(i), g.degree(j));
        if i == j {
            if di == 0 {
                0.0
            } else {
                1.0
            }
        } else if g.has_edge(i, j) {
            -1.0 / ((di * dj) as f64).sqrt()
        } else {
            0.0
        }
    })
}

/// Symmetric and antisymmetric parts of a normalized Laplacian with respect
/// to a twin involution.
#[derive(Debug, Clone)]
pub struct BlockSplit {
    /// `𝓛_11 + 𝓛_12`.
    pub la: SymMatrix,
    /// `𝓛_11 - 𝓛_12`.
    pub ls: SymMatrix,
}

impl BlockSplit {
    pub fn spectrum(&self) -> Result<(Spectrum, Spectrum)> {
        Ok((sym_eigenvalues(&self.la)?, sym_eigenvalues(&self.ls)?))
    }
}

/// Splits `𝓛(g)` along a twin involution `pairing`.
///
/// `pairing` must be a fixed-point-free involution sending the first half of
/// the vertices onto the second half. Row `i` of each block corresponds to
/// vertex `i` of the first half and its twin `pairing[i]`. The blocks must
/// satisfy `𝓛_11 = 𝓛_22` and `𝓛_12 = 𝓛_21` exactly.
pub fn split_blocks(g: &Graph, pairing: &[usize]) -> Result<BlockSplit> {
    let order = g.order();
    let structure = |row, col, detail: String| Error::Structure { row, col, detail };
    if pairing.len() != order || order % 2 != 0 {
        return Err(structure(
            0,
            0,
            format!("pairing of length {} on {order} vertices", pairing.len()),
        ));
    }
    let half = order / 2;
    for (i, &p) in pairing.iter().enumerate() {
        if p >= order || pairing[p] != i || p == i {
            return Err(structure(
                i,
                p,
                "pairing is not a fixed-point-free involution".into(),
            ));
        }
        if (i < half) == (p < half) {
            return Err(structure(i, p, "twins must lie in opposite halves".into()));
        }
    }

    let l = normalized_laplacian(g);
    let v11 = |i: usize, j: usize| l.get(i, j);
    let v12 = |i: usize, j: usize| l.get(i, pairing[j]);
    let v21 = |i: usize, j: usize| l.get(pairing[i], j);
    let v22 = |i: usize, j: usize| l.get(pairing[i], pairing[j]);
    for i in 0..half {
        for j in 0..half {
            if v11(i, j) != v22(i, j) {
                return Err(structure(
                    i,
                    j,
                    format!("L11 = {} but L22 = {}", v11(i, j), v22(i, j)),
                ));
            }
            if v12(i, j) != v21(i, j) {
                return Err(structure(
                    i,
                    j,
                    format!("L12 = {} but L21 = {}", v12(i, j), v21(i, j)),
                ));
            }
        }
    }
    Ok(BlockSplit {
        la: SymMatrix::from_upper(half, |i, j| v11(i, j) + v12(i, j)),
        ls: SymMatrix::from_upper(half, |i, j| v11(i, j) - v12(i, j)),
    })
}

/// The reduced tridiagonal matrices whose spectra make up `½𝓛_A`.
#[derive(Debug, Clone)]
pub struct ReducedMatrices {
    pub m: SymMatrix,
    pub n: SymMatrix,
    /// `false` for `n = 1`, where the 5/7 degree pattern does not occur and
    /// the matrices do not describe `𝓛_A(B_1²)`.
    pub pattern_regime: bool,
}

/// Builds `M` and `N` of order `n + 1` from the 5/7 degree pattern: end
/// couplings `-1/√35`, interior couplings `-1/7`, diagonals `(1/5, 2/7, …,
/// 2/7, 1/5)` for `M` and `(3/5, 4/7, …, 4/7, 3/5)` for `N`.
///
/// For `n = 1` the 2×2 pattern is taken literally; see
/// [`ReducedMatrices::pattern_regime`].
pub fn build_m_n(n: usize) -> Result<ReducedMatrices> {
    if n == 0 {
        return Err(Error::InvalidParameter(
            "reduced matrices require n >= 1".into(),
        ));
    }
    let size = n + 1;
    let end = |i: usize| i == 0 || i == size - 1;
    let coupling = |i: usize| {
        // coupling between i and i+1
        if i == 0 || i + 1 == size - 1 {
            -1.0 / 35f64.sqrt()
        } else {
            -1.0 / 7.0
        }
    };
    let build = |corner: f64, interior: f64| {
        SymMatrix::from_upper(size, |i, j| {
            if i == j {
                if end(i) {
                    corner
                } else {
                    interior
                }
            } else if j == i + 1 {
                coupling(i)
            } else {
                0.0
            }
        })
    };
    Ok(ReducedMatrices {
        m: build(1.0 / 5.0, 2.0 / 7.0),
        n: build(3.0 / 5.0, 4.0 / 7.0),
        pattern_regime: n >= 2,
    })
}

/// Largest entrywise gap between `𝓛_A(B_n²)` and its reconstruction
/// `2·[[C, D], [D, C]]` with `C = (M + N)/2`, `D = (M - N)/2`.
///
/// Near machine precision for `n >= 2`; order 1/5 for `n = 1`.
pub fn reduced_reconstruction_delta(n: usize) -> Result<f64> {
    let reduced = build_m_n(n)?;
    let g = strong_prism_polyomino(n)?;
    let split = split_blocks(&g, &prism_pairing(n))?;
    let k = n + 1;
    let c = reduced.m.add(&reduced.n).scale(0.5);
    let d = reduced.m.sub(&reduced.n).scale(0.5);
    let rebuilt = SymMatrix::from_upper(2 * k, |i, j| {
        let block = if (i < k) == (j < k) { &c } else { &d };
        2.0 * block.get(i % k, j % k)
    });
    Ok(rebuilt.max_abs_diff(&split.la))
}

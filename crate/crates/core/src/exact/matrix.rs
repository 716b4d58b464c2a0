//! Dense exact matrices and fraction-free (Bareiss) determinants.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::rational::Rational;

/// Determinant of an integer matrix given row-major, by Bareiss elimination
/// with row pivoting. Every intermediate division is exact.
pub fn bareiss_det_integer(order: usize, mut a: Vec<BigInt>) -> BigInt {
    assert_eq!(a.len(), order * order, "matrix must be square");
    if order == 0 {
        return BigInt::one();
    }
    let idx = |i: usize, j: usize| i * order + j;
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..order - 1 {
        if a[idx(k, k)].is_zero() {
            let Some(pivot) = (k + 1..order).find(|&i| !a[idx(i, k)].is_zero()) else {
                return BigInt::zero();
            };
            for j in 0..order {
                a.swap(idx(k, j), idx(pivot, j));
            }
            negate = !negate;
        }
        let akk = a[idx(k, k)].clone();
        for i in k + 1..order {
            let aik = a[idx(i, k)].clone();
            for j in k + 1..order {
                let v = &a[idx(i, j)] * &akk - &aik * &a[idx(k, j)];
                a[idx(i, j)] = v / &prev;
            }
            a[idx(i, k)] = BigInt::zero();
        }
        prev = akk;
    }
    let det = a[idx(order - 1, order - 1)].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// Dense square matrix of rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatMatrix {
    order: usize,
    entries: Vec<Rational>,
}

impl RatMatrix {
    pub fn from_fn(order: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let entries = (0..order * order)
            .map(|k| f(k / order, k % order))
            .collect();
        RatMatrix { order, entries }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let order = rows.len();
        assert!(rows.iter().all(|r| r.len() == order), "rows must be square");
        RatMatrix {
            order,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.order + j]
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.order).all(|i| (i + 1..self.order).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Principal submatrix on `indices` (in the given order).
    pub fn principal_submatrix(&self, indices: &[usize]) -> RatMatrix {
        RatMatrix::from_fn(indices.len(), |i, j| {
            self.get(indices[i], indices[j]).clone()
        })
    }

    /// Leading `k × k` principal submatrix.
    pub fn leading(&self, k: usize) -> RatMatrix {
        let idx: Vec<usize> = (0..k).collect();
        self.principal_submatrix(&idx)
    }

    /// Exact determinant. Each row is scaled by the lcm of its denominators
    /// before Bareiss elimination; the scale factors are divided out at the end.
    pub fn det(&self) -> Rational {
        let n = self.order;
        let mut ints = Vec::with_capacity(n * n);
        let mut scale = BigInt::one();
        for i in 0..n {
            let row = &self.entries[i * n..(i + 1) * n];
            let lcm = row.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
            for r in row {
                ints.push(r.numer() * (&lcm / r.denom()));
            }
            scale *= lcm;
        }
        Rational::new(bareiss_det_integer(n, ints), scale)
    }
}

//! Leading-minor sequences and characteristic-polynomial coefficients of the
//! reduced matrices `M` and `N`, each computed both by direct exact
//! determinants and by the closed forms in `Q(√3)`.
//!
//! `M` and `N` carry `-1/√35` couplings, so they are not rational. Both are
//! symmetric tridiagonal, and any principal minor of a tridiagonal matrix
//! depends only on its diagonal and on the products of paired off-diagonal
//! entries. The exact images used here are the diagonally similar rational
//! matrices with upper coupling `-1/7` and lower coupling `-7c²`, where `c²`
//! is the squared symmetric coupling (`1/35` at the ends, `1/49` inside).
//! Every principal minor, hence every characteristic-polynomial coefficient,
//! is preserved.

use itertools::Itertools;
use num_traits::{One, Zero};
use serde::Serialize;

use super::matrix::RatMatrix;
use super::quad::QuadSurd;
use super::rational::{int, rat, Rational};
use crate::error::{Error, Result};

fn require_n(n: usize, what: &str) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidParameter(format!("{what} requires n >= 1")));
    }
    Ok(())
}

fn exact_reduced(n: usize, corner: Rational, interior: Rational) -> Result<RatMatrix> {
    require_n(n, "reduced matrix")?;
    let size = n + 1;
    let upper = rat(-1, 7);
    let lower = |i: usize| {
        // coupling between i and i+1: ends are 1/35, interior 1/49
        let c2 = if i == 0 || i + 2 == size {
            rat(1, 35)
        } else {
            rat(1, 49)
        };
        -(c2 / rat(1, 7))
    };
    Ok(RatMatrix::from_fn(size, |i, j| {
        if i == j {
            if i == 0 || i == size - 1 {
                corner.clone()
            } else {
                interior.clone()
            }
        } else if j == i + 1 {
            upper.clone()
        } else if i == j + 1 {
            lower(j)
        } else {
            Rational::zero()
        }
    }))
}

/// Rational image of `M` (order `n + 1`) with the same principal minors.
pub fn exact_reduced_m(n: usize) -> Result<RatMatrix> {
    exact_reduced(n, rat(1, 5), rat(2, 7))
}

/// Rational image of `N` (order `n + 1`) with the same principal minors.
pub fn exact_reduced_n(n: usize) -> Result<RatMatrix> {
    exact_reduced(n, rat(3, 5), rat(4, 7))
}

/// Sum of all `k × k` principal minors (`1` for `k = 0`).
pub fn principal_minor_sum(a: &RatMatrix, k: usize) -> Rational {
    (0..a.order())
        .combinations(k)
        .map(|idx| a.principal_submatrix(&idx).det())
        .fold(Rational::zero(), |acc, d| acc + d)
}

/// One leading minor by determinant and by closed form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinorPair {
    pub index: usize,
    pub determinant: Rational,
    pub closed_form: Rational,
}

impl MinorPair {
    pub fn agrees(&self) -> bool {
        self.determinant == self.closed_form
    }
}

/// `m_i = (1/5)(1/7)^{i-1}`.
pub fn m_closed(i: usize) -> Rational {
    assert!(i >= 1);
    rat(1, 5) * rat(1, 7).pow(i as i32 - 1)
}

fn x_plus() -> QuadSurd {
    QuadSurd::new(rat(2, 7), rat(1, 7))
}

fn x_minus() -> QuadSurd {
    x_plus().conjugate()
}

/// The `N` leading-minor closed form
/// `w_i = (21+7√3)/30 · x₁^i + (21−7√3)/30 · x₂^i` with `x₁,₂ = (2±√3)/7`,
/// evaluated in `Q(√3)` without rationalizing. At `i = 0` it gives `7/5`,
/// not the empty determinant `1`.
pub fn w_closed(i: usize) -> QuadSurd {
    let z1 = QuadSurd::new(rat(21, 30), rat(7, 30));
    let z2 = z1.conjugate();
    &z1 * &x_plus().pow(i as u64) + &z2 * &x_minus().pow(i as u64)
}

/// Leading minors `m_1..m_{i_max}` of `M`: exact determinants of the leading
/// submatrices of `M` (built at `n = i_max`) paired with the closed form.
pub fn minor_seq_m(i_max: usize) -> Result<Vec<MinorPair>> {
    require_n(i_max, "minor sequence")?;
    let m = exact_reduced_m(i_max)?;
    Ok((1..=i_max)
        .map(|i| MinorPair {
            index: i,
            determinant: m.leading(i).det(),
            closed_form: m_closed(i),
        })
        .collect())
}

/// Leading minors `w_1..w_{i_max}` of `N` with the `Q(√3)` closed form.
/// A closed form with a surviving `√3` part is a consistency error.
pub fn minor_seq_n(i_max: usize) -> Result<Vec<MinorPair>> {
    require_n(i_max, "minor sequence")?;
    let n = exact_reduced_n(i_max)?;
    (1..=i_max)
        .map(|i| {
            let closed = w_closed(i);
            let closed_form = closed.to_rational().map_err(|_| {
                Error::consistency(format!("w_{i} surd part"), closed.surd_part(), 0)
            })?;
            Ok(MinorPair {
                index: i,
                determinant: n.leading(i).det(),
                closed_form,
            })
        })
        .collect()
}

/// How the independent coefficient oracle was computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CoeffRoute {
    /// Sum of principal minors, each by exact determinant.
    PrincipalMinors,
    /// Block-convolution of exact leading minors.
    MinorConvolution,
}

/// `(-1)^n a_n` and `(-1)^{n-1} a_{n-1}` of `Φ(M) = x(x^n + a_1 x^{n-1} + … + a_n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoeffA {
    pub n: usize,
    pub an_closed: Rational,
    pub an_oracle: Rational,
    pub an1_closed: Rational,
    pub an1_oracle: Rational,
    pub route: CoeffRoute,
}

/// Largest `n` for which the oracle enumerates principal minors directly.
const ENUMERATION_LIMIT: usize = 10;

/// Both coefficients by closed form and by an independent oracle
/// (principal-minor enumeration for `n <= 10`, minor convolution beyond).
/// Disagreement is a consistency error.
pub fn coeff_a(n: usize) -> Result<CoeffA> {
    let route = if n <= ENUMERATION_LIMIT {
        CoeffRoute::PrincipalMinors
    } else {
        CoeffRoute::MinorConvolution
    };
    coeff_a_with(n, route)
}

pub fn coeff_a_with(n: usize, route: CoeffRoute) -> Result<CoeffA> {
    require_n(n, "coeff_a")?;
    let seventh = rat(1, 7);
    let nn = int(n as i64);
    let an_closed = rat(7 * n as i64 + 3, 25) * seventh.pow(n as i32 - 1);
    let an1_closed = (int(49) * &nn * &nn * &nn + int(63) * &nn * &nn + int(38) * &nn) / int(150)
        * seventh.pow(n as i32 - 1);

    let m = exact_reduced_m(n)?;
    let (an_oracle, an1_oracle) = match route {
        CoeffRoute::PrincipalMinors => (principal_minor_sum(&m, n), principal_minor_sum(&m, n - 1)),
        CoeffRoute::MinorConvolution => {
            // lead[k] = det of leading k×k block; by the end-for-end symmetry
            // of M this is also the det of the trailing k×k block (k <= n).
            let lead: Vec<Rational> = (0..=n).map(|k| m.leading(k).det()).collect();
            let an: Rational = (1..=n + 1)
                .map(|i| &lead[i - 1] * &lead[n + 1 - i])
                .fold(Rational::zero(), |a, b| a + b);
            // det of the interior run strictly between deleted rows i < j
            let interior: Vec<Rational> = (0..n)
                .map(|len| {
                    m.principal_submatrix(&(1..1 + len).collect::<Vec<_>>())
                        .det()
                })
                .collect();
            let mut an1 = Rational::zero();
            for i in 1..=n + 1 {
                for j in i + 1..=n + 1 {
                    an1 += &lead[i - 1] * &lead[n + 1 - j] * &interior[j - i - 1];
                }
            }
            (an, an1)
        }
    };
    if an_closed != an_oracle {
        return Err(Error::consistency(
            format!("(-1)^n a_n at n={n}"),
            &an_closed,
            &an_oracle,
        ));
    }
    if an1_closed != an1_oracle {
        return Err(Error::consistency(
            format!("(-1)^(n-1) a_(n-1) at n={n}"),
            &an1_closed,
            &an1_oracle,
        ));
    }
    Ok(CoeffA {
        n,
        an_closed,
        an_oracle,
        an1_closed,
        an1_oracle,
        route,
    })
}

/// Routes to `det N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DetNRoutes {
    pub n: usize,
    /// `49√3/75 · (x₁^{n+1} − x₂^{n+1})`.
    pub closed: Rational,
    /// `(3/5) w_n − (1/35) w_{n−1}` with the empty determinant `w_0 = 1`.
    pub expansion: Rational,
    /// Same expansion with the closed-form extension `w_0 = 7/5`.
    pub expansion_extended_w0: Rational,
    /// Bareiss determinant of the exact image of `N`.
    pub determinant: Rational,
}

impl DetNRoutes {
    pub fn all_agree(&self) -> bool {
        self.closed == self.determinant && self.expansion == self.determinant
    }
}

fn w_rational(i: usize) -> Result<Rational> {
    if i == 0 {
        return Ok(Rational::one());
    }
    let w = w_closed(i);
    w.to_rational()
        .map_err(|_| Error::consistency(format!("w_{i} surd part"), w.surd_part(), 0))
}

/// `det N` by closed form, by last-row expansion, and by exact determinant.
/// Disagreement is returned as data, not as an error.
pub fn det_n_closed(n: usize) -> Result<DetNRoutes> {
    require_n(n, "det_n_closed")?;
    let k = (n + 1) as u64;
    let diff = &x_plus().pow(k) - &x_minus().pow(k);
    let closed_q = &QuadSurd::sqrt3().scale(&rat(49, 75)) * &diff;
    let closed = closed_q.to_rational().map_err(|_| {
        Error::consistency(format!("det N surd part at n={n}"), closed_q.surd_part(), 0)
    })?;
    let wn = w_rational(n)?;
    let wn1 = w_rational(n - 1)?;
    let wn1_ext = if n == 1 { rat(7, 5) } else { wn1.clone() };
    Ok(DetNRoutes {
        n,
        closed,
        expansion: rat(3, 5) * &wn - rat(1, 35) * wn1,
        expansion_extended_w0: rat(3, 5) * wn - rat(1, 35) * wn1_ext,
        determinant: exact_reduced_n(n)?.det(),
    })
}

/// The two candidate signs of the `√3` term in the `(-1)^n b_n` closed form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SignVariant {
    /// `+14√3/225`; disagrees with the convolution oracle at every tested `n`.
    Plus,
    /// `−14√3/225`; agrees with the convolution oracle.
    Minus,
}

/// `(-1)^n b_n` of `Φ(N)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoeffB {
    pub n: usize,
    pub plus_variant: Rational,
    pub minus_variant: Rational,
    /// `Σ_{i=0}^{n} w_i w_{n−i}` with determinant `w_i` and `w_0 = 1`.
    pub convolution: Rational,
    /// Direct sum of `n × n` principal minors (only for `n <= 10`).
    pub principal_minors: Option<Rational>,
}

impl CoeffB {
    /// Variants that reproduce the convolution oracle.
    pub fn matching_variants(&self) -> Vec<SignVariant> {
        let mut out = Vec::new();
        if self.plus_variant == self.convolution {
            out.push(SignVariant::Plus);
        }
        if self.minus_variant == self.convolution {
            out.push(SignVariant::Minus);
        }
        out
    }

    pub fn oracles_agree(&self) -> bool {
        self.principal_minors
            .as_ref()
            .map_or(true, |p| *p == self.convolution)
    }
}

fn coeff_b_variant(n: usize, variant: SignVariant) -> Result<Rational> {
    let nn = n as u64;
    let a1 = x_plus().pow(nn + 1);
    let a0 = x_plus().pow(nn);
    let sum1 = &a1 + &a1.conjugate();
    let sum0 = &a0 + &a0.conjugate();
    let diff0 = &a0 - &a0.conjugate();
    let surd = QuadSurd::sqrt3().scale(&rat(14, 225));
    let surd = match variant {
        SignVariant::Plus => surd,
        SignVariant::Minus => -surd,
    };
    let value = &(&sum1.scale(&rat(343 * n as i64 + 441, 150)) - &sum0.scale(&rat(21, 50)))
        + &(&surd * &diff0);
    value
        .to_rational()
        .map_err(|_| Error::consistency(format!("b_n surd part at n={n}"), value.surd_part(), 0))
}

/// `(-1)^n b_n` by both sign variants and by the convolution oracle.
pub fn coeff_b(n: usize) -> Result<CoeffB> {
    require_n(n, "coeff_b")?;
    let nmat = exact_reduced_n(n)?;
    let w: Vec<Rational> = (0..=n).map(|k| nmat.leading(k).det()).collect();
    let convolution = (0..=n)
        .map(|i| &w[i] * &w[n - i])
        .fold(Rational::zero(), |a, b| a + b);
    Ok(CoeffB {
        n,
        plus_variant: coeff_b_variant(n, SignVariant::Plus)?,
        minus_variant: coeff_b_variant(n, SignVariant::Minus)?,
        convolution,
        principal_minors: (n <= ENUMERATION_LIMIT).then(|| principal_minor_sum(&nmat, n)),
    })
}

//! Exact evaluation of the closed forms for `B_n²` in `Q(√3)`.
//!
//! Every expression that involves `(2 ± √3)^k` is evaluated with
//! [`QuadSurd`] arithmetic and only rationalized at the very end; a surviving
//! `√3` coefficient is reported as a consistency error.

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{coeff_b, det_n_closed, int, rat, QuadSurd, Rational};

/// Which closed form produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FormulaId {
    SumInvAlpha,
    SumInvBeta,
    KfStarReduced,
    KfStarClosed,
    TauClosed,
    GutmanClosed,
}

impl FormulaId {
    pub fn as_str(self) -> &'static str {
        match self {
            FormulaId::SumInvAlpha => "sum-inv-alpha",
            FormulaId::SumInvBeta => "sum-inv-beta",
            FormulaId::KfStarReduced => "kfstar-reduced",
            FormulaId::KfStarClosed => "kfstar-closed",
            FormulaId::TauClosed => "tau-closed",
            FormulaId::GutmanClosed => "gutman-closed",
        }
    }
}

/// An exactly evaluated closed form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedFormResult {
    pub n: usize,
    pub value: Rational,
    pub formula: FormulaId,
    /// `n >= 2`: the 5/7 degree pattern the formulas are built on is present.
    pub pattern_regime: bool,
}

impl ClosedFormResult {
    fn new(n: usize, value: Rational, formula: FormulaId) -> Self {
        ClosedFormResult {
            n,
            value,
            formula,
            pattern_regime: n >= 2,
        }
    }

    /// The value as an integer, if it is one.
    pub fn integer(&self) -> Option<BigInt> {
        self.value.is_integer().then(|| self.value.to_integer())
    }
}

fn require_n(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidParameter(
            "closed forms require n >= 1".into(),
        ));
    }
    Ok(())
}

fn rationalize(value: QuadSurd, what: &str, n: usize) -> Result<Rational> {
    if value.is_rational() {
        Ok(value.rational_part().clone())
    } else {
        Err(Error::consistency(
            format!("{what} surd part at n={n}"),
            value.surd_part(),
            0,
        ))
    }
}

fn two_plus_sqrt3() -> QuadSurd {
    QuadSurd::new(int(2), int(1))
}

/// `(2+√3)^k + (2−√3)^k` and `(2+√3)^k − (2−√3)^k`.
fn power_sum_diff(k: u64) -> (QuadSurd, QuadSurd) {
    let a = two_plus_sqrt3().pow(k);
    let b = a.conjugate();
    (&a + &b, &a - &b)
}

/// `Σ_{i≥2} 1/α_i = (49n³ + 63n² + 38n) / (6(7n + 3))`.
pub fn sum_inv_alpha(n: usize) -> Result<ClosedFormResult> {
    require_n(n)?;
    let nn = int(n as i64);
    let num = int(49) * &nn * &nn * &nn + int(63) * &nn * &nn + int(38) * &nn;
    let value = num / int(6 * (7 * n as i64 + 3));
    Ok(ClosedFormResult::new(n, value, FormulaId::SumInvAlpha))
}

/// `Σ 1/β_j` from its `Q(√3)` closed form.
pub fn sum_inv_beta(n: usize) -> Result<ClosedFormResult> {
    require_n(n)?;
    let k = n as u64;
    let (sum1, diff1) = power_sum_diff(k + 1);
    let (_, diff0) = power_sum_diff(k);
    let numerator =
        &(&QuadSurd::sqrt3().scale(&int(7 * n as i64 - 9)) * &sum1) - &diff0.scale(&int(4));
    let denominator = diff1.scale(&int(6));
    // + 9/2, folded into the numerator so only one quotient is reduced
    let value =
        &(&numerator.scale(&int(2)) + &denominator.scale(&int(9))) / &denominator.scale(&int(2));
    Ok(ClosedFormResult::new(
        n,
        rationalize(value, "sum of 1/beta", n)?,
        FormulaId::SumInvBeta,
    ))
}

/// `Σ 1/β_j` by Vieta: `(-1)^n b_n / det N`, with the minus-sign `b_n`
/// variant and the exact determinant of `N`.
pub fn sum_inv_beta_vieta(n: usize) -> Result<Rational> {
    require_n(n)?;
    Ok(coeff_b(n)?.minus_variant / det_n_closed(n)?.determinant)
}

/// `Kf*` assembled from the reduced spectra:
/// `4(7n+3)·(4·5/6 + (2n−2)·7/8 + ½Σ1/α + ½Σ1/β)`.
pub fn kfstar_via_reduced(n: usize) -> Result<ClosedFormResult> {
    require_n(n)?;
    let half = rat(1, 2);
    let inner = rat(10, 3)
        + int(2 * n as i64 - 2) * rat(7, 8)
        + &half * sum_inv_alpha(n)?.value
        + &half * sum_inv_beta(n)?.value;
    let value = int(4 * (7 * n as i64 + 3)) * inner;
    Ok(ClosedFormResult::new(n, value, FormulaId::KfStarReduced))
}

/// The closed form for `Kf*(B_n²)` evaluated exactly in `Q(√3)`.
pub fn kfstar_closed(n: usize) -> Result<ClosedFormResult> {
    require_n(n)?;
    let k = n as u64;
    let n_i = n as i64;
    let (sum1, diff1) = power_sum_diff(k + 1);
    let (_, diff0) = power_sum_diff(k);
    let numerator = &(&QuadSurd::sqrt3().scale(&int((7 * n_i - 9) * (7 * n_i + 3))) * &sum1)
        - &diff0.scale(&int(4 * (7 * n_i + 3)));
    let denominator = diff1.scale(&int(3));
    // polynomial part 49n³/3 + 70n² + 141n + 46, over the common denominator 3
    let nn = BigInt::from(n_i);
    let polynomial = 49 * &nn * &nn * &nn + 210 * &nn * &nn + 423 * &nn + 138;
    let polynomial = Rational::from_integer(polynomial);
    let value = &(&numerator.scale(&int(3)) + &denominator.scale(&polynomial))
        / &denominator.scale(&int(3));
    Ok(ClosedFormResult::new(
        n,
        rationalize(value, "Kf*", n)?,
        FormulaId::KfStarClosed,
    ))
}

/// `τ(B_n²) = √3 · 27 · 2^{8n−3} · ((2+√3)^{n+1} − (2−√3)^{n+1})`.
/// The result must be a positive integer.
pub fn tau_closed(n: usize) -> Result<ClosedFormResult> {
    require_n(n)?;
    let (_, diff) = power_sum_diff(n as u64 + 1);
    let scale = Rational::from_integer(BigInt::from(27) * (BigInt::one() << (8 * n - 3)));
    let value = rationalize(&QuadSurd::sqrt3().scale(&scale) * &diff, "tau", n)?;
    if !value.is_integer() || !value.is_positive() {
        return Err(Error::consistency(
            format!("tau at n={n} is a positive integer"),
            &value,
            "positive integer",
        ));
    }
    Ok(ClosedFormResult::new(n, value, FormulaId::TauClosed))
}

/// `Gut(B_n²) = 392n³/3 + 364n² + 1102n/3 + 38`, required to be an integer.
pub fn gutman_closed(n: usize) -> Result<ClosedFormResult> {
    require_n(n)?;
    let nn = int(n as i64);
    let value = rat(392, 3) * &nn * &nn * &nn + int(364) * &nn * &nn + rat(1102, 3) * &nn + int(38);
    if !value.is_integer() {
        return Err(Error::consistency(
            format!("Gutman at n={n} is an integer"),
            &value,
            "integer",
        ));
    }
    Ok(ClosedFormResult::new(n, value, FormulaId::GutmanClosed))
}

/// `Kf*/Gut` for `n = 2..=n_max` from the closed forms.
#[derive(Debug, Clone, PartialEq)]
pub struct RatioSeries {
    pub ratios: Vec<(usize, Rational)>,
    /// Ratio of the cubic leading coefficients, `(49/3)/(392/3)`.
    pub leading_ratio: Rational,
    /// Whether `|ratio − 1/8|` is non-increasing over the series. Reported,
    /// not asserted.
    pub monotone_approach: bool,
}

pub fn kfstar_gutman_ratio(n: usize) -> Result<Rational> {
    Ok(kfstar_closed(n)?.value / gutman_closed(n)?.value)
}

/// Whether `|Kf*/Gut − 1/8| < bound`, decided by integer cross-multiplication
/// so the (large) gap itself is never reduced.
pub fn ratio_gap_below(n: usize, bound: &Rational) -> Result<bool> {
    let k = kfstar_closed(n)?.value;
    let g = gutman_closed(n)?.value;
    // Kf*/Gut − 1/8 = (8 kn gd − gn kd) / (8 kd gn)
    let diff: BigInt = BigInt::from(8) * k.numer() * g.denom() - g.numer() * k.denom();
    let diff = diff.abs();
    let scale = BigInt::from(8) * k.denom() * g.numer();
    Ok(diff * bound.denom() < scale * bound.numer())
}

pub fn ratio_series(n_max: usize) -> Result<RatioSeries> {
    if n_max < 2 {
        return Err(Error::InvalidParameter(format!(
            "ratio series requires n_max >= 2, got {n_max}"
        )));
    }
    let ratios = (2..=n_max)
        .map(|n| Ok((n, kfstar_gutman_ratio(n)?)))
        .collect::<Result<Vec<_>>>()?;
    let eighth = rat(1, 8);
    let gaps: Vec<Rational> = ratios.iter().map(|(_, r)| (r - &eighth).abs()).collect();
    Ok(RatioSeries {
        monotone_approach: gaps.windows(2).all(|w| w[1] <= w[0]),
        leading_ratio: rat(49, 3) / rat(392, 3),
        ratios,
    })
}

//! Exact arithmetic: rationals, the field `Q(√3)`, fraction-free
//! determinants, and the determinant sequences of the reduced matrices.

mod matrix;
mod minors;
mod quad;
mod rational;

pub use matrix::{bareiss_det_integer, RatMatrix};
pub use minors::{
    coeff_a, coeff_a_with, coeff_b, det_n_closed, exact_reduced_m, exact_reduced_n, m_closed,
    minor_seq_m, minor_seq_n, principal_minor_sum, w_closed, CoeffA, CoeffB, CoeffRoute,
    DetNRoutes, MinorPair, SignVariant,
};
pub use quad::QuadSurd;
pub use rational::{
    int, parse_rational, rat, to_decimal_string, to_f64, ExactValue, Rational, DECIMAL_DIGITS,
};

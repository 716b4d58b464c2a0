//! Strong prisms of linear polyomino chains.
//!
//! The crate builds the strong prism `B_n ⊠ K_2` of a linear polyomino chain
//! and computes its normalized-Laplacian spectrum, resistance-based indices,
//! Gutman index and spanning-tree count. Every quantity is available through
//! at least two independent routes (numeric eigensolve, exact determinants,
//! exact evaluation in `Q(√3)`) so that the closed-form expressions for the
//! family can be checked against direct computation.
//!
//! Module map:
//!
//! * [`graph`]: graph construction with a frozen vertex order.
//! * [`numeric`]: dense symmetric matrices, Jacobi eigensolver, block split.
//! * [`invariants`]: distance, resistance and spanning-tree invariants.
//! * [`exact`]: rationals, `Q(√3)`, Bareiss determinants, minor sequences.
//! * [`closed_forms`]: exact evaluation of the family's closed forms.
//! * [`verify`]: the per-`n` verification table driven by the CLI.

pub mod closed_forms;
pub mod error;
pub mod exact;
pub mod graph;
pub mod invariants;
pub mod numeric;
pub mod verify;

pub use error::{Error, Result};
pub use exact::{QuadSurd, RatMatrix, Rational};
pub use graph::{Family, Graph};
pub use invariants::InvariantReport;
pub use numeric::{Spectrum, SymMatrix};

pub mod arrangements;
pub mod classify;
pub mod groupcalc;
pub mod invariants;
pub mod linalg;
pub mod rootsystems;
pub mod scalars;

pub use scalars::{Field, Fp61, Rational, Scalar};

/// Matrices over the exact coefficient field.
pub type ScalarMatrix = linalg::Matrix<Scalar>;
/// Matrices over the rationals.
pub type RationalMatrix = linalg::Matrix<Rational>;
/// Polynomials over the exact coefficient field.
pub type Poly = invariants::SparsePoly<Scalar>;
/// Finite matrix groups with exact entries.
pub type ScalarGroup = groupcalc::MatrixGroup<Scalar>;
/// Finite matrix groups reduced modulo the 61-bit prime.
pub type ModularGroup = groupcalc::MatrixGroup<Fp61>;

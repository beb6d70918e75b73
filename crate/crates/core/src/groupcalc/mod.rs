//! Orbits of root subsets, normalizers of parabolic subgroups, the action
//! of `C_I` on `X_I`, Molien series and reflection degrees.

mod ambient;
mod exponents;
mod matgroup;
mod molien;
mod orbit;
mod quotient;
mod reflections;
mod rootset;

pub use ambient::{ambient_exponents, orbit_characteristic_polynomial};
pub use exponents::ExponentMultiset;
pub use matgroup::{charpoly, is_reflection, reflection_root, MatrixGroup};
pub use molien::{binomial, free_algebra_series, molien_series, reflection_degrees, series_inverse};
pub use orbit::{
    element_order, fix_space, orbit_stabilizer, restrict_matrix, GroupElement, StabilizerResult, DEFAULT_ORBIT_CAP,
};
pub use quotient::{quotient_action, GroupImage, QuotientAction, DEFAULT_GROUP_CAP};
pub use reflections::{
    is_reflecting, project_off, reflecting_hyperplanes, restricted_hyperplanes, RestrictedHyperplane,
};
pub use rootset::{parabolic_lines, RootSet, MAX_LINES};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("orbit exceeds the cap of {0} root sets")]
    OrbitCap(usize),
    #[error("group order exceeds the enumeration cap of {0}")]
    GroupOrderCap(usize),
    #[error("group was not enumerated (order above the cap)")]
    NotEnumerated,
    #[error("Molien coefficient is not a nonnegative integer")]
    NonIntegralMolien,
    #[error("Molien series is not of the form Π 1/(1 - t^d) with full rank")]
    NotAReflectionGroup,
    #[error("enumerated image has order {found}, orbit predicts {expected}")]
    OrderMismatch { expected: u128, found: u128 },
    #[error("exponents disagree: table {table}, arrangement {computed}")]
    ExponentMismatch { table: String, computed: String },
    #[error(transparent)]
    Arrangement(#[from] crate::arrangements::ArrangementError),
}

//! Exact coefficient fields: rationals and cyclotomic extensions for the
//! non-crystallographic types.

mod cyclotomic;
mod field;
mod modular;
mod rational;
mod scalar;

pub use cyclotomic::{cyclotomic_modulus, CyclotomicContext, MAX_BOND};
pub use field::{pow, Field};
pub use modular::{Fp61, P61};
pub use rational::{ParseRationalError, Rational};
pub use scalar::{CycloElem, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("scalars from different cyclotomic contexts (m = {0} and m = {1})")]
    ContextMismatch(u32, u32),
    #[error("bond {0} needs no extension (m must be at least 3)")]
    BondTooSmall(u32),
    #[error("bond {0} exceeds the configured maximum {1}")]
    BondTooLarge(u32, u32),
}

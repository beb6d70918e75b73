//! Root systems of finite Coxeter groups, parabolic subsystems and their
//! conjugacy classes.

mod build;
mod labels;
mod parabolic;
mod types;

pub use build::{RootPerm, RootSystem};
pub use labels::{LabelEntry, LabelMap};
pub use parabolic::{
    fixed_subspace, fundamental_weights, parabolic_subsets_up_to_conjugacy, subsystem_type, ParabolicClass,
    ParabolicSubset,
};
pub use types::{Component, CoxeterType, Family};

use crate::scalars::ScalarError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RootSystemError {
    #[error("unsupported Coxeter type {0}")]
    UnsupportedType(String),
    #[error("cannot parse Coxeter type {0:?}")]
    Parse(String),
    #[error("Cartan matrix is singular")]
    SingularCartan,
    #[error("reflection closure exceeded the expected {0} positive roots")]
    ClosureOverflow(usize),
    #[error("root system has {0} positive roots; root-set keys hold at most {1}")]
    TooManyRoots(usize, usize),
    #[error("orbit of subset {subset:?} exceeds the cap of {cap} root sets")]
    OrbitCap { subset: Vec<usize>, cap: usize },
    #[error("node {0} out of range for rank {1}")]
    NodeOutOfRange(usize, usize),
    #[error("label map: {0}")]
    LabelMap(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

//! Hyperplane arrangements over the exact scalars: restriction,
//! intersection posets, Möbius functions, characteristic polynomials and
//! exponents.

mod charpoly;
mod poset;

use std::collections::HashSet;

use num_traits::Zero;

pub use charpoly::{exponents_if_free, CharPoly};
pub use poset::{IntersectionPoset, DEFAULT_POSET_CAP};

use crate::groupcalc::QuotientAction;
use crate::linalg::{dot, projective_normalize};
use crate::rootsystems::RootSystem;
use crate::scalars::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ArrangementError {
    #[error("zero covector cannot define a hyperplane")]
    ZeroCovector,
    #[error("covector has length {found}, ambient dimension is {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("intersection poset exceeds the cap of {0} elements")]
    PosetCap(usize),
    #[error("arrangement has {0} hyperplanes; poset keys hold at most {1}")]
    TooManyHyperplanes(usize, usize),
    #[error("characteristic polynomial {0} does not split over the integers")]
    NotSplitting(String),
    #[error("group action was not enumerated")]
    NotEnumerated,
}

/// Hyperplanes in a space of dimension `ambient_dim`, given by projectively
/// normalized covectors (first nonzero entry one), without repeats.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrangement {
    ambient_dim: usize,
    hyperplanes: Vec<Vec<Scalar>>,
}

impl Arrangement {
    pub fn new(ambient_dim: usize, covectors: Vec<Vec<Scalar>>) -> Result<Self, ArrangementError> {
        let mut seen = HashSet::new();
        let mut hyperplanes = Vec::new();
        for c in covectors {
            if c.len() != ambient_dim {
                return Err(ArrangementError::DimensionMismatch { expected: ambient_dim, found: c.len() });
            }
            let n = projective_normalize(&c).ok_or(ArrangementError::ZeroCovector)?;
            if seen.insert(n.clone()) {
                hyperplanes.push(n);
            }
        }
        Ok(Arrangement { ambient_dim, hyperplanes })
    }

    pub fn empty(ambient_dim: usize) -> Self {
        Arrangement { ambient_dim, hyperplanes: Vec::new() }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn hyperplanes(&self) -> &[Vec<Scalar>] {
        &self.hyperplanes
    }

    pub fn len(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hyperplanes.is_empty()
    }

    /// Same hyperplanes, ignoring order.
    pub fn same_hyperplanes(&self, other: &Arrangement) -> bool {
        self.ambient_dim == other.ambient_dim && self.is_subarrangement_of(other) && other.len() == self.len()
    }

    pub fn is_subarrangement_of(&self, other: &Arrangement) -> bool {
        let theirs: HashSet<&Vec<Scalar>> = other.hyperplanes.iter().collect();
        self.hyperplanes.iter().all(|h| theirs.contains(h))
    }

    pub fn characteristic_polynomial(&self, cap: usize) -> Result<CharPoly, ArrangementError> {
        Ok(IntersectionPoset::build(self, cap)?.characteristic_polynomial())
    }
}

/// One hyperplane per positive root, covector = the root.
pub fn reflection_arrangement(rs: &RootSystem) -> Arrangement {
    Arrangement::new(rs.rank(), rs.positive_roots().to_vec()).expect("roots are nonzero")
}

/// `𝒜^X`: restrictions `H ∩ X` for `X ⊄ H`, as covectors on `X` in the
/// coordinates given by the basis `x_basis` (column vectors in the ambient
/// space).
pub fn restrict_arrangement(a: &Arrangement, x_basis: &[Vec<Scalar>]) -> Arrangement {
    let restricted: Vec<Vec<Scalar>> = a
        .hyperplanes
        .iter()
        .map(|h| x_basis.iter().map(|x| dot(h, x)).collect::<Vec<Scalar>>())
        .filter(|c: &Vec<Scalar>| c.iter().any(|v| !v.is_zero()))
        .collect();
    Arrangement::new(x_basis.len(), restricted).expect("restricted covectors are nonzero")
}

/// `𝒜^{X_I}` in the coordinates of `X_I^*` indexed by the nodes outside `I`.
pub fn parabolic_restriction(rs: &RootSystem, subset: &[usize]) -> Arrangement {
    let keep: Vec<usize> = (0..rs.rank()).filter(|i| !subset.contains(i)).collect();
    let covectors: Vec<Vec<Scalar>> = rs
        .positive_roots()
        .iter()
        .map(|r| keep.iter().map(|&i| r[i].clone()).collect::<Vec<Scalar>>())
        .filter(|c| c.iter().any(|v| !v.is_zero()))
        .collect();
    Arrangement::new(keep.len(), covectors).expect("restricted covectors are nonzero")
}

/// `𝒜(X_I, C_I)` from the reflections of the enumerated group.
pub fn group_arrangement(qa: &QuotientAction) -> Result<Arrangement, ArrangementError> {
    let image = qa.image.as_ref().ok_or(ArrangementError::NotEnumerated)?;
    Arrangement::new(qa.dim(), image.reflection_covectors())
}

/// `𝒜(X_I, C_I)` from the reflecting-hyperplane test; needs no enumeration.
pub fn reflecting_arrangement(qa: &QuotientAction) -> Arrangement {
    Arrangement::new(qa.dim(), qa.reflecting.clone()).expect("reflecting covectors are nonzero")
}

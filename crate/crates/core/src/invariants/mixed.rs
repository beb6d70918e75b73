use crate::linalg::Matrix;
use crate::rootsystems::{fundamental_weights, RootSystem};
use crate::scalars::Scalar;

use super::poly::SparsePoly;
use super::InvariantError;

/// Variable labels `a1, …, ar` for the simple-root coordinates.
pub fn root_variables(rank: usize) -> Vec<String> {
    (1..=rank).map(|i| format!("a{i}")).collect()
}

/// The basis `{ω_s : s ∉ I} ∪ {α_s : s ∈ I}` of `V^*`, in node order.
#[derive(Debug, Clone)]
pub struct MixedBasis {
    pub subset: Vec<usize>,
    /// Row `s` is `ω_s` or `α_s` in simple-root coordinates.
    pub forward: Matrix<Scalar>,
    pub inverse: Matrix<Scalar>,
}

impl MixedBasis {
    pub fn new(rs: &RootSystem, subset: &[usize]) -> Self {
        let r = rs.rank();
        let weights = fundamental_weights(rs);
        let rows: Vec<Vec<Scalar>> = (0..r)
            .map(|s| {
                if subset.contains(&s) {
                    (0..r).map(|i| Scalar::from(i64::from(i == s))).collect()
                } else {
                    weights[s].clone()
                }
            })
            .collect();
        let forward = Matrix::from_rows(rows);
        let inverse = forward.inverse().expect("mixed basis is a basis");
        let mut subset = subset.to_vec();
        subset.sort_unstable();
        MixedBasis { subset, forward, inverse }
    }

    pub fn rank(&self) -> usize {
        self.forward.rows()
    }

    /// Nodes outside `I`, i.e. the surviving coordinates on `X_I`.
    pub fn kept(&self) -> Vec<usize> {
        (0..self.rank()).filter(|s| !self.subset.contains(s)).collect()
    }

    /// `w{s}` for `s ∉ I` and `a{s}` for `s ∈ I`.
    pub fn variables(&self) -> Vec<String> {
        (0..self.rank())
            .map(|s| if self.subset.contains(&s) { format!("a{}", s + 1) } else { format!("w{}", s + 1) })
            .collect()
    }

    pub fn restricted_variables(&self) -> Vec<String> {
        self.kept().iter().map(|s| format!("w{}", s + 1)).collect()
    }

    /// Coordinates of the covector `c` (simple-root coordinates) in the
    /// mixed basis.
    pub fn coordinates(&self, c: &[Scalar]) -> Vec<Scalar> {
        self.inverse.apply_left(c)
    }

    /// Coordinates of `c|_{X_I}` on the basis `{ω_s|_{X_I} : s ∉ I}`.
    pub fn restricted_coordinates(&self, c: &[Scalar]) -> Vec<Scalar> {
        let full = self.coordinates(c);
        self.kept().iter().map(|&s| full[s].clone()).collect()
    }
}

/// Rewrites `p` (in the variables `a1..ar`) in the mixed basis.
pub fn to_mixed_basis(mb: &MixedBasis, p: &SparsePoly<Scalar>) -> Result<SparsePoly<Scalar>, InvariantError> {
    if p.nvars() != mb.rank() {
        return Err(InvariantError::DimensionMismatch { expected: mb.rank(), found: p.nvars() });
    }
    let forms = mb.inverse.to_rows();
    Ok(p.substitute_linear(mb.variables(), &forms))
}

/// Sets `α_s = 0` for `s ∈ I`; the result lives on `X_I`.
pub fn restrict_poly(mb: &MixedBasis, p: &SparsePoly<Scalar>) -> SparsePoly<Scalar> {
    p.restrict_to(&mb.kept())
}

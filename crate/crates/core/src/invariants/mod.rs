//! Polynomial invariants of `W`, their restriction to `X_I`, the Jacobian
//! test for surjectivity of the restriction map, and dimension counting.

mod jacobian;
mod mixed;
mod poly;
mod refute;

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub use jacobian::{
    jacobian_determinant, restricted_invariant, surjectivity_jacobian_test, EvaluationCertificate, JacobianOptions,
    JacobianResult, DEFAULT_SEED,
};
pub use mixed::{restrict_poly, root_variables, to_mixed_basis, MixedBasis};
pub use poly::{scalar_json, SparsePoly};
pub use refute::{invariant_dimension, refute_surjectivity, Refutation, DEFAULT_REFUTATION_BOUND};

use crate::groupcalc::GroupError;
use crate::linalg::dot;
use crate::rootsystems::{fundamental_weights, RootSystem};
use crate::scalars::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum InvariantError {
    #[error("polynomial has {found} variables, expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("{found} degrees given for a fixed space of dimension {expected}")]
    DegreeCount { expected: usize, found: usize },
    #[error("degree must be positive")]
    ZeroDegree,
    #[error("no fundamental weight orbit gives a nonzero invariant of degree {0}")]
    NoInvariant(u32),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// `Σ_{α∈Φ⁺} α^d` in the variables `a1..ar`.
pub fn power_sum_invariant(rs: &RootSystem, d: u32) -> Result<SparsePoly<Scalar>, InvariantError> {
    if d == 0 {
        return Err(InvariantError::ZeroDegree);
    }
    Ok(power_sum(root_variables(rs.rank()), rs.positive_roots(), d))
}

/// `Σ_{α∈Φ} α^d`, invariant under `W` for every `d`.
pub fn full_power_sum(rs: &RootSystem, d: u32) -> Result<SparsePoly<Scalar>, InvariantError> {
    if d == 0 {
        return Err(InvariantError::ZeroDegree);
    }
    let roots: Vec<Vec<Scalar>> =
        rs.positive_roots().iter().flat_map(|r| [r.clone(), r.iter().map(|x| -x.clone()).collect()]).collect();
    Ok(power_sum(root_variables(rs.rank()), &roots, d))
}

pub(crate) fn power_sum(vars: Vec<String>, forms: &[Vec<Scalar>], d: u32) -> SparsePoly<Scalar> {
    let mut acc = SparsePoly::zero(vars.clone());
    for f in forms {
        acc = &acc + &SparsePoly::linear(vars.clone(), f).pow(d);
    }
    acc
}

/// `W`-orbit of a covector under the simple reflections.
pub fn covector_orbit(rs: &RootSystem, v: &[Scalar]) -> Vec<Vec<Scalar>> {
    let mut seen: HashSet<Vec<Scalar>> = HashSet::new();
    seen.insert(v.to_vec());
    let mut out = vec![v.to_vec()];
    let mut head = 0;
    while head < out.len() {
        let cur = out[head].clone();
        head += 1;
        for j in 0..rs.rank() {
            let w = rs.reflect_simple(j, &cur);
            if seen.insert(w.clone()) {
                out.push(w);
            }
        }
    }
    out
}

/// Linear forms whose `d`-th power sum is a nonzero `W`-invariant.
///
/// For even `d` these are the positive roots. For odd `d` the sum over
/// `Φ⁺` is not invariant, since reflections send some positive roots to
/// negatives, so the orbit of a fundamental weight is used instead,
/// trying weights by increasing orbit size until the power sum is nonzero
/// at a fixed random point.
pub fn invariant_forms(rs: &RootSystem, d: u32) -> Result<Vec<Vec<Scalar>>, InvariantError> {
    if d == 0 {
        return Err(InvariantError::ZeroDegree);
    }
    if d % 2 == 0 {
        return Ok(rs.positive_roots().to_vec());
    }
    let mut orbits: Vec<Vec<Vec<Scalar>>> = fundamental_weights(rs).iter().map(|w| covector_orbit(rs, w)).collect();
    orbits.sort_by_key(|o| o.len());
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    let point: Vec<Scalar> = (0..rs.rank()).map(|_| Scalar::from(rng.gen_range(1i64..=97))).collect();
    for orbit in orbits {
        let mut total = Scalar::from(0);
        for f in &orbit {
            let x = dot(f, &point);
            let mut p = Scalar::from(1);
            for _ in 0..d {
                p = p * &x;
            }
            total += p;
        }
        if total != Scalar::from(0) {
            return Ok(orbit);
        }
    }
    Err(InvariantError::NoInvariant(d))
}

/// A nonzero `W`-invariant of degree `d` in the variables `a1..ar`.
pub fn invariant_of_degree(rs: &RootSystem, d: u32) -> Result<SparsePoly<Scalar>, InvariantError> {
    let forms = invariant_forms(rs, d)?;
    Ok(power_sum(root_variables(rs.rank()), &forms, d))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn build(s: &str) -> RootSystem {
        RootSystem::build(&s.parse().unwrap()).unwrap()
    }

    fn act(rs: &RootSystem, j: usize, p: &SparsePoly<Scalar>) -> SparsePoly<Scalar> {
        // a simple reflection acts on the coordinate covectors a_i
        let forms: Vec<Vec<Scalar>> = (0..rs.rank())
            .map(|i| {
                let mut e = vec![Scalar::from(0); rs.rank()];
                e[i] = Scalar::from(1);
                rs.reflect_simple(j, &e)
            })
            .collect();
        p.substitute_linear(p.vars().to_vec(), &forms)
    }

    #[test]
    fn a2_quadratic() {
        let p = power_sum_invariant(&build("A2"), 2).unwrap();
        assert_eq!(p.coefficient(&[2, 0]), Scalar::from(2));
        assert_eq!(p.coefficient(&[1, 1]), Scalar::from(2));
        assert_eq!(p.coefficient(&[0, 2]), Scalar::from(2));
        assert_eq!(p.num_terms(), 3);
    }

    #[test]
    fn a1_quadratic() {
        let p = power_sum_invariant(&build("A1"), 2).unwrap();
        assert_eq!(p.num_terms(), 1);
        assert_eq!(p.coefficient(&[2]), Scalar::from(1));
    }

    #[test]
    fn full_sums_are_invariant() {
        for (t, d) in [("B3", 4), ("G2", 6), ("H3", 2), ("A3", 4)] {
            let rs = build(t);
            let f = full_power_sum(&rs, d).unwrap();
            for j in 0..rs.rank() {
                assert_eq!(act(&rs, j, &f), f, "{t} d={d}");
            }
        }
    }

    #[test]
    fn odd_degree_forms_give_invariants() {
        for (t, d) in [("A3", 3), ("E6", 5), ("D5", 5), ("I2(5)", 5)] {
            let rs = build(t);
            let f = invariant_of_degree(&rs, d).unwrap();
            assert!(!f.is_zero());
            for j in 0..rs.rank() {
                assert_eq!(act(&rs, j, &f), f, "{t} d={d}");
            }
        }
    }

    #[test]
    fn positive_sum_with_odd_degree_is_not_invariant() {
        let rs = build("A2");
        let f = power_sum_invariant(&rs, 3).unwrap();
        assert_ne!(act(&rs, 0, &f), f);
    }

    #[test]
    fn orbit_of_weight_matches_index() {
        let rs = build("E6");
        let w = fundamental_weights(&rs);
        assert_eq!(covector_orbit(&rs, &w[0]).len(), 27);
    }
}

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::mixed::MixedBasis;
use super::poly::{scalar_json, SparsePoly};
use super::{invariant_forms, power_sum, InvariantError};
use crate::groupcalc::binomial;
use crate::linalg::Matrix;
use crate::rootsystems::RootSystem;
use crate::scalars::Scalar;

/// Seed of the evaluation point used by the probabilistic pre-check.
pub const DEFAULT_SEED: u64 = 0x5eed_2010;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct JacobianOptions {
    pub seed: u64,
    /// Skip the exact expansion after a nonzero evaluation when the
    /// determinant could have more monomials than this.
    pub exact_term_limit: u64,
    pub always_exact: bool,
}

impl Default for JacobianOptions {
    fn default() -> Self {
        JacobianOptions { seed: DEFAULT_SEED, exact_term_limit: 20_000, always_exact: false }
    }
}

/// The Jacobian evaluated at an integer point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvaluationCertificate {
    pub point: Vec<Scalar>,
    pub value: Scalar,
}

#[derive(Debug, Clone)]
pub struct JacobianResult {
    pub degrees: Vec<u32>,
    /// `ρ(f_i)` on the coordinates `w_s`, `s ∉ I`.
    pub restricted_invariants: Vec<SparsePoly<Scalar>>,
    pub evaluation: EvaluationCertificate,
    /// Exact determinant, when it was expanded.
    pub determinant: Option<SparsePoly<Scalar>>,
    pub nonzero: bool,
}

impl JacobianResult {
    /// Largest possible degree of the determinant, `Σ (d_i - 1)`.
    pub fn degree_bound(&self) -> u32 {
        self.degrees.iter().map(|d| d - 1).sum()
    }

    /// A monomial of the exact determinant with its coefficient.
    pub fn witness(&self) -> Option<(Vec<u32>, Scalar)> {
        self.determinant.as_ref().and_then(|d| d.leading_term().map(|(e, c)| (e.clone(), c.clone())))
    }

    pub fn to_json(&self, dump_invariants: bool) -> Value {
        let mut v = json!({
            "degrees": self.degrees,
            "nonzero": self.nonzero,
            "evaluation": {
                "point": self.evaluation.point.iter().map(scalar_json).collect::<Vec<_>>(),
                "value": scalar_json(&self.evaluation.value),
            },
            "determinant_degree": self.determinant.as_ref().and_then(|d| d.degree()),
            "witness": self.witness().map(|(e, c)| json!([e, scalar_json(&c)])),
        });
        if dump_invariants {
            v["restricted_invariants"] = Value::Array(self.restricted_invariants.iter().map(|p| p.to_json()).collect());
        }
        v
    }
}

/// `ρ(f)` for the degree-`d` invariant of [`invariant_forms`], computed as
/// `Σ (ρ λ)^d` over the restricted linear forms.
pub fn restricted_invariant(rs: &RootSystem, mb: &MixedBasis, d: u32) -> Result<SparsePoly<Scalar>, InvariantError> {
    let forms: Vec<Vec<Scalar>> = invariant_forms(rs, d)?.iter().map(|f| mb.restricted_coordinates(f)).collect();
    Ok(power_sum(mb.restricted_variables(), &forms, d))
}

/// Exact `det(∂p_i/∂x_j)` by Laplace expansion with memoized minors.
pub fn jacobian_determinant(
    polys: &[SparsePoly<Scalar>],
    vars: &[String],
) -> Result<SparsePoly<Scalar>, InvariantError> {
    let l = vars.len();
    if polys.len() != l {
        return Err(InvariantError::DegreeCount { expected: l, found: polys.len() });
    }
    if let Some(p) = polys.iter().find(|p| p.nvars() != l) {
        return Err(InvariantError::DimensionMismatch { expected: l, found: p.nvars() });
    }
    let entries: Vec<Vec<SparsePoly<Scalar>>> =
        polys.iter().map(|p| (0..l).map(|j| p.derivative(j)).collect()).collect();
    Ok(polynomial_determinant(&entries, vars.to_vec()))
}

fn polynomial_determinant(m: &[Vec<SparsePoly<Scalar>>], vars: Vec<String>) -> SparsePoly<Scalar> {
    let l = m.len();
    let one = SparsePoly::constant(vars.clone(), Scalar::from(1));
    if l == 0 {
        return one;
    }
    // minors on the first c columns, keyed by row set
    let mut minors: HashMap<u32, SparsePoly<Scalar>> = HashMap::new();
    minors.insert(0, one);
    for c in 0..l {
        let mut next: HashMap<u32, SparsePoly<Scalar>> = HashMap::new();
        for (&rows, minor) in &minors {
            if minor.is_zero() {
                continue;
            }
            for i in 0..l {
                if rows >> i & 1 == 1 || m[i][c].is_zero() {
                    continue;
                }
                let set = rows | 1 << i;
                // sign of moving row i into position within the sorted set
                let above = (rows & ((1u32 << i) - 1)).count_ones() as usize;
                let shift = c - above;
                let term = &m[i][c] * minor;
                let term = if shift % 2 == 1 { -&term } else { term };
                let entry = next.entry(set).or_insert_with(|| SparsePoly::zero(vars.clone()));
                *entry = &*entry + &term;
            }
        }
        minors = next;
    }
    minors.remove(&((1u32 << l) - 1)).unwrap_or_else(|| SparsePoly::zero(vars))
}

/// Builds `f_{d_i}`, restricts to `X_I` through the mixed basis, and tests
/// the Jacobian determinant of the restrictions.
///
/// A nonzero determinant means the `ρ(f_i)` are algebraically independent
/// of the degrees of `C_I`, hence generate `ℂ[X_I]^{C_I}` and `ρ` is
/// surjective. A zero determinant is inconclusive.
pub fn surjectivity_jacobian_test(
    rs: &RootSystem,
    subset: &[usize],
    degrees: &[u32],
    opts: &JacobianOptions,
) -> Result<JacobianResult, InvariantError> {
    let mb = MixedBasis::new(rs, subset);
    let l = mb.kept().len();
    if degrees.len() != l {
        return Err(InvariantError::DegreeCount { expected: l, found: degrees.len() });
    }
    let mut degrees = degrees.to_vec();
    degrees.sort_unstable();
    let vars = mb.restricted_variables();
    let restricted: Vec<SparsePoly<Scalar>> =
        degrees.iter().map(|&d| restricted_invariant(rs, &mb, d)).collect::<Result<_, _>>()?;
    let entries: Vec<Vec<SparsePoly<Scalar>>> =
        restricted.iter().map(|p| (0..l).map(|j| p.derivative(j)).collect()).collect();

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let point: Vec<Scalar> = (0..l).map(|_| Scalar::from(rng.gen_range(1i64..=1000))).collect();
    let value = if l == 0 {
        Scalar::from(1)
    } else {
        let numeric: Vec<Vec<Scalar>> =
            entries.iter().map(|row| row.iter().map(|p| p.eval(&point)).collect()).collect();
        Matrix::from_rows(numeric).determinant()
    };
    let evaluation = EvaluationCertificate { point, value };
    let evaluated_nonzero = evaluation.value != Scalar::from(0);

    let degree_bound: u64 = degrees.iter().map(|&d| u64::from(d - 1)).sum();
    let size_bound = if l == 0 { 1 } else { binomial(degree_bound + l as u64 - 1, l as u64 - 1) };
    let expand = opts.always_exact || !evaluated_nonzero || size_bound <= opts.exact_term_limit;
    let determinant = expand.then(|| polynomial_determinant(&entries, vars));
    let nonzero = match &determinant {
        Some(d) => {
            debug_assert!(!evaluated_nonzero || d.eval(&evaluation.point) == evaluation.value);
            !d.is_zero()
        }
        None => evaluated_nonzero,
    };
    Ok(JacobianResult { degrees, restricted_invariants: restricted, evaluation, determinant, nonzero })
}

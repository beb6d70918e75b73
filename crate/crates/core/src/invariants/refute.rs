use serde::{Deserialize, Serialize};

use super::InvariantError;
use crate::groupcalc::{free_algebra_series, ExponentMultiset, QuotientAction};
use crate::rootsystems::RootSystem;

/// Largest degree searched for a dimension witness.
pub const DEFAULT_REFUTATION_BOUND: usize = 32;

/// `dim` of the degree-`d` part of a polynomial algebra on generators of
/// the given degrees.
pub fn invariant_dimension(degrees: &[u32], d: usize) -> u64 {
    free_algebra_series(degrees, d)[d]
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum Refutation {
    /// `dim ℂ[V]^W_d < dim ℂ[X_I]^{C_I}_d` at the smallest such `d`.
    Witness { degree: usize, ambient: u64, quotient: u64 },
    /// `C_I` is a reflection group whose degrees form a submultiset of the
    /// degrees of `W`, so the inequality never holds.
    NoneExists,
    /// No witness up to the bound, and none ruled out.
    BoundExhausted { bound: usize },
}

impl Refutation {
    pub fn degree(&self) -> Option<usize> {
        match self {
            Refutation::Witness { degree, .. } => Some(*degree),
            _ => None,
        }
    }
}

/// Searches for a degree where `ρ` cannot be surjective for dimension
/// reasons, using the degrees of `W` on one side and the Molien series of
/// the enumerated `C_I` on the other.
pub fn refute_surjectivity(rs: &RootSystem, qa: &QuotientAction, bound: usize) -> Result<Refutation, InvariantError> {
    let molien = qa.molien_series(bound)?;
    let w_degrees = rs.coxeter_type().degrees();
    let ambient = free_algebra_series(&w_degrees, bound);
    for d in 0..=bound {
        if ambient[d] < molien[d] {
            return Ok(Refutation::Witness { degree: d, ambient: ambient[d], quotient: molien[d] });
        }
    }
    if let Ok(exps) = qa.reflection_degrees() {
        let degrees = ExponentMultiset::new(exps.degrees());
        if degrees.is_submultiset_of(&ExponentMultiset::new(w_degrees)) {
            return Ok(Refutation::NoneExists);
        }
    }
    Ok(Refutation::BoundExhausted { bound })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensions() {
        assert_eq!(invariant_dimension(&[2, 6, 8, 10, 12, 14, 18], 4), 1);
        assert_eq!(invariant_dimension(&[2, 3, 4, 5, 6], 4), 2);
        assert_eq!(invariant_dimension(&[2, 3, 4, 5], 6), 3);
        assert_eq!(invariant_dimension(&[2], 0), 1);
        assert_eq!(invariant_dimension(&[2], 3), 0);
    }

    #[test]
    fn outcomes_serialize_with_tag() {
        let v = serde_json::to_value(Refutation::BoundExhausted { bound: 8 }).unwrap();
        assert_eq!(v, serde_json::json!({"outcome": "bound_exhausted", "bound": 8}));
        let back: Refutation = serde_json::from_value(v).unwrap();
        assert_eq!(back, Refutation::BoundExhausted { bound: 8 });
    }
}

use std::collections::HashMap;

use num_traits::Zero;

use crate::linalg::{projective_normalize, Matrix};
use crate::rootsystems::RootSystem;
use crate::scalars::Scalar;

/// A hyperplane of the restricted arrangement `𝒜^{X_I}` together with the
/// positive roots whose restriction to `X_I` defines it.
#[derive(Debug, Clone)]
pub struct RestrictedHyperplane {
    /// Normalized covector on `X_I`, indexed by the nodes outside `I`.
    pub covector: Vec<Scalar>,
    pub roots: Vec<usize>,
}

/// Groups `Φ⁺ \ Φ_I` by the projective class of `α|_{X_I}`, in order of the
/// first root of each group.
pub fn restricted_hyperplanes(rs: &RootSystem, subset: &[usize]) -> Vec<RestrictedHyperplane> {
    let keep: Vec<usize> = (0..rs.rank()).filter(|i| !subset.contains(i)).collect();
    let mut out: Vec<RestrictedHyperplane> = Vec::new();
    let mut index: HashMap<Vec<Scalar>, usize> = HashMap::new();
    for (k, root) in rs.positive_roots().iter().enumerate() {
        let restricted: Vec<Scalar> = keep.iter().map(|&i| root[i].clone()).collect();
        let Some(key) = projective_normalize(&restricted) else { continue };
        match index.get(&key) {
            Some(&g) => out[g].roots.push(k),
            None => {
                index.insert(key.clone(), out.len());
                out.push(RestrictedHyperplane { covector: key, roots: vec![k] });
            }
        }
    }
    out
}

/// Orthogonal projection of `v` onto the complement of `span{α_s : s ∈ I}`
/// with respect to the invariant form.
pub fn project_off(rs: &RootSystem, subset: &[usize], v: &[Scalar]) -> Vec<Scalar> {
    if subset.is_empty() {
        return v.to_vec();
    }
    let g = rs.gram();
    let k = subset.len();
    let mut gram = Matrix::<Scalar>::zeros(k, k);
    for (a, &i) in subset.iter().enumerate() {
        for (b, &j) in subset.iter().enumerate() {
            gram[(a, b)] = g[(i, j)].clone();
        }
    }
    let basis: Vec<Vec<Scalar>> = subset
        .iter()
        .map(|&s| {
            let mut e = vec![Scalar::zero(); rs.rank()];
            e[s] = Scalar::from(1);
            e
        })
        .collect();
    let rhs: Vec<Scalar> = basis.iter().map(|b| rs.form(v, b)).collect();
    let coeffs = gram.inverse().expect("Gram matrix of a parabolic subsystem is definite").apply(&rhs);
    let mut out = v.to_vec();
    for (c, &s) in coeffs.iter().zip(subset) {
        let t = out[s].clone() - c;
        out[s] = t;
    }
    out
}

/// Whether the hyperplane `h` of `𝒜^{X_I}` is the fixed hyperplane of a
/// reflection in `C_I`.
///
/// Such a reflection lies in the parabolic subgroup fixing `X_I ∩ h`,
/// generated by the roots `Φ_h = Φ_I ∪ ±h.roots`. An element of that group
/// normalizes `Φ_I` and acts on `X_I` as the reflection in `h` exactly when
/// it negates `ℓ`, the component of a root of `h` orthogonal to `Φ_I`. So
/// the test is whether `ℓ` and `-ℓ` have the same dominant representative
/// for `W(Φ_h)`.
pub fn is_reflecting(rs: &RootSystem, subset: &[usize], h: &RestrictedHyperplane) -> bool {
    let beta = &rs.positive_roots()[h.roots[0]];
    let ell = project_off(rs, subset, beta);
    let target: Vec<Scalar> = ell.iter().map(|x| -x.clone()).collect();
    let mut gens: Vec<usize> = rs.subsystem_positive(subset);
    gens.extend(h.roots.iter().copied());
    let gens: Vec<Vec<Scalar>> = gens.iter().map(|&k| rs.positive_roots()[k].clone()).collect();
    dominant(rs, &gens, ell) == dominant(rs, &gens, target)
}

/// Reflects `v` in positive roots it pairs negatively with until none is
/// left. The closed dominant chamber is a fundamental domain, so the result
/// depends only on the orbit of `v`.
fn dominant(rs: &RootSystem, positive: &[Vec<Scalar>], mut v: Vec<Scalar>) -> Vec<Scalar> {
    while let Some(g) = positive.iter().find(|g| rs.form(&v, g).is_negative()) {
        v = rs.reflect(g, &v);
    }
    v
}

/// Covectors on `X_I` of the reflecting hyperplanes of `C_I`, i.e. the
/// arrangement `𝒜(X_I, C_I)`.
pub fn reflecting_hyperplanes(rs: &RootSystem, subset: &[usize]) -> Vec<Vec<Scalar>> {
    restricted_hyperplanes(rs, subset)
        .into_iter()
        .filter(|h| is_reflecting(rs, subset, h))
        .map(|h| h.covector)
        .collect()
}

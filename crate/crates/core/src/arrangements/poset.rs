use std::collections::HashMap;

use num_traits::ToPrimitive;
use serde::Serialize;

use super::{Arrangement, ArrangementError, CharPoly};
use crate::groupcalc::RootSet;
use crate::groupcalc::MAX_LINES;
use crate::scalars::{Field, Fp61, Rational, Scalar};

/// Default cap on the number of flats.
pub const DEFAULT_POSET_CAP: usize = 5_000_000;

/// Rank-level summary of the intersection lattice `L(𝒜)`: how many flats
/// sit at each rank and the sum of the Möbius values `μ(V, X)` there.
///
/// Flats are keyed by the set of hyperplanes containing them. The lattice
/// is built one rank at a time; the upper covers of a flat come from
/// reducing the remaining covectors modulo its annihilator and grouping
/// the results projectively. Möbius values follow Weisner's theorem with
/// the atom of smallest index, so no cover relations are stored.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IntersectionPoset {
    pub ambient_dim: usize,
    pub num_hyperplanes: usize,
    pub flats_by_rank: Vec<usize>,
    pub mobius_by_rank: Vec<i128>,
}

struct Flat<F> {
    basis: Vec<(usize, Vec<F>)>,
    mu: i128,
}

impl IntersectionPoset {
    pub fn build(a: &Arrangement, cap: usize) -> Result<Self, ArrangementError> {
        let n = a.len();
        if n > MAX_LINES {
            return Err(ArrangementError::TooManyHyperplanes(n, MAX_LINES));
        }
        let (flats_by_rank, mobius_by_rank) = match integral_image(a) {
            Some(cov) => levels(cov, a.ambient_dim(), cap)?,
            None => levels(a.hyperplanes().to_vec(), a.ambient_dim(), cap)?,
        };
        Ok(IntersectionPoset { ambient_dim: a.ambient_dim(), num_hyperplanes: n, flats_by_rank, mobius_by_rank })
    }

    pub fn rank(&self) -> usize {
        self.flats_by_rank.len() - 1
    }

    pub fn num_flats(&self) -> usize {
        self.flats_by_rank.iter().sum()
    }

    /// `χ(t) = Σ_X μ(X) t^{dim X}`.
    pub fn characteristic_polynomial(&self) -> CharPoly {
        let mut c = vec![0i128; self.ambient_dim + 1];
        for (r, &m) in self.mobius_by_rank.iter().enumerate() {
            c[self.ambient_dim - r] += m;
        }
        CharPoly::new(c)
    }
}

/// Integer covectors reduced modulo `P61`, when every covector is rational
/// and the Hadamard bound guarantees that ranks agree with those over ℚ.
fn integral_image(a: &Arrangement) -> Option<Vec<Vec<Fp61>>> {
    let mut out = Vec::with_capacity(a.len());
    let mut max_abs = 0u64;
    for h in a.hyperplanes() {
        let q: Vec<Rational> = h.iter().map(Scalar::as_rational).collect::<Option<_>>()?;
        let mut lcm = num_bigint::BigInt::from(1);
        for x in &q {
            let d = x.denom();
            lcm = num_integer::lcm(lcm, d);
        }
        let mut row = Vec::with_capacity(q.len());
        for x in &q {
            let v = x.numer() * (&lcm / x.denom());
            let v = v.to_i64()?;
            max_abs = max_abs.max(v.unsigned_abs());
            row.push(Fp61::from_i64(v));
        }
        out.push(row);
    }
    if Fp61::hadamard_safe(max_abs, a.ambient_dim()) {
        Some(out)
    } else {
        None
    }
}

fn reduce<F: Field>(basis: &[(usize, Vec<F>)], v: &[F]) -> Vec<F> {
    let mut v = v.to_vec();
    for (p, row) in basis {
        if !v[*p].is_zero() {
            let f = v[*p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x -= f.clone() * r;
                }
            }
        }
    }
    v
}

/// Adds a vector already reduced against `basis`, keeping the rows in
/// reduced echelon form.
fn extend_basis<F: Field>(basis: &[(usize, Vec<F>)], v: Vec<F>) -> Vec<(usize, Vec<F>)> {
    let p = v.iter().position(|x| !x.is_zero()).expect("reduced vector is nonzero");
    let inv = v[p].inv();
    let v: Vec<F> = v.into_iter().map(|x| x * &inv).collect();
    let mut out: Vec<(usize, Vec<F>)> = basis
        .iter()
        .map(|(q, row)| {
            if row[p].is_zero() {
                (*q, row.clone())
            } else {
                let f = row[p].clone();
                let r = row.iter().zip(&v).map(|(a, b)| a.clone() - f.clone() * b).collect();
                (*q, r)
            }
        })
        .collect();
    out.push((p, v));
    out
}

fn normalize<F: Field>(v: &[F]) -> Vec<F> {
    let lead = v.iter().find(|x| !x.is_zero()).expect("nonzero").inv();
    v.iter().map(|x| x.clone() * &lead).collect()
}

fn levels<F: Field>(
    covectors: Vec<Vec<F>>,
    dim: usize,
    cap: usize,
) -> Result<(Vec<usize>, Vec<i128>), ArrangementError> {
    let mut flats_by_rank = vec![1usize];
    let mut mobius_by_rank = vec![1i128];
    let mut current: HashMap<RootSet, Flat<F>> = HashMap::new();
    current.insert(RootSet::empty(), Flat { basis: Vec::new(), mu: 1 });
    let mut total = 1usize;
    while !current.is_empty() && flats_by_rank.len() <= dim {
        let mut next: HashMap<RootSet, (Flat<F>, i128)> = HashMap::new();
        for (key, flat) in &current {
            let min_key = key.first().unwrap_or(usize::MAX);
            let mut groups: HashMap<Vec<F>, (RootSet, usize, Vec<F>)> = HashMap::new();
            for (h, cov) in covectors.iter().enumerate() {
                if key.contains(h) {
                    continue;
                }
                let r = reduce(&flat.basis, cov);
                let nr = normalize(&r);
                groups.entry(nr).and_modify(|g| g.0.insert(h)).or_insert_with(|| (RootSet::from_lines([h]), h, r));
            }
            for (_, (members, first, reduced)) in groups {
                let cover = key.union(&members);
                let contribution = if first < min_key { flat.mu } else { 0 };
                match next.get_mut(&cover) {
                    Some(entry) => entry.1 += contribution,
                    None => {
                        total += 1;
                        if total > cap {
                            return Err(ArrangementError::PosetCap(cap));
                        }
                        let basis = extend_basis(&flat.basis, reduced);
                        next.insert(cover, (Flat { basis, mu: 0 }, contribution));
                    }
                }
            }
        }
        if next.is_empty() {
            break;
        }
        let mut level_mu = 0i128;
        current = next
            .into_iter()
            .map(|(k, (mut f, acc))| {
                f.mu = -acc;
                level_mu += f.mu;
                (k, f)
            })
            .collect();
        flats_by_rank.push(current.len());
        mobius_by_rank.push(level_mu);
    }
    Ok((flats_by_rank, mobius_by_rank))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangements::{exponents_if_free, reflection_arrangement};
    use crate::rootsystems::RootSystem;

    fn poset(s: &str) -> IntersectionPoset {
        let rs = RootSystem::build(&s.parse().unwrap()).unwrap();
        IntersectionPoset::build(&reflection_arrangement(&rs), DEFAULT_POSET_CAP).unwrap()
    }

    #[test]
    fn a3_lattice_is_partition_lattice() {
        let p = poset("A3");
        assert_eq!(p.flats_by_rank, vec![1, 6, 7, 1]);
        assert_eq!(p.characteristic_polynomial(), CharPoly::from_roots(&[1, 2, 3]));
    }

    #[test]
    fn coxeter_exponents() {
        for (t, e) in [
            ("B3", vec![1, 3, 5]),
            ("H3", vec![1, 5, 9]),
            ("I2(7)", vec![1, 6]),
            ("D4", vec![1, 3, 3, 5]),
            ("F4", vec![1, 5, 7, 11]),
        ] {
            let cp = poset(t).characteristic_polynomial();
            assert_eq!(exponents_if_free(&cp).unwrap().values(), &e[..], "{t}");
        }
    }

    #[test]
    fn empty_arrangement() {
        let p = IntersectionPoset::build(&Arrangement::empty(3), 10).unwrap();
        assert_eq!(p.characteristic_polynomial(), CharPoly::from_roots(&[0, 0, 0]));
    }

    #[test]
    fn cap_is_enforced() {
        let rs = RootSystem::build(&"A4".parse().unwrap()).unwrap();
        let err = IntersectionPoset::build(&reflection_arrangement(&rs), 20).unwrap_err();
        assert_eq!(err, ArrangementError::PosetCap(20));
    }
}

use std::collections::HashMap;

use num_traits::{One, Zero};

use super::types::{Component, CoxeterType, Family};
use super::RootSystemError;
use crate::linalg::{dot, Matrix};
use crate::scalars::{Field, Scalar};

/// Permutation of the full root list (positive roots first, then their
/// negatives in the same order).
pub type RootPerm = Vec<u32>;

/// A finite root system in simple-root coordinates.
///
/// Roots live in `V*`. Index `i < N` is the `i`-th positive root and
/// `N + i` its negative; indices `0..rank` are the simple roots in Bourbaki
/// order. `V` is coordinatized by the basis dual to the simple roots, so a
/// simple root `α_s` evaluates a vector to its `s`-th coordinate.
#[derive(Debug, Clone)]
pub struct RootSystem {
    ctype: CoxeterType,
    rank: usize,
    coxeter: Vec<Vec<u32>>,
    short: Vec<bool>,
    component_of: Vec<usize>,
    cartan: Matrix<Scalar>,
    gram: Matrix<Scalar>,
    positive: Vec<Vec<Scalar>>,
    index: HashMap<Vec<Scalar>, u32>,
    simple_perms: Vec<RootPerm>,
    weights: Matrix<Scalar>,
}

/// Coxeter matrix entries and relative squared lengths for one component in
/// Bourbaki numbering.
fn component_data(c: &Component) -> (Vec<Vec<u32>>, Vec<u32>) {
    let n = c.rank;
    let mut m = vec![vec![2u32; n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1;
    }
    let mut bond = |i: usize, j: usize, b: u32| {
        m[i][j] = b;
        m[j][i] = b;
    };
    let mut len = vec![1u32; n];
    match c.family {
        Family::A => {
            for i in 1..n {
                bond(i - 1, i, 3);
            }
        }
        Family::B => {
            for i in 1..n - 1 {
                bond(i - 1, i, 3);
            }
            bond(n - 2, n - 1, 4);
            len = vec![2; n];
            len[n - 1] = 1;
        }
        Family::C => {
            for i in 1..n - 1 {
                bond(i - 1, i, 3);
            }
            bond(n - 2, n - 1, 4);
            len[n - 1] = 2;
        }
        Family::D => {
            for i in 1..n - 1 {
                bond(i - 1, i, 3);
            }
            bond(n - 3, n - 1, 3);
        }
        Family::E => {
            bond(0, 2, 3);
            bond(1, 3, 3);
            for i in 3..n {
                bond(i - 1, i, 3);
            }
        }
        Family::F => {
            bond(0, 1, 3);
            bond(1, 2, 4);
            bond(2, 3, 3);
            len = vec![2, 2, 1, 1];
        }
        Family::G => {
            bond(0, 1, 6);
            len = vec![1, 3];
        }
        Family::H => {
            bond(0, 1, 5);
            for i in 2..n {
                bond(i - 1, i, 3);
            }
        }
        Family::I => {
            bond(0, 1, c.bond);
        }
    }
    (m, len)
}

impl RootSystem {
    pub fn build(ctype: &CoxeterType) -> Result<RootSystem, RootSystemError> {
        let rank = ctype.rank();
        let mut coxeter = vec![vec![2u32; rank]; rank];
        let mut gram = Matrix::<Scalar>::zeros(rank, rank);
        let mut short = vec![false; rank];
        let mut component_of = vec![0; rank];
        let mut offset = 0;
        for (ci, comp) in ctype.components.iter().enumerate() {
            let (m, len) = component_data(comp);
            let n = comp.rank;
            let crystallographic = comp.is_crystallographic() && comp.family != Family::I;
            let max_len = *len.iter().max().unwrap();
            for i in 0..n {
                component_of[offset + i] = ci;
                short[offset + i] =
                    comp.short || (max_len > len[i]) || (comp.family == Family::I && comp.bond % 2 == 0 && i == 1);
                for j in 0..n {
                    coxeter[offset + i][offset + j] = m[i][j];
                    let entry = if i == j {
                        if crystallographic {
                            Scalar::int(2 * len[i] as i64)
                        } else {
                            Scalar::int(2)
                        }
                    } else if m[i][j] == 2 {
                        Scalar::zero()
                    } else if crystallographic {
                        match m[i][j] {
                            3 => -Scalar::int(len[i] as i64),
                            4 => Scalar::int(-2),
                            6 => Scalar::int(-3),
                            other => unreachable!("bond {other} in crystallographic type"),
                        }
                    } else {
                        -Scalar::two_cos_pi_over(m[i][j])?
                    };
                    gram[(offset + i, offset + j)] = entry;
                }
            }
            offset += n;
        }
        // n_ij = 2 B(α_i, α_j) / B(α_j, α_j) = <α_i, α_j^∨>
        let mut cartan = Matrix::<Scalar>::zeros(rank, rank);
        for i in 0..rank {
            for j in 0..rank {
                cartan[(i, j)] = Scalar::int(2) * &gram[(i, j)] / &gram[(j, j)];
            }
        }
        let weights = cartan.inverse().ok_or(RootSystemError::SingularCartan)?;

        let mut rs = RootSystem {
            ctype: ctype.clone(),
            rank,
            coxeter,
            short,
            component_of,
            cartan,
            gram,
            positive: Vec::new(),
            index: HashMap::new(),
            simple_perms: Vec::new(),
            weights,
        };
        rs.close_roots()?;
        Ok(rs)
    }

    fn close_roots(&mut self) -> Result<(), RootSystemError> {
        let r = self.rank;
        let expected = self.ctype.num_positive_roots();
        let mut positive: Vec<Vec<Scalar>> = (0..r)
            .map(|i| {
                let mut v = vec![Scalar::zero(); r];
                v[i] = Scalar::one();
                v
            })
            .collect();
        let mut index: HashMap<Vec<Scalar>, u32> =
            positive.iter().enumerate().map(|(i, v)| (v.clone(), i as u32)).collect();
        let mut head = 0;
        while head < positive.len() {
            let beta = positive[head].clone();
            head += 1;
            for j in 0..r {
                if index[&beta] as usize == j {
                    continue;
                }
                let gamma = self.reflect_simple(j, &beta);
                if !index.contains_key(&gamma) {
                    if positive.len() >= expected {
                        return Err(RootSystemError::ClosureOverflow(expected));
                    }
                    index.insert(gamma.clone(), positive.len() as u32);
                    positive.push(gamma);
                }
            }
        }
        if positive.len() != expected {
            return Err(RootSystemError::ClosureOverflow(expected));
        }
        let n = positive.len();
        for (i, v) in positive.iter().enumerate() {
            let neg: Vec<Scalar> = v.iter().map(|x| -x.clone()).collect();
            index.insert(neg, (n + i) as u32);
        }
        let mut perms = Vec::with_capacity(r);
        for j in 0..r {
            let mut p = vec![0u32; 2 * n];
            for i in 0..n {
                let img = self.reflect_simple(j, &positive[i]);
                let k = *index.get(&img).expect("simple reflection leaves the root system");
                p[i] = k;
                p[n + i] = if (k as usize) < n { k + n as u32 } else { k - n as u32 };
            }
            perms.push(p);
        }
        self.positive = positive;
        self.index = index;
        self.simple_perms = perms;
        Ok(())
    }

    /// `s_j(v) = v - <v, α_j^∨> α_j` for `v ∈ V*` in simple-root coordinates.
    pub fn reflect_simple(&self, j: usize, v: &[Scalar]) -> Vec<Scalar> {
        let pairing = (0..self.rank).fold(Scalar::zero(), |acc, i| {
            if v[i].is_zero() {
                acc
            } else {
                acc + v[i].clone() * &self.cartan[(i, j)]
            }
        });
        let mut out = v.to_vec();
        if !pairing.is_zero() {
            out[j] -= pairing;
        }
        out
    }

    /// Invariant bilinear form on `V*`.
    pub fn form(&self, a: &[Scalar], b: &[Scalar]) -> Scalar {
        let gb = self.gram.apply(b);
        dot(a, &gb)
    }

    /// Orthogonal reflection of `v` in the hyperplane perpendicular to `root`.
    pub fn reflect(&self, root: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        let c = Scalar::int(2) * self.form(v, root) / self.form(root, root);
        if c.is_zero() {
            return v.to_vec();
        }
        v.iter().zip(root).map(|(x, r)| x.clone() - c.clone() * r).collect()
    }

    pub fn coxeter_type(&self) -> &CoxeterType {
        &self.ctype
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn coxeter_matrix(&self) -> &[Vec<u32>] {
        &self.coxeter
    }

    /// Whether simple root `s` is short relative to its component (or is
    /// labelled short by convention for even dihedral groups).
    pub fn is_short(&self, s: usize) -> bool {
        self.short[s]
    }

    pub fn component_of(&self, s: usize) -> usize {
        self.component_of[s]
    }

    /// `<α_i, α_j^∨>`.
    pub fn cartan(&self) -> &Matrix<Scalar> {
        &self.cartan
    }

    pub fn gram(&self) -> &Matrix<Scalar> {
        &self.gram
    }

    pub fn num_positive(&self) -> usize {
        self.positive.len()
    }

    pub fn num_roots(&self) -> usize {
        2 * self.positive.len()
    }

    pub fn positive_roots(&self) -> &[Vec<Scalar>] {
        &self.positive
    }

    /// Coordinates of root `k` in the full indexing.
    pub fn root(&self, k: usize) -> Vec<Scalar> {
        let n = self.positive.len();
        if k < n {
            self.positive[k].clone()
        } else {
            self.positive[k - n].iter().map(|x| -x.clone()).collect()
        }
    }

    pub fn root_index(&self, v: &[Scalar]) -> Option<usize> {
        self.index.get(v).map(|&i| i as usize)
    }

    /// Index of the positive root spanning the same line as root `k`.
    pub fn line(&self, k: usize) -> usize {
        k % self.positive.len()
    }

    pub fn negate_index(&self, k: usize) -> usize {
        let n = self.positive.len();
        if k < n {
            k + n
        } else {
            k - n
        }
    }

    pub fn simple_perm(&self, j: usize) -> &RootPerm {
        &self.simple_perms[j]
    }

    pub fn simple_perms(&self) -> &[RootPerm] {
        &self.simple_perms
    }

    /// Fundamental weights as rows, in simple-root coordinates.
    pub fn weights(&self) -> &Matrix<Scalar> {
        &self.weights
    }

    pub fn is_crystallographic(&self) -> bool {
        self.ctype.is_crystallographic()
    }

    /// Matrix of simple reflection `s_j` acting on row vectors of `V*`
    /// coordinates: `v ↦ v M`.
    pub fn simple_reflection_matrix(&self, j: usize) -> Matrix<Scalar> {
        let r = self.rank;
        let mut m = Matrix::<Scalar>::identity(r);
        for i in 0..r {
            let t = m[(i, j)].clone() - &self.cartan[(i, j)];
            m[(i, j)] = t;
        }
        m
    }

    /// Positive roots whose support lies in `subset`.
    pub fn subsystem_positive(&self, subset: &[usize]) -> Vec<usize> {
        (0..self.positive.len())
            .filter(|&k| self.positive[k].iter().enumerate().all(|(i, c)| c.is_zero() || subset.contains(&i)))
            .collect()
    }

    /// Whether every root coordinate is rational.
    pub fn has_rational_roots(&self) -> bool {
        self.positive.iter().all(|v| v.iter().all(|x| x.as_rational().is_some()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::Rational;

    fn build(s: &str) -> RootSystem {
        RootSystem::build(&s.parse().unwrap()).unwrap()
    }

    #[test]
    fn a2_positive_roots() {
        let rs = build("A2");
        assert_eq!(rs.num_positive(), 3);
        let sum = vec![Scalar::one(), Scalar::one()];
        assert!(rs.root_index(&sum).is_some());
    }

    #[test]
    fn root_counts() {
        for (s, n) in [
            ("E8", 120),
            ("E7", 63),
            ("E6", 36),
            ("F4", 24),
            ("G2", 6),
            ("H3", 15),
            ("H4", 60),
            ("B5", 25),
            ("C4", 16),
            ("D6", 30),
            ("I2(7)", 7),
        ] {
            assert_eq!(build(s).num_positive(), n, "{s}");
        }
    }

    #[test]
    fn simple_reflections_permute_roots() {
        for s in ["E6", "F4", "H3", "B3", "I2(8)"] {
            let rs = build(s);
            for j in 0..rs.rank() {
                let p = rs.simple_perm(j);
                let mut seen = vec![false; p.len()];
                for &k in p {
                    assert!(!seen[k as usize]);
                    seen[k as usize] = true;
                }
                for k in 0..rs.num_roots() {
                    assert_eq!(rs.reflect_simple(j, &rs.root(k)), rs.root(p[k] as usize));
                }
            }
        }
    }

    #[test]
    fn weights_pair_to_identity() {
        for s in ["A1", "A2", "B3", "G2", "H3", "E7"] {
            let rs = build(s);
            let prod = rs.weights().mul(rs.cartan());
            assert!(prod.is_identity(), "{s}");
        }
        let a1 = build("A1");
        assert_eq!(a1.weights()[(0, 0)], Scalar::from(Rational::new(1, 2)));
        let a2 = build("A2");
        assert_eq!(a2.weights()[(0, 0)], Scalar::from(Rational::new(2, 3)));
        assert_eq!(a2.weights()[(0, 1)], Scalar::from(Rational::new(1, 3)));
    }

    #[test]
    fn form_is_invariant() {
        for s in ["F4", "H3", "G2"] {
            let rs = build(s);
            for j in 0..rs.rank() {
                for a in 0..rs.num_positive() {
                    for b in 0..rs.num_positive() {
                        let (x, y) = (rs.root(a), rs.root(b));
                        let lhs = rs.form(&x, &y);
                        let rhs = rs.form(&rs.reflect_simple(j, &x), &rs.reflect_simple(j, &y));
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }
}

use std::collections::HashMap;

use num_traits::One;

use super::rootset::RootSet;
use super::GroupError;
use crate::linalg::Matrix;
use crate::rootsystems::RootSystem;
use crate::scalars::Scalar;

/// Default cap on the number of root sets in one orbit.
pub const DEFAULT_ORBIT_CAP: usize = 20_000_000;

/// An element of `W`, stored as the permutation it induces on the full root
/// list. `perm[k]` is the index of `w(α_k)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupElement {
    perm: Vec<u32>,
}

impl GroupElement {
    pub fn identity(rs: &RootSystem) -> Self {
        GroupElement { perm: (0..rs.num_roots() as u32).collect() }
    }

    pub fn simple(rs: &RootSystem, j: usize) -> Self {
        GroupElement { perm: rs.simple_perm(j).clone() }
    }

    pub fn from_perm(perm: Vec<u32>) -> Self {
        GroupElement { perm }
    }

    pub fn perm(&self) -> &[u32] {
        &self.perm
    }

    /// Image index of root `k`.
    pub fn apply(&self, k: usize) -> usize {
        self.perm[k] as usize
    }

    /// The element acting as `self` followed by `other`.
    pub fn then(&self, other: &GroupElement) -> GroupElement {
        GroupElement { perm: self.perm.iter().map(|&k| other.perm[k as usize]).collect() }
    }

    pub fn inverse(&self) -> GroupElement {
        let mut inv = vec![0u32; self.perm.len()];
        for (k, &img) in self.perm.iter().enumerate() {
            inv[img as usize] = k as u32;
        }
        GroupElement { perm: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(k, &v)| k as u32 == v)
    }

    /// Matrix `M` on `V*` in simple-root coordinates with `w(β) = β M` for
    /// row vectors `β`; row `i` is the image of `α_i`.
    pub fn matrix(&self, rs: &RootSystem) -> Matrix<Scalar> {
        Matrix::from_rows((0..rs.rank()).map(|i| rs.root(self.perm[i] as usize)).collect())
    }

    /// Sign-aware image of a set of root lines.
    pub fn map_set(&self, set: &RootSet, num_positive: usize) -> RootSet {
        set.permute(&self.perm, num_positive)
    }
}

/// Fixed subspace of `w` on `V`, as column vectors in the basis dual to the
/// simple roots.
pub fn fix_space(rs: &RootSystem, g: &GroupElement) -> Vec<Vec<Scalar>> {
    let m = g.matrix(rs);
    let r = rs.rank();
    let mut d = m;
    for i in 0..r {
        let t = d[(i, i)].clone() - Scalar::one();
        d[(i, i)] = t;
    }
    d.kernel()
}

/// Orbit of a root set under `W` with a spanning tree for transversals.
#[derive(Debug, Clone)]
pub struct StabilizerResult {
    keys: Vec<RootSet>,
    index: HashMap<RootSet, u32>,
    parent: Vec<(u32, u8)>,
    group_order: u128,
}

const ROOT: u32 = u32::MAX;

impl StabilizerResult {
    pub fn orbit_size(&self) -> usize {
        self.keys.len()
    }

    pub fn orbit(&self) -> &[RootSet] {
        &self.keys
    }

    pub fn contains(&self, key: &RootSet) -> bool {
        self.index.contains_key(key)
    }

    pub fn position(&self, key: &RootSet) -> Option<usize> {
        self.index.get(key).map(|&i| i as usize)
    }

    /// `|N_W(Φ)| = |W| / |orbit|`.
    pub fn stabilizer_order(&self) -> u128 {
        self.group_order / self.keys.len() as u128
    }

    /// Simple-reflection word `[s_1, s_2, ...]` (applied left to right)
    /// carrying the base set to orbit point `p`.
    pub fn word(&self, p: usize) -> Vec<usize> {
        let mut w = Vec::new();
        let mut q = p as u32;
        while self.parent[q as usize].0 != ROOT {
            let (par, g) = self.parent[q as usize];
            w.push(g as usize);
            q = par;
        }
        w.reverse();
        w
    }

    /// Element `u_p` with `u_p(base) = orbit[p]`.
    pub fn transversal(&self, rs: &RootSystem, p: usize) -> GroupElement {
        let mut g = GroupElement::identity(rs);
        for s in self.word(p) {
            g = g.then(&GroupElement::simple(rs, s));
        }
        g
    }

    /// Schreier generators `u_{sp}^{-1} s u_p` for the non-tree edges, in
    /// breadth-first order. Together they generate the setwise stabilizer
    /// of the base set.
    pub fn schreier_generators<'a>(&'a self, rs: &'a RootSystem) -> impl Iterator<Item = GroupElement> + 'a {
        let rank = rs.rank();
        let n = rs.num_positive();
        (0..self.keys.len()).flat_map(move |p| {
            let up = self.transversal(rs, p);
            (0..rank).filter_map(move |s| {
                let img = self.keys[p].permute(rs.simple_perm(s), n);
                let q = self.index[&img] as usize;
                if self.parent[q] == (p as u32, s as u8) {
                    return None;
                }
                let g = up.then(&GroupElement::simple(rs, s)).then(&self.transversal(rs, q).inverse());
                if g.is_identity() {
                    None
                } else {
                    Some(g)
                }
            })
        })
    }
}

/// Orbit of `base` under the simple reflections, with parent pointers.
pub fn orbit_stabilizer(rs: &RootSystem, base: RootSet, cap: usize) -> Result<StabilizerResult, GroupError> {
    let n = rs.num_positive();
    let rank = rs.rank();
    let mut keys = vec![base];
    let mut index = HashMap::new();
    index.insert(base, 0u32);
    let mut parent = vec![(ROOT, 0u8)];
    let mut head = 0;
    while head < keys.len() {
        let cur = keys[head];
        for s in 0..rank {
            let img = cur.permute(rs.simple_perm(s), n);
            if !index.contains_key(&img) {
                if keys.len() >= cap {
                    return Err(GroupError::OrbitCap(cap));
                }
                index.insert(img, keys.len() as u32);
                keys.push(img);
                parent.push((head as u32, s as u8));
            }
        }
        head += 1;
    }
    Ok(StabilizerResult { keys, index, parent, group_order: rs.coxeter_type().group_order() })
}

/// Order of the element in `W` by repeated composition (for tests and
/// small diagnostics).
pub fn element_order(g: &GroupElement) -> usize {
    let mut k = 1;
    let mut h = g.clone();
    while !h.is_identity() {
        h = h.then(g);
        k += 1;
    }
    k
}

/// Matrix of an element restricted to the rows and columns listed in
/// `keep`; for an element normalizing `Φ_I` and `keep = S \ I` this is its
/// action on `X_I^*`.
pub fn restrict_matrix(m: &Matrix<Scalar>, keep: &[usize]) -> Matrix<Scalar> {
    let mut out = Matrix::zeros(keep.len(), keep.len());
    for (a, &i) in keep.iter().enumerate() {
        for (b, &j) in keep.iter().enumerate() {
            out[(a, b)] = m[(i, j)].clone();
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupcalc::rootset::parabolic_lines;
    use num_traits::Zero;

    fn build(s: &str) -> RootSystem {
        RootSystem::build(&s.parse().unwrap()).unwrap()
    }

    #[test]
    fn empty_set_is_fixed() {
        let rs = build("A3");
        let st = orbit_stabilizer(&rs, RootSet::empty(), 100).unwrap();
        assert_eq!(st.orbit_size(), 1);
        assert_eq!(st.stabilizer_order(), 24);
    }

    #[test]
    fn a2_single_root_orbit() {
        let rs = build("A2");
        let st = orbit_stabilizer(&rs, parabolic_lines(&rs, &[0]), 100).unwrap();
        assert_eq!(st.orbit_size(), 3);
        assert_eq!(st.stabilizer_order(), 2);
        for g in st.schreier_generators(&rs) {
            assert_eq!(g.map_set(&st.orbit()[0], rs.num_positive()), st.orbit()[0]);
        }
    }

    #[test]
    fn transversals_reach_orbit_points() {
        let rs = build("D4");
        let base = parabolic_lines(&rs, &[0, 2]);
        let st = orbit_stabilizer(&rs, base, 10_000).unwrap();
        for p in 0..st.orbit_size() {
            let u = st.transversal(&rs, p);
            assert_eq!(u.map_set(&base, rs.num_positive()), st.orbit()[p]);
        }
    }

    #[test]
    fn fixed_spaces() {
        let rs = build("A2");
        let id = GroupElement::identity(&rs);
        assert_eq!(fix_space(&rs, &id).len(), 2);
        let s = GroupElement::simple(&rs, 0);
        let f = fix_space(&rs, &s);
        assert_eq!(f.len(), 1);
        assert!(f[0][0].is_zero());
        let c = GroupElement::simple(&rs, 0).then(&GroupElement::simple(&rs, 1));
        assert!(fix_space(&rs, &c).is_empty());
        assert_eq!(element_order(&c), 3);
    }

    #[test]
    fn cap_is_reported() {
        let rs = build("E6");
        let base = parabolic_lines(&rs, &[0]);
        assert_eq!(orbit_stabilizer(&rs, base, 10).unwrap_err(), GroupError::OrbitCap(10));
    }
}

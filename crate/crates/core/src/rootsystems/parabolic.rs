use serde::Serialize;

use num_traits::{One, Zero};

use super::labels::LabelMap;
use super::types::{Component, CoxeterType, Family};
use super::{RootSystem, RootSystemError};
use crate::groupcalc::{orbit_stabilizer, parabolic_lines, RootSet, MAX_LINES};
use crate::linalg::Matrix;
use crate::scalars::Scalar;

/// A subset `I ⊆ S` with its root subsystem and fixed subspace.
#[derive(Debug, Clone, Serialize)]
pub struct ParabolicSubset {
    /// Sorted zero-based node indices.
    pub subset: Vec<usize>,
    /// Indices of the positive roots of `Φ_I`.
    pub phi_positive: Vec<usize>,
    pub type_label: String,
    #[serde(skip)]
    pub ctype: CoxeterType,
    /// Basis of `X_I` as column vectors on the basis dual to the simple roots.
    #[serde(skip)]
    pub x_basis: Vec<Vec<Scalar>>,
}

impl ParabolicSubset {
    pub fn new(rs: &RootSystem, subset: &[usize]) -> Result<Self, RootSystemError> {
        let mut s = subset.to_vec();
        s.sort_unstable();
        s.dedup();
        if let Some(&bad) = s.iter().find(|&&i| i >= rs.rank()) {
            return Err(RootSystemError::NodeOutOfRange(bad, rs.rank()));
        }
        let ctype = subsystem_type(rs, &s);
        Ok(ParabolicSubset {
            phi_positive: rs.subsystem_positive(&s),
            type_label: ctype.label(),
            ctype,
            x_basis: fixed_subspace(rs, &s),
            subset: s,
        })
    }

    /// Nodes outside `I`; coordinates on `X_I^*` are indexed by these.
    pub fn complement(&self, rank: usize) -> Vec<usize> {
        (0..rank).filter(|i| !self.subset.contains(i)).collect()
    }

    pub fn dim_x(&self, rank: usize) -> usize {
        rank - self.subset.len()
    }

    pub fn lines(&self) -> RootSet {
        RootSet::from_lines(self.phi_positive.iter().copied())
    }

    /// One-based node list as printed in reports, e.g. `{2,5,7}`.
    pub fn nodes_label(&self) -> String {
        let v: Vec<String> = self.subset.iter().map(|i| (i + 1).to_string()).collect();
        format!("{{{}}}", v.join(","))
    }
}

/// A `W`-conjugacy class of parabolic subsets.
#[derive(Debug, Clone, Serialize)]
pub struct ParabolicClass {
    pub id: usize,
    pub representative: ParabolicSubset,
    /// Every subset of `S` in the class, each sorted.
    pub members: Vec<Vec<usize>>,
    /// Number of parabolic subsystems conjugate to `Φ_I`, i.e. `[W : N_W(W_I)]`.
    pub orbit_size: u64,
    /// Printed label; primed where the curated map distinguishes classes of
    /// the same type.
    pub label: String,
}

impl ParabolicClass {
    pub fn is_primed(&self) -> bool {
        self.label != self.representative.type_label
    }

    /// `|N_W(W_I)|`.
    pub fn normalizer_order(&self, rs: &RootSystem) -> u128 {
        rs.coxeter_type().group_order() / self.orbit_size as u128
    }

    /// `|C_I| = |N_W(W_I)| / |W_I|`.
    pub fn complement_order(&self, rs: &RootSystem) -> u128 {
        self.normalizer_order(rs) / self.representative.ctype.group_order()
    }
}

/// Fundamental weights `ω_s` as covectors in simple-root coordinates.
pub fn fundamental_weights(rs: &RootSystem) -> Vec<Vec<Scalar>> {
    rs.weights().to_rows()
}

/// Basis of `X_I = ∩_{s∈I} Fix(s) = {v : α_s(v) = 0, s ∈ I}`.
pub fn fixed_subspace(rs: &RootSystem, subset: &[usize]) -> Vec<Vec<Scalar>> {
    let r = rs.rank();
    if subset.is_empty() {
        return Matrix::<Scalar>::identity(r).to_rows();
    }
    let rows: Vec<Vec<Scalar>> = subset
        .iter()
        .map(|&s| {
            let mut v = vec![Scalar::zero(); r];
            v[s] = Scalar::one();
            v
        })
        .collect();
    Matrix::from_rows(rows).kernel()
}

/// Type of `W_I` read off the Coxeter graph induced on `I`.
pub fn subsystem_type(rs: &RootSystem, subset: &[usize]) -> CoxeterType {
    let m = rs.coxeter_matrix();
    let mut seen = vec![false; rs.rank()];
    let mut comps = Vec::new();
    for &start in subset {
        if seen[start] {
            continue;
        }
        let mut nodes = vec![start];
        seen[start] = true;
        let mut head = 0;
        while head < nodes.len() {
            let u = nodes[head];
            head += 1;
            for &v in subset {
                if !seen[v] && m[u][v] > 2 {
                    seen[v] = true;
                    nodes.push(v);
                }
            }
        }
        nodes.sort_unstable();
        comps.push(identify_component(rs, &nodes));
    }
    CoxeterType { components: comps }
}

fn identify_component(rs: &RootSystem, nodes: &[usize]) -> Component {
    let m = rs.coxeter_matrix();
    let k = nodes.len();
    let parent = rs.coxeter_type().components[rs.component_of(nodes[0])].clone();
    if k == parent.rank {
        return parent;
    }
    let neighbours = |u: usize| nodes.iter().filter(move |&&v| v != u && m[u][v] > 2);
    let degree = |u: usize| neighbours(u).count();
    let max_bond =
        nodes.iter().flat_map(|&u| nodes.iter().map(move |&v| if u == v { 0 } else { m[u][v] })).max().unwrap_or(0);
    let all_short = nodes.iter().all(|&u| rs.is_short(u));
    if k == 1 {
        return Component { family: Family::A, rank: 1, bond: 0, short: rs.is_short(nodes[0]) };
    }
    match max_bond {
        3 => {
            let branch = nodes.iter().copied().find(|&u| degree(u) == 3);
            match branch {
                None => Component { family: Family::A, rank: k, bond: 0, short: all_short },
                Some(b) => {
                    let mut arms: Vec<usize> = neighbours(b)
                        .map(|&first| {
                            let mut len = 1;
                            let (mut prev, mut cur) = (b, first);
                            loop {
                                let next = neighbours(cur).copied().find(|&v| v != prev);
                                match next {
                                    Some(v) => {
                                        prev = cur;
                                        cur = v;
                                        len += 1;
                                    }
                                    None => break,
                                }
                            }
                            len
                        })
                        .collect();
                    arms.sort_unstable();
                    if arms[0] == 1 && arms[1] == 1 {
                        Component::new(Family::D, k)
                    } else {
                        Component::new(Family::E, k)
                    }
                }
            }
        }
        4 => {
            if k == 2 {
                return Component::new(Family::B, 2);
            }
            let shorts = nodes.iter().filter(|&&u| rs.is_short(u)).count();
            if shorts == 1 {
                Component::new(Family::B, k)
            } else if shorts == k - 1 {
                Component::new(Family::C, k)
            } else {
                Component::new(Family::F, k)
            }
        }
        5 if k == 2 => Component::dihedral(5),
        5 => Component::new(Family::H, k),
        6 => Component::new(Family::G, 2),
        b => Component::dihedral(b),
    }
}

/// Conjugacy classes of subsets `I ⊆ S` (including `∅` and `S`), decided by
/// `W`-orbits of the root sets `Φ_I`.
///
/// Classes are numbered by first appearance when subsets are listed by size
/// and then lexicographically; the representative is the first member.
pub fn parabolic_subsets_up_to_conjugacy(
    rs: &RootSystem,
    orbit_cap: usize,
    labels: &LabelMap,
) -> Result<Vec<ParabolicClass>, RootSystemError> {
    let r = rs.rank();
    if rs.num_positive() > MAX_LINES {
        return Err(RootSystemError::TooManyRoots(rs.num_positive(), MAX_LINES));
    }
    let mut subsets: Vec<Vec<usize>> =
        (0u32..1 << r).map(|mask| (0..r).filter(|i| mask >> i & 1 == 1).collect()).collect();
    subsets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let keys: Vec<RootSet> = subsets.iter().map(|s| parabolic_lines(rs, s)).collect();
    let mut class_of: Vec<Option<usize>> = vec![None; subsets.len()];
    let mut classes = Vec::new();
    for i in 0..subsets.len() {
        if class_of[i].is_some() {
            continue;
        }
        let id = classes.len();
        let orbit = orbit_stabilizer(rs, keys[i], orbit_cap)
            .map_err(|_| RootSystemError::OrbitCap { subset: subsets[i].clone(), cap: orbit_cap })?;
        let mut members = Vec::new();
        for j in i..subsets.len() {
            if class_of[j].is_none() && subsets[j].len() == subsets[i].len() && orbit.contains(&keys[j]) {
                class_of[j] = Some(id);
                members.push(subsets[j].clone());
            }
        }
        let representative = ParabolicSubset::new(rs, &subsets[i])?;
        let orbit_size = orbit.orbit_size() as u64;
        let label = labels
            .lookup(rs.coxeter_type(), &representative.ctype, orbit_size)
            .unwrap_or_else(|| representative.type_label.clone());
        classes.push(ParabolicClass { id, representative, members, orbit_size, label });
    }
    prime_duplicates(&mut classes);
    Ok(classes)
}

/// Classes of equal type that the label map leaves unnamed get primes in
/// order of increasing orbit size, ties broken by class id.
fn prime_duplicates(classes: &mut [ParabolicClass]) {
    let mut groups: std::collections::BTreeMap<String, Vec<usize>> = Default::default();
    for (i, c) in classes.iter().enumerate() {
        if c.label == c.representative.type_label {
            groups.entry(c.label.clone()).or_default().push(i);
        }
    }
    for (label, mut idx) in groups {
        if idx.len() < 2 {
            continue;
        }
        idx.sort_by_key(|&i| (classes[i].orbit_size, classes[i].id));
        let base = if classes[idx[0]].representative.ctype.components.len() > 1 || label.contains('^') {
            format!("({label})")
        } else {
            label
        };
        for (k, &i) in idx.iter().enumerate() {
            classes[i].label = format!("{base}{}", "'".repeat(k + 1));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn build(s: &str) -> RootSystem {
        RootSystem::build(&s.parse().unwrap()).unwrap()
    }

    fn classes(s: &str) -> Vec<ParabolicClass> {
        let rs = build(s);
        parabolic_subsets_up_to_conjugacy(&rs, 1_000_000, &LabelMap::builtin()).unwrap()
    }

    #[test]
    fn a2_has_three_classes() {
        let c = classes("A2");
        assert_eq!(c.len(), 3);
        assert_eq!(c[1].members, vec![vec![0], vec![1]]);
        assert_eq!(c[1].orbit_size, 3);
    }

    #[test]
    fn i2_5_has_three_classes() {
        assert_eq!(classes("I2(5)").len(), 3);
        assert_eq!(classes("I2(6)").len(), 4);
    }

    #[test]
    fn type_a_classes_are_partitions() {
        let partitions = [1, 2, 3, 5, 7, 11, 15, 22];
        for (r, &p) in partitions.iter().enumerate().skip(1) {
            assert_eq!(classes(&format!("A{r}")).len(), p, "A{r}");
        }
    }

    #[test]
    fn induced_types() {
        let b3 = build("B3");
        assert_eq!(subsystem_type(&b3, &[0, 1]).label(), "A2");
        assert_eq!(subsystem_type(&b3, &[2]).label(), "A1~");
        assert_eq!(subsystem_type(&b3, &[1, 2]).label(), "B2");
        let f4 = build("F4");
        assert_eq!(subsystem_type(&f4, &[0, 1, 2]).label(), "B3");
        assert_eq!(subsystem_type(&f4, &[1, 2, 3]).label(), "C3");
        assert_eq!(subsystem_type(&f4, &[2, 3]).label(), "A2~");
        let e8 = build("E8");
        assert_eq!(subsystem_type(&e8, &[0, 1, 2, 3, 4, 5]).label(), "E6");
        assert_eq!(subsystem_type(&e8, &[1, 2, 3, 4, 5, 6, 7]).label(), "D7");
        assert_eq!(subsystem_type(&e8, &[0, 1, 4, 6]).label(), "A1^4");
        let h4 = build("H4");
        assert_eq!(subsystem_type(&h4, &[0, 1, 3]).label(), "A1I2(5)");
        assert_eq!(subsystem_type(&h4, &[0, 1, 2]).label(), "H3");
        assert!(subsystem_type(&h4, &[]).is_empty());
    }

    #[test]
    fn fixed_subspace_dimensions() {
        let a3 = build("A3");
        let x = fixed_subspace(&a3, &[0, 2]);
        assert_eq!(x.len(), 1);
        assert!(x[0][0].is_zero() && x[0][2].is_zero() && !x[0][1].is_zero());
        assert_eq!(fixed_subspace(&a3, &[]).len(), 3);
        assert!(fixed_subspace(&a3, &[0, 1, 2]).is_empty());
    }

    #[test]
    fn roots_vanishing_on_x_are_the_subsystem() {
        for s in ["B4", "F4", "H3"] {
            let rs = build(s);
            for mask in 0u32..1 << rs.rank() {
                let subset: Vec<usize> = (0..rs.rank()).filter(|i| mask >> i & 1 == 1).collect();
                let x = fixed_subspace(&rs, &subset);
                let inside = rs.subsystem_positive(&subset);
                for (k, root) in rs.positive_roots().iter().enumerate() {
                    let vanishes = x.iter().all(|v| crate::linalg::dot(root, v).is_zero());
                    assert_eq!(vanishes, inside.contains(&k));
                }
            }
        }
    }

    #[test]
    fn mixed_basis_is_a_basis() {
        let rs = build("E6");
        let w = fundamental_weights(&rs);
        for mask in 0u32..1 << 6 {
            let rows: Vec<Vec<Scalar>> = (0..6)
                .map(|s| {
                    if mask >> s & 1 == 1 {
                        let mut v = vec![Scalar::zero(); 6];
                        v[s] = Scalar::one();
                        v
                    } else {
                        w[s].clone()
                    }
                })
                .collect();
            assert!(!Matrix::from_rows(rows).determinant().is_zero());
        }
    }

    #[test]
    fn duplicate_types_get_primes() {
        let c = classes("D4");
        let labels: Vec<&str> = c.iter().map(|p| p.label.as_str()).collect();
        for l in ["(A1^2)'", "(A1^2)''", "(A1^2)'''", "A3'", "A3''", "A3'''"] {
            assert!(labels.contains(&l), "{l} missing from {labels:?}");
        }
        assert!(classes("E6").iter().all(|p| !p.is_primed()));
    }
}

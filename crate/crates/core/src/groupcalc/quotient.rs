use super::exponents::ExponentMultiset;
use super::matgroup::{reflection_root, MatrixGroup};
use super::molien::{molien_series, reflection_degrees};
use super::orbit::{orbit_stabilizer, restrict_matrix};
use super::reflections::reflecting_hyperplanes;
use super::GroupError;
use crate::linalg::{projective_normalize, Matrix};
use crate::rootsystems::{ParabolicClass, RootSystem};
use crate::scalars::{Field, Fp61, Scalar};

/// Default cap on the enumerated order of `C_I`.
pub const DEFAULT_GROUP_CAP: usize = 1_000_000;

/// Enumerated image of `C_I` on `X_I^*`. Crystallographic types use integer
/// matrices held as residues (entries and characteristic polynomial
/// coefficients are tiny, so the residues are faithful).
#[derive(Debug, Clone)]
pub enum GroupImage {
    Integral(MatrixGroup<Fp61>),
    Exact(MatrixGroup<Scalar>),
}

impl GroupImage {
    pub fn order(&self) -> usize {
        match self {
            GroupImage::Integral(g) => g.order(),
            GroupImage::Exact(g) => g.order(),
        }
    }

    pub fn molien(&self, max_degree: usize) -> Result<Vec<u64>, GroupError> {
        match self {
            GroupImage::Integral(g) => molien_series(g, max_degree),
            GroupImage::Exact(g) => molien_series(g, max_degree),
        }
    }

    /// Normalized roots of the reflections in the group, deduplicated.
    pub fn reflection_covectors(&self) -> Vec<Vec<Scalar>> {
        fn collect<F: Field>(g: &MatrixGroup<F>) -> Vec<Vec<Scalar>> {
            let mut out: Vec<Vec<Scalar>> = Vec::new();
            for i in g.reflections() {
                let m = g.elements()[i].map(|x| x.to_scalar());
                let n = projective_normalize(&reflection_root(&m)).expect("reflection root is nonzero");
                if !out.contains(&n) {
                    out.push(n);
                }
            }
            out
        }
        match self {
            GroupImage::Integral(g) => collect(g),
            GroupImage::Exact(g) => collect(g),
        }
    }

    pub fn generators(&self) -> Vec<Matrix<Scalar>> {
        match self {
            GroupImage::Integral(g) => g.generators().iter().map(|m| m.map(|x| x.to_scalar())).collect(),
            GroupImage::Exact(g) => g.generators().to_vec(),
        }
    }

    /// All elements as exact matrices (use on small groups).
    pub fn elements(&self) -> Vec<Matrix<Scalar>> {
        match self {
            GroupImage::Integral(g) => g.elements().iter().map(|m| m.map(|x| x.to_scalar())).collect(),
            GroupImage::Exact(g) => g.elements().to_vec(),
        }
    }
}

/// The action of `C_I = N_W(W_I)/W_I` on `X_I`, realized on the dual space
/// `X_I^*` with coordinates indexed by the nodes outside `I`.
#[derive(Debug, Clone)]
pub struct QuotientAction {
    pub subset: Vec<usize>,
    /// Nodes outside `I`.
    pub coordinates: Vec<usize>,
    /// `|C_I|` from orbit–stabilizer.
    pub order: u128,
    /// Enumerated image when `order` is within the cap.
    pub image: Option<GroupImage>,
    /// Reflecting hyperplanes of `C_I` on `X_I` (covectors), computed without
    /// enumeration.
    pub reflecting: Vec<Vec<Scalar>>,
}

impl QuotientAction {
    pub fn dim(&self) -> usize {
        self.coordinates.len()
    }

    pub fn is_enumerated(&self) -> bool {
        self.image.is_some()
    }

    pub fn molien_series(&self, max_degree: usize) -> Result<Vec<u64>, GroupError> {
        self.image.as_ref().ok_or(GroupError::NotEnumerated)?.molien(max_degree)
    }

    /// Degrees via the Molien series. Fails when `C_I` is not generated by
    /// reflections.
    pub fn reflection_degrees(&self) -> Result<ExponentMultiset, GroupError> {
        let bound = 2 * self.dim().max(1) * 16;
        let m = self.molien_series(bound)?;
        reflection_degrees(&m, self.dim(), self.order)
    }
}

/// Computes the action of `C_I` for the representative of `pc`.
///
/// Schreier generators of `N_W(Φ_I)` are restricted to `X_I^*` and added
/// until the enumerated image reaches the order predicted by the orbit.
pub fn quotient_action(
    rs: &RootSystem,
    pc: &ParabolicClass,
    orbit_cap: usize,
    group_cap: usize,
) -> Result<QuotientAction, GroupError> {
    let subset = pc.representative.subset.clone();
    let coordinates = pc.representative.complement(rs.rank());
    let order = pc.complement_order(rs);
    let reflecting = reflecting_hyperplanes(rs, &subset);
    let dim = coordinates.len();
    let mut qa = QuotientAction { subset, coordinates, order, image: None, reflecting };
    if order > group_cap as u128 {
        return Ok(qa);
    }
    let integral = rs.has_rational_roots();
    let mut int_group = MatrixGroup::<Fp61>::trivial(dim, group_cap);
    let mut exact_group = MatrixGroup::<Scalar>::trivial(dim, group_cap);
    let current = |i: &MatrixGroup<Fp61>, e: &MatrixGroup<Scalar>| {
        if integral {
            i.order()
        } else {
            e.order()
        }
    };
    if (current(&int_group, &exact_group) as u128) < order {
        let st = orbit_stabilizer(rs, pc.representative.lines(), orbit_cap)?;
        for g in st.schreier_generators(rs) {
            let m = restrict_matrix(&g.matrix(rs), &qa.coordinates);
            if integral {
                int_group.add_generator(m.map(|x| Fp61::from_rational(x.as_rational().unwrap())))?;
            } else {
                exact_group.add_generator(m)?;
            }
            if current(&int_group, &exact_group) as u128 >= order {
                break;
            }
        }
    }
    if current(&int_group, &exact_group) as u128 != order {
        return Err(GroupError::OrderMismatch { expected: order, found: current(&int_group, &exact_group) as u128 });
    }
    qa.image = Some(if integral { GroupImage::Integral(int_group) } else { GroupImage::Exact(exact_group) });
    Ok(qa)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsystems::{parabolic_subsets_up_to_conjugacy, LabelMap};

    fn classes(s: &str) -> (RootSystem, Vec<ParabolicClass>) {
        let rs = RootSystem::build(&s.parse().unwrap()).unwrap();
        let c = parabolic_subsets_up_to_conjugacy(&rs, 1_000_000, &LabelMap::builtin()).unwrap();
        (rs, c)
    }

    #[test]
    fn single_nodes_in_rank_two() {
        let (rs, c) = classes("A2");
        let qa = quotient_action(&rs, &c[1], 1000, 1000).unwrap();
        assert_eq!(qa.order, 1);
        assert_eq!(qa.reflection_degrees().unwrap().values(), &[0]);
        assert!(qa.reflecting.is_empty());
        let (rs, c) = classes("B2");
        let qa = quotient_action(&rs, &c[1], 1000, 1000).unwrap();
        assert_eq!(qa.order, 2);
        assert_eq!(qa.reflection_degrees().unwrap().degrees(), vec![2]);
        assert_eq!(qa.reflecting.len(), 1);
    }

    #[test]
    fn full_subset_is_trivial() {
        let (rs, c) = classes("B3");
        let qa = quotient_action(&rs, c.last().unwrap(), 1000, 1000).unwrap();
        assert_eq!(qa.dim(), 0);
        assert_eq!(qa.order, 1);
    }

    #[test]
    fn e6_a2_squared_is_g2() {
        let (rs, c) = classes("E6");
        let pc = c.iter().find(|p| p.label == "A2^2").unwrap();
        let qa = quotient_action(&rs, pc, 1_000_000, 1_000_000).unwrap();
        assert_eq!(qa.order, 12);
        assert_eq!(qa.reflection_degrees().unwrap().degrees(), vec![2, 6]);
        let image = qa.image.as_ref().unwrap();
        assert_eq!(image.reflection_covectors().len(), 6);
        assert_eq!(qa.reflecting.len(), 6);
    }

    #[test]
    fn h3_classes_enumerate_exactly() {
        let (rs, c) = classes("H3");
        for pc in &c[1..] {
            let qa = quotient_action(&rs, pc, 100_000, 100_000).unwrap();
            assert_eq!(qa.image.as_ref().unwrap().order() as u128, qa.order);
        }
    }

    #[test]
    fn reflection_roots_with_halves_are_exact() {
        let (rs, c) = classes("B4");
        let pc = c.iter().find(|p| p.label == "A1").unwrap();
        let qa = quotient_action(&rs, pc, 100_000, 100_000).unwrap();
        let mut from_group = qa.image.as_ref().unwrap().reflection_covectors();
        let mut from_test = qa.reflecting.clone();
        from_group.sort_by_key(|v| format!("{v:?}"));
        from_test.sort_by_key(|v| format!("{v:?}"));
        assert_eq!(from_group, from_test);
    }
}

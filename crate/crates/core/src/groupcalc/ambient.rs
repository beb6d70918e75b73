use super::exponents::ExponentMultiset;
use super::GroupError;
use crate::arrangements::{exponents_if_free, reflection_arrangement, CharPoly, IntersectionPoset};
use crate::rootsystems::{ParabolicClass, RootSystem};

/// Largest number of reflecting hyperplanes for which the full lattice is
/// also built as a cross-check.
const POSET_CHECK_HYPERPLANES: usize = 36;

/// `χ(𝒜(W), t)` from the class list: the flats conjugate to `X_I` number
/// `[W : N_W(W_I)]` and each has `μ(V, X_I) = (-1)^{|I|} Π exp(W_I)`.
pub fn orbit_characteristic_polynomial(rs: &RootSystem, classes: &[ParabolicClass]) -> CharPoly {
    let r = rs.rank();
    let mut c = vec![0i128; r + 1];
    for pc in classes {
        let k = pc.representative.subset.len();
        let prod: i128 = pc.representative.ctype.exponents().iter().map(|&e| e as i128).product();
        let sign = if k % 2 == 0 { 1 } else { -1 };
        c[r - k] += sign * prod * pc.orbit_size as i128;
    }
    CharPoly::new(c)
}

/// `exp(𝒜)` for the reflection arrangement of `W`: the table of degrees,
/// confirmed against the characteristic polynomial summed over classes and,
/// for small arrangements, against the full intersection lattice.
pub fn ambient_exponents(rs: &RootSystem, classes: &[ParabolicClass]) -> Result<ExponentMultiset, GroupError> {
    let table = ExponentMultiset::new(rs.coxeter_type().exponents());
    let mismatch = |computed: String| GroupError::ExponentMismatch { table: table.to_string(), computed };
    let orbit = exponents_if_free(&orbit_characteristic_polynomial(rs, classes))?;
    if orbit != table {
        return Err(mismatch(orbit.to_string()));
    }
    if rs.num_positive() <= POSET_CHECK_HYPERPLANES {
        let poset = IntersectionPoset::build(&reflection_arrangement(rs), usize::MAX)?;
        let full = exponents_if_free(&poset.characteristic_polynomial())?;
        if full != table {
            return Err(mismatch(full.to_string()));
        }
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsystems::{parabolic_subsets_up_to_conjugacy, LabelMap};

    fn check(s: &str) -> ExponentMultiset {
        let rs = RootSystem::build(&s.parse().unwrap()).unwrap();
        let c = parabolic_subsets_up_to_conjugacy(&rs, 10_000_000, &LabelMap::builtin()).unwrap();
        ambient_exponents(&rs, &c).unwrap()
    }

    #[test]
    fn small_types() {
        assert_eq!(check("A3").values(), &[1, 2, 3]);
        assert_eq!(check("H3").values(), &[1, 5, 9]);
        assert_eq!(check("B2A1").values(), &[1, 1, 3]);
    }

    #[test]
    fn e6_orbit_polynomial() {
        assert_eq!(check("E6").values(), &[1, 4, 5, 7, 8, 11]);
    }
}

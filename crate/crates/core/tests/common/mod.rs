#![allow(dead_code)]

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use coxeter_core::arrangements::{group_arrangement, parabolic_restriction};
use coxeter_core::classify::{classify_all, ClassifyConfig, JacobianPolicy};
use coxeter_core::groupcalc::{orbit_stabilizer, parabolic_lines, quotient_action, GroupElement};
use coxeter_core::invariants::invariant_of_degree;
use coxeter_core::linalg::Matrix;
use coxeter_core::rootsystems::{parabolic_subsets_up_to_conjugacy, LabelMap, RootSystem};
use coxeter_core::scalars::CyclotomicContext;
use coxeter_core::{Field, Rational, Scalar};

pub type Check = Result<(), String>;

pub const ORBIT_CAP: usize = 1_000_000;

pub fn build(s: &str) -> RootSystem {
    RootSystem::build(&s.parse().unwrap()).unwrap()
}

pub const SMALL_TYPES: &[&str] = &[
    "A1", "A2", "A3", "A4", "B2", "B3", "B4", "D4", "F4", "G2", "H3", "H4", "I2(5)", "I2(7)", "I2(8)", "A1xA1",
    "A1xB2", "A1xA2", "A1xH3",
];

/// `(α_i, β^∨)` for every simple `α_i`: the coroot of `β` in the coordinates
/// of the polynomial variables.
fn coroot_coordinates(rs: &RootSystem, beta: &[Scalar]) -> Vec<Scalar> {
    let bb = rs.form(beta, beta);
    (0..rs.rank())
        .map(|i| {
            let mut a = vec![Scalar::int(0); rs.rank()];
            a[i] = Scalar::int(1);
            rs.form(&a, beta) * Scalar::int(2) / bb.clone()
        })
        .collect()
}

/// For each simple root `α_s` and each degree `d ≤ max_degree` of `W`, the
/// derivative of a degree-`d` invariant along the coroot of `α_s` vanishes
/// on the hyperplane `α_s = 0`.
pub fn derivative_vanishing(types: &[&str], max_degree: u32) -> Check {
    for t in types {
        let rs = build(t);
        let r = rs.rank();
        for d in rs.coxeter_type().degrees() {
            if d > max_degree {
                continue;
            }
            let f = invariant_of_degree(&rs, d).map_err(|e| format!("{t} degree {d}: {e}"))?;
            for s in 0..r {
                let v = coroot_coordinates(&rs, &rs.root(s));
                let keep: Vec<usize> = (0..r).filter(|&i| i != s).collect();
                let on_h = f.directional_derivative(&v).restrict_to(&keep);
                if !on_h.is_zero() {
                    return Err(format!(
                        "{t}: D f_{d} along node {} is {} terms on its hyperplane",
                        s + 1,
                        on_h.num_terms()
                    ));
                }
            }
        }
    }
    Ok(())
}

/// Runs the Jacobian on every full-rank reflection class and checks that a
/// nonzero determinant comes with the exponent condition.
pub fn jacobian_implies_exponents(types: &[&str]) -> Check {
    let config = ClassifyConfig { jacobian: JacobianPolicy::All, ..ClassifyConfig::default() };
    let mut certified = 0;
    for t in types {
        let rs = build(t);
        let reports = classify_all(&rs, &config).map_err(|e| format!("{t}: {e}"))?;
        for r in &reports {
            if !r.is_decided() {
                continue;
            }
            let nonzero = r.jacobian.as_ref().and_then(|j| j["nonzero"].as_bool()).unwrap_or(false);
            if nonzero {
                certified += 1;
                if r.equality != Some(true) || r.containment != Some(true) {
                    return Err(format!(
                        "{t} {}: Jacobian nonzero but exponents {:?} vs {:?}",
                        r.label, r.exp_ax, r.exp_acx
                    ));
                }
            }
        }
    }
    if certified == 0 {
        return Err("no class was certified".into());
    }
    Ok(())
}

/// `𝒜(C_X) ⊆ 𝒜^X` whenever `C_X` can be enumerated within `group_cap`.
pub fn group_arrangement_inside_restriction(types: &[&str], group_cap: usize) -> Check {
    let labels = LabelMap::builtin();
    for t in types {
        let rs = build(t);
        let classes = parabolic_subsets_up_to_conjugacy(&rs, ORBIT_CAP, &labels).map_err(|e| e.to_string())?;
        for pc in &classes {
            let qa = quotient_action(&rs, pc, ORBIT_CAP, group_cap).map_err(|e| e.to_string())?;
            if !qa.is_enumerated() {
                continue;
            }
            let ac = group_arrangement(&qa).map_err(|e| e.to_string())?;
            let ax = parabolic_restriction(&rs, &pc.representative.subset);
            if !ac.is_subarrangement_of(&ax) {
                return Err(format!("{t} {}: reflecting hyperplanes of C outside the restriction", pc.label));
            }
        }
    }
    Ok(())
}

/// Every element of `W` as a permutation of the roots, by closure.
fn all_elements(rs: &RootSystem) -> Vec<GroupElement> {
    let gens: Vec<GroupElement> = (0..rs.rank()).map(|j| GroupElement::simple(rs, j)).collect();
    let mut seen = HashSet::new();
    let id = GroupElement::identity(rs);
    seen.insert(id.clone());
    let mut out = vec![id];
    let mut head = 0;
    while head < out.len() {
        let cur = out[head].clone();
        head += 1;
        for g in &gens {
            let next = cur.then(g);
            if seen.insert(next.clone()) {
                out.push(next);
            }
        }
    }
    out
}

/// `|orbit of Φ_I| · |N_W(Φ_I)| = |W|`, with the normalizer counted by brute
/// force over all of `W`.
pub fn orbit_stabilizer_identity(types: &[&str]) -> Check {
    for t in types {
        let rs = build(t);
        let order = rs.coxeter_type().group_order();
        let elements = all_elements(&rs);
        if elements.len() as u128 != order {
            return Err(format!("{t}: closure has {} elements, expected {order}", elements.len()));
        }
        let n = rs.num_positive();
        let classes =
            parabolic_subsets_up_to_conjugacy(&rs, ORBIT_CAP, &LabelMap::empty()).map_err(|e| e.to_string())?;
        let mut total = 0u128;
        for pc in &classes {
            let key = parabolic_lines(&rs, &pc.representative.subset);
            let orbit = orbit_stabilizer(&rs, key, ORBIT_CAP).map_err(|e| e.to_string())?;
            let stab = elements.iter().filter(|g| g.map_set(&key, n) == key).count() as u128;
            if orbit.orbit_size() as u128 * stab != order || orbit.orbit_size() as u64 != pc.orbit_size {
                return Err(format!(
                    "{t} {}: orbit {} times stabilizer {stab} is not {order}",
                    pc.label,
                    orbit.orbit_size()
                ));
            }
            if pc.members.iter().any(|m| !orbit.contains(&parabolic_lines(&rs, m))) {
                return Err(format!("{t} {}: a member lies outside the orbit", pc.label));
            }
            total += pc.members.len() as u128;
        }
        if total != 1 << rs.rank() {
            return Err(format!("{t}: classes cover {total} subsets"));
        }
    }
    Ok(())
}

/// Dimension of the common fixed space of the generators.
fn fixed_dimension(dim: usize, gens: &[Matrix<Scalar>]) -> usize {
    let mut rows = Vec::new();
    for g in gens {
        for i in 0..dim {
            let mut row = g.column(i);
            row[i] -= Scalar::int(1);
            rows.push(row);
        }
    }
    if rows.is_empty() {
        return dim;
    }
    dim - Matrix::from_rows(rows).rank()
}

/// Molien coefficient in degree 0 is one, and in degree 1 it is the
/// dimension of the fixed space.
pub fn molien_low_degrees(types: &[&str], group_cap: usize) -> Check {
    for t in types {
        let rs = build(t);
        let classes =
            parabolic_subsets_up_to_conjugacy(&rs, ORBIT_CAP, &LabelMap::empty()).map_err(|e| e.to_string())?;
        for pc in &classes {
            let qa = quotient_action(&rs, pc, ORBIT_CAP, group_cap).map_err(|e| e.to_string())?;
            let Some(image) = &qa.image else { continue };
            let m = qa.molien_series(2).map_err(|e| e.to_string())?;
            let fixed = fixed_dimension(qa.dim(), &image.generators());
            if m[0] != 1 || m[1] != fixed as u64 {
                return Err(format!("{t} {}: Molien starts {m:?}, fixed space has dimension {fixed}", pc.label));
            }
            if image.order() as u128 != qa.order {
                return Err(format!("{t} {}: image of order {} for |C| = {}", pc.label, image.order(), qa.order));
            }
        }
    }
    Ok(())
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    let den = rng.gen_range(1i64..=12);
    Rational::new(rng.gen_range(-30i64..=30), den)
}

/// A random element of `ℚ(e^{iπ/m})` that is real, so that mixing it with
/// `2cos(π/m)` stays inside one context.
fn random_element(rng: &mut ChaCha8Rng, m: u32) -> Scalar {
    let c = Scalar::two_cos_pi_over(m).unwrap();
    let mut acc = Scalar::int(0);
    let mut power = Scalar::int(1);
    for _ in 0..3 {
        acc = acc + power.clone() * Scalar::rational(random_rational(rng));
        power = power * c.clone();
    }
    acc
}

fn axioms<F: Field>(a: &F, b: &F, c: &F) -> Result<(), &'static str> {
    if (a.clone() + b.clone()) + c.clone() != a.clone() + (b.clone() + c.clone()) {
        return Err("addition is not associative");
    }
    if a.clone() + b.clone() != b.clone() + a.clone() {
        return Err("addition is not commutative");
    }
    if (a.clone() * b.clone()) * c.clone() != a.clone() * (b.clone() * c.clone()) {
        return Err("multiplication is not associative");
    }
    if a.clone() * b.clone() != b.clone() * a.clone() {
        return Err("multiplication is not commutative");
    }
    if a.clone() * (b.clone() + c.clone()) != a.clone() * b.clone() + a.clone() * c.clone() {
        return Err("distributivity fails");
    }
    if a.clone() - a.clone() != F::zero() || a.clone() + F::zero() != *a || a.clone() * F::one() != *a {
        return Err("identities fail");
    }
    if !a.is_zero() && a.clone() * a.inv() != F::one() {
        return Err("inverse fails");
    }
    Ok(())
}

fn close(x: (f64, f64), y: (f64, f64)) -> bool {
    let scale = 1.0 + x.0.abs() + x.1.abs();
    (x.0 - y.0).abs() < 1e-9 * scale && (x.1 - y.1).abs() < 1e-9 * scale
}

/// Field axioms on random rationals and cyclotomic elements, and the
/// complex embedding as a ring map sending `x + x^{-1}` to `2cos(π/m)`.
pub fn field_and_embedding(samples: usize) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..samples {
        let (a, b, c) = (random_rational(&mut rng), random_rational(&mut rng), random_rational(&mut rng));
        axioms(&a, &b, &c).map_err(|e| format!("rationals: {e}"))?;
    }
    for m in [4u32, 5, 6, 7, 8, 10, 12] {
        let ctx = CyclotomicContext::get(m).map_err(|e| e.to_string())?;
        let want = 2.0 * (std::f64::consts::PI / m as f64).cos();
        let got = Scalar::two_cos_pi_over(m).unwrap().to_complex();
        if !close(got, (want, 0.0)) {
            return Err(format!("m = {m}: 2cos(pi/m) embeds to {got:?}"));
        }
        if ctx.degree() == 0 {
            return Err(format!("m = {m}: empty context"));
        }
        for _ in 0..samples {
            let (a, b, c) = (random_element(&mut rng, m), random_element(&mut rng, m), random_element(&mut rng, m));
            axioms(&a, &b, &c).map_err(|e| format!("m = {m}: {e}"))?;
            let (ea, eb) = (a.to_complex(), b.to_complex());
            let prod = (ea.0 * eb.0 - ea.1 * eb.1, ea.0 * eb.1 + ea.1 * eb.0);
            if !close((a.clone() * b.clone()).to_complex(), prod) {
                return Err(format!("m = {m}: embedding is not multiplicative"));
            }
            let sum = (ea.0 + eb.0, ea.1 + eb.1);
            if !close((a.clone() + b.clone()).to_complex(), sum) {
                return Err(format!("m = {m}: embedding is not additive"));
            }
            if ea.1.abs() > 1e-9 * (1.0 + ea.0.abs()) {
                return Err(format!("m = {m}: real element embeds off the real axis"));
            }
        }
    }
    Ok(())
}

/// Ordered partition of `r` read from a type-`A` Levi: block sizes of `I`
/// plus the singletons it leaves.
pub fn partition_of(r: usize, subset: &[usize]) -> Vec<usize> {
    let mut parts = Vec::new();
    let mut run = 1;
    for node in 0..r - 1 {
        if subset.contains(&node) {
            run += 1;
        } else {
            parts.push(run);
            run = 1;
        }
    }
    parts.push(run);
    parts.sort_unstable_by(|a, b| b.cmp(a));
    parts
}

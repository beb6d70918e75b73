//! The exponent criterion for surjectivity of the restriction map
//! `ℂ[V]^W → ℂ[X_I]^{C_I}`, evaluated by computation and, for classical
//! and dihedral groups, by closed form.

mod closed_form;
mod normality;
mod output;
mod tables;

use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

pub use closed_form::{
    classical_closed_form, classical_shape, orlik_solomon_exponents, ClassicalFamily, ClassicalShape, DRule,
};
pub use normality::{normality_report, type_a_partition, NormalityEntry, NormalityReport, NormalityVerdict};
pub use output::{reports_markdown, reports_tsv, OutputFormat};
pub use tables::{identify_reflection_type, reproduce_tables, ExpectedTables, TableDiff, TableSelection, TablesReport};

use crate::arrangements::{
    exponents_if_free, parabolic_restriction, reflecting_arrangement, ArrangementError, IntersectionPoset,
    DEFAULT_POSET_CAP,
};
use crate::groupcalc::{
    ambient_exponents, quotient_action, ExponentMultiset, GroupError, DEFAULT_GROUP_CAP, DEFAULT_ORBIT_CAP,
};
use crate::invariants::{
    refute_surjectivity, surjectivity_jacobian_test, InvariantError, JacobianOptions, Refutation,
    DEFAULT_REFUTATION_BOUND,
};
use crate::rootsystems::{
    parabolic_subsets_up_to_conjugacy, CoxeterType, LabelMap, ParabolicClass, RootSystem, RootSystemError,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ClassifyError {
    #[error("{0} is not classical or dihedral")]
    NotClassical(String),
    #[error("malformed shape: {0}")]
    MalformedShape(String),
    #[error("{0} is not a Weyl group, so there is no Lie algebra to speak of")]
    NotCrystallographic(String),
    #[error("no parabolic class matches {0:?}")]
    UnknownClass(String),
    #[error("curated table data: {0}")]
    Data(String),
    #[error(transparent)]
    RootSystem(#[from] RootSystemError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Arrangement(#[from] ArrangementError),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
}

/// When to run the Jacobian test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum JacobianPolicy {
    Never,
    /// On positive classes of exceptional groups.
    #[default]
    Positive,
    /// On every class with `∅ ≠ I ≠ S` where `C_I` is a reflection group of
    /// full rank.
    All,
}

#[derive(Debug, Clone)]
pub struct ClassifyConfig {
    pub orbit_cap: usize,
    pub group_cap: usize,
    pub poset_cap: usize,
    pub refutation_bound: usize,
    pub jacobian: JacobianPolicy,
    pub jacobian_options: JacobianOptions,
    pub d_rule: DRule,
    pub labels: LabelMap,
}

impl Default for ClassifyConfig {
    fn default() -> Self {
        ClassifyConfig {
            orbit_cap: DEFAULT_ORBIT_CAP,
            group_cap: DEFAULT_GROUP_CAP,
            poset_cap: DEFAULT_POSET_CAP,
            refutation_bound: DEFAULT_REFUTATION_BOUND,
            jacobian: JacobianPolicy::default(),
            jacobian_options: JacobianOptions::default(),
            d_rule: DRule::DOdd,
            labels: LabelMap::builtin(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Surjective,
    NotSurjective,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Evidence {
    ClosedForm,
    ExponentComputation,
    Jacobian,
    DimensionRefutation,
}

/// `exp(𝒜(X_I, C_I))`, or the statement that `C_I` is not generated by its
/// reflections.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QuotientExponents {
    Reflection(ExponentMultiset),
    NotReflection,
}

pub const NOT_REFLECTION: &str = "not a reflection group with full rank";

impl QuotientExponents {
    pub fn exponents(&self) -> Option<&ExponentMultiset> {
        match self {
            QuotientExponents::Reflection(e) => Some(e),
            QuotientExponents::NotReflection => None,
        }
    }

    /// A reflection group with no zero exponent on `X_I`.
    pub fn is_full_rank_reflection(&self) -> bool {
        matches!(self, QuotientExponents::Reflection(e) if e.zeros() == 0)
    }
}

impl Serialize for QuotientExponents {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            QuotientExponents::Reflection(e) => e.serialize(s),
            QuotientExponents::NotReflection => s.serialize_str(NOT_REFLECTION),
        }
    }
}

impl<'de> Deserialize<'de> for QuotientExponents {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Exponents(ExponentMultiset),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Exponents(e) => Ok(QuotientExponents::Reflection(e)),
            Raw::Text(t) if t == NOT_REFLECTION => Ok(QuotientExponents::NotReflection),
            Raw::Text(t) => Err(serde::de::Error::custom(format!("unexpected exponents {t:?}"))),
        }
    }
}

impl std::fmt::Display for QuotientExponents {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            QuotientExponents::Reflection(e) => write!(f, "{e}"),
            QuotientExponents::NotReflection => f.write_str(NOT_REFLECTION),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "state", content = "reason", rename_all = "snake_case")]
pub enum Status {
    Decided,
    /// A cap stopped the computation.
    Undecided(String),
}

/// The criterion evaluated on one parabolic class.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriterionReport {
    pub w_type: String,
    pub class_id: usize,
    pub label: String,
    pub type_label: String,
    /// Nodes of the representative, numbered from 1.
    pub nodes: Vec<usize>,
    pub orbit_size: u64,
    pub dim_x: usize,
    pub exp_a: ExponentMultiset,
    pub exp_ax: Option<ExponentMultiset>,
    pub exp_acx: Option<QuotientExponents>,
    /// `|C_I|`.
    pub c_order: u128,
    /// Order of the subgroup of `C_I` generated by reflections.
    pub c_reflection_order: Option<u128>,
    pub equality: Option<bool>,
    pub containment: Option<bool>,
    pub verdict: Option<Verdict>,
    pub evidence: Option<Evidence>,
    pub jacobian: Option<Value>,
    pub refutation: Option<Refutation>,
    pub closed_form: Option<bool>,
    pub closed_form_agrees: Option<bool>,
    pub status: Status,
}

impl CriterionReport {
    pub fn is_endpoint(&self) -> bool {
        self.dim_x == 0 || self.nodes.is_empty()
    }

    pub fn is_surjective(&self) -> bool {
        self.verdict == Some(Verdict::Surjective)
    }

    /// Surjective with `∅ ≠ I ≠ S`.
    pub fn is_positive_proper(&self) -> bool {
        self.is_surjective() && !self.is_endpoint()
    }

    pub fn is_decided(&self) -> bool {
        self.status == Status::Decided
    }

    pub fn subset(&self) -> Vec<usize> {
        self.nodes.iter().map(|n| n - 1).collect()
    }
}

fn is_cap(e: &ClassifyError) -> Option<String> {
    match e {
        ClassifyError::Group(g @ (GroupError::OrbitCap(_) | GroupError::GroupOrderCap(_))) => Some(g.to_string()),
        ClassifyError::Group(GroupError::Arrangement(a @ ArrangementError::PosetCap(_)))
        | ClassifyError::Arrangement(a @ ArrangementError::PosetCap(_)) => Some(a.to_string()),
        ClassifyError::RootSystem(r @ RootSystemError::OrbitCap { .. }) => Some(r.to_string()),
        _ => None,
    }
}

fn free_exponents(a: &crate::arrangements::Arrangement, cap: usize) -> Result<ExponentMultiset, ClassifyError> {
    let poset = IntersectionPoset::build(a, cap)?;
    Ok(exponents_if_free(&poset.characteristic_polynomial())?)
}

/// Evaluates the criterion for one class from the three exponent
/// multisets.
///
/// `exp(𝒜^{X_I})` comes from the intersection lattice of the restricted
/// arrangement. `exp(𝒜(X_I, C_I))` comes from the lattice of the reflecting
/// hyperplanes of `C_I`, and `C_I` counts as a reflection group when its
/// order equals `Π (e+1)` over those exponents. Caps turn into an
/// undecided status rather than an error.
pub fn criterion_by_computation(
    rs: &RootSystem,
    pc: &ParabolicClass,
    exp_a: &ExponentMultiset,
    config: &ClassifyConfig,
) -> Result<CriterionReport, ClassifyError> {
    let r = rs.rank();
    let subset = &pc.representative.subset;
    let dim_x = pc.representative.dim_x(r);
    let mut report = CriterionReport {
        w_type: rs.coxeter_type().label(),
        class_id: pc.id,
        label: pc.label.clone(),
        type_label: pc.representative.type_label.clone(),
        nodes: subset.iter().map(|s| s + 1).collect(),
        orbit_size: pc.orbit_size,
        dim_x,
        exp_a: exp_a.clone(),
        exp_ax: None,
        exp_acx: None,
        c_order: pc.complement_order(rs),
        c_reflection_order: None,
        equality: None,
        containment: None,
        verdict: None,
        evidence: None,
        jacobian: None,
        refutation: None,
        closed_form: None,
        closed_form_agrees: None,
        status: Status::Decided,
    };
    match fill_exponents(rs, pc, config, &mut report) {
        Ok(()) => {}
        Err(e) => match is_cap(&e) {
            Some(reason) => {
                report.status = Status::Undecided(reason);
                return Ok(report);
            }
            None => return Err(e),
        },
    }
    let exp_ax = report.exp_ax.clone().expect("filled");
    let exp_acx = report.exp_acx.clone().expect("filled");
    let equality = exp_acx.exponents() == Some(&exp_ax);
    let containment = exp_ax.is_submultiset_of(exp_a);
    report.equality = Some(equality);
    report.containment = Some(containment);
    let positive = equality && containment;
    report.verdict = Some(if positive { Verdict::Surjective } else { Verdict::NotSurjective });

    if let Ok(shape) = classical_shape(rs, subset) {
        let cf = classical_closed_form(&shape, config.d_rule)?;
        report.closed_form = Some(cf);
        report.closed_form_agrees = Some(cf == positive);
    }

    let endpoint = subset.is_empty() || dim_x == 0;
    let jacobian_wanted = exp_acx.is_full_rank_reflection()
        && !endpoint
        && match config.jacobian {
            JacobianPolicy::Never => false,
            JacobianPolicy::Positive => positive && report.closed_form.is_none(),
            JacobianPolicy::All => true,
        };
    let mut jacobian_nonzero = false;
    if jacobian_wanted {
        let degrees = exp_acx.exponents().expect("reflection").degrees();
        match surjectivity_jacobian_test(rs, subset, &degrees, &config.jacobian_options) {
            Ok(j) => {
                jacobian_nonzero = j.nonzero;
                report.jacobian = Some(j.to_json(false));
            }
            // no invariant of `W` in this degree
            Err(InvariantError::NoInvariant(d)) => {
                report.jacobian = Some(serde_json::json!({
                    "degrees": degrees,
                    "nonzero": false,
                    "missing_degree": d,
                }));
            }
            Err(e) => return Err(e.into()),
        }
    }

    report.evidence = Some(if !exp_acx.is_full_rank_reflection() && !endpoint {
        let qa = quotient_action(rs, pc, config.orbit_cap, config.group_cap)?;
        if qa.is_enumerated() {
            report.refutation = Some(refute_surjectivity(rs, &qa, config.refutation_bound)?);
        }
        Evidence::DimensionRefutation
    } else if report.closed_form_agrees == Some(true) {
        Evidence::ClosedForm
    } else if positive && jacobian_nonzero && report.closed_form.is_none() {
        Evidence::Jacobian
    } else {
        Evidence::ExponentComputation
    });
    Ok(report)
}

fn fill_exponents(
    rs: &RootSystem,
    pc: &ParabolicClass,
    config: &ClassifyConfig,
    report: &mut CriterionReport,
) -> Result<(), ClassifyError> {
    let r = rs.rank();
    let subset = &pc.representative.subset;
    if subset.is_empty() {
        report.exp_ax = Some(report.exp_a.clone());
        report.exp_acx = Some(QuotientExponents::Reflection(report.exp_a.clone()));
        report.c_reflection_order = Some(report.c_order);
        return Ok(());
    }
    if subset.len() == r {
        report.exp_ax = Some(ExponentMultiset::default());
        report.exp_acx = Some(QuotientExponents::Reflection(ExponentMultiset::default()));
        report.c_reflection_order = Some(1);
        return Ok(());
    }
    let exp_ax = free_exponents(&parabolic_restriction(rs, subset), config.poset_cap)?;
    report.exp_ax = Some(exp_ax);
    // the reflecting hyperplanes need no enumeration, so the group cap is 0
    let qa = quotient_action(rs, pc, config.orbit_cap, 0)?;
    let reflecting = free_exponents(&reflecting_arrangement(&qa), config.poset_cap)?;
    let order = reflecting.group_order();
    report.c_reflection_order = Some(order);
    report.exp_acx = Some(if order == qa.order {
        QuotientExponents::Reflection(reflecting)
    } else {
        QuotientExponents::NotReflection
    });
    Ok(())
}

/// Reports for every parabolic class of `W`, in class order, including the
/// endpoints `I = ∅` and `I = S`.
pub fn classify_all(rs: &RootSystem, config: &ClassifyConfig) -> Result<Vec<CriterionReport>, ClassifyError> {
    let classes = parabolic_subsets_up_to_conjugacy(rs, config.orbit_cap, &config.labels)?;
    classify_classes(rs, &classes, config)
}

/// As [`classify_all`] for classes already enumerated.
pub fn classify_classes(
    rs: &RootSystem,
    classes: &[ParabolicClass],
    config: &ClassifyConfig,
) -> Result<Vec<CriterionReport>, ClassifyError> {
    let exp_a = ambient_exponents(rs, classes)?;
    classes.par_iter().map(|pc| criterion_by_computation(rs, pc, &exp_a, config)).collect()
}

/// Finds the class whose label, type label or node list matches `selector`.
///
/// Node lists are comma separated and numbered from 1; `S` selects the
/// whole set and an empty string the empty set.
pub fn find_class<'a>(
    rs: &RootSystem,
    classes: &'a [ParabolicClass],
    selector: &str,
) -> Result<&'a ParabolicClass, ClassifyError> {
    let sel = selector.trim();
    let unknown = || ClassifyError::UnknownClass(selector.to_string());
    let nodes: Option<Vec<usize>> = if sel == "S" {
        Some((0..rs.rank()).collect())
    } else if sel.is_empty() || sel == "{}" {
        Some(Vec::new())
    } else {
        let inner = sel.trim_start_matches('{').trim_end_matches('}');
        inner
            .split(',')
            .map(|t| t.trim().parse::<usize>().ok().filter(|&n| n >= 1 && n <= rs.rank()).map(|n| n - 1))
            .collect()
    };
    if let Some(mut nodes) = nodes {
        nodes.sort_unstable();
        nodes.dedup();
        return classes.iter().find(|c| c.members.contains(&nodes)).ok_or_else(unknown);
    }
    if let Some(c) = classes.iter().find(|c| c.label == sel) {
        return Ok(c);
    }
    let matching: Vec<&ParabolicClass> = classes.iter().filter(|c| c.representative.type_label == sel).collect();
    match matching.as_slice() {
        [one] => Ok(one),
        _ => Err(unknown()),
    }
}

/// Verdicts of `W = W_1 × … × W_k` computed one factor at a time: the
/// class of `I` is surjective when each `I ∩ S_i` is surjective in `W_i`.
pub fn product_verdict(rs: &RootSystem, subset: &[usize], config: &ClassifyConfig) -> Result<bool, ClassifyError> {
    let components = rs.coxeter_type().components.clone();
    let mut verdict = true;
    for (c, comp) in components.into_iter().enumerate() {
        let nodes: Vec<usize> = (0..rs.rank()).filter(|&s| rs.component_of(s) == c).collect();
        let local: Vec<usize> = nodes.iter().enumerate().filter(|(_, s)| subset.contains(s)).map(|(i, _)| i).collect();
        let factor = RootSystem::build(&CoxeterType::irreducible(comp)?)?;
        let classes = parabolic_subsets_up_to_conjugacy(&factor, config.orbit_cap, &config.labels)?;
        let pc = classes
            .iter()
            .find(|pc| pc.members.contains(&local))
            .ok_or_else(|| ClassifyError::UnknownClass(format!("{local:?}")))?;
        let exp_a = ambient_exponents(&factor, &classes)?;
        let report = criterion_by_computation(&factor, pc, &exp_a, config)?;
        verdict &= report.is_surjective();
    }
    Ok(verdict)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn build(s: &str) -> RootSystem {
        RootSystem::build(&s.parse().unwrap()).unwrap()
    }

    fn positives(t: &str) -> Vec<String> {
        let rs = build(t);
        classify_all(&rs, &ClassifyConfig::default())
            .unwrap()
            .into_iter()
            .filter(|r| r.is_positive_proper())
            .map(|r| r.label)
            .collect()
    }

    #[test]
    fn g2_positive_classes() {
        let mut p = positives("G2");
        p.sort();
        assert_eq!(p, ["A1", "A1~"]);
    }

    #[test]
    fn odd_dihedral_single_node() {
        let rs = build("I2(5)");
        let reports = classify_all(&rs, &ClassifyConfig::default()).unwrap();
        let r = reports.iter().find(|r| r.nodes == [1]).unwrap();
        assert_eq!(r.exp_acx, Some(QuotientExponents::Reflection(ExponentMultiset::new(vec![0]))));
        assert_eq!(r.exp_ax.as_ref().unwrap().values(), &[1]);
        assert_eq!(r.verdict, Some(Verdict::NotSurjective));
        assert_eq!(r.evidence, Some(Evidence::DimensionRefutation));
        assert_eq!(r.refutation.as_ref().and_then(|w| w.degree()), Some(1));
    }

    #[test]
    fn endpoints_are_surjective() {
        let rs = build("B3");
        let reports = classify_all(&rs, &ClassifyConfig::default()).unwrap();
        assert!(reports.first().unwrap().is_surjective());
        assert!(reports.last().unwrap().is_surjective());
        assert_eq!(reports.last().unwrap().nodes, [1, 2, 3]);
    }

    #[test]
    fn e6_a2_squared_report() {
        let rs = build("E6");
        let classes = parabolic_subsets_up_to_conjugacy(&rs, DEFAULT_ORBIT_CAP, &LabelMap::builtin()).unwrap();
        let pc = find_class(&rs, &classes, "A2^2").unwrap();
        let exp_a = ambient_exponents(&rs, &classes).unwrap();
        let r = criterion_by_computation(&rs, pc, &exp_a, &ClassifyConfig::default()).unwrap();
        assert_eq!(r.exp_ax.as_ref().unwrap().values(), &[1, 5]);
        assert_eq!(r.exp_acx.as_ref().unwrap().exponents().unwrap().values(), &[1, 5]);
        assert_eq!(r.exp_a.values(), &[1, 4, 5, 7, 8, 11]);
        assert!(r.is_surjective());
        assert_eq!(r.evidence, Some(Evidence::Jacobian));
        assert_eq!(r.jacobian.as_ref().unwrap()["nonzero"], Value::Bool(true));
    }

    #[test]
    fn reports_round_trip_through_json() {
        let rs = build("F4");
        let reports = classify_all(&rs, &ClassifyConfig::default()).unwrap();
        let text = serde_json::to_string(&reports).unwrap();
        let back: Vec<CriterionReport> = serde_json::from_str(&text).unwrap();
        assert_eq!(back, reports);
    }

    #[test]
    fn selectors() {
        let rs = build("D4");
        let classes = parabolic_subsets_up_to_conjugacy(&rs, DEFAULT_ORBIT_CAP, &LabelMap::builtin()).unwrap();
        assert_eq!(find_class(&rs, &classes, "S").unwrap().representative.subset, [0, 1, 2, 3]);
        assert_eq!(find_class(&rs, &classes, "").unwrap().representative.subset, Vec::<usize>::new());
        assert_eq!(find_class(&rs, &classes, "{2, 1}").unwrap().representative.type_label, "A2");
        assert!(find_class(&rs, &classes, "A1^2").is_err());
        assert!(find_class(&rs, &classes, "(A1^2)''").is_ok());
        assert!(find_class(&rs, &classes, "5").is_err());
    }

    #[test]
    fn reducible_verdict_is_conjunction() {
        let rs = build("A1xA2");
        let config = ClassifyConfig::default();
        let reports = classify_all(&rs, &config).unwrap();
        for r in &reports {
            assert_eq!(r.is_surjective(), product_verdict(&rs, &r.subset(), &config).unwrap(), "{:?}", r.nodes);
        }
    }
}

use serde::Serialize;

use super::{classify_all, ClassifyConfig, ClassifyError, CriterionReport, QuotientExponents};
use crate::groupcalc::ExponentMultiset;
use crate::rootsystems::RootSystem;

const E7_NOTE: &str = "normal: the restriction map is surjective with C_I of type F4; \
                       this class is absent from Broer's list";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NormalityVerdict {
    Normal,
    NotNormal,
    Undecided,
}

/// Normality of the closure of the regular decomposition class attached to
/// a Levi subalgebra of type `W_I`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NormalityEntry {
    pub class_id: usize,
    pub levi: String,
    pub nodes: Vec<usize>,
    pub verdict: NormalityVerdict,
    pub exp_ax: Option<ExponentMultiset>,
    pub exp_acx: Option<QuotientExponents>,
    pub equality: Option<bool>,
    pub containment: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NormalityReport {
    pub w_type: String,
    pub exp_a: ExponentMultiset,
    pub entries: Vec<NormalityEntry>,
}

impl NormalityReport {
    /// Normal classes with `∅ ≠ I ≠ S`.
    pub fn normal_proper(&self) -> Vec<&NormalityEntry> {
        let r = self.exp_a.len();
        self.entries
            .iter()
            .filter(|e| e.verdict == NormalityVerdict::Normal && !e.nodes.is_empty() && e.nodes.len() < r)
            .collect()
    }
}

fn entry(report: &CriterionReport) -> NormalityEntry {
    let verdict = match report.verdict {
        _ if !report.is_decided() => NormalityVerdict::Undecided,
        Some(super::Verdict::Surjective) => NormalityVerdict::Normal,
        Some(super::Verdict::NotSurjective) => NormalityVerdict::NotNormal,
        None => NormalityVerdict::Undecided,
    };
    NormalityEntry {
        class_id: report.class_id,
        levi: report.label.clone(),
        nodes: report.nodes.clone(),
        verdict,
        exp_ax: report.exp_ax.clone(),
        exp_acx: report.exp_acx.clone(),
        equality: report.equality,
        containment: report.containment,
        note: None,
    }
}

/// Normality verdict for each Levi class of the Lie algebra with Weyl
/// group `W`, read off from the restriction criterion.
pub fn normality_report(rs: &RootSystem, config: &ClassifyConfig) -> Result<NormalityReport, ClassifyError> {
    let ct = rs.coxeter_type();
    if !ct.is_crystallographic() {
        return Err(ClassifyError::NotCrystallographic(ct.label()));
    }
    let reports = classify_all(rs, config)?;
    let mut entries: Vec<NormalityEntry> = reports.iter().map(entry).collect();
    if ct.label() == "E7" {
        let e = entries
            .iter_mut()
            .find(|e| e.levi == "(A1^3)'")
            .ok_or_else(|| ClassifyError::Data("E7 has no class labelled (A1^3)'".into()))?;
        if e.verdict != NormalityVerdict::Normal {
            return Err(ClassifyError::Data(format!("E7 (A1^3)' came out {:?}", e.verdict)));
        }
        e.note = Some(E7_NOTE.into());
    }
    let exp_a = reports.first().map(|r| r.exp_a.clone()).unwrap_or_default();
    Ok(NormalityReport { w_type: ct.label(), exp_a, entries })
}

/// The partition of `n + 1` attached to `I ⊆ S` in type `A_n`: each run of
/// `k` consecutive nodes gives a part `k + 1`, and the rest are ones.
pub fn type_a_partition(n: usize, subset: &[usize]) -> Vec<usize> {
    let mut sorted = subset.to_vec();
    sorted.sort_unstable();
    let mut parts = Vec::new();
    let mut run = 0;
    let mut prev: Option<usize> = None;
    for &s in &sorted {
        if prev.is_some_and(|p| p + 1 == s) {
            run += 1;
        } else {
            if run > 0 {
                parts.push(run + 1);
            }
            run = 1;
        }
        prev = Some(s);
    }
    if run > 0 {
        parts.push(run + 1);
    }
    let covered: usize = parts.iter().sum();
    parts.extend(std::iter::repeat(1).take(n + 1 - covered));
    parts.sort_unstable_by(|a, b| b.cmp(a));
    parts
}

#[cfg(test)]
mod tests {
    use super::*;

    fn build(s: &str) -> RootSystem {
        RootSystem::build(&s.parse().unwrap()).unwrap()
    }

    #[test]
    fn partitions() {
        assert_eq!(type_a_partition(5, &[0, 2, 4]), [2, 2, 2]);
        assert_eq!(type_a_partition(5, &[]), [1; 6]);
        assert_eq!(type_a_partition(5, &[0, 1, 3, 4]), [3, 3]);
        assert_eq!(type_a_partition(4, &[1]), [2, 1, 1, 1]);
    }

    #[test]
    fn a5_levis() {
        let report = normality_report(&build("A5"), &ClassifyConfig::default()).unwrap();
        let mut normal: Vec<Vec<usize>> = report
            .normal_proper()
            .iter()
            .map(|e| type_a_partition(5, &e.nodes.iter().map(|n| n - 1).collect::<Vec<_>>()))
            .collect();
        normal.sort();
        assert_eq!(normal, vec![vec![2, 2, 2], vec![3, 3]]);
    }

    #[test]
    fn non_crystallographic_is_refused() {
        let err = normality_report(&build("H3"), &ClassifyConfig::default());
        assert!(matches!(err, Err(ClassifyError::NotCrystallographic(_))));
    }
}

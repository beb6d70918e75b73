use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{
    classical_closed_form, classical_shape, classify_classes, find_class, ClassifyConfig, ClassifyError,
    CriterionReport, DRule,
};
use crate::groupcalc::quotient_action;
use crate::rootsystems::{parabolic_subsets_up_to_conjugacy, Component, CoxeterType, Family, RootSystem};

const BUILTIN: &str = include_str!("../../data/tables.json");

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table1Row {
    pub w: String,
    pub w_i: String,
    pub condition: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table2Row {
    pub w: String,
    pub classes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table3Row {
    pub w: String,
    pub w_i: String,
    pub c_i: String,
}

/// Curated contents of the three tables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpectedTables {
    pub table1: Vec<Table1Row>,
    pub table2: Vec<Table2Row>,
    pub table3: Vec<Table3Row>,
}

impl ExpectedTables {
    pub fn builtin() -> Self {
        Self::from_json(BUILTIN).expect("bundled tables are valid")
    }

    pub fn from_json(text: &str) -> Result<Self, ClassifyError> {
        serde_json::from_str(text).map_err(|e| ClassifyError::Data(e.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableSelection {
    pub tables: Vec<u8>,
    /// Largest rank of classical `W` in the first table.
    pub max_rank: usize,
    /// Largest `m` of dihedral `I2(m)` in the first table.
    pub max_dihedral: u32,
}

impl Default for TableSelection {
    fn default() -> Self {
        TableSelection { tables: vec![1, 2, 3], max_rank: 8, max_dihedral: 12 }
    }
}

/// One disagreement between computed and expected data.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableDiff {
    pub table: u8,
    pub w: String,
    pub entry: String,
    pub expected: String,
    pub found: String,
}

/// Closed form against computation for one classical or dihedral group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Table1Group {
    pub w: String,
    pub classes: usize,
    /// Positive classes with `∅ ≠ I ≠ S`, by computation.
    pub positive: Vec<String>,
    /// Classes where the type-`D`, `j = 0` rules disagree with each other.
    pub d_rule_split: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Table1Report {
    pub rows: Vec<Table1Row>,
    pub groups: Vec<Table1Group>,
    /// Mismatches against computation under each reading of the type-`D`
    /// row.
    pub d_odd_mismatches: usize,
    pub m_odd_mismatches: usize,
    pub d_rule_used: DRule,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Table3Result {
    pub w: String,
    pub w_i: String,
    pub c_order: u128,
    pub degrees: Vec<u32>,
    pub c_i: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TablesReport {
    pub table1: Option<Table1Report>,
    pub table2: Option<Vec<Table2Row>>,
    pub table3: Option<Vec<Table3Result>>,
    pub diffs: Vec<TableDiff>,
}

impl TablesReport {
    pub fn is_clean(&self) -> bool {
        self.diffs.is_empty()
    }
}

/// Name of the irreducible reflection group with the given degrees, trying
/// crystallographic names first.
pub fn identify_reflection_type(degrees: &[u32]) -> Option<String> {
    let mut sorted = degrees.to_vec();
    sorted.sort_unstable();
    let n = sorted.len();
    if n == 0 {
        return None;
    }
    let mut candidates = vec![
        Component::new(Family::A, n),
        Component::new(Family::B, n),
        Component::new(Family::D, n),
        Component::new(Family::E, n),
        Component::new(Family::F, n),
        Component::new(Family::G, n),
        Component::new(Family::H, n),
    ];
    if n == 2 {
        candidates.push(Component::dihedral(sorted[1]));
    }
    candidates
        .into_iter()
        .filter_map(|c| CoxeterType::irreducible(c).ok())
        .find(|t| {
            let mut d = t.degrees();
            d.sort_unstable();
            d == sorted
        })
        .map(|t| t.label())
}

fn build(label: &str) -> Result<RootSystem, ClassifyError> {
    Ok(RootSystem::build(&label.parse()?)?)
}

fn classical_groups(sel: &TableSelection) -> Vec<String> {
    let mut out = Vec::new();
    for r in 1..=sel.max_rank {
        out.push(format!("A{r}"));
    }
    for r in 2..=sel.max_rank {
        out.push(format!("B{r}"));
    }
    for r in 4..=sel.max_rank {
        out.push(format!("D{r}"));
    }
    for m in 3..=sel.max_dihedral {
        out.push(format!("I2({m})"));
    }
    out
}

fn positive_labels(reports: &[CriterionReport]) -> Vec<String> {
    reports.iter().filter(|r| r.is_positive_proper()).map(|r| r.label.clone()).collect()
}

fn table1(
    sel: &TableSelection,
    config: &ClassifyConfig,
    expected: &ExpectedTables,
    diffs: &mut Vec<TableDiff>,
) -> Result<Table1Report, ClassifyError> {
    let mut report = Table1Report {
        rows: expected.table1.clone(),
        groups: Vec::new(),
        d_odd_mismatches: 0,
        m_odd_mismatches: 0,
        d_rule_used: config.d_rule,
    };
    for w in classical_groups(sel) {
        let rs = build(&w)?;
        let classes = parabolic_subsets_up_to_conjugacy(&rs, config.orbit_cap, &config.labels)?;
        let reports = classify_classes(&rs, &classes, config)?;
        let mut group = Table1Group {
            w: w.clone(),
            classes: reports.len(),
            positive: positive_labels(&reports),
            d_rule_split: Vec::new(),
        };
        for r in &reports {
            let shape = classical_shape(&rs, &r.subset())?;
            let computed = r.is_surjective();
            let d_odd = classical_closed_form(&shape, DRule::DOdd)?;
            let m_odd = classical_closed_form(&shape, DRule::MOdd)?;
            report.d_odd_mismatches += usize::from(d_odd != computed);
            report.m_odd_mismatches += usize::from(m_odd != computed);
            if d_odd != m_odd {
                group.d_rule_split.push(r.label.clone());
            }
            if !r.is_decided() || r.closed_form_agrees != Some(true) {
                diffs.push(TableDiff {
                    table: 1,
                    w: w.clone(),
                    entry: format!("{} {:?}", r.label, r.nodes),
                    expected: format!("{:?}", r.closed_form),
                    found: format!("{:?}", r.verdict),
                });
            }
        }
        report.groups.push(group);
    }
    Ok(report)
}

fn table2(
    config: &ClassifyConfig,
    expected: &ExpectedTables,
    diffs: &mut Vec<TableDiff>,
) -> Result<Vec<Table2Row>, ClassifyError> {
    let mut rows = Vec::new();
    for row in &expected.table2 {
        let rs = build(&row.w)?;
        let classes = parabolic_subsets_up_to_conjugacy(&rs, config.orbit_cap, &config.labels)?;
        let reports = classify_classes(&rs, &classes, config)?;
        let found = positive_labels(&reports);
        for r in reports.iter().filter(|r| !r.is_decided()) {
            diffs.push(TableDiff {
                table: 2,
                w: row.w.clone(),
                entry: r.label.clone(),
                expected: "decided".into(),
                found: format!("{:?}", r.status),
            });
        }
        let want: BTreeSet<&String> = row.classes.iter().collect();
        let have: BTreeSet<&String> = found.iter().collect();
        for missing in want.difference(&have) {
            diffs.push(TableDiff {
                table: 2,
                w: row.w.clone(),
                entry: missing.to_string(),
                expected: "positive".into(),
                found: "absent".into(),
            });
        }
        for extra in have.difference(&want) {
            diffs.push(TableDiff {
                table: 2,
                w: row.w.clone(),
                entry: extra.to_string(),
                expected: "absent".into(),
                found: "positive".into(),
            });
        }
        rows.push(Table2Row { w: row.w.clone(), classes: found });
    }
    Ok(rows)
}

fn table3(
    config: &ClassifyConfig,
    expected: &ExpectedTables,
    diffs: &mut Vec<TableDiff>,
) -> Result<Vec<Table3Result>, ClassifyError> {
    let mut out = Vec::new();
    for row in &expected.table3 {
        let rs = build(&row.w)?;
        let classes = parabolic_subsets_up_to_conjugacy(&rs, config.orbit_cap, &config.labels)?;
        let pc = find_class(&rs, &classes, &row.w_i)?;
        let qa = quotient_action(&rs, pc, config.orbit_cap, config.group_cap)?;
        let (degrees, c_i) = match qa.reflection_degrees() {
            Ok(e) => {
                let d = e.degrees();
                let name = identify_reflection_type(&d);
                (d, name)
            }
            Err(_) => (Vec::new(), None),
        };
        if c_i.as_deref() != Some(row.c_i.as_str()) {
            diffs.push(TableDiff {
                table: 3,
                w: row.w.clone(),
                entry: row.w_i.clone(),
                expected: row.c_i.clone(),
                found: c_i.clone().unwrap_or_else(|| format!("degrees {degrees:?}")),
            });
        }
        out.push(Table3Result { w: row.w.clone(), w_i: row.w_i.clone(), c_order: qa.order, degrees, c_i });
    }
    Ok(out)
}

/// Recomputes the selected tables and lists every disagreement with the
/// curated data.
pub fn reproduce_tables(
    selection: &TableSelection,
    config: &ClassifyConfig,
    expected: &ExpectedTables,
) -> Result<TablesReport, ClassifyError> {
    let mut diffs = Vec::new();
    let want = |t: u8| selection.tables.contains(&t);
    let table1 = if want(1) { Some(table1(selection, config, expected, &mut diffs)?) } else { None };
    let table2 = if want(2) { Some(table2(config, expected, &mut diffs)?) } else { None };
    let table3 = if want(3) { Some(table3(config, expected, &mut diffs)?) } else { None };
    Ok(TablesReport { table1, table2, table3, diffs })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identifies_types() {
        assert_eq!(identify_reflection_type(&[2, 6]).as_deref(), Some("G2"));
        assert_eq!(identify_reflection_type(&[12, 2, 8, 6]).as_deref(), Some("F4"));
        assert_eq!(identify_reflection_type(&[2, 3]).as_deref(), Some("A2"));
        assert_eq!(identify_reflection_type(&[2, 7]).as_deref(), Some("I2(7)"));
        assert_eq!(identify_reflection_type(&[2, 2]), None);
    }

    #[test]
    fn builtin_tables_have_expected_sizes() {
        let t = ExpectedTables::builtin();
        let sizes: Vec<usize> = t.table2.iter().map(|r| r.classes.len()).collect();
        assert_eq!(sizes, [3, 10, 8, 6, 2, 3, 4]);
        assert_eq!(t.table3.len(), 6);
    }

    #[test]
    fn small_first_table() {
        let sel = TableSelection { tables: vec![1], max_rank: 4, max_dihedral: 8 };
        let report = reproduce_tables(&sel, &ClassifyConfig::default(), &ExpectedTables::builtin()).unwrap();
        assert!(report.is_clean(), "{:?}", report.diffs);
        let a3 = &report.table1.as_ref().unwrap().groups[2];
        assert_eq!(a3.positive, ["A1^2"]);
    }
}

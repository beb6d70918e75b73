use std::collections::BTreeMap;

use serde::Serialize;

use super::ClassifyError;
use crate::groupcalc::ExponentMultiset;
use crate::rootsystems::{Family, RootSystem};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ClassicalFamily {
    A,
    B,
    D,
    /// Dihedral `I2(m)`, including the crystallographic bonds.
    I2(u32),
}

/// `W_I` inside a classical or dihedral `W`, in the form
/// `Π A_i^{m_i} × (tail of rank j)`.
///
/// The tail is the component through the last node for `B`/`C`, and the
/// component through both fork nodes for `D` (two fork nodes alone count as
/// `D2`, the fork with the branch node as `D3`). Type `A` has no tail and
/// uses `j = -1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassicalShape {
    pub family: ClassicalFamily,
    pub r: usize,
    /// `m_i`, keyed by `i`.
    pub m: BTreeMap<usize, usize>,
    pub j: i64,
    /// `dim X_I`.
    pub l: usize,
}

/// Which reading of the type-`D`, `j = 0` condition to apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DRule {
    /// `d` odd and `r = (d+1)m`.
    DOdd,
    /// `m` odd and `r = (d+1)m`, as printed in the summary table.
    MOdd,
}

impl ClassicalShape {
    /// `k = j + Σ (i+1) m_i`.
    pub fn k(&self) -> i64 {
        self.j + self.m.iter().map(|(&i, &c)| ((i + 1) * c) as i64).sum::<i64>()
    }

    pub fn total_m(&self) -> usize {
        self.m.values().sum()
    }

    /// `(d, m)` when all type-`A` components have the same rank `d`.
    pub fn uniform(&self) -> Option<(usize, usize)> {
        match self.m.len() {
            0 => Some((0, 0)),
            1 => self.m.iter().next().map(|(&d, &m)| (d, m)),
            _ => None,
        }
    }

    pub fn is_endpoint(&self) -> bool {
        self.l == 0 || self.l == self.r
    }
}

/// Shape of `W_I` for an irreducible classical or dihedral `W`.
pub fn classical_shape(rs: &RootSystem, subset: &[usize]) -> Result<ClassicalShape, ClassifyError> {
    let ct = rs.coxeter_type();
    if !ct.is_irreducible() {
        return Err(ClassifyError::NotClassical(ct.label()));
    }
    let comp = &ct.components[0];
    let r = comp.rank;
    let inside = |s: usize| subset.contains(&s);
    let l = r - subset.len();
    let family = match comp.family {
        Family::A => ClassicalFamily::A,
        Family::B | Family::C => ClassicalFamily::B,
        Family::D => ClassicalFamily::D,
        Family::G => ClassicalFamily::I2(6),
        Family::I => ClassicalFamily::I2(comp.bond),
        _ => return Err(ClassifyError::NotClassical(ct.label())),
    };
    let mut m: BTreeMap<usize, usize> = BTreeMap::new();
    let mut j: i64 = if family == ClassicalFamily::A { -1 } else { 0 };
    let runs = |nodes: &[usize]| -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = Vec::new();
        for &s in nodes {
            match out.last_mut() {
                Some(run) if *run.last().unwrap() + 1 == s => run.push(s),
                _ => out.push(vec![s]),
            }
        }
        out
    };
    let mut sorted = subset.to_vec();
    sorted.sort_unstable();
    match family {
        ClassicalFamily::A | ClassicalFamily::I2(_) => {
            for run in runs(&sorted) {
                *m.entry(run.len()).or_default() += 1;
            }
        }
        ClassicalFamily::B => {
            for run in runs(&sorted) {
                if run.contains(&(r - 1)) {
                    j = run.len() as i64;
                } else {
                    *m.entry(run.len()).or_default() += 1;
                }
            }
        }
        ClassicalFamily::D => {
            let (f1, f2) = (r - 2, r - 1);
            let chain: Vec<usize> = sorted.iter().copied().filter(|&s| s < f1).collect();
            let mut chain_runs = runs(&chain);
            if inside(f1) && inside(f2) {
                // the tail absorbs the run ending at the branch node
                let mut tail = 2;
                if let Some(last) = chain_runs.last() {
                    if *last.last().unwrap() == r - 3 {
                        tail += last.len();
                        chain_runs.pop();
                    }
                }
                j = tail as i64;
            } else if inside(f1) || inside(f2) {
                // a single fork node extends the run through the branch node
                match chain_runs.last_mut() {
                    Some(last) if *last.last().unwrap() == r - 3 => last.push(f1),
                    _ => chain_runs.push(vec![f1]),
                }
            }
            for run in chain_runs {
                *m.entry(run.len()).or_default() += 1;
            }
        }
    }
    Ok(ClassicalShape { family, r, m, j, l })
}

/// Whether `exp(C_I) = exp(𝒜^{X_I}) ⊆ exp(𝒜)` by the classical rules.
pub fn classical_closed_form(shape: &ClassicalShape, rule: DRule) -> Result<bool, ClassifyError> {
    if shape.is_endpoint() {
        return Ok(true);
    }
    let r = shape.r;
    Ok(match shape.family {
        ClassicalFamily::A => match shape.uniform() {
            Some((d, m)) if m > 0 => r + 1 == (d + 1) * m,
            _ => false,
        },
        ClassicalFamily::B => match shape.uniform() {
            Some((_, 0)) => true,
            Some((d, m)) => r as i64 == shape.j + ((d + 1) * m) as i64,
            None => false,
        },
        ClassicalFamily::D => match (shape.uniform(), shape.j) {
            (None, _) => false,
            (Some((_, 0)), j) => j >= 2,
            (Some((d, m)), j) if j >= 2 => r as i64 == j + ((d + 1) * m) as i64,
            (Some((d, m)), 0) => {
                let parity = match rule {
                    DRule::DOdd => d % 2 == 1,
                    DRule::MOdd => m % 2 == 1,
                };
                parity && r == (d + 1) * m
            }
            (Some(_), j) => return Err(ClassifyError::MalformedShape(format!("type D tail of rank {j}"))),
        },
        ClassicalFamily::I2(bond) => {
            if shape.total_m() != 1 {
                return Err(ClassifyError::MalformedShape("dihedral shape with |I| != 1".into()));
            }
            bond % 2 == 0
        }
    })
}

/// Exponents of `𝒜^{X_I}` by the Orlik–Solomon lists.
pub fn orlik_solomon_exponents(shape: &ClassicalShape) -> ExponentMultiset {
    let l = shape.l as u32;
    let odd = |n: u32| (1..=n).map(|i| 2 * i - 1).collect::<Vec<u32>>();
    let values = match shape.family {
        ClassicalFamily::A => (1..=l).collect(),
        ClassicalFamily::B => odd(l),
        ClassicalFamily::D if shape.j != 0 => odd(l),
        ClassicalFamily::D => {
            if l == 0 {
                Vec::new()
            } else {
                let mut v = odd(l - 1);
                v.push(l - 1 + shape.total_m() as u32);
                v
            }
        }
        ClassicalFamily::I2(bond) => match l {
            2 => vec![1, bond - 1],
            1 => vec![1],
            _ => Vec::new(),
        },
    };
    ExponentMultiset::new(values)
}

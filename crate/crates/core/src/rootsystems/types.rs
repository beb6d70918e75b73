use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::RootSystemError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
    H,
    I,
}

impl Family {
    fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
            Family::H => 'H',
            Family::I => 'I',
        }
    }
}

/// One irreducible factor.
///
/// `bond` is only meaningful for `I2(m)`. `short` marks a type-A factor
/// supported on short roots (printed with a trailing `~`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Component {
    pub family: Family,
    pub rank: usize,
    pub bond: u32,
    pub short: bool,
}

impl Component {
    pub fn new(family: Family, rank: usize) -> Self {
        let bond = match (family, rank) {
            (Family::G, 2) => 6,
            (Family::H, _) => 5,
            _ => 0,
        };
        Component { family, rank, bond, short: false }
    }

    pub fn dihedral(m: u32) -> Self {
        Component { family: Family::I, rank: 2, bond: m, short: false }
    }

    pub fn short_a(rank: usize) -> Self {
        Component { family: Family::A, rank, bond: 0, short: true }
    }

    pub fn is_crystallographic(&self) -> bool {
        match self.family {
            Family::H => false,
            Family::I => matches!(self.bond, 3 | 4 | 6),
            _ => true,
        }
    }

    /// Fundamental degrees, ascending.
    pub fn degrees(&self) -> Vec<u32> {
        let n = self.rank as u32;
        let mut d: Vec<u32> = match self.family {
            Family::A => (2..=n + 1).collect(),
            Family::B | Family::C => (1..=n).map(|i| 2 * i).collect(),
            Family::D => (1..n).map(|i| 2 * i).chain(std::iter::once(n)).collect(),
            Family::E => match n {
                6 => vec![2, 5, 6, 8, 9, 12],
                7 => vec![2, 6, 8, 10, 12, 14, 18],
                _ => vec![2, 8, 12, 14, 18, 20, 24, 30],
            },
            Family::F => vec![2, 6, 8, 12],
            Family::G => vec![2, 6],
            Family::H => match n {
                3 => vec![2, 6, 10],
                _ => vec![2, 12, 20, 30],
            },
            Family::I => vec![2, self.bond],
        };
        d.sort_unstable();
        d
    }

    pub fn exponents(&self) -> Vec<u32> {
        self.degrees().iter().map(|d| d - 1).collect()
    }

    pub fn coxeter_number(&self) -> u32 {
        *self.degrees().last().unwrap()
    }

    pub fn group_order(&self) -> u128 {
        self.degrees().iter().map(|&d| d as u128).product()
    }

    pub fn num_positive_roots(&self) -> usize {
        self.exponents().iter().map(|&e| e as usize).sum()
    }

    fn validate(&self) -> Result<(), RootSystemError> {
        let ok = match self.family {
            Family::A => self.rank >= 1,
            Family::B | Family::C => self.rank >= 2,
            Family::D => self.rank >= 4,
            Family::E => (6..=8).contains(&self.rank),
            Family::F => self.rank == 4,
            Family::G => self.rank == 2,
            Family::H => (3..=4).contains(&self.rank),
            Family::I => self.rank == 2 && self.bond >= 3 && self.bond <= crate::scalars::MAX_BOND,
        };
        if ok {
            Ok(())
        } else {
            Err(RootSystemError::UnsupportedType(self.to_string()))
        }
    }
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::I => write!(f, "I2({})", self.bond)?,
            fam => write!(f, "{}{}", fam.letter(), self.rank)?,
        }
        if self.short {
            write!(f, "~")?;
        }
        Ok(())
    }
}

/// Finite Coxeter type as a product of irreducible components, in the order
/// they occupy the node numbering.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct CoxeterType {
    pub components: Vec<Component>,
}

impl CoxeterType {
    pub fn empty() -> Self {
        CoxeterType { components: Vec::new() }
    }

    pub fn irreducible(c: Component) -> Result<Self, RootSystemError> {
        c.validate()?;
        Ok(CoxeterType { components: vec![c] })
    }

    pub fn from_components(components: Vec<Component>) -> Result<Self, RootSystemError> {
        for c in &components {
            c.validate()?;
        }
        Ok(CoxeterType { components })
    }

    pub fn rank(&self) -> usize {
        self.components.iter().map(|c| c.rank).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn is_irreducible(&self) -> bool {
        self.components.len() == 1
    }

    pub fn is_crystallographic(&self) -> bool {
        self.components.iter().all(Component::is_crystallographic)
    }

    pub fn degrees(&self) -> Vec<u32> {
        let mut d: Vec<u32> = self.components.iter().flat_map(|c| c.degrees()).collect();
        d.sort_unstable();
        d
    }

    pub fn exponents(&self) -> Vec<u32> {
        self.degrees().iter().map(|d| d - 1).collect()
    }

    pub fn group_order(&self) -> u128 {
        self.components.iter().map(|c| c.group_order()).product()
    }

    pub fn num_positive_roots(&self) -> usize {
        self.components.iter().map(|c| c.num_positive_roots()).sum()
    }

    /// Components in label order: family, then rank, then bond, short last.
    pub fn sorted_components(&self) -> Vec<Component> {
        let mut c = self.components.clone();
        c.sort_by(|a, b| (a.family, a.rank, a.bond, a.short).cmp(&(b.family, b.rank, b.bond, b.short)));
        c
    }

    /// Compact label with repeated factors collapsed, e.g. `A1A2^2`,
    /// `A1~A2`, `A1I2(5)`. The empty type prints as `1`.
    pub fn label(&self) -> String {
        if self.components.is_empty() {
            return "1".to_string();
        }
        let sorted = self.sorted_components();
        let mut out = String::new();
        let mut i = 0;
        while i < sorted.len() {
            let mut j = i;
            while j < sorted.len() && sorted[j] == sorted[i] {
                j += 1;
            }
            out.push_str(&sorted[i].to_string());
            if j - i > 1 {
                out.push_str(&format!("^{}", j - i));
            }
            i = j;
        }
        out
    }

    /// Same multiset of components, ignoring order.
    pub fn same_multiset(&self, other: &CoxeterType) -> bool {
        self.sorted_components() == other.sorted_components()
    }
}

impl fmt::Display for CoxeterType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.components.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join("x"))
    }
}

impl FromStr for CoxeterType {
    type Err = RootSystemError;

    /// Accepts `E7`, `I2(7)`, `A3xB2`, `A1^3`, `A1A2~`, and the degenerate
    /// conventions `A0`, `A-1`, `B0`, `B1`, `C1`, `D1`, `D2`, `D3`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || RootSystemError::Parse(s.to_string());
        let chars: Vec<char> = s.chars().collect();
        let mut i = 0;
        let mut out = Vec::new();
        let trimmed = s.trim();
        if trimmed == "1" || trimmed.is_empty() {
            return Ok(CoxeterType::empty());
        }
        while i < chars.len() {
            let c = chars[i];
            if c.is_whitespace() || c == 'x' || c == '×' || c == '*' || c == '+' {
                i += 1;
                continue;
            }
            let family = match c {
                'A' => Family::A,
                'B' => Family::B,
                'C' => Family::C,
                'D' => Family::D,
                'E' => Family::E,
                'F' => Family::F,
                'G' => Family::G,
                'H' => Family::H,
                'I' => Family::I,
                _ => return Err(bad()),
            };
            i += 1;
            let neg = i < chars.len() && chars[i] == '-';
            if neg {
                i += 1;
            }
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            if start == i {
                return Err(bad());
            }
            let rank: i64 = chars[start..i].iter().collect::<String>().parse().map_err(|_| bad())?;
            let rank = if neg { -rank } else { rank };
            let mut bond = 0u32;
            if family == Family::I {
                if rank != 2 || i >= chars.len() || chars[i] != '(' {
                    return Err(bad());
                }
                let close = chars[i..].iter().position(|&c| c == ')').ok_or_else(bad)? + i;
                bond = chars[i + 1..close].iter().collect::<String>().parse().map_err(|_| bad())?;
                i = close + 1;
            }
            let mut short = false;
            if i < chars.len() && chars[i] == '~' {
                short = true;
                i += 1;
            }
            let mut power = 1usize;
            if i < chars.len() && chars[i] == '^' {
                i += 1;
                let ps = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                power = chars[ps..i].iter().collect::<String>().parse().map_err(|_| bad())?;
            }
            let comps = normalize_component(family, rank, bond, short)?;
            for _ in 0..power {
                out.extend(comps.iter().cloned());
            }
        }
        CoxeterType::from_components(out)
    }
}

/// Applies the low-rank conventions: `A_{-1}`, `A_0`, `B_0`, `D_1` are
/// trivial; `B_1` is `A_1` on a short root; `D_2` is `A_1 × A_1`; `D_3` is `A_3`.
fn normalize_component(family: Family, rank: i64, bond: u32, short: bool) -> Result<Vec<Component>, RootSystemError> {
    let comps = match (family, rank) {
        (Family::A, -1 | 0) | (Family::B | Family::C, 0) | (Family::D, 0 | 1) => vec![],
        (Family::B, 1) => vec![Component::short_a(1)],
        (Family::C, 1) => vec![Component::new(Family::A, 1)],
        (Family::D, 2) => vec![Component::new(Family::A, 1), Component::new(Family::A, 1)],
        (Family::D, 3) => vec![Component::new(Family::A, 3)],
        (Family::I, 2) => vec![Component::dihedral(bond)],
        (_, r) if r >= 1 => {
            let mut c = Component::new(family, r as usize);
            c.short = short && family == Family::A;
            vec![c]
        }
        _ => return Err(RootSystemError::UnsupportedType(format!("{family:?}{rank}"))),
    };
    Ok(comps)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_round_trip() {
        for s in ["E7", "I2(7)", "A3xB2", "F4", "H4", "D5"] {
            let t: CoxeterType = s.parse().unwrap();
            assert_eq!(t.to_string(), s);
            let again: CoxeterType = t.to_string().parse().unwrap();
            assert_eq!(again, t);
        }
    }

    #[test]
    fn low_rank_conventions() {
        assert!("A0".parse::<CoxeterType>().unwrap().is_empty());
        assert!("A-1".parse::<CoxeterType>().unwrap().is_empty());
        assert!("B0".parse::<CoxeterType>().unwrap().is_empty());
        assert!("D1".parse::<CoxeterType>().unwrap().is_empty());
        assert_eq!("B1".parse::<CoxeterType>().unwrap().label(), "A1~");
        assert_eq!("D2".parse::<CoxeterType>().unwrap().label(), "A1^2");
        assert_eq!("D3".parse::<CoxeterType>().unwrap().label(), "A3");
    }

    #[test]
    fn labels() {
        let t: CoxeterType = "A2xA1xA2".parse().unwrap();
        assert_eq!(t.label(), "A1A2^2");
        let t: CoxeterType = "A2xA1~".parse().unwrap();
        assert_eq!(t.label(), "A1~A2");
        let t: CoxeterType = "I2(5)xA1".parse().unwrap();
        assert_eq!(t.label(), "A1I2(5)");
        assert_eq!("A1^3".parse::<CoxeterType>().unwrap().rank(), 3);
    }

    #[test]
    fn rejects_bad_ranks() {
        assert!("E9".parse::<CoxeterType>().is_err());
        assert!("I2(2)".parse::<CoxeterType>().is_err());
        assert!("F3".parse::<CoxeterType>().is_err());
        assert!("Q4".parse::<CoxeterType>().is_err());
    }

    #[test]
    fn degree_tables_match_root_counts() {
        for s in ["A5", "B4", "D6", "E6", "E7", "E8", "F4", "G2", "H3", "H4", "I2(9)"] {
            let t: CoxeterType = s.parse().unwrap();
            let c = &t.components[0];
            assert_eq!(2 * c.num_positive_roots(), c.rank * c.coxeter_number() as usize, "{s}");
        }
        let e8: CoxeterType = "E8".parse().unwrap();
        assert_eq!(e8.group_order(), 696_729_600);
    }
}

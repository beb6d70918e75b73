use std::fmt;

use serde::{Deserialize, Serialize};

/// A sorted multiset of nonnegative integers (exponents or degrees).
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ExponentMultiset(Vec<u32>);

impl ExponentMultiset {
    pub fn new(mut values: Vec<u32>) -> Self {
        values.sort_unstable();
        ExponentMultiset(values)
    }

    /// Exponents `d - 1` of a degree list.
    pub fn from_degrees(degrees: &[u32]) -> Self {
        Self::new(degrees.iter().map(|d| d - 1).collect())
    }

    pub fn values(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degrees(&self) -> Vec<u32> {
        self.0.iter().map(|e| e + 1).collect()
    }

    pub fn sum(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    /// Containment counting multiplicity.
    pub fn is_submultiset_of(&self, other: &ExponentMultiset) -> bool {
        let mut j = 0;
        for &x in &self.0 {
            while j < other.0.len() && other.0[j] < x {
                j += 1;
            }
            if j == other.0.len() || other.0[j] != x {
                return false;
            }
            j += 1;
        }
        true
    }

    /// Number of zero entries.
    pub fn zeros(&self) -> usize {
        self.0.iter().take_while(|&&e| e == 0).count()
    }

    /// Same multiset with zeros dropped.
    pub fn nonzero(&self) -> ExponentMultiset {
        ExponentMultiset(self.0.iter().copied().filter(|&e| e != 0).collect())
    }

    /// `Π (e + 1)` over nonzero entries: the order of a reflection group
    /// with these exponents.
    pub fn group_order(&self) -> u128 {
        self.0.iter().filter(|&&e| e != 0).map(|&e| e as u128 + 1).product()
    }

    pub fn union(&self, other: &ExponentMultiset) -> ExponentMultiset {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        ExponentMultiset::new(v)
    }
}

impl fmt::Display for ExponentMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|e| e.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiset_containment() {
        let e7 = ExponentMultiset::new(vec![1, 5, 7, 9, 11, 13, 17]);
        assert!(ExponentMultiset::new(vec![5, 1]).is_submultiset_of(&e7));
        assert!(!ExponentMultiset::new(vec![1, 1]).is_submultiset_of(&e7));
        assert!(!ExponentMultiset::new(vec![1, 2]).is_submultiset_of(&e7));
        assert!(ExponentMultiset::default().is_submultiset_of(&e7));
    }

    #[test]
    fn orders_and_display() {
        let f4 = ExponentMultiset::from_degrees(&[2, 6, 8, 12]);
        assert_eq!(f4.group_order(), 1152);
        assert_eq!(f4.to_string(), "{1,5,7,11}");
        assert_eq!(ExponentMultiset::new(vec![0, 0, 3]).zeros(), 2);
    }
}

use std::fmt;

use crate::rootsystems::RootSystem;

/// Number of positive roots a [`RootSet`] can address.
pub const MAX_LINES: usize = 256;

/// A set of root lines (a root together with its negative), stored as a
/// bitset over positive-root indices. The bit pattern is a canonical key.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootSet([u64; 4]);

impl RootSet {
    pub fn empty() -> Self {
        RootSet([0; 4])
    }

    pub fn from_lines(lines: impl IntoIterator<Item = usize>) -> Self {
        let mut s = RootSet::empty();
        for l in lines {
            s.insert(l);
        }
        s
    }

    pub fn insert(&mut self, line: usize) {
        self.0[line >> 6] |= 1 << (line & 63);
    }

    pub fn remove(&mut self, line: usize) {
        self.0[line >> 6] &= !(1 << (line & 63));
    }

    pub fn contains(&self, line: usize) -> bool {
        self.0[line >> 6] >> (line & 63) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    pub fn union(&self, other: &RootSet) -> RootSet {
        let mut out = *self;
        for (a, b) in out.0.iter_mut().zip(other.0) {
            *a |= b;
        }
        out
    }

    pub fn intersection(&self, other: &RootSet) -> RootSet {
        let mut out = *self;
        for (a, b) in out.0.iter_mut().zip(other.0) {
            *a &= b;
        }
        out
    }

    pub fn is_subset(&self, other: &RootSet) -> bool {
        self.0.iter().zip(other.0).all(|(a, b)| a & !b == 0)
    }

    /// Smallest member.
    pub fn first(&self) -> Option<usize> {
        self.0.iter().enumerate().find(|(_, &w)| w != 0).map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(i * 64 + b)
                }
            })
        })
    }

    /// Image of the set of lines under a permutation of the full root list.
    pub fn permute(&self, perm: &[u32], num_positive: usize) -> RootSet {
        let mut out = RootSet::empty();
        for l in self.iter() {
            out.insert(perm[l] as usize % num_positive);
        }
        out
    }
}

impl fmt::Debug for RootSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Lines of the parabolic subsystem `Φ_I`.
pub fn parabolic_lines(rs: &RootSystem, subset: &[usize]) -> RootSet {
    RootSet::from_lines(rs.subsystem_positive(subset))
}

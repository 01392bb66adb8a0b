use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest carrier count a [`Subset`] can address.
pub const MAX_CARRIERS: usize = 32;

/// A set of carrier qudits stored as a bitmask over 0-based indices.
///
/// Displayed and serialized with 1-based player labels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Subset(u32);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn from_mask(mask: u32) -> Self {
        Subset(mask)
    }

    pub fn full(n: usize) -> Self {
        Subset(if n >= 32 { u32::MAX } else { (1u32 << n) - 1 })
    }

    /// From 0-based indices, checked against `n`.
    pub fn from_indices(indices: &[usize], n: usize) -> Result<Self> {
        let mut mask = 0u32;
        for &i in indices {
            if i >= n {
                return Err(Error::input(format!("carrier index {} out of range for n = {n}", i + 1)));
            }
            mask |= 1 << i;
        }
        Ok(Subset(mask))
    }

    /// From 1-based player labels, checked against `n`.
    pub fn from_players(players: &[usize], n: usize) -> Result<Self> {
        let mut idx = Vec::with_capacity(players.len());
        for &p in players {
            if p == 0 {
                return Err(Error::input("players are numbered from 1"));
            }
            idx.push(p - 1);
        }
        Self::from_indices(&idx, n)
    }

    /// Parses `"1,3,4"` (1-based). An empty string is the empty set.
    pub fn parse(s: &str, n: usize) -> Result<Self> {
        let s = s.trim().trim_start_matches('{').trim_end_matches('}');
        let mut players = Vec::new();
        for tok in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            players.push(tok.parse::<usize>().map_err(|_| Error::input(format!("bad player label {tok:?}")))?);
        }
        Self::from_players(&players, n)
    }

    pub fn mask(self) -> u32 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, index: usize) -> bool {
        index < 32 && self.0 >> index & 1 == 1
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn complement(self, n: usize) -> Subset {
        Subset(!self.0 & Subset::full(n).0)
    }

    pub fn with(self, index: usize) -> Subset {
        Subset(self.0 | 1 << index)
    }

    /// 0-based indices in increasing order.
    pub fn indices(self) -> Vec<usize> {
        (0..32).filter(|&i| self.contains(i)).collect()
    }

    /// 1-based labels in increasing order.
    pub fn players(self) -> Vec<usize> {
        self.indices().into_iter().map(|i| i + 1).collect()
    }

    /// Ordering key: by size, then lexicographically by sorted labels.
    pub fn report_key(self) -> (usize, Vec<usize>) {
        (self.len(), self.indices())
    }
}

/// All subsets of `{0..n}` in report order (size, then lexicographic).
pub fn all_subsets(n: usize) -> Vec<Subset> {
    assert!(n < 32, "subset enumeration supports fewer than 32 carriers");
    let mut v: Vec<Subset> = (0..1u32 << n).map(Subset).collect();
    v.sort_by_key(|s| s.report_key());
    v
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = self.players().iter().map(usize::to_string).collect();
        write!(f, "{{{}}}", labels.join(","))
    }
}

impl Serialize for Subset {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        self.players().serialize(ser)
    }
}

impl<'de> Deserialize<'de> for Subset {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let players = Vec::<usize>::deserialize(de)?;
        Subset::from_players(&players, MAX_CARRIERS).map_err(serde::de::Error::custom)
    }
}

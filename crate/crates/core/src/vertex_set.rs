use serde::{Serialize, Serializer};

use crate::error::{input, Result};

/// Sorted, duplicate-free vertex ids over a universe `0..universe`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VertexSet {
    universe: usize,
    ids: Vec<usize>,
}

impl VertexSet {
    /// Sorts and deduplicates `ids`; any id outside the universe is an error.
    pub fn new(universe: usize, ids: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut ids: Vec<usize> = ids.into_iter().collect();
        ids.sort_unstable();
        ids.dedup();
        if let Some(&last) = ids.last() {
            if last >= universe {
                return input(format!("vertex {last} out of range 0..{universe}"));
            }
        }
        Ok(VertexSet { universe, ids })
    }

    pub fn empty(universe: usize) -> Self {
        VertexSet { universe, ids: Vec::new() }
    }

    pub fn range(universe: usize, ids: std::ops::Range<usize>) -> Self {
        assert!(ids.end <= universe);
        VertexSet { universe, ids: ids.collect() }
    }

    pub(crate) fn from_sorted(universe: usize, ids: Vec<usize>) -> Self {
        debug_assert!(ids.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(ids.last().is_none_or(|&v| v < universe));
        VertexSet { universe, ids }
    }

    pub(crate) fn from_flags(flags: &[bool]) -> Self {
        let ids = flags.iter().enumerate().filter(|(_, &f)| f).map(|(i, _)| i).collect();
        VertexSet { universe: flags.len(), ids }
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.ids.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.ids.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.ids
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.ids.iter().all(|&v| other.contains(v))
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        let ids = self.ids.iter().copied().filter(|&v| !other.contains(v)).collect();
        VertexSet { universe: self.universe, ids }
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let mut ids = self.ids.clone();
        ids.extend_from_slice(&other.ids);
        ids.sort_unstable();
        ids.dedup();
        VertexSet { universe: self.universe.max(other.universe), ids }
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        let ids = self.ids.iter().copied().filter(|&v| other.contains(v)).collect();
        VertexSet { universe: self.universe, ids }
    }

    pub(crate) fn flags(&self) -> Vec<bool> {
        let mut f = vec![false; self.universe];
        for &v in &self.ids {
            f[v] = true;
        }
        f
    }
}

impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.ids.serialize(serializer)
    }
}

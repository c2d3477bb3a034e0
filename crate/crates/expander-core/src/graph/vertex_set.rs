use serde::{Deserialize, Serialize};
use std::fmt;

/// Which side of a bipartite graph a vertex set lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::Left => write!(f, "left"),
            Side::Right => write!(f, "right"),
        }
    }
}

/// A set of vertices on one side of a graph, stored as strictly increasing
/// indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexSet {
    side: Side,
    indices: Vec<usize>,
}

impl VertexSet {
    /// Builds a set from arbitrary indices; sorts and removes duplicates.
    pub fn new(side: Side, mut indices: Vec<usize>) -> Self {
        indices.sort_unstable();
        indices.dedup();
        VertexSet { side, indices }
    }

    pub fn empty(side: Side) -> Self {
        VertexSet {
            side,
            indices: Vec::new(),
        }
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn contains(&self, v: usize) -> bool {
        self.indices.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.indices.iter().copied()
    }

    /// Largest index, if any; used for range validation.
    pub fn max_index(&self) -> Option<usize> {
        self.indices.last().copied()
    }

    /// Membership mask over `0..n`.
    pub fn mask(&self, n: usize) -> Vec<bool> {
        let mut m = vec![false; n];
        for &v in &self.indices {
            if v < n {
                m[v] = true;
            }
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sorts_and_dedups() {
        let s = VertexSet::new(Side::Left, vec![4, 1, 4, 0]);
        assert_eq!(s.indices(), &[0, 1, 4]);
        assert!(s.contains(4));
        assert!(!s.contains(2));
    }
}

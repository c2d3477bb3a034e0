use crate::error::{Error, Result};
use crate::graph::VertexSet;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;

/// A symmetric nonnegative-integer-weighted graph on one vertex set.
///
/// Off-diagonal weights are stored once under the key `(u, v)` with `u < v`;
/// the diagonal is implicitly zero. This is the representation of nonlazy
/// squares, where `weight(u, v)` counts length-2 paths between distinct
/// vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightedGraph {
    vertex_count: usize,
    entries: BTreeMap<(u32, u32), u64>,
}

impl WeightedGraph {
    pub fn new(vertex_count: usize) -> Result<Self> {
        if vertex_count == 0 {
            return Err(Error::InvalidGraph("weighted graph needs vertices".into()));
        }
        Ok(WeightedGraph {
            vertex_count,
            entries: BTreeMap::new(),
        })
    }

    pub fn from_entries<I>(vertex_count: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, u64)>,
    {
        let mut g = Self::new(vertex_count)?;
        for (u, v, w) in entries {
            g.add_weight(u, v, w)?;
        }
        Ok(g)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// Adds `w` to the weight of the undirected pair `{u, v}`.
    pub fn add_weight(&mut self, u: usize, v: usize, w: u64) -> Result<()> {
        if u >= self.vertex_count || v >= self.vertex_count {
            return Err(Error::InvalidGraph(format!(
                "vertex index {} out of range (count {})",
                u.max(v),
                self.vertex_count
            )));
        }
        if u == v {
            return Err(Error::InvalidGraph(format!(
                "diagonal entry ({u},{u}) is not allowed; the diagonal is implicitly zero"
            )));
        }
        if w == 0 {
            return Ok(());
        }
        let key = (u.min(v) as u32, u.max(v) as u32);
        *self.entries.entry(key).or_insert(0) += w;
        Ok(())
    }

    pub fn weight(&self, u: usize, v: usize) -> u64 {
        if u == v {
            return 0;
        }
        let key = (u.min(v) as u32, u.max(v) as u32);
        self.entries.get(&key).copied().unwrap_or(0)
    }

    /// Stored entries `(u, v, w)` with `u < v` and `w > 0`, in key order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, u64)> + '_ {
        self.entries
            .iter()
            .map(|(&(u, v), &w)| (u as usize, v as usize, w))
    }

    pub fn entry_count(&self) -> usize {
        self.entries.len()
    }

    /// Total incident weight of each vertex.
    pub fn weight_degrees(&self) -> Vec<u64> {
        let mut degs = vec![0u64; self.vertex_count];
        for (&(u, v), &w) in &self.entries {
            degs[u as usize] += w;
            degs[v as usize] += w;
        }
        degs
    }

    /// Uniform total-weight degree, or an error naming the first violation.
    pub fn require_regular(&self) -> Result<u64> {
        let degs = self.weight_degrees();
        let d = degs[0];
        for (v, &dv) in degs.iter().enumerate() {
            if dv != d {
                return Err(Error::NotRegular {
                    vertex: v,
                    found: dv,
                    expected: d,
                });
            }
        }
        Ok(d)
    }

    /// Ordered-pair weight sum `w(S, T) = Σ_{(u,v) ∈ S×T} w(u, v)`.
    ///
    /// With `s == t` every internal undirected edge is counted twice.
    pub fn edge_weight_between(&self, s: &VertexSet, t: &VertexSet) -> Result<u64> {
        for set in [s, t] {
            if let Some(max) = set.max_index() {
                if max >= self.vertex_count {
                    return Err(Error::InvalidGraph(format!(
                        "vertex index {} out of range (count {})",
                        max, self.vertex_count
                    )));
                }
            }
        }
        let in_s = s.mask(self.vertex_count);
        let in_t = t.mask(self.vertex_count);
        let mut total = 0u64;
        for (&(u, v), &w) in &self.entries {
            let (u, v) = (u as usize, v as usize);
            if in_s[u] && in_t[v] {
                total += w;
            }
            if in_s[v] && in_t[u] {
                total += w;
            }
        }
        Ok(total)
    }

    /// Views a bipartite graph as a weighted graph on `L ⊔ R`, with right
    /// vertices offset by `|L|`. Parallel edges become weights.
    pub fn from_bipartite(g: &crate::graph::BipartiteGraph) -> Self {
        let offset = g.left_count();
        let mut out = Self::new(offset + g.right_count()).expect("bipartite graphs are nonempty");
        for (w, v) in g.edges() {
            out.add_weight(w, offset + v, 1).expect("indices in range");
        }
        out
    }

    /// Complete graph on `n` vertices with every weight equal to `w`.
    pub fn complete(n: usize, w: u64) -> Self {
        let mut g = Self::new(n).expect("n > 0");
        for u in 0..n {
            for v in (u + 1)..n {
                g.add_weight(u, v, w).unwrap();
            }
        }
        g
    }

    /// SHA-256 of the canonical serialization.
    pub fn content_hash(&self) -> String {
        let mut hasher = Sha256::new();
        hasher.update(crate::graph::io::weighted_to_string(self).as_bytes());
        let digest = hasher.finalize();
        let mut s = String::with_capacity(64);
        for b in digest {
            use std::fmt::Write;
            let _ = write!(s, "{b:02x}");
        }
        s
    }
}

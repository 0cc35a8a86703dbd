//! Directed multigraphs with arc multiplicities.
//!
//! Vertices are dense indices `0..vertex_count`. Arcs are stored as a sorted
//! map from `(tail, head)` to a strictly positive multiplicity, so iteration
//! order is always `(u, v)`-lexicographic.

use std::collections::BTreeMap;
use std::ops::Bound;

use thiserror::Error;

/// Dense vertex index.
pub type Vertex = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph with {vertex_count} vertices")]
    VertexOutOfRange { vertex: Vertex, vertex_count: usize },
    #[error("arc multiplicity must be at least 1")]
    ZeroMultiplicity,
    #[error("arc multiplicity overflows u64")]
    MultiplicityOverflow,
    #[error("relabeling is not a permutation of 0..{0}")]
    InvalidPermutation(usize),
}

/// A directed multigraph. Loops and parallel arcs are allowed.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MultiDigraph {
    vertex_count: usize,
    arcs: BTreeMap<(Vertex, Vertex), u64>,
    out_degree: Vec<u64>,
    in_degree: Vec<u64>,
    total_arcs: u64,
}

impl MultiDigraph {
    /// Graph with `vertex_count` vertices and no arcs.
    pub fn new(vertex_count: usize) -> Self {
        MultiDigraph {
            vertex_count,
            arcs: BTreeMap::new(),
            out_degree: vec![0; vertex_count],
            in_degree: vec![0; vertex_count],
            total_arcs: 0,
        }
    }

    /// Builds a graph from `(u, v, multiplicity)` triples. Repeated pairs accumulate.
    pub fn from_arcs<I>(vertex_count: usize, arcs: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex, u64)>,
    {
        let mut g = MultiDigraph::new(vertex_count);
        for (u, v, m) in arcs {
            g.add_arc(u, v, m)?;
        }
        Ok(g)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// Sum of all multiplicities.
    pub fn total_arcs(&self) -> u64 {
        self.total_arcs
    }

    /// Number of distinct `(u, v)` pairs carrying at least one arc.
    pub fn distinct_arc_count(&self) -> usize {
        self.arcs.len()
    }

    fn check_vertex(&self, vertex: Vertex) -> Result<(), GraphError> {
        if vertex < self.vertex_count {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange {
                vertex,
                vertex_count: self.vertex_count,
            })
        }
    }

    /// Increases the multiplicity of `(u, v)` by `count`.
    pub fn add_arc(&mut self, u: Vertex, v: Vertex, count: u64) -> Result<(), GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if count == 0 {
            return Err(GraphError::ZeroMultiplicity);
        }
        let total = self
            .total_arcs
            .checked_add(count)
            .ok_or(GraphError::MultiplicityOverflow)?;
        // total bounds every per-vertex and per-pair sum, so nothing below can overflow
        *self.arcs.entry((u, v)).or_insert(0) += count;
        self.out_degree[u] += count;
        self.in_degree[v] += count;
        self.total_arcs = total;
        Ok(())
    }

    /// Multiplicity of `(u, v)`; zero when absent or out of range.
    pub fn multiplicity(&self, u: Vertex, v: Vertex) -> u64 {
        self.arcs.get(&(u, v)).copied().unwrap_or(0)
    }

    /// All arcs as `(u, v, multiplicity)`, sorted by `(u, v)`.
    pub fn arcs(&self) -> impl Iterator<Item = (Vertex, Vertex, u64)> + '_ {
        self.arcs.iter().map(|(&(u, v), &m)| (u, v, m))
    }

    /// Arcs leaving `u` as `(head, multiplicity)`, sorted by head.
    pub fn out_arcs(&self, u: Vertex) -> impl Iterator<Item = (Vertex, u64)> + '_ {
        self.arcs
            .range((Bound::Included((u, 0)), Bound::Included((u, Vertex::MAX))))
            .map(|(&(_, v), &m)| (v, m))
    }

    /// Per-vertex lists of incoming arcs as `(tail, multiplicity)`, sorted by tail.
    pub fn in_adjacency(&self) -> Vec<Vec<(Vertex, u64)>> {
        let mut lists = vec![Vec::new(); self.vertex_count];
        for (u, v, m) in self.arcs() {
            lists[v].push((u, m));
        }
        lists
    }

    /// Per-vertex lists of outgoing arcs as `(head, multiplicity)`, sorted by head.
    pub fn out_adjacency(&self) -> Vec<Vec<(Vertex, u64)>> {
        let mut lists = vec![Vec::new(); self.vertex_count];
        for (u, v, m) in self.arcs() {
            lists[u].push((v, m));
        }
        lists
    }

    pub fn out_degree(&self, u: Vertex) -> Result<u64, GraphError> {
        self.check_vertex(u)?;
        Ok(self.out_degree[u])
    }

    pub fn in_degree(&self, u: Vertex) -> Result<u64, GraphError> {
        self.check_vertex(u)?;
        Ok(self.in_degree[u])
    }

    pub fn out_degrees(&self) -> &[u64] {
        &self.out_degree
    }

    pub fn in_degrees(&self) -> &[u64] {
        &self.in_degree
    }

    /// True iff every vertex has in- and out-degree exactly `d`, counting multiplicities.
    pub fn is_d_regular(&self, d: u64) -> bool {
        self.out_degree.iter().all(|&k| k == d) && self.in_degree.iter().all(|&k| k == d)
    }

    /// Whether some vertex has in-degree 0 or out-degree 0.
    pub fn has_sink_or_source(&self) -> bool {
        self.first_sink_or_source().is_some()
    }

    /// Smallest vertex that is a sink or a source.
    pub fn first_sink_or_source(&self) -> Option<Vertex> {
        (0..self.vertex_count).find(|&v| self.out_degree[v] == 0 || self.in_degree[v] == 0)
    }

    /// The graph with every arc reversed.
    pub fn dual(&self) -> MultiDigraph {
        MultiDigraph {
            vertex_count: self.vertex_count,
            arcs: self.arcs.iter().map(|(&(u, v), &m)| ((v, u), m)).collect(),
            out_degree: self.in_degree.clone(),
            in_degree: self.out_degree.clone(),
            total_arcs: self.total_arcs,
        }
    }

    /// Renames vertex `v` to `perm[v]`.
    pub fn relabel(&self, perm: &[Vertex]) -> Result<MultiDigraph, GraphError> {
        let n = self.vertex_count;
        let mut seen = vec![false; n];
        if perm.len() != n {
            return Err(GraphError::InvalidPermutation(n));
        }
        for &p in perm {
            if p >= n || std::mem::replace(&mut seen[p], true) {
                return Err(GraphError::InvalidPermutation(n));
            }
        }
        let mut out_degree = vec![0; n];
        let mut in_degree = vec![0; n];
        for v in 0..n {
            out_degree[perm[v]] = self.out_degree[v];
            in_degree[perm[v]] = self.in_degree[v];
        }
        Ok(MultiDigraph {
            vertex_count: n,
            arcs: self
                .arcs
                .iter()
                .map(|(&(u, v), &m)| ((perm[u], perm[v]), m))
                .collect(),
            out_degree,
            in_degree,
            total_arcs: self.total_arcs,
        })
    }

    /// Saturating counts of `n`-walks between every ordered pair of vertices.
    pub fn walk_counts(&self, n: usize) -> WalkCountMatrix {
        let size = self.vertex_count;
        let mut current = WalkCountMatrix::identity(size);
        let adjacency = self.out_adjacency();
        for step in 1..=n {
            let mut next = vec![0u8; size * size];
            for u in 0..size {
                let row = &current.counts[u * size..(u + 1) * size];
                let out = &mut next[u * size..(u + 1) * size];
                for (w, &cw) in row.iter().enumerate() {
                    if cw == 0 {
                        continue;
                    }
                    for &(v, m) in &adjacency[w] {
                        let add = (cw as u64)
                            .saturating_mul(m)
                            .min(WalkCountMatrix::SATURATED as u64);
                        out[v] = (out[v] + add as u8).min(WalkCountMatrix::SATURATED);
                    }
                }
            }
            current = WalkCountMatrix {
                order: step,
                size,
                counts: next,
            };
        }
        current
    }
}

/// Number of `order`-walks between each vertex pair, saturated at
/// [`WalkCountMatrix::SATURATED`] (meaning "two or more").
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WalkCountMatrix {
    order: usize,
    size: usize,
    counts: Vec<u8>,
}

impl WalkCountMatrix {
    pub const SATURATED: u8 = 2;

    fn identity(size: usize) -> Self {
        let mut counts = vec![0u8; size * size];
        for v in 0..size {
            counts[v * size + v] = 1;
        }
        WalkCountMatrix {
            order: 0,
            size,
            counts,
        }
    }

    /// Walk length.
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Saturated count in `{0, 1, 2}`. Panics on out-of-range indices.
    pub fn get(&self, u: Vertex, v: Vertex) -> u8 {
        assert!(
            u < self.size && v < self.size,
            "walk matrix index out of range"
        );
        self.counts[u * self.size + v]
    }

    pub fn exists(&self, u: Vertex, v: Vertex) -> bool {
        self.get(u, v) > 0
    }

    pub fn row(&self, u: Vertex) -> &[u8] {
        &self.counts[u * self.size..(u + 1) * self.size]
    }
}

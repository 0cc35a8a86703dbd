//! Complete digraphs with loops, De Bruijn digraphs and the line digraph operator.
//!
//! B(d, n) has the `d^n` words of length `n` over `[0, d-1]` as vertices,
//! word `(x_1, ..., x_n)` having index `sum x_k * d^(n-k)`, and an arc from
//! every word to each of its `d` left shifts `(x_2, ..., x_n, y)`.
//! B(d, 1) is K_d^+ and B(d, n + 1) is isomorphic to L(B(d, n)).

use thiserror::Error;

use crate::multidigraph::MultiDigraph;
use crate::{SizeBound, SizeBoundExceeded};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DeBruijnError {
    #[error("De Bruijn degree must be at least 2 (got d={0})")]
    DegreeTooSmall(u64),
    #[error("De Bruijn dimension must be at least 1 (got n={0})")]
    DimensionTooSmall(u64),
    #[error(transparent)]
    TooLarge(#[from] SizeBoundExceeded),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DeBruijnParams {
    d: u64,
    n: u64,
}

impl DeBruijnParams {
    pub fn new(d: u64, n: u64) -> Result<Self, DeBruijnError> {
        if d < 2 {
            return Err(DeBruijnError::DegreeTooSmall(d));
        }
        if n < 1 {
            return Err(DeBruijnError::DimensionTooSmall(n));
        }
        Ok(DeBruijnParams { d, n })
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// `d^n`, saturating at `u128::MAX`.
    pub fn vertex_count(&self) -> u128 {
        let mut count: u128 = 1;
        for _ in 0..self.n {
            count = count.saturating_mul(self.d as u128);
            if count == u128::MAX {
                break;
            }
        }
        count
    }
}

/// K_d^+: `d` vertices and one arc for every ordered pair, loops included.
pub fn build_kd_plus(d: usize) -> MultiDigraph {
    let mut g = MultiDigraph::new(d);
    for u in 0..d {
        for v in 0..d {
            g.add_arc(u, v, 1).expect("in range");
        }
    }
    g
}

/// B(d, n) by the word-shift rule.
pub fn build_debruijn(
    params: &DeBruijnParams,
    bound: SizeBound,
) -> Result<MultiDigraph, DeBruijnError> {
    let vertices = params.vertex_count();
    bound.check(vertices)?;
    let vertices = vertices as usize;
    let d = params.d as usize;
    let mut g = MultiDigraph::new(vertices);
    for word in 0..vertices {
        // drop the leading letter, append y
        let shifted = (word % (vertices / d)) * d;
        for y in 0..d {
            g.add_arc(word, shifted + y, 1).expect("in range");
        }
    }
    Ok(g)
}

/// L(G). Every arc instance of `g` becomes a vertex; instances are ordered by
/// `(tail, head, copy)` and numbered densely. Instance `(u, v, c)` has an arc
/// to every instance leaving `v`.
pub fn line_digraph(g: &MultiDigraph) -> MultiDigraph {
    let n = g.vertex_count();
    let instance_count = g.total_arcs() as usize;
    // instances with tail v occupy start[v]..start[v + 1]
    let mut start = vec![0usize; n + 1];
    for v in 0..n {
        start[v + 1] = start[v] + g.out_degrees()[v] as usize;
    }
    let mut line = MultiDigraph::new(instance_count);
    let mut next = 0usize;
    for (_, v, m) in g.arcs() {
        for _ in 0..m {
            for target in start[v]..start[v + 1] {
                line.add_arc(next, target, 1).expect("in range");
            }
            next += 1;
        }
    }
    line
}

/// Applies [`line_digraph`] `k` times, refusing any step whose result would
/// exceed `bound` vertices.
pub fn iterate_line(
    g: &MultiDigraph,
    k: usize,
    bound: SizeBound,
) -> Result<MultiDigraph, DeBruijnError> {
    let mut current = g.clone();
    for _ in 0..k {
        bound.check(current.total_arcs() as u128)?;
        current = line_digraph(&current);
    }
    Ok(current)
}

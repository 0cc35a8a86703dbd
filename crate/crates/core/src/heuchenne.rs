//! Recognition of iterated line digraphs.
//!
//! A digraph without sinks or sources is an `n`-th iterated line digraph iff
//!
//! * (I) no ordered pair of vertices is joined by two or more `n`-walks, and
//! * (II) it satisfies the Heuchenne conditions of orders `n - 1` and `n`.
//!
//! The Heuchenne condition of order `n` asks that whenever `n`-walks
//! `u -> w`, `v -> w` and `v -> x` exist, an `n`-walk `u -> x` exists too.
//! Equivalently, any two `n`-out-neighborhoods are either identical or
//! disjoint, which is what [`heuchenne_violation`] checks.

use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

use crate::multidigraph::{MultiDigraph, Vertex, WalkCountMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RecognitionError {
    #[error("vertex {0} is a sink or a source; line digraph recognition needs neither")]
    SinkOrSource(Vertex),
    #[error("line digraph order must be at least 1")]
    ZeroOrder,
}

/// Two or more `order`-walks from `from` to `to`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MultipleWalks {
    pub order: usize,
    pub from: Vertex,
    pub to: Vertex,
}

/// Walks `u -> w`, `v -> w`, `v -> x` of length `order` exist but `u -> x` does not.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HeuchenneViolation {
    pub order: usize,
    pub u: Vertex,
    pub v: Vertex,
    pub w: Vertex,
    pub x: Vertex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FailureWitness {
    MultipleWalks(MultipleWalks),
    Heuchenne(HeuchenneViolation),
}

impl FailureWitness {
    /// Replays the witness against freshly computed walk counts.
    pub fn recheck(&self, g: &MultiDigraph) -> bool {
        match *self {
            FailureWitness::MultipleWalks(MultipleWalks { order, from, to }) => {
                in_range(g, &[from, to]) && g.walk_counts(order).get(from, to) >= 2
            }
            FailureWitness::Heuchenne(HeuchenneViolation { order, u, v, w, x }) => {
                if !in_range(g, &[u, v, w, x]) {
                    return false;
                }
                let walks = g.walk_counts(order);
                walks.exists(u, w)
                    && walks.exists(v, w)
                    && walks.exists(v, x)
                    && !walks.exists(u, x)
            }
        }
    }
}

fn in_range(g: &MultiDigraph, vertices: &[Vertex]) -> bool {
    vertices.iter().all(|&v| v < g.vertex_count())
}

impl fmt::Display for FailureWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FailureWitness::MultipleWalks(m) => {
                write!(f, "multiple {}-walks from {} to {}", m.order, m.from, m.to)
            }
            FailureWitness::Heuchenne(h) => write!(
                f,
                "Heuchenne condition of order {} fails at (u,v,w,x)=({},{},{},{}): \
                 walks {}->{}, {}->{}, {}->{} exist but {}->{} does not",
                h.order, h.u, h.v, h.w, h.x, h.u, h.w, h.v, h.w, h.v, h.x, h.u, h.x
            ),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LineRecognitionVerdict {
    pub is_nth_line: bool,
    pub order: usize,
    pub failure: Option<FailureWitness>,
}

/// Lexicographically smallest pair joined by two or more `n`-walks.
pub fn find_multiple_walks(g: &MultiDigraph, n: usize) -> Option<MultipleWalks> {
    find_multiple_in(&g.walk_counts(n))
}

fn find_multiple_in(walks: &WalkCountMatrix) -> Option<MultipleWalks> {
    let size = walks.size();
    (0..size).find_map(|u| {
        walks
            .row(u)
            .iter()
            .position(|&c| c >= 2)
            .map(|v| MultipleWalks {
                order: walks.order(),
                from: u,
                to: v,
            })
    })
}

pub fn has_multiple_n_walks(g: &MultiDigraph, n: usize) -> bool {
    find_multiple_walks(g, n).is_some()
}

/// Reachability rows packed into 64-bit words.
struct BitRows {
    words: usize,
    bits: Vec<u64>,
}

impl BitRows {
    fn from_walks(walks: &WalkCountMatrix) -> Self {
        let size = walks.size();
        let words = size.div_ceil(64).max(1);
        let mut bits = vec![0u64; size * words];
        for u in 0..size {
            for (v, &c) in walks.row(u).iter().enumerate() {
                if c > 0 {
                    bits[u * words + v / 64] |= 1 << (v % 64);
                }
            }
        }
        BitRows { words, bits }
    }

    fn row(&self, u: usize) -> &[u64] {
        &self.bits[u * self.words..(u + 1) * self.words]
    }

    fn first_common(&self, u: usize, v: usize) -> Option<usize> {
        first_set(self.row(u).iter().zip(self.row(v)).map(|(a, b)| a & b))
    }

    /// Smallest vertex reachable from `v` but not from `u`.
    fn first_only_in(&self, v: usize, u: usize) -> Option<usize> {
        first_set(self.row(v).iter().zip(self.row(u)).map(|(b, a)| b & !a))
    }
}

fn first_set(words: impl Iterator<Item = u64>) -> Option<usize> {
    for (k, word) in words.enumerate() {
        if word != 0 {
            return Some(k * 64 + word.trailing_zeros() as usize);
        }
    }
    None
}

/// Lexicographically smallest `(u, v, w, x)` violating the order-`n` Heuchenne condition.
pub fn heuchenne_violation(g: &MultiDigraph, n: usize) -> Option<HeuchenneViolation> {
    heuchenne_violation_in(&g.walk_counts(n))
}

fn heuchenne_violation_in(walks: &WalkCountMatrix) -> Option<HeuchenneViolation> {
    let size = walks.size();
    let rows = BitRows::from_walks(walks);
    if neighborhoods_disjoint_or_equal(&rows, size) {
        return None;
    }
    // For fixed (u, v) the choices of w and x are independent, so the
    // smallest tuple uses the first (u, v) whose rows meet and differ.
    for u in 0..size {
        for v in 0..size {
            let Some(w) = rows.first_common(u, v) else {
                continue;
            };
            if let Some(x) = rows.first_only_in(v, u) {
                return Some(HeuchenneViolation {
                    order: walks.order(),
                    u,
                    v,
                    w,
                    x,
                });
            }
        }
    }
    unreachable!("overlapping distinct neighborhoods always yield a violating tuple")
}

/// Distinct rows are pairwise disjoint iff their sizes add up to the size of their union.
fn neighborhoods_disjoint_or_equal(rows: &BitRows, size: usize) -> bool {
    let mut distinct: HashSet<&[u64]> = HashSet::new();
    let mut union = vec![0u64; rows.words];
    let mut total = 0usize;
    for u in 0..size {
        let row = rows.row(u);
        if distinct.insert(row) {
            total += row.iter().map(|w| w.count_ones() as usize).sum::<usize>();
            for (acc, w) in union.iter_mut().zip(row) {
                *acc |= w;
            }
        }
    }
    total == union.iter().map(|w| w.count_ones() as usize).sum::<usize>()
}

pub fn heuchenne_condition(g: &MultiDigraph, n: usize) -> bool {
    heuchenne_violation(g, n).is_none()
}

/// Decides whether `g` is an `n`-th iterated line digraph, checking condition
/// (I) first, then the Heuchenne conditions of orders `n - 1` and `n`.
pub fn is_nth_line_digraph(
    g: &MultiDigraph,
    n: usize,
) -> Result<LineRecognitionVerdict, RecognitionError> {
    if n == 0 {
        return Err(RecognitionError::ZeroOrder);
    }
    if let Some(v) = g.first_sink_or_source() {
        return Err(RecognitionError::SinkOrSource(v));
    }
    let previous = g.walk_counts(n - 1);
    let current = g.walk_counts(n);
    let failure = find_multiple_in(&current)
        .map(FailureWitness::MultipleWalks)
        .or_else(|| heuchenne_violation_in(&previous).map(FailureWitness::Heuchenne))
        .or_else(|| heuchenne_violation_in(&current).map(FailureWitness::Heuchenne));
    Ok(LineRecognitionVerdict {
        is_nth_line: failure.is_none(),
        order: n,
        failure,
    })
}

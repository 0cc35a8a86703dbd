//! Canonical labeling and isomorphism of multidigraphs.
//!
//! Colors are refined until stable, with each vertex's new color given by the
//! rank of its signature `(color, in-multiset, out-multiset)` among all
//! signatures, where the multisets hold `(neighbor color, multiplicity)`.
//! Because ranks depend only on signatures, the stable coloring is invariant
//! under relabeling. The search then individualizes vertices of the first
//! non-singleton cell, smallest vertex first, and keeps the lexicographically
//! least relabeled arc list among the discrete leaves. Automorphisms found
//! when two leaves coincide prune equivalent branches.

use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::hash::{Hash, Hasher};

use thiserror::Error;

use crate::multidigraph::{MultiDigraph, Vertex};
use crate::{SizeBound, SizeBoundExceeded};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CanonError {
    #[error(transparent)]
    TooLarge(#[from] SizeBoundExceeded),
    #[error("initial coloring has {got} entries for {expected} vertices")]
    ColoringLength { expected: usize, got: usize },
}

/// Relabeled arc list that is equal for two graphs iff they are isomorphic.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    pub vertex_count: usize,
    /// `(u, v, multiplicity)` under the canonical labeling, sorted.
    pub canonical_arcs: Vec<(Vertex, Vertex, u64)>,
}

type Arcs = Vec<(Vertex, Vertex, u64)>;

struct Adjacency {
    out: Vec<Vec<(Vertex, u64)>>,
    inc: Vec<Vec<(Vertex, u64)>>,
}

impl Adjacency {
    fn new(g: &MultiDigraph) -> Self {
        Adjacency {
            out: g.out_adjacency(),
            inc: g.in_adjacency(),
        }
    }

    fn len(&self) -> usize {
        self.out.len()
    }

    /// Classes of vertices any two of which can be swapped by an
    /// automorphism. Finds twins with no arcs between them, and twins whose
    /// loops and mutual arcs all share one multiplicity.
    fn twin_classes(&self) -> Vec<Vec<Vertex>> {
        type Key = (Vec<(Vertex, u64)>, Vec<(Vertex, u64)>);
        let mut open: HashMap<(u64, Key), Vec<Vertex>> = HashMap::new();
        let mut closed: HashMap<Key, Vec<Vertex>> = HashMap::new();
        for v in 0..self.len() {
            let out = self.out[v].clone();
            let inc = self.inc[v].clone();
            let without = |list: &[(Vertex, u64)]| -> Vec<(Vertex, u64)> {
                list.iter().copied().filter(|&(w, _)| w != v).collect()
            };
            let looped = out.iter().find(|&&(w, _)| w == v).map_or(0, |&(_, m)| m);
            open.entry((looped, (without(&out), without(&inc))))
                .or_default()
                .push(v);
            closed.entry((out, inc)).or_default().push(v);
        }
        open.into_values()
            .chain(closed.into_values())
            .filter(|class| class.len() > 1)
            .collect()
    }
}

type Signature = (usize, Vec<(usize, u64)>, Vec<(usize, u64)>);

fn signature(adj: &Adjacency, colors: &[usize], v: Vertex) -> Signature {
    let mut inc: Vec<_> = adj.inc[v].iter().map(|&(w, m)| (colors[w], m)).collect();
    let mut out: Vec<_> = adj.out[v].iter().map(|&(w, m)| (colors[w], m)).collect();
    inc.sort_unstable();
    out.sort_unstable();
    (colors[v], inc, out)
}

/// Replaces each value by its rank among the distinct values; returns the class count.
fn rank_in_place<T: Ord + Clone>(keys: &[T], colors: &mut [usize]) -> usize {
    let mut distinct: Vec<T> = keys.to_vec();
    distinct.sort();
    distinct.dedup();
    for (c, key) in colors.iter_mut().zip(keys) {
        *c = distinct.binary_search(key).expect("key present");
    }
    distinct.len()
}

fn refine(adj: &Adjacency, colors: &mut [usize]) {
    let mut classes = {
        let keys = colors.to_vec();
        rank_in_place(&keys, colors)
    };
    loop {
        let signatures: Vec<Signature> =
            (0..adj.len()).map(|v| signature(adj, colors, v)).collect();
        let refined = rank_in_place(&signatures, colors);
        // refinement only splits classes and keeps their relative order,
        // so an unchanged count means an unchanged coloring
        if refined == classes {
            return;
        }
        classes = refined;
    }
}

/// Refines `initial` to the coarsest stable coloring below it. Returned
/// colors are dense ranks `0..k` that depend only on the isomorphism type of
/// `(g, initial)`, with the order of initial color values preserved.
pub fn refine_colors(g: &MultiDigraph, initial: &[usize]) -> Result<Vec<usize>, CanonError> {
    if initial.len() != g.vertex_count() {
        return Err(CanonError::ColoringLength {
            expected: g.vertex_count(),
            got: initial.len(),
        });
    }
    let adj = Adjacency::new(g);
    let mut colors = initial.to_vec();
    refine(&adj, &mut colors);
    Ok(colors)
}

struct Leaf {
    path: Vec<Vertex>,
    labeling: Vec<usize>,
}

struct Search<'a> {
    adj: &'a Adjacency,
    arcs: Vec<(Vertex, Vertex, u64)>,
    /// Every leaf reached so far, bucketed by a hash of its relabeled arc list.
    leaves: HashMap<u64, Vec<Leaf>>,
    best: Option<(Arcs, Vec<usize>)>,
    automorphisms: Vec<Vec<Vertex>>,
    twins: Vec<Vec<Vertex>>,
}

fn common_prefix(a: &[Vertex], b: &[Vertex]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

fn hash_arcs(arcs: &Arcs) -> u64 {
    let mut hasher = DefaultHasher::new();
    arcs.hash(&mut hasher);
    hasher.finish()
}

/// Union-find over vertices, merged by the automorphisms that fix a node's path.
struct Orbits {
    parent: Vec<usize>,
    applied: usize,
}

impl Orbits {
    fn new(n: usize) -> Self {
        Orbits {
            parent: (0..n).collect(),
            applied: 0,
        }
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.parent[a.max(b)] = a.min(b);
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn absorb(&mut self, automorphisms: &[Vec<Vertex>], path: &[Vertex]) {
        for sigma in &automorphisms[self.applied..] {
            if path.iter().all(|&p| sigma[p] == p) {
                for (v, &s) in sigma.iter().enumerate() {
                    self.union(v, s);
                }
            }
        }
        self.applied = automorphisms.len();
    }
}

impl Search<'_> {
    fn relabeled(&self, labeling: &[usize]) -> Arcs {
        let mut arcs: Arcs = self
            .arcs
            .iter()
            .map(|&(u, v, m)| (labeling[u], labeling[v], m))
            .collect();
        arcs.sort_unstable();
        arcs
    }

    /// Returns `Some(level)` when every node deeper than `level` is redundant.
    fn visit(&mut self, colors: Vec<usize>, path: &mut Vec<Vertex>) -> Option<usize> {
        let n = colors.len();
        let mut cell_sizes = vec![0usize; n];
        for &c in &colors {
            cell_sizes[c] += 1;
        }
        let Some(target) = (0..n).find(|&c| cell_sizes[c] > 1) else {
            return self.leaf(colors, path);
        };
        let level = path.len();
        let cell: Vec<Vertex> = (0..n).filter(|&v| colors[v] == target).collect();
        let mut orbits = Orbits::new(n);
        for class in &self.twins {
            let mut free = class.iter().filter(|v| !path.contains(v));
            if let Some(&first) = free.next() {
                for &v in free {
                    orbits.union(first, v);
                }
            }
        }
        let mut explored: Vec<Vertex> = Vec::new();
        for &v in &cell {
            if !explored.is_empty() {
                orbits.absorb(&self.automorphisms, path);
                let root = orbits.find(v);
                if explored.iter().any(|&e| orbits.find(e) == root) {
                    continue;
                }
            }
            explored.push(v);
            let child = individualize(self.adj, &colors, v);
            path.push(v);
            let jump = self.visit(child, path);
            path.pop();
            if let Some(to) = jump {
                if to < level {
                    return Some(to);
                }
            }
        }
        None
    }

    /// A leaf whose arc list matches an earlier one yields the automorphism
    /// mapping it onto that leaf. The automorphism fixes their common path
    /// prefix and carries the current subtree onto an already explored
    /// sibling, so the search resumes at the end of that prefix.
    fn leaf(&mut self, labeling: Vec<usize>, path: &[Vertex]) -> Option<usize> {
        let arcs = self.relabeled(&labeling);
        let key = hash_arcs(&arcs);
        let matched = self.leaves.get(&key).and_then(|bucket| {
            bucket
                .iter()
                .find(|earlier| self.relabeled(&earlier.labeling) == arcs)
        });
        if let Some(earlier) = matched {
            let mut inverse = vec![0; earlier.labeling.len()];
            for (v, &pos) in earlier.labeling.iter().enumerate() {
                inverse[pos] = v;
            }
            let sigma: Vec<Vertex> = labeling.iter().map(|&pos| inverse[pos]).collect();
            let level = common_prefix(path, &earlier.path);
            self.automorphisms.push(sigma);
            return Some(level);
        }
        if self.best.as_ref().is_none_or(|(best, _)| arcs < *best) {
            self.best = Some((arcs, labeling.clone()));
        }
        self.leaves.entry(key).or_default().push(Leaf {
            path: path.to_vec(),
            labeling,
        });
        None
    }
}

/// Gives `v` its own color just below the rest of its cell, then refines.
fn individualize(adj: &Adjacency, colors: &[usize], v: Vertex) -> Vec<usize> {
    let mut child: Vec<usize> = colors.iter().map(|&c| 2 * c + 1).collect();
    child[v] -= 1;
    refine(adj, &mut child);
    child
}

/// Canonical labeling `vertex -> position` together with the canonical form.
pub fn canonical_labeling(
    g: &MultiDigraph,
    bound: SizeBound,
) -> Result<(Vec<usize>, CanonicalForm), CanonError> {
    bound.check(g.vertex_count() as u128)?;
    let adj = Adjacency::new(g);
    let mut colors = vec![0usize; g.vertex_count()];
    refine(&adj, &mut colors);
    let mut search = Search {
        adj: &adj,
        arcs: g.arcs().collect(),
        leaves: HashMap::new(),
        best: None,
        automorphisms: Vec::new(),
        twins: adj.twin_classes(),
    };
    search.visit(colors, &mut Vec::new());
    let (best, labeling) = search.best.expect("search reaches at least one leaf");
    Ok((
        labeling,
        CanonicalForm {
            vertex_count: g.vertex_count(),
            canonical_arcs: best,
        },
    ))
}

pub fn canonical_form(g: &MultiDigraph, bound: SizeBound) -> Result<CanonicalForm, CanonError> {
    canonical_labeling(g, bound).map(|(_, form)| form)
}

/// Explicit isomorphism `a -> b` as a vertex map, if one exists.
pub fn find_isomorphism(
    a: &MultiDigraph,
    b: &MultiDigraph,
    bound: SizeBound,
) -> Result<Option<Vec<Vertex>>, CanonError> {
    if a.vertex_count() != b.vertex_count() || a.total_arcs() != b.total_arcs() {
        return Ok(None);
    }
    let (label_a, form_a) = canonical_labeling(a, bound)?;
    let (label_b, form_b) = canonical_labeling(b, bound)?;
    if form_a != form_b {
        return Ok(None);
    }
    let mut inverse_b = vec![0; label_b.len()];
    for (v, &pos) in label_b.iter().enumerate() {
        inverse_b[pos] = v;
    }
    Ok(Some(label_a.iter().map(|&pos| inverse_b[pos]).collect()))
}

pub fn isomorphic(
    a: &MultiDigraph,
    b: &MultiDigraph,
    bound: SizeBound,
) -> Result<bool, CanonError> {
    if a.vertex_count() != b.vertex_count() || a.total_arcs() != b.total_arcs() {
        bound.check(a.vertex_count().max(b.vertex_count()) as u128)?;
        return Ok(false);
    }
    Ok(canonical_form(a, bound)? == canonical_form(b, bound)?)
}

//! Brute-force oracles shared by the integration tests. None of these call
//! into the canonical labeling, walk matrices or builders they check.

#![allow(dead_code)]

use otis_layout::MultiDigraph;
use rand::seq::SliceRandom;
use rand::Rng;

/// H(p, q, d) straight from the link formula, as an arc-multiplicity matrix.
pub fn h_matrix(p: usize, q: usize, d: usize) -> Vec<Vec<u64>> {
    let groups = p * q / d;
    let mut m = vec![vec![0u64; groups]; groups];
    for i in 0..p {
        for j in 0..q {
            let sender = i * q + j;
            let receiver = (q - 1 - j) * p + (p - 1 - i);
            m[sender / d][receiver / d] += 1;
        }
    }
    m
}

pub fn matrix_of(g: &MultiDigraph) -> Vec<Vec<u64>> {
    let n = g.vertex_count();
    (0..n)
        .map(|u| (0..n).map(|v| g.multiplicity(u, v)).collect())
        .collect()
}

fn next_permutation(perm: &mut [usize]) -> bool {
    let n = perm.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && perm[i - 1] >= perm[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while perm[j] <= perm[i - 1] {
        j -= 1;
    }
    perm.swap(i - 1, j);
    perm[i..].reverse();
    true
}

/// Tries every bijection of the vertex sets.
pub fn brute_force_isomorphic(a: &MultiDigraph, b: &MultiDigraph) -> bool {
    let n = a.vertex_count();
    if n != b.vertex_count() {
        return false;
    }
    let ma = matrix_of(a);
    let mb = matrix_of(b);
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        let ok = (0..n).all(|u| (0..n).all(|v| ma[u][v] == mb[perm[u]][perm[v]]));
        if ok {
            return true;
        }
        if !next_permutation(&mut perm) {
            return false;
        }
    }
}

/// Number of `n`-walks from every vertex to every vertex by explicit
/// enumeration, with parallel arcs counted separately, capped at `cap`.
pub fn enumerate_walks(g: &MultiDigraph, n: usize, cap: u64) -> Vec<Vec<u64>> {
    let size = g.vertex_count();
    let m = matrix_of(g);
    let mut counts = vec![vec![0u64; size]; size];
    fn walk(m: &[Vec<u64>], at: usize, left: usize, weight: u64, cap: u64, row: &mut [u64]) {
        if left == 0 {
            row[at] = (row[at] + weight).min(cap);
            return;
        }
        for (next, &mult) in m[at].iter().enumerate() {
            if mult > 0 {
                walk(
                    m,
                    next,
                    left - 1,
                    weight.saturating_mul(mult).min(cap),
                    cap,
                    row,
                );
            }
        }
    }
    for (start, row) in counts.iter_mut().enumerate() {
        walk(&m, start, n, 1, cap, row);
    }
    counts
}

/// The Heuchenne condition read literally over all 4-tuples.
pub fn brute_force_heuchenne(g: &MultiDigraph, n: usize) -> bool {
    let size = g.vertex_count();
    let reach = enumerate_walks(g, n, 1);
    for u in 0..size {
        for v in 0..size {
            for w in 0..size {
                for x in 0..size {
                    if reach[u][w] > 0 && reach[v][w] > 0 && reach[v][x] > 0 && reach[u][x] == 0 {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Random multidigraph with `vertices` vertices and at most `max_arcs` arcs in total.
pub fn random_multidigraph<R: Rng>(rng: &mut R, vertices: usize, max_arcs: u64) -> MultiDigraph {
    let mut g = MultiDigraph::new(vertices);
    if vertices == 0 {
        return g;
    }
    let arcs = rng.gen_range(0..=max_arcs);
    for _ in 0..arcs {
        let u = rng.gen_range(0..vertices);
        let v = rng.gen_range(0..vertices);
        g.add_arc(u, v, 1).unwrap();
    }
    g
}

pub fn random_permutation<R: Rng>(rng: &mut R, n: usize) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    perm
}

/// Same graph with one arc moved to a random pair.
pub fn perturb<R: Rng>(rng: &mut R, g: &MultiDigraph) -> MultiDigraph {
    let n = g.vertex_count();
    let arcs: Vec<_> = g.arcs().collect();
    if n == 0 || arcs.is_empty() {
        return g.clone();
    }
    let (ru, rv, _) = arcs[rng.gen_range(0..arcs.len())];
    let mut out = MultiDigraph::new(n);
    let mut removed = false;
    for (u, v, m) in arcs {
        let m = if !removed && (u, v) == (ru, rv) {
            removed = true;
            m - 1
        } else {
            m
        };
        if m > 0 {
            out.add_arc(u, v, m).unwrap();
        }
    }
    out.add_arc(rng.gen_range(0..n), rng.gen_range(0..n), 1)
        .unwrap();
    out
}

/// All valid (p, q, d) with d > 1, d | pq and pq <= max_pq.
pub fn otis_triples(max_pq: usize) -> Vec<(usize, usize, usize)> {
    let mut triples = Vec::new();
    for p in 1..=max_pq {
        for q in 1..=max_pq / p {
            for d in 2..=p * q {
                if (p * q) % d == 0 {
                    triples.push((p, q, d));
                }
            }
        }
    }
    triples
}

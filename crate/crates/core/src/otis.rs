//! OTIS(p, q, d) processor coordinates, the optical transpose link map and
//! the group digraph H(p, q, d).
//!
//! Processor `a` in `[0, pq - 1]` has coordinates `(i, j)_{p,q}` with
//! `a = i*q + j`. Its transmitter is wired to the receiver of processor
//! `(q-1-j, p-1-i)_{q,p}`. Consecutive blocks `[kd, kd + d - 1]` form one
//! electronic group, which is vertex `k` of H(p, q, d).

use thiserror::Error;

use crate::multidigraph::MultiDigraph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OtisError {
    #[error("p and q must be positive (got p={p}, q={q})")]
    ZeroDimension { p: u64, q: u64 },
    #[error("d must be greater than 1 (got d={0})")]
    GroupTooSmall(u64),
    #[error("d does not divide pq (d={d}, pq={pq})")]
    NotDivisor { d: u64, pq: u64 },
    #[error("pq overflows the platform word size")]
    Overflow,
    #[error("coordinate ({i}, {j}) out of range for a ({p}, {q}) grid")]
    CoordinateOutOfRange {
        i: usize,
        j: usize,
        p: usize,
        q: usize,
    },
    #[error("processor {a} out of range for {processors} processors")]
    ProcessorOutOfRange { a: usize, processors: usize },
}

/// A validated OTIS(p, q, d) parameter triple: `d > 1` and `d | pq`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OtisParams {
    p: usize,
    q: usize,
    d: usize,
}

impl OtisParams {
    pub fn new(p: u64, q: u64, d: u64) -> Result<Self, OtisError> {
        if p == 0 || q == 0 {
            return Err(OtisError::ZeroDimension { p, q });
        }
        if d <= 1 {
            return Err(OtisError::GroupTooSmall(d));
        }
        let pq = p.checked_mul(q).ok_or(OtisError::Overflow)?;
        if pq % d != 0 {
            return Err(OtisError::NotDivisor { d, pq });
        }
        let to_usize = |x: u64| usize::try_from(x).map_err(|_| OtisError::Overflow);
        usize::try_from(pq).map_err(|_| OtisError::Overflow)?;
        Ok(OtisParams {
            p: to_usize(p)?,
            q: to_usize(q)?,
            d: to_usize(d)?,
        })
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn processors(&self) -> usize {
        self.p * self.q
    }

    /// Number of vertices of H(p, q, d).
    pub fn group_count(&self) -> usize {
        self.processors() / self.d
    }

    /// Parameters of the transposed architecture OTIS(q, p, d).
    pub fn transposed(&self) -> OtisParams {
        OtisParams {
            p: self.q,
            q: self.p,
            d: self.d,
        }
    }
}

/// Coordinates `(i, j)` relative to some `(p, q)` grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Coord {
    pub i: usize,
    pub j: usize,
}

pub fn encode(i: usize, j: usize, p: usize, q: usize) -> Result<usize, OtisError> {
    if i >= p || j >= q {
        return Err(OtisError::CoordinateOutOfRange { i, j, p, q });
    }
    Ok(i * q + j)
}

pub fn decode(a: usize, p: usize, q: usize) -> Result<Coord, OtisError> {
    let processors = p.checked_mul(q).ok_or(OtisError::Overflow)?;
    if a >= processors {
        return Err(OtisError::ProcessorOutOfRange { a, processors });
    }
    Ok(Coord { i: a / q, j: a % q })
}

/// Receiver reached by the transmitter of processor `a` in OTIS(p, q).
pub fn otis_link(a: usize, p: usize, q: usize) -> Result<usize, OtisError> {
    let Coord { i, j } = decode(a, p, q)?;
    encode(q - 1 - j, p - 1 - i, q, p)
}

/// Electronic group containing processor `a`.
pub fn group_of(a: usize, d: usize) -> usize {
    a / d
}

/// Builds H(p, q, d): one arc per processor from its group to the group of
/// the receiver it is linked to. Vertex `k` stands for processors `[kd, kd + d - 1]`.
pub fn build_h(params: &OtisParams) -> MultiDigraph {
    let OtisParams { p, q, d } = *params;
    let mut g = MultiDigraph::new(params.group_count());
    for a in 0..params.processors() {
        // (i, j)_{p,q} -> (q-1-j, p-1-i)_{q,p}, i.e. (q-1-j)*p + (p-1-i)
        let (i, j) = (a / q, a % q);
        let b = (q - 1 - j) * p + (p - 1 - i);
        g.add_arc(group_of(a, d), group_of(b, d), 1)
            .expect("group indices are below pq/d");
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn params_validation() {
        assert!(OtisParams::new(2, 2, 2).is_ok());
        assert!(OtisParams::new(1, 4, 2).is_ok());
        assert_eq!(OtisParams::new(2, 2, 1), Err(OtisError::GroupTooSmall(1)));
        let err = OtisParams::new(3, 4, 5).unwrap_err();
        assert_eq!(err, OtisError::NotDivisor { d: 5, pq: 12 });
        assert!(err.to_string().contains("d does not divide pq"));
        assert!(OtisParams::new(0, 4, 2).is_err());
        assert_eq!(OtisParams::new(u64::MAX, 2, 2), Err(OtisError::Overflow));
    }

    #[test]
    fn encode_examples() {
        assert_eq!(encode(0, 0, 3, 5), Ok(0));
        assert_eq!(encode(1, 1, 2, 2), Ok(3));
        assert_eq!(encode(2, 4, 3, 5), Ok(14));
        assert!(encode(3, 0, 3, 5).is_err());
        assert!(encode(0, 5, 3, 5).is_err());
    }

    #[test]
    fn decode_examples() {
        assert_eq!(decode(5, 2, 4), Ok(Coord { i: 1, j: 1 }));
        assert_eq!(decode(3, 1, 4), Ok(Coord { i: 0, j: 3 }));
        assert_eq!(
            decode(8, 2, 4),
            Err(OtisError::ProcessorOutOfRange {
                a: 8,
                processors: 8
            })
        );
        for p in 1..6 {
            for q in 1..6 {
                for i in 0..p {
                    for j in 0..q {
                        let a = encode(i, j, p, q).unwrap();
                        assert_eq!(decode(a, p, q), Ok(Coord { i, j }));
                    }
                }
            }
        }
    }

    #[test]
    fn link_examples() {
        assert_eq!(otis_link(0, 2, 2), Ok(3));
        for q in 1..8 {
            for a in 0..q {
                assert_eq!(otis_link(a, 1, q), Ok(q - 1 - a));
            }
        }
        assert!(otis_link(4, 2, 2).is_err());
    }

    #[test]
    fn link_is_inverted_by_transposed_link() {
        for p in 1..7 {
            for q in 1..7 {
                for a in 0..p * q {
                    let b = otis_link(a, p, q).unwrap();
                    assert_eq!(otis_link(b, q, p), Ok(a));
                }
            }
        }
    }

    #[test]
    fn group_of_examples() {
        assert_eq!(group_of(0, 2), 0);
        assert_eq!(group_of(3, 2), 1);
        for d in 2..5 {
            for k in 0..5 {
                assert_eq!(group_of(k * d, d), k);
                assert_eq!(group_of(k * d + d - 1, d), k);
            }
        }
    }

    #[test]
    fn h_222_is_k2_plus() {
        let g = build_h(&OtisParams::new(2, 2, 2).unwrap());
        let arcs: Vec<_> = g.arcs().collect();
        assert_eq!(arcs, vec![(0, 0, 1), (0, 1, 1), (1, 0, 1), (1, 1, 1)]);
    }

    #[test]
    fn h_142_has_double_arcs() {
        let g = build_h(&OtisParams::new(1, 4, 2).unwrap());
        let arcs: Vec<_> = g.arcs().collect();
        assert_eq!(arcs, vec![(0, 1, 2), (1, 0, 2)]);
    }

    #[test]
    fn h_463_size() {
        let params = OtisParams::new(4, 6, 3).unwrap();
        let g = build_h(&params);
        assert_eq!(g.vertex_count(), 8);
        assert_eq!(g.total_arcs(), 24);
        assert!(g.is_d_regular(3));
    }

    #[test]
    fn h_matches_link_map() {
        let params = OtisParams::new(3, 4, 2).unwrap();
        let g = build_h(&params);
        let mut expected = MultiDigraph::new(6);
        for a in 0..12 {
            let b = otis_link(a, 3, 4).unwrap();
            expected.add_arc(group_of(a, 2), group_of(b, 2), 1).unwrap();
        }
        assert_eq!(g, expected);
    }
}

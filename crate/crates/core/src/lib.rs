//! Construction and analysis of OTIS interconnection digraphs.
//!
//! The crate builds the group digraph H(p, q, d) of an OTIS(p, q, d)
//! optical architecture and the De Bruijn digraph B(d, n), recognizes
//! (iterated) line digraphs through the Heuchenne conditions, decides
//! multidigraph isomorphism by canonical labeling, and enumerates every
//! OTIS layout of a given digraph.
//!
//! ```
//! use otis_layout::{canon, debruijn, otis, SizeBound};
//!
//! let h = otis::build_h(&otis::OtisParams::new(2, 4, 2).unwrap());
//! let b = debruijn::build_debruijn(&debruijn::DeBruijnParams::new(2, 2).unwrap(), SizeBound::default()).unwrap();
//! assert!(canon::isomorphic(&h, &b, SizeBound::default()).unwrap());
//! ```

pub mod arith;
pub mod canon;
pub mod debruijn;
pub mod format;
pub mod heuchenne;
pub mod layout;
pub mod multidigraph;
pub mod otis;

pub use multidigraph::{GraphError, MultiDigraph, Vertex, WalkCountMatrix};

use thiserror::Error;

/// Upper limit on the number of vertices a size-guarded operation will materialize.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SizeBound(pub usize);

impl SizeBound {
    pub const DEFAULT: SizeBound = SizeBound(4096);

    pub fn check(self, vertices: u128) -> Result<(), SizeBoundExceeded> {
        if vertices > self.0 as u128 {
            Err(SizeBoundExceeded {
                vertices,
                bound: self.0,
            })
        } else {
            Ok(())
        }
    }
}

impl Default for SizeBound {
    fn default() -> Self {
        SizeBound::DEFAULT
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("graph with {vertices} vertices exceeds the size bound of {bound}")]
pub struct SizeBoundExceeded {
    pub vertices: u128,
    pub bound: usize,
}

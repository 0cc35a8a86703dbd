//! OTIS layouts: the layout permutation and its orbits, the gcd and
//! line-digraph layout criteria, exhaustive layout enumeration and the
//! powers-of-`d` conjecture probe for De Bruijn digraphs.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::arith::{divisors, gcd, is_power_of, log_exact};
use crate::canon::{canonical_form, CanonError};
use crate::debruijn::{build_debruijn, DeBruijnError, DeBruijnParams};
use crate::heuchenne::is_nth_line_digraph;
use crate::multidigraph::MultiDigraph;
use crate::otis::{build_h, OtisError, OtisParams};
use crate::SizeBound;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LayoutError {
    #[error("p' and q' must be positive (got p'={p_prime}, q'={q_prime})")]
    NonPositive { p_prime: u64, q_prime: u64 },
    #[error("n must be at least 1 (got n={0})")]
    DimensionTooSmall(u64),
    #[error("n+1 overflows a 64-bit integer (got n={0})")]
    DimensionTooLarge(u64),
    #[error("p'={p_prime} lies outside [0, n+1] for n={n}")]
    PPrimeOutOfRange { p_prime: u64, n: u64 },
    #[error("target is not {0}-regular")]
    NotRegular(u64),
    #[error("layout degree d must be greater than 1 (got d={0})")]
    DegreeTooSmall(u64),
    #[error(transparent)]
    Otis(#[from] OtisError),
    #[error(transparent)]
    DeBruijn(#[from] DeBruijnError),
    #[error(transparent)]
    Canon(#[from] CanonError),
}

/// The permutation `g` of `[0, n-1]`, `n = p' + q' - 1`:
/// `g(i) = i + p'` on `[0, q'-2]`, `g(q'-1) = p' - 1`, `g(i) = i - q'` on `[q', n-1]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayoutPermutation {
    p_prime: usize,
    q_prime: usize,
    mapping: Vec<usize>,
    lambda: usize,
}

impl LayoutPermutation {
    pub fn new(p_prime: u64, q_prime: u64) -> Result<Self, LayoutError> {
        let (p, q) = Self::validate(p_prime, q_prime)?;
        let n = p + q - 1;
        let mapping = (0..n)
            .map(|i| match i {
                i if i + 1 < q => i + p,
                i if i + 1 == q => p - 1,
                i => i - q,
            })
            .collect();
        Ok(Self::with_mapping(p, q, mapping))
    }

    /// The same permutation written as `f(i) = i + p'` on `[0, q'-2]`,
    /// `f(q'-1) = p' - 1` and `f(i) = i + p' - 1 (mod n)` otherwise.
    pub fn from_shift_form(p_prime: u64, q_prime: u64) -> Result<Self, LayoutError> {
        let (p, q) = Self::validate(p_prime, q_prime)?;
        let n = p + q - 1;
        let mapping = (0..n)
            .map(|i| {
                if i + 1 < q {
                    i + p
                } else if i + 1 == q {
                    p - 1
                } else {
                    (i + p - 1) % n
                }
            })
            .collect();
        Ok(Self::with_mapping(p, q, mapping))
    }

    fn validate(p_prime: u64, q_prime: u64) -> Result<(usize, usize), LayoutError> {
        if p_prime == 0 || q_prime == 0 {
            return Err(LayoutError::NonPositive { p_prime, q_prime });
        }
        let p =
            usize::try_from(p_prime).map_err(|_| LayoutError::NonPositive { p_prime, q_prime })?;
        let q =
            usize::try_from(q_prime).map_err(|_| LayoutError::NonPositive { p_prime, q_prime })?;
        p.checked_add(q)
            .ok_or(LayoutError::NonPositive { p_prime, q_prime })?;
        Ok((p, q))
    }

    fn with_mapping(p: usize, q: usize, mapping: Vec<usize>) -> Self {
        LayoutPermutation {
            p_prime: p,
            q_prime: q,
            mapping,
            lambda: gcd(p as u64, q as u64) as usize,
        }
    }

    pub fn p_prime(&self) -> usize {
        self.p_prime
    }

    pub fn q_prime(&self) -> usize {
        self.q_prime
    }

    /// Size of the domain, `p' + q' - 1`.
    pub fn n(&self) -> usize {
        self.mapping.len()
    }

    /// `gcd(p', q')`.
    pub fn lambda(&self) -> usize {
        self.lambda
    }

    pub fn mapping(&self) -> &[usize] {
        &self.mapping
    }

    pub fn apply(&self, i: usize) -> usize {
        self.mapping[i]
    }

    /// Cycles of the permutation, each sorted ascending, listed by smallest element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut orbits = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut orbit = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                orbit.push(i);
                i = self.mapping[i];
            }
            orbit.sort_unstable();
            orbits.push(orbit);
        }
        orbits
    }

    /// Whether the permutation is a single cycle through all of `[0, n-1]`.
    pub fn is_cyclic(&self) -> bool {
        let n = self.n();
        let mut i = 0;
        for step in 1..=n {
            i = self.mapping[i];
            if i == 0 {
                return step == n;
            }
        }
        false
    }
}

/// Shorthand for [`LayoutPermutation::new`].
pub fn build_g(p_prime: u64, q_prime: u64) -> Result<LayoutPermutation, LayoutError> {
    LayoutPermutation::new(p_prime, q_prime)
}

/// Whether B(d, n) has an OTIS(d^p', d^(n+1-p'), d) layout, i.e. `gcd(p', n+1) = 1`.
/// Defined for every `p'` in `[0, n+1]`.
pub fn gcd_layout_test(p_prime: u64, n: u64) -> Result<bool, LayoutError> {
    if n < 1 {
        return Err(LayoutError::DimensionTooSmall(n));
    }
    let m = n.checked_add(1).ok_or(LayoutError::DimensionTooLarge(n))?;
    if p_prime > m {
        return Err(LayoutError::PPrimeOutOfRange { p_prime, n });
    }
    Ok(gcd(p_prime, m) == 1)
}

/// Whether H(p, q, d) is a line digraph, i.e. `d | gcd(p, q)`.
pub fn line_digraph_layout_test(params: &OtisParams) -> bool {
    gcd(params.p() as u64, params.q() as u64).is_multiple_of(params.d() as u64)
}

/// How a candidate verdict was reached. The canonical-form comparison is
/// always performed; the other variants name a criterion that predicted the
/// outcome beforehand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Evidence {
    GcdCriterion,
    LineDigraphExclusion,
    CanonicalForm,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CandidateVerdict {
    pub p: u64,
    pub q: u64,
    pub isomorphic: bool,
    pub evidence: Evidence,
    #[serde(skip)]
    pub predicted: Option<bool>,
}

impl CandidateVerdict {
    /// False when a criterion predicted the opposite of the canonical-form outcome.
    pub fn consistent(&self) -> bool {
        self.predicted.is_none_or(|p| p == self.isomorphic)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LayoutReport {
    pub d: u64,
    pub vertices: usize,
    pub candidates: Vec<CandidateVerdict>,
    pub layout_count: usize,
    /// Positive pair minimizing `p + q`, smallest `p` on ties.
    pub min_p_plus_q: Option<(u64, u64)>,
}

impl LayoutReport {
    pub fn positives(&self) -> Vec<(u64, u64)> {
        self.candidates
            .iter()
            .filter(|c| c.isomorphic)
            .map(|c| (c.p, c.q))
            .collect()
    }

    pub fn inconsistencies(&self) -> Vec<(u64, u64)> {
        self.candidates
            .iter()
            .filter(|c| !c.consistent())
            .map(|c| (c.p, c.q))
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Every OTIS(p, q, d) layout of `target`, over all `p * q = d * |V|` in ascending `p`.
pub fn enumerate_layouts(
    target: &MultiDigraph,
    d: u64,
    bound: SizeBound,
) -> Result<LayoutReport, LayoutError> {
    enumerate_with(target, d, None, bound)
}

/// Layouts of B(d, n), with the gcd criterion attached to power-of-`d` candidates.
pub fn enumerate_debruijn_layouts(
    d: u64,
    n: u64,
    bound: SizeBound,
) -> Result<LayoutReport, LayoutError> {
    let target = build_debruijn(&DeBruijnParams::new(d, n)?, bound)?;
    enumerate_with(&target, d, Some(n), bound)
}

fn enumerate_with(
    target: &MultiDigraph,
    d: u64,
    debruijn_dimension: Option<u64>,
    bound: SizeBound,
) -> Result<LayoutReport, LayoutError> {
    if d < 2 {
        return Err(LayoutError::DegreeTooSmall(d));
    }
    if !target.is_d_regular(d) {
        return Err(LayoutError::NotRegular(d));
    }
    bound
        .check(target.vertex_count() as u128)
        .map_err(CanonError::from)?;
    let target_form = canonical_form(target, bound)?;
    let target_is_line = is_nth_line_digraph(target, 1).is_ok_and(|v| v.is_nth_line);
    let processors = d
        .checked_mul(target.vertex_count() as u64)
        .ok_or(OtisError::Overflow)?;

    let candidates = divisors(processors)
        .into_par_iter()
        .map(|p| {
            let q = processors / p;
            let params = OtisParams::new(p, q, d)?;
            let isomorphic = canonical_form(&build_h(&params), bound)? == target_form;
            let gcd_prediction = debruijn_dimension.and_then(|n| {
                let p_prime = log_exact(p, d)?;
                is_power_of(q, d).then(|| gcd_layout_test(p_prime as u64, n).ok())?
            });
            let (evidence, predicted) = if let Some(predicted) = gcd_prediction {
                (Evidence::GcdCriterion, Some(predicted))
            } else if target_is_line && !line_digraph_layout_test(&params) {
                (Evidence::LineDigraphExclusion, Some(false))
            } else {
                (Evidence::CanonicalForm, None)
            };
            Ok(CandidateVerdict {
                p,
                q,
                isomorphic,
                evidence,
                predicted,
            })
        })
        .collect::<Result<Vec<_>, LayoutError>>()?;

    let layout_count = candidates.iter().filter(|c| c.isomorphic).count();
    let min_p_plus_q = candidates
        .iter()
        .filter(|c| c.isomorphic)
        .min_by_key(|c| (c.p + c.q, c.p))
        .map(|c| (c.p, c.q));
    Ok(LayoutReport {
        d,
        vertices: target.vertex_count(),
        candidates,
        layout_count,
        min_p_plus_q,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjectureReport {
    pub d: u64,
    pub n: u64,
    /// No positive pair has a coordinate that is not a power of `d`.
    pub holds: bool,
    pub counterexamples: Vec<(u64, u64)>,
    /// Pairs where the gcd or line-digraph criterion disagreed with the canonical forms.
    pub cross_check_failures: Vec<(u64, u64)>,
    pub report: LayoutReport,
}

impl ConjectureReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Exhaustively tests whether every OTIS(p, q, d) layout of B(d, n) has `p` and `q` powers of `d`.
pub fn check_conjecture(d: u64, n: u64, bound: SizeBound) -> Result<ConjectureReport, LayoutError> {
    let report = enumerate_debruijn_layouts(d, n, bound)?;
    let counterexamples: Vec<_> = report
        .positives()
        .into_iter()
        .filter(|&(p, q)| !is_power_of(p, d) || !is_power_of(q, d))
        .collect();
    Ok(ConjectureReport {
        d,
        n,
        holds: counterexamples.is_empty(),
        counterexamples,
        cross_check_failures: report.inconsistencies(),
        report,
    })
}

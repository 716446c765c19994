//! Spherical filtrations `∂Δ = K_{I_ℓ} ⊊ ... ⊊ K_{I_1} = K` of triangulated spheres, where
//! each `K_{I_i}` is a full subcomplex triangulating a sphere one dimension lower than the
//! previous one, and the classification of spheres of dimension at most 2.

use std::cmp::Ordering;

use dashmap::DashMap;
use rayon::prelude::*;
use serde::Serialize;

use crate::complex::SimplicialComplex;
use crate::cycles::chordless_cycles;
use crate::error::{Error, Result};
use crate::sphere::sphere_recognize_le2;
use crate::tor::Analyzer;
use crate::vertex_set::VertexSet;

/// One term `K_{I_i}` of a filtration, with the dimension of the sphere it triangulates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FiltrationStep {
    pub subset: VertexSet,
    pub dim: usize,
}

/// A spherical filtration listed from `K` downwards.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SphericalFiltration {
    pub steps: Vec<FiltrationStep>,
}

impl SphericalFiltration {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Checks the chain conditions on `k`: strictly decreasing subsets starting at the full
    /// vertex set, dimensions dropping by one, bottom term a simplex boundary on
    /// `dim + 2` vertices, and every term a sphere of its stated dimension. Terms of
    /// dimension at most 2 are recognized combinatorially; higher ones are checked to have
    /// the homology of the stated sphere.
    pub fn verify(&self, k: &SimplicialComplex) -> bool {
        let Some(first) = self.steps.first() else {
            return false;
        };
        if first.subset != k.vertex_set() {
            return false;
        }
        for w in self.steps.windows(2) {
            if !(w[1].subset.is_subset(w[0].subset)
                && w[1].subset != w[0].subset
                && w[1].dim + 1 == w[0].dim)
            {
                return false;
            }
        }
        let last = self.steps.last().unwrap();
        if last.subset.len() != last.dim + 2 {
            return false;
        }
        self.steps.iter().all(|s| {
            let sub = k.full_subcomplex(s.subset).complex;
            if s.dim <= 2 {
                sphere_recognize_le2(&sub) == Some(s.dim)
            } else {
                crate::homology::reduced_homology(&sub).is_sphere_homology(s.dim as isize)
            }
        }) && k.full_subcomplex(last.subset).complex.is_simplex_boundary()
    }
}

/// `filt(K)` with a witness.
#[derive(Clone, Debug, Serialize)]
pub struct Filt {
    pub value: usize,
    /// True when `value` is the exact filtration length, false for a lower bound.
    pub exact: bool,
    pub witness: Option<SphericalFiltration>,
}

/// Exact `filt(K)` for a triangulated sphere of dimension at most 2.
pub fn filt(k: &SimplicialComplex) -> Result<Filt> {
    filt_low(&Analyzer::new(k))
}

/// Exact `filt(K)` by depth-first search over chains of full subcomplexes, for `K`
/// recognized as a sphere of dimension at most 2.
pub fn filt_low(a: &Analyzer) -> Result<Filt> {
    let k = a.complex();
    let d = sphere_recognize_le2(k)
        .ok_or_else(|| Error::NotCertifiedSphere(crate::sphere::sphere_diagnosis(k)))?;
    let search = ChainSearch {
        a,
        memo: DashMap::new(),
    };
    let chain = search
        .best_from_top(k.vertex_set(), d)
        .expect("a recognized sphere has a chain");
    let steps = chain
        .iter()
        .enumerate()
        .map(|(i, s)| FiltrationStep {
            subset: *s,
            dim: d - i,
        })
        .collect();
    Ok(Filt {
        value: chain.len(),
        exact: true,
        witness: Some(SphericalFiltration { steps }),
    })
}

struct ChainSearch<'a, 'b> {
    a: &'a Analyzer<'b>,
    memo: DashMap<VertexSet, Option<Vec<VertexSet>>>,
}

impl ChainSearch<'_, '_> {
    /// Proper subsets `I' ⊂ I` with `K_{I'}` a sphere of dimension `dim - 1`, ordered by
    /// the removed set `I \ I'`.
    fn children(&self, subset: VertexSet, dim: usize) -> Vec<VertexSet> {
        let k = self.a.complex();
        let target = dim as isize - 1;
        let mut out: Vec<VertexSet> = subset
            .subsets()
            .filter(|s| *s != subset && s.len() > dim)
            .filter(|s| self.a.homology(*s).is_sphere_homology(target))
            .filter(|s| sphere_recognize_le2(&k.full_subcomplex(*s).complex) == Some(dim - 1))
            .collect();
        out.sort_by(|x, y| removed_order(subset, *x, *y));
        out
    }

    fn best_from_top(&self, subset: VertexSet, dim: usize) -> Option<Vec<VertexSet>> {
        if dim == 0
            || self
                .a
                .complex()
                .full_subcomplex(subset)
                .complex
                .is_simplex_boundary()
        {
            return self.best(subset, dim);
        }
        // first level in parallel; the first longest chain in candidate order wins
        let children = self.children(subset, dim);
        let found: Vec<Option<Vec<VertexSet>>> = children
            .par_iter()
            .map(|c| self.best(*c, dim - 1))
            .collect();
        let mut best: Option<Vec<VertexSet>> = None;
        for chain in found.into_iter().flatten() {
            if best.as_ref().is_none_or(|b| chain.len() + 1 > b.len()) {
                let mut full = vec![subset];
                full.extend(chain);
                best = Some(full);
            }
        }
        best
    }

    /// Longest chain starting at `K_I`, a sphere of dimension `dim`.
    fn best(&self, subset: VertexSet, dim: usize) -> Option<Vec<VertexSet>> {
        if let Some(hit) = self.memo.get(&subset) {
            return hit.clone();
        }
        let result = if dim == 0
            || self
                .a
                .complex()
                .full_subcomplex(subset)
                .complex
                .is_simplex_boundary()
        {
            // simplex boundaries have no proper full subcomplexes that are spheres
            Some(vec![subset])
        } else {
            let mut best: Option<Vec<VertexSet>> = None;
            for c in self.children(subset, dim) {
                if let Some(chain) = self.best(c, dim - 1) {
                    if best.as_ref().is_none_or(|b| chain.len() + 1 > b.len()) {
                        let mut full = vec![subset];
                        full.extend(chain);
                        let complete = full.len() == dim + 1;
                        best = Some(full);
                        if complete {
                            break;
                        }
                    }
                }
            }
            best
        };
        self.memo.insert(subset, result.clone());
        result
    }
}

fn removed_order(top: VertexSet, x: VertexSet, y: VertexSet) -> Ordering {
    (top - x)
        .cmp(&(top - y))
        .then_with(|| x.bits().cmp(&y.bits()))
}

/// `m` for a sphere of dimension `d <= 2`: 1 for `S^0`; for `d = 1`, 1 iff `K = ∂Δ²` and
/// 2 otherwise; for `d = 2`, 3 if a chordless cycle on 4 or more vertices exists, else 2 if
/// a chordless 3-cycle exists, else 1.
pub fn classify_sphere_d012(k: &SimplicialComplex) -> Result<usize> {
    match sphere_recognize_le2(k) {
        Some(0) => Ok(1),
        Some(1) => Ok(if k.n() == 3 { 1 } else { 2 }),
        Some(2) => {
            let cycles = chordless_cycles(k, 3);
            Ok(if cycles.iter().any(|c| c.len() >= 4) {
                3
            } else if cycles.is_empty() {
                1
            } else {
                2
            })
        }
        _ => Err(Error::NotALowSphere),
    }
}

//! Homology generated by missing faces: every nonempty full subcomplex `K_I` is a simplex,
//! or `H̃_*(K_I)` is torsion-free and generated by the classes of the cycles `∂σ` for
//! the minimal missing faces `σ` of `K_I`. Such complexes have `Cat(Z_K) <= 1`.

use dashu_int::IBig;
use rayon::prelude::*;
use serde::Serialize;

use crate::complex::SimplicialComplex;
use crate::error::Result;
use crate::homology::ChainComplex;
use crate::smith::{invariant_factors, smith_normal_form_with, IntegerMatrix, Track};
use crate::tor::Analyzer;
use crate::vertex_set::VertexSet;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HmfReport {
    pub holds: bool,
    /// First subset, in ascending bit order, where the condition fails.
    pub failure: Option<HmfFailure>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HmfFailure {
    pub subset: VertexSet,
    pub reason: String,
}

pub fn hmf_check(k: &SimplicialComplex) -> Result<HmfReport> {
    hmf_check_with(&Analyzer::new(k))
}

pub fn hmf_check_with(a: &Analyzer) -> Result<HmfReport> {
    a.check_limit()?;
    let k = a.complex();
    let missing = k.missing_faces();
    let subsets: Vec<VertexSet> = k.vertex_set().subsets().filter(|s| !s.is_empty()).collect();
    let failure = subsets
        .par_iter()
        .map(|s| subset_failure(a, &missing, *s).map(|reason| HmfFailure { subset: *s, reason }))
        .find_map_first(|f| f);
    Ok(HmfReport {
        holds: failure.is_none(),
        failure,
    })
}

fn subset_failure(a: &Analyzer, missing: &[VertexSet], subset: VertexSet) -> Option<String> {
    let k = a.complex();
    if k.contains_face(subset) {
        return None;
    }
    let profile = a.homology(subset);
    if !profile.is_torsion_free() {
        return Some(format!("H̃(K_I) has torsion: {profile}"));
    }
    let chain = ChainComplex::new(&k.restrict(subset));
    let local: Vec<VertexSet> = missing
        .iter()
        .copied()
        .filter(|m| m.is_subset(subset))
        .collect();
    for p in profile.nonzero_degrees() {
        let beta = profile.rank(p);
        let cycles: Vec<VertexSet> = local
            .iter()
            .copied()
            .filter(|m| m.len() as isize == p + 2)
            .collect();
        if cycles.len() < beta {
            return Some(format!("too few missing-face cycles in degree {p}"));
        }
        // U·∂_{p+1}·V = D with all nonzero d_i = 1; rows r.. of U coordinatize H̃_p
        let snf = smith_normal_form_with(
            &chain.boundary(p + 1),
            Track {
                left: true,
                ..Track::NONE
            },
        );
        let u = snf.u.expect("left transform requested");
        let coords = u.row_block(snf.rank, u.rows());
        let mut gens = IntegerMatrix::zeros(cycles.len(), coords.rows());
        for (row, sigma) in cycles.iter().enumerate() {
            let z = boundary_chain(&chain, p, *sigma);
            for (col, y) in coords.mul_vec(&z).into_iter().enumerate() {
                gens.set(row, col, y);
            }
        }
        let factors = invariant_factors(&gens);
        if factors.len() != beta || factors.iter().any(|d| !d.is_one()) {
            return Some(format!("missing-face cycles do not generate H̃_{p}"));
        }
    }
    None
}

/// `∂σ` as a `p`-chain, `|σ| = p + 2`.
fn boundary_chain(chain: &ChainComplex, p: isize, sigma: VertexSet) -> Vec<IBig> {
    let mut z = vec![IBig::ZERO; chain.rank(p)];
    for (i, v) in sigma.iter().enumerate() {
        let idx = chain
            .index_of(sigma.without(v))
            .expect("proper faces of a missing face are faces");
        z[idx] = if i % 2 == 0 { IBig::ONE } else { -IBig::ONE };
    }
    z
}

//! Well-behaved sphere triangulations. For all `I, J ⊆ [n]` and `k < d`:
//!
//! 1. if `|K_I| ≅ S^k` and `K_I ⊆ K_J` with `|K_J| ≅ S^{k+1}`, then `|K_{J-I}| ≃ S^0`;
//! 2. if `H_*(K_I) ≅ H_*(S^k)`, some `K_{I'} ⊆ K_I` has `|K_{I'}| ≅ S^k`;
//! 3. if `I` is a nonempty face, `K_{[n]-I}` is contractible;
//! 4. every `H_*(K_I)` is torsion-free.
//!
//! Homotopy conditions are checked through sufficient combinatorial conditions: component
//! counts, vanishing homology, and collapsibility. When homology agrees but no collapse is
//! found the check is reported as inconclusive instead of failing.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::complex::SimplicialComplex;
use crate::cycles::adjacency;
use crate::error::{Error, Result};
use crate::sphere::{sphere_diagnosis, sphere_recognize_le2};
use crate::tor::Analyzer;
use crate::vertex_set::VertexSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    Fails,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionNote {
    pub condition: u8,
    pub subsets: Vec<VertexSet>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WellBehavedReport {
    pub verdict: Verdict,
    pub dim: usize,
    /// First failing condition, in the order (4), (1), (2), (3).
    pub failure: Option<ConditionNote>,
    pub inconclusive: Vec<ConditionNote>,
}

pub fn well_behaved_check(k: &SimplicialComplex) -> Result<WellBehavedReport> {
    well_behaved_with(&Analyzer::new(k))
}

pub fn well_behaved_with(a: &Analyzer) -> Result<WellBehavedReport> {
    a.check_limit()?;
    let k = a.complex();
    let d =
        sphere_recognize_le2(k).ok_or_else(|| Error::NotCertifiedSphere(sphere_diagnosis(k)))?;
    let all: Vec<VertexSet> = k.vertex_set().subsets().collect();
    let report = |failure: ConditionNote| WellBehavedReport {
        verdict: Verdict::Fails,
        dim: d,
        failure: Some(failure),
        inconclusive: Vec::new(),
    };

    // (4)
    if let Some(s) = all
        .par_iter()
        .find_first(|s| !a.homology(**s).is_torsion_free())
    {
        return Ok(report(ConditionNote {
            condition: 4,
            subsets: vec![*s],
            detail: format!("torsion in H̃(K_I) = {}", a.homology(*s)),
        }));
    }

    // spheres[k] lists the I with |K_I| ≅ S^k, for k <= d
    let recognized: Vec<(VertexSet, usize)> = all
        .par_iter()
        .filter(|s| s.len() >= 2)
        .filter_map(|s| {
            let top = a.homology(*s).top_degree();
            if top < 0 || top as usize > d || !a.homology(*s).is_sphere_homology(top) {
                return None;
            }
            sphere_recognize_le2(&k.full_subcomplex(*s).complex).map(|dim| (*s, dim))
        })
        .collect();
    let mut spheres: Vec<Vec<VertexSet>> = vec![Vec::new(); d + 1];
    for (s, dim) in recognized {
        spheres[dim].push(s);
    }

    let mut inconclusive = Vec::new();

    // (1)
    for dim in 0..d {
        for i in &spheres[dim] {
            for j in spheres[dim + 1].iter().filter(|j| i.is_subset(**j)) {
                match s0_check(k, a, *j - *i) {
                    Check::Yes => {}
                    Check::No(detail) => {
                        return Ok(report(ConditionNote {
                            condition: 1,
                            subsets: vec![*i, *j],
                            detail,
                        }));
                    }
                    Check::Unknown(detail) => inconclusive.push(ConditionNote {
                        condition: 1,
                        subsets: vec![*i, *j],
                        detail,
                    }),
                }
            }
        }
    }

    // (2)
    for s in &all {
        let profile = a.homology(*s);
        for dim in 0..d {
            if profile.is_sphere_homology(dim as isize)
                && !spheres[dim].iter().any(|t| t.is_subset(*s))
            {
                return Ok(report(ConditionNote {
                    condition: 2,
                    subsets: vec![*s],
                    detail: format!(
                        "homology of S^{dim} but no {dim}-sphere full subcomplex inside"
                    ),
                }));
            }
        }
    }

    // (3)
    for face in k.faces().into_iter().filter(|f| !f.is_empty()) {
        let rest = k.vertex_set() - face;
        match contractible(k, a, rest) {
            Check::Yes => {}
            Check::No(detail) => {
                return Ok(report(ConditionNote {
                    condition: 3,
                    subsets: vec![face],
                    detail,
                }));
            }
            Check::Unknown(detail) => inconclusive.push(ConditionNote {
                condition: 3,
                subsets: vec![face],
                detail,
            }),
        }
    }

    let verdict = if inconclusive.is_empty() {
        Verdict::Holds
    } else {
        Verdict::Inconclusive
    };
    Ok(WellBehavedReport {
        verdict,
        dim: d,
        failure: None,
        inconclusive,
    })
}

enum Check {
    Yes,
    No(String),
    Unknown(String),
}

/// `|K_S| ≃ S^0`: exactly two components, each contractible.
fn s0_check(k: &SimplicialComplex, a: &Analyzer, subset: VertexSet) -> Check {
    if !a.homology(subset).is_sphere_homology(0) {
        return Check::No(format!("H̃(K_(J-I)) = {}", a.homology(subset)));
    }
    let parts = components(k, subset);
    if parts.len() != 2 {
        return Check::No(format!("{} components", parts.len()));
    }
    let mut unknown = None;
    for part in parts {
        match contractible(k, a, part) {
            Check::Yes => {}
            Check::No(detail) => return Check::No(detail),
            Check::Unknown(detail) => unknown = Some(detail),
        }
    }
    unknown.map_or(Check::Yes, Check::Unknown)
}

fn contractible(k: &SimplicialComplex, a: &Analyzer, subset: VertexSet) -> Check {
    if subset.is_empty() {
        return Check::No("empty complement".into());
    }
    let profile = a.homology(subset);
    if !profile.is_acyclic() {
        return Check::No(format!("H̃ = {profile}"));
    }
    if collapses_to_point(&k.restrict(subset)) {
        Check::Yes
    } else {
        Check::Unknown(format!("acyclic on {subset} but no collapse found"))
    }
}

/// Connected components of `K_S`, ordered by smallest vertex.
pub fn components(k: &SimplicialComplex, subset: VertexSet) -> Vec<VertexSet> {
    let adj = adjacency(k);
    let mut left = subset;
    let mut out = Vec::new();
    while let Some(start) = left.min() {
        let mut comp = VertexSet::singleton(start);
        let mut frontier = comp;
        while let Some(v) = frontier.min() {
            frontier = frontier.without(v);
            let fresh = (adj[v] & subset) - comp;
            comp = comp | fresh;
            frontier = frontier | fresh;
        }
        left = left - comp;
        out.push(comp);
    }
    out
}

/// Greedy elementary collapses; true when a single vertex remains. A tree always collapses;
/// for higher-dimensional complexes a false result is not a proof of non-collapsibility.
pub fn collapses_to_point(k: &SimplicialComplex) -> bool {
    let mut faces: HashSet<VertexSet> = k.faces().into_iter().filter(|f| !f.is_empty()).collect();
    loop {
        if faces.len() == 1 {
            return true;
        }
        let mut step = None;
        let mut sorted: Vec<VertexSet> = faces.iter().copied().collect();
        sorted.sort();
        'search: for sigma in &sorted {
            if sigma.len() < 2
                || faces
                    .iter()
                    .any(|t| t.len() == sigma.len() + 1 && sigma.is_subset(*t))
            {
                continue;
            }
            for v in sigma.iter() {
                let tau = sigma.without(v);
                let cofaces = faces
                    .iter()
                    .filter(|t| t.len() == sigma.len() && tau.is_subset(**t))
                    .count();
                if cofaces == 1 {
                    step = Some((*sigma, tau));
                    break 'search;
                }
            }
        }
        match step {
            Some((sigma, tau)) => {
                faces.remove(&sigma);
                faces.remove(&tau);
            }
            None => return false,
        }
    }
}

//! Memoized homology of full subcomplexes.
//!
//! Entries are keyed by the complex fingerprint and the vertex subset. Concurrent inserts
//! of the same key are harmless: both writers computed the same value and the first one
//! stored is kept.

use std::sync::Arc;

use dashmap::DashMap;

use crate::cochain::Cohomology;
use crate::complex::SimplicialComplex;
use crate::homology::{reduced_homology, HomologyProfile};
use crate::vertex_set::VertexSet;

#[derive(Debug, Default)]
pub struct SubsetCache {
    profiles: DashMap<(u64, VertexSet), Arc<HomologyProfile>>,
    cohomology: DashMap<(u64, VertexSet), Arc<Cohomology>>,
}

impl SubsetCache {
    pub fn new() -> Self {
        Self::default()
    }

    /// `H̃_*(K_I)`.
    pub fn homology(
        &self,
        k: &SimplicialComplex,
        fingerprint: u64,
        subset: VertexSet,
    ) -> Arc<HomologyProfile> {
        let key = (fingerprint, subset);
        if let Some(hit) = self.profiles.get(&key) {
            return hit.clone();
        }
        let profile = if let Some(c) = self.cohomology.get(&key) {
            c.homology().clone()
        } else {
            subset_homology(k, subset)
        };
        self.profiles
            .entry(key)
            .or_insert_with(|| Arc::new(profile))
            .clone()
    }

    /// Cocycle-level cohomology of `K_I`, in the ambient labels of `K`.
    pub fn cohomology(
        &self,
        k: &SimplicialComplex,
        fingerprint: u64,
        subset: VertexSet,
    ) -> Arc<Cohomology> {
        let key = (fingerprint, subset);
        if let Some(hit) = self.cohomology.get(&key) {
            return hit.clone();
        }
        let c = Cohomology::new(&k.restrict(subset));
        self.cohomology
            .entry(key)
            .or_insert_with(|| Arc::new(c))
            .clone()
    }

    pub fn len(&self) -> usize {
        self.profiles.len() + self.cohomology.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Homology of `K_I`, short-circuiting when `K_I` is a simplex or a cone.
pub fn subset_homology(k: &SimplicialComplex, subset: VertexSet) -> HomologyProfile {
    if !subset.is_empty() && (k.contains_face(subset) || has_cone_point(k, subset)) {
        return HomologyProfile::from_groups(Vec::new());
    }
    reduced_homology(&k.restrict(subset))
}

/// True if some `x ∈ I` lies in every facet of `K_I`, i.e. `(σ ∩ I) ∪ {x} ∈ K` for every
/// facet `σ` of `K`.
pub fn has_cone_point(k: &SimplicialComplex, subset: VertexSet) -> bool {
    let facets = k.facets();
    let mut candidates = subset;
    for f in facets {
        let t = *f & subset;
        // vertices x with t ∪ {x} a face
        let extend = facets
            .iter()
            .filter(|g| t.is_subset(**g))
            .fold(VertexSet::EMPTY, |acc, g| acc | *g);
        candidates = candidates & extend;
        if candidates.is_empty() {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use rayon::prelude::*;

    #[test]
    fn cone_points() {
        let k = SimplicialComplex::polygon(5);
        assert!(has_cone_point(&k, VertexSet::from_labels([1, 2, 3])));
        assert!(!has_cone_point(&k, VertexSet::from_labels([1, 3])));
        assert!(!has_cone_point(&k, k.vertex_set()));
        let w = SimplicialComplex::polygon(4)
            .simplicial_wedge(&[2, 1, 1, 1])
            .unwrap()
            .complex;
        // one copy of the doubled vertex without the other
        assert!(has_cone_point(&w, VertexSet::from_labels([1, 3, 5])));
        for s in w.vertex_set().subsets() {
            if has_cone_point(&w, s) {
                assert!(reduced_homology(&w.restrict(s)).is_acyclic(), "{s}");
            }
        }
    }

    #[test]
    fn concurrent_lookups_agree_and_store_once() {
        let k = SimplicialComplex::polygon(6);
        let fp = k.fingerprint();
        let cache = SubsetCache::new();
        let subsets: Vec<VertexSet> = k.vertex_set().subsets().collect();
        let first: Vec<_> = subsets
            .par_iter()
            .map(|s| cache.homology(&k, fp, *s))
            .collect();
        let second: Vec<_> = subsets
            .par_iter()
            .map(|s| cache.homology(&k, fp, *s))
            .collect();
        assert_eq!(first, second);
        assert_eq!(cache.len(), 64);
        assert_eq!(first[0b010101].rank(0), 2);
    }

    #[test]
    fn face_shortcut_matches_direct_computation() {
        let k = SimplicialComplex::simplex_boundary(4);
        for s in k.vertex_set().subsets() {
            assert_eq!(subset_homology(&k, s), reduced_homology(&k.restrict(s)));
        }
    }
}

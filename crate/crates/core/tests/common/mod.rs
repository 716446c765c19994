#![allow(dead_code)]

use macx_core::{SimplicialComplex, VertexSet};
use proptest::prelude::*;

/// A complex on `lo..=hi` vertices, generated by a few random faces plus every vertex.
pub fn complex(lo: usize, hi: usize) -> impl Strategy<Value = SimplicialComplex> {
    (lo..=hi).prop_flat_map(|n| {
        prop::collection::vec(1u64..(1u64 << n), 1..6).prop_map(move |masks| {
            let faces = masks
                .into_iter()
                .map(VertexSet::from_bits)
                .chain((1..=n).map(VertexSet::singleton));
            SimplicialComplex::new(n, faces).unwrap()
        })
    })
}

/// A permutation of `1..=n` in the `relabel` convention (entry 0 unused).
pub fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((1..=n).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|p| std::iter::once(0).chain(p).collect())
}

pub fn spheres_le2() -> Vec<SimplicialComplex> {
    let mut out = vec![macx_core::fixtures::s0()];
    out.extend((3..=7).map(SimplicialComplex::polygon));
    out.extend((4..=7).flat_map(macx_core::fixtures::two_spheres));
    out
}

//! Recognition of triangulated spheres of dimension 0, 1 and 2.
//!
//! In these dimensions the combinatorial conditions below characterise spheres exactly:
//! a closed connected surface whose vertex links are cycles is a 2-manifold, and
//! Euler characteristic 2 singles out the sphere.

use std::collections::HashMap;

use crate::complex::SimplicialComplex;
use crate::cycles::adjacency;
use crate::vertex_set::VertexSet;

/// Returns `Some(d)` if `K` triangulates `S^d` with `d <= 2`, `None` otherwise (including
/// every complex of dimension 3 or more).
pub fn sphere_recognize_le2(k: &SimplicialComplex) -> Option<usize> {
    if !k.ghost_vertices().is_empty() || k.n() < 2 {
        return None;
    }
    match k.dim() {
        0 => (k.n() == 2).then_some(0),
        1 => is_cycle_graph(k).then_some(1),
        2 => is_two_sphere(k).then_some(2),
        _ => None,
    }
}

/// Diagnosis for a negative verdict, used for report text.
pub fn sphere_diagnosis(k: &SimplicialComplex) -> String {
    if let Some(d) = sphere_recognize_le2(k) {
        return format!("triangulated {d}-sphere");
    }
    if !k.ghost_vertices().is_empty() {
        return "has ghost vertices".into();
    }
    match k.dim() {
        d if d > 2 => format!("dimension {d} exceeds the recognizable range"),
        2 if k.is_pure()
            && is_closed_pseudo_surface(k)
            && links_are_cycles(k)
            && is_connected(k) =>
        {
            format!("not a sphere (χ={})", k.euler_characteristic())
        }
        _ => "not a sphere".into(),
    }
}

fn is_connected(k: &SimplicialComplex) -> bool {
    if k.n() == 0 {
        return false;
    }
    let adj = adjacency(k);
    let mut seen = VertexSet::singleton(1);
    let mut frontier = seen;
    while !frontier.is_empty() {
        let mut next = VertexSet::EMPTY;
        for v in frontier.iter() {
            next = next | adj[v];
        }
        frontier = next - seen;
        seen = seen | next;
    }
    seen == k.vertex_set()
}

fn is_cycle_graph(k: &SimplicialComplex) -> bool {
    if !k.is_pure() || k.n() < 3 {
        return false;
    }
    let adj = adjacency(k);
    (1..=k.n()).all(|v| adj[v].len() == 2) && is_connected(k)
}

fn is_closed_pseudo_surface(k: &SimplicialComplex) -> bool {
    let mut edge_count: HashMap<VertexSet, usize> = HashMap::new();
    for t in k.facets() {
        for v in t.iter() {
            *edge_count.entry(t.without(v)).or_default() += 1;
        }
    }
    edge_count.values().all(|&c| c == 2)
}

fn links_are_cycles(k: &SimplicialComplex) -> bool {
    (1..=k.n()).all(|v| {
        let link = k
            .link(VertexSet::singleton(v))
            .expect("vertex is a face")
            .compact()
            .complex;
        link.dim() == 1 && is_cycle_graph(&link)
    })
}

fn is_two_sphere(k: &SimplicialComplex) -> bool {
    k.is_pure()
        && is_closed_pseudo_surface(k)
        && is_connected(k)
        && links_are_cycles(k)
        && k.euler_characteristic() == 2
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    fn s0() -> SimplicialComplex {
        SimplicialComplex::from_lists(2, &[&[1], &[2]]).unwrap()
    }

    pub(crate) fn rp2() -> SimplicialComplex {
        SimplicialComplex::from_lists(
            6,
            &[
                &[1, 2, 4],
                &[1, 2, 5],
                &[1, 3, 4],
                &[1, 3, 6],
                &[1, 5, 6],
                &[2, 3, 5],
                &[2, 3, 6],
                &[2, 4, 6],
                &[3, 4, 5],
                &[4, 5, 6],
            ],
        )
        .unwrap()
    }

    #[test]
    fn recognizes_low_spheres() {
        assert_eq!(sphere_recognize_le2(&s0()), Some(0));
        assert_eq!(
            sphere_recognize_le2(&SimplicialComplex::polygon(5)),
            Some(1)
        );
        assert_eq!(
            sphere_recognize_le2(&SimplicialComplex::simplex_boundary(4)),
            Some(2)
        );
        let oct = s0().join(&s0()).join(&s0());
        assert_eq!(sphere_recognize_le2(&oct), Some(2));
        assert_eq!(
            sphere_recognize_le2(&SimplicialComplex::polygon(4).join(&s0())),
            Some(2)
        );
    }

    #[test]
    fn rejects_non_spheres() {
        assert_eq!(sphere_recognize_le2(&SimplicialComplex::simplex(3)), None);
        assert_eq!(sphere_recognize_le2(&SimplicialComplex::simplex(1)), None);
        assert_eq!(
            sphere_recognize_le2(&SimplicialComplex::simplex_boundary(5)),
            None
        );
        let two_triangles =
            SimplicialComplex::polygon(3).disjoint_union(&SimplicialComplex::polygon(3));
        assert_eq!(sphere_recognize_le2(&two_triangles), None);
        let three_points = SimplicialComplex::from_lists(3, &[&[1], &[2], &[3]]).unwrap();
        assert_eq!(sphere_recognize_le2(&three_points), None);
    }

    #[test]
    fn projective_plane_is_a_closed_surface_with_euler_characteristic_one() {
        let k = rp2();
        assert_eq!(k.euler_characteristic(), 1);
        assert!(is_closed_pseudo_surface(&k) && links_are_cycles(&k));
        assert_eq!(sphere_recognize_le2(&k), None);
        assert_eq!(sphere_diagnosis(&k), "not a sphere (χ=1)");
    }

    #[test]
    fn two_spheres_sharing_a_vertex_fail_link_condition() {
        // two tetrahedron boundaries glued at vertex 1
        let k = SimplicialComplex::from_lists(
            7,
            &[
                &[1, 2, 3],
                &[1, 2, 4],
                &[1, 3, 4],
                &[2, 3, 4],
                &[1, 5, 6],
                &[1, 5, 7],
                &[1, 6, 7],
                &[5, 6, 7],
            ],
        )
        .unwrap();
        assert!(is_closed_pseudo_surface(&k));
        assert_eq!(sphere_recognize_le2(&k), None);
    }
}

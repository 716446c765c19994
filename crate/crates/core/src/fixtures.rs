//! Named complexes and polytopes, and the census of triangulated 2-spheres on few vertices.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::complex::SimplicialComplex;
use crate::io::{dual_boundary, PolytopeDocument};
use crate::vertex_set::VertexSet;

pub fn s0() -> SimplicialComplex {
    SimplicialComplex::from_lists(2, &[&[1], &[2]]).unwrap()
}

/// `S^0 * S^0 * S^0` on the pairs `{1,2}, {3,4}, {5,6}`.
pub fn octahedron() -> SimplicialComplex {
    s0().join(&s0()).join(&s0())
}

/// `S^0 * ∂Δ²`, which is also `∂Δ³ # ∂Δ³`.
pub fn bipyramid() -> SimplicialComplex {
    s0().join(&SimplicialComplex::polygon(3))
}

/// The 6-vertex real projective plane.
pub fn rp2() -> SimplicialComplex {
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

pub fn tetrahedron_polytope() -> PolytopeDocument {
    PolytopeDocument {
        name: Some("tetrahedron".into()),
        faces: vec![vec![1, 2, 3], vec![1, 2, 4], vec![1, 3, 4], vec![2, 3, 4]],
    }
}

pub fn cube_polytope() -> PolytopeDocument {
    PolytopeDocument {
        name: Some("cube".into()),
        faces: vec![
            vec![1, 2, 3, 4],
            vec![5, 6, 7, 8],
            vec![1, 2, 6, 5],
            vec![2, 3, 7, 6],
            vec![3, 4, 8, 7],
            vec![4, 1, 5, 8],
        ],
    }
}

/// Outer pentagon `a_i = i`, spokes `b_i = 5 + i`, middle ring `c_i = 10 + i`, inner
/// pentagon `d_i = 15 + i` for `i = 1..=5`.
pub fn dodecahedron_polytope() -> PolytopeDocument {
    let (a, b, c, d) = (
        |i: usize| 1 + i % 5,
        |i: usize| 6 + i % 5,
        |i: usize| 11 + i % 5,
        |i: usize| 16 + i % 5,
    );
    let mut faces = vec![(0..5).map(a).collect::<Vec<_>>(), (0..5).map(d).collect()];
    for i in 0..5 {
        faces.push(vec![a(i), a(i + 1), b(i + 1), c(i), b(i)]);
        faces.push(vec![c(i), b(i + 1), c(i + 1), d(i + 1), d(i)]);
    }
    PolytopeDocument {
        name: Some("dodecahedron".into()),
        faces,
    }
}

pub fn icosahedron() -> SimplicialComplex {
    dual_boundary(&dodecahedron_polytope()).expect("the dodecahedron is simple")
}

/// Triangulated 2-spheres on `n` vertices, one per isomorphism class, in canonical form and
/// sorted. Every triangulation other than `∂Δ³` arises from one with a vertex fewer by
/// splitting a vertex, so the census grows from `∂Δ³`.
pub fn two_spheres(n: usize) -> Vec<SimplicialComplex> {
    if n < 4 {
        return Vec::new();
    }
    let mut level: BTreeSet<Vec<VertexSet>> = BTreeSet::new();
    level.insert(canonical_form(&SimplicialComplex::simplex_boundary(4)));
    for m in 4..n {
        let mut next = BTreeSet::new();
        for facets in &level {
            let k = SimplicialComplex::new(m, facets.iter().copied()).unwrap();
            for split in vertex_splits(&k) {
                next.insert(canonical_form(&split));
            }
        }
        level = next;
    }
    level
        .into_iter()
        .map(|f| SimplicialComplex::new(n, f).unwrap())
        .collect()
}

/// Orients the facets of a triangulated 2-sphere coherently, as cyclic triples.
fn oriented_triangles(k: &SimplicialComplex) -> Vec<[usize; 3]> {
    let facets = k.facets();
    let mut by_edge: HashMap<VertexSet, Vec<usize>> = HashMap::new();
    for (i, f) in facets.iter().enumerate() {
        for v in f.iter() {
            by_edge.entry(f.without(v)).or_default().push(i);
        }
    }
    let mut oriented: Vec<Option<[usize; 3]>> = vec![None; facets.len()];
    let first = facets[0].to_vec();
    oriented[0] = Some([first[0], first[1], first[2]]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        let t = oriented[i].unwrap();
        for e in 0..3 {
            let (p, q) = (t[e], t[(e + 1) % 3]);
            let edge = VertexSet::from_labels([p, q]);
            for &j in &by_edge[&edge] {
                if oriented[j].is_none() {
                    let r = (facets[j] - edge).min().unwrap();
                    oriented[j] = Some([q, p, r]);
                    queue.push_back(j);
                }
            }
        }
    }
    oriented
        .into_iter()
        .map(|t| t.expect("spheres are connected"))
        .collect()
}

/// `rotation[x]` maps each neighbour `a` of `x` to the next neighbour around `x`.
fn rotations(k: &SimplicialComplex) -> Vec<HashMap<usize, usize>> {
    let mut rot = vec![HashMap::new(); k.n() + 1];
    for t in oriented_triangles(k) {
        for i in 0..3 {
            rot[t[i]].insert(t[(i + 1) % 3], t[(i + 2) % 3]);
        }
    }
    rot
}

/// Lexicographically least relabeled facet list over all labelings grown breadth-first
/// from a directed edge, in either orientation. Triangulated 2-spheres embed uniquely, so
/// equal forms mean isomorphic complexes.
pub fn canonical_form(k: &SimplicialComplex) -> Vec<VertexSet> {
    let forward = rotations(k);
    let backward: Vec<HashMap<usize, usize>> = forward
        .iter()
        .map(|r| r.iter().map(|(a, b)| (*b, *a)).collect())
        .collect();
    let mut best: Option<Vec<VertexSet>> = None;
    for rot in [&forward, &backward] {
        for u in 1..=k.n() {
            for &v in rot[u].keys() {
                let code = grow_labels(k, rot, u, v);
                if best.as_ref().is_none_or(|b| code < *b) {
                    best = Some(code);
                }
            }
        }
    }
    best.unwrap_or_default()
}

fn grow_labels(
    k: &SimplicialComplex,
    rot: &[HashMap<usize, usize>],
    u: usize,
    v: usize,
) -> Vec<VertexSet> {
    let n = k.n();
    let mut label = vec![0usize; n + 1];
    let mut order = vec![u];
    label[u] = 1;
    let mut i = 0;
    while i < order.len() {
        let x = order[i];
        let start = if x == u {
            v
        } else {
            *rot[x]
                .keys()
                .filter(|a| label[**a] > 0)
                .min_by_key(|a| label[**a])
                .unwrap()
        };
        let mut a = start;
        loop {
            if label[a] == 0 {
                order.push(a);
                label[a] = order.len();
            }
            a = rot[x][&a];
            if a == start {
                break;
            }
        }
        i += 1;
    }
    let mut code: Vec<VertexSet> = k.facets().iter().map(|f| f.relabel(&label)).collect();
    code.sort();
    code
}

/// All complexes obtained by splitting one vertex `x` along two of its neighbours.
fn vertex_splits(k: &SimplicialComplex) -> Vec<SimplicialComplex> {
    let rot = rotations(k);
    let n = k.n();
    let y = n + 1;
    let mut out = Vec::new();
    for x in 1..=n {
        let start = *rot[x].keys().min().unwrap();
        let mut cycle = vec![start];
        while rot[x][cycle.last().unwrap()] != start {
            let next = rot[x][cycle.last().unwrap()];
            cycle.push(next);
        }
        let d = cycle.len();
        let kept: Vec<VertexSet> = k
            .facets()
            .iter()
            .copied()
            .filter(|f| !f.contains(x))
            .collect();
        for i in 0..d {
            for j in 0..d {
                if i == j {
                    continue;
                }
                let mut facets = kept.clone();
                // x keeps the arc from cycle[i] to cycle[j], y takes the arc back
                let mut s = i;
                while s != j {
                    facets.push(VertexSet::from_labels([x, cycle[s], cycle[(s + 1) % d]]));
                    s = (s + 1) % d;
                }
                while s != i {
                    facets.push(VertexSet::from_labels([y, cycle[s], cycle[(s + 1) % d]]));
                    s = (s + 1) % d;
                }
                facets.push(VertexSet::from_labels([x, y, cycle[i]]));
                facets.push(VertexSet::from_labels([x, y, cycle[j]]));
                if let Ok(c) = SimplicialComplex::new(y, facets) {
                    if crate::sphere::sphere_recognize_le2(&c) == Some(2) {
                        out.push(c);
                    }
                }
            }
        }
    }
    out
}

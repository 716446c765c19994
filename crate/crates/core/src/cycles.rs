//! Chordless cycles (full subcomplexes that are polygons) and chordality.

use crate::complex::SimplicialComplex;
use crate::vertex_set::VertexSet;

/// Neighbourhoods in the 1-skeleton; `adj[v]` for `v` in `1..=n`, index 0 unused.
pub fn adjacency(k: &SimplicialComplex) -> Vec<VertexSet> {
    let mut adj = vec![VertexSet::EMPTY; k.n() + 1];
    for f in k.facets() {
        for v in f.iter() {
            adj[v] = adj[v] | f.without(v);
        }
    }
    adj
}

/// All `I` such that `K_I` is an `m`-gon with `m >= max(3, min_len)`, sorted by size and
/// then lexicographically. A 3-vertex set qualifies when its three edges are in `K` but
/// the triangle is not.
pub fn chordless_cycles(k: &SimplicialComplex, min_len: usize) -> Vec<VertexSet> {
    let adj = adjacency(k);
    let mut out = Vec::new();
    if min_len <= 3 {
        for a in 1..=k.n() {
            for b in adj[a].iter().filter(|&b| b > a) {
                for c in (adj[a] & adj[b]).iter().filter(|&c| c > b) {
                    let t = VertexSet::from_labels([a, b, c]);
                    if !k.contains_face(t) {
                        out.push(t);
                    }
                }
            }
        }
    }
    induced_cycles(&adj, k.n(), min_len.max(4), usize::MAX, &mut out);
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

/// True iff the complex has no chordless cycle on 4 or more vertices.
pub fn is_chordal(k: &SimplicialComplex) -> bool {
    let adj = adjacency(k);
    let mut found = Vec::new();
    induced_cycles(&adj, k.n(), 4, 1, &mut found);
    found.is_empty()
}

/// Induced cycles of length `>= min_len` (`min_len >= 4`), stopping after `limit` finds.
///
/// Each cycle is generated once: from its smallest vertex `s`, in the direction whose
/// second vertex is smaller than its last.
fn induced_cycles(
    adj: &[VertexSet],
    n: usize,
    min_len: usize,
    limit: usize,
    out: &mut Vec<VertexSet>,
) {
    let mut search = CycleSearch {
        adj,
        min_len,
        limit,
        found: 0,
        out,
    };
    for s in 1..=n {
        let above = VertexSet::full(n) - VertexSet::full(s);
        for p1 in (adj[s] & above).iter() {
            let mut path = vec![s, p1];
            search.extend(above, &mut path, VertexSet::EMPTY);
            if search.found >= limit {
                return;
            }
        }
    }
}

struct CycleSearch<'a> {
    adj: &'a [VertexSet],
    min_len: usize,
    limit: usize,
    found: usize,
    out: &'a mut Vec<VertexSet>,
}

impl CycleSearch<'_> {
    /// `path` is an induced path `s, p1, ..., tip` whose vertices after `p1` avoid `N(s)`;
    /// `blocked` is the union of the neighbourhoods of `p1, ..., p_{k-1}`.
    fn extend(&mut self, above: VertexSet, path: &mut Vec<usize>, blocked: VertexSet) {
        let s = path[0];
        let tip = *path.last().unwrap();
        let on_path: VertexSet = path.iter().copied().collect();
        for w in ((self.adj[tip] & above) - on_path - blocked).iter() {
            if self.adj[s].contains(w) {
                // closes a cycle of length path.len() + 1; length 3 is a triangle
                if path.len() >= 3 && path.len() + 1 >= self.min_len && path[1] < w {
                    self.out.push(on_path.with(w));
                    self.found += 1;
                    if self.found >= self.limit {
                        return;
                    }
                }
                continue;
            }
            path.push(w);
            self.extend(above, path, blocked | self.adj[tip]);
            path.pop();
            if self.found >= self.limit {
                return;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_force(k: &SimplicialComplex, min_len: usize) -> Vec<VertexSet> {
        let mut out: Vec<VertexSet> = k
            .vertex_set()
            .subsets()
            .filter(|s| s.len() >= min_len.max(3))
            .filter(|s| is_polygon(&k.full_subcomplex(*s).complex))
            .collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }

    fn is_polygon(k: &SimplicialComplex) -> bool {
        if k.dim() != 1 || !k.is_pure() || !k.ghost_vertices().is_empty() {
            return false;
        }
        let adj = adjacency(k);
        if (1..=k.n()).any(|v| adj[v].len() != 2) {
            return false;
        }
        // connected
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
        seen.len() == k.n()
    }

    fn octahedron() -> SimplicialComplex {
        let s0 = SimplicialComplex::from_lists(2, &[&[1], &[2]]).unwrap();
        s0.join(&s0).join(&s0)
    }

    #[test]
    fn square_has_exactly_itself() {
        let sq = SimplicialComplex::polygon(4);
        assert_eq!(chordless_cycles(&sq, 3), vec![sq.vertex_set()]);
        assert!(!is_chordal(&sq));
    }

    #[test]
    fn octahedron_has_equators_but_no_empty_triangle() {
        let oct = octahedron();
        let cycles = chordless_cycles(&oct, 3);
        assert_eq!(cycles, brute_force(&oct, 3));
        assert!(cycles.iter().all(|c| c.len() == 4));
        assert_eq!(cycles.len(), 3);
        assert!(cycles.contains(&VertexSet::from_labels([1, 2, 3, 4])));
    }

    #[test]
    fn empty_triangle_counts_as_three_cycle() {
        let b = SimplicialComplex::simplex_boundary(3);
        assert_eq!(chordless_cycles(&b, 3), vec![b.vertex_set()]);
        assert!(chordless_cycles(&SimplicialComplex::simplex(3), 3).is_empty());
        assert!(is_chordal(&b));
    }

    #[test]
    fn matches_brute_force_on_polygons_and_joins() {
        for m in 3..=8 {
            let p = SimplicialComplex::polygon(m);
            assert_eq!(chordless_cycles(&p, 3), brute_force(&p, 3), "{m}-gon");
        }
        let k = SimplicialComplex::polygon(5)
            .join(&SimplicialComplex::from_lists(2, &[&[1], &[2]]).unwrap());
        assert_eq!(chordless_cycles(&k, 3), brute_force(&k, 3));
        assert_eq!(chordless_cycles(&k, 5), brute_force(&k, 5));
    }

    #[test]
    fn path_graph_is_chordal() {
        let p = SimplicialComplex::from_lists(4, &[&[1, 2], &[2, 3], &[3, 4]]).unwrap();
        assert!(is_chordal(&p));
        assert!(chordless_cycles(&p, 3).is_empty());
    }
}

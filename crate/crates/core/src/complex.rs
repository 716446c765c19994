//! Finite simplicial complexes given by their facets, and the standard constructions on them.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::vertex_set::{VertexSet, MAX_VERTICES};

/// A simplicial complex on the vertex set `{1, ..., n}`, stored as its antichain of facets.
///
/// An empty facet list denotes the complex `{∅}` (the empty simplicial complex, whose reduced
/// homology is `Z` in degree -1). Complexes built through [`SimplicialComplex::new`] have no
/// ghost vertices; derived complexes (links, deletions, the (-1)-skeleton) keep the ambient
/// vertex set and may have some, see [`SimplicialComplex::ghost_vertices`].
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SimplicialComplex {
    n: usize,
    facets: Vec<VertexSet>,
}

/// A complex together with the original labels of its vertices: `labels[i]` is the
/// ambient label of vertex `i + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relabeled {
    pub complex: SimplicialComplex,
    pub labels: Vec<usize>,
}

impl SimplicialComplex {
    /// Builds a complex from a list of faces; the facets are the maximal ones.
    pub fn new<I>(n: usize, faces: I) -> Result<Self>
    where
        I: IntoIterator<Item = VertexSet>,
    {
        if n > MAX_VERTICES {
            return Err(Error::LabelOutOfRange {
                label: n,
                n: MAX_VERTICES,
            });
        }
        let ground = VertexSet::full(n);
        let mut all = Vec::new();
        for f in faces {
            if !f.is_subset(ground) {
                let bad = (f - ground).min().unwrap();
                return Err(Error::LabelOutOfRange { label: bad, n });
            }
            if !f.is_empty() {
                all.push(f);
            }
        }
        let complex = Self::from_facets_raw(n, all);
        if let Some(v) = complex.ghost_vertices().min() {
            return Err(Error::GhostVertex(v));
        }
        Ok(complex)
    }

    /// Convenience constructor from label lists, e.g. `from_lists(3, &[&[1, 2], &[2, 3]])`.
    pub fn from_lists(n: usize, faces: &[&[usize]]) -> Result<Self> {
        let sets = faces
            .iter()
            .map(|f| VertexSet::try_from_labels(f.iter().copied()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, sets)
    }

    /// Reduces `faces` to its maximal elements without any ghost-vertex check.
    pub(crate) fn from_facets_raw(n: usize, faces: Vec<VertexSet>) -> Self {
        SimplicialComplex {
            n,
            facets: maximal_elements(faces),
        }
    }

    /// The complex `{∅}` on the empty vertex set.
    pub fn empty() -> Self {
        SimplicialComplex {
            n: 0,
            facets: Vec::new(),
        }
    }

    /// The full simplex on `n` vertices.
    pub fn simplex(n: usize) -> Self {
        Self::from_facets_raw(n, vec![VertexSet::full(n)])
    }

    /// The boundary of the simplex on `n` vertices (`n >= 2`).
    pub fn simplex_boundary(n: usize) -> Self {
        assert!(n >= 2);
        let full = VertexSet::full(n);
        Self::from_facets_raw(n, full.iter().map(|v| full.without(v)).collect())
    }

    /// The `m`-gon on vertices `1..=m` with edges `{i, i+1}` and `{m, 1}`.
    pub fn polygon(m: usize) -> Self {
        assert!(m >= 3);
        let edges = (1..=m)
            .map(|i| VertexSet::from_labels([i, i % m + 1]))
            .collect();
        Self::from_facets_raw(m, edges)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertex_set(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    /// Facets in ascending lexicographic order.
    pub fn facets(&self) -> &[VertexSet] {
        &self.facets
    }

    /// Dimension; -1 for `{∅}`.
    pub fn dim(&self) -> isize {
        self.facets
            .iter()
            .map(|f| f.len() as isize - 1)
            .max()
            .unwrap_or(-1)
    }

    pub fn is_pure(&self) -> bool {
        let d = self.dim();
        self.facets.iter().all(|f| f.len() as isize - 1 == d)
    }

    pub fn contains_face(&self, sigma: VertexSet) -> bool {
        sigma.is_empty() || self.facets.iter().any(|f| sigma.is_subset(*f))
    }

    /// Vertices of `[n]` that lie in no face.
    pub fn ghost_vertices(&self) -> VertexSet {
        let used = self.facets.iter().fold(VertexSet::EMPTY, |acc, f| acc | *f);
        self.vertex_set() - used
    }

    /// All nonempty faces, ordered by dimension and then lexicographically.
    pub fn faces(&self) -> Vec<VertexSet> {
        let mut seen: HashSet<VertexSet> = HashSet::new();
        for f in &self.facets {
            for s in f.subsets() {
                if !s.is_empty() {
                    seen.insert(s);
                }
            }
        }
        let mut faces: Vec<VertexSet> = seen.into_iter().collect();
        faces.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        faces
    }

    /// Faces of dimension `p` in lexicographic order.
    pub fn faces_of_dim(&self, p: usize) -> Vec<VertexSet> {
        let mut out: BTreeSet<VertexSet> = BTreeSet::new();
        for f in &self.facets {
            if f.len() > p {
                out.extend(f.subsets_of_size(p + 1));
            }
        }
        out.into_iter().collect()
    }

    /// `f_vector()[i]` counts faces of dimension `i`; the empty face is not included.
    pub fn f_vector(&self) -> Vec<usize> {
        let mut counts = vec![0usize; (self.dim() + 1).max(0) as usize];
        for f in self.faces() {
            counts[f.len() - 1] += 1;
        }
        counts
    }

    /// Unreduced Euler characteristic.
    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector()
            .iter()
            .enumerate()
            .map(|(i, &c)| if i % 2 == 0 { c as i64 } else { -(c as i64) })
            .sum()
    }

    pub fn is_simplex(&self) -> bool {
        self.n >= 1 && self.facets.len() == 1 && self.facets[0] == self.vertex_set()
    }

    /// True iff the complex is the boundary of the simplex on its `n >= 2` vertices.
    pub fn is_simplex_boundary(&self) -> bool {
        let full = self.vertex_set();
        self.n >= 2
            && self.facets.len() == self.n
            && self
                .facets
                .iter()
                .all(|f| f.len() == self.n - 1 && f.is_subset(full))
    }

    /// Full subcomplex on `subset`, keeping the ambient labels; vertices outside `subset`
    /// become ghosts.
    pub fn restrict(&self, subset: VertexSet) -> SimplicialComplex {
        let parts = self
            .facets
            .iter()
            .map(|f| *f & subset)
            .filter(|f| !f.is_empty())
            .collect();
        Self::from_facets_raw(self.n, parts)
    }

    /// The full subcomplex `K_I`, relabeled to `1..=|I|` in ascending order.
    pub fn full_subcomplex(&self, subset: VertexSet) -> Relabeled {
        let subset = subset & self.vertex_set();
        let facets = self
            .facets
            .iter()
            .map(|f| (*f & subset).compress(subset))
            .filter(|f| !f.is_empty())
            .collect();
        Relabeled {
            complex: Self::from_facets_raw(subset.len(), facets),
            labels: subset.to_vec(),
        }
    }

    /// Drops ghost vertices, relabeling the rest in ascending order.
    pub fn compact(&self) -> Relabeled {
        let used = self.vertex_set() - self.ghost_vertices();
        self.full_subcomplex(used)
    }

    /// The `i`-skeleton. `i = -1` gives `{∅}` on the same `n` vertex slots.
    pub fn skeleton(&self, i: isize) -> SimplicialComplex {
        if i < 0 {
            return SimplicialComplex {
                n: self.n,
                facets: Vec::new(),
            };
        }
        let k = i as usize + 1;
        let mut parts = Vec::new();
        for f in &self.facets {
            if f.len() <= k {
                parts.push(*f);
            } else {
                parts.extend(f.subsets_of_size(k));
            }
        }
        Self::from_facets_raw(self.n, parts)
    }

    /// `link_K(σ) = {τ : τ ∩ σ = ∅, τ ∪ σ ∈ K}` on the ambient vertex set.
    pub fn link(&self, sigma: VertexSet) -> Result<SimplicialComplex> {
        if !self.contains_face(sigma) {
            return Err(Error::NotAFace(sigma));
        }
        let parts = self
            .facets
            .iter()
            .filter(|f| sigma.is_subset(**f))
            .map(|f| *f - sigma)
            .filter(|f| !f.is_empty())
            .collect();
        Ok(Self::from_facets_raw(self.n, parts))
    }

    /// `K \ σ`: all faces not containing `σ`, on the ambient vertex set.
    pub fn delete_face(&self, sigma: VertexSet) -> SimplicialComplex {
        if sigma.is_empty() {
            return SimplicialComplex {
                n: self.n,
                facets: Vec::new(),
            };
        }
        let mut parts = Vec::new();
        for f in &self.facets {
            if sigma.is_subset(*f) {
                // maximal faces of f avoiding sigma: drop one vertex of sigma
                parts.extend(sigma.iter().map(|v| f.without(v)).filter(|g| !g.is_empty()));
            } else {
                parts.push(*f);
            }
        }
        Self::from_facets_raw(self.n, parts)
    }

    /// `K * L`: `K`'s labels first, then `L`'s shifted by `n_K`.
    pub fn join(&self, other: &SimplicialComplex) -> SimplicialComplex {
        let n = self.n + other.n;
        assert!(
            n <= MAX_VERTICES,
            "join has {n} vertices, more than {MAX_VERTICES}"
        );
        let left = self.facets_or_empty();
        let right: Vec<VertexSet> = other
            .facets_or_empty()
            .iter()
            .map(|t| t.shift(self.n))
            .collect();
        let mut parts = Vec::with_capacity(left.len() * right.len());
        for s in &left {
            for t in &right {
                let f = *s | *t;
                if !f.is_empty() {
                    parts.push(f);
                }
            }
        }
        Self::from_facets_raw(n, parts)
    }

    fn facets_or_empty(&self) -> Vec<VertexSet> {
        if self.facets.is_empty() {
            vec![VertexSet::EMPTY]
        } else {
            self.facets.clone()
        }
    }

    /// Connected sum `(K \ σ_K) ∪_{∂σ} (L \ σ_L)`.
    ///
    /// `matching` pairs each vertex of `σ_K` with the vertex of `σ_L` it is identified
    /// with; `None` matches them in ascending order. The vertices of `L` outside `σ_L`
    /// are relabeled `n_K + 1, ...` in ascending order.
    pub fn connected_sum(
        &self,
        other: &SimplicialComplex,
        sigma_k: VertexSet,
        sigma_l: VertexSet,
        matching: Option<&[(usize, usize)]>,
    ) -> Result<ConnectedSum> {
        if sigma_k.len() != sigma_l.len() {
            return Err(Error::SizeMismatch(sigma_k.len(), sigma_l.len()));
        }
        if !self.facets.contains(&sigma_k) {
            return Err(Error::NotAFacet(sigma_k));
        }
        if !other.facets.contains(&sigma_l) {
            return Err(Error::NotAFacet(sigma_l));
        }
        let pairs: Vec<(usize, usize)> = match matching {
            Some(m) => {
                let dom: VertexSet = m.iter().map(|p| p.0).collect();
                let cod: VertexSet = m.iter().map(|p| p.1).collect();
                if m.len() != sigma_k.len() || dom != sigma_k || cod != sigma_l {
                    return Err(Error::InvalidCertificate(format!(
                        "matching is not a bijection {sigma_k} -> {sigma_l}"
                    )));
                }
                m.to_vec()
            }
            None => sigma_k.iter().zip(sigma_l.iter()).collect(),
        };
        let mut map = vec![0usize; other.n + 1];
        for &(a, b) in &pairs {
            map[b] = a;
        }
        let mut next = self.n;
        for v in other.vertex_set() - sigma_l {
            next += 1;
            map[v] = next;
        }
        if next > MAX_VERTICES {
            return Err(Error::LabelOutOfRange {
                label: next,
                n: MAX_VERTICES,
            });
        }
        let mut parts: Vec<VertexSet> = self
            .facets
            .iter()
            .copied()
            .filter(|f| *f != sigma_k)
            .collect();
        parts.extend(
            sigma_k
                .iter()
                .map(|v| sigma_k.without(v))
                .filter(|g| !g.is_empty()),
        );
        parts.extend(
            other
                .facets
                .iter()
                .filter(|f| **f != sigma_l)
                .map(|f| f.relabel(&map)),
        );
        Ok(ConnectedSum {
            complex: Self::from_facets_raw(next, parts),
            glued_face: sigma_k,
            right_labels: map,
        })
    }

    /// Simplicial wedge `K(J)`; `copies[i]` is the total number of copies of vertex `i + 1`.
    ///
    /// The copies of vertex `i` are labeled consecutively, in vertex order. A set `S` of
    /// new vertices is a face iff the set of old vertices whose whole block lies in `S`
    /// is a face of `K`; the minimal non-faces are therefore the block substitutions of
    /// the minimal non-faces of `K`.
    pub fn simplicial_wedge(&self, copies: &[usize]) -> Result<Wedge> {
        if copies.len() != self.n {
            return Err(Error::InvalidWedge(format!(
                "expected {} entries, got {}",
                self.n,
                copies.len()
            )));
        }
        if let Some(i) = copies.iter().position(|&j| j == 0) {
            return Err(Error::InvalidWedge(format!(
                "vertex {} has zero copies",
                i + 1
            )));
        }
        let total: usize = copies.iter().sum();
        if total > MAX_VERTICES {
            return Err(Error::InvalidWedge(format!(
                "{total} vertices exceeds {MAX_VERTICES}"
            )));
        }
        let mut blocks = Vec::with_capacity(self.n);
        let mut next = 0usize;
        for &j in copies {
            blocks.push(VertexSet::from_labels(next + 1..=next + j));
            next += j;
        }
        let mut parts = Vec::new();
        for f in self.facets_or_empty() {
            let base = f
                .iter()
                .fold(VertexSet::EMPTY, |acc, v| acc | blocks[v - 1]);
            // one vertex dropped from every block outside the facet
            let mut partial = vec![base];
            for v in (self.vertex_set() - f).iter() {
                let block = blocks[v - 1];
                partial = partial
                    .into_iter()
                    .flat_map(|s| block.iter().map(move |x| s | block.without(x)))
                    .collect();
            }
            parts.extend(partial.into_iter().filter(|s| !s.is_empty()));
        }
        Ok(Wedge {
            complex: Self::from_facets_raw(total, parts),
            blocks,
        })
    }

    /// Minimal non-faces: `σ ∉ K` with every proper face in `K`.
    pub fn missing_faces(&self) -> Vec<VertexSet> {
        let mut out: BTreeSet<VertexSet> = BTreeSet::new();
        let ground = self.vertex_set();
        let mut candidates: Vec<VertexSet> = vec![VertexSet::EMPTY];
        candidates.extend(self.faces());
        for tau in candidates {
            for v in (ground - tau).iter() {
                // generate each candidate once, from the face missing its largest vertex
                if tau.max().is_some_and(|m| m > v) {
                    continue;
                }
                let sigma = tau.with(v);
                if self.contains_face(sigma) {
                    continue;
                }
                if sigma.iter().all(|u| self.contains_face(sigma.without(u))) {
                    out.insert(sigma);
                }
            }
        }
        let mut v: Vec<VertexSet> = out.into_iter().collect();
        v.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        v
    }

    /// Every set of at most `k` vertices is a face.
    pub fn is_k_neighbourly(&self, k: usize) -> bool {
        let k = k.min(self.n);
        self.vertex_set()
            .subsets_of_size(k)
            .all(|s| self.contains_face(s))
    }

    /// Largest `k` with [`SimplicialComplex::is_k_neighbourly`] (0 if some vertex is missing).
    pub fn neighbourliness(&self) -> usize {
        let mut k = 0;
        while k < self.n && self.is_k_neighbourly(k + 1) {
            k += 1;
        }
        k
    }

    /// Applies a vertex permutation: `perm[v]` is the new label of `v` (index 0 unused).
    pub fn relabel(&self, perm: &[usize]) -> SimplicialComplex {
        Self::from_facets_raw(
            self.n,
            self.facets.iter().map(|f| f.relabel(perm)).collect(),
        )
    }

    /// All vertex permutations (as for [`SimplicialComplex::relabel`]) mapping the complex
    /// onto itself, identity first.
    pub fn automorphisms(&self) -> Vec<Vec<usize>> {
        let n = self.n;
        let adj = crate::cycles::adjacency(self);
        let degree: Vec<usize> = (0..=n)
            .map(|v| self.facets.iter().filter(|f| f.contains(v)).count())
            .collect();
        let mut perm = vec![0usize; n + 1];
        let mut used = VertexSet::EMPTY;
        let mut out = Vec::new();
        self.extend_automorphism(1, &adj, &degree, &mut perm, &mut used, &mut out);
        out
    }

    fn extend_automorphism(
        &self,
        v: usize,
        adj: &[VertexSet],
        degree: &[usize],
        perm: &mut Vec<usize>,
        used: &mut VertexSet,
        out: &mut Vec<Vec<usize>>,
    ) {
        if v > self.n {
            if self.relabel(perm).facets == self.facets {
                out.push(perm.clone());
            }
            return;
        }
        for image in 1..=self.n {
            if used.contains(image) || degree[image] != degree[v] {
                continue;
            }
            // adjacency to already placed vertices must be preserved
            if (1..v).any(|u| adj[v].contains(u) != adj[image].contains(perm[u])) {
                continue;
            }
            perm[v] = image;
            used.insert(image);
            self.extend_automorphism(v + 1, adj, degree, perm, used, out);
            used.remove(image);
        }
    }

    /// Disjoint union, `other`'s labels shifted past `self`'s.
    pub fn disjoint_union(&self, other: &SimplicialComplex) -> SimplicialComplex {
        let mut parts = self.facets.clone();
        parts.extend(other.facets.iter().map(|f| f.shift(self.n)));
        Self::from_facets_raw(self.n + other.n, parts)
    }

    /// Hex SHA-256 of the canonical facet encoding.
    pub fn content_hash(&self) -> String {
        hex::encode(self.digest())
    }

    /// First 8 bytes of the content digest, for in-memory cache keys.
    pub fn fingerprint(&self) -> u64 {
        let d = self.digest();
        u64::from_le_bytes(d[..8].try_into().unwrap())
    }

    fn digest(&self) -> Vec<u8> {
        let mut h = Sha256::new();
        h.update((self.n as u64).to_le_bytes());
        for f in &self.facets {
            h.update(f.bits().to_le_bytes());
        }
        h.finalize().to_vec()
    }

    /// Facets as 1-indexed label lists.
    pub fn facet_lists(&self) -> Vec<Vec<usize>> {
        self.facets.iter().map(|f| f.to_vec()).collect()
    }
}

/// Result of [`SimplicialComplex::connected_sum`].
#[derive(Clone, Debug)]
pub struct ConnectedSum {
    pub complex: SimplicialComplex,
    /// The gluing face, in the result's labels (equal to `σ_K`).
    pub glued_face: VertexSet,
    /// `right_labels[v]` is the result label of vertex `v` of the right summand.
    pub right_labels: Vec<usize>,
}

/// Result of [`SimplicialComplex::simplicial_wedge`].
#[derive(Clone, Debug)]
pub struct Wedge {
    pub complex: SimplicialComplex,
    /// `blocks[i]` holds the copies of old vertex `i + 1`.
    pub blocks: Vec<VertexSet>,
}

fn maximal_elements(mut faces: Vec<VertexSet>) -> Vec<VertexSet> {
    faces.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    faces.dedup();
    let mut kept: Vec<VertexSet> = Vec::with_capacity(faces.len());
    for f in faces {
        if !kept.iter().any(|g| f.is_subset(*g)) {
            kept.push(f);
        }
    }
    kept.sort();
    kept
}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "K(n={}, facets=[", self.n)?;
        for (i, s) in self.facets.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            for v in s.iter() {
                write!(f, "{v}")?;
                if self.n >= 10 {
                    f.write_str(".")?;
                }
            }
        }
        f.write_str("])")
    }
}

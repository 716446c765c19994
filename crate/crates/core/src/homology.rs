//! Reduced simplicial homology over the integers.
//!
//! Every simplex is oriented by ascending labels, and the chain complex is augmented: the
//! empty face spans `C_{-1}` and `∂_0` is the augmentation.

use std::collections::{HashMap, HashSet};
use std::fmt;

use dashu_int::IBig;
use serde::Serialize;

use crate::complex::SimplicialComplex;
use crate::smith::{invariant_factors, IntegerMatrix};
use crate::vertex_set::VertexSet;

/// Face bases of the augmented chain complex of a complex, in its own (ambient) labels.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    /// `faces[p + 1]` lists the `p`-faces in lexicographic order, for `p = -1..=dim`.
    faces: Vec<Vec<VertexSet>>,
    index: Vec<HashMap<VertexSet, usize>>,
}

impl ChainComplex {
    pub fn new(k: &SimplicialComplex) -> Self {
        let mut all: HashSet<VertexSet> = HashSet::new();
        for f in k.facets() {
            all.extend(f.subsets());
        }
        all.insert(VertexSet::EMPTY);
        let top = all.iter().map(|f| f.len()).max().unwrap_or(0);
        let mut faces = vec![Vec::new(); top + 1];
        for f in all {
            faces[f.len()].push(f);
        }
        for level in &mut faces {
            level.sort();
        }
        let index = faces
            .iter()
            .map(|level| level.iter().enumerate().map(|(i, f)| (*f, i)).collect())
            .collect();
        ChainComplex { faces, index }
    }

    pub fn dim(&self) -> isize {
        self.faces.len() as isize - 2
    }

    /// The `p`-faces, empty outside `-1..=dim`.
    pub fn faces(&self, p: isize) -> &[VertexSet] {
        if p < -1 || p > self.dim() {
            return &[];
        }
        &self.faces[(p + 1) as usize]
    }

    pub fn rank(&self, p: isize) -> usize {
        self.faces(p).len()
    }

    /// Position of `face` in the basis of `C_{|face|-1}`.
    pub fn index_of(&self, face: VertexSet) -> Option<usize> {
        self.index
            .get(face.len())
            .and_then(|m| m.get(&face).copied())
    }

    /// `∂_p : C_p → C_{p-1}` as a `rank(p-1) × rank(p)` matrix.
    pub fn boundary(&self, p: isize) -> IntegerMatrix {
        let rows = self.rank(p - 1);
        let cols = self.rank(p);
        let mut m = IntegerMatrix::zeros(rows, cols);
        if p < 0 {
            return m;
        }
        for (j, sigma) in self.faces(p).iter().enumerate() {
            for (i, v) in sigma.iter().enumerate() {
                let row = self
                    .index_of(sigma.without(v))
                    .expect("faces are closed under removal");
                m.set(row, j, if i % 2 == 0 { IBig::ONE } else { -IBig::ONE });
            }
        }
        m
    }

    /// `δ^p : C^p → C^{p+1}`, the transpose of `∂_{p+1}`.
    pub fn coboundary(&self, p: isize) -> IntegerMatrix {
        self.boundary(p + 1).transpose()
    }
}

/// `∂_p` for `p = 0..=dim K`; entry `p` of the result is `∂_p`.
pub fn boundary_matrices(k: &SimplicialComplex) -> Vec<IntegerMatrix> {
    let c = ChainComplex::new(k);
    (0..=c.dim()).map(|p| c.boundary(p)).collect()
}

/// One homology group: `Z^rank ⊕ ⨁ Z/t` for the listed torsion coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Group {
    pub rank: usize,
    pub torsion: Vec<IBig>,
}

impl Group {
    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    pub fn is_infinite_cyclic(&self) -> bool {
        self.rank == 1 && self.torsion.is_empty()
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join("+"))
        }
    }
}

/// Reduced integral homology in degrees `-1..=top`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HomologyProfile {
    /// `groups[i]` is `H̃_{i-1}`.
    groups: Vec<Group>,
}

impl HomologyProfile {
    pub fn from_groups(groups: Vec<Group>) -> Self {
        let mut groups = groups;
        while groups.len() > 1 && groups.last().is_some_and(Group::is_zero) {
            groups.pop();
        }
        if groups.is_empty() {
            groups.push(Group::default());
        }
        HomologyProfile { groups }
    }

    /// `H̃_i`; zero outside the stored range.
    pub fn group(&self, i: isize) -> Group {
        if i < -1 {
            return Group::default();
        }
        self.groups
            .get((i + 1) as usize)
            .cloned()
            .unwrap_or_default()
    }

    pub fn rank(&self, i: isize) -> usize {
        if i < -1 {
            return 0;
        }
        self.groups.get((i + 1) as usize).map_or(0, |g| g.rank)
    }

    pub fn torsion(&self, i: isize) -> &[IBig] {
        if i < -1 {
            return &[];
        }
        self.groups
            .get((i + 1) as usize)
            .map_or(&[], |g| &g.torsion)
    }

    /// Highest degree stored (trailing zero groups are trimmed).
    pub fn top_degree(&self) -> isize {
        self.groups.len() as isize - 2
    }

    /// `H̃^i ≅ Hom(H̃_i, Z) ⊕ Ext(H̃_{i-1}, Z)`.
    pub fn cohomology(&self, i: isize) -> Group {
        Group {
            rank: self.rank(i),
            torsion: self.torsion(i - 1).to_vec(),
        }
    }

    pub fn is_acyclic(&self) -> bool {
        self.groups.iter().all(Group::is_zero)
    }

    pub fn is_torsion_free(&self) -> bool {
        self.groups.iter().all(|g| g.torsion.is_empty())
    }

    /// Degrees with nonzero reduced homology.
    pub fn nonzero_degrees(&self) -> Vec<isize> {
        (-1..=self.top_degree())
            .filter(|&i| !self.group(i).is_zero())
            .collect()
    }

    /// Degrees with nonzero reduced cohomology.
    pub fn cohomology_degrees(&self) -> Vec<isize> {
        (-1..=self.top_degree() + 1)
            .filter(|&i| !self.cohomology(i).is_zero())
            .collect()
    }

    /// True iff this is the reduced homology of `S^k`.
    pub fn is_sphere_homology(&self, k: isize) -> bool {
        (-1..=self.top_degree().max(k)).all(|i| {
            let g = self.group(i);
            if i == k {
                g.is_infinite_cyclic()
            } else {
                g.is_zero()
            }
        })
    }

    /// `Σ (-1)^i rank H̃_i`, which equals `χ(K) - 1` for a nonempty complex.
    pub fn reduced_euler_characteristic(&self) -> i64 {
        (-1..=self.top_degree())
            .map(|i| if i.rem_euclid(2) == 0 { 1 } else { -1 } * self.rank(i) as i64)
            .sum()
    }
}

impl fmt::Display for HomologyProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .nonzero_degrees()
            .into_iter()
            .map(|i| format!("H{i}={}", self.group(i)))
            .collect();
        if parts.is_empty() {
            f.write_str("acyclic")
        } else {
            f.write_str(&parts.join(" "))
        }
    }
}

impl Serialize for HomologyProfile {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry<'a> {
            degree: isize,
            rank: usize,
            #[serde(serialize_with = "serialize_factors")]
            torsion: &'a [IBig],
        }
        let entries: Vec<Entry> = (-1..=self.top_degree())
            .map(|i| Entry {
                degree: i,
                rank: self.rank(i),
                torsion: self.torsion(i),
            })
            .collect();
        entries.serialize(serializer)
    }
}

/// Integers as JSON numbers when they fit in 64 bits, as decimal strings otherwise.
pub fn serialize_factors<S: serde::Serializer>(
    factors: &[IBig],
    serializer: S,
) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = serializer.serialize_seq(Some(factors.len()))?;
    for f in factors {
        match i64::try_from(f) {
            Ok(v) => seq.serialize_element(&v)?,
            Err(_) => seq.serialize_element(&f.to_string())?,
        }
    }
    seq.end()
}

/// Reduced integral homology; `{∅}` has `H̃_{-1} = Z`.
pub fn reduced_homology(k: &SimplicialComplex) -> HomologyProfile {
    homology_of_chain_complex(&ChainComplex::new(k))
}

pub fn homology_of_chain_complex(c: &ChainComplex) -> HomologyProfile {
    let dim = c.dim();
    // factors[p] = nonzero invariant factors of ∂_p, p = 0..=dim+1
    let factors: Vec<Vec<IBig>> = (0..=dim + 1)
        .map(|p| invariant_factors(&c.boundary(p)))
        .collect();
    let rank_of = |p: isize| {
        if p < 0 || p > dim + 1 {
            0
        } else {
            factors[p as usize].len()
        }
    };
    let groups = (-1..=dim)
        .map(|p| {
            let rank = c.rank(p) - rank_of(p) - rank_of(p + 1);
            let torsion = if p < dim {
                factors[(p + 1) as usize]
                    .iter()
                    .filter(|d| !d.is_one())
                    .cloned()
                    .collect()
            } else {
                Vec::new()
            };
            Group { rank, torsion }
        })
        .collect();
    HomologyProfile::from_groups(groups)
}

/// True iff `H̃_*(K) ≅ H̃_*(S^k)`.
pub fn homology_sphere_test(k: &SimplicialComplex, degree: usize) -> bool {
    reduced_homology(k).is_sphere_homology(degree as isize)
}

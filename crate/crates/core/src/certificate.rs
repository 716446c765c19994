//! Construction certificates: recipes that build a sphere from recognized spheres of
//! dimension at most 2 by joins, chains of connected sums and simplicial wedges, plus
//! declared gluings along a common full subcomplex.
//!
//! Evaluating a recipe builds the complex and records, per node, the sphere dimension, a
//! verified spherical filtration when one can be assembled from the children, and whether
//! the node belongs to the class `𝒞_d`:
//!
//! 1. joins `L_1 * ... * L_k` of spheres `L_i` of dimension at most 2;
//! 2. chains `K_1 #_{σ_1} ... # K_ℓ` of such joins, with pairwise disjoint gluing faces and
//!    no join factor a simplex boundary.
//!
//! For members, `cat(Z_K) = cuplen(Z_K)` equals the sum of the factor values for a join and
//! `max{2, ...}` of the summand values for a connected sum.

use serde::{Deserialize, Serialize};

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::filtration::{classify_sphere_d012, filt, FiltrationStep, SphericalFiltration};
use crate::hmf::hmf_check;
use crate::sphere::{sphere_diagnosis, sphere_recognize_le2};
use crate::vertex_set::VertexSet;

/// A construction recipe, as read from a document.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum Construction {
    /// A sphere of dimension at most 2, given by its facets.
    Leaf {
        n: usize,
        facets: Vec<Vec<usize>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
    },
    Join {
        factors: Vec<Construction>,
    },
    /// `K_1 #_{σ_1} K_2 #_{σ_2} ... K_ℓ`; `gluings[i]` joins summand `i + 1` to the result
    /// so far.
    ConnectedSum {
        summands: Vec<Construction>,
        gluings: Vec<SumFace>,
    },
    /// `K(J)` with `copies[i]` total copies of vertex `i + 1`.
    Wedge {
        base: Box<Construction>,
        copies: Vec<usize>,
    },
    /// `K_1 ∪_C ... ∪_C K_m` for subcomplexes given on the common vertex set `1..=n`.
    Gluing {
        n: usize,
        pieces: Vec<Vec<Vec<usize>>>,
    },
}

/// One gluing of a connected-sum chain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SumFace {
    /// Facet of the result so far, lying in the previous summand.
    pub left: Vec<usize>,
    /// Facet of the next summand, in its own labels.
    pub right: Vec<usize>,
    /// Pairs `(left vertex, right vertex)`; ascending order when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matching: Option<Vec<(usize, usize)>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NodeKind {
    Leaf,
    Join,
    ConnectedSum,
    Wedge,
    Gluing,
}

/// A sphere of dimension at most 2 occurring as a join factor, with its value `m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Factor {
    pub dim: usize,
    pub m: usize,
    pub simplex_boundary: bool,
}

/// The common part of a declared gluing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GluingData {
    pub pieces: Vec<SimplicialComplex>,
    pub common: SimplicialComplex,
    /// `Cat(Z_C)` when known: 0 for the empty complex or a simplex, 1 for a simplex
    /// boundary or an HMF complex.
    pub common_cat: Option<usize>,
}

/// An evaluated certificate node.
#[derive(Clone, Debug, Serialize)]
pub struct ConstructionCertificate {
    pub kind: NodeKind,
    #[serde(skip)]
    pub complex: SimplicialComplex,
    pub sphere_dim: Option<usize>,
    /// Length of `witness`.
    pub filt_lower: Option<usize>,
    /// True when the node is a recognized sphere of dimension at most 2, so the search was
    /// exhaustive.
    pub filt_exact: bool,
    pub witness: Option<SphericalFiltration>,
    /// `Some(d)` when the node is certified to lie in `𝒞_d`.
    pub class_dim: Option<usize>,
    /// `m = cat(Z_K) = cuplen(Z_K)` for class members.
    pub m: Option<usize>,
    /// Decomposition as a join of low-dimensional spheres, when the node has one.
    pub factors: Option<Vec<Factor>>,
    /// Gluing faces of a connected-sum node, in the node's labels.
    pub glued_faces: Vec<VertexSet>,
    pub disjoint: Option<bool>,
    pub gluing: Option<GluingData>,
    pub children: Vec<ConstructionCertificate>,
}

impl ConstructionCertificate {
    fn new(kind: NodeKind, complex: SimplicialComplex, sphere_dim: Option<usize>) -> Self {
        ConstructionCertificate {
            kind,
            complex,
            sphere_dim,
            filt_lower: None,
            filt_exact: false,
            witness: None,
            class_dim: None,
            m: None,
            factors: None,
            glued_faces: Vec::new(),
            disjoint: None,
            gluing: None,
            children: Vec::new(),
        }
    }

    /// Sets the witness if it verifies, keeping the longer of the old and new one.
    fn offer_witness(&mut self, w: SphericalFiltration) {
        if self
            .witness
            .as_ref()
            .is_some_and(|old| old.len() >= w.len())
            || !w.verify(&self.complex)
        {
            return;
        }
        self.filt_lower = Some(w.len());
        self.witness = Some(w);
    }
}

/// Builds and certifies the complex described by `c`.
pub fn certify(c: &Construction) -> Result<ConstructionCertificate> {
    let mut node = match c {
        Construction::Leaf { n, facets, .. } => {
            let k = complex_from_lists(*n, facets)?;
            let d = sphere_recognize_le2(&k)
                .ok_or_else(|| Error::NotCertifiedSphere(sphere_diagnosis(&k)))?;
            ConstructionCertificate::new(NodeKind::Leaf, k, Some(d))
        }
        Construction::Join { factors } => join_node(factors)?,
        Construction::ConnectedSum { summands, gluings } => sum_node(summands, gluings)?,
        Construction::Wedge { base, copies } => {
            let parent = certify(base)?;
            let w = parent.complex.simplicial_wedge(copies)?;
            let added: usize = copies.iter().map(|j| j - 1).sum();
            let dim = parent.sphere_dim.map(|d| d + added);
            let mut node = ConstructionCertificate::new(NodeKind::Wedge, w.complex, dim);
            node.children.push(parent);
            node
        }
        Construction::Gluing { n, pieces } => gluing_node(*n, pieces)?,
    };
    settle_low(&mut node)?;
    Ok(node)
}

fn complex_from_lists(n: usize, facets: &[Vec<usize>]) -> Result<SimplicialComplex> {
    let sets = facets
        .iter()
        .map(|f| VertexSet::try_from_labels(f.iter().copied()))
        .collect::<Result<Vec<_>>>()?;
    SimplicialComplex::new(n, sets)
}

/// Nodes that are spheres of dimension at most 2 get the exact search and classification;
/// a class value derived from the children must agree with it.
fn settle_low(node: &mut ConstructionCertificate) -> Result<()> {
    let recognized = sphere_recognize_le2(&node.complex);
    match (node.sphere_dim, recognized) {
        (Some(d), Some(r)) if d == r => {}
        (Some(d), _) if d <= 2 => {
            return Err(Error::InvalidCertificate(format!(
                "node should be a {d}-sphere but {}",
                sphere_diagnosis(&node.complex)
            )))
        }
        (None, Some(r)) => node.sphere_dim = Some(r),
        _ => return Ok(()),
    }
    let d = node.sphere_dim.unwrap();
    let f = filt(&node.complex)?;
    let m = classify_sphere_d012(&node.complex)?;
    if f.value != m {
        return Err(Error::CrossCheckMismatch(format!(
            "filt {} but classification {m}",
            f.value
        )));
    }
    if let Some(derived) = node.m {
        if derived != m {
            return Err(Error::CrossCheckMismatch(format!(
                "class value {derived} from the construction but {m} from the sphere itself"
            )));
        }
    }
    node.filt_lower = Some(f.value);
    node.filt_exact = true;
    node.witness = f.witness;
    node.class_dim = Some(d);
    node.m = Some(m);
    node.factors = Some(vec![Factor {
        dim: d,
        m,
        simplex_boundary: node.complex.is_simplex_boundary(),
    }]);
    Ok(())
}

fn join_node(factors: &[Construction]) -> Result<ConstructionCertificate> {
    if factors.is_empty() {
        return Err(Error::InvalidCertificate("join without factors".into()));
    }
    let kids = factors.iter().map(certify).collect::<Result<Vec<_>>>()?;
    let mut dims = Vec::new();
    for kid in &kids {
        dims.push(
            kid.sphere_dim
                .ok_or_else(|| Error::NotCertifiedSphere("join factor is not a sphere".into()))?,
        );
    }
    let complex = kids[1..]
        .iter()
        .fold(kids[0].complex.clone(), |acc, kid| acc.join(&kid.complex));
    let dim = dims.iter().sum::<usize>() + kids.len() - 1;
    let mut node = ConstructionCertificate::new(NodeKind::Join, complex, Some(dim));

    if kids.iter().all(|k| k.factors.is_some()) {
        let all: Vec<Factor> = kids
            .iter()
            .flat_map(|k| k.factors.clone().unwrap())
            .collect();
        node.m = Some(all.iter().map(|f| f.m).sum());
        node.class_dim = Some(dim);
        node.factors = Some(all);
    }
    if let Some(w) = join_witness(&kids) {
        node.offer_witness(w);
    }
    node.children = kids;
    Ok(node)
}

/// Concatenated filtration of a join. Each step past the first factor's chain drops the
/// dimension by one only if the appended chains end at `S^0`, so at most one factor may end
/// higher; that one goes first.
fn join_witness(kids: &[ConstructionCertificate]) -> Option<SphericalFiltration> {
    let mut offset = 0;
    let mut shifted = Vec::new();
    for kid in kids {
        let w = kid.witness.as_ref()?;
        let steps: Vec<FiltrationStep> = w
            .steps
            .iter()
            .map(|s| FiltrationStep {
                subset: s.subset.shift(offset),
                dim: s.dim,
            })
            .collect();
        shifted.push(steps);
        offset += kid.complex.n();
    }
    let high: Vec<usize> = (0..shifted.len())
        .filter(|&i| shifted[i].last().unwrap().dim > 0)
        .collect();
    if high.len() > 1 {
        return None;
    }
    let first = high.first().copied().unwrap_or(0);
    let mut acc = shifted[first].clone();
    for (i, b) in shifted.iter().enumerate() {
        if i == first {
            continue;
        }
        let bottom = *acc.last().unwrap();
        let top = b[0];
        let mut next: Vec<FiltrationStep> = acc
            .iter()
            .map(|a| FiltrationStep {
                subset: a.subset | top.subset,
                dim: a.dim + top.dim + 1,
            })
            .collect();
        next.extend(b[1..].iter().map(|s| FiltrationStep {
            subset: bottom.subset | s.subset,
            dim: bottom.dim + s.dim + 1,
        }));
        next.push(bottom);
        acc = next;
    }
    Some(SphericalFiltration { steps: acc })
}

fn sum_node(summands: &[Construction], gluings: &[SumFace]) -> Result<ConstructionCertificate> {
    if summands.len() < 2 || gluings.len() + 1 != summands.len() {
        return Err(Error::InvalidCertificate(format!(
            "{} summands need {} gluings, got {}",
            summands.len(),
            summands.len().saturating_sub(1),
            gluings.len()
        )));
    }
    let kids = summands.iter().map(certify).collect::<Result<Vec<_>>>()?;
    let d = kids[0]
        .sphere_dim
        .ok_or_else(|| Error::NotCertifiedSphere("summand is not a sphere".into()))?;
    if kids.iter().any(|k| k.sphere_dim != Some(d)) {
        return Err(Error::InvalidCertificate(
            "summands have different dimensions".into(),
        ));
    }
    // images[i][v] = label in the result of vertex v of summand i
    let mut images: Vec<Vec<usize>> = vec![(0..=kids[0].complex.n()).collect()];
    let mut acc = kids[0].complex.clone();
    let mut faces = Vec::new();
    for (i, g) in gluings.iter().enumerate() {
        let left = VertexSet::try_from_labels(g.left.iter().copied())?;
        let right = VertexSet::try_from_labels(g.right.iter().copied())?;
        let previous = kids[i].complex.vertex_set().relabel(&images[i]);
        let in_previous = left.is_subset(previous)
            && kids[i]
                .complex
                .facets()
                .iter()
                .any(|f| f.relabel(&images[i]) == left);
        if !in_previous {
            return Err(Error::InvalidCertificate(format!(
                "{left} is not a facet of summand {}",
                i + 1
            )));
        }
        let cs = acc.connected_sum(&kids[i + 1].complex, left, right, g.matching.as_deref())?;
        images.push(cs.right_labels);
        acc = cs.complex;
        faces.push(left);
    }
    let disjoint = faces
        .iter()
        .enumerate()
        .all(|(i, a)| faces[i + 1..].iter().all(|b| a.is_disjoint(*b)));
    let mut node = ConstructionCertificate::new(NodeKind::ConnectedSum, acc, Some(d));

    let mut values = Vec::new();
    for kid in &kids {
        match &kid.factors {
            Some(fs) if fs.iter().all(|f| !f.simplex_boundary) => {
                values.push(fs.iter().map(|f| f.m).sum::<usize>())
            }
            _ => break,
        }
    }
    if disjoint && values.len() == kids.len() {
        node.class_dim = Some(d);
        node.m = Some(values.into_iter().max().unwrap().max(2));
    }

    let top = node.complex.vertex_set();
    if let Some(sigma) = faces.first() {
        node.offer_witness(SphericalFiltration {
            steps: vec![
                FiltrationStep {
                    subset: top,
                    dim: d,
                },
                FiltrationStep {
                    subset: *sigma,
                    dim: d - 1,
                },
            ],
        });
    }
    for (kid, image) in kids.iter().zip(&images) {
        if let Some(w) = &kid.witness {
            let mut steps = vec![FiltrationStep {
                subset: top,
                dim: d,
            }];
            steps.extend(w.steps[1..].iter().map(|s| FiltrationStep {
                subset: s.subset.relabel(image),
                dim: s.dim,
            }));
            node.offer_witness(SphericalFiltration { steps });
        }
    }
    node.glued_faces = faces;
    node.disjoint = Some(disjoint);
    node.children = kids;
    Ok(node)
}

fn gluing_node(n: usize, pieces: &[Vec<Vec<usize>>]) -> Result<ConstructionCertificate> {
    if pieces.len() < 2 {
        return Err(Error::InvalidCertificate(
            "a gluing needs at least two pieces".into(),
        ));
    }
    let mut raw = Vec::new();
    for p in pieces {
        let sets = p
            .iter()
            .map(|f| VertexSet::try_from_labels(f.iter().copied()))
            .collect::<Result<Vec<_>>>()?;
        if let Some(bad) = sets.iter().find(|s| !s.is_subset(VertexSet::full(n))) {
            return Err(Error::LabelOutOfRange {
                label: (*bad).max().unwrap(),
                n,
            });
        }
        raw.push(SimplicialComplex::from_facets_raw(n, sets));
    }
    let face_sets: Vec<std::collections::BTreeSet<VertexSet>> = raw
        .iter()
        .map(|p| p.faces().into_iter().collect())
        .collect();
    let common: std::collections::BTreeSet<VertexSet> =
        face_sets[1..].iter().fold(face_sets[0].clone(), |acc, s| {
            acc.intersection(s).copied().collect()
        });
    for i in 0..face_sets.len() {
        for j in i + 1..face_sets.len() {
            let both: std::collections::BTreeSet<VertexSet> =
                face_sets[i].intersection(&face_sets[j]).copied().collect();
            if both != common {
                return Err(Error::InvalidCertificate(format!(
                    "pieces {} and {} meet outside the common subcomplex",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    let common_vertices = common.iter().fold(VertexSet::EMPTY, |acc, f| acc | *f);
    for (i, s) in face_sets.iter().enumerate() {
        if s.iter()
            .any(|f| f.is_subset(common_vertices) && !common.contains(f))
        {
            return Err(Error::InvalidCertificate(format!(
                "common subcomplex is not full in piece {}",
                i + 1
            )));
        }
    }
    let all: Vec<VertexSet> = raw.iter().flat_map(|p| p.facets().to_vec()).collect();
    let complex = SimplicialComplex::new(n, all)?;
    let c = SimplicialComplex::from_facets_raw(n, common.iter().copied().collect())
        .full_subcomplex(common_vertices)
        .complex;
    let common_cat = if c.n() == 0 || c.is_simplex() {
        Some(0)
    } else if c.is_simplex_boundary() || hmf_check(&c).map(|r| r.holds).unwrap_or(false) {
        Some(1)
    } else {
        None
    };
    let pieces = raw.iter().map(|p| p.compact().complex).collect();
    let mut node = ConstructionCertificate::new(NodeKind::Gluing, complex, None);
    node.gluing = Some(GluingData {
        pieces,
        common: c,
        common_cat,
    });
    Ok(node)
}

//! Complex and polytope documents.
//!
//! A complex document is a JSON object `{"version":1,"name":..,"n":..,"facets":[[..],..]}`
//! with an optional construction `certificate`. The terse text form lists one facet per
//! line as whitespace-separated labels; `#` starts a comment and `n` is the largest label.

use serde::{Deserialize, Serialize};

use crate::certificate::Construction;
use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::sphere::sphere_recognize_le2;
use crate::vertex_set::VertexSet;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexDocument {
    #[serde(default = "default_version")]
    pub version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub n: usize,
    pub facets: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Construction>,
}

fn default_version() -> u32 {
    FORMAT_VERSION
}

impl ComplexDocument {
    pub fn from_complex(k: &SimplicialComplex, name: Option<String>) -> Self {
        ComplexDocument {
            version: FORMAT_VERSION,
            name,
            n: k.n(),
            facets: k.facet_lists(),
            certificate: None,
        }
    }

    /// Validates the facet lists and builds the complex.
    pub fn complex(&self) -> Result<SimplicialComplex> {
        let mut sets = Vec::with_capacity(self.facets.len());
        for f in &self.facets {
            if let Some(&bad) = f.iter().find(|&&v| v == 0 || v > self.n) {
                return Err(Error::LabelOutOfRange {
                    label: bad,
                    n: self.n,
                });
            }
            sets.push(VertexSet::try_from_labels(f.iter().copied())?);
        }
        SimplicialComplex::new(self.n, sets)
    }

    /// Same document with facets reduced to the maximal ones, each sorted, in lexicographic
    /// order.
    pub fn canonical(&self) -> Result<Self> {
        let k = self.complex()?;
        Ok(ComplexDocument {
            facets: k.facet_lists(),
            ..self.clone()
        })
    }

    /// Canonical single-line JSON followed by a newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string(self).expect("documents serialize");
        s.push('\n');
        s
    }
}

/// Parses a JSON or terse text document and validates the complex.
pub fn parse_complex(text: &str) -> Result<(SimplicialComplex, ComplexDocument)> {
    let doc = if text.trim_start().starts_with('{') {
        serde_json::from_str::<ComplexDocument>(text).map_err(|e| Error::Syntax {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?
    } else {
        parse_text(text)?
    };
    let k = doc.complex()?;
    let doc = ComplexDocument {
        facets: k.facet_lists(),
        ..doc
    };
    Ok((k, doc))
}

fn parse_text(text: &str) -> Result<ComplexDocument> {
    let mut facets = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let body = line.split('#').next().unwrap_or("");
        let mut facet = Vec::new();
        let mut rest = body;
        while let Some(start) = rest.find(|c: char| !c.is_whitespace()) {
            let token_start = body.len() - rest.len() + start;
            let token = rest[start..].split_whitespace().next().unwrap();
            let label = token.parse::<usize>().map_err(|_| Error::Syntax {
                line: i + 1,
                column: token_start + 1,
                message: format!("expected a vertex label, found {token:?}"),
            })?;
            facet.push(label);
            rest = &rest[start + token.len()..];
        }
        if !facet.is_empty() {
            facets.push(facet);
        }
    }
    let n = facets.iter().flatten().copied().max().unwrap_or(0);
    Ok(ComplexDocument {
        version: FORMAT_VERSION,
        name: None,
        n,
        facets,
        certificate: None,
    })
}

/// The 2-faces of a simple 3-polytope as cyclic vertex lists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolytopeDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub faces: Vec<Vec<usize>>,
}

/// Face-size census of a polytope.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FaceCensus {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub pentagons: usize,
    pub hexagons: usize,
}

impl FaceCensus {
    /// Only pentagons and hexagons, hence exactly 12 pentagons for a simple polytope.
    pub fn is_fullerene(&self) -> bool {
        self.pentagons + self.hexagons == self.faces && self.pentagons == 12
    }
}

impl PolytopeDocument {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Syntax {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    pub fn census(&self) -> FaceCensus {
        let vertices: std::collections::BTreeSet<usize> =
            self.faces.iter().flatten().copied().collect();
        let edges: usize = self.faces.iter().map(|f| f.len()).sum::<usize>() / 2;
        FaceCensus {
            vertices: vertices.len(),
            edges,
            faces: self.faces.len(),
            pentagons: self.faces.iter().filter(|f| f.len() == 5).count(),
            hexagons: self.faces.iter().filter(|f| f.len() == 6).count(),
        }
    }

    /// Checks that every face is a cycle of at least 3 distinct vertices, every edge lies on
    /// exactly two faces, and every vertex on exactly three.
    pub fn validate(&self) -> Result<()> {
        use std::collections::BTreeMap;
        let mut edge_count: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        let mut vertex_count: BTreeMap<usize, usize> = BTreeMap::new();
        for (i, f) in self.faces.iter().enumerate() {
            let distinct: std::collections::BTreeSet<usize> = f.iter().copied().collect();
            if f.len() < 3 || distinct.len() != f.len() {
                return Err(Error::NotSimple(format!("face {} is not a cycle", i + 1)));
            }
            for (j, &a) in f.iter().enumerate() {
                let b = f[(j + 1) % f.len()];
                *edge_count.entry((a.min(b), a.max(b))).or_default() += 1;
                *vertex_count.entry(a).or_default() += 1;
            }
        }
        if let Some(((a, b), c)) = edge_count.iter().find(|(_, c)| **c != 2) {
            return Err(Error::NotSimple(format!("edge {a}-{b} lies on {c} faces")));
        }
        if let Some((v, c)) = vertex_count.iter().find(|(_, c)| **c != 3) {
            return Err(Error::NotSimple(format!("vertex {v} lies on {c} faces")));
        }
        Ok(())
    }
}

/// Boundary of the dual simplicial polytope: one vertex per 2-face (numbered in document
/// order) and one triangle per polytope vertex, spanned by its three faces.
pub fn dual_boundary(p: &PolytopeDocument) -> Result<SimplicialComplex> {
    p.validate()?;
    let mut incident: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for (i, f) in p.faces.iter().enumerate() {
        for &v in f {
            incident.entry(v).or_default().push(i + 1);
        }
    }
    let triangles: Vec<VertexSet> = incident
        .values()
        .map(|fs| VertexSet::try_from_labels(fs.iter().copied()))
        .collect::<Result<_>>()?;
    let k = SimplicialComplex::new(p.faces.len(), triangles)?;
    if sphere_recognize_le2(&k) != Some(2) || k.facets().len() != incident.len() {
        return Err(Error::NotASphere);
    }
    Ok(k)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_documents() {
        let (k, doc) = parse_complex(r#"{"n":3,"facets":[[2,3],[1,2],[1,3]]}"#).unwrap();
        assert_eq!(k, SimplicialComplex::simplex_boundary(3));
        assert_eq!(
            doc.to_json(),
            "{\"version\":1,\"n\":3,\"facets\":[[1,2],[1,3],[2,3]]}\n"
        );
        let (again, doc2) = parse_complex(&doc.to_json()).unwrap();
        assert_eq!(again, k);
        assert_eq!(doc2.to_json(), doc.to_json());
    }

    #[test]
    fn text_documents() {
        let (k, _) = parse_complex("# square\n1 2\n2 3\n3 4\n1 4\n").unwrap();
        assert_eq!(k, SimplicialComplex::polygon(4));
        match parse_complex("1 2\n2 x\n") {
            Err(Error::Syntax { line, column, .. }) => assert_eq!((line, column), (2, 3)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn validation_errors() {
        assert!(matches!(
            parse_complex(r#"{"n":3,"facets":[[1,2]]}"#),
            Err(Error::GhostVertex(3))
        ));
        assert!(matches!(
            parse_complex(r#"{"n":2,"facets":[[1,3]]}"#),
            Err(Error::LabelOutOfRange { label: 3, n: 2 })
        ));
        assert!(matches!(
            parse_complex(r#"{"n":2,"facets":[[1],]}"#),
            Err(Error::Syntax { line: 1, .. })
        ));
    }

    #[test]
    fn tetrahedron_is_self_dual() {
        let p = PolytopeDocument {
            name: None,
            faces: vec![vec![1, 2, 3], vec![1, 2, 4], vec![1, 3, 4], vec![2, 3, 4]],
        };
        assert_eq!(
            dual_boundary(&p).unwrap(),
            SimplicialComplex::simplex_boundary(4)
        );
    }

    #[test]
    fn non_simple_polytopes_are_rejected() {
        // square pyramid: the apex lies on four faces
        let p = PolytopeDocument {
            name: None,
            faces: vec![
                vec![1, 2, 3, 4],
                vec![1, 2, 5],
                vec![2, 3, 5],
                vec![3, 4, 5],
                vec![4, 1, 5],
            ],
        };
        assert!(matches!(dual_boundary(&p), Err(Error::NotSimple(_))));
    }
}

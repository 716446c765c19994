//! Bounds on the Lusternik–Schnirelmann category of `Z_K`, and the decision procedure for
//! spheres of dimension at most 2 and certified members of `𝒞_d`.
//!
//! The only lower bound is the cup length. Upper bounds come from the dimension, the real
//! moment-angle profile, neighbourliness, the HMF property, and from construction
//! certificates (class values, products, connected sums, gluings and simplicial wedges).

use serde::Serialize;

use crate::certificate::{ConstructionCertificate, NodeKind};
use crate::error::{Error, Result};
use crate::filtration::{classify_sphere_d012, filt_low, Filt};
use crate::hmf::hmf_check_with;
use crate::sphere::sphere_recognize_le2;
use crate::tor::{Analyzer, CupLength};

pub const MASSEY_NOTE: &str =
    "Massey product condition holds as a consequence of the category bound; \
it was not computed";
pub const NILPOTENCY_NOTE: &str =
    "only the nilpotency condition was computed; the Massey product condition \
is not established";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    Lower,
    Upper,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Rule {
    CupLength,
    Contractible,
    Dimension,
    RealMomentAngle,
    Neighbourly,
    Hmf,
    SphereClassification,
    ConstructionClass,
    Product,
    ConnectedSum,
    Gluing,
    SimplicialWedge,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CatBound {
    pub kind: BoundKind,
    pub value: usize,
    pub rule: Rule,
    pub detail: String,
}

impl CatBound {
    fn upper(value: usize, rule: Rule, detail: impl Into<String>) -> Self {
        CatBound {
            kind: BoundKind::Upper,
            value,
            rule,
            detail: detail.into(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GolodBasis {
    CatBound,
    NilpotencyOnly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GolodVerdict {
    pub m: usize,
    pub basis: GolodBasis,
    pub massey_note: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CatReport {
    pub n: usize,
    pub dim: isize,
    pub bounds: Vec<CatBound>,
    pub best_lower: Option<usize>,
    pub best_upper: Option<usize>,
    pub exact: Option<usize>,
    pub golod: Option<GolodVerdict>,
    pub notes: Vec<String>,
    #[serde(skip)]
    pub cup_length: Option<CupLength>,
}

pub fn cat_bounds(
    k: &crate::SimplicialComplex,
    certificate: Option<&ConstructionCertificate>,
) -> Result<CatReport> {
    cat_bounds_with(&Analyzer::new(k), certificate)
}

pub fn cat_bounds_with(
    a: &Analyzer,
    certificate: Option<&ConstructionCertificate>,
) -> Result<CatReport> {
    report(a, certificate, Vec::new())
}

fn report(
    a: &Analyzer,
    certificate: Option<&ConstructionCertificate>,
    extra: Vec<CatBound>,
) -> Result<CatReport> {
    let k = a.complex();
    if let Some(c) = certificate {
        if c.complex != *k {
            return Err(Error::InvalidCertificate(
                "the construction builds a different complex".into(),
            ));
        }
    }
    let mut notes = Vec::new();
    let mut bounds = upper_bounds(a, certificate, &mut notes);
    bounds.extend(extra);
    let best_upper = bounds.iter().map(|b| b.value).min();

    let mut cup_length = None;
    if k.n() > a.limit() {
        notes.push(format!(
            "cup length skipped: {} vertices exceeds the sweep limit of {}",
            k.n(),
            a.limit()
        ));
    } else {
        let cap = best_upper.map_or(usize::MAX, |u| u + 1);
        let c = a.cup_length_capped(cap)?;
        bounds.push(CatBound {
            kind: BoundKind::Lower,
            value: c.length,
            rule: Rule::CupLength,
            detail: if c.capped {
                "search stopped past the best upper bound".into()
            } else {
                String::new()
            },
        });
        cup_length = Some(c);
    }
    let best_lower = cup_length.as_ref().map(|c| c.length);
    if let (Some(lower), Some(upper)) = (best_lower, best_upper) {
        if lower > upper {
            return Err(Error::InconsistentBounds { lower, upper });
        }
    }
    let exact = match (best_lower, best_upper) {
        (Some(l), Some(u)) if l == u => Some(l),
        _ => None,
    };
    let golod = match (best_upper, best_lower) {
        (Some(u), _) => Some(GolodVerdict {
            m: u,
            basis: GolodBasis::CatBound,
            massey_note: MASSEY_NOTE.into(),
        }),
        (None, Some(l)) => Some(GolodVerdict {
            m: l,
            basis: GolodBasis::NilpotencyOnly,
            massey_note: NILPOTENCY_NOTE.into(),
        }),
        (None, None) => None,
    };
    Ok(CatReport {
        n: k.n(),
        dim: k.dim(),
        bounds,
        best_lower,
        best_upper,
        exact,
        golod,
        notes,
        cup_length,
    })
}

fn best(bounds: &[CatBound]) -> usize {
    bounds
        .iter()
        .map(|b| b.value)
        .min()
        .expect("the dimension bound always applies")
}

/// Every applicable upper bound for `Z_K`.
fn upper_bounds(
    a: &Analyzer,
    certificate: Option<&ConstructionCertificate>,
    notes: &mut Vec<String>,
) -> Vec<CatBound> {
    let k = a.complex();
    let mut out = Vec::new();
    if k.n() == 0 || k.is_simplex() {
        out.push(CatBound::upper(0, Rule::Contractible, "Z_K is a polydisk"));
        return out;
    }
    let dim = k.dim().max(0) as usize;
    out.push(CatBound::upper(
        dim + 1,
        Rule::Dimension,
        format!("dim K = {dim}"),
    ));
    let nb = k.neighbourliness();
    if nb >= 1 {
        out.push(CatBound::upper(
            (1 + dim) / nb,
            Rule::Neighbourly,
            format!("K is {nb}-neighbourly"),
        ));
    }
    if k.n() <= a.limit() {
        if let Ok(p) = a.real_mac_profile() {
            out.push(CatBound::upper(
                p.bound(),
                Rule::RealMomentAngle,
                format!("hd = {}, hc = {}", p.hd, p.hc),
            ));
        }
        if hmf_check_with(a).is_ok_and(|r| r.holds) {
            out.push(CatBound::upper(
                1,
                Rule::Hmf,
                "homology generated by missing faces",
            ));
        }
    } else {
        notes.push(format!(
            "subset sweeps skipped: {} vertices exceeds the sweep limit of {}",
            k.n(),
            a.limit()
        ));
    }
    if let Some(c) = certificate {
        out.extend(certificate_bounds(c, a.limit(), notes));
    }
    out
}

fn node_best(node: &ConstructionCertificate, limit: usize, notes: &mut Vec<String>) -> usize {
    let a = Analyzer::new(&node.complex).with_limit(limit);
    best(&upper_bounds(&a, Some(node), notes))
}

fn certificate_bounds(
    node: &ConstructionCertificate,
    limit: usize,
    notes: &mut Vec<String>,
) -> Vec<CatBound> {
    let mut out = Vec::new();
    if let (Some(m), Some(d)) = (node.m, node.class_dim) {
        out.push(CatBound::upper(
            m,
            Rule::ConstructionClass,
            format!("certified member of class C_{d}"),
        ));
    }
    match node.kind {
        NodeKind::Join => {
            let sum: usize = node
                .children
                .iter()
                .map(|c| node_best(c, limit, notes))
                .sum();
            out.push(CatBound::upper(
                sum,
                Rule::Product,
                "Z_K is the product of the factors' moment-angle complexes",
            ));
        }
        NodeKind::ConnectedSum => {
            if node.disjoint == Some(true) {
                let d = node.sphere_dim.unwrap_or(0);
                let worst = node
                    .children
                    .iter()
                    .map(|c| skeleton_bound(c, d))
                    .max()
                    .unwrap_or(0);
                out.push(CatBound::upper(
                    worst.max(1) + 1,
                    Rule::ConnectedSum,
                    format!(
                        "{} summands glued along disjoint faces",
                        node.children.len()
                    ),
                ));
            } else {
                notes.push(
                    "connected-sum bound skipped: gluing faces are not pairwise disjoint".into(),
                );
            }
        }
        NodeKind::Wedge => {
            let parent = node_best(&node.children[0], limit, notes);
            out.push(CatBound::upper(
                parent,
                Rule::SimplicialWedge,
                "best upper bound of the base complex",
            ));
        }
        NodeKind::Gluing => {
            let g = node
                .gluing
                .as_ref()
                .expect("gluing nodes carry their pieces");
            match g.common_cat {
                Some(c) => {
                    let worst = g
                        .pieces
                        .iter()
                        .map(|p| {
                            best(&upper_bounds(
                                &Analyzer::new(p).with_limit(limit),
                                None,
                                notes,
                            ))
                        })
                        .max()
                        .unwrap_or(0);
                    out.push(CatBound::upper(
                        worst.max(1) + c,
                        Rule::Gluing,
                        format!(
                            "{} pieces along a common full subcomplex with Cat = {c}",
                            g.pieces.len()
                        ),
                    ));
                }
                None => notes.push(
                    "gluing bound skipped: no category bound for the common subcomplex".into(),
                ),
            }
        }
        NodeKind::Leaf => {}
    }
    out
}

/// Upper bound for `cat(Z_{sk(K, d-1)})` of a connected-sum summand: `d` in general, and
/// `Σ max{1, m_i - 1} + k - 1` for a join of `k` spheres of positive dimension.
fn skeleton_bound(node: &ConstructionCertificate, d: usize) -> usize {
    let mut b = d;
    if let Some(fs) = &node.factors {
        if fs.iter().all(|f| f.dim >= 1) {
            let joined = fs
                .iter()
                .map(|f| f.m.saturating_sub(1).max(1))
                .sum::<usize>()
                + fs.len()
                - 1;
            b = b.min(joined);
        }
    }
    b
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    LowSphere,
    Construction,
}

/// `cat(Z_K) = m` together with the computations that determined it.
#[derive(Clone, Debug, Serialize)]
pub struct Decision {
    pub m: usize,
    pub dim: usize,
    pub route: Route,
    pub filt: Option<Filt>,
    pub classified: Option<usize>,
    pub cup_length: Option<usize>,
    pub report: CatReport,
    pub golod: GolodVerdict,
}

pub fn theorem_main_decide(
    k: &crate::SimplicialComplex,
    certificate: Option<&ConstructionCertificate>,
) -> Result<Decision> {
    theorem_main_decide_with(&Analyzer::new(k), certificate)
}

/// Decides `m = cat(Z_K)` for a sphere of dimension at most 2 (where `m = filt(K)` equals
/// the classification value) or a certified member of `𝒞_d`; the cup length must agree
/// whenever it is computable.
pub fn theorem_main_decide_with(
    a: &Analyzer,
    certificate: Option<&ConstructionCertificate>,
) -> Result<Decision> {
    let k = a.complex();
    let (m, dim, route, filt, classified, extra) = if let Some(d) = sphere_recognize_le2(k) {
        let f = filt_low(a)?;
        let c = classify_sphere_d012(k)?;
        if f.value != c {
            return Err(Error::CrossCheckMismatch(format!(
                "filt(K) = {} but classification gives {c}",
                f.value
            )));
        }
        let bound = CatBound::upper(c, Rule::SphereClassification, format!("{d}-sphere"));
        (c, d, Route::LowSphere, Some(f), Some(c), vec![bound])
    } else {
        match certificate {
            Some(cert) if cert.m.is_some() && cert.class_dim.is_some() => {
                let filt = cert.witness.clone().map(|w| Filt {
                    value: w.len(),
                    exact: cert.filt_exact,
                    witness: Some(w),
                });
                (
                    cert.m.unwrap(),
                    cert.class_dim.unwrap(),
                    Route::Construction,
                    filt,
                    None,
                    Vec::new(),
                )
            }
            Some(_) => {
                return Err(Error::OutOfTheoremScope(
                    "the certificate does not establish class membership".into(),
                ))
            }
            None => {
                return Err(Error::OutOfTheoremScope(
                    "not a sphere of dimension at most 2 and no construction certificate".into(),
                ))
            }
        }
    };
    let mut report = report(a, certificate, extra)?;
    let cup_length = report.best_lower;
    if let Some(c) = cup_length {
        if c != m {
            return Err(Error::CrossCheckMismatch(format!(
                "cup length {c} but m = {m}"
            )));
        }
    }
    if let Some(f) = &filt {
        if f.value != m {
            report.notes.push(format!(
                "the certified spherical filtration has length {} < m = {m}",
                f.value
            ));
        }
    }
    report.exact = Some(m);
    let golod = GolodVerdict {
        m,
        basis: GolodBasis::CatBound,
        massey_note: MASSEY_NOTE.into(),
    };
    report.golod = Some(golod.clone());
    Ok(Decision {
        m,
        dim,
        route,
        filt,
        classified,
        cup_length,
        report,
        golod,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certificate::{certify, Construction};
    use crate::SimplicialComplex;

    fn leaf(k: &SimplicialComplex) -> Construction {
        Construction::Leaf {
            n: k.n(),
            facets: k.facet_lists(),
            name: None,
        }
    }

    fn s0() -> SimplicialComplex {
        SimplicialComplex::from_lists(2, &[&[1], &[2]]).unwrap()
    }

    #[test]
    fn tetrahedron_boundary_is_exact_one() {
        let r = cat_bounds(&SimplicialComplex::simplex_boundary(4), None).unwrap();
        assert_eq!(r.best_lower, Some(1));
        assert_eq!(r.best_upper, Some(1));
        assert_eq!(r.exact, Some(1));
        assert!(r
            .bounds
            .iter()
            .any(|b| b.rule == Rule::Dimension && b.value == 3));
    }

    #[test]
    fn simplex_is_contractible() {
        let r = cat_bounds(&SimplicialComplex::simplex(3), None).unwrap();
        assert_eq!(r.exact, Some(0));
    }

    #[test]
    fn polygons_decide_two() {
        for n in 4..=7 {
            let d = theorem_main_decide(&SimplicialComplex::polygon(n), None).unwrap();
            assert_eq!(d.m, 2);
            assert_eq!(d.golod.m, 2);
            assert_eq!(d.cup_length, Some(2));
        }
    }

    #[test]
    fn octahedron_by_both_routes() {
        let c = certify(&Construction::Join {
            factors: vec![leaf(&s0()), leaf(&s0()), leaf(&s0())],
        })
        .unwrap();
        let k = c.complex.clone();
        let with = theorem_main_decide(&k, Some(&c)).unwrap();
        let without = theorem_main_decide(&k, None).unwrap();
        assert_eq!(with.m, 3);
        assert_eq!(without.m, 3);
        assert!(with
            .report
            .bounds
            .iter()
            .any(|b| b.rule == Rule::ConstructionClass && b.value == 3));
    }

    #[test]
    fn certified_three_sphere() {
        let c = certify(&Construction::Join {
            factors: vec![
                leaf(&SimplicialComplex::polygon(3)),
                leaf(&SimplicialComplex::polygon(4)),
            ],
        })
        .unwrap();
        let d = theorem_main_decide(&c.complex, Some(&c)).unwrap();
        assert_eq!(d.m, 3);
        assert_eq!(d.route, Route::Construction);
    }

    #[test]
    fn wedge_inherits_the_base_bound() {
        let c = certify(&Construction::Wedge {
            base: Box::new(leaf(&SimplicialComplex::polygon(4))),
            copies: vec![2, 1, 1, 1],
        })
        .unwrap();
        let r = cat_bounds(&c.complex, Some(&c)).unwrap();
        assert!(r
            .bounds
            .iter()
            .any(|b| b.rule == Rule::SimplicialWedge && b.value == 2));
        assert!(r.best_lower.unwrap() <= 2);
    }

    #[test]
    fn non_spheres_are_out_of_scope() {
        let k = SimplicialComplex::from_lists(3, &[&[1, 2], &[2, 3]]).unwrap();
        assert!(matches!(
            theorem_main_decide(&k, None),
            Err(Error::OutOfTheoremScope(_))
        ));
    }
}

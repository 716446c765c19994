//! Command bodies: each returns a JSON result and its table rendering.

use macx_core::bounds::{cat_bounds_with, theorem_main_decide_with, CatReport, GolodVerdict};
use macx_core::certificate::{certify, Construction, ConstructionCertificate, SumFace};
use macx_core::cycles::{chordless_cycles, is_chordal};
use macx_core::filtration::filt_low;
use macx_core::hmf::hmf_check_with;
use macx_core::homology::HomologyProfile;
use macx_core::io::{dual_boundary, ComplexDocument, PolytopeDocument};
use macx_core::koszul::koszul_tor_with_limit;
use macx_core::sphere::{sphere_diagnosis, sphere_recognize_le2};
use macx_core::tor::{Analyzer, TorClass};
use macx_core::well_behaved::{well_behaved_with, Verdict};
use macx_core::{Error, Result, SimplicialComplex, VertexSet};
use serde_json::{json, Value};

#[derive(Clone, Debug, Default)]
pub struct Args {
    pub subset: Option<String>,
    pub witness: bool,
    pub k: usize,
}

pub fn compute(
    name: &str,
    args: &Args,
    k: &SimplicialComplex,
    doc: &ComplexDocument,
    limit: usize,
) -> Result<(Value, Vec<String>)> {
    let a = Analyzer::new(k).with_limit(limit);
    match name {
        "info" => Ok(info(k)),
        "homology" => homology(k, args.subset.as_deref()),
        "betti" => betti(&a),
        "cuplen" => cuplen(&a, args.witness),
        "filt" => filt(&a, args.witness),
        "cat" => cat(&a, doc).map(|(v, t, _)| (v, t)),
        "golod" => golod(&a, doc),
        "check sphere" => Ok(check_sphere(k)),
        "check chordal" => Ok(check_chordal(k)),
        "check neighbourly" => Ok(check_neighbourly(k, args.k)),
        "check well-behaved" => check_well_behaved(&a),
        "check hmf" => check_hmf(&a),
        "oracle koszul" => oracle_koszul(&a, limit),
        other => unreachable!("unknown command {other}"),
    }
}

fn to_value<T: serde::Serialize + ?Sized>(x: &T) -> Value {
    serde_json::to_value(x).expect("results serialize")
}

fn join_sets(sets: &[VertexSet]) -> String {
    if sets.is_empty() {
        return "none".into();
    }
    sets.iter()
        .map(|s| s.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn info(k: &SimplicialComplex) -> (Value, Vec<String>) {
    let cycles = chordless_cycles(k, 3);
    let (short, long): (Vec<VertexSet>, Vec<VertexSet>) =
        cycles.into_iter().partition(|c| c.len() == 3);
    let sphere = sphere_recognize_le2(k);
    let result = json!({
        "n": k.n(),
        "dim": k.dim(),
        "f_vector": k.f_vector(),
        "euler_characteristic": k.euler_characteristic(),
        "pure": k.is_pure(),
        "neighbourliness": k.neighbourliness(),
        "sphere_dim": sphere,
        "missing_faces": k.missing_faces(),
        "chordless_3_cycles": short,
        "chordless_long_cycles": long,
    });
    let table = vec![
        format!("n                     {}", k.n()),
        format!("dim                   {}", k.dim()),
        format!("f-vector              {:?}", k.f_vector()),
        format!("euler characteristic  {}", k.euler_characteristic()),
        format!("neighbourliness       {}", k.neighbourliness()),
        format!("sphere                {}", sphere_diagnosis(k)),
        format!("missing faces         {}", join_sets(&k.missing_faces())),
        format!("chordless 3-cycles    {}", join_sets(&short)),
        format!("chordless >=4-cycles  {}", join_sets(&long)),
    ];
    (result, table)
}

fn parse_labels(text: &str) -> Result<Vec<usize>> {
    text.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .enumerate()
        .map(|(i, t)| {
            t.parse::<usize>().map_err(|_| Error::Syntax {
                line: 1,
                column: i + 1,
                message: format!("expected a vertex label, found {t:?}"),
            })
        })
        .collect()
}

fn parse_subset(text: &str, n: usize) -> Result<VertexSet> {
    let labels = parse_labels(text)?;
    if let Some(&bad) = labels.iter().find(|&&v| v == 0 || v > n) {
        return Err(Error::LabelOutOfRange { label: bad, n });
    }
    VertexSet::try_from_labels(labels)
}

fn profile_lines(h: &HomologyProfile) -> Vec<String> {
    let mut out = vec!["degree  group".to_string()];
    for i in -1..=h.top_degree() {
        out.push(format!("{i:>6}  {}", h.group(i)));
    }
    out
}

fn homology(k: &SimplicialComplex, subset: Option<&str>) -> Result<(Value, Vec<String>)> {
    let s = match subset {
        Some(text) => parse_subset(text, k.n())?,
        None => k.vertex_set(),
    };
    let h = macx_core::cache::subset_homology(k, s);
    let mut table = vec![format!("reduced homology of K_{s}")];
    table.extend(profile_lines(&h));
    Ok((json!({ "subset": s, "homology": h }), table))
}

fn betti(a: &Analyzer) -> Result<(Value, Vec<String>)> {
    let b = a.hochster_decomposition()?;
    let mut table = vec![format!(
        "{:>4} {:>4} {:>6} {:>6}  torsion",
        "s", "p", "deg", "rank"
    )];
    for e in &b.entries {
        let torsion = if e.torsion.is_empty() {
            "-".to_string()
        } else {
            e.torsion
                .iter()
                .map(|t| format!("Z/{t}"))
                .collect::<Vec<_>>()
                .join(" ")
        };
        table.push(format!(
            "{:>4} {:>4} {:>6} {:>6}  {torsion}",
            e.size, e.degree, e.total_degree, e.rank
        ));
    }
    let totals = b.total_betti();
    table.push(format!(
        "total ranks of H^*(Z_K), degrees 0..={}: {}",
        totals.len() - 1,
        totals
            .iter()
            .map(|r| r.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    ));
    let result = json!({
        "n": b.n,
        "entries": b.entries,
        "subsets": b.subsets,
        "total_betti": totals,
    });
    Ok((result, table))
}

fn class_value(c: &TorClass) -> Value {
    json!({ "subset": c.subset, "degree": c.degree, "total_degree": c.total_degree() })
}

fn class_text(c: &TorClass) -> String {
    format!(
        "H^{}(K_{}) in degree {}",
        c.degree,
        c.subset,
        c.total_degree()
    )
}

fn cuplen(a: &Analyzer, witness: bool) -> Result<(Value, Vec<String>)> {
    let c = a.cup_length()?;
    let mut result = json!({ "cup_length": c.length, "nilpotency": c.length + 1 });
    let mut table = vec![format!("cup length  {}", c.length)];
    if witness {
        result["factors"] = Value::Array(c.factors.iter().map(class_value).collect());
        result["product"] = c.product.as_ref().map(class_value).unwrap_or(Value::Null);
        for (i, f) in c.factors.iter().enumerate() {
            table.push(format!("factor {}    {}", i + 1, class_text(f)));
        }
        if let Some(p) = &c.product {
            table.push(format!("product     {}", class_text(p)));
        }
    }
    Ok((result, table))
}

fn filt(a: &Analyzer, witness: bool) -> Result<(Value, Vec<String>)> {
    a.check_limit()?;
    let f = filt_low(a)?;
    let mut result = json!({ "filt": f.value, "exact": f.exact });
    let mut table = vec![format!("filt  {}", f.value)];
    if witness {
        result["witness"] = to_value(&f.witness);
        for step in f.witness.iter().flat_map(|w| &w.steps) {
            table.push(format!("  S^{}  on {}", step.dim, step.subset));
        }
    }
    Ok((result, table))
}

fn certificate(doc: &ComplexDocument) -> Result<Option<ConstructionCertificate>> {
    doc.certificate.as_ref().map(certify).transpose()
}

/// Exact decision when the complex is in scope, bounds otherwise.
fn cat(a: &Analyzer, doc: &ComplexDocument) -> Result<(Value, Vec<String>, Option<GolodVerdict>)> {
    let cert = certificate(doc)?;
    if let Some(c) = &cert {
        if c.complex != *a.complex() {
            return Err(Error::InvalidCertificate(
                "the certificate builds a different complex".into(),
            ));
        }
    }
    match theorem_main_decide_with(a, cert.as_ref()) {
        Ok(d) => {
            let mut table = vec![format!("cat(Z_K)  {} (exact)", d.m)];
            table.extend(bound_lines(&d.report));
            table.push(format!("golod     {}", d.golod.m));
            let golod = d.golod.clone();
            Ok((to_value(&d), table, Some(golod)))
        }
        Err(Error::OutOfTheoremScope(why)) => {
            let mut report = cat_bounds_with(a, cert.as_ref())?;
            report.notes.push(format!("not decided exactly: {why}"));
            let show = |x: Option<usize>| x.map_or("?".to_string(), |v| v.to_string());
            let mut table = vec![format!(
                "cat(Z_K)  {} <= cat <= {}",
                show(report.best_lower),
                show(report.best_upper)
            )];
            table.extend(bound_lines(&report));
            if let Some(g) = &report.golod {
                table.push(format!("golod     {} (from the upper bound)", g.m));
            }
            let golod = report.golod.clone();
            Ok((json!({ "report": report }), table, golod))
        }
        Err(e) => Err(e),
    }
}

fn bound_lines(r: &CatReport) -> Vec<String> {
    let mut out: Vec<String> = r
        .bounds
        .iter()
        .map(|b| {
            let name = |x: Value| x.as_str().unwrap_or_default().replace('_', " ");
            let detail = if b.detail.is_empty() {
                String::new()
            } else {
                format!(": {}", b.detail)
            };
            format!(
                "  {} {:>3}  {}{detail}",
                name(to_value(&b.kind)),
                b.value,
                name(to_value(&b.rule))
            )
        })
        .collect();
    out.extend(r.notes.iter().map(|n| format!("  note: {n}")));
    out
}

fn golod(a: &Analyzer, doc: &ComplexDocument) -> Result<(Value, Vec<String>)> {
    let (_, _, verdict) = cat(a, doc)?;
    match verdict {
        Some(g) => {
            let table = vec![
                format!("m-Golod with m = {}", g.m),
                format!("  {}", g.massey_note),
            ];
            Ok((to_value(&g), table))
        }
        None => Ok((Value::Null, vec!["no Golod verdict".into()])),
    }
}

fn check_sphere(k: &SimplicialComplex) -> (Value, Vec<String>) {
    let d = sphere_recognize_le2(k);
    let diagnosis = sphere_diagnosis(k);
    (
        json!({ "sphere": d.is_some(), "dim": d, "diagnosis": diagnosis }),
        vec![diagnosis],
    )
}

fn check_chordal(k: &SimplicialComplex) -> (Value, Vec<String>) {
    let chordal = is_chordal(k);
    let example = if chordal {
        None
    } else {
        chordless_cycles(k, 4).first().copied()
    };
    let line = match example {
        None => "chordal".to_string(),
        Some(c) => format!("not chordal: chordless cycle on {c}"),
    };
    (
        json!({ "chordal": chordal, "chordless_cycle": example }),
        vec![line],
    )
}

fn check_neighbourly(k: &SimplicialComplex, m: usize) -> (Value, Vec<String>) {
    let holds = k.is_k_neighbourly(m);
    let best = k.neighbourliness();
    let line = format!(
        "{}{m}-neighbourly (largest: {best})",
        if holds { "" } else { "not " }
    );
    (
        json!({ "k": m, "neighbourly": holds, "neighbourliness": best }),
        vec![line],
    )
}

fn check_well_behaved(a: &Analyzer) -> Result<(Value, Vec<String>)> {
    let r = well_behaved_with(a)?;
    let mut table = vec![match r.verdict {
        Verdict::Holds => "well-behaved".to_string(),
        Verdict::Fails => "not well-behaved".to_string(),
        Verdict::Inconclusive => "inconclusive".to_string(),
    }];
    if let Some(f) = &r.failure {
        table.push(format!(
            "  condition ({}) fails on {}: {}",
            f.condition,
            join_sets(&f.subsets),
            f.detail
        ));
    }
    for note in &r.inconclusive {
        table.push(format!(
            "  condition ({}) unresolved on {}: {}",
            note.condition,
            join_sets(&note.subsets),
            note.detail
        ));
    }
    Ok((to_value(&r), table))
}

fn check_hmf(a: &Analyzer) -> Result<(Value, Vec<String>)> {
    let r = hmf_check_with(a)?;
    let mut table = vec![if r.holds {
        "homology generated by minimal non-faces"
    } else {
        "not HMF"
    }
    .to_string()];
    if let Some(f) = &r.failure {
        table.push(format!("  fails on {}: {}", f.subset, f.reason));
    }
    Ok((to_value(&r), table))
}

fn oracle_koszul(a: &Analyzer, limit: usize) -> Result<(Value, Vec<String>)> {
    let koszul = koszul_tor_with_limit(a.complex(), limit.min(macx_core::koszul::KOSZUL_LIMIT))?;
    let hochster = a.hochster_decomposition()?.total_betti();
    let mut trimmed = koszul.trimmed_ranks();
    let mut expected = hochster.clone();
    for v in [&mut trimmed, &mut expected] {
        while v.len() > 1 && v.last() == Some(&0) {
            v.pop();
        }
    }
    if trimmed != expected {
        return Err(Error::CrossCheckMismatch(format!(
            "Koszul ranks {trimmed:?} but Hochster ranks {expected:?}"
        )));
    }
    let show = |v: &[usize]| {
        v.iter()
            .map(|r| r.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    };
    let table = vec![
        format!("koszul    {}", show(&trimmed)),
        format!("hochster  {}", show(&expected)),
        "agree".into(),
    ];
    Ok((
        json!({ "koszul": trimmed, "hochster": expected, "agree": true }),
        table,
    ))
}

fn recipe(doc: &ComplexDocument) -> Construction {
    doc.certificate
        .clone()
        .unwrap_or_else(|| Construction::Leaf {
            n: doc.n,
            facets: doc.facets.clone(),
            name: doc.name.clone(),
        })
}

fn document(c: Construction, name: String) -> Result<ComplexDocument> {
    let built = certify(&c)?;
    let mut doc = ComplexDocument::from_complex(&built.complex, Some(name));
    doc.certificate = Some(c);
    Ok(doc)
}

fn display_name(doc: &ComplexDocument) -> String {
    doc.name.clone().unwrap_or_else(|| "K".into())
}

pub fn construct_join(docs: &[ComplexDocument]) -> Result<ComplexDocument> {
    let name = docs.iter().map(display_name).collect::<Vec<_>>().join("*");
    document(
        Construction::Join {
            factors: docs.iter().map(recipe).collect(),
        },
        name,
    )
}

fn facet_of(doc: &ComplexDocument, text: Option<&str>) -> Result<Vec<usize>> {
    let k = doc.complex()?;
    match text {
        Some(t) => {
            let s = parse_subset(t, k.n())?;
            if !k.facets().contains(&s) {
                return Err(Error::NotAFacet(s));
            }
            Ok(s.to_vec())
        }
        None => Ok(k.facets()[0].to_vec()),
    }
}

pub fn construct_connsum(
    left: &ComplexDocument,
    right: &ComplexDocument,
    left_face: Option<&str>,
    right_face: Option<&str>,
) -> Result<ComplexDocument> {
    let gluing = SumFace {
        left: facet_of(left, left_face)?,
        right: facet_of(right, right_face)?,
        matching: None,
    };
    let name = format!("{}#{}", display_name(left), display_name(right));
    document(
        Construction::ConnectedSum {
            summands: vec![recipe(left), recipe(right)],
            gluings: vec![gluing],
        },
        name,
    )
}

pub fn construct_wedge(doc: &ComplexDocument, copies: &str) -> Result<ComplexDocument> {
    let copies = parse_labels(copies)?;
    let name = format!(
        "{}({})",
        display_name(doc),
        copies
            .iter()
            .map(|j| j.to_string())
            .collect::<Vec<_>>()
            .join(",")
    );
    document(
        Construction::Wedge {
            base: Box::new(recipe(doc)),
            copies,
        },
        name,
    )
}

pub fn dual(text: &str) -> Result<ComplexDocument> {
    let p = PolytopeDocument::parse(text)?;
    let k = dual_boundary(&p)?;
    let name = p.name.map(|n| format!("dual of {n}"));
    Ok(ComplexDocument::from_complex(&k, name))
}

//! Acceptance suite: one pass/fail line per criterion. Runs without the test harness so
//! the lines appear in order; exits non-zero if any criterion fails.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use dashu_int::IBig;
use macx_core::bounds::cat_bounds;
use macx_core::certificate::{certify, Construction};
use macx_core::cycles::chordless_cycles;
use macx_core::filtration::{classify_sphere_d012, filt};
use macx_core::fixtures::{bipyramid, icosahedron, octahedron, rp2, s0, two_spheres};
use macx_core::homology::{reduced_homology, ChainComplex};
use macx_core::io::{dual_boundary, parse_complex, PolytopeDocument};
use macx_core::koszul::koszul_tor_oracle;
use macx_core::smith::{smith_normal_form, IntegerMatrix};
use macx_core::sphere::sphere_recognize_le2;
use macx_core::tor::{cup_length, hochster_decomposition, real_mac_profile, Analyzer};
use macx_core::well_behaved::{well_behaved_check, Verdict};
use macx_core::{SimplicialComplex, VertexSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn fixtures_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

/// Every complex document shipped under `fixtures/`, by relative path.
fn fixture_files() -> Vec<(String, SimplicialComplex)> {
    let root = fixtures_dir();
    let mut out = Vec::new();
    for dir in ["", "spheres", "certified"] {
        let mut paths: Vec<PathBuf> = std::fs::read_dir(root.join(dir))
            .expect("fixture directory")
            .map(|e| e.unwrap().path())
            .filter(|p| p.extension().is_some_and(|x| x == "json"))
            .collect();
        paths.sort();
        for p in paths {
            let (k, _) = parse_complex(&std::fs::read_to_string(&p).unwrap()).unwrap();
            out.push((p.strip_prefix(&root).unwrap().display().to_string(), k));
        }
    }
    out
}

fn census() -> Vec<SimplicialComplex> {
    (4..=8).flat_map(two_spheres).collect()
}

fn polygons() -> Vec<SimplicialComplex> {
    (3..=10).map(SimplicialComplex::polygon).collect()
}

fn timed(limit: Duration, start: Instant, detail: String) -> Outcome {
    let took = start.elapsed();
    ensure!(took <= limit, "took {took:.1?}, budget {limit:?}");
    Ok(format!("{detail} in {took:.1?}"))
}

fn err<E: std::fmt::Debug>(what: &str) -> impl FnOnce(E) -> String + '_ {
    move |e| format!("{what}: {e:?}")
}

fn theorem_sweep() -> Outcome {
    let start = Instant::now();
    let mut ks = census();
    ensure!(
        ks.len() == 23,
        "census has {} spheres, expected 23",
        ks.len()
    );
    ks.extend(polygons());
    for k in &ks {
        let d = sphere_recognize_le2(k)
            .ok_or_else(|| format!("{k:?} is not recognized as a sphere"))?;
        let f = filt(k).map_err(err("filt"))?;
        ensure!(f.exact, "{k:?}: filt not exact");
        ensure!(
            f.witness
                .as_ref()
                .is_some_and(|w| w.verify(k) && w.len() == f.value),
            "{k:?}: witness fails"
        );
        let c = cup_length(k).map_err(err("cup length"))?.length;
        let m = classify_sphere_d012(k).map_err(err("classification"))?;
        ensure!(
            f.value == c && c == m,
            "{k:?}: filt {} cuplen {c} class {m}",
            f.value
        );
        ensure!(
            (1..=d + 1).contains(&m),
            "{k:?}: {m} outside [1, {}]",
            d + 1
        );
    }
    timed(
        Duration::from_secs(120),
        start,
        format!("{} spheres agree", ks.len()),
    )
}

fn run_cli(args: &[&str], cache: Option<&Path>) -> Result<Vec<u8>, String> {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_macx"));
    cmd.args(args).current_dir(fixtures_dir().join(".."));
    match cache {
        Some(dir) => cmd.env("MACX_CACHE_DIR", dir),
        None => cmd.arg("--no-cache"),
    };
    let out = cmd.output().map_err(|e| e.to_string())?;
    ensure!(
        out.status.success(),
        "macx {} exited with {}: {}",
        args.join(" "),
        out.status,
        String::from_utf8_lossy(&out.stderr)
    );
    Ok(out.stdout)
}

fn fullerene() -> Outcome {
    let start = Instant::now();
    let text = std::fs::read_to_string(fixtures_dir().join("polytopes/dodecahedron.json")).unwrap();
    let p = PolytopeDocument::parse(&text).map_err(err("polytope"))?;
    ensure!(p.census().is_fullerene(), "dodecahedron is not a fullerene");
    let k = dual_boundary(&p).map_err(err("dual"))?;
    ensure!(
        k.n() == 12 && sphere_recognize_le2(&k) == Some(2),
        "dual is not a 12-vertex 2-sphere"
    );
    let cycles = chordless_cycles(&k, 3);
    ensure!(
        cycles.iter().all(|c| c.len() >= 4),
        "chordless 3-cycle present"
    );
    ensure!(
        !cycles.is_empty(),
        "no chordless cycle on 4 or more vertices"
    );

    let tmp = tempfile::tempdir().unwrap();
    let dual = tmp.path().join("dual.json");
    std::fs::write(
        &dual,
        run_cli(
            &[
                "--deterministic",
                "dual",
                "fixtures/polytopes/dodecahedron.json",
            ],
            None,
        )?,
    )
    .unwrap();
    let dual = dual.to_str().unwrap();
    let cat: Value = serde_json::from_slice(&run_cli(
        &["--format", "json", "--deterministic", "cat", dual],
        None,
    )?)
    .unwrap();
    let golod: Value = serde_json::from_slice(&run_cli(
        &["--format", "json", "--deterministic", "golod", dual],
        None,
    )?)
    .unwrap();
    let m = cat["result"]["m"].as_u64();
    ensure!(m == Some(3), "cat reported {:?}", cat["result"]["m"]);
    ensure!(
        cat["result"]["report"]["exact"].as_u64() == Some(3),
        "cat report is not exact 3"
    );
    ensure!(
        golod["result"]["m"].as_u64() == Some(3),
        "golod reported {:?}",
        golod["result"]["m"]
    );
    timed(
        Duration::from_secs(10),
        start,
        format!(
            "icosahedron: {} chordless cycles, none of length 3; cat 3, golod 3",
            cycles.len()
        ),
    )
}

fn trim<T: Clone + PartialEq + Default>(v: &[T]) -> Vec<T> {
    let mut v = v.to_vec();
    while v.len() > 1 && v.last() == Some(&T::default()) {
        v.pop();
    }
    v
}

fn small_complexes() -> Vec<(String, SimplicialComplex)> {
    let mut out: Vec<(String, SimplicialComplex)> = fixture_files()
        .into_iter()
        .filter(|(_, k)| k.n() <= 6)
        .collect();
    let point = SimplicialComplex::simplex(1);
    let edge = SimplicialComplex::simplex(2);
    let named = [
        ("boundary of a triangle", SimplicialComplex::polygon(3)),
        ("square", SimplicialComplex::polygon(4)),
        ("pentagon", SimplicialComplex::polygon(5)),
        (
            "boundary of a tetrahedron",
            SimplicialComplex::simplex_boundary(4),
        ),
        ("S0*S0", s0().join(&s0())),
        ("simplex on 4 vertices", SimplicialComplex::simplex(4)),
        (
            "1-skeleton of a 5-simplex",
            SimplicialComplex::simplex(6).skeleton(1),
        ),
        (
            "2-skeleton of a 5-simplex",
            SimplicialComplex::simplex(6).skeleton(2),
        ),
        (
            "0-skeleton of a 4-simplex",
            SimplicialComplex::simplex(5).skeleton(0),
        ),
        ("edge and a point", edge.disjoint_union(&point)),
        ("two edges", edge.disjoint_union(&edge)),
        (
            "triangle boundary and an edge",
            SimplicialComplex::polygon(3).disjoint_union(&edge),
        ),
        (
            "square and S0",
            SimplicialComplex::polygon(4).disjoint_union(&s0()),
        ),
        ("projective plane", rp2()),
    ];
    out.extend(named.into_iter().map(|(n, k)| (n.to_string(), k)));
    out
}

fn hochster_koszul() -> Outcome {
    let start = Instant::now();
    let cases = small_complexes();
    for (name, k) in &cases {
        let h = hochster_decomposition(k).map_err(err("hochster"))?;
        let t = koszul_tor_oracle(k).map_err(err("koszul"))?;
        let (hr, kr) = (trim(&h.total_betti()), trim(&t.ranks));
        ensure!(hr == kr, "{name}: Hochster {hr:?} Koszul {kr:?}");
        let (ht, kt) = (trim(&h.total_torsion()), trim(&t.torsion));
        ensure!(ht == kt, "{name}: torsion Hochster {ht:?} Koszul {kt:?}");
    }
    timed(
        Duration::from_secs(60),
        start,
        format!("{} complexes agree", cases.len()),
    )
}

fn low_spheres() -> Outcome {
    for (name, k, top) in [
        ("boundary of a triangle", SimplicialComplex::polygon(3), 5),
        (
            "boundary of a tetrahedron",
            SimplicialComplex::simplex_boundary(4),
            7,
        ),
        ("S0", s0(), 3),
    ] {
        let betti = trim(
            &hochster_decomposition(&k)
                .map_err(err("hochster"))?
                .total_betti(),
        );
        let mut sphere = vec![0; top + 1];
        sphere[0] = 1;
        sphere[top] = 1;
        ensure!(betti == sphere, "{name}: Betti {betti:?}, expected S^{top}");
        let c = cup_length(&k).map_err(err("cup length"))?.length;
        ensure!(c == 1, "{name}: cup length {c}");
    }
    Ok("Betti profiles of S^5, S^7, S^3 with cup length 1".into())
}

fn first_facet(k: &SimplicialComplex) -> VertexSet {
    k.facets()[0]
}

fn join_sum_laws() -> Outcome {
    let start = Instant::now();
    let filt_of = |k: &SimplicialComplex| filt(k).map(|f| f.value).map_err(err("filt"));
    let mut checked = 0;

    // joins that stay within dimension 2, where filt is computed exactly
    let mut low_joins = vec![(s0(), s0()), (s0().join(&s0()), s0())];
    for m in 3..=8 {
        low_joins.push((s0(), SimplicialComplex::polygon(m)));
        low_joins.push((SimplicialComplex::polygon(m), s0()));
    }
    for (k, l) in &low_joins {
        let j = k.join(l);
        let (fj, fk, fl) = (filt_of(&j)?, filt_of(k)?, filt_of(l)?);
        ensure!(fj >= fk + fl, "filt({k:?} * {l:?}) = {fj} < {fk} + {fl}");
        checked += 1;
    }

    // joins of higher dimension: a certified filtration of the join bounds filt from below
    let leaf = |k: &SimplicialComplex| Construction::Leaf {
        n: k.n(),
        facets: k.facet_lists(),
        name: None,
    };
    let factors = [
        s0(),
        SimplicialComplex::polygon(3),
        SimplicialComplex::polygon(4),
        SimplicialComplex::polygon(5),
        bipyramid(),
        octahedron(),
    ];
    let mut excluded = 0;
    for (a, k) in factors.iter().enumerate() {
        for l in &factors[a..] {
            if k.dim() + l.dim() < 2 || k.n() + l.n() > 12 {
                continue;
            }
            let cert = certify(&Construction::Join {
                factors: vec![leaf(k), leaf(l)],
            })
            .map_err(err("certify"))?;
            let (fk, fl) = (filt_of(k)?, filt_of(l)?);
            let bottoms: Vec<usize> = [k, l]
                .iter()
                .map(|x| filt(x).unwrap().witness.unwrap().steps.last().unwrap().dim)
                .collect();
            match cert.filt_lower {
                Some(w) => {
                    ensure!(
                        w >= fk + fl,
                        "certified filtration of {k:?} * {l:?} has length {w} < {fk} + {fl}"
                    );
                    checked += 1;
                }
                // no strict filtration exists when both chains end above S^0
                None if bottoms.iter().all(|&b| b > 0) => excluded += 1,
                None => return Err(format!("no certified filtration for {k:?} * {l:?}")),
            }
        }
    }

    // connected sums of 2-spheres and of polygons
    let spheres: Vec<SimplicialComplex> = (4..=7).flat_map(two_spheres).collect();
    let mut pairs: Vec<(SimplicialComplex, SimplicialComplex)> = Vec::new();
    for (a, k) in spheres.iter().enumerate() {
        for l in &spheres[a..] {
            pairs.push((k.clone(), l.clone()));
        }
    }
    for a in 3..=6 {
        for b in a..=6 {
            pairs.push((SimplicialComplex::polygon(a), SimplicialComplex::polygon(b)));
        }
    }
    for (k, l) in &pairs {
        for right in [first_facet(l), *l.facets().last().unwrap()] {
            let sum = k
                .connected_sum(l, first_facet(k), right, None)
                .map_err(err("connected sum"))?
                .complex;
            let (fs, fk, fl) = (filt_of(&sum)?, filt_of(k)?, filt_of(l)?);
            ensure!(fs >= 2.max(fk).max(fl), "filt of {k:?} # {l:?} is {fs}");
            checked += 1;
        }
    }

    for (name, k, want) in [
        ("octahedron", octahedron(), 3),
        ("bipyramid", bipyramid(), 2),
    ] {
        let (f, c) = (
            filt_of(&k)?,
            cup_length(&k).map_err(err("cup length"))?.length,
        );
        ensure!(
            f == want && c == want,
            "{name}: filt {f}, cup length {c}, expected {want}"
        );
    }
    timed(
        Duration::from_secs(300),
        start,
        format!(
            "{checked} joins and sums satisfy the laws; {excluded} joins of factors both ending above S^0 have no \
             strict filtration and were skipped; octahedron 3, bipyramid 2"
        ),
    )
}

/// Wedge vectors with total added copies at most `budget`, one entry per vertex.
fn wedge_vectors(n: usize, budget: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for a in 0..=budget {
        for mut rest in wedge_vectors(n - 1, budget - a) {
            rest.insert(0, a + 1);
            out.push(rest);
        }
    }
    out
}

fn simplicial_wedges() -> Outcome {
    let start = Instant::now();
    let mut ks = vec![s0()];
    ks.extend(polygons());
    ks.extend(census());
    ks.push(icosahedron());
    let (mut vectors, mut computed) = (0, 0);
    for k in &ks {
        let m = classify_sphere_d012(k).map_err(err("classification"))?;
        // cup length is invariant under relabeling, so one J per automorphism orbit suffices
        let group = k.automorphisms();
        let all = wedge_vectors(k.n(), 3);
        let reps: BTreeSet<Vec<usize>> = all
            .iter()
            .map(|j| {
                group
                    .iter()
                    .map(|g| {
                        let mut image = vec![0; j.len()];
                        for v in 1..=j.len() {
                            image[g[v] - 1] = j[v - 1];
                        }
                        image
                    })
                    .min()
                    .unwrap()
            })
            .collect();
        for j in &reps {
            let w = k.simplicial_wedge(j).map_err(err("wedge"))?.complex;
            let c = Analyzer::new(&w)
                .cup_length_capped(m + 1)
                .map_err(err("cup length"))?
                .length;
            ensure!(c <= m, "{k:?} with J = {j:?}: cup length {c} > m = {m}");
        }
        vectors += all.len();
        computed += reps.len();
    }
    timed(
        Duration::from_secs(300),
        start,
        format!(
            "{vectors} pairs (K, J) over {} spheres, {computed} up to symmetry, cup length <= m",
            ks.len()
        ),
    )
}

/// Boundary of the cyclic polytope with `n` vertices in dimension `d`, by Gale's evenness
/// condition.
fn cyclic_polytope_boundary(n: usize, d: usize) -> SimplicialComplex {
    let facets = VertexSet::full(n).subsets_of_size(d).filter(|s| {
        (1..=n).filter(|v| !s.contains(*v)).all(|i| {
            (i + 1..=n)
                .filter(|j| !s.contains(*j))
                .all(|j| (i + 1..j).filter(|v| s.contains(*v)).count() % 2 == 0)
        })
    });
    SimplicialComplex::new(n, facets).unwrap()
}

fn neighbourly_bounds() -> Outcome {
    let mut cases = fixture_files();
    cases.extend(small_complexes());
    for n in 3..=7 {
        cases.push((
            format!("boundary of the {}-simplex", n - 1),
            SimplicialComplex::simplex_boundary(n),
        ));
    }
    cases.push((
        "2-skeleton of the 4-simplex".into(),
        SimplicialComplex::simplex(5).skeleton(2),
    ));
    cases.push((
        "cyclic 4-polytope on 6 vertices".into(),
        cyclic_polytope_boundary(6, 4),
    ));
    cases.push((
        "cyclic 4-polytope on 7 vertices".into(),
        cyclic_polytope_boundary(7, 4),
    ));
    let (mut checked, mut neighbourly) = (0, 0);
    for (name, k) in &cases {
        let profile = match real_mac_profile(k) {
            Ok(p) => p,
            Err(macx_core::Error::Acyclic) => continue,
            Err(e) => return Err(format!("{name}: {e}")),
        };
        let c = cup_length(k).map_err(err("cup length"))?.length;
        ensure!(
            c <= profile.bound(),
            "{name}: cup length {c} > floor(hd/hc) = {}",
            profile.bound()
        );
        checked += 1;
        if k.is_k_neighbourly(k.n().div_ceil(2)) && !k.is_simplex() {
            let report = cat_bounds(k, None).map_err(err("cat bounds"))?;
            ensure!(
                profile.bound() == 1 && report.best_upper == Some(1),
                "{name}: neighbourly but bound {} and best upper {:?}",
                profile.bound(),
                report.best_upper
            );
            neighbourly += 1;
        }
    }
    Ok(format!(
        "{checked} complexes within floor(hd/hc); {neighbourly} half-neighbourly ones bounded by 1"
    ))
}

fn well_behavedness() -> Outcome {
    let start = Instant::now();
    let mut ks = census();
    ks.push(icosahedron());
    ks.push(octahedron());
    let tet = SimplicialComplex::simplex_boundary(4);
    let f = first_facet(&tet);
    ks.push(
        tet.connected_sum(&tet, f, f, None)
            .map_err(err("connected sum"))?
            .complex,
    );
    let mut unresolved = 0;
    for k in &ks {
        let r = well_behaved_check(k).map_err(err("well-behaved"))?;
        ensure!(r.verdict != Verdict::Fails, "{k:?}: {:?}", r.failure);
        ensure!(
            r.inconclusive.iter().all(|n| n.condition == 1),
            "{k:?}: inconclusive outside condition (1): {:?}",
            r.inconclusive
        );
        unresolved += r.inconclusive.len();
    }
    timed(
        Duration::from_secs(300),
        start,
        format!(
            "{} spheres pass, {unresolved} unresolved contractibility sub-checks",
            ks.len()
        ),
    )
}

/// `gcd` of all `k × k` minors.
fn determinantal_divisor(m: &IntegerMatrix, k: usize) -> IBig {
    let rows = VertexSet::full(m.rows())
        .subsets_of_size(k)
        .collect::<Vec<_>>();
    let cols = VertexSet::full(m.cols())
        .subsets_of_size(k)
        .collect::<Vec<_>>();
    let mut g = IBig::ZERO;
    for r in &rows {
        for c in &cols {
            let minor = matrix(k, k, |i, j| {
                m.get(r.to_vec()[i] - 1, c.to_vec()[j] - 1).clone()
            });
            g = gcd(g, minor.determinant());
        }
    }
    g
}

fn gcd(a: IBig, b: IBig) -> IBig {
    let abs = |x: IBig| if x < IBig::ZERO { -x } else { x };
    let (mut a, mut b) = (abs(a), abs(b));
    while b != IBig::ZERO {
        let r = &a % &b;
        a = b;
        b = r;
    }
    a
}

fn matrix(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> IBig) -> IntegerMatrix {
    let mut m = IntegerMatrix::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            m.set(i, j, f(i, j));
        }
    }
    m
}

fn exact_arithmetic() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for trial in 0..500 {
        let (r, c) = (rng.gen_range(1..=5), rng.gen_range(1..=5));
        let m = if trial % 3 == 0 {
            // low rank: a product through a thin middle
            let inner = rng.gen_range(1..=2);
            let a = matrix(r, inner, |_, _| IBig::from(rng.gen_range(-4i64..=4)));
            let b = matrix(inner, c, |_, _| IBig::from(rng.gen_range(-4i64..=4)));
            a.mul(&b)
        } else {
            matrix(r, c, |_, _| IBig::from(rng.gen_range(-9i64..=9)))
        };
        let s = smith_normal_form(&m);
        let (u, v) = (s.u.as_ref().unwrap(), s.v.as_ref().unwrap());
        ensure!(
            u.mul(&m).mul(v) == s.d(),
            "trial {trial}: U M V != D for {m:?}"
        );
        let unit = |x: IBig| x == IBig::ONE || x == -IBig::ONE;
        ensure!(
            unit(u.determinant()) && unit(v.determinant()),
            "trial {trial}: transforms not unimodular"
        );
        let diag = &s.diagonal;
        ensure!(
            diag[..s.rank].iter().all(|d| *d > IBig::ZERO),
            "trial {trial}: nonpositive invariant factor"
        );
        ensure!(
            diag[s.rank..].iter().all(|d| *d == IBig::ZERO),
            "trial {trial}: nonzero past the rank"
        );
        ensure!(
            diag[..s.rank]
                .windows(2)
                .all(|w| (&w[1] % &w[0]) == IBig::ZERO),
            "trial {trial}: divisibility fails on {diag:?}"
        );
        // d_1 ⋯ d_k equals the gcd of the k × k minors
        let mut product = IBig::ONE;
        for k in 1..=r.min(c) {
            product *= &diag[k - 1];
            ensure!(
                determinantal_divisor(&m, k) == product,
                "trial {trial}: minor gcd mismatch at k = {k}"
            );
        }
    }

    let complexes = small_complexes()
        .into_iter()
        .chain(fixture_files())
        .collect::<Vec<_>>();
    for (name, k) in &complexes {
        let chain = ChainComplex::new(k);
        for p in 0..=chain.dim() {
            ensure!(
                chain.boundary(p).mul(&chain.boundary(p + 1)).is_zero(),
                "{name}: dd != 0 at {p}"
            );
            ensure!(
                chain.coboundary(p).mul(&chain.coboundary(p - 1)).is_zero(),
                "{name}: δδ != 0 at {p}"
            );
        }
        let h = reduced_homology(k);
        let chi: i64 = k
            .f_vector()
            .iter()
            .enumerate()
            .map(|(p, f)| if p % 2 == 0 { *f as i64 } else { -(*f as i64) })
            .sum();
        ensure!(
            chi == k.euler_characteristic(),
            "{name}: f-vector and χ disagree"
        );
        ensure!(
            h.reduced_euler_characteristic() == chi - 1,
            "{name}: homology gives χ̃ = {}",
            h.reduced_euler_characteristic()
        );
    }
    let h = reduced_homology(&rp2());
    ensure!(
        h.rank(1) == 0 && h.torsion(1) == [IBig::from(2)],
        "projective plane: H1 = {}",
        h.group(1)
    );
    Ok(format!(
        "500 Smith forms verified; chain identities on {} complexes; H1(RP2) = Z/2",
        complexes.len()
    ))
}

fn determinism() -> Outcome {
    let oct = "fixtures/octahedron.json";
    let cert = "fixtures/certified/square_join_pentagon.json";
    let tmp = tempfile::tempdir().unwrap();
    let recipe = tmp.path().join("recipe.json");
    let doc: Value = serde_json::from_str(
        &std::fs::read_to_string(fixtures_dir().join("certified/square_join_pentagon.json"))
            .unwrap(),
    )
    .unwrap();
    std::fs::write(&recipe, doc["certificate"].to_string()).unwrap();
    let recipe = recipe.to_str().unwrap().to_string();
    let commands: Vec<Vec<&str>> = vec![
        vec!["info", oct],
        vec!["homology", "fixtures/rp2.json"],
        vec!["homology", "--subset", "1,2,3,4", oct],
        vec!["betti", oct],
        vec!["cuplen", "--witness", oct],
        vec!["filt", "--witness", "fixtures/icosahedron.json"],
        vec!["cat", cert],
        vec!["cat", "--certificate", &recipe, cert],
        vec!["cat", "fixtures/rp2.json"],
        vec!["golod", "fixtures/icosahedron.json"],
        vec!["check", "sphere", "fixtures/rp2.json"],
        vec!["check", "chordal", oct],
        vec![
            "check",
            "neighbourly",
            "2",
            "fixtures/tetrahedron_boundary.json",
        ],
        vec!["check", "well-behaved", oct],
        vec!["check", "hmf", "fixtures/rp2.json"],
        vec![
            "construct",
            "join",
            "fixtures/s0.json",
            "fixtures/square.json",
        ],
        vec!["construct", "connsum", oct, oct],
        vec![
            "construct",
            "wedge",
            "--copies",
            "2,1,1,1",
            "fixtures/square.json",
        ],
        vec!["dual", "fixtures/polytopes/dodecahedron.json"],
        vec!["oracle", "koszul", oct],
    ];
    let cache = tempfile::tempdir().unwrap();
    let mut runs = 0;
    for command in &commands {
        for format in ["json", "table"] {
            let base = ["--deterministic", "--format", format];
            let with_jobs = |jobs: &'static str| {
                let mut args: Vec<&str> = base.to_vec();
                args.extend(["--jobs", jobs]);
                args.extend(command.iter().copied());
                args
            };
            let reference = run_cli(&with_jobs("1"), None)?;
            for (jobs, cached) in [
                ("1", false),
                ("4", false),
                ("4", true),
                ("4", true),
                ("1", true),
            ] {
                let out = run_cli(&with_jobs(jobs), cached.then_some(cache.path()))?;
                ensure!(
                    out == reference,
                    "macx {} differs with --jobs {jobs}{}",
                    command.join(" "),
                    if cached { " and the cache" } else { "" }
                );
                runs += 1;
            }
        }
    }
    Ok(format!(
        "{} commands in both formats, {runs} repeated runs byte-identical",
        commands.len()
    ))
}

fn main() {
    let criteria: [Criterion; 10] = [
        (
            "spherical filtration = cup length = classification on small spheres",
            theorem_sweep,
        ),
        ("fullerene dual has cat 3 and is 3-Golod", fullerene),
        (
            "Hochster decomposition agrees with the Koszul complex",
            hochster_koszul,
        ),
        (
            "low spheres have sphere Betti profiles and cup length 1",
            low_spheres,
        ),
        ("join and connected-sum laws for filt", join_sum_laws),
        (
            "simplicial wedges keep cup length at most m",
            simplicial_wedges,
        ),
        (
            "cup length within floor(hd/hc); neighbourly bound 1",
            neighbourly_bounds,
        ),
        ("well-behavedness of low spheres", well_behavedness),
        ("exact arithmetic identities", exact_arithmetic),
        ("deterministic CLI output", determinism),
    ];
    let mut failed = 0;
    for (i, (title, check)) in criteria.iter().enumerate() {
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default())
        });
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {title}: {detail}", i + 1),
            Err(reason) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {title}: {reason}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}

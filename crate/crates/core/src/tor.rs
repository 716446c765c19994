//! The Hochster decomposition `H^*(Z_K) ≅ ⨁_I H̃^*(K_I)` and its multiplication.
//!
//! A class of `H̃^p(K_I)` sits in total degree `p + |I| + 1`. For disjoint `I`, `J` the
//! product of `α ∈ C^p(K_I)` and `β ∈ C^q(K_J)` is the join cochain restricted to
//! `K_{I∪J}`: on a face `σ ⊔ τ` it takes the value `ε · s(σ, τ) · α(σ) β(τ)`, where
//! `s(A, B) = (-1)^{#{(a, b) ∈ A × B : a > b}}` and `ε = s(I, J) · (-1)^{(p+1)|J|}`.
//! With this sign the product is associative and graded commutative in total degree.
//! Products of classes with overlapping supports vanish.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use dashu_int::ops::DivRem;
use dashu_int::IBig;
use rayon::prelude::*;
use serde::Serialize;

use crate::cache::SubsetCache;
use crate::cochain::{Cochain, Cohomology};
use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::homology::{Group, HomologyProfile};
use crate::smith::abs;
use crate::vertex_set::VertexSet;

/// Default cap on the vertex count for sweeps over all subsets.
pub const DEFAULT_SWEEP_LIMIT: usize = 18;

/// Shared state for computations on one complex: subset cache and sweep limit.
#[derive(Clone)]
pub struct Analyzer<'a> {
    k: &'a SimplicialComplex,
    fingerprint: u64,
    cache: Arc<SubsetCache>,
    limit: usize,
}

/// A cohomology class of `Z_K` supported on the subset `I`, represented by a cocycle on
/// `K_I` (ambient labels).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorClass {
    /// Fingerprint of `K`.
    pub complex: u64,
    pub subset: VertexSet,
    /// Degree `p` in `H̃^p(K_I)`.
    pub degree: isize,
    pub rep: Cochain,
}

impl TorClass {
    pub fn total_degree(&self) -> isize {
        self.degree + self.subset.len() as isize + 1
    }
}

/// Result of a cup product.
#[derive(Clone, Debug)]
pub enum Product {
    /// The supports overlap.
    StructuralZero,
    /// The product cocycle is `δ` of the certificate.
    Zero {
        certificate: Cochain,
    },
    Class(TorClass),
}

impl Product {
    pub fn is_zero(&self) -> bool {
        !matches!(self, Product::Class(_))
    }
}

/// Aggregated cohomology of full subcomplexes by subset size `s` and degree `p`.
#[derive(Clone, Debug, Serialize)]
pub struct BettiEntry {
    pub size: usize,
    pub degree: isize,
    pub total_degree: usize,
    pub rank: usize,
    #[serde(serialize_with = "crate::homology::serialize_factors")]
    pub torsion: Vec<IBig>,
    /// Number of subsets contributing.
    pub subsets: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SubsetContribution {
    pub subset: VertexSet,
    pub homology: HomologyProfile,
}

/// Bigraded Betti numbers of `Z_K` with the per-subset detail.
#[derive(Clone, Debug, Serialize)]
pub struct BigradedBetti {
    pub n: usize,
    /// Sorted by `(size, degree)`.
    pub entries: Vec<BettiEntry>,
    /// Subsets with nonzero reduced homology, in ascending bit order.
    pub subsets: Vec<SubsetContribution>,
}

impl BigradedBetti {
    /// Ranks of `H^k(Z_K)` for `k = 0..=max`.
    pub fn total_betti(&self) -> Vec<usize> {
        let top = self
            .entries
            .iter()
            .map(|e| e.total_degree)
            .max()
            .unwrap_or(0);
        let mut out = vec![0; top + 1];
        for e in &self.entries {
            out[e.total_degree] += e.rank;
        }
        out
    }

    /// Torsion coefficients of `H^k(Z_K)`, sorted, for `k = 0..=max`.
    pub fn total_torsion(&self) -> Vec<Vec<IBig>> {
        let top = self
            .entries
            .iter()
            .map(|e| e.total_degree)
            .max()
            .unwrap_or(0);
        let mut out = vec![Vec::new(); top + 1];
        for e in &self.entries {
            out[e.total_degree].extend(e.torsion.iter().cloned());
        }
        for t in &mut out {
            t.sort();
        }
        out
    }
}

/// Homological dimension and connectivity data of the real moment-angle complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RealMacProfile {
    /// `1 + max_I max{i : H̃^i(K_I) ≠ 0}`.
    pub hd: usize,
    /// `1 + min_I min{i : H̃^i(K_I) ≠ 0}`.
    pub hc: usize,
    pub hd_subset: VertexSet,
    pub hc_subset: VertexSet,
}

impl RealMacProfile {
    /// `⌊hd / hc⌋`.
    pub fn bound(&self) -> usize {
        self.hd / self.hc
    }
}

/// Longest nonvanishing product of positive-degree classes.
#[derive(Clone, Debug)]
pub struct CupLength {
    pub length: usize,
    /// Factors of a nonzero product of `length` classes, ordered as multiplied.
    pub factors: Vec<TorClass>,
    pub product: Option<TorClass>,
    /// True when the search stopped at a caller-supplied bound.
    pub capped: bool,
}

impl<'a> Analyzer<'a> {
    pub fn new(k: &'a SimplicialComplex) -> Self {
        Analyzer {
            k,
            fingerprint: k.fingerprint(),
            cache: Arc::new(SubsetCache::new()),
            limit: DEFAULT_SWEEP_LIMIT,
        }
    }

    pub fn with_limit(mut self, limit: usize) -> Self {
        self.limit = limit;
        self
    }

    pub fn with_cache(mut self, cache: Arc<SubsetCache>) -> Self {
        self.cache = cache;
        self
    }

    pub fn complex(&self) -> &'a SimplicialComplex {
        self.k
    }

    pub fn limit(&self) -> usize {
        self.limit
    }

    pub fn check_limit(&self) -> Result<()> {
        if self.k.n() > self.limit {
            return Err(Error::LimitExceeded {
                n: self.k.n(),
                limit: self.limit,
            });
        }
        Ok(())
    }

    /// `H̃_*(K_I)`.
    pub fn homology(&self, subset: VertexSet) -> Arc<HomologyProfile> {
        self.cache.homology(self.k, self.fingerprint, subset)
    }

    /// Cocycle-level cohomology of `K_I`.
    pub fn cohomology(&self, subset: VertexSet) -> Arc<Cohomology> {
        self.cache.cohomology(self.k, self.fingerprint, subset)
    }

    /// All subsets with nonzero reduced homology, in ascending bit order (includes `∅`).
    pub fn nonzero_subsets(&self) -> Result<Vec<(VertexSet, Arc<HomologyProfile>)>> {
        self.check_limit()?;
        let all: Vec<VertexSet> = self.k.vertex_set().subsets().collect();
        let found: Vec<Option<(VertexSet, Arc<HomologyProfile>)>> = all
            .par_iter()
            .map(|&s| {
                let h = self.homology(s);
                (!h.is_acyclic()).then_some((s, h))
            })
            .collect();
        Ok(found.into_iter().flatten().collect())
    }

    pub fn hochster_decomposition(&self) -> Result<BigradedBetti> {
        let nonzero = self.nonzero_subsets()?;
        let mut agg: BTreeMap<(usize, isize), (Group, usize)> = BTreeMap::new();
        for (s, h) in &nonzero {
            for p in h.cohomology_degrees() {
                let g = h.cohomology(p);
                let e = agg.entry((s.len(), p)).or_default();
                e.0.rank += g.rank;
                e.0.torsion.extend(g.torsion);
                e.1 += 1;
            }
        }
        let entries = agg
            .into_iter()
            .map(|((size, degree), (mut g, count))| {
                g.torsion.sort();
                BettiEntry {
                    size,
                    degree,
                    total_degree: (degree + size as isize + 1) as usize,
                    rank: g.rank,
                    torsion: g.torsion,
                    subsets: count,
                }
            })
            .collect();
        let subsets = nonzero
            .into_iter()
            .map(|(subset, h)| SubsetContribution {
                subset,
                homology: (*h).clone(),
            })
            .collect();
        Ok(BigradedBetti {
            n: self.k.n(),
            entries,
            subsets,
        })
    }

    pub fn real_mac_profile(&self) -> Result<RealMacProfile> {
        let nonzero = self.nonzero_subsets()?;
        let mut best: Option<RealMacProfile> = None;
        for (s, h) in nonzero.iter().filter(|(s, _)| !s.is_empty()) {
            let degrees = h.cohomology_degrees();
            let (lo, hi) = (degrees[0], *degrees.last().unwrap());
            let (hd, hc) = ((1 + hi) as usize, (1 + lo) as usize);
            match best.as_mut() {
                None => {
                    best = Some(RealMacProfile {
                        hd,
                        hc,
                        hd_subset: *s,
                        hc_subset: *s,
                    })
                }
                Some(b) => {
                    if hd > b.hd {
                        b.hd = hd;
                        b.hd_subset = *s;
                    }
                    if hc < b.hc {
                        b.hc = hc;
                        b.hc_subset = *s;
                    }
                }
            }
        }
        best.ok_or(Error::Acyclic)
    }

    /// Generators of `H̃^*(K_I)` as classes of `Z_K`, by degree and then generator order.
    pub fn classes(&self, subset: VertexSet) -> Vec<TorClass> {
        let c = self.cohomology(subset);
        let mut out = Vec::new();
        for p in c.homology().cohomology_degrees() {
            for g in &c.group(p).expect("degree in range").generators {
                out.push(TorClass {
                    complex: self.fingerprint,
                    subset,
                    degree: p,
                    rep: g.cocycle.clone(),
                });
            }
        }
        out
    }

    pub fn cup_product(&self, a: &TorClass, b: &TorClass) -> Result<Product> {
        if a.complex != self.fingerprint || b.complex != self.fingerprint {
            return Err(Error::MixedComplexes);
        }
        if !a.subset.is_disjoint(b.subset) {
            return Ok(Product::StructuralZero);
        }
        let ca = self.cohomology(a.subset);
        let cb = self.cohomology(b.subset);
        for (class, c) in [(a, &ca), (b, &cb)] {
            if class.rep.home != c.home {
                return Err(Error::MixedComplexes);
            }
        }
        let u = a.subset | b.subset;
        let cu = self.cohomology(u);
        let rep = join_product(&a.rep, a.subset, &ca, &b.rep, b.subset, &cb, &cu);
        match cu.is_coboundary(&rep)? {
            Some(certificate) => Ok(Product::Zero { certificate }),
            None => Ok(Product::Class(TorClass {
                complex: self.fingerprint,
                subset: u,
                degree: rep.degree,
                rep,
            })),
        }
    }

    /// Whether two classes supported on the same subset and degree are cohomologous.
    pub fn same_class(&self, a: &TorClass, b: &TorClass) -> Result<bool> {
        if a.subset != b.subset || a.degree != b.degree {
            return Ok(false);
        }
        let c = self.cohomology(a.subset);
        let diff = a.rep.add(&b.rep.scaled(&-IBig::ONE));
        Ok(c.is_coboundary(&diff)?.is_some())
    }

    pub fn cup_length(&self) -> Result<CupLength> {
        self.cup_length_capped(usize::MAX)
    }

    /// Cup length, stopping early once a nonzero product of `cap` factors is found.
    ///
    /// Level `k` holds, for each subset `U`, classes generating the span of all `k`-fold
    /// products of generators whose supports partition `U`. Level `k + 1` multiplies level
    /// `k` on `U \ I` by generators on `I`, where `I` is the factor containing `min U`, and
    /// keeps a product only if its class is new to the span.
    pub fn cup_length_capped(&self, cap: usize) -> Result<CupLength> {
        let nonzero = self.nonzero_subsets()?;
        let mut first: Vec<(VertexSet, Vec<Term>)> = Vec::new();
        for (s, h) in nonzero.iter().filter(|(s, _)| !s.is_empty()) {
            let c = self.cohomology(*s);
            let mut terms = Vec::new();
            for p in h.cohomology_degrees() {
                for (i, g) in c
                    .group(p)
                    .expect("degree in range")
                    .generators
                    .iter()
                    .enumerate()
                {
                    terms.push(Term {
                        cocycle: g.cocycle.clone(),
                        factors: vec![(*s, p, i)],
                    });
                }
            }
            first.push((*s, terms));
        }
        if first.is_empty() {
            return Ok(CupLength {
                length: 0,
                factors: Vec::new(),
                product: None,
                capped: false,
            });
        }
        let homology: HashMap<VertexSet, Arc<HomologyProfile>> = nonzero.into_iter().collect();
        let mut levels: Vec<Vec<(VertexSet, Vec<Term>)>> = vec![first];
        while levels.len() < cap {
            let next = self.next_level(&levels[0], levels.last().unwrap(), &homology);
            if next.is_empty() {
                break;
            }
            levels.push(next);
        }
        let length = levels.len();
        let (_, terms) = &levels[length - 1][0];
        let term = &terms[0];
        let factors = term
            .factors
            .iter()
            .map(|&(s, p, i)| {
                let rep = self
                    .cohomology(s)
                    .group(p)
                    .expect("degree in range")
                    .generators[i]
                    .cocycle
                    .clone();
                TorClass {
                    complex: self.fingerprint,
                    subset: s,
                    degree: p,
                    rep,
                }
            })
            .collect::<Vec<_>>();
        let u = factors
            .iter()
            .fold(VertexSet::EMPTY, |acc, f| acc | f.subset);
        let product = TorClass {
            complex: self.fingerprint,
            subset: u,
            degree: term.cocycle.degree,
            rep: term.cocycle.clone(),
        };
        Ok(CupLength {
            length,
            factors,
            product: Some(product),
            capped: length >= cap,
        })
    }

    fn next_level(
        &self,
        first: &[(VertexSet, Vec<Term>)],
        prev: &[(VertexSet, Vec<Term>)],
        homology: &HashMap<VertexSet, Arc<HomologyProfile>>,
    ) -> Vec<(VertexSet, Vec<Term>)> {
        let mut targets: BTreeMap<u64, Vec<(usize, usize)>> = BTreeMap::new();
        for (vi, (v, _)) in prev.iter().enumerate() {
            for (ii, (i, _)) in first.iter().enumerate() {
                if !v.is_disjoint(*i) {
                    continue;
                }
                let u = *v | *i;
                if !i.contains(u.min().unwrap()) || !homology.contains_key(&u) {
                    continue;
                }
                targets.entry(u.bits()).or_default().push((vi, ii));
            }
        }
        let targets: Vec<(u64, Vec<(usize, usize)>)> = targets.into_iter().collect();
        let results: Vec<(VertexSet, Vec<Term>)> = targets
            .par_iter()
            .map(|(bits, pairs)| {
                let u = VertexSet::from_bits(*bits);
                let hu = &homology[&u];
                let cu = self.cohomology(u);
                let mut spans: HashMap<isize, ClassSpan> = HashMap::new();
                let mut kept = Vec::new();
                for &(vi, ii) in pairs {
                    let (v, xs) = &prev[vi];
                    let (i, gs) = &first[ii];
                    let cv = self.cohomology(*v);
                    let ci = self.cohomology(*i);
                    for x in xs {
                        for g in gs {
                            let deg = x.cocycle.degree + g.cocycle.degree + 1;
                            if hu.cohomology(deg).is_zero() {
                                continue;
                            }
                            let prod = join_product(&x.cocycle, *v, &cv, &g.cocycle, *i, &ci, &cu);
                            let group = cu.group(deg).expect("degree in range");
                            let coords = group.class_coordinates(&prod.coefficients);
                            if coords.iter().all(|c| c.is_zero()) {
                                continue;
                            }
                            let span = spans
                                .entry(deg)
                                .or_insert_with(|| ClassSpan::new(group.moduli()));
                            if span.insert(coords) {
                                let mut factors = x.factors.clone();
                                factors.extend(g.factors.iter().copied());
                                kept.push(Term {
                                    cocycle: prod,
                                    factors,
                                });
                            }
                        }
                    }
                }
                (u, kept)
            })
            .collect();
        results.into_iter().filter(|(_, t)| !t.is_empty()).collect()
    }

    /// `Nill` of the Tor algebra: cup length plus one.
    pub fn nilpotency(&self) -> Result<usize> {
        Ok(self.cup_length()?.length + 1)
    }
}

#[derive(Clone, Debug)]
struct Term {
    cocycle: Cochain,
    /// `(subset, degree, generator index)` of each factor.
    factors: Vec<(VertexSet, isize, usize)>,
}

/// Parity of `#{(a, b) ∈ A × B : a > b}`.
fn shuffle_parity(a: VertexSet, b: VertexSet) -> u32 {
    let mut count = 0u32;
    for v in b.iter() {
        let above = if v >= 64 { 0 } else { a.bits() >> v };
        count += above.count_ones();
    }
    count & 1
}

/// Product of `x ∈ C^p(K_V)` and `g ∈ C^q(K_I)` as a cochain on `K_{V∪I}`.
fn join_product(
    x: &Cochain,
    v: VertexSet,
    cv: &Cohomology,
    g: &Cochain,
    i: VertexSet,
    ci: &Cohomology,
    cu: &Cohomology,
) -> Cochain {
    let p = x.degree;
    let deg = p + g.degree + 1;
    let global = shuffle_parity(v, i)
        + if (p + 1).rem_euclid(2) == 1 {
            i.len() as u32
        } else {
            0
        };
    let faces = cu.chain.faces(deg);
    let mut coefficients = vec![IBig::ZERO; faces.len()];
    for (slot, rho) in coefficients.iter_mut().zip(faces) {
        let sigma = *rho & v;
        let tau = *rho & i;
        if sigma.len() as isize != p + 1 {
            continue;
        }
        let a = &x.coefficients[cv.chain.index_of(sigma).expect("face of K_V")];
        if a.is_zero() {
            continue;
        }
        let b = &g.coefficients[ci.chain.index_of(tau).expect("face of K_I")];
        if b.is_zero() {
            continue;
        }
        let value = a * b;
        *slot = if (global + shuffle_parity(sigma, tau)) & 1 == 1 {
            -value
        } else {
            value
        };
    }
    Cochain {
        home: cu.home,
        degree: deg,
        coefficients,
    }
}

/// Subgroup of `⨁ Z/d_i ⊕ Z^r` generated by inserted vectors, kept as an integer row
/// echelon basis of the preimage lattice in `Z^m`.
#[derive(Clone, Debug)]
pub(crate) struct ClassSpan {
    width: usize,
    basis: Vec<Vec<IBig>>,
}

impl ClassSpan {
    pub(crate) fn new(moduli: Vec<Option<IBig>>) -> Self {
        let width = moduli.len();
        let rows = moduli
            .iter()
            .enumerate()
            .filter_map(|(j, m)| {
                m.as_ref().map(|d| {
                    let mut r = vec![IBig::ZERO; width];
                    r[j] = d.clone();
                    r
                })
            })
            .collect();
        ClassSpan {
            width,
            basis: echelonize(rows, width),
        }
    }

    pub(crate) fn contains(&self, c: &[IBig]) -> bool {
        let mut r = c.to_vec();
        for row in &self.basis {
            let j = row
                .iter()
                .position(|x| !x.is_zero())
                .expect("echelon rows are nonzero");
            if r[..j].iter().any(|x| !x.is_zero()) {
                return false;
            }
            let (q, rem) = r[j].clone().div_rem(row[j].clone());
            if !rem.is_zero() {
                return false;
            }
            if !q.is_zero() {
                for (a, b) in r.iter_mut().zip(row) {
                    *a -= &q * b;
                }
            }
        }
        r.iter().all(|x| x.is_zero())
    }

    /// Adds `c`; returns false if it was already in the span.
    pub(crate) fn insert(&mut self, c: Vec<IBig>) -> bool {
        if self.contains(&c) {
            return false;
        }
        let mut rows = std::mem::take(&mut self.basis);
        rows.push(c);
        self.basis = echelonize(rows, self.width);
        true
    }
}

fn echelonize(mut rows: Vec<Vec<IBig>>, width: usize) -> Vec<Vec<IBig>> {
    let mut out = Vec::new();
    for col in 0..width {
        loop {
            let pivot = rows
                .iter()
                .enumerate()
                .filter(|(_, r)| !r[col].is_zero())
                .min_by(|a, b| abs(&a.1[col]).cmp(&abs(&b.1[col])))
                .map(|(i, _)| i);
            let Some(pi) = pivot else { break };
            let prow = rows.swap_remove(pi);
            let mut done = true;
            for r in rows.iter_mut() {
                if r[col].is_zero() {
                    continue;
                }
                let (q, _) = r[col].clone().div_rem(prow[col].clone());
                for (a, b) in r.iter_mut().zip(&prow) {
                    *a -= &q * b;
                }
                if !r[col].is_zero() {
                    done = false;
                }
            }
            if done {
                let prow = if prow[col] < IBig::ZERO {
                    prow.into_iter().map(|x| -x).collect()
                } else {
                    prow
                };
                out.push(prow);
                break;
            }
            rows.push(prow);
        }
        rows.retain(|r| r.iter().any(|x| !x.is_zero()));
    }
    out
}

pub fn hochster_decomposition(k: &SimplicialComplex) -> Result<BigradedBetti> {
    Analyzer::new(k).hochster_decomposition()
}

pub fn real_mac_profile(k: &SimplicialComplex) -> Result<RealMacProfile> {
    Analyzer::new(k).real_mac_profile()
}

pub fn cup_length(k: &SimplicialComplex) -> Result<CupLength> {
    Analyzer::new(k).cup_length()
}

pub fn nilpotency(k: &SimplicialComplex) -> Result<usize> {
    Analyzer::new(k).nilpotency()
}

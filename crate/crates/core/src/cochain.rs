//! Integral cochains, cocycle bases and coboundary tests.
//!
//! For the coboundary `δ^{p-1}` with Smith form `U δ V = D`, the class of a cocycle `z`
//! is faithfully recorded by the vector `y = U z`: entries `y_i mod d_i` where `d_i > 1`
//! and entries `y_i` beyond the rank. These class coordinates decide whether a cocycle is
//! a coboundary and whether a class lies in a given subgroup.

use std::fmt;
use std::sync::OnceLock;

use dashu_int::ops::DivRem;
use dashu_int::IBig;

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::homology::{homology_of_chain_complex, ChainComplex, Group, HomologyProfile};
use crate::smith::{smith_normal_form_with, IntegerMatrix, Track};

/// An integral cochain of degree `p`, one coefficient per `p`-face in lexicographic order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cochain {
    /// Fingerprint of the complex whose faces index the coefficients.
    pub home: u64,
    pub degree: isize,
    pub coefficients: Vec<IBig>,
}

impl Cochain {
    pub fn zero(home: u64, degree: isize, len: usize) -> Self {
        Cochain {
            home,
            degree,
            coefficients: vec![IBig::ZERO; len],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.iter().all(|c| c.is_zero())
    }

    pub fn scaled(&self, s: &IBig) -> Cochain {
        Cochain {
            home: self.home,
            degree: self.degree,
            coefficients: self.coefficients.iter().map(|c| c * s).collect(),
        }
    }

    pub fn add(&self, other: &Cochain) -> Cochain {
        assert_eq!(self.degree, other.degree);
        Cochain {
            home: self.home,
            degree: self.degree,
            coefficients: self
                .coefficients
                .iter()
                .zip(&other.coefficients)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl fmt::Debug for Cochain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self.coefficients.iter().map(|x| x.to_string()).collect();
        write!(f, "Cochain(deg {}, [{}])", self.degree, c.join(", "))
    }
}

/// A cocycle representing a generator of `H̃^p`; `order` is `None` for free generators.
#[derive(Clone, Debug)]
pub struct Generator {
    pub cocycle: Cochain,
    pub order: Option<IBig>,
}

/// Cocycle-level description of `H̃^p` for one degree.
#[derive(Clone, Debug)]
pub struct CohomologyGroup {
    pub degree: isize,
    pub group: Group,
    /// Torsion generators first (orders as in `group.torsion`), then free generators.
    pub generators: Vec<Generator>,
    /// Rows of `U` used for class coordinates, with the modulus of each coordinate.
    coordinate_rows: Vec<(Vec<IBig>, Option<IBig>)>,
    /// `U`, `V` and the diagonal of the Smith form of `δ^{p-1}`, for certificates.
    solve_u: IntegerMatrix,
    solve_v: IntegerMatrix,
    diagonal: Vec<IBig>,
    coboundary: IntegerMatrix,
}

impl CohomologyGroup {
    /// Number of class coordinates.
    pub fn coordinate_len(&self) -> usize {
        self.coordinate_rows.len()
    }

    /// Moduli of the class coordinates (`None` for integer coordinates).
    pub fn moduli(&self) -> Vec<Option<IBig>> {
        self.coordinate_rows
            .iter()
            .map(|(_, m)| m.clone())
            .collect()
    }

    /// Coordinates of the class of cocycle `z`; torsion entries are reduced to `[0, d)`.
    pub fn class_coordinates(&self, z: &[IBig]) -> Vec<IBig> {
        self.coordinate_rows
            .iter()
            .map(|(row, modulus)| {
                let mut y = IBig::ZERO;
                for (a, b) in row.iter().zip(z) {
                    if !a.is_zero() && !b.is_zero() {
                        y += a * b;
                    }
                }
                match modulus {
                    Some(d) => euclid_rem(&y, d),
                    None => y,
                }
            })
            .collect()
    }

    pub fn is_cocycle(&self, z: &[IBig]) -> bool {
        self.coboundary.mul_vec(z).iter().all(|x| x.is_zero())
    }

    /// `Some(b)` with `δb = z` when `z` is a coboundary, `None` when it is not.
    pub fn coboundary_certificate(&self, z: &[IBig]) -> Option<Vec<IBig>> {
        // U z = D w, and then b = V w
        let y: Vec<IBig> = (0..self.solve_u.rows())
            .map(|i| {
                let mut acc = IBig::ZERO;
                for (a, b) in self.solve_u.row(i).iter().zip(z) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += a * b;
                    }
                }
                acc
            })
            .collect();
        let rank = self.diagonal.iter().take_while(|d| !d.is_zero()).count();
        if y[rank..].iter().any(|x| !x.is_zero()) {
            return None;
        }
        let mut w = vec![IBig::ZERO; self.solve_v.rows()];
        for i in 0..rank {
            let (q, r) = y[i].clone().div_rem(self.diagonal[i].clone());
            if !r.is_zero() {
                return None;
            }
            w[i] = q;
        }
        Some(self.solve_v.mul_vec(&w))
    }
}

/// `H̃^p` for every `p` in `-1..=dim`, with cocycle representatives computed on first use.
#[derive(Debug)]
pub struct Cohomology {
    pub home: u64,
    pub chain: ChainComplex,
    profile: HomologyProfile,
    groups: Vec<OnceLock<CohomologyGroup>>,
}

impl Cohomology {
    pub fn new(k: &SimplicialComplex) -> Self {
        let chain = ChainComplex::new(k);
        let profile = homology_of_chain_complex(&chain);
        let groups = (-1..=chain.dim()).map(|_| OnceLock::new()).collect();
        Cohomology {
            home: k.fingerprint(),
            chain,
            profile,
            groups,
        }
    }

    pub fn homology(&self) -> &HomologyProfile {
        &self.profile
    }

    /// True iff `H̃^p ≠ 0`.
    pub fn is_nonzero(&self, p: isize) -> bool {
        !self.profile.cohomology(p).is_zero()
    }

    /// `H̃^p`; `None` outside `-1..=dim`.
    pub fn group(&self, p: isize) -> Option<&CohomologyGroup> {
        if p < -1 {
            return None;
        }
        let cell = self.groups.get((p + 1) as usize)?;
        Some(cell.get_or_init(|| cohomology_group(&self.chain, self.home, p)))
    }

    /// Groups in every degree, computing any that are still pending.
    pub fn groups(&self) -> Vec<&CohomologyGroup> {
        (-1..=self.chain.dim())
            .filter_map(|p| self.group(p))
            .collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.profile.is_acyclic()
    }

    fn check(&self, c: &Cochain) -> Result<&CohomologyGroup> {
        if c.home != self.home {
            return Err(Error::MixedComplexes);
        }
        let g = self.group(c.degree).ok_or(Error::NotACocycle)?;
        if c.coefficients.len() != self.chain.rank(c.degree) || !g.is_cocycle(&c.coefficients) {
            return Err(Error::NotACocycle);
        }
        Ok(g)
    }

    /// Whether `c` is a coboundary, with a cochain `b` such that `δb = c` when it is.
    pub fn is_coboundary(&self, c: &Cochain) -> Result<Option<Cochain>> {
        if c.home == self.home && c.degree > self.chain.dim() && c.coefficients.is_empty() {
            let degree = c.degree - 1;
            return Ok(Some(Cochain::zero(
                self.home,
                degree,
                self.chain.rank(degree),
            )));
        }
        let g = self.check(c)?;
        Ok(g.coboundary_certificate(&c.coefficients).map(|b| Cochain {
            home: self.home,
            degree: c.degree - 1,
            coefficients: b,
        }))
    }

    /// Class coordinates of a cocycle; empty when `H̃^p = 0`.
    pub fn class_coordinates(&self, c: &Cochain) -> Result<Vec<IBig>> {
        if c.home != self.home {
            return Err(Error::MixedComplexes);
        }
        if !self.is_nonzero(c.degree) {
            return Ok(Vec::new());
        }
        Ok(self.check(c)?.class_coordinates(&c.coefficients))
    }

    /// `δ` applied to a cochain.
    pub fn coboundary_of(&self, c: &Cochain) -> Cochain {
        let m = self.chain.coboundary(c.degree);
        Cochain {
            home: self.home,
            degree: c.degree + 1,
            coefficients: m.mul_vec(&c.coefficients),
        }
    }
}

fn cohomology_group(chain: &ChainComplex, home: u64, p: isize) -> CohomologyGroup {
    let fp = chain.rank(p);
    // incoming coboundary δ^{p-1}: C^{p-1} → C^p
    let incoming = chain.coboundary(p - 1);
    let snf = smith_normal_form_with(
        &incoming,
        Track {
            left: true,
            left_inverse: true,
            right: true,
            right_inverse: false,
        },
    );
    let u = snf.u.expect("tracked");
    let u_inv = snf.u_inv.expect("tracked");
    let rank = snf.rank;

    let mut coordinate_rows = Vec::new();
    let mut generators = Vec::new();
    let mut torsion = Vec::new();
    for i in 0..rank {
        let d = &snf.diagonal[i];
        if !d.is_one() {
            coordinate_rows.push((u.row(i).to_vec(), Some(d.clone())));
            torsion.push(d.clone());
            generators.push(Generator {
                cocycle: Cochain {
                    home,
                    degree: p,
                    coefficients: u_inv.column(i),
                },
                order: Some(d.clone()),
            });
        }
    }
    for i in rank..fp {
        coordinate_rows.push((u.row(i).to_vec(), None));
    }

    // free part: kernel of δ^p restricted to the span of U^{-1} e_i, i >= rank
    let outgoing = chain.coboundary(p);
    let tail = u_inv.column_block(rank, fp);
    let m = outgoing.mul(&tail);
    let ksnf = smith_normal_form_with(
        &m,
        Track {
            left: false,
            left_inverse: false,
            right: true,
            right_inverse: false,
        },
    );
    let kv = ksnf.v.expect("tracked");
    let free_rank = fp - rank - ksnf.rank;
    for j in ksnf.rank..kv.cols() {
        let w = kv.column(j);
        generators.push(Generator {
            cocycle: Cochain {
                home,
                degree: p,
                coefficients: tail.mul_vec(&w),
            },
            order: None,
        });
    }

    CohomologyGroup {
        degree: p,
        group: Group {
            rank: free_rank,
            torsion,
        },
        generators,
        coordinate_rows,
        solve_u: u,
        solve_v: snf.v.expect("tracked"),
        diagonal: snf.diagonal,
        coboundary: outgoing,
    }
}

/// Cocycles whose classes generate `H̃^p(K)`: torsion generators tagged with their order,
/// then a basis of the free part.
pub fn cocycle_basis(k: &SimplicialComplex, p: isize) -> Vec<Generator> {
    Cohomology::new(k)
        .group(p)
        .map(|g| g.generators.clone())
        .unwrap_or_default()
}

/// Whether `c` is an integral coboundary on `k`, with a certificate when it is.
pub fn is_coboundary(k: &SimplicialComplex, c: &Cochain) -> Result<Option<Cochain>> {
    Cohomology::new(k).is_coboundary(c)
}

pub(crate) fn euclid_rem(y: &IBig, d: &IBig) -> IBig {
    let (_, r) = y.clone().div_rem(d.clone());
    if r < IBig::ZERO {
        r + d
    } else {
        r
    }
}

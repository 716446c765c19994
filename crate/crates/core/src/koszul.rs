//! `Tor_{Z[v_1..v_n]}(Z[K], Z)` from the Koszul complex `Z[K] ⊗ Λ[u_1..u_n]`,
//! `d(u_i) = v_i`, restricted to square-free multidegrees.
//!
//! In multidegree `W` the complex has basis `x_S u_T` with `S ⊔ T = W` and `S ∈ K`,
//! homological degree `|T|`; its homology in degree `i` contributes to total degree
//! `2|W| - i`. This is a cross-check for the Hochster sweep and shares only the Smith
//! normal form with it.

use dashu_int::IBig;

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::smith::{invariant_factors, IntegerMatrix};
use crate::vertex_set::VertexSet;

/// Largest vertex count the oracle accepts.
pub const KOSZUL_LIMIT: usize = 8;

/// Ranks and torsion of Tor by total degree `0..=2n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KoszulTor {
    pub ranks: Vec<usize>,
    pub torsion: Vec<Vec<IBig>>,
}

impl KoszulTor {
    /// Ranks with trailing zeros removed.
    pub fn trimmed_ranks(&self) -> Vec<usize> {
        let mut r = self.ranks.clone();
        while r.len() > 1 && r.last() == Some(&0) {
            r.pop();
        }
        r
    }
}

pub fn koszul_tor_oracle(k: &SimplicialComplex) -> Result<KoszulTor> {
    koszul_tor_with_limit(k, KOSZUL_LIMIT)
}

pub fn koszul_tor_with_limit(k: &SimplicialComplex, limit: usize) -> Result<KoszulTor> {
    let n = k.n();
    if n > limit {
        return Err(Error::LimitExceeded { n, limit });
    }
    let mut ranks = vec![0usize; 2 * n + 1];
    let mut torsion = vec![Vec::new(); 2 * n + 1];
    for w in VertexSet::full(n).subsets() {
        // basis[i] = the S with |W \ S| = i
        let size = w.len();
        let mut basis: Vec<Vec<VertexSet>> = vec![Vec::new(); size + 1];
        for s in w.subsets() {
            if k.contains_face(s) {
                basis[size - s.len()].push(s);
            }
        }
        // diffs[i] : degree i -> degree i-1, for i = 1..=size
        let diffs: Vec<Option<IntegerMatrix>> = (0..=size + 1)
            .map(|i| {
                (1..=size)
                    .contains(&i)
                    .then(|| differential(w, &basis[i], &basis[i - 1]))
            })
            .collect();
        let factor_counts: Vec<Vec<IBig>> = diffs
            .iter()
            .map(|d| d.as_ref().map(invariant_factors).unwrap_or_default())
            .collect();
        for i in 0..=size {
            let dim = basis[i].len();
            let rank_out = if i >= 1 { factor_counts[i].len() } else { 0 };
            let rank_in = factor_counts[i + 1].len();
            let total = 2 * size - i;
            ranks[total] += dim - rank_out - rank_in;
            torsion[total].extend(factor_counts[i + 1].iter().filter(|d| !d.is_one()).cloned());
        }
    }
    for t in &mut torsion {
        t.sort();
    }
    Ok(KoszulTor { ranks, torsion })
}

/// Matrix of `d(x_S u_T) = Σ_j (-1)^j x_{S ∪ t_j} u_{T \ t_j}` (terms with `S ∪ t_j ∉ K`
/// vanish because they are not in the basis).
fn differential(w: VertexSet, from: &[VertexSet], to: &[VertexSet]) -> IntegerMatrix {
    let mut m = IntegerMatrix::zeros(to.len(), from.len());
    for (col, s) in from.iter().enumerate() {
        let t = w - *s;
        for (j, v) in t.iter().enumerate() {
            let target = s.with(v);
            if let Some(row) = to.iter().position(|x| *x == target) {
                m.set(row, col, if j % 2 == 0 { IBig::ONE } else { -IBig::ONE });
            }
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_examples() {
        let sq = koszul_tor_oracle(&SimplicialComplex::polygon(4)).unwrap();
        assert_eq!(sq.trimmed_ranks(), vec![1, 0, 0, 2, 0, 0, 1]);
        let tri = koszul_tor_oracle(&SimplicialComplex::simplex_boundary(3)).unwrap();
        assert_eq!(tri.trimmed_ranks(), vec![1, 0, 0, 0, 0, 1]);
        let edge = koszul_tor_oracle(&SimplicialComplex::simplex(2)).unwrap();
        assert_eq!(edge.trimmed_ranks(), vec![1]);
    }

    #[test]
    fn differential_squares_to_zero() {
        let k = SimplicialComplex::polygon(5);
        let w = VertexSet::full(5);
        let mut basis: Vec<Vec<VertexSet>> = vec![Vec::new(); 6];
        for s in w.subsets() {
            if k.contains_face(s) {
                basis[5 - s.len()].push(s);
            }
        }
        for i in 2..=5 {
            let a = differential(w, &basis[i - 1], &basis[i - 2]);
            let b = differential(w, &basis[i], &basis[i - 1]);
            assert!(a.mul(&b).is_zero());
        }
    }

    #[test]
    fn refuses_large_inputs() {
        assert!(matches!(
            koszul_tor_oracle(&SimplicialComplex::polygon(9)),
            Err(Error::LimitExceeded { .. })
        ));
    }
}

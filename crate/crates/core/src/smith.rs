//! Dense integer matrices and Smith normal form.
//!
//! Elimination pivots on the entry of least absolute value, which keeps coefficient growth
//! in check on boundary matrices. Entries are arbitrary precision.

use std::fmt;

use dashu_int::ops::DivRem;
use dashu_int::IBig;

/// Row-major dense matrix of arbitrary-precision integers.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<IBig>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix {
            rows,
            cols,
            data: vec![IBig::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = IBig::ONE;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &x) in row.iter().enumerate() {
                m.data[i * c + j] = IBig::from(x);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &IBig {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: IBig) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[IBig] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<IBig> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.data[i * self.cols + j].clone();
            }
        }
        t
    }

    pub fn mul(&self, rhs: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs.data[k * rhs.cols + j];
                    if !b.is_zero() {
                        out.data[i * rhs.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[IBig]) -> Vec<IBig> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = IBig::ZERO;
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += a * b;
                    }
                }
                acc
            })
            .collect()
    }

    /// Rows `range` as a new matrix.
    pub fn row_block(&self, start: usize, end: usize) -> IntegerMatrix {
        IntegerMatrix {
            rows: end - start,
            cols: self.cols,
            data: self.data[start * self.cols..end * self.cols].to_vec(),
        }
    }

    /// Columns `start..end` as a new matrix.
    pub fn column_block(&self, start: usize, end: usize) -> IntegerMatrix {
        let mut out = Self::zeros(self.rows, end - start);
        for i in 0..self.rows {
            for j in start..end {
                out.data[i * (end - start) + j - start] = self.get(i, j).clone();
            }
        }
        out
    }

    /// Horizontal concatenation.
    pub fn hcat(&self, rhs: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.rows, rhs.rows);
        let cols = self.cols + rhs.cols;
        let mut out = Self::zeros(self.rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[i * cols + j] = self.get(i, j).clone();
            }
            for j in 0..rhs.cols {
                out.data[i * cols + self.cols + j] = rhs.get(i, j).clone();
            }
        }
        out
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> IBig {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return IBig::ONE;
        }
        let mut a = self.data.clone();
        let mut sign = IBig::ONE;
        let mut prev = IBig::ONE;
        for k in 0..n {
            if a[k * n + k].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !a[i * n + k].is_zero()) else {
                    return IBig::ZERO;
                };
                for j in 0..n {
                    a.swap(k * n + j, p * n + j);
                }
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i * n + j] * &a[k * n + k] - &a[i * n + k] * &a[k * n + j];
                    a[i * n + j] = v / &prev;
                }
            }
            prev = a[k * n + k].clone();
        }
        sign * &a[n * n - 1]
    }
}

impl fmt::Debug for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{}x{}]", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Which transforms [`smith_normal_form_with`] should accumulate.
#[derive(Clone, Copy, Debug, Default)]
pub struct Track {
    pub left: bool,
    pub left_inverse: bool,
    pub right: bool,
    pub right_inverse: bool,
}

impl Track {
    pub const NONE: Track = Track {
        left: false,
        left_inverse: false,
        right: false,
        right_inverse: false,
    };
    pub const ALL: Track = Track {
        left: true,
        left_inverse: true,
        right: true,
        right_inverse: true,
    };
}

/// `U · M · V = D` with `D` diagonal, `d_1 | d_2 | ...`, nonzero entries positive.
#[derive(Clone, Debug)]
pub struct SmithForm {
    /// Diagonal of `D`, length `min(rows, cols)`; nonzero entries come first.
    pub diagonal: Vec<IBig>,
    pub rank: usize,
    pub rows: usize,
    pub cols: usize,
    pub u: Option<IntegerMatrix>,
    pub u_inv: Option<IntegerMatrix>,
    pub v: Option<IntegerMatrix>,
    pub v_inv: Option<IntegerMatrix>,
}

impl SmithForm {
    /// `D` as a full matrix.
    pub fn d(&self) -> IntegerMatrix {
        let mut d = IntegerMatrix::zeros(self.rows, self.cols);
        for (i, x) in self.diagonal.iter().enumerate() {
            d.set(i, i, x.clone());
        }
        d
    }

    /// Invariant factors greater than one.
    pub fn torsion(&self) -> Vec<IBig> {
        self.diagonal[..self.rank]
            .iter()
            .filter(|x| !x.is_one())
            .cloned()
            .collect()
    }
}

/// Smith normal form with all four transforms.
pub fn smith_normal_form(m: &IntegerMatrix) -> SmithForm {
    smith_normal_form_with(m, Track::ALL)
}

pub fn smith_normal_form_with(m: &IntegerMatrix, track: Track) -> SmithForm {
    let mut e = Eliminator::new(m.clone(), track);
    e.run();
    e.finish()
}

struct Eliminator {
    a: IntegerMatrix,
    u: Option<IntegerMatrix>,
    u_inv: Option<IntegerMatrix>,
    v: Option<IntegerMatrix>,
    v_inv: Option<IntegerMatrix>,
}

impl Eliminator {
    fn new(a: IntegerMatrix, track: Track) -> Self {
        let (r, c) = (a.rows, a.cols);
        Eliminator {
            u: track.left.then(|| IntegerMatrix::identity(r)),
            u_inv: track.left_inverse.then(|| IntegerMatrix::identity(r)),
            v: track.right.then(|| IntegerMatrix::identity(c)),
            v_inv: track.right_inverse.then(|| IntegerMatrix::identity(c)),
            a,
        }
    }

    fn finish(self) -> SmithForm {
        let k = self.a.rows.min(self.a.cols);
        let diagonal: Vec<IBig> = (0..k).map(|i| self.a.get(i, i).clone()).collect();
        let rank = diagonal.iter().take_while(|x| !x.is_zero()).count();
        SmithForm {
            diagonal,
            rank,
            rows: self.a.rows,
            cols: self.a.cols,
            u: self.u,
            u_inv: self.u_inv,
            v: self.v,
            v_inv: self.v_inv,
        }
    }

    fn run(&mut self) {
        let k = self.a.rows.min(self.a.cols);
        for t in 0..k {
            let Some((pi, pj)) = self.min_abs_entry(t, t) else {
                break;
            };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                if !self.clear_column(t) {
                    continue;
                }
                if !self.clear_row(t) {
                    continue;
                }
                // pivot now alone in its row and column; enforce divisibility
                match self.non_divisible_row(t) {
                    Some(i) => self.add_row(t, i),
                    None => break,
                }
            }
            if self.a.get(t, t) < &IBig::ZERO {
                self.negate_row(t);
            }
        }
    }

    fn min_abs_entry(&self, r0: usize, c0: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, IBig)> = None;
        for i in r0..self.a.rows {
            for j in c0..self.a.cols {
                let x = self.a.get(i, j);
                if x.is_zero() {
                    continue;
                }
                let ax = abs(x);
                if best.as_ref().is_none_or(|b| ax < b.2) {
                    let one = ax.is_one();
                    best = Some((i, j, ax));
                    if one {
                        return best.map(|b| (b.0, b.1));
                    }
                }
            }
        }
        best.map(|b| (b.0, b.1))
    }

    /// Reduces column `t` below the pivot. Returns false if a smaller remainder was
    /// swapped into the pivot position (caller restarts).
    fn clear_column(&mut self, t: usize) -> bool {
        for i in t + 1..self.a.rows {
            if self.a.get(i, t).is_zero() {
                continue;
            }
            let (q, _) = self.a.get(i, t).clone().div_rem(self.a.get(t, t).clone());
            if !q.is_zero() {
                self.row_axpy(i, t, &q);
            }
        }
        let mut best: Option<(usize, IBig)> = None;
        for i in t + 1..self.a.rows {
            let x = self.a.get(i, t);
            if !x.is_zero() {
                let ax = abs(x);
                if best.as_ref().is_none_or(|b| ax < b.1) {
                    best = Some((i, ax));
                }
            }
        }
        match best {
            Some((i, _)) => {
                self.swap_rows(t, i);
                false
            }
            None => true,
        }
    }

    fn clear_row(&mut self, t: usize) -> bool {
        for j in t + 1..self.a.cols {
            if self.a.get(t, j).is_zero() {
                continue;
            }
            let (q, _) = self.a.get(t, j).clone().div_rem(self.a.get(t, t).clone());
            if !q.is_zero() {
                self.col_axpy(j, t, &q);
            }
        }
        let mut best: Option<(usize, IBig)> = None;
        for j in t + 1..self.a.cols {
            let x = self.a.get(t, j);
            if !x.is_zero() {
                let ax = abs(x);
                if best.as_ref().is_none_or(|b| ax < b.1) {
                    best = Some((j, ax));
                }
            }
        }
        match best {
            Some((j, _)) => {
                self.swap_cols(t, j);
                false
            }
            None => true,
        }
    }

    fn non_divisible_row(&self, t: usize) -> Option<usize> {
        let p = self.a.get(t, t).clone();
        if abs(&p).is_one() {
            return None;
        }
        for i in t + 1..self.a.rows {
            for j in t + 1..self.a.cols {
                let x = self.a.get(i, j);
                if !x.is_zero() {
                    let (_, r) = x.clone().div_rem(p.clone());
                    if !r.is_zero() {
                        return Some(i);
                    }
                }
            }
        }
        None
    }

    /// row_i -= q * row_t
    fn row_axpy(&mut self, i: usize, t: usize, q: &IBig) {
        row_sub(&mut self.a, i, t, q);
        if let Some(u) = self.u.as_mut() {
            row_sub(u, i, t, q);
        }
        if let Some(ui) = self.u_inv.as_mut() {
            // U^{-1} <- U^{-1} (I + q e_i e_t^T): col_t += q col_i
            col_sub(ui, t, i, &-q);
        }
    }

    /// col_j -= q * col_t
    fn col_axpy(&mut self, j: usize, t: usize, q: &IBig) {
        col_sub(&mut self.a, j, t, q);
        if let Some(v) = self.v.as_mut() {
            col_sub(v, j, t, q);
        }
        if let Some(vi) = self.v_inv.as_mut() {
            // V^{-1} <- (I + q e_t e_j^T) V^{-1}: row_t += q row_j
            row_sub(vi, t, j, &-q);
        }
    }

    /// row_t += row_i
    fn add_row(&mut self, t: usize, i: usize) {
        let minus_one = -IBig::ONE;
        row_sub(&mut self.a, t, i, &minus_one);
        if let Some(u) = self.u.as_mut() {
            row_sub(u, t, i, &minus_one);
        }
        if let Some(ui) = self.u_inv.as_mut() {
            col_sub(ui, i, t, &IBig::ONE);
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        swap_rows(&mut self.a, i, j);
        if let Some(u) = self.u.as_mut() {
            swap_rows(u, i, j);
        }
        if let Some(ui) = self.u_inv.as_mut() {
            swap_cols(ui, i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        swap_cols(&mut self.a, i, j);
        if let Some(v) = self.v.as_mut() {
            swap_cols(v, i, j);
        }
        if let Some(vi) = self.v_inv.as_mut() {
            swap_rows(vi, i, j);
        }
    }

    fn negate_row(&mut self, t: usize) {
        negate_row(&mut self.a, t);
        if let Some(u) = self.u.as_mut() {
            negate_row(u, t);
        }
        if let Some(ui) = self.u_inv.as_mut() {
            for r in 0..ui.rows {
                let x = -ui.get(r, t).clone();
                ui.set(r, t, x);
            }
        }
    }
}

/// Nonzero invariant factors of `m` in divisibility order.
///
/// Runs in machine integers with overflow checks and redoes the elimination in arbitrary
/// precision if any intermediate value leaves the `i64` range.
pub fn invariant_factors(m: &IntegerMatrix) -> Vec<IBig> {
    let small: Option<Vec<i64>> = m.data.iter().map(|x| i64::try_from(x).ok()).collect();
    if let Some(d) = small.and_then(|a| small_invariant_factors(a, m.rows, m.cols)) {
        return d.into_iter().map(IBig::from).collect();
    }
    let s = smith_normal_form_with(m, Track::NONE);
    s.diagonal[..s.rank].to_vec()
}

fn small_invariant_factors(mut a: Vec<i64>, rows: usize, cols: usize) -> Option<Vec<i64>> {
    let at = |i: usize, j: usize| i * cols + j;
    let mut diag = Vec::new();
    for t in 0..rows.min(cols) {
        let mut best: Option<(usize, usize, u64)> = None;
        for i in t..rows {
            for j in t..cols {
                let x = a[at(i, j)].unsigned_abs();
                if x != 0 && best.is_none_or(|b| x < b.2) {
                    best = Some((i, j, x));
                }
            }
        }
        let Some((pi, pj, _)) = best else { break };
        swap_small_rows(&mut a, cols, t, pi);
        swap_small_cols(&mut a, cols, rows, t, pj);
        loop {
            let p = a[at(t, t)];
            for i in t + 1..rows {
                let q = a[at(i, t)] / p;
                if q != 0 {
                    for j in t..cols {
                        a[at(i, j)] = a[at(i, j)].checked_sub(q.checked_mul(a[at(t, j)])?)?;
                    }
                }
            }
            for j in t + 1..cols {
                let q = a[at(t, j)] / p;
                if q != 0 {
                    for i in t..rows {
                        a[at(i, j)] = a[at(i, j)].checked_sub(q.checked_mul(a[at(i, t)])?)?;
                    }
                }
            }
            let mut smaller: Option<(bool, usize, u64)> = None;
            for i in t + 1..rows {
                let x = a[at(i, t)].unsigned_abs();
                if x != 0 && smaller.is_none_or(|b| x < b.2) {
                    smaller = Some((true, i, x));
                }
            }
            for j in t + 1..cols {
                let x = a[at(t, j)].unsigned_abs();
                if x != 0 && smaller.is_none_or(|b| x < b.2) {
                    smaller = Some((false, j, x));
                }
            }
            match smaller {
                Some((true, i, _)) => swap_small_rows(&mut a, cols, t, i),
                Some((false, j, _)) => swap_small_cols(&mut a, cols, rows, t, j),
                None => {
                    let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| a[at(i, j)] % p != 0));
                    match bad {
                        Some(i) => {
                            for j in t..cols {
                                a[at(t, j)] = a[at(t, j)].checked_add(a[at(i, j)])?;
                            }
                        }
                        None => break,
                    }
                }
            }
        }
        diag.push(a[at(t, t)].checked_abs()?);
    }
    Some(diag)
}

fn swap_small_rows(a: &mut [i64], cols: usize, i: usize, j: usize) {
    if i != j {
        for k in 0..cols {
            a.swap(i * cols + k, j * cols + k);
        }
    }
}

fn swap_small_cols(a: &mut [i64], cols: usize, rows: usize, i: usize, j: usize) {
    if i != j {
        for r in 0..rows {
            a.swap(r * cols + i, r * cols + j);
        }
    }
}

pub(crate) fn abs(x: &IBig) -> IBig {
    if x < &IBig::ZERO {
        -x.clone()
    } else {
        x.clone()
    }
}

fn row_sub(m: &mut IntegerMatrix, i: usize, t: usize, q: &IBig) {
    let c = m.cols;
    for j in 0..c {
        let b = &m.data[t * c + j];
        if b.is_zero() {
            continue;
        }
        let d = q * b;
        m.data[i * c + j] -= d;
    }
}

fn col_sub(m: &mut IntegerMatrix, j: usize, t: usize, q: &IBig) {
    let c = m.cols;
    for i in 0..m.rows {
        let b = &m.data[i * c + t];
        if b.is_zero() {
            continue;
        }
        let d = q * b;
        m.data[i * c + j] -= d;
    }
}

fn swap_rows(m: &mut IntegerMatrix, i: usize, j: usize) {
    let c = m.cols;
    for k in 0..c {
        m.data.swap(i * c + k, j * c + k);
    }
}

fn swap_cols(m: &mut IntegerMatrix, i: usize, j: usize) {
    let c = m.cols;
    for r in 0..m.rows {
        m.data.swap(r * c + i, r * c + j);
    }
}

fn negate_row(m: &mut IntegerMatrix, t: usize) {
    let c = m.cols;
    for j in 0..c {
        let x = -std::mem::take(&mut m.data[t * c + j]);
        m.data[t * c + j] = x;
    }
}

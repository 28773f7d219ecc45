//! Exact linear algebra at desk scale: dense rational matrices with
//! Gauss-Jordan elimination, and integer column Hermite / Smith normal forms
//! for lattice work. Pivot choices are fixed, so every routine is
//! deterministic.

use num_traits::{One, Zero};

use crate::error::Error;
use crate::scalar::{Frac, Scalar};

/// Dense rational matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct QMat<I: Scalar> {
    pub rows: usize,
    pub cols: usize,
    a: Vec<Frac<I>>,
}

impl<I: Scalar> QMat<I> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMat { rows, cols, a: vec![Frac::zero(); rows * cols] }
    }

    #[cfg(test)]
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = Frac::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Frac<I>>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        debug_assert!(rows.iter().all(|x| x.len() == c));
        QMat { rows: r, cols: c, a: rows.into_iter().flatten().collect() }
    }

    pub fn from_cols(cols: Vec<Vec<Frac<I>>>) -> Self {
        Self::from_rows(transpose_vecs(cols))
    }

    pub fn at(&self, i: usize, j: usize) -> &Frac<I> {
        &self.a[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Frac<I> {
        &mut self.a[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> Vec<Frac<I>> {
        (0..self.cols).map(|j| self.at(i, j).clone()).collect()
    }

    pub fn mul_vec(&self, v: &[Frac<I>]) -> Vec<Frac<I>> {
        debug_assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = Frac::zero();
                for j in 0..self.cols {
                    acc = acc + self.at(i, j) * &v[j];
                }
                acc
            })
            .collect()
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.cols, rhs.rows);
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.at(i, k).is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let add = self.at(i, k) * rhs.at(k, j);
                    let cur = out.at(i, j).clone();
                    *out.at_mut(i, j) = cur + add;
                }
            }
        }
        out
    }

    /// Reduced row echelon form; returns the pivot column of each pivot row.
    pub fn rref(mut self) -> (Self, Vec<usize>) {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.at(i, c).is_zero()) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = {
                let piv = self.at(r, c).clone();
                Frac::one() / piv
            };
            for j in c..self.cols {
                let v = self.at(r, j) * &inv;
                *self.at_mut(r, j) = v;
            }
            for i in 0..self.rows {
                if i != r && !self.at(i, c).is_zero() {
                    let f = self.at(i, c).clone();
                    for j in c..self.cols {
                        let v = self.at(i, j) - &(self.at(r, j) * &f);
                        *self.at_mut(i, j) = v;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (self, pivots)
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.a.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().1.len()
    }

    #[cfg(test)]
    pub fn det(&self) -> Frac<I> {
        debug_assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Frac::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.at(i, c).is_zero()) else {
                return Frac::zero();
            };
            if p != c {
                m.swap_rows(c, p);
                det = -det;
            }
            let piv = m.at(c, c).clone();
            det = det * &piv;
            for i in c + 1..n {
                if m.at(i, c).is_zero() {
                    continue;
                }
                let f = m.at(i, c) / &piv;
                for j in c..n {
                    let v = m.at(i, j) - &(m.at(c, j) * &f);
                    *m.at_mut(i, j) = v;
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<Self> {
        debug_assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                *aug.at_mut(i, j) = self.at(i, j).clone();
            }
            *aug.at_mut(i, n + i) = Frac::one();
        }
        let (red, pivots) = aug.rref();
        if pivots.len() < n || pivots.iter().enumerate().any(|(k, &c)| c != k) {
            return None;
        }
        let mut out = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                *out.at_mut(i, j) = red.at(i, n + j).clone();
            }
        }
        Some(out)
    }

    /// One solution of `self * x = b` with all free variables set to zero, or
    /// `None` when inconsistent.
    pub fn solve(&self, b: &[Frac<I>]) -> Option<Vec<Frac<I>>> {
        debug_assert_eq!(self.rows, b.len());
        let mut aug = Self::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *aug.at_mut(i, j) = self.at(i, j).clone();
            }
            *aug.at_mut(i, self.cols) = b[i].clone();
        }
        let (red, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Frac::zero(); self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = red.at(r, self.cols).clone();
        }
        Some(x)
    }

    /// Basis of the right null space `{x : self * x = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<Frac<I>>> {
        let (red, pivots) = self.clone().rref();
        let mut basis = Vec::new();
        let piv_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
        for free in 0..self.cols {
            if piv_set.contains(&free) {
                continue;
            }
            let mut v = vec![Frac::zero(); self.cols];
            v[free] = Frac::one();
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = -red.at(r, free).clone();
            }
            basis.push(v);
        }
        basis
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *out.at_mut(j, i) = self.at(i, j).clone();
            }
        }
        out
    }
}

pub(crate) fn transpose_vecs<T: Clone>(cols: Vec<Vec<T>>) -> Vec<Vec<T>> {
    if cols.is_empty() {
        return Vec::new();
    }
    let rows = cols[0].len();
    (0..rows).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect()
}

/// Dense integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct ZMat<I: Scalar> {
    pub rows: usize,
    pub cols: usize,
    a: Vec<I>,
}

impl<I: Scalar> ZMat<I> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ZMat { rows, cols, a: vec![I::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = I::one();
        }
        m
    }

    pub fn from_cols(cols: Vec<Vec<I>>) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, |x| x.len());
        let mut m = Self::zeros(r, c);
        for (j, col) in cols.iter().enumerate() {
            debug_assert_eq!(col.len(), r);
            for i in 0..r {
                *m.at_mut(i, j) = col[i].clone();
            }
        }
        m
    }

    pub fn at(&self, i: usize, j: usize) -> &I {
        &self.a[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut I {
        &mut self.a[i * self.cols + j]
    }

    pub fn to_qmat(&self) -> QMat<I> {
        let mut out = QMat::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *out.at_mut(i, j) = Frac::from_integer(self.at(i, j).clone());
            }
        }
        out
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in 0..self.rows {
            self.a.swap(r * self.cols + i, r * self.cols + j);
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.a.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let v = -self.at(i, j).clone();
            *self.at_mut(i, j) = v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self.at(i, j).clone();
            *self.at_mut(i, j) = v;
        }
    }

    /// `col_j -= q * col_i`
    fn addmul_col(&mut self, j: usize, i: usize, q: &I) {
        for r in 0..self.rows {
            let v = self.at(r, j).clone() - q.clone() * self.at(r, i).clone();
            *self.at_mut(r, j) = v;
        }
    }

    /// `row_j -= q * row_i`
    fn addmul_row(&mut self, j: usize, i: usize, q: &I) {
        for c in 0..self.cols {
            let v = self.at(j, c).clone() - q.clone() * self.at(i, c).clone();
            *self.at_mut(j, c) = v;
        }
    }
}

/// Column-style Hermite normal form of a full-row-rank `n x m` matrix: the
/// unique lower-triangular `n x n` basis of the column lattice with positive
/// diagonal and `0 <= h[i][j] < h[i][i]` for `j < i`.
pub(crate) fn hnf_cols<I: Scalar>(m: &ZMat<I>) -> Result<ZMat<I>, Error> {
    let n = m.rows;
    let mut w = m.clone();
    for i in 0..n {
        loop {
            let mut best: Option<usize> = None;
            for j in i..w.cols {
                if w.at(i, j).is_zero() {
                    continue;
                }
                match best {
                    None => best = Some(j),
                    Some(b) => {
                        if w.at(i, j).abs() < w.at(i, b).abs() {
                            best = Some(j);
                        }
                    }
                }
            }
            let Some(b) = best else {
                return Err(Error::InvalidLattice(format!(
                    "generators do not span in coordinate {i}"
                )));
            };
            w.swap_cols(i, b);
            if w.at(i, i).is_negative() {
                w.negate_col(i);
            }
            let piv = w.at(i, i).clone();
            let mut clean = true;
            for j in i + 1..w.cols {
                if w.at(i, j).is_zero() {
                    continue;
                }
                let q = w.at(i, j).div_floor(&piv);
                w.addmul_col(j, i, &q);
                if !w.at(i, j).is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
    }
    // Normalize entries left of each diagonal into [0, pivot).
    for i in 0..n {
        let piv = w.at(i, i).clone();
        for j in 0..i {
            let q = w.at(i, j).div_floor(&piv);
            if !q.is_zero() {
                w.addmul_col(j, i, &q);
            }
        }
    }
    let mut h = ZMat::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            *h.at_mut(i, j) = w.at(i, j).clone();
        }
    }
    for j in n..w.cols {
        for i in 0..n {
            if !w.at(i, j).is_zero() {
                return Err(Error::Internal("nonzero column beyond rank in normal form".into()));
            }
        }
    }
    Ok(h)
}

/// Smith normal form `u * a * v = diag(d)` with unimodular `u`, `v`,
/// nonnegative `d`, and `d[i] | d[i+1]`.
pub(crate) struct Snf<I: Scalar> {
    pub d: Vec<I>,
    pub u: ZMat<I>,
    pub v: ZMat<I>,
}

pub(crate) fn snf<I: Scalar>(m: &ZMat<I>) -> Snf<I> {
    let (r, c) = (m.rows, m.cols);
    let mut a = m.clone();
    let mut u = ZMat::identity(r);
    let mut v = ZMat::identity(c);
    let steps = r.min(c);
    for t in 0..steps {
        'outer: loop {
            // Smallest nonzero entry of the trailing submatrix to (t, t).
            let mut best: Option<(usize, usize)> = None;
            for i in t..r {
                for j in t..c {
                    if a.at(i, j).is_zero() {
                        continue;
                    }
                    match best {
                        None => best = Some((i, j)),
                        Some((bi, bj)) => {
                            if a.at(i, j).abs() < a.at(bi, bj).abs() {
                                best = Some((i, j));
                            }
                        }
                    }
                }
            }
            let Some((bi, bj)) = best else {
                break;
            };
            a.swap_rows(t, bi);
            u.swap_rows(t, bi);
            a.swap_cols(t, bj);
            v.swap_cols(t, bj);
            if a.at(t, t).is_negative() {
                a.negate_row(t);
                u.negate_row(t);
            }
            let piv = a.at(t, t).clone();
            let mut clean = true;
            for i in t + 1..r {
                if a.at(i, t).is_zero() {
                    continue;
                }
                let q = a.at(i, t).div_floor(&piv);
                a.addmul_row(i, t, &q);
                u.addmul_row(i, t, &q);
                if !a.at(i, t).is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..c {
                if a.at(t, j).is_zero() {
                    continue;
                }
                let q = a.at(t, j).div_floor(&piv);
                a.addmul_col(j, t, &q);
                v.addmul_col(j, t, &q);
                if !a.at(t, j).is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // Divisibility: pivot must divide the trailing block.
            for i in t + 1..r {
                for j in t + 1..c {
                    if !a.at(i, j).clone().mod_floor(&piv).is_zero() {
                        let one = I::one();
                        let q = -one;
                        a.addmul_row(t, i, &q);
                        u.addmul_row(t, i, &q);
                        continue 'outer;
                    }
                }
            }
            break;
        }
    }
    let d = (0..steps).map(|t| a.at(t, t).clone()).collect();
    Snf { d, u, v }
}

/// Nonnegative gcd of a slice; zero for an all-zero slice.
pub(crate) fn content<I: Scalar>(v: &[I]) -> I {
    let mut g = I::zero();
    for x in v {
        g = g.gcd(x);
    }
    g
}

//! Dense matrices over a [`Field`] and the row-reduction toolkit built on them.

use std::fmt;

use super::field::Field;

/// A dense row-major matrix whose entries are kept in canonical form.
#[derive(Clone, PartialEq)]
pub struct Matrix<K: Field> {
    field: K,
    rows: usize,
    cols: usize,
    data: Vec<K::Elem>,
}

/// Reduced row echelon form together with the pivot columns.
#[derive(Clone, Debug)]
pub struct Rref<K: Field> {
    pub matrix: Matrix<K>,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

impl<K: Field> fmt::Debug for Matrix<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|e| self.field.format(e)).collect();
            write!(f, "[{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl<K: Field> Matrix<K> {
    pub fn zeros(field: &K, rows: usize, cols: usize) -> Self {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &K, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    pub fn from_vec(field: &K, rows: usize, cols: usize, data: Vec<K::Elem>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count must be rows * cols");
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data,
        }
    }

    pub fn from_rows(field: &K, cols: usize, rows: Vec<Vec<K::Elem>>) -> Self {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for row in rows {
            assert_eq!(row.len(), cols);
            data.extend(row);
        }
        Matrix {
            field: field.clone(),
            rows: r,
            cols,
            data,
        }
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_cols(field: &K, rows: usize, cols: &[Vec<K::Elem>]) -> Self {
        let mut m = Self::zeros(field, rows, cols.len());
        for (c, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (r, e) in col.iter().enumerate() {
                m.data[r * m.cols + c] = e.clone();
            }
        }
        m
    }

    pub fn from_i64(field: &K, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&v| field.from_i64(v)).collect())
            .collect();
        Self::from_rows(field, cols, rows)
    }

    pub fn from_fn(field: &K, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> K::Elem) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data,
        }
    }

    #[inline]
    pub fn field(&self) -> &K {
        &self.field
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> &K::Elem {
        &self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: K::Elem) {
        self.data[r * self.cols + c] = v;
    }

    #[inline]
    pub fn get_mut(&mut self, r: usize, c: usize) -> &mut K::Elem {
        &mut self.data[r * self.cols + c]
    }

    #[inline]
    pub fn row(&self, r: usize) -> &[K::Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<K::Elem> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn data(&self) -> &[K::Elem] {
        &self.data
    }

    pub fn into_data(self) -> Vec<K::Elem> {
        self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| self.field.is_zero(e))
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    let e = self.get(r, c);
                    if r == c {
                        self.field.is_one(e)
                    } else {
                        self.field.is_zero(e)
                    }
                })
            })
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(&self.field, self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix product");
        let k = &self.field;
        let mut out = Self::zeros(k, self.rows, other.cols);
        for r in 0..self.rows {
            for t in 0..self.cols {
                let a = self.get(r, t);
                if k.is_zero(a) {
                    continue;
                }
                let orow = other.row(t);
                let base = r * out.cols;
                for (c, b) in orow.iter().enumerate() {
                    if !k.is_zero(b) {
                        k.add_mul_assign(&mut out.data[base + c], a, b);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[K::Elem]) -> Vec<K::Elem> {
        assert_eq!(self.cols, v.len());
        let k = &self.field;
        (0..self.rows)
            .map(|r| {
                let mut acc = k.zero();
                for (a, b) in self.row(r).iter().zip(v) {
                    if !k.is_zero(a) && !k.is_zero(b) {
                        k.add_mul_assign(&mut acc, a, b);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| self.field.add(a, b)).collect();
        Self::from_vec(&self.field, self.rows, self.cols, data)
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| self.field.sub(a, b)).collect();
        Self::from_vec(&self.field, self.rows, self.cols, data)
    }

    pub fn scale(&self, s: &K::Elem) -> Self {
        let data = self.data.iter().map(|a| self.field.mul(a, s)).collect();
        Self::from_vec(&self.field, self.rows, self.cols, data)
    }

    /// `self += s * other`
    pub fn add_scaled(&mut self, s: &K::Elem, other: &Self) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        if self.field.is_zero(s) {
            return;
        }
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            if !self.field.is_zero(b) {
                self.field.add_mul_assign(a, s, b);
            }
        }
    }

    pub fn hstack(field: &K, rows: usize, blocks: &[&Self]) -> Self {
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(field, rows, cols);
        let mut off = 0;
        for b in blocks {
            assert_eq!(b.rows, rows);
            out.set_block(0, off, b);
            off += b.cols;
        }
        out
    }

    pub fn vstack(field: &K, cols: usize, blocks: &[&Self]) -> Self {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let mut data = Vec::with_capacity(rows * cols);
        for b in blocks {
            assert_eq!(b.cols, cols);
            data.extend(b.data.iter().cloned());
        }
        Self::from_vec(field, rows, cols, data)
    }

    pub fn block_diag(field: &K, blocks: &[&Self]) -> Self {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(field, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            out.set_block(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Self) {
        for r in 0..b.rows {
            for c in 0..b.cols {
                self.data[(r0 + r) * self.cols + c0 + c] = b.get(r, c).clone();
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        Self::from_fn(&self.field, rows, cols, |r, c| self.get(r0 + r, c0 + c).clone())
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &r in idx {
            data.extend(self.row(r).iter().cloned());
        }
        Self::from_vec(&self.field, idx.len(), self.cols, data)
    }

    pub fn select_cols(&self, idx: &[usize]) -> Self {
        Self::from_fn(&self.field, self.rows, idx.len(), |r, c| self.get(r, idx[c]).clone())
    }

    /// Reduced row echelon form by Gauss-Jordan elimination.
    pub fn rref(&self) -> Rref<K> {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        let rank = pivots.len();
        Rref { matrix: m, pivots, rank }
    }

    /// Row-reduces in place and returns the pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        self.rref_in_place_limited(self.cols)
    }

    /// Row reduction that only pivots in the first `limit` columns; the
    /// remaining columns are carried along (augmented systems).
    pub fn rref_in_place_limited(&mut self, limit: usize) -> Vec<usize> {
        let k = self.field.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..limit {
            if r == rows {
                break;
            }
            let Some(pr) = (r..rows).find(|&i| !k.is_zero(&self.data[i * cols + c])) else {
                continue;
            };
            if pr != r {
                for j in c..cols {
                    self.data.swap(pr * cols + j, r * cols + j);
                }
            }
            let inv = k.inv(&self.data[r * cols + c]).expect("nonzero pivot");
            if !k.is_one(&inv) {
                for j in c..cols {
                    let v = k.mul(&self.data[r * cols + j], &inv);
                    self.data[r * cols + j] = v;
                }
            }
            let (before, rest) = self.data.split_at_mut(r * cols);
            let (prow, after) = rest.split_at_mut(cols);
            let eliminate = |row: &mut [K::Elem]| {
                let factor = row[c].clone();
                if k.is_zero(&factor) {
                    return;
                }
                for j in c..cols {
                    if !k.is_zero(&prow[j]) {
                        k.sub_mul_assign(&mut row[j], &factor, &prow[j]);
                    }
                }
            };
            for row in before.chunks_mut(cols) {
                eliminate(row);
            }
            for row in after.chunks_mut(cols) {
                eliminate(row);
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        // eliminate along the shorter side
        if self.rows < self.cols {
            self.rref().rank
        } else {
            self.transpose().rref().rank
        }
    }

    /// A basis of the right kernel `{v : self * v = 0}`, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vec<K::Elem>> {
        let k = &self.field;
        let Rref { matrix: rr, pivots, .. } = self.rref();
        let mut is_pivot = vec![None; self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            is_pivot[p] = Some(i);
        }
        let mut basis = Vec::new();
        for f in 0..self.cols {
            if is_pivot[f].is_some() {
                continue;
            }
            let mut v = vec![k.zero(); self.cols];
            v[f] = k.one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = k.neg(rr.get(i, f));
            }
            basis.push(v);
        }
        basis
    }

    /// Kernel basis as the columns of a matrix.
    pub fn kernel_matrix(&self) -> Self {
        Self::from_cols(&self.field, self.cols, &self.kernel_basis())
    }

    /// Indices of a maximal independent set of columns (leftmost first).
    pub fn independent_cols(&self) -> Vec<usize> {
        self.rref().pivots
    }

    /// A matrix whose columns form a basis of the column space.
    pub fn column_space(&self) -> Self {
        self.select_cols(&self.independent_cols())
    }

    /// Some `x` with `self * x = b`.
    pub fn solve(&self, b: &[K::Elem]) -> Option<Vec<K::Elem>> {
        let rhs = Self::from_cols(&self.field, self.rows, &[b.to_vec()]);
        self.solve_right(&rhs).map(|x| x.col(0))
    }

    /// Some `X` with `self * X = rhs`.
    pub fn solve_right(&self, rhs: &Self) -> Option<Self> {
        assert_eq!(self.rows, rhs.rows);
        let k = &self.field;
        let mut aug = Self::hstack(k, self.rows, &[self, rhs]);
        let pivots = aug.rref_in_place_limited(self.cols);
        // inconsistent if a zero row of the coefficient part has a nonzero rhs
        for r in pivots.len()..self.rows {
            if (self.cols..aug.cols).any(|c| !k.is_zero(aug.get(r, c))) {
                return None;
            }
        }
        let mut x = Self::zeros(k, self.cols, rhs.cols);
        for (i, &p) in pivots.iter().enumerate() {
            for c in 0..rhs.cols {
                x.set(p, c, aug.get(i, self.cols + c).clone());
            }
        }
        Some(x)
    }

    /// Some `X` with `X * self = rhs`.
    pub fn solve_left(&self, rhs: &Self) -> Option<Self> {
        self.transpose().solve_right(&rhs.transpose()).map(|x| x.transpose())
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let k = &self.field;
        let mut aug = Self::hstack(k, n, &[self, &Self::identity(k, n)]);
        let pivots = aug.rref_in_place_limited(n);
        if pivots.len() < n {
            return None;
        }
        Some(aug.block(0, n, n, n))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// For a subspace with basis the columns of `self` (full column rank),
    /// returns `(proj, section)`: `proj` maps onto a complement coordinate
    /// space with kernel exactly the subspace, and `proj * section = I`.
    pub fn quotient_maps(&self) -> (Self, Self) {
        let k = &self.field;
        let n = self.rows;
        let s = self.cols;
        let pivots = self.transpose().rref().pivots;
        debug_assert_eq!(pivots.len(), s, "quotient_maps needs independent columns");
        let mut in_sub = vec![false; n];
        for &p in &pivots {
            in_sub[p] = true;
        }
        let comp: Vec<usize> = (0..n).filter(|&i| !in_sub[i]).collect();
        let mut section = Self::zeros(k, n, comp.len());
        for (j, &i) in comp.iter().enumerate() {
            section.set(i, j, k.one());
        }
        let full = Self::hstack(k, n, &[self, &section]);
        let inv = full.inverse().expect("subspace plus coordinate complement spans");
        let proj = inv.block(s, 0, n - s, n);
        (proj, section)
    }

    /// Flattened entries, used when matrices are treated as vectors.
    pub fn flatten(&self) -> Vec<K::Elem> {
        self.data.clone()
    }
}

/// An incrementally built echelon basis of a subspace of `K^n`.
///
/// Vectors are reduced against stored rows; each stored row has a distinct
/// pivot with coefficient one.
#[derive(Clone, Debug)]
pub struct EchelonSpace<K: Field> {
    field: K,
    len: usize,
    rows: Vec<(usize, Vec<K::Elem>)>,
}

impl<K: Field> EchelonSpace<K> {
    pub fn new(field: &K, len: usize) -> Self {
        EchelonSpace {
            field: field.clone(),
            len,
            rows: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.len
    }

    /// Reduces `v` in place against the stored rows; returns its pivot if nonzero.
    pub fn reduce(&self, v: &mut [K::Elem]) -> Option<usize> {
        let k = &self.field;
        for (p, row) in &self.rows {
            let f = v[*p].clone();
            if k.is_zero(&f) {
                continue;
            }
            for (a, b) in v.iter_mut().zip(row) {
                if !k.is_zero(b) {
                    k.sub_mul_assign(a, &f, b);
                }
            }
        }
        v.iter().position(|e| !k.is_zero(e))
    }

    pub fn contains(&self, v: &[K::Elem]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w).is_none()
    }

    /// Adds `v`; returns `true` if it enlarged the space.
    pub fn insert(&mut self, v: &[K::Elem]) -> bool {
        assert_eq!(v.len(), self.len);
        let mut w = v.to_vec();
        match self.reduce(&mut w) {
            None => false,
            Some(p) => {
                let k = &self.field;
                let inv = k.inv(&w[p]).expect("nonzero pivot");
                for e in w.iter_mut() {
                    *e = k.mul(e, &inv);
                }
                self.rows.push((p, w));
                true
            }
        }
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.len
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::field::{PrimeField, Rationals};

    #[test]
    fn rref_of_identity_is_identity() {
        let q = Rationals;
        let id = Matrix::identity(&q, 3);
        let r = id.rref();
        assert_eq!(r.matrix, id);
        assert_eq!(r.pivots, vec![0, 1, 2]);
        assert_eq!(r.rank, 3);
    }

    #[test]
    fn rref_rank_one_over_q() {
        let q = Rationals;
        let m = Matrix::from_i64(&q, &[&[1, 1], &[1, 1]]);
        let r = m.rref();
        assert_eq!(r.matrix, Matrix::from_i64(&q, &[&[1, 1], &[0, 0]]));
        assert_eq!(r.rank, 1);
    }

    #[test]
    fn rref_over_f5() {
        let f = PrimeField::new(5).unwrap();
        let m = Matrix::from_i64(&f, &[&[2, 4], &[1, 2]]);
        let r = m.rref();
        assert_eq!(r.matrix, Matrix::from_i64(&f, &[&[1, 2], &[0, 0]]));
        assert_eq!(r.rank, 1);
        // re-multiplication oracle: row 0 of the input is 2 * (1, 2)
        let scaled = r.matrix.select_rows(&[0]).scale(&2);
        assert_eq!(scaled, m.select_rows(&[0]));
    }

    #[test]
    fn kernel_examples() {
        let q = Rationals;
        let m = Matrix::from_i64(&q, &[&[1, 1], &[1, 1]]);
        let ker = m.kernel_basis();
        assert_eq!(ker, vec![vec![q.from_i64(-1), q.from_i64(1)]]);

        let inv = Matrix::from_i64(&q, &[&[1, 2], &[3, 4]]);
        assert!(inv.kernel_basis().is_empty());

        let zero = Matrix::zeros(&q, 2, 3);
        assert_eq!(zero.kernel_basis().len(), 3);
    }

    #[test]
    fn solve_and_inverse() {
        let q = Rationals;
        let a = Matrix::from_i64(&q, &[&[2, 1], &[1, 1]]);
        let ai = a.inverse().unwrap();
        assert!(a.mul(&ai).is_identity());
        let x = a.solve(&[q.from_i64(3), q.from_i64(2)]).unwrap();
        assert_eq!(x, vec![q.from_i64(1), q.from_i64(1)]);
        let singular = Matrix::from_i64(&q, &[&[1, 1], &[1, 1]]);
        assert!(singular.solve(&[q.from_i64(1), q.from_i64(0)]).is_none());
    }

    #[test]
    fn quotient_maps_split_the_subspace() {
        let q = Rationals;
        let s = Matrix::from_i64(&q, &[&[1], &[1], &[0]]);
        let (proj, sec) = s.quotient_maps();
        assert!(proj.mul(&s).is_zero());
        assert!(proj.mul(&sec).is_identity());
        assert_eq!(proj.rows(), 2);
    }

    #[test]
    fn echelon_space_tracks_span() {
        let q = Rationals;
        let mut sp = EchelonSpace::new(&q, 3);
        assert!(sp.insert(&[q.from_i64(1), q.from_i64(2), q.from_i64(0)]));
        assert!(!sp.insert(&[q.from_i64(2), q.from_i64(4), q.from_i64(0)]));
        assert!(sp.insert(&[q.from_i64(0), q.from_i64(0), q.from_i64(5)]));
        assert!(sp.contains(&[q.from_i64(1), q.from_i64(2), q.from_i64(3)]));
        assert_eq!(sp.dim(), 2);
    }
}

//! Dense matrices over a [`Field`] and the linear algebra built on them.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Index, IndexMut};

use crate::field::Field;

/// A dense row-major matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E> Index<(usize, usize)> for Matrix<E> {
    type Output = E;
    fn index(&self, (r, c): (usize, usize)) -> &E {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl<E> IndexMut<(usize, usize)> for Matrix<E> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut E {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

/// Result of row reduction.
#[derive(Debug, Clone)]
pub struct Rref<E> {
    pub reduced: Matrix<E>,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl<E: Clone> Matrix<E> {
    pub fn from_vec(rows: usize, cols: usize, data: Vec<E>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data has the wrong length");
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<E>>, cols: usize) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols);
            data.extend(r);
        }
        Matrix { rows: n, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[E] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[E] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<E> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self[(r, c)].clone());
            }
        }
        Matrix { rows: self.cols, cols: self.rows, data }
    }

    /// Rows `rs` and columns `cs` of `self`.
    pub fn submatrix(&self, rs: &[usize], cs: &[usize]) -> Self {
        let mut data = Vec::with_capacity(rs.len() * cs.len());
        for &r in rs {
            for &c in cs {
                data.push(self[(r, c)].clone());
            }
        }
        Matrix { rows: rs.len(), cols: cs.len(), data }
    }
}

impl<E: Clone + PartialEq> Matrix<E> {
    pub fn zeros<K: Field<Elem = E>>(k: &K, rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![k.zero(); rows * cols] }
    }

    pub fn identity<K: Field<Elem = E>>(k: &K, n: usize) -> Self {
        let mut m = Self::zeros(k, n, n);
        for i in 0..n {
            m[(i, i)] = k.one();
        }
        m
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn columns_of<K: Field<Elem = E>>(k: &K, cols: &[Vec<E>], rows: usize) -> Self {
        let mut m = Self::zeros(k, rows, cols.len());
        for (c, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (r, x) in col.iter().enumerate() {
                m[(r, c)] = x.clone();
            }
        }
        m
    }

    pub fn is_zero<K: Field<Elem = E>>(&self, k: &K) -> bool {
        self.data.iter().all(|x| k.is_zero(x))
    }

    pub fn mul<K: Field<Elem = E>>(&self, k: &K, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix shapes do not match");
        let mut out = Self::zeros(k, self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = &self[(i, l)];
                if k.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(l, j)];
                    if !k.is_zero(b) {
                        let idx = i * other.cols + j;
                        out.data[idx] = k.add(&out.data[idx], &k.mul(a, b));
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec<K: Field<Elem = E>>(&self, k: &K, v: &[E]) -> Vec<E> {
        assert_eq!(self.cols, v.len());
        let mut out = vec![k.zero(); self.rows];
        for (c, x) in v.iter().enumerate() {
            if k.is_zero(x) {
                continue;
            }
            for (r, o) in out.iter_mut().enumerate() {
                k.mul_add_assign(o, &self[(r, c)], x);
            }
        }
        out
    }

    pub fn add<K: Field<Elem = E>>(&self, k: &K, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| k.add(a, b)).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub<K: Field<Elem = E>>(&self, k: &K, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| k.sub(a, b)).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale<K: Field<Elem = E>>(&self, k: &K, c: &E) -> Self {
        let data = self.data.iter().map(|a| k.mul(a, c)).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn trace<K: Field<Elem = E>>(&self, k: &K) -> E {
        let mut t = k.zero();
        for i in 0..self.rows.min(self.cols) {
            t = k.add(&t, &self[(i, i)]);
        }
        t
    }

    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for r in 0..self.rows {
            data.extend_from_slice(self.row(r));
            data.extend_from_slice(other.row(r));
        }
        Matrix { rows: self.rows, cols, data }
    }

    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// Reduced row echelon form.
    pub fn rref<K: Field<Elem = E>>(&self, k: &K) -> Rref<E> {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !k.is_zero(&m[(r, col)])) else {
                continue;
            };
            if p != row {
                for c in 0..m.cols {
                    m.data.swap(p * m.cols + c, row * m.cols + c);
                }
            }
            let inv = k.inv(&m[(row, col)]).expect("pivot is nonzero");
            for c in col..m.cols {
                m[(row, c)] = k.mul(&m[(row, c)], &inv);
            }
            for r in 0..m.rows {
                if r == row || k.is_zero(&m[(r, col)]) {
                    continue;
                }
                let f = m[(r, col)].clone();
                for c in col..m.cols {
                    if !k.is_zero(&m[(row, c)]) {
                        let v = k.sub(&m[(r, c)], &k.mul(&f, &m[(row, c)]));
                        m[(r, c)] = v;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        Rref { reduced: m, rank: row, pivots }
    }

    pub fn rank<K: Field<Elem = E>>(&self, k: &K) -> usize {
        self.rref(k).rank
    }

    /// A basis of `{x : self * x = 0}`, one vector per free column.
    pub fn kernel_basis<K: Field<Elem = E>>(&self, k: &K) -> Vec<Vec<E>> {
        let Rref { reduced, rank, pivots } = self.rref(k);
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut out = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![k.zero(); self.cols];
            v[free] = k.one();
            for (r, &p) in pivots.iter().enumerate().take(rank) {
                v[p] = k.neg(&reduced[(r, free)]);
            }
            out.push(v);
        }
        out
    }

    /// Some `x` with `self * x = b`, if one exists.
    pub fn solve<K: Field<Elem = E>>(&self, k: &K, b: &[E]) -> Option<Vec<E>> {
        assert_eq!(b.len(), self.rows);
        let bm = Matrix { rows: self.rows, cols: 1, data: b.to_vec() };
        let Rref { reduced, rank, pivots } = self.hstack(&bm).rref(k);
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![k.zero(); self.cols];
        for (r, &p) in pivots.iter().enumerate().take(rank) {
            x[p] = reduced[(r, self.cols)].clone();
        }
        Some(x)
    }

    /// Inverse of a square matrix.
    pub fn inverse<K: Field<Elem = E>>(&self, k: &K) -> Option<Self> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let Rref { reduced, rank, pivots } = self.hstack(&Self::identity(k, n)).rref(k);
        if rank < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let cs: Vec<usize> = (n..2 * n).collect();
        let rs: Vec<usize> = (0..n).collect();
        Some(reduced.submatrix(&rs, &cs))
    }
}

/// Which nonzero entry of a new vector becomes its pivot.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PivotOrder {
    Lowest,
    Highest,
}

/// An incrementally built, fully reduced basis of a subspace of `K^dim`.
///
/// Every stored row has a pivot entry equal to one and every other stored
/// row is zero in that column. Reducing a vector therefore gives a canonical
/// representative of its class modulo the span.
#[derive(Debug, Clone)]
pub struct Echelon<E> {
    dim: usize,
    order: PivotOrder,
    rows: Vec<Vec<E>>,
    pivots: Vec<usize>,
    pivot_of_col: Vec<Option<usize>>,
}

impl<E: Clone + PartialEq> Echelon<E> {
    pub fn new(dim: usize, order: PivotOrder) -> Self {
        Echelon { dim, order, rows: Vec::new(), pivots: Vec::new(), pivot_of_col: vec![None; dim] }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<E>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_pivot(&self, c: usize) -> bool {
        self.pivot_of_col[c].is_some()
    }

    /// Subtracts the span from `v` in place.
    pub fn reduce<K: Field<Elem = E>>(&self, k: &K, v: &mut [E]) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if k.is_zero(&v[p]) {
                continue;
            }
            let f = v[p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !k.is_zero(r) {
                    *x = k.sub(x, &k.mul(&f, r));
                }
            }
        }
    }

    pub fn contains<K: Field<Elem = E>>(&self, k: &K, v: &[E]) -> bool {
        let mut w = v.to_vec();
        self.reduce(k, &mut w);
        w.iter().all(|x| k.is_zero(x))
    }

    /// Adds `v` to the span. Returns `false` if it was already there.
    pub fn insert<K: Field<Elem = E>>(&mut self, k: &K, v: &[E]) -> bool {
        assert_eq!(v.len(), self.dim);
        let mut w = v.to_vec();
        self.reduce(k, &mut w);
        let nz = w.iter().enumerate().filter(|(_, x)| !k.is_zero(x)).map(|(i, _)| i);
        let p = match self.order {
            PivotOrder::Lowest => nz.min(),
            PivotOrder::Highest => nz.max(),
        };
        let Some(p) = p else {
            return false;
        };
        let inv = k.inv(&w[p]).expect("pivot is nonzero");
        for x in w.iter_mut() {
            *x = k.mul(x, &inv);
        }
        for row in self.rows.iter_mut() {
            if k.is_zero(&row[p]) {
                continue;
            }
            let f = row[p].clone();
            for (x, r) in row.iter_mut().zip(&w) {
                if !k.is_zero(r) {
                    *x = k.sub(x, &k.mul(&f, r));
                }
            }
        }
        self.pivot_of_col[p] = Some(self.rows.len());
        self.pivots.push(p);
        self.rows.push(w);
        true
    }

    /// Coordinates of a vector of the span in terms of the stored rows.
    pub fn coordinates<K: Field<Elem = E>>(&self, k: &K, v: &[E]) -> Option<Vec<E>> {
        let coords: Vec<E> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut w = v.to_vec();
        self.reduce(k, &mut w);
        if w.iter().all(|x| k.is_zero(x)) {
            Some(coords)
        } else {
            None
        }
    }

    /// Columns that are not pivots, in increasing order.
    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.dim).filter(|&c| self.pivot_of_col[c].is_none()).collect()
    }
}

/// Columns spanning the intersection of the column spaces of `a` and `b`.
pub fn intersect_columns<K: Field>(k: &K, a: &Matrix<K::Elem>, b: &Matrix<K::Elem>) -> Vec<Vec<K::Elem>> {
    assert_eq!(a.rows(), b.rows());
    // a x = b y  <=>  [a | -b] (x, y) = 0
    let nb = b.scale(k, &k.neg(&k.one()));
    let ker = a.hstack(&nb).kernel_basis(k);
    let mut span = Echelon::new(a.rows(), PivotOrder::Lowest);
    let mut out = Vec::new();
    for v in ker {
        let w = a.mul_vec(k, &v[..a.cols()]);
        if span.insert(k, &w) {
            out.push(w);
        }
    }
    out
}

/// A basis of the column space, taken from the columns themselves.
pub fn column_basis<K: Field>(k: &K, m: &Matrix<K::Elem>) -> Vec<Vec<K::Elem>> {
    let mut span = Echelon::new(m.rows(), PivotOrder::Lowest);
    let mut out = Vec::new();
    for c in 0..m.cols() {
        let col = m.column(c);
        if span.insert(k, &col) {
            out.push(col);
        }
    }
    out
}

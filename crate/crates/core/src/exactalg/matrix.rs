//! Dense matrices over any coefficient ring, with a division-free determinant.

use std::fmt;
use std::ops::{Add, Mul};

use crate::exactalg::poly::Coeff;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Coeff> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    /// Builds a matrix from rows; every row must have the same length.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Matrix {
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(self.rows)
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn map<U: Coeff>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map(|x| x.clone() * c.clone())
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Submatrix on the given row and column indices.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| self[(rows[i], cols[j])].clone())
    }

    /// Leibniz determinant computed by cofactor expansion along successive
    /// rows, memoizing the minors on the trailing rows by column subset.
    /// Never divides, so it is valid over any commutative ring.
    pub fn det(&self) -> T {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        assert!(n < usize::BITS as usize, "matrix too large");
        if n == 0 {
            return T::one();
        }
        // minors[mask]: determinant of the last popcount(mask) rows restricted
        // to the columns in `mask`.
        let mut minors: Vec<Option<T>> = vec![None; 1 << n];
        minors[0] = Some(T::one());
        for k in 1..=n {
            let r = n - k;
            for mask in 0usize..(1 << n) {
                if mask.count_ones() as usize != k {
                    continue;
                }
                let mut acc = T::zero();
                let mut pos = 0;
                for c in 0..n {
                    if mask & (1 << c) == 0 {
                        continue;
                    }
                    let a = &self[(r, c)];
                    if !a.is_zero() {
                        if let Some(minor) = &minors[mask ^ (1 << c)] {
                            let t = a.clone() * minor.clone();
                            acc = if pos % 2 == 0 { acc + t } else { acc - t };
                        }
                    }
                    pos += 1;
                }
                if !acc.is_zero() {
                    minors[mask] = Some(acc);
                }
            }
        }
        minors[(1 << n) - 1].take().unwrap_or_else(T::zero)
    }

    /// Permanent by the same expansion with all signs positive.
    pub fn permanent(&self) -> T {
        assert!(self.is_square(), "permanent of a non-square matrix");
        let n = self.rows;
        let mut table: Vec<T> = vec![T::zero(); 1 << n];
        table[0] = T::one();
        for k in 1..=n {
            let r = n - k;
            for mask in 0usize..(1 << n) {
                if mask.count_ones() as usize != k {
                    continue;
                }
                let mut acc = T::zero();
                for c in 0..n {
                    if mask & (1 << c) != 0 && !self[(r, c)].is_zero() {
                        acc = acc + self[(r, c)].clone() * table[mask ^ (1 << c)].clone();
                    }
                }
                table[mask] = acc;
            }
        }
        table[(1 << n) - 1].clone()
    }

    /// Sum of the principal minors of size `k`, i.e. the trace of the `k`-th
    /// exterior power.
    pub fn principal_minor_sum(&self, k: usize) -> T {
        assert!(self.is_square());
        let n = self.rows;
        if k == 0 {
            return T::one();
        }
        if k > n {
            return T::zero();
        }
        let mut acc = T::zero();
        for subset in subsets(n, k) {
            acc = acc + self.select(&subset, &subset).det();
        }
        acc
    }
}

/// All `k`-element subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

impl<T> std::ops::Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl<'a, T: Coeff> Add<&'a Matrix<T>> for &'a Matrix<T> {
    type Output = Matrix<T>;
    fn add(self, rhs: &'a Matrix<T>) -> Matrix<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }
}

impl<'a, T: Coeff> Mul<&'a Matrix<T>> for &'a Matrix<T> {
    type Output = Matrix<T>;
    fn mul(self, rhs: &'a Matrix<T>) -> Matrix<T> {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        let cur = std::mem::replace(&mut out[(i, j)], T::zero());
                        out[(i, j)] = cur + a.clone() * b.clone();
                    }
                }
            }
        }
        out
    }
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str("[")?;
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{}", self.data[i * self.cols + j])?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

impl<T: fmt::Display> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

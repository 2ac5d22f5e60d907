//! Exact linear algebra: fraction-free echelon forms over the integers,
//! rank and nullspace over the rationals, and a generic Gauss–Jordan pass for
//! any field type.

use std::ops::Div;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::exactalg::matrix::Matrix;
use crate::exactalg::poly::Coeff;

/// Scalars admitting exact division by nonzero elements.
pub trait Field: Coeff + Div<Output = Self> {}

impl<T: Coeff + Div<Output = T>> Field for T {}

/// Row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon<T> {
    pub rows: Vec<Vec<T>>,
    pub pivots: Vec<usize>,
    pub cols: usize,
}

impl<T> Echelon<T> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Fraction-free (Bareiss) echelon form of an integer matrix. Every division
/// is exact, so intermediate entries stay integral and bounded by minors.
pub fn bareiss_echelon(m: &Matrix<BigInt>) -> Echelon<BigInt> {
    let mut a = m.to_rows();
    let (rows, cols) = (m.rows(), m.cols());
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(p, r);
        let (head, tail) = a.split_at_mut(r + 1);
        let pivot_row = &head[r];
        for row in tail.iter_mut() {
            let factor = row[col].clone();
            if factor.is_zero() {
                for x in row[col + 1..].iter_mut() {
                    *x = (&*x * &pivot_row[col]) / &prev;
                }
                continue;
            }
            for j in col + 1..cols {
                let v = &pivot_row[col] * &row[j] - &factor * &pivot_row[j];
                row[j] = v / &prev;
            }
            row[col] = BigInt::zero();
        }
        prev = a[r][col].clone();
        pivots.push(col);
        r += 1;
    }
    a.truncate(r);
    Echelon { rows: a, pivots, cols }
}

/// Rank of an integer matrix over ℚ.
pub fn int_rank(m: &Matrix<BigInt>) -> usize {
    bareiss_echelon(m).rank()
}

fn nullspace_from_echelon(e: &Echelon<BigInt>) -> Vec<Vec<BigRational>> {
    let free: Vec<usize> = (0..e.cols).filter(|c| !e.pivots.contains(c)).collect();
    let mut basis = Vec::with_capacity(free.len());
    for &f in &free {
        let mut x = vec![BigRational::zero(); e.cols];
        x[f] = BigRational::one();
        for (k, &p) in e.pivots.iter().enumerate().rev() {
            let row = &e.rows[k];
            let mut s = BigRational::zero();
            for j in p + 1..e.cols {
                if !row[j].is_zero() && !x[j].is_zero() {
                    s += BigRational::from_integer(row[j].clone()) * &x[j];
                }
            }
            x[p] = -s / BigRational::from_integer(row[p].clone());
        }
        basis.push(x);
    }
    basis
}

/// Rank and a nullspace basis (`m · v = 0`) of a rational matrix.
///
/// Rows are cleared of denominators and reduced fraction-free; the basis has
/// one vector per non-pivot column, with a `1` in that column and `0` in the
/// other non-pivot columns, so the vectors are independent.
pub fn rank_nullspace(m: &Matrix<BigRational>) -> (usize, Vec<Vec<BigRational>>) {
    let int_rows: Vec<Vec<BigInt>> = (0..m.rows())
        .map(|i| {
            let row = m.row(i);
            let l = row.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
            row.iter()
                .map(|q| (q * BigRational::from_integer(l.clone())).to_integer())
                .collect()
        })
        .collect();
    let ech = bareiss_echelon(&Matrix::from_rows_with_cols(int_rows, m.cols()));
    (ech.rank(), nullspace_from_echelon(&ech))
}

/// Nullspace of an integer matrix as primitive integer vectors.
pub fn int_nullspace(m: &Matrix<BigInt>) -> Vec<Vec<BigInt>> {
    nullspace_from_echelon(&bareiss_echelon(m))
        .into_iter()
        .map(|v| primitive_integer_vector(&v))
        .collect()
}

/// Scales a rational vector to coprime integers, first nonzero entry positive.
pub fn primitive_integer_vector(v: &[BigRational]) -> Vec<BigInt> {
    let l = v.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let ints: Vec<BigInt> = v
        .iter()
        .map(|q| (q * BigRational::from_integer(l.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    let sign = if ints.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
        -g
    } else {
        g
    };
    ints.into_iter().map(|x| x / &sign).collect()
}

/// Reduced row echelon form by Gauss–Jordan elimination over any field.
pub fn rref<T: Field>(m: &Matrix<T>) -> Echelon<T> {
    let mut a = m.to_rows();
    let (rows, cols) = (m.rows(), m.cols());
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(p, r);
        let inv = T::one() / a[r][col].clone();
        for x in a[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        let pivot = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot) {
                *x = x.clone() - f.clone() * p.clone();
            }
        }
        pivots.push(col);
        r += 1;
    }
    a.truncate(r);
    Echelon { rows: a, pivots, cols }
}

/// Rank and nullspace over a generic field, read off the reduced echelon form.
pub fn rank_nullspace_generic<T: Field>(m: &Matrix<T>) -> (usize, Vec<Vec<T>>) {
    let e = rref(m);
    let mut basis = Vec::new();
    for f in (0..e.cols).filter(|c| !e.pivots.contains(c)) {
        let mut x = vec![T::zero(); e.cols];
        x[f] = T::one();
        for (k, &p) in e.pivots.iter().enumerate() {
            x[p] = -e.rows[k][f].clone();
        }
        basis.push(x);
    }
    (e.rank(), basis)
}

impl<T: Coeff> Matrix<T> {
    /// Like [`Matrix::from_rows`] but keeps the column count for empty input.
    pub fn from_rows_with_cols(rows: Vec<Vec<T>>, cols: usize) -> Self {
        if rows.is_empty() {
            return Matrix::zeros(0, cols);
        }
        assert!(rows.iter().all(|r| r.len() == cols));
        Matrix::from_rows(rows)
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.cols());
        (0..self.rows())
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Ratio;

    fn q(rows: &[&[i64]]) -> Matrix<BigRational> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect())
                .collect(),
        )
    }

    #[test]
    fn zero_matrix_is_all_nullspace() {
        let (rank, ns) = rank_nullspace(&Matrix::zeros(3, 3));
        assert_eq!(rank, 0);
        assert_eq!(ns.len(), 3);
    }

    #[test]
    fn identity_has_full_rank() {
        for n in 1..5 {
            let (rank, ns) = rank_nullspace(&Matrix::<BigRational>::identity(n));
            assert_eq!(rank, n);
            assert!(ns.is_empty());
        }
    }

    #[test]
    fn rank_one_example() {
        let m = q(&[&[1, 2], &[2, 4]]);
        let (rank, ns) = rank_nullspace(&m);
        assert_eq!(rank, 1);
        assert_eq!(ns.len(), 1);
        let ints = primitive_integer_vector(&ns[0]);
        // span{(2, -1)}
        assert_eq!(ints, vec![BigInt::from(2), BigInt::from(-1)]);
        assert!(m.mul_vec(&ns[0]).iter().all(Zero::is_zero));
    }

    #[test]
    fn fractional_entries() {
        let half = BigRational::new(1.into(), 2.into());
        let m = Matrix::from_rows(vec![
            vec![half.clone(), BigRational::one()],
            vec![BigRational::one(), BigRational::from_integer(2.into())],
        ]);
        let (rank, ns) = rank_nullspace(&m);
        assert_eq!(rank, 1);
        assert!(m.mul_vec(&ns[0]).iter().all(Zero::is_zero));
    }

    #[test]
    fn generic_path_on_machine_rationals() {
        let m: Matrix<Ratio<i64>> = Matrix::from_rows(vec![
            vec![Ratio::from(1), Ratio::from(2), Ratio::from(3)],
            vec![Ratio::from(2), Ratio::from(4), Ratio::from(6)],
            vec![Ratio::from(1), Ratio::from(0), Ratio::from(1)],
        ]);
        let (rank, ns) = rank_nullspace_generic(&m);
        assert_eq!(rank, 2);
        assert_eq!(ns.len(), 1);
        assert!(m.mul_vec(&ns[0]).iter().all(Zero::is_zero));
    }

    #[test]
    fn generic_path_on_floats() {
        let m: Matrix<f64> = Matrix::from_rows(vec![vec![2.0, 4.0], vec![1.0, 2.0]]);
        let (rank, ns) = rank_nullspace_generic(&m);
        assert_eq!(rank, 1);
        assert_eq!(ns[0], vec![-2.0, 1.0]);
    }

    #[test]
    fn int_nullspace_is_primitive() {
        let m = Matrix::from_rows(vec![vec![BigInt::from(2), BigInt::from(4), BigInt::from(6)]]);
        let ns = int_nullspace(&m);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(m.mul_vec(v).iter().all(Zero::is_zero));
        }
    }
}

//! Dense exact matrices: products, reduced row echelon form, kernels,
//! inverses, determinants and characteristic polynomials.
//!
//! Elimination skips zero entries, which keeps the work proportional to the
//! fill of the (very sparse) differential matrices.

use std::fmt;
use std::ops::{Index, IndexMut};

use crate::scalar::{Field, Scalar};

#[derive(Clone, PartialEq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<Vec<S>>,
}

impl<S: Scalar> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Matrix<S> {
        Matrix {
            rows,
            cols,
            data: vec![vec![S::zero(); cols]; rows],
        }
    }

    pub fn identity(n: usize) -> Matrix<S> {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = S::one();
        }
        m
    }

    /// Panics if the rows are ragged.
    pub fn from_rows(data: Vec<Vec<S>>) -> Matrix<S> {
        let rows = data.len();
        let cols = data.first().map_or(0, Vec::len);
        assert!(data.iter().all(|r| r.len() == cols), "ragged matrix");
        Matrix { rows, cols, data }
    }

    pub fn from_cols(cols: &[Vec<S>], rows: usize) -> Matrix<S> {
        let mut m = Matrix::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, v) in c.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i]
    }

    pub fn into_rows(self) -> Vec<Vec<S>> {
        self.data
    }

    pub fn col(&self, j: usize) -> Vec<S> {
        self.data.iter().map(|r| r[j].clone()).collect()
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Matrix<T> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|r| r.iter().map(&f).collect()).collect(),
        }
    }

    pub fn transpose(&self) -> Matrix<S> {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                if !self.data[i][j].is_zero() {
                    t[(j, i)] = self.data[i][j].clone();
                }
            }
        }
        t
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Matrix<S> {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                if !self.data[i][j].is_zero() {
                    t[(j, i)] = self.data[i][j].conj();
                }
            }
        }
        t
    }

    pub fn conj(&self) -> Matrix<S> {
        self.map(S::conj)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.iter().all(S::is_zero))
    }

    pub fn scale(&self, c: &S) -> Matrix<S> {
        self.map(|x| x.clone() * c)
    }

    pub fn mul(&self, rhs: &Matrix<S>) -> Matrix<S> {
        assert_eq!(self.cols, rhs.rows, "matrix product shape");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs.data[k][j];
                    if !b.is_zero() {
                        out.data[i][j] += a.clone() * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[S]) -> Vec<S> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape");
        self.data
            .iter()
            .map(|r| {
                let mut acc = S::zero();
                for (a, b) in r.iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += a.clone() * b;
                    }
                }
                acc
            })
            .collect()
    }

    /// `Aᵀ v`.
    pub fn tr_mul_vec(&self, v: &[S]) -> Vec<S> {
        assert_eq!(self.rows, v.len(), "transposed matrix-vector shape");
        let mut out = vec![S::zero(); self.cols];
        for (r, x) in self.data.iter().zip(v) {
            if x.is_zero() {
                continue;
            }
            for (o, a) in out.iter_mut().zip(r) {
                if !a.is_zero() {
                    *o += a.clone() * x;
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &Matrix<S>) -> Matrix<S> {
        self.zip(rhs, |a, b| a.clone() + b)
    }

    pub fn sub(&self, rhs: &Matrix<S>) -> Matrix<S> {
        self.zip(rhs, |a, b| a.clone() - b)
    }

    fn zip(&self, rhs: &Matrix<S>, f: impl Fn(&S, &S) -> S) -> Matrix<S> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(r, s)| r.iter().zip(s).map(|(a, b)| f(a, b)).collect())
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Matrix<S> {
        let mut out = Matrix::identity(self.rows);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    pub fn trace(&self) -> S {
        let mut acc = S::zero();
        for i in 0..self.rows.min(self.cols) {
            acc += &self.data[i][i];
        }
        acc
    }

    /// Stack `other` below `self`.
    pub fn vstack(&self, other: &Matrix<S>) -> Matrix<S> {
        assert_eq!(self.cols, other.cols, "vstack width");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Submatrix on the given row and column index lists.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Matrix<S> {
        Matrix::from_rows(
            rows.iter()
                .map(|&i| cols.iter().map(|&j| self.data[i][j].clone()).collect())
                .collect(),
        )
        .with_shape(rows.len(), cols.len())
    }

    fn with_shape(mut self, rows: usize, cols: usize) -> Matrix<S> {
        self.rows = rows;
        self.cols = cols;
        self
    }
}

impl<S> Index<(usize, usize)> for Matrix<S> {
    type Output = S;
    fn index(&self, (i, j): (usize, usize)) -> &S {
        &self.data[i][j]
    }
}

impl<S> IndexMut<(usize, usize)> for Matrix<S> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut S {
        &mut self.data[i][j]
    }
}

impl<S: Scalar> fmt::Debug for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in &self.data {
            let cells: Vec<String> = r.iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

/// `dst -= factor * src`, skipping zeros.
fn axpy<F: Field>(dst: &mut [F], factor: &F, src: &[F], from: usize) {
    for (d, s) in dst[from..].iter_mut().zip(&src[from..]) {
        if !s.is_zero() {
            *d -= factor.clone() * s;
        }
    }
}

impl<F: Field> Matrix<F> {
    /// Bring the matrix to reduced row echelon form in place; returns the
    /// pivot columns. Pivots are taken leftmost-first.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.data[i][c].is_zero()) else {
                continue;
            };
            self.data.swap(r, p);
            let inv = self.data[r][c].inv();
            if !inv.is_one() {
                for x in self.data[r][c..].iter_mut() {
                    if !x.is_zero() {
                        *x = x.clone() * &inv;
                    }
                }
            }
            let (before, rest) = self.data.split_at_mut(r);
            let (pivot_row, after) = rest.split_first_mut().unwrap();
            for row in before.iter_mut().chain(after.iter_mut()) {
                if row[c].is_zero() {
                    continue;
                }
                let factor = row[c].clone();
                axpy(row, &factor, pivot_row, c);
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of the right kernel `{x : A x = 0}`, one vector per free column,
    /// with the free variable set to 1.
    pub fn kernel(&self) -> Vec<Vec<F>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&j| !is_pivot[j])
            .map(|free| {
                let mut v = vec![F::zero(); self.cols];
                v[free] = F::one();
                for (r, &p) in pivots.iter().enumerate() {
                    if !m.data[r][free].is_zero() {
                        v[p] = -m.data[r][free].clone();
                    }
                }
                v
            })
            .collect()
    }

    /// Basis of `{y : yᵀ A = 0}`.
    pub fn left_kernel(&self) -> Vec<Vec<F>> {
        self.transpose().kernel()
    }

    /// A solution of `A x = b` with free variables set to zero, if any.
    pub fn solve(&self, b: &[F]) -> Option<Vec<F>> {
        assert_eq!(b.len(), self.rows, "right-hand side length");
        let mut aug = Matrix::zeros(self.rows, self.cols + 1);
        for (i, bi) in b.iter().enumerate() {
            for j in 0..self.cols {
                aug.data[i][j] = self.data[i][j].clone();
            }
            aug.data[i][self.cols] = bi.clone();
        }
        let pivots = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![F::zero(); self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = aug.data[r][self.cols].clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Matrix<F>> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.data[i][j] = self.data[i][j].clone();
            }
            aug.data[i][n + i] = F::one();
        }
        let pivots = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Matrix::from_rows(
            aug.data.into_iter().map(|r| r[n..].to_vec()).collect(),
        ))
    }

    pub fn det(&self) -> F {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        let mut m = self.clone();
        let mut det = F::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.data[i][c].is_zero()) else {
                return F::zero();
            };
            if p != c {
                m.data.swap(p, c);
                det = -det;
            }
            let pivot = m.data[c][c].clone();
            det = det * &pivot;
            let inv = pivot.inv();
            let (top, bottom) = m.data.split_at_mut(c + 1);
            let prow = &top[c];
            for row in bottom.iter_mut() {
                if row[c].is_zero() {
                    continue;
                }
                let factor = row[c].clone() * &inv;
                axpy(row, &factor, prow, c);
            }
        }
        det
    }

    /// Coefficients `[c₀, …, c_n]` of `det(x·I − A)`, lowest degree first
    /// (Faddeev–LeVerrier; characteristic zero).
    pub fn charpoly(&self) -> Vec<F> {
        assert!(self.is_square(), "characteristic polynomial of a non-square matrix");
        let n = self.rows;
        let mut coeffs = vec![F::zero(); n + 1];
        coeffs[n] = F::one();
        let mut m = Matrix::<F>::zeros(n, n);
        for k in 1..=n {
            // M_k = A M_{k-1} + c_{n-k+1} I
            let mut next = self.mul(&m);
            for i in 0..n {
                next.data[i][i] += &coeffs[n - k + 1];
            }
            m = next;
            let am = self.mul(&m);
            let c = -(am.trace() * &F::from_int(k as i64).inv());
            coeffs[n - k] = c;
        }
        coeffs
    }
}

/// Row-reduced basis of the span of `vectors`, with its pivot columns.
pub fn span<F: Field>(vectors: &[Vec<F>], len: usize) -> (Vec<Vec<F>>, Vec<usize>) {
    if vectors.is_empty() {
        return (Vec::new(), Vec::new());
    }
    let mut m = Matrix::from_rows(vectors.to_vec());
    debug_assert_eq!(m.ncols(), len);
    let pivots = m.rref();
    let rows = m.into_rows().into_iter().take(pivots.len()).collect();
    (rows, pivots)
}

pub fn rank_of<F: Field>(vectors: &[Vec<F>], len: usize) -> usize {
    span(vectors, len).1.len()
}

/// `dim(U + W)` for two spanning sets.
pub fn sum_dim<F: Field>(u: &[Vec<F>], w: &[Vec<F>], len: usize) -> usize {
    let all: Vec<Vec<F>> = u.iter().chain(w).cloned().collect();
    rank_of(&all, len)
}

/// `Σ aᵢ bᵢ` without conjugation.
pub fn dot<S: Scalar>(a: &[S], b: &[S]) -> S {
    let mut acc = S::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += x.clone() * y;
        }
    }
    acc
}

/// Exact positive-definiteness of a Hermitian matrix via leading principal
/// minors.
pub fn is_positive_definite<F: Field>(m: &Matrix<F>, positive: impl Fn(&F) -> bool) -> bool {
    if !m.is_square() {
        return false;
    }
    (1..=m.nrows()).all(|k| {
        let idx: Vec<usize> = (0..k).collect();
        positive(&m.select(&idx, &idx).det())
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Gq, Q};

    fn q(rows: &[&[i64]]) -> Matrix<Q> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| Q::from(x)).collect()).collect())
    }

    #[test]
    fn rref_kernel_rank() {
        let m = q(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        let k = m.kernel();
        assert_eq!(k.len(), 1);
        assert!(m.mul_vec(&k[0]).iter().all(Scalar::is_zero));
    }

    #[test]
    fn solve_and_inconsistency() {
        let m = q(&[&[1, 1], &[2, 2]]);
        assert!(m.solve(&[Q::from(1), Q::from(3)]).is_none());
        let x = m.solve(&[Q::from(1), Q::from(2)]).unwrap();
        assert_eq!(m.mul_vec(&x), vec![Q::from(1), Q::from(2)]);
    }

    #[test]
    fn inverse_and_det() {
        let m = q(&[&[2, 1], &[7, 4]]);
        assert_eq!(m.det(), Q::from(1));
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(2));
        assert!(q(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn charpoly_of_rotation() {
        let j = q(&[&[0, -1], &[1, 0]]);
        assert_eq!(j.charpoly(), vec![Q::from(1), Q::from(0), Q::from(1)]);
    }

    #[test]
    fn gaussian_kernel() {
        // J - i·id for the standard rotation has a one-dimensional kernel.
        let i = Gq::i();
        let m = Matrix::from_rows(vec![vec![-i.clone(), Gq::int(-1)], vec![Gq::int(1), -i.clone()]]);
        assert_eq!(m.kernel().len(), 1);
    }
}

//! Dense matrices over a [`Scalar`] field, with the elimination routines the
//! subspace calculus is built on.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub type Vector<S> = Vec<S>;

pub fn vec_zero<S: Scalar>(n: usize) -> Vector<S> {
    vec![S::zero(); n]
}

pub fn vec_add<S: Scalar>(a: &[S], b: &[S]) -> Vector<S> {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x.clone() + y.clone()).collect()
}

pub fn vec_sub<S: Scalar>(a: &[S], b: &[S]) -> Vector<S> {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x.clone() - y.clone()).collect()
}

pub fn vec_neg<S: Scalar>(a: &[S]) -> Vector<S> {
    a.iter().map(|x| -x.clone()).collect()
}

pub fn vec_scale<S: Scalar>(c: &S, a: &[S]) -> Vector<S> {
    a.iter().map(|x| c.clone() * x.clone()).collect()
}

pub fn vec_concat<S: Scalar>(parts: &[&[S]]) -> Vector<S> {
    let mut out = Vec::new();
    for p in parts {
        out.extend_from_slice(p);
    }
    out
}

pub fn vec_is_zero<S: Scalar>(a: &[S]) -> bool {
    a.iter().all(Scalar::is_zero)
}

pub fn dot<S: Scalar>(a: &[S], b: &[S]) -> S {
    assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .fold(S::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

/// Row-major dense matrix.
#[derive(Clone, PartialEq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![S::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = S::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vector<S>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        for r in &rows {
            assert_eq!(r.len(), ncols, "ragged rows");
        }
        Matrix { rows: nrows, cols: ncols, data: rows.into_iter().flatten().collect() }
    }

    /// Columns of the matrix are the given vectors.
    pub fn from_cols(cols: Vec<Vector<S>>) -> Self {
        Self::from_rows(cols).transpose()
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&v| S::from_int(v)).collect()).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[S] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vector<S> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vector<S>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn col_vectors(&self) -> Vec<Vector<S>> {
        (0..self.cols).map(|c| self.col(c)).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn scale(&self, s: &S) -> Self {
        Self::from_fn(self.rows, self.cols, |r, c| s.clone() * self[(r, c)].clone())
    }

    pub fn apply(&self, v: &[S]) -> Vector<S> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        (0..self.rows).map(|r| dot(self.row(r), v)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    let x = self[(r, c)].clone() - if r == c { S::one() } else { S::zero() };
                    x.is_zero()
                })
            })
    }

    /// Largest entry magnitude; the residual reported by float-mode checks.
    pub fn max_magnitude(&self) -> f64 {
        self.data.iter().map(Scalar::magnitude).fold(0.0, f64::max)
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        Self::from_fn(self.rows, self.cols + other.cols, |r, c| {
            if c < self.cols { self[(r, c)].clone() } else { other[(r, c - self.cols)].clone() }
        })
    }

    /// Vertical concatenation.
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        Self::from_fn(self.rows + other.rows, self.cols, |r, c| {
            if r < self.rows { self[(r, c)].clone() } else { other[(r - self.rows, c)].clone() }
        })
    }

    /// Block-diagonal assembly.
    pub fn block_diag(blocks: &[&Matrix<S>]) -> Self {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut m = Self::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for r in 0..b.rows {
                for c in 0..b.cols {
                    m[(r0 + r, c0 + c)] = b[(r, c)].clone();
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        m
    }

    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |r, c| self[(r0 + r, c0 + c)].clone())
    }

    /// Reduced row echelon form together with the pivot columns.
    ///
    /// Exact mode picks the first nonzero pivot (deterministic canonical
    /// output); float mode picks the largest magnitude in the column.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let mut best: Option<usize> = None;
            for i in r..m.rows {
                if !m[(i, c)].is_zero() {
                    if S::EXACT {
                        best = Some(i);
                        break;
                    }
                    match best {
                        Some(j) if m[(j, c)].magnitude() >= m[(i, c)].magnitude() => {}
                        _ => best = Some(i),
                    }
                }
            }
            let Some(p) = best else { continue };
            m.swap_rows(r, p);
            let inv = m[(r, c)].inv().expect("pivot is nonzero");
            for cc in 0..m.cols {
                m[(r, cc)] = m[(r, cc)].clone() * inv.clone();
            }
            for i in 0..m.rows {
                if i != r && !m[(i, c)].is_zero() {
                    let factor = m[(i, c)].clone();
                    for cc in 0..m.cols {
                        let delta = factor.clone() * m[(r, cc)].clone();
                        m[(i, cc)] = m[(i, cc)].clone() - delta;
                    }
                }
            }
            // After exact elimination the column is literally zero elsewhere;
            // in float mode clamp to keep the echelon structure canonical.
            for i in 0..m.rows {
                if i != r {
                    m[(i, c)] = S::zero();
                }
            }
            m[(r, c)] = S::one();
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right null space `{x : Mx = 0}`.
    pub fn nullspace(&self) -> Vec<Vector<S>> {
        let (rref, pivots) = self.rref();
        let mut free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.sort_unstable();
        let mut basis = Vec::new();
        for &f in &free {
            let mut v = vec_zero::<S>(self.cols);
            v[f] = S::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -rref[(i, f)].clone();
            }
            basis.push(v);
        }
        basis
    }

    /// Solve `Mx = b`; `None` when inconsistent.
    pub fn solve(&self, b: &[S]) -> Option<Vector<S>> {
        assert_eq!(self.rows, b.len());
        let aug = self.hstack(&Matrix::from_cols(vec![b.to_vec()]));
        let (rref, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec_zero::<S>(self.cols);
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = rref[(i, self.cols)].clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.rows != self.cols {
            return Err(Error::DimMismatch("inverse of non-square matrix".into()));
        }
        let n = self.rows;
        let aug = self.hstack(&Matrix::identity(n));
        let (rref, pivots) = aug.rref();
        if pivots.len() < n || pivots.iter().take(n).enumerate().any(|(i, &p)| p != i) {
            return Err(Error::Singular);
        }
        Ok(rref.submatrix(0, n, n, n))
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|r| {
                (r + 1..self.cols).all(|c| (self[(r, c)].clone() - self[(c, r)].clone()).is_zero())
            })
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            let ia = a * self.cols + c;
            let ib = b * self.cols + c;
            self.data.swap(ia, ib);
        }
    }

    /// Signature `(positive, negative, zero)` of a symmetric matrix, computed
    /// by exact congruence diagonalization.
    pub fn signature(&self) -> Result<(usize, usize, usize)> {
        if !self.is_symmetric() {
            return Err(Error::Invariant("signature of a non-symmetric matrix".into()));
        }
        let n = self.rows;
        let mut m = self.clone();
        let (mut pos, mut neg, mut zero) = (0usize, 0usize, 0usize);
        let mut k = 0;
        while k < n {
            if m[(k, k)].is_zero() {
                // Find j > k with m[j][j] != 0 or an off-diagonal entry to mix in.
                if let Some(j) = (k + 1..n).find(|&j| !m[(j, j)].is_zero()) {
                    m.congruence_swap(k, j);
                } else if let Some(j) = (k + 1..n).find(|&j| !m[(k, j)].is_zero()) {
                    // m[k][k] = m[j][j] = 0, m[k][j] != 0: add row/col j to k.
                    m.congruence_add(k, j, &S::one());
                } else {
                    zero += 1;
                    k += 1;
                    continue;
                }
            }
            let d = m[(k, k)].clone();
            for j in k + 1..n {
                if !m[(k, j)].is_zero() {
                    let c = -(m[(k, j)].clone() / d.clone());
                    m.congruence_add(j, k, &c);
                }
            }
            if d > S::zero() {
                pos += 1;
            } else {
                neg += 1;
            }
            k += 1;
        }
        Ok((pos, neg, zero))
    }

    fn congruence_swap(&mut self, a: usize, b: usize) {
        self.swap_rows(a, b);
        for r in 0..self.rows {
            let ia = r * self.cols + a;
            let ib = r * self.cols + b;
            self.data.swap(ia, ib);
        }
    }

    /// Row `a` += c * row `b`, and the same on columns (congruence move).
    fn congruence_add(&mut self, a: usize, b: usize, c: &S) {
        for j in 0..self.cols {
            let delta = c.clone() * self[(b, j)].clone();
            self[(a, j)] = self[(a, j)].clone() + delta;
        }
        for i in 0..self.rows {
            let delta = c.clone() * self[(i, b)].clone();
            self[(i, a)] = self[(i, a)].clone() + delta;
        }
    }
}

impl<S: Scalar> std::ops::Index<(usize, usize)> for Matrix<S> {
    type Output = S;
    fn index(&self, (r, c): (usize, usize)) -> &S {
        &self.data[r * self.cols + c]
    }
}

impl<S: Scalar> std::ops::IndexMut<(usize, usize)> for Matrix<S> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut S {
        &mut self.data[r * self.cols + c]
    }
}

impl<S: Scalar> Add for &Matrix<S> {
    type Output = Matrix<S>;
    fn add(self, rhs: &Matrix<S>) -> Matrix<S> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix::from_fn(self.rows, self.cols, |r, c| self[(r, c)].clone() + rhs[(r, c)].clone())
    }
}

impl<S: Scalar> Sub for &Matrix<S> {
    type Output = Matrix<S>;
    fn sub(self, rhs: &Matrix<S>) -> Matrix<S> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix::from_fn(self.rows, self.cols, |r, c| self[(r, c)].clone() - rhs[(r, c)].clone())
    }
}

impl<S: Scalar> Neg for &Matrix<S> {
    type Output = Matrix<S>;
    fn neg(self) -> Matrix<S> {
        Matrix::from_fn(self.rows, self.cols, |r, c| -self[(r, c)].clone())
    }
}

impl<S: Scalar> Mul for &Matrix<S> {
    type Output = Matrix<S>;
    fn mul(self, rhs: &Matrix<S>) -> Matrix<S> {
        assert_eq!(self.cols, rhs.rows, "matmul shape mismatch");
        Matrix::from_fn(self.rows, rhs.cols, |r, c| {
            let mut acc = S::zero();
            for k in 0..self.cols {
                acc = acc + self[(r, k)].clone() * rhs[(k, c)].clone();
            }
            acc
        })
    }
}

impl<S: Scalar> fmt::Debug for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  ")?;
            for c in 0..self.cols {
                write!(f, "{} ", self[(r, c)])?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl<S: Scalar> fmt::Display for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self[(r, c)])?;
            }
            if r + 1 < self.rows {
                writeln!(f)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, Rat};

    #[test]
    fn rref_and_rank() {
        let m: Matrix<Rat> = Matrix::from_int_rows(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        let (r, pivots) = m.rref();
        assert_eq!(pivots, vec![0, 1]);
        assert_eq!(m.rank(), 2);
        assert_eq!(r[(0, 0)], rat(1, 1));
        assert_eq!(r[(0, 2)], rat(1, 1));
        assert_eq!(r[(1, 2)], rat(1, 1));
    }

    #[test]
    fn nullspace_solves() {
        let m: Matrix<Rat> = Matrix::from_int_rows(&[&[1, 2, 3], &[0, 1, 1]]);
        for v in m.nullspace() {
            assert!(vec_is_zero(&m.apply(&v)));
        }
        assert_eq!(m.nullspace().len(), 1);
    }

    #[test]
    fn inverse_roundtrip() {
        let m: Matrix<Rat> = Matrix::from_int_rows(&[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap();
        assert!((&m * &inv).is_identity());
    }

    #[test]
    fn singular_inverse_fails() {
        let m: Matrix<Rat> = Matrix::from_int_rows(&[&[1, 2], &[2, 4]]);
        assert!(m.inverse().is_err());
    }

    #[test]
    fn signature_of_split_form() {
        let j: Matrix<Rat> = Matrix::from_int_rows(&[&[0, 1], &[1, 0]]);
        assert_eq!(j.signature().unwrap(), (1, 1, 0));
        let d: Matrix<Rat> = Matrix::from_int_rows(&[&[2, 0], &[0, -3]]);
        assert_eq!(d.signature().unwrap(), (1, 1, 0));
    }
}

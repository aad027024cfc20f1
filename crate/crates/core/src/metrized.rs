//! Vector spaces carrying a symmetric bilinear form.

use crate::error::{Error, Result};
use crate::matrix::{dot, Matrix, Vector};
use crate::scalar::Scalar;

/// A finite-dimensional space with a symmetric bilinear form.
///
/// The form may be degenerate (plain carriers use the zero form); operations
/// that require nondegeneracy check for it and error out otherwise.
#[derive(Clone, PartialEq, Debug)]
pub struct MetrizedSpace<S: Scalar> {
    dim: usize,
    form: Matrix<S>,
}

impl<S: Scalar> MetrizedSpace<S> {
    pub fn new(dim: usize, form: Matrix<S>) -> Result<Self> {
        if form.rows() != dim || form.cols() != dim {
            return Err(Error::DimMismatch(format!(
                "form is {}x{}, expected {dim}x{dim}",
                form.rows(),
                form.cols()
            )));
        }
        if !form.is_symmetric() {
            return Err(Error::Invariant("bilinear form is not symmetric".into()));
        }
        Ok(MetrizedSpace { dim, form })
    }

    /// Space with the zero form (a plain vector space in this calculus).
    pub fn plain(dim: usize) -> Self {
        MetrizedSpace { dim, form: Matrix::zeros(dim, dim) }
    }

    /// Standard split space of dimension `2n`: duality pairing between the
    /// first and last `n` coordinates.
    pub fn standard_split(n: usize) -> Self {
        let mut form = Matrix::zeros(2 * n, 2 * n);
        for i in 0..n {
            form[(i, n + i)] = S::one();
            form[(n + i, i)] = S::one();
        }
        MetrizedSpace { dim: 2 * n, form }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn form(&self) -> &Matrix<S> {
        &self.form
    }

    pub fn pairing(&self, x: &[S], y: &[S]) -> S {
        dot(&self.form.apply(y), x)
    }

    /// Same space with the negated form.
    pub fn reversed(&self) -> Self {
        MetrizedSpace { dim: self.dim, form: -&self.form }
    }

    /// Orthogonal direct sum.
    pub fn direct_sum(&self, other: &Self) -> Self {
        MetrizedSpace {
            dim: self.dim + other.dim,
            form: Matrix::block_diag(&[&self.form, &other.form]),
        }
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.form.rank() == self.dim
    }

    pub fn require_nondegenerate(&self) -> Result<()> {
        let rank = self.form.rank();
        if rank < self.dim {
            return Err(Error::DegenerateForm { rank, dim: self.dim });
        }
        Ok(())
    }

    /// Split means nondegenerate of signature `(n, n)`.
    pub fn is_split(&self) -> bool {
        self.dim % 2 == 0
            && match self.form.signature() {
                Ok((p, n, z)) => z == 0 && p == n,
                Err(_) => false,
            }
    }

    /// Metric adjoint of a linear map `m: self -> other`, i.e. the map
    /// `other -> self` with `<adj(y), x>_self = <y, m(x)>_other`.
    /// Requires a nondegenerate form on `self`.
    pub fn adjoint_into(&self, m: &Matrix<S>, other: &MetrizedSpace<S>) -> Result<Matrix<S>> {
        if m.cols() != self.dim || m.rows() != other.dim {
            return Err(Error::DimMismatch("adjoint shape mismatch".into()));
        }
        self.require_nondegenerate()?;
        // (J_self)^{-1} M^T J_other
        let jinv = self.form.inverse()?;
        Ok(&(&jinv * &m.transpose()) * &other.form)
    }

    /// Pairing-with-vector functional as a row vector `x^T J`.
    pub fn functional(&self, x: &[S]) -> Vector<S> {
        self.form.apply(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rat;

    #[test]
    fn standard_split_is_split() {
        let e: MetrizedSpace<Rat> = MetrizedSpace::standard_split(2);
        assert!(e.is_nondegenerate());
        assert!(e.is_split());
        let v = vec![Rat::from_int(1), Rat::from_int(0), Rat::from_int(0), Rat::from_int(0)];
        let w = vec![Rat::from_int(0), Rat::from_int(0), Rat::from_int(1), Rat::from_int(0)];
        assert_eq!(e.pairing(&v, &w), Rat::from_int(1));
        assert_eq!(e.pairing(&v, &v), Rat::from_int(0));
    }

    #[test]
    fn reversal_negates() {
        let e: MetrizedSpace<Rat> = MetrizedSpace::standard_split(1);
        let r = e.reversed();
        let v = vec![Rat::from_int(1), Rat::from_int(2)];
        assert_eq!(e.pairing(&v, &v) + r.pairing(&v, &v), Rat::from_int(0));
    }
}

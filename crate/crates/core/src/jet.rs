//! First-order jets `a + b·δ` with `δ² = 0`, used for exact derivative
//! checks of the group actions.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::matrix::{Matrix, Vector};
use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Debug)]
pub struct Jet<S: Scalar> {
    pub base: S,
    pub slope: S,
}

impl<S: Scalar> Jet<S> {
    pub fn new(base: S, slope: S) -> Self {
        Jet { base, slope }
    }

    pub fn constant(base: S) -> Self {
        Jet { base, slope: S::zero() }
    }

    /// The infinitesimal generator `δ`.
    pub fn delta() -> Self {
        Jet { base: S::zero(), slope: S::one() }
    }

    pub fn zero() -> Self {
        Jet::constant(S::zero())
    }

    pub fn one() -> Self {
        Jet::constant(S::one())
    }

    /// Multiplicative inverse; defined exactly when the base part is a unit:
    /// `(a + bδ)^{-1} = a^{-1} - a^{-2} b δ`.
    pub fn inv(&self) -> Result<Self> {
        let ainv = self.base.inv().ok_or(Error::JetNotInvertible)?;
        let slope = -(ainv.clone() * ainv.clone() * self.slope.clone());
        Ok(Jet { base: ainv, slope })
    }

    pub fn is_zero(&self) -> bool {
        self.base.is_zero() && self.slope.is_zero()
    }
}

impl<S: Scalar> Add for Jet<S> {
    type Output = Jet<S>;
    fn add(self, rhs: Jet<S>) -> Jet<S> {
        Jet { base: self.base + rhs.base, slope: self.slope + rhs.slope }
    }
}

impl<S: Scalar> Sub for Jet<S> {
    type Output = Jet<S>;
    fn sub(self, rhs: Jet<S>) -> Jet<S> {
        Jet { base: self.base - rhs.base, slope: self.slope - rhs.slope }
    }
}

impl<S: Scalar> Neg for Jet<S> {
    type Output = Jet<S>;
    fn neg(self) -> Jet<S> {
        Jet { base: -self.base, slope: -self.slope }
    }
}

impl<S: Scalar> Mul for Jet<S> {
    type Output = Jet<S>;
    fn mul(self, rhs: Jet<S>) -> Jet<S> {
        Jet {
            base: self.base.clone() * rhs.base.clone(),
            slope: self.base * rhs.slope + self.slope * rhs.base,
        }
    }
}

impl<S: Scalar> fmt::Display for Jet<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}δ", self.base, self.slope)
    }
}

/// Matrix with jet entries, stored as base and slope parts.
#[derive(Clone, PartialEq, Debug)]
pub struct JetMatrix<S: Scalar> {
    pub base: Matrix<S>,
    pub slope: Matrix<S>,
}

impl<S: Scalar> JetMatrix<S> {
    pub fn new(base: Matrix<S>, slope: Matrix<S>) -> Self {
        assert_eq!(base.rows(), slope.rows());
        assert_eq!(base.cols(), slope.cols());
        JetMatrix { base, slope }
    }

    pub fn constant(base: Matrix<S>) -> Self {
        let slope = Matrix::zeros(base.rows(), base.cols());
        JetMatrix { base, slope }
    }

    /// `I + δ·m`.
    pub fn identity_plus_delta(m: &Matrix<S>) -> Self {
        JetMatrix { base: Matrix::identity(m.rows()), slope: m.clone() }
    }

    pub fn mul(&self, rhs: &JetMatrix<S>) -> JetMatrix<S> {
        JetMatrix {
            base: &self.base * &rhs.base,
            slope: &(&self.base * &rhs.slope) + &(&self.slope * &rhs.base),
        }
    }

    /// `(A + δB)^{-1} = A^{-1} - δ A^{-1} B A^{-1}`.
    pub fn inverse(&self) -> Result<JetMatrix<S>> {
        let ainv = self.base.inverse()?;
        let slope = -&(&(&ainv * &self.slope) * &ainv);
        Ok(JetMatrix { base: ainv, slope })
    }

    pub fn apply(&self, v: &JetVector<S>) -> JetVector<S> {
        JetVector {
            base: self.base.apply(&v.base),
            slope: crate::matrix::vec_add(&self.base.apply(&v.slope), &self.slope.apply(&v.base)),
        }
    }
}

/// Vector with jet entries.
#[derive(Clone, PartialEq, Debug)]
pub struct JetVector<S: Scalar> {
    pub base: Vector<S>,
    pub slope: Vector<S>,
}

impl<S: Scalar> JetVector<S> {
    pub fn constant(base: Vector<S>) -> Self {
        let slope = vec![S::zero(); base.len()];
        JetVector { base, slope }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, Rat};

    #[test]
    fn geometric_series_mod_delta_squared() {
        // (1 + δ)^{-1} = 1 - δ
        let x: Jet<Rat> = Jet::one() + Jet::delta();
        assert_eq!(x.inv().unwrap(), Jet::one() - Jet::delta());
    }

    #[test]
    fn product_rule() {
        let x = Jet::new(rat(2, 1), rat(3, 1));
        let y = Jet::new(rat(5, 1), rat(7, 1));
        let p = x.clone() * y.clone();
        assert_eq!(p.base, rat(10, 1));
        assert_eq!(p.slope, rat(2 * 7 + 3 * 5, 1));
        let inv = x.clone().inv().unwrap();
        assert_eq!(x * inv, Jet::one());
    }

    #[test]
    fn zero_base_not_invertible() {
        let d: Jet<Rat> = Jet::delta();
        assert!(d.inv().is_err());
    }

    #[test]
    fn jet_matrix_inverse() {
        let n: Matrix<Rat> = Matrix::from_int_rows(&[&[0, 1], &[0, 0]]);
        let m = JetMatrix::identity_plus_delta(&n);
        let inv = m.inverse().unwrap();
        assert_eq!(inv.slope, -&n);
        assert!(m.mul(&inv).base.is_identity());
        assert!(m.mul(&inv).slope.is_zero());
    }
}

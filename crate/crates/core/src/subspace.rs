//! Subspaces of `S^n` in canonical echelon form.
//!
//! The basis is stored as the nonzero rows of a reduced row echelon matrix,
//! so two subspaces are equal iff their representations are identical. This
//! is the carrier type for every subbundle fiber in the calculus.

use crate::error::{Error, Result};
use crate::matrix::{vec_is_zero, Matrix, Vector};
use crate::metrized::MetrizedSpace;
use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Debug)]
pub struct Subspace<S: Scalar> {
    ambient_dim: usize,
    basis: Vec<Vector<S>>,
}

impl<S: Scalar> Subspace<S> {
    /// Canonicalize the span of the given vectors.
    pub fn span(ambient_dim: usize, vectors: Vec<Vector<S>>) -> Self {
        for v in &vectors {
            assert_eq!(v.len(), ambient_dim, "spanning vector has wrong length");
        }
        if vectors.is_empty() {
            return Subspace { ambient_dim, basis: Vec::new() };
        }
        let (rref, pivots) = Matrix::from_rows(vectors).rref();
        let basis = (0..pivots.len()).map(|r| rref.row(r).to_vec()).collect();
        Subspace { ambient_dim, basis }
    }

    pub fn zero(ambient_dim: usize) -> Self {
        Subspace { ambient_dim, basis: Vec::new() }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Matrix::<S>::identity(ambient_dim).row_vectors(),
        }
    }

    /// Span of given standard coordinate axes.
    pub fn coordinate(ambient_dim: usize, axes: &[usize]) -> Self {
        let mut vs = Vec::new();
        for &a in axes {
            let mut v = vec![S::zero(); ambient_dim];
            v[a] = S::one();
            vs.push(v);
        }
        Self::span(ambient_dim, vs)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vector<S>] {
        &self.basis
    }

    /// Basis vectors as the columns of a matrix (inclusion map).
    pub fn basis_matrix(&self) -> Matrix<S> {
        if self.basis.is_empty() {
            return Matrix::zeros(self.ambient_dim, 0);
        }
        Matrix::from_cols(self.basis.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn contains(&self, v: &[S]) -> bool {
        assert_eq!(v.len(), self.ambient_dim);
        if vec_is_zero(v) {
            return true;
        }
        if self.basis.is_empty() {
            return false;
        }
        self.basis_matrix().solve(v).is_some()
    }

    pub fn contains_subspace(&self, other: &Subspace<S>) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    /// Equality as subspaces. For exact scalars this coincides with `==` on
    /// canonical forms; in float mode it is mutual containment under the
    /// global tolerance.
    pub fn equiv(&self, other: &Subspace<S>) -> bool {
        if S::EXACT {
            self == other
        } else {
            self.ambient_dim == other.ambient_dim
                && self.dim() == other.dim()
                && self.contains_subspace(other)
                && other.contains_subspace(self)
        }
    }

    pub fn sum(&self, other: &Subspace<S>) -> Result<Subspace<S>> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::AmbientMismatch(self.ambient_dim, other.ambient_dim));
        }
        let mut vs = self.basis.clone();
        vs.extend(other.basis.clone());
        Ok(Subspace::span(self.ambient_dim, vs))
    }

    pub fn intersect(&self, other: &Subspace<S>) -> Result<Subspace<S>> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::AmbientMismatch(self.ambient_dim, other.ambient_dim));
        }
        if self.is_zero() || other.is_zero() {
            return Ok(Subspace::zero(self.ambient_dim));
        }
        // Solve U a = V b: nullspace of [U | -V] built column-wise.
        let u = self.basis_matrix();
        let v = other.basis_matrix();
        let joint = u.hstack(&(-&v));
        let mut vecs = Vec::new();
        for ab in joint.nullspace() {
            let a = &ab[..self.dim()];
            vecs.push(u.apply(a));
        }
        Ok(Subspace::span(self.ambient_dim, vecs))
    }

    /// Orthogonal complement with respect to the form of `space`.
    pub fn orth(&self, space: &MetrizedSpace<S>) -> Result<Subspace<S>> {
        if self.ambient_dim != space.dim() {
            return Err(Error::AmbientMismatch(self.ambient_dim, space.dim()));
        }
        space.require_nondegenerate()?;
        if self.is_zero() {
            return Ok(Subspace::full(self.ambient_dim));
        }
        // {x : b^T J x = 0 for all basis vectors b}
        let constraints = &Matrix::from_rows(self.basis.clone()) * space.form();
        Ok(Subspace::span(self.ambient_dim, constraints.nullspace()))
    }

    /// Subspace annihilated by the given linear equations (rows).
    pub fn solution_space(equations: Matrix<S>) -> Subspace<S> {
        let ambient = equations.cols();
        Subspace::span(ambient, equations.nullspace())
    }

    /// Rows spanning the annihilator `{phi : phi(v) = 0 for v in self}`;
    /// membership in the subspace is `A x = 0`.
    pub fn annihilator_equations(&self) -> Matrix<S> {
        if self.basis.is_empty() {
            return Matrix::identity(self.ambient_dim);
        }
        let bt = Matrix::from_rows(self.basis.clone());
        let rows = bt.nullspace();
        if rows.is_empty() {
            Matrix::zeros(0, self.ambient_dim)
        } else {
            Matrix::from_rows(rows)
        }
    }

    pub fn is_isotropic(&self, space: &MetrizedSpace<S>) -> bool {
        self.basis.iter().all(|u| {
            self.basis.iter().all(|v| space.pairing(u, v).is_zero())
        })
    }

    /// Lagrangian test: `u = orth(u)`, equivalently isotropic of half the
    /// dimension in a split space.
    pub fn is_lagrangian(&self, space: &MetrizedSpace<S>) -> Result<bool> {
        space.require_nondegenerate()?;
        if space.dim() % 2 != 0 || 2 * self.dim() != space.dim() {
            return Ok(false);
        }
        if S::EXACT {
            Ok(self == &self.orth(space)?)
        } else {
            Ok(self.is_isotropic(space))
        }
    }

    /// Image under a linear map given by `m` (columns indexed by ambient).
    pub fn map(&self, m: &Matrix<S>) -> Subspace<S> {
        assert_eq!(m.cols(), self.ambient_dim);
        Subspace::span(m.rows(), self.basis.iter().map(|v| m.apply(v)).collect())
    }

    /// Intersection with the preimage condition `m x ∈ other` of a map.
    pub fn preimage_of(m: &Matrix<S>, other: &Subspace<S>) -> Subspace<S> {
        assert_eq!(m.rows(), other.ambient_dim);
        let eqs = &other.annihilator_equations() * m;
        Subspace::solution_space(eqs)
    }

    /// Direct-sum embedding `self ⊕ other` inside `S^{n+m}`.
    pub fn direct_sum(&self, other: &Subspace<S>) -> Subspace<S> {
        let n = self.ambient_dim;
        let m = other.ambient_dim;
        let mut vs = Vec::new();
        for v in &self.basis {
            let mut w = v.clone();
            w.extend(vec![S::zero(); m]);
            vs.push(w);
        }
        for v in &other.basis {
            let mut w = vec![S::zero(); n];
            w.extend(v.clone());
            vs.push(w);
        }
        Subspace::span(n + m, vs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rat;

    fn sp(ambient: usize, vs: &[&[i64]]) -> Subspace<Rat> {
        Subspace::span(
            ambient,
            vs.iter().map(|v| v.iter().map(|&x| Rat::from_int(x)).collect()).collect(),
        )
    }

    #[test]
    fn sum_of_independent_spans() {
        let u = sp(2, &[&[1, 0]]);
        let v = sp(2, &[&[0, 1]]);
        assert_eq!(u.sum(&v).unwrap(), Subspace::full(2));
    }

    #[test]
    fn sum_is_idempotent() {
        let v = sp(3, &[&[1, 2, 0], &[0, 0, 1]]);
        assert_eq!(v.sum(&v).unwrap(), v);
    }

    #[test]
    fn sum_reduces_staircase() {
        // span{e1} + span{e1+e2} = span{e1,e2}
        let u = sp(3, &[&[1, 0, 0]]);
        let v = sp(3, &[&[1, 1, 0]]);
        assert_eq!(u.sum(&v).unwrap(), sp(3, &[&[1, 0, 0], &[0, 1, 0]]));
    }

    #[test]
    fn intersect_cases() {
        let v = sp(3, &[&[1, 0, 0], &[0, 1, 0]]);
        assert_eq!(v.intersect(&v).unwrap(), v);
        let u = sp(3, &[&[1, 0, 0]]);
        let w = sp(3, &[&[0, 1, 0]]);
        assert!(u.intersect(&w).unwrap().is_zero());
        let a = sp(3, &[&[1, 0, 0], &[0, 1, 0]]);
        let b = sp(3, &[&[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(a.intersect(&b).unwrap(), sp(3, &[&[0, 1, 0]]));
    }

    #[test]
    fn orth_in_split_plane() {
        // Split Q^2 with form [[0,1],[1,0]]: orth(span{e1}) = span{e1}.
        let space: MetrizedSpace<Rat> =
            MetrizedSpace::new(2, Matrix::from_int_rows(&[&[0, 1], &[1, 0]])).unwrap();
        let u = sp(2, &[&[1, 0]]);
        assert_eq!(u.orth(&space).unwrap(), u);
        assert_eq!(Subspace::zero(2).orth(&space).unwrap(), Subspace::full(2));
    }

    #[test]
    fn orth_requires_nondegenerate() {
        let space: MetrizedSpace<Rat> = MetrizedSpace::plain(2);
        assert!(sp(2, &[&[1, 0]]).orth(&space).is_err());
    }

    #[test]
    fn lagrangian_basics() {
        let space: MetrizedSpace<Rat> = MetrizedSpace::standard_split(2);
        let a = sp(4, &[&[1, 0, 0, 0], &[0, 1, 0, 0]]);
        assert!(a.is_lagrangian(&space).unwrap());
        assert!(!Subspace::zero(4).is_lagrangian(&space).unwrap());
        // Graph of a skew map g* -> g inside g ⊕ g*.
        let graph = sp(4, &[&[0, 1, 1, 0], &[-1, 0, 0, 1]]);
        assert!(graph.is_lagrangian(&space).unwrap());
        // Graph of a non-skew map is not Lagrangian.
        let bad = sp(4, &[&[1, 0, 1, 0], &[0, 0, 0, 1]]);
        assert!(!bad.is_lagrangian(&space).unwrap());
    }

    #[test]
    fn annihilator_consistency() {
        let u = sp(4, &[&[1, 2, 0, 0], &[0, 0, 1, -1]]);
        let eqs = u.annihilator_equations();
        assert_eq!(Subspace::solution_space(eqs), u);
    }
}

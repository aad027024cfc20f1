//! Lie algebras from structure constants, invariant metrics, Manin triples,
//! and group elements acting through their adjoint matrices.

use crate::error::{Error, Result};
use crate::matrix::{vec_is_zero, vec_sub, Matrix, Vector};
use crate::metrized::MetrizedSpace;
use crate::scalar::Scalar;
use crate::subspace::Subspace;

/// Structure constants `c[i][j][k]` with `[e_i, e_j] = Σ_k c[i][j][k] e_k`.
#[derive(Clone, PartialEq, Debug)]
pub struct LieAlgebra<S: Scalar> {
    dim: usize,
    constants: Vec<Vec<Vector<S>>>,
}

impl<S: Scalar> LieAlgebra<S> {
    pub fn new(dim: usize, constants: Vec<Vec<Vector<S>>>) -> Result<Self> {
        if constants.len() != dim
            || constants.iter().any(|r| r.len() != dim || r.iter().any(|v| v.len() != dim))
        {
            return Err(Error::DimMismatch("structure constant tensor shape".into()));
        }
        let algebra = LieAlgebra { dim, constants };
        algebra.check_antisymmetry()?;
        Ok(algebra)
    }

    pub fn abelian(dim: usize) -> Self {
        LieAlgebra { dim, constants: vec![vec![vec![S::zero(); dim]; dim]; dim] }
    }

    /// Build from sparse entries `(i, j, k, value)`. Each entry sets
    /// `c[i][j][k] = value` and `c[j][i][k] = -value`; conflicting entries
    /// are an error.
    pub fn from_sparse(dim: usize, entries: &[(usize, usize, usize, S)]) -> Result<Self> {
        let mut c = vec![vec![vec![S::zero(); dim]; dim]; dim];
        let mut set = vec![vec![vec![false; dim]; dim]; dim];
        for (i, j, k, v) in entries {
            let (i, j, k) = (*i, *j, *k);
            if i >= dim || j >= dim || k >= dim {
                return Err(Error::DimMismatch(format!(
                    "structure constant index ({i},{j},{k}) out of range for dim {dim}"
                )));
            }
            if i == j && !v.is_zero() {
                return Err(Error::Invariant(format!(
                    "antisymmetry violated: c[{i}][{i}][{k}] = {v} != 0"
                )));
            }
            for (a, b, val) in [(i, j, v.clone()), (j, i, -v.clone())] {
                if set[a][b][k] && c[a][b][k] != val {
                    return Err(Error::Invariant(format!(
                        "conflicting structure constants at c[{a}][{b}][{k}]: {} vs {val}",
                        c[a][b][k]
                    )));
                }
                set[a][b][k] = true;
                c[a][b][k] = val;
            }
        }
        LieAlgebra::new(dim, c)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> &S {
        &self.constants[i][j][k]
    }

    fn check_antisymmetry(&self) -> Result<()> {
        for i in 0..self.dim {
            for j in 0..self.dim {
                for k in 0..self.dim {
                    let sum =
                        self.constants[i][j][k].clone() + self.constants[j][i][k].clone();
                    if !sum.is_zero() {
                        return Err(Error::Invariant(format!(
                            "antisymmetry violated at (i,j,k)=({i},{j},{k})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn bracket(&self, x: &[S], y: &[S]) -> Result<Vector<S>> {
        if x.len() != self.dim || y.len() != self.dim {
            return Err(Error::DimMismatch("bracket argument dimension".into()));
        }
        let mut out = vec![S::zero(); self.dim];
        for i in 0..self.dim {
            if x[i].is_zero() && S::EXACT {
                continue;
            }
            for j in 0..self.dim {
                if y[j].is_zero() && S::EXACT {
                    continue;
                }
                let xy = x[i].clone() * y[j].clone();
                for k in 0..self.dim {
                    out[k] = out[k].clone() + xy.clone() * self.constants[i][j][k].clone();
                }
            }
        }
        Ok(out)
    }

    /// Matrix of `ad_x = [x, ·]`.
    pub fn ad(&self, x: &[S]) -> Matrix<S> {
        Matrix::from_fn(self.dim, self.dim, |k, j| {
            let mut acc = S::zero();
            for i in 0..self.dim {
                acc = acc + x[i].clone() * self.constants[i][j][k].clone();
            }
            acc
        })
    }

    /// First basis triple violating the Jacobi identity, if any.
    pub fn jacobi_witness(&self) -> Option<(usize, usize, usize)> {
        let basis = Matrix::<S>::identity(self.dim);
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                for k in j + 1..self.dim {
                    let ei = basis.col(i);
                    let ej = basis.col(j);
                    let ek = basis.col(k);
                    let t1 = self.bracket(&self.bracket(&ei, &ej).unwrap(), &ek).unwrap();
                    let t2 = self.bracket(&self.bracket(&ej, &ek).unwrap(), &ei).unwrap();
                    let t3 = self.bracket(&self.bracket(&ek, &ei).unwrap(), &ej).unwrap();
                    let total = crate::matrix::vec_add(&crate::matrix::vec_add(&t1, &t2), &t3);
                    if !vec_is_zero(&total) {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    pub fn check_jacobi(&self) -> bool {
        self.jacobi_witness().is_none()
    }

    /// Subalgebra test: brackets of basis pairs stay in the span.
    pub fn is_subalgebra(&self, u: &Subspace<S>) -> Result<bool> {
        if u.ambient_dim() != self.dim {
            return Err(Error::AmbientMismatch(u.ambient_dim(), self.dim));
        }
        for a in u.basis() {
            for b in u.basis() {
                if !u.contains(&self.bracket(a, b)?) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Is `ad_x` nilpotent? Returns the nilpotency order if so.
    pub fn nilpotency_order(&self, x: &[S]) -> Option<usize> {
        let ad = self.ad(x);
        let mut power = Matrix::<S>::identity(self.dim);
        for k in 0..=self.dim {
            if power.is_zero() {
                return Some(k);
            }
            power = &power * &ad;
        }
        None
    }
}

/// A Lie algebra with an ad-invariant metric.
#[derive(Clone, PartialEq, Debug)]
pub struct MetrizedLieAlgebra<S: Scalar> {
    pub algebra: LieAlgebra<S>,
    pub metric: MetrizedSpace<S>,
}

impl<S: Scalar> MetrizedLieAlgebra<S> {
    pub fn new(algebra: LieAlgebra<S>, metric: MetrizedSpace<S>) -> Result<Self> {
        if metric.dim() != algebra.dim() {
            return Err(Error::DimMismatch("metric dimension != algebra dimension".into()));
        }
        Ok(MetrizedLieAlgebra { algebra, metric })
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    /// Ad-invariance `<[x,y],z> + <y,[x,z]> = 0` over all basis triples.
    pub fn invariance_witness(&self) -> Option<(usize, usize, usize)> {
        let n = self.dim();
        let basis = Matrix::<S>::identity(n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let x = basis.col(i);
                    let y = basis.col(j);
                    let z = basis.col(k);
                    let lhs = self.metric.pairing(&self.algebra.bracket(&x, &y).unwrap(), &z)
                        + self.metric.pairing(&y, &self.algebra.bracket(&x, &z).unwrap());
                    if !lhs.is_zero() {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    pub fn check_invariance(&self) -> bool {
        self.invariance_witness().is_none()
    }
}

/// A Manin pair/triple of Lie algebras: metrized `d` with a Lagrangian
/// subalgebra `g`, and optionally a Lagrangian complement `h` (which need
/// not be a subalgebra).
#[derive(Clone, PartialEq, Debug)]
pub struct ManinTriple<S: Scalar> {
    pub double: MetrizedLieAlgebra<S>,
    pub lagrangian: Subspace<S>,
    pub complement: Option<Subspace<S>>,
}

impl<S: Scalar> ManinTriple<S> {
    pub fn new(
        double: MetrizedLieAlgebra<S>,
        lagrangian: Subspace<S>,
        complement: Option<Subspace<S>>,
    ) -> Result<Self> {
        let triple = ManinTriple { double, lagrangian, complement };
        triple.validate()?;
        Ok(triple)
    }

    pub fn validate(&self) -> Result<()> {
        let d = &self.double;
        if !d.algebra.check_jacobi() {
            let w = d.algebra.jacobi_witness().unwrap();
            return Err(Error::Invariant(format!("Jacobi identity fails at basis triple {w:?}")));
        }
        if !d.check_invariance() {
            let w = d.invariance_witness().unwrap();
            return Err(Error::Invariant(format!("metric not ad-invariant at triple {w:?}")));
        }
        if !self.lagrangian.is_lagrangian(&d.metric)? {
            return Err(Error::Invariant("g is not Lagrangian".into()));
        }
        if !d.algebra.is_subalgebra(&self.lagrangian)? {
            return Err(Error::Invariant("g is not a subalgebra".into()));
        }
        if let Some(h) = &self.complement {
            if !h.is_lagrangian(&d.metric)? {
                return Err(Error::Invariant("h is not Lagrangian".into()));
            }
            if !self.lagrangian.intersect(h)?.is_zero() {
                return Err(Error::Invariant("g ∩ h != 0".into()));
            }
            if self.lagrangian.sum(h)?.dim() != d.dim() {
                return Err(Error::Invariant("g + h is not the whole double".into()));
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.double.dim()
    }

    /// Dimension of the Lagrangian, `n/2`.
    pub fn half_dim(&self) -> usize {
        self.lagrangian.dim()
    }

    /// Inclusion matrix of `g` (columns are the canonical basis).
    pub fn iota_g(&self) -> Matrix<S> {
        self.lagrangian.basis_matrix()
    }

    /// Projection to `g^*` in the basis dual to the canonical basis of `g`:
    /// `(pr ζ)_i = <ζ, g_i>`.
    pub fn pr_g_star(&self) -> Matrix<S> {
        &self.iota_g().transpose() * self.double.metric.form()
    }

    /// Extraction of `g`-coordinates: left inverse of `iota_g` coming from
    /// the echelon pivots of the canonical basis.
    pub fn g_coords(&self) -> Matrix<S> {
        pivot_coords(&self.lagrangian)
    }
}

/// Left inverse of the inclusion of a subspace in canonical form: picks the
/// pivot coordinates, so `coords * basis_matrix = id`.
pub fn pivot_coords<S: Scalar>(u: &Subspace<S>) -> Matrix<S> {
    let b = Matrix::from_rows(u.basis().to_vec());
    let (_, pivots) = b.rref();
    let mut m = Matrix::zeros(u.dim(), u.ambient_dim());
    for (row, &p) in pivots.iter().enumerate() {
        m[(row, p)] = S::one();
    }
    m
}

/// A group element acting on the double through its adjoint matrix: a
/// metric- and bracket-preserving automorphism fixing `g` setwise.
#[derive(Clone, PartialEq, Debug)]
pub struct GroupElement<S: Scalar> {
    pub matrix: Matrix<S>,
}

impl<S: Scalar> GroupElement<S> {
    pub fn identity(dim: usize) -> Self {
        GroupElement { matrix: Matrix::identity(dim) }
    }

    pub fn compose(&self, other: &GroupElement<S>) -> GroupElement<S> {
        GroupElement { matrix: &self.matrix * &other.matrix }
    }

    pub fn inverse(&self) -> Result<GroupElement<S>> {
        Ok(GroupElement { matrix: self.matrix.inverse()? })
    }

    /// Validate against a Manin triple: metric preservation `M^T J M = J`,
    /// bracket preservation `M[x,y] = [Mx,My]` on basis pairs, and
    /// stabilization of `g`.
    pub fn validate(&self, triple: &ManinTriple<S>) -> Result<()> {
        let n = triple.dim();
        let m = &self.matrix;
        if m.rows() != n || m.cols() != n {
            return Err(Error::DimMismatch("group element matrix size".into()));
        }
        if !m.is_invertible() {
            return Err(Error::Singular);
        }
        let j = triple.double.metric.form();
        if !(&(&(&m.transpose() * j) * m) - j).is_zero() {
            return Err(Error::Invariant("group element does not preserve the metric".into()));
        }
        let basis = Matrix::<S>::identity(n);
        for i in 0..n {
            for jdx in 0..n {
                let lhs = m.apply(&triple.double.algebra.bracket(&basis.col(i), &basis.col(jdx))?);
                let rhs = triple.double.algebra.bracket(&m.apply(&basis.col(i)), &m.apply(&basis.col(jdx)))?;
                if !vec_is_zero(&vec_sub(&lhs, &rhs)) {
                    return Err(Error::Invariant(format!(
                        "group element does not preserve the bracket at basis pair ({i},{jdx})"
                    )));
                }
            }
        }
        for v in triple.lagrangian.basis() {
            if !triple.lagrangian.contains(&m.apply(v)) {
                return Err(Error::Invariant("group element does not preserve g".into()));
            }
        }
        Ok(())
    }

    /// Restriction to an invariant subspace, in its canonical basis.
    pub fn restrict(&self, u: &Subspace<S>) -> Result<Matrix<S>> {
        let iota = u.basis_matrix();
        let image = &self.matrix * &iota;
        // Solve iota * N = image column by column.
        let mut cols = Vec::new();
        for c in 0..image.cols() {
            let col = image.col(c);
            let coords = iota
                .solve(&col)
                .ok_or_else(|| Error::Invariant("subspace is not invariant".into()))?;
            cols.push(coords);
        }
        Ok(Matrix::from_cols(cols))
    }
}

/// Exponential of the adjoint of `xi`.
///
/// Exact mode requires `ad_xi` nilpotent and sums the finite series; float
/// mode uses scaling and squaring.
pub fn exp_ad<S: Scalar>(algebra: &LieAlgebra<S>, xi: &[S]) -> Result<GroupElement<S>> {
    let ad = algebra.ad(xi);
    Ok(GroupElement { matrix: exp_matrix(&ad)? })
}

pub fn exp_matrix<S: Scalar>(m: &Matrix<S>) -> Result<Matrix<S>> {
    let n = m.rows();
    if S::EXACT {
        // Nilpotency detection by explicit powers.
        let mut powers = vec![Matrix::<S>::identity(n)];
        loop {
            let next = &powers[powers.len() - 1].clone() * m;
            if next.is_zero() {
                break;
            }
            if powers.len() > n {
                return Err(Error::NonNilpotent { power: n + 1 });
            }
            powers.push(next);
        }
        let mut sum = Matrix::zeros(n, n);
        let mut factorial = S::one();
        for (k, p) in powers.iter().enumerate() {
            if k > 0 {
                factorial = factorial * S::from_int(k as i64);
            }
            let inv = factorial.inv().expect("factorial is nonzero");
            sum = &sum + &p.scale(&inv);
        }
        Ok(sum)
    } else {
        // Scaling and squaring with a truncated series.
        let norm = (0..n)
            .map(|r| m.row(r).iter().map(Scalar::magnitude).sum::<f64>())
            .fold(0.0, f64::max);
        let mut squarings = 0u32;
        let mut scale = 1.0f64;
        while norm * scale > 0.5 {
            scale /= 2.0;
            squarings += 1;
        }
        let scaled = m.scale(&S::from_fraction(1, 1 << squarings.min(62)));
        let mut sum = Matrix::<S>::identity(n);
        let mut term = Matrix::<S>::identity(n);
        for k in 1..=24 {
            term = &term * &scaled;
            term = term.scale(&S::from_int(k as i64).inv().expect("nonzero"));
            sum = &sum + &term;
        }
        let mut result = sum;
        for _ in 0..squarings {
            result = &result * &result;
        }
        Ok(result)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rat;

    fn heisenberg() -> LieAlgebra<Rat> {
        // [e1, e2] = e3
        LieAlgebra::from_sparse(3, &[(0, 1, 2, Rat::from_int(1))]).unwrap()
    }

    #[test]
    fn bracket_basics() {
        let h = heisenberg();
        let e1 = vec![Rat::from_int(1), Rat::from_int(0), Rat::from_int(0)];
        let e2 = vec![Rat::from_int(0), Rat::from_int(1), Rat::from_int(0)];
        let e3 = vec![Rat::from_int(0), Rat::from_int(0), Rat::from_int(1)];
        assert_eq!(h.bracket(&e1, &e2).unwrap(), e3);
        assert!(vec_is_zero(&h.bracket(&e1, &e1).unwrap()));
        let ab = LieAlgebra::<Rat>::abelian(3);
        assert!(vec_is_zero(&ab.bracket(&e1, &e2).unwrap()));
    }

    #[test]
    fn jacobi_detects_violations() {
        assert!(heisenberg().check_jacobi());
        assert!(LieAlgebra::<Rat>::abelian(4).check_jacobi());
        // [e0,e1] = e0, [e0,e2] = e1 gives J(e0,e1,e2) = e1 != 0.
        let bad = LieAlgebra::from_sparse(
            3,
            &[(0, 1, 0, Rat::from_int(1)), (0, 2, 1, Rat::from_int(1))],
        )
        .unwrap();
        assert_eq!(bad.jacobi_witness(), Some((0, 1, 2)));
    }

    #[test]
    fn exp_ad_nilpotent() {
        let h = heisenberg();
        let e1 = vec![Rat::from_int(1), Rat::from_int(0), Rat::from_int(0)];
        let g = exp_ad(&h, &e1).unwrap();
        let expected = &Matrix::identity(3) + &h.ad(&e1);
        assert_eq!(g.matrix, expected);
        let zero = vec![Rat::from_int(0); 3];
        assert!(exp_ad(&h, &zero).unwrap().matrix.is_identity());
        let ginv = exp_ad(&h, &vec_sub(&zero, &e1)).unwrap();
        assert!(g.compose(&ginv).matrix.is_identity());
    }

    #[test]
    fn exp_matrix_float_inverse() {
        let m: Matrix<f64> = Matrix::from_int_rows(&[&[0, 2], &[-2, 0]]);
        let e = exp_matrix(&m).unwrap();
        let einv = exp_matrix(&(-&m)).unwrap();
        let prod = &e * &einv;
        assert!((&prod - &Matrix::identity(2)).max_magnitude() < 1e-12);
    }
}

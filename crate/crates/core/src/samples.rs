//! Built-in example algebras and seeded random generators for the
//! verification suites.
//!
//! The example library spans the three regimes: the abelian double
//! (trivial), the Heisenberg cotangent double (nilpotent, exact), and the
//! sl2 double (semisimple, float mode).

use rand::Rng;

use crate::error::Result;
use crate::fatgroup::{CoreAnchorDatum, KElement};
use crate::liealg::{exp_ad, GroupElement, LieAlgebra, ManinTriple, MetrizedLieAlgebra};
use crate::maninrep::ManinPairFiber;
use crate::matrix::{Matrix, Vector};
use crate::metrized::MetrizedSpace;
use crate::scalar::Scalar;
use crate::subspace::Subspace;

/// Abelian double `g ⊕ g*` with the duality metric; every bracket is zero.
pub fn abelian_double<S: Scalar>(half_dim: usize) -> ManinTriple<S> {
    let dim = 2 * half_dim;
    let algebra = LieAlgebra::abelian(dim);
    let metric = MetrizedSpace::standard_split(half_dim);
    let double = MetrizedLieAlgebra::new(algebra, metric).unwrap();
    let lagrangian = Subspace::coordinate(dim, &(0..half_dim).collect::<Vec<_>>());
    let complement = Subspace::coordinate(dim, &(half_dim..dim).collect::<Vec<_>>());
    ManinTriple::new(double, lagrangian, Some(complement)).unwrap()
}

/// Cotangent double of the Heisenberg algebra: `d = h3 ⋉ h3*` with the
/// duality metric. Basis order `e1, e2, e3, f1, f2, f3`; the nonzero
/// brackets are `[e1,e2] = e3`, `[e1,f3] = -f2`, `[e2,f3] = f1`.
/// Every adjoint is nilpotent, so the whole suite runs exactly.
pub fn heisenberg_double<S: Scalar>() -> ManinTriple<S> {
    let one = S::one();
    let entries = vec![
        (0usize, 1usize, 2usize, one.clone()),
        (0, 5, 4, -one.clone()),
        (1, 5, 3, one),
    ];
    let algebra = LieAlgebra::from_sparse(6, &entries).unwrap();
    let metric = MetrizedSpace::standard_split(3);
    let double = MetrizedLieAlgebra::new(algebra, metric).unwrap();
    let lagrangian = Subspace::coordinate(6, &[0, 1, 2]);
    let complement = Subspace::coordinate(6, &[3, 4, 5]);
    ManinTriple::new(double, lagrangian, Some(complement)).unwrap()
}

/// Drinfeld double of sl2: `d = sl2 ⊕ sl2` with the metric `tr ⊕ (-tr)`,
/// diagonal Lagrangian, and the standard bialgebra complement
/// `span{(e,0), (0,f), (h,-h)}`. Basis order `e, h, f` in each factor.
/// Semisimple, so exponentials run in float mode.
pub fn sl2_double<S: Scalar>() -> ManinTriple<S> {
    // sl2 structure constants for basis (e, h, f):
    // [e,h] = -2e, [e,f] = h, [h,f] = -2f.
    let two = S::from_int(2);
    let mut entries: Vec<(usize, usize, usize, S)> = Vec::new();
    for offset in [0usize, 3usize] {
        entries.push((offset, offset + 1, offset, -two.clone()));
        entries.push((offset, offset + 2, offset + 1, S::one()));
        entries.push((offset + 1, offset + 2, offset + 2, -two.clone()));
    }
    let algebra = LieAlgebra::from_sparse(6, &entries).unwrap();
    // Trace form in basis (e, h, f): tr(ef) = 1, tr(hh) = 2.
    let mut k = Matrix::zeros(3, 3);
    k[(0, 2)] = S::one();
    k[(2, 0)] = S::one();
    k[(1, 1)] = two;
    let form = Matrix::block_diag(&[&k, &(-&k)]);
    let metric = MetrizedSpace::new(6, form).unwrap();
    let double = MetrizedLieAlgebra::new(algebra, metric).unwrap();
    let diag = |i: usize| {
        let mut v = vec![S::zero(); 6];
        v[i] = S::one();
        v[i + 3] = S::one();
        v
    };
    let lagrangian = Subspace::span(6, vec![diag(0), diag(1), diag(2)]);
    let mut h_minus = vec![S::zero(); 6];
    h_minus[1] = S::one();
    h_minus[4] = -S::one();
    let mut e_plus = vec![S::zero(); 6];
    e_plus[0] = S::one();
    let mut f_minus = vec![S::zero(); 6];
    f_minus[5] = S::one();
    let complement = Subspace::span(6, vec![e_plus, f_minus, h_minus]);
    ManinTriple::new(double, lagrangian, Some(complement)).unwrap()
}

/// Random rational in a small grid: numerator in `[-bound, bound]`,
/// denominator in `{1, 2, 3}`.
pub fn small_scalar<S: Scalar>(rng: &mut impl Rng, bound: i64) -> S {
    let num = rng.gen_range(-bound..=bound);
    let den = rng.gen_range(1..=3);
    S::from_fraction(num, den)
}

pub fn random_matrix<S: Scalar>(
    rng: &mut impl Rng,
    rows: usize,
    cols: usize,
    bound: i64,
) -> Matrix<S> {
    Matrix::from_fn(rows, cols, |_, _| small_scalar(rng, bound))
}

pub fn random_vector<S: Scalar>(rng: &mut impl Rng, len: usize, bound: i64) -> Vector<S> {
    (0..len).map(|_| small_scalar(rng, bound)).collect()
}

/// Random core-anchor datum with dims up to the bounds (at least 1 each).
pub fn random_datum<S: Scalar>(
    rng: &mut impl Rng,
    max_c: usize,
    max_b: usize,
) -> CoreAnchorDatum<S> {
    let c = rng.gen_range(1..=max_c);
    let b = rng.gen_range(1..=max_b);
    CoreAnchorDatum::new(random_matrix(rng, b, c, 2))
}

/// Random fat-group element of a datum (rejection sampling on the
/// invertibility invariant).
pub fn random_k_element<S: Scalar>(rng: &mut impl Rng, datum: &CoreAnchorDatum<S>) -> KElement<S> {
    loop {
        let f = random_matrix(rng, datum.dim_c(), datum.dim_b(), 2);
        if let Ok(el) = datum.element(f) {
            return el;
        }
    }
}

/// Random element of the split orthogonal group of the standard split form
/// on `S^{2n}`, as a product of B-field, beta-field and block-GL generators.
pub fn random_split_orthogonal<S: Scalar>(
    rng: &mut impl Rng,
    n: usize,
    factors: usize,
) -> Matrix<S> {
    let mut result = Matrix::identity(2 * n);
    for _ in 0..factors {
        let kind = rng.gen_range(0..3);
        let generator = match kind {
            0 | 1 => {
                let mut b = Matrix::zeros(n, n);
                for i in 0..n {
                    for j in i + 1..n {
                        let x: S = small_scalar(rng, 2);
                        b[(i, j)] = x.clone();
                        b[(j, i)] = -x;
                    }
                }
                if kind == 0 {
                    // B-field transform [[I,0],[b,I]].
                    let top = Matrix::identity(n).hstack(&Matrix::zeros(n, n));
                    top.vstack(&b.hstack(&Matrix::identity(n)))
                } else {
                    // beta-field transform [[I,β],[0,I]].
                    let top = Matrix::identity(n).hstack(&b);
                    top.vstack(&Matrix::zeros(n, n).hstack(&Matrix::identity(n)))
                }
            }
            _ => {
                // GL block [[g,0],[0,(g^T)^{-1}]] with unitriangular g.
                let mut g = Matrix::identity(n);
                for i in 0..n {
                    for j in i + 1..n {
                        g[(i, j)] = small_scalar(rng, 2);
                    }
                }
                let ginv_t = g.inverse().expect("unitriangular").transpose();
                Matrix::block_diag(&[&g, &ginv_t])
            }
        };
        result = &result * &generator;
    }
    result
}

/// Random Lagrangian subspace of the standard split space `S^{2n}`.
pub fn random_lagrangian<S: Scalar>(rng: &mut impl Rng, n: usize) -> Subspace<S> {
    let o = random_split_orthogonal(rng, n, 3);
    Subspace::coordinate(2 * n, &(0..n).collect::<Vec<_>>()).map(&o)
}

/// Random Courant-flagged Manin pair fiber: start from the split model with
/// anchor supported on the Lagrangian side and conjugate by a random
/// split-orthogonal transformation.
pub fn random_courant_fiber<S: Scalar>(
    rng: &mut impl Rng,
    n: usize,
    m: usize,
) -> ManinPairFiber<S> {
    let e = MetrizedSpace::standard_split(n);
    let o = random_split_orthogonal(rng, n, 3);
    let a = Subspace::coordinate(2 * n, &(0..n).collect::<Vec<_>>()).map(&o);
    let p = random_matrix(rng, m, n, 2);
    let anchor0 = p.hstack(&Matrix::zeros(m, n));
    let anchor = &anchor0 * &o.inverse().expect("orthogonal");
    ManinPairFiber::new(e, a, anchor, true, None).expect("constructed fiber is Courant")
}

/// Random group element of a Manin triple: a product of up to `max_factors`
/// adjoint exponentials of small combinations of the Lagrangian basis.
/// In exact mode the generators must have nilpotent adjoint; callers use
/// this with the nilpotent examples.
pub fn random_group_element<S: Scalar>(
    rng: &mut impl Rng,
    triple: &ManinTriple<S>,
    max_factors: usize,
) -> Result<GroupElement<S>> {
    let dim = triple.dim();
    let mut g = GroupElement::identity(dim);
    let factors = rng.gen_range(1..=max_factors);
    for _ in 0..factors {
        let mut xi = vec![S::zero(); dim];
        for b in triple.lagrangian.basis() {
            let c: S = small_scalar(rng, 1);
            xi = crate::matrix::vec_add(&xi, &crate::matrix::vec_scale(&c, b));
        }
        let factor = exp_ad(&triple.double.algebra, &xi)?;
        g = g.compose(&factor);
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rat;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn builtin_triples_validate() {
        abelian_double::<Rat>(2).validate().unwrap();
        heisenberg_double::<Rat>().validate().unwrap();
        sl2_double::<Rat>().validate().unwrap();
    }

    #[test]
    fn heisenberg_double_is_nilpotent() {
        let t = heisenberg_double::<Rat>();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..5 {
            let xi = random_vector::<Rat>(&mut rng, 6, 2);
            assert!(t.double.algebra.nilpotency_order(&xi).is_some());
        }
    }

    #[test]
    fn random_generators_are_consistent() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let o = random_split_orthogonal::<Rat>(&mut rng, 3, 4);
        let j = MetrizedSpace::<Rat>::standard_split(3);
        assert!((&(&(&o.transpose() * j.form()) * &o) - j.form()).is_zero());
        let l = random_lagrangian::<Rat>(&mut rng, 3);
        assert!(l.is_lagrangian(&j).unwrap());
        let fiber = random_courant_fiber::<Rat>(&mut rng, 2, 2);
        assert!(fiber.is_courant());
        let t = heisenberg_double::<Rat>();
        let g = random_group_element(&mut rng, &t, 3).unwrap();
        g.validate(&t).unwrap();
    }
}

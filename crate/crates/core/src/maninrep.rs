//! A Manin pair fiber `(E, A)` with anchor data: the unit/core maps, the
//! fat-group representation on `E` with its two closed forms, the
//! infinitesimal generator, and the invariant relation `gr(α) + gr(β)`.

use crate::error::{Error, Result};
use crate::fatgroup::{CoreAnchorDatum, KAlgebraElement, KElement};
use crate::jet::JetMatrix;
use crate::matrix::{vec_concat, Matrix, Vector};
use crate::metrized::MetrizedSpace;
use crate::relation::LinearRelation;
use crate::scalar::Scalar;
use crate::subspace::Subspace;

/// Sign of the infinitesimal generator relative to the first-order jet of
/// the action, resolved empirically by `ad_e_jet_sign`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GeneratorSign {
    Plus,
    Minus,
}

impl std::fmt::Display for GeneratorSign {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GeneratorSign::Plus => write!(f, "+"),
            GeneratorSign::Minus => write!(f, "-"),
        }
    }
}

/// Fiber of a Manin pair with anchor: split `E` of dimension `2n`, a
/// Lagrangian `A` of dimension `n`, and an anchor `E -> V` with `dim V = m`.
///
/// `A`-coordinates are taken in the canonical basis of `A`; `A*` is realized
/// in the dual basis, so the projection `pr_{A*}` is the metric adjoint of
/// the inclusion. A Lagrangian complement to `A` is fixed per fiber (it
/// embeds `A*` back into `E` where needed and is recorded in reports; the
/// identities checked here do not depend on the choice).
#[derive(Clone, PartialEq, Debug)]
pub struct ManinPairFiber<S: Scalar> {
    e: MetrizedSpace<S>,
    a: Subspace<S>,
    v_dim: usize,
    anchor: Matrix<S>,
    courant: bool,
    complement: Subspace<S>,
}

impl<S: Scalar> ManinPairFiber<S> {
    pub fn new(
        e: MetrizedSpace<S>,
        a: Subspace<S>,
        anchor: Matrix<S>,
        courant: bool,
        complement: Option<Subspace<S>>,
    ) -> Result<Self> {
        if e.dim() % 2 != 0 {
            return Err(Error::Invariant("E must have even dimension".into()));
        }
        if !a.is_lagrangian(&e)? {
            return Err(Error::Invariant("A is not Lagrangian in E".into()));
        }
        if anchor.cols() != e.dim() {
            return Err(Error::DimMismatch("anchor must be defined on E".into()));
        }
        let v_dim = anchor.rows();
        let complement = match complement {
            Some(c) => {
                if !c.is_lagrangian(&e)? || !a.intersect(&c)?.is_zero() {
                    return Err(Error::Invariant(
                        "complement is not a Lagrangian complement to A".into(),
                    ));
                }
                c
            }
            None => lagrangian_complement(&e, &a)?,
        };
        let fiber = ManinPairFiber { e, a, v_dim, anchor, courant, complement };
        if courant && !fiber.anchor_squares_to_zero() {
            return Err(Error::Invariant(
                "Courant-flagged fiber must satisfy anchor ∘ anchor* = 0".into(),
            ));
        }
        Ok(fiber)
    }

    pub fn space(&self) -> &MetrizedSpace<S> {
        &self.e
    }

    pub fn a(&self) -> &Subspace<S> {
        &self.a
    }

    pub fn complement(&self) -> &Subspace<S> {
        &self.complement
    }

    pub fn v_dim(&self) -> usize {
        self.v_dim
    }

    pub fn a_dim(&self) -> usize {
        self.a.dim()
    }

    pub fn anchor(&self) -> &Matrix<S> {
        &self.anchor
    }

    pub fn is_courant(&self) -> bool {
        self.courant
    }

    /// Inclusion `A -> E` (columns are the canonical basis of `A`).
    pub fn iota(&self) -> Matrix<S> {
        self.a.basis_matrix()
    }

    /// Projection `E -> A*` in the dual basis: `(pr ζ)_i = <ζ, a_i>`.
    pub fn pr_a_star(&self) -> Matrix<S> {
        &self.iota().transpose() * self.e.form()
    }

    /// Anchor restricted to `A`.
    pub fn anchor_a(&self) -> Matrix<S> {
        &self.anchor * &self.iota()
    }

    /// Metric adjoint `V* -> E` of the anchor: `anchor* = J^{-1} anchor^T`.
    pub fn anchor_star(&self) -> Matrix<S> {
        &self.e.form().inverse().expect("split form is invertible") * &self.anchor.transpose()
    }

    fn anchor_squares_to_zero(&self) -> bool {
        (&self.anchor * &self.anchor_star()).is_zero()
    }

    /// Unit map `α = (anchor, -pr_{A*}): E -> V ⊕ A*` as a matrix.
    pub fn alpha_matrix(&self) -> Matrix<S> {
        self.anchor.vstack(&(-&self.pr_a_star()))
    }

    pub fn alpha(&self, zeta: &[S]) -> Vector<S> {
        self.alpha_matrix().apply(zeta)
    }

    /// Core map `β = (ι_A, -anchor*): A ⊕ V* -> E` as a matrix.
    pub fn beta_matrix(&self) -> Matrix<S> {
        self.iota().hstack(&(-&self.anchor_star()))
    }

    pub fn beta(&self, y: &[S]) -> Vector<S> {
        self.beta_matrix().apply(y)
    }

    /// Duality `<x, α(ζ)> = -<β(x), ζ>` for `x ∈ A ⊕ V*`, `ζ ∈ E`, where the
    /// left pairing is the one of `tg_fiber_space`.
    pub fn alpha_beta_duality_holds(&self) -> bool {
        let n = self.a_dim();
        let m = self.v_dim;
        let q = self.tg_fiber_space();
        let alpha = self.alpha_matrix();
        let beta = self.beta_matrix();
        let dim_core = n + m;
        for i in 0..dim_core {
            let mut x = vec![S::zero(); dim_core];
            x[i] = S::one();
            let x_embedded = vec_concat(&[&x, &vec![S::zero(); m + n]]);
            for j in 0..self.e.dim() {
                let mut zeta = vec![S::zero(); self.e.dim()];
                zeta[j] = S::one();
                let alpha_embedded =
                    vec_concat(&[&vec![S::zero(); dim_core], &alpha.apply(&zeta)]);
                let lhs = q.pairing(&x_embedded, &alpha_embedded);
                let rhs = -self.e.pairing(&beta.apply(&x), &zeta);
                if !(lhs - rhs).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// Fat-group datum of the fiber: `C = A`, `B = V`, `ρ = anchor_A`.
    pub fn k_datum(&self) -> CoreAnchorDatum<S> {
        CoreAnchorDatum::new(self.anchor_a())
    }

    /// `U_f = (id_E + ι_A ∘ f ∘ anchor)^{-1}`.
    pub fn u_map(&self, f: &KElement<S>) -> Matrix<S> {
        let id = Matrix::identity(self.e.dim());
        (&id + &(&(&self.iota() * &f.f) * &self.anchor))
            .inverse()
            .expect("invertibility follows from the fat-group invariant")
    }

    /// `V_f = id_E + anchor* ∘ f* ∘ pr_{A*}`.
    pub fn v_map(&self, f: &KElement<S>) -> Matrix<S> {
        let id = Matrix::identity(self.e.dim());
        &id + &(&(&self.anchor_star() * &f.f.transpose()) * &self.pr_a_star())
    }

    /// The action on `E`: `Ad^E_f = U_f ∘ V_f`.
    pub fn ad_e(&self, f: &KElement<S>) -> Matrix<S> {
        &self.u_map(f) * &self.v_map(f)
    }

    /// The second closed form of the action:
    /// `id_E + anchor* f* pr_{A*} - ι_A f Ad^{TM}_f anchor`.
    pub fn ad_e_second_form(&self, f: &KElement<S>) -> Matrix<S> {
        let id = Matrix::identity(self.e.dim());
        let ad_tm = self.k_datum().ad_b(f);
        let plus = &(&self.anchor_star() * &f.f.transpose()) * &self.pr_a_star();
        let minus = &(&(&self.iota() * &f.f) * &ad_tm) * &self.anchor;
        &(&id + &plus) - &minus
    }

    /// `u(h) = ι_A ∘ h ∘ anchor`; together with `v(h) = -u(h)*` it forms the
    /// infinitesimal generator.
    pub fn u_inf(&self, h: &KAlgebraElement<S>) -> Matrix<S> {
        &(&self.iota() * &h.h) * &self.anchor
    }

    pub fn v_inf(&self, h: &KAlgebraElement<S>) -> Matrix<S> {
        let u = self.u_inf(h);
        let j = self.e.form();
        let jinv = j.inverse().expect("split form is invertible");
        -&(&(&jinv * &u.transpose()) * j)
    }

    pub fn ad_e_inf(&self, h: &KAlgebraElement<S>) -> Matrix<S> {
        &self.u_inf(h) + &self.v_inf(h)
    }

    /// First-order jet of `f ↦ Ad^E_f` along `f = δ·h`, and the sign `s`
    /// with `jet = id + δ·s·ad^E_h`. Returns `None` if the jet is not a
    /// scalar multiple of the generator at all.
    pub fn ad_e_jet_sign(&self, h: &KAlgebraElement<S>) -> Option<GeneratorSign> {
        let n2 = self.e.dim();
        let u_jet = JetMatrix::identity_plus_delta(&(&(&self.iota() * &h.h) * &self.anchor))
            .inverse()
            .expect("unipotent jet");
        let v_jet = JetMatrix::new(
            Matrix::identity(n2),
            &(&self.anchor_star() * &h.h.transpose()) * &self.pr_a_star(),
        );
        let jet = u_jet.mul(&v_jet);
        if !jet.base.is_identity() {
            return None;
        }
        let gen = self.ad_e_inf(h);
        if (&jet.slope - &gen).is_zero() {
            Some(GeneratorSign::Plus)
        } else if (&jet.slope + &gen).is_zero() {
            Some(GeneratorSign::Minus)
        } else {
            None
        }
    }

    /// Equivariance and consistency report for a single fat-group element.
    pub fn equivariance_checks(&self, f: &KElement<S>) -> EquivarianceReport {
        let datum = self.k_datum();
        let ad_e = self.ad_e(f);
        let ad_tm = datum.ad_b(f);
        let ad_a_star = datum.ad_c_star(f);
        let anchor_ok = (&(&self.anchor * &ad_e) - &(&ad_tm * &self.anchor)).is_zero();
        let pr = self.pr_a_star();
        let projection_ok = (&(&pr * &ad_e) - &(&ad_a_star * &pr)).is_zero();
        let j = self.e.form();
        let metric_ok = (&(&(&ad_e.transpose() * j) * &ad_e) - j).is_zero();
        let two_formulas_ok = (&ad_e - &self.ad_e_second_form(f)).is_zero();
        let commute_ok = {
            let u = self.u_map(f);
            let v = self.v_map(f);
            (&(&u * &v) - &(&v * &u)).is_zero()
        };
        let restricts_ok = {
            let ad_a = datum.ad_c(f);
            (&(&ad_e * &self.iota()) - &(&self.iota() * &ad_a)).is_zero()
        };
        EquivarianceReport {
            anchor_equivariant: anchor_ok,
            projection_equivariant: projection_ok,
            metric_preserved: metric_ok,
            two_formulas_agree: two_formulas_ok,
            u_v_commute: commute_ok,
            restricts_to_a: restricts_ok,
        }
    }

    /// The core-anchor of the induced trivial-base fiber:
    /// `ρ' = (anchor_A, anchor_A*): A ⊕ V* -> V ⊕ A*`.
    pub fn tg_rho(&self) -> Matrix<S> {
        Matrix::block_diag(&[&self.anchor_a(), &self.anchor_a().transpose()])
    }

    /// Commutation of the square `α ∘ β = ρ'` (uses the Courant property).
    pub fn core_anchor_square(&self) -> bool {
        (&(&self.alpha_matrix() * &self.beta_matrix()) - &self.tg_rho()).is_zero()
    }

    /// Fat-group datum of the induced fiber: `C = A ⊕ V*`, `B = V ⊕ A*`.
    pub fn tg_datum(&self) -> CoreAnchorDatum<S> {
        CoreAnchorDatum::new(self.tg_rho())
    }

    /// Embed a fat-group element of the small datum into the induced one:
    /// block diagonal `(f, f^∨)` where `f^∨ = -f*(id + ρ* f*)^{-1}` is the
    /// induced element on the dual side.
    pub fn embed_k(&self, f: &KElement<S>) -> KElement<S> {
        let rho_star = self.anchor_a().transpose();
        let f_star = f.f.transpose();
        let inner = (&Matrix::identity(self.a_dim()) + &(&rho_star * &f_star))
            .inverse()
            .expect("fat-group invariant transposes");
        let f_dual = -&(&f_star * &inner);
        self.tg_datum()
            .element(Matrix::block_diag(&[&f.f, &f_dual]))
            .expect("embedded element satisfies the invariant")
    }

    /// The metrized fiber `(A ⊕ V*) ⊕ (V ⊕ A*)` carrying the canonical
    /// pairing `<γ + β, c + b> = <γ, c> + <β, b> + <β, ρ'(c)>` symmetrized
    /// over the tangent/cotangent split.
    pub fn tg_fiber_space(&self) -> MetrizedSpace<S> {
        let n = self.a_dim();
        let m = self.v_dim;
        let dim = 2 * (n + m);
        let aa = self.anchor_a();
        let mut q = Matrix::zeros(dim, dim);
        // Coordinates: [ξ (n), μ (m), v (m), τ (n)].
        let (xi0, mu0, v0, tau0) = (0, n, n + m, n + 2 * m);
        for i in 0..n {
            q[(tau0 + i, xi0 + i)] = S::one();
            q[(xi0 + i, tau0 + i)] = S::one();
        }
        for i in 0..m {
            q[(mu0 + i, v0 + i)] = S::one();
            q[(v0 + i, mu0 + i)] = S::one();
        }
        for r in 0..m {
            for c in 0..n {
                q[(mu0 + r, xi0 + c)] = q[(mu0 + r, xi0 + c)].clone() + aa[(r, c)].clone();
                q[(xi0 + c, mu0 + r)] = q[(xi0 + c, mu0 + r)].clone() + aa[(r, c)].clone();
            }
        }
        MetrizedSpace::new(dim, q).expect("constructed form is symmetric")
    }

    /// The relation `gr(α) + gr(β)` from the induced fiber to `Pair(E)`.
    pub fn rum_relation(&self) -> LinearRelation<S> {
        let n2 = self.e.dim();
        let n = self.a_dim();
        let m = self.v_dim;
        let source = self.tg_fiber_space();
        let target = self.e.direct_sum(&self.e.reversed());
        let alpha = self.alpha_matrix();
        let beta = self.beta_matrix();
        let mut vs = Vec::new();
        for j in 0..n2 {
            let mut zeta = vec![S::zero(); n2];
            zeta[j] = S::one();
            let unit = alpha.apply(&zeta);
            vs.push(vec_concat(&[&zeta, &zeta, &vec![S::zero(); n + m], &unit]));
        }
        for j in 0..n + m {
            let mut y = vec![S::zero(); n + m];
            y[j] = S::one();
            let core = beta.apply(&y);
            vs.push(vec_concat(&[
                &vec![S::zero(); n2],
                &core,
                &y,
                &vec![S::zero(); m + n],
            ]));
        }
        let graph = Subspace::span(2 * n2 + 2 * (n + m), vs);
        LinearRelation::new(source, target, graph).expect("dimensions agree by construction")
    }

    /// Invariance of `gr(α) + gr(β)` under the pair `(f1, f2)` acting by
    /// `(Ad^E_{f1}, Ad^E_{f2})` on `Pair(E)` and by `l_{f1} ∘ r_{f2}^{-1}`
    /// on the induced fiber.
    pub fn rum_invariance(&self, f1: &KElement<S>, f2: &KElement<S>) -> bool {
        let rel = self.rum_relation();
        let ad1 = self.ad_e(f1);
        let ad2 = self.ad_e(f2);
        let datum = self.tg_datum();
        let l1 = datum.left_translate_matrix(&self.embed_k(f1));
        let r2 = datum.right_translate_inv_matrix(&self.embed_k(f2));
        let act = Matrix::block_diag(&[&ad1, &ad2, &(&l1 * &r2)]);
        let image = rel.graph().map(&act);
        image.equiv(rel.graph())
    }
}

/// Result of the per-element consistency checks on a fiber.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EquivarianceReport {
    pub anchor_equivariant: bool,
    pub projection_equivariant: bool,
    pub metric_preserved: bool,
    pub two_formulas_agree: bool,
    pub u_v_commute: bool,
    pub restricts_to_a: bool,
}

impl EquivarianceReport {
    pub fn all_hold(&self) -> bool {
        self.anchor_equivariant
            && self.projection_equivariant
            && self.metric_preserved
            && self.two_formulas_agree
            && self.u_v_commute
            && self.restricts_to_a
    }
}

/// Construct a Lagrangian complement to a Lagrangian subspace by the split
/// completion: normalize the dual pairings against `a`, then absorb the
/// self-pairings back into `a`.
pub fn lagrangian_complement<S: Scalar>(
    space: &MetrizedSpace<S>,
    a: &Subspace<S>,
) -> Result<Subspace<S>> {
    if !a.is_lagrangian(space)? {
        return Err(Error::Invariant("complement requested for a non-Lagrangian".into()));
    }
    let n = a.dim();
    let dim = space.dim();
    // Extend the basis of a by standard vectors to a full basis.
    let mut extension: Vec<Vector<S>> = Vec::new();
    let mut current = a.clone();
    for i in 0..dim {
        if current.dim() == dim {
            break;
        }
        let mut e = vec![S::zero(); dim];
        e[i] = S::one();
        if !current.contains(&e) {
            current = current.sum(&Subspace::span(dim, vec![e.clone()]))?;
            extension.push(e);
        }
    }
    debug_assert_eq!(extension.len(), n);
    // Gram matrix M_{ij} = <w_i, a_j> is invertible; replace w by M^{-1} w.
    let gram = Matrix::from_fn(n, n, |i, j| space.pairing(&extension[i], a.basis()[j].as_slice()));
    let gram_inv = gram.inverse().map_err(|_| {
        Error::Invariant("dual pairing between complement and Lagrangian degenerated".into())
    })?;
    let mut dual: Vec<Vector<S>> = Vec::new();
    for i in 0..n {
        let mut v = vec![S::zero(); dim];
        for k in 0..n {
            v = crate::matrix::vec_add(
                &v,
                &crate::matrix::vec_scale(&gram_inv[(i, k)], &extension[k]),
            );
        }
        dual.push(v);
    }
    // Kill self-pairings: c_i = d_i - (1/2) Σ_j G_{ij} a_j.
    let g = Matrix::from_fn(n, n, |i, j| space.pairing(&dual[i], &dual[j]));
    let half = S::from_fraction(1, 2);
    let mut complement = Vec::new();
    for i in 0..n {
        let mut v = dual[i].clone();
        for j in 0..n {
            let coeff = -(half.clone() * g[(i, j)].clone());
            v = crate::matrix::vec_add(
                &v,
                &crate::matrix::vec_scale(&coeff, a.basis()[j].as_slice()),
            );
        }
        complement.push(v);
    }
    let c = Subspace::span(dim, complement);
    debug_assert!(c.is_lagrangian(space)? && a.intersect(&c)?.is_zero());
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, Rat};

    /// Abelian g ⊕ g* fiber with zero anchor (V = 0).
    fn abelian_fiber(n: usize) -> ManinPairFiber<Rat> {
        let e = MetrizedSpace::standard_split(n);
        let a = Subspace::coordinate(2 * n, &(0..n).collect::<Vec<_>>());
        ManinPairFiber::new(e, a, Matrix::zeros(0, 2 * n), true, None).unwrap()
    }

    /// Standard Courant fiber V ⊕ V* with anchor the first projection.
    fn standard_fiber(m: usize) -> ManinPairFiber<Rat> {
        let e = MetrizedSpace::standard_split(m);
        let a = Subspace::coordinate(2 * m, &(0..m).collect::<Vec<_>>());
        let anchor = Matrix::identity(m).hstack(&Matrix::zeros(m, m));
        ManinPairFiber::new(e, a, anchor, true, None).unwrap()
    }

    #[test]
    fn zero_anchor_degenerates() {
        let fiber = abelian_fiber(2);
        // α(x, μ) = (0, -μ) for the abelian fiber: pr kills A, anchor is 0.
        let zeta = vec![rat(1, 1), rat(2, 1), rat(3, 1), rat(4, 1)];
        let image = fiber.alpha(&zeta);
        assert_eq!(image, vec![rat(-3, 1), rat(-4, 1)]);
        // β(ξ, μ) = ξ.
        let y = vec![rat(5, 1), rat(6, 1)];
        assert_eq!(fiber.beta(&y), vec![rat(5, 1), rat(6, 1), rat(0, 1), rat(0, 1)]);
        // With a zero anchor the representation is trivial.
        let datum = fiber.k_datum();
        let f = datum.element(Matrix::zeros(2, 0)).unwrap();
        assert!(fiber.ad_e(&f).is_identity());
        assert!(fiber.core_anchor_square());
    }

    #[test]
    fn alpha_kernel_and_duality() {
        let fiber = standard_fiber(2);
        // pr kills A: for ζ ∈ A the A*-component of α vanishes.
        let xi = vec![rat(1, 1), rat(0, 1), rat(0, 1), rat(0, 1)];
        let image = fiber.alpha(&xi);
        assert_eq!(&image[2..], &[rat(0, 1), rat(0, 1)]);
        assert!(fiber.alpha_beta_duality_holds());
        assert!(fiber.core_anchor_square());
    }

    #[test]
    fn representation_identities_on_standard_fiber() {
        let fiber = standard_fiber(2);
        let datum = fiber.k_datum();
        let f = datum.element(Matrix::from_int_rows(&[&[1, 2], &[0, 1]])).unwrap();
        let report = fiber.equivariance_checks(&f);
        assert!(report.all_hold(), "{report:?}");
        assert!(fiber.ad_e(&datum.unit()).is_identity());
    }

    #[test]
    fn jet_sign_is_minus() {
        let fiber = standard_fiber(2);
        let datum = fiber.k_datum();
        let h = datum.algebra_element(Matrix::from_int_rows(&[&[1, -1], &[2, 0]])).unwrap();
        assert_eq!(fiber.ad_e_jet_sign(&h), Some(GeneratorSign::Minus));
        // v(h) = -u(h)* entrywise.
        let u = fiber.u_inf(&h);
        let j = fiber.space().form();
        let adjoint = &(&j.inverse().unwrap() * &u.transpose()) * j;
        assert_eq!(fiber.v_inf(&h), -&adjoint);
    }

    #[test]
    fn rum_relation_is_lagrangian_and_invariant() {
        let fiber = standard_fiber(2);
        let rel = fiber.rum_relation();
        assert!(rel.is_lagrangian().unwrap());
        let datum = fiber.k_datum();
        let f1 = datum.element(Matrix::from_int_rows(&[&[1, 0], &[1, 1]])).unwrap();
        let f2 = datum.element(Matrix::from_int_rows(&[&[0, 2], &[0, 0]])).unwrap();
        assert!(fiber.rum_invariance(&f1, &f2));
        assert!(fiber.rum_invariance(&datum.unit(), &datum.unit()));
    }

    #[test]
    fn complement_construction() {
        let e: MetrizedSpace<Rat> = MetrizedSpace::standard_split(2);
        // A twisted Lagrangian: graph of a skew map.
        let a = Subspace::span(
            4,
            vec![
                vec![rat(1, 1), rat(0, 1), rat(0, 1), rat(1, 1)],
                vec![rat(0, 1), rat(1, 1), rat(-1, 1), rat(0, 1)],
            ],
        );
        let c = lagrangian_complement(&e, &a).unwrap();
        assert!(c.is_lagrangian(&e).unwrap());
        assert!(a.intersect(&c).unwrap().is_zero());
        assert_eq!(a.sum(&c).unwrap().dim(), 4);
    }
}

//! The fat group of a core-anchor datum `ρ: C -> B`, with its product,
//! inverse, adjoint actions, translations, dual pairing, and Lie algebra.
//!
//! Elements are maps `f: B -> C` with `id_B + ρ∘f` invertible; the group law
//! is `f1·f2 = f1 + f2 + f2∘ρ∘f1`.

use crate::error::{Error, Result};
use crate::jet::JetMatrix;
use crate::matrix::{vec_add, vec_concat, Matrix, Vector};
use crate::scalar::Scalar;

/// The datum: spaces `C` (dim `c`) and `B` (dim `b`) with `ρ: C -> B`.
#[derive(Clone, PartialEq, Debug)]
pub struct CoreAnchorDatum<S: Scalar> {
    dim_c: usize,
    dim_b: usize,
    rho: Matrix<S>,
}

/// Group element `f: B -> C`, stored as a `c × b` matrix.
#[derive(Clone, PartialEq, Debug)]
pub struct KElement<S: Scalar> {
    pub f: Matrix<S>,
}

/// Lie algebra element `h: B -> C` (no invertibility constraint).
#[derive(Clone, PartialEq, Debug)]
pub struct KAlgebraElement<S: Scalar> {
    pub h: Matrix<S>,
}

/// Element of `C ⊕ B`.
#[derive(Clone, PartialEq, Debug)]
pub struct JElement<S: Scalar> {
    pub c: Vector<S>,
    pub b: Vector<S>,
}

/// Element of the dual fiber `B* ⊕ C*`.
#[derive(Clone, PartialEq, Debug)]
pub struct DualElement<S: Scalar> {
    pub b_star: Vector<S>,
    pub c_star: Vector<S>,
}

impl<S: Scalar> CoreAnchorDatum<S> {
    pub fn new(rho: Matrix<S>) -> Self {
        CoreAnchorDatum { dim_c: rho.cols(), dim_b: rho.rows(), rho }
    }

    pub fn dim_c(&self) -> usize {
        self.dim_c
    }

    pub fn dim_b(&self) -> usize {
        self.dim_b
    }

    pub fn rho(&self) -> &Matrix<S> {
        &self.rho
    }

    /// Wrap a candidate map, checking the invertibility invariant.
    pub fn element(&self, f: Matrix<S>) -> Result<KElement<S>> {
        if f.rows() != self.dim_c || f.cols() != self.dim_b {
            return Err(Error::DimMismatch(format!(
                "fat group element must be {}x{}, got {}x{}",
                self.dim_c,
                self.dim_b,
                f.rows(),
                f.cols()
            )));
        }
        let id_plus = &Matrix::identity(self.dim_b) + &(&self.rho * &f);
        if !id_plus.is_invertible() {
            return Err(Error::NotInFatGroup);
        }
        Ok(KElement { f })
    }

    pub fn unit(&self) -> KElement<S> {
        KElement { f: Matrix::zeros(self.dim_c, self.dim_b) }
    }

    pub fn algebra_element(&self, h: Matrix<S>) -> Result<KAlgebraElement<S>> {
        if h.rows() != self.dim_c || h.cols() != self.dim_b {
            return Err(Error::DimMismatch("k algebra element shape".into()));
        }
        Ok(KAlgebraElement { h })
    }

    /// Group product `f1·f2 = f1 + f2 + f2∘ρ∘f1`. Closure is a theorem and
    /// is asserted.
    pub fn k_mul(&self, f1: &KElement<S>, f2: &KElement<S>) -> KElement<S> {
        let product = &(&f1.f + &f2.f) + &(&(&f2.f * &self.rho) * &f1.f);
        self.element(product).expect("fat group is closed under the product")
    }

    /// Inverse `-f ∘ (id_B + ρ∘f)^{-1}`.
    pub fn k_inv(&self, f: &KElement<S>) -> KElement<S> {
        let id_plus = &Matrix::identity(self.dim_b) + &(&self.rho * &f.f);
        let inv = id_plus.inverse().expect("fat group invariant");
        KElement { f: -&(&f.f * &inv) }
    }

    /// Adjoint action on `B`: `(id_B + ρ∘f)^{-1}`.
    pub fn ad_b(&self, f: &KElement<S>) -> Matrix<S> {
        (&Matrix::identity(self.dim_b) + &(&self.rho * &f.f))
            .inverse()
            .expect("fat group invariant")
    }

    /// Adjoint action on `C`: `(id_C + f∘ρ)^{-1}`.
    pub fn ad_c(&self, f: &KElement<S>) -> Matrix<S> {
        (&Matrix::identity(self.dim_c) + &(&f.f * &self.rho))
            .inverse()
            .expect("fat group invariant")
    }

    /// Adjoint action on `B*`: `id + f*∘ρ*`, equal to `((Ad^B_f)^{-1})*`.
    pub fn ad_b_star(&self, f: &KElement<S>) -> Matrix<S> {
        &Matrix::identity(self.dim_b) + &(&f.f.transpose() * &self.rho.transpose())
    }

    /// Adjoint action on `C*`: `id + ρ*∘f*`.
    pub fn ad_c_star(&self, f: &KElement<S>) -> Matrix<S> {
        &Matrix::identity(self.dim_c) + &(&self.rho.transpose() * &f.f.transpose())
    }

    /// Source and target of the trivial-base fiber groupoid `C ⊕ B ⇉ B`:
    /// `t(c, b) = b`, `s(c, b) = b + ρ(c)`.
    pub fn source(&self, z: &JElement<S>) -> Vector<S> {
        vec_add(&z.b, &self.rho.apply(&z.c))
    }

    pub fn target(&self, z: &JElement<S>) -> Vector<S> {
        z.b.clone()
    }

    /// Groupoid multiplication `(c1, b1)∘(c2, b2) = (c1 + c2, b1)` of
    /// composable elements (`s(z1) = t(z2)`).
    pub fn j_compose(&self, z1: &JElement<S>, z2: &JElement<S>) -> Result<JElement<S>> {
        let gap = crate::matrix::vec_sub(&self.source(z1), &self.target(z2));
        if !crate::matrix::vec_is_zero(&gap) {
            return Err(Error::SpaceMismatch("non-composable fiber elements".into()));
        }
        Ok(JElement { c: vec_add(&z1.c, &z2.c), b: z1.b.clone() })
    }

    /// Left translation `l_f(c + b) = c + Ad^C_f f(b) + Ad^B_f b`.
    pub fn left_translate(&self, f: &KElement<S>, z: &JElement<S>) -> JElement<S> {
        let adc = self.ad_c(f);
        let adb = self.ad_b(f);
        JElement {
            c: vec_add(&z.c, &adc.apply(&f.f.apply(&z.b))),
            b: adb.apply(&z.b),
        }
    }

    /// Inverse right translation `r_f^{-1}(c + b) = Ad^C_f (c - f(b)) + b`.
    pub fn right_translate_inv(&self, f: &KElement<S>, z: &JElement<S>) -> JElement<S> {
        let adc = self.ad_c(f);
        let shifted = crate::matrix::vec_sub(&z.c, &f.f.apply(&z.b));
        JElement { c: adc.apply(&shifted), b: z.b.clone() }
    }

    /// Matrix of `l_f` on `C ⊕ B` in the block coordinates `(c, b)`.
    pub fn left_translate_matrix(&self, f: &KElement<S>) -> Matrix<S> {
        let adc = self.ad_c(f);
        let adb = self.ad_b(f);
        let top = Matrix::identity(self.dim_c).hstack(&(&adc * &f.f));
        let bottom = Matrix::zeros(self.dim_b, self.dim_c).hstack(&adb);
        top.vstack(&bottom)
    }

    /// Matrix of `r_f^{-1}` on `C ⊕ B`.
    pub fn right_translate_inv_matrix(&self, f: &KElement<S>) -> Matrix<S> {
        let adc = self.ad_c(f);
        let top = adc.hstack(&(-&(&adc * &f.f)));
        let bottom = Matrix::zeros(self.dim_b, self.dim_c).hstack(&Matrix::identity(self.dim_b));
        top.vstack(&bottom)
    }

    /// Dual pairing `<γ + β, c + b> = <γ, c> + <β, b> + <β, ρ(c)>` between
    /// `B* ⊕ C*` and `C ⊕ B`.
    pub fn dual_pairing(&self, tau: &DualElement<S>, z: &JElement<S>) -> Result<S> {
        if tau.c_star.len() != self.dim_c
            || tau.b_star.len() != self.dim_b
            || z.c.len() != self.dim_c
            || z.b.len() != self.dim_b
        {
            return Err(Error::DimMismatch("dual pairing shapes".into()));
        }
        Ok(crate::matrix::dot(&tau.c_star, &z.c)
            + crate::matrix::dot(&tau.b_star, &z.b)
            + crate::matrix::dot(&tau.b_star, &self.rho.apply(&z.c)))
    }

    /// Left translation on the dual fiber:
    /// `l_f(β + γ) = (β - f*γ) + Ad^{C*}_f γ`.
    pub fn dual_left_translate(&self, f: &KElement<S>, tau: &DualElement<S>) -> DualElement<S> {
        let fstar = f.f.transpose();
        DualElement {
            b_star: crate::matrix::vec_sub(&tau.b_star, &fstar.apply(&tau.c_star)),
            c_star: self.ad_c_star(f).apply(&tau.c_star),
        }
    }

    /// Inverse right translation on the dual fiber:
    /// `r_f^{-1}(β + γ) = (Ad^{B*}_f β + f*γ) + γ`.
    pub fn dual_right_translate_inv(
        &self,
        f: &KElement<S>,
        tau: &DualElement<S>,
    ) -> DualElement<S> {
        let fstar = f.f.transpose();
        DualElement {
            b_star: vec_add(&self.ad_b_star(f).apply(&tau.b_star), &fstar.apply(&tau.c_star)),
            c_star: tau.c_star.clone(),
        }
    }

    /// Lie algebra bracket `[h1, h2] = h2∘ρ∘h1 - h1∘ρ∘h2`.
    pub fn k_bracket(&self, h1: &KAlgebraElement<S>, h2: &KAlgebraElement<S>) -> KAlgebraElement<S> {
        KAlgebraElement {
            h: &(&(&h2.h * &self.rho) * &h1.h) - &(&(&h1.h * &self.rho) * &h2.h),
        }
    }

    /// Infinitesimal action on `B`: `ad^B_h = -ρ∘h`.
    pub fn ad_b_inf(&self, h: &KAlgebraElement<S>) -> Matrix<S> {
        -&(&self.rho * &h.h)
    }

    /// Infinitesimal action on `C`: `ad^C_h = -h∘ρ`.
    pub fn ad_c_inf(&self, h: &KAlgebraElement<S>) -> Matrix<S> {
        -&(&h.h * &self.rho)
    }

    /// First-order jet of `Ad^B` along `f = δ·h`, as a jet matrix.
    pub fn ad_b_jet(&self, h: &KAlgebraElement<S>) -> Result<JetMatrix<S>> {
        JetMatrix::identity_plus_delta(&(&self.rho * &h.h)).inverse()
    }

    /// The product in the alternative form `f1 + f2∘(id_B + ρ∘f1)`; agrees
    /// with `k_mul` algebraically and is asserted equal in tests.
    pub fn k_mul_composed_form(&self, f1: &KElement<S>, f2: &KElement<S>) -> KElement<S> {
        let id_plus = &Matrix::identity(self.dim_b) + &(&self.rho * &f1.f);
        self.element(&f1.f + &(&f2.f * &id_plus))
            .expect("fat group is closed under the product")
    }
}

impl<S: Scalar> JElement<S> {
    pub fn new(c: Vector<S>, b: Vector<S>) -> Self {
        JElement { c, b }
    }

    pub fn flat(&self) -> Vector<S> {
        vec_concat(&[&self.c, &self.b])
    }
}

impl<S: Scalar> DualElement<S> {
    pub fn new(b_star: Vector<S>, c_star: Vector<S>) -> Self {
        DualElement { b_star, c_star }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, Rat};

    fn scalar_datum(rho: i64) -> CoreAnchorDatum<Rat> {
        CoreAnchorDatum::new(Matrix::from_int_rows(&[&[rho]]))
    }

    #[test]
    fn zero_rho_is_additive() {
        let d = scalar_datum(0);
        let f1 = d.element(Matrix::from_int_rows(&[&[5]])).unwrap();
        let f2 = d.element(Matrix::from_int_rows(&[&[7]])).unwrap();
        assert_eq!(d.k_mul(&f1, &f2).f[(0, 0)], rat(12, 1));
        assert_eq!(d.k_inv(&f1).f[(0, 0)], rat(-5, 1));
        assert!(d.ad_b(&f1).is_identity());
        assert!(d.ad_c(&f1).is_identity());
    }

    #[test]
    fn unit_is_neutral() {
        let d = scalar_datum(1);
        let f = d.element(Matrix::from_int_rows(&[&[3]])).unwrap();
        assert_eq!(d.k_mul(&f, &d.unit()), f);
        assert_eq!(d.k_mul(&d.unit(), &f), f);
        assert_eq!(d.k_inv(&d.unit()), d.unit());
    }

    #[test]
    fn scalar_product_and_inverse() {
        let d = scalar_datum(1);
        let one = d.element(Matrix::from_int_rows(&[&[1]])).unwrap();
        // 1·1 = 1 + 1 + 1 = 3, and Ad^B is a homomorphism onto (1+f)^{-1}.
        let prod = d.k_mul(&one, &one);
        assert_eq!(prod.f[(0, 0)], rat(3, 1));
        assert_eq!(d.ad_b(&prod)[(0, 0)], rat(1, 4));
        let ad1 = d.ad_b(&one);
        assert_eq!((&ad1 * &ad1)[(0, 0)], rat(1, 4));
        // Inv(1) = -1/2, and 1·(-1/2) = 1 - 1/2 - 1/2 = 0.
        let inv = d.k_inv(&one);
        assert_eq!(inv.f[(0, 0)], rat(-1, 2));
        assert!(d.k_mul(&one, &inv).f.is_zero());
        assert!(d.k_mul(&inv, &one).f.is_zero());
    }

    #[test]
    fn gl_identification_when_rho_is_id() {
        // C = B, ρ = id: Ad^B_f = (id + f)^{-1}.
        let d: CoreAnchorDatum<Rat> = CoreAnchorDatum::new(Matrix::identity(2));
        let f = d.element(Matrix::from_int_rows(&[&[1, 2], &[0, 1]])).unwrap();
        let expected = (&Matrix::identity(2) + &f.f).inverse().unwrap();
        assert_eq!(d.ad_b(&f), expected);
    }

    #[test]
    fn left_translation_example() {
        // ρ = 1 = f, (c,b) = (0,1): l_f = (1/2, 1/2) and the source is fixed.
        let d = scalar_datum(1);
        let f = d.element(Matrix::from_int_rows(&[&[1]])).unwrap();
        let z = JElement::new(vec![rat(0, 1)], vec![rat(1, 1)]);
        let lz = d.left_translate(&f, &z);
        assert_eq!(lz.c, vec![rat(1, 2)]);
        assert_eq!(lz.b, vec![rat(1, 2)]);
        assert_eq!(d.source(&lz), d.source(&z));
        // Core fixed at b = 0.
        let core = JElement::new(vec![rat(4, 1)], vec![rat(0, 1)]);
        assert_eq!(d.left_translate(&f, &core), core);
        // l_0 = id.
        assert_eq!(d.left_translate(&d.unit(), &z), z);
    }

    #[test]
    fn dual_pairing_examples() {
        let d = scalar_datum(1);
        let tau = DualElement::new(vec![rat(3, 1)], vec![rat(0, 1)]);
        let z = JElement::new(vec![rat(2, 1)], vec![rat(5, 1)]);
        // β(b + c) with β = 3: 3·(5 + 2) = 21.
        assert_eq!(d.dual_pairing(&tau, &z).unwrap(), rat(21, 1));
        let d0 = scalar_datum(0);
        assert_eq!(d0.dual_pairing(&tau, &z).unwrap(), rat(15, 1));
        let gamma_only = DualElement::new(vec![rat(0, 1)], vec![rat(7, 1)]);
        let core = JElement::new(vec![rat(2, 1)], vec![rat(0, 1)]);
        assert_eq!(d.dual_pairing(&gamma_only, &core).unwrap(), rat(14, 1));
    }

    #[test]
    fn bracket_is_zero_on_equal_arguments() {
        let d = scalar_datum(1);
        let h = d.algebra_element(Matrix::from_int_rows(&[&[5]])).unwrap();
        assert!(d.k_bracket(&h, &h).h.is_zero());
        let h1 = d.algebra_element(Matrix::from_int_rows(&[&[1]])).unwrap();
        let h2 = d.algebra_element(Matrix::from_int_rows(&[&[2]])).unwrap();
        // Scalars commute: 2·1·1 - 1·1·2 = 0.
        assert!(d.k_bracket(&h1, &h2).h.is_zero());
    }

    #[test]
    fn jet_of_ad_b_matches_infinitesimal_action() {
        let d = CoreAnchorDatum::<Rat>::new(Matrix::from_int_rows(&[&[1, 0], &[2, 1]]));
        let h = d
            .algebra_element(Matrix::from_int_rows(&[&[1, 3], &[0, -1]]))
            .unwrap();
        let jet = d.ad_b_jet(&h).unwrap();
        assert!(jet.base.is_identity());
        assert_eq!(jet.slope, d.ad_b_inf(&h));
    }
}

//! The integration relation over a point: the trivialized fiber groupoid of
//! `TG ⊕ T*G`, the relation `R_g` to the pair of the double, the canonical
//! trivial-base comorphism, bivector extraction from Lagrangian
//! complements, and the jet checks for the invariant-field brackets.
//!
//! Fiber coordinates are `(ξ, τ) ∈ g ⊕ g*` in left trivialization, with
//! `s(g, ξ, τ) = τ` and `t(g, ξ, τ) = Ad_g τ`.

use crate::error::{Error, Result};
use crate::fatgroup::CoreAnchorDatum;
use crate::jet::{JetMatrix, JetVector};
use crate::liealg::{pivot_coords, GroupElement, ManinTriple};
use crate::matrix::{vec_add, vec_concat, vec_is_zero, vec_neg, vec_sub, Matrix, Vector};
use crate::metrized::MetrizedSpace;
use crate::relation::LinearRelation;
use crate::scalar::Scalar;
use crate::subspace::Subspace;

/// Element of the trivialized fiber at `g`: coordinates `(ξ, τ)` with
/// `ξ ∈ g` and `τ ∈ g*` in the basis dual to the canonical basis of `g`.
#[derive(Clone, PartialEq, Debug)]
pub struct TgElement<S: Scalar> {
    pub g: GroupElement<S>,
    pub xi: Vector<S>,
    pub tau: Vector<S>,
}

/// The relation `R_g` from the fiber at `g` to `Pair(d)`, kept together
/// with its group element.
#[derive(Clone, PartialEq, Debug)]
pub struct IntegrationRelation<S: Scalar> {
    pub relation: LinearRelation<S>,
    pub g: GroupElement<S>,
}

/// Outcome of the infinitesimal-relation construction: the relation itself
/// plus whether it is Lagrangian for the candidate tangent-lift metric
/// (reported, not asserted).
#[derive(Clone, Debug)]
pub struct R0Report<S: Scalar> {
    pub relation: LinearRelation<S>,
    pub lagrangian_under_candidate_metric: bool,
}

/// The fiber space `g ⊕ g*` with the duality pairing.
pub fn tg_space<S: Scalar>(triple: &ManinTriple<S>) -> MetrizedSpace<S> {
    MetrizedSpace::standard_split(triple.half_dim())
}

/// `Pair(d) = d ⊕ d-reversed`.
pub fn pair_space<S: Scalar>(triple: &ManinTriple<S>) -> MetrizedSpace<S> {
    triple.double.metric.direct_sum(&triple.double.metric.reversed())
}

/// Restriction of `Ad_g` to the Lagrangian, in its canonical basis.
pub fn ad_on_lagrangian<S: Scalar>(
    triple: &ManinTriple<S>,
    g: &GroupElement<S>,
) -> Result<Matrix<S>> {
    g.restrict(&triple.lagrangian)
}

/// Coadjoint action on `g*` in the dual basis: `(N_g^T)^{-1}`.
pub fn coad_on_dual<S: Scalar>(triple: &ManinTriple<S>, g: &GroupElement<S>) -> Result<Matrix<S>> {
    Ok(ad_on_lagrangian(triple, g)?.transpose().inverse()?)
}

pub fn tg_source<S: Scalar>(x: &TgElement<S>) -> Vector<S> {
    x.tau.clone()
}

pub fn tg_target<S: Scalar>(triple: &ManinTriple<S>, x: &TgElement<S>) -> Result<Vector<S>> {
    Ok(coad_on_dual(triple, &x.g)?.apply(&x.tau))
}

pub fn tg_unit<S: Scalar>(triple: &ManinTriple<S>, tau: Vector<S>) -> TgElement<S> {
    TgElement {
        g: GroupElement::identity(triple.dim()),
        xi: vec![S::zero(); triple.half_dim()],
        tau,
    }
}

/// Groupoid product of composable elements (`s(x1) = t(x2)`):
/// `(g1 g2, Ad_{g2^{-1}} ξ1 + ξ2, τ2)`.
pub fn tg_compose<S: Scalar>(
    triple: &ManinTriple<S>,
    x1: &TgElement<S>,
    x2: &TgElement<S>,
) -> Result<TgElement<S>> {
    let gap = vec_sub(&tg_source(x1), &tg_target(triple, x2)?);
    if !vec_is_zero(&gap) {
        return Err(Error::SpaceMismatch(
            "fiber elements are not composable: s(x1) != t(x2)".into(),
        ));
    }
    let n2_inv = ad_on_lagrangian(triple, &x2.g)?.inverse()?;
    Ok(TgElement {
        g: x1.g.compose(&x2.g),
        xi: vec_add(&n2_inv.apply(&x1.xi), &x2.xi),
        tau: x2.tau.clone(),
    })
}

/// Groupoid inverse: `(g^{-1}, -Ad_g ξ, Ad_g τ)`.
pub fn tg_inverse<S: Scalar>(triple: &ManinTriple<S>, x: &TgElement<S>) -> Result<TgElement<S>> {
    let n = ad_on_lagrangian(triple, &x.g)?;
    let coad = coad_on_dual(triple, &x.g)?;
    Ok(TgElement {
        g: x.g.inverse()?,
        xi: vec_neg(&n.apply(&x.xi)),
        tau: coad.apply(&x.tau),
    })
}

/// Defining linear conditions of `R_g` on `(ζ', ζ, ξ, τ)`, in four blocks:
/// the left- and right-translated core conditions and the source- and
/// target-side unit conditions. Any (core, unit) pair cuts out `R_g`.
struct RConditions<S: Scalar> {
    core_left: Matrix<S>,
    core_right: Matrix<S>,
    unit_source: Matrix<S>,
    unit_target: Matrix<S>,
}

fn r_conditions<S: Scalar>(triple: &ManinTriple<S>, g: &GroupElement<S>) -> Result<RConditions<S>> {
    let n = triple.dim();
    let k = triple.half_dim();
    let iota = triple.iota_g();
    let pr = triple.pr_g_star();
    let m_inv = g.matrix.inverse()?;
    let coad = coad_on_dual(triple, g)?;
    // ζ - Ad_{g^{-1}} ζ' - ι ξ = 0.
    let core_left = (-&m_inv)
        .hstack(&Matrix::identity(n))
        .hstack(&(-&iota))
        .hstack(&Matrix::zeros(n, k));
    // Ad_g ζ - ζ' - Ad_g ι ξ = 0 (the right-translated form).
    let core_right = Matrix::identity(n)
        .hstack(&(-&g.matrix))
        .hstack(&(&g.matrix * &iota))
        .hstack(&Matrix::zeros(n, k));
    // τ + pr ζ = 0 (source form).
    let unit_source = Matrix::zeros(k, n)
        .hstack(&pr)
        .hstack(&Matrix::zeros(k, k))
        .hstack(&Matrix::identity(k));
    // Ad_g τ + pr ζ' = 0 (target form).
    let unit_target = pr
        .hstack(&Matrix::zeros(k, n))
        .hstack(&Matrix::zeros(k, k))
        .hstack(&coad);
    Ok(RConditions { core_left, core_right, unit_source, unit_target })
}

/// Build `R_g`: the span of `(0, σ, σ, 0)` for `σ ∈ g` and
/// `(Ad_g ζ, ζ, 0, -pr ζ)` for `ζ ∈ d`, from the fiber at `g` to
/// `Pair(d)`. The membership constraint `ζ - Ad_{g^{-1}} ζ' ∈ g` implicit
/// in the span is asserted by cross-checking against the cut-out form.
pub fn build_r<S: Scalar>(
    triple: &ManinTriple<S>,
    g: &GroupElement<S>,
) -> Result<IntegrationRelation<S>> {
    g.validate(triple)?;
    let n = triple.dim();
    let k = triple.half_dim();
    let iota = triple.iota_g();
    let pr = triple.pr_g_star();
    let mut vs = Vec::new();
    for i in 0..k {
        let mut xi = vec![S::zero(); k];
        xi[i] = S::one();
        let sigma = iota.apply(&xi);
        vs.push(vec_concat(&[&vec![S::zero(); n], &sigma, &xi, &vec![S::zero(); k]]));
    }
    for j in 0..n {
        let mut zeta = vec![S::zero(); n];
        zeta[j] = S::one();
        let target_side = g.matrix.apply(&zeta);
        let tau = vec_neg(&pr.apply(&zeta));
        vs.push(vec_concat(&[&target_side, &zeta, &vec![S::zero(); k], &tau]));
    }
    let graph = Subspace::span(2 * n + 2 * k, vs);
    if graph.dim() != 3 * k {
        return Err(Error::Invariant(format!(
            "relation span has dimension {}, expected {}",
            graph.dim(),
            3 * k
        )));
    }
    let conds = r_conditions(triple, g)?;
    let cut = Subspace::solution_space(conds.core_left.vstack(&conds.unit_source));
    if !graph.equiv(&cut) {
        return Err(Error::Invariant(
            "span and cut-out descriptions of the relation disagree".into(),
        ));
    }
    let relation = LinearRelation::new(tg_space(triple), pair_space(triple), graph)?;
    Ok(IntegrationRelation { relation, g: g.clone() })
}

/// The left/right-translated defining conditions cut out the same subspace,
/// and on the relation the source- and target-side unit conditions agree.
pub fn check_alt_form<S: Scalar>(triple: &ManinTriple<S>, rel: &IntegrationRelation<S>) -> Result<bool> {
    let conds = r_conditions(triple, &rel.g)?;
    let left = Subspace::solution_space(conds.core_left.clone());
    let right = Subspace::solution_space(conds.core_right.clone());
    if !left.equiv(&right) {
        return Ok(false);
    }
    let via_source = Subspace::solution_space(conds.core_left.vstack(&conds.unit_source));
    let via_target = Subspace::solution_space(conds.core_right.vstack(&conds.unit_target));
    Ok(via_source.equiv(&via_target) && via_source.equiv(rel.relation.graph()))
}

/// Groupoid composition of `R_{g1}` and `R_{g2}` equals `R_{g1 g2}`:
/// compose fiber elements by the groupoid product and pair elements by
/// `(ζ', ζ) ∘ (ζ, ζ'') = (ζ', ζ'')` over all composable pairs.
pub fn check_subgroupoid<S: Scalar>(
    triple: &ManinTriple<S>,
    g1: &GroupElement<S>,
    g2: &GroupElement<S>,
) -> Result<bool> {
    let r1 = build_r(triple, g1)?;
    let r2 = build_r(triple, g2)?;
    let r12 = build_r(triple, &g1.compose(g2))?;
    let composed = compose_r_graphs(triple, &r1, &r2, g2)?;
    Ok(composed.equiv(r12.relation.graph()))
}

fn compose_r_graphs<S: Scalar>(
    triple: &ManinTriple<S>,
    r1: &IntegrationRelation<S>,
    r2: &IntegrationRelation<S>,
    g2: &GroupElement<S>,
) -> Result<Subspace<S>> {
    let n = triple.dim();
    let k = triple.half_dim();
    let w = 2 * n + 2 * k;
    // Variables (w1, w2) with w_i = (ζ'_i, ζ_i, ξ_i, τ_i).
    let m1 = r1.relation.graph().annihilator_equations();
    let m2 = r2.relation.graph().annihilator_equations();
    let mut eqs = m1.hstack(&Matrix::zeros(m1.rows(), w));
    eqs = eqs.vstack(&Matrix::zeros(m2.rows(), w).hstack(&m2));
    // Gluing on the pair side: ζ_1 = ζ'_2.
    let mut glue_pair = Matrix::zeros(n, 2 * w);
    for i in 0..n {
        glue_pair[(i, n + i)] = S::one();
        glue_pair[(i, w + i)] = -S::one();
    }
    eqs = eqs.vstack(&glue_pair);
    // Composability on the fiber side: τ_1 = Ad_{g2} τ_2.
    let coad2 = coad_on_dual(triple, g2)?;
    let mut glue_fiber = Matrix::zeros(k, 2 * w);
    for i in 0..k {
        glue_fiber[(i, 2 * n + k + i)] = S::one();
        for j in 0..k {
            glue_fiber[(i, w + 2 * n + k + j)] = -coad2[(i, j)].clone();
        }
    }
    eqs = eqs.vstack(&glue_fiber);
    let fiber_product = Subspace::solution_space(eqs);
    // Project to (ζ'_1, ζ_2, Ad_{g2^{-1}} ξ1 + ξ2, τ_2).
    let n2_inv = ad_on_lagrangian(triple, g2)?.inverse()?;
    let vs = fiber_product
        .basis()
        .iter()
        .map(|v| {
            let zeta1p = &v[..n];
            let xi1 = &v[2 * n..2 * n + k];
            let zeta2 = &v[w + n..w + 2 * n];
            let xi2 = &v[w + 2 * n..w + 2 * n + k];
            let tau2 = &v[w + 2 * n + k..];
            let xi = vec_add(&n2_inv.apply(xi1), xi2);
            vec_concat(&[zeta1p, zeta2, &xi, tau2])
        })
        .collect();
    Ok(Subspace::span(w, vs))
}

/// Morphism conditions for `R_g`: the forward image of the tangent part
/// `g ⊕ 0` lands in `g × g`, and the kernel meets the tangent part
/// trivially.
pub fn check_manin_morphism_r<S: Scalar>(
    triple: &ManinTriple<S>,
    rel: &IntegrationRelation<S>,
) -> Result<bool> {
    let k = triple.half_dim();
    let a1 = Subspace::coordinate(2 * k, &(0..k).collect::<Vec<_>>());
    let a2 = triple.lagrangian.direct_sum(&triple.lagrangian);
    rel.relation.is_manin_morphism(&a1, &a2)
}

/// The tangent part of `R_g` is `{(τ, σ, σ - Ad_{g^{-1}} τ, 0)}`.
pub fn tangent_consistency<S: Scalar>(
    triple: &ManinTriple<S>,
    rel: &IntegrationRelation<S>,
) -> Result<bool> {
    let n = triple.dim();
    let k = triple.half_dim();
    let iota = triple.iota_g();
    let n_inv = ad_on_lagrangian(triple, &rel.g)?.inverse()?;
    let mut vs = Vec::new();
    for i in 0..k {
        let mut sigma = vec![S::zero(); k];
        sigma[i] = S::one();
        vs.push(vec_concat(&[
            &vec![S::zero(); n],
            &iota.apply(&sigma),
            &sigma,
            &vec![S::zero(); k],
        ]));
        // τ-family: (τ, 0, -Ad_{g^{-1}} τ, 0).
        vs.push(vec_concat(&[
            &iota.apply(&sigma),
            &vec![S::zero(); n],
            &vec_neg(&n_inv.apply(&sigma)),
            &vec![S::zero(); k],
        ]));
    }
    let expected = Subspace::span(2 * n + 2 * k, vs);
    let window = triple
        .lagrangian
        .direct_sum(&triple.lagrangian)
        .direct_sum(&Subspace::full(k))
        .direct_sum(&Subspace::zero(k));
    let tangent_part = rel.relation.graph().intersect(&window)?;
    Ok(tangent_part.equiv(&expected))
}

/// The canonical comorphism of a trivial-base fiber `C ⊕ B ⇉ B`: the
/// relation `x ~ (ζ', ζ)` iff `x = (ζ - ζ', ρ ζ')`, from the fiber to
/// `Pair(C)`. The construction asserts the target/core oracle
/// `t(x) = ρ(ζ')`, `s(x) = ρ(ζ)`, `[x] = ζ - ζ'` on the spanning set.
pub fn build_s_trivial_base<S: Scalar>(datum: &CoreAnchorDatum<S>) -> Result<LinearRelation<S>> {
    let c = datum.dim_c();
    let b = datum.dim_b();
    let mut vs = Vec::new();
    for i in 0..c {
        let mut zp = vec![S::zero(); c];
        zp[i] = S::one();
        // (ζ', 0) gives x = (-ζ', ρζ').
        vs.push(vec_concat(&[&zp, &vec![S::zero(); c], &vec_neg(&zp), &datum.rho().apply(&zp)]));
        // (0, ζ) gives x = (ζ, 0).
        vs.push(vec_concat(&[&vec![S::zero(); c], &zp, &zp, &vec![S::zero(); b]]));
    }
    for v in &vs {
        let zeta_p = &v[..c];
        let zeta = &v[c..2 * c];
        let x_core = &v[2 * c..3 * c];
        let x_base = &v[3 * c..];
        let t = x_base.to_vec();
        let s = vec_add(x_base, &datum.rho().apply(x_core));
        if !vec_is_zero(&vec_sub(&t, &datum.rho().apply(zeta_p)))
            || !vec_is_zero(&vec_sub(&s, &datum.rho().apply(zeta)))
            || !vec_is_zero(&vec_sub(x_core, &vec_sub(zeta, zeta_p)))
        {
            return Err(Error::Invariant("trivial-base comorphism oracle failed".into()));
        }
    }
    let source = MetrizedSpace::plain(c + b);
    let target = MetrizedSpace::plain(2 * c);
    LinearRelation::new(source, target, Subspace::span(2 * c + c + b, vs))
}

/// Evaluate the invariant-field bracket relations at a point via exact
/// first-order jets: with fields in left trivialization, check
/// `[σ^L, τ^L] = [σ, τ]^L`, `[σ^R, τ^R] = -[σ, τ]^R`, `[σ^L, τ^R] = 0`
/// at the group element `g`, where `σ^L` is constant and
/// `τ^R(g) = Ad_{g^{-1}} τ`.
pub fn bracket_relations_jet<S: Scalar>(
    triple: &ManinTriple<S>,
    g: &GroupElement<S>,
    sigma: &[S],
    tau: &[S],
) -> Result<bool> {
    let k = triple.half_dim();
    if sigma.len() != k || tau.len() != k {
        return Err(Error::DimMismatch("field arguments must live in g".into()));
    }
    let iota = triple.iota_g();
    let coords = triple.g_coords();
    let bracket_g = |x: &[S], y: &[S]| -> Result<Vector<S>> {
        let full = triple.double.algebra.bracket(&iota.apply(x), &iota.apply(y))?;
        Ok(coords.apply(&full))
    };
    // Jet of the adjoint matrix along the flow g · exp(t v), v = ι(dir).
    let flow = |dir: &[S]| -> JetMatrix<S> {
        let ad_v = triple.double.algebra.ad(&iota.apply(dir));
        JetMatrix::new(g.matrix.clone(), &g.matrix * &ad_v)
    };
    // Field evaluations over the jet flow.
    let left_field = |val: &[S], _m: &JetMatrix<S>| -> Result<JetVector<S>> {
        Ok(JetVector::constant(val.to_vec()))
    };
    let right_field = |val: &[S], m: &JetMatrix<S>| -> Result<JetVector<S>> {
        // Ad_{g^{-1}} val restricted to g, over jets.
        let inv = m.inverse()?;
        let embedded = JetVector::constant(iota.apply(val));
        let moved = inv.apply(&embedded);
        Ok(JetVector {
            base: coords.apply(&moved.base),
            slope: coords.apply(&moved.slope),
        })
    };
    type Field<'a, S> = &'a dyn Fn(&JetMatrix<S>) -> Result<JetVector<S>>;
    let lie_bracket = |x: Field<S>, y: Field<S>| -> Result<Vector<S>> {
        let still = flow(&vec![S::zero(); k]);
        let x_at_g = x(&still)?.base;
        let y_at_g = y(&still)?.base;
        let dy = y(&flow(&x_at_g))?.slope;
        let dx = x(&flow(&y_at_g))?.slope;
        Ok(vec_add(&vec_sub(&dy, &dx), &bracket_g(&x_at_g, &y_at_g)?))
    };
    let sigma_l = |m: &JetMatrix<S>| left_field(sigma, m);
    let tau_l = |m: &JetMatrix<S>| left_field(tau, m);
    let sigma_r = |m: &JetMatrix<S>| right_field(sigma, m);
    let tau_r = |m: &JetMatrix<S>| right_field(tau, m);

    let bracket_st = bracket_g(sigma, tau)?;
    // [σ^L, τ^L] = [σ, τ]^L.
    let ll = lie_bracket(&sigma_l, &tau_l)?;
    if !vec_is_zero(&vec_sub(&ll, &bracket_st)) {
        return Ok(false);
    }
    // [σ^R, τ^R] = -[σ, τ]^R.
    let rr = lie_bracket(&sigma_r, &tau_r)?;
    let n_inv = ad_on_lagrangian(triple, g)?.inverse()?;
    if !vec_is_zero(&vec_add(&rr, &n_inv.apply(&bracket_st))) {
        return Ok(false);
    }
    // [σ^L, τ^R] = 0.
    let lr = lie_bracket(&sigma_l, &tau_r)?;
    Ok(vec_is_zero(&lr))
}

/// Extract the bivector at `g` from the Lagrangian complement `h` of the
/// triple: the backward image of `h × h` under `R_g` is a complement to
/// the tangent part and hence the graph of a skew map `g* -> g`.
pub fn extract_bivector<S: Scalar>(
    triple: &ManinTriple<S>,
    g: &GroupElement<S>,
) -> Result<Matrix<S>> {
    let h = triple
        .complement
        .as_ref()
        .ok_or_else(|| Error::Invariant("bivector extraction needs a complement".into()))?;
    let rel = build_r(triple, g)?;
    bivector_from_relation(triple, &rel, h)
}

fn bivector_from_relation<S: Scalar>(
    triple: &ManinTriple<S>,
    rel: &IntegrationRelation<S>,
    h: &Subspace<S>,
) -> Result<Matrix<S>> {
    let k = triple.half_dim();
    let image = rel.relation.backward_image(&h.direct_sum(h))?;
    let tangent = Subspace::coordinate(2 * k, &(0..k).collect::<Vec<_>>());
    if image.dim() != k || !image.intersect(&tangent)?.is_zero() {
        return Err(Error::NotAGraph(format!(
            "backward image of the complement is not complementary to the tangent part: dim {} basis {:?}",
            image.dim(),
            image.basis()
        )));
    }
    // Solve for the map τ ↦ ξ: basis matrix stacked as [X over T].
    let bm = image.basis_matrix();
    let x = bm.submatrix(0, 0, k, image.dim());
    let t = bm.submatrix(k, 0, k, image.dim());
    let t_inv = t.inverse().map_err(|_| {
        Error::NotAGraph("backward image does not project onto the cotangent factor".into())
    })?;
    let pi = &x * &t_inv;
    if !(&pi + &pi.transpose()).is_zero() {
        return Err(Error::Invariant(format!(
            "extracted bivector is not skew: residual {:.3e}",
            (&pi + &pi.transpose()).max_magnitude()
        )));
    }
    Ok(pi)
}

/// Multiplicativity of the extracted bivector: the groupoid composition of
/// `gr(π(g1))` and `gr(π(g2))` equals `gr(π(g1 g2))`.
pub fn check_bivector_multiplicative<S: Scalar>(
    triple: &ManinTriple<S>,
    g1: &GroupElement<S>,
    g2: &GroupElement<S>,
) -> Result<bool> {
    let k = triple.half_dim();
    let graph_of = |g: &GroupElement<S>| -> Result<Subspace<S>> {
        let pi = extract_bivector(triple, g)?;
        let mut vs = Vec::new();
        for i in 0..k {
            let mut tau = vec![S::zero(); k];
            tau[i] = S::one();
            vs.push(vec_concat(&[&pi.apply(&tau), &tau]));
        }
        Ok(Subspace::span(2 * k, vs))
    };
    let s1 = graph_of(g1)?;
    let s2 = graph_of(g2)?;
    let s12 = graph_of(&g1.compose(g2))?;
    // Fiber product of s1, s2 over τ_1 = Ad_{g2} τ_2, mapped through the
    // groupoid product.
    let m1 = s1.annihilator_equations();
    let m2 = s2.annihilator_equations();
    let mut eqs = m1.hstack(&Matrix::zeros(m1.rows(), 2 * k));
    eqs = eqs.vstack(&Matrix::zeros(m2.rows(), 2 * k).hstack(&m2));
    let coad2 = coad_on_dual(triple, g2)?;
    let mut glue = Matrix::zeros(k, 4 * k);
    for i in 0..k {
        glue[(i, k + i)] = S::one();
        for j in 0..k {
            glue[(i, 2 * k + k + j)] = -coad2[(i, j)].clone();
        }
    }
    eqs = eqs.vstack(&glue);
    let fiber_product = Subspace::solution_space(eqs);
    let n2_inv = ad_on_lagrangian(triple, g2)?.inverse()?;
    let vs = fiber_product
        .basis()
        .iter()
        .map(|v| {
            let xi1 = &v[..k];
            let xi2 = &v[2 * k..3 * k];
            let tau2 = &v[3 * k..];
            vec_concat(&[&vec_add(&n2_inv.apply(xi1), xi2), tau2])
        })
        .collect();
    Ok(Subspace::span(2 * k, vs).equiv(&s12))
}

/// The infinitesimal relation at a base point `a ∈ g`: from the fiber
/// `g ⊕ g*` to the flipped tangent double `d ⋊ d` with coordinates
/// `(ζ_v, ζ_t)`, spanned by `((ξ, 0), (ξ, 0))` for `ξ ∈ g` and
/// `((ad_a ζ, ζ), (0, pr ζ))` for `ζ ∈ d`. Lagrangian-ness is tested
/// against the candidate tangent-lift metric
/// `<(x_v, x_t), (y_v, y_t)> = <x_v, y_t> + <x_t, y_v>` and reported.
pub fn build_r0_point<S: Scalar>(triple: &ManinTriple<S>, a: &[S]) -> Result<R0Report<S>> {
    let n = triple.dim();
    let k = triple.half_dim();
    if a.len() != n {
        return Err(Error::DimMismatch("base point must live in the double".into()));
    }
    if !triple.lagrangian.contains(a) {
        return Err(Error::Invariant("base point must lie in g".into()));
    }
    let iota = triple.iota_g();
    let pr = triple.pr_g_star();
    let ad_a = triple.double.algebra.ad(a);
    let mut vs = Vec::new();
    for i in 0..k {
        let mut xi = vec![S::zero(); k];
        xi[i] = S::one();
        let embedded = iota.apply(&xi);
        vs.push(vec_concat(&[&embedded, &vec![S::zero(); n], &xi, &vec![S::zero(); k]]));
    }
    for j in 0..n {
        let mut zeta = vec![S::zero(); n];
        zeta[j] = S::one();
        vs.push(vec_concat(&[
            &ad_a.apply(&zeta),
            &zeta,
            &vec![S::zero(); k],
            &pr.apply(&zeta),
        ]));
    }
    let graph = Subspace::span(2 * n + 2 * k, vs);
    if graph.dim() != 3 * k {
        return Err(Error::Invariant(format!(
            "infinitesimal relation has dimension {}, expected {}",
            graph.dim(),
            3 * k
        )));
    }
    // Candidate tangent-lift metric on d ⋊ d.
    let j = triple.double.metric.form();
    let mut form = Matrix::zeros(2 * n, 2 * n);
    for r in 0..n {
        for c in 0..n {
            form[(r, n + c)] = j[(r, c)].clone();
            form[(n + r, c)] = j[(r, c)].clone();
        }
    }
    let target = MetrizedSpace::new(2 * n, form)?;
    let relation = LinearRelation::new(tg_space(triple), target, graph)?;
    let lagrangian = relation.is_lagrangian()?;
    Ok(R0Report { relation, lagrangian_under_candidate_metric: lagrangian })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::exp_ad;
    use crate::samples::{abelian_double, heisenberg_double};
    use crate::scalar::{rat, Rat};

    fn basis_vec(n: usize, i: usize) -> Vector<Rat> {
        let mut v = vec![Rat::from_int(0); n];
        v[i] = Rat::from_int(1);
        v
    }

    #[test]
    fn units_at_identity() {
        // For ζ ∈ g at g = e: (ζ, ζ, (0,0)) is in the relation.
        let t = heisenberg_double::<Rat>();
        let e = GroupElement::identity(6);
        let rel = build_r(&t, &e).unwrap();
        for b in t.lagrangian.basis() {
            let v = vec_concat(&[b, b, &vec![Rat::from_int(0); 6]]);
            assert!(rel.relation.graph().contains(&v));
        }
    }

    #[test]
    fn abelian_relation_shape() {
        // R = {(ζ', ζ, ζ - ζ', -pr ζ) : ζ - ζ' ∈ g} for the abelian double.
        let t = abelian_double::<Rat>(2);
        let e = GroupElement::identity(4);
        let rel = build_r(&t, &e).unwrap();
        assert_eq!(rel.relation.dim(), 6);
        assert!(rel.relation.is_lagrangian().unwrap());
        // ζ' = e3 (in g*), ζ = e3: ξ = 0, τ = -pr e3 = -(<e3, g_i>) = -e1*.
        let zeta = basis_vec(4, 2);
        let tau = vec![rat(-1, 1), rat(0, 1)];
        let v = vec_concat(&[&zeta, &zeta, &vec![rat(0, 1); 2], &tau]);
        assert!(rel.relation.graph().contains(&v));
        // ζ - ζ' ∉ g is excluded: ζ = e3, ζ' = 0 would need ξ = e3 ∉ g.
        let w = vec_concat(&[&vec![rat(0, 1); 4], &zeta, &vec![rat(0, 1); 2], &tau]);
        assert!(!rel.relation.graph().contains(&w));
    }

    #[test]
    fn heisenberg_relation_checks() {
        let t = heisenberg_double::<Rat>();
        let g = exp_ad(&t.double.algebra, &basis_vec(6, 0)).unwrap();
        let rel = build_r(&t, &g).unwrap();
        assert!(rel.relation.is_lagrangian().unwrap());
        assert!(check_alt_form(&t, &rel).unwrap());
        assert!(check_manin_morphism_r(&t, &rel).unwrap());
        assert!(tangent_consistency(&t, &rel).unwrap());
    }

    #[test]
    fn subgroupoid_law_heisenberg() {
        let t = heisenberg_double::<Rat>();
        let g1 = exp_ad(&t.double.algebra, &basis_vec(6, 0)).unwrap();
        let g2 = exp_ad(&t.double.algebra, &basis_vec(6, 1)).unwrap();
        assert!(check_subgroupoid(&t, &g1, &g2).unwrap());
        let e = GroupElement::identity(6);
        assert!(check_subgroupoid(&t, &e, &e).unwrap());
    }

    #[test]
    fn groupoid_axioms() {
        let t = heisenberg_double::<Rat>();
        let g = exp_ad(&t.double.algebra, &basis_vec(6, 1)).unwrap();
        let x = TgElement {
            g: g.clone(),
            xi: vec![rat(1, 1), rat(0, 1), rat(2, 1)],
            tau: vec![rat(1, 2), rat(1, 1), rat(0, 1)],
        };
        // unit ∘ x = x and x ∘ unit = x.
        let unit_left = tg_unit(&t, tg_target(&t, &x).unwrap());
        assert_eq!(tg_compose(&t, &unit_left, &x).unwrap(), x);
        let unit_right = tg_unit(&t, tg_source(&x));
        assert_eq!(tg_compose(&t, &x, &unit_right).unwrap(), x);
        // x ∘ x^{-1} = unit at t(x).
        let inv = tg_inverse(&t, &x).unwrap();
        let prod = tg_compose(&t, &x, &inv).unwrap();
        assert!(vec_is_zero(&prod.xi));
        assert_eq!(tg_source(&prod), tg_target(&t, &x).unwrap());
        assert!(prod.g.matrix.is_identity());
        // Non-composable pairs error out.
        let bad = TgElement { g: g.clone(), xi: x.xi.clone(), tau: vec![rat(1, 1), rat(0, 1), rat(7, 1)] };
        assert!(tg_compose(&t, &x, &bad).is_err() || tg_source(&x) == tg_target(&t, &bad).unwrap());
    }

    #[test]
    fn abelian_bivector_vanishes() {
        let t = abelian_double::<Rat>(2);
        let e = GroupElement::identity(4);
        let pi = extract_bivector(&t, &e).unwrap();
        assert!(pi.is_zero());
        assert!(check_bivector_multiplicative(&t, &e, &e).unwrap());
    }

    #[test]
    fn heisenberg_bivector() {
        let t = heisenberg_double::<Rat>();
        let e = GroupElement::identity(6);
        assert!(extract_bivector(&t, &e).unwrap().is_zero());
        let g1 = exp_ad(&t.double.algebra, &basis_vec(6, 0)).unwrap();
        let g2 = exp_ad(&t.double.algebra, &basis_vec(6, 1)).unwrap();
        let pi = extract_bivector(&t, &g1).unwrap();
        assert!((&pi + &pi.transpose()).is_zero());
        assert!(check_bivector_multiplicative(&t, &g1, &g2).unwrap());
    }

    #[test]
    fn trivial_base_comorphism() {
        let datum = CoreAnchorDatum::<Rat>::new(Matrix::identity(2));
        let s = build_s_trivial_base(&datum).unwrap();
        assert_eq!(s.dim(), 4);
        // ζ = ζ' gives a unit: x = (0, ρζ).
        let zeta = vec![rat(1, 1), rat(2, 1)];
        let v = vec_concat(&[&zeta, &zeta, &vec![rat(0, 1); 2], &zeta]);
        assert!(s.graph().contains(&v));
    }

    #[test]
    fn bracket_relations_at_points() {
        let t = heisenberg_double::<Rat>();
        let g = exp_ad(&t.double.algebra, &basis_vec(6, 0)).unwrap();
        let sigma = vec![rat(0, 1), rat(1, 1), rat(0, 1)];
        let tau = vec![rat(0, 1), rat(0, 1), rat(1, 1)];
        assert!(bracket_relations_jet(&t, &g, &sigma, &tau).unwrap());
        // Abelian: everything commutes.
        let ab = abelian_double::<Rat>(2);
        let e = GroupElement::identity(4);
        let s = vec![rat(1, 1), rat(0, 1)];
        let u = vec![rat(0, 1), rat(1, 1)];
        assert!(bracket_relations_jet(&ab, &e, &s, &u).unwrap());
    }

    #[test]
    fn r0_span_and_candidate_metric() {
        let t = heisenberg_double::<Rat>();
        let a = basis_vec(6, 0);
        let report = build_r0_point(&t, &a).unwrap();
        assert_eq!(report.relation.dim(), 9);
        assert!(report.lagrangian_under_candidate_metric);
        // a = 0 degenerates the second family to ((0, ζ), (0, pr ζ)).
        let zero = vec![Rat::from_int(0); 6];
        let r0 = build_r0_point(&t, &zero).unwrap();
        let v = vec_concat(&[
            &vec![rat(0, 1); 6],
            &basis_vec(6, 3),
            &vec![rat(0, 1); 3],
            &vec![rat(1, 1), rat(0, 1), rat(0, 1)],
        ]);
        assert!(r0.relation.graph().contains(&v));
        // Points outside g are rejected.
        assert!(build_r0_point(&t, &basis_vec(6, 4)).is_err());
    }
}

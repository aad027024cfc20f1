//! Linear relations between metrized spaces, composed like correspondences.
//!
//! A relation `r: source -> target` is stored through its graph, a subspace
//! of `target ⊕ source`. Lagrangian relations are graphs that are Lagrangian
//! for the form `target ⊕ (-source)`.

use crate::error::{Error, Result};
use crate::matrix::{vec_concat, Matrix};
use crate::metrized::MetrizedSpace;
use crate::scalar::Scalar;
use crate::subspace::Subspace;

#[derive(Clone, PartialEq, Debug)]
pub struct LinearRelation<S: Scalar> {
    source: MetrizedSpace<S>,
    target: MetrizedSpace<S>,
    graph: Subspace<S>,
}

impl<S: Scalar> LinearRelation<S> {
    pub fn new(
        source: MetrizedSpace<S>,
        target: MetrizedSpace<S>,
        graph: Subspace<S>,
    ) -> Result<Self> {
        if graph.ambient_dim() != target.dim() + source.dim() {
            return Err(Error::DimMismatch(format!(
                "graph ambient {} != target {} + source {}",
                graph.ambient_dim(),
                target.dim(),
                source.dim()
            )));
        }
        Ok(LinearRelation { source, target, graph })
    }

    pub fn identity(space: &MetrizedSpace<S>) -> Self {
        let n = space.dim();
        let id = Matrix::<S>::identity(n);
        let vs = (0..n)
            .map(|i| vec_concat(&[&id.col(i), &id.col(i)]))
            .collect();
        LinearRelation {
            source: space.clone(),
            target: space.clone(),
            graph: Subspace::span(2 * n, vs),
        }
    }

    /// Graph of a linear map `m: source -> target`.
    pub fn from_map(
        m: &Matrix<S>,
        source: &MetrizedSpace<S>,
        target: &MetrizedSpace<S>,
    ) -> Result<Self> {
        if m.cols() != source.dim() || m.rows() != target.dim() {
            return Err(Error::DimMismatch("map shape does not match spaces".into()));
        }
        let n = source.dim();
        let id = Matrix::<S>::identity(n);
        let vs = (0..n)
            .map(|i| vec_concat(&[&m.col(i), &id.col(i)]))
            .collect();
        Ok(LinearRelation {
            source: source.clone(),
            target: target.clone(),
            graph: Subspace::span(target.dim() + n, vs),
        })
    }

    pub fn source(&self) -> &MetrizedSpace<S> {
        &self.source
    }

    pub fn target(&self) -> &MetrizedSpace<S> {
        &self.target
    }

    pub fn graph(&self) -> &Subspace<S> {
        &self.graph
    }

    pub fn dim(&self) -> usize {
        self.graph.dim()
    }

    /// The transposed relation (arrows reversed).
    pub fn transpose(&self) -> Self {
        let t = self.target.dim();
        let s = self.source.dim();
        let vs = self
            .graph
            .basis()
            .iter()
            .map(|v| vec_concat(&[&v[t..], &v[..t]]))
            .collect();
        LinearRelation {
            source: self.target.clone(),
            target: self.source.clone(),
            graph: Subspace::span(t + s, vs),
        }
    }

    /// Relation composition `r2 ∘ r1`: pairs `(z, x)` such that some `y`
    /// satisfies `(z, y) ∈ r2` and `(y, x) ∈ r1`. Computed by intersecting
    /// `r2.graph ⊕ source1` with `target2 ⊕ r1.graph` along the middle
    /// factor and projecting it away. No cleanness assumption is needed.
    pub fn compose(r2: &Self, r1: &Self) -> Result<Self> {
        if r1.target != r2.source {
            return Err(Error::SpaceMismatch(
                "compose: r1.target != r2.source".into(),
            ));
        }
        let zd = r2.target.dim();
        let yd = r2.source.dim();
        let xd = r1.source.dim();
        // Coordinates (z, y, x).
        let left = r2.graph.direct_sum(&Subspace::full(xd));
        let right = Subspace::full(zd).direct_sum(&r1.graph);
        let fiber = left.intersect(&right)?;
        let vs = fiber
            .basis()
            .iter()
            .map(|v| vec_concat(&[&v[..zd], &v[zd + yd..]]))
            .collect();
        Ok(LinearRelation {
            source: r1.source.clone(),
            target: r2.target.clone(),
            graph: Subspace::span(zd + xd, vs),
        })
    }

    /// Image of a subspace of the source.
    pub fn forward_image(&self, u: &Subspace<S>) -> Result<Subspace<S>> {
        if u.ambient_dim() != self.source.dim() {
            return Err(Error::AmbientMismatch(u.ambient_dim(), self.source.dim()));
        }
        let t = self.target.dim();
        let restricted = self.graph.intersect(&Subspace::full(t).direct_sum(u))?;
        let vs = restricted.basis().iter().map(|v| v[..t].to_vec()).collect();
        Ok(Subspace::span(t, vs))
    }

    /// Preimage of a subspace of the target.
    pub fn backward_image(&self, u: &Subspace<S>) -> Result<Subspace<S>> {
        if u.ambient_dim() != self.target.dim() {
            return Err(Error::AmbientMismatch(u.ambient_dim(), self.target.dim()));
        }
        let t = self.target.dim();
        let s = self.source.dim();
        let restricted = self.graph.intersect(&u.direct_sum(&Subspace::full(s)))?;
        let vs = restricted.basis().iter().map(|v| v[t..].to_vec()).collect();
        Ok(Subspace::span(s, vs))
    }

    /// Kernel `r^{-1}(0)`.
    pub fn kernel(&self) -> Subspace<S> {
        self.backward_image(&Subspace::zero(self.target.dim()))
            .expect("zero subspace always has the right ambient")
    }

    /// The metrized space `target ⊕ (-source)` the graph lives in.
    pub fn graph_space(&self) -> MetrizedSpace<S> {
        self.target.direct_sum(&self.source.reversed())
    }

    /// Lagrangian relation test (both spaces must be nondegenerate).
    pub fn is_lagrangian(&self) -> Result<bool> {
        self.graph.is_lagrangian(&self.graph_space())
    }

    /// Morphism-of-Manin-pairs conditions for Lagrangian subspaces
    /// `a1 ⊆ source`, `a2 ⊆ target`:
    /// the forward image of `a1` lies in `a2` and the kernel meets `a1`
    /// trivially. The uniqueness property (every element of `a2` related to
    /// exactly one element of `a1`) follows and is asserted as a secondary
    /// check.
    pub fn is_manin_morphism(&self, a1: &Subspace<S>, a2: &Subspace<S>) -> Result<bool> {
        if !self.is_lagrangian()? {
            return Err(Error::Invariant("relation is not Lagrangian".into()));
        }
        if !a1.is_lagrangian(&self.source)? {
            return Err(Error::Invariant("a1 is not Lagrangian in the source".into()));
        }
        if !a2.is_lagrangian(&self.target)? {
            return Err(Error::Invariant("a2 is not Lagrangian in the target".into()));
        }
        let image_ok = a2.contains_subspace(&self.forward_image(a1)?);
        let kernel_ok = self.kernel().intersect(a1)?.is_zero();
        if !(image_ok && kernel_ok) {
            return Ok(false);
        }
        // Secondary check: unique a1-partner for every element of a2.
        let paired = self.graph.intersect(&a2.direct_sum(a1))?;
        if paired.dim() != a2.dim() {
            return Err(Error::Invariant(format!(
                "uniqueness degenerated: dim(graph ∩ (a2 ⊕ a1)) = {}, dim a2 = {}",
                paired.dim(),
                a2.dim()
            )));
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, Rat};

    fn duality(n: usize) -> MetrizedSpace<Rat> {
        MetrizedSpace::standard_split(n)
    }

    #[test]
    fn identity_composes_neutrally() {
        let e = duality(2);
        let id = LinearRelation::identity(&e);
        let m = Matrix::from_int_rows(&[&[1, 2, 0, 0], &[0, 1, 1, 0], &[0, 0, 1, 0], &[3, 0, 0, 1]]);
        let r = LinearRelation::from_map(&m, &e, &e).unwrap();
        assert_eq!(LinearRelation::compose(&id, &r).unwrap(), r);
        assert_eq!(LinearRelation::compose(&r, &id).unwrap(), r);
    }

    #[test]
    fn graphs_compose_functorially() {
        let a: MetrizedSpace<Rat> = MetrizedSpace::plain(2);
        let b = MetrizedSpace::plain(3);
        let c = MetrizedSpace::plain(2);
        let m = Matrix::from_int_rows(&[&[1, 0], &[2, 1], &[0, 3]]);
        let n = Matrix::from_int_rows(&[&[1, 1, 0], &[0, 1, -1]]);
        let rm = LinearRelation::from_map(&m, &a, &b).unwrap();
        let rn = LinearRelation::from_map(&n, &b, &c).unwrap();
        let composed = LinearRelation::compose(&rn, &rm).unwrap();
        let direct = LinearRelation::from_map(&(&n * &m), &a, &c).unwrap();
        assert_eq!(composed, direct);
    }

    #[test]
    fn backward_image_of_identity() {
        let e = duality(1);
        let id = LinearRelation::identity(&e);
        let u = Subspace::span(2, vec![vec![rat(1, 1), rat(2, 1)]]);
        assert_eq!(id.backward_image(&u).unwrap(), u);
        assert_eq!(id.backward_image(&Subspace::full(2)).unwrap(), Subspace::full(2));
    }

    #[test]
    fn manin_morphism_identity_and_zero() {
        let e = duality(1);
        let a = Subspace::coordinate(2, &[0]);
        let id = LinearRelation::identity(&e);
        assert!(id.is_manin_morphism(&a, &a).unwrap());
        // Lagrangian relation whose kernel is all of a1: graph = a ⊕ a.
        let killing = LinearRelation::new(e.clone(), e.clone(), a.direct_sum(&a)).unwrap();
        assert!(killing.is_lagrangian().unwrap());
        assert!(!killing.is_manin_morphism(&a, &a).unwrap());
    }
}

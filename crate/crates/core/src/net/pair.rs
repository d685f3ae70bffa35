use std::sync::Arc;

use super::lattice::{EdgeField, Lattice};
use crate::clifford::{inner, Algebra, Multivector, Versor};
use crate::error::NetError;
use crate::moebius::{projective_distance, ConformalPoint, Hypersphere};
use crate::scalar::Scalar;
use crate::tolerance;

/// A pair of nets `F`, `F̂` on a lattice, optionally with the spin frames
/// and edge spheres that generate them.
#[derive(Clone, Debug)]
pub struct PairNet<S: Scalar> {
    alg: Arc<Algebra>,
    lattice: Lattice,
    f: Vec<ConformalPoint<S>>,
    f_hat: Vec<ConformalPoint<S>>,
    frames: Option<Vec<Versor<S>>>,
    edge_spheres: Option<EdgeField<Multivector<S>>>,
    euclidean: bool,
}

impl<S: Scalar> PairNet<S> {
    pub fn new(
        alg: &Arc<Algebra>,
        lattice: Lattice,
        f: Vec<ConformalPoint<S>>,
        f_hat: Vec<ConformalPoint<S>>,
    ) -> Result<Self, NetError> {
        for field in [&f, &f_hat] {
            if field.len() != lattice.len() {
                return Err(NetError::FieldLength {
                    expected: lattice.len(),
                    found: field.len(),
                });
            }
            if let Some(p) = field.iter().find(|p| p.algebra().n() != alg.n()) {
                return Err(NetError::AmbientDimension {
                    expected: alg.n(),
                    found: p.algebra().n(),
                });
            }
        }
        Ok(Self {
            alg: Arc::clone(alg),
            lattice,
            f,
            f_hat,
            frames: None,
            edge_spheres: None,
            euclidean: false,
        })
    }

    /// Net `F` with the companion `F̂ ≡ e_inf`.
    pub fn euclidean(alg: &Arc<Algebra>, lattice: Lattice, f: Vec<ConformalPoint<S>>) -> Result<Self, NetError> {
        let f_hat = vec![ConformalPoint::infinity(alg); lattice.len()];
        let mut net = Self::new(alg, lattice, f, f_hat)?;
        net.euclidean = true;
        Ok(net)
    }

    pub fn with_frames(mut self, frames: Vec<Versor<S>>) -> Result<Self, NetError> {
        if frames.len() != self.lattice.len() {
            return Err(NetError::FieldLength {
                expected: self.lattice.len(),
                found: frames.len(),
            });
        }
        self.frames = Some(frames);
        Ok(self)
    }

    pub fn with_edge_spheres(mut self, spheres: EdgeField<Multivector<S>>) -> Self {
        self.edge_spheres = Some(spheres);
        self
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn f(&self) -> &[ConformalPoint<S>] {
        &self.f
    }

    pub fn f_hat(&self) -> &[ConformalPoint<S>] {
        &self.f_hat
    }

    pub fn frames(&self) -> Option<&[Versor<S>]> {
        self.frames.as_deref()
    }

    pub fn edge_spheres(&self) -> Option<&EdgeField<Multivector<S>>> {
        self.edge_spheres.as_ref()
    }

    pub fn is_euclidean(&self) -> bool {
        self.euclidean
    }

    /// Edge sphere `S_j(t + 1/2 t_j)`, from storage or from the frames.
    pub fn edge_sphere(&self, base: usize, axis: usize) -> Result<Multivector<S>, NetError> {
        if let Some(s) = self.edge_spheres.as_ref().and_then(|e| e.get(base, axis)) {
            return Ok(s.clone());
        }
        let frames = self.frames.as_ref().ok_or(NetError::MissingFrames)?;
        let next = self.lattice.step(base, axis).ok_or_else(|| self.missing(base, axis))?;
        Ok(edge_sphere(&frames[base], &frames[next], axis)?.into_vector())
    }

    /// Frame vector `s_j(t + 1/2 t_j) = -e_j Φ(t + t_j) Φ⁻¹(t)`.
    pub fn edge_vector(&self, base: usize, axis: usize) -> Result<Multivector<S>, NetError> {
        let frames = self.frames.as_ref().ok_or(NetError::MissingFrames)?;
        let next = self.lattice.step(base, axis).ok_or_else(|| self.missing(base, axis))?;
        Ok(edge_vector_between(&frames[base], &frames[next], axis))
    }

    fn missing(&self, base: usize, axis: usize) -> NetError {
        NetError::MissingEdge {
            base: self.lattice.multi_index(base),
            axis,
        }
    }
}

/// `-e_j Φ(t + t_j) Φ⁻¹(t)`, the `s_j` of the frame step.
pub fn edge_vector_between<S: Scalar>(phi: &Versor<S>, phi_next: &Versor<S>, axis: usize) -> Multivector<S> {
    let ej = Multivector::generator(phi.algebra(), axis + 1);
    (&(&ej * phi_next.multivector()) * phi.inverse().multivector()).grade(1).scale(-S::one())
}

fn check_unit<S: Scalar>(s: &Multivector<S>) -> Result<Multivector<S>, NetError> {
    let s = s.expect_grade(1, S::lit(tolerance::GEOMETRIC)).map_err(crate::GeometryError::from)?;
    Ok(Hypersphere::new(s)?.into_vector())
}

/// One frame step `Φ(t + t_j) = e_j s Φ(t)`. Lattice axes are 0-based, so
/// axis `a` uses the generator `e_{a+1}`.
pub fn propagate_frame<S: Scalar>(phi: &Versor<S>, s: &Multivector<S>, axis: usize) -> Result<Versor<S>, NetError> {
    let s = check_unit(s)?;
    let ej = Multivector::e(phi.algebra(), axis + 1).map_err(crate::GeometryError::from)?;
    Ok(phi
        .after_vector(&s)
        .and_then(|v| v.after_vector(&ej))
        .map_err(crate::GeometryError::from)?)
}

/// The inverse relation `Φ(t + t_j) = -e_j Φ(t) S_j` for a given edge sphere.
pub fn step_by_sphere<S: Scalar>(phi: &Versor<S>, sphere: &Multivector<S>, axis: usize) -> Result<Versor<S>, NetError> {
    let sphere = check_unit(sphere)?;
    let ej = Multivector::e(phi.algebra(), axis + 1).map_err(crate::GeometryError::from)?;
    Ok(phi
        .then_vector(&sphere)
        .and_then(|v| v.after_vector(&ej))
        .map_err(crate::GeometryError::from)?
        .negated())
}

/// `Φ⁻¹(t) e_j Φ(t + t_j)` together with the normalized asymmetry against
/// `Φ⁻¹(t + t_j) e_j Φ(t)`.
pub fn edge_sphere_with_residual<S: Scalar>(
    phi: &Versor<S>,
    phi_next: &Versor<S>,
    axis: usize,
) -> (Multivector<S>, S) {
    let ej = Multivector::generator(phi.algebra(), axis + 1);
    let a = &(phi.inverse().multivector() * &ej) * phi_next.multivector();
    let b = &(phi_next.inverse().multivector() * &ej) * phi.multivector();
    let scale = a.norm().max(b.norm()).max(S::lit(f64::MIN_POSITIVE));
    let residual = (&a - &b).norm() / scale;
    // Non-vector content also counts as asymmetry: a true edge sphere is grade 1.
    let s = a.grade(1);
    let stray = (&a - &s).norm() / scale;
    (s, residual.max(stray))
}

/// Edge sphere `S_j(t + 1/2 t_j) = Φ⁻¹(t) e_j Φ(t + t_j)`, checked for symmetry
/// in the endpoints.
pub fn edge_sphere<S: Scalar>(phi: &Versor<S>, phi_next: &Versor<S>, axis: usize) -> Result<Hypersphere<S>, NetError> {
    let (s, residual) = edge_sphere_with_residual(phi, phi_next, axis);
    if residual > S::lit(tolerance::EDGE_SYMMETRY) {
        return Err(NetError::EdgeAsymmetry {
            base: Vec::new(),
            axis,
            residual: residual.to_f64_lossy(),
        });
    }
    Ok(Hypersphere::new(s)?)
}

/// Nets `F = Φ⁻¹ e_0 Φ`, `F̂ = Φ⁻¹ e_inf Φ` of a frame field, with the edge
/// spheres attached. If every `F̂(t)` is the point at infinity the net is
/// flagged Euclidean and `F̂` is set to `e_inf` exactly.
pub fn nets_from_frames<S: Scalar>(lattice: &Lattice, frames: Vec<Versor<S>>) -> Result<PairNet<S>, NetError> {
    if frames.len() != lattice.len() {
        return Err(NetError::FieldLength {
            expected: lattice.len(),
            found: frames.len(),
        });
    }
    let alg = Arc::clone(frames[0].algebra());
    let (e0, einf) = (Multivector::e0(&alg), Multivector::einf(&alg));
    let f: Vec<ConformalPoint<S>> = frames
        .iter()
        .map(|phi| ConformalPoint::new(phi.apply_vector(&e0)))
        .collect::<Result<_, _>>()?;
    let f_hat: Vec<ConformalPoint<S>> = frames
        .iter()
        .map(|phi| ConformalPoint::new(phi.apply_vector(&einf)))
        .collect::<Result<_, _>>()?;
    let mut spheres = EdgeField::new(lattice);
    for (base, axis) in lattice.edges() {
        let next = lattice.step(base, axis).expect("edge endpoints exist");
        let (s, residual) = edge_sphere_with_residual(&frames[base], &frames[next], axis);
        if residual > S::lit(tolerance::EDGE_SYMMETRY) {
            return Err(NetError::EdgeAsymmetry {
                base: lattice.multi_index(base),
                axis,
                residual: residual.to_f64_lossy(),
            });
        }
        spheres.set(base, axis, s);
    }
    let at_infinity = f_hat
        .iter()
        .all(|p| projective_distance(p.vector(), &einf) <= S::lit(tolerance::GEOMETRIC));
    let net = if at_infinity {
        PairNet::euclidean(&alg, lattice.clone(), f)?
    } else {
        PairNet::new(&alg, lattice.clone(), f, f_hat)?
    };
    Ok(net.with_frames(frames)?.with_edge_spheres(spheres))
}

/// `<e_0, s>` and `<e_inf, s>`.
pub fn null_components<S: Scalar>(s: &Multivector<S>) -> (S, S) {
    let alg = s.algebra();
    (inner(&Multivector::e0(alg), s), inner(&Multivector::einf(alg), s))
}

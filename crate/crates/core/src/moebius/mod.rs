//! The Moebius-geometric dictionary: points, hyperspheres, `m`-spheres as
//! blades, incidence, angles, inversions and the Clifford cross ratio.

mod cross_ratio;
mod intersect;
mod point;
mod sphere;

pub use cross_ratio::{cross_ratio, CrossRatioValue};
pub use intersect::{
    circle_intersect, circle_intersect_with_tol, circle_second_meet, extract_point_pair, point_on_circle, point_pair_of_bivector,
    CircleMeet,
};
pub use point::{lift, project, project_vector, projective_distance, ConformalPoint, Normalization, Projected};
pub use sphere::{hypersphere, plane, BladeRep, Hypersphere, SphereBlade, SphereReadout};

use crate::clifford::{inner, Multivector};
use crate::error::GeometryError;
use crate::scalar::Scalar;
use crate::tolerance;

/// `|ps + sp| / (|p| |s|)`.
pub fn point_sphere_residual<S: Scalar>(p: &ConformalPoint<S>, s: &Hypersphere<S>) -> S {
    let (a, b) = (p.vector(), s.vector());
    (S::lit(2.0) * inner(a, b)).abs() / (a.norm() * b.norm())
}

/// `ps + sp = 0`.
pub fn incident_point_sphere<S: Scalar>(p: &ConformalPoint<S>, s: &Hypersphere<S>) -> bool {
    point_sphere_residual(p, s) <= S::lit(tolerance::GEOMETRIC)
}

/// Incidence of a point with a circle, in either blade representation.
pub fn incident_point_circle<S: Scalar>(p: &ConformalPoint<S>, c: &SphereBlade<S>) -> Result<bool, GeometryError> {
    if c.sphere_dim() != 1 {
        return Err(GeometryError::SphereDimension {
            m: c.sphere_dim(),
            n: c.blade().n(),
        });
    }
    Ok(c.contains(p))
}

/// `s1 s2 + s2 s1 = 0`.
pub fn spheres_orthogonal<S: Scalar>(s1: &Hypersphere<S>, s2: &Hypersphere<S>) -> bool {
    inner(s1.vector(), s2.vector()).abs() <= S::lit(tolerance::GEOMETRIC)
}

/// Intersection angle with `cos φ = <s1, s2>`.
pub fn sphere_angle<S: Scalar>(s1: &Hypersphere<S>, s2: &Hypersphere<S>) -> S {
    let c = inner(s1.vector(), s2.vector());
    c.max(-S::one()).min(S::one()).acos()
}

/// The `m`-sphere `p_1 ∧ ... ∧ p_{m+2}` through `m + 2` points.
pub fn sphere_through<S: Scalar>(points: &[ConformalPoint<S>]) -> Result<SphereBlade<S>, GeometryError> {
    let first = points.first().ok_or(GeometryError::PointCount { max: 0, found: 0 })?;
    let n = first.algebra().n();
    if points.len() < 2 || points.len() > n + 2 {
        return Err(GeometryError::PointCount {
            max: n + 2,
            found: points.len(),
        });
    }
    let (blade, residual) = wedge_points(points);
    if residual <= S::lit(tolerance::GEOMETRIC) {
        return Err(GeometryError::Degenerate {
            residual: residual.to_f64_lossy(),
        });
    }
    Ok(SphereBlade::timelike_unchecked(blade, points.len()))
}

/// Wedge of unit representatives together with its norm, which is the
/// scale-free degeneracy measure used throughout.
pub fn wedge_points<S: Scalar>(points: &[ConformalPoint<S>]) -> (Multivector<S>, S) {
    let mut acc = Multivector::one(points[0].algebra());
    for p in points {
        acc = acc.wedge(p.unit().vector());
    }
    let norm = acc.norm();
    (acc, norm)
}

/// Inversion in a hypersphere, `p -> s p s`.
pub fn inversion<S: Scalar>(p: &ConformalPoint<S>, s: &Hypersphere<S>) -> ConformalPoint<S> {
    let (a, b) = (p.vector(), s.vector());
    ConformalPoint::from_null_unchecked((&(b * a) * b).grade(1))
}

#[cfg(test)]
mod tests;

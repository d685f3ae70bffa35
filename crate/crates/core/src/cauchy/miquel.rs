use crate::clifford::subspace;
use crate::error::{CompletionError, GeometryError};
use crate::moebius::{circle_second_meet, sphere_through, wedge_points, ConformalPoint};
use crate::scalar::Scalar;
use crate::tolerance;

/// Residuals of one Miquel completion.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CellResidual<S> {
    /// Largest incidence residual of the new point with the three circles.
    pub circle: S,
    /// Smallest-to-largest singular value ratio of the eight points' span,
    /// zero when they lie on a common 2-sphere (or `n = 2`).
    pub sphere: S,
}

/// The seven known vertices of an elementary 3-cell.
#[derive(Clone, Copy, Debug)]
pub struct SevenPoints<'a, S: Scalar> {
    pub p: &'a ConformalPoint<S>,
    pub p1: &'a ConformalPoint<S>,
    pub p2: &'a ConformalPoint<S>,
    pub p3: &'a ConformalPoint<S>,
    pub p12: &'a ConformalPoint<S>,
    pub p13: &'a ConformalPoint<S>,
    pub p23: &'a ConformalPoint<S>,
}

fn cospherical_residual<S: Scalar>(points: &[&ConformalPoint<S>]) -> S {
    let vs: Vec<_> = points.iter().map(|p| p.unit().into_vector()).collect();
    let sv = subspace::singular_values(&subspace::vectors_to_matrix(&vs));
    match sv.get(4) {
        Some(&s) => s / sv[0],
        None => S::zero(),
    }
}

/// Eighth vertex of a circular 3-cell: the common point of the circles
/// through `(p1, p12, p13)`, `(p2, p12, p23)` and `(p3, p13, p23)`.
pub fn complete_cell_3d<S: Scalar>(cell: SevenPoints<'_, S>) -> Result<(ConformalPoint<S>, CellResidual<S>), CompletionError> {
    complete_cell_3d_with_tol(cell, S::lit(tolerance::CONCIRCULAR))
}

/// [`complete_cell_3d`] with an explicit tolerance for the input checks and
/// the final incidence test.
pub fn complete_cell_3d_with_tol<S: Scalar>(
    cell: SevenPoints<'_, S>,
    tol: S,
) -> Result<(ConformalPoint<S>, CellResidual<S>), CompletionError> {
    let SevenPoints { p, p1, p2, p3, p12, p13, p23 } = cell;
    for (k, face) in [[p, p1, p2, p12], [p, p1, p3, p13], [p, p2, p3, p23]].iter().enumerate() {
        let owned: Vec<ConformalPoint<S>> = face.iter().map(|q| (*q).clone()).collect();
        let (_, w) = wedge_points(&owned);
        if w > tol {
            return Err(CompletionError::CellFace(k, w.to_f64_lossy()));
        }
    }
    let seven = [p, p1, p2, p3, p12, p13, p23];
    let spread = cospherical_residual(&seven);
    if spread > tol {
        return Err(CompletionError::NotCospherical(spread.to_f64_lossy()));
    }
    let c1 = sphere_through(&[p1.clone(), p12.clone(), p13.clone()])?;
    let c2 = sphere_through(&[p2.clone(), p12.clone(), p23.clone()])?;
    let c3 = sphere_through(&[p3.clone(), p13.clone(), p23.clone()])?;
    // c1 and c2 already share p12, the other common point is the eighth vertex
    let q = match circle_second_meet(&c1, &c2, p12, tol) {
        Ok(q) => q,
        Err(GeometryError::Tangent) => return Err(CompletionError::CirclesDisjoint("tangent")),
        Err(GeometryError::NotCospherical) => return Err(CompletionError::NotCospherical(f64::NAN)),
        Err(e) => return Err(e.into()),
    };
    let band = S::lit(tolerance::TANGENT);
    if c3.incidence_residual(p12) <= band {
        return Err(CompletionError::Ambiguous);
    }
    let rq = c3.incidence_residual(&q);
    if rq > tol {
        return Err(CompletionError::Inconsistent(rq.to_f64_lossy()));
    }
    let circle = rq.max(c1.incidence_residual(&q)).max(c2.incidence_residual(&q));
    let mut eight = seven.to_vec();
    eight.push(&q);
    let sphere = cospherical_residual(&eight);
    Ok((q, CellResidual { circle, sphere }))
}

use nalgebra::DMatrix;

use super::pair::null_components;
use crate::clifford::{subspace, Multivector};
use crate::error::NetError;
use crate::scalar::Scalar;
use crate::tolerance;

/// A residual norm, raw and divided by the product of the input norms.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Residual<S> {
    pub raw: S,
    pub scaled: S,
}

impl<S: Scalar> Residual<S> {
    fn new(raw: S, scale: S) -> Self {
        let scaled = if scale > S::zero() { raw / scale } else { raw };
        Self { raw, scaled }
    }
}

/// Flatness of one face of the frame equations:
/// `e_j s_j(t+t_i+½t_j) e_i s_i(t+½t_i) - e_i s_i(t+t_j+½t_i) e_j s_j(t+½t_j)`.
///
/// `s_i_shifted` sits at `t + t_j`, `s_j_shifted` at `t + t_i`; axes are 0-based.
pub fn mc_residual_face<S: Scalar>(
    (i, j): (usize, usize),
    s_i: &Multivector<S>,
    s_j: &Multivector<S>,
    s_i_shifted: &Multivector<S>,
    s_j_shifted: &Multivector<S>,
) -> Residual<S> {
    let alg = s_i.algebra();
    let (ei, ej) = (Multivector::generator(alg, i + 1), Multivector::generator(alg, j + 1));
    let lhs = &(&(&ej * s_j_shifted) * &ei) * s_i;
    let rhs = &(&(&ei * s_i_shifted) * &ej) * s_j;
    let scale = (s_j_shifted.norm() * s_i.norm()).max(s_i_shifted.norm() * s_j.norm());
    Residual::new((&lhs - &rhs).norm(), scale)
}

/// Outcome of the sphere form of the face condition.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SphereFaceCheck<S> {
    /// `|S_i(t+½t_i) S_j(t+t_i+½t_j) + S_j(t+½t_j) S_i(t+t_j+½t_i)|`.
    pub residual: Residual<S>,
    /// Dimension of the span of the four sphere vectors; `2` when they meet
    /// in a common `(n-2)`-sphere.
    pub rank: usize,
}

/// `S_i(t) S_j(t+t_i) + S_j(t) S_i(t+t_j)` and the rank of the four spheres.
pub fn mc_residual_spheres<S: Scalar>(
    s_i: &Multivector<S>,
    s_j_shifted: &Multivector<S>,
    s_j: &Multivector<S>,
    s_i_shifted: &Multivector<S>,
) -> SphereFaceCheck<S> {
    let sum = &(s_i * s_j_shifted) + &(s_j * s_i_shifted);
    let scale = (s_i.norm() * s_j_shifted.norm()).max(s_j.norm() * s_i_shifted.norm());
    let vectors = [s_i, s_j_shifted, s_j, s_i_shifted].map(|v| v.normalized());
    let m: DMatrix<S> = subspace::vectors_to_matrix(&vectors);
    SphereFaceCheck {
        residual: Residual::new(sum.norm(), scale),
        rank: subspace::rank(&m, S::lit(tolerance::CONSISTENCY_SOFT)),
    }
}

/// Cross ratio `DV[F̂(t), F(t), F(t+t_j), F̂(t+t_j)] = -1 / (4 <e_0, s_j> <e_inf, s_j>)`
/// of an edge quadruple, from the frame vector alone.
pub fn edge_cross_ratio_closed_form<S: Scalar>(s: &Multivector<S>) -> Result<S, NetError> {
    let (a, b) = null_components(s);
    let tol = S::lit(tolerance::GEOMETRIC) * s.norm();
    if a.abs() <= tol || b.abs() <= tol {
        return Err(NetError::DegenerateEdge);
    }
    Ok(-S::one() / (S::lit(4.0) * a * b))
}

/// Cross ratio `DV[F(t), F(t+t_i), F(t+t_i+t_j), F(t+t_j)]` of a face:
/// `-<e_0,s_i(t)> <e_0,s_i(t+t_j)> / (<e_0,s_j(t)> <e_0,s_j(t+t_i)>)`.
pub fn face_cross_ratio_closed_form<S: Scalar>(
    s_i: &Multivector<S>,
    s_i_shifted: &Multivector<S>,
    s_j: &Multivector<S>,
    s_j_shifted: &Multivector<S>,
) -> Result<S, NetError> {
    let [a, b, c, d] = [s_i, s_i_shifted, s_j, s_j_shifted].map(|v| null_components(v).0);
    let tol = S::lit(tolerance::GEOMETRIC);
    if c.abs() <= tol * s_j.norm() || d.abs() <= tol * s_j_shifted.norm() {
        return Err(NetError::DegenerateFace);
    }
    Ok(-(a * b) / (c * d))
}

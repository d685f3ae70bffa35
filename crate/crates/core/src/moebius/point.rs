use std::sync::Arc;

use crate::clifford::{inner, Algebra, Multivector};
use crate::error::GeometryError;
use crate::scalar::Scalar;
use crate::tolerance;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Normalization {
    /// Scaled so that `p e_inf + e_inf p = 1`.
    Chart,
    /// Arbitrary nonzero representative of the null ray.
    Projective,
}

/// A point of the conformal `n`-sphere: a null grade-1 element up to scale.
#[derive(Clone, Debug, PartialEq)]
pub struct ConformalPoint<S: Scalar> {
    v: Multivector<S>,
    normalization: Normalization,
}

/// Euclidean readout of a point in the chart `R^n`.
#[derive(Clone, Debug, PartialEq)]
pub enum Projected<S> {
    Finite(Vec<S>),
    Infinity,
}

impl<S: Scalar> Projected<S> {
    pub fn finite(self) -> Option<Vec<S>> {
        match self {
            Projected::Finite(x) => Some(x),
            Projected::Infinity => None,
        }
    }
}

impl<S: Scalar> ConformalPoint<S> {
    /// Validates a null grade-1 element.
    pub fn new(v: Multivector<S>) -> Result<Self, GeometryError> {
        let rel = S::lit(tolerance::GEOMETRIC);
        let v = v.expect_grade(1, rel)?;
        let scale = v.norm();
        if scale.is_zero() {
            return Err(GeometryError::ZeroVector);
        }
        let residual = inner(&v, &v).abs() / (scale * scale);
        if residual > rel {
            return Err(GeometryError::NotNull {
                residual: residual.to_f64_lossy(),
            });
        }
        Ok(Self::from_null_unchecked(v))
    }

    pub(crate) fn from_null_unchecked(v: Multivector<S>) -> Self {
        Self {
            v,
            normalization: Normalization::Projective,
        }
    }

    pub fn e0(alg: &Arc<Algebra>) -> Self {
        Self {
            v: Multivector::e0(alg),
            normalization: Normalization::Chart,
        }
    }

    pub fn infinity(alg: &Arc<Algebra>) -> Self {
        Self::from_null_unchecked(Multivector::einf(alg))
    }

    pub fn vector(&self) -> &Multivector<S> {
        &self.v
    }

    pub fn into_vector(self) -> Multivector<S> {
        self.v
    }

    pub fn normalization(&self) -> Normalization {
        self.normalization
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        self.v.algebra()
    }

    /// Coefficient of `e_0`, i.e. `-2 <p, e_inf>`.
    pub fn chart_weight(&self) -> S {
        self.v.null_coords().0
    }

    pub fn is_at_infinity(&self) -> bool {
        self.chart_weight().abs() <= S::lit(tolerance::GEOMETRIC) * self.v.norm()
    }

    /// Representative with `p e_inf + e_inf p = 1`, if the point is finite.
    pub fn chart_normalized(&self) -> Option<Self> {
        if self.is_at_infinity() {
            return None;
        }
        Some(Self {
            v: self.v.scale(S::one() / self.chart_weight()),
            normalization: Normalization::Chart,
        })
    }

    /// Representative of unit coefficient norm with nonnegative `f_0` coefficient.
    pub fn unit(&self) -> Self {
        let norm = self.v.norm();
        let s = if self.v.coeff(1) < S::zero() { -S::one() } else { S::one() };
        Self {
            v: self.v.scale(s / norm),
            normalization: Normalization::Projective,
        }
    }

    /// Scale-free distance between the null rays: coefficient distance of the
    /// unit representatives, minimized over the sign.
    pub fn projective_distance(&self, other: &Self) -> S {
        projective_distance(&self.v, &other.v)
    }

    pub fn project(&self) -> Projected<S> {
        project(self)
    }
}

/// Coefficient distance between unit representatives of two rays, minimized over sign.
pub fn projective_distance<S: Scalar>(a: &Multivector<S>, b: &Multivector<S>) -> S {
    let (na, nb) = (a.norm(), b.norm());
    if na.is_zero() || nb.is_zero() {
        return if na == nb { S::zero() } else { S::one() };
    }
    let mut plus = S::zero();
    let mut minus = S::zero();
    for (&x, &y) in a.coeffs().iter().zip(b.coeffs()) {
        let (x, y) = (x / na, y / nb);
        plus += (x - y) * (x - y);
        minus += (x + y) * (x + y);
    }
    plus.min(minus).sqrt()
}

/// `x -> e_0 + sum x_i e_i + |x|^2 e_inf`.
pub fn lift<S: Scalar>(alg: &Arc<Algebra>, x: &[S]) -> Result<ConformalPoint<S>, GeometryError> {
    if x.len() != alg.n() {
        return Err(GeometryError::CoordinateCount {
            expected: alg.n(),
            found: x.len(),
        });
    }
    let sq = x.iter().fold(S::zero(), |acc, &c| acc + c * c);
    let v = Multivector::from_null_basis(alg, S::one(), x, sq)?;
    Ok(ConformalPoint {
        v,
        normalization: Normalization::Chart,
    })
}

/// Euclidean coordinates of a point, or [`Projected::Infinity`] for the class of `e_inf`.
pub fn project<S: Scalar>(p: &ConformalPoint<S>) -> Projected<S> {
    if p.is_at_infinity() {
        return Projected::Infinity;
    }
    let w = p.chart_weight();
    Projected::Finite((1..=p.algebra().n()).map(|i| p.v.coeff(1 << i) / w).collect())
}

/// Checked projection of an arbitrary grade-1 element.
pub fn project_vector<S: Scalar>(v: &Multivector<S>) -> Result<Projected<S>, GeometryError> {
    Ok(project(&ConformalPoint::new(v.clone())?))
}

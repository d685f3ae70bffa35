use std::sync::Arc;

use nalgebra::DMatrix;

use super::point::ConformalPoint;
use crate::clifford::{blade_norm_sq, dual, inner, subspace, undual, Algebra, Multivector};
use crate::error::GeometryError;
use crate::scalar::Scalar;
use crate::tolerance;

/// A hypersphere (or hyperplane) of the conformal `n`-sphere: a grade-1
/// element with `s^2 = -1`.
#[derive(Clone, Debug, PartialEq)]
pub struct Hypersphere<S: Scalar> {
    v: Multivector<S>,
}

/// Euclidean readout of a [`Hypersphere`].
#[derive(Clone, Debug, PartialEq)]
pub enum SphereReadout<S> {
    Sphere { center: Vec<S>, radius: S },
    /// The plane `<x, normal> = offset`.
    Plane { normal: Vec<S>, offset: S },
}

impl<S: Scalar> Hypersphere<S> {
    /// Validates a unit spacelike vector.
    pub fn new(v: Multivector<S>) -> Result<Self, GeometryError> {
        let rel = S::lit(tolerance::GEOMETRIC);
        let v = v.expect_grade(1, rel)?;
        let q = inner(&v, &v);
        if (q - S::one()).abs() > S::lit(tolerance::UNIT) * v.norm() * v.norm() {
            return Err(crate::AlgebraError::NotUnitVector {
                square: (-q).to_f64_lossy(),
            }
            .into());
        }
        Ok(Self { v })
    }

    /// Rescales a spacelike vector to `s^2 = -1`.
    pub fn normalize(v: &Multivector<S>) -> Result<Self, GeometryError> {
        let v = v.expect_grade(1, S::lit(tolerance::GEOMETRIC))?;
        let q = inner(&v, &v);
        if q <= S::lit(tolerance::GEOMETRIC) * v.norm() * v.norm() {
            return Err(crate::AlgebraError::NotUnitVector {
                square: (-q).to_f64_lossy(),
            }
            .into());
        }
        Ok(Self {
            v: v.scale(S::one() / q.sqrt()),
        })
    }

    pub fn vector(&self) -> &Multivector<S> {
        &self.v
    }

    pub fn into_vector(self) -> Multivector<S> {
        self.v
    }

    /// Planes contain `e_inf`: `s e_inf + e_inf s = 0`.
    pub fn is_plane(&self) -> bool {
        self.v.null_coords().0.abs() <= S::lit(tolerance::GEOMETRIC) * self.v.norm()
    }

    /// Center and radius, or normal and offset for planes. Spheres are read
    /// from the representative whose `e_0` coefficient is `1/r`.
    pub fn readout(&self) -> SphereReadout<S> {
        let n = self.v.n();
        let (a, b) = self.v.null_coords();
        let spatial: Vec<S> = (1..=n).map(|i| self.v.coeff(1 << i)).collect();
        if self.is_plane() {
            // s = u + 2 d e_inf with |u| = 1.
            return SphereReadout::Plane {
                normal: spatial,
                offset: b / S::lit(2.0),
            };
        }
        let sign = if a < S::zero() { -S::one() } else { S::one() };
        let a = a * sign;
        SphereReadout::Sphere {
            center: spatial.iter().map(|&x| x * sign / a).collect(),
            radius: S::one() / a,
        }
    }
}

/// Sphere with the given center and radius: `(e_0 + m + (|m|^2 - r^2) e_inf) / r`.
pub fn hypersphere<S: Scalar>(alg: &Arc<Algebra>, center: &[S], radius: S) -> Result<Hypersphere<S>, GeometryError> {
    if radius <= S::zero() {
        return Err(GeometryError::NonPositiveRadius(radius.to_f64_lossy()));
    }
    if center.len() != alg.n() {
        return Err(GeometryError::CoordinateCount {
            expected: alg.n(),
            found: center.len(),
        });
    }
    let sq = center.iter().fold(S::zero(), |acc, &c| acc + c * c);
    let inv = S::one() / radius;
    let spatial: Vec<S> = center.iter().map(|&c| c * inv).collect();
    let v = Multivector::from_null_basis(alg, inv, &spatial, (sq - radius * radius) * inv)?;
    Ok(Hypersphere { v })
}

/// Plane `<x, normal> = offset` with a unit normal: `normal + 2 offset e_inf`.
pub fn plane<S: Scalar>(alg: &Arc<Algebra>, normal: &[S], offset: S) -> Result<Hypersphere<S>, GeometryError> {
    if normal.len() != alg.n() {
        return Err(GeometryError::CoordinateCount {
            expected: alg.n(),
            found: normal.len(),
        });
    }
    let len = normal.iter().fold(S::zero(), |acc, &c| acc + c * c).sqrt();
    if (len - S::one()).abs() > S::lit(tolerance::UNIT) {
        return Err(GeometryError::NonUnitNormal(len.to_f64_lossy()));
    }
    let v = Multivector::from_null_basis(alg, S::zero(), normal, S::lit(2.0) * offset)?;
    Ok(Hypersphere { v })
}

/// Which of the two blade representations a [`SphereBlade`] uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BladeRep {
    /// Grade `m + 2`, spanned by points of the sphere.
    Timelike,
    /// Grade `n - m`, spanned by hyperspheres intersecting in the sphere.
    Spacelike,
}

/// An `m`-sphere of the conformal `n`-sphere as a pure blade.
#[derive(Clone, Debug, PartialEq)]
pub struct SphereBlade<S: Scalar> {
    blade: Multivector<S>,
    grade: usize,
    rep: BladeRep,
}

impl<S: Scalar> SphereBlade<S> {
    /// Wraps a pure timelike grade-`(m+2)` blade.
    pub fn timelike(blade: Multivector<S>, grade: usize) -> Result<Self, GeometryError> {
        Self::checked(blade, grade, BladeRep::Timelike)
    }

    /// Wraps a pure spacelike grade-`(n-m)` blade.
    pub fn spacelike(blade: Multivector<S>, grade: usize) -> Result<Self, GeometryError> {
        Self::checked(blade, grade, BladeRep::Spacelike)
    }

    fn checked(blade: Multivector<S>, grade: usize, rep: BladeRep) -> Result<Self, GeometryError> {
        let n = blade.n();
        let valid_grade = match rep {
            BladeRep::Timelike => (2..=n + 1).contains(&grade),
            BladeRep::Spacelike => (1..=n).contains(&grade),
        };
        if !valid_grade {
            return Err(GeometryError::SphereDimension { m: grade, n });
        }
        if !crate::clifford::is_pure_blade(&blade, grade)? {
            return Err(GeometryError::NotPure);
        }
        let blade = blade.grade(grade);
        let sq = blade_norm_sq(&blade, grade);
        let scale = blade.norm() * blade.norm();
        let expected_sign_ok = match rep {
            BladeRep::Timelike => sq < -S::lit(tolerance::GEOMETRIC) * scale,
            BladeRep::Spacelike => sq > S::lit(tolerance::GEOMETRIC) * scale,
        };
        if !expected_sign_ok {
            return Err(GeometryError::NoRealPoints);
        }
        Ok(Self { blade, grade, rep })
    }

    pub(crate) fn timelike_unchecked(blade: Multivector<S>, grade: usize) -> Self {
        Self {
            blade,
            grade,
            rep: BladeRep::Timelike,
        }
    }

    pub fn blade(&self) -> &Multivector<S> {
        &self.blade
    }

    pub fn grade(&self) -> usize {
        self.grade
    }

    pub fn rep(&self) -> BladeRep {
        self.rep
    }

    /// Dimension `m` of the sphere.
    pub fn sphere_dim(&self) -> usize {
        match self.rep {
            BladeRep::Timelike => self.grade - 2,
            BladeRep::Spacelike => self.blade.n() - self.grade,
        }
    }

    pub fn to_timelike(&self) -> Self {
        match self.rep {
            BladeRep::Timelike => self.clone(),
            BladeRep::Spacelike => Self {
                blade: dual(&self.blade).grade(self.blade.n() + 2 - self.grade),
                grade: self.blade.n() + 2 - self.grade,
                rep: BladeRep::Timelike,
            },
        }
    }

    pub fn to_spacelike(&self) -> Self {
        match self.rep {
            BladeRep::Spacelike => self.clone(),
            BladeRep::Timelike => Self {
                blade: undual(&self.blade).grade(self.blade.n() + 2 - self.grade),
                grade: self.blade.n() + 2 - self.grade,
                rep: BladeRep::Spacelike,
            },
        }
    }

    /// Orthonormal coefficient basis of the timelike span (the points' span).
    pub fn span(&self) -> DMatrix<S> {
        let t = self.to_timelike();
        subspace::blade_basis(&t.blade, t.grade)
    }

    /// Normalized incidence residual of a point.
    pub fn incidence_residual(&self, p: &ConformalPoint<S>) -> S {
        blade_incidence_residual(p.vector(), &self.blade, self.grade, self.rep)
    }

    pub fn contains(&self, p: &ConformalPoint<S>) -> bool {
        self.incidence_residual(p) <= S::lit(tolerance::GEOMETRIC)
    }

    /// Scale-free distance to another sphere blade of the same dimension.
    pub fn projective_distance(&self, other: &Self) -> S {
        let (a, b) = (self.to_timelike(), other.to_timelike());
        super::point::projective_distance(&a.blade, &b.blade)
    }
}

/// `|p ∧ B| / (|p| |B|)` for timelike blades, the contraction analogue
/// `|pB - (-1)^k Bp| / (2 |p| |B|)` for spacelike ones.
fn blade_incidence_residual<S: Scalar>(
    p: &Multivector<S>,
    blade: &Multivector<S>,
    grade: usize,
    rep: BladeRep,
) -> S {
    let scale = p.norm() * blade.norm();
    if scale.is_zero() {
        return S::zero();
    }
    let r = match rep {
        BladeRep::Timelike => p.wedge(blade).norm(),
        BladeRep::Spacelike => {
            let pb = p * blade;
            let bp = blade * p;
            let diff = if grade.is_multiple_of(2) { &pb - &bp } else { &pb + &bp };
            diff.norm() / S::lit(2.0)
        }
    };
    r / scale
}

use std::sync::Arc;

use super::{Algebra, Multivector};
use crate::error::AlgebraError;
use crate::scalar::Scalar;
use crate::tolerance;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

/// Product of unit grade-1 elements, acting on the algebra by `x -> Φ⁻¹ x Φ`.
#[derive(Clone, Debug, PartialEq)]
pub struct Versor<S: Scalar> {
    mv: Multivector<S>,
    parity: Parity,
}

impl<S: Scalar> Versor<S> {
    pub fn identity(alg: &Arc<Algebra>) -> Self {
        Self {
            mv: Multivector::one(alg),
            parity: Parity::Even,
        }
    }

    /// Product `v_1 v_2 ... v_k` of unit vectors (`v^2 = ±1`).
    pub fn from_unit_vectors(alg: &Arc<Algebra>, vectors: &[Multivector<S>]) -> Result<Self, AlgebraError> {
        let mut out = Self::identity(alg);
        for v in vectors {
            out = out.then_vector(v)?;
        }
        Ok(out)
    }

    /// Appends a unit vector on the right: `Φ v`.
    pub fn then_vector(&self, v: &Multivector<S>) -> Result<Self, AlgebraError> {
        let v = v.expect_grade(1, S::lit(tolerance::GEOMETRIC))?;
        let square = (&v * &v).scalar_part();
        if (square.abs() - S::one()).abs() > S::lit(tolerance::UNIT) {
            return Err(AlgebraError::NotUnitVector {
                square: square.to_f64_lossy(),
            });
        }
        Ok(Self {
            mv: self.mv.try_mul(&v)?,
            parity: self.parity.flip(),
        })
    }

    /// Prepends a unit vector on the left: `v Φ`.
    pub fn after_vector(&self, v: &Multivector<S>) -> Result<Self, AlgebraError> {
        let wrapped = Self::identity(self.mv.algebra()).then_vector(v)?;
        Ok(wrapped.compose(self))
    }

    /// Validates an arbitrary multivector as a unit versor of homogeneous parity.
    pub fn from_multivector(mv: Multivector<S>) -> Result<Self, AlgebraError> {
        let rel = S::lit(tolerance::GEOMETRIC);
        let grades = mv.grades(rel);
        let parity = match (grades.iter().all(|g| g % 2 == 0), grades.iter().all(|g| g % 2 == 1)) {
            (true, _) => Parity::Even,
            (_, true) => Parity::Odd,
            _ => return Err(AlgebraError::MixedGrade(grades)),
        };
        let out = Self { mv, parity };
        let residual = out.unit_residual();
        if residual > S::lit(tolerance::UNIT) {
            return Err(AlgebraError::NotUnitVersor {
                residual: residual.to_f64_lossy(),
            });
        }
        Ok(out)
    }

    pub fn multivector(&self) -> &Multivector<S> {
        &self.mv
    }

    pub fn into_multivector(self) -> Multivector<S> {
        self.mv
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        self.mv.algebra()
    }

    /// `Φ̃ Φ`, a scalar `±1` for unit versors.
    pub fn reverse_product(&self) -> Multivector<S> {
        &self.mv.reverse() * &self.mv
    }

    /// Distance of `Φ̃Φ` from `±1`, relative to `|Φ|^2`.
    pub fn unit_residual(&self) -> S {
        let mut rp = self.reverse_product();
        let s = rp.scalar_part();
        let target = if s >= S::zero() { S::one() } else { -S::one() };
        let mut coeffs = rp.coeffs().to_vec();
        coeffs[0] = s - target;
        rp = Multivector::from_coeffs(self.mv.algebra(), coeffs).expect("same algebra");
        let scale = self.mv.norm() * self.mv.norm();
        rp.norm() / scale.max(S::one())
    }

    pub fn inverse(&self) -> Self {
        let s = self.reverse_product().scalar_part();
        Self {
            mv: self.mv.reverse().scale(S::one() / s),
            parity: self.parity,
        }
    }

    /// Sandwich action `Φ⁻¹ x Φ`.
    pub fn apply(&self, x: &Multivector<S>) -> Multivector<S> {
        let inv = self.inverse();
        &(&inv.mv * x) * &self.mv
    }

    /// Action on a grade-1 element, projected back to grade 1.
    pub fn apply_vector(&self, x: &Multivector<S>) -> Multivector<S> {
        self.apply(x).grade(1)
    }

    /// `Φ Ψ`: acts as `self` followed by `next`.
    pub fn compose(&self, next: &Self) -> Self {
        Self {
            mv: &self.mv * &next.mv,
            parity: if self.parity == next.parity {
                Parity::Even
            } else {
                Parity::Odd
            },
        }
    }

    pub fn negated(&self) -> Self {
        Self {
            mv: -&self.mv,
            parity: self.parity,
        }
    }
}

impl Parity {
    fn flip(self) -> Self {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }
}

/// Checked sandwich `Φ⁻¹ x Φ`.
pub fn versor_apply<S: Scalar>(versor: &Versor<S>, x: &Multivector<S>) -> Result<Multivector<S>, AlgebraError> {
    if versor.algebra().n() != x.n() {
        return Err(AlgebraError::SignatureMismatch {
            left: versor.algebra().n(),
            right: x.n(),
        });
    }
    let residual = versor.unit_residual();
    if residual > S::lit(tolerance::UNIT) {
        return Err(AlgebraError::NotUnitVersor {
            residual: residual.to_f64_lossy(),
        });
    }
    Ok(versor.apply(x))
}

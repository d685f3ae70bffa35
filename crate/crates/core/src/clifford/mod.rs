//! Clifford algebra of Minkowski space `R^{n+2}_1` with the null basis
//! `e_0, e_1, ..., e_n, e_inf`.
//!
//! Conventions: `e_i^2 = -1`, `e_0 e_inf + e_inf e_0 = 1`, and the Minkowski
//! inner product on grade-1 elements is `<u, v> = -(uv + vu) / 2`, so spatial
//! generators are unit spacelike (`<e_i, e_i> = 1`) and `<e_0, e_inf> = -1/2`.

mod algebra;
mod multivector;
pub mod subspace;
mod versor;

use std::sync::Arc;

pub use algebra::{Algebra, MAX_DIMENSION};
pub use multivector::{blade_name, Multivector};
pub use versor::{versor_apply, Parity, Versor};

use crate::error::AlgebraError;
use crate::scalar::Scalar;
use crate::tolerance;

/// Builds the algebra for the conformal `n`-sphere.
pub fn algebra_init(n: usize) -> Result<Arc<Algebra>, AlgebraError> {
    Algebra::new(n)
}

pub fn geometric_product<S: Scalar>(a: &Multivector<S>, b: &Multivector<S>) -> Result<Multivector<S>, AlgebraError> {
    a.try_mul(b)
}

pub fn wedge<S: Scalar>(a: &Multivector<S>, b: &Multivector<S>) -> Result<Multivector<S>, AlgebraError> {
    if a.n() != b.n() {
        return Err(AlgebraError::SignatureMismatch {
            left: a.n(),
            right: b.n(),
        });
    }
    Ok(a.wedge(b))
}

pub fn grade_project<S: Scalar>(a: &Multivector<S>, k: usize) -> Multivector<S> {
    a.grade(k)
}

pub fn reverse<S: Scalar>(a: &Multivector<S>) -> Multivector<S> {
    a.reverse()
}

/// `<u, v>` of the grade-1 parts, without checking for other grades.
#[inline]
pub fn inner<S: Scalar>(u: &Multivector<S>, v: &Multivector<S>) -> S {
    let alg = u.algebra();
    let mut acc = -(u.coeff(1) * v.coeff(1));
    for k in 1..alg.generators() {
        let b = 1 << k;
        acc += u.coeff(b) * v.coeff(b);
    }
    acc
}

/// `<u, v> = -(uv + vu) / 2` for grade-1 `u`, `v`.
pub fn minkowski_inner<S: Scalar>(u: &Multivector<S>, v: &Multivector<S>) -> Result<S, AlgebraError> {
    let rel = S::lit(tolerance::GEOMETRIC);
    if u.n() != v.n() {
        return Err(AlgebraError::SignatureMismatch {
            left: u.n(),
            right: v.n(),
        });
    }
    u.expect_grade(1, rel)?;
    v.expect_grade(1, rel)?;
    Ok(inner(u, v))
}

/// Adjoint action `[v, B] = vB - Bv` of a bivector on a vector.
pub fn adjoint_bracket<S: Scalar>(v: &Multivector<S>, bivector: &Multivector<S>) -> Result<Multivector<S>, AlgebraError> {
    let rel = S::lit(tolerance::GEOMETRIC);
    let v = v.expect_grade(1, rel)?;
    let b = bivector.expect_grade(2, rel)?;
    Ok(v.try_mul(&b)?.grade(1) - b.try_mul(&v)?.grade(1))
}

/// `ε = (e_0 - e_inf) ∧ e_1 ∧ ... ∧ e_n ∧ (e_0 + e_inf)`.
pub fn pseudoscalar<S: Scalar>(alg: &Arc<Algebra>) -> Multivector<S> {
    let mut eps = &Multivector::e0(alg) - &Multivector::einf(alg);
    for i in 1..=alg.n() {
        eps = eps.wedge(&Multivector::generator(alg, i));
    }
    eps.wedge(&(&Multivector::e0(alg) + &Multivector::einf(alg)))
}

/// Left multiplication by `ε`; exchanges the grade-`(n-m)` and grade-`(m+2)`
/// representations of an `m`-sphere and flips the sign of [`blade_norm_sq`].
pub fn dual<S: Scalar>(v: &Multivector<S>) -> Multivector<S> {
    &pseudoscalar(v.algebra()) * v
}

/// Inverse of [`dual`].
pub fn undual<S: Scalar>(v: &Multivector<S>) -> Multivector<S> {
    let eps = pseudoscalar::<S>(v.algebra());
    let sq = (&eps * &eps).scalar_part();
    (&eps * v).scale(S::one() / sq)
}

/// `|B|^2 = det(<b_i, b_j>)` for a blade `B = b_1 ∧ ... ∧ b_k`.
pub fn blade_norm_sq<S: Scalar>(blade: &Multivector<S>, grade: usize) -> S {
    let s = (&blade.reverse() * blade).scalar_part();
    if grade.is_multiple_of(2) {
        s
    } else {
        -s
    }
}

/// Whether a grade-`k` element factors as a wedge of `k` vectors.
///
/// Bivectors use `a ∧ a = 0`; higher grades use the dimension of
/// `{x : x ∧ a = 0}`, which equals `k` exactly for blades.
pub fn is_pure_blade<S: Scalar>(a: &Multivector<S>, k: usize) -> Result<bool, AlgebraError> {
    let rel = S::lit(tolerance::GEOMETRIC);
    let a = a.expect_grade(k, rel)?;
    let scale = a.norm();
    if scale.is_zero() {
        return Ok(false);
    }
    match k {
        0 | 1 => Ok(true),
        2 => Ok(a.wedge(&a).norm() <= rel * scale * scale),
        _ if k >= a.algebra().generators() => Ok(true),
        _ => Ok(subspace::blade_span(&a, k, rel).ncols() == k),
    }
}

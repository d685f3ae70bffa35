use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::sync::Arc;

use super::Algebra;
use crate::error::AlgebraError;
use crate::scalar::Scalar;

/// Element of the Clifford algebra of `R^{n+2}_1`, stored densely over the
/// internal orthonormal blade basis.
#[derive(Clone)]
pub struct Multivector<S: Scalar> {
    alg: Arc<Algebra>,
    coeffs: Vec<S>,
}

impl<S: Scalar> Multivector<S> {
    pub fn zero(alg: &Arc<Algebra>) -> Self {
        Self {
            alg: Arc::clone(alg),
            coeffs: vec![S::zero(); alg.blade_count()],
        }
    }

    pub fn scalar(alg: &Arc<Algebra>, value: S) -> Self {
        let mut out = Self::zero(alg);
        out.coeffs[0] = value;
        out
    }

    pub fn one(alg: &Arc<Algebra>) -> Self {
        Self::scalar(alg, S::one())
    }

    pub fn from_coeffs(alg: &Arc<Algebra>, coeffs: Vec<S>) -> Result<Self, AlgebraError> {
        if coeffs.len() != alg.blade_count() {
            return Err(AlgebraError::CoefficientLength {
                expected: alg.blade_count(),
                found: coeffs.len(),
            });
        }
        Ok(Self {
            alg: Arc::clone(alg),
            coeffs,
        })
    }

    pub fn basis_blade(alg: &Arc<Algebra>, blade: usize) -> Self {
        let mut out = Self::zero(alg);
        out.coeffs[blade] = S::one();
        out
    }

    /// Internal orthonormal generator `f_k`, `0 <= k <= n+1`.
    pub fn generator(alg: &Arc<Algebra>, k: usize) -> Self {
        assert!(k < alg.generators(), "generator f_{k} out of range");
        Self::basis_blade(alg, 1 << k)
    }

    /// Spatial generator `e_i`, `1 <= i <= n`.
    pub fn e(alg: &Arc<Algebra>, i: usize) -> Result<Self, AlgebraError> {
        if i == 0 || i > alg.n() {
            return Err(AlgebraError::GeneratorIndex { index: i, n: alg.n() });
        }
        Ok(Self::generator(alg, i))
    }

    /// Null generator `e_0 = (f_0 + f_{n+1}) / 2`.
    pub fn e0(alg: &Arc<Algebra>) -> Self {
        let half = S::lit(0.5);
        let mut out = Self::zero(alg);
        out.coeffs[1] = half;
        out.coeffs[1 << alg.closing_generator()] = half;
        out
    }

    /// Null generator `e_inf = (f_0 - f_{n+1}) / 2`.
    pub fn einf(alg: &Arc<Algebra>) -> Self {
        let half = S::lit(0.5);
        let mut out = Self::zero(alg);
        out.coeffs[1] = half;
        out.coeffs[1 << alg.closing_generator()] = -half;
        out
    }

    /// Grade-1 element from internal coordinates `(f_0, ..., f_{n+1})`.
    pub fn vector(alg: &Arc<Algebra>, coords: &[S]) -> Result<Self, AlgebraError> {
        if coords.len() != alg.generators() {
            return Err(AlgebraError::CoefficientLength {
                expected: alg.generators(),
                found: coords.len(),
            });
        }
        let mut out = Self::zero(alg);
        for (k, &c) in coords.iter().enumerate() {
            out.coeffs[1 << k] = c;
        }
        Ok(out)
    }

    /// Grade-1 element `a e_0 + sum x_i e_i + b e_inf`.
    pub fn from_null_basis(alg: &Arc<Algebra>, e0: S, spatial: &[S], einf: S) -> Result<Self, AlgebraError> {
        if spatial.len() != alg.n() {
            return Err(AlgebraError::CoefficientLength {
                expected: alg.n(),
                found: spatial.len(),
            });
        }
        let half = S::lit(0.5);
        let mut out = Self::zero(alg);
        out.coeffs[1] = (e0 + einf) * half;
        out.coeffs[1 << alg.closing_generator()] = (e0 - einf) * half;
        for (i, &x) in spatial.iter().enumerate() {
            out.coeffs[1 << (i + 1)] = x;
        }
        Ok(out)
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }

    pub fn n(&self) -> usize {
        self.alg.n()
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn coeff(&self, blade: usize) -> S {
        self.coeffs[blade]
    }

    pub fn scalar_part(&self) -> S {
        self.coeffs[0]
    }

    /// Internal coordinates of the grade-1 part, `(f_0, ..., f_{n+1})`.
    pub fn vector_coords(&self) -> Vec<S> {
        (0..self.alg.generators()).map(|k| self.coeffs[1 << k]).collect()
    }

    /// Coefficients `(e_0, e_inf)` of the grade-1 part in the null basis.
    pub fn null_coords(&self) -> (S, S) {
        let a = self.coeffs[1];
        let b = self.coeffs[1 << self.alg.closing_generator()];
        (a + b, a - b)
    }

    /// Euclidean norm of the coefficient array. Metric independent; used for
    /// scaling relative tolerances.
    pub fn norm(&self) -> S {
        self.coeffs.iter().fold(S::zero(), |acc, &c| acc + c * c).sqrt()
    }

    pub fn max_abs(&self) -> S {
        self.coeffs.iter().fold(S::zero(), |acc, &c| acc.max(c.abs()))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn grade(&self, k: usize) -> Self {
        let mut out = Self::zero(&self.alg);
        for (b, (&c, o)) in self.coeffs.iter().zip(out.coeffs.iter_mut()).enumerate() {
            if self.alg.grade_of(b) == k {
                *o = c;
            }
        }
        out
    }

    /// Grades carrying a coefficient above `rel_tol * max_abs`.
    pub fn grades(&self, rel_tol: S) -> Vec<usize> {
        let cut = self.max_abs() * rel_tol;
        let mut present = vec![false; self.alg.generators() + 1];
        for (b, &c) in self.coeffs.iter().enumerate() {
            if c.abs() > cut {
                present[self.alg.grade_of(b)] = true;
            }
        }
        present
            .iter()
            .enumerate()
            .filter_map(|(k, &p)| p.then_some(k))
            .collect()
    }

    /// The single grade of a homogeneous element, `None` for zero or mixed elements.
    pub fn homogeneous_grade(&self, rel_tol: S) -> Option<usize> {
        match self.grades(rel_tol).as_slice() {
            [k] => Some(*k),
            _ => None,
        }
    }

    /// Checks that `self` is (numerically) of pure grade `k` and returns the projection.
    pub fn expect_grade(&self, k: usize, rel_tol: S) -> Result<Self, AlgebraError> {
        let grades = self.grades(rel_tol);
        if grades.iter().all(|&g| g == k) {
            Ok(self.grade(k))
        } else if grades.len() > 1 {
            Err(AlgebraError::MixedGrade(grades))
        } else {
            Err(AlgebraError::WrongGrade { expected: k })
        }
    }

    pub fn reverse(&self) -> Self {
        let mut out = self.clone();
        for (b, c) in out.coeffs.iter_mut().enumerate() {
            let k = self.alg.grade_of(b);
            if (k * k.saturating_sub(1) / 2) % 2 == 1 {
                *c = -*c;
            }
        }
        out
    }

    pub fn scale(&self, s: S) -> Self {
        let mut out = self.clone();
        out.coeffs.iter_mut().for_each(|c| *c *= s);
        out
    }

    /// Rescales to unit coefficient norm; zero stays zero.
    pub fn normalized(&self) -> Self {
        let norm = self.norm();
        if norm.is_zero() {
            self.clone()
        } else {
            self.scale(S::one() / norm)
        }
    }

    fn check(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.alg.same(&other.alg) {
            Ok(())
        } else {
            Err(AlgebraError::SignatureMismatch {
                left: self.n(),
                right: other.n(),
            })
        }
    }

    fn product_filtered(&self, other: &Self, keep: impl Fn(usize, usize) -> bool) -> Self {
        let blades = self.alg.blade_count();
        let mut out = vec![S::zero(); blades];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                if b.is_zero() || !keep(i, j) {
                    continue;
                }
                let term = a * b;
                if self.alg.product_sign(i, j) > 0 {
                    out[i ^ j] += term;
                } else {
                    out[i ^ j] -= term;
                }
            }
        }
        Self {
            alg: Arc::clone(&self.alg),
            coeffs: out,
        }
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check(other)?;
        Ok(self.product_filtered(other, |_, _| true))
    }

    /// Exterior product.
    pub fn wedge(&self, other: &Self) -> Self {
        self.check(other).expect("wedge of multivectors from different algebras");
        self.product_filtered(other, |i, j| i & j == 0)
    }

    /// Left contraction `self ⌋ other`.
    pub fn left_contraction(&self, other: &Self) -> Self {
        self.check(other)
            .expect("contraction of multivectors from different algebras");
        self.product_filtered(other, |i, j| i & j == i)
    }

    /// Symmetric product `uv + vu` for grade-1 `self`, `other`.
    pub fn anticommutator(&self, other: &Self) -> Self {
        &(self * other) + &(other * self)
    }

    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    /// Bitwise comparison up to an absolute coefficient tolerance.
    pub fn approx_eq(&self, other: &Self, tol: S) -> bool {
        self.alg.same(&other.alg)
            && self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .all(|(&a, &b)| (a - b).abs() <= tol)
    }

    /// Coefficient-norm distance.
    pub fn distance(&self, other: &Self) -> S {
        (self - other).norm()
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(S) -> T) -> Multivector<T> {
        Multivector {
            alg: Arc::clone(&self.alg),
            coeffs: self.coeffs.iter().map(|&c| f(c)).collect(),
        }
    }
}

/// Name of an internal basis blade, e.g. `f0f3`.
pub fn blade_name(blade: usize) -> String {
    if blade == 0 {
        return "1".to_owned();
    }
    (0..usize::BITS as usize)
        .filter(|k| blade & (1 << k) != 0)
        .map(|k| format!("f{k}"))
        .collect()
}

impl<S: Scalar> PartialEq for Multivector<S> {
    fn eq(&self, other: &Self) -> bool {
        self.alg.same(&other.alg) && self.coeffs == other.coeffs
    }
}

impl<S: Scalar> fmt::Debug for Multivector<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Multivector(n={}; ", self.n())?;
        let mut first = true;
        for (b, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c:?} {}", blade_name(b))?;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, ")")
    }
}

impl<S: Scalar> fmt::Display for Multivector<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl<'a, S: Scalar> Mul<&'a Multivector<S>> for &'a Multivector<S> {
    type Output = Multivector<S>;

    /// Geometric product. Panics on a signature mismatch; use
    /// [`Multivector::try_mul`] for a checked product.
    fn mul(self, rhs: &'a Multivector<S>) -> Multivector<S> {
        self.try_mul(rhs).expect("geometric product of multivectors from different algebras")
    }
}

impl<S: Scalar> Mul for Multivector<S> {
    type Output = Multivector<S>;

    fn mul(self, rhs: Multivector<S>) -> Multivector<S> {
        &self * &rhs
    }
}

impl<'a, S: Scalar> Add<&'a Multivector<S>> for &'a Multivector<S> {
    type Output = Multivector<S>;

    fn add(self, rhs: &'a Multivector<S>) -> Multivector<S> {
        self.check(rhs).expect("sum of multivectors from different algebras");
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<S: Scalar> Add for Multivector<S> {
    type Output = Multivector<S>;

    fn add(self, rhs: Multivector<S>) -> Multivector<S> {
        &self + &rhs
    }
}

impl<S: Scalar> AddAssign<&Multivector<S>> for Multivector<S> {
    fn add_assign(&mut self, rhs: &Multivector<S>) {
        self.check(rhs).expect("sum of multivectors from different algebras");
        for (a, &b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
    }
}

impl<'a, S: Scalar> Sub<&'a Multivector<S>> for &'a Multivector<S> {
    type Output = Multivector<S>;

    fn sub(self, rhs: &'a Multivector<S>) -> Multivector<S> {
        self.check(rhs).expect("difference of multivectors from different algebras");
        let mut out = self.clone();
        for (a, &b) in out.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a -= b;
        }
        out
    }
}

impl<S: Scalar> Sub for Multivector<S> {
    type Output = Multivector<S>;

    fn sub(self, rhs: Multivector<S>) -> Multivector<S> {
        &self - &rhs
    }
}

impl<S: Scalar> Neg for &Multivector<S> {
    type Output = Multivector<S>;

    fn neg(self) -> Multivector<S> {
        self.scale(-S::one())
    }
}

impl<S: Scalar> Neg for Multivector<S> {
    type Output = Multivector<S>;

    fn neg(self) -> Multivector<S> {
        -&self
    }
}

use super::point::{project, ConformalPoint};
use crate::clifford::{blade_norm_sq, Multivector};
use crate::error::GeometryError;
use crate::scalar::Scalar;
use crate::tolerance;

/// Cross ratio of four points as `r0 + r4` with `r0` scalar and `r4` a 4-vector.
///
/// `r0 ± i |r4|` is the complex cross ratio of the points on a 2-sphere
/// through them, so `r4norm` vanishes exactly for concircular quadruples.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CrossRatioValue<S> {
    pub r0: S,
    pub r4norm: S,
    /// `|(p1p4 + p4p1)(p2p3 + p3p2)|` for the representatives used: lifts
    /// in the chart where `p1` is the origin and the farthest point has
    /// distance 1, or unit-norm vectors if a point is at infinity.
    pub denominator: S,
}

impl<S: Scalar> CrossRatioValue<S> {
    /// Real and imaginary parts, fixing the conjugation ambiguity to `Im >= 0`.
    pub fn complex(&self) -> (S, S) {
        (self.r0, self.r4norm)
    }

    /// `r4norm` times the denominator: the size of the 4-vector part of the
    /// numerator for unit-norm points. Rounding errors in `r4norm` scale with
    /// the inverse denominator, so this is the quantity to threshold when
    /// some of the points nearly coincide.
    pub fn concircularity_residual(&self) -> S {
        self.r4norm * self.denominator
    }

    pub fn is_concircular(&self, tol: S) -> bool {
        self.concircularity_residual() <= tol
    }
}

/// `(p1 p2 p3 p4 + p4 p3 p2 p1) / ((p1 p4 + p4 p1)(p2 p3 + p3 p2))`.
pub fn cross_ratio<S: Scalar>(
    p1: &ConformalPoint<S>,
    p2: &ConformalPoint<S>,
    p3: &ConformalPoint<S>,
    p4: &ConformalPoint<S>,
) -> Result<CrossRatioValue<S>, GeometryError> {
    let [a, b, c, d] = normalized_chart([p1, p2, p3, p4]).unwrap_or_else(|| [p1, p2, p3, p4].map(|p| p.unit().into_vector()));
    let den14 = a.anticommutator(&d).scalar_part();
    let den23 = b.anticommutator(&c).scalar_part();
    let tol = S::lit(tolerance::GEOMETRIC);
    if den14.abs() <= tol || den23.abs() <= tol {
        return Err(GeometryError::DegenerateDenominator);
    }
    let forward = &(&(&a * &b) * &c) * &d;
    let backward = &(&(&d * &c) * &b) * &a;
    let num = &forward + &backward;
    let scale = S::one() / (den14 * den23);
    let r4 = num.grade(4).scale(scale);
    Ok(CrossRatioValue {
        r0: num.scalar_part() * scale,
        r4norm: blade_norm_sq(&r4, 4).abs().sqrt(),
        denominator: (den14 * den23).abs(),
    })
}

/// Lifts of the points after the similarity taking `p1` to the origin and
/// the farthest point to distance 1. The cross ratio is unchanged, and far
/// or clustered points no longer lose digits to nearly parallel null
/// vectors. `None` if a point is at infinity or all coincide.
fn normalized_chart<S: Scalar>(points: [&ConformalPoint<S>; 4]) -> Option<[Multivector<S>; 4]> {
    let xs: Vec<Vec<S>> = points.iter().map(|p| project(p).finite()).collect::<Option<_>>()?;
    let diffs: Vec<Vec<S>> = xs.iter().map(|x| x.iter().zip(&xs[0]).map(|(a, b)| *a - *b).collect()).collect();
    let norm = |d: &[S]| d.iter().fold(S::zero(), |acc, c| acc + *c * *c).sqrt();
    let len = diffs.iter().fold(S::zero(), |acc, d| acc.max(norm(d)));
    if len.is_zero() {
        return None;
    }
    let alg = points[0].algebra();
    let lifted: Vec<Multivector<S>> = diffs
        .iter()
        .map(|d| {
            let y: Vec<S> = d.iter().map(|c| *c / len).collect();
            let q = norm(&y);
            Multivector::from_null_basis(alg, S::one(), &y, q * q).expect("dimension")
        })
        .collect();
    lifted.try_into().ok()
}

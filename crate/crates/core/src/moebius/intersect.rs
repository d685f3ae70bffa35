use nalgebra::{DMatrix, Matrix2, SymmetricEigen};

use super::point::ConformalPoint;
use super::sphere::SphereBlade;
use crate::clifford::{inner, subspace, Multivector};
use crate::error::GeometryError;
use crate::scalar::Scalar;
use crate::tolerance;

/// Outcome of intersecting two circles on a common 2-sphere.
#[derive(Clone, Debug, PartialEq)]
pub enum CircleMeet<S: Scalar> {
    Pair(ConformalPoint<S>, ConformalPoint<S>),
    Tangent(ConformalPoint<S>),
    Disjoint,
}

/// Null directions of a 2-plane given by two coefficient-orthonormal columns.
pub(crate) enum PlaneKind<S: Scalar> {
    Timelike(ConformalPoint<S>, ConformalPoint<S>),
    Tangent(ConformalPoint<S>),
    Spacelike,
}

pub(crate) fn classify_plane<S: Scalar>(basis: &[Multivector<S>; 2]) -> PlaneKind<S> {
    let [a, b] = basis;
    let gram = Matrix2::new(inner(a, a), inner(a, b), inner(a, b), inner(b, b));
    let eig = SymmetricEigen::new(gram);
    let (hi, lo) = if eig.eigenvalues[0] >= eig.eigenvalues[1] { (0, 1) } else { (1, 0) };
    let (l_hi, l_lo) = (eig.eigenvalues[hi], eig.eigenvalues[lo]);
    let combine = |u: S, w: S| &a.scale(u) + &b.scale(w);
    let w_hi = combine(eig.eigenvectors[(0, hi)], eig.eigenvectors[(1, hi)]);
    let w_lo = combine(eig.eigenvectors[(0, lo)], eig.eigenvectors[(1, lo)]);
    let band = S::lit(tolerance::TANGENT);
    if l_lo.abs() <= band {
        return PlaneKind::Tangent(ConformalPoint::from_null_unchecked(w_lo).unit());
    }
    if l_lo > S::zero() {
        return PlaneKind::Spacelike;
    }
    let u = w_hi.scale(S::one() / l_hi.sqrt());
    let t = w_lo.scale(S::one() / (-l_lo).sqrt());
    PlaneKind::Timelike(
        ConformalPoint::from_null_unchecked(&u + &t).unit(),
        ConformalPoint::from_null_unchecked(&u - &t).unit(),
    )
}

fn plane_columns<S: Scalar>(alg: &std::sync::Arc<crate::Algebra>, m: &DMatrix<S>) -> [Multivector<S>; 2] {
    let mut vs = subspace::matrix_to_vectors(alg, m).into_iter();
    let a = vs.next().expect("two columns");
    let b = vs.next().expect("two columns");
    [a, b]
}

/// The two points of a point-pair blade (a timelike 2-plane).
pub fn extract_point_pair<S: Scalar>(
    pair: &SphereBlade<S>,
) -> Result<(ConformalPoint<S>, ConformalPoint<S>), GeometryError> {
    if pair.sphere_dim() != 0 {
        return Err(GeometryError::SphereDimension {
            m: pair.sphere_dim(),
            n: pair.blade().n(),
        });
    }
    let t = pair.to_timelike();
    let basis = subspace::blade_basis(t.blade(), 2);
    match classify_plane(&plane_columns(t.blade().algebra(), &basis)) {
        PlaneKind::Timelike(p, q) => Ok((p, q)),
        PlaneKind::Tangent(_) => Err(GeometryError::Tangent),
        PlaneKind::Spacelike => Err(GeometryError::NoRealPoints),
    }
}

/// Point pair spanned by an arbitrary grade-2 element assumed to be a blade.
pub fn point_pair_of_bivector<S: Scalar>(
    blade: &Multivector<S>,
) -> Result<(ConformalPoint<S>, ConformalPoint<S>), GeometryError> {
    let basis = subspace::blade_basis(blade, 2);
    match classify_plane(&plane_columns(blade.algebra(), &basis)) {
        PlaneKind::Timelike(p, q) => Ok((p, q)),
        PlaneKind::Tangent(_) => Err(GeometryError::Tangent),
        PlaneKind::Spacelike => Err(GeometryError::NoRealPoints),
    }
}

/// Intersection of two distinct circles lying on a common 2-sphere.
pub fn circle_intersect<S: Scalar>(c1: &SphereBlade<S>, c2: &SphereBlade<S>) -> Result<CircleMeet<S>, GeometryError> {
    circle_intersect_with_tol(c1, c2, S::lit(tolerance::GEOMETRIC))
}

/// [`circle_intersect`] with an explicit relative tolerance for the
/// distinctness and co-sphericity tests.
pub fn circle_intersect_with_tol<S: Scalar>(
    c1: &SphereBlade<S>,
    c2: &SphereBlade<S>,
    rel_tol: S,
) -> Result<CircleMeet<S>, GeometryError> {
    Ok(match classify_plane(&meet_plane(c1, c2, rel_tol)?) {
        PlaneKind::Timelike(p, q) => CircleMeet::Pair(p, q),
        PlaneKind::Tangent(p) => CircleMeet::Tangent(p),
        PlaneKind::Spacelike => CircleMeet::Disjoint,
    })
}

/// The second common point of two co-spherical circles through `known`.
///
/// The point pair plane is reflected in a vector of that plane orthogonal to
/// `known`, which stays accurate when the two points are close.
pub fn circle_second_meet<S: Scalar>(
    c1: &SphereBlade<S>,
    c2: &SphereBlade<S>,
    known: &ConformalPoint<S>,
    rel_tol: S,
) -> Result<ConformalPoint<S>, GeometryError> {
    let [w1, w2] = meet_plane(c1, c2, rel_tol)?;
    let a = known.unit().into_vector();
    // coefficient-orthonormal basis, so this is the in-plane direction normal to `a`
    let (x, y) = (dot(&w1, &a), dot(&w2, &a));
    let v = &w1.scale(-y) + &w2.scale(x);
    let b = (&(&v * &a) * &v).grade(1);
    if b.norm() <= S::default_epsilon() * a.norm() {
        return Err(GeometryError::Tangent);
    }
    Ok(ConformalPoint::from_null_unchecked(b).unit())
}

fn dot<S: Scalar>(a: &Multivector<S>, b: &Multivector<S>) -> S {
    a.coeffs().iter().zip(b.coeffs()).fold(S::zero(), |acc, (&x, &y)| acc + x * y)
}

/// Coefficient-orthonormal basis of the 2-plane shared by two circle spans.
fn meet_plane<S: Scalar>(c1: &SphereBlade<S>, c2: &SphereBlade<S>, rel_tol: S) -> Result<[Multivector<S>; 2], GeometryError> {
    let n = c1.blade().n();
    for c in [c1, c2] {
        if c.sphere_dim() != 1 {
            return Err(GeometryError::SphereDimension { m: c.sphere_dim(), n });
        }
    }
    let (u1, u2) = (c1.span(), c2.span());
    let mut joined = DMatrix::zeros(u1.nrows(), 6);
    joined.columns_mut(0, 3).copy_from(&u1);
    joined.columns_mut(3, 3).copy_from(&u2);
    let sv = subspace::singular_values(&joined);
    let top = sv[0];
    // sum of two distinct co-spherical circle spans is 4-dimensional
    if sv.get(3).is_none_or(|&s| s <= rel_tol * top) {
        return Err(GeometryError::NotDistinct);
    }
    if sv.get(4).is_some_and(|&s| s > rel_tol * top) {
        return Err(GeometryError::NotCospherical);
    }
    joined.columns_mut(3, 3).copy_from(&(-&u2));
    let (kernel, _) = subspace::smallest_right_singular(&joined, 2);
    let raw = &u1 * kernel.rows(0, 3);
    let basis = subspace::orthonormalize(&raw, S::zero());
    if basis.ncols() != 2 {
        return Err(GeometryError::NotDistinct);
    }
    Ok(plane_columns(c1.blade().algebra(), &basis))
}

/// The point with circle parameter `t` on the circle through `p0, p1, p2`.
///
/// The parameter is the real chart coordinate of the circle in which `p0`,
/// `p1`, `p2` sit at `0`, `1`, `∞`; it equals a cross ratio of the four points
/// and is Moebius invariant. Values `t > 1` land on the arc from `p1` to `p2`
/// that avoids `p0`, so `p0, p1, q, p2` is an embedded quadrilateral; `t = 2`
/// completes a square to its fourth corner.
pub fn point_on_circle<S: Scalar>(
    p0: &ConformalPoint<S>,
    p1: &ConformalPoint<S>,
    p2: &ConformalPoint<S>,
    t: S,
) -> Result<ConformalPoint<S>, GeometryError> {
    let [a, b, c] = [p0, p1, p2].map(|p| p.unit().into_vector());
    let (l01, l02, l12) = (inner(&a, &b), inner(&a, &c), inner(&b, &c));
    let tol = S::lit(tolerance::GEOMETRIC);
    if l01.abs() <= tol || l02.abs() <= tol || l12.abs() <= tol {
        return Err(GeometryError::Degenerate {
            residual: l01.abs().min(l02.abs()).min(l12.abs()).to_f64_lossy(),
        });
    }
    // Images of e_0, lift(1), e_inf scaled so all pairwise products are -1/2.
    let half = S::lit(0.5);
    let alpha = (-half * l12 / (l01 * l02)).sqrt();
    let beta = -half / (alpha * l01);
    let gamma = -half / (alpha * l02);
    let q = &(&a.scale((S::one() - t) * alpha) + &b.scale(t * beta)) + &c.scale((t * t - t) * gamma);
    Ok(ConformalPoint::from_null_unchecked(q).unit())
}

//! Linear-algebra helpers on grade-1 subspaces of `R^{n+2}_1`.
//!
//! Subspaces are represented by matrices whose columns are internal vector
//! coordinates. Since the exterior product does not depend on the metric and
//! the internal basis is orthonormal, coefficient-space orthonormality is a
//! well-conditioned basis choice for every blade.

use nalgebra::DMatrix;

use super::Multivector;
use crate::scalar::Scalar;

/// Matrix of the linear map `x -> x ∧ blade` restricted to grade-1 `x`.
///
/// Rows are padded with zeros to at least `n + 2` so that a full right
/// singular basis is available.
pub fn wedge_map<S: Scalar>(blade: &Multivector<S>, grade: usize) -> DMatrix<S> {
    let alg = blade.algebra();
    let dim = alg.generators();
    let rows: Vec<usize> = alg.blades_of_grade(grade + 1).collect();
    let mut m = DMatrix::zeros(rows.len().max(dim), dim);
    for k in 0..dim {
        let image = Multivector::generator(alg, k).wedge(blade);
        for (r, &b) in rows.iter().enumerate() {
            m[(r, k)] = image.coeff(b);
        }
    }
    m
}

/// Orthonormal basis (columns) of the null space of `m`, treating singular
/// values at or below `rel_tol * sigma_max` as zero.
pub fn null_space<S: Scalar>(m: &DMatrix<S>, rel_tol: S) -> DMatrix<S> {
    let cols = m.ncols();
    let padded;
    let m = if m.nrows() < cols {
        padded = m.clone().resize_vertically(cols, S::zero());
        &padded
    } else {
        m
    };
    let svd = m.clone().svd(false, true);
    let v_t = svd.v_t.expect("right singular vectors requested");
    let sigma_max = svd.singular_values.iter().fold(S::zero(), |a, &s| a.max(s));
    let cut = sigma_max * rel_tol;
    let kernel: Vec<usize> = (0..cols)
        .filter(|&i| svd.singular_values[i] <= cut)
        .collect();
    let mut out = DMatrix::zeros(cols, kernel.len());
    for (c, &i) in kernel.iter().enumerate() {
        for r in 0..cols {
            out[(r, c)] = v_t[(i, r)];
        }
    }
    out
}

/// The `count` right singular vectors of `m` with the smallest singular
/// values, as orthonormal columns, together with those singular values.
pub fn smallest_right_singular<S: Scalar>(m: &DMatrix<S>, count: usize) -> (DMatrix<S>, Vec<S>) {
    let cols = m.ncols();
    let padded;
    let m = if m.nrows() < cols {
        padded = m.clone().resize_vertically(cols, S::zero());
        &padded
    } else {
        m
    };
    let svd = m.clone().svd(false, true);
    let v_t = svd.v_t.expect("right singular vectors requested");
    let mut order: Vec<usize> = (0..cols).collect();
    order.sort_by(|&a, &b| {
        svd.singular_values[a]
            .partial_cmp(&svd.singular_values[b])
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    let mut out = DMatrix::zeros(cols, count);
    let mut values = Vec::with_capacity(count);
    for (c, &i) in order.iter().take(count).enumerate() {
        values.push(svd.singular_values[i]);
        for r in 0..cols {
            out[(r, c)] = v_t[(i, r)];
        }
    }
    (out, values)
}

/// Orthonormal basis of the span of a grade-`grade` element assumed to be a
/// blade: the `grade` least-excited directions of `x -> x ∧ blade`.
pub fn blade_basis<S: Scalar>(blade: &Multivector<S>, grade: usize) -> DMatrix<S> {
    smallest_right_singular(&wedge_map(blade, grade), grade).0
}

/// Singular values in descending order.
pub fn singular_values<S: Scalar>(m: &DMatrix<S>) -> Vec<S> {
    let mut sv: Vec<S> = m.clone().svd(false, false).singular_values.iter().copied().collect();
    sv.sort_by(|a, b| b.partial_cmp(a).unwrap_or(std::cmp::Ordering::Equal));
    sv
}

/// Numerical rank with singular values compared against `rel_tol * sigma_max`.
pub fn rank<S: Scalar>(m: &DMatrix<S>, rel_tol: S) -> usize {
    let sv = singular_values(m);
    let Some(&top) = sv.first() else { return 0 };
    if top.is_zero() {
        return 0;
    }
    sv.iter().filter(|&&s| s > top * rel_tol).count()
}

/// Columns are the internal coordinates of the given grade-1 elements.
pub fn vectors_to_matrix<S: Scalar>(vectors: &[Multivector<S>]) -> DMatrix<S> {
    let dim = vectors.first().map_or(0, |v| v.algebra().generators());
    let mut m = DMatrix::zeros(dim, vectors.len());
    for (c, v) in vectors.iter().enumerate() {
        for (r, x) in v.vector_coords().into_iter().enumerate() {
            m[(r, c)] = x;
        }
    }
    m
}

/// Grade-1 elements from the columns of `m`.
pub fn matrix_to_vectors<S: Scalar>(
    alg: &std::sync::Arc<super::Algebra>,
    m: &DMatrix<S>,
) -> Vec<Multivector<S>> {
    (0..m.ncols())
        .map(|c| {
            let coords: Vec<S> = m.column(c).iter().copied().collect();
            Multivector::vector(alg, &coords).expect("column length equals generator count")
        })
        .collect()
}

/// Orthonormal basis of the subspace `{x : x ∧ blade = 0}` of a grade-`grade` element.
///
/// For a pure blade this is its span and has exactly `grade` columns.
pub fn blade_span<S: Scalar>(blade: &Multivector<S>, grade: usize, rel_tol: S) -> DMatrix<S> {
    null_space(&wedge_map(blade, grade), rel_tol)
}

/// Orthonormal basis of the intersection of two column spaces, both given by
/// orthonormal columns.
pub fn intersect<S: Scalar>(a: &DMatrix<S>, b: &DMatrix<S>, rel_tol: S) -> DMatrix<S> {
    let (ra, rb) = (a.ncols(), b.ncols());
    let mut joined = DMatrix::zeros(a.nrows(), ra + rb);
    joined.columns_mut(0, ra).copy_from(a);
    joined.columns_mut(ra, rb).copy_from(&(-b));
    let kernel = null_space(&joined, rel_tol);
    let raw = a * kernel.rows(0, ra);
    orthonormalize(&raw, rel_tol)
}

/// Orthonormal basis of the column space of `m`.
pub fn orthonormalize<S: Scalar>(m: &DMatrix<S>, rel_tol: S) -> DMatrix<S> {
    if m.ncols() == 0 {
        return m.clone();
    }
    let svd = m.clone().svd(true, false);
    let u = svd.u.expect("left singular vectors requested");
    let sigma_max = svd.singular_values.iter().fold(S::zero(), |a, &s| a.max(s));
    let keep: Vec<usize> = (0..svd.singular_values.len())
        .filter(|&i| svd.singular_values[i] > sigma_max * rel_tol)
        .collect();
    let mut out = DMatrix::zeros(m.nrows(), keep.len());
    for (c, &i) in keep.iter().enumerate() {
        out.set_column(c, &u.column(i));
    }
    out
}

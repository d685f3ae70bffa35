use super::lattice::{EdgeField, Lattice};
use super::pair::{nets_from_frames, step_by_sphere, PairNet};
use super::residuals::mc_residual_spheres;
use crate::clifford::{inner, subspace, Multivector, Versor};
use crate::error::{GeometryError, NetError};
use crate::moebius::{projective_distance, ConformalPoint, Hypersphere};
use crate::scalar::Scalar;
use crate::tolerance;

/// The sphere exchanging `Fa <-> Fb` and `F̂a <-> F̂b` by inversion, up to sign.
pub fn recover_edge_sphere<S: Scalar>(
    fa: &ConformalPoint<S>,
    fb: &ConformalPoint<S>,
    fha: &ConformalPoint<S>,
    fhb: &ConformalPoint<S>,
) -> Result<Hypersphere<S>, GeometryError> {
    recover_edge_sphere_with_tol(fa, fb, fha, fhb, S::lit(tolerance::CONCIRCULAR))
}

/// [`recover_edge_sphere`] with an explicit concircularity tolerance.
pub fn recover_edge_sphere_with_tol<S: Scalar>(
    fa: &ConformalPoint<S>,
    fb: &ConformalPoint<S>,
    fha: &ConformalPoint<S>,
    fhb: &ConformalPoint<S>,
    tol: S,
) -> Result<Hypersphere<S>, GeometryError> {
    let [a, b, ha, hb] = [fa, fb, fha, fhb].map(|p| p.unit().into_vector());
    let coincide = |u: &Multivector<S>, v: &Multivector<S>| u.wedge(v).norm() <= S::lit(tolerance::GEOMETRIC);
    let s = match (coincide(&a, &b), coincide(&ha, &hb)) {
        (true, true) => return Err(GeometryError::BothEdgesDegenerate),
        (true, false) => fixing(&a, &ha, &hb)?,
        (false, true) => fixing(&ha, &a, &b)?,
        (false, false) => {
            let m = subspace::vectors_to_matrix(&[a.clone(), b.clone(), ha, hb]);
            let sv = subspace::singular_values(&m);
            if sv[3] > tol * sv[0] {
                return Err(GeometryError::NotConcircular {
                    residual: (sv[3] / sv[0]).to_f64_lossy(),
                });
            }
            let (kernel, _) = subspace::smallest_right_singular(&m, 1);
            &a.scale(kernel[(0, 0)]) + &b.scale(kernel[(1, 0)])
        }
    };
    let q = inner(&s, &s);
    if q <= S::lit(tolerance::GEOMETRIC) * s.norm() * s.norm() {
        return Err(GeometryError::Separating);
    }
    Hypersphere::normalize(&s)
}

/// Sphere through the fixed point `p` exchanging `u` and `v`: `u - ν v` with `<·, p> = 0`.
fn fixing<S: Scalar>(p: &Multivector<S>, u: &Multivector<S>, v: &Multivector<S>) -> Result<Multivector<S>, GeometryError> {
    let den = inner(v, p);
    if den.abs() <= S::lit(tolerance::GEOMETRIC) {
        return Err(GeometryError::Degenerate {
            residual: den.abs().to_f64_lossy(),
        });
    }
    Ok(u - &v.scale(inner(u, p) / den))
}

/// Sign gauge for an edge sphere: nonnegative product with `prev`, else the
/// first clearly nonzero coefficient positive.
pub fn gauge_sign<S: Scalar>(s: Multivector<S>, prev: Option<&Multivector<S>>) -> Multivector<S> {
    if let Some(p) = prev {
        let c = inner(&s, p);
        if c.abs() > S::lit(tolerance::GEOMETRIC) {
            return if c < S::zero() { -s } else { s };
        }
    }
    let cut = S::lit(tolerance::GEOMETRIC) * s.max_abs();
    match s.coeffs().iter().find(|c| c.abs() > cut) {
        Some(&c) if c < S::zero() => -s,
        _ => s,
    }
}

/// Tree parent of a vertex: one step back along the first axis with a
/// nonzero coordinate.
fn tree_parent(lattice: &Lattice, idx: usize) -> Option<(usize, usize)> {
    (0..lattice.dim()).find_map(|a| lattice.step_back(idx, a).map(|p| (p, a)))
}

fn sphere_at<S: Scalar>(
    lattice: &Lattice,
    spheres: &EdgeField<Multivector<S>>,
    base: usize,
    axis: usize,
) -> Result<Multivector<S>, NetError> {
    spheres.get(base, axis).cloned().ok_or_else(|| NetError::MissingEdge {
        base: lattice.multi_index(base),
        axis,
    })
}

/// Integrates `Φ(t + t_j) = -e_j Φ(t) S_j(t + ½t_j)` from `Φ(origin)`.
///
/// Every face is first checked against the sphere form of the Maurer-Cartan
/// condition; the first failing face is reported, as a sign inconsistency
/// when flipping one of its spheres would repair it.
pub fn frame_from_edge_spheres<S: Scalar>(
    lattice: &Lattice,
    spheres: &EdgeField<Multivector<S>>,
    origin: &Versor<S>,
) -> Result<Vec<Versor<S>>, NetError> {
    let tol = S::lit(tolerance::MAURER_CARTAN);
    for face in lattice.cells(2) {
        let (i, j) = (face.axes[0], face.axes[1]);
        let t = face.base;
        let (ti, tj) = (lattice.step(t, i).expect("face"), lattice.step(t, j).expect("face"));
        let s_i = sphere_at(lattice, spheres, t, i)?;
        let s_j = sphere_at(lattice, spheres, t, j)?;
        let s_j_shift = sphere_at(lattice, spheres, ti, j)?;
        let s_i_shift = sphere_at(lattice, spheres, tj, i)?;
        let check = mc_residual_spheres(&s_i, &s_j_shift, &s_j, &s_i_shift);
        if check.residual.scaled > tol {
            let flipped = mc_residual_spheres(&s_i, &s_j_shift, &s_j, &-&s_i_shift);
            let base = lattice.multi_index(t);
            let residual = check.residual.scaled.to_f64_lossy();
            return Err(if flipped.residual.scaled <= tol {
                NetError::InconsistentSign { base, axes: (i, j), residual }
            } else {
                NetError::MaurerCartan { base, axes: (i, j), residual }
            });
        }
    }
    let mut frames: Vec<Versor<S>> = Vec::with_capacity(lattice.len());
    frames.push(origin.clone());
    for idx in 1..lattice.len() {
        let (parent, axis) = tree_parent(lattice, idx).expect("non-origin vertex");
        let s = sphere_at(lattice, spheres, parent, axis)?;
        frames.push(step_by_sphere(&frames[parent], &s, axis)?);
    }
    Ok(frames)
}

/// Signs recovered (unsigned) edge spheres so that frames exist, and returns
/// the signed spheres with the integrated frames.
///
/// Tree edges take the [`gauge_sign`] choice relative to the previous sphere
/// along the same axis; every other edge sign is forced by the frames already
/// integrated and is checked against them.
pub fn orient_edge_spheres<S: Scalar>(
    lattice: &Lattice,
    unsigned: &EdgeField<Multivector<S>>,
    origin: &Versor<S>,
) -> Result<(EdgeField<Multivector<S>>, Vec<Versor<S>>), NetError> {
    let tol = S::lit(tolerance::MAURER_CARTAN);
    let mut signed: EdgeField<Multivector<S>> = EdgeField::new(lattice);
    let mut frames: Vec<Versor<S>> = Vec::with_capacity(lattice.len());
    frames.push(origin.clone());
    for idx in 1..lattice.len() {
        let (parent, axis) = tree_parent(lattice, idx).expect("non-origin vertex");
        let prev = lattice.step_back(parent, axis).and_then(|p| signed.get(p, axis));
        let s = gauge_sign(sphere_at(lattice, unsigned, parent, axis)?, prev);
        frames.push(step_by_sphere(&frames[parent], &s, axis)?);
        signed.set(parent, axis, s);
        for k in (0..lattice.dim()).filter(|&k| k != axis) {
            let Some(from) = lattice.step_back(idx, k) else { continue };
            let s = sphere_at(lattice, unsigned, from, k)?;
            let ek = Multivector::generator(frames[idx].algebra(), k + 1);
            let implied = (&(frames[from].inverse().multivector() * &ek) * frames[idx].multivector()).grade(1);
            let (plus, minus) = ((&implied - &s).norm(), (&implied + &s).norm());
            let residual = plus.min(minus) / s.norm();
            if residual > tol {
                return Err(NetError::EdgeMismatch {
                    base: lattice.multi_index(from),
                    axis: k,
                    residual: residual.to_f64_lossy(),
                });
            }
            signed.set(from, k, if plus <= minus { s } else { -s });
        }
    }
    Ok((signed, frames))
}

/// Future-pointing representative: nonnegative `f_0` coefficient.
fn future<S: Scalar>(p: &ConformalPoint<S>) -> Multivector<S> {
    p.unit().into_vector()
}

fn reflect_onto<S: Scalar>(from: &Multivector<S>, to: &Multivector<S>) -> Option<Multivector<S>> {
    // reflection in from - μ to swaps the two null rays for any μ > 0
    let w = from - to;
    let q = inner(&w, &w);
    (q > S::lit(tolerance::GEOMETRIC)).then(|| w.scale(S::one() / q.sqrt()))
}

/// An even versor with `Φ⁻¹ e_0 Φ ≃ f` and `Φ⁻¹ e_inf Φ ≃ f_hat`, built from
/// at most four reflections.
pub fn origin_frame<S: Scalar>(f: &ConformalPoint<S>, f_hat: &ConformalPoint<S>) -> Result<Versor<S>, NetError> {
    let alg = f.algebra();
    let (a, b) = (future(f), future(f_hat));
    if a.wedge(&b).norm() <= S::lit(tolerance::GEOMETRIC) {
        return Err(GeometryError::Degenerate {
            residual: a.wedge(&b).norm().to_f64_lossy(),
        }
        .into());
    }
    let mut factors: Vec<Multivector<S>> = Vec::new();
    let mut current = Versor::identity(alg);
    let e0 = future(&ConformalPoint::e0(alg));
    if projective_distance(&e0, &a) > S::lit(tolerance::GEOMETRIC) {
        if let Some(s) = reflect_onto(&e0, &a) {
            current = current.then_vector(&s).map_err(GeometryError::from)?;
            factors.push(s);
        }
    }
    let x = ConformalPoint::new(current.apply_vector(&Multivector::einf(alg)))?.unit().into_vector();
    if projective_distance(&x, &b) > S::lit(tolerance::GEOMETRIC) {
        // scale b so that x - b is orthogonal to a, keeping a fixed
        let mu = inner(&x, &a) / inner(&b, &a);
        if let Some(s) = reflect_onto(&x, &b.scale(mu)) {
            current = current.then_vector(&s).map_err(GeometryError::from)?;
            factors.push(s);
        }
    }
    if factors.len() % 2 == 1 {
        let s = current.apply_vector(&Multivector::generator(alg, 1));
        current = current.then_vector(&s).map_err(GeometryError::from)?;
    }
    let residual = frame_residual(&current, f, f_hat);
    if residual > S::lit(tolerance::MAURER_CARTAN) {
        return Err(NetError::FrameMismatch {
            base: Vec::new(),
            residual: residual.to_f64_lossy(),
        });
    }
    Ok(current)
}

/// Projective distance of `(Φ⁻¹ e_0 Φ, Φ⁻¹ e_inf Φ)` from `(f, f_hat)`.
pub fn frame_residual<S: Scalar>(phi: &Versor<S>, f: &ConformalPoint<S>, f_hat: &ConformalPoint<S>) -> S {
    let alg = phi.algebra();
    let a = projective_distance(&phi.apply_vector(&Multivector::e0(alg)), f.vector());
    let b = projective_distance(&phi.apply_vector(&Multivector::einf(alg)), f_hat.vector());
    a.max(b)
}

/// Unsigned edge spheres of a pair of nets, recovered edge by edge.
pub fn recover_edge_spheres<S: Scalar>(net: &PairNet<S>) -> Result<EdgeField<Multivector<S>>, NetError> {
    let lattice = net.lattice();
    let mut out = EdgeField::new(lattice);
    for (base, axis) in lattice.edges() {
        let next = lattice.step(base, axis).expect("edge");
        let s = recover_edge_sphere(&net.f()[base], &net.f()[next], &net.f_hat()[base], &net.f_hat()[next])
            .map_err(|source| NetError::EdgeRecovery {
                base: lattice.multi_index(base),
                axis,
                source,
            })?;
        out.set(base, axis, s.into_vector());
    }
    Ok(out)
}

/// Rebuilds frames and edge spheres from the two nets alone, then regenerates
/// the nets from the frames. `origin` defaults to [`origin_frame`] at the
/// origin vertex.
pub fn reconstruct<S: Scalar>(net: &PairNet<S>, origin: Option<&Versor<S>>) -> Result<PairNet<S>, NetError> {
    let lattice = net.lattice();
    let origin = match origin {
        Some(o) => o.clone(),
        None => origin_frame(&net.f()[0], &net.f_hat()[0])?,
    };
    let unsigned = recover_edge_spheres(net)?;
    let (signed, _) = orient_edge_spheres(lattice, &unsigned, &origin)?;
    let frames = frame_from_edge_spheres(lattice, &signed, &origin)?;
    nets_from_frames(lattice, frames)
}

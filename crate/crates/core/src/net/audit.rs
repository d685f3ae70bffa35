use super::cells::{cell_sphere_check, congruence_residual, CellNets};
use super::lattice::Cell;
use super::pair::{edge_sphere_with_residual, PairNet};
use super::residuals::{edge_cross_ratio_closed_form, face_cross_ratio_closed_form, mc_residual_face, mc_residual_spheres};
use crate::clifford::Multivector;
use crate::error::NetError;
use crate::moebius::cross_ratio;
use crate::scalar::Scalar;

/// A face that failed the concircularity test.
#[derive(Clone, Debug, PartialEq)]
pub struct FaceFailure {
    pub base: Vec<usize>,
    pub axes: (usize, usize),
    pub residual: f64,
}

/// Maxima of every invariant of a pair of nets. Frame-based entries are
/// `None` when the net carries no frames.
#[derive(Clone, Debug, PartialEq)]
pub struct NetAudit<S> {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    /// Largest `|Λ⁴ part|` of a face cross ratio of `F` or `F̂`.
    pub face_r4: S,
    /// Same, multiplied by the cross-ratio denominator (see
    /// [`crate::moebius::CrossRatioValue::concircularity_residual`]).
    pub face_concircularity: S,
    /// Largest `|Λ⁴ part|` of an edge quadruple cross ratio.
    pub edge_r4: S,
    pub edge_concircularity: S,
    pub edge_symmetry: Option<S>,
    pub mc_face: Option<S>,
    pub mc_spheres: Option<S>,
    pub max_sphere_rank: Option<usize>,
    /// Relative gap between closed-form and direct edge cross ratios.
    pub edge_cross_ratio_gap: Option<S>,
    pub face_cross_ratio_gap: Option<S>,
    /// Cell-lemma residuals indexed by `k - 1`.
    pub cell_sphere_f: Vec<S>,
    pub cell_sphere_f_hat: Vec<S>,
    pub cell_sphere_pair: Vec<S>,
    pub congruence: Option<S>,
    /// Largest `|S e_inf + e_inf S|` relative to `|S|`, in Euclidean mode.
    pub plane_residual: Option<S>,
    pub degenerate_edges: usize,
    pub degenerate_faces: usize,
    pub degenerate_cells: usize,
    pub first_failing_face: Option<FaceFailure>,
}

fn rel_gap<S: Scalar>(a: S, b: S) -> S {
    let scale = a.abs().max(b.abs());
    if scale.is_zero() {
        S::zero()
    } else {
        (a - b).abs() / scale
    }
}

/// Evaluates all invariants of `net`. `face_tol` bounds the face
/// concircularity residual used to name the first failing face.
pub fn audit<S: Scalar>(net: &PairNet<S>, face_tol: S) -> Result<NetAudit<S>, NetError> {
    let lattice = net.lattice();
    let m = lattice.dim();
    let faces = lattice.cells(2);
    let has_frames = net.frames().is_some();
    let mut out = NetAudit {
        vertices: lattice.len(),
        edges: lattice.edge_count(),
        faces: faces.len(),
        face_r4: S::zero(),
        face_concircularity: S::zero(),
        edge_r4: S::zero(),
        edge_concircularity: S::zero(),
        edge_symmetry: has_frames.then(S::zero),
        mc_face: has_frames.then(S::zero),
        mc_spheres: None,
        max_sphere_rank: None,
        edge_cross_ratio_gap: has_frames.then(S::zero),
        face_cross_ratio_gap: has_frames.then(S::zero),
        cell_sphere_f: vec![S::zero(); m],
        cell_sphere_f_hat: vec![S::zero(); m],
        cell_sphere_pair: vec![S::zero(); m],
        congruence: None,
        plane_residual: None,
        degenerate_edges: 0,
        degenerate_faces: 0,
        degenerate_cells: 0,
        first_failing_face: None,
    };
    let (f, fh) = (net.f(), net.f_hat());
    let upd = |slot: &mut Option<S>, v: S| {
        if let Some(x) = slot {
            *x = x.max(v);
        }
    };

    for (base, axis) in lattice.edges() {
        let next = lattice.step(base, axis).expect("edge");
        match cross_ratio(&fh[base], &f[base], &f[next], &fh[next]) {
            Ok(r) => {
                out.edge_r4 = out.edge_r4.max(r.r4norm);
                out.edge_concircularity = out.edge_concircularity.max(r.concircularity_residual());
                if let Some(frames) = net.frames() {
                    let (_, sym) = edge_sphere_with_residual(&frames[base], &frames[next], axis);
                    upd(&mut out.edge_symmetry, sym);
                    let s = net.edge_vector(base, axis)?;
                    match edge_cross_ratio_closed_form(&s) {
                        Ok(c) => upd(&mut out.edge_cross_ratio_gap, rel_gap(c, r.r0)),
                        Err(_) => out.degenerate_edges += 1,
                    }
                }
            }
            Err(_) => out.degenerate_edges += 1,
        }
    }

    let mut spheres_max: Option<S> = None;
    let mut rank_max: Option<usize> = None;
    for face in &faces {
        let (i, j) = (face.axes[0], face.axes[1]);
        let v = lattice.cell_vertices(face);
        // cyclic order t, t+t_i, t+t_i+t_j, t+t_j
        let cyc = [v[0], v[1], v[3], v[2]];
        let mut worst = S::zero();
        let mut degenerate = false;
        for net_pts in [f, fh] {
            if net.is_euclidean() && std::ptr::eq(net_pts, fh) {
                continue;
            }
            match cross_ratio(&net_pts[cyc[0]], &net_pts[cyc[1]], &net_pts[cyc[2]], &net_pts[cyc[3]]) {
                Ok(r) => {
                    out.face_r4 = out.face_r4.max(r.r4norm);
                    worst = worst.max(r.concircularity_residual());
                }
                Err(_) => degenerate = true,
            }
        }
        if degenerate {
            out.degenerate_faces += 1;
        }
        out.face_concircularity = out.face_concircularity.max(worst);
        if worst > face_tol && out.first_failing_face.is_none() {
            out.first_failing_face = Some(FaceFailure {
                base: lattice.multi_index(face.base),
                axes: (i, j),
                residual: worst.to_f64_lossy(),
            });
        }
        if net.frames().is_some() {
            let (ti, tj) = (v[1], v[2]);
            let s_i = net.edge_vector(face.base, i)?;
            let s_j = net.edge_vector(face.base, j)?;
            let s_i_sh = net.edge_vector(tj, i)?;
            let s_j_sh = net.edge_vector(ti, j)?;
            upd(&mut out.mc_face, mc_residual_face((i, j), &s_i, &s_j, &s_i_sh, &s_j_sh).scaled);
            if let Ok(direct) = cross_ratio(&f[cyc[0]], &f[cyc[1]], &f[cyc[2]], &f[cyc[3]]) {
                if let Ok(c) = face_cross_ratio_closed_form(&s_i, &s_i_sh, &s_j, &s_j_sh) {
                    upd(&mut out.face_cross_ratio_gap, rel_gap(c, direct.r0));
                }
            }
        }
        if net.frames().is_some() || net.edge_spheres().is_some() {
            let sp = |b: usize, a: usize| net.edge_sphere(b, a);
            let check = mc_residual_spheres(&sp(face.base, i)?, &sp(v[1], j)?, &sp(face.base, j)?, &sp(v[2], i)?);
            spheres_max = Some(spheres_max.map_or(check.residual.scaled, |x| x.max(check.residual.scaled)));
            rank_max = Some(rank_max.map_or(check.rank, |x| x.max(check.rank)));
        }
    }
    out.mc_spheres = spheres_max;
    out.max_sphere_rank = rank_max;

    for k in 1..=m {
        for cell in lattice.cells(k) {
            for (which, slot) in [
                (CellNets::F, &mut out.cell_sphere_f),
                (CellNets::FHat, &mut out.cell_sphere_f_hat),
                (CellNets::Pair, &mut out.cell_sphere_pair),
            ] {
                if which == CellNets::FHat && net.is_euclidean() {
                    continue;
                }
                match cell_sphere_check(net, &cell, which) {
                    Ok(rep) => slot[k - 1] = slot[k - 1].max(rep.max_residual),
                    Err(_) => out.degenerate_cells += 1,
                }
            }
        }
    }

    if net.frames().is_some() && m < net.algebra().n() {
        let mut worst = S::zero();
        for Cell { base, .. } in lattice.cells(m) {
            worst = worst.max(congruence_residual(net, base)?);
        }
        out.congruence = Some(worst);
    }

    if net.is_euclidean() && (net.frames().is_some() || net.edge_spheres().is_some()) {
        let einf = Multivector::einf(net.algebra());
        let mut worst = S::zero();
        for (base, axis) in lattice.edges() {
            let s = net.edge_sphere(base, axis)?;
            worst = worst.max(s.anticommutator(&einf).norm() / s.norm());
        }
        out.plane_residual = Some(worst);
    }
    Ok(out)
}

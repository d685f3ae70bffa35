use super::initial::{is_initial, InitialData};
use super::miquel::{complete_cell_3d_with_tol, SevenPoints};
use crate::error::{CompletionError, NetError};
use crate::moebius::{projective_distance, ConformalPoint};
use crate::clifford::Versor;
use crate::net::{
    combinations, frame_from_edge_spheres, frame_residual, nets_from_frames, orient_edge_spheres, origin_frame,
    recover_edge_sphere, recover_edge_spheres, Lattice, PairNet,
};
use crate::scalar::Scalar;
use crate::tolerance;

/// Tolerances of a fill.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FillParams {
    /// Concircularity and incidence tolerance of each completion.
    pub cell_tol: f64,
    /// Discrepancies above this are counted as soft violations.
    pub soft: f64,
    /// Discrepancies above this abort the fill.
    pub hard: f64,
}

impl Default for FillParams {
    fn default() -> Self {
        Self {
            cell_tol: tolerance::CONCIRCULAR,
            soft: tolerance::CONSISTENCY_SOFT,
            hard: tolerance::CONSISTENCY_HARD,
        }
    }
}

/// One completed vertex.
#[derive(Clone, Debug, PartialEq)]
pub struct CellRecord {
    pub vertex: Vec<usize>,
    pub axes: [usize; 3],
    /// `true` for `F̂`.
    pub hat: bool,
    pub circle_residual: f64,
    pub sphere_residual: f64,
}

/// A vertex determined by more than one 3-cell.
#[derive(Clone, Debug, PartialEq)]
pub struct Discrepancy {
    pub vertex: Vec<usize>,
    pub axes: [usize; 3],
    pub hat: bool,
    pub distance: f64,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct CompletionReport {
    pub cells: Vec<CellRecord>,
    pub discrepancies: Vec<Discrepancy>,
    pub max_circle_residual: f64,
    pub max_sphere_residual: f64,
    pub max_discrepancy: f64,
    pub soft_violations: usize,
    /// Largest projective distance between the filled nets and the nets
    /// regenerated from the integrated frames (pair fills only).
    pub frame_closure: Option<f64>,
}

impl CompletionReport {
    fn record(&mut self, rec: CellRecord) {
        self.max_circle_residual = self.max_circle_residual.max(rec.circle_residual);
        self.max_sphere_residual = self.max_sphere_residual.max(rec.sphere_residual);
        self.cells.push(rec);
    }
}

/// Completes one net in lexicographic order. Each vertex with three or more
/// nonzero coordinates is computed on its lexicographically smallest axis
/// triple; the remaining triples are compared against it.
pub(crate) fn fill_points<S: Scalar>(
    lattice: &Lattice,
    known: &[Option<ConformalPoint<S>>],
    hat: bool,
    params: &FillParams,
    report: &mut CompletionReport,
) -> Result<Vec<ConformalPoint<S>>, CompletionError> {
    let mut pts: Vec<Option<ConformalPoint<S>>> = known.to_vec();
    let tol = S::lit(params.cell_tol);
    for idx in 0..lattice.len() {
        if is_initial(lattice, idx) {
            if pts[idx].is_none() {
                return Err(CompletionError::MissingVertex(lattice.multi_index(idx)));
            }
            continue;
        }
        let nz: Vec<usize> = (0..lattice.dim()).filter(|&a| lattice.coord(idx, a) > 0).collect();
        let mut value: Option<ConformalPoint<S>> = None;
        for tri in combinations(nz.len(), 3) {
            let axes = [nz[tri[0]], nz[tri[1]], nz[tri[2]]];
            let back = |v: usize, a: usize| lattice.step_back(v, a).expect("nonzero coordinate");
            let p123 = idx;
            let p12 = back(p123, axes[2]);
            let p13 = back(p123, axes[1]);
            let p23 = back(p123, axes[0]);
            let p1 = back(p12, axes[1]);
            let p2 = back(p12, axes[0]);
            let p3 = back(p13, axes[0]);
            let p = back(p1, axes[0]);
            let get = |v: usize| pts[v].as_ref().expect("precedes in lexicographic order");
            let seven = SevenPoints {
                p: get(p),
                p1: get(p1),
                p2: get(p2),
                p3: get(p3),
                p12: get(p12),
                p13: get(p13),
                p23: get(p23),
            };
            let (q, res) = complete_cell_3d_with_tol(seven, tol).map_err(|e| CompletionError::Cell {
                index: lattice.multi_index(idx),
                axes,
                hat,
                source: Box::new(e),
            })?;
            match &value {
                None => {
                    report.record(CellRecord {
                        vertex: lattice.multi_index(idx),
                        axes,
                        hat,
                        circle_residual: res.circle.to_f64_lossy(),
                        sphere_residual: res.sphere.to_f64_lossy(),
                    });
                    value = Some(q);
                }
                Some(first) => {
                    let d = projective_distance(first.vector(), q.vector()).to_f64_lossy();
                    report.max_discrepancy = report.max_discrepancy.max(d);
                    if d > params.soft {
                        report.soft_violations += 1;
                    }
                    report.discrepancies.push(Discrepancy {
                        vertex: lattice.multi_index(idx),
                        axes,
                        hat,
                        distance: d,
                    });
                    if d > params.hard {
                        return Err(CompletionError::Discrepancy {
                            index: lattice.multi_index(idx),
                            discrepancy: d,
                        });
                    }
                }
            }
        }
        pts[idx] = value;
    }
    Ok(pts.into_iter().map(|p| p.expect("filled")).collect())
}

/// Fills `F` from its 2D coordinate subnets. The result carries the companion
/// `F̂ ≡ e_inf` and is flagged Euclidean.
pub fn fill_lattice<S: Scalar>(
    init: &InitialData<S>,
    params: &FillParams,
) -> Result<(PairNet<S>, CompletionReport), CompletionError> {
    init.validate(S::lit(params.cell_tol))?;
    let mut report = CompletionReport::default();
    let f = fill_points(init.lattice(), init.f(), false, params, &mut report)?;
    let net = PairNet::euclidean(init.algebra(), init.lattice().clone(), f)?;
    Ok((net, report))
}

/// Fills both nets, recovers the edge spheres, fixes their signs and
/// integrates the frames; the returned nets are the ones generated by those
/// frames. Without `F̂` data the companion is `e_inf` and the edge spheres are
/// the bisecting planes.
pub fn fill_pair_lattice<S: Scalar>(
    init: &InitialData<S>,
    params: &FillParams,
) -> Result<(PairNet<S>, CompletionReport), CompletionError> {
    init.validate(S::lit(params.cell_tol))?;
    let lattice = init.lattice();
    let alg = init.algebra();
    let mut report = CompletionReport::default();
    let f = fill_points(lattice, init.f(), false, params, &mut report)?;
    let f_hat = match init.f_hat().filter(|_| !init.is_euclidean()) {
        Some(h) => {
            check_initial_edges(lattice, init)?;
            fill_points(lattice, h, true, params, &mut report)?
        }
        None => vec![ConformalPoint::infinity(alg); lattice.len()],
    };
    let filled = PairNet::new(alg, lattice.clone(), f, f_hat)?;

    let origin = match init.frame_origin() {
        Some(o) => {
            let r = frame_residual(o, &filled.f()[0], &filled.f_hat()[0]);
            if r > S::lit(tolerance::MAURER_CARTAN) {
                return Err(NetError::FrameMismatch {
                    base: lattice.multi_index(0),
                    residual: r.to_f64_lossy(),
                }
                .into());
            }
            o.clone()
        }
        None => origin_frame(&filled.f()[0], &filled.f_hat()[0])?,
    };
    let unsigned = recover_edge_spheres(&filled)?;
    let (signed, _) = orient_edge_spheres(lattice, &unsigned, &origin)?;
    let frames: Vec<Versor<S>> = frame_from_edge_spheres(lattice, &signed, &origin)?;
    let net = nets_from_frames(lattice, frames)?;
    let closure = (0..lattice.len())
        .map(|v| {
            let a = projective_distance(net.f()[v].vector(), filled.f()[v].vector());
            let b = projective_distance(net.f_hat()[v].vector(), filled.f_hat()[v].vector());
            a.max(b).to_f64_lossy()
        })
        .fold(0.0, f64::max);
    report.frame_closure = Some(closure);
    if closure > params.hard {
        return Err(CompletionError::Discrepancy {
            index: Vec::new(),
            discrepancy: closure,
        });
    }
    Ok((net, report))
}

/// Every initial edge quadruple must be concircular and non-separating.
fn check_initial_edges<S: Scalar>(lattice: &Lattice, init: &InitialData<S>) -> Result<(), CompletionError> {
    let (f, h) = (init.f(), init.f_hat().expect("pair data"));
    for (base, axis) in lattice.edges() {
        let next = lattice.step(base, axis).expect("edge");
        if !(is_initial(lattice, base) && is_initial(lattice, next)) {
            continue;
        }
        let get = |v: &[Option<ConformalPoint<S>>], k: usize| v[k].clone().expect("covered");
        recover_edge_sphere(&get(f, base), &get(f, next), &get(h, base), &get(h, next)).map_err(|source| {
            CompletionError::EdgeQuadruple {
                base: lattice.multi_index(base),
                axis,
                source,
            }
        })?;
    }
    Ok(())
}

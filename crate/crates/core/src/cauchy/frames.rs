use super::fill::FillParams;
use super::initial::{is_initial, InitialData};
use crate::clifford::{subspace, Multivector, Versor};
use crate::error::{CompletionError, NetError};
use crate::net::{gauge_sign, nets_from_frames, origin_frame, recover_edge_sphere, step_by_sphere, EdgeField, Lattice, PairNet};
use crate::scalar::Scalar;
use crate::tolerance;

/// Residuals of a frame-level fill.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct FrameFillReport {
    /// Largest relative smallest singular value of the four spheres whose
    /// planes are intersected; zero when the two pencils share a line.
    pub max_meet_residual: f64,
    /// Largest gap between an edge sphere and the sphere implied by the
    /// frames at its endpoints.
    pub max_edge_mismatch: f64,
    /// Largest spread between determinations of one edge sphere by
    /// different 3-cells (`m >= 4`).
    pub max_discrepancy: f64,
}

/// Intersection line of `span(a, b)` and `span(c, d)`, with the relative
/// size of the fourth singular value of `[a, b, c, d]`.
fn meet<S: Scalar>(a: &Multivector<S>, b: &Multivector<S>, c: &Multivector<S>, d: &Multivector<S>) -> (Multivector<S>, S) {
    let m = subspace::vectors_to_matrix(&[a.clone(), b.clone(), c.clone(), d.clone()]);
    let sv = subspace::singular_values(&m);
    let (k, _) = subspace::smallest_right_singular(&m, 1);
    let s = &a.scale(k[(0, 0)]) + &b.scale(k[(1, 0)]);
    (s.normalized(), sv[3] / sv[0])
}

fn unit<S: Scalar>(s: &Multivector<S>) -> Result<Multivector<S>, CompletionError> {
    Ok(crate::moebius::Hypersphere::normalize(s)?.into_vector())
}

/// Sign of `s` matching `implied`, with the relative gap.
fn match_sign<S: Scalar>(s: Multivector<S>, implied: &Multivector<S>) -> (Multivector<S>, S) {
    let (plus, minus) = ((&s - implied).norm(), (&s + implied).norm());
    let scale = implied.norm().max(S::lit(f64::MIN_POSITIVE));
    if plus <= minus {
        (s, plus / scale)
    } else {
        (-s, minus / scale)
    }
}

/// Fills the frame field of a pair from its initial data at the level of
/// edge spheres.
///
/// The initial edge spheres are recovered from the points. Every further
/// edge sphere closes a 3-cell: by the face condition it lies in the pencil
/// of the two near spheres of each of the two faces containing it, so it is
/// the line where those two planes meet. Frames follow by one step along the
/// first nonzero axis; the remaining edges into each vertex are checked
/// against them. The returned net carries frames and signed edge spheres.
pub fn fill_frame_lattice<S: Scalar>(
    init: &InitialData<S>,
    params: &FillParams,
) -> Result<(PairNet<S>, FrameFillReport), CompletionError> {
    let lattice: &Lattice = init.lattice();
    let alg = init.algebra();
    let f = init.f();
    let f_hat_owned;
    let f_hat = match init.f_hat() {
        Some(h) => h,
        None => {
            f_hat_owned = vec![Some(crate::moebius::ConformalPoint::infinity(alg)); lattice.len()];
            &f_hat_owned[..]
        }
    };
    let point = |v: &[Option<crate::moebius::ConformalPoint<S>>], k: usize| v[k].clone().expect("initial vertex");
    let origin = match init.frame_origin() {
        Some(o) => o.clone(),
        None => origin_frame(&point(f, 0), &point(f_hat, 0))?,
    };
    let mut report = FrameFillReport::default();
    let mut spheres: EdgeField<Multivector<S>> = EdgeField::new(lattice);
    let mut frames: Vec<Versor<S>> = Vec::with_capacity(lattice.len());
    frames.push(origin);
    let hard = S::lit(params.hard);
    for v in 1..lattice.len() {
        let nz: Vec<usize> = (0..lattice.dim()).filter(|&a| lattice.coord(v, a) > 0).collect();
        // unsigned spheres of the incoming edges
        let mut incoming: Vec<(usize, usize, Multivector<S>)> = Vec::with_capacity(nz.len());
        for &k in &nz {
            let from = lattice.step_back(v, k).expect("nonzero coordinate");
            let s = if is_initial(lattice, v) {
                recover_edge_sphere(&point(f, from), &point(f, v), &point(f_hat, from), &point(f_hat, v))
                    .map_err(|source| CompletionError::EdgeQuadruple {
                        base: lattice.multi_index(from),
                        axis: k,
                        source,
                    })?
                    .into_vector()
            } else {
                let mut first: Option<Multivector<S>> = None;
                let others: Vec<usize> = nz.iter().copied().filter(|&a| a != k).collect();
                for (x, &i) in others.iter().enumerate() {
                    for &j in &others[x + 1..] {
                        let b = lattice.step_back(from, i).and_then(|u| lattice.step_back(u, j)).expect("cube");
                        let (bi, bj) = (lattice.step(b, i).expect("cube"), lattice.step(b, j).expect("cube"));
                        let get = |base: usize, axis: usize| spheres.get(base, axis).expect("earlier edge").clone();
                        let (s, residual) = meet(&get(bj, i), &get(bj, k), &get(bi, j), &get(bi, k));
                        report.max_meet_residual = report.max_meet_residual.max(residual.to_f64_lossy());
                        if residual > hard {
                            return Err(CompletionError::Cell {
                                index: lattice.multi_index(v),
                                axes: [i, j, k],
                                hat: false,
                                source: Box::new(CompletionError::Inconsistent(residual.to_f64_lossy())),
                            });
                        }
                        match &first {
                            None => first = Some(s),
                            Some(f0) => {
                                let (_, gap) = match_sign(s, f0);
                                let gap = gap.to_f64_lossy();
                                report.max_discrepancy = report.max_discrepancy.max(gap);
                                if gap > params.hard {
                                    return Err(CompletionError::Discrepancy {
                                        index: lattice.multi_index(v),
                                        discrepancy: gap,
                                    });
                                }
                            }
                        }
                    }
                }
                unit(&first.expect("three nonzero axes"))?
            };
            incoming.push((from, k, s));
        }
        let (parent, axis, s) = incoming.remove(0);
        let prev = lattice.step_back(parent, axis).and_then(|p| spheres.get(p, axis));
        let s = gauge_sign(s, prev);
        let phi = step_by_sphere(&frames[parent], &s, axis)?;
        spheres.set(parent, axis, s);
        for (from, k, s) in incoming {
            let ek = Multivector::generator(alg, k + 1);
            let implied = (&(frames[from].inverse().multivector() * &ek) * phi.multivector()).grade(1);
            let (s, gap) = match_sign(s, &implied);
            report.max_edge_mismatch = report.max_edge_mismatch.max(gap.to_f64_lossy());
            if gap > S::lit(tolerance::MAURER_CARTAN) {
                return Err(NetError::EdgeMismatch {
                    base: lattice.multi_index(from),
                    axis: k,
                    residual: gap.to_f64_lossy(),
                }
                .into());
            }
            spheres.set(from, k, s);
        }
        frames.push(phi);
    }
    let net = nets_from_frames(lattice, frames)?;
    Ok((net, report))
}

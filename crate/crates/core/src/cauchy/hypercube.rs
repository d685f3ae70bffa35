use super::fill::{fill_points, CompletionReport, FillParams};
use crate::error::CompletionError;
use crate::moebius::{point_on_circle, projective_distance, wedge_points, ConformalPoint};
use crate::net::Lattice;
use crate::scalar::Scalar;

/// The lattice `{0,1}^k`. Vertex data for [`hypercube_fill`] is indexed by it.
pub fn hypercube_lattice(k: usize) -> Result<Lattice, CompletionError> {
    Ok(Lattice::new(&vec![2; k])?)
}

#[derive(Clone, Debug)]
pub struct HypercubeFill<S: Scalar> {
    pub lattice: Lattice,
    pub points: Vec<ConformalPoint<S>>,
    pub report: CompletionReport,
    /// Largest wedge residual over all elementary 2-cells: the four
    /// corresponding points of each 2-cell are concircular.
    pub face_concircularity: f64,
}

/// Fills `{0,1}^k` from the points on the `i`-cells through the origin.
///
/// `data[v]` must be set for every vertex with at most `i` nonzero
/// coordinates (entries elsewhere are ignored). For `i = 1` the 2-cells
/// through the origin are a one-parameter family each; `params` holds one
/// circle parameter per axis pair in lexicographic order, passed to
/// [`point_on_circle`] with the origin at `0`. For `i >= 3` the given points
/// beyond the 2-cells must agree with the completion.
pub fn hypercube_fill<S: Scalar>(
    k: usize,
    i: usize,
    data: &[Option<ConformalPoint<S>>],
    params: Option<&[S]>,
    fill: &FillParams,
) -> Result<HypercubeFill<S>, CompletionError> {
    if k < 2 || i == 0 || i > k {
        return Err(CompletionError::HypercubeShape { k, i });
    }
    let lattice = hypercube_lattice(k)?;
    if data.len() != lattice.len() {
        return Err(CompletionError::SubnetSize {
            axes: (k, i),
            expected: lattice.len(),
            found: data.len(),
        });
    }
    let ones = |v: usize| (0..k).filter(|&a| lattice.coord(v, a) > 0).count();
    let mut known: Vec<Option<ConformalPoint<S>>> = vec![None; lattice.len()];
    for v in 0..lattice.len() {
        if ones(v) <= i.min(2) {
            known[v] = Some(data[v].clone().ok_or_else(|| CompletionError::MissingVertex(lattice.multi_index(v)))?);
        }
    }
    if i == 1 {
        let pairs = k * (k - 1) / 2;
        let params = params.ok_or(CompletionError::Parameters { expected: pairs, found: 0 })?;
        if params.len() != pairs {
            return Err(CompletionError::Parameters {
                expected: pairs,
                found: params.len(),
            });
        }
        let mut n = 0;
        for a in 0..k {
            for b in a + 1..k {
                let va = lattice.step(0, a).expect("cube");
                let vb = lattice.step(0, b).expect("cube");
                let vab = lattice.step(va, b).expect("cube");
                let get = |v: usize| known[v].as_ref().expect("edge vertex");
                let q = point_on_circle(get(0), get(va), get(vb), params[n])?;
                known[vab] = Some(q);
                n += 1;
            }
        }
    }
    let mut report = CompletionReport::default();
    let points = fill_points(&lattice, &known, false, fill, &mut report)?;
    for v in 0..lattice.len() {
        if ones(v) >= 3 && ones(v) <= i {
            let given = data[v].as_ref().ok_or_else(|| CompletionError::MissingVertex(lattice.multi_index(v)))?;
            let d = projective_distance(given.vector(), points[v].vector()).to_f64_lossy();
            if d > fill.hard {
                return Err(CompletionError::SubnetConflict {
                    index: lattice.multi_index(v),
                    distance: d,
                });
            }
        }
    }
    let face_concircularity = lattice
        .cells(2)
        .iter()
        .map(|c| {
            let pts: Vec<ConformalPoint<S>> = lattice.cell_vertices(c).iter().map(|&v| points[v].clone()).collect();
            wedge_points(&pts).1.to_f64_lossy()
        })
        .fold(0.0, f64::max);
    Ok(HypercubeFill {
        lattice,
        points,
        report,
        face_concircularity,
    })
}

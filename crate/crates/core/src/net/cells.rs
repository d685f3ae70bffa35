use super::lattice::Cell;
use super::pair::PairNet;
use crate::clifford::Multivector;
use crate::error::NetError;
use crate::moebius::{wedge_points, ConformalPoint, SphereBlade};
use crate::scalar::Scalar;
use crate::tolerance;

/// Which vertices of a cell a sphere check covers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CellNets {
    F,
    FHat,
    /// Corresponding cells of both nets.
    Pair,
}

/// Result of fitting a sphere through the vertices of a cell.
#[derive(Clone, Debug, PartialEq)]
pub struct CellSphereReport<S: Scalar> {
    /// The sphere through the chosen generic vertices.
    pub sphere: SphereBlade<S>,
    /// Largest incidence residual over all vertices of the cell.
    pub max_residual: S,
}

/// Picks `count` vertices greedily, each time the one that keeps the wedge
/// of unit representatives largest. `None` when even the best choice
/// collapses the wedge.
fn generic_subset<S: Scalar>(points: &[&ConformalPoint<S>], count: usize) -> Option<Vec<usize>> {
    let units: Vec<Multivector<S>> = points.iter().map(|p| p.unit().into_vector()).collect();
    let mut chosen: Vec<usize> = Vec::with_capacity(count);
    let mut base: Option<Multivector<S>> = None;
    while chosen.len() < count {
        let mut best: Option<(usize, Multivector<S>, S)> = None;
        for (k, u) in units.iter().enumerate() {
            if chosen.contains(&k) {
                continue;
            }
            let w = match &base {
                None => u.clone(),
                Some(b) => b.wedge(u),
            };
            let norm = w.norm();
            if best.as_ref().is_none_or(|(_, _, b)| norm > *b) {
                best = Some((k, w, norm));
            }
        }
        let (k, w, norm) = best?;
        if norm <= S::lit(tolerance::GEOMETRIC) {
            return None;
        }
        chosen.push(k);
        base = Some(w);
    }
    Some(chosen)
}

/// Fits the sphere of the cell lemma: a `(k-1)`-sphere through the `2^k`
/// vertices of a `k`-cell of `F` or `F̂`, or a `k`-sphere through the
/// `2^(k+1)` vertices of corresponding cells of both nets.
pub fn cell_sphere_check<S: Scalar>(
    net: &PairNet<S>,
    cell: &Cell,
    which: CellNets,
) -> Result<CellSphereReport<S>, NetError> {
    let lattice = net.lattice();
    let k = cell.axes.len();
    let verts = lattice.cell_vertices(cell);
    let mut points: Vec<&ConformalPoint<S>> = Vec::new();
    if which != CellNets::FHat {
        points.extend(verts.iter().map(|&v| &net.f()[v]));
    }
    if which != CellNets::F {
        points.extend(verts.iter().map(|&v| &net.f_hat()[v]));
    }
    let need = if which == CellNets::Pair { k + 2 } else { k + 1 };
    let degenerate = || NetError::DegenerateCell {
        base: lattice.multi_index(cell.base),
        axes: cell.axes.clone(),
    };
    let n = net.algebra().n();
    if need > n + 2 {
        return Err(degenerate());
    }
    let chosen = generic_subset(&points, need).ok_or_else(degenerate)?;
    let defining: Vec<ConformalPoint<S>> = chosen.iter().map(|&c| points[c].unit()).collect();
    let (blade, _) = wedge_points(&defining);
    // For need == n + 2 this is the pseudoscalar and every point is incident.
    let sphere = SphereBlade::timelike_unchecked(blade, need);
    let max_residual = points
        .iter()
        .map(|p| sphere.incidence_residual(&p.unit()))
        .fold(S::zero(), |a, b| a.max(b));
    Ok(CellSphereReport { sphere, max_residual })
}

/// The enveloped sphere `Φ⁻¹ (e_0 ∧ s_1 ∧ ... ∧ s_m ∧ e_inf) Φ` of the
/// elementary `m`-cell with the given base vertex.
pub fn ribaucour_congruence<S: Scalar>(net: &PairNet<S>, base: usize) -> Result<SphereBlade<S>, NetError> {
    let lattice = net.lattice();
    let (m, n) = (lattice.dim(), net.algebra().n());
    if m >= n {
        return Err(NetError::CongruenceDimension { m, n });
    }
    let frames = net.frames().ok_or(NetError::MissingFrames)?;
    let alg = net.algebra();
    let mut blade = Multivector::e0(alg);
    for axis in 0..m {
        blade = blade.wedge(&net.edge_vector(base, axis)?);
    }
    blade = blade.wedge(&Multivector::einf(alg));
    let moved = frames[base].apply(&blade).grade(m + 2);
    Ok(SphereBlade::timelike_unchecked(moved, m + 2))
}

/// Largest incidence residual of the `2^(m+1)` cell vertices of both nets
/// with the congruence sphere at `base`.
pub fn congruence_residual<S: Scalar>(net: &PairNet<S>, base: usize) -> Result<S, NetError> {
    let sphere = ribaucour_congruence(net, base)?;
    let cell = Cell {
        base,
        axes: (0..net.lattice().dim()).collect(),
    };
    let verts = net.lattice().cell_vertices(&cell);
    Ok(verts
        .iter()
        .flat_map(|&v| [&net.f()[v], &net.f_hat()[v]])
        .map(|p| sphere.incidence_residual(&p.unit()))
        .fold(S::zero(), |a, b| a.max(b)))
}

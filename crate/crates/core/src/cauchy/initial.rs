use std::sync::Arc;

use crate::clifford::{Algebra, Versor};
use crate::error::CompletionError;
use crate::moebius::{projective_distance, wedge_points, ConformalPoint};
use crate::net::{combinations, Lattice};
use crate::scalar::Scalar;
use crate::tolerance;

/// Points of a 2D coordinate subnet through the origin, row-major over
/// `(t_i, t_j)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Subnet2<S: Scalar> {
    pub axes: (usize, usize),
    pub f: Vec<ConformalPoint<S>>,
    pub f_hat: Option<Vec<ConformalPoint<S>>>,
}

/// Cauchy data: `F` (and optionally `F̂`) on every vertex with at most two
/// nonzero coordinates, plus an optional frame at the origin.
#[derive(Clone, Debug)]
pub struct InitialData<S: Scalar> {
    alg: Arc<Algebra>,
    lattice: Lattice,
    f: Vec<Option<ConformalPoint<S>>>,
    f_hat: Option<Vec<Option<ConformalPoint<S>>>>,
    frame_origin: Option<Versor<S>>,
}

/// Vertices the initial data must cover.
pub fn is_initial(lattice: &Lattice, idx: usize) -> bool {
    (0..lattice.dim()).filter(|&a| lattice.coord(idx, a) > 0).count() <= 2
}

impl<S: Scalar> InitialData<S> {
    /// Merges per-plane subnets, checking that they agree on shared axes.
    pub fn from_subnets(
        alg: &Arc<Algebra>,
        extents: &[usize],
        subnets: &[Subnet2<S>],
        frame_origin: Option<Versor<S>>,
    ) -> Result<Self, CompletionError> {
        let lattice = Lattice::new(extents)?;
        let m = lattice.dim();
        if m < 2 {
            return Err(CompletionError::Dimension(m));
        }
        let with_hat = subnets.first().is_some_and(|s| s.f_hat.is_some());
        let mut data = Self {
            alg: Arc::clone(alg),
            f: vec![None; lattice.len()],
            f_hat: with_hat.then(|| vec![None; lattice.len()]),
            lattice,
            frame_origin,
        };
        for sub in subnets {
            let (i, j) = sub.axes;
            if i >= j || j >= m {
                return Err(crate::NetError::Axis { axis: j, m }.into());
            }
            let (ei, ej) = (extents[i], extents[j]);
            let expected = ei * ej;
            if sub.f.len() != expected || sub.f_hat.as_ref().is_some_and(|h| h.len() != expected) {
                return Err(CompletionError::SubnetSize {
                    axes: sub.axes,
                    expected,
                    found: sub.f.len(),
                });
            }
            if sub.f_hat.is_some() != with_hat {
                return Err(CompletionError::Seed("either all or no subnets must carry F̂".into()));
            }
            for a in 0..ei {
                for b in 0..ej {
                    let mut t = vec![0; m];
                    t[i] = a;
                    t[j] = b;
                    let idx = data.lattice.index(&t).expect("inside");
                    let k = a * ej + b;
                    merge(&mut data.f[idx], &sub.f[k], &t)?;
                    if let (Some(store), Some(src)) = (data.f_hat.as_mut(), sub.f_hat.as_ref()) {
                        merge(&mut store[idx], &src[k], &t)?;
                    }
                }
            }
        }
        data.check_coverage()?;
        Ok(data)
    }

    /// Initial data read off complete nets.
    pub fn from_vertices(
        alg: &Arc<Algebra>,
        lattice: &Lattice,
        f: impl Fn(usize) -> ConformalPoint<S>,
        f_hat: Option<&dyn Fn(usize) -> ConformalPoint<S>>,
        frame_origin: Option<Versor<S>>,
    ) -> Result<Self, CompletionError> {
        if lattice.dim() < 2 {
            return Err(CompletionError::Dimension(lattice.dim()));
        }
        let pick = |g: &dyn Fn(usize) -> ConformalPoint<S>| -> Vec<Option<ConformalPoint<S>>> {
            (0..lattice.len()).map(|v| is_initial(lattice, v).then(|| g(v))).collect()
        };
        Ok(Self {
            alg: Arc::clone(alg),
            lattice: lattice.clone(),
            f: pick(&f),
            f_hat: f_hat.map(pick),
            frame_origin,
        })
    }

    fn check_coverage(&self) -> Result<(), CompletionError> {
        for idx in 0..self.lattice.len() {
            if is_initial(&self.lattice, idx) {
                let missing_hat = self.f_hat.as_ref().is_some_and(|h| h[idx].is_none());
                if self.f[idx].is_none() || missing_hat {
                    return Err(CompletionError::MissingVertex(self.lattice.multi_index(idx)));
                }
            }
        }
        Ok(())
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn f(&self) -> &[Option<ConformalPoint<S>>] {
        &self.f
    }

    pub fn f_hat(&self) -> Option<&[Option<ConformalPoint<S>>]> {
        self.f_hat.as_deref()
    }

    pub fn frame_origin(&self) -> Option<&Versor<S>> {
        self.frame_origin.as_ref()
    }

    /// Whether `F̂` is absent or the point at infinity everywhere.
    pub fn is_euclidean(&self) -> bool {
        let Some(h) = &self.f_hat else { return true };
        h.iter().flatten().all(|p| p.is_at_infinity())
    }

    /// The per-plane view of the data.
    pub fn subnets(&self) -> Vec<Subnet2<S>> {
        let m = self.lattice.dim();
        let ext = self.lattice.extents();
        combinations(m, 2)
            .into_iter()
            .map(|ax| {
                let (i, j) = (ax[0], ax[1]);
                let mut idxs = Vec::with_capacity(ext[i] * ext[j]);
                for a in 0..ext[i] {
                    for b in 0..ext[j] {
                        let mut t = vec![0; m];
                        t[i] = a;
                        t[j] = b;
                        idxs.push(self.lattice.index(&t).expect("inside"));
                    }
                }
                let take = |v: &[Option<ConformalPoint<S>>]| -> Vec<ConformalPoint<S>> {
                    idxs.iter().map(|&k| v[k].clone().expect("covered")).collect()
                };
                Subnet2 {
                    axes: (i, j),
                    f: take(&self.f),
                    f_hat: self.f_hat.as_deref().map(take),
                }
            })
            .collect()
    }

    /// Checks that every initial face of `F` (and `F̂`) is concircular.
    pub fn validate(&self, tol: S) -> Result<(), CompletionError> {
        for face in self.lattice.cells(2) {
            let verts = self.lattice.cell_vertices(&face);
            if !verts.iter().all(|&v| is_initial(&self.lattice, v)) {
                continue;
            }
            let nets: Vec<&[Option<ConformalPoint<S>>]> =
                std::iter::once(self.f.as_slice()).chain(self.f_hat.as_deref()).collect();
            for net in nets {
                let pts: Vec<ConformalPoint<S>> = verts.iter().map(|&v| net[v].clone().expect("covered")).collect();
                let (_, residual) = wedge_points(&pts);
                if residual > tol {
                    return Err(CompletionError::InitialFace {
                        base: self.lattice.multi_index(face.base),
                        axes: (face.axes[0], face.axes[1]),
                        residual: residual.to_f64_lossy(),
                    });
                }
            }
        }
        Ok(())
    }
}

fn merge<S: Scalar>(slot: &mut Option<ConformalPoint<S>>, p: &ConformalPoint<S>, t: &[usize]) -> Result<(), CompletionError> {
    match slot {
        Some(q) => {
            let d = projective_distance(p.vector(), q.vector());
            if d > S::lit(tolerance::CONCIRCULAR) {
                return Err(CompletionError::SubnetConflict {
                    index: t.to_vec(),
                    distance: d.to_f64_lossy(),
                });
            }
        }
        None => *slot = Some(p.clone()),
    }
    Ok(())
}

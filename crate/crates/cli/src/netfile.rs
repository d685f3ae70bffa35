//! JSON interchange file for nets and initial data.
//!
//! The null-vector coefficients (in the internal basis `f_0, ..., f_{n+1}`)
//! are authoritative; chart coordinates are written for readers and checked
//! against them on import. `serde_json` prints the shortest decimal that
//! reads back to the same double, so a round trip is exact.

use std::collections::HashSet;
use std::sync::Arc;

use ribaucour::cauchy::{is_initial, InitialData};
use ribaucour::clifford::{algebra_init, Algebra};
use ribaucour::moebius::{project, ConformalPoint, Projected};
use ribaucour::net::{EdgeField, Lattice, PairNet};
use ribaucour::{Multivector, Versor};
use serde::{Deserialize, Serialize};

use crate::CliError;

pub const NET_SCHEMA: &str = "ribnet-net/1";

/// Relative tolerance for chart coordinates against the null vector.
const CHART_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NetFile {
    pub schema: String,
    pub n: usize,
    pub m: usize,
    pub extents: Vec<usize>,
    /// `F̂ ≡ e_inf`; vertex records then carry no `f_hat`.
    #[serde(default)]
    pub euclidean: bool,
    pub vertices: Vec<VertexRecord>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub edge_spheres: Vec<EdgeRecord>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexRecord {
    pub t: Vec<usize>,
    pub f: PointRecord,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f_hat: Option<PointRecord>,
    /// All `2^(n+2)` coefficients of the spin frame.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub frame: Option<Vec<f64>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointRecord {
    #[serde(default)]
    pub chart: Option<Vec<f64>>,
    #[serde(default)]
    pub infinity: bool,
    pub null: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeRecord {
    pub t: Vec<usize>,
    pub axis: usize,
    pub sphere: Vec<f64>,
}

/// Contents of a net file: a complete pair of nets, or initial data for a fill.
#[derive(Clone, Debug)]
pub enum Loaded {
    Net(PairNet<f64>),
    Initial(InitialData<f64>),
}

fn point_record(p: &ConformalPoint<f64>) -> PointRecord {
    let chart = match project(p) {
        Projected::Finite(x) => Some(x),
        Projected::Infinity => None,
    };
    PointRecord {
        infinity: chart.is_none(),
        chart,
        null: p.vector().vector_coords(),
    }
}

impl NetFile {
    pub fn from_net(net: &PairNet<f64>) -> Self {
        let lattice = net.lattice();
        let euclidean = net.is_euclidean();
        let vertices = (0..lattice.len())
            .map(|v| VertexRecord {
                t: lattice.multi_index(v),
                f: point_record(&net.f()[v]),
                f_hat: (!euclidean).then(|| point_record(&net.f_hat()[v])),
                frame: net.frames().map(|fr| fr[v].multivector().coeffs().to_vec()),
            })
            .collect();
        let edge_spheres = net
            .edge_spheres()
            .map(|field| {
                field
                    .iter()
                    .map(|((base, axis), s)| EdgeRecord {
                        t: lattice.multi_index(base),
                        axis,
                        sphere: s.vector_coords(),
                    })
                    .collect()
            })
            .unwrap_or_default();
        Self {
            schema: NET_SCHEMA.to_string(),
            n: net.algebra().n(),
            m: lattice.dim(),
            extents: lattice.extents().to_vec(),
            euclidean,
            vertices,
            edge_spheres,
        }
    }

    /// The initial vertices only: those on the coordinate 2-planes through the origin.
    pub fn from_initial(init: &InitialData<f64>) -> Self {
        let lattice = init.lattice();
        let hat = init.f_hat();
        let vertices = (0..lattice.len())
            .filter(|&v| is_initial(lattice, v))
            .map(|v| VertexRecord {
                t: lattice.multi_index(v),
                f: point_record(init.f()[v].as_ref().expect("initial vertex")),
                f_hat: hat.map(|h| point_record(h[v].as_ref().expect("initial vertex"))),
                frame: (v == 0).then(|| init.frame_origin().map(|fr| fr.multivector().coeffs().to_vec())).flatten(),
            })
            .collect();
        Self {
            schema: NET_SCHEMA.to_string(),
            n: init.algebra().n(),
            m: lattice.dim(),
            extents: lattice.extents().to_vec(),
            euclidean: hat.is_none(),
            vertices,
            edge_spheres: Vec::new(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("net file serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Input(format!("net file: {e}")))
    }

    /// Validates the records and builds the net or the initial data.
    pub fn load(&self) -> Result<Loaded, CliError> {
        let bad = |msg: String| CliError::Input(format!("net file: {msg}"));
        if self.schema != NET_SCHEMA {
            return Err(bad(format!("schema {:?} is not {NET_SCHEMA:?}", self.schema)));
        }
        if self.extents.len() != self.m {
            return Err(bad(format!("{} extents for m = {}", self.extents.len(), self.m)));
        }
        let alg = algebra_init(self.n).map_err(|e| bad(e.to_string()))?;
        let lattice = Lattice::new(&self.extents).map_err(|e| bad(e.to_string()))?;
        let mut slots: Vec<Option<&VertexRecord>> = vec![None; lattice.len()];
        for rec in &self.vertices {
            let idx = (rec.t.len() == self.m)
                .then(|| lattice.index(&rec.t))
                .flatten()
                .ok_or_else(|| bad(format!("vertex {:?} is outside the lattice", rec.t)))?;
            if slots[idx].replace(rec).is_some() {
                return Err(bad(format!("vertex {:?} appears twice", rec.t)));
            }
        }
        let mut f = vec![None; lattice.len()];
        let mut f_hat = vec![None; lattice.len()];
        let mut frames = vec![None; lattice.len()];
        for (idx, rec) in slots.iter().enumerate() {
            let Some(rec) = rec else { continue };
            let at = |what: &str, e: String| bad(format!("{what} at {:?}: {e}", rec.t));
            f[idx] = Some(read_point(&alg, &rec.f).map_err(|e| at("F", e))?);
            match (&rec.f_hat, self.euclidean) {
                (Some(_), true) => return Err(at("F̂", "given in a Euclidean net".into())),
                (Some(p), false) => f_hat[idx] = Some(read_point(&alg, p).map_err(|e| at("F̂", e))?),
                (None, _) => {}
            }
            if let Some(c) = &rec.frame {
                frames[idx] = Some(read_frame(&alg, c).map_err(|e| at("frame", e))?);
            }
        }

        if f.iter().all(Option::is_some) {
            let f: Vec<_> = f.into_iter().map(Option::unwrap).collect();
            let mut net = if self.euclidean {
                PairNet::euclidean(&alg, lattice.clone(), f)
            } else {
                let f_hat = f_hat
                    .into_iter()
                    .enumerate()
                    .map(|(v, p)| p.ok_or_else(|| bad(format!("F̂ missing at {:?}", lattice.multi_index(v)))))
                    .collect::<Result<Vec<_>, _>>()?;
                PairNet::new(&alg, lattice.clone(), f, f_hat)
            }
            .map_err(|e| bad(e.to_string()))?;
            if frames.iter().any(Option::is_some) {
                let frames = frames
                    .into_iter()
                    .enumerate()
                    .map(|(v, fr)| fr.ok_or_else(|| bad(format!("frame missing at {:?}", lattice.multi_index(v)))))
                    .collect::<Result<Vec<_>, _>>()?;
                net = net.with_frames(frames).map_err(|e| bad(e.to_string()))?;
            }
            if !self.edge_spheres.is_empty() {
                net = net.with_edge_spheres(self.read_edges(&alg, &lattice)?);
            }
            return Ok(Loaded::Net(net));
        }

        if self.m < 2 {
            return Err(bad("incomplete net with fewer than two axes".into()));
        }
        for idx in 0..lattice.len() {
            let hat_missing = !self.euclidean && f_hat[idx].is_none();
            if is_initial(&lattice, idx) && (f[idx].is_none() || hat_missing) {
                return Err(bad(format!("initial vertex {:?} is missing", lattice.multi_index(idx))));
            }
        }
        let fv = |v: usize| f[v].clone().expect("initial");
        let hv = |v: usize| f_hat[v].clone().expect("initial");
        let hat: Option<&dyn Fn(usize) -> ConformalPoint<f64>> = (!self.euclidean).then_some(&hv as _);
        let init = InitialData::from_vertices(&alg, &lattice, fv, hat, frames[0].clone()).map_err(|e| bad(e.to_string()))?;
        Ok(Loaded::Initial(init))
    }

    fn read_edges(&self, alg: &Arc<Algebra>, lattice: &Lattice) -> Result<EdgeField<Multivector<f64>>, CliError> {
        let bad = |msg: String| CliError::Input(format!("net file: {msg}"));
        let mut field = EdgeField::new(lattice);
        let mut seen = HashSet::new();
        for rec in &self.edge_spheres {
            let base = lattice
                .index(&rec.t)
                .filter(|&b| rec.t.len() == self.m && rec.axis < self.m && lattice.has_edge(b, rec.axis))
                .ok_or_else(|| bad(format!("edge {:?} axis {} is outside the lattice", rec.t, rec.axis)))?;
            if !seen.insert((base, rec.axis)) {
                return Err(bad(format!("edge {:?} axis {} appears twice", rec.t, rec.axis)));
            }
            check_finite(&rec.sphere).map_err(|e| bad(format!("edge {:?} axis {}: {e}", rec.t, rec.axis)))?;
            let s = Multivector::vector(alg, &rec.sphere).map_err(|e| bad(format!("edge {:?} axis {}: {e}", rec.t, rec.axis)))?;
            field.set(base, rec.axis, s);
        }
        Ok(field)
    }
}

fn check_finite(x: &[f64]) -> Result<(), String> {
    if x.iter().all(|c| c.is_finite()) {
        Ok(())
    } else {
        Err("non-finite coefficient".into())
    }
}

fn read_point(alg: &Arc<Algebra>, rec: &PointRecord) -> Result<ConformalPoint<f64>, String> {
    check_finite(&rec.null)?;
    let v = Multivector::vector(alg, &rec.null).map_err(|e| e.to_string())?;
    let p = ConformalPoint::new(v).map_err(|e| e.to_string())?;
    match (project(&p), &rec.chart, rec.infinity) {
        (Projected::Infinity, None, true) => {}
        (Projected::Finite(x), Some(c), false) => {
            check_finite(c)?;
            if c.len() != x.len() {
                return Err(format!("chart has {} coordinates, expected {}", c.len(), x.len()));
            }
            let scale = 1.0 + x.iter().map(|a| a * a).sum::<f64>().sqrt();
            let gap = x.iter().zip(c).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt();
            if gap > CHART_TOL * scale {
                return Err(format!("chart coordinates disagree with the null vector (gap {gap:e})"));
            }
        }
        (Projected::Finite(_), None, false) => {}
        (Projected::Infinity, _, _) => return Err("null vector is the point at infinity but the record is finite".into()),
        (Projected::Finite(_), _, true) => return Err("record flagged infinite but the null vector is finite".into()),
    }
    Ok(p)
}

fn read_frame(alg: &Arc<Algebra>, coeffs: &[f64]) -> Result<Versor<f64>, String> {
    check_finite(coeffs)?;
    let mv = Multivector::from_coeffs(alg, coeffs.to_vec()).map_err(|e| e.to_string())?;
    Versor::from_multivector(mv).map_err(|e| e.to_string())
}

use std::fmt::Write as _;

use ribaucour::net::NetAudit;
use serde::{Deserialize, Serialize};

use crate::config::{Tolerances, TOL_ENV};

pub const REPORT_SCHEMA: &str = "ribnet-report/1";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub tolerance: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Diagnostic {
    pub name: String,
    pub value: f64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Degenerate {
    pub edges: usize,
    pub faces: usize,
    pub cells: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FaceRef {
    pub base: Vec<usize>,
    pub axes: [usize; 2],
    pub residual: f64,
}

/// Residual maxima against tolerances. `pass` is recomputed from the
/// checks, never set directly.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerificationReport {
    pub schema: String,
    pub subject: String,
    /// Raw value of the tolerance environment variable, if set.
    pub tolerance_env: Option<String>,
    pub tolerances: Tolerances,
    pub checks: Vec<Check>,
    /// Reported, not checked.
    pub diagnostics: Vec<Diagnostic>,
    pub degenerate: Degenerate,
    pub first_failing_face: Option<FaceRef>,
    pub pass: bool,
}

impl VerificationReport {
    pub fn new(subject: &str, tolerances: Tolerances, env: Option<&str>) -> Self {
        Self {
            schema: REPORT_SCHEMA.to_string(),
            subject: subject.to_string(),
            tolerance_env: env.map(str::to_string),
            tolerances,
            checks: Vec::new(),
            diagnostics: Vec::new(),
            degenerate: Degenerate::default(),
            first_failing_face: None,
            pass: true,
        }
    }

    pub fn check(&mut self, name: &str, value: f64, tolerance: f64) {
        // NaN fails
        let pass = value <= tolerance;
        self.checks.push(Check {
            name: name.to_string(),
            value,
            tolerance,
            pass,
        });
        self.pass = self.checks.iter().all(|c| c.pass);
    }

    pub fn diagnostic(&mut self, name: &str, value: f64) {
        self.diagnostics.push(Diagnostic {
            name: name.to_string(),
            value,
        });
    }

    /// Hard checks on every invariant the audit evaluated.
    pub fn add_audit(&mut self, au: &NetAudit<f64>) {
        let t = self.tolerances;
        self.check("face_concircularity", au.face_concircularity, t.face);
        self.check("edge_concircularity", au.edge_concircularity, t.face);
        for (k, ((f, fh), pair)) in au.cell_sphere_f.iter().zip(&au.cell_sphere_f_hat).zip(&au.cell_sphere_pair).enumerate() {
            self.check(&format!("cell_sphere_f_k{}", k + 1), *f, t.cell);
            self.check(&format!("cell_sphere_f_hat_k{}", k + 1), *fh, t.cell);
            self.check(&format!("cell_sphere_pair_k{}", k + 1), *pair, t.cell);
        }
        let optional = [
            ("congruence", au.congruence, t.cell),
            ("edge_symmetry", au.edge_symmetry, t.symmetry),
            ("mc_face", au.mc_face, t.mc),
            ("mc_spheres", au.mc_spheres, t.mc),
            ("plane_residual", au.plane_residual, t.mc),
        ];
        for (name, value, tol) in optional {
            if let Some(v) = value {
                self.check(name, v, tol);
            }
        }
        self.diagnostic("face_r4", au.face_r4);
        self.diagnostic("edge_r4", au.edge_r4);
        if let Some(g) = au.edge_cross_ratio_gap {
            self.diagnostic("edge_cross_ratio_gap", g);
        }
        if let Some(g) = au.face_cross_ratio_gap {
            self.diagnostic("face_cross_ratio_gap", g);
        }
        if let Some(r) = au.max_sphere_rank {
            self.diagnostic("max_sphere_rank", r as f64);
        }
        self.degenerate = Degenerate {
            edges: au.degenerate_edges,
            faces: au.degenerate_faces,
            cells: au.degenerate_cells,
        };
        self.first_failing_face = au.first_failing_face.as_ref().map(|f| FaceRef {
            base: f.base.clone(),
            axes: [f.axes.0, f.axes.1],
            residual: f.residual,
        });
    }

    pub fn first_failure(&self) -> Option<String> {
        if self.pass {
            return None;
        }
        if let Some(f) = &self.first_failing_face {
            return Some(format!(
                "face at {:?} on axes ({}, {}) is not concircular (residual {:e})",
                f.base, f.axes[0], f.axes[1], f.residual
            ));
        }
        let c = self.checks.iter().find(|c| !c.pass)?;
        Some(format!("{} = {:e} exceeds {:e}", c.name, c.value, c.tolerance))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// Aligned plain-text rendering for the terminal.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "report: {}", self.subject);
        if let Some(env) = &self.tolerance_env {
            let _ = writeln!(out, "  {TOL_ENV} = {env}");
        }
        for c in &self.checks {
            let mark = if c.pass { "ok" } else { "FAIL" };
            let _ = writeln!(out, "  {:<24} {:>12.3e}  <= {:<9.1e} {mark}", c.name, c.value, c.tolerance);
        }
        for d in &self.diagnostics {
            let _ = writeln!(out, "  {:<24} {:>12.3e}", d.name, d.value);
        }
        let d = &self.degenerate;
        let _ = writeln!(out, "  degenerate edges {} faces {} cells {}", d.edges, d.faces, d.cells);
        if let Some(f) = self.first_failure() {
            let _ = writeln!(out, "  first failure: {f}");
        }
        let _ = writeln!(out, "  {}", if self.pass { "PASS" } else { "FAIL" });
        out
    }
}

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use ribaucour::cauchy::{
    complete_cell_3d, fill_frame_lattice, fill_lattice, hypercube_fill, hypercube_lattice, seed_grid, seed_random_circular,
    seed_random_pair, FillParams, InitialData, SevenPoints,
};
use ribaucour::clifford::algebra_init;
use ribaucour::moebius::{lift, project, ConformalPoint, Projected};
use ribaucour::net::{audit, nets_from_frames, Lattice, PairNet};

use crate::config::{Command, DemoName, RunConfig, SeedKind, Tolerances, Which};
use crate::mesh::coordinate_slices;
use crate::netfile::{Loaded, NetFile};
use crate::report::VerificationReport;
use crate::CliError;

/// Fixed bound of the Miquel demo on the unit cube.
pub const MIQUEL_TOL: f64 = 1e-10;

/// What a run printed, and its report if it checked anything.
#[derive(Clone, Debug, Default)]
pub struct Outcome {
    pub text: String,
    pub report: Option<VerificationReport>,
}

impl Outcome {
    pub fn passed(&self) -> bool {
        self.report.as_ref().is_none_or(|r| r.pass)
    }
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    }
    fs::write(path, contents).map_err(|e| CliError::io(path, e))
}

pub fn read_net(path: &Path) -> Result<Loaded, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    NetFile::from_json(&text)?.load()
}

fn fill_params(t: &Tolerances) -> FillParams {
    FillParams {
        cell_tol: t.face,
        soft: t.consistency,
        ..FillParams::default()
    }
}

/// Runs one configured command. `env` is the raw tolerance override from
/// the environment.
pub fn execute(cfg: &RunConfig, env: Option<&str>) -> Result<Outcome, CliError> {
    cfg.validate()?;
    let tol = Tolerances::resolve(&cfg.tolerances, env)?;
    let mut out = match cfg.command {
        Command::Generate => generate(cfg)?,
        Command::Fill => fill(cfg, tol, env)?,
        Command::Verify => verify(cfg, tol, env)?,
        Command::Export => export(cfg)?,
        Command::Demo => demo(cfg, tol, env)?,
    };
    if let Some(report) = &out.report {
        out.text.push_str(&report.to_text());
        if let Some(path) = &cfg.output.report {
            write_file(path, &report.to_json())?;
        }
    }
    Ok(out)
}

fn emit_net(cfg: &RunConfig, file: &NetFile, out: &mut Outcome) -> Result<(), CliError> {
    match &cfg.output.net {
        Some(path) => {
            write_file(path, &file.to_json())?;
            let _ = writeln!(out.text, "wrote {}", path.display());
        }
        None if out.report.is_none() => out.text.push_str(&file.to_json()),
        None => {}
    }
    Ok(())
}

fn generate(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let (l, s) = (cfg.lattice.as_ref().expect("validated"), cfg.seed.as_ref().expect("validated"));
    let alg = algebra_init(l.n).map_err(|e| CliError::Input(e.to_string()))?;
    let seed_err = |e: ribaucour::CompletionError| CliError::Input(format!("seed: {e}"));
    let file = match s.kind {
        SeedKind::Grid => {
            let beta = s.beta.clone().unwrap_or_else(|| vec![1.0; l.m]);
            let frames = seed_grid(&alg, &l.extents, &beta).map_err(seed_err)?;
            let lattice = Lattice::new(&l.extents).map_err(|e| CliError::Input(e.to_string()))?;
            let net = nets_from_frames(&lattice, frames).map_err(|e| CliError::Input(format!("seed: {e}")))?;
            NetFile::from_net(&net)
        }
        SeedKind::Circular => NetFile::from_initial(&seed_random_circular(&alg, &l.extents, &s.circular(), s.rng_seed).map_err(seed_err)?),
        SeedKind::Pair => NetFile::from_initial(&seed_random_pair(&alg, &l.extents, &s.pair(), s.rng_seed).map_err(seed_err)?),
    };
    let mut out = Outcome::default();
    emit_net(cfg, &file, &mut out)?;
    Ok(out)
}

/// Pair fills integrate frames when `m <= n`; otherwise both nets are filled
/// as points and the pair carries no frames.
pub fn fill_net(init: &InitialData<f64>, tol: &Tolerances) -> Result<(PairNet<f64>, Vec<(&'static str, f64)>), CliError> {
    let params = fill_params(tol);
    let fail = |e: ribaucour::CompletionError| CliError::Failure(format!("fill: {e}"));
    let lattice = init.lattice();
    if lattice.dim() <= init.algebra().n() {
        let (net, rep) = fill_frame_lattice(init, &params).map_err(fail)?;
        let stats = vec![
            ("consistency", rep.max_discrepancy),
            ("meet_residual", rep.max_meet_residual),
            ("edge_mismatch", rep.max_edge_mismatch),
        ];
        return Ok((net, stats));
    }
    let (f_net, rep) = fill_lattice(init, &params).map_err(fail)?;
    let mut worst = rep.max_discrepancy;
    let Some(hat) = init.f_hat() else {
        return Ok((f_net, vec![("consistency", worst)]));
    };
    let pick = |v: usize| hat[v].clone().expect("initial");
    let hat_init = InitialData::from_vertices(init.algebra(), lattice, pick, None, None).map_err(fail)?;
    let (hat_net, hat_rep) = fill_lattice(&hat_init, &params).map_err(fail)?;
    worst = worst.max(hat_rep.max_discrepancy);
    let net = PairNet::new(init.algebra(), lattice.clone(), f_net.f().to_vec(), hat_net.f().to_vec())
        .map_err(|e| CliError::Failure(format!("fill: {e}")))?;
    Ok((net, vec![("consistency", worst)]))
}

fn audit_report(subject: &str, net: &PairNet<f64>, tol: Tolerances, env: Option<&str>) -> Result<VerificationReport, CliError> {
    let au = audit(net, tol.face).map_err(|e| CliError::Failure(format!("audit: {e}")))?;
    let mut report = VerificationReport::new(subject, tol, env);
    report.add_audit(&au);
    Ok(report)
}

fn fill(cfg: &RunConfig, tol: Tolerances, env: Option<&str>) -> Result<Outcome, CliError> {
    let input = cfg.input.as_deref().expect("validated");
    let Loaded::Initial(init) = read_net(input)? else {
        return Err(CliError::Input(format!("{} is already a complete net", input.display())));
    };
    let (net, stats) = fill_net(&init, &tol)?;
    let mut report = audit_report("fill", &net, tol, env)?;
    for (name, value) in stats {
        match name {
            "consistency" => report.check(name, value, tol.consistency),
            _ => report.diagnostic(name, value),
        }
    }
    let mut out = Outcome {
        text: String::new(),
        report: Some(report),
    };
    emit_net(cfg, &NetFile::from_net(&net), &mut out)?;
    Ok(out)
}

fn verify(cfg: &RunConfig, tol: Tolerances, env: Option<&str>) -> Result<Outcome, CliError> {
    let input = cfg.input.as_deref().expect("validated");
    let Loaded::Net(net) = read_net(input)? else {
        return Err(CliError::Input(format!("{} holds initial data, not a complete net", input.display())));
    };
    Ok(Outcome {
        text: String::new(),
        report: Some(audit_report("verify", &net, tol, env)?),
    })
}

fn export(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let input = cfg.input.as_deref().expect("validated");
    let Loaded::Net(net) = read_net(input)? else {
        return Err(CliError::Input(format!("{} holds initial data, not a complete net", input.display())));
    };
    let points = match cfg.output.which {
        Which::F => net.f(),
        Which::FHat if net.is_euclidean() => return Err(CliError::Input("F̂ of a Euclidean net is the point at infinity".into())),
        Which::FHat => net.f_hat(),
    };
    let dir = cfg.output.dir.clone().unwrap_or_else(|| PathBuf::from("."));
    let mut out = Outcome::default();
    for slice in coordinate_slices(net.lattice(), points)? {
        let path = dir.join(format!("{}.obj", slice.name));
        write_file(&path, &slice.obj)?;
        let _ = writeln!(out.text, "wrote {}", path.display());
    }
    Ok(out)
}

fn demo(cfg: &RunConfig, tol: Tolerances, env: Option<&str>) -> Result<Outcome, CliError> {
    let rng_seed = cfg.seed.as_ref().map_or(0, |s| s.rng_seed);
    let (out, net) = match cfg.demo.expect("validated") {
        DemoName::Miquel => demo_miquel(tol, env)?,
        DemoName::Permutability => demo_permutability(tol, env, rng_seed)?,
        DemoName::Grid => demo_grid(tol, env)?,
    };
    if let Some(dir) = &cfg.output.dir {
        let name = format!("{:?}", cfg.demo.expect("validated")).to_lowercase();
        write_file(&dir.join(format!("{name}.json")), &NetFile::from_net(&net).to_json())?;
        if let Some(r) = &out.report {
            write_file(&dir.join(format!("{name}_report.json")), &r.to_json())?;
        }
    }
    Ok(out)
}

fn chart(p: &ConformalPoint<f64>) -> String {
    match project(p) {
        Projected::Finite(x) => format!("({})", x.iter().map(|c| format!("{c:.12}")).collect::<Vec<_>>().join(", ")),
        Projected::Infinity => "infinity".into(),
    }
}

fn unit_cube() -> Result<(Lattice, Vec<ConformalPoint<f64>>), CliError> {
    let alg = algebra_init(3).map_err(|e| CliError::Failure(e.to_string()))?;
    let lattice = hypercube_lattice(3).map_err(|e| CliError::Failure(e.to_string()))?;
    let pts = (0..8)
        .map(|v| {
            let x: Vec<f64> = lattice.multi_index(v).iter().map(|&c| c as f64).collect();
            lift(&alg, &x).map_err(|e| CliError::Failure(e.to_string()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok((lattice, pts))
}

/// Seven vertices of the unit cube determine the eighth.
fn demo_miquel(tol: Tolerances, env: Option<&str>) -> Result<(Outcome, PairNet<f64>), CliError> {
    let (lattice, cube) = unit_cube()?;
    // lattice order 000, 001, 010, 011, 100, 101, 110, 111
    let seven = SevenPoints { p: &cube[0], p1: &cube[4], p2: &cube[2], p3: &cube[1], p12: &cube[6], p13: &cube[5], p23: &cube[3] };
    let (q, res) = complete_cell_3d(seven).map_err(|e| CliError::Failure(format!("miquel: {e}")))?;
    let mut text = String::from("Miquel: seven vertices of the unit cube\n");
    for v in 0..7 {
        let _ = writeln!(text, "  {:?} {}", lattice.multi_index(v), chart(&cube[v]));
    }
    let _ = writeln!(text, "  completed {}", chart(&q));
    let mut report = VerificationReport::new("demo miquel", tol, env);
    report.check("eighth_vertex_distance", q.projective_distance(&cube[7]), MIQUEL_TOL);
    report.diagnostic("circle_residual", res.circle);
    report.diagnostic("sphere_residual", res.sphere);
    let mut pts = cube[..7].to_vec();
    pts.push(q);
    let alg = pts[0].algebra().clone();
    let net = PairNet::euclidean(&alg, lattice, pts).map_err(|e| CliError::Failure(e.to_string()))?;
    Ok((Outcome { text, report: Some(report) }, net))
}

/// A circular 3-cube with two Ribaucour transforms and their common fourth
/// net: the 5-cube filled from its 2-faces through the origin, then refilled
/// from its 3-faces to confirm agreement.
fn demo_permutability(tol: Tolerances, env: Option<&str>, rng_seed: u64) -> Result<(Outcome, PairNet<f64>), CliError> {
    let alg = algebra_init(3).map_err(|e| CliError::Failure(e.to_string()))?;
    let fail = |e: ribaucour::CompletionError| CliError::Failure(format!("permutability: {e}"));
    let init = seed_random_circular::<f64>(&alg, &[2; 5], &Default::default(), rng_seed).map_err(fail)?;
    let params = fill_params(&tol);
    let from_faces = hypercube_fill(5, 2, init.f(), None, &params).map_err(fail)?;
    let data: Vec<_> = from_faces.points.iter().cloned().map(Some).collect();
    let from_cells = hypercube_fill(5, 3, &data, None, &params).map_err(fail)?;
    let agreement = from_faces
        .points
        .iter()
        .zip(&from_cells.points)
        .map(|(a, b)| a.projective_distance(b))
        .fold(0.0, f64::max);
    let mut text = String::from("Permutability: 2^5 hypercube in R^3 from its 2-faces through the origin\n");
    let last = from_faces.points.last().expect("nonempty");
    let _ = writeln!(text, "  vertex [1, 1, 1, 1, 1] {}", chart(last));
    let _ = writeln!(text, "  {} vertices completed more than once", from_faces.report.discrepancies.len());
    let mut report = VerificationReport::new("demo permutability", tol, env);
    report.check("consistency", from_faces.report.max_discrepancy, tol.consistency);
    report.check("face_concircularity", from_faces.face_concircularity, tol.face);
    report.check("refill_agreement", agreement, tol.consistency);
    let net = PairNet::euclidean(&alg, from_faces.lattice.clone(), from_faces.points).map_err(|e| CliError::Failure(e.to_string()))?;
    Ok((Outcome { text, report: Some(report) }, net))
}

/// The 5^3 integer grid from translation frames.
fn demo_grid(tol: Tolerances, env: Option<&str>) -> Result<(Outcome, PairNet<f64>), CliError> {
    let alg = algebra_init(3).map_err(|e| CliError::Failure(e.to_string()))?;
    let extents = [5, 5, 5];
    let frames = seed_grid(&alg, &extents, &[1.0; 3]).map_err(|e| CliError::Failure(e.to_string()))?;
    let lattice = Lattice::new(&extents).map_err(|e| CliError::Failure(e.to_string()))?;
    let net = nets_from_frames(&lattice, frames).map_err(|e| CliError::Failure(e.to_string()))?;
    let mut worst: f64 = 0.0;
    for v in 0..lattice.len() {
        let t: Vec<f64> = lattice.multi_index(v).iter().map(|&c| c as f64).collect();
        let x = project(&net.f()[v]).finite().unwrap_or_else(|| vec![f64::INFINITY; 3]);
        worst = worst.max(x.iter().zip(&t).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max));
    }
    let mut report = audit_report("demo grid", &net, tol, env)?;
    report.check("integer_grid_distance", worst, tol.face);
    let text = format!("Grid: translation frames on {extents:?}, Euclidean {}\n", net.is_euclidean());
    Ok((Outcome { text, report: Some(report) }, net))
}

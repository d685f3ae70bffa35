use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use ribaucour::clifford::algebra_init;
use ribaucour::moebius::lift;
use ribnet::{Loaded, NetFile, VerificationReport};
use tempfile::TempDir;

fn ribnet(args: &[&str], env: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_ribnet"));
    cmd.args(args).env_remove("RIBNET_TOL");
    if let Some(v) = env {
        cmd.env("RIBNET_TOL", v);
    }
    cmd.output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn path(dir: &TempDir, name: &str) -> PathBuf {
    dir.path().join(name)
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn generate_grid(dir: &TempDir) -> PathBuf {
    let net = path(dir, "grid.json");
    let out = ribnet(&["generate", "--seed", "grid", "--m", "3", "--n", "3", "--extent", "5", "-o", s(&net)], None);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    net
}

fn read_net(p: &Path) -> NetFile {
    NetFile::from_json(&std::fs::read_to_string(p).unwrap()).unwrap()
}

#[test]
fn grid_seed_is_the_integer_grid() {
    let dir = TempDir::new().unwrap();
    let file = read_net(&generate_grid(&dir));
    assert_eq!((file.n, file.m, file.extents.clone()), (3, 3, vec![5, 5, 5]));
    assert_eq!(file.vertices.len(), 125);
    for v in &file.vertices {
        let want: Vec<f64> = v.t.iter().map(|&c| c as f64).collect();
        let x = v.f.chart.as_ref().unwrap();
        let gap = x.iter().zip(&want).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        assert!(gap < 1e-12, "{:?} at {x:?}", v.t);
    }
    let out = ribnet(&["verify", s(&path(&dir, "grid.json"))], None);
    assert_eq!(code(&out), 0);
}

#[test]
fn demos_exit_zero() {
    let dir = TempDir::new().unwrap();
    for name in ["miquel", "permutability", "grid"] {
        let out = ribnet(&["demo", name, "--dir", s(dir.path())], None);
        assert_eq!(code(&out), 0, "{name}: {}", String::from_utf8_lossy(&out.stdout));
        assert!(path(&dir, &format!("{name}_report.json")).exists());
    }
}

#[test]
fn net_file_round_trip() {
    let dir = TempDir::new().unwrap();
    let init = path(&dir, "init.json");
    let net = path(&dir, "net.json");
    assert_eq!(code(&ribnet(&["generate", "--seed", "pair", "--m", "3", "--extent", "4", "--rng-seed", "3", "-o", s(&init)], None)), 0);
    assert_eq!(code(&ribnet(&["fill", s(&init), "-o", s(&net)], None)), 0);
    let text = std::fs::read_to_string(&net).unwrap();
    let file = NetFile::from_json(&text).unwrap();
    let Loaded::Net(loaded) = file.load().unwrap() else { panic!("expected a net") };
    let again = NetFile::from_net(&loaded);
    assert_eq!(again.to_json(), text);
    for (a, b) in file.vertices.iter().zip(&again.vertices) {
        let gap = a.f.null.iter().zip(&b.f.null).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
        assert!(gap < 1e-12);
    }
}

#[test]
fn fill_then_verify_from_initial_data() {
    let dir = TempDir::new().unwrap();
    let init = path(&dir, "init.json");
    let net = path(&dir, "net.json");
    assert_eq!(code(&ribnet(&["generate", "--seed", "circular", "--m", "3", "--extent", "5", "-o", s(&init)], None)), 0);
    assert!(matches!(read_net(&init).load().unwrap(), Loaded::Initial(_)));
    assert_eq!(code(&ribnet(&["fill", s(&init), "-o", s(&net)], None)), 0);
    assert_eq!(code(&ribnet(&["verify", s(&net)], None)), 0);
}

#[test]
fn moved_vertex_fails_verification_at_its_face() {
    let dir = TempDir::new().unwrap();
    let net = generate_grid(&dir);
    let mut file = read_net(&net);
    let a = algebra_init(3).unwrap();
    let v = file.vertices.iter_mut().find(|v| v.t == [1, 2, 1]).unwrap();
    let x = vec![1.1, 2.0, 1.0];
    v.f.null = lift(&a, &x).unwrap().vector().vector_coords();
    v.f.chart = Some(x);
    std::fs::write(&net, file.to_json()).unwrap();
    let out = ribnet(&["verify", s(&net)], None);
    assert_eq!(code(&out), 1);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("face at"), "{err}");
}

#[test]
fn malformed_input_exits_two() {
    let dir = TempDir::new().unwrap();
    let net = generate_grid(&dir);

    let mut file = read_net(&net);
    file.vertices[7].f.chart.as_mut().unwrap()[0] += 0.5;
    let bad = path(&dir, "chart.json");
    std::fs::write(&bad, file.to_json()).unwrap();
    assert_eq!(code(&ribnet(&["verify", s(&bad)], None)), 2);

    let mut file = read_net(&net);
    file.vertices.pop();
    std::fs::write(&bad, file.to_json()).unwrap();
    assert_eq!(code(&ribnet(&["verify", s(&bad)], None)), 2);

    std::fs::write(&bad, "{ not json").unwrap();
    assert_eq!(code(&ribnet(&["verify", s(&bad)], None)), 2);
    assert_eq!(code(&ribnet(&["verify", s(&path(&dir, "missing.json"))], None)), 2);

    let cfg = path(&dir, "bad.toml");
    std::fs::write(&cfg, "schema = \"ribnet/1\"\ncommand = \"demo\"\ndemo = \"miquel\"\nspeed = 3\n").unwrap();
    assert_eq!(code(&ribnet(&["run", s(&cfg)], None)), 2);
    std::fs::write(&cfg, "schema = \"ribnet/0\"\ncommand = \"demo\"\ndemo = \"miquel\"\n").unwrap();
    assert_eq!(code(&ribnet(&["run", s(&cfg)], None)), 2);
    assert_eq!(code(&ribnet(&["generate", "--seed", "grid", "--m", "3"], None)), 2);
}

#[test]
fn toml_config_runs() {
    let dir = TempDir::new().unwrap();
    let net = path(&dir, "net.json");
    let cfg = path(&dir, "run.toml");
    let text = format!(
        "schema = \"ribnet/1\"\ncommand = \"generate\"\n\n[lattice]\nm = 2\nn = 3\nextents = [4, 3]\n\n\
         [seed]\nkind = \"grid\"\n\n[output]\nnet = \"{}\"\n",
        s(&net)
    );
    std::fs::write(&cfg, text).unwrap();
    assert_eq!(code(&ribnet(&["run", s(&cfg)], None)), 0);
    let file = read_net(&net);
    assert_eq!((file.n, file.m, file.vertices.len()), (3, 2, 12));
}

#[test]
fn reports_are_byte_identical() {
    let dir = TempDir::new().unwrap();
    let net = generate_grid(&dir);
    let (r1, r2) = (path(&dir, "r1.json"), path(&dir, "r2.json"));
    for r in [&r1, &r2] {
        assert_eq!(code(&ribnet(&["verify", s(&net), "--report", s(r)], None)), 0);
    }
    assert_eq!(std::fs::read(&r1).unwrap(), std::fs::read(&r2).unwrap());
}

#[test]
fn tolerance_env_is_echoed() {
    let dir = TempDir::new().unwrap();
    let net = generate_grid(&dir);
    let r = path(&dir, "r.json");
    assert_eq!(code(&ribnet(&["verify", s(&net), "--report", s(&r)], Some("1e-6"))), 0);
    let report: VerificationReport = serde_json::from_str(&std::fs::read_to_string(&r).unwrap()).unwrap();
    assert_eq!(report.tolerance_env.as_deref(), Some("1e-6"));
    assert_eq!(report.tolerances.face, 1e-6);
    assert_eq!(code(&ribnet(&["verify", s(&net)], Some("tight"))), 2);
    assert_eq!(code(&ribnet(&["verify", s(&net)], Some("-1"))), 2);
}

#[test]
fn obj_slices_carry_the_chart_coordinates() {
    let dir = TempDir::new().unwrap();
    let net = generate_grid(&dir);
    let out_dir = path(&dir, "mesh");
    std::fs::create_dir(&out_dir).unwrap();
    assert_eq!(code(&ribnet(&["export", s(&net), "--dir", s(&out_dir)], None)), 0);
    assert_eq!(std::fs::read_dir(&out_dir).unwrap().count(), 15);
    let obj = std::fs::read_to_string(out_dir.join("axis0_2.obj")).unwrap();
    let verts: Vec<Vec<f64>> = obj
        .lines()
        .filter_map(|l| l.strip_prefix("v "))
        .map(|l| l.split_whitespace().map(|x| x.parse().unwrap()).collect())
        .collect();
    assert_eq!(verts.len(), 25);
    assert!(verts.iter().all(|v| v[0] == 2.0));
    assert_eq!(obj.lines().filter(|l| l.starts_with("f ")).count(), 16);
}

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use ribnet::config::{Command, DemoName, LatticeConfig, Parameters, SeedConfig, SeedKind, Which, TOL_ENV};
use ribnet::{execute, CliError, RunConfig};

#[derive(Parser)]
#[command(name = "ribnet", version, about = "Seed, fill, verify and export discrete Ribaucour pair nets")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    /// Tolerance for every hard check (overrides the environment).
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Machine-readable report path.
    #[arg(long, global = true)]
    report: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a TOML config.
    Run { config: PathBuf },
    /// Write a seed: the grid net, or initial data for `fill`.
    Generate(GenerateArgs),
    /// Complete initial data to a net and verify it.
    Fill {
        input: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Check every invariant of a net file.
    Verify { input: PathBuf },
    /// Write OBJ quad meshes of the coordinate surfaces.
    Export {
        input: PathBuf,
        #[arg(long, default_value = ".")]
        dir: PathBuf,
        #[arg(long, value_enum, default_value = "f")]
        which: Which,
    },
    /// Run a built-in demonstration with its own checks.
    Demo {
        #[arg(value_enum)]
        name: DemoName,
        #[arg(long)]
        dir: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        rng_seed: u64,
    },
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long, value_enum)]
    seed: SeedKind,
    #[arg(long)]
    m: usize,
    /// Ambient dimension; defaults to `m`.
    #[arg(long)]
    n: Option<usize>,
    /// Common extent of every axis.
    #[arg(long, conflicts_with = "extents")]
    extent: Option<usize>,
    #[arg(long, value_delimiter = ',')]
    extents: Option<Vec<usize>>,
    /// Grid spacings, one per axis.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    beta: Option<Vec<f64>>,
    #[arg(long, default_value_t = 0)]
    rng_seed: u64,
    #[arg(long)]
    spacing: Option<f64>,
    #[arg(long)]
    jitter: Option<f64>,
    /// midpoint, constant:T or uniform:LO:HI
    #[arg(long, allow_hyphen_values = true)]
    parameters: Option<Parameters>,
    /// `F̂` at the origin, comma separated; omit for the point at infinity.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    companion: Option<Vec<f64>>,
    #[arg(long)]
    ratio: Option<f64>,
    #[arg(short, long)]
    out: Option<PathBuf>,
}

fn config(cli: Cli) -> Result<RunConfig, CliError> {
    let mut cfg = match cli.command {
        Cmd::Run { config } => {
            let text = std::fs::read_to_string(&config).map_err(|e| CliError::io(&config, e))?;
            RunConfig::from_toml(&text)?
        }
        Cmd::Generate(g) => {
            let mut cfg = RunConfig::new(Command::Generate);
            let extents = match (g.extents, g.extent) {
                (Some(e), _) => e,
                (None, Some(e)) => vec![e; g.m],
                (None, None) => return Err(CliError::Input("give --extent or --extents".into())),
            };
            cfg.lattice = Some(LatticeConfig { m: g.m, n: g.n.unwrap_or(g.m), extents });
            cfg.seed = Some(SeedConfig {
                kind: g.seed,
                beta: g.beta,
                rng_seed: g.rng_seed,
                spacing: g.spacing,
                jitter: g.jitter,
                parameters: g.parameters,
                companion: g.companion,
                ratio: g.ratio,
            });
            cfg.output.net = g.out;
            cfg
        }
        Cmd::Fill { input, out } => {
            let mut cfg = RunConfig::new(Command::Fill);
            cfg.input = Some(input);
            cfg.output.net = out;
            cfg
        }
        Cmd::Verify { input } => {
            let mut cfg = RunConfig::new(Command::Verify);
            cfg.input = Some(input);
            cfg
        }
        Cmd::Export { input, dir, which } => {
            let mut cfg = RunConfig::new(Command::Export);
            cfg.input = Some(input);
            cfg.output.dir = Some(dir);
            cfg.output.which = which;
            cfg
        }
        Cmd::Demo { name, dir, rng_seed } => {
            let mut cfg = RunConfig::new(Command::Demo);
            cfg.demo = Some(name);
            cfg.output.dir = dir;
            if rng_seed != 0 {
                cfg.seed = Some(SeedConfig {
                    kind: SeedKind::Circular,
                    beta: None,
                    rng_seed,
                    spacing: None,
                    jitter: None,
                    parameters: None,
                    companion: None,
                    ratio: None,
                });
            }
            cfg
        }
    };
    if cli.tol.is_some() {
        cfg.tolerances.default = cli.tol;
    }
    if cli.report.is_some() {
        cfg.output.report = cli.report;
    }
    Ok(cfg)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let env = std::env::var(TOL_ENV).ok();
    match config(cli).and_then(|cfg| execute(&cfg, env.as_deref())) {
        Ok(out) => {
            print!("{}", out.text);
            if out.passed() {
                ExitCode::SUCCESS
            } else {
                if let Some(msg) = out.report.as_ref().and_then(|r| r.first_failure()) {
                    eprintln!("ribnet: verification failed: {msg}");
                }
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("ribnet: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

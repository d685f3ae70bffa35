use std::path::PathBuf;
use std::str::FromStr;

use ribaucour::cauchy::{CircularSeedParams, ParameterField, PairSeedParams};
use ribaucour::tolerance;
use serde::{Deserialize, Serialize};

use crate::CliError;

pub const CONFIG_SCHEMA: &str = "ribnet/1";

/// Name of the environment variable replacing the default tolerance.
pub const TOL_ENV: &str = "RIBNET_TOL";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Generate,
    Fill,
    Verify,
    Export,
    Demo,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum DemoName {
    Miquel,
    Permutability,
    Grid,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum SeedKind {
    Grid,
    Circular,
    Pair,
}

/// Which net a mesh is cut from.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Which {
    #[default]
    F,
    FHat,
}

/// One run of the tool. Every command line invocation is turned into one of
/// these, and `ribnet run` reads it from a TOML file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub schema: String,
    pub command: Command,
    #[serde(default)]
    pub demo: Option<DemoName>,
    #[serde(default)]
    pub lattice: Option<LatticeConfig>,
    #[serde(default)]
    pub seed: Option<SeedConfig>,
    #[serde(default)]
    pub tolerances: ToleranceOverrides,
    #[serde(default)]
    pub input: Option<PathBuf>,
    #[serde(default)]
    pub output: OutputConfig,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeConfig {
    pub m: usize,
    pub n: usize,
    pub extents: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeedConfig {
    pub kind: SeedKind,
    /// Translation lengths of the grid seed, one per axis (default 1).
    #[serde(default)]
    pub beta: Option<Vec<f64>>,
    #[serde(default)]
    pub rng_seed: u64,
    #[serde(default)]
    pub spacing: Option<f64>,
    #[serde(default)]
    pub jitter: Option<f64>,
    #[serde(default)]
    pub parameters: Option<Parameters>,
    /// `F̂` at the origin for the pair seed; absent means the point at infinity.
    #[serde(default)]
    pub companion: Option<Vec<f64>>,
    #[serde(default)]
    pub ratio: Option<f64>,
}

/// Circle parameter field of the random seeds.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum Parameters {
    Midpoint,
    Constant(f64),
    Uniform { lo: f64, hi: f64 },
}

impl From<Parameters> for ParameterField {
    fn from(p: Parameters) -> Self {
        match p {
            Parameters::Midpoint => ParameterField::Midpoint,
            Parameters::Constant(t) => ParameterField::Constant(t),
            Parameters::Uniform { lo, hi } => ParameterField::Uniform { lo, hi },
        }
    }
}

/// `midpoint`, `constant:T` or `uniform:LO:HI`.
impl FromStr for Parameters {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let num = |t: &str| t.parse::<f64>().map_err(|e| format!("{t:?}: {e}"));
        match parts[..] {
            ["midpoint"] => Ok(Self::Midpoint),
            ["constant", t] => Ok(Self::Constant(num(t)?)),
            ["uniform", lo, hi] => Ok(Self::Uniform { lo: num(lo)?, hi: num(hi)? }),
            _ => Err(format!("unknown parameter field {s:?}; expected midpoint, constant:T or uniform:LO:HI")),
        }
    }
}

impl SeedConfig {
    pub fn circular(&self) -> CircularSeedParams {
        let d = CircularSeedParams::default();
        CircularSeedParams {
            spacing: self.spacing.unwrap_or(d.spacing),
            jitter: self.jitter.unwrap_or(d.jitter),
            parameters: self.parameters.map(Into::into).unwrap_or(d.parameters),
        }
    }

    pub fn pair(&self) -> PairSeedParams {
        PairSeedParams {
            net: self.circular(),
            companion: self.companion.clone(),
            ratio: self.ratio.unwrap_or(PairSeedParams::default().ratio),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ToleranceOverrides {
    /// Replaces the default of every tolerance below.
    pub default: Option<f64>,
    pub face: Option<f64>,
    pub cell: Option<f64>,
    pub mc: Option<f64>,
    pub symmetry: Option<f64>,
    pub consistency: Option<f64>,
}

/// Resolved hard-check tolerances.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Tolerances {
    /// Scaled concircularity of faces and edge quadruples.
    pub face: f64,
    /// Incidence residuals of the cell spheres and the congruence.
    pub cell: f64,
    /// Maurer-Cartan residuals and the plane test in Euclidean mode.
    pub mc: f64,
    /// Asymmetry of edge spheres in their endpoints.
    pub symmetry: f64,
    /// Disagreement of 3-cells completing the same vertex.
    pub consistency: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            face: tolerance::CONCIRCULAR,
            cell: tolerance::CONCIRCULAR,
            mc: tolerance::MAURER_CARTAN,
            symmetry: tolerance::EDGE_SYMMETRY,
            consistency: tolerance::CONSISTENCY_SOFT,
        }
    }
}

impl Tolerances {
    fn uniform(t: f64) -> Self {
        Self {
            face: t,
            cell: t,
            mc: t,
            symmetry: t,
            consistency: t,
        }
    }

    /// Defaults, then the environment value, then the configured overrides.
    pub fn resolve(overrides: &ToleranceOverrides, env: Option<&str>) -> Result<Self, CliError> {
        let mut t = Self::default();
        if let Some(raw) = env {
            t = Self::uniform(parse_tolerance(raw).map_err(|e| CliError::Input(format!("{TOL_ENV}: {e}")))?);
        }
        if let Some(d) = overrides.default {
            t = Self::uniform(d);
        }
        let slots = [
            (&mut t.face, overrides.face),
            (&mut t.cell, overrides.cell),
            (&mut t.mc, overrides.mc),
            (&mut t.symmetry, overrides.symmetry),
            (&mut t.consistency, overrides.consistency),
        ];
        for (slot, value) in slots {
            if let Some(v) = value {
                *slot = v;
            }
        }
        for v in [t.face, t.cell, t.mc, t.symmetry, t.consistency] {
            if !(v.is_finite() && v > 0.0) {
                return Err(CliError::Input(format!("tolerance {v} must be positive and finite")));
            }
        }
        Ok(t)
    }
}

fn parse_tolerance(raw: &str) -> Result<f64, String> {
    let v: f64 = raw.trim().parse().map_err(|e| format!("{raw:?}: {e}"))?;
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(format!("{raw:?} is not a positive tolerance"))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    /// Net file written by `generate` and `fill`.
    pub net: Option<PathBuf>,
    /// Machine-readable report.
    pub report: Option<PathBuf>,
    /// Directory for mesh slices (`export`) and demo files.
    pub dir: Option<PathBuf>,
    #[serde(default)]
    pub which: Which,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        Self {
            schema: CONFIG_SCHEMA.to_string(),
            command,
            demo: None,
            lattice: None,
            seed: None,
            tolerances: ToleranceOverrides::default(),
            input: None,
            output: OutputConfig::default(),
        }
    }

    pub fn from_toml(text: &str) -> Result<Self, CliError> {
        let cfg: Self = toml::from_str(text).map_err(|e| CliError::Input(format!("config: {e}")))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let bad = |msg: String| Err(CliError::Input(msg));
        if self.schema != CONFIG_SCHEMA {
            return bad(format!("config schema {:?} is not {CONFIG_SCHEMA:?}", self.schema));
        }
        if let Some(l) = &self.lattice {
            if l.extents.len() != l.m {
                return bad(format!("{} extents given for m = {}", l.extents.len(), l.m));
            }
            if l.n == 0 || l.m == 0 || l.extents.contains(&0) {
                return bad("dimensions and extents must be positive".into());
            }
        }
        match self.command {
            Command::Generate => {
                let (Some(l), Some(s)) = (&self.lattice, &self.seed) else {
                    return bad("generate needs [lattice] and [seed]".into());
                };
                if let Some(b) = &s.beta {
                    if b.len() != l.m {
                        return bad(format!("{} grid spacings given for m = {}", b.len(), l.m));
                    }
                }
                if let Some(c) = &s.companion {
                    if c.len() != l.n {
                        return bad(format!("companion has {} coordinates, n = {}", c.len(), l.n));
                    }
                }
            }
            Command::Fill | Command::Verify | Command::Export if self.input.is_none() => {
                return bad(format!("{:?} needs an input net file", self.command).to_lowercase());
            }
            Command::Demo if self.demo.is_none() => return bad("demo needs a name".into()),
            _ => {}
        }
        Ok(())
    }
}

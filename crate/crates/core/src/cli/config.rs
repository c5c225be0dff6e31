//! Run configuration from command-line flags and an optional `key = value`
//! file. Flags override file entries, which override built-in defaults.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::Parser;
use thiserror::Error;

use crate::impedance::SeriesControl;
use crate::sweep::{ModelInputs, SweepAxis, SweepSpec};
use crate::units::{IncidentWave, MetalParameters, StackConfiguration};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{0}")]
pub struct UsageError(pub String);

/// Substrate shortcuts accepted wherever `eps2` is.
pub const SUBSTRATES: [(&str, f64); 3] = [("glass", 4.0), ("mica", 8.0), ("ceramic", 40.0)];

#[derive(Debug, Parser)]
#[command(
    name = "swave",
    version,
    about = "S-wave transmittance, reflectance and absorptance of a thin metal film between two dielectrics"
)]
pub struct Args {
    /// Metal preset (only `sodium`).
    #[arg(long, value_parser = parse_preset)]
    pub preset: Option<MetalParameters>,
    /// Plasma frequency, rad/s.
    #[arg(long, value_parser = number)]
    pub omega_p: Option<f64>,
    /// Fermi velocity, cm/s.
    #[arg(long, value_parser = number)]
    pub v_f: Option<f64>,
    /// Collision frequency in units of the plasma frequency.
    #[arg(long, value_parser = number)]
    pub eps_coll: Option<f64>,
    /// Permittivity of the incidence medium.
    #[arg(long, value_parser = number)]
    pub eps1: Option<f64>,
    /// Permittivity of the exit medium, or glass / mica / ceramic.
    #[arg(long, value_parser = parse_eps2)]
    pub eps2: Option<f64>,
    /// Film thickness, nm.
    #[arg(long, value_parser = number)]
    pub d_nm: Option<f64>,
    /// Angle of incidence, degrees.
    #[arg(long, value_parser = number)]
    pub theta_deg: Option<f64>,
    /// Frequency in units of the plasma frequency.
    #[arg(long, value_parser = number)]
    pub omega: Option<f64>,
    /// Sweep one axis: `<omega|d_nm|theta|eps2>:start:stop:steps`
    /// (theta in degrees; omega must start at >= 0.01).
    #[arg(long, value_parser = parse_sweep)]
    pub sweep: Option<SweepRequest>,
    /// Add local Drude-slab columns.
    #[arg(long)]
    pub oracle: bool,
    /// Multiply the Fermi velocity by this factor.
    #[arg(long, value_parser = number)]
    pub vf_scale: Option<f64>,
    /// Relative tolerance of the impedance mode sums.
    #[arg(long, value_parser = number)]
    pub rel_tol: Option<f64>,
    /// Cap on modes per impedance sum.
    #[arg(long)]
    pub max_terms: Option<usize>,
    /// CSV destination (standard output if absent).
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Configuration file with `key = value` lines.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

/// A sweep as given by the user; theta bounds are in degrees.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRequest {
    pub axis: SweepAxis,
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
}

impl SweepRequest {
    fn axis_token(&self) -> &'static str {
        match self.axis {
            SweepAxis::OmegaRatio => "omega",
            SweepAxis::ThicknessNm => "d_nm",
            SweepAxis::Theta => "theta",
            SweepAxis::Eps2 => "eps2",
        }
    }

    /// Axis values in user units (degrees for theta), one per row.
    pub fn grid(&self) -> Vec<f64> {
        let span = self.stop - self.start;
        let last = self.steps.saturating_sub(1).max(1);
        (0..self.steps)
            .map(|i| {
                if i == last {
                    self.stop
                } else {
                    self.start + span * i as f64 / last as f64
                }
            })
            .collect()
    }
}

impl std::fmt::Display for SweepRequest {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{}:{}:{}:{}",
            self.axis_token(),
            self.start,
            self.stop,
            self.steps
        )
    }
}

fn number(s: &str) -> Result<f64, String> {
    match s.trim().parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(format!("malformed number '{s}'")),
    }
}

fn integer(s: &str) -> Result<usize, String> {
    s.trim()
        .parse::<usize>()
        .map_err(|_| format!("malformed integer '{s}'"))
}

fn boolean(s: &str) -> Result<bool, String> {
    match s.trim() {
        "true" | "yes" | "1" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        other => Err(format!("malformed boolean '{other}'")),
    }
}

fn parse_preset(s: &str) -> Result<MetalParameters, String> {
    match s.trim() {
        "sodium" => Ok(MetalParameters::sodium()),
        other => Err(format!("unknown preset '{other}' (available: sodium)")),
    }
}

fn parse_eps2(s: &str) -> Result<f64, String> {
    let token = s.trim();
    SUBSTRATES
        .iter()
        .find(|(name, _)| *name == token)
        .map(|(_, v)| Ok(*v))
        .unwrap_or_else(|| number(token))
}

fn parse_sweep(s: &str) -> Result<SweepRequest, String> {
    let parts: Vec<&str> = s.trim().split(':').collect();
    let [axis, start, stop, steps] = parts[..] else {
        return Err(format!("sweep '{s}' is not axis:start:stop:steps"));
    };
    let axis = match axis {
        "omega" | "omega_ratio" => SweepAxis::OmegaRatio,
        "d_nm" | "d-nm" | "d" => SweepAxis::ThicknessNm,
        "theta" | "theta_deg" | "theta-deg" => SweepAxis::Theta,
        "eps2" => SweepAxis::Eps2,
        other => return Err(format!("unknown sweep axis '{other}'")),
    };
    Ok(SweepRequest {
        axis,
        start: number(start)?,
        stop: number(stop)?,
        steps: integer(steps)?,
    })
}

/// Settings from one source; `None` means "not given here".
#[derive(Debug, Clone, Default, PartialEq)]
pub struct PartialConfig {
    pub preset: Option<MetalParameters>,
    pub omega_p: Option<f64>,
    pub v_f: Option<f64>,
    pub eps_coll: Option<f64>,
    pub eps1: Option<f64>,
    pub eps2: Option<f64>,
    pub d_nm: Option<f64>,
    pub theta_deg: Option<f64>,
    pub omega: Option<f64>,
    pub sweep: Option<SweepRequest>,
    pub oracle: Option<bool>,
    pub vf_scale: Option<f64>,
    pub rel_tol: Option<f64>,
    pub max_terms: Option<usize>,
    pub output: Option<PathBuf>,
}

impl From<Args> for PartialConfig {
    fn from(a: Args) -> Self {
        Self {
            preset: a.preset,
            omega_p: a.omega_p,
            v_f: a.v_f,
            eps_coll: a.eps_coll,
            eps1: a.eps1,
            eps2: a.eps2,
            d_nm: a.d_nm,
            theta_deg: a.theta_deg,
            omega: a.omega,
            sweep: a.sweep,
            oracle: a.oracle.then_some(true),
            vf_scale: a.vf_scale,
            rel_tol: a.rel_tol,
            max_terms: a.max_terms,
            output: a.output,
        }
    }
}

impl PartialConfig {
    /// Parses a configuration file. Keys are the long flag names with `-`
    /// replaced by `_`; `#` starts a comment.
    pub fn from_file_contents(text: &str) -> Result<Self, UsageError> {
        let mut cfg = Self::default();
        let mut seen = HashSet::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: String| UsageError(format!("config line {}: {msg}", lineno + 1));
            let Some((key, value)) = line.split_once('=') else {
                return Err(err(format!("expected 'key = value', got '{line}'")));
            };
            let (key, value) = (key.trim(), value.trim());
            if !seen.insert(key.to_owned()) {
                return Err(err(format!("duplicate key '{key}'")));
            }
            cfg.set(key, value).map_err(err)?;
        }
        Ok(cfg)
    }

    fn set(&mut self, key: &str, value: &str) -> Result<(), String> {
        match key {
            "preset" => self.preset = Some(parse_preset(value)?),
            "omega_p" => self.omega_p = Some(number(value)?),
            "v_f" => self.v_f = Some(number(value)?),
            "eps_coll" => self.eps_coll = Some(number(value)?),
            "eps1" => self.eps1 = Some(number(value)?),
            "eps2" => self.eps2 = Some(parse_eps2(value)?),
            "d_nm" => self.d_nm = Some(number(value)?),
            "theta_deg" => self.theta_deg = Some(number(value)?),
            "omega" => self.omega = Some(number(value)?),
            "sweep" => self.sweep = Some(parse_sweep(value)?),
            "oracle" => self.oracle = Some(boolean(value)?),
            "vf_scale" => self.vf_scale = Some(number(value)?),
            "rel_tol" => self.rel_tol = Some(number(value)?),
            "max_terms" => self.max_terms = Some(integer(value)?),
            "output" => self.output = Some(PathBuf::from(value)),
            other => return Err(format!("unknown key '{other}'")),
        }
        Ok(())
    }

    /// Fills every field missing here from `lower`.
    pub fn or(self, lower: PartialConfig) -> PartialConfig {
        PartialConfig {
            preset: self.preset.or(lower.preset),
            omega_p: self.omega_p.or(lower.omega_p),
            v_f: self.v_f.or(lower.v_f),
            eps_coll: self.eps_coll.or(lower.eps_coll),
            eps1: self.eps1.or(lower.eps1),
            eps2: self.eps2.or(lower.eps2),
            d_nm: self.d_nm.or(lower.d_nm),
            theta_deg: self.theta_deg.or(lower.theta_deg),
            omega: self.omega.or(lower.omega),
            sweep: self.sweep.or(lower.sweep),
            oracle: self.oracle.or(lower.oracle),
            vf_scale: self.vf_scale.or(lower.vf_scale),
            rel_tol: self.rel_tol.or(lower.rel_tol),
            max_terms: self.max_terms.or(lower.max_terms),
            output: self.output.or(lower.output),
        }
    }

    /// Applies defaults and validates every value.
    pub fn resolve(self) -> Result<RunConfiguration, UsageError> {
        let base = self.preset.unwrap_or_else(MetalParameters::sodium);
        let cfg = RunConfiguration {
            omega_p: self.omega_p.unwrap_or(base.omega_p()),
            v_f: self.v_f.unwrap_or(base.v_f()),
            eps_coll: self.eps_coll.unwrap_or(base.eps_coll()),
            eps1: self.eps1.unwrap_or(1.0),
            eps2: self.eps2.unwrap_or(4.0),
            d_nm: self.d_nm.unwrap_or(100.0),
            theta_deg: self.theta_deg.unwrap_or(0.0),
            omega_ratio: self.omega.unwrap_or(1.0),
            sweep: self.sweep,
            oracle: self.oracle.unwrap_or(false),
            vf_scale: self.vf_scale.unwrap_or(1.0),
            rel_tol: self.rel_tol.unwrap_or(SeriesControl::DEFAULT_REL_TOL),
            max_terms: self.max_terms.unwrap_or(SeriesControl::DEFAULT_MAX_TERMS),
            output: self.output,
        };
        cfg.model_inputs()?;
        cfg.control()?;
        if let Some(spec) = cfg.sweep_spec()? {
            spec.points().map_err(|e| UsageError(e.to_string()))?;
        }
        Ok(cfg)
    }
}

/// Fully resolved settings for one invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfiguration {
    pub omega_p: f64,
    pub v_f: f64,
    pub eps_coll: f64,
    pub eps1: f64,
    pub eps2: f64,
    pub d_nm: f64,
    pub theta_deg: f64,
    pub omega_ratio: f64,
    pub sweep: Option<SweepRequest>,
    pub oracle: bool,
    pub vf_scale: f64,
    pub rel_tol: f64,
    pub max_terms: usize,
    pub output: Option<PathBuf>,
}

impl RunConfiguration {
    pub fn model_inputs(&self) -> Result<ModelInputs, UsageError> {
        let usage = |e: crate::ModelError| UsageError(e.to_string());
        if !(self.vf_scale > 0.0) {
            return Err(UsageError(format!(
                "vf_scale = {} must be > 0",
                self.vf_scale
            )));
        }
        let metal = MetalParameters::new(self.omega_p, self.v_f * self.vf_scale, self.eps_coll)
            .map_err(usage)?;
        let stack = StackConfiguration::new(self.eps1, self.eps2, self.d_nm).map_err(usage)?;
        if !(0.0..90.0).contains(&self.theta_deg) {
            return Err(UsageError(format!(
                "theta_deg = {} must lie in [0, 90)",
                self.theta_deg
            )));
        }
        let wave = IncidentWave::from_degrees(self.omega_ratio, self.theta_deg).map_err(usage)?;
        Ok(ModelInputs { metal, stack, wave })
    }

    pub fn control(&self) -> Result<SeriesControl, UsageError> {
        SeriesControl::new(self.rel_tol, self.max_terms).map_err(|e| UsageError(e.to_string()))
    }

    /// The core sweep, with theta bounds converted to radians.
    pub fn sweep_spec(&self) -> Result<Option<SweepSpec>, UsageError> {
        let Some(req) = self.sweep else {
            return Ok(None);
        };
        if req.axis == SweepAxis::Theta && !(req.stop < 90.0) {
            return Err(UsageError(format!(
                "theta sweep must stop below 90, got {}",
                req.stop
            )));
        }
        let (start, stop) = match req.axis {
            SweepAxis::Theta => (req.start.to_radians(), req.stop.to_radians()),
            _ => (req.start, req.stop),
        };
        Ok(Some(SweepSpec {
            axis: req.axis,
            start,
            stop,
            steps: req.steps,
            fixed: self.model_inputs()?,
        }))
    }

    /// Angle of incidence in degrees for each output row.
    pub fn row_angles_deg(&self, rows: usize) -> Vec<f64> {
        match self.sweep {
            Some(req) if req.axis == SweepAxis::Theta => req.grid(),
            _ => vec![self.theta_deg; rows],
        }
    }

    /// Serializes to the configuration-file format; reading it back yields an
    /// equal configuration.
    pub fn to_config_file(&self) -> String {
        let mut s = String::new();
        let mut line = |k: &str, v: String| writeln!(s, "{k} = {v}").expect("string write");
        line("omega_p", self.omega_p.to_string());
        line("v_f", self.v_f.to_string());
        line("eps_coll", self.eps_coll.to_string());
        line("eps1", self.eps1.to_string());
        line("eps2", self.eps2.to_string());
        line("d_nm", self.d_nm.to_string());
        line("theta_deg", self.theta_deg.to_string());
        line("omega", self.omega_ratio.to_string());
        if let Some(req) = self.sweep {
            line("sweep", req.to_string());
        }
        line("oracle", self.oracle.to_string());
        line("vf_scale", self.vf_scale.to_string());
        line("rel_tol", self.rel_tol.to_string());
        line("max_terms", self.max_terms.to_string());
        if let Some(path) = &self.output {
            line("output", path.display().to_string());
        }
        s
    }
}

/// Parses flags and the optional config file into a validated configuration.
pub fn parse_config<I, T>(argv: I) -> Result<RunConfiguration, ConfigError>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args = Args::try_parse_from(argv).map_err(ConfigError::Clap)?;
    let file = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| {
                ConfigError::Usage(UsageError(format!(
                    "cannot read config '{}': {e}",
                    path.display()
                )))
            })?;
            PartialConfig::from_file_contents(&text).map_err(ConfigError::Usage)?
        }
        None => PartialConfig::default(),
    };
    PartialConfig::from(args)
        .or(file)
        .resolve()
        .map_err(ConfigError::Usage)
}

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error(transparent)]
    Clap(clap::Error),
    #[error("{0}")]
    Usage(UsageError),
}

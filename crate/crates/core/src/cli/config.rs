//! Flat `key = value` run configuration.
//!
//! Sources are applied in order: built-in defaults, a bundled preset, a
//! config file, then `--set` overrides. Blank lines and `#` comments are
//! ignored. Lists are comma separated; a numeric list may also be written as
//! an inclusive range `start:stop:step`.

use std::fmt::{self, Write as _};

use crate::geometry::{SystemParams, VisibilityMode};

/// A configuration problem, located as precisely as possible.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError {
    pub source: String,
    pub line: Option<usize>,
    pub key: Option<String>,
    pub message: String,
}

impl ConfigError {
    pub fn new(message: impl Into<String>) -> Self {
        Self {
            source: "config".into(),
            line: None,
            key: None,
            message: message.into(),
        }
    }

    fn at(mut self, source: &str, line: Option<usize>) -> Self {
        self.source = source.to_string();
        self.line = line;
        self
    }
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.source)?;
        if let Some(l) = self.line {
            write!(f, ":{l}")?;
        }
        if let Some(k) = &self.key {
            write!(f, ": `{k}`")?;
        }
        write!(f, ": {}", self.message)
    }
}

impl std::error::Error for ConfigError {}

fn key_err(key: &str, message: impl Into<String>) -> ConfigError {
    ConfigError {
        key: Some(key.to_string()),
        ..ConfigError::new(message)
    }
}

/// Quantities a sweep or a series can vary.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepVar {
    SThDb,
    LambdaHap,
    LambdaRis,
    LambdaB,
    HRis,
    NumRe,
    KFactor,
    MeanLenWid,
}

impl SweepVar {
    pub const ALL: [SweepVar; 8] = [
        Self::SThDb,
        Self::LambdaHap,
        Self::LambdaRis,
        Self::LambdaB,
        Self::HRis,
        Self::NumRe,
        Self::KFactor,
        Self::MeanLenWid,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::SThDb => "s_th_db",
            Self::LambdaHap => "lambda_hap",
            Self::LambdaRis => "lambda_ris",
            Self::LambdaB => "lambda_b",
            Self::HRis => "h_ris",
            Self::NumRe => "num_re",
            Self::KFactor => "k_factor",
            Self::MeanLenWid => "mean_len_wid",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|v| v.name() == s)
    }

    /// Writes `v` into `params`. The threshold is not a system parameter and
    /// leaves `params` untouched.
    pub fn apply(self, params: &mut SystemParams, v: f64) -> Result<(), ConfigError> {
        match self {
            Self::SThDb => {}
            Self::LambdaHap => params.lambda_hap = v,
            Self::LambdaRis => params.lambda_ris = v,
            Self::LambdaB => params.lambda_b = v,
            Self::HRis => params.h_ris = v,
            Self::NumRe => params.num_re = to_count(self.name(), v)?,
            Self::KFactor => params.set_k_factor(v),
            Self::MeanLenWid => params.set_mean_len_wid(v),
        }
        Ok(())
    }

    /// Value of this quantity in `params`; `NaN` for the threshold.
    pub fn read(self, params: &SystemParams) -> f64 {
        match self {
            Self::SThDb => f64::NAN,
            Self::LambdaHap => params.lambda_hap,
            Self::LambdaRis => params.lambda_ris,
            Self::LambdaB => params.lambda_b,
            Self::HRis => params.h_ris,
            Self::NumRe => f64::from(params.num_re),
            Self::KFactor => params.k_q,
            Self::MeanLenWid => params.mean_len,
        }
    }
}

fn to_count(key: &str, v: f64) -> Result<u32, ConfigError> {
    if v.fract() == 0.0 && (1.0..=f64::from(u32::MAX)).contains(&v) {
        Ok(v as u32)
    } else {
        Err(key_err(key, format!("expected a positive integer, got {v}")))
    }
}

/// Which computation routes a run uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Paths {
    Analytic,
    MonteCarlo,
    Both,
}

/// A sweep over one variable, optionally repeated for every combination of
/// the series variables.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub variable: SweepVar,
    pub values: Vec<f64>,
    pub series: Vec<(SweepVar, Vec<f64>)>,
    /// Thresholds reported on every row when the sweep variable is not the
    /// threshold itself.
    pub thresholds_db: Vec<f64>,
    pub paths: Paths,
    pub trials: u64,
    pub seed: u64,
    pub mode: VisibilityMode,
}

impl Default for SweepSpec {
    fn default() -> Self {
        Self {
            variable: SweepVar::SThDb,
            values: vec![0.0],
            series: Vec::new(),
            thresholds_db: vec![0.0],
            paths: Paths::Both,
            trials: 10_000,
            seed: 1,
            mode: VisibilityMode::Thinning,
        }
    }
}

/// Everything a subcommand needs.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub params: SystemParams,
    pub sweep: SweepSpec,
    pub condition_ris_exists: bool,
    pub nearest_hap_interferes: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            params: SystemParams::default(),
            sweep: SweepSpec::default(),
            condition_ris_exists: true,
            nearest_hap_interferes: false,
        }
    }
}

pub const PRESETS: [(&str, &str); 5] = [
    ("fig2", include_str!("../../presets/fig2.conf")),
    ("fig3", include_str!("../../presets/fig3.conf")),
    ("fig4", include_str!("../../presets/fig4.conf")),
    ("fig5", include_str!("../../presets/fig5.conf")),
    ("fig6", include_str!("../../presets/fig6.conf")),
];

pub fn preset(name: &str) -> Option<&'static str> {
    PRESETS.iter().find(|(n, _)| *n == name).map(|(_, body)| *body)
}

fn parse_f64(key: &str, s: &str) -> Result<f64, ConfigError> {
    s.trim()
        .parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| key_err(key, format!("expected a finite number, got `{}`", s.trim())))
}

fn parse_bool(key: &str, s: &str) -> Result<bool, ConfigError> {
    match s.trim() {
        "true" | "1" | "yes" => Ok(true),
        "false" | "0" | "no" => Ok(false),
        other => Err(key_err(key, format!("expected true or false, got `{other}`"))),
    }
}

fn parse_u64(key: &str, s: &str) -> Result<u64, ConfigError> {
    s.trim()
        .parse()
        .map_err(|_| key_err(key, format!("expected a non-negative integer, got `{}`", s.trim())))
}

/// Comma list or `start:stop:step` range.
fn parse_list(key: &str, s: &str) -> Result<Vec<f64>, ConfigError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(key_err(key, "list must not be empty"));
    }
    if s.contains(':') {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(key_err(key, "range must be start:stop:step"));
        }
        let (a, b, st) = (parse_f64(key, parts[0])?, parse_f64(key, parts[1])?, parse_f64(key, parts[2])?);
        if st <= 0.0 || b < a {
            return Err(key_err(key, "range needs step > 0 and stop >= start"));
        }
        let n = ((b - a) / st + 1e-9).floor() as usize;
        if n > 100_000 {
            return Err(key_err(key, "range has too many points"));
        }
        return Ok((0..=n).map(|i| a + i as f64 * st).collect());
    }
    s.split(',').map(|t| parse_f64(key, t)).collect()
}

fn join(vs: &[f64]) -> String {
    vs.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
}

impl RunConfig {
    /// Applies one `key = value` assignment.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), ConfigError> {
        let p = &mut self.params;
        let f = |v: &str| parse_f64(key, v);
        match key {
            "lambda_hap" => p.lambda_hap = f(value)?,
            "lambda_ris" => p.lambda_ris = f(value)?,
            "lambda_b" => p.lambda_b = f(value)?,
            "h_hap" => p.h_hap = f(value)?,
            "h_ris" => p.h_ris = f(value)?,
            "mean_len" => p.mean_len = f(value)?,
            "mean_wid" => p.mean_wid = f(value)?,
            "mean_len_wid" => p.set_mean_len_wid(f(value)?),
            "num_re" => p.num_re = to_count(key, f(value)?)?,
            "k_q" => p.k_q = f(value)?,
            "k_g" => p.k_g = f(value)?,
            "k_h" => p.k_h = f(value)?,
            "k_factor" => p.set_k_factor(f(value)?),
            "sigma2_q" => p.sigma2_q = f(value)?,
            "sigma2_g" => p.sigma2_g = f(value)?,
            "sigma2_h" => p.sigma2_h = f(value)?,
            "eps_q" => p.eps_q = f(value)?,
            "eps_g" => p.eps_g = f(value)?,
            "eps_h" => p.eps_h = f(value)?,
            "p_o" => p.p_o = f(value)?,
            "p_i" => p.p_i = f(value)?,
            "window_radius" => {
                p.window_radius = match value.trim() {
                    "auto" => None,
                    v => Some(f(v)?),
                }
            }
            "sweep" => {
                self.sweep.variable = SweepVar::parse(value.trim()).ok_or_else(|| {
                    key_err(key, format!("unknown sweep variable `{}`", value.trim()))
                })?
            }
            "values" => self.sweep.values = parse_list(key, value)?,
            "thresholds_db" => self.sweep.thresholds_db = parse_list(key, value)?,
            "trials" => self.sweep.trials = parse_u64(key, value)?,
            "seed" => self.sweep.seed = parse_u64(key, value)?,
            "mode" => self.sweep.mode = value.trim().parse().map_err(|e: String| key_err(key, e))?,
            "condition_ris_exists" => self.condition_ris_exists = parse_bool(key, value)?,
            "nearest_hap_interferes" => self.nearest_hap_interferes = parse_bool(key, value)?,
            "series" => {
                if value.trim() != "none" {
                    return Err(key_err(key, "only `series = none` is accepted; use series.<variable>"));
                }
                self.sweep.series.clear();
            }
            _ => {
                if let Some(var) = key.strip_prefix("series.") {
                    let var = SweepVar::parse(var)
                        .filter(|v| *v != SweepVar::SThDb)
                        .ok_or_else(|| key_err(key, "unknown series variable"))?;
                    let vals = parse_list(key, value)?;
                    match self.sweep.series.iter_mut().find(|(v, _)| *v == var) {
                        Some(slot) => slot.1 = vals,
                        None => self.sweep.series.push((var, vals)),
                    }
                } else {
                    return Err(key_err(key, "unknown key"));
                }
            }
        }
        Ok(())
    }

    /// Applies a whole config text; `source` names it in diagnostics.
    pub fn apply_text(&mut self, text: &str, source: &str) -> Result<(), ConfigError> {
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| {
                ConfigError::new(format!("expected key = value, got `{line}`")).at(source, Some(i + 1))
            })?;
            self.set(k.trim(), v).map_err(|e| e.at(source, Some(i + 1)))?;
        }
        Ok(())
    }

    /// Applies a single `key=value` override.
    pub fn apply_override(&mut self, assignment: &str) -> Result<(), ConfigError> {
        let (k, v) = assignment
            .split_once('=')
            .ok_or_else(|| ConfigError::new(format!("expected key=value, got `{assignment}`")).at("--set", None))?;
        self.set(k.trim(), v).map_err(|e| e.at("--set", None))
    }

    /// Canonical text form; [`RunConfig::apply_text`] on it reproduces `self`.
    pub fn to_text(&self) -> String {
        let p = &self.params;
        let s = &self.sweep;
        let mut out = String::new();
        let mut kv = |k: &str, v: String| {
            let _ = writeln!(out, "{k} = {v}");
        };
        kv("lambda_hap", p.lambda_hap.to_string());
        kv("lambda_ris", p.lambda_ris.to_string());
        kv("lambda_b", p.lambda_b.to_string());
        kv("h_hap", p.h_hap.to_string());
        kv("h_ris", p.h_ris.to_string());
        kv("mean_len", p.mean_len.to_string());
        kv("mean_wid", p.mean_wid.to_string());
        kv("num_re", p.num_re.to_string());
        kv("k_q", p.k_q.to_string());
        kv("k_g", p.k_g.to_string());
        kv("k_h", p.k_h.to_string());
        kv("sigma2_q", p.sigma2_q.to_string());
        kv("sigma2_g", p.sigma2_g.to_string());
        kv("sigma2_h", p.sigma2_h.to_string());
        kv("eps_q", p.eps_q.to_string());
        kv("eps_g", p.eps_g.to_string());
        kv("eps_h", p.eps_h.to_string());
        kv("p_o", p.p_o.to_string());
        kv("p_i", p.p_i.to_string());
        kv(
            "window_radius",
            p.window_radius.map_or_else(|| "auto".to_string(), |w| w.to_string()),
        );
        kv("sweep", s.variable.name().to_string());
        kv("values", join(&s.values));
        kv("series", "none".to_string());
        for (var, vals) in &s.series {
            kv(&format!("series.{}", var.name()), join(vals));
        }
        kv("thresholds_db", join(&s.thresholds_db));
        kv("trials", s.trials.to_string());
        kv("seed", s.seed.to_string());
        kv("mode", s.mode.to_string());
        kv("condition_ris_exists", self.condition_ris_exists.to_string());
        kv("nearest_hap_interferes", self.nearest_hap_interferes.to_string());
        out
    }

    /// Parameter sets of every series combination, in row order, each with
    /// the series values that produced it.
    pub fn series_points(&self) -> Result<Vec<SystemParams>, ConfigError> {
        let mut points = vec![self.params.clone()];
        for (var, vals) in &self.sweep.series {
            let mut next = Vec::with_capacity(points.len() * vals.len());
            for base in &points {
                for &v in vals {
                    let mut p = base.clone();
                    var.apply(&mut p, v)?;
                    next.push(p);
                }
            }
            points = next;
        }
        Ok(points)
    }

    /// Checks everything that can be checked without computing.
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.sweep.values.is_empty() {
            return Err(key_err("values", "sweep values must not be empty"));
        }
        if self.sweep.variable != SweepVar::SThDb && self.sweep.thresholds_db.is_empty() {
            return Err(key_err("thresholds_db", "at least one threshold is needed"));
        }
        for base in self.series_points()? {
            for &v in &self.sweep.values {
                let mut p = base.clone();
                self.sweep.variable.apply(&mut p, v)?;
                p.validate().map_err(|e| match e {
                    crate::Error::InvalidParam { field, reason } => key_err(field, reason),
                    other => ConfigError::new(other.to_string()),
                })?;
            }
        }
        Ok(())
    }
}

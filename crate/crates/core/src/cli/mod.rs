//! Command-line front end: configuration, sweeps, and CSV/JSON emission.
//!
//! Thresholds are given in dB here and converted to linear scale before they
//! reach the library. Exit codes: 0 success, 1 I/O failure, 2 configuration
//! error, 3 numerical failure (rows are still written, marked in `flags`),
//! 4 `compare --strict` found a failing row.

pub mod config;
mod table;

pub use config::{ConfigError, Paths, RunConfig, SweepSpec, SweepVar, PRESETS};
pub use table::Table;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::json;

use crate::analytic::{AnalyticModel, RisConvention};
use crate::geometry::{NetworkRealization, SystemParams, VisibilityMode};
use crate::montecarlo::{ks_statistic, run_trials, trial_rng, SimOptions, SimStats};

pub const EXIT_IO: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;
pub const EXIT_COMPARE_FAILED: i32 = 4;

/// Largest analytic-vs-simulated coverage gap a `compare` row may show.
pub const COVERAGE_TOL: f64 = 0.03;
/// Largest KS distance between simulated SIRs and the analytic law.
pub const KS_TOL: f64 = 0.05;

#[derive(Parser, Debug)]
#[command(name = "rishap", version, about = "Coverage and capacity of RIS-assisted HAP networks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Closed-form coverage and capacity over a sweep.
    Analytic(CommonArgs),
    /// Monte Carlo coverage, capacity and gain statistics over a sweep.
    Simulate(CommonArgs),
    /// Both routes side by side with deviations and KS distances.
    Compare {
        #[command(flatten)]
        common: CommonArgs,
        /// Exit with status 4 when any row fails its tolerance.
        #[arg(long)]
        strict: bool,
    },
    /// One sampled scene as JSON.
    SceneDump(CommonArgs),
}

#[derive(Args, Debug)]
struct CommonArgs {
    /// Config file of `key = value` lines.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Override one key; repeatable.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
    /// Bundled preset applied before --config.
    #[arg(long, value_name = "NAME")]
    preset: Option<String>,
    #[arg(long)]
    trials: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    mode: Option<VisibilityMode>,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Worker threads; all cores when absent.
    #[arg(long)]
    threads: Option<usize>,
    #[arg(long, value_name = "BOOL", num_args = 0..=1, default_missing_value = "true")]
    condition_ris_exists: Option<bool>,
    #[arg(long, value_name = "BOOL", num_args = 0..=1, default_missing_value = "true")]
    nearest_hap_interferes: Option<bool>,
    /// Print the effective configuration and exit.
    #[arg(long)]
    print_config: bool,
}

impl clap::ValueEnum for VisibilityMode {
    fn value_variants<'a>() -> &'a [Self] {
        &[VisibilityMode::Thinning, VisibilityMode::Explicit]
    }

    fn to_possible_value(&self) -> Option<clap::builder::PossibleValue> {
        Some(clap::builder::PossibleValue::new(match self {
            VisibilityMode::Thinning => "thinning",
            VisibilityMode::Explicit => "explicit",
        }))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

enum Failure {
    Config(String),
    Io(String),
}

impl From<ConfigError> for Failure {
    fn from(e: ConfigError) -> Self {
        Failure::Config(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

fn build_config(args: &CommonArgs) -> Result<RunConfig, Failure> {
    let mut cfg = RunConfig::default();
    if let Some(name) = &args.preset {
        let body = config::preset(name).ok_or_else(|| {
            let known: Vec<&str> = PRESETS.iter().map(|(n, _)| *n).collect();
            Failure::Config(format!("unknown preset `{name}` (known: {})", known.join(", ")))
        })?;
        cfg.apply_text(body, &format!("preset {name}"))?;
    }
    if let Some(path) = &args.config {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::Config(format!("{}: {e}", path.display())))?;
        cfg.apply_text(&text, &path.display().to_string())?;
    }
    for s in &args.set {
        cfg.apply_override(s)?;
    }
    if let Some(t) = args.trials {
        cfg.sweep.trials = t;
    }
    if let Some(s) = args.seed {
        cfg.sweep.seed = s;
    }
    if let Some(m) = args.mode {
        cfg.sweep.mode = m;
    }
    if let Some(b) = args.condition_ris_exists {
        cfg.condition_ris_exists = b;
    }
    if let Some(b) = args.nearest_hap_interferes {
        cfg.nearest_hap_interferes = b;
    }
    Ok(cfg)
}

/// Runs the command line and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let (common, kind, strict) = match &cli.command {
        Command::Analytic(c) => (c, Paths::Analytic, false),
        Command::Simulate(c) => (c, Paths::MonteCarlo, false),
        Command::Compare { common, strict } => (common, Paths::Both, *strict),
        Command::SceneDump(c) => (c, Paths::MonteCarlo, false),
    };
    let mut cfg = match build_config(common) {
        Ok(c) => c,
        Err(f) => return report(f),
    };
    cfg.sweep.paths = kind;
    if common.print_config {
        print!("{}", cfg.to_text());
        return 0;
    }
    if let Err(e) = cfg.validate() {
        eprintln!("error: {e}");
        return EXIT_CONFIG;
    }
    if cfg.sweep.trials == 0 && kind != Paths::Analytic {
        eprintln!("error: config: `trials`: must be >= 1");
        return EXIT_CONFIG;
    }
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(common.threads.unwrap_or(0))
        .build()
    {
        Ok(p) => p,
        Err(e) => return report(Failure::Io(e.to_string())),
    };

    let outcome = pool.install(|| match &cli.command {
        Command::SceneDump(_) => scene_dump(&cfg).map(|body| (body, 0)),
        _ => {
            let mut table = sweep_table(&cfg, kind);
            let code = if table.numerical_failure {
                EXIT_NUMERICAL
            } else if strict && table.any_failed {
                EXIT_COMPARE_FAILED
            } else {
                0
            };
            table.preamble = preamble(&cfg, &cli.command);
            let body = match common.format {
                Format::Csv => table.to_csv(),
                Format::Json => table.to_json(),
            };
            Ok((body, code))
        }
    });
    let (body, code) = match outcome {
        Ok(x) => x,
        Err(f) => return report(f),
    };
    let written = match &common.out {
        Some(path) => std::fs::write(path, body.as_bytes()),
        None => std::io::stdout().lock().write_all(body.as_bytes()),
    };
    match written {
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => code,
        Err(e) => report(Failure::Io(e.to_string())),
        Ok(()) => code,
    }
}

fn report(f: Failure) -> i32 {
    match f {
        Failure::Config(m) => {
            eprintln!("error: {m}");
            EXIT_CONFIG
        }
        Failure::Io(m) => {
            eprintln!("error: {m}");
            EXIT_IO
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Analytic(_) => "analytic",
        Command::Simulate(_) => "simulate",
        Command::Compare { .. } => "compare",
        Command::SceneDump(_) => "scene-dump",
    }
}

fn preamble(cfg: &RunConfig, cmd: &Command) -> Vec<String> {
    let mut lines = vec![
        format!("rishap {}", env!("CARGO_PKG_VERSION")),
        format!("command = {}", command_name(cmd)),
    ];
    lines.extend(cfg.to_text().lines().map(str::to_string));
    lines
}

fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

/// One parameter set evaluated at one or more thresholds.
struct Unit {
    params: SystemParams,
    thresholds_db: Vec<f64>,
}

fn units(cfg: &RunConfig) -> Vec<Unit> {
    let bases = cfg.series_points().expect("validated");
    let sw = &cfg.sweep;
    let mut out = Vec::new();
    for base in bases {
        if sw.variable == SweepVar::SThDb {
            out.push(Unit {
                params: base,
                thresholds_db: sw.values.clone(),
            });
        } else {
            for &v in &sw.values {
                let mut p = base.clone();
                sw.variable.apply(&mut p, v).expect("validated");
                out.push(Unit {
                    params: p,
                    thresholds_db: sw.thresholds_db.clone(),
                });
            }
        }
    }
    out
}

fn sanitize(msg: &str) -> String {
    msg.replace([',', '\n', '|'], ";")
}

fn analytic_cols(model: &Result<AnalyticModel, crate::Error>, t_db: f64) -> (Vec<Option<f64>>, Vec<String>) {
    let mut flags = Vec::new();
    let m = match model {
        Ok(m) => m,
        Err(e) => {
            flags.push(format!("error:{}", sanitize(&e.to_string())));
            return (vec![None; 8], flags);
        }
    };
    let cov = m.coverage(db_to_linear(t_db)).map_err(|e| flags.push(format!("error:{}", sanitize(&e.to_string())))).ok();
    let (cap, cf) = match m.capacity() {
        Ok(c) => {
            if c.routes_agree() == Some(false) {
                flags.push("closed_form_mismatch".into());
            }
            (Some(c.value), c.closed_form)
        }
        Err(e) => {
            flags.push(format!("error:{}", sanitize(&e.to_string())));
            (None, None)
        }
    };
    (
        vec![
            cov,
            cap,
            cf,
            Some(m.fit.alpha_n),
            Some(m.fit.alpha_d),
            Some(m.fit.beta_n / m.fit.beta_d),
            Some(m.sir.scale),
            Some(m.ris_exists),
        ],
        flags,
    )
}

const PARAM_COLS: [&str; 9] = [
    "series", "s_th_db", "lambda_hap", "lambda_ris", "lambda_b", "h_ris", "num_re", "k_factor", "mean_len_wid",
];
const ANALYTIC_COLS: [&str; 8] = [
    "coverage", "capacity", "capacity_closed_form", "alpha_n", "alpha_d", "beta_n_over_beta_d", "scale", "ris_exists",
];
const SIM_COLS: [&str; 12] = [
    "trials", "coverage", "coverage_se", "capacity", "capacity_se", "isolated_frac", "interference_free_frac",
    "mean_an", "var_an", "mean_ad", "var_ad", "mean_visible_haps",
];
const COMPARE_COLS: [&str; 10] = [
    "coverage_analytic", "coverage_mc", "coverage_mc_se", "abs_dev", "ks", "capacity_analytic", "capacity_mc",
    "capacity_mc_se", "interference_free_frac", "pass",
];

fn sweep_table(cfg: &RunConfig, kind: Paths) -> Table {
    let mut header: Vec<String> = PARAM_COLS.iter().map(|s| s.to_string()).collect();
    header.extend(
        match kind {
            Paths::Analytic => &ANALYTIC_COLS[..],
            Paths::MonteCarlo => &SIM_COLS[..],
            Paths::Both => &COMPARE_COLS[..],
        }
        .iter()
        .map(|s| s.to_string()),
    );
    header.push("flags".into());
    let mut table = Table::new(header);

    let convention = if cfg.condition_ris_exists {
        RisConvention::Conditioned
    } else {
        RisConvention::Unconditioned
    };
    let options = SimOptions {
        mode: cfg.sweep.mode,
        nearest_hap_interferes: cfg.nearest_hap_interferes,
    };
    let units = units(cfg);
    let per_series = if cfg.sweep.variable == SweepVar::SThDb { 1 } else { cfg.sweep.values.len() };

    // analytic units are cheap and independent; MC units parallelize internally
    let models: Vec<_> = units
        .par_iter()
        .map(|u| {
            (kind != Paths::MonteCarlo)
                .then(|| AnalyticModel::new(&u.params).map(|m| m.with_convention(convention)))
        })
        .collect();

    for (ui, unit) in units.iter().enumerate() {
        let series = (ui / per_series) as f64;
        let sim = (kind != Paths::Analytic).then(|| {
            let thresholds: Vec<f64> = unit.thresholds_db.iter().map(|&d| db_to_linear(d)).collect();
            run_trials(&unit.params, &options, cfg.sweep.trials, cfg.sweep.seed)
                .map(|outs| (SimStats::from_outcomes(&outs, &unit.params, &thresholds), outs))
        });
        let ks = match (&models[ui], &sim) {
            (Some(Ok(m)), Some(Ok((_, outs)))) => {
                let samples: Vec<f64> = match convention {
                    RisConvention::Conditioned => outs.iter().filter_map(|o| o.sir).collect(),
                    RisConvention::Unconditioned => outs.iter().map(|o| o.sir.unwrap_or(0.0)).collect(),
                };
                Some(ks_statistic(&samples, |x| 1.0 - m.coverage(x).unwrap_or(f64::NAN)))
            }
            _ => None,
        };

        for (ti, &t_db) in unit.thresholds_db.iter().enumerate() {
            let p = &unit.params;
            let mut row: Vec<Option<f64>> = vec![Some(series), Some(t_db)];
            row.extend(SweepVar::ALL[1..].iter().map(|v| Some(v.read(p))));
            let mut flags = Vec::new();
            let analytic = models[ui].as_ref().map(|m| analytic_cols(m, t_db));
            let stats = match &sim {
                Some(Ok((s, _))) => Some(s),
                Some(Err(e)) => {
                    flags.push(format!("error:{}", sanitize(&e.to_string())));
                    None
                }
                None => None,
            };
            match kind {
                Paths::Analytic => {
                    let (cols, f) = analytic.expect("analytic path");
                    row.extend(cols);
                    flags.extend(f);
                }
                Paths::MonteCarlo => {
                    row.extend(sim_cols(stats, ti));
                }
                Paths::Both => {
                    let (cols, f) = analytic.expect("analytic path");
                    flags.extend(f);
                    let pc_a = cols[0];
                    let cap_a = cols[1];
                    let (pc_m, pc_se, cap_m, cap_se, inf) = match stats {
                        Some(s) => (
                            Some(s.coverage[ti].probability),
                            Some(s.coverage[ti].std_error),
                            Some(s.capacity),
                            Some(s.capacity_se),
                            Some(s.interference_free_fraction()),
                        ),
                        None => (None, None, None, None, None),
                    };
                    let dev = pc_a.zip(pc_m).map(|(a, m)| (a - m).abs());
                    let pass = match (dev, ks) {
                        (Some(d), Some(k)) => d < COVERAGE_TOL && k < KS_TOL,
                        _ => false,
                    };
                    if !pass {
                        table.any_failed = true;
                    }
                    row.extend([pc_a, pc_m, pc_se, dev, ks, cap_a, cap_m, cap_se, inf, Some(f64::from(u8::from(pass)))]);
                }
            }
            if flags.iter().any(|f| f.starts_with("error:")) {
                table.numerical_failure = true;
            }
            table.push(row, flags.join("|"));
        }
        if let Some(Ok((s, _))) = &sim {
            table.histograms.push(json!({
                "series": series,
                "params": unit.params,
                "stats": s,
            }));
        }
        if let Some(Ok(m)) = &models[ui] {
            table.models.push(json!({ "series": series, "params": unit.params, "model": m }));
        }
    }
    table
}

fn sim_cols(stats: Option<&SimStats>, ti: usize) -> Vec<Option<f64>> {
    match stats {
        None => vec![None; SIM_COLS.len()],
        Some(s) => vec![
            Some(s.trials as f64),
            Some(s.coverage[ti].probability),
            Some(s.coverage[ti].std_error),
            Some(s.capacity),
            Some(s.capacity_se),
            Some(s.isolated_fraction()),
            Some(s.interference_free_fraction()),
            Some(s.a_n.mean),
            Some(s.a_n.variance),
            Some(s.a_d.mean),
            Some(s.a_d.variance),
            Some(s.visible_haps.mean),
        ],
    }
}

fn scene_dump(cfg: &RunConfig) -> Result<String, Failure> {
    let mut rng = trial_rng(cfg.sweep.seed, 0);
    let scene = NetworkRealization::sample(&cfg.params, cfg.sweep.mode, &mut rng)
        .map_err(|e| Failure::Config(e.to_string()))?;
    let body = json!({
        "version": env!("CARGO_PKG_VERSION"),
        "seed": cfg.sweep.seed,
        "params": cfg.params,
        "n_visible_haps": scene.n_visible_haps(),
        "scene": scene,
    });
    Ok(serde_json::to_string_pretty(&body).expect("serializable") + "\n")
}

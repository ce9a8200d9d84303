//! Command-line front end.
//!
//! Every subcommand prints a small report (`key: value` lines, or a JSON
//! object with `--json`). `sweep` writes a CSV or JSON table instead.
//! Exit codes: 0 success, 2 argument error, 3 I/O error.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::{json, Map, Value};

use crate::analysis::{
    evaluate_point, find_threshold, horodecki_bound, optimize_chsh_with, paper_state, sweep, GridRange,
    OptimizerConfig, SweepRecord, SweepSpec,
};
use crate::bellstates::{
    bell_decompose, bell_state, boost_one_sided, boost_two_sided, concurrence, massless_boost, BellIndex,
};
use crate::correlators::{correlation_tensor, ChshSetting, MeasurementDirection};
use crate::littlegroup::{rotation_angle_about_y, wigner_angle, wigner_matrix_path};
use crate::minkowski::{beta_of, boost_x, rapidity_of, FourVector};

/// CSV header for sweep output.
pub const SWEEP_HEADER: &str = "beta,eta,omega,wigner_angle,e_ab,e_abp,e_apb,e_apbp,chsh_matrix,chsh_closed";

#[derive(Debug, Parser)]
#[command(name = "relbell", version, about = "Wigner rotations, boosted Bell states and relativistic CHSH values")]
pub struct Cli {
    /// Print reports as JSON objects instead of `key: value` lines.
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Wigner angle from the closed form and from the matrix product.
    WignerAngle {
        #[arg(long, allow_hyphen_values = true)]
        eta: f64,
        #[arg(long, allow_hyphen_values = true)]
        omega: f64,
    },
    /// Boost a Bell state and decompose the result in the Bell basis.
    Transform {
        /// Bell state index: 00, 01, 10 or 11.
        #[arg(long, default_value = "00")]
        state: String,
        #[arg(long, allow_hyphen_values = true)]
        eta: f64,
        #[command(flatten)]
        speed: Speed,
        #[arg(long, value_enum, default_value_t = Mode::OneSided)]
        mode: Mode,
    },
    /// CHSH value for the one-sided boosted Ψ₀₀.
    Chsh {
        #[arg(long, allow_hyphen_values = true)]
        eta: f64,
        #[command(flatten)]
        speed: Speed,
        #[command(flatten)]
        vectors: VectorOverrides,
    },
    /// Tabulate CHSH values over a (beta, eta) grid.
    Sweep(SweepArgs),
    /// Frame speed at which the CHSH value falls to 2.
    Threshold {
        #[arg(long, allow_hyphen_values = true)]
        eta: f64,
        #[command(flatten)]
        vectors: VectorOverrides,
    },
    /// Maximise CHSH over all measurement directions.
    Optimize {
        #[arg(long, allow_hyphen_values = true)]
        eta: f64,
        #[command(flatten)]
        speed: Speed,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 16)]
        restarts: usize,
        #[arg(long, default_value_t = 200)]
        max_iterations: usize,
    },
    /// Apply helicity phases to a two-photon Bell state.
    Massless {
        #[arg(long, allow_hyphen_values = true)]
        theta_a: f64,
        #[arg(long, allow_hyphen_values = true)]
        theta_b: f64,
        #[arg(long, default_value = "00")]
        state: String,
    },
}

/// Exactly one of `--beta` / `--omega`.
#[derive(Debug, Clone, Copy, Args)]
#[group(required = true, multiple = false)]
pub struct Speed {
    /// Frame speed as a fraction of c.
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<f64>,
    /// Frame rapidity.
    #[arg(long, allow_hyphen_values = true)]
    pub omega: Option<f64>,
}

impl Speed {
    /// `(beta, omega)` with the missing one derived via `β = tanh ω`.
    fn resolve(&self) -> Result<(f64, f64), CliError> {
        match (self.beta, self.omega) {
            (Some(b), None) => Ok((b, rapidity_of(b)?)),
            (None, Some(w)) if w.is_finite() => Ok((beta_of(w), w)),
            (None, Some(w)) => Err(CliError::Argument(format!("omega must be finite, got {w}"))),
            _ => Err(CliError::Argument("give exactly one of --beta or --omega".into())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    OneSided,
    TwoSided,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

/// Optional replacements for the standard measurement directions, each as
/// `x,y,z` (normalised on input).
#[derive(Debug, Clone, Default, Args)]
pub struct VectorOverrides {
    #[arg(long, value_parser = parse_direction, allow_hyphen_values = true)]
    pub a: Option<MeasurementDirection>,
    #[arg(long, value_parser = parse_direction, allow_hyphen_values = true)]
    pub a_prime: Option<MeasurementDirection>,
    #[arg(long, value_parser = parse_direction, allow_hyphen_values = true)]
    pub b: Option<MeasurementDirection>,
    #[arg(long, value_parser = parse_direction, allow_hyphen_values = true)]
    pub b_prime: Option<MeasurementDirection>,
}

impl VectorOverrides {
    fn apply(&self, base: ChshSetting) -> ChshSetting {
        ChshSetting {
            a: self.a.unwrap_or(base.a),
            a_prime: self.a_prime.unwrap_or(base.a_prime),
            b: self.b.unwrap_or(base.b),
            b_prime: self.b_prime.unwrap_or(base.b_prime),
        }
    }
}

fn parse_direction(s: &str) -> Result<MeasurementDirection, String> {
    let parts: Vec<f64> = s
        .split(',')
        .map(|p| p.trim().parse::<f64>().map_err(|e| format!("bad component {p:?}: {e}")))
        .collect::<Result<_, _>>()?;
    match parts.as_slice() {
        [x, y, z] => MeasurementDirection::normalized(*x, *y, *z).map_err(|e| e.to_string()),
        _ => Err(format!("expected three comma-separated components, got {s:?}")),
    }
}

#[derive(Debug, Clone, Default, Args)]
pub struct SweepArgs {
    /// Flat TOML file with sweep keys; flags given on the command line win.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub beta_lo: Option<f64>,
    #[arg(long)]
    pub beta_hi: Option<f64>,
    #[arg(long)]
    pub beta_steps: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    pub eta_lo: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub eta_hi: Option<f64>,
    #[arg(long)]
    pub eta_steps: Option<usize>,
    #[command(flatten)]
    pub vectors: VectorOverrides,
    /// Output file; stdout when omitted.
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

/// Sweep config file contents. Every key is optional.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub beta_lo: Option<f64>,
    pub beta_hi: Option<f64>,
    pub beta_steps: Option<usize>,
    pub eta_lo: Option<f64>,
    pub eta_hi: Option<f64>,
    pub eta_steps: Option<usize>,
    pub a: Option<MeasurementDirection>,
    pub a_prime: Option<MeasurementDirection>,
    pub b: Option<MeasurementDirection>,
    pub b_prime: Option<MeasurementDirection>,
    pub output: Option<PathBuf>,
    pub format: Option<Format>,
}

impl SweepConfig {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::Argument(format!("invalid sweep config: {e}")))
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Argument(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Argument(_) => 2,
            CliError::Io(_) => 3,
        }
    }
}

impl From<crate::Error> for CliError {
    fn from(e: crate::Error) -> Self {
        CliError::Argument(e.to_string())
    }
}

/// Ordered key/value report.
#[derive(Debug, Default)]
struct Report(Vec<(&'static str, Value)>);

impl Report {
    fn put(&mut self, key: &'static str, value: impl Into<Value>) -> &mut Self {
        self.0.push((key, value.into()));
        self
    }

    fn render(&self, as_json: bool) -> String {
        if as_json {
            let map: Map<String, Value> = self.0.iter().map(|(k, v)| (k.to_string(), v.clone())).collect();
            let mut s = serde_json::to_string_pretty(&Value::Object(map)).expect("report serializes");
            s.push('\n');
            return s;
        }
        let mut out = String::new();
        for (k, v) in &self.0 {
            match v {
                Value::String(s) => writeln!(out, "{k}: {s}"),
                other => writeln!(out, "{k}: {other}"),
            }
            .expect("write to string");
        }
        out
    }
}

fn four(v: &FourVector) -> Value {
    json!(v.as_array())
}

fn direction(d: &MeasurementDirection) -> Value {
    json!(<[f64; 3]>::from(*d))
}

/// Parses the process arguments, runs the command and returns the exit code.
pub fn run() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match execute(&cli, &mut out) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let _ = out.flush();
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

/// Runs a parsed command, writing reports to `out`.
pub fn execute(cli: &Cli, out: &mut dyn Write) -> Result<(), CliError> {
    let text = match &cli.command {
        Command::WignerAngle { eta, omega } => cmd_wigner_angle(*eta, *omega)?.render(cli.json),
        Command::Transform { state, eta, speed, mode } => cmd_transform(state, *eta, speed, *mode)?.render(cli.json),
        Command::Chsh { eta, speed, vectors } => cmd_chsh(*eta, speed, vectors)?.render(cli.json),
        Command::Sweep(args) => return cmd_sweep(args, out),
        Command::Threshold { eta, vectors } => cmd_threshold(*eta, vectors)?.render(cli.json),
        Command::Optimize { eta, speed, seed, restarts, max_iterations } => {
            let config = OptimizerConfig {
                restarts: *restarts,
                max_iterations: *max_iterations,
                seed: *seed,
                ..OptimizerConfig::default()
            };
            cmd_optimize(*eta, speed, &config)?.render(cli.json)
        }
        Command::Massless { theta_a, theta_b, state } => cmd_massless(*theta_a, *theta_b, state)?.render(cli.json),
    };
    out.write_all(text.as_bytes()).map_err(|e| CliError::Io(format!("writing output: {e}")))
}

fn cmd_wigner_angle(eta: f64, omega: f64) -> Result<Report, CliError> {
    let closed = wigner_angle(eta, omega)?.0;
    let p = FourVector::along_z(eta, 1.0)?;
    let w = wigner_matrix_path(&boost_x(omega)?, &p, 1.0)?;
    let matrix = rotation_angle_about_y(&w);
    let mut r = Report::default();
    r.put("eta", eta)
        .put("omega", omega)
        .put("wigner_angle_closed", closed)
        .put("wigner_angle_matrix", matrix)
        .put("abs_diff", (closed - matrix).abs());
    Ok(r)
}

fn cmd_transform(state: &str, eta: f64, speed: &Speed, mode: Mode) -> Result<Report, CliError> {
    let idx: BellIndex = state.parse()?;
    let (beta, omega) = speed.resolve()?;
    let input = bell_state(idx, FourVector::along_z(eta, 1.0)?)?;
    let output = match mode {
        Mode::OneSided => boost_one_sided(&input, eta, omega)?,
        Mode::TwoSided => boost_two_sided(&input, eta, omega)?,
    };
    let c = bell_decompose(&output);
    let coeffs: Vec<Value> = c.as_array().iter().map(|z| json!([z.re, z.im])).collect();
    let mut r = Report::default();
    r.put("state", idx.to_string())
        .put("mode", if mode == Mode::OneSided { "one-sided" } else { "two-sided" })
        .put("eta", eta)
        .put("beta", beta)
        .put("omega", omega)
        .put("wigner_angle", wigner_angle(eta, omega)?.0)
        .put("bell_coefficients", coeffs)
        .put("concurrence", concurrence(&output))
        .put("scale", output.scale)
        .put("momentum_a", four(&output.momentum_a))
        .put("momentum_b", four(&output.momentum_b))
        .put("transformed_state", serde_json::to_value(output).expect("state serializes"));
    Ok(r)
}

fn cmd_chsh(eta: f64, speed: &Speed, vectors: &VectorOverrides) -> Result<Report, CliError> {
    let (beta, _) = speed.resolve()?;
    let setting = vectors.apply(ChshSetting::standard());
    let row = evaluate_point(beta, eta, &setting)?;
    let verdict =
        if row.chsh_matrix <= 2.0 { "satisfies Bell inequality (<= 2)" } else { "violates Bell inequality (> 2)" };
    let mut r = Report::default();
    r.put("beta", row.beta)
        .put("eta", row.eta)
        .put("omega", row.omega)
        .put("wigner_angle", row.wigner_angle)
        .put("e_ab", row.e_ab)
        .put("e_abp", row.e_abp)
        .put("e_apb", row.e_apb)
        .put("e_apbp", row.e_apbp)
        .put("chsh_matrix", row.chsh_matrix)
        .put("chsh_closed", row.chsh_closed)
        .put("abs_diff", (row.chsh_matrix - row.chsh_closed).abs())
        .put("verdict", verdict);
    Ok(r)
}

fn cmd_threshold(eta: f64, vectors: &VectorOverrides) -> Result<Report, CliError> {
    let setting = vectors.apply(ChshSetting::standard());
    let mut r = Report::default();
    r.put("eta", eta);
    match find_threshold(eta, &setting)? {
        Some(beta) => {
            let row = evaluate_point(beta, eta, &setting)?;
            r.put("beta_star", beta)
                .put("omega_star", row.omega)
                .put("residual_closed", row.chsh_closed - 2.0)
                .put("residual_matrix", row.chsh_matrix - 2.0);
        }
        None => {
            r.put("beta_star", Value::Null);
        }
    }
    Ok(r)
}

fn cmd_optimize(eta: f64, speed: &Speed, config: &OptimizerConfig) -> Result<Report, CliError> {
    let (beta, omega) = speed.resolve()?;
    let state = paper_state(eta, omega)?;
    let result = optimize_chsh_with(&state, beta, config)?;
    let bound = horodecki_bound(&correlation_tensor(&state));
    let s = &result.best_setting;
    let mut r = Report::default();
    r.put("beta", beta)
        .put("eta", eta)
        .put("seed", config.seed)
        .put("restarts", config.restarts as u64)
        .put("best_value", result.best_value)
        .put("horodecki_bound", bound)
        .put("gap", bound - result.best_value)
        .put("iterations", result.iterations as u64)
        .put("converged", result.converged)
        .put("a", direction(&s.a))
        .put("a_prime", direction(&s.a_prime))
        .put("b", direction(&s.b))
        .put("b_prime", direction(&s.b_prime));
    Ok(r)
}

fn cmd_massless(theta_a: f64, theta_b: f64, state: &str) -> Result<Report, CliError> {
    if !(theta_a.is_finite() && theta_b.is_finite()) {
        return Err(CliError::Argument("phase angles must be finite".into()));
    }
    let idx: BellIndex = state.parse()?;
    // Helicity states carry no momentum dynamics here; a unit energy label
    // along z stands in for the photon momenta.
    let before = bell_state(idx, FourVector::new(0.0, 0.0, 1.0, 1.0))?;
    let after = massless_boost(&before, theta_a, theta_b);
    let mags =
        |s: &crate::bellstates::TwoParticleState| -> Vec<f64> { s.amplitudes().iter().map(|z| z.norm()).collect() };
    let (c0, c1) = (concurrence(&before), concurrence(&after));
    let mut r = Report::default();
    r.put("state", idx.to_string())
        .put("theta_a", theta_a)
        .put("theta_b", theta_b)
        .put("magnitudes_before", mags(&before))
        .put("magnitudes_after", mags(&after))
        .put("concurrence_before", c0)
        .put("concurrence_after", c1)
        .put("concurrence_delta", c1 - c0);
    Ok(r)
}

/// Formats a float with 17 significant digits.
pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

/// Renders sweep rows as CSV: header, LF line endings, no quoting.
pub fn sweep_csv(rows: &[SweepRecord]) -> String {
    let mut s = String::with_capacity(64 + rows.len() * 240);
    s.push_str(SWEEP_HEADER);
    s.push('\n');
    for r in rows {
        let fields =
            [r.beta, r.eta, r.omega, r.wigner_angle, r.e_ab, r.e_abp, r.e_apb, r.e_apbp, r.chsh_matrix, r.chsh_closed];
        let line: Vec<String> = fields.iter().map(|v| format_float(*v)).collect();
        s.push_str(&line.join(","));
        s.push('\n');
    }
    s
}

/// Renders sweep rows as a JSON array of objects keyed like the CSV header.
pub fn sweep_json(rows: &[SweepRecord]) -> String {
    let mut s = serde_json::to_string_pretty(rows).expect("rows serialize");
    s.push('\n');
    s
}

/// Merges config file values with command-line flags (flags win).
pub fn resolve_sweep(args: &SweepArgs) -> Result<(SweepSpec, Option<PathBuf>, Format), CliError> {
    let cfg = match &args.config {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| CliError::Io(format!("reading config {}: {e}", path.display())))?;
            SweepConfig::parse(&text)?
        }
        None => SweepConfig::default(),
    };
    let pick = |flag: Option<f64>, file: Option<f64>, default: f64| flag.or(file).unwrap_or(default);
    let beta = GridRange::new(
        pick(args.beta_lo, cfg.beta_lo, 0.0),
        pick(args.beta_hi, cfg.beta_hi, 0.999),
        args.beta_steps.or(cfg.beta_steps).unwrap_or(50),
    );
    let eta = GridRange::new(
        pick(args.eta_lo, cfg.eta_lo, 0.0),
        pick(args.eta_hi, cfg.eta_hi, 3.0),
        args.eta_steps.or(cfg.eta_steps).unwrap_or(50),
    );
    let from_file = VectorOverrides { a: cfg.a, a_prime: cfg.a_prime, b: cfg.b, b_prime: cfg.b_prime };
    let setting = args.vectors.apply(from_file.apply(ChshSetting::standard()));
    let spec = SweepSpec { beta, eta, setting };
    spec.validate()?;
    let output = args.output.clone().or(cfg.output);
    let format = args.format.or(cfg.format).unwrap_or_else(|| match &output {
        Some(p) if p.extension().is_some_and(|e| e == "json") => Format::Json,
        _ => Format::Csv,
    });
    Ok((spec, output, format))
}

fn cmd_sweep(args: &SweepArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let (spec, output, format) = resolve_sweep(args)?;
    let rows = sweep(&spec)?;
    let body = match format {
        Format::Csv => sweep_csv(&rows),
        Format::Json => sweep_json(&rows),
    };
    match output {
        Some(path) => write_file(&path, &body),
        None => out.write_all(body.as_bytes()).map_err(|e| CliError::Io(format!("writing output: {e}"))),
    }
}

fn write_file(path: &Path, body: &str) -> Result<(), CliError> {
    fs::write(path, body).map_err(|e| CliError::Io(format!("writing {}: {e}", path.display())))
}

//! Command-line front end.
//!
//! Argument parsing (clap) produces a [`CliConfig`], which is validated once
//! and then dispatched by [`run`]. [`main_with_args`] wraps the whole thing and
//! maps outcomes to exit codes: 0 success, 1 usage/validation/I/O error,
//! 2 verification failure.

use std::f64::consts::FRAC_PI_4;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::analysis::{
    critical_eta_standard, delta_modified_biased, delta_standard_biased, max_alpha_modified,
    scan_region, ScanCell, ScanSummary, ViolationClass, STANDARD_BOUND,
};
use crate::lhv::lhv_bound_bruteforce_with;
use crate::povm::PovmParams;
use crate::quantum::{
    chsh_value, closed_form_biased, closed_form_unbiased, pure_state, werner_state, DensityMatrix,
    MeasurementSettings,
};
use crate::verify;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_VERIFY_FAILED: i32 = 2;

/// Column order of `scan` CSV output.
pub const SCAN_CSV_HEADER: &str = "alpha,eta,theta,quantum_value,standard_bound,modified_bound,\
delta_standard,delta_modified,feasible,class";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Invalid(#[from] crate::Error),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

#[derive(Debug, Parser)]
#[command(
    name = "unsharp-chsh",
    version,
    about = "CHSH values, local bounds and violation regions for unsharp spin-POVMs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: CommonArgs,
}

#[derive(Debug, Subcommand, Clone, Copy, PartialEq, Eq)]
enum Command {
    /// Quantum CHSH value from the closed form and from the density matrix.
    Value,
    /// Brute-force and closed-form local bounds with maximizing strategies.
    Bound,
    /// Margins over the standard and modified local bounds.
    Delta,
    /// (alpha, eta) grid classification at fixed theta.
    Scan,
    /// Critical sharpness for a standard violation and the largest bias
    /// admitting a modified violation.
    Thresholds,
    /// Run the built-in invariant suite.
    Verify,
}

#[derive(Debug, Args)]
struct CommonArgs {
    /// State angle in radians for cos(t)|00> + sin(t)|11> [default: pi/4].
    #[arg(long, global = true, allow_negative_numbers = true)]
    theta: Option<f64>,
    /// State angle in degrees.
    #[arg(long, global = true, allow_negative_numbers = true)]
    theta_deg: Option<f64>,
    /// Bias of both sides' POVMs (Alice's when --alpha-bob is given).
    #[arg(
        long,
        global = true,
        default_value_t = 0.0,
        allow_negative_numbers = true
    )]
    alpha: f64,
    /// Sharpness of both sides' POVMs (Alice's when --eta-bob is given).
    #[arg(long, global = true, default_value_t = 1.0)]
    eta: f64,
    /// Bob's bias, if different from Alice's.
    #[arg(long, global = true, allow_negative_numbers = true)]
    alpha_bob: Option<f64>,
    /// Bob's sharpness, if different from Alice's.
    #[arg(long, global = true)]
    eta_bob: Option<f64>,
    /// Grid points per axis for `scan`.
    #[arg(long, global = true, default_value_t = 101)]
    steps: usize,
    /// Use the Werner state with this Bell-state weight.
    #[arg(long, global = true)]
    werner: Option<f64>,
    /// Read the state from a file of 32 reals (16 row-major re/im pairs).
    #[arg(long, global = true)]
    state_file: Option<PathBuf>,
    /// Write the report here instead of standard output.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed for `verify`.
    #[arg(long, global = true)]
    seed: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubcommandKind {
    Value,
    Bound,
    Delta,
    Scan,
    Thresholds,
    Verify,
}

impl From<Command> for SubcommandKind {
    fn from(c: Command) -> Self {
        match c {
            Command::Value => Self::Value,
            Command::Bound => Self::Bound,
            Command::Delta => Self::Delta,
            Command::Scan => Self::Scan,
            Command::Thresholds => Self::Thresholds,
            Command::Verify => Self::Verify,
        }
    }
}

/// Where the bipartite state comes from.
#[derive(Debug, Clone, PartialEq)]
pub enum StateSpec {
    Pure(f64),
    Werner(f64),
    File(PathBuf),
}

/// Fully validated invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct CliConfig {
    pub subcommand: SubcommandKind,
    pub theta: f64,
    pub alice: PovmParams,
    pub bob: PovmParams,
    pub steps: usize,
    pub state: StateSpec,
    pub output: Option<PathBuf>,
    pub format: Format,
    pub seed: u64,
}

impl CliConfig {
    /// Parses and validates command-line arguments (the first item is the
    /// program name). Help and version requests surface as
    /// `Err(clap::Error)` with the corresponding kind.
    pub fn try_from_args<I, T>(args: I) -> Result<Result<Self, CliError>, clap::Error>
    where
        I: IntoIterator<Item = T>,
        T: Into<OsString> + Clone,
    {
        let cli = Cli::try_parse_from(args)?;
        Ok(Self::from_cli(cli))
    }

    fn from_cli(cli: Cli) -> Result<Self, CliError> {
        let o = cli.opts;
        let subcommand = SubcommandKind::from(cli.command);
        let theta = match (o.theta, o.theta_deg) {
            (Some(_), Some(_)) => {
                return Err(CliError::Usage(
                    "--theta and --theta-deg are mutually exclusive".into(),
                ))
            }
            (Some(t), None) => t,
            (None, Some(d)) => d.to_radians(),
            (None, None) => FRAC_PI_4,
        };
        if !theta.is_finite() {
            return Err(CliError::Usage(format!(
                "theta must be finite, got {theta}"
            )));
        }
        let state = match (o.werner, o.state_file) {
            (Some(_), Some(_)) => {
                return Err(CliError::Usage(
                    "--werner and --state-file are mutually exclusive".into(),
                ))
            }
            (Some(p), None) => StateSpec::Werner(p),
            (None, Some(path)) => StateSpec::File(path),
            (None, None) => StateSpec::Pure(theta),
        };
        if !matches!(state, StateSpec::Pure(_)) {
            if !matches!(subcommand, SubcommandKind::Value | SubcommandKind::Delta) {
                return Err(CliError::Usage(
                    "--werner/--state-file only apply to `value` and `delta`".into(),
                ));
            }
            if o.theta.is_some() || o.theta_deg.is_some() {
                return Err(CliError::Usage(
                    "--theta conflicts with --werner/--state-file".into(),
                ));
            }
        }
        let alice = PovmParams::new(o.alpha, o.eta)?;
        let bob = PovmParams::new(o.alpha_bob.unwrap_or(o.alpha), o.eta_bob.unwrap_or(o.eta))?;
        if subcommand == SubcommandKind::Scan && o.steps < 2 {
            return Err(CliError::Usage(format!(
                "--steps must be at least 2, got {}",
                o.steps
            )));
        }
        Ok(Self {
            subcommand,
            theta,
            alice,
            bob,
            steps: o.steps,
            state,
            output: o.output,
            format: o.format,
            seed: o.seed.unwrap_or(verify::DEFAULT_SEED),
        })
    }

    fn symmetric(&self) -> bool {
        self.alice == self.bob
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Success,
    VerificationFailed,
}

impl Status {
    pub fn code(self) -> i32 {
        match self {
            Status::Success => EXIT_OK,
            Status::VerificationFailed => EXIT_VERIFY_FAILED,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub status: Status,
    pub body: String,
}

impl Report {
    fn ok(body: String) -> Self {
        Self {
            status: Status::Success,
            body,
        }
    }
}

/// Formats like C's `%.12g`: 12 significant digits, trailing zeros trimmed,
/// scientific notation outside `1e-5 ≤ |x| < 1e12`.
pub fn format_number(x: f64) -> String {
    if x.is_nan() {
        return "NaN".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{x:.11e}");
    let (mantissa, exp) = sci
        .split_once('e')
        .expect("scientific format has an exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    } else {
        format!("{}e{}", trim_zeros(mantissa), exp)
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn fmt_params(p: PovmParams) -> String {
    format!(
        "(alpha={}, eta={})",
        format_number(p.alpha()),
        format_number(p.eta())
    )
}

fn load_state_file(path: &Path) -> Result<DensityMatrix, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let values = text
        .split_whitespace()
        .map(|tok| {
            tok.parse::<f64>().map_err(|_| {
                CliError::Usage(format!("{}: `{tok}` is not a number", path.display()))
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(DensityMatrix::from_row_major_pairs(&values)?)
}

fn resolve_state(spec: &StateSpec) -> Result<DensityMatrix, CliError> {
    match spec {
        StateSpec::Pure(theta) => Ok(pure_state(*theta)),
        StateSpec::Werner(p) => Ok(werner_state(*p)?),
        StateSpec::File(path) => load_state_file(path),
    }
}

fn describe_state(spec: &StateSpec) -> String {
    match spec {
        StateSpec::Pure(t) => format!("pure(theta={})", format_number(*t)),
        StateSpec::Werner(p) => format!("werner(p={})", format_number(*p)),
        StateSpec::File(path) => format!("file({})", path.display()),
    }
}

/// Closed-form CHSH value where one is known for the configured state and
/// parameters.
fn closed_form_for(config: &CliConfig) -> Result<Option<f64>, CliError> {
    if !config.symmetric() {
        return Ok(None);
    }
    let p = config.alice;
    Ok(match config.state {
        StateSpec::Pure(theta) => Some(closed_form_biased(theta, p.alpha(), p.eta())?),
        StateSpec::Werner(w) if p.alpha() == 0.0 => {
            Some(w * closed_form_unbiased(FRAC_PI_4, p.eta())?)
        }
        _ => None,
    })
}

/// Key/value rows rendered as aligned text or two-column CSV.
struct Table {
    rows: Vec<(String, String)>,
}

impl Table {
    fn new() -> Self {
        Self { rows: Vec::new() }
    }

    fn row(&mut self, key: &str, value: impl Into<String>) -> &mut Self {
        self.rows.push((key.to_string(), value.into()));
        self
    }

    fn render(&self, format: Format) -> String {
        let mut out = String::new();
        match format {
            Format::Csv => {
                out.push_str("quantity,value\n");
                for (k, v) in &self.rows {
                    let _ = writeln!(out, "{k},{v}");
                }
            }
            Format::Text => {
                let width = self.rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
                for (k, v) in &self.rows {
                    let _ = writeln!(out, "{k:<width$}  {v}");
                }
            }
        }
        out
    }
}

fn run_value(config: &CliConfig) -> Result<Report, CliError> {
    let rho = resolve_state(&config.state)?;
    let matrix = chsh_value(
        &rho,
        &MeasurementSettings::canonical(),
        config.alice,
        config.bob,
    )?;
    let closed = closed_form_for(config)?;
    let mut t = Table::new();
    t.row("state", describe_state(&config.state))
        .row("alice", fmt_params(config.alice))
        .row("bob", fmt_params(config.bob))
        .row("matrix_path", format_number(matrix));
    match closed {
        Some(c) => {
            t.row("closed_form", format_number(c))
                .row("difference", format_number(matrix - c));
        }
        None => {
            t.row("closed_form", "n/a");
        }
    }
    Ok(Report::ok(t.render(config.format)))
}

fn run_bound(config: &CliConfig) -> Result<Report, CliError> {
    let r = lhv_bound_bruteforce_with(config.alice, config.bob);
    let mut t = Table::new();
    t.row("alice", fmt_params(config.alice))
        .row("bob", fmt_params(config.bob))
        .row("bruteforce_bound", format_number(r.bound));
    match r.closed_form {
        Some(c) => {
            t.row("closed_form", format_number(c))
                .row("closed_form_expr", "2(|alpha|+eta)^2")
                .row("difference", format_number(r.bound - c));
        }
        None => {
            t.row("closed_form", "n/a (unequal parameters)");
        }
    }
    let strategies: Vec<String> = r
        .maximizing_strategies
        .iter()
        .map(ToString::to_string)
        .collect();
    t.row("maximizers", format!("{}", strategies.len()))
        .row("strategies", strategies.join(" "));
    Ok(Report::ok(t.render(config.format)))
}

fn run_delta(config: &CliConfig) -> Result<Report, CliError> {
    let (value, standard, modified, bound) = match (&config.state, config.symmetric()) {
        (StateSpec::Pure(theta), true) => {
            let p = config.alice;
            let value = closed_form_biased(*theta, p.alpha(), p.eta())?;
            let ds = delta_standard_biased(*theta, p.alpha(), p.eta())?;
            let dm = delta_modified_biased(*theta, p.alpha(), p.eta())?;
            (value, ds, dm, value - dm)
        }
        _ => {
            let rho = resolve_state(&config.state)?;
            let value = chsh_value(
                &rho,
                &MeasurementSettings::canonical(),
                config.alice,
                config.bob,
            )?;
            let bound = lhv_bound_bruteforce_with(config.alice, config.bob).bound;
            (value, value - STANDARD_BOUND, value - bound, bound)
        }
    };
    let mut t = Table::new();
    t.row("state", describe_state(&config.state))
        .row("alice", fmt_params(config.alice))
        .row("bob", fmt_params(config.bob))
        .row("quantum_value", format_number(value))
        .row("modified_bound", format_number(bound))
        .row("delta_standard", format_number(standard))
        .row("delta_modified", format_number(modified))
        .row(
            "class",
            ViolationClass::classify(standard, modified).label(),
        );
    Ok(Report::ok(t.render(config.format)))
}

/// Renders scan cells as CSV under [`SCAN_CSV_HEADER`].
pub fn scan_to_csv(cells: &[ScanCell]) -> String {
    let mut out = String::with_capacity(cells.len() * 160);
    out.push_str(SCAN_CSV_HEADER);
    out.push('\n');
    for c in cells {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{}",
            format_number(c.alpha),
            format_number(c.eta),
            format_number(c.theta),
            format_number(c.quantum_value),
            format_number(c.standard_bound),
            format_number(c.modified_bound),
            format_number(c.delta_standard),
            format_number(c.delta_modified),
            c.feasible,
            c.class.label(),
        );
    }
    out
}

fn run_scan(config: &CliConfig) -> Result<Report, CliError> {
    let cells = scan_region(config.theta, config.steps, config.steps)?;
    let body = match config.format {
        Format::Csv => scan_to_csv(&cells),
        Format::Text => {
            let s = ScanSummary::of(&cells);
            let mut t = Table::new();
            t.row("theta", format_number(config.theta))
                .row("grid", format!("{0} x {0}", config.steps))
                .row("feasible", s.feasible.to_string())
                .row("infeasible", s.infeasible.to_string())
                .row("BOTH", s.both.to_string())
                .row("MODIFIED_ONLY", s.modified_only.to_string())
                .row("NONE", s.none.to_string());
            t.render(Format::Text)
        }
    };
    Ok(Report::ok(body))
}

fn run_thresholds(config: &CliConfig) -> Result<Report, CliError> {
    let eta = critical_eta_standard(config.theta, config.alice.alpha())?;
    let alpha = max_alpha_modified(config.theta)?;
    let mut t = Table::new();
    t.row("theta", format_number(config.theta))
        .row("alpha", format_number(config.alice.alpha()))
        .row(
            "critical_eta_standard",
            eta.map(format_number).unwrap_or_else(|| "none".into()),
        )
        .row("max_alpha_modified", format_number(alpha));
    Ok(Report::ok(t.render(config.format)))
}

fn run_verify(config: &CliConfig) -> Result<Report, CliError> {
    let report = verify::run_with_seed(config.seed);
    let mut out = String::new();
    match config.format {
        Format::Csv => {
            out.push_str("check,passed,worst,tolerance\n");
            for c in &report.checks {
                let _ = writeln!(
                    out,
                    "\"{}\",{},{},{}",
                    c.name,
                    c.passed,
                    format_number(c.worst),
                    format_number(c.tolerance)
                );
            }
        }
        Format::Text => {
            for c in &report.checks {
                let _ = writeln!(
                    out,
                    "{}  {:<62} worst {:<14} tol {}",
                    if c.passed { "PASS" } else { "FAIL" },
                    c.name,
                    format_number(c.worst),
                    format_number(c.tolerance)
                );
            }
            let _ = writeln!(
                out,
                "{} passed, {} failed, {} total",
                report.passed(),
                report.failed(),
                report.checks.len()
            );
        }
    }
    let status = if report.all_passed() {
        Status::Success
    } else {
        Status::VerificationFailed
    };
    Ok(Report { status, body: out })
}

/// Executes a validated configuration and returns the report body. Writing the
/// body (to stdout or `--output`) is left to the caller.
pub fn run(config: &CliConfig) -> Result<Report, CliError> {
    match config.subcommand {
        SubcommandKind::Value => run_value(config),
        SubcommandKind::Bound => run_bound(config),
        SubcommandKind::Delta => run_delta(config),
        SubcommandKind::Scan => run_scan(config),
        SubcommandKind::Thresholds => run_thresholds(config),
        SubcommandKind::Verify => run_verify(config),
    }
}

fn emit(config: &CliConfig, body: &str, stdout: &mut dyn std::io::Write) -> Result<(), CliError> {
    match &config.output {
        Some(path) => std::fs::write(path, body).map_err(|source| CliError::Io {
            path: path.clone(),
            source,
        }),
        None => stdout
            .write_all(body.as_bytes())
            .map_err(|source| CliError::Io {
                path: PathBuf::from("<stdout>"),
                source,
            }),
    }
}

/// Parses `args`, runs, writes the report, and returns the process exit code.
pub fn main_with_args<I, T>(
    args: I,
    stdout: &mut dyn std::io::Write,
    stderr: &mut dyn std::io::Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match CliConfig::try_from_args(args) {
        Ok(Ok(config)) => config,
        Ok(Err(e)) => {
            let _ = writeln!(stderr, "error: {e}");
            let _ = writeln!(
                stderr,
                "{}",
                <Cli as clap::CommandFactory>::command().render_usage()
            );
            return EXIT_INVALID;
        }
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(stderr, "{e}");
                    EXIT_INVALID
                }
            };
        }
    };
    let report = match run(&config) {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return EXIT_INVALID;
        }
    };
    if let Err(e) = emit(&config, &report.body, stdout) {
        let _ = writeln!(stderr, "error: {e}");
        return EXIT_INVALID;
    }
    report.status.code()
}

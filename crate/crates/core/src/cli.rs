//! Command-line front end: `analyze`, `simulate`, `verify`, `sweep`.
//!
//! Standard output carries only the machine-readable document (JSON or CSV);
//! diagnostics go to standard error. Exit statuses: 0 success, 1 verification
//! failure, 2 usage or validation error, 3 runtime error.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::analytic;
use crate::montecarlo::{self, BatchOptions, SimError, Strategy};
use crate::probcore::{ConfigError, ExactProb, HostModel, ProblemConfig, ValidConfig};
use crate::stats::{self, CheckpointRule, Z_95};
use crate::svg::{self, PlotOptions, Reference};
use crate::verify;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RUNTIME: i32 = 3;

/// Environment variable supplying a default `--seed`.
pub const SEED_ENV: &str = "MONTYHALL_SEED";

pub const ANALYZE_SCHEMA: &str = "montyhall.analyze/1";
pub const SIMULATE_SCHEMA: &str = "montyhall.simulate/1";
pub const VERIFY_SCHEMA: &str = "montyhall.verify/1";

/// Header of the `sweep` CSV.
pub const SWEEP_CSV_HEADER: &str = "param_value,host,stay,switch,stay_decimal,switch_decimal";

#[derive(Debug, Parser)]
#[command(
    name = "montyhall",
    version,
    about = "Generalized Monty Hall: exact analysis, enumeration, and simulation"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact stay/switch probabilities as JSON
    Analyze(AnalyzeArgs),
    /// Seeded Monte Carlo run with optional CSV trace and SVG plot
    Simulate(SimulateArgs),
    /// Check closed forms against brute-force enumeration
    Verify(VerifyArgs),
    /// Vary one parameter and tabulate exact probabilities as CSV
    Sweep(SweepArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum HostArg {
    Informed,
    Random,
}

impl From<HostArg> for HostModel {
    fn from(h: HostArg) -> Self {
        match h {
            HostArg::Informed => HostModel::Informed,
            HostArg::Random => HostModel::Random,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct ConfigArgs {
    /// Total number of doors (N)
    #[arg(long)]
    pub doors: u32,
    /// Doors hiding a prize (m)
    #[arg(long)]
    pub prizes: u32,
    /// Doors the host opens (k)
    #[arg(long)]
    pub opened: u32,
    /// Prizes among the opened doors (r)
    #[arg(long)]
    pub revealed: u32,
    #[arg(long, value_enum)]
    pub host: HostArg,
}

impl ConfigArgs {
    fn config(&self) -> ProblemConfig {
        ProblemConfig::new(
            self.doors,
            self.prizes,
            self.opened,
            self.revealed,
            self.host.into(),
        )
    }
}

#[derive(Debug, Clone, Args)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    pub config: ConfigArgs,
    /// Decimal places in rendered probabilities
    #[arg(long, default_value_t = 5)]
    pub precision: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    Stay,
    Switch,
    Both,
}

impl StrategyArg {
    fn strategies(self) -> &'static [Strategy] {
        match self {
            StrategyArg::Stay => &[Strategy::Stay],
            StrategyArg::Switch => &[Strategy::Switch],
            StrategyArg::Both => &Strategy::BOTH,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub config: ConfigArgs,
    /// Accepted trials per run
    #[arg(long, default_value_t = 1_000_000)]
    pub trials: u64,
    /// Master seed; falls back to $MONTYHALL_SEED, then to a fresh random seed
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, value_enum, default_value_t = StrategyArg::Both)]
    pub strategy: StrategyArg,
    /// Write the convergence trace as CSV
    #[arg(long)]
    pub trace: Option<PathBuf>,
    /// Write the convergence plot as SVG
    #[arg(long)]
    pub svg: Option<PathBuf>,
    /// Linear trial axis in the SVG instead of logarithmic
    #[arg(long)]
    pub linear: bool,
    /// Worker threads (results do not depend on this)
    #[arg(long)]
    pub threads: Option<usize>,
    /// z-score for Wilson intervals
    #[arg(long, default_value_t = Z_95)]
    pub z: f64,
    #[arg(long, default_value_t = 5)]
    pub precision: usize,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    /// Largest door count to enumerate (3..=8)
    #[arg(long, default_value_t = 7)]
    pub max_doors: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SweepHost {
    Informed,
    Random,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SweepParam {
    Doors,
    Prizes,
    Opened,
    Revealed,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[arg(long)]
    pub doors: Option<u32>,
    #[arg(long)]
    pub prizes: Option<u32>,
    #[arg(long)]
    pub opened: Option<u32>,
    #[arg(long)]
    pub revealed: Option<u32>,
    #[arg(long, value_enum, default_value_t = SweepHost::Both)]
    pub host: SweepHost,
    /// Parameter to vary; its template flag may be omitted
    #[arg(long, value_enum)]
    pub vary: SweepParam,
    #[arg(long)]
    pub from: u32,
    #[arg(long)]
    pub to: u32,
    #[arg(long, default_value_t = 5)]
    pub precision: usize,
}

/// A failed command: exit status plus a message for standard error.
#[derive(Debug)]
pub struct Failure {
    pub status: i32,
    pub message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            status: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn runtime(message: impl Into<String>) -> Self {
        Failure {
            status: EXIT_RUNTIME,
            message: message.into(),
        }
    }
}

impl From<ConfigError> for Failure {
    fn from(e: ConfigError) -> Self {
        Failure::usage(format!("invalid configuration: {e}"))
    }
}

impl From<SimError> for Failure {
    fn from(e: SimError) -> Self {
        match e {
            SimError::NoTrials => Failure::usage(e.to_string()),
            other => Failure::runtime(other.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::runtime(format!("io: {e}"))
    }
}

impl From<stats::StatsError> for Failure {
    fn from(e: stats::StatsError) -> Self {
        Failure::runtime(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::runtime(format!("json: {e}"))
    }
}

#[derive(Serialize)]
struct Rendered {
    fraction: String,
    decimal: String,
}

fn rendered(p: &ExactProb, precision: usize) -> Rendered {
    Rendered {
        fraction: p.to_string(),
        decimal: p.to_decimal(precision),
    }
}

fn write_json<W: Write>(out: &mut W, value: &serde_json::Value) -> Result<(), Failure> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

/// Parses `args` (program name first), runs the command, and returns the exit status.
///
/// `env` looks up environment variables, so callers and tests control the
/// seed fallback without touching the process environment.
pub fn execute<I, T, W, E, F>(args: I, env: F, out: &mut W, err: &mut E) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
    W: Write,
    E: Write,
    F: Fn(&str) -> Option<String>,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let status = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return status;
        }
    };
    let result = match cli.command {
        Command::Analyze(a) => analyze(&a, out),
        Command::Simulate(a) => simulate(&a, &env, out, err),
        Command::Verify(a) => run_verify(&a, out),
        Command::Sweep(a) => sweep(&a, out, err),
    };
    match result {
        Ok(status) => status,
        Err(failure) => {
            let _ = writeln!(err, "error: {}", failure.message);
            failure.status
        }
    }
}

/// Entry point for the binary: real arguments, environment, and stdio.
pub fn main_entry() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    let mut out = stdout.lock();
    let mut err = stderr.lock();
    let status = execute(
        std::env::args_os(),
        |k| std::env::var(k).ok(),
        &mut out,
        &mut err,
    );
    let _ = out.flush();
    status
}

fn analyze<W: Write>(args: &AnalyzeArgs, out: &mut W) -> Result<i32, Failure> {
    let config = args.config.config().validate()?;
    let outcome = analytic::probabilities(&config);
    let mut doc = json!({
        "schema": ANALYZE_SCHEMA,
        "config": config,
        "stay": rendered(&outcome.stay, args.precision),
        "switch": rendered(&outcome.switch, args.precision),
    });
    if config.host == HostModel::Random {
        let l = analytic::random_host_likelihoods(&config).expect("random host");
        let bayes = analytic::posterior_stay_from_bayes(&config).expect("random host");
        doc["likelihoods"] = json!({
            "given_prize": rendered(&l.given_prize, args.precision),
            "given_no_prize": rendered(&l.given_no_prize, args.precision),
            "marginal": rendered(&l.marginal, args.precision),
        });
        doc["bayes_posterior_stay"] = json!(rendered(&bayes, args.precision));
    }
    write_json(out, &doc)?;
    Ok(EXIT_OK)
}

fn resolve_seed<F, E>(
    flag: Option<u64>,
    env: &F,
    err: &mut E,
) -> Result<(u64, &'static str), Failure>
where
    F: Fn(&str) -> Option<String>,
    E: Write,
{
    if let Some(seed) = flag {
        return Ok((seed, "flag"));
    }
    if let Some(raw) = env(SEED_ENV) {
        let seed = raw.trim().parse::<u64>().map_err(|_| {
            Failure::usage(format!(
                "{SEED_ENV}={raw:?} is not an unsigned 64-bit integer"
            ))
        })?;
        return Ok((seed, "env"));
    }
    let seed: u64 = rand::random();
    writeln!(err, "note: no seed given, using --seed {seed}")?;
    Ok((seed, "random"))
}

fn simulate<W, E, F>(args: &SimulateArgs, env: &F, out: &mut W, err: &mut E) -> Result<i32, Failure>
where
    W: Write,
    E: Write,
    F: Fn(&str) -> Option<String>,
{
    let config: ValidConfig = args.config.config().validate()?;
    if args.trials == 0 {
        return Err(Failure::usage("--trials must be at least 1"));
    }
    if !(args.z > 0.0 && args.z.is_finite()) {
        return Err(Failure::usage("--z must be positive"));
    }
    if args.threads == Some(0) {
        return Err(Failure::usage("--threads must be at least 1"));
    }
    let (seed, seed_source) = resolve_seed(args.seed, env, err)?;
    let wants_trace = args.trace.is_some() || args.svg.is_some();
    let options = BatchOptions {
        threads: args.threads,
        trace: wants_trace.then_some(CheckpointRule::PowersOfTwo),
        z: args.z,
    };
    let strategies = args.strategy.strategies();
    let outputs = montecarlo::run_strategies(&config, strategies, args.trials, seed, &options)?;
    let analytic = analytic::probabilities(&config);

    let first = &outputs[0].summary;
    let results: Vec<serde_json::Value> = outputs
        .iter()
        .map(|o| {
            let s = &o.summary;
            let theoretical = match s.strategy {
                Strategy::Stay => &analytic.stay,
                Strategy::Switch => &analytic.switch,
            };
            let (ci_low, ci_high) = stats::wilson_interval(s.wins, s.accepted_trials, args.z);
            json!({
                "strategy": s.strategy,
                "wins": s.wins,
                "trials": s.accepted_trials,
                "win_rate": s.win_rate(),
                "ci_low": ci_low,
                "ci_high": ci_high,
                "theoretical": rendered(theoretical, args.precision),
                "difference": (theoretical.to_f64() - s.win_rate()).abs(),
            })
        })
        .collect();
    let mut doc = json!({
        "schema": SIMULATE_SCHEMA,
        "config": config,
        "seed": seed,
        "seed_source": seed_source,
        "requested_trials": first.requested_trials,
        "accepted_trials": first.accepted_trials,
        "rejected_trials": first.rejected_trials,
        "acceptance_rate": first.acceptance_rate(),
        "z": args.z,
        "results": results,
    });
    if config.host == HostModel::Random {
        let l = analytic::random_host_likelihoods(&config).expect("random host");
        doc["analytic_event_probability"] = json!(rendered(&l.marginal, args.precision));
    }

    let traces: Vec<_> = outputs.iter().filter_map(|o| o.trace.clone()).collect();
    if let Some(path) = &args.trace {
        let file =
            File::create(path).map_err(|e| Failure::runtime(format!("{}: {e}", path.display())))?;
        let mut w = BufWriter::new(file);
        stats::write_trace_csv(&traces, &mut w)?;
        w.flush()?;
    }
    if let Some(path) = &args.svg {
        let references: Vec<Reference> = strategies
            .iter()
            .map(|&s| Reference {
                label: format!("{s} (exact)"),
                value: match s {
                    Strategy::Stay => analytic.stay.clone(),
                    Strategy::Switch => analytic.switch.clone(),
                },
            })
            .collect();
        let plot = svg::render_convergence(
            &traces,
            &references,
            &PlotOptions {
                title: format!("Convergence of win rates, {}", config),
                log_x: !args.linear,
            },
        );
        std::fs::write(path, plot)
            .map_err(|e| Failure::runtime(format!("{}: {e}", path.display())))?;
    }

    write_json(out, &doc)?;
    Ok(EXIT_OK)
}

fn run_verify<W: Write>(args: &VerifyArgs, out: &mut W) -> Result<i32, Failure> {
    if !(3..=8).contains(&args.max_doors) {
        return Err(Failure::usage(format!(
            "--max-doors must be between 3 and 8, got {}",
            args.max_doors
        )));
    }
    let report = verify::verify_all(args.max_doors).map_err(|e| Failure::runtime(e.to_string()))?;
    let status = if report.passed() {
        "all configs passed"
    } else {
        "counterexample found"
    };
    let doc = json!({
        "schema": VERIFY_SCHEMA,
        "status": status,
        "max_doors": report.max_doors,
        "configs_checked": report.informed_configs + report.random_configs,
        "informed_configs": report.informed_configs,
        "random_configs": report.random_configs,
        "counterexample": report.counterexample,
        "cases": report.cases,
    });
    write_json(out, &doc)?;
    Ok(if report.passed() {
        EXIT_OK
    } else {
        EXIT_VERIFY_FAILED
    })
}

fn sweep<W: Write, E: Write>(args: &SweepArgs, out: &mut W, err: &mut E) -> Result<i32, Failure> {
    if args.from > args.to {
        return Err(Failure::usage(format!(
            "--from {} exceeds --to {}",
            args.from, args.to
        )));
    }
    let template =
        |name: &str, param: SweepParam, value: Option<u32>| -> Result<Option<u32>, Failure> {
            match (args.vary == param, value) {
                (true, _) => Ok(None),
                (false, Some(v)) => Ok(Some(v)),
                (false, None) => Err(Failure::usage(format!(
                    "--{name} is required unless it is the swept parameter"
                ))),
            }
        };
    let doors = template("doors", SweepParam::Doors, args.doors)?;
    let prizes = template("prizes", SweepParam::Prizes, args.prizes)?;
    let opened = template("opened", SweepParam::Opened, args.opened)?;
    let revealed = template("revealed", SweepParam::Revealed, args.revealed)?;
    let hosts: &[HostModel] = match args.host {
        SweepHost::Informed => &[HostModel::Informed],
        SweepHost::Random => &[HostModel::Random],
        SweepHost::Both => &HostModel::ALL,
    };

    let mut rows: Vec<[String; 6]> = Vec::new();
    let mut valid_points = 0usize;
    for value in args.from..=args.to {
        for &host in hosts {
            let config = ProblemConfig::new(
                doors.unwrap_or(value),
                prizes.unwrap_or(value),
                opened.unwrap_or(value),
                revealed.unwrap_or(value),
                host,
            );
            match config.validate() {
                Ok(valid) => {
                    valid_points += 1;
                    let o = analytic::probabilities(&valid);
                    rows.push([
                        value.to_string(),
                        host.to_string(),
                        o.stay.to_string(),
                        o.switch.to_string(),
                        o.stay.to_decimal(args.precision),
                        o.switch.to_decimal(args.precision),
                    ]);
                }
                Err(e) => {
                    writeln!(err, "note: {config}: {e}")?;
                    let code = e.code.to_string();
                    rows.push([
                        value.to_string(),
                        host.to_string(),
                        code.clone(),
                        code,
                        String::new(),
                        String::new(),
                    ]);
                }
            }
        }
    }
    if valid_points == 0 {
        return Err(Failure::usage("no valid configuration in the swept range"));
    }
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(&mut *out);
    let io = |e: csv::Error| Failure::runtime(format!("csv: {e}"));
    w.write_record(SWEEP_CSV_HEADER.split(',')).map_err(io)?;
    for row in &rows {
        w.write_record(row).map_err(io)?;
    }
    w.flush()?;
    Ok(EXIT_OK)
}

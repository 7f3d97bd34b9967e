//! Command-line front end: self-verification, figure data, parameter sweeps
//! and optimization queries.

use std::fmt::Write as _;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use teleport_core::fidelity::{
    avg_fidelity_bell_ab, avg_fidelity_bell_b, avg_fidelity_belllike_opt_ab, avg_fidelity_belllike_opt_b,
    avg_fidelity_closed, avg_fidelity_monte_carlo, avg_fidelity_process, avg_fidelity_quadrature, optimal_channel,
    optimize_theta_numeric, theta_opt, AverageFidelityResult, Method, QuadratureNodes, CLASSICAL_LIMIT,
};
use teleport_core::noise::ScenarioParams;
use teleport_core::verify::{self, VerifyConfig};

pub mod format;

use format::sig12;

/// Environment variable read for the global seed when `--seed` is absent.
pub const SEED_ENV: &str = "TELEPORT_SEED";

pub const FIGURE_POINTS: usize = 201;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("cannot write {path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("{0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Verification(_) | CliError::Internal(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Io { .. } => 3,
        }
    }
}

impl From<teleport_core::Error> for CliError {
    fn from(e: teleport_core::Error) -> Self {
        match e {
            teleport_core::Error::Domain(_) | teleport_core::Error::Config(_) => CliError::Usage(e.to_string()),
            teleport_core::Error::Contract(_) => CliError::Internal(e.to_string()),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(
    name = "teleport",
    version,
    about = "Two-qubit teleportation over amplitude-damped Bell-like channels"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the self-verification suite and print a pass/fail table.
    Verify {
        #[arg(long, env = SEED_ENV, default_value_t = 0)]
        seed: u64,
    },
    /// Write the data behind figure 1 or 2 as CSV.
    Figure {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        id: u8,
        #[arg(long)]
        out: PathBuf,
    },
    /// Average fidelity over a range of noise strengths, as CSV.
    Sweep(SweepArgs),
    /// Compare the analytic and numerical optimal channel angle.
    Optimize {
        #[arg(long)]
        pa: f64,
        #[arg(long)]
        pb: f64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ScenarioKind {
    #[value(name = "bell_AB")]
    BellAB,
    #[value(name = "bell_B")]
    BellB,
    #[value(name = "belllike_opt_AB")]
    BellLikeOptAB,
    #[value(name = "belllike_opt_B")]
    BellLikeOptB,
    #[value(name = "custom")]
    Custom,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    #[value(name = "closed_form")]
    ClosedForm,
    #[value(name = "quadrature")]
    Quadrature,
    #[value(name = "monte_carlo")]
    MonteCarlo,
    #[value(name = "process_matrix")]
    ProcessMatrix,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::ClosedForm => Method::ClosedForm,
            MethodArg::Quadrature => Method::Quadrature,
            MethodArg::MonteCarlo => Method::MonteCarlo,
            MethodArg::ProcessMatrix => Method::ProcessMatrix,
        }
    }
}

#[derive(Clone, Debug, Args)]
pub struct SweepArgs {
    #[arg(long, value_enum)]
    pub scenario: ScenarioKind,
    /// First channel angle, for `custom`.
    #[arg(long, required_if_eq("scenario", "custom"))]
    pub theta1: Option<f64>,
    /// Second channel angle, for `custom`.
    #[arg(long, required_if_eq("scenario", "custom"))]
    pub theta2: Option<f64>,
    #[arg(long)]
    pub p_start: f64,
    #[arg(long)]
    pub p_end: f64,
    #[arg(long)]
    pub steps: usize,
    #[arg(long, value_enum)]
    pub method: MethodArg,
    #[arg(long, env = SEED_ENV, default_value_t = 0)]
    pub seed: u64,
    /// Monte-Carlo sample count.
    #[arg(long, default_value_t = 10_000)]
    pub samples: usize,
    #[arg(long, default_value_t = QuadratureNodes::default().eta)]
    pub eta_nodes: usize,
    #[arg(long, default_value_t = QuadratureNodes::default().phi)]
    pub phi_nodes: usize,
    #[arg(long)]
    pub out: PathBuf,
}

/// Which family of channels a sweep follows as `p` varies.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SweepScenario {
    BellAB,
    BellB,
    BellLikeOptAB,
    BellLikeOptB,
    Custom { theta1: f64, theta2: f64 },
}

impl SweepScenario {
    /// Scenario parameters at noise strength `p`.
    pub fn at(&self, p: f64) -> teleport_core::Result<ScenarioParams> {
        match *self {
            SweepScenario::BellAB => ScenarioParams::bell(p, p),
            SweepScenario::BellB => ScenarioParams::bell(0.0, p),
            SweepScenario::BellLikeOptAB => {
                let t = theta_opt(p, p);
                ScenarioParams::new(t, t, p, p)
            }
            SweepScenario::BellLikeOptB => {
                let t = theta_opt(0.0, p);
                ScenarioParams::new(t, t, 0.0, p)
            }
            SweepScenario::Custom { theta1, theta2 } => ScenarioParams::new(theta1, theta2, p, p),
        }
    }

    fn closed_form(&self, p: f64) -> teleport_core::Result<f64> {
        Ok(match *self {
            SweepScenario::BellAB => avg_fidelity_bell_ab(p, p),
            SweepScenario::BellB => avg_fidelity_bell_b(p),
            SweepScenario::BellLikeOptAB => avg_fidelity_belllike_opt_ab(p, p),
            SweepScenario::BellLikeOptB => avg_fidelity_belllike_opt_b(p),
            SweepScenario::Custom { .. } => avg_fidelity_closed(&self.at(p)?),
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepConfig {
    pub scenario: SweepScenario,
    pub p_start: f64,
    pub p_end: f64,
    pub steps: usize,
    pub method: Method,
    pub seed: u64,
    pub samples: usize,
    pub nodes: QuadratureNodes,
    pub output_path: PathBuf,
}

impl SweepConfig {
    pub fn from_args(a: &SweepArgs) -> CliResult<Self> {
        let scenario = match a.scenario {
            ScenarioKind::BellAB => SweepScenario::BellAB,
            ScenarioKind::BellB => SweepScenario::BellB,
            ScenarioKind::BellLikeOptAB => SweepScenario::BellLikeOptAB,
            ScenarioKind::BellLikeOptB => SweepScenario::BellLikeOptB,
            ScenarioKind::Custom => match (a.theta1, a.theta2) {
                (Some(theta1), Some(theta2)) => SweepScenario::Custom { theta1, theta2 },
                _ => return Err(CliError::Usage("custom scenario needs --theta1 and --theta2".into())),
            },
        };
        let cfg = Self {
            scenario,
            p_start: a.p_start,
            p_end: a.p_end,
            steps: a.steps,
            method: a.method.into(),
            seed: a.seed,
            samples: a.samples,
            nodes: QuadratureNodes {
                eta: a.eta_nodes,
                phi: a.phi_nodes,
            },
            output_path: a.out.clone(),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> CliResult<()> {
        let unit = 0.0..=1.0;
        if !unit.contains(&self.p_start) || !unit.contains(&self.p_end) {
            return Err(CliError::Usage(format!(
                "noise range [{}, {}] must lie in [0, 1]",
                self.p_start, self.p_end
            )));
        }
        if self.p_start > self.p_end {
            return Err(CliError::Usage("--p-start must not exceed --p-end".into()));
        }
        if self.steps < 2 {
            return Err(CliError::Usage(format!(
                "--steps must be at least 2, got {}",
                self.steps
            )));
        }
        if self.method == Method::Quadrature {
            QuadratureNodes::new(self.nodes.eta, self.nodes.phi)?;
        }
        self.scenario.at(self.p_start)?;
        Ok(())
    }

    /// The `steps` noise strengths, endpoints exact.
    pub fn points(&self) -> Vec<f64> {
        grid(self.p_start, self.p_end, self.steps)
    }
}

fn grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| {
            if i == n - 1 {
                hi
            } else {
                lo + (hi - lo) * i as f64 / (n - 1) as f64
            }
        })
        .collect()
}

fn evaluate(cfg: &SweepConfig, p: f64) -> teleport_core::Result<AverageFidelityResult> {
    match cfg.method {
        Method::ClosedForm => Ok(AverageFidelityResult {
            value: cfg.scenario.closed_form(p)?,
            method: Method::ClosedForm,
            samples_or_nodes: 0,
            std_error: None,
        }),
        Method::Quadrature => avg_fidelity_quadrature(&cfg.scenario.at(p)?, cfg.nodes),
        Method::MonteCarlo => avg_fidelity_monte_carlo(&cfg.scenario.at(p)?, cfg.samples, cfg.seed),
        Method::ProcessMatrix => avg_fidelity_process(&cfg.scenario.at(p)?),
    }
}

/// CSV body of a sweep. Points run in parallel; rows keep grid order.
pub fn sweep_csv(cfg: &SweepConfig) -> CliResult<String> {
    cfg.validate()?;
    let results: Vec<_> = cfg.points().into_par_iter().map(|p| (p, evaluate(cfg, p))).collect();
    let mut csv = String::from("p,fidelity,method,std_error\n");
    for (p, r) in results {
        let r = r?;
        let se = r.std_error.map(sig12).unwrap_or_default();
        writeln!(csv, "{},{},{},{}", sig12(p), sig12(r.value), r.method, se).expect("write to string");
    }
    Ok(csv)
}

pub fn cmd_sweep(cfg: &SweepConfig) -> CliResult<()> {
    write_file(&cfg.output_path, &sweep_csv(cfg)?)
}

pub fn figure_csv(id: u8) -> CliResult<String> {
    let points = grid(0.0, 1.0, FIGURE_POINTS);
    let mut csv = String::new();
    match id {
        1 => {
            csv.push_str("p,F_B_bell,F_AB_bell,classical_limit\n");
            for p in points {
                let row = [p, avg_fidelity_bell_b(p), avg_fidelity_bell_ab(p, p), CLASSICAL_LIMIT];
                push_row(&mut csv, &row);
            }
        }
        2 => {
            csv.push_str("p,F_B_bell,F_B_belllike_opt,F_AB_belllike_opt,classical_limit\n");
            for p in points {
                let row = [
                    p,
                    avg_fidelity_bell_b(p),
                    avg_fidelity_belllike_opt_b(p),
                    avg_fidelity_belllike_opt_ab(p, p),
                    CLASSICAL_LIMIT,
                ];
                push_row(&mut csv, &row);
            }
        }
        _ => return Err(CliError::Usage(format!("figure id must be 1 or 2, got {id}"))),
    }
    Ok(csv)
}

pub fn cmd_figure(id: u8, out: &Path) -> CliResult<()> {
    write_file(out, &figure_csv(id)?)
}

fn push_row(csv: &mut String, values: &[f64]) {
    let cells: Vec<String> = values.iter().map(|&v| sig12(v)).collect();
    csv.push_str(&cells.join(","));
    csv.push('\n');
}

fn write_file(path: &Path, contents: &str) -> CliResult<()> {
    std::fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn optimize_report(p_a: f64, p_b: f64) -> CliResult<String> {
    let numeric = optimize_theta_numeric(p_a, p_b)?;
    let analytic = optimal_channel(p_a, p_b);
    let mut r = String::new();
    let mut line = |k: &str, v: String| writeln!(r, "{k:<22}{v}").expect("write to string");
    line("p_A", sig12(p_a));
    line("p_B", sig12(p_b));
    line("theta_opt analytic", format!("{:.9}", analytic.theta_opt));
    line("theta_opt numeric", format!("{:.9}", numeric.theta_opt));
    line("fidelity analytic", format!("{:.12}", analytic.fidelity));
    line("fidelity numeric", format!("{:.12}", numeric.fidelity));
    line(
        "theta deviation",
        format!("{:.3e}", (analytic.theta_opt - numeric.theta_opt).abs()),
    );
    line(
        "fidelity deviation",
        format!("{:.3e}", (analytic.fidelity - numeric.fidelity).abs()),
    );
    if numeric.degenerate {
        line("note", "fidelity is flat in theta".into());
    }
    if let Some((t1, t2)) = numeric.asymmetric {
        line("asymmetric maximum", format!("({t1:.9}, {t2:.9})"));
    }
    Ok(r)
}

/// Runs the suite and writes the table to `out`. Errs with the names of the
/// failing checks.
pub fn cmd_verify(cfg: &VerifyConfig, out: &mut impl Write) -> CliResult<()> {
    let report = verify::run(cfg);
    let width = report.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
    let io_err = |source| CliError::Io {
        path: PathBuf::from("<stdout>"),
        source,
    };
    for c in &report.checks {
        let status = if c.passed { "PASS" } else { "FAIL" };
        writeln!(out, "{:<width$}  {status}  {}", c.name, c.detail).map_err(io_err)?;
    }
    if report.all_passed() {
        writeln!(out, "all {} checks passed", report.checks.len()).map_err(io_err)?;
        Ok(())
    } else {
        let names: Vec<&str> = report.failures().map(|c| c.name).collect();
        Err(CliError::Verification(names.join(", ")))
    }
}

/// Dispatches a parsed command line; returns the process exit code.
pub fn run(cli: Cli, out: &mut impl Write, err: &mut impl Write) -> i32 {
    let result = match cli.command {
        Command::Verify { seed } => cmd_verify(
            &VerifyConfig {
                seed,
                ..VerifyConfig::default()
            },
            out,
        ),
        Command::Figure { id, out: path } => cmd_figure(id, &path),
        Command::Sweep(args) => SweepConfig::from_args(&args).and_then(|cfg| cmd_sweep(&cfg)),
        Command::Optimize { pa, pb } => optimize_report(pa, pb).and_then(|r| {
            out.write_all(r.as_bytes()).map_err(|source| CliError::Io {
                path: PathBuf::from("<stdout>"),
                source,
            })
        }),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

//! `ineqverify`: run exact and numerical checks and emit JSON or CSV reports.
//!
//! Exit status: 0 when every record passes, 1 when a check fails or is
//! inconclusive, 2 for invalid input.

mod commands;
mod parse;
mod report;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use commands::Output;

#[derive(Parser, Debug)]
#[command(name = "ineqverify", version, about = "Verify kernel integral identities and transition-function positivity")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Absolute quadrature tolerance
    #[arg(long, global = true, default_value_t = 1e-10)]
    abs_tol: f64,
    /// Relative quadrature tolerance
    #[arg(long, global = true, default_value_t = 1e-9)]
    rel_tol: f64,
    /// Maximum panel bisections per integral
    #[arg(long, global = true, default_value_t = 2000)]
    max_subdivisions: usize,
    /// Write to this file instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Output format (plot-data defaults to csv, everything else to json)
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Leave the timestamp out of JSON reports
    #[arg(long, global = true)]
    no_timestamp: bool,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Logmoment,
    Phimoment,
    #[value(alias = "lemma54")]
    KernelIdentity,
    #[value(alias = "lemma517")]
    PowerMoment,
    Chain,
    All,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum DensityChoice {
    Extremal,
    Zero,
    DoubleExtremal,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exact Beta-product identities
    Identities {
        /// Exact positive rationals, `a,b,c` or `start:stop:step`
        #[arg(long, default_value = "1/2")]
        alpha: String,
        #[arg(long, default_value_t = 20)]
        n_max: u32,
    },
    /// Quadrature checks against closed forms
    Integrals {
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
        /// Exact positive rationals (suite-specific default)
        #[arg(long)]
        alpha: Option<String>,
        /// Indices: `a..b`, `a,b,c` or a single value
        #[arg(long)]
        n: Option<String>,
        /// Evaluation points for the kernel identity
        #[arg(long, default_value = "1/2,1,2")]
        y: String,
        /// Density for the chain suite
        #[arg(long, value_enum, default_value = "extremal")]
        q: DensityChoice,
        /// Number of log-spaced premise points in [1e-3, 1e3]
        #[arg(long, default_value_t = 25)]
        t_points: usize,
        /// Acceptance tolerance on residuals (suite-specific default)
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Positivity of the transition polynomials over an alpha grid
    Scan {
        /// Polynomial indices
        #[arg(long, default_value = "1..8")]
        n: String,
        #[arg(long, default_value = "1/10:2:1/10")]
        alpha_grid: String,
        /// Locate the largest alpha with a non-negative polynomial instead
        #[arg(long)]
        threshold: bool,
        /// Width of the threshold interval
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        /// Upper end of the threshold search
        #[arg(long, default_value = "4")]
        upper: String,
    },
    /// Sampled curves of the kernel or the transition functions
    PlotData {
        #[arg(long, conflicts_with = "phi", required_unless_present = "phi")]
        kernel: bool,
        #[arg(long)]
        phi: bool,
        #[arg(long, default_value = "0..3")]
        n: String,
        #[arg(long, default_value = "1/2")]
        alpha: String,
        #[arg(long, default_value_t = 200)]
        points: usize,
        /// Lower end of the t range for --phi
        #[arg(long, default_value_t = 1e-2)]
        t_min: f64,
        /// Upper end of the t range for --phi
        #[arg(long, default_value_t = 1e2)]
        t_max: f64,
    },
}

fn run(cli: Cli) -> Result<bool, String> {
    let common = cli.common;
    let quad = commands::quad_config(&common)?;
    let timestamp = (!common.no_timestamp).then(|| chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true));
    let output = match cli.command {
        Command::Identities { alpha, n_max } => commands::identities(&parse::alpha_grid(&alpha)?, n_max)?,
        Command::Integrals {
            suite,
            alpha,
            n,
            y,
            q,
            t_points,
            tol,
        } => {
            let alphas = alpha.as_deref().map(parse::alpha_grid).transpose()?;
            let ns = n.as_deref().map(parse::index_set).transpose()?;
            let opts = commands::IntegralOptions {
                alphas,
                ns,
                ys: parse::positive_reals(&y)?,
                density: q,
                t_points,
                tol,
            };
            commands::integrals(suite, &opts, &quad)?
        }
        Command::Scan {
            n,
            alpha_grid,
            threshold,
            tol,
            upper,
        } => {
            let ns = parse::index_set(&n)?;
            if threshold {
                commands::threshold(&ns, tol, &parse::positive_rational(&upper)?)?
            } else {
                commands::scan(&ns, &parse::alpha_grid(&alpha_grid)?)
            }
        }
        Command::PlotData {
            kernel,
            phi,
            n,
            alpha,
            points,
            t_min,
            t_max,
        } => {
            let ns = parse::index_set(&n)?;
            if kernel {
                commands::plot_kernel(&ns, points)?
            } else {
                debug_assert!(phi);
                commands::plot_phi(&ns, &parse::positive_rational(&alpha)?, points, t_min, t_max)?
            }
        }
    };
    emit(output, &common, timestamp)
}

fn emit(output: Output, common: &Common, timestamp: Option<String>) -> Result<bool, String> {
    let sink: Box<dyn Write> = match &common.out {
        Some(path) => Box::new(File::create(path).map_err(|e| format!("cannot create {}: {e}", path.display()))?),
        None => Box::new(io::stdout().lock()),
    };
    let mut sink = BufWriter::new(sink);
    let io_err = |e: &dyn std::fmt::Display| format!("write failed: {e}");
    let passed = match output {
        Output::Report { config, records } => {
            let report = report::Report::new(config, records, timestamp);
            match common.format.unwrap_or(Format::Json) {
                Format::Json => report.write_json(&mut sink).map_err(|e| io_err(&e))?,
                Format::Csv => report.write_csv(&mut sink).map_err(|e| io_err(&e))?,
            }
            report.all_passed()
        }
        Output::Table { config, table } => {
            match common.format.unwrap_or(Format::Csv) {
                Format::Csv => table.write_csv(&mut sink).map_err(|e| io_err(&e))?,
                Format::Json => {
                    let mut doc = serde_json::json!({
                        "schemaVersion": report::SCHEMA_VERSION,
                        "tool": {"name": "ineqverify", "version": env!("CARGO_PKG_VERSION")},
                        "config": config,
                        "columns": table.header,
                        "rows": table.rows,
                    });
                    if let Some(ts) = timestamp {
                        doc["timestamp"] = ts.into();
                    }
                    serde_json::to_writer_pretty(&mut sink, &doc).map_err(|e| io_err(&e))?;
                    writeln!(sink).map_err(|e| io_err(&e))?;
                }
            }
            true
        }
    };
    sink.flush().map_err(|e| io_err(&e))?;
    Ok(passed)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

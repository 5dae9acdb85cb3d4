//! `innodyn` — command-line front end for the innovation-dynamics library.
//!
//! Each subcommand parses flags, calls exactly one library operation, and
//! writes CSV (tables), JSON (certificates and reports), or SVG (figures)
//! to a file or standard output. Commands are pure functions of their
//! inputs: repeated runs produce byte-identical output.
//!
//! Exit codes: 0 on success, 2 on flag or domain errors, 3 when an
//! iterative search fails to converge.

use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use innodyn::bifurcation::{
    locate_doubling_with_burn_in, sweep, DEFAULT_SWEEP_BURN_IN, DEFAULT_SWEEP_SAMPLES,
    DEFAULT_SWEEP_STEPS, LOCATE_BURN_IN,
};
use innodyn::diagnostics::{
    liyorke_certificate, lyapunov, DEFAULT_LYAPUNOV_BURN_IN, DEFAULT_LYAPUNOV_ITERATES,
};
use innodyn::indicators::{build_indicators, RawSeries};
use innodyn::map::{MapParams, DEFAULT_X0};
use innodyn::policy::advise;
use innodyn_cli::plot;

#[derive(Parser)]
#[command(
    name = "innodyn",
    version,
    about = "Logistic innovation-dynamics toolkit: orbits, chaos certificates, \
             bifurcation analysis, indicator estimation, and policy advice"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Map parameters, given either as the composite value `r` or as the pair
/// (`T`, `epsilon`) whose product it is.
#[derive(Args)]
struct ParamArgs {
    /// Composite growth parameter r = T*epsilon, in (0, 4].
    #[arg(long, conflicts_with_all = ["t", "epsilon"])]
    r: Option<f64>,

    /// Firm coefficient T = (alpha+beta)/(1+n); requires --epsilon.
    #[arg(long = "T", requires = "epsilon")]
    t: Option<f64>,

    /// Regulation intensity epsilon in (0, 10); requires --T.
    #[arg(long, requires = "t")]
    epsilon: Option<f64>,
}

impl ParamArgs {
    fn resolve(&self) -> innodyn::Result<MapParams> {
        match (self.r, self.t, self.epsilon) {
            (Some(r), None, None) => MapParams::from_r(r),
            (None, Some(t), Some(epsilon)) => MapParams::new(t, epsilon),
            _ => Err(innodyn::Error::Domain(
                "supply either --r, or both --T and --epsilon".into(),
            )),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Svg,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Iterate the map and write the post-transient trajectory as CSV.
    Simulate {
        #[command(flatten)]
        params: ParamArgs,
        /// Initial state in (0, 1).
        #[arg(long, default_value_t = DEFAULT_X0)]
        x0: f64,
        /// Transient iterations to discard before recording.
        #[arg(long, default_value_t = 1000)]
        burn_in: usize,
        /// Number of iterations to record.
        #[arg(long, default_value_t = 100)]
        length: usize,
        /// Destination file (standard output when omitted).
        #[arg(long)]
        output: Option<PathBuf>,
    },

    /// Render a cobweb staircase figure (parabola, diagonal, orbit) as SVG.
    Cobweb {
        #[command(flatten)]
        params: ParamArgs,
        /// Starting state in [0, 1].
        #[arg(long, default_value_t = 0.2)]
        x0: f64,
        /// Number of staircase iterations (at least 1).
        #[arg(long, default_value_t = 40)]
        steps: usize,
        /// Destination file (standard output when omitted).
        #[arg(long)]
        output: Option<PathBuf>,
    },

    /// Sample attractors on a uniform parameter grid and write the
    /// bifurcation diagram as SVG or CSV.
    Bifurcate {
        /// Lower end of the parameter grid.
        #[arg(long, default_value_t = 2.5)]
        r_lo: f64,
        /// Upper end of the parameter grid.
        #[arg(long, default_value_t = 4.0)]
        r_hi: f64,
        /// Number of grid points.
        #[arg(long, default_value_t = DEFAULT_SWEEP_STEPS)]
        steps: usize,
        /// Transient iterations discarded at each grid point.
        #[arg(long, default_value_t = DEFAULT_SWEEP_BURN_IN)]
        burn_in: usize,
        /// Attractor samples recorded at each grid point.
        #[arg(long, default_value_t = DEFAULT_SWEEP_SAMPLES)]
        samples: usize,
        /// Output format.
        #[arg(long, value_enum, default_value_t = OutputFormat::Svg)]
        format: OutputFormat,
        /// Destination file (standard output when omitted).
        #[arg(long)]
        output: Option<PathBuf>,
    },

    /// Locate a period-doubling parameter of the first cascade and write it
    /// as CSV.
    Locate {
        /// Which doubling: 1 (period 1->2), 2 (2->4), or 3 (4->8).
        #[arg(long)]
        index: usize,
        /// Bisection half-width on the located parameter (at least 1e-6).
        #[arg(long, default_value_t = 1e-5)]
        tol: f64,
        /// Transient iterations before each period measurement.
        #[arg(long, default_value_t = LOCATE_BURN_IN)]
        burn_in: usize,
        /// Destination file (standard output when omitted).
        #[arg(long)]
        output: Option<PathBuf>,
    },

    /// Estimate the orbit's Lyapunov exponent and write it as CSV.
    Lyapunov {
        #[command(flatten)]
        params: ParamArgs,
        /// Initial state in (0, 1).
        #[arg(long, default_value_t = DEFAULT_X0)]
        x0: f64,
        /// Transient iterations to discard.
        #[arg(long, default_value_t = DEFAULT_LYAPUNOV_BURN_IN)]
        burn_in: usize,
        /// Iterations averaged into the exponent.
        #[arg(long, default_value_t = DEFAULT_LYAPUNOV_ITERATES)]
        iterates: usize,
        /// Destination file (standard output when omitted).
        #[arg(long)]
        output: Option<PathBuf>,
    },

    /// Evaluate the sufficient chaos condition and write the certificate as
    /// JSON.
    Liyorke {
        #[command(flatten)]
        params: ParamArgs,
        /// Destination file (standard output when omitted).
        #[arg(long)]
        output: Option<PathBuf>,
    },

    /// Derive model indicators (alpha, beta, n, T) from a raw yearly CSV of
    /// R&D inputs, patents, and employment or income columns.
    Estimate {
        /// Input CSV with header
        /// year,rnd_input,active_patents,employment,business_income,per_capita_income.
        #[arg(long)]
        input: PathBuf,
        /// Render every derived cell rounded to four decimals.
        #[arg(long)]
        table2: bool,
        /// Destination file (standard output when omitted).
        #[arg(long)]
        output: Option<PathBuf>,
    },

    /// Classify the implied regime and write a policy report as JSON.
    Advise {
        /// Innovation growth coefficient alpha+beta.
        #[arg(long, allow_negative_numbers = true)]
        alpha_beta: f64,
        /// Employment growth rate n (so the firm coefficient divides by 1+n).
        #[arg(long, allow_negative_numbers = true)]
        n: f64,
        /// Firm coefficient override; cross-checked against alpha-beta and n
        /// when given.
        #[arg(long = "T")]
        t: Option<f64>,
        /// Regulation intensity to evaluate, in (0, 10].
        #[arg(long)]
        epsilon: Option<f64>,
        /// Destination file (standard output when omitted).
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug)]
enum AppError {
    Core(innodyn::Error),
    Io(std::io::Error),
}

impl fmt::Display for AppError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AppError::Core(e) => write!(f, "{e}"),
            AppError::Io(e) => write!(f, "{e}"),
        }
    }
}

impl From<innodyn::Error> for AppError {
    fn from(e: innodyn::Error) -> Self {
        AppError::Core(e)
    }
}

impl From<std::io::Error> for AppError {
    fn from(e: std::io::Error) -> Self {
        AppError::Io(e)
    }
}

impl AppError {
    fn exit_code(&self) -> u8 {
        match self {
            AppError::Core(innodyn::Error::Convergence(_)) => 3,
            _ => 2,
        }
    }
}

/// Writes `content` to `output`, or to standard output when no file is
/// given. Floats rendered upstream use the shortest decimal form that
/// round-trips, so emitted text is stable across runs.
fn emit(output: Option<&PathBuf>, content: &str) -> Result<(), AppError> {
    match output {
        Some(path) => std::fs::write(path, content)?,
        None => print!("{content}"),
    }
    Ok(())
}

fn run(command: Command) -> Result<(), AppError> {
    match command {
        Command::Simulate {
            params,
            x0,
            burn_in,
            length,
            output,
        } => {
            let params = params.resolve()?;
            let orbit = params.orbit(x0, burn_in, length)?;
            let mut out = String::from("t,x\n");
            for (i, x) in orbit.states.iter().enumerate() {
                out.push_str(&format!("{},{}\n", burn_in + 1 + i, x));
            }
            emit(output.as_ref(), &out)
        }
        Command::Cobweb {
            params,
            x0,
            steps,
            output,
        } => {
            let params = params.resolve()?;
            let doc = plot::cobweb(params, x0, steps)?;
            emit(output.as_ref(), &doc.to_svg())
        }
        Command::Bifurcate {
            r_lo,
            r_hi,
            steps,
            burn_in,
            samples,
            format,
            output,
        } => {
            let diagram = sweep(r_lo, r_hi, steps, burn_in, samples)?;
            let content = match format {
                OutputFormat::Svg => plot::bifurcation(&diagram).to_svg(),
                OutputFormat::Csv => {
                    let mut out = String::from("r,x\n");
                    for (r, row) in diagram.r_grid.iter().zip(&diagram.attractor_samples) {
                        for x in row {
                            out.push_str(&format!("{r},{x}\n"));
                        }
                    }
                    out
                }
            };
            emit(output.as_ref(), &content)
        }
        Command::Locate {
            index,
            tol,
            burn_in,
            output,
        } => {
            let point = locate_doubling_with_burn_in(index, tol, burn_in)?;
            let content = format!(
                "index,r_located,period_before,period_after\n{},{},{},{}\n",
                point.index, point.r_located, point.period_before, point.period_after
            );
            emit(output.as_ref(), &content)
        }
        Command::Lyapunov {
            params,
            x0,
            burn_in,
            iterates,
            output,
        } => {
            let params = params.resolve()?;
            // The library treats these as caller contracts and panics, so
            // the command validates them as ordinary input errors first.
            if !(x0 > 0.0 && x0 < 1.0) {
                return Err(innodyn::Error::Domain(format!(
                    "initial state must lie in (0, 1), got {x0}"
                ))
                .into());
            }
            if iterates == 0 {
                return Err(innodyn::Error::Domain("iterates must be at least 1".into()).into());
            }
            let estimate = lyapunov(params, x0, burn_in, iterates);
            let content = format!(
                "value,iterates_used,diverged_to_minus_infinity\n{},{},{}\n",
                estimate.value, estimate.iterates_used, estimate.diverged_to_minus_infinity
            );
            emit(output.as_ref(), &content)
        }
        Command::Liyorke { params, output } => {
            let params = params.resolve()?;
            let certificate = liyorke_certificate(params);
            let mut content = serde_json::to_string_pretty(&certificate)
                .expect("certificate fields are plain serializable values");
            content.push('\n');
            emit(output.as_ref(), &content)
        }
        Command::Estimate {
            input,
            table2,
            output,
        } => {
            let raw = RawSeries::from_csv_path(&input)?;
            let table = build_indicators(&raw)?;
            emit(output.as_ref(), &table.to_csv_string(table2))
        }
        Command::Advise {
            alpha_beta,
            n,
            t,
            epsilon,
            output,
        } => {
            let report = advise(t, epsilon, alpha_beta, n)?;
            let mut content = report.to_json();
            content.push('\n');
            emit(output.as_ref(), &content)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

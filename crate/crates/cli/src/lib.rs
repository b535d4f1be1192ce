//! Command-line front end: parses arguments, runs one library method and
//! prints its derivation trace as text or as line-delimited JSON.

pub mod commands;
pub mod document;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};

pub use commands::{CliError, DiophArgs, Report, Status};
pub use document::{StepRecord, TraceDocument, TRACE_VERSION};

pub const EXIT_SOLVED: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_DEGENERATE: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Machine,
}

#[derive(Debug, Parser)]
#[command(
    name = "adaequalitas",
    version,
    about = "Adequality, dual numbers, graded infinitesimals and sums of squares, with derivation traces"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Write the trace to FILE instead of standard output.
    #[arg(long, value_name = "FILE", global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Maxima and minima of an expression by adequality.
    Maxmin {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long, default_value_t = 'a')]
        unknown: char,
        #[arg(long, default_value_t = 'e')]
        increment: char,
    },
    /// Subtangent of the parabola x^2 = y; symbolic unless --y is given.
    TangentParabola {
        #[arg(long, allow_hyphen_values = true)]
        y: Option<String>,
    },
    /// Tangent slope of the cycloid at theta (e.g. pi/2, 2*pi/3, 1.2).
    Cycloid {
        #[arg(long, allow_hyphen_values = true)]
        theta: String,
    },
    /// A number as a sum of 2 or 3 rational squares, each above or below a bound.
    #[command(group(ArgGroup::new("bound").required(true).args(["each_greater_than", "each_less_than"])))]
    Dioph {
        #[arg(long)]
        sum: String,
        #[arg(long)]
        count: usize,
        #[arg(long, allow_hyphen_values = true)]
        each_greater_than: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        each_less_than: Option<String>,
        /// Target fraction b; chosen automatically if absent.
        #[arg(long)]
        target: Option<String>,
        /// Preliminary decomposition, comma separated (e.g. 3,1,0).
        #[arg(long)]
        prelim: Option<String>,
        #[arg(long, default_value_t = 10)]
        den_bound: u32,
        #[arg(long, default_value_t = 12)]
        search_bound: u32,
    },
    /// Refraction point of a two-medium scene.
    Snell {
        #[arg(long)]
        h1: f64,
        #[arg(long)]
        h2: f64,
        #[arg(long)]
        d: f64,
        #[arg(long)]
        v1: f64,
        #[arg(long)]
        v2: f64,
    },
    /// Keep only the lowest-order infinitesimal terms (e.g. 'a + dx').
    Tlh {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Derivative of a polynomial through dual numbers.
    Dual {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long, default_value_t = 'x')]
        unknown: char,
    },
}

/// Runs the selected command and returns its report.
pub fn execute(command: &Command) -> Result<Report, CliError> {
    match command {
        Command::Maxmin {
            expr,
            unknown,
            increment,
        } => commands::maxmin(expr, *unknown, *increment),
        Command::TangentParabola { y } => commands::tangent_parabola(y.as_deref()),
        Command::Cycloid { theta } => commands::cycloid(theta),
        Command::Dioph {
            sum,
            count,
            each_greater_than,
            each_less_than,
            target,
            prelim,
            den_bound,
            search_bound,
        } => commands::dioph(&DiophArgs {
            sum,
            count: *count,
            greater_than: each_greater_than.as_deref(),
            less_than: each_less_than.as_deref(),
            target: target.as_deref(),
            prelim: prelim.as_deref(),
            den_bound: *den_bound,
            search_bound: *search_bound,
        }),
        Command::Snell { h1, h2, d, v1, v2 } => commands::snell(*h1, *h2, *d, *v1, *v2),
        Command::Tlh { expr } => commands::tlh(expr),
        Command::Dual { expr, unknown } => commands::dual(expr, *unknown),
    }
}

pub fn render(doc: &TraceDocument, format: Format) -> String {
    match format {
        Format::Text => doc.to_text(),
        Format::Machine => doc.to_machine(),
    }
}

/// Full invocation: parse, execute, print. Returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{text}");
                    EXIT_SOLVED
                }
                _ => {
                    let _ = write!(stderr, "{text}");
                    EXIT_USAGE
                }
            };
        }
    };
    let report = match execute(&cli.command) {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return match e {
                CliError::Input(_) => EXIT_INPUT,
                CliError::Degenerate(_) => EXIT_DEGENERATE,
            };
        }
    };
    let rendered = render(&report.doc, cli.format);
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, rendered) {
                let _ = writeln!(stderr, "error: cannot write {}: {e}", path.display());
                return EXIT_INPUT;
            }
            let _ = writeln!(stdout, "{}", report.doc.summary);
        }
        None => {
            let _ = write!(stdout, "{rendered}");
        }
    }
    match report.status {
        Status::Solved => EXIT_SOLVED,
        Status::Degenerate => EXIT_DEGENERATE,
    }
}

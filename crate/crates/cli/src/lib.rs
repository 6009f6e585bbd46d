//! Argument handling and dispatch for the `fluctuverse` binary.
//!
//! Exit codes: 0 when every relation passes, 1 when at least one fails,
//! 2 for usage, parse and IO errors.

use std::ffi::OsString;
use std::fmt;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use fluctuverse::constants::DEFAULT_SOURCE;
use fluctuverse::dsl::{default_corpus, parse_relation_file, Relation};
use fluctuverse::evolution::Variant;
use fluctuverse::{ConstantsRegistry, Error};

mod commands;
mod report;

pub const EXIT_PASS: u8 = 0;
pub const EXIT_FAIL: u8 = 1;
pub const EXIT_ERROR: u8 = 2;

/// Fallback for `--constants`.
pub const CONSTANTS_ENV: &str = "FLUCTUVERSE_CONSTANTS";

#[derive(Debug, Parser)]
#[command(
    name = "fluctuverse",
    version,
    about = "Check large-number cosmology relations with dimensional analysis"
)]
pub struct Cli {
    /// Relation corpus file (default: embedded corpus).
    #[arg(long, global = true, value_name = "PATH")]
    pub corpus: Option<PathBuf>,

    /// Constants override file (default: embedded CODATA set).
    #[arg(long, global = true, value_name = "PATH", env = CONSTANTS_ENV)]
    pub constants: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Multiplies every relation tolerance.
    #[arg(long, global = true, value_name = "FACTOR", default_value_t = 1.0)]
    pub tol_scale: f64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Exact,
    Paper,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Exact => Variant::Exact,
            VariantArg::Paper => Variant::PaperStated,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check every relation in the corpus.
    Verify,
    /// Integrate N(t) and print the epoch series.
    Simulate {
        /// End time in seconds (default: present epoch of the variant).
        #[arg(long, value_name = "SECONDS")]
        t_end: Option<f64>,
        #[arg(long, value_name = "N", default_value_t = 100)]
        steps: usize,
        #[arg(long, value_enum, default_value_t = VariantArg::Exact)]
        variant: VariantArg,
    },
    /// Evaluate one expression and print its value and unit.
    Eval {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Full document: constants, relations, scales, mode energy, epoch.
    Report,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io { path: PathBuf, message: String },
    Core(Box<Error>),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Io { path, message } => {
                write!(f, "cannot read {}: {message}", path.display())
            }
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(Box::new(e))
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io {
            path: PathBuf::from("<stdout>"),
            message: e.to_string(),
        }
    }
}

fn read(path: &PathBuf) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.clone(),
        message: e.to_string(),
    })
}

/// Registry plus the name its non-derived values came from.
pub fn load_constants(path: Option<&PathBuf>) -> Result<(ConstantsRegistry, String), CliError> {
    match path {
        None => Ok((ConstantsRegistry::defaults(), DEFAULT_SOURCE.to_string())),
        Some(p) => {
            let name = p.display().to_string();
            let reg = ConstantsRegistry::with_overrides(&read(p)?, &name)?;
            Ok((reg, name))
        }
    }
}

pub fn load_corpus(path: Option<&PathBuf>) -> Result<Vec<Relation>, CliError> {
    match path {
        None => Ok(default_corpus()),
        Some(p) => Ok(parse_relation_file(&read(p)?)?),
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                EXIT_ERROR
            } else {
                let _ = write!(out, "{}", e.render());
                EXIT_PASS
            };
            return code;
        }
    };
    match execute(&cli) {
        Ok((code, text)) => match out.write_all(text.as_bytes()) {
            Ok(()) => code,
            Err(e) => {
                let _ = writeln!(err, "error: {}", CliError::from(e));
                EXIT_ERROR
            }
        },
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_ERROR
        }
    }
}

/// Output is built in memory and written only on success, so a failed run
/// prints nothing to stdout.
pub fn execute(cli: &Cli) -> Result<(u8, String), CliError> {
    if !(cli.tol_scale.is_finite() && cli.tol_scale > 0.0) {
        return Err(CliError::Usage(format!(
            "--tol-scale must be positive, got {}",
            cli.tol_scale
        )));
    }
    match &cli.command {
        Command::Verify => commands::verify(cli),
        Command::Simulate {
            t_end,
            steps,
            variant,
        } => commands::simulate(cli, *t_end, *steps, (*variant).into()),
        Command::Eval { expr } => commands::eval(cli, expr),
        Command::Report => report::report(cli),
    }
}

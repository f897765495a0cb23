//! Command-line frontend.
//!
//! Exit codes: 0 success, 1 bad input, 2 internal consistency failure.

mod commands;
pub mod render;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::dcomplex::{BigradedComplex, Filtration};
use crate::iwasawa::IwasawaParams;

const AFTER_HELP: &str = "\
Parameters for --iwasawa are a comma-separated list such as
  t11=1/2,t12=0,t21=0,t22=1/2,t31=0,t32=0
with Gaussian-rational values (\"1/2\", \"-3i\", \"1/2+2/3i\"). Omitted entries
are 0, and t=<value> sets all six at once.

The Kuranishi family is only defined for small |t_ij|. That bound is not
enforced here: every construction is a polynomial identity in the
parameters, so any value is accepted and no cutoff is imposed.

Exit codes: 0 success, 1 bad input, 2 internal consistency failure.";

#[derive(Debug, Parser)]
#[command(
    name = "zigzag",
    version,
    about = "Exact square/zigzag decomposition of double complexes",
    long_about = "Decompose bounded double complexes into squares and zigzags, and compute \
                  Dolbeault, Bott-Chern, Aeppli and de Rham cohomology and Frolicher \
                  spectral sequence pages both directly and by counting zigzags. \
                  Complexes come from JSON files or from the invariant forms of the \
                  deformed Iwasawa manifold.",
    after_help = AFTER_HELP
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: CommandKind,

    /// Build the Iwasawa complex at these Kuranishi parameters.
    #[arg(long, global = true, value_name = "PARAMS", conflicts_with = "json")]
    pub iwasawa: Option<String>,

    /// Load a double complex from a JSON file.
    #[arg(long, global = true, value_name = "PATH")]
    pub json: Option<PathBuf>,

    /// Output format [default: ascii, or json for convert].
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Last spectral sequence page to compute.
    #[arg(long = "rmax", global = true, value_name = "N", default_value_t = 3)]
    pub r_max: usize,

    /// Filtration for im d_r and the pages.
    #[arg(long, global = true, value_enum, default_value_t = FiltrationArg::Column)]
    pub filtration: FiltrationArg,

    /// Number of parameter tuples for classify.
    #[arg(long, global = true, value_name = "N", default_value_t = 200)]
    pub samples: usize,

    /// Random seed for classify.
    #[arg(long, global = true, value_name = "S", default_value_t = 0)]
    pub seed: u64,

    /// Label arrows with their scalars in ascii and tikz output.
    #[arg(long, global = true)]
    pub show_scalars: bool,

    /// Write output here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum CommandKind {
    /// Decompose into squares and zigzags and verify the result.
    Decompose,
    /// Cohomology dimensions of every flavor, computed directly and by zigzag counting.
    Tables,
    /// Spectral sequence pages e_r, im d_r and the alternating sums chi(E_2).
    Pages,
    /// Sample Iwasawa parameters and group them by decomposition fingerprint.
    Classify,
    /// Run the built-in reference checks.
    Selftest,
    /// Print the complex in canonical JSON.
    Convert,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Ascii,
    Tikz,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FiltrationArg {
    Column,
    Row,
}

impl From<FiltrationArg> for Filtration {
    fn from(f: FiltrationArg) -> Self {
        match f {
            FiltrationArg::Column => Filtration::Column,
            FiltrationArg::Row => Filtration::Row,
        }
    }
}

#[derive(Debug, Clone)]
pub enum Source {
    Iwasawa(Box<IwasawaParams>),
    Json(PathBuf),
}

/// Validated settings for one run.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub source: Option<Source>,
    pub command: CommandKind,
    pub format: Format,
    pub r_max: usize,
    pub filtration: Filtration,
    pub samples: usize,
    pub seed: u64,
    pub show_scalars: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    BadInput(String),
    Inconsistent(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::BadInput(_) => 1,
            CliError::Inconsistent(_) => 2,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::BadInput(m) => write!(f, "error: {m}"),
            CliError::Inconsistent(m) => write!(f, "consistency failure: {m}"),
        }
    }
}

/// Text to print, and a failure to report after printing it.
#[derive(Debug, Clone, Default)]
pub struct Outcome {
    pub text: String,
    pub failure: Option<CliError>,
}

impl RunConfig {
    pub fn from_cli(cli: &Cli) -> Result<Self, CliError> {
        let source = match (&cli.iwasawa, &cli.json) {
            (Some(_), Some(_)) => return Err(CliError::BadInput("give only one of --iwasawa and --json".into())),
            (Some(s), None) => Some(Source::Iwasawa(Box::new(
                s.parse().map_err(|e| CliError::BadInput(format!("--iwasawa: {e}")))?,
            ))),
            (None, Some(path)) => Some(Source::Json(path.clone())),
            (None, None) => None,
        };
        let needs_source = !matches!(cli.command, CommandKind::Classify | CommandKind::Selftest);
        if needs_source && source.is_none() {
            return Err(CliError::BadInput("a source is required: --iwasawa <PARAMS> or --json <PATH>".into()));
        }
        if !needs_source && source.is_some() {
            return Err(CliError::BadInput("this command takes no --iwasawa or --json source".into()));
        }
        let format = match (cli.command, cli.format) {
            (CommandKind::Convert, None | Some(Format::Json)) => Format::Json,
            (CommandKind::Convert, Some(_)) => {
                return Err(CliError::BadInput("convert only writes json".into()));
            }
            (CommandKind::Classify | CommandKind::Selftest, Some(Format::Tikz)) => {
                return Err(CliError::BadInput("tikz output is not available for this command".into()));
            }
            (_, Some(f)) => f,
            (_, None) => Format::Ascii,
        };
        if cli.command == CommandKind::Classify && cli.samples == 0 {
            return Err(CliError::BadInput("--samples must be at least 1".into()));
        }
        if cli.r_max == 0 {
            return Err(CliError::BadInput("--rmax must be at least 1".into()));
        }
        Ok(Self {
            source,
            command: cli.command,
            format,
            r_max: cli.r_max,
            filtration: cli.filtration.into(),
            samples: cli.samples,
            seed: cli.seed,
            show_scalars: cli.show_scalars,
        })
    }

    /// Build or load the complex and check the differential laws.
    pub fn load(&self) -> Result<BigradedComplex, CliError> {
        let c = match self.source.as_ref().expect("checked in from_cli") {
            Source::Iwasawa(t) => crate::iwasawa::build_complex(t),
            Source::Json(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| CliError::BadInput(format!("{}: {e}", path.display())))?;
                BigradedComplex::from_json(&text)
                    .map_err(|e| CliError::BadInput(format!("{}: {e}", path.display())))?
            }
        };
        let report = c.validate();
        if !report.is_ok() {
            return Err(CliError::BadInput(format!("not a double complex: {report}")));
        }
        Ok(c)
    }
}

/// Run one command and return its output.
pub fn execute(config: &RunConfig) -> Result<Outcome, CliError> {
    match config.command {
        CommandKind::Decompose => commands::decompose(config),
        CommandKind::Tables => commands::tables(config),
        CommandKind::Pages => commands::pages(config),
        CommandKind::Classify => commands::classify(config),
        CommandKind::Selftest => commands::selftest(config),
        CommandKind::Convert => commands::convert(config),
    }
}

/// Parse `args`, run, write output, and return the exit code.
pub fn run_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let outcome = RunConfig::from_cli(&cli).and_then(|config| execute(&config));
    let outcome = match outcome {
        Ok(o) => o,
        Err(e) => {
            eprintln!("{e}");
            return e.exit_code();
        }
    };
    let written = match &cli.out {
        Some(path) => std::fs::write(path, &outcome.text).map_err(|e| format!("{}: {e}", path.display())),
        None => std::io::stdout().write_all(outcome.text.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return 1;
    }
    match outcome.failure {
        Some(e) => {
            eprintln!("{e}");
            e.exit_code()
        }
        None => 0,
    }
}

pub fn main() -> i32 {
    run_with_args(std::env::args_os())
}

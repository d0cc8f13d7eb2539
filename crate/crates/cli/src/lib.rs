//! Command-line front end for the `puiseux` library.
//!
//! Every subcommand renders as plain text or, with `--format json`, as one
//! JSON document on stdout. Failures print `error[CODE]: message` on stderr
//! (a JSON object in JSON mode) and exit with 1 for domain errors or 2 for
//! malformed input.

mod commands;
pub mod error;

use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};

use commands::Output;
pub use error::CliError;

/// Environment variable selecting the output format when `--format` is absent.
pub const FORMAT_ENV: &str = "PUISEUX_FORMAT";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

/// Options shared by every subcommand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliConfig {
    /// Search window for infinite families.
    pub depth: u32,
    /// Largest prime in windows over reciprocal primes.
    pub max_prime: u64,
    pub format: Format,
    /// Seed for sampled checks.
    pub seed: u64,
}

impl Default for CliConfig {
    fn default() -> CliConfig {
        CliConfig {
            depth: 8,
            max_prime: 100,
            format: Format::Text,
            seed: 0,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "puiseux",
    version,
    about = "Exact computations on Puiseux monoids"
)]
struct Cli {
    /// Output format [default: text, or $PUISEUX_FORMAT]
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Window for bounded searches over infinite families
    #[arg(long, global = true, default_value_t = 8, value_parser = clap::value_parser!(u32).range(1..))]
    depth: u32,
    /// Largest prime used in windows over reciprocal primes
    #[arg(long, global = true, default_value_t = 100, value_parser = clap::value_parser!(u64).range(2..))]
    max_prime: u64,
    /// Seed for sampled property checks
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse a monoid expression and print its canonical form
    Parse { expr: String },
    /// Describe the atoms
    Atoms { expr: String },
    /// Decide membership of an element (yes, no or unknown)
    Member { expr: String, element: String },
    /// List factorizations of an element over a window of atoms
    Factorize { expr: String, element: String },
    /// Factorization lengths of an element
    Lengths { expr: String, element: String },
    /// Root closure as n * <1/d | d divides s>
    Closure { expr: String },
    /// Conductor of the monoid in its root closure
    Conductor { expr: String },
    /// Verdicts with certificates for every atomic property
    Classify { expr: String },
    /// Four monoids showing the atomic-property chain does not reverse
    WitnessChain,
    /// Frobenius number of a finitely generated monoid
    Frobenius { expr: String },
    /// Apéry set with respect to a nonzero element
    Apery { expr: String, element: String },
    /// Whether the second monoid is a rational multiple of the first
    Iso { first: String, second: String },
    /// Canonical form n + Σ a_p/p in <1/p | p prime>
    Decompose { element: String },
}

fn dispatch(command: &Command, cfg: &CliConfig) -> Result<Output, CliError> {
    use commands::*;
    Ok(match command {
        Command::Parse { expr } => parse_cmd(&monoid(expr)?),
        Command::Atoms { expr } => atoms_cmd(&monoid(expr)?, cfg),
        Command::Member { expr, element } => member_cmd(&monoid(expr)?, &rational(element)?, cfg),
        Command::Factorize { expr, element } => {
            factorize_cmd(&monoid(expr)?, &rational(element)?, cfg)?
        }
        Command::Lengths { expr, element } => {
            lengths_cmd(&monoid(expr)?, &rational(element)?, cfg)?
        }
        Command::Closure { expr } => closure_cmd(&monoid(expr)?)?,
        Command::Conductor { expr } => conductor_cmd(&monoid(expr)?),
        Command::Classify { expr } => classify_cmd(&monoid(expr)?, cfg)?,
        Command::WitnessChain => witness_chain_cmd()?,
        Command::Frobenius { expr } => frobenius_cmd(&monoid(expr)?)?,
        Command::Apery { expr, element } => apery_cmd(&monoid(expr)?, &rational(element)?)?,
        Command::Iso { first, second } => iso_cmd(&monoid(first)?, &monoid(second)?),
        Command::Decompose { element } => decompose_cmd(&rational(element)?)?,
    })
}

fn format_from(explicit: Option<Format>, env: Option<&str>) -> Result<Format, CliError> {
    if let Some(f) = explicit {
        return Ok(f);
    }
    match env.map(str::trim) {
        None | Some("") => Ok(Format::Text),
        Some(v) => Format::from_str(v, true).map_err(|_| {
            CliError::new(
                "E-USAGE",
                format!("{FORMAT_ENV}={v} is not one of text, json"),
            )
        }),
    }
}

fn report(err: &CliError, format: Format, stderr: &mut dyn Write) -> i32 {
    let _ = match format {
        Format::Json => writeln!(stderr, "{}", err.to_json()),
        Format::Text => writeln!(stderr, "{err}"),
    };
    err.exit_code()
}

/// Runs one invocation; `args` includes the program name. `env_format` is
/// the value of `PUISEUX_FORMAT`, if set. Returns the exit status.
pub fn run(
    args: &[String],
    env_format: Option<&str>,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(stdout, "{}", e.render());
                return 0;
            }
            let fallback = format_from(None, env_format).unwrap_or(Format::Text);
            let message = e.render().to_string();
            let first = message
                .lines()
                .next()
                .unwrap_or("invalid arguments")
                .trim_start_matches("error: ");
            return report(&CliError::new("E-USAGE", first), fallback, stderr);
        }
    };
    let format = match format_from(cli.format, env_format) {
        Ok(f) => f,
        Err(e) => return report(&e, Format::Text, stderr),
    };
    let cfg = CliConfig {
        depth: cli.depth,
        max_prime: cli.max_prime,
        format,
        seed: cli.seed,
    };
    match dispatch(&cli.command, &cfg) {
        Ok(out) => {
            let written = match format {
                Format::Text => writeln!(stdout, "{}", out.text),
                Format::Json => writeln!(stdout, "{}", out.json),
            };
            if written.is_err() {
                return error::EXIT_DOMAIN;
            }
            0
        }
        Err(e) => report(&e, format, stderr),
    }
}

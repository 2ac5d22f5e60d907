//! Command-line front end for `polylaw`.
//!
//! [`run`] parses arguments, executes one subcommand and returns the rendered
//! output together with the process exit code, so the binary and the tests
//! share one code path.

pub mod commands;
pub mod render;
pub mod suites;

use std::ffi::OsString;

use clap::{Parser, Subcommand, ValueEnum};
use polylaw::{Error, Label, Word};
use serde::Serialize;

/// Version of the JSON output layout; bump on any incompatible change.
pub const SCHEMA_VERSION: u32 = 1;

/// JSON Schema describing `--format json` output.
pub const OUTPUT_SCHEMA: &str = include_str!("../schema/output.schema.json");

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "polylaw",
    version,
    about = "Exact computations with divided powers, generic matrices and multiplicative polynomial laws"
)]
pub struct Cli {
    /// Matrix size / law degree (default 2).
    #[arg(long, global = true)]
    pub n: Option<usize>,
    /// Comma-separated generator labels.
    #[arg(long, global = true, value_delimiter = ',', default_value = "x,y")]
    pub gens: Vec<String>,
    /// Bound on the total multidegree of enumerated elements.
    #[arg(long, global = true, default_value_t = 4)]
    pub maxdeg: u32,
    /// Bound on word length for enumerated words and the tabulated φ.
    #[arg(long, global = true, default_value_t = 3)]
    pub maxwordlen: usize,
    /// Seed for sampled property checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print e_i(j_n(f)), the i-th characteristic coefficient of the generic embedding.
    ECoeff {
        #[arg(long)]
        f: String,
        #[arg(long)]
        i: usize,
    },
    /// Print the image of a divided-power element in the generic matrix ring.
    Pi { u: String },
    /// Tabulate invariant dimensions, e-span ranks and abelianized ranks.
    Invdim,
    /// Factor a fixture law through the determinant and verify the diagram.
    Factor {
        #[arg(long)]
        fixture: String,
        /// Test element; repeatable. Defaults to a small standard set.
        #[arg(long = "test")]
        tests: Vec<String>,
    },
    /// Run every property suite at the configured bounds.
    VerifyAll {
        /// Corrupt one computed value so the harness must report a failure.
        #[arg(long)]
        inject_fault: bool,
    },
}

/// Bounds and inputs shared by all subcommands.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunConfig {
    pub n: usize,
    pub gens: Vec<String>,
    pub maxdeg: u32,
    pub maxwordlen: usize,
    pub seed: u64,
    #[serde(skip)]
    pub format: Format,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            n: 2,
            gens: vec!["x".into(), "y".into()],
            maxdeg: 4,
            maxwordlen: 3,
            seed: 0,
            format: Format::Text,
        }
    }
}

impl RunConfig {
    pub fn labels(&self) -> Vec<Label> {
        self.gens.iter().map(|g| Label::new(g)).collect()
    }

    fn validate(&self) -> Result<(), Error> {
        if self.n == 0 {
            return Err(Error::Invalid("--n must be at least 1".into()));
        }
        if self.gens.is_empty() {
            return Err(Error::Invalid("--gens must name at least one generator".into()));
        }
        for (k, g) in self.gens.iter().enumerate() {
            let w: Word = g.parse()?;
            if w.len() != 1 {
                return Err(Error::Invalid(format!("`{g}` is not a generator label")));
            }
            if self.gens[..k].contains(g) {
                return Err(Error::Invalid(format!("generator `{g}` listed twice")));
            }
        }
        Ok(())
    }
}

/// Everything a finished invocation writes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn usage(err: impl std::fmt::Display) -> Self {
        Outcome {
            stdout: String::new(),
            stderr: format!("error: {err}\n"),
            code: EXIT_USAGE,
        }
    }
}

/// Parses `args` (program name first) and runs the selected subcommand.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let code = e.exit_code();
            return if e.use_stderr() {
                Outcome {
                    stdout: String::new(),
                    stderr: text,
                    code: if code == 0 { EXIT_OK } else { EXIT_USAGE },
                }
            } else {
                Outcome {
                    stdout: text,
                    stderr: String::new(),
                    code: EXIT_OK,
                }
            };
        }
    };
    let explicit_n = cli.n;
    let config = RunConfig {
        n: cli.n.unwrap_or(2),
        gens: cli.gens.iter().map(|g| g.trim().to_string()).collect(),
        maxdeg: cli.maxdeg,
        maxwordlen: cli.maxwordlen,
        seed: cli.seed,
        format: cli.format,
    };
    if let Err(e) = config.validate() {
        return Outcome::usage(e);
    }
    let result = match &cli.command {
        Command::ECoeff { f, i } => commands::e_coeff(&config, f, *i).map(|r| render::emit(&config, &r)),
        Command::Pi { u } => commands::pi(&config, u).map(|r| render::emit(&config, &r)),
        Command::Invdim => commands::invdim(&config).map(|r| render::emit(&config, &r)),
        Command::Factor { fixture, tests } => {
            commands::factor(&config, explicit_n, fixture, tests).map(|r| render::emit(&config, &r))
        }
        Command::VerifyAll { inject_fault } => Ok(render::emit(&config, &suites::verify_all(&config, *inject_fault))),
    };
    match result {
        Ok((stdout, passed)) => Outcome {
            stdout,
            stderr: String::new(),
            code: if passed { EXIT_OK } else { EXIT_FAIL },
        },
        Err(e) => Outcome::usage(e),
    }
}

//! The `valuon` command line. Exit codes: 0 on success, 1 when the input is
//! well-formed but a computation fails or a checked property does not hold,
//! 2 for usage and parse errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

mod commands;
mod machine;

pub use machine::{AbOutput, CongOutput, Machine, Point, StarOutput, TropOutput, UltrametricLine, SCHEMA_VERSION};

#[derive(Debug, Parser)]
#[command(name = "valuon", version, about = "Valuations of finite rings into idempotent semirings")]
pub struct Cli {
    /// Print the line-based file formats after a schema line.
    #[arg(long, global = true)]
    pub machine: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build or read a finite ring and print its tables.
    Ring(RingCmd),
    /// Enumerate the universal valuation semiring of a finite ring.
    Gamma(GammaCmd),
    /// Check the valuation axioms.
    Val(ValCmd),
    /// Tropicalize an expression and list its crease points.
    Trop(TropCmd),
    /// Classify a homomorphism given by its values on the prime generators.
    Hom(HomCmd),
    /// Least solution of X = AX + I for a matrix file.
    Star(StarCmd),
    /// Compare the abelianization of Γ_R with Γ of the abelianization.
    Ab(AbCmd),
    /// Congruence closure and quotient of a finite semiring file.
    Cong(CongCmd),
}

/// Where a finite ring comes from; exactly one source is allowed.
#[derive(Debug, Clone, Default, Args)]
pub struct RingSource {
    /// Ring descriptor: z<n>, f<q>, ut<n>(<base>), m<n>(<base>), prod(<a>,<b>) or r8.
    #[arg(value_name = "RING")]
    pub spec: Option<String>,
    /// Read the ring from a ring file.
    #[arg(long, value_name = "PATH")]
    pub file: Option<PathBuf>,
    /// ℤ/n.
    #[arg(long, value_name = "N")]
    pub cyclic: Option<usize>,
    /// The field with q elements.
    #[arg(long, value_name = "Q")]
    pub field: Option<usize>,
    /// Upper triangular N×N matrices over --base.
    #[arg(long, value_name = "N")]
    pub upper_triangular: Option<usize>,
    /// All N×N matrices over --base.
    #[arg(long, value_name = "N")]
    pub matrix: Option<usize>,
    /// Base ring descriptor for --upper-triangular and --matrix.
    #[arg(long, value_name = "RING", default_value = "z2")]
    pub base: String,
}

#[derive(Debug, Args)]
pub struct RingCmd {
    #[command(flatten)]
    pub source: RingSource,
    /// Print a verdict for every ring law instead of the tables.
    #[arg(long)]
    pub validate: bool,
}

#[derive(Debug, Args)]
pub struct GammaCmd {
    #[command(flatten)]
    pub source: RingSource,
    /// Print only the products of the classes x_a.
    #[arg(long)]
    pub singletons: bool,
}

#[derive(Debug, Args)]
pub struct ValCmd {
    #[command(flatten)]
    pub source: RingSource,
    /// universal, ideal, solution, or padic:<p> over the rationals.
    #[arg(long, default_value = "universal")]
    pub valuation: String,
    /// Sampled pairs for the solution and p-adic valuations.
    #[arg(long, default_value_t = 200)]
    pub cases: usize,
}

#[derive(Debug, Args)]
pub struct TropCmd {
    /// The expression; omit it to use --expr-file.
    pub expr: Option<String>,
    /// Read the expression from a file.
    #[arg(long, value_name = "PATH")]
    pub expr_file: Option<PathBuf>,
    /// Coefficient ring descriptor.
    #[arg(long, value_name = "RING")]
    pub ring: Option<String>,
    /// Coefficient ring file.
    #[arg(long, value_name = "PATH")]
    pub ring_file: Option<PathBuf>,
    /// universal, or padic:<p> for rational expressions.
    #[arg(long, default_value = "universal")]
    pub valuation: String,
    /// Comma-separated variable names; by default the letters x y z w t u v
    /// that are not element labels, keeping only those that occur.
    #[arg(long, value_delimiter = ',')]
    pub vars: Option<Vec<String>>,
    /// Also print the roots and whether each root valuates to a crease point.
    #[arg(long)]
    pub roots: bool,
    /// Search for crease points over all of Γ_R instead of the classes x_a.
    #[arg(long)]
    pub full_gamma: bool,
}

#[derive(Debug, Args)]
pub struct HomCmd {
    /// Values on the prime generators, as `p=c`; unlisted primes map to 0.
    pub assignments: Vec<String>,
}

#[derive(Debug, Args)]
pub struct StarCmd {
    /// Matrix file.
    pub file: PathBuf,
}

#[derive(Debug, Args)]
pub struct AbCmd {
    #[command(flatten)]
    pub source: RingSource,
}

#[derive(Debug, Args)]
pub struct CongCmd {
    /// Semiring file.
    pub file: PathBuf,
    /// Pairs to identify, as `a=b` with indices or labels.
    pub pairs: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    Usage(String),
    Domain(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Domain(_) => 1,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Domain(m) => m,
        }
    }
}

/// What a command prints. `failure` turns a printed result into exit code 1.
#[derive(Debug, Clone)]
pub struct Report {
    pub human: String,
    pub machine: Machine,
    pub failure: Option<String>,
}

impl Report {
    fn ok(human: String, machine: Machine) -> Self {
        Report {
            human,
            machine,
            failure: None,
        }
    }
}

pub fn execute(cli: &Cli) -> Result<Report, CliError> {
    match &cli.command {
        Command::Ring(c) => commands::ring(c),
        Command::Gamma(c) => commands::gamma(c),
        Command::Val(c) => commands::val(c),
        Command::Trop(c) => commands::trop(c),
        Command::Hom(c) => commands::hom(c),
        Command::Star(c) => commands::star(c),
        Command::Ab(c) => commands::ab(c),
        Command::Cong(c) => commands::cong(c),
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return e.exit_code();
        }
    };
    match execute(&cli) {
        Ok(report) => {
            let text = if cli.machine { report.machine.to_text() } else { report.human };
            if out.write_all(text.as_bytes()).is_err() {
                return 1;
            }
            match report.failure {
                Some(why) => {
                    let _ = writeln!(err, "valuon: {why}");
                    1
                }
                None => 0,
            }
        }
        Err(e) => {
            let _ = writeln!(err, "valuon: {}", e.message());
            e.exit_code()
        }
    }
}

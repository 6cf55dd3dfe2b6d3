use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::CliError;
use crate::report::MethodSelection;
use crate::source::{parse_canonical, parse_gate_name, GateSource};

#[derive(Debug, Parser)]
#[command(name = "locinv", version, about = "Local invariants of two-qubit gates")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Canonical parameters, Makhlin invariants, region and eta of a gate.
    Invariants {
        #[command(flatten)]
        gate: GateArgs,
        #[arg(long, value_enum, default_value_t = Method::All)]
        method: Method,
        /// Match tolerance for invariants and region boundaries.
        #[arg(long)]
        tol: Option<f64>,
        /// Human-readable output instead of JSON.
        #[arg(long)]
        plain: bool,
        /// Show angles in degrees.
        #[arg(long)]
        degrees: bool,
    },
    /// Rebuild the reference gate catalog and chamber strata and check them.
    VerifyTables {
        /// Match tolerance for invariants and region boundaries.
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Chamber boundary in Makhlin coordinates as CSV.
    Surface {
        #[arg(long, default_value_t = 181)]
        ns: usize,
        #[arg(long, default_value_t = 91)]
        nt: usize,
        /// Output file; CSV goes to standard output if omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Histogram of eta over Haar-random two-qubit gates.
    Sample {
        #[arg(long, default_value_t = 1000)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        plain: bool,
    },
    /// Lower bound on applications of a gate needed for a generic n-qubit gate.
    Bound {
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[command(flatten)]
        gate: GateArgs,
        #[arg(long)]
        plain: bool,
    },
    /// Whether two gates are equal up to local gates.
    ///
    /// Each operand is a gate file path, a catalog name such as `cnot` or
    /// `cu:0.5`, or canonical parameters written `c:c1,c2,c3`.
    Equiv {
        a: String,
        b: String,
        /// Tolerance on the Makhlin invariants.
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        plain: bool,
    },
    /// Write a gate file.
    Dump {
        #[command(flatten)]
        gate: GateArgs,
        /// Dress the gate with random local factors drawn from this seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Output file; the gate goes to standard output if omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Args)]
#[group(required = true, multiple = false)]
pub struct GateArgs {
    /// Catalog gate: identity, swap, cnot, dcnot, sqrtswap, invsqrtswap, b,
    /// cu:<alpha>, spe:<alpha>.
    #[arg(long)]
    pub gate: Option<String>,
    /// Gate file (JSON with `n` and `matrix`).
    #[arg(long)]
    pub file: Option<PathBuf>,
    /// Canonical parameters `c1,c2,c3` in radians.
    #[arg(long, allow_hyphen_values = true)]
    pub c: Option<String>,
}

impl GateArgs {
    pub fn source(&self) -> Result<GateSource, CliError> {
        match (&self.gate, &self.file, &self.c) {
            (Some(name), None, None) => Ok(GateSource::Named(parse_gate_name(name)?)),
            (None, Some(path), None) => Ok(GateSource::File(path.clone())),
            (None, None, Some(c)) => Ok(GateSource::Canonical(parse_canonical(c)?)),
            _ => Err(CliError::Usage("give exactly one of --gate, --file, --c".into())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Numeric,
    Analytic,
    Spectral,
    All,
}

impl From<Method> for MethodSelection {
    fn from(m: Method) -> Self {
        match m {
            Method::Numeric => MethodSelection::Numeric,
            Method::Analytic => MethodSelection::Analytic,
            Method::Spectral => MethodSelection::Spectral,
            Method::All => MethodSelection::All,
        }
    }
}

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug, Clone)]
#[command(
    name = "courantlab",
    version,
    about = "Validate quadratic Lie algebras and verify splitting bivectors of Lie algebra actions"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Write the JSON report to this file.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Print the JSON report on stdout instead of the summary.
    #[arg(long, global = true)]
    pub json: bool,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Validate an algebra description (and a Manin triple if `triple` is given).
    Validate {
        path: PathBuf,
    },
    /// Run a built-in verification suite.
    Verify {
        suite: Suite,
        #[command(flatten)]
        opts: VerifyOpts,
    },
    /// Print the bivector of a splitting at a point, its rank and leaf data.
    Bivector(BivectorOpts),
    /// Print the JSON description of a built-in algebra or triple.
    Export {
        #[arg(long, default_value = "sl2-double")]
        ctx: String,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Schouten,
    Rank,
    Leaves,
    Mult,
    Dressing,
    Relations,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Schouten => "schouten",
            Suite::Rank => "rank",
            Suite::Leaves => "leaves",
            Suite::Mult => "mult",
            Suite::Dressing => "dressing",
            Suite::Relations => "relations",
            Suite::All => "all",
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct VerifyOpts {
    /// Built-in context: sl2-double, sl2-triangular-triple or abelian-2.
    #[arg(long)]
    pub ctx: Option<String>,
    /// Number of sample points or random instances (suite default if absent).
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Finite-difference step.
    #[arg(long, default_value_t = 1e-4, value_parser = positive)]
    pub h: f64,
    /// Residual tolerance.
    #[arg(long, default_value_t = 1e-6, value_parser = positive)]
    pub tol: f64,
}

impl Default for VerifyOpts {
    fn default() -> Self {
        Self {
            ctx: None,
            samples: None,
            seed: 1,
            h: 1e-4,
            tol: 1e-6,
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct BivectorOpts {
    #[arg(long, default_value = "sl2-double")]
    pub ctx: String,
    /// Group element, rows separated by `;`, entries rational (`1/2`).
    /// Defaults to the identity.
    #[arg(long)]
    pub point: Option<String>,
    /// Lagrangian `E`: a name (diag, antidiag, triangular, e1, e2) or basis
    /// vectors separated by `;`.
    #[arg(long)]
    pub e: Option<String>,
    #[arg(long)]
    pub f: Option<String>,
    /// Exchange the roles of `E` and `F`.
    #[arg(long)]
    pub swap: bool,
}

fn positive(s: &str) -> Result<f64, String> {
    let x: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if x > 0.0 && x.is_finite() {
        Ok(x)
    } else {
        Err(format!("{s} is not a positive number"))
    }
}

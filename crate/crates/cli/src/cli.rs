use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "filippov",
    version,
    about = "Exact deformation theory of Filippov (n-Lie) algebras"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Global {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Seed for every randomized sampling step.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Worker threads (defaults to the available cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Include wall-clock timing in the report. Off by default so that
    /// reports are byte-stable.
    #[arg(long, global = true)]
    pub timing: bool,

    /// Also write the produced artifact (path, cochain, algebroid) here.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the fundamental identity of an algebra.
    Check { algebra: PathBuf },

    /// Compute H^k_F of an algebra.
    Cohomology {
        algebra: PathBuf,
        #[arg(long)]
        degree: usize,
        /// Allow degrees above the default cap of 3.
        #[arg(long)]
        max_degree_cap: bool,
    },

    /// Check the Nijenhuis condition for an operator given as a matrix.
    Nijenhuis {
        algebra: PathBuf,
        operator: PathBuf,
        /// Emit the deformation generated by the operator.
        #[arg(long)]
        generate_path: bool,
    },

    /// Deformation paths.
    #[command(subcommand)]
    Deform(DeformCommand),

    /// Obstruction to extending a path by one order.
    Obstruction { path: PathBuf },

    /// Filippov algebroids over a polynomial base.
    #[command(subcommand)]
    Algebroid(AlgebroidCommand),

    /// Compare the differential with the Chevalley-Eilenberg differential of
    /// a Lie algebra.
    ReduceLie { algebra: PathBuf },
}

#[derive(Debug, Subcommand)]
pub enum DeformCommand {
    /// Check the deformation equations of a path.
    Check {
        path: PathBuf,
        /// Impose the identity on every power of t, not only up to the order.
        #[arg(long)]
        full: bool,
    },
    /// Extend a path by one order, or report the obstruction.
    Extend { path: PathBuf },
    /// Check that SOURCE = Φ⁻¹ TARGET(Φ·) for the map series MAP.
    Equiv {
        source: PathBuf,
        target: PathBuf,
        map: PathBuf,
        /// Check Φ(source[x]) = target[Φx] exactly in t instead.
        #[arg(long)]
        homomorphism: bool,
    },
    /// Sample deformations and try to trivialize them.
    Rigidity {
        algebra: PathBuf,
        #[arg(long, default_value_t = 2)]
        max_order: usize,
        #[arg(long, default_value_t = 3)]
        trials: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum AlgebroidCommand {
    /// Check the algebroid axioms and the symbol of [φ, φ].
    Check {
        algebroid: PathBuf,
        /// Largest degree of the function coefficients used by the checks.
        #[arg(long, default_value_t = 2)]
        max_degree: u32,
        /// Skip the symbol Leibniz check.
        #[arg(long)]
        no_symbols: bool,
    },
    /// Tangent bundle of R^m with bracket f·c from an m-dimensional algebra.
    ExampleFc {
        algebra: PathBuf,
        /// The function f as a JSON polynomial, e.g.
        /// '[{"exponents":[2,0,0,0],"coeff":"1"}]'. Defaults to 1.
        #[arg(long)]
        f: Option<String>,
    },
    /// Tangent bundle of R^m with zero bracket of arity n+1 and anchor
    /// dx_1 ∧ ... ∧ dx_n ⊗ ∂/∂x_1.
    ExampleTopform {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
    },
}

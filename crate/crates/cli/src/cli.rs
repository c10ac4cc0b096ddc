use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "tycat", version, about = "Twisted graded Witt groups, cohomology ledgers and duality-defect data")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Default, Args)]
pub struct Global {
    /// Machine-readable output.
    #[arg(long, global = true)]
    pub json: bool,
    /// Compare results with the built-in expected values; exit 2 on mismatch.
    #[arg(long, global = true)]
    pub verify: bool,
    /// Largest number of subgroups one lattice enumeration may collect.
    #[arg(long, global = true, value_name = "N")]
    pub cap_subgroups: Option<usize>,
    /// Largest group order any enumeration may touch.
    #[arg(long, global = true, value_name = "N")]
    pub cap_order: Option<usize>,
    /// Seed for the randomized property sweeps.
    #[arg(long, global = true, value_name = "S")]
    pub seed: Option<u64>,
    /// TOML file with the same keys as the long flags (and a [caps] table).
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// Report wall times (output is then no longer reproducible byte for byte).
    #[arg(long, global = true)]
    pub timings: bool,
    /// Where certificates are written.
    #[arg(long, global = true, value_name = "DIR")]
    pub cert_dir: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Computations in the twisted graded Witt group.
    #[command(subcommand)]
    Witt(WittCmd),
    /// Group cohomology with module or torus coefficients.
    Cohomology(CohomologyArgs),
    /// Duality-defect classification.
    #[command(subcommand)]
    Ty(TyCmd),
    #[command(name = "ty-classify", hide = true)]
    TyClassify(TyClassifyArgs),
    #[command(name = "ty-forms", hide = true)]
    TyForms(TyFormsArgs),
    /// Symbolic fusion rules of the Z/4-graded extension.
    FusionTable(FusionArgs),
    /// Run the full acceptance suite.
    VerifyAll,
    /// Re-verify a certificate file without repeating the search.
    CheckCert { file: PathBuf },
}

/// An element: a bundled preset name or a JSON file.
#[derive(Debug, Clone, Args)]
#[group(required = true, multiple = false)]
pub struct ElementArg {
    #[arg(long)]
    pub preset: Option<String>,
    #[arg(long, value_name = "FILE")]
    pub element: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum WittCmd {
    /// Raw and mod-Witt orders with reduction traces.
    Order(ElementArg),
    /// Class equality of two elements (presets or files).
    Equal {
        left: String,
        right: String,
        /// Compare modulo metric groups.
        #[arg(long)]
        mod_witt: bool,
    },
    /// Partition elements into mod-Witt classes.
    Classify {
        /// Presets or files; defaults to all words of length ≤ 2 in a, a-, b, b-, c, c-.
        items: Vec<String>,
    },
    /// Close a generator set under the twisted product.
    Group(ElementArg),
    /// Print an element in the interchange format.
    Show(ElementArg),
}

#[derive(Debug, Clone, Args)]
pub struct CohomologyArgs {
    #[arg(long)]
    pub group: String,
    /// `torus`, or a module literal such as `Z2+Z2:swap`.
    #[arg(long)]
    pub module: String,
    /// `0..6`, `0..=6` or a comma list such as `5,6`.
    #[arg(long, default_value = "0..6")]
    pub degrees: String,
    #[arg(long, value_enum, default_value_t = Method::Auto)]
    pub method: Method,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    /// Periodic resolution for cyclic groups, bar complex otherwise.
    Auto,
    Periodic,
    Bar,
    /// Both, checked against each other.
    Both,
}

#[derive(Debug, Subcommand)]
pub enum TyCmd {
    Classify(TyClassifyArgs),
    Forms(TyFormsArgs),
}

#[derive(Debug, Clone, Args)]
pub struct TyClassifyArgs {
    #[arg(long = "A", alias = "a")]
    pub a: String,
    #[arg(long = "G", alias = "g")]
    pub g: String,
    /// `swap`, `S-matrix`, or a JSON matrix on A+Â.
    #[arg(long)]
    pub action: String,
    /// Declared order of the stacked Witt class.
    #[arg(long, default_value_t = 1)]
    pub witt_order: u32,
}

#[derive(Debug, Clone, Args)]
pub struct TyFormsArgs {
    #[arg(long = "A", alias = "a")]
    pub a: String,
    #[arg(long, value_enum, default_value_t = Filter::All)]
    pub filter: Filter,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Filter {
    All,
    Viable,
    Order2,
    Order4,
}

#[derive(Debug, Clone, Args)]
pub struct FusionArgs {
    #[arg(long = "A", alias = "a")]
    pub a: String,
    /// `trivial`, or `q:<values>;off:<values>;aut:neg|id|<JSON matrix>`.
    #[arg(long, default_value = "trivial")]
    pub phi: String,
}

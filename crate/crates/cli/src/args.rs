use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "gombur",
    about = "Fit and explore GO-MBUR and other unit-interval distributions",
    disable_version_flag = true
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct DataArgs {
    /// Built-in dataset name (`flood`) or path to a text file of values in (0, 1)
    #[arg(long, default_value = "flood")]
    pub data: String,
}

#[derive(Debug, Args)]
pub struct FamilyArgs {
    /// gombur, gombur_v1, gombur_v2, mbur, beta, kumaraswamy, topp_leone, unit_lindley
    #[arg(long, default_value = "gombur")]
    pub family: String,
    /// Parameterization used when the family is `gombur`
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2), default_value_t = 1)]
    pub version: u8,
}

#[derive(Debug, Args)]
pub struct FitArgs {
    /// Simplex convergence tolerance on the spread of objective values
    #[arg(long)]
    pub tol: Option<f64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Summary statistics of a dataset
    Describe {
        #[command(flatten)]
        data: DataArgs,
        /// Use population moments for skewness and kurtosis
        #[arg(long)]
        population: bool,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Maximum-likelihood fit of one family
    Fit {
        #[command(flatten)]
        data: DataArgs,
        #[command(flatten)]
        family: FamilyArgs,
        #[command(flatten)]
        fit: FitArgs,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Fit several families and rank them by log-likelihood
    Compare {
        #[command(flatten)]
        data: DataArgs,
        /// Comma-separated family names, or `all`
        #[arg(long, default_value = "all")]
        families: String,
        /// Parameterization used for any `gombur` entry
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2), default_value_t = 1)]
        version: u8,
        #[command(flatten)]
        fit: FitArgs,
        /// Recorded in the output; fitting itself is deterministic
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Goodness-of-fit statistics; fits first unless --params is given
    Gof {
        #[command(flatten)]
        data: DataArgs,
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, value_delimiter = ',')]
        params: Option<Vec<f64>>,
        #[command(flatten)]
        fit: FitArgs,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Draw a seeded random sample
    Sample {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, value_delimiter = ',', required = true)]
        params: Vec<f64>,
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Evaluate the quantile function
    Quantile {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, value_delimiter = ',', required = true)]
        params: Vec<f64>,
        /// Comma-separated probabilities
        #[arg(long, value_delimiter = ',', default_value = "0.1,0.25,0.5,0.75,0.9")]
        p: Vec<f64>,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Hazard traces with accurate and naive survival evaluation
    HazardScan {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, value_delimiter = ',', required = true)]
        params: Vec<f64>,
        /// Number of open-grid points on (0, 1)
        #[arg(long, default_value_t = 512)]
        grid: usize,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Run the built-in numerical self-checks
    Verify {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Monte Carlo replications per construction check
        #[arg(long, default_value_t = 20_000)]
        replications: usize,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Write histogram/density and ECDF/CDF tables for plotting
    PlotData {
        #[command(flatten)]
        data: DataArgs,
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, value_delimiter = ',')]
        params: Option<Vec<f64>>,
        #[arg(long, default_value_t = 8)]
        bins: usize,
        /// Directory receiving `<prefix>_density.csv` and `<prefix>_cdf.csv`
        #[arg(long, default_value = ".")]
        out_dir: String,
        #[arg(long, default_value = "plot")]
        prefix: String,
        #[command(flatten)]
        fit: FitArgs,
    },
}

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use fuzzgrade::oracle::DEFAULT_RESOLUTION;
use fuzzgrade::{DatasetFormat, ReportFormat, ShapeKind, DEFAULT_EPS};

#[derive(Parser, Debug)]
#[command(
    name = "fuzzgrade",
    version,
    about = "Compare grade distributions with fuzzy centroid models"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Centroid and GPA for every group in a dataset.
    Report(DataArgs),
    /// Rank the groups of a dataset.
    Compare {
        #[command(flatten)]
        data: DataArgs,
        /// Centroid differences up to this size count as ties.
        #[arg(long, default_value_t = DEFAULT_EPS)]
        eps: f64,
    },
    /// Print the coefficients of a model.
    Coeffs {
        #[command(flatten)]
        model: ModelArgs,
        /// Number of grades (ignored when --scale is given).
        #[arg(long, default_value_t = 5)]
        n: usize,
        /// Grade labels, worst first, comma separated.
        #[arg(long)]
        scale: Option<String>,
        #[arg(long, default_value = "text")]
        format: ReportFormat,
    },
    /// Check the closed-form centroids against the geometric oracle.
    Verify {
        #[command(flatten)]
        data: DataArgs,
        /// Grid step of the area integral (classic model).
        #[arg(long, default_value_t = DEFAULT_RESOLUTION)]
        resolution: f64,
    },
}

#[derive(Args, Debug, Clone)]
pub struct ModelArgs {
    /// classic, grm, triangular or trapezoidal.
    #[arg(long, default_value = "grm")]
    pub model: ShapeKind,
    /// Percent of each base shared with its neighbour: 30 by default, 0 for classic.
    #[arg(long)]
    pub k: Option<f64>,
}

#[derive(Args, Debug, Clone)]
pub struct DataArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Grade labels, worst first, comma separated.
    #[arg(long)]
    pub scale: Option<String>,
    #[arg(long, default_value = "text")]
    pub format: ReportFormat,
    /// Dataset format; guessed from the file extension or content when omitted.
    #[arg(long)]
    pub input_format: Option<DatasetFormat>,
    /// Dataset path, or `-` for stdin.
    pub input: PathBuf,
}

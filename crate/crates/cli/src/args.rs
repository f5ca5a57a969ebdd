use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "sphkern", version, about = "Sobolev kernels and discrepancy on spheres")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Args)]
pub struct Output {
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the result to this file instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct Source {
    /// Point-set file
    #[arg(long = "in", value_name = "PATH", conflicts_with = "gen")]
    pub input: Option<PathBuf>,
    /// Generated point set: random:N, fibonacci:N or named:<name>
    #[arg(long, value_name = "SPEC")]
    pub gen: Option<String>,
    /// Sphere dimension for random point sets
    #[arg(long, default_value_t = 2)]
    pub d: usize,
    /// Seed for random point sets
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate the kernel at an inner product or a pair of points
    Kernel {
        /// Sphere dimension
        #[arg(long, default_value_t = 2)]
        d: usize,
        /// Smoothness parameter (> 1/2)
        #[arg(long, allow_negative_numbers = true)]
        beta: f64,
        /// Inner product x.y in [-1, 1]
        #[arg(long, allow_negative_numbers = true, required_unless_present = "x")]
        inner: Option<f64>,
        /// First point as comma-separated coordinates
        #[arg(long, allow_negative_numbers = true, requires = "y", conflicts_with = "inner")]
        x: Option<String>,
        /// Second point as comma-separated coordinates
        #[arg(long, allow_negative_numbers = true, requires = "x")]
        y: Option<String>,
        /// Also evaluate the defining double integral by quadrature
        #[arg(long)]
        oracle: bool,
        /// Oracle resolution (nodes per factor)
        #[arg(long, default_value_t = sphkern::oracle::DEFAULT_RESOLUTION)]
        res: usize,
        /// Oracle relative tolerance
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        #[command(flatten)]
        output: Output,
    },
    /// Worst-case error of a point set
    Wce {
        #[command(flatten)]
        source: Source,
        /// Smoothness parameter (> 1/2)
        #[arg(long, allow_negative_numbers = true)]
        beta: f64,
        /// Also compute the cap-quadrature route at this sphere resolution
        #[arg(long, value_name = "RES")]
        quadrature: Option<usize>,
        /// Gauss nodes per t panel for the cap quadrature
        #[arg(long, default_value_t = 8)]
        t_nodes: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Compare both sides of the invariance principle
    Invariance {
        #[command(flatten)]
        source: Source,
        /// Smoothness parameter (> 1/2)
        #[arg(long, allow_negative_numbers = true)]
        beta: f64,
        /// Sphere resolution of the cap rule
        #[arg(long, default_value_t = sphkern::oracle::DEFAULT_RESOLUTION)]
        res: usize,
        /// Gauss nodes per t panel
        #[arg(long, default_value_t = 8)]
        t_nodes: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Spherical design residuals r_1..r_t
    Design {
        #[command(flatten)]
        source: Source,
        /// Largest degree tested
        #[arg(long)]
        t_max: usize,
        /// Residual tolerance for certification
        #[arg(long, default_value_t = sphkern::discrepancy::DESIGN_TOL)]
        tol: f64,
        #[command(flatten)]
        output: Output,
    },
    /// Gegenbauer expansion coefficients of the kernel
    Expand {
        /// Sphere dimension
        #[arg(long, default_value_t = 2)]
        d: usize,
        /// Smoothness parameter (> 1/2)
        #[arg(long, allow_negative_numbers = true)]
        beta: f64,
        /// Largest degree
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Generate a point set and write it as a point file
    Gen {
        #[command(flatten)]
        source: Source,
        /// Output file (stdout when absent)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Mean value of the kernel over the sphere
    Mean {
        /// Sphere dimension
        #[arg(long, default_value_t = 2)]
        d: usize,
        /// Smoothness parameter (> 1/2)
        #[arg(long, allow_negative_numbers = true)]
        beta: f64,
        #[command(flatten)]
        output: Output,
    },
}

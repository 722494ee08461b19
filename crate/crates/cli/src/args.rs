use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::report::Format;

#[derive(Debug, Clone, Parser)]
#[command(
    name = "acsusy",
    version,
    about = "Ground state and bound-state spectrum of a neutral spin-1/2 particle around a charged cylinder",
    long_about = "All radial problems depend on the dimensionless strength b = beta*r0^2. Lengths are \
                  reported in units of r0 and energies as eps = E^2 - M^2 in units of 1/r0^2 unless --si is given. \
                  Exit codes: 0 success, 2 constraint or validation failure, 3 I/O failure, 4 numerical precision failure."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Closed-form zero-energy ground state: density profile and probability split at r0.
    GroundState(GroundStateArgs),
    /// Density profiles for several b over r/r0 in [0, 5].
    Figure1(Figure1Args),
    /// Ratio R_beta = W[r0, inf) / W[0, r0] as a function of b.
    Figure2(Figure2Args),
    /// Levels from log-derivative matching for a range of m and sectors.
    Spectrum(SpectrumArgs),
    /// Report on the condition beta*r0^2 > 1 for a configuration.
    Check(CheckArgs),
    /// Minimum line-charge density for a normalizable ground state.
    LambdaMin(LambdaMinArgs),
    /// Finite-difference eigenvalues and normalizability diagnostics.
    Oracle(OracleArgs),
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Output file; defaults to stdout, or to a file in --output-dir when that is set.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Directory for outputs when --out is not given.
    #[arg(long, env = "ACSUSY_OUTPUT_DIR")]
    pub output_dir: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct GroundStateArgs {
    /// Dimensionless strength b = beta*r0^2; must exceed 1.
    #[arg(long, allow_negative_numbers = true)]
    pub b: f64,
    /// Cylinder radius; r/r0 columns are independent of it.
    #[arg(long, default_value_t = 1.0)]
    pub r0: f64,
    #[arg(long, default_value_t = 501)]
    pub grid_points: usize,
    /// Upper end of the r/r0 grid.
    #[arg(long, default_value_t = 5.0)]
    pub r_max: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct Figure1Args {
    /// Comma-separated strengths, each above 1.
    #[arg(long, value_delimiter = ',', required = true, allow_negative_numbers = true)]
    pub b_list: Vec<f64>,
    #[arg(long, default_value_t = 501)]
    pub grid_points: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct Figure2Args {
    #[arg(long, default_value_t = 1.01, allow_negative_numbers = true)]
    pub b_min: f64,
    #[arg(long, default_value_t = 6.0)]
    pub b_max: f64,
    #[arg(long, default_value_t = 200)]
    pub points: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct SpectrumArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub b: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub m_min: i32,
    #[arg(long, allow_negative_numbers = true)]
    pub m_max: i32,
    /// Sectors to scan: phi, chi (both spins) or phi+, phi-, chi+, chi-.
    #[arg(long, value_delimiter = ',', default_value = "phi,chi")]
    pub sectors: Vec<String>,
    /// Lower end of the eps window, in 1/r0^2; defaults to -(b^2 + 4b).
    #[arg(long, allow_negative_numbers = true)]
    pub eps_min: Option<f64>,
    /// Samples of the matching function per window.
    #[arg(long, default_value_t = 400)]
    pub n_grid: usize,
    /// Cross-check every level against the finite-difference oracle.
    #[arg(long)]
    pub verify: bool,
    /// Oracle cutoff radius, in units of r0.
    #[arg(long, default_value_t = 60)]
    pub oracle_r_max: usize,
    #[arg(long, default_value_t = 50)]
    pub oracle_cells_per_r0: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct CheckArgs {
    /// Dimensionless strength; excludes --rho and --r0.
    #[arg(long, conflicts_with_all = ["rho", "r0", "si"], allow_negative_numbers = true)]
    pub b: Option<f64>,
    /// Charge density: natural units (e absorbed), or C/m^3 with --si.
    #[arg(long, requires = "r0", allow_negative_numbers = true)]
    pub rho: Option<f64>,
    /// Cylinder radius: natural length units, or metres with --si.
    #[arg(long, requires = "rho", allow_negative_numbers = true)]
    pub r0: Option<f64>,
    /// Interpret --rho, --r0 and --mass in SI units.
    #[arg(long)]
    pub si: bool,
    /// Particle mass: inverse length in natural units (default 1), kg with --si (default neutron).
    #[arg(long)]
    pub mass: Option<f64>,
    /// Anomalous moment in nuclear magnetons.
    #[arg(long, default_value_t = 1.913, allow_negative_numbers = true)]
    pub kappa: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct LambdaMinArgs {
    /// Particle mass in kg; defaults to the neutron mass.
    #[arg(long, allow_negative_numbers = true)]
    pub mass: Option<f64>,
    #[arg(long, default_value_t = 1.913, allow_negative_numbers = true)]
    pub kappa: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct OracleArgs {
    /// Any b > 0 is accepted here.
    #[arg(long, allow_negative_numbers = true)]
    pub b: f64,
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    pub m: i32,
    #[arg(long, default_value = "phi+")]
    pub sector: String,
    /// Number of lowest eigenvalues.
    #[arg(long, default_value_t = 1)]
    pub levels: usize,
    /// Cutoff radius, in units of r0.
    #[arg(long, default_value_t = 60)]
    pub r_max: usize,
    #[arg(long, default_value_t = 50)]
    pub cells_per_r0: usize,
    /// Instead of eigenvalues, report the lowest mode's mass inside r0 for these cutoffs.
    #[arg(long, value_delimiter = ',')]
    pub inner_mass: Option<Vec<usize>>,
    #[command(flatten)]
    pub output: OutputArgs,
}

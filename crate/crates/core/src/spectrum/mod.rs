//! Bound levels from log-derivative matching of the regular interior solution to
//! the decaying exterior solution at r₀, plus an exact analysis of the ε = 0 threshold.
//!
//! The matching machinery works for any [`PiecewiseRadial`] problem. F(ε) is
//! monotone decreasing between poles, and a pole appears where the interior
//! solution has a node at r₀. Roots are bracketed on a grid uniform in √(−ε),
//! poles are located from the sign of φ_<(r₀), and roots are then bisected.

mod problem;
mod scan;
mod search;

pub use problem::{
    exterior_solution, interior_solution, threshold_analysis, zero_mode, ExteriorSolution, RadialProblem,
    ThresholdAnalysis, ThresholdKind, ZeroMode, THRESHOLD_MATCH_TOL,
};
pub use scan::{scan_spectrum, CellSummary, LevelKind, ScanOptions, SpectrumRow, SpectrumTable};
pub use search::{
    count_interior_nodes, find_bound_states, matching_mismatch, matching_profile, BoundState, BoundStateSearch,
    MatchingProfile, Mismatch, BISECTION_WIDTH, EDGE_DELTA, MIN_GRID, ROOT_RESIDUAL_TOL,
};

use crate::error::Result;

/// A radial problem whose solution is known in closed form on each side of a
/// matching radius.
pub trait PiecewiseRadial: Sync {
    fn describe(&self) -> String;

    fn matching_radius(&self) -> f64;

    /// Regular interior solution (value, r-derivative) for 0 ≤ r ≤ matching radius.
    fn interior(&self, eps: f64, r: f64) -> Result<(f64, f64)>;

    /// Decaying exterior solution (value, r-derivative) for ε < 0 and r ≥ matching radius.
    fn exterior(&self, eps: f64, r: f64) -> Result<(f64, f64)>;

    /// (r φ'/φ, φ) of the interior solution at the matching radius.
    fn interior_log_derivative(&self, eps: f64) -> Result<(f64, f64)> {
        let rm = self.matching_radius();
        let (v, d) = self.interior(eps, rm)?;
        Ok((rm * d / v, v))
    }

    /// r φ'/φ of the exterior solution at the matching radius.
    fn exterior_log_derivative(&self, eps: f64) -> Result<f64> {
        let rm = self.matching_radius();
        let (v, d) = self.exterior(eps, rm)?;
        Ok(rm * d / v)
    }

    fn default_eps_min(&self) -> f64;

    /// No level lies below this ε; window widening stops here.
    fn spectrum_floor(&self) -> f64 {
        f64::NEG_INFINITY
    }
}

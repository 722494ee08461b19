//! The zero-energy ground state of the (φ, +) sector at m = 0:
//!
//! φ(r) = A e^{−βr²/2} for r ≤ r₀ and φ(r) = B r^{−b} for r ≥ r₀,
//!
//! with A, B real and positive, B = A e^{−b/2} r₀^b from continuity, and |A|²
//! fixed by 2π∫|φ|² r dr = 1. It exists only for b = βr₀² > 1.
//!
//! Probability windows use closed-form antiderivatives. Quadrature is kept as
//! an independent cross-check.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{check_unbroken_susy, CylinderConfig, SectorLabel};
use crate::quad;

/// Absolute tolerance of the quadrature cross-checks.
pub const QUAD_TOL: f64 = 1e-12;

/// Quadrature runs up to this many r₀; the rest of an infinite window is the closed-form
/// power-law tail.
pub const TAIL_START: f64 = 10.0;

/// ∫_R^∞ r (r₀/r)^{2b} dr = r₀^{2b} R^{2−2b}/(2b − 2), for R ≥ r₀.
fn power_tail(b: f64, r0: f64, r: f64) -> f64 {
    r0 * r0 * (r / r0).powf(2.0 - 2.0 * b) / (2.0 * b - 2.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GroundState {
    pub cfg: CylinderConfig,
    /// |A|², units 1/length².
    pub a_sq: f64,
    /// B > 0, units length^{b−1}.
    pub b_const: f64,
    pub sector: SectorLabel,
}

/// |A|² = b(b−1) / (π r₀² [(b−1)(1 − e^{−b}) + b e^{−b}]).
pub fn a_sq_closed_form(b: f64, r0: f64) -> f64 {
    let den = (b - 1.0) * (-(-b).exp_m1()) + b * (-b).exp();
    b * (b - 1.0) / (PI * r0 * r0 * den)
}

/// R = W[r₀, ∞) / W[0, r₀] = b / ((b − 1)(e^b − 1)).
pub fn ratio_closed_form(b: f64) -> f64 {
    b / ((b - 1.0) * b.exp_m1())
}

pub fn build_ground_state(cfg: &CylinderConfig) -> Result<GroundState> {
    check_unbroken_susy(cfg).require()?;
    let b = cfg.b();
    let r0 = cfg.r0();
    let a_sq = a_sq_closed_form(b, r0);
    let b_const = a_sq.sqrt() * (-0.5 * b).exp() * r0.powf(b);
    Ok(GroundState {
        cfg: *cfg,
        a_sq,
        b_const,
        sector: SectorLabel::PHI_PLUS,
    })
}

fn check_radius(r: f64) -> Result<()> {
    if r >= 0.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("radius must be non-negative, got {r}")))
    }
}

impl GroundState {
    pub fn b(&self) -> f64 {
        self.cfg.b()
    }

    pub fn amplitude(&self) -> f64 {
        self.a_sq.sqrt()
    }

    /// |B|² = |A|² e^{−b} r₀^{2b}.
    pub fn b_sq(&self) -> f64 {
        self.b_const * self.b_const
    }

    /// φ(r); the two branches agree at r₀.
    pub fn wavefunction(&self, r: f64) -> Result<f64> {
        check_radius(r)?;
        let r0 = self.cfg.r0();
        let b = self.b();
        Ok(if r <= r0 {
            self.amplitude() * (-0.5 * self.cfg.beta() * r * r).exp()
        } else {
            // B r^{−b} written relative to r₀ to avoid overflow for large b
            self.amplitude() * (-0.5 * b).exp() * (r0 / r).powf(b)
        })
    }

    /// |φ(r)|²
    pub fn density(&self, r: f64) -> Result<f64> {
        let v = self.wavefunction(r)?;
        Ok(v * v)
    }

    /// W[r1, r2] = 2π∫|φ|² r dr from closed-form antiderivatives; `r2` may be ∞.
    pub fn probability_window(&self, r1: f64, r2: f64) -> Result<f64> {
        check_radius(r1)?;
        if !(r2 >= r1) {
            return Err(Error::Domain(format!("window needs r1 <= r2, got [{r1}, {r2}]")));
        }
        let r0 = self.cfg.r0();
        let beta = self.cfg.beta();
        let b = self.b();
        let mut w = 0.0;
        if r1 < r0 {
            let hi = r2.min(r0);
            // 2π|A|² ∫ e^{−βr²} r dr = (π|A|²/β) e^{−βr1²} (1 − e^{−β(hi² − r1²)})
            w += PI * self.a_sq / beta * (-beta * r1 * r1).exp() * (-(-beta * (hi * hi - r1 * r1)).exp_m1());
        }
        if r2 > r0 {
            let lo = r1.max(r0) / r0;
            let p = 2.0 - 2.0 * b;
            let upper = if r2.is_infinite() { 0.0 } else { (r2 / r0).powf(p) };
            w += 2.0 * PI * self.a_sq * (-b).exp() * r0 * r0 * (lo.powf(p) - upper) / (2.0 * b - 2.0);
        }
        Ok(w)
    }

    pub fn w_inside(&self) -> f64 {
        self.probability_window(0.0, self.cfg.r0()).expect("valid window")
    }

    pub fn w_outside(&self) -> f64 {
        self.probability_window(self.cfg.r0(), f64::INFINITY)
            .expect("valid window")
    }

    pub fn ratio_outside_inside(&self) -> f64 {
        ratio_closed_form(self.b())
    }

    /// W[r1, r2] by adaptive quadrature, split at r₀. Beyond [`TAIL_START`]·r₀ an infinite
    /// window is completed with the closed-form tail.
    pub fn window_by_quadrature(&self, r1: f64, r2: f64) -> Result<f64> {
        check_radius(r1)?;
        let r0 = self.cfg.r0();
        let f = |r: f64| 2.0 * PI * r * self.density(r).unwrap_or(f64::NAN);
        if r2.is_finite() {
            return Ok(quad::integrate(f, r1, r2, QUAD_TOL, &[r0])?.value);
        }
        let cut = r1.max(TAIL_START * r0);
        let head = quad::integrate(f, r1, cut, QUAD_TOL, &[r0])?.value;
        Ok(head + 2.0 * PI * self.a_sq * (-self.b()).exp() * power_tail(self.b(), r0, cut))
    }

    pub fn summary(&self) -> GroundStateSummary {
        GroundStateSummary {
            b: self.b(),
            r0: self.cfg.r0(),
            a_sq: self.a_sq,
            b_sq: self.b_sq(),
            r_beta: self.ratio_outside_inside(),
            w_inside: self.w_inside(),
            w_outside: self.w_outside(),
        }
    }
}

/// |A|² obtained as 1 / (2π∫|φ|² r dr at |A| = 1), by quadrature only.
pub fn normalization_by_quadrature(cfg: &CylinderConfig) -> Result<f64> {
    check_unbroken_susy(cfg).require()?;
    let beta = cfg.beta();
    let r0 = cfg.r0();
    let b = cfg.b();
    let unit = |r: f64| {
        let phi_sq = if r <= r0 {
            (-beta * r * r).exp()
        } else {
            (-b).exp() * (r0 / r).powf(2.0 * b)
        };
        2.0 * PI * r * phi_sq
    };
    let cut = TAIL_START * r0;
    let q = quad::integrate(unit, 0.0, cut, QUAD_TOL * 1e-2, &[r0])?;
    Ok(1.0 / (q.value + 2.0 * PI * (-b).exp() * power_tail(b, r0, cut)))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GroundStateSummary {
    pub b: f64,
    pub r0: f64,
    pub a_sq: f64,
    pub b_sq: f64,
    pub r_beta: f64,
    pub w_inside: f64,
    pub w_outside: f64,
}

/// Sample points in units of r₀.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadialGrid {
    pub r_over_r0: Vec<f64>,
}

impl RadialGrid {
    pub const DEFAULT_MAX: f64 = 5.0;
    pub const DEFAULT_POINTS: usize = 501;

    pub fn uniform(max: f64, points: usize) -> Result<Self> {
        if !(max > 0.0 && max.is_finite()) || points < 2 {
            return Err(Error::Config(format!(
                "grid needs max > 0 and at least 2 points, got {max}, {points}"
            )));
        }
        let step = max / (points - 1) as f64;
        Ok(Self {
            r_over_r0: (0..points).map(|i| i as f64 * step).collect(),
        })
    }
}

impl Default for RadialGrid {
    fn default() -> Self {
        Self::uniform(Self::DEFAULT_MAX, Self::DEFAULT_POINTS).expect("default grid is valid")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensityColumn {
    pub b: f64,
    pub a_sq: f64,
    /// |φ|² in units of 1/r₀², one entry per grid point.
    pub density: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Figure1Table {
    pub r_over_r0: Vec<f64>,
    pub columns: Vec<DensityColumn>,
}

/// Normalized ground-state densities over r/r₀ for several b (r₀ = 1).
pub fn figure1_profile(b_values: &[f64], grid: &RadialGrid) -> Result<Figure1Table> {
    if b_values.is_empty() {
        return Err(Error::Config("figure 1 needs at least one b value".into()));
    }
    let mut columns = Vec::with_capacity(b_values.len());
    for &b in b_values {
        let gs = build_ground_state(&CylinderConfig::dimensionless(b, 1.0)?)?;
        let density = grid
            .r_over_r0
            .iter()
            .map(|&x| gs.density(x))
            .collect::<Result<Vec<_>>>()?;
        columns.push(DensityColumn {
            b,
            a_sq: gs.a_sq,
            density,
        });
    }
    Ok(Figure1Table {
        r_over_r0: grid.r_over_r0.clone(),
        columns,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Figure2Row {
    pub b: f64,
    pub r_beta: f64,
    pub w_inside: f64,
    pub w_outside: f64,
}

/// R_β sampled uniformly on [b_min, b_max].
pub fn figure2_curve(b_min: f64, b_max: f64, points: usize) -> Result<Vec<Figure2Row>> {
    if !(b_max >= b_min) || points < 2 {
        return Err(Error::Config(format!(
            "figure 2 needs b_min <= b_max and at least 2 points, got [{b_min}, {b_max}], {points}"
        )));
    }
    let step = (b_max - b_min) / (points - 1) as f64;
    (0..points)
        .map(|i| {
            let b = if i + 1 == points {
                b_max
            } else {
                b_min + i as f64 * step
            };
            let gs = build_ground_state(&CylinderConfig::dimensionless(b, 1.0)?)?;
            Ok(Figure2Row {
                b,
                r_beta: gs.ratio_outside_inside(),
                w_inside: gs.w_inside(),
                w_outside: gs.w_outside(),
            })
        })
        .collect()
}

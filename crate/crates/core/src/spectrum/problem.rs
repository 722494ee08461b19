use serde::{Deserialize, Serialize};

use super::PiecewiseRadial;
use crate::error::{Error, Result};
use crate::model::{check_unbroken_susy, CylinderConfig, SectorLabel};
use crate::specfun::{bessel_jy, bessel_k_pair, hyp1f1, hyp1f1_derivative};

/// Largest |m| + b accepted, keeping every Bessel order inside the supported range.
const MAX_ORDER: f64 = 60.0;

/// One (sector, m) radial eigenproblem in units where r₀ = 1 and energies are in 1/r₀².
///
/// The effective potential is
/// V(r) = m²/r² + τ·2b(1 + σm) + b²r² for r < 1 and V(r) = (m + τσb)²/r² for r > 1,
/// and the eigenvalue is ε = E² − M².
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadialProblem {
    pub cfg: CylinderConfig,
    pub sector: SectorLabel,
    pub m: i32,
}

impl RadialProblem {
    pub fn new(cfg: &CylinderConfig, sector: SectorLabel, m: i32) -> Result<Self> {
        check_unbroken_susy(cfg).require()?;
        if m.unsigned_abs() as f64 + cfg.b() > MAX_ORDER {
            return Err(Error::Config(format!(
                "|m| + b must not exceed {MAX_ORDER}, got m = {m}, b = {}",
                cfg.b()
            )));
        }
        Ok(Self { cfg: *cfg, sector, m })
    }

    pub fn b(&self) -> f64 {
        self.cfg.b()
    }

    fn abs_m(&self) -> f64 {
        self.m.unsigned_abs() as f64
    }

    /// Constant interior term τ·2b(1 + σm).
    pub fn interior_shift(&self) -> f64 {
        self.sector.tau() * 2.0 * self.b() * (1.0 + self.sector.sigma() * self.m as f64)
    }

    /// ε_m = ε − τ·2b(1 + σm); for (φ, +) this is ε + 2b(1 + m).
    pub fn eps_m(&self, eps: f64) -> f64 {
        eps - self.interior_shift()
    }

    /// l = m + τσb, so l = m − b for (φ, +).
    pub fn exterior_order_signed(&self) -> f64 {
        self.m as f64 + self.sector.tau() * self.sector.sigma() * self.b()
    }

    pub fn l_eff(&self) -> f64 {
        self.exterior_order_signed().abs()
    }

    /// Kummer parameter a = (|m| + 1)/2 − ε_m/(4b) of the regular interior solution.
    pub fn kummer_a(&self, eps: f64) -> f64 {
        0.5 * (self.abs_m() + 1.0) - self.eps_m(eps) / (4.0 * self.b())
    }

    pub fn kummer_c(&self) -> f64 {
        self.abs_m() + 1.0
    }

    /// V(r), r in units of r₀.
    pub fn potential(&self, r: f64) -> f64 {
        let b = self.b();
        let m = self.m as f64;
        if r < 1.0 {
            m * m / (r * r) + self.interior_shift() + b * b * r * r
        } else {
            let l = self.exterior_order_signed();
            l * l / (r * r)
        }
    }

    /// Energy ratio E/M = √(1 + ε/(M r₀)²).
    pub fn e_over_m(&self, eps: f64) -> f64 {
        let mr0 = self.cfg.mass() * self.cfg.r0();
        (1.0 + eps / (mr0 * mr0)).sqrt()
    }

    fn label(&self) -> String {
        format!("{} m={}", self.sector, self.m)
    }
}

/// Regular interior solution r^{|m|} e^{−br²/2} M(a; |m|+1; br²) (C = 1) and its r-derivative.
pub fn interior_solution(p: &RadialProblem, eps: f64, r: f64) -> Result<(f64, f64)> {
    if !(0.0..=1.0 + 1e-12).contains(&r) {
        return Err(Error::Domain(format!(
            "interior solution needs 0 <= r <= r0, got r/r0 = {r}"
        )));
    }
    let b = p.b();
    let (a, c) = (p.kummer_a(eps), p.kummer_c());
    let z = b * r * r;
    let m0 = hyp1f1(a, c, z)?.value;
    let m1 = hyp1f1_derivative(a, c, z)?.value;
    let mu = p.abs_m();
    let g = (-0.5 * z).exp();
    let value = r.powf(mu) * g * m0;
    let lead = if mu == 0.0 { 0.0 } else { mu * r.powf(mu - 1.0) * m0 };
    let derivative = g * (lead + r.powf(mu + 1.0) * b * (2.0 * m1 - m0));
    Ok((value, derivative))
}

/// Exterior solution at r ≥ r₀.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "branch", rename_all = "snake_case")]
pub enum ExteriorSolution {
    /// ε < 0: K_l(κr) with κ = √(−ε) (D = 1).
    Decaying { order: f64, value: f64, derivative: f64 },
    /// ε > 0: J_l(kr), Y_l(kr) with k = √ε; not normalizable.
    Scattering {
        order: f64,
        j: f64,
        y: f64,
        j_derivative: f64,
        y_derivative: f64,
    },
}

pub fn exterior_solution(p: &RadialProblem, eps: f64, r: f64) -> Result<ExteriorSolution> {
    if !(r >= 1.0 - 1e-12) {
        return Err(Error::Domain(format!(
            "exterior solution needs r >= r0, got r/r0 = {r}"
        )));
    }
    let order = p.l_eff();
    if eps == 0.0 {
        return Err(Error::Degenerate(
            "eps = 0 has no Bessel exterior; the zero-energy state is handled by the groundstate module".into(),
        ));
    }
    if eps < 0.0 {
        let kappa = (-eps).sqrt();
        let k = bessel_k_pair(order, kappa * r)?;
        Ok(ExteriorSolution::Decaying {
            order,
            value: k.k,
            derivative: kappa * k.kp,
        })
    } else {
        let kw = eps.sqrt();
        let jy = bessel_jy(order, kw * r)?;
        Ok(ExteriorSolution::Scattering {
            order,
            j: jy.j,
            y: jy.y,
            j_derivative: kw * jy.jp,
            y_derivative: kw * jy.yp,
        })
    }
}

impl PiecewiseRadial for RadialProblem {
    fn describe(&self) -> String {
        self.label()
    }

    fn matching_radius(&self) -> f64 {
        1.0
    }

    fn interior(&self, eps: f64, r: f64) -> Result<(f64, f64)> {
        interior_solution(self, eps, r)
    }

    fn exterior(&self, eps: f64, r: f64) -> Result<(f64, f64)> {
        match exterior_solution(self, eps, r)? {
            ExteriorSolution::Decaying { value, derivative, .. } => Ok((value, derivative)),
            ExteriorSolution::Scattering { .. } => Err(Error::Domain(format!(
                "decaying exterior solution needs eps < 0, got {eps}"
            ))),
        }
    }

    /// r φ'/φ at r₀ = |m| − b + 2b (a/c) M(a+1; c+1; b) / M(a; c; b).
    fn interior_log_derivative(&self, eps: f64) -> Result<(f64, f64)> {
        let b = self.b();
        let (a, c) = (self.kummer_a(eps), self.kummer_c());
        let m0 = hyp1f1(a, c, b)?.value;
        let m1 = hyp1f1_derivative(a, c, b)?.value;
        Ok((self.abs_m() - b + 2.0 * b * m1 / m0, m0))
    }

    /// r K'_l(κr)/K_l(κr) at r₀ = l − κ K_{l+1}(κ)/K_l(κ).
    fn exterior_log_derivative(&self, eps: f64) -> Result<f64> {
        if !(eps < 0.0) {
            return Err(Error::Domain(format!(
                "exterior log-derivative needs eps < 0, got {eps}"
            )));
        }
        let kappa = (-eps).sqrt();
        let nu = self.l_eff();
        let k = bessel_k_pair(nu, kappa)?;
        Ok(nu - kappa * k.k_next / k.k)
    }

    /// −(b² + 4b) in units of 1/r₀².
    fn default_eps_min(&self) -> f64 {
        let b = self.b();
        -(b * b + 4.0 * b)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ThresholdKind {
    /// Interior matches r^{−|l|} at ε = 0 with |l| > 1: a normalizable zero mode.
    ZeroMode,
    /// Interior matches r^{−|l|} (or a constant for l = 0) at ε = 0 but |l| ≤ 1, so
    /// the tail is not square integrable.
    NonNormalizable,
    /// No zero-energy match.
    None,
}

/// Exact ε = 0 analysis: the exterior solutions are r^{±|l|} and the interior one
/// is the ₁F₁ solution at a = (|m|+1)/2 + τ(1 + σm)/2.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThresholdAnalysis {
    pub interior_log_derivative: f64,
    pub exterior_order: f64,
    /// L_in(0) + |l|, zero for a match with the decaying power law.
    pub mismatch: f64,
    pub kind: ThresholdKind,
}

/// Tolerance on L_in(0) + |l| for a zero-energy match.
pub const THRESHOLD_MATCH_TOL: f64 = 1e-9;

pub fn threshold_analysis(p: &RadialProblem) -> Result<ThresholdAnalysis> {
    let (lin, _) = p.interior_log_derivative(0.0)?;
    let l = p.l_eff();
    let mismatch = lin + l;
    // for l = 0 the bounded zero-energy exterior solution is the constant
    let matches = mismatch.abs() <= THRESHOLD_MATCH_TOL * (1.0 + l);
    let kind = match (matches, l > 1.0) {
        (true, true) => ThresholdKind::ZeroMode,
        (true, false) => ThresholdKind::NonNormalizable,
        _ => ThresholdKind::None,
    };
    Ok(ThresholdAnalysis {
        interior_log_derivative: lin,
        exterior_order: l,
        mismatch,
        kind,
    })
}

/// Normalized ε = 0 state with interior coefficient C and exterior tail D r^{−|l|}.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZeroMode {
    pub problem: RadialProblem,
    pub interior_coeff: f64,
    pub exterior_coeff: f64,
    pub norm: f64,
    pub nodes: usize,
}

impl ZeroMode {
    pub fn wavefunction(&self, r: f64) -> Result<f64> {
        if r <= 1.0 {
            Ok(self.interior_coeff * interior_solution(&self.problem, 0.0, r)?.0)
        } else {
            Ok(self.exterior_coeff * r.powf(-self.problem.l_eff()))
        }
    }
}

pub fn zero_mode(p: &RadialProblem) -> Result<Option<ZeroMode>> {
    let t = threshold_analysis(p)?;
    if t.kind != ThresholdKind::ZeroMode {
        return Ok(None);
    }
    let l = p.l_eff();
    let v0 = interior_solution(p, 0.0, 1.0)?.0;
    let f = |r: f64| {
        let v = interior_solution(p, 0.0, r).map(|x| x.0).unwrap_or(f64::NAN);
        v * v * r
    };
    let inner = crate::quad::integrate_rel(f, 0.0, 1.0, 1e-13, &[])?.value;
    // D = v0 from continuity at r₀ = 1; ∫₁^∞ r^{1−2l} dr = 1/(2l − 2)
    let outer = v0 * v0 / (2.0 * l - 2.0);
    let raw = 2.0 * std::f64::consts::PI * (inner + outer);
    let c = 1.0 / raw.sqrt();
    let nodes = super::search::count_interior_nodes(p, 0.0)?;
    Ok(Some(ZeroMode {
        problem: *p,
        interior_coeff: c,
        exterior_coeff: c * v0,
        norm: c * c * raw,
        nodes,
    }))
}

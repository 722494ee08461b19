//! Charged-cylinder configuration, the piecewise radial electric field, and the
//! condition βr₀² > 1 for a normalizable zero-energy ground state.
//!
//! Natural units ħ = c = 1 are used throughout. The charge density `rho`
//! carries the elementary-charge factor of the magnetic coupling, so that
//! η = κ_n / 2M and β = ρη/2. All radial problems downstream depend on the
//! configuration only through the dimensionless strength b = βr₀².

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::constants::{PhysicalConstants, REFERENCE_LAMBDA_MIN_C_PER_CM};
use crate::error::{Error, Result};

/// Uniformly charged infinite cylinder and the neutral particle moving around it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CylinderConfig {
    rho: f64,
    r0: f64,
    kappa_n: f64,
    mass: f64,
}

impl CylinderConfig {
    pub fn new(rho: f64, r0: f64, kappa_n: f64, mass: f64) -> Result<Self> {
        for (name, v) in [("rho", rho), ("r0", r0), ("kappa_n", kappa_n), ("mass", mass)] {
            if !v.is_finite() {
                return Err(Error::Config(format!("{name} must be finite, got {v}")));
            }
        }
        if r0 <= 0.0 {
            return Err(Error::Config(format!("r0 must be positive, got {r0}")));
        }
        if mass <= 0.0 {
            return Err(Error::Config(format!("mass must be positive, got {mass}")));
        }
        let cfg = Self { rho, r0, kappa_n, mass };
        if cfg.beta() <= 0.0 {
            return Err(Error::Config(format!(
                "beta = rho*kappa_n/(4M) must be positive (attractive sector), got {}; {}",
                cfg.beta(),
                ConstraintReport::for_strength(cfg.b())
            )));
        }
        Ok(cfg)
    }

    /// Configuration with a given b = βr₀², using M = 1/r₀ and κ_n = 1 as the
    /// (irrelevant) scale choice.
    pub fn dimensionless(b: f64, r0: f64) -> Result<Self> {
        if !(b.is_finite() && r0.is_finite() && r0 > 0.0) {
            return Err(Error::Config(format!(
                "need finite b and r0 > 0, got b = {b}, r0 = {r0}"
            )));
        }
        let mass = 1.0 / r0;
        let kappa_n = 1.0;
        // β = ρκ/(4M) = b/r0²
        let rho = 4.0 * mass * b / (kappa_n * r0 * r0);
        Self::new(rho, r0, kappa_n, mass)
    }

    /// Natural-unit configuration from SI inputs. Lengths stay in metres and
    /// the mass becomes the inverse reduced Compton wavelength M c/ħ.
    ///
    /// The dimensionless strength is b = ρ r₀² e κ_n / (4 ε₀ M c²); ħ cancels.
    pub fn from_si(rho_c_per_m3: f64, r0_m: f64, mass_kg: f64, kappa_n: f64, k: &PhysicalConstants) -> Result<Self> {
        if !(mass_kg > 0.0) {
            return Err(Error::Config(format!("mass must be positive, got {mass_kg}")));
        }
        if !(r0_m > 0.0) {
            return Err(Error::Config(format!("r0 must be positive, got {r0_m}")));
        }
        let b = si_strength(rho_c_per_m3, r0_m, mass_kg, kappa_n, k);
        let mass = mass_kg * k.c / k.hbar;
        let eta = kappa_n / (2.0 * mass);
        let rho = 2.0 * b / (r0_m * r0_m * eta);
        Self::new(rho, r0_m, kappa_n, mass)
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn r0(&self) -> f64 {
        self.r0
    }

    pub fn kappa_n(&self) -> f64 {
        self.kappa_n
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    /// η = eκ_n / 2M (e absorbed into ρ).
    pub fn eta(&self) -> f64 {
        self.kappa_n / (2.0 * self.mass)
    }

    /// β = ρη/2, units 1/length².
    pub fn beta(&self) -> f64 {
        self.rho * self.eta() / 2.0
    }

    /// Dimensionless strength b = βr₀².
    pub fn b(&self) -> f64 {
        self.beta() * self.r0 * self.r0
    }

    /// Charge per unit length λ = ρπr₀².
    pub fn lambda_lin(&self) -> f64 {
        self.rho * PI * self.r0 * self.r0
    }
}

/// b = ρ r₀² e κ / (4 ε₀ M c²) for SI inputs.
pub fn si_strength(rho_c_per_m3: f64, r0_m: f64, mass_kg: f64, kappa_n: f64, k: &PhysicalConstants) -> f64 {
    rho_c_per_m3 * r0_m * r0_m * k.e * kappa_n / (4.0 * k.epsilon0 * mass_kg * k.c * k.c)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Component {
    /// Upper (large) Dirac component.
    Phi,
    /// Lower component, the supersymmetric partner.
    Chi,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Spin {
    Plus,
    Minus,
}

/// One of the four decoupled radial problems.
///
/// All sign conventions come from the master operator
/// `p² + τ η (∇·E + 2σ (E×p)₃) + η²E²` with τ = −1 for φ, +1 for χ and
/// σ = +1 / −1 for the two spin projections.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SectorLabel {
    pub component: Component,
    pub spin: Spin,
}

impl SectorLabel {
    pub const PHI_PLUS: SectorLabel = SectorLabel::new(Component::Phi, Spin::Plus);
    pub const PHI_MINUS: SectorLabel = SectorLabel::new(Component::Phi, Spin::Minus);
    pub const CHI_PLUS: SectorLabel = SectorLabel::new(Component::Chi, Spin::Plus);
    pub const CHI_MINUS: SectorLabel = SectorLabel::new(Component::Chi, Spin::Minus);
    pub const ALL: [SectorLabel; 4] = [Self::PHI_PLUS, Self::PHI_MINUS, Self::CHI_PLUS, Self::CHI_MINUS];

    pub const fn new(component: Component, spin: Spin) -> Self {
        Self { component, spin }
    }

    /// Sign of the field-gradient coupling: −1 for φ, +1 for χ.
    pub fn tau(&self) -> f64 {
        match self.component {
            Component::Phi => -1.0,
            Component::Chi => 1.0,
        }
    }

    /// Spin projection, selecting the ± in (1 ± m).
    pub fn sigma(&self) -> f64 {
        match self.spin {
            Spin::Plus => 1.0,
            Spin::Minus => -1.0,
        }
    }
}

impl fmt::Display for SectorLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self.component {
            Component::Phi => "phi",
            Component::Chi => "chi",
        };
        let s = match self.spin {
            Spin::Plus => '+',
            Spin::Minus => '-',
        };
        write!(f, "{c}{s}")
    }
}

impl FromStr for SectorLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_lowercase();
        let (comp, spin) = if let Some(rest) = t.strip_prefix("phi") {
            (Component::Phi, rest)
        } else if let Some(rest) = t.strip_prefix("chi") {
            (Component::Chi, rest)
        } else {
            return Err(Error::Domain(format!("unknown sector '{s}'")));
        };
        let spin = match spin {
            "+" | "plus" | "_plus" => Spin::Plus,
            "-" | "minus" | "_minus" => Spin::Minus,
            _ => return Err(Error::Domain(format!("unknown spin in sector '{s}'"))),
        };
        Ok(Self::new(comp, spin))
    }
}

/// Radial field magnitude |E(r)|: ρr/2 inside the cylinder, ρr₀²/2r outside.
pub fn evaluate_field(cfg: &CylinderConfig, r: f64) -> Result<f64> {
    if !(r >= 0.0) {
        return Err(Error::Domain(format!("radius must be non-negative, got {r}")));
    }
    let r0 = cfg.r0();
    Ok(if r <= r0 {
        cfg.rho() * r / 2.0
    } else {
        // r0/r is exactly 1 at the boundary, so both branches agree bit for bit
        cfg.rho() * r0 * (r0 / r) / 2.0
    })
}

/// ∇·E: ρ inside (r ≤ r₀, the boundary taking the interior value), 0 outside.
pub fn field_divergence(cfg: &CylinderConfig, r: f64) -> Result<f64> {
    if !(r >= 0.0) {
        return Err(Error::Domain(format!("radius must be non-negative, got {r}")));
    }
    Ok(if r <= cfg.r0() { cfg.rho() } else { 0.0 })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConstraintReport {
    pub satisfied: bool,
    pub b: f64,
    /// b − 1
    pub margin: f64,
}

impl ConstraintReport {
    pub fn for_strength(b: f64) -> Self {
        Self {
            satisfied: b > 1.0,
            b,
            margin: b - 1.0,
        }
    }

    /// `Ok(())` when satisfied, otherwise the violation error carrying this report.
    pub fn require(self) -> Result<()> {
        if self.satisfied {
            Ok(())
        } else {
            Err(Error::UnbrokenSusyViolation { report: self })
        }
    }
}

impl fmt::Display for ConstraintReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "beta*r0^2 = {} ({}; margin {:+}); normalizable ground state requires beta*r0^2 > 1",
            self.b,
            if self.satisfied { "satisfied" } else { "violated" },
            self.margin
        )
    }
}

/// Strict test b > 1. At b = 1 the exterior norm ∫ r^{1−2b} dr diverges logarithmically.
pub fn check_unbroken_susy(cfg: &CylinderConfig) -> ConstraintReport {
    ConstraintReport::for_strength(cfg.b())
}

/// Estimate of |λ|_min = 4π M c² / |e κ_n| and its conversion to C/cm.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LambdaMinEstimate {
    pub mass_kg: f64,
    pub kappa_n: f64,
    /// 4πMc²/|eκ| with Mc² in erg and e in statC: statC/cm.
    pub formula_statc_per_cm: f64,
    /// Same quantity converted with 1 C = 10c statC.
    pub gaussian_c_per_cm: f64,
    /// λ_min from b = λ e κ /(4π ε₀ M c²) = 1, i.e. with ∇·E = ρ in
    /// Heaviside–Lorentz units carried consistently to SI.
    pub heaviside_lorentz_c_per_cm: f64,
    /// Reference figure 20.62×10⁻³ C/cm.
    pub reference_c_per_cm: f64,
    /// reference / gaussian_c_per_cm
    pub discrepancy_factor: f64,
    /// reference / heaviside_lorentz_c_per_cm
    pub heaviside_lorentz_discrepancy_factor: f64,
    pub conversion_path: Vec<String>,
}

pub fn lambda_min_si(mass_kg: f64, kappa: f64) -> Result<LambdaMinEstimate> {
    lambda_min_si_with(mass_kg, kappa, &PhysicalConstants::CODATA_2018)
}

pub fn lambda_min_si_with(mass_kg: f64, kappa: f64, k: &PhysicalConstants) -> Result<LambdaMinEstimate> {
    if !(mass_kg.is_finite() && mass_kg > 0.0) {
        return Err(Error::Domain(format!("mass must be positive, got {mass_kg}")));
    }
    if kappa == 0.0 || !kappa.is_finite() {
        return Err(Error::Domain(format!("kappa must be finite and nonzero, got {kappa}")));
    }
    let rest_erg = k.rest_energy_erg(mass_kg);
    let e_g = k.e_statcoulomb();
    let formula = 4.0 * PI * rest_erg / (e_g * kappa.abs());
    let gaussian = formula / k.statc_per_coulomb();
    // C/m -> C/cm
    let hl = 4.0 * PI * k.epsilon0 * mass_kg * k.c * k.c / (k.e * kappa.abs()) / 100.0;
    let conversion_path = vec![
        format!("Mc^2 = {mass_kg:e} kg * c^2 * 1e7 = {rest_erg:e} erg"),
        format!("e = {:e} C * 10c = {e_g:e} statC", k.e),
        format!("4*pi*Mc^2/|e*kappa| = {formula:e} statC/cm (kappa = {kappa})"),
        format!("/ (10c = {:e} statC per C) = {gaussian:e} C/cm", k.statc_per_coulomb()),
        format!("consistent SI reading (div E = rho, b = lambda*e*kappa/(4*pi*eps0*Mc^2)): {hl:e} C/cm"),
    ];
    Ok(LambdaMinEstimate {
        mass_kg,
        kappa_n: kappa,
        formula_statc_per_cm: formula,
        gaussian_c_per_cm: gaussian,
        heaviside_lorentz_c_per_cm: hl,
        reference_c_per_cm: REFERENCE_LAMBDA_MIN_C_PER_CM,
        discrepancy_factor: REFERENCE_LAMBDA_MIN_C_PER_CM / gaussian,
        heaviside_lorentz_discrepancy_factor: REFERENCE_LAMBDA_MIN_C_PER_CM / hl,
        conversion_path,
    })
}

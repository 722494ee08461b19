//! Physical constants used at the SI boundary.
//!
//! Values are CODATA 2018 (exact SI-defining values for `c`, `e`, `hbar`).
//! The neutron magnetic moment is −1.91304273 μ_N; only its magnitude enters the
//! confinement condition, and the default `kappa_n` is the rounded 1.913.

use serde::{Deserialize, Serialize};

/// Charge per length quoted for |λ|_min, in C/cm.
pub const REFERENCE_LAMBDA_MIN_C_PER_CM: f64 = 20.62e-3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalConstants {
    /// Speed of light, m/s.
    pub c: f64,
    /// Elementary charge, C.
    pub e: f64,
    /// Reduced Planck constant, J·s.
    pub hbar: f64,
    /// Vacuum permittivity, F/m.
    pub epsilon0: f64,
    /// Neutron mass, kg.
    pub neutron_mass: f64,
    /// |κ_n|, anomalous moment in nuclear magnetons.
    pub kappa_n: f64,
}

impl PhysicalConstants {
    pub const CODATA_2018: PhysicalConstants = PhysicalConstants {
        c: 299_792_458.0,
        e: 1.602_176_634e-19,
        hbar: 1.054_571_817e-34,
        epsilon0: 8.854_187_812_8e-12,
        neutron_mass: 1.674_927_498_04e-27,
        kappa_n: 1.913,
    };

    /// Gaussian elementary charge in statC.
    pub fn e_statcoulomb(&self) -> f64 {
        self.e * self.statc_per_coulomb()
    }

    pub fn statc_per_coulomb(&self) -> f64 {
        // 1 C = 10·c statC with c in m/s
        self.c * 10.0
    }

    /// Rest energy in erg.
    pub fn rest_energy_erg(&self, mass_kg: f64) -> f64 {
        mass_kg * self.c * self.c * 1.0e7
    }
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self::CODATA_2018
    }
}

//! Gamma-function helpers for the Bessel and confluent hypergeometric routines.

use std::f64::consts::PI;

/// Taylor coefficients of 1/Γ(z) = Σ_{k≥1} c_k z^k (Abramowitz & Stegun 6.1.34).
const RGAMMA_TAYLOR: [f64; 26] = [
    1.0,
    0.577_215_664_901_532_9,
    -0.655_878_071_520_253_8,
    -0.042_002_635_034_095_2,
    0.166_538_611_382_291_5,
    -0.042_197_734_555_544_3,
    -0.009_621_971_527_877_0,
    0.007_218_943_246_663_0,
    -0.001_165_167_591_859_1,
    -0.000_215_241_674_114_9,
    0.000_128_050_282_388_2,
    -0.000_020_134_854_780_7,
    -0.000_001_250_493_482_1,
    0.000_001_133_027_232_0,
    -0.000_000_205_633_841_7,
    0.000_000_006_116_095_0,
    0.000_000_005_002_007_5,
    -0.000_000_001_181_274_6,
    0.000_000_000_104_342_7,
    0.000_000_000_007_782_3,
    -0.000_000_000_003_696_8,
    0.000_000_000_000_510_0,
    -0.000_000_000_000_020_6,
    -0.000_000_000_000_005_4,
    0.000_000_000_000_001_4,
    0.000_000_000_000_000_1,
];

/// Temme's auxiliary gamma combinations for |μ| ≤ 1/2:
/// `(gam1, gam2, 1/Γ(1+μ), 1/Γ(1−μ))` with
/// gam1 = (1/Γ(1−μ) − 1/Γ(1+μ)) / 2μ and gam2 = (1/Γ(1−μ) + 1/Γ(1+μ)) / 2.
pub(crate) fn temme_gammas(mu: f64) -> (f64, f64, f64, f64) {
    debug_assert!(mu.abs() <= 0.5 + 1e-12);
    // 1/Γ(1+x) = Σ_{k≥1} c_k x^{k-1}
    let mut even = 0.0; // Σ_{k even} c_k μ^{k-2}
    let mut odd = 0.0; // Σ_{k odd} c_k μ^{k-1}
    let mu2 = mu * mu;
    for j in (0..13).rev() {
        odd = odd * mu2 + RGAMMA_TAYLOR[2 * j];
        even = even * mu2 + RGAMMA_TAYLOR[2 * j + 1];
    }
    let gam1 = -even;
    let gam2 = odd;
    let gampl = odd + mu * even;
    let gammi = odd - mu * even;
    (gam1, gam2, gampl, gammi)
}

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// ln|Γ(x)| and the sign of Γ(x) for real x not a non-positive integer.
pub(crate) fn ln_gamma(x: f64) -> (f64, f64) {
    if x < 0.5 {
        // reflection Γ(x)Γ(1−x) = π / sin(πx)
        let s = sin_pi(x);
        let (lg, sg) = ln_gamma(1.0 - x);
        return ((PI / s.abs()).ln() - lg, s.signum() * sg);
    }
    let x = x - 1.0;
    let mut acc = LANCZOS[0];
    let t = x + LANCZOS_G + 0.5;
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        acc += c / (x + i as f64);
    }
    (0.5 * (2.0 * PI).ln() + (x + 0.5) * t.ln() - t + acc.ln(), 1.0)
}

/// 1/Γ(x), zero at the poles.
#[cfg(test)]
pub(crate) fn rgamma(x: f64) -> f64 {
    if x <= 0.0 && x == x.floor() {
        return 0.0;
    }
    let (lg, s) = ln_gamma(x);
    s * (-lg).exp()
}

/// sin(πx) with exact zeros at integers.
pub(crate) fn sin_pi(x: f64) -> f64 {
    let r = x.rem_euclid(2.0);
    if r == 0.0 || r == 1.0 {
        return 0.0;
    }
    if r == 0.5 {
        return 1.0;
    }
    if r == 1.5 {
        return -1.0;
    }
    (PI * r).sin()
}

/// cos(πx) with exact zeros at half-integers.
pub(crate) fn cos_pi(x: f64) -> f64 {
    let r = x.rem_euclid(2.0);
    if r == 0.5 || r == 1.5 {
        return 0.0;
    }
    if r == 0.0 {
        return 1.0;
    }
    if r == 1.0 {
        return -1.0;
    }
    (PI * r).cos()
}

use super::dd::{Dd, DD_EPS};
use super::gamma::ln_gamma;
use super::{FunEvalResult, Method, MAX_SERIES_TERMS};
use crate::error::{Error, Result};

const EPS: f64 = f64::EPSILON;
/// Above this |z| the large-argument expansion is tried first.
const ASYMPTOTIC_MIN_Z: f64 = 100.0;
/// Cancellation ratio Σ|t| / |Σt| above which the series is redone in double-double.
const CANCELLATION_LIMIT: f64 = 64.0;
/// Relative error estimate above which double-double is abandoned for wider floats.
const MP_TRIGGER: f64 = 1e-15;
const MAX_BITS: usize = 4096;

fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x == x.floor()
}

/// Kummer's function M(a; b; z) = ₁F₁(a; b; z).
pub fn hyp1f1(a: f64, b: f64, z: f64) -> Result<FunEvalResult> {
    if !(a.is_finite() && b.is_finite() && z.is_finite()) {
        return Err(Error::Domain(format!(
            "1F1 needs finite arguments, got ({a}, {b}, {z})"
        )));
    }
    if is_nonpositive_integer(b) {
        return Err(Error::Pole(format!("1F1(a; b; z) has a pole at b = {b}")));
    }
    if z == 0.0 || a == 0.0 {
        return Ok(FunEvalResult::new(1.0, 0.0, Method::PowerSeries));
    }
    if is_nonpositive_integer(a) {
        // terminating polynomial; no cancellation issue for either sign of z when b > 0
        let s = series(Dd::from_f64(a), b, z)?;
        return Ok(FunEvalResult::new(s.sum, s.err, Method::PowerSeries));
    }
    if z > 0.0 {
        if z > ASYMPTOTIC_MIN_Z {
            if let Some(r) = asymptotic(a, b, z) {
                return Ok(r);
            }
        }
        let s = series(Dd::from_f64(a), b, z)?;
        return Ok(FunEvalResult::new(s.sum, s.err, Method::PowerSeries));
    }

    // z < 0: M(a; b; z) = e^z M(b − a; b; −z)
    let c = b - a;
    let w = -z;
    if w > ASYMPTOTIC_MIN_Z {
        if let Some(r) = asymptotic(c, b, w) {
            let ez = z.exp();
            return Ok(FunEvalResult::new(
                ez * r.value,
                ez * r.abs_err_estimate,
                Method::Asymptotic,
            ));
        }
    }
    // b − a is carried exactly; cancelling sums are sensitive to it
    let inner = series(Dd::sum(b, -a), b, w).map_err(|e| match e {
        Error::Precision {
            context,
            detail,
            partial,
        } => Error::Precision {
            context,
            detail,
            partial: partial.map(|p| p * z.exp()),
        },
        other => other,
    })?;
    let ez = z.exp();
    Ok(FunEvalResult::new(
        ez * inner.sum,
        ez * inner.err + EPS * (ez * inner.sum).abs(),
        Method::KummerTransform,
    ))
}

/// d/dz M(a; b; z) = (a/b) M(a+1; b+1; z).
pub fn hyp1f1_derivative(a: f64, b: f64, z: f64) -> Result<FunEvalResult> {
    if a == 0.0 {
        return Ok(FunEvalResult::new(0.0, 0.0, Method::PowerSeries));
    }
    let shifted = hyp1f1(a + 1.0, b + 1.0, z)?;
    let f = a / b;
    Ok(FunEvalResult::new(
        f * shifted.value,
        (f * shifted.abs_err_estimate).abs() + EPS * (f * shifted.value).abs(),
        shifted.method,
    ))
}

pub(crate) struct SeriesSum {
    pub sum: f64,
    pub err: f64,
}

fn series(a: Dd, b: f64, z: f64) -> Result<SeriesSum> {
    let s = series_f64(a.to_f64(), b, z)?;
    if s.abs_sum <= CANCELLATION_LIMIT * s.sum.abs() {
        return Ok(SeriesSum { sum: s.sum, err: s.err });
    }
    let d = series_dd(a, b, z)?;
    if d.err <= MP_TRIGGER * d.sum.abs() {
        return Ok(d);
    }
    // cancellation beyond double-double: estimate the lost bits and retry until settled
    let mut bits = 128 + ((s.abs_sum / d.sum.abs().max(f64::MIN_POSITIVE)).log2().ceil().max(0.0) as usize).min(2048);
    loop {
        let m = super::bigfloat::hyp1f1_series(a, b, z, bits)?;
        if m.err <= MP_TRIGGER * m.sum.abs() || bits >= MAX_BITS {
            return Ok(SeriesSum { sum: m.sum, err: m.err });
        }
        bits = (2 * bits).min(MAX_BITS);
    }
}

struct RawSum {
    sum: f64,
    err: f64,
    abs_sum: f64,
}

/// Same series with every term and partial sum carried in double-double.
fn series_dd(a: Dd, b: f64, z: f64) -> Result<SeriesSum> {
    let af = a.to_f64();
    let mut term = Dd::from_f64(1.0);
    let mut sum = Dd::from_f64(1.0);
    let mut abs_sum = 1.0_f64;
    for k in 0..MAX_SERIES_TERMS {
        let kf = k as f64;
        let num = (a + Dd::from_f64(kf)) * z;
        let den = Dd::sum(b, kf) * (kf + 1.0);
        term = term * num / den;
        sum = sum + term;
        let t = term.abs().to_f64();
        abs_sum += t;
        let next_ratio = ((af + kf + 1.0) * z / ((b + kf + 1.0) * (kf + 2.0))).abs();
        if t == 0.0 || (t <= DD_EPS * abs_sum && next_ratio < 0.9) {
            let value = sum.to_f64();
            // per-term relative error grows roughly linearly with the term index
            let rounding = (8.0 * kf + 12.0) * DD_EPS * abs_sum;
            let tail = t * next_ratio / (1.0 - next_ratio);
            return Ok(SeriesSum {
                sum: value,
                err: rounding + tail + 0.5 * EPS * value.abs(),
            });
        }
    }
    Err(Error::Precision {
        context: "1F1 series".into(),
        detail: format!("no convergence within {MAX_SERIES_TERMS} terms for ({af}, {b}, {z})"),
        partial: Some(sum.to_f64()),
    })
}

fn series_f64(a: f64, b: f64, z: f64) -> Result<RawSum> {
    let mut term = 1.0_f64;
    let mut sum = 1.0_f64;
    let mut abs_sum = 1.0_f64;
    // term k carries about 4k roundings from the product recurrence
    let mut weighted = 2.0_f64;
    for k in 0..MAX_SERIES_TERMS {
        let kf = k as f64;
        term *= (a + kf) * z / ((b + kf) * (kf + 1.0));
        sum += term;
        abs_sum += term.abs();
        weighted += (4.0 * kf + 6.0) * term.abs();
        if term == 0.0 {
            return Ok(RawSum {
                sum,
                err: EPS * weighted,
                abs_sum,
            });
        }
        if !sum.is_finite() {
            return Err(Error::precision(
                "1F1 series",
                format!("overflow at term {k} for ({a}, {b}, {z})"),
            ));
        }
        let next_ratio = ((a + kf + 1.0) * z / ((b + kf + 1.0) * (kf + 2.0))).abs();
        let small = term.abs() <= 0.5 * EPS * sum.abs() || term.abs() <= 1e-3 * EPS * abs_sum;
        if small && next_ratio < 0.9 {
            let tail = term.abs() * next_ratio / (1.0 - next_ratio);
            return Ok(RawSum {
                sum,
                err: EPS * weighted + tail,
                abs_sum,
            });
        }
    }
    Err(Error::Precision {
        context: "1F1 series".into(),
        detail: format!("no convergence within {MAX_SERIES_TERMS} terms for ({a}, {b}, {z})"),
        partial: Some(sum),
    })
}

/// Dominant large-z expansion Γ(b)/Γ(a) e^z z^{a−b} Σ (b−a)_k (1−a)_k / (k! z^k).
fn asymptotic(a: f64, b: f64, z: f64) -> Option<FunEvalResult> {
    if is_nonpositive_integer(a) {
        return None;
    }
    let mut term = 1.0_f64;
    let mut sum = 1.0_f64;
    let mut prev = f64::INFINITY;
    let mut converged = false;
    for k in 0..MAX_SERIES_TERMS {
        let kf = k as f64;
        term *= (b - a + kf) * (1.0 - a + kf) / ((kf + 1.0) * z);
        if term.abs() > prev {
            break;
        }
        prev = term.abs();
        sum += term;
        if term.abs() <= EPS * sum.abs() {
            converged = true;
            break;
        }
    }
    if !converged {
        return None;
    }
    let (lgb, sb) = ln_gamma(b);
    let (lga, sa) = ln_gamma(a);
    let log_mag = lgb - lga + z + (a - b) * z.ln() + sum.abs().ln();
    if log_mag > 709.0 {
        return None;
    }
    let value = sb * sa * sum.signum() * log_mag.exp();
    // lnΓ via Lanczos carries ~1e-15 relative error, amplified by the exponent size
    let rel = 4.0 * EPS * (1.0 + lgb.abs() + lga.abs() + z + ((a - b) * z.ln()).abs());
    Some(FunEvalResult::new(value, rel * value.abs(), Method::Asymptotic))
}

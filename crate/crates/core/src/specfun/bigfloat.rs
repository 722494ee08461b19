//! Wide-float summation of the ₁F₁ series for the rare parameter ranges where
//! Σ|t| exceeds |Σt| by more than double-double can absorb.

use astro_float::{BigFloat, RoundingMode};

use super::dd::Dd;
use super::hyp1f1::SeriesSum;
use super::MAX_SERIES_TERMS;
use crate::error::{Error, Result};

const RM: RoundingMode = RoundingMode::ToEven;

fn to_f64(x: &BigFloat) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    // decimal rendering is exact enough at double width and parses with correct rounding
    format!("{x}").parse().unwrap_or(f64::NAN)
}

pub(crate) fn hyp1f1_series(a: Dd, b: f64, z: f64, bits: usize) -> Result<SeriesSum> {
    let p = bits;
    let a_big = BigFloat::from_f64(a.hi, p).add(&BigFloat::from_f64(a.lo, p), p, RM);
    let b_big = BigFloat::from_f64(b, p);
    let z_big = BigFloat::from_f64(z, p);
    let unit = 2f64.powi(-(bits as i32 - 1));
    let af = a.to_f64();

    let mut term = BigFloat::from_f64(1.0, p);
    let mut sum = BigFloat::from_f64(1.0, p);
    let mut abs_sum = 1.0_f64;
    for k in 0..MAX_SERIES_TERMS {
        let kf = k as f64;
        let kb = BigFloat::from_f64(kf, p);
        let num = a_big.add(&kb, p, RM).mul(&z_big, p, RM);
        let den = b_big.add(&kb, p, RM).mul(&BigFloat::from_f64(kf + 1.0, p), p, RM);
        term = term.mul(&num, p, RM).div(&den, p, RM);
        sum = sum.add(&term, p, RM);
        let t = to_f64(&term).abs();
        abs_sum += t;
        let next_ratio = ((af + kf + 1.0) * z / ((b + kf + 1.0) * (kf + 2.0))).abs();
        if t == 0.0 || (t <= unit * abs_sum && next_ratio < 0.9) {
            let value = to_f64(&sum);
            let tail = t * next_ratio / (1.0 - next_ratio);
            return Ok(SeriesSum {
                sum: value,
                err: (8.0 * kf + 12.0) * unit * abs_sum + tail + 0.5 * f64::EPSILON * value.abs(),
            });
        }
    }
    Err(Error::Precision {
        context: "1F1 series".into(),
        detail: format!("no convergence within {MAX_SERIES_TERMS} terms at {bits} bits for ({af}, {b}, {z})"),
        partial: Some(to_f64(&sum)),
    })
}

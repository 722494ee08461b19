//! Bessel functions of real order via Temme's method: the order is split as
//! ν = μ + n with |μ| ≤ ½, the pair at μ comes from Temme's series (small x)
//! or Steed's / Temme's continued fractions (large x), and the pair is carried
//! to ν by the three-term recurrence.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::gamma::{cos_pi, sin_pi, temme_gammas};
use super::{FunEvalResult, Method};
use crate::error::{Error, Result};

const EPS: f64 = f64::EPSILON;
const FPMIN: f64 = 1e-300;
const MAXIT: usize = 100_000;
/// Temme series below, continued fractions above.
const X_SWITCH: f64 = 2.0;
const MAX_ORDER: f64 = 60.0;
const RESCALE: f64 = 1e250;

/// J_ν, Y_ν and their first derivatives at one point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BesselJY {
    pub nu: f64,
    pub x: f64,
    pub j: f64,
    pub y: f64,
    pub jp: f64,
    pub yp: f64,
    pub method: Method,
    /// Steps of the order recurrence.
    pub recurrence_steps: usize,
}

/// K_ν and K'_ν for ν ≥ 0 (negative orders are folded, K_{−ν} = K_ν).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BesselK {
    /// |ν|
    pub nu: f64,
    pub x: f64,
    pub k: f64,
    pub kp: f64,
    /// K_{|ν|+1}
    pub k_next: f64,
    pub method: Method,
    pub recurrence_steps: usize,
}

fn check_order(nu: f64) -> Result<()> {
    if !nu.is_finite() || nu.abs() > MAX_ORDER {
        return Err(Error::Domain(format!(
            "Bessel order must satisfy |nu| <= {MAX_ORDER}, got {nu}"
        )));
    }
    Ok(())
}

/// J_ν(x), Y_ν(x) and derivatives for real ν and x > 0.
pub fn bessel_jy(nu: f64, x: f64) -> Result<BesselJY> {
    check_order(nu)?;
    if !(x.is_finite() && x > 0.0) {
        return Err(Error::Domain(format!("bessel_jy needs x > 0, got {x}")));
    }
    if nu >= 0.0 {
        return jy_nonneg(nu, x);
    }
    let mu = -nu;
    let p = jy_nonneg(mu, x)?;
    let (c, s) = (cos_pi(mu), sin_pi(mu));
    Ok(BesselJY {
        nu,
        x,
        j: c * p.j - s * p.y,
        y: s * p.j + c * p.y,
        jp: c * p.jp - s * p.yp,
        yp: s * p.jp + c * p.yp,
        ..p
    })
}

pub fn bessel_j(nu: f64, z: f64) -> Result<FunEvalResult> {
    check_order(nu)?;
    if z == 0.0 {
        if nu == 0.0 {
            return Ok(FunEvalResult::new(1.0, 0.0, Method::PowerSeries));
        }
        if nu > 0.0 || nu == nu.floor() {
            return Ok(FunEvalResult::new(0.0, 0.0, Method::PowerSeries));
        }
        return Err(Error::Domain(format!("J_{nu}(0) is unbounded")));
    }
    if !(z > 0.0) {
        return Err(Error::Domain(format!("bessel_j needs z >= 0, got {z}")));
    }
    let r = bessel_jy(nu, z)?;
    Ok(FunEvalResult::new(r.j, jy_error(&r, r.j), r.method))
}

pub fn bessel_y(nu: f64, z: f64) -> Result<FunEvalResult> {
    check_order(nu)?;
    if z == 0.0 {
        return Err(Error::Domain(format!("Y_{nu}(z) is singular at z = 0")));
    }
    let r = bessel_jy(nu, z)?;
    Ok(FunEvalResult::new(r.y, jy_error(&r, r.y), r.method))
}

fn jy_error(r: &BesselJY, v: f64) -> f64 {
    let steps = r.recurrence_steps as f64;
    let scale = if r.x > r.nu.abs() {
        (r.j * r.j + r.y * r.y).sqrt()
    } else {
        v.abs()
    };
    EPS * (16.0 + steps) * scale
}

/// Bessel-pair at ν ≥ 0, x > 0.
fn jy_nonneg(xnu: f64, x: f64) -> Result<BesselJY> {
    let nl = if x < X_SWITCH {
        (xnu + 0.5).floor() as usize
    } else {
        ((xnu - x + 1.5).floor()).max(0.0) as usize
    };
    let xmu = xnu - nl as f64;
    let xmu2 = xmu * xmu;
    let xi = 1.0 / x;
    let xi2 = 2.0 * xi;
    let w = xi2 / PI;

    // CF1: J'_ν / J_ν
    let mut isign = 1.0;
    let mut h = (xnu * xi).max(FPMIN);
    let mut b = xi2 * xnu;
    let mut d = 0.0;
    let mut c = h;
    let mut ok = false;
    for _ in 0..MAXIT {
        b += xi2;
        d = b - d;
        if d.abs() < FPMIN {
            d = FPMIN;
        }
        c = b - 1.0 / c;
        if c.abs() < FPMIN {
            c = FPMIN;
        }
        d = 1.0 / d;
        let del = c * d;
        h *= del;
        if d < 0.0 {
            isign = -isign;
        }
        if (del - 1.0).abs() < EPS {
            ok = true;
            break;
        }
    }
    if !ok {
        return Err(Error::precision(
            "bessel_jy CF1",
            format!("no convergence at nu = {xnu}, x = {x}"),
        ));
    }

    // downward recurrence from ν to μ on an arbitrarily scaled pair
    let mut rjl = isign * 1e-30;
    let mut rjpl = h * rjl;
    let mut rjl1 = rjl;
    let mut rjp1 = rjpl;
    let mut fact = xnu * xi;
    for _ in 0..nl {
        let rjtemp = fact * rjl + rjpl;
        fact -= xi;
        rjpl = fact * rjtemp - rjl;
        rjl = rjtemp;
        if rjl.abs() > RESCALE {
            rjl /= RESCALE;
            rjpl /= RESCALE;
            rjl1 /= RESCALE;
            rjp1 /= RESCALE;
        }
    }
    if rjl == 0.0 {
        rjl = EPS;
    }
    let f = rjpl / rjl;

    let (rjmu, rymu, ry1, method);
    if x < X_SWITCH {
        let x2 = 0.5 * x;
        let pimu = PI * xmu;
        let fct = if pimu.abs() < EPS { 1.0 } else { pimu / pimu.sin() };
        let dd = -x2.ln();
        let e = xmu * dd;
        let fact2 = if e.abs() < EPS { 1.0 } else { e.sinh() / e };
        let (gam1, gam2, gampl, gammi) = temme_gammas(xmu);
        let mut ff = 2.0 / PI * fct * (gam1 * e.cosh() + gam2 * fact2 * dd);
        let ee = e.exp();
        let mut p = ee / (gampl * PI);
        let mut q = 1.0 / (ee * PI * gammi);
        let pimu2 = 0.5 * pimu;
        let fact3 = if pimu2.abs() < EPS { 1.0 } else { pimu2.sin() / pimu2 };
        let r = PI * pimu2 * fact3 * fact3;
        let mut cc = 1.0;
        let dsq = -x2 * x2;
        let mut sum = ff + r * q;
        let mut sum1 = p;
        let mut conv = false;
        for i in 1..MAXIT {
            let fi = i as f64;
            ff = (fi * ff + p + q) / (fi * fi - xmu2);
            cc *= dsq / fi;
            p /= fi - xmu;
            q /= fi + xmu;
            let del = cc * (ff + r * q);
            sum += del;
            let del1 = cc * p - fi * del;
            sum1 += del1;
            if del.abs() < (1.0 + sum.abs()) * EPS {
                conv = true;
                break;
            }
        }
        if !conv {
            return Err(Error::precision(
                "bessel_jy Temme series",
                format!("nu = {xnu}, x = {x}"),
            ));
        }
        let ry_mu = -sum;
        let ry_1 = -sum1 * xi2;
        let ry_mup = xmu * xi * ry_mu - ry_1;
        rjmu = w / (ry_mup - f * ry_mu);
        rymu = ry_mu;
        ry1 = ry_1;
        method = Method::PowerSeries;
    } else {
        // CF2 (Steed): p + iq = (J' + iY')/(J + iY)
        let mut a = 0.25 - xmu2;
        let mut p = -0.5 * xi;
        let mut q = 1.0;
        let br = 2.0 * x;
        let mut bi = 2.0;
        let mut fct = a * xi / (p * p + q * q);
        let mut cr = br + q * fct;
        let mut ci = bi + p * fct;
        let mut den = br * br + bi * bi;
        let mut dr = br / den;
        let mut di = -bi / den;
        let mut dlr = cr * dr - ci * di;
        let mut dli = cr * di + ci * dr;
        let mut temp = p * dlr - q * dli;
        q = p * dli + q * dlr;
        p = temp;
        let mut conv = false;
        for i in 2..MAXIT {
            a += 2.0 * (i as f64 - 1.0);
            bi += 2.0;
            dr = a * dr + br;
            di = a * di + bi;
            if dr.abs() + di.abs() < FPMIN {
                dr = FPMIN;
            }
            fct = a / (cr * cr + ci * ci);
            cr = br + cr * fct;
            ci = bi - ci * fct;
            if cr.abs() + ci.abs() < FPMIN {
                cr = FPMIN;
            }
            den = dr * dr + di * di;
            dr /= den;
            di /= -den;
            dlr = cr * dr - ci * di;
            dli = cr * di + ci * dr;
            temp = p * dlr - q * dli;
            q = p * dli + q * dlr;
            p = temp;
            if (dlr - 1.0).abs() + dli.abs() < EPS {
                conv = true;
                break;
            }
        }
        if !conv {
            return Err(Error::precision("bessel_jy CF2", format!("nu = {xnu}, x = {x}")));
        }
        let gam = (p - f) / q;
        let mut rj = (w / ((p - f) * gam + q)).sqrt();
        if rjl < 0.0 {
            rj = -rj;
        }
        rjmu = rj;
        rymu = rj * gam;
        let rymup = rymu * (p + q / gam);
        ry1 = xmu * xi * rymu - rymup;
        method = Method::ContinuedFraction;
    }

    let fct = rjmu / rjl;
    let rj = rjl1 * fct;
    let rjp = rjp1 * fct;
    let mut ymu = rymu;
    let mut y1 = ry1;
    for i in 1..=nl {
        let rytemp = (xmu + i as f64) * xi2 * y1 - ymu;
        ymu = y1;
        y1 = rytemp;
    }
    let ry = ymu;
    let ryp = xnu * xi * ymu - y1;
    Ok(BesselJY {
        nu: xnu,
        x,
        j: rj,
        y: ry,
        jp: rjp,
        yp: ryp,
        method: if nl > 0 { Method::Recurrence } else { method },
        recurrence_steps: nl,
    })
}

/// K_ν(x) and K'_ν(x) for real ν, x > 0.
pub fn bessel_k_pair(nu: f64, x: f64) -> Result<BesselK> {
    check_order(nu)?;
    if !(x.is_finite() && x > 0.0) {
        return Err(Error::Domain(format!("K_nu(x) needs x > 0, got {x}")));
    }
    let xnu = nu.abs();
    let nl = (xnu + 0.5).floor() as usize;
    let xmu = xnu - nl as f64;
    let xmu2 = xmu * xmu;
    let xi = 1.0 / x;
    let xi2 = 2.0 * xi;

    let (mut rkmu, mut rk1, method);
    if x < X_SWITCH {
        let x2 = 0.5 * x;
        let pimu = PI * xmu;
        let fct = if pimu.abs() < EPS { 1.0 } else { pimu / pimu.sin() };
        let d = -x2.ln();
        let e = xmu * d;
        let fact2 = if e.abs() < EPS { 1.0 } else { e.sinh() / e };
        let (gam1, gam2, gampl, gammi) = temme_gammas(xmu);
        let mut ff = fct * (gam1 * e.cosh() + gam2 * fact2 * d);
        let mut sum = ff;
        let ee = e.exp();
        let mut p = 0.5 * ee / gampl;
        let mut q = 0.5 / (ee * gammi);
        let mut c = 1.0;
        let dsq = x2 * x2;
        let mut sum1 = p;
        let mut conv = false;
        for i in 1..MAXIT {
            let fi = i as f64;
            ff = (fi * ff + p + q) / (fi * fi - xmu2);
            c *= dsq / fi;
            p /= fi - xmu;
            q /= fi + xmu;
            let del = c * ff;
            sum += del;
            let del1 = c * (p - fi * ff);
            sum1 += del1;
            if del.abs() < sum.abs() * EPS {
                conv = true;
                break;
            }
        }
        if !conv {
            return Err(Error::precision("bessel_k Temme series", format!("nu = {nu}, x = {x}")));
        }
        rkmu = sum;
        rk1 = sum1 * xi2;
        method = Method::PowerSeries;
    } else {
        // Temme's continued fraction with Steed's summation
        let mut b = 2.0 * (1.0 + x);
        let mut d = 1.0 / b;
        let mut h = d;
        let mut delh = d;
        let mut q1 = 0.0;
        let mut q2 = 1.0;
        let a1 = 0.25 - xmu2;
        let mut q = a1;
        let mut c = a1;
        let mut a = -a1;
        let mut s = 1.0 + q * delh;
        let mut conv = false;
        for i in 2..MAXIT {
            let fi = i as f64;
            a -= 2.0 * (fi - 1.0);
            c = -a * c / fi;
            let qnew = (q1 - b * q2) / a;
            q1 = q2;
            q2 = qnew;
            q += c * qnew;
            b += 2.0;
            d = 1.0 / (b + a * d);
            delh *= b * d - 1.0;
            h += delh;
            let dels = q * delh;
            s += dels;
            if (dels / s).abs() < EPS {
                conv = true;
                break;
            }
        }
        if !conv {
            return Err(Error::precision("bessel_k CF2", format!("nu = {nu}, x = {x}")));
        }
        h *= a1;
        rkmu = (PI / (2.0 * x)).sqrt() * (-x).exp() / s;
        rk1 = rkmu * (xmu + x + 0.5 - h) * xi;
        method = Method::ContinuedFraction;
    }
    for i in 1..=nl {
        let rktemp = (xmu + i as f64) * xi2 * rk1 + rkmu;
        rkmu = rk1;
        rk1 = rktemp;
    }
    let kp = xnu * xi * rkmu - rk1;
    Ok(BesselK {
        nu: xnu,
        x,
        k: rkmu,
        kp,
        k_next: rk1,
        method: if nl > 0 { Method::Recurrence } else { method },
        recurrence_steps: nl,
    })
}

pub fn bessel_k(nu: f64, z: f64) -> Result<FunEvalResult> {
    check_order(nu)?;
    if !(z > 0.0) {
        return Err(Error::Domain(format!("K_nu(z) needs z > 0, got {z}")));
    }
    let r = bessel_k_pair(nu, z)?;
    Ok(FunEvalResult::new(
        r.k,
        EPS * (16.0 + r.recurrence_steps as f64) * r.k.abs(),
        r.method,
    ))
}

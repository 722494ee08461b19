use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::PiecewiseRadial;
use crate::error::{Error, Result};
use crate::quad;

/// Shallow edge of every search window: F is sampled on [eps_min, −EDGE_DELTA].
pub const EDGE_DELTA: f64 = 1e-8;
/// Required |F| at a reported root.
pub const ROOT_RESIDUAL_TOL: f64 = 1e-10;
/// Bracket width at which bisection stops.
pub const BISECTION_WIDTH: f64 = 1e-12;
pub const MIN_GRID: usize = 16;
/// A root this close (relative) to eps_min triggers widening of the window.
const EDGE_FRACTION: f64 = 0.05;
const MAX_WIDENINGS: usize = 8;
const NODE_SAMPLES: usize = 4000;

/// F(ε) = r₀φ'_</φ_< − r₀φ'_>/φ_> at the matching radius.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Mismatch {
    pub eps: f64,
    pub value: f64,
    pub interior_log_derivative: f64,
    pub exterior_log_derivative: f64,
    /// Unnormalized interior value at r₀; its sign changes across a pole of F.
    pub interior_value: f64,
    /// Interior node at r₀: F is infinite here, not zero.
    pub pole: bool,
}

pub fn matching_mismatch<P: PiecewiseRadial>(p: &P, eps: f64) -> Result<Mismatch> {
    if !(eps < 0.0) {
        return Err(Error::Domain(format!("matching needs eps < 0, got {eps}")));
    }
    let (lin, v) = p.interior_log_derivative(eps)?;
    let lout = p.exterior_log_derivative(eps)?;
    let pole = v == 0.0 || !lin.is_finite();
    Ok(Mismatch {
        eps,
        value: lin - lout,
        interior_log_derivative: lin,
        exterior_log_derivative: lout,
        interior_value: v,
        pole,
    })
}

/// Sampled F(ε) with its sign-change brackets.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatchingProfile {
    pub problem: String,
    /// Strictly increasing, all negative; uniform in √(−ε).
    pub eps_grid: Vec<f64>,
    pub mismatch: Vec<f64>,
    /// Samples sitting on a pole.
    pub flagged: Vec<bool>,
    /// Intervals containing exactly one root of F.
    pub brackets: Vec<(f64, f64)>,
    /// Located poles (interior nodes at r₀).
    pub poles: Vec<f64>,
}

fn window_grid(eps_min: f64, n: usize) -> Vec<f64> {
    let k_hi = (-eps_min).sqrt();
    let k_lo = EDGE_DELTA.sqrt();
    let mut grid: Vec<f64> = (0..n)
        .map(|i| {
            let k = k_hi - (k_hi - k_lo) * i as f64 / (n - 1) as f64;
            -k * k
        })
        .collect();
    grid[0] = eps_min;
    grid[n - 1] = -EDGE_DELTA;
    grid
}

/// Pole of F inside (lo, hi), where the interior value changes sign.
fn locate_pole<P: PiecewiseRadial>(p: &P, mut lo: f64, mut hi: f64, s_lo: f64) -> Result<f64> {
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi || hi - lo <= 1e-14 * lo.abs().max(1.0) {
            break;
        }
        let (_, v) = p.interior_log_derivative(mid)?;
        if v == 0.0 {
            return Ok(mid);
        }
        if v.signum() == s_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

pub fn matching_profile<P: PiecewiseRadial>(p: &P, eps_min: f64, n_grid: usize) -> Result<MatchingProfile> {
    if !(eps_min < -EDGE_DELTA) {
        return Err(Error::Domain(format!(
            "eps_min must be below {:e}, got {eps_min}",
            -EDGE_DELTA
        )));
    }
    if n_grid < MIN_GRID {
        return Err(Error::Domain(format!(
            "n_grid must be at least {MIN_GRID}, got {n_grid}"
        )));
    }
    let eps_grid = window_grid(eps_min, n_grid);
    let samples = eps_grid
        .iter()
        .map(|&e| matching_mismatch(p, e))
        .collect::<Result<Vec<_>>>()?;
    let mut brackets = Vec::new();
    let mut poles = Vec::new();
    for w in samples.windows(2) {
        let (l, r) = (&w[0], &w[1]);
        if l.value == 0.0 && !l.pole {
            brackets.push((l.eps, l.eps));
        }
        if l.interior_value.signum() != r.interior_value.signum() && !l.pole && !r.pole {
            // pole inside: split the cell around it and look for a root on each side
            let e_p = locate_pole(p, l.eps, r.eps, l.interior_value.signum())?;
            poles.push(e_p);
            let gap = 1e-9 * e_p.abs().max(1.0);
            for (a, b) in [(l.eps, e_p - gap), (e_p + gap, r.eps)] {
                if b <= a {
                    continue;
                }
                let fa = if a == l.eps {
                    l.value
                } else {
                    matching_mismatch(p, a)?.value
                };
                let fb = if b == r.eps {
                    r.value
                } else {
                    matching_mismatch(p, b)?.value
                };
                if fa.signum() != fb.signum() {
                    brackets.push((a, b));
                }
            }
        } else if !l.pole && !r.pole && l.value.signum() != r.value.signum() && r.value != 0.0 && l.value != 0.0 {
            brackets.push((l.eps, r.eps));
        }
    }
    Ok(MatchingProfile {
        problem: p.describe(),
        eps_grid,
        mismatch: samples.iter().map(|s| s.value).collect(),
        flagged: samples.iter().map(|s| s.pole).collect(),
        brackets,
        poles,
    })
}

/// Bisection on F inside a bracket; errors when the residual cannot be met.
fn bisect<P: PiecewiseRadial>(p: &P, mut lo: f64, mut hi: f64) -> Result<f64> {
    let mut f_lo = matching_mismatch(p, lo)?.value;
    if lo == hi {
        return Ok(lo);
    }
    let mut best = (lo, f_lo.abs());
    for _ in 0..400 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f = matching_mismatch(p, mid)?;
        if f.value.abs() < best.1 {
            best = (mid, f.value.abs());
        }
        if f.value == 0.0 || (f.value.abs() <= 1e-2 * ROOT_RESIDUAL_TOL && hi - lo <= BISECTION_WIDTH) {
            return Ok(mid);
        }
        if f.value.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f.value;
        } else {
            hi = mid;
        }
    }
    if best.1 <= ROOT_RESIDUAL_TOL {
        return Ok(best.0);
    }
    Err(Error::Precision {
        context: format!("root finding for {}", p.describe()),
        detail: format!(
            "bracket [{lo}, {hi}] collapsed with |F| = {:e} > {ROOT_RESIDUAL_TOL:e}",
            best.1
        ),
        partial: Some(best.0),
    })
}

/// Number of sign changes of the interior solution on (0, r₀).
pub fn count_interior_nodes<P: PiecewiseRadial>(p: &P, eps: f64) -> Result<usize> {
    let rm = p.matching_radius();
    let mut nodes = 0;
    let mut prev = 0.0_f64;
    for i in 1..=NODE_SAMPLES {
        let r = rm * i as f64 / NODE_SAMPLES as f64;
        let v = p.interior(eps, r)?.0;
        if v != 0.0 {
            if prev != 0.0 && v.signum() != prev.signum() {
                nodes += 1;
            }
            prev = v;
        }
    }
    Ok(nodes)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundState<P> {
    pub problem: P,
    pub eps: f64,
    /// Normalized interior coefficient C.
    pub interior_coeff: f64,
    /// Normalized exterior coefficient D, fixed by continuity at r₀.
    pub exterior_coeff: f64,
    /// 2π∫|φ|² r dr of the assembled normalized state, by quadrature.
    pub norm: f64,
    /// F(ε) at the reported root.
    pub residual: f64,
    /// |C φ_<(r₀) − D φ_>(r₀)| / |C φ_<(r₀)|.
    pub continuity_residual: f64,
    pub nodes: usize,
}

impl<P: PiecewiseRadial> BoundState<P> {
    pub fn wavefunction(&self, r: f64) -> Result<f64> {
        if r <= self.problem.matching_radius() {
            Ok(self.interior_coeff * self.problem.interior(self.eps, r)?.0)
        } else {
            Ok(self.exterior_coeff * self.problem.exterior(self.eps, r)?.0)
        }
    }
}

fn normalize<P: PiecewiseRadial + Clone>(p: &P, eps: f64, residual: f64) -> Result<BoundState<P>> {
    let rm = p.matching_radius();
    let v_in = p.interior(eps, rm)?.0;
    let v_out = p.exterior(eps, rm)?.0;
    let d_raw = v_in / v_out;
    let inner = |r: f64| {
        let v = p.interior(eps, r).map(|x| x.0).unwrap_or(f64::NAN);
        v * v * r
    };
    let outer = |r: f64| {
        let v = p.exterior(eps, r).map(|x| x.0).unwrap_or(f64::NAN);
        v * v * r
    };
    let i_in = quad::integrate_rel(inner, 0.0, rm, 1e-13, &[])?.value;
    let i_out = quad::integrate_rel(outer, rm, f64::INFINITY, 1e-13, &[])?.value;
    let raw = 2.0 * PI * (i_in + d_raw * d_raw * i_out);
    let c = 1.0 / raw.sqrt();
    let d = c * d_raw;
    let mut state = BoundState {
        problem: p.clone(),
        eps,
        interior_coeff: c,
        exterior_coeff: d,
        norm: 0.0,
        residual,
        continuity_residual: (c * v_in - d * v_out).abs() / (c * v_in).abs(),
        nodes: count_interior_nodes(p, eps)?,
    };
    let density = |r: f64| {
        let v = state.wavefunction(r).unwrap_or(f64::NAN);
        2.0 * PI * v * v * r
    };
    state.norm = quad::integrate_rel(density, 0.0, f64::INFINITY, 1e-12, &[rm])?.value;
    Ok(state)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundStateSearch<P> {
    /// Sorted by ε.
    pub states: Vec<BoundState<P>>,
    pub poles: Vec<f64>,
    pub eps_min_used: f64,
    /// F at the shallow edge −EDGE_DELTA.
    pub mismatch_at_edge: f64,
    pub warnings: Vec<String>,
}

/// All roots of F on [eps_min, −EDGE_DELTA]. The window is widened when the deepest
/// root sits within 5% of eps_min, or when F(eps_min) < 0 or an interior node at
/// eps_min shows that a deeper level was missed.
pub fn find_bound_states<P: PiecewiseRadial + Clone>(
    p: &P,
    eps_min: f64,
    n_grid: usize,
) -> Result<BoundStateSearch<P>> {
    let mut window = eps_min;
    let mut warnings = Vec::new();
    let mut widenings = 0;
    let profile = loop {
        let profile = matching_profile(p, window, n_grid)?;
        let deepest = profile.brackets.first().map(|b| b.0);
        let near_edge = deepest.is_some_and(|e| e - window < EDGE_FRACTION * window.abs());
        let negative_start = profile.mismatch[0] < 0.0 && !profile.flagged[0];
        // every interior node at eps_min stands for a pole with a root below it
        let hidden = count_interior_nodes(p, window)? > 0;
        let floor = p.spectrum_floor();
        if !(near_edge || negative_start || hidden) || window <= floor {
            break profile;
        }
        if widenings == MAX_WIDENINGS {
            warnings.push(format!(
                "{}: root at edge of search window after {widenings} widenings (eps_min = {window})",
                p.describe()
            ));
            break profile;
        }
        widenings += 1;
        let next = (2.0 * window).max(floor);
        warnings.push(format!(
            "{}: search window widened from eps_min = {window} to {next}",
            p.describe()
        ));
        window = next;
    };
    let mut states = Vec::with_capacity(profile.brackets.len());
    for &(lo, hi) in &profile.brackets {
        let eps = bisect(p, lo, hi)?;
        let residual = matching_mismatch(p, eps)?.value;
        if eps > -10.0 * EDGE_DELTA {
            warnings.push(format!(
                "{}: root at the shallow edge of the window, eps = {eps:e}",
                p.describe()
            ));
        }
        states.push(normalize(p, eps, residual)?);
    }
    states.sort_by(|a, b| a.eps.total_cmp(&b.eps));
    Ok(BoundStateSearch {
        states,
        poles: profile.poles,
        eps_min_used: window,
        mismatch_at_edge: *profile.mismatch.last().expect("grid is non-empty"),
        warnings,
    })
}

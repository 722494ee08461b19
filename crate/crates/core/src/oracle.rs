//! Finite-difference eigensolver for the radial problems, independent of the
//! closed-form special functions.
//!
//! The operator −(1/r)(rφ')' + V(r)φ is discretized by finite volumes on cells
//! of width h with centers r_i = (i − ½)h. The face at r = 0 carries zero flux, which
//! enforces regularity, and φ vanishes at r_max. Every cell lies entirely inside or
//! outside the cylinder because r₀ is required to be a cell face. In u_i = √r_i φ_i
//! the matrix is symmetric tridiagonal, and eigenvalues come from Sturm-sequence
//! bisection. The potential is assembled from the field and its divergence.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{evaluate_field, field_divergence, CylinderConfig, SectorLabel};
use crate::spectrum::RadialProblem;

/// Smallest accepted number of cells.
pub const MIN_CELLS: usize = 200;

/// Extrapolated error above which the result is rejected.
pub const MAX_EXTRAPOLATION_ERROR: f64 = 1e-3;

/// Uniform cell-centered grid on [0, r_max], lengths in units of r₀.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FdGrid {
    pub r_max: f64,
    /// Number of cells.
    pub n: usize,
    pub h: f64,
}

impl FdGrid {
    /// r_max must be a whole number of cells and r₀ = 1 must fall on a cell face.
    pub fn new(r_max: f64, n: usize) -> Result<Self> {
        if n < MIN_CELLS {
            return Err(Error::Config(format!("grid needs at least {MIN_CELLS} cells, got {n}")));
        }
        if !(r_max > 1.0) || !r_max.is_finite() {
            return Err(Error::Config(format!("r_max must exceed r0, got {r_max}")));
        }
        let h = r_max / n as f64;
        let per_r0 = 1.0 / h;
        if (per_r0 - per_r0.round()).abs() > 1e-9 * per_r0 {
            return Err(Error::Config(format!(
                "r0 must lie on a cell face: r_max = {r_max} with n = {n} gives {per_r0} cells per r0"
            )));
        }
        Ok(Self { r_max, n, h })
    }

    /// Grid with a given number of cells per r₀.
    pub fn with_resolution(r_max_cells_of_r0: usize, cells_per_r0: usize) -> Result<Self> {
        Self::new(r_max_cells_of_r0 as f64, r_max_cells_of_r0 * cells_per_r0)
    }

    pub fn cells_per_r0(&self) -> usize {
        (1.0 / self.h).round() as usize
    }

    pub fn center(&self, i: usize) -> f64 {
        (i as f64 + 0.5) * self.h
    }

    /// Same spacing, then halved.
    pub fn refined(&self) -> Self {
        Self {
            r_max: self.r_max,
            n: 2 * self.n,
            h: self.h / 2.0,
        }
    }

    /// Same spacing, r_max stretched by about 4/3 (rounded to whole r₀ units).
    pub fn stretched(&self) -> Self {
        let r_max = (self.r_max * 4.0 / 3.0).round();
        let per_r0 = self.cells_per_r0();
        Self {
            r_max,
            n: r_max as usize * per_r0,
            h: 1.0 / per_r0 as f64,
        }
    }

    /// Whether K tails at the given depth are negligible at the cutoff.
    pub fn covers(&self, eps_target: f64) -> bool {
        eps_target < 0.0 && self.r_max >= 12.0 * f64::max(1.0, 1.0 / (-eps_target).sqrt())
    }
}

/// One radial problem as seen by the oracle; unlike the matching solver it accepts any b > 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FdProblem {
    pub cfg: CylinderConfig,
    pub sector: SectorLabel,
    pub m: i32,
}

impl FdProblem {
    pub fn new(cfg: &CylinderConfig, sector: SectorLabel, m: i32) -> Result<Self> {
        if !(cfg.b() > 0.0) {
            return Err(Error::Config(format!("oracle needs b > 0, got {}", cfg.b())));
        }
        Ok(Self { cfg: *cfg, sector, m })
    }

    /// V(x) in units of 1/r₀², x = r/r₀, from p² + τη(∇·E + 2σ(E×p)₃) + η²E².
    pub fn potential(&self, x: f64) -> Result<f64> {
        let r0 = self.cfg.r0();
        let r = x * r0;
        let eta = self.cfg.eta();
        let e = evaluate_field(&self.cfg, r)?;
        let div = field_divergence(&self.cfg, r)?;
        let m = self.m as f64;
        let (tau, sigma) = (self.sector.tau(), self.sector.sigma());
        let v = m * m / (r * r) + tau * eta * (div + 2.0 * sigma * m * e / r) + eta * eta * e * e;
        Ok(v * r0 * r0)
    }
}

impl From<&RadialProblem> for FdProblem {
    fn from(p: &RadialProblem) -> Self {
        Self {
            cfg: p.cfg,
            sector: p.sector,
            m: p.m,
        }
    }
}

/// Symmetric tridiagonal matrix: `diag[i]`, and `off[i]` couples i and i+1.
#[derive(Debug, Clone, PartialEq)]
struct Tridiagonal {
    diag: Vec<f64>,
    off: Vec<f64>,
}

impl Tridiagonal {
    fn assemble(grid: &FdGrid, v: impl Fn(f64) -> Result<f64>) -> Result<Self> {
        let (n, h) = (grid.n, grid.h);
        let h2 = h * h;
        let mut diag = Vec::with_capacity(n);
        let mut off = Vec::with_capacity(n - 1);
        for i in 0..n {
            let r = grid.center(i);
            let face_in = i as f64 * h;
            let face_out = (i + 1) as f64 * h;
            diag.push((face_in + face_out) / (r * h2) + v(r)?);
            if i + 1 < n {
                off.push(-face_out / (h2 * (r * grid.center(i + 1)).sqrt()));
            }
        }
        Ok(Self { diag, off })
    }

    /// Number of eigenvalues strictly below x.
    fn count_below(&self, x: f64) -> usize {
        let mut count = 0;
        let mut d = 1.0;
        for i in 0..self.diag.len() {
            let e2 = if i == 0 { 0.0 } else { self.off[i - 1] * self.off[i - 1] };
            d = self.diag[i] - x - if i == 0 { 0.0 } else { e2 / d };
            if d == 0.0 {
                d = -f64::MIN_POSITIVE;
            }
            if d < 0.0 {
                count += 1;
            }
        }
        count
    }

    fn gershgorin(&self) -> (f64, f64) {
        let n = self.diag.len();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let left = if i > 0 { self.off[i - 1].abs() } else { 0.0 };
            let right = if i + 1 < n { self.off[i].abs() } else { 0.0 };
            lo = lo.min(self.diag[i] - left - right);
            hi = hi.max(self.diag[i] + left + right);
        }
        (lo, hi)
    }

    /// The k-th (0-based) eigenvalue by bisection.
    fn eigenvalue(&self, k: usize) -> f64 {
        let (mut lo, mut hi) = self.gershgorin();
        let tol = 4.0 * f64::EPSILON * lo.abs().max(hi.abs());
        while hi - lo > tol {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.count_below(mid) > k {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        0.5 * (lo + hi)
    }

    /// Eigenvector near `shift` by inverse iteration with a Thomas solve.
    fn eigenvector(&self, shift: f64) -> Vec<f64> {
        let n = self.diag.len();
        let mut x = vec![1.0; n];
        let scale = self.diag.iter().fold(0.0f64, |a, &d| a.max(d.abs()));
        // keep the shifted matrix nonsingular in floating point
        let s = shift - 1e-13 * scale.max(1.0);
        let mut c = vec![0.0; n];
        let mut y = vec![0.0; n];
        for _ in 0..6 {
            let mut denom = self.diag[0] - s;
            c[0] = if n > 1 { self.off[0] / denom } else { 0.0 };
            y[0] = x[0] / denom;
            for i in 1..n {
                denom = self.diag[i] - s - self.off[i - 1] * c[i - 1];
                if i + 1 < n {
                    c[i] = self.off[i] / denom;
                }
                y[i] = (x[i] - self.off[i - 1] * y[i - 1]) / denom;
            }
            for i in (0..n - 1).rev() {
                y[i] -= c[i] * y[i + 1];
            }
            let norm = y.iter().map(|v| v * v).sum::<f64>().sqrt();
            for i in 0..n {
                x[i] = y[i] / norm;
            }
        }
        x
    }
}

fn operator(p: &FdProblem, grid: &FdGrid) -> Result<Tridiagonal> {
    Tridiagonal::assemble(grid, |x| p.potential(x))
}

/// Lowest k eigenvalues of one grid, in units of 1/r₀².
pub fn fd_grid_eigenvalues(p: &FdProblem, grid: &FdGrid, k: usize) -> Result<Vec<f64>> {
    if k == 0 || k > grid.n {
        return Err(Error::Domain(format!(
            "eigenvalue count must be in [1, {}], got {k}",
            grid.n
        )));
    }
    let t = operator(p, grid)?;
    Ok((0..k).map(|i| t.eigenvalue(i)).collect())
}

/// Number of discrete eigenvalues below `eps` on one grid.
pub fn fd_count_below(p: &FdProblem, grid: &FdGrid, eps: f64) -> Result<usize> {
    Ok(operator(p, grid)?.count_below(eps))
}

/// One Richardson-extrapolated eigenvalue with its error budget.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FdEigenvalue {
    pub eps: f64,
    /// Discretization plus cutoff estimate.
    pub error: f64,
    pub coarse: f64,
    pub fine: f64,
    /// Change of the coarse value when r_max grows by 4/3.
    pub cutoff_shift: f64,
}

/// Lowest k eigenvalues, extrapolated as (4ε(h/2) − ε(h))/3.
///
/// The error is |ε(h/2) − ε(h)|/3 plus the shift of the coarse value under a 4/3
/// stretch of r_max. Any error above [`MAX_EXTRAPOLATION_ERROR`] is a precision error.
pub fn fd_eigenvalues(p: &FdProblem, grid: &FdGrid, k: usize) -> Result<Vec<FdEigenvalue>> {
    let coarse = fd_grid_eigenvalues(p, grid, k)?;
    let fine = fd_grid_eigenvalues(p, &grid.refined(), k)?;
    let stretched = fd_grid_eigenvalues(p, &grid.stretched(), k)?;
    let mut out = Vec::with_capacity(k);
    for i in 0..k {
        let eps = (4.0 * fine[i] - coarse[i]) / 3.0;
        let cutoff_shift = (stretched[i] - coarse[i]).abs();
        let error = (fine[i] - coarse[i]).abs() / 3.0 + cutoff_shift;
        if error > MAX_EXTRAPOLATION_ERROR {
            return Err(Error::Precision {
                context: format!("finite-difference level {i} of {} m={}", p.sector, p.m),
                detail: format!(
                    "extrapolation error {error:.3e} exceeds {MAX_EXTRAPOLATION_ERROR:e} (h = {}, r_max = {})",
                    grid.h, grid.r_max
                ),
                partial: Some(eps),
            });
        }
        out.push(FdEigenvalue {
            eps,
            error,
            coarse: coarse[i],
            fine: fine[i],
            cutoff_shift,
        });
    }
    Ok(out)
}

/// Discrete eigenvector on one grid, normalized so that Σ 2π r_i h |φ_i|² = 1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FdMode {
    pub eps: f64,
    pub r: Vec<f64>,
    pub phi: Vec<f64>,
    /// Probability inside r₀.
    pub inner_mass: f64,
}

impl FdMode {
    /// Σ 2π r_i h φ_i f(r_i), the discrete overlap with a trial profile.
    pub fn overlap(&self, f: impl Fn(f64) -> f64) -> f64 {
        let h = self.r[1] - self.r[0];
        let two_pi = 2.0 * std::f64::consts::PI;
        self.r
            .iter()
            .zip(&self.phi)
            .map(|(&r, &p)| two_pi * r * h * p * f(r))
            .sum()
    }
}

/// k-th (0-based) eigenvector, with φ chosen positive at the origin.
pub fn fd_mode(p: &FdProblem, grid: &FdGrid, k: usize) -> Result<FdMode> {
    let t = operator(p, grid)?;
    let eps = t.eigenvalue(k);
    let u = t.eigenvector(eps);
    let two_pi = 2.0 * std::f64::consts::PI;
    let r: Vec<f64> = (0..grid.n).map(|i| grid.center(i)).collect();
    let sign = if u[0] < 0.0 { -1.0 } else { 1.0 };
    let mut phi: Vec<f64> = u.iter().zip(&r).map(|(&u, &r)| sign * u / r.sqrt()).collect();
    let norm = phi
        .iter()
        .zip(&r)
        .map(|(p, r)| two_pi * r * grid.h * p * p)
        .sum::<f64>();
    for v in &mut phi {
        *v /= norm.sqrt();
    }
    let inner = r
        .iter()
        .zip(&phi)
        .filter(|(&r, _)| r < 1.0)
        .map(|(r, p)| two_pi * r * grid.h * p * p)
        .sum();
    Ok(FdMode {
        eps,
        r,
        phi,
        inner_mass: inner,
    })
}

/// Lowest level and its mass inside r₀ for a growing cutoff.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InnerMassPoint {
    pub r_max: f64,
    pub eps: f64,
    pub inner_mass: f64,
}

/// Normalizability diagnostic: a bound mode keeps its inner mass as r_max grows, a
/// threshold or continuum mode spreads out and its inner mass drains away.
pub fn inner_mass_diagnostic(p: &FdProblem, r_max: &[usize], cells_per_r0: usize) -> Result<Vec<InnerMassPoint>> {
    r_max
        .iter()
        .map(|&rm| {
            let grid = FdGrid::with_resolution(rm, cells_per_r0)?;
            let mode = fd_mode(p, &grid, 0)?;
            Ok(InnerMassPoint {
                r_max: grid.r_max,
                eps: mode.eps,
                inner_mass: mode.inner_mass,
            })
        })
        .collect()
}

/// Lowest k levels of the unbounded oscillator V = m²/r² − 2β(1 + m) + β²r², on a grid in
/// units of 1/√β. The exact values are ε/β = 4k for m ≥ 0.
pub fn fd_harmonic_eigenvalues(m: i32, grid: &FdGrid, k: usize) -> Result<Vec<f64>> {
    if k == 0 || k > grid.n {
        return Err(Error::Domain(format!(
            "eigenvalue count must be in [1, {}], got {k}",
            grid.n
        )));
    }
    let mf = m as f64;
    let v = |x: f64| Ok(mf * mf / (x * x) - 2.0 * (1.0 + mf) + x * x);
    let coarse = Tridiagonal::assemble(grid, v)?;
    let fine = Tridiagonal::assemble(&grid.refined(), v)?;
    Ok((0..k)
        .map(|i| (4.0 * fine.eigenvalue(i) - coarse.eigenvalue(i)) / 3.0)
        .collect())
}

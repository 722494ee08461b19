use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{find_bound_states, threshold_analysis, zero_mode, PiecewiseRadial, RadialProblem, ThresholdAnalysis};
use crate::error::{Error, Result};
use crate::model::{CylinderConfig, SectorLabel};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanOptions {
    /// Lower end of the ε window; `None` uses −(b² + 4b).
    pub eps_min: Option<f64>,
    pub n_grid: usize,
}

impl Default for ScanOptions {
    fn default() -> Self {
        Self {
            eps_min: None,
            n_grid: 400,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LevelKind {
    /// Root of the matching condition, ε < 0.
    Bound,
    /// Normalizable ε = 0 state.
    ZeroMode,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumRow {
    pub sector: SectorLabel,
    pub m: i32,
    /// Position in the ε-ordered list of levels of this (sector, m).
    pub level: usize,
    pub kind: LevelKind,
    /// Units of 1/r₀².
    pub eps: f64,
    pub e_over_m: f64,
    pub l_eff: f64,
    /// |F(ε)| for bound levels, |L_in(0) + |l|| for zero modes.
    pub residual: f64,
    pub nodes: usize,
    pub norm: f64,
}

/// Per-(sector, m) diagnostics, reported whether or not levels were found.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellSummary {
    pub sector: SectorLabel,
    pub m: i32,
    pub l_eff: f64,
    pub interior_shift: f64,
    pub bound_levels: usize,
    pub poles: usize,
    pub eps_min_used: f64,
    /// F(−1e-8).
    pub mismatch_at_edge: f64,
    pub threshold: ThresholdAnalysis,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumTable {
    pub b: f64,
    pub rows: Vec<SpectrumRow>,
    pub cells: Vec<CellSummary>,
    pub warnings: Vec<String>,
}

fn with_cell_context(e: Error, sector: SectorLabel, m: i32) -> Error {
    match e {
        Error::Precision {
            context,
            detail,
            partial,
        } => Error::Precision {
            context: format!("{sector} m={m}: {context}"),
            detail,
            partial,
        },
        other => other,
    }
}

fn scan_cell(p: &RadialProblem, opts: &ScanOptions) -> Result<(Vec<SpectrumRow>, CellSummary, Vec<String>)> {
    let eps_min = opts.eps_min.unwrap_or_else(|| p.default_eps_min());
    let search = find_bound_states(p, eps_min, opts.n_grid)?;
    let threshold = threshold_analysis(p)?;
    let mut rows: Vec<SpectrumRow> = search
        .states
        .iter()
        .map(|s| SpectrumRow {
            sector: p.sector,
            m: p.m,
            level: 0,
            kind: super::LevelKind::Bound,
            eps: s.eps,
            e_over_m: p.e_over_m(s.eps),
            l_eff: p.l_eff(),
            residual: s.residual.abs(),
            nodes: s.nodes,
            norm: s.norm,
        })
        .collect();
    if let Some(z) = zero_mode(p)? {
        rows.push(SpectrumRow {
            sector: p.sector,
            m: p.m,
            level: 0,
            kind: LevelKind::ZeroMode,
            eps: 0.0,
            e_over_m: 1.0,
            l_eff: p.l_eff(),
            residual: threshold.mismatch.abs(),
            nodes: z.nodes,
            norm: z.norm,
        });
    }
    for (i, r) in rows.iter_mut().enumerate() {
        r.level = i;
    }
    let cell = CellSummary {
        sector: p.sector,
        m: p.m,
        l_eff: p.l_eff(),
        interior_shift: p.interior_shift(),
        bound_levels: search.states.len(),
        poles: search.poles.len(),
        eps_min_used: search.eps_min_used,
        mismatch_at_edge: search.mismatch_at_edge,
        threshold,
    };
    Ok((rows, cell, search.warnings))
}

/// Levels for every (sector, m) in the given order and range, computed in parallel
/// and merged in (sector order, m ascending, ε ascending) order.
pub fn scan_spectrum(
    cfg: &CylinderConfig,
    m_min: i32,
    m_max: i32,
    sectors: &[SectorLabel],
    opts: &ScanOptions,
) -> Result<SpectrumTable> {
    if m_min > m_max {
        return Err(Error::Config(format!("m range is empty: [{m_min}, {m_max}]")));
    }
    if sectors.is_empty() {
        return Err(Error::Config("at least one sector is required".into()));
    }
    let problems = sectors
        .iter()
        .flat_map(|&s| (m_min..=m_max).map(move |m| (s, m)))
        .map(|(s, m)| RadialProblem::new(cfg, s, m))
        .collect::<Result<Vec<_>>>()?;
    let results: Vec<_> = problems
        .par_iter()
        .map(|p| scan_cell(p, opts).map_err(|e| with_cell_context(e, p.sector, p.m)))
        .collect();
    let mut table = SpectrumTable {
        b: cfg.b(),
        rows: Vec::new(),
        cells: Vec::new(),
        warnings: Vec::new(),
    };
    for r in results {
        let (rows, cell, warnings) = r?;
        table.rows.extend(rows);
        table.cells.push(cell);
        table.warnings.extend(warnings);
    }
    Ok(table)
}

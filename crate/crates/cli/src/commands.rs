use std::str::FromStr;

use acsusy_core::constants::PhysicalConstants;
use acsusy_core::error::Error as CoreError;
use acsusy_core::groundstate::{build_ground_state, figure1_profile, figure2_curve, RadialGrid};
use acsusy_core::model::{check_unbroken_susy, lambda_min_si, CylinderConfig, SectorLabel};
use acsusy_core::oracle::{fd_count_below, fd_eigenvalues, inner_mass_diagnostic, FdGrid, FdProblem};
use acsusy_core::spectrum::{scan_spectrum, LevelKind, RadialProblem, ScanOptions, ThresholdKind};
use serde_json::Value;

use crate::args::{CheckArgs, Figure1Args, Figure2Args, GroundStateArgs, LambdaMinArgs, OracleArgs, SpectrumArgs};
use crate::error::{CliError, CliResult};
use crate::manifest::{RunManifest, UnitSystem};
use crate::report::{fmt_num, num, Column, Report};

/// Eigenvalues of the oracle grid below this count as levels the matching solver missed.
const ORACLE_MISS_THRESHOLD: f64 = -1e-6;

/// A report plus an error to raise after it has been written.
#[derive(Debug)]
pub struct Outcome {
    pub report: Report,
    pub deferred: Option<CliError>,
}

impl From<Report> for Outcome {
    fn from(report: Report) -> Self {
        Self { report, deferred: None }
    }
}

fn dimensionless(b: f64, r0: f64) -> CliResult<CylinderConfig> {
    let cfg = CylinderConfig::dimensionless(b, r0)?;
    check_unbroken_susy(&cfg).require()?;
    Ok(cfg)
}

pub fn ground_state_columns() -> Vec<Column> {
    vec![
        Column::new("r_over_r0", "radius in units of r0"),
        Column::new("density", "|phi|^2 in units of 1/r0^2, normalized under 2*pi*r dr"),
    ]
}

pub fn ground_state(a: &GroundStateArgs) -> CliResult<Outcome> {
    let cfg = dimensionless(a.b, a.r0)?;
    let gs = build_ground_state(&cfg)?;
    let grid = RadialGrid::uniform(a.r_max, a.grid_points)?;
    let manifest = RunManifest::new("ground-state", UnitSystem::NaturalR0)
        .param_num("b", a.b)
        .param("r0", a.r0)
        .param("grid_points", a.grid_points)
        .param_num("r_max", a.r_max);
    let mut r = Report::new(manifest, ground_state_columns());
    let s = gs.summary();
    r.summary("b", num(s.b));
    r.summary("a_sq", num(s.a_sq));
    r.summary("b_sq", num(s.b_sq));
    r.summary("R_beta", num(s.r_beta));
    r.summary("W_inside", num(s.w_inside));
    r.summary("W_outside", num(s.w_outside));
    // the dimensionless density does not depend on r0
    let unit = build_ground_state(&CylinderConfig::dimensionless(a.b, 1.0)?)?;
    for &x in &grid.r_over_r0 {
        r.push_row(vec![num(x), num(unit.density(x)?)]);
    }
    Ok(r.into())
}

pub fn figure1_columns(b_list: &[f64]) -> Vec<Column> {
    let mut cols = vec![Column::new("r_over_r0", "radius in units of r0")];
    cols.extend(b_list.iter().map(|b| {
        Column::new(
            format!("density_b{b}"),
            format!("|phi|^2 r0^2 for b = {b}, normalized under 2*pi*r dr"),
        )
    }));
    cols
}

pub fn figure1(a: &Figure1Args) -> CliResult<Outcome> {
    for &b in &a.b_list {
        dimensionless(b, 1.0)?;
    }
    let grid = RadialGrid::uniform(RadialGrid::DEFAULT_MAX, a.grid_points)?;
    let table = figure1_profile(&a.b_list, &grid)?;
    let list: Vec<String> = a.b_list.iter().map(|&b| fmt_num(b)).collect();
    let manifest = RunManifest::new("figure1", UnitSystem::NaturalR0)
        .param("b_list", list.join(","))
        .param("grid_points", a.grid_points);
    let mut r = Report::new(manifest, figure1_columns(&a.b_list));
    for c in &table.columns {
        r.summary(&format!("a_sq_b{}", c.b), num(c.a_sq));
    }
    for (i, &x) in table.r_over_r0.iter().enumerate() {
        let mut row = vec![num(x)];
        row.extend(table.columns.iter().map(|c| num(c.density[i])));
        r.push_row(row);
    }
    Ok(r.into())
}

pub fn figure2_columns() -> Vec<Column> {
    vec![
        Column::new("b", "dimensionless strength beta*r0^2"),
        Column::new("R_beta", "W[r0, inf) / W[0, r0]"),
        Column::new("W_inside", "probability inside the cylinder"),
        Column::new("W_outside", "probability outside the cylinder"),
    ]
}

pub fn figure2(a: &Figure2Args) -> CliResult<Outcome> {
    dimensionless(a.b_min, 1.0)?;
    let rows = figure2_curve(a.b_min, a.b_max, a.points)?;
    let manifest = RunManifest::new("figure2", UnitSystem::NaturalR0)
        .param_num("b_min", a.b_min)
        .param_num("b_max", a.b_max)
        .param("points", a.points);
    let mut r = Report::new(manifest, figure2_columns());
    for row in rows {
        r.push_row(vec![num(row.b), num(row.r_beta), num(row.w_inside), num(row.w_outside)]);
    }
    Ok(r.into())
}

/// `phi` and `chi` expand to both spins; duplicates are dropped, order is kept.
pub fn parse_sectors(items: &[String]) -> CliResult<Vec<SectorLabel>> {
    let mut out: Vec<SectorLabel> = Vec::new();
    for item in items {
        let expanded = match item.trim().to_ascii_lowercase().as_str() {
            "phi" => vec![SectorLabel::PHI_PLUS, SectorLabel::PHI_MINUS],
            "chi" => vec![SectorLabel::CHI_PLUS, SectorLabel::CHI_MINUS],
            "all" => SectorLabel::ALL.to_vec(),
            other => vec![SectorLabel::from_str(other).map_err(|e| CliError::Validation(e.to_string()))?],
        };
        for s in expanded {
            if !out.contains(&s) {
                out.push(s);
            }
        }
    }
    if out.is_empty() {
        return Err(CliError::Validation("no sectors given".into()));
    }
    Ok(out)
}

pub fn spectrum_columns(verify: bool) -> Vec<Column> {
    let mut cols = vec![
        Column::new("sector", "phi+, phi-, chi+ or chi-"),
        Column::new("m", "angular momentum quantum number"),
        Column::new("level", "index of the level within its (sector, m), deepest first"),
        Column::new(
            "kind",
            "bound (matching root, eps < 0) or zero_mode (normalizable eps = 0 state)",
        ),
        Column::new("eps", "E^2 - M^2 in units of 1/r0^2"),
        Column::new(
            "e_over_m",
            "E/M = sqrt(1 + eps/(M r0)^2), with M r0 = 1 for dimensionless input",
        ),
        Column::new("l_eff", "order |m + tau*sigma*b| of the exterior solution"),
        Column::new("residual", "|F(eps)| at a root, |L_in(0) + l_eff| for a zero mode"),
        Column::new("nodes", "radial nodes of the interior solution"),
        Column::new("norm", "2*pi*integral |phi|^2 r dr of the normalized state"),
    ];
    if verify {
        cols.extend([
            Column::new(
                "oracle_eps",
                "Richardson-extrapolated finite-difference eigenvalue, 1/r0^2",
            ),
            Column::new("oracle_error", "oracle error estimate (discretization plus cutoff)"),
            Column::new("delta_oracle", "|eps - oracle_eps|"),
            Column::new("tolerance", "5 * oracle_error"),
            Column::new("oracle_ok", "delta_oracle <= tolerance"),
        ]);
    }
    cols
}

fn kind_name(k: LevelKind) -> &'static str {
    match k {
        LevelKind::Bound => "bound",
        LevelKind::ZeroMode => "zero_mode",
    }
}

fn threshold_name(k: ThresholdKind) -> &'static str {
    match k {
        ThresholdKind::ZeroMode => "zero_mode",
        ThresholdKind::NonNormalizable => "non_normalizable",
        ThresholdKind::None => "none",
    }
}

pub fn spectrum(a: &SpectrumArgs) -> CliResult<Outcome> {
    let cfg = dimensionless(a.b, 1.0)?;
    let sectors = parse_sectors(&a.sectors)?;
    let opts = ScanOptions {
        eps_min: a.eps_min,
        n_grid: a.n_grid,
    };
    if let Some(e) = a.eps_min {
        if !(e < 0.0) {
            return Err(CliError::Validation(format!("--eps-min must be negative, got {e}")));
        }
    }
    let table = scan_spectrum(&cfg, a.m_min, a.m_max, &sectors, &opts)?;
    let names: Vec<String> = sectors.iter().map(|s| s.to_string()).collect();
    let mut manifest = RunManifest::new("spectrum", UnitSystem::NaturalR0)
        .param_num("b", a.b)
        .param("m_min", a.m_min)
        .param("m_max", a.m_max)
        .param("sectors", names.join(","))
        .param("eps_min", a.eps_min.map_or("default".to_string(), fmt_num))
        .param("n_grid", a.n_grid)
        .param("verify", a.verify);
    if a.verify {
        manifest = manifest
            .param("oracle_r_max", a.oracle_r_max)
            .param("oracle_cells_per_r0", a.oracle_cells_per_r0);
    }
    manifest.warnings = table.warnings.clone();
    let mut r = Report::new(manifest, spectrum_columns(a.verify));

    let grid = if a.verify {
        Some(FdGrid::with_resolution(a.oracle_r_max, a.oracle_cells_per_r0)?)
    } else {
        None
    };
    let mut all_ok = true;
    for cell in &table.cells {
        let rows: Vec<_> = table
            .rows
            .iter()
            .filter(|x| x.sector == cell.sector && x.m == cell.m)
            .collect();
        r.notes.push(format!(
            "{} m={}: l_eff={} interior_shift={} threshold={} levels={} poles={} eps_min_used={} F(-1e-8)={}",
            cell.sector,
            cell.m,
            fmt_num(cell.l_eff),
            fmt_num(cell.interior_shift),
            threshold_name(cell.threshold.kind),
            rows.len(),
            cell.poles,
            fmt_num(cell.eps_min_used),
            fmt_num(cell.mismatch_at_edge)
        ));
        let oracle = match &grid {
            Some(g) => {
                let p = FdProblem::from(&RadialProblem::new(&cfg, cell.sector, cell.m)?);
                if rows.is_empty() {
                    let missed = fd_count_below(&p, &g.refined(), ORACLE_MISS_THRESHOLD)?;
                    if missed > 0 {
                        all_ok = false;
                    }
                    r.notes.push(format!(
                        "{} m={}: oracle eigenvalues below {ORACLE_MISS_THRESHOLD:e}: {missed}",
                        cell.sector, cell.m
                    ));
                    Vec::new()
                } else {
                    fd_eigenvalues(&p, g, rows.len())?
                }
            }
            None => Vec::new(),
        };
        for (i, row) in rows.iter().enumerate() {
            let mut v: Vec<Value> = vec![
                row.sector.to_string().into(),
                row.m.into(),
                row.level.into(),
                kind_name(row.kind).into(),
                num(row.eps),
                num(row.e_over_m),
                num(row.l_eff),
                num(row.residual),
                row.nodes.into(),
                num(row.norm),
            ];
            if let Some(o) = oracle.get(i) {
                let delta = (row.eps - o.eps).abs();
                let tol = 5.0 * o.error;
                all_ok &= delta <= tol;
                v.extend([num(o.eps), num(o.error), num(delta), num(tol), (delta <= tol).into()]);
            }
            r.push_row(v);
        }
    }
    r.summary("b", num(a.b));
    r.summary("cells", table.cells.len());
    r.summary("levels", table.rows.len());
    r.summary(
        "bound_levels",
        table.rows.iter().filter(|x| x.kind == LevelKind::Bound).count(),
    );
    r.summary(
        "zero_modes",
        table.rows.iter().filter(|x| x.kind == LevelKind::ZeroMode).count(),
    );
    if a.verify {
        r.summary("oracle_agreement", all_ok);
    }
    let deferred = (a.verify && !all_ok).then(|| {
        CliError::Core(CoreError::Precision {
            context: "oracle cross-check".into(),
            detail: "a level disagrees with the finite-difference oracle".into(),
            partial: None,
        })
    });
    Ok(Outcome { report: r, deferred })
}

pub fn quantity_columns() -> Vec<Column> {
    vec![
        Column::new("quantity", "name of the reported quantity"),
        Column::new("value", "its value"),
        Column::new("unit", "unit of the value"),
    ]
}

pub fn check(a: &CheckArgs) -> CliResult<Outcome> {
    let k = PhysicalConstants::CODATA_2018;
    let (cfg, unit_system) = match (a.b, a.rho, a.r0) {
        (Some(b), None, None) => (CylinderConfig::dimensionless(b, 1.0)?, UnitSystem::NaturalR0),
        (None, Some(rho), Some(r0)) if a.si => {
            let mass = a.mass.unwrap_or(k.neutron_mass);
            (CylinderConfig::from_si(rho, r0, mass, a.kappa, &k)?, UnitSystem::Si)
        }
        (None, Some(rho), Some(r0)) => (
            CylinderConfig::new(rho, r0, a.kappa, a.mass.unwrap_or(1.0))?,
            UnitSystem::NaturalR0,
        ),
        _ => return Err(CliError::Validation("give either --b or both --rho and --r0".into())),
    };
    let report = check_unbroken_susy(&cfg);
    let mut manifest = RunManifest::new("check", unit_system);
    if let Some(b) = a.b {
        manifest = manifest.param_num("b", b);
    }
    if let (Some(rho), Some(r0)) = (a.rho, a.r0) {
        manifest = manifest
            .param_num("rho", rho)
            .param("r0", r0)
            .param_num("kappa", a.kappa)
            .param("si", a.si);
        if let Some(m) = a.mass {
            manifest = manifest.param_num("mass", m);
        }
    }
    let mut r = Report::new(manifest, quantity_columns());
    r.summary("satisfied", report.satisfied);
    r.summary("b", num(report.b));
    r.summary("margin", num(report.margin));
    r.notes.push(report.to_string());
    r.push_row(vec!["b".into(), num(report.b), "1".into()]);
    r.push_row(vec!["margin".into(), num(report.margin), "1".into()]);
    r.push_row(vec!["beta".into(), num(cfg.beta()), "1/length^2".into()]);
    if unit_system == UnitSystem::Si {
        let rho = a.rho.expect("si branch has rho");
        let r0 = a.r0.expect("si branch has r0");
        let lambda = rho * std::f64::consts::PI * r0 * r0 / 100.0;
        r.push_row(vec!["lambda".into(), num(lambda), "C/cm".into()]);
        let lm = lambda_min_si(a.mass.unwrap_or(k.neutron_mass), a.kappa)?;
        r.push_row(vec![
            "lambda_min".into(),
            num(lm.heaviside_lorentz_c_per_cm),
            "C/cm".into(),
        ]);
    }
    let deferred = report.require().err().map(CliError::from);
    Ok(Outcome { report: r, deferred })
}

pub fn lambda_min(a: &LambdaMinArgs) -> CliResult<Outcome> {
    let mass = a.mass.unwrap_or(PhysicalConstants::CODATA_2018.neutron_mass);
    let est = lambda_min_si(mass, a.kappa)?;
    let manifest = RunManifest::new("lambda-min", UnitSystem::Si)
        .param_num("mass_kg", mass)
        .param_num("kappa", a.kappa);
    let mut r = Report::new(manifest, quantity_columns());
    r.summary("formula_statc_per_cm", num(est.formula_statc_per_cm));
    r.summary("gaussian_c_per_cm", num(est.gaussian_c_per_cm));
    r.summary("heaviside_lorentz_c_per_cm", num(est.heaviside_lorentz_c_per_cm));
    r.summary("reference_c_per_cm", num(est.reference_c_per_cm));
    r.summary("discrepancy_factor", num(est.discrepancy_factor));
    r.summary(
        "heaviside_lorentz_discrepancy_factor",
        num(est.heaviside_lorentz_discrepancy_factor),
    );
    r.summary("within_factor_10", est.discrepancy_factor.ln().abs() <= 10f64.ln());
    r.notes.push("reference value: 20.62e-3 C/cm".into());
    r.notes
        .extend(est.conversion_path.iter().map(|s| format!("conversion: {s}")));
    r.push_row(vec![
        "lambda_min_formula".into(),
        num(est.formula_statc_per_cm),
        "statC/cm".into(),
    ]);
    r.push_row(vec![
        "lambda_min_gaussian".into(),
        num(est.gaussian_c_per_cm),
        "C/cm".into(),
    ]);
    r.push_row(vec![
        "lambda_min_heaviside_lorentz".into(),
        num(est.heaviside_lorentz_c_per_cm),
        "C/cm".into(),
    ]);
    r.push_row(vec![
        "lambda_min_reference".into(),
        num(est.reference_c_per_cm),
        "C/cm".into(),
    ]);
    r.push_row(vec![
        "discrepancy_factor".into(),
        num(est.discrepancy_factor),
        "1".into(),
    ]);
    r.push_row(vec![
        "heaviside_lorentz_discrepancy_factor".into(),
        num(est.heaviside_lorentz_discrepancy_factor),
        "1".into(),
    ]);
    Ok(r.into())
}

pub fn oracle_columns(inner_mass: bool) -> Vec<Column> {
    if inner_mass {
        vec![
            Column::new("r_max", "cutoff radius in units of r0"),
            Column::new("eps", "lowest eigenvalue on this grid, 1/r0^2"),
            Column::new("inner_mass", "probability of the lowest mode inside r0"),
        ]
    } else {
        vec![
            Column::new("level", "eigenvalue index, lowest first"),
            Column::new("eps", "Richardson-extrapolated eigenvalue, 1/r0^2"),
            Column::new("error", "discretization plus cutoff error estimate"),
            Column::new("coarse", "eigenvalue at spacing h"),
            Column::new("fine", "eigenvalue at spacing h/2"),
            Column::new("cutoff_shift", "change of the coarse value when r_max grows by 4/3"),
        ]
    }
}

pub fn oracle(a: &OracleArgs) -> CliResult<Outcome> {
    let cfg = CylinderConfig::dimensionless(a.b, 1.0)?;
    let sector = SectorLabel::from_str(&a.sector).map_err(|e| CliError::Validation(e.to_string()))?;
    let p = FdProblem::new(&cfg, sector, a.m)?;
    let manifest = RunManifest::new("oracle", UnitSystem::NaturalR0)
        .param_num("b", a.b)
        .param("m", a.m)
        .param("sector", sector)
        .param("cells_per_r0", a.cells_per_r0);
    let mut r = match &a.inner_mass {
        Some(list) => {
            let list_s: Vec<String> = list.iter().map(|x| x.to_string()).collect();
            let mut r = Report::new(manifest.param("inner_mass", list_s.join(",")), oracle_columns(true));
            let pts = inner_mass_diagnostic(&p, list, a.cells_per_r0)?;
            for pt in &pts {
                r.push_row(vec![num(pt.r_max), num(pt.eps), num(pt.inner_mass)]);
            }
            if let (Some(first), Some(last)) = (pts.first(), pts.last()) {
                r.summary("inner_mass_ratio_last_first", num(last.inner_mass / first.inner_mass));
            }
            r
        }
        None => {
            let grid = FdGrid::with_resolution(a.r_max, a.cells_per_r0)?;
            let mut r = Report::new(
                manifest.param("r_max", a.r_max).param("levels", a.levels),
                oracle_columns(false),
            );
            for (i, l) in fd_eigenvalues(&p, &grid, a.levels)?.iter().enumerate() {
                r.push_row(vec![
                    i.into(),
                    num(l.eps),
                    num(l.error),
                    num(l.coarse),
                    num(l.fine),
                    num(l.cutoff_shift),
                ]);
            }
            r
        }
    };
    r.summary("b", num(a.b));
    r.summary("constraint_satisfied", check_unbroken_susy(&cfg).satisfied);
    Ok(r.into())
}

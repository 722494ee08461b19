//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any failure.

use std::f64::consts::PI;
use std::process::{Command, Output};
use std::time::{Duration, Instant};

use acsusy_core::constants::PhysicalConstants;
use acsusy_core::error::Error;
use acsusy_core::groundstate::{
    build_ground_state, figure1_profile, normalization_by_quadrature, ratio_closed_form, RadialGrid,
};
use acsusy_core::model::{lambda_min_si, CylinderConfig, SectorLabel};
use acsusy_core::oracle::{fd_count_below, fd_eigenvalues, inner_mass_diagnostic, FdGrid, FdProblem};
use acsusy_core::specfun::{bessel_jy, bessel_k, bessel_k_pair, hyp1f1};
use acsusy_core::spectrum::{matching_mismatch, scan_spectrum, RadialProblem, ScanOptions};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn core<T>(r: acsusy_core::error::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn acsusy(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_acsusy"))
        .args(args)
        .env_remove("ACSUSY_OUTPUT_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn gs(b: f64) -> Result<acsusy_core::groundstate::GroundState, String> {
    core(build_ground_state(&core(CylinderConfig::dimensionless(b, 1.0))?))
}

fn normalization() -> Check {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for b in [1.5, 2.0, 4.0] {
        let cfg = core(CylinderConfig::dimensionless(b, 1.0))?;
        let closed = core(build_ground_state(&cfg))?.a_sq;
        let q = core(normalization_by_quadrature(&cfg))?;
        worst = worst.max((closed / q - 1.0).abs());
    }
    let t = start.elapsed();
    ensure(worst <= 1e-10, || format!("relative mismatch {worst:.2e}"))?;
    ensure(t < Duration::from_secs(1), || format!("took {t:?}"))?;
    Ok(format!("max relative |A|^2 mismatch {worst:.2e}, {t:?}"))
}

fn constraint_gate() -> Check {
    for b in [1.0, 0.999_999, 0.9, 0.5, 0.0, -1.0] {
        // b <= 0 already fails at construction, as a configuration error
        match CylinderConfig::dimensionless(b, 1.0).and_then(|cfg| build_ground_state(&cfg)) {
            Err(e @ (Error::UnbrokenSusyViolation { .. } | Error::Config(_))) => {
                ensure(e.to_string().contains("beta*r0^2 > 1"), || {
                    format!("b = {b}: message {e}")
                })?
            }
            other => return Err(format!("b = {b} accepted: {other:?}")),
        }
        let bs = b.to_string();
        let o = acsusy(&["ground-state", "--b", &bs]);
        ensure(o.status.code() == Some(2), || {
            format!("CLI exit {:?} at b = {b}", o.status.code())
        })?;
        let err = String::from_utf8_lossy(&o.stderr);
        ensure(err.contains("beta*r0^2 > 1"), || {
            format!("CLI stderr at b = {b}: {err}")
        })?;
    }
    let p = core(FdProblem::new(
        &core(CylinderConfig::dimensionless(0.9, 1.0))?,
        SectorLabel::PHI_PLUS,
        0,
    ))?;
    let cutoffs = [12, 24, 48, 96, 192];
    let drain = core(inner_mass_diagnostic(&p, &cutoffs, 20))?;
    let masses: Vec<f64> = drain.iter().map(|x| x.inner_mass).collect();
    let drains = masses.windows(2).all(|w| w[1] < w[0]) && masses[masses.len() - 1] < 0.5 * masses[0];
    ensure(drains, || format!("inner mass at b = 0.9 {masses:?}"))?;
    // control: a normalizable mode keeps its inner mass
    let p = core(FdProblem::new(
        &core(CylinderConfig::dimensionless(2.0, 1.0))?,
        SectorLabel::PHI_PLUS,
        0,
    ))?;
    let kept: Vec<f64> = core(inner_mass_diagnostic(&p, &cutoffs, 20))?
        .iter()
        .map(|x| x.inner_mass)
        .collect();
    let spread =
        kept.iter().fold(f64::NEG_INFINITY, |a, &x| a.max(x)) - kept.iter().fold(f64::INFINITY, |a, &x| a.min(x));
    ensure(spread < 5e-3, || format!("inner mass at b = 2 {kept:?}"))?;
    Ok(format!(
        "b <= 1 rejected (core and CLI exit 2); inner mass over r_max {}..{}: b = 0.9 {:.3} -> {:.3}, b = 2 within {spread:.1e}",
        cutoffs[0],
        cutoffs[cutoffs.len() - 1],
        masses[0],
        masses[masses.len() - 1]
    ))
}

fn figure1() -> Check {
    let start = Instant::now();
    let bs = [4.0, 2.0, 1.2];
    let grid = core(RadialGrid::uniform(5.0, 501))?;
    let table = core(figure1_profile(&bs, &grid))?;
    let i3 = table
        .r_over_r0
        .iter()
        .position(|&x| (x - 3.0).abs() < 1e-12)
        .ok_or("r = 3 r0 not on grid")?;
    let mut ratios = Vec::new();
    for (col, &b) in table.columns.iter().zip(&bs) {
        let g = gs(b)?;
        let below = core(g.density(1.0 - 1e-12))?;
        let above = core(g.density(1.0 + 1e-12))?;
        ensure((below - above).abs() <= 1e-9 * above, || {
            format!("b = {b}: jump at r0 {below} vs {above}")
        })?;
        ensure(col.density.windows(2).all(|w| w[1] <= w[0]), || {
            format!("b = {b}: density increases")
        })?;
        let n = core(g.window_by_quadrature(0.0, f64::INFINITY))?;
        ensure((n - 1.0).abs() <= 1e-10, || format!("b = {b}: norm {n}"))?;
        ratios.push(col.density[0] / col.density[i3]);
    }
    ensure(ratios[0] > ratios[1] && ratios[1] > ratios[2], || {
        format!("peak/tail ratios {ratios:?}")
    })?;
    let t = start.elapsed();
    ensure(t < Duration::from_secs(1), || format!("took {t:?}"))?;
    Ok(format!(
        "continuous, monotone, unit norm; peak/tail at 3r0 {:.3e} > {:.3e} > {:.3e}; {t:?}",
        ratios[0], ratios[1], ratios[2]
    ))
}

fn ratio() -> Check {
    let mut worst: f64 = 0.0;
    let mut prev = f64::INFINITY;
    for i in 0..=500 {
        let b = 1.01 + (6.0 - 1.01) * i as f64 / 500.0;
        let g = gs(b)?;
        let inside = core(g.window_by_quadrature(0.0, 1.0))?;
        let outside = core(g.window_by_quadrature(1.0, f64::INFINITY))?;
        let r = ratio_closed_form(b);
        worst = worst.max((outside / inside / r - 1.0).abs());
        ensure(r < prev, || format!("not decreasing at b = {b}"))?;
        prev = r;
    }
    let r2 = ratio_closed_form(2.0);
    ensure(worst <= 1e-10, || format!("relative mismatch {worst:.2e}"))?;
    ensure((r2 - 0.3130).abs() < 5e-5, || format!("R(2) = {r2}"))?;
    Ok(format!(
        "max relative mismatch {worst:.2e}, strictly decreasing, R(2) = {r2:.4}"
    ))
}

fn threshold_mismatch() -> Check {
    let cfg = core(CylinderConfig::dimensionless(2.0, 1.0))?;
    let p = core(RadialProblem::new(&cfg, SectorLabel::PHI_PLUS, 0))?;
    let f = core(matching_mismatch(&p, -1e-6))?.value;
    ensure(f.abs() <= 1e-3, || format!("|F(-1e-6)| = {:.3e}", f.abs()))?;
    Ok(format!("|F(-1e-6)| = {:.3e}", f.abs()))
}

fn oracle_agreement() -> Check {
    let start = Instant::now();
    let cfg = core(CylinderConfig::dimensionless(2.0, 1.0))?;
    let grid = core(FdGrid::with_resolution(60, 50))?;
    let mut parts = Vec::new();
    for m in 0..=2 {
        let table = core(scan_spectrum(
            &cfg,
            m,
            m,
            &[SectorLabel::PHI_PLUS],
            &ScanOptions::default(),
        ))?;
        let p = FdProblem::from(&core(RadialProblem::new(&cfg, SectorLabel::PHI_PLUS, m))?);
        if table.rows.is_empty() {
            let below = core(fd_count_below(&p, &grid.refined(), -1e-6))?;
            ensure(below == 0, || {
                format!("m = {m}: oracle has {below} levels the matching missed")
            })?;
            parts.push(format!("m={m}: no levels (oracle agrees)"));
            continue;
        }
        let levels = core(fd_eigenvalues(&p, &grid, table.rows.len()))?;
        for (row, level) in table.rows.iter().zip(&levels) {
            let d = (row.eps - level.eps).abs();
            ensure(d <= 5.0 * level.error, || {
                format!(
                    "m = {m}: eps {} vs oracle {} (error {:.2e})",
                    row.eps, level.eps, level.error
                )
            })?;
            parts.push(format!(
                "m={m}: eps {} vs {:.2e} +- {:.1e}",
                row.eps, level.eps, level.error
            ));
        }
    }
    let t = start.elapsed();
    ensure(t < Duration::from_secs(30), || format!("took {t:?}"))?;
    Ok(format!("{}; {t:?}", parts.join("; ")))
}

fn special_functions() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let (mut kummer, mut contig, mut wr, mut krec, mut half): (f64, f64, f64, f64, f64) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for _ in 0..200 {
        let a: f64 = rng.gen_range(-10.0..10.0);
        let b: f64 = rng.gen_range(0.3..12.0);
        let z: f64 = rng.gen_range(-40.0..40.0);
        let m = core(hyp1f1(a, b, z))?.value;
        let t = core(hyp1f1(b - a, b, -z))?.value;
        kummer = kummer.max((m - z.exp() * t).abs() / m.abs());
        let lo = core(hyp1f1(a - 1.0, b, z))?.value;
        let hi = core(hyp1f1(a + 1.0, b, z))?.value;
        let terms = [(b - a) * lo, (2.0 * a - b + z) * m, -a * hi];
        contig = contig.max(terms.iter().sum::<f64>().abs() / terms.iter().map(|v| v.abs()).sum::<f64>());
    }
    for _ in 0..200 {
        let nu: f64 = rng.gen_range(0.0..40.0);
        let x: f64 = rng.gen_range(0.1..50.0);
        let p = core(bessel_jy(nu, x))?;
        wr = wr.max(((p.j * p.yp - p.jp * p.y) * PI * x / 2.0 - 1.0).abs());
        let k = core(bessel_k_pair(nu + 1.0, x))?;
        let km = core(bessel_k(nu, x))?.value;
        krec = krec.max((k.k_next - km - 2.0 * (nu + 1.0) / x * k.k).abs() / k.k_next);
    }
    for i in 1..=200 {
        let x = i as f64 * 0.25;
        let amp = (2.0 / (PI * x)).sqrt();
        let h = core(bessel_jy(0.5, x))?;
        half = half
            .max((h.j - amp * x.sin()).abs() / amp)
            .max((h.y + amp * x.cos()).abs() / amp);
        let kh = (PI / (2.0 * x)).sqrt() * (-x).exp();
        half = half.max((core(bessel_k(0.5, x))?.value / kh - 1.0).abs());
        half = half.max((core(bessel_k(1.5, x))?.value / (kh * (1.0 + 1.0 / x)) - 1.0).abs());
    }
    ensure(kummer <= 1e-9 && contig <= 1e-9, || {
        format!("Kummer {kummer:.2e}, contiguous {contig:.2e}")
    })?;
    ensure(wr <= 1e-9 && krec <= 1e-9, || {
        format!("Wronskian {wr:.2e}, K recurrence {krec:.2e}")
    })?;
    ensure(half <= 1e-12, || format!("half-integer {half:.2e}"))?;
    Ok(format!(
        "Kummer {kummer:.1e}, contiguous {contig:.1e}, Wronskian {wr:.1e}, K recurrence {krec:.1e}, half-integer {half:.1e}"
    ))
}

fn lambda_min() -> Check {
    let k = PhysicalConstants::CODATA_2018;
    let est = core(lambda_min_si(k.neutron_mass, 1.913))?;
    // 4π M c² / (e κ), Gaussian: erg over statC, then statC -> C
    let e_statc = k.e * 10.0 * k.c;
    let formula = 4.0 * PI * k.neutron_mass * k.c * k.c * 1e7 / (e_statc * 1.913);
    ensure((est.formula_statc_per_cm / formula - 1.0).abs() < 1e-12, || {
        format!("formula {} vs {formula}", est.formula_statc_per_cm)
    })?;
    let factor = 20.62e-3 / (formula / (10.0 * k.c));
    ensure((1.0 / 10.0..=10.0).contains(&factor), || {
        format!("discrepancy factor {factor}")
    })?;
    let o = acsusy(&["lambda-min"]);
    let out = stdout(&o);
    ensure(o.status.success(), || format!("CLI exit {:?}", o.status.code()))?;
    ensure(
        out.contains("20.62e-3 C/cm") && out.contains("reference_c_per_cm: 0.02062"),
        || "reference value missing from output".to_string(),
    )?;
    ensure(out.contains("discrepancy_factor: 3.00"), || {
        "discrepancy factor missing from output".to_string()
    })?;
    Ok(format!(
        "formula {formula:.6e} statC/cm = {:.4e} C/cm; reference 20.62e-3 C/cm; discrepancy factor {factor:.4}",
        formula / (10.0 * k.c)
    ))
}

fn determinism() -> Check {
    let args = ["spectrum", "--b", "2", "--m-min", "-2", "--m-max", "2"];
    let strip = |o: &Output| -> String {
        stdout(o)
            .lines()
            .filter(|l| !l.starts_with("# timestamp:"))
            .collect::<Vec<_>>()
            .join("\n")
    };
    let first = acsusy(&args);
    ensure(first.status.success(), || format!("CLI exit {:?}", first.status.code()))?;
    let reference = strip(&first);
    for run in 1..3 {
        let again = strip(&acsusy(&args));
        ensure(again == reference, || format!("run {run} differs"))?;
    }
    let rows = reference.lines().filter(|l| !l.starts_with('#')).count() - 1;
    Ok(format!("3 identical runs, {rows} rows"))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("1 ground-state normalization", normalization),
        ("2 constraint gate", constraint_gate),
        ("3 density profiles", figure1),
        ("4 probability ratio", ratio),
        ("5 threshold mismatch", threshold_mismatch),
        ("6 oracle agreement", oracle_agreement),
        ("7 special functions", special_functions),
        ("8 lambda_min", lambda_min),
        ("9 determinism", determinism),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        match check() {
            Ok(detail) => println!("PASS {name}: {detail} [{:.2?}]", start.elapsed()),
            Err(detail) => {
                failed += 1;
                println!("FAIL {name}: {detail} [{:.2?}]", start.elapsed());
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}

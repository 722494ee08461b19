use acsusy_core::error::{Error, Result};
use acsusy_core::groundstate::build_ground_state;
use acsusy_core::model::{CylinderConfig, SectorLabel};
use acsusy_core::specfun::{bessel_jy, bessel_k_pair};
use acsusy_core::spectrum::{
    exterior_solution, find_bound_states, interior_solution, matching_mismatch, matching_profile, scan_spectrum,
    threshold_analysis, zero_mode, ExteriorSolution, LevelKind, PiecewiseRadial, RadialProblem, ScanOptions,
    ThresholdKind, BISECTION_WIDTH, ROOT_RESIDUAL_TOL,
};
use proptest::prelude::*;

fn problem(b: f64, sector: SectorLabel, m: i32) -> RadialProblem {
    RadialProblem::new(&CylinderConfig::dimensionless(b, 1.0).unwrap(), sector, m).unwrap()
}

fn phi_plus(b: f64, m: i32) -> RadialProblem {
    problem(b, SectorLabel::PHI_PLUS, m)
}

/// Circular well V = −V₀ inside r = 1, free outside: J_m inside, K_m outside.
#[derive(Debug, Clone, Copy)]
struct CircularWell {
    depth: f64,
    m: f64,
}

impl PiecewiseRadial for CircularWell {
    fn describe(&self) -> String {
        format!("well m={}", self.m)
    }

    fn matching_radius(&self) -> f64 {
        1.0
    }

    fn interior(&self, eps: f64, r: f64) -> Result<(f64, f64)> {
        let q = (self.depth + eps).sqrt();
        if r == 0.0 {
            return Ok((if self.m == 0.0 { 1.0 } else { 0.0 }, 0.0));
        }
        let jy = bessel_jy(self.m, q * r)?;
        Ok((jy.j, q * jy.jp))
    }

    fn exterior(&self, eps: f64, r: f64) -> Result<(f64, f64)> {
        let kappa = (-eps).sqrt();
        let k = bessel_k_pair(self.m, kappa * r)?;
        Ok((k.k, kappa * k.kp))
    }

    fn default_eps_min(&self) -> f64 {
        -self.depth * (1.0 - 1e-6)
    }

    fn spectrum_floor(&self) -> f64 {
        self.default_eps_min()
    }
}

const WELL: CircularWell = CircularWell { depth: 50.0, m: 0.0 };
const WELL_M1: CircularWell = CircularWell { depth: 50.0, m: 1.0 };

// 30-digit roots of q J_m'(q)/J_m(q) = κ K_m'(κ)/K_m(κ)
const WELL_LEVELS_M0: [f64; 3] = [
    -45.578_711_115_807_79,
    -27.175_212_244_423_104,
    -0.007_769_977_207_662_105,
];
const WELL_LEVELS_M1: [f64; 2] = [-38.839_364_895_567_27, -13.937_119_584_204_43];

#[test]
fn interior_solves_radial_equation() {
    // φ'' + φ'/r − (m²/r² + shift + b²r²)φ + εφ = 0 with the br² argument
    for &(m, eps) in &[(0, -0.7), (1, -0.5), (-2, -3.0), (3, -1.2)] {
        let p = phi_plus(2.0, m);
        let h = 1e-4;
        for i in 1..20 {
            let r = 0.05 * i as f64;
            let (v, d) = interior_solution(&p, eps, r).unwrap();
            let dd = (interior_solution(&p, eps, r + h).unwrap().1 - interior_solution(&p, eps, r - h).unwrap().1)
                / (2.0 * h);
            let res = dd + d / r - p.potential(r) * v + eps * v;
            let scale = (p.potential(r) * v).abs() + (d / r).abs() + v.abs();
            assert!(res.abs() <= 1e-6 * scale, "m = {m}, r = {r}: residual {res:e}");
        }
    }
}

#[test]
fn interior_origin_and_polynomial_case() {
    let (v, _) = interior_solution(&phi_plus(2.0, 0), -0.5, 0.0).unwrap();
    assert_eq!(v, 1.0);
    let (v, _) = interior_solution(&phi_plus(2.0, 1), -0.5, 0.0).unwrap();
    assert_eq!(v, 0.0);
    // m = 1 at ε = 0 gives a = 0 and the pure r e^{−br²/2}
    let p = phi_plus(2.0, 1);
    assert_eq!(p.kummer_a(0.0), 0.0);
    for i in 0..=10 {
        let r = 0.1 * i as f64;
        let (v, d) = interior_solution(&p, 0.0, r).unwrap();
        let g = (-r * r).exp();
        assert!((v - r * g).abs() <= 1e-15);
        assert!((d - (1.0 - 2.0 * r * r) * g).abs() <= 1e-14);
    }
    assert!(interior_solution(&p, -0.5, 1.5).is_err());
}

#[test]
fn exterior_orders_and_decay() {
    assert_eq!(phi_plus(2.0, 0).l_eff(), 2.0);
    assert_eq!(phi_plus(2.0, 2).l_eff(), 0.0);
    assert_eq!(problem(2.0, SectorLabel::CHI_PLUS, 0).l_eff(), 2.0);
    assert_eq!(problem(2.0, SectorLabel::PHI_MINUS, -1).l_eff(), 1.0);

    for m in [0, 2, 5] {
        let p = phi_plus(2.0, m);
        let mut prev = f64::INFINITY;
        for i in 0..60 {
            let r = 1.0 + 0.5 * i as f64;
            match exterior_solution(&p, -0.3, r).unwrap() {
                ExteriorSolution::Decaying { value, derivative, .. } => {
                    assert!(value > 0.0 && value < prev && derivative < 0.0);
                    prev = value;
                }
                other => panic!("expected decaying branch, got {other:?}"),
            }
        }
    }
    let p = phi_plus(2.0, 1);
    assert!(matches!(exterior_solution(&p, 0.0, 1.0), Err(Error::Degenerate(_))));
    assert!(matches!(
        exterior_solution(&p, 0.4, 2.0),
        Ok(ExteriorSolution::Scattering { .. })
    ));
    assert!(exterior_solution(&p, -0.4, 0.5).is_err());
}

#[test]
fn construction_requires_b_above_one() {
    for b in [0.5, 1.0] {
        let cfg = CylinderConfig::dimensionless(b, 1.0).unwrap();
        let e = RadialProblem::new(&cfg, SectorLabel::PHI_PLUS, 0).unwrap_err();
        assert!(matches!(e, Error::UnbrokenSusyViolation { .. }));
        assert!(scan_spectrum(&cfg, 0, 0, &[SectorLabel::PHI_PLUS], &ScanOptions::default()).is_err());
    }
}

#[test]
fn mismatch_reference_values() {
    // 30-digit values from independent ₁F₁ and K_ν evaluations
    let fixtures = [
        (1, -0.5, 0.707_773_396_070_452_4),
        (0, -1e-6, 2.097_261_722_803_282_3e-6),
        (0, -1.0, 1.571_058_206_455_055_6),
        (2, -4.0, 3.482_570_372_141_700_3),
    ];
    for &(m, eps, want) in &fixtures {
        let got = matching_mismatch(&phi_plus(2.0, m), eps).unwrap();
        assert!(!got.pole);
        assert!(
            (got.value / want - 1.0).abs() < 1e-9,
            "m = {m}, eps = {eps}: {} vs {want}",
            got.value
        );
    }
}

#[test]
fn susy_limit_of_matching_condition() {
    let p = phi_plus(2.0, 0);
    assert!(matching_mismatch(&p, -1e-6).unwrap().value.abs() <= 1e-3);
    let mut prev = f64::INFINITY;
    for k in 1..=8 {
        let f = matching_mismatch(&p, -(10f64).powi(-k)).unwrap().value.abs();
        assert!(f < prev, "|F| not decreasing at eps = -1e-{k}");
        prev = f;
    }
    assert!(prev < 1e-7);
}

#[test]
fn mismatch_positive_deep_and_decreasing() {
    for m in -3..=3 {
        for sector in SectorLabel::ALL {
            let p = problem(2.0, sector, m);
            let profile = matching_profile(&p, p.default_eps_min(), 200).unwrap();
            assert!(
                profile.poles.is_empty() && profile.brackets.is_empty(),
                "{sector} m = {m}"
            );
            assert!(profile.mismatch[0] > 0.0);
            assert!(profile.mismatch.windows(2).all(|w| w[1] <= w[0]), "{sector} m = {m}");
        }
    }
}

#[test]
fn threshold_classification() {
    let kinds: Vec<_> = (0..=3)
        .map(|m| threshold_analysis(&phi_plus(2.0, m)).unwrap().kind)
        .collect();
    assert_eq!(
        kinds,
        [
            ThresholdKind::ZeroMode,
            ThresholdKind::NonNormalizable,
            ThresholdKind::NonNormalizable,
            ThresholdKind::None
        ]
    );
    for m in -3..=3 {
        for sector in [SectorLabel::CHI_PLUS, SectorLabel::CHI_MINUS] {
            assert_eq!(
                threshold_analysis(&problem(2.0, sector, m)).unwrap().kind,
                ThresholdKind::None
            );
        }
    }
}

#[test]
fn zero_mode_is_the_closed_form_ground_state() {
    for b in [1.5, 2.0, 4.0] {
        let cfg = CylinderConfig::dimensionless(b, 1.0).unwrap();
        let gs = build_ground_state(&cfg).unwrap();
        let z = zero_mode(&phi_plus(b, 0)).unwrap().expect("zero mode exists");
        assert!((z.norm - 1.0).abs() < 1e-12);
        assert_eq!(z.nodes, 0);
        for i in 0..=40 {
            let r = 0.1 * i as f64;
            let (got, want) = (z.wavefunction(r).unwrap(), gs.wavefunction(r).unwrap());
            assert!((got / want - 1.0).abs() < 1e-10, "b = {b}, r = {r}");
        }
    }
}

#[test]
fn scan_at_b2_finds_only_zero_modes() {
    let cfg = CylinderConfig::dimensionless(2.0, 1.0).unwrap();
    let t = scan_spectrum(&cfg, -3, 3, &SectorLabel::ALL, &ScanOptions::default()).unwrap();
    assert_eq!(t.rows.len(), 2);
    assert!(t
        .rows
        .iter()
        .all(|r| r.kind == LevelKind::ZeroMode && r.eps == 0.0 && r.m == 0));
    assert_eq!(t.rows[0].sector, SectorLabel::PHI_PLUS);
    assert_eq!(t.rows[1].sector, SectorLabel::PHI_MINUS);
    assert!(t.warnings.is_empty());
    assert_eq!(t.cells.len(), 28);
    assert!(t.cells.iter().all(|c| c.bound_levels == 0 && c.mismatch_at_edge > 0.0));
}

#[test]
fn scan_symmetric_under_spin_relabeling() {
    let cfg = CylinderConfig::dimensionless(2.0, 1.0).unwrap();
    let t = scan_spectrum(&cfg, -3, 3, &SectorLabel::ALL, &ScanOptions::default()).unwrap();
    let cell = |s: SectorLabel, m: i32| t.cells.iter().find(|c| c.sector == s && c.m == m).unwrap();
    for m in -3..=3 {
        for (a, b) in [
            (SectorLabel::PHI_PLUS, SectorLabel::PHI_MINUS),
            (SectorLabel::CHI_PLUS, SectorLabel::CHI_MINUS),
        ] {
            let (x, y) = (cell(a, m), cell(b, -m));
            assert_eq!(x.l_eff, y.l_eff);
            assert_eq!(x.interior_shift, y.interior_shift);
            assert_eq!(x.threshold.kind, y.threshold.kind);
            assert_eq!(x.mismatch_at_edge, y.mismatch_at_edge);
        }
    }
}

#[test]
fn nonzero_levels_pair_across_partners() {
    let cfg = CylinderConfig::dimensionless(2.0, 1.0).unwrap();
    let t = scan_spectrum(&cfg, -3, 3, &SectorLabel::ALL, &ScanOptions::default()).unwrap();
    let levels = |phi: bool| -> Vec<f64> {
        let mut v: Vec<f64> = t
            .rows
            .iter()
            .filter(|r| r.eps != 0.0 && (r.sector.tau() < 0.0) == phi)
            .map(|r| r.eps)
            .collect();
        v.sort_by(f64::total_cmp);
        v
    };
    let (phi, chi) = (levels(true), levels(false));
    assert_eq!(phi.len(), chi.len());
    assert!(phi.iter().zip(&chi).all(|(a, b)| (a - b).abs() <= 1e-6));
}

#[test]
fn deepest_m0_level_tracks_b() {
    let mut prev = f64::INFINITY;
    for b in [1.5, 2.0, 3.0, 4.0] {
        let cfg = CylinderConfig::dimensionless(b, 1.0).unwrap();
        let t = scan_spectrum(&cfg, 0, 0, &[SectorLabel::PHI_PLUS], &ScanOptions::default()).unwrap();
        let deepest = t.rows.iter().map(|r| r.eps).fold(f64::INFINITY, f64::min);
        assert!(deepest <= prev, "b = {b}");
        assert_eq!(deepest, 0.0);
        prev = deepest;
    }
}

#[test]
fn scan_is_deterministic() {
    let cfg = CylinderConfig::dimensionless(2.0, 1.0).unwrap();
    let a = scan_spectrum(&cfg, -2, 2, &SectorLabel::ALL, &ScanOptions::default()).unwrap();
    for _ in 0..3 {
        assert_eq!(
            scan_spectrum(&cfg, -2, 2, &SectorLabel::ALL, &ScanOptions::default()).unwrap(),
            a
        );
    }
}

#[test]
fn scan_rejects_empty_ranges() {
    let cfg = CylinderConfig::dimensionless(2.0, 1.0).unwrap();
    assert!(scan_spectrum(&cfg, 1, 0, &SectorLabel::ALL, &ScanOptions::default()).is_err());
    assert!(scan_spectrum(&cfg, 0, 0, &[], &ScanOptions::default()).is_err());
}

#[test]
fn well_levels_match_reference() {
    for (well, want) in [(WELL, &WELL_LEVELS_M0[..]), (WELL_M1, &WELL_LEVELS_M1[..])] {
        let s = find_bound_states(&well, well.default_eps_min(), 400).unwrap();
        assert!(s.warnings.is_empty(), "{:?}", s.warnings);
        assert_eq!(s.states.len(), want.len());
        assert_eq!(s.poles.len(), 2);
        for (n, (st, &w)) in s.states.iter().zip(want).enumerate() {
            assert!((st.eps - w).abs() <= 1e-10 * w.abs(), "{} vs {w}", st.eps);
            assert!(st.residual.abs() <= ROOT_RESIDUAL_TOL);
            assert!(st.continuity_residual <= 1e-10);
            assert!((st.norm - 1.0).abs() <= 1e-8);
            // levels come out deepest first, so level n has n radial nodes
            assert_eq!(st.nodes, n);
        }
    }
}

#[test]
fn well_poles_are_not_roots() {
    let s = find_bound_states(&WELL, WELL.default_eps_min(), 400).unwrap();
    // F has poles at j²_{0,k} − V₀
    for (&pole, want) in s.poles.iter().zip([-44.216_814_037_053_2, -19.528_737_656_337_9]) {
        assert!((pole - want).abs() < 1e-9, "pole {pole}");
        assert!(s.states.iter().all(|st| (st.eps - pole).abs() > 1e-3));
    }
}

#[test]
fn well_refinement_stable() {
    let a = find_bound_states(&WELL, WELL.default_eps_min(), 200).unwrap();
    let b = find_bound_states(&WELL, WELL.default_eps_min(), 400).unwrap();
    assert_eq!(a.states.len(), b.states.len());
    for (x, y) in a.states.iter().zip(&b.states) {
        assert!((x.eps - y.eps).abs() <= BISECTION_WIDTH, "{} vs {}", x.eps, y.eps);
    }
}

#[test]
fn well_window_widens_when_root_is_missed() {
    // the window starts above the deepest level
    let s = find_bound_states(&WELL, -40.0, 100).unwrap();
    assert!(s.warnings.iter().any(|w| w.contains("widened")), "{:?}", s.warnings);
    assert_eq!(s.eps_min_used, WELL.spectrum_floor());
    assert_eq!(s.states.len(), 3);
    assert!((s.states[0].eps - WELL_LEVELS_M0[0]).abs() < 1e-9);
}

#[test]
fn well_wavefunction_continuous() {
    let s = find_bound_states(&WELL, WELL.default_eps_min(), 400).unwrap();
    for st in &s.states {
        let below = st.wavefunction(1.0).unwrap();
        let above = st.wavefunction(1.0 + 1e-12).unwrap();
        assert!((below - above).abs() <= 1e-9 * below.abs());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn no_negative_levels(b in 1.05f64..6.0, m in -4i32..=4, s in 0usize..4) {
        let p = problem(b, SectorLabel::ALL[s], m);
        let found = find_bound_states(&p, p.default_eps_min(), 64).unwrap();
        prop_assert!(found.states.is_empty());
        prop_assert!(found.mismatch_at_edge > 0.0);
    }

    #[test]
    fn zero_modes_count_follows_flux(b in 1.05f64..6.0, m in -4i32..=4, s in 0usize..4) {
        let sector = SectorLabel::ALL[s];
        // a = 0 at ε = 0, so φ_< = r^{σm} e^{−br²/2} meets the tail r^{σm−b}
        let z = zero_mode(&problem(b, sector, m)).unwrap();
        let sm = sector.sigma() * m as f64;
        prop_assert_eq!(z.is_some(), sector.tau() < 0.0 && sm >= 0.0 && b - sm > 1.0);
    }
}

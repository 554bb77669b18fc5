mod support;

use std::time::Instant;

use casimir_core::lifshitz::{
    eta_sweep, force_pressure, percent_difference, perfect_conductor_pressure, reduction_factor,
};
use casimir_core::{
    DielectricModel, EtaResult, ImagAxisMode, LayerStack, PlasmaParams, PlateConfig,
    QuadratureConfig, Spacing, SweepSpec,
};
use support::oracle::{self, Mirror};

fn half(model: DielectricModel) -> PlateConfig {
    PlateConfig::half_space(model)
}

fn film(model: DielectricModel, thickness: f64) -> PlateConfig {
    PlateConfig::new(
        LayerStack::film(model, thickness, DielectricModel::classical_au()).unwrap(),
        ImagAxisMode::Substitute,
    )
}

fn plasma_9ev() -> DielectricModel {
    DielectricModel::Plasma(PlasmaParams::new(9.0 * oracle::EV).unwrap())
}

fn eta(p1: &PlateConfig, p2: &PlateConfig, l: f64) -> EtaResult {
    reduction_factor(p1, p2, l, &QuadratureConfig::default()).unwrap()
}

fn ok(sweep: Vec<Result<EtaResult, casimir_core::LifshitzError>>) -> Vec<EtaResult> {
    sweep.into_iter().map(Result::unwrap).collect()
}

#[test]
fn perfect_mirrors_normalize_across_separations() {
    let pc = half(DielectricModel::PerfectConductor);
    let spec = SweepSpec::new(0.05e-6, 10e-6, 12, Spacing::Log).unwrap();
    for r in ok(eta_sweep(&pc, &pc, &spec, &QuadratureConfig::default())) {
        assert!((r.eta - 1.0).abs() < 1e-4, "{r:?}");
    }
}

#[test]
fn drude_eta_is_bounded_and_non_decreasing_in_separation() {
    let au = half(DielectricModel::classical_au());
    let spec = SweepSpec::new(0.1e-6, 2e-6, 20, Spacing::Log).unwrap();
    let rows = ok(eta_sweep(&au, &au, &spec, &QuadratureConfig::default()));
    for r in &rows {
        assert!(r.eta > 0.0 && r.eta <= 1.0 + 1e-4);
        assert!((r.eta - (r.eta_s + r.eta_p)).abs() <= 1e-15);
    }
    for w in rows.windows(2) {
        assert!(w[1].eta > w[0].eta - w[0].error_estimate, "{w:?}");
    }
}

#[test]
fn single_point_sweep_equals_direct_call() {
    let au = half(DielectricModel::annealed_au());
    let spec = SweepSpec::new(0.7e-6, 0.7e-6, 1, Spacing::Linear).unwrap();
    let rows = ok(eta_sweep(&au, &au, &spec, &QuadratureConfig::default()));
    assert_eq!(rows, vec![eta(&au, &au, 0.7e-6)]);
}

#[test]
fn plasma_mirrors_approach_ideal_limit() {
    let p = half(plasma_9ev());
    let near = eta(&p, &p, 1e-6);
    let far = eta(&p, &p, 5e-6);
    assert!(far.eta < 1.0 && far.eta > near.eta);
}

#[test]
fn swapping_plates_is_exact() {
    let a = film(DielectricModel::annealed_au(), 30e-9);
    let b = half(DielectricModel::nonannealed_au());
    let ab = eta(&a, &b, 0.4e-6);
    let ba = eta(&b, &a, 0.4e-6);
    assert!((ab.eta - ba.eta).abs() <= 1e-12);
}

#[test]
fn larger_damping_lowers_eta() {
    let spec = SweepSpec::new(0.1e-6, 2e-6, 8, Spacing::Log).unwrap();
    let q = QuadratureConfig::default();
    let c = half(DielectricModel::classical_au());
    let a = film(DielectricModel::annealed_au(), 30e-9);
    let n = film(DielectricModel::nonannealed_au(), 30e-9);
    let ec = ok(eta_sweep(&c, &c, &spec, &q));
    let ea = ok(eta_sweep(&a, &a, &spec, &q));
    let en = ok(eta_sweep(&n, &n, &spec, &q));
    for i in 0..ec.len() {
        assert!(ec[i].eta >= ea[i].eta && ea[i].eta >= en[i].eta, "row {i}");
    }
}

#[test]
fn film_effect_grows_toward_half_space_value() {
    // A two-carrier coating on a constant-damping substrate: the thicker the
    // coating, the closer the mirror is to a two-carrier half-space.
    let l = 1e-6;
    let c = half(DielectricModel::classical_au());
    let base = eta(&c, &c, l);
    let delta = |p: &PlateConfig| 100.0 * (eta(p, p, l).eta - base.eta).abs() / base.eta;
    let thin = delta(&film(DielectricModel::nonannealed_au(), 30e-9));
    let thick = delta(&film(DielectricModel::nonannealed_au(), 300e-9));
    let bulk = delta(&half(DielectricModel::nonannealed_au()));
    assert!(
        0.0 < thin && thin < thick && thick <= bulk + 1e-3,
        "{thin} {thick} {bulk}"
    );
}

#[test]
fn force_is_eta_times_ideal_pressure() {
    let q = QuadratureConfig::default();
    let pc = half(DielectricModel::PerfectConductor);
    let f0 = perfect_conductor_pressure(1e-6).unwrap();
    let f = force_pressure(&pc, &pc, 1e-6, &q).unwrap();
    assert!((f / f0 - 1.0).abs() < 1e-4);
    assert!((f - 1.300e-3).abs() < 1e-6);

    let au = half(DielectricModel::classical_au());
    let f = force_pressure(&au, &au, 1e-6, &q).unwrap();
    assert!((f - eta(&au, &au, 1e-6).eta * f0).abs() <= 1e-15 * f0);
}

#[test]
fn identical_sweeps_have_zero_difference() {
    let au = half(DielectricModel::classical_au());
    let spec = SweepSpec::new(0.2e-6, 1e-6, 3, Spacing::Log).unwrap();
    let rows = ok(eta_sweep(&au, &au, &spec, &QuadratureConfig::default()));
    assert!(percent_difference(&rows, &rows)
        .unwrap()
        .iter()
        .all(|&(_, d)| d == 0.0));
}

#[test]
fn kk_mode_agrees_with_substitute_for_constant_damping() {
    let sub = half(DielectricModel::classical_au());
    let kk = PlateConfig::new(
        LayerStack::half_space(DielectricModel::classical_au()),
        ImagAxisMode::KramersKronig,
    );
    let a = eta(&sub, &sub, 0.5e-6);
    let b = eta(&kk, &kk, 0.5e-6);
    assert!((a.eta - b.eta).abs() / a.eta < 1e-4, "{} {}", a.eta, b.eta);
}

#[test]
fn adaptive_matches_trapezoid_oracle() {
    let cases: Vec<(&str, PlateConfig, Mirror, f64)> = vec![
        (
            "classical half-spaces",
            half(DielectricModel::classical_au()),
            Mirror {
                film: None,
                substrate: Some(oracle::classical_au()),
            },
            1e-6,
        ),
        (
            "annealed 300 A film",
            film(DielectricModel::annealed_au(), 30e-9),
            Mirror {
                film: Some((30e-9, oracle::annealed_au())),
                substrate: Some(oracle::classical_au()),
            },
            0.5e-6,
        ),
        (
            "plasma half-spaces",
            half(plasma_9ev()),
            Mirror {
                film: None,
                substrate: Some(oracle::plasma(9.0 * oracle::EV)),
            },
            0.2e-6,
        ),
    ];
    for (name, plate, mirror, l) in cases {
        let start = Instant::now();
        let adaptive = eta(&plate, &plate, l);
        let adaptive_time = start.elapsed();
        let reference = oracle::eta_trapezoid(&mirror, &mirror, l, 2000);
        let rel = (adaptive.eta - reference).abs() / reference;
        println!(
            "{name}: adaptive {} ({adaptive_time:?}), oracle {reference}, rel {rel:e}",
            adaptive.eta
        );
        assert!(rel < 1e-3, "{name}");
    }
}

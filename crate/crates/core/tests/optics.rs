use casimir_core::optics::reflect_stack;
use casimir_core::{
    DielectricModel, Frequency, ImagAxisMode, Layer, LayerStack, QuadratureConfig,
    TransverseWavevector,
};
use proptest::prelude::*;

fn models() -> Vec<DielectricModel> {
    vec![
        DielectricModel::Vacuum,
        DielectricModel::classical_au(),
        DielectricModel::annealed_au(),
        DielectricModel::nonannealed_au(),
    ]
}

proptest! {
    #[test]
    fn amplitudes_are_bounded(
        xi in 1e10f64..1e18,
        q in 0.0f64..1e10,
        film_idx in 0usize..4,
        sub_idx in 0usize..5,
        d in 1e-10f64..1e-5,
    ) {
        let mut subs = models();
        subs.push(DielectricModel::PerfectConductor);
        let cfg = QuadratureConfig::default();
        let xi = Frequency::new(xi).unwrap();
        let q = TransverseWavevector::new(q).unwrap();
        let stacks = [
            LayerStack::half_space(subs[sub_idx]),
            LayerStack::film(models()[film_idx], d, subs[sub_idx]).unwrap(),
            LayerStack::new(
                vec![Layer::new(d, models()[film_idx]).unwrap(), Layer::new(2.0 * d, DielectricModel::annealed_au()).unwrap()],
                subs[sub_idx],
            ).unwrap(),
        ];
        for stack in &stacks {
            let r = reflect_stack(stack, xi, q, &cfg, ImagAxisMode::Substitute).unwrap();
            prop_assert!(r.s.abs() <= 1.0 && r.p.abs() <= 1.0, "{:?}", r);
        }
    }
}

#[test]
fn continuous_in_film_thickness() {
    // Steps of 1e-3 in relative thickness: first differences stay small and
    // vary smoothly from one step to the next.
    let cfg = QuadratureConfig::default();
    let xi = Frequency::new(1.5e14).unwrap();
    let q = TransverseWavevector::new(3e6).unwrap();
    let mut d = 1e-9;
    let mut values = Vec::new();
    while d < 1e-6 {
        let stack = LayerStack::film(
            DielectricModel::nonannealed_au(),
            d,
            DielectricModel::classical_au(),
        )
        .unwrap();
        values.push(reflect_stack(&stack, xi, q, &cfg, ImagAxisMode::Substitute).unwrap());
        d *= 1.001;
    }
    let diffs: Vec<(f64, f64)> = values
        .windows(2)
        .map(|w| (w[1].s - w[0].s, w[1].p - w[0].p))
        .collect();
    for (i, w) in diffs.windows(2).enumerate() {
        let (a, b) = (w[0], w[1]);
        assert!(a.0.abs() < 1e-4 && a.1.abs() < 1e-4, "step {i}: {a:?}");
        assert!(
            (b.0 - a.0).abs() <= 5e-2 * a.0.abs() + 1e-12,
            "step {i}: {a:?} -> {b:?}"
        );
        assert!(
            (b.1 - a.1).abs() <= 5e-2 * a.1.abs() + 1e-12,
            "step {i}: {a:?} -> {b:?}"
        );
    }
}

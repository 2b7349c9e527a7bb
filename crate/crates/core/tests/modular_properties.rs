use modcrown::modular::*;
use modcrown::C64;
use proptest::prelude::*;
use std::f64::consts::PI;

const TOL: f64 = DEFAULT_TOL;

fn model() -> impl Strategy<Value = DiscreteSpectralModel<f64>> {
    (prop::collection::btree_set(1u32..3000, 1..6), any::<bool>(), 0.1..2.0f64).prop_flat_map(|(pts, with_zero, w0)| {
        let pts: Vec<f64> = pts.into_iter().map(|p| f64::from(p) / 1000.0).collect();
        let k = pts.len();
        prop::collection::vec(0.1..2.0f64, k)
            .prop_map(move |ws| DiscreteSpectralModel::from_positive_half(&pts, &ws, with_zero.then_some(w0)).unwrap())
    })
}

// values on λ ≥ 0 are free, the mirror half is fixed by the KMS relation
fn kms_vector(m: &DiscreteSpectralModel<f64>, free: &[(f64, f64)]) -> SpectralVector<f64> {
    let n = m.len();
    let mut values = vec![C64::new(0.0, 0.0); n];
    for i in 0..n {
        let l = m.points()[i];
        let (a, b) = free[i % free.len()];
        if l > 0.0 {
            values[i] = C64::new(a, b);
            values[m.mirror(i)] = C64::new(a, b).conj() * (-PI * l).exp();
        } else if l == 0.0 {
            values[i] = C64::new(a, 0.0);
        }
    }
    SpectralVector::new(values).unwrap()
}

fn free_values() -> impl Strategy<Value = Vec<(f64, f64)>> {
    prop::collection::vec((-2.0..2.0f64, -2.0..2.0f64), 11)
}

fn arbitrary_vector(m: &DiscreteSpectralModel<f64>, free: &[(f64, f64)]) -> SpectralVector<f64> {
    SpectralVector::new((0..m.len()).map(|i| C64::new(free[i % 11].0, free[(i + 3) % 11].1)).collect()).unwrap()
}

proptest! {
    #[test]
    fn kms_vectors_are_in_the_standard_subspace(m in model(), free in free_values()) {
        let eta = kms_vector(&m, &free);
        prop_assert!(kms_check(&m, &eta, TOL).unwrap());
        prop_assert!(standard_subspace_test(&m, &eta, TOL).unwrap());
    }

    #[test]
    fn kms_and_standard_verdicts_coincide(m in model(), free in free_values(), mix in 0.0..1.0f64) {
        let a = kms_vector(&m, &free);
        let b = arbitrary_vector(&m, &free);
        let f = SpectralVector::new(
            a.values.iter().zip(&b.values).map(|(x, y)| *x * (1.0 - mix) + *y * mix).collect(),
        ).unwrap();
        for v in [&a, &b, &f] {
            prop_assert_eq!(kms_check(&m, v, TOL).unwrap(), standard_subspace_test(&m, v, TOL).unwrap());
        }
    }

    #[test]
    fn midpoint_is_j_fixed(m in model(), free in free_values()) {
        let eta = kms_vector(&m, &free);
        let v = kms_midpoint(&m, &eta, TOL).unwrap();
        let jv = conj_j(&m, &v).unwrap();
        for (a, b) in jv.values.iter().zip(&v.values) {
            prop_assert!((a - b).norm() <= 1e-12 * (1.0 + b.norm()));
        }
    }

    #[test]
    fn collapse_has_no_counterexamples(m in model(), free in free_values(), mix in 0.0..1.0f64) {
        let a = kms_vector(&m, &free);
        let b = conj_j(&m, &a).unwrap();
        let f = SpectralVector::new(
            a.values.iter().zip(&b.values).map(|(x, y)| *x * (1.0 - mix) + *y * mix).collect(),
        ).unwrap();
        prop_assert!(double_kms_collapse(&m, &f, TOL).unwrap());
        prop_assert!(double_kms_collapse(&m, &a, TOL).unwrap());
    }

    #[test]
    fn modular_group_preserves_the_standard_subspace(m in model(), free in free_values(), t in -3.0..3.0f64) {
        let f = kms_vector(&m, &free);
        let moved = modular_group(&m, &f, t).unwrap();
        prop_assert!(standard_subspace_test(&m, &moved, TOL).unwrap());
    }

    #[test]
    fn j_commutes_with_the_real_flow(m in model(), free in free_values(), t in -10.0..10.0f64) {
        let f = arbitrary_vector(&m, &free);
        let lhs = conj_j(&m, &flow(&m, &f, C64::new(t, 0.0)).unwrap()).unwrap();
        let rhs = flow(&m, &conj_j(&m, &f).unwrap(), C64::new(t, 0.0)).unwrap();
        for (a, b) in lhs.values.iter().zip(&rhs.values) {
            prop_assert!((a - b).norm() <= 1e-12 * (1.0 + b.norm()));
        }
        let jj = conj_j(&m, &conj_j(&m, &f).unwrap()).unwrap();
        prop_assert_eq!(jj, f);
    }

    #[test]
    fn commutant_pairs_really(m in model(), f1 in free_values(), f2 in free_values()) {
        let h = kms_vector(&m, &f1);
        let g = kms_vector(&m, &f2);
        let hp = conj_j(&m, &h).unwrap();
        let p = inner(&m, &hp, &g).unwrap();
        prop_assert!(p.im.abs() <= 1e-12 * (1.0 + p.norm()), "{p}");
    }

    #[test]
    fn model_json_round_trip(m in model()) {
        prop_assert_eq!(DiscreteSpectralModel::<f64>::from_json(&m.to_json()).unwrap(), m);
    }
}

#[test]
fn temperedness_verdicts_agree_on_the_corpus() {
    let corpus: Vec<TailMeasure<f64>> = [0.0, 0.5, 1.0, 2.0, 3.0]
        .iter()
        .map(|&s| TailMeasure::power_tail(s).unwrap())
        .chain([TailMeasure::stretched_exp(1.0).unwrap()])
        .collect();
    for mu in &corpus {
        let r = temperedness_test(mu).unwrap();
        assert!(r.agree, "{mu:?}: {r:?}");
    }
}

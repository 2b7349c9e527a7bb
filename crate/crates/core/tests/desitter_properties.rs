use modcrown::desitter::*;
use modcrown::C64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::{FRAC_PI_2, PI};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[test]
fn wedge_equals_positivity_region() {
    let mut r = rng(11);
    let plane = BoostGenerator::standard();
    for n in [2, 4] {
        for _ in 0..10_000 {
            let x = sample_on_shell(n, &mut r);
            assert_eq!(wedge_positivity_region(&x, plane).unwrap(), in_wedge(&x, plane), "{x:?}");
        }
    }
}

#[test]
fn beta_is_invariant_under_group_and_complex_boosts() {
    let mut r = rng(12);
    for n in [2, 3, 4] {
        for _ in 0..200 {
            let g = random_lorentz(n, &mut r);
            let z: Vec<C64> = (0..=n).map(|_| C64::new(r.gen_range(-2.0..2.0), r.gen_range(-2.0..2.0))).collect();
            let b = beta(&z);
            assert!((beta(&apply_lorentz(&g, &z)) - b).norm() < 1e-10 * (1.0 + b.norm()) * g.norm().powi(2));
            let t = C64::new(r.gen_range(-1.0..1.0), r.gen_range(-PI..PI));
            let k = r.gen_range(1..=n);
            let moved = modular_flow(t, &z, BoostGenerator::new(k, n).unwrap());
            assert!((beta(&moved) - b).norm() < 1e-10 * (1.0 + b.norm()) * 10.0);
        }
    }
}

#[test]
fn wedge_flows_into_the_crown() {
    let mut r = rng(13);
    let plane = BoostGenerator::standard();
    for n in [2, 4] {
        for _ in 0..500 {
            let x = complexify(&sample_wedge(n, &mut r));
            let t = r.gen_range(1e-3..PI - 1e-3);
            let z = modular_flow(C64::new(0.0, t), &x, plane);
            assert!(in_crown(&z), "t={t} z={z:?}");
            delta(&z).unwrap();
        }
    }
}

#[test]
fn half_period_lands_on_the_fixed_surface() {
    let mut r = rng(14);
    let plane = BoostGenerator::standard();
    for n in [2, 4] {
        for _ in 0..500 {
            let x = complexify(&sample_wedge(n, &mut r));
            let z = modular_flow(C64::new(0.0, FRAC_PI_2), &x, plane);
            assert!(tau_h_bar_fixed(&z, plane));
            let (x0, x1) = (z[0].im, z[1].im);
            let l2 = x0 * x0 - x1 * x1;
            assert!(l2 > 0.0 && l2 <= 1.0 + 1e-12, "{l2}");
        }
    }
}

#[test]
fn delta_is_group_invariant() {
    let mut r = rng(15);
    for n in [2, 4] {
        let plane = BoostGenerator::new(n, n).unwrap();
        for _ in 0..200 {
            let z = rotated_base_point(n, r.gen_range(-1.5..1.5), plane);
            let g = random_lorentz(n, &mut r);
            let gz = apply_lorentz(&g, &z);
            assert!(in_crown(&gz));
            assert!((delta(&gz).unwrap() - delta(&z).unwrap()).abs() < 1e-7);
        }
    }
}

proptest! {
    #[test]
    fn delta_formulas_agree_on_crown_samples(
        s in -1.5..1.5f64,
        a in -1.0..1.0f64,
        theta in -PI..PI,
        t in 0.05..3.0f64,
    ) {
        // build crown points by moving rotated base points and flowing wedge points
        let n = 3;
        let base = rotated_base_point(n, s, BoostGenerator::new(3, n).unwrap());
        let moved = modular_flow(C64::new(a, 0.0), &base, BoostGenerator::standard());
        prop_assert!(in_crown(&moved));
        prop_assert!(delta(&moved).is_ok());
        let x = [a.sinh() * 0.5, (1.0 + 0.25 * a.sinh().powi(2)).sqrt() * theta.cos().abs().max(0.1), 0.0, 0.0];
        let rest = (1.0 + x[0] * x[0] - x[1] * x[1]).max(0.0).sqrt();
        let x = vec![x[0], x[1], rest * theta.sin(), rest * theta.cos()];
        prop_assume!(in_wedge(&x, BoostGenerator::standard()));
        let z = modular_flow(C64::new(0.0, t), &complexify(&x), BoostGenerator::standard());
        prop_assert!(in_crown(&z));
        prop_assert!(delta(&z).is_ok());
    }

    #[test]
    fn slope_matches_lambda(s in -1.4..1.4f64, a in -1.0..1.0f64) {
        // τ̄_h-fixed points: (i cos s cosh a, i cos s sinh a, -sin s, 0)
        let z = vec![
            C64::new(0.0, s.cos() * a.cosh()),
            C64::new(0.0, s.cos() * a.sinh()),
            C64::new(-s.sin(), 0.0),
            C64::new(0.0, 0.0),
        ];
        let rep = boundary_slope_check(&z).unwrap();
        prop_assert!((rep.lambda - s.cos()).abs() < 1e-12);
        prop_assert!((rep.fitted_slope - rep.lambda).abs() <= 1e-4);
    }
}

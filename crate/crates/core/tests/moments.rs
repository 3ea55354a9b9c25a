use std::f64::consts::PI;

use num_complex::Complex64;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use subconvex::moments::{
    discrete_moment, exp_sum_at, littlewood_floor_check, moment_lp, residue_counts, spectrum, MomentGrid,
};
use subconvex::real::RealSpec;
use subconvex::sets::{materialize, IndicatorSlice, SetExpr};

fn random_slice(rng: &mut ChaCha8Rng, n: u64, density: f64) -> IndicatorSlice {
    IndicatorSlice::from_elements(n, (1..=n).filter(|_| rng.random_bool(density))).unwrap()
}

/// Neumaier-compensated sum over a shuffled order, with phases reduced in `f64`.
fn shuffled_sum(elements: &[u64], alpha: f64, rng: &mut ChaCha8Rng) -> Complex64 {
    let mut order = elements.to_vec();
    order.shuffle(rng);
    let (mut s, mut c) = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
    for n in order {
        let x = (n as f64 * alpha).fract();
        let term = Complex64::new((2.0 * PI * x).cos(), (2.0 * PI * x).sin());
        let t = s + term;
        for (ci, si, ti, xi) in [(&mut c.re, s.re, t.re, term.re), (&mut c.im, s.im, t.im, term.im)] {
            *ci += if si.abs() >= xi.abs() { (si - ti) + xi } else { (xi - ti) + si };
        }
        s = t;
    }
    s + c
}

#[test]
fn direct_sum_matches_shuffled_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let slice = materialize(&SetExpr::rfree(2), 100).unwrap();
    let got = exp_sum_at(&slice, 0.3179);
    let want = shuffled_sum(&slice.elements(), 0.3179, &mut rng);
    assert!((got - want).norm() <= 1e-10 * want.norm());
}

#[test]
fn first_moment_of_interval_matches_dense_quadrature() {
    // |Σ_{n ≤ N} e(nα)| = |sin(πNα)/sin(πα)|, integrated by a 2²²-point Riemann sum.
    let n = 256;
    let m = 1usize << 22;
    let dense: f64 = (0..m)
        .map(|j| {
            let a = j as f64 / m as f64;
            let s = (PI * a).sin();
            if s.abs() < 1e-300 {
                n as f64
            } else {
                ((PI * n as f64 * a).sin() / s).abs()
            }
        })
        .sum::<f64>()
        / m as f64;
    let est = moment_lp(&IndicatorSlice::full(n).unwrap(), 1.0, 8192).unwrap();
    assert!((est.value - dense).abs() <= 1e-3 * dense, "{} vs {dense}", est.value);
}

#[test]
fn two_element_first_moment() {
    let est = moment_lp(&IndicatorSlice::full(2).unwrap(), 1.0, 1 << 16).unwrap();
    assert!((est.value - 4.0 / PI).abs() < 1e-3);
}

#[test]
fn littlewood_floor_for_intervals() {
    let check = littlewood_floor_check(&IndicatorSlice::full(4096).unwrap(), 0.3).unwrap();
    assert!(check.passes(), "ratio {}", check.ratio);
}

#[test]
fn grid_matches_direct_sums() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let slice = materialize(&SetExpr::beatty(RealSpec::golden_ratio(), RealSpec::rational(3, 10)), 3000).unwrap();
    let m = 1 << 17;
    let grid = spectrum(&slice, m).unwrap();
    for _ in 0..32 {
        let j = rng.random_range(0..m);
        let direct = exp_sum_at(&slice, j as f64 / m as f64);
        assert!((grid[j] - direct).norm() <= 1e-9 * slice.count() as f64);
    }
}

#[test]
fn discrete_moment_matches_double_loop() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let cases = [(materialize(&SetExpr::rfree(2), 100).unwrap(), 1.5, 7u64)]
        .into_iter()
        .chain((0..40).map(|_| {
            let n = rng.random_range(1..=200);
            let s = random_slice(&mut rng, n, 0.4);
            (s, rng.random_range(0.3..2.5), rng.random_range(1..=64))
        }));
    for (slice, p, q) in cases {
        let brute: f64 = (1..=q)
            .map(|a| {
                slice
                    .iter()
                    .map(|n| {
                        let x = ((n * a) % q) as f64 / q as f64;
                        Complex64::new((2.0 * PI * x).cos(), (2.0 * PI * x).sin())
                    })
                    .sum::<Complex64>()
                    .norm()
            })
            .map(|v| if v < 1e-30 { 0.0 } else { v.powf(p) })
            .sum::<f64>()
            / q as f64;
        let got = discrete_moment(&slice, p, q).unwrap();
        assert!((got - brute).abs() <= 1e-9 * brute.max(1e-6), "p={p} q={q}: {got} vs {brute}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn orthogonality(seed in any::<u64>(), n in 1u64..3000, density in 0.05f64..1.0) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let slice = random_slice(&mut rng, n, density);
        let grid = (32 * n).next_power_of_two() as usize;
        let est = moment_lp(&slice, 2.0, grid).unwrap();
        let a = slice.count() as f64;
        prop_assert!((est.value - a).abs() <= est.refinement_delta + 1e-9 * a.max(1.0));
    }

    #[test]
    fn discrete_parseval(seed in any::<u64>(), n in 1u64..1000, q in 1u64..256) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let slice = random_slice(&mut rng, n, 0.5);
        let want: f64 = residue_counts(&slice, q).unwrap().iter().map(|&c| (c * c) as f64).sum();
        let got = discrete_moment(&slice, 2.0, q).unwrap();
        prop_assert!((got - want).abs() <= 1e-9 * want.max(1.0));
    }

    #[test]
    fn floor_and_monotonicity(seed in any::<u64>(), n in 1u64..2000, density in 0.01f64..1.0, p in 0.2f64..3.0, dp in 0.0f64..2.0) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let slice = random_slice(&mut rng, n, density);
        prop_assume!(slice.count() >= 1);
        let grid = MomentGrid::new(&slice, (32 * n).next_power_of_two() as usize).unwrap();
        let lo = grid.moment(p).unwrap();
        let hi = grid.moment(p + dp).unwrap();
        prop_assert!(lo.value >= lo.floor());
        let a = slice.count() as f64;
        prop_assert!(hi.value <= a.powf(dp) * lo.value * (1.0 + 1e-12));
    }

    #[test]
    fn singleton_moduli(p in 0.2f64..3.0, q in 1u64..500, n in 1u64..100) {
        let slice = IndicatorSlice::from_elements(n, [1]).unwrap();
        prop_assert!((discrete_moment(&slice, p, q).unwrap() - 1.0).abs() < 1e-12);
        let a = slice.count() as f64;
        prop_assert!((discrete_moment(&slice, p, 1).unwrap() - a.powf(p)).abs() < 1e-12);
    }
}

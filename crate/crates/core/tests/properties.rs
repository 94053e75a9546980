//! Structural invariants over generated sets, points and balls.

use proptest::prelude::*;

use ideal_dyn::analysis::{self, Schedule};
use ideal_dyn::density::{self, DensityKind};
use ideal_dyn::dynsys::Expansion;
use ideal_dyn::ideals::{check_axioms, exh_cutoffs, exh_norm_value, membership_verdict, Regime, Status, Submeasure};
use ideal_dyn::intset::{affine_image, AffineDirection, IntSet, SetSpec};
use ideal_dyn::{Ball, Point, System};

/// Scattered points, a few intervals and a random background.
fn arb_set(horizon: usize) -> impl Strategy<Value = IntSet> {
    (
        prop::collection::vec(0..horizon, 0..64),
        prop::collection::vec((0..horizon, 1..horizon / 8), 0..4),
        prop_oneof![Just(0.0), 0.0..0.6f64],
        any::<u32>(),
    )
        .prop_map(move |(points, runs, p, seed)| {
            let scattered = IntSet::from_elements(horizon, points);
            let runs = IntSet::from_ranges(horizon, runs.into_iter().map(|(a, l)| a..(a + l).min(horizon)));
            let noise = SetSpec::Random { p, seed: seed.into() }.build(horizon).unwrap();
            scattered.union(&runs).unwrap().union(&noise).unwrap()
        })
}

fn submeasures() -> Vec<Submeasure> {
    vec![
        Submeasure::nu(),
        Submeasure::counting(),
        Submeasure::harmonic(),
        Submeasure::cesaro(64),
    ]
}

fn arb_word(max: usize) -> impl Strategy<Value = Vec<bool>> {
    prop::collection::vec(any::<bool>(), 1..=max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn lscsm_axioms_hold(a in arb_set(4096), b in arb_set(4096)) {
        for m in submeasures() {
            let v = check_axioms(&m, &[(a.clone(), b.clone())]).unwrap();
            prop_assert_eq!(v.total(), 0, "{}: {:?}", m.name(), v);
        }
    }

    #[test]
    fn exh_norm_ignores_finite_modifications(s in arb_set(4096), f in prop::collection::vec(0usize..4096, 0..32)) {
        let cut = *exh_cutoffs(4096).last().unwrap();
        let f = IntSet::from_elements(4096, f.into_iter().map(|n| n % (cut + 1)));
        let nu = Submeasure::nu();
        let base = exh_norm_value(&nu, &s);
        prop_assert_eq!(exh_norm_value(&nu, &s.union(&f).unwrap()), base);
        prop_assert_eq!(exh_norm_value(&nu, &s.minus(&f).unwrap()), base);
    }

    #[test]
    fn exh_norm_is_subadditive(a in arb_set(4096), b in arb_set(4096)) {
        for m in submeasures() {
            let u = exh_norm_value(&m, &a.union(&b).unwrap());
            let bound = exh_norm_value(&m, &a) + exh_norm_value(&m, &b);
            prop_assert!(u <= bound + 1e-12, "{}: {} > {}", m.name(), u, bound);
        }
    }

    #[test]
    fn density_chain_holds(s in arb_set(1 << 14)) {
        let get = |k| density::estimate(&s, k).value;
        let (ld, d, bd) = (get(DensityKind::UpperLogarithmic), get(DensityKind::UpperAsymptotic), get(DensityKind::UpperBanach));
        let (dl, bdl) = (get(DensityKind::LowerAsymptotic), get(DensityKind::LowerBanach));
        prop_assert!(ld <= d + 1e-9 && d <= bd + 1e-9, "ld={} d={} bd={}", ld, d, bd);
        prop_assert!(bdl <= dl + 1e-9 && dl <= d + 1e-9, "bdl={} dl={} d={}", bdl, dl, d);
    }

    #[test]
    fn dyadic_dilation_scales_the_norm(s in arb_set(1 << 12), a in 1u32..4) {
        let k = 1usize << a;
        let wide = IntSet::from_elements(1 << 12 << a, s.iter());
        let image = affine_image(&wide, k as i64, 0, AffineDirection::Forward).unwrap();
        let nu = Submeasure::nu();
        let lhs = exh_norm_value(&nu, &image);
        let rhs = exh_norm_value(&nu, &s) / k as f64;
        prop_assert!((lhs - rhs).abs() <= 1e-12, "{} against {}", lhs, rhs);
        let back = affine_image(&image, k as i64, 0, AffineDirection::Backward).unwrap();
        prop_assert_eq!(back.truncate(1 << 12), s);
    }

    #[test]
    fn progressions_have_reciprocal_density(k in 1usize..64, h in 0usize..64) {
        let s = SetSpec::Progression { k, h: h % k }.build(1 << 16).unwrap();
        let d = density::estimate(&s, DensityKind::UpperAsymptotic).value;
        let bd = density::estimate(&s, DensityKind::UpperBanach).value;
        prop_assert!((d - 1.0 / k as f64).abs() <= k as f64 / (1 << 12) as f64, "d*={} k={}", d, k);
        prop_assert!(bd >= 1.0 / k as f64 - 1e-12);
    }

    #[test]
    fn shift_is_a_homomorphism(x in arb_word(40), y in arb_word(40), n in 0usize..48) {
        let sys = System::cantor(32).unwrap();
        let (x, y) = (Point::Bits(Expansion::word(&x)), Point::Bits(Expansion::word(&y)));
        let lhs = sys.apply(&sys.group_add(&x, &y).unwrap(), n).unwrap();
        let rhs = sys.group_add(&sys.apply(&x, n).unwrap(), &sys.apply(&y, n).unwrap()).unwrap();
        prop_assert_eq!(sys.state(&lhs).unwrap(), sys.state(&rhs).unwrap());
    }

    #[test]
    fn orbit_shift_covariance(
        system in prop_oneof![Just("doubling"), Just("rotation:golden"), Just("cantor:20")],
        seed in any::<u32>(),
        center in 0.0..1.0f64,
        radius in 0.01..0.5f64,
    ) {
        let sys = System::from_spec(system).unwrap();
        let x: Point = format!("rand:{seed}").parse().unwrap();
        let ball = Ball::new(Point::real(center).unwrap(), radius).unwrap();
        let h = 2048;
        let here = sys.orbit(&x, h).unwrap().return_set_ball(&ball).unwrap();
        let next = sys.orbit(&sys.step(&x).unwrap(), h - 1).unwrap().return_set_ball(&ball).unwrap();
        prop_assert_eq!(here.shifted_down(1).truncate(h - 1), next);
    }

    #[test]
    fn cluster_norms_shrink_and_limits_are_clusters(
        system in prop_oneof![Just("cantor:16"), Just("rotation:golden"), Just("doubling")],
        seed in any::<u32>(),
        eta in 0.0..1.0f64,
        r0 in prop_oneof![Just(0.5), Just(0.25), Just(0.125)],
    ) {
        let sys = System::from_spec(system).unwrap();
        let x: Point = format!("rand:{seed}").parse().unwrap();
        let eta = Point::real(eta).unwrap();
        let report = analysis::cluster_value(&sys, &x, &eta, Schedule::new(r0, 5).unwrap(), &Submeasure::nu(), 1 << 13, 0.01).unwrap();
        for k in 1..report.return_sets.len() {
            prop_assert!(report.return_sets[k].is_subset(&report.return_sets[k - 1]));
            prop_assert!(report.norms[k] <= report.norms[k - 1]);
        }
        if report.is_limit {
            prop_assert!(report.norms[0] >= report.threshold);
            prop_assert_ne!(report.cluster_verdict.status, Status::Member);
            let a = analysis::extract_limit_subsequence(&report).unwrap();
            prop_assert!(a.norm >= report.u_value - 1e-12, "extracted {} below u={}", a.norm, report.u_value);
            prop_assert!(a.set.is_subset(&report.return_sets[0]));
            prop_assert_eq!(exh_norm_value(&Submeasure::nu(), &a.set), a.norm);
        }
    }

    #[test]
    fn verdicts_are_monotone_in_the_set(a in arb_set(1 << 12), b in arb_set(1 << 12)) {
        let nu = Submeasure::nu();
        let small = membership_verdict(&nu, Regime::Exh, &a, 0.01).unwrap();
        let big = membership_verdict(&nu, Regime::Exh, &a.union(&b).unwrap(), 0.01).unwrap();
        prop_assert!(small.witness <= big.witness);
        if small.status == Status::Positive {
            prop_assert_eq!(big.status, Status::Positive);
        }
    }
}

use asep_core::{
    bernoulli_product, classify_phase, make_params, project, tv_distance, ConfigDist,
    DensityPhase, Region,
};
use proptest::prelude::*;

fn arb_dist(len: usize) -> impl Strategy<Value = ConfigDist> {
    prop::collection::vec(0.0f64..1.0, 1usize << len)
        .prop_filter("positive mass", |w| w.iter().sum::<f64>() > 1e-6)
        .prop_map(move |w| ConfigDist::normalized_from_weights(len, w).unwrap())
}

proptest! {
    #[test]
    fn tv_is_a_metric(a in arb_dist(3), b in arb_dist(3), c in arb_dist(3)) {
        let ab = tv_distance(&a, &b).unwrap();
        let ba = tv_distance(&b, &a).unwrap();
        let ac = tv_distance(&a, &c).unwrap();
        let cb = tv_distance(&c, &b).unwrap();
        prop_assert!((ab - ba).abs() < 1e-14);
        prop_assert!((0.0..=1.0).contains(&ab));
        prop_assert!(ab <= ac + cb + 1e-12);
        prop_assert!(tv_distance(&a, &a).unwrap() < 1e-15);
        if ab < 1e-15 {
            for m in 0..8 {
                prop_assert!((a.prob(m) - b.prob(m)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn projection_nests(d in arb_dist(5), a in 1usize..=5, span in 0usize..5, inner_lo in 0usize..5, inner_span in 0usize..5) {
        let b = (a + span).min(5);
        let outer = project(&d, (a, b)).unwrap();
        let width = b - a + 1;
        let ja = a + inner_lo.min(width - 1);
        let jb = (ja + inner_span).min(b);
        let direct = project(&d, (ja, jb)).unwrap();
        let nested = project(&outer, (ja - a + 1, jb - a + 1)).unwrap();
        for m in 0..1usize << (jb - ja + 1) {
            prop_assert!((direct.prob(m) - nested.prob(m)).abs() < 1e-12);
        }
    }

    #[test]
    fn projection_preserves_mass(d in arb_dist(4), a in 1usize..=4, span in 0usize..4) {
        let b = (a + span).min(4);
        let p = project(&d, (a, b)).unwrap();
        let total: f64 = (0..1usize << (b - a + 1)).map(|m| p.prob(m)).sum();
        prop_assert!((total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn bernoulli_marginals(rho in 0.0f64..=1.0, len in 1usize..=8) {
        let d = bernoulli_product(rho, len).unwrap();
        for site in 1..=len {
            prop_assert!((d.single_site_marginal(site).unwrap() - rho).abs() < 1e-12);
        }
    }

    #[test]
    fn phase_labels_partition(q in 0.0f64..0.99, alpha in 0.01f64..3.0, beta in 0.01f64..3.0) {
        let p = make_params(6, q, alpha, beta).unwrap();
        let phase = classify_phase(&p);
        // Exactly one density label: re-deriving from the margins must agree.
        let hd = p.v > p.u.max(1.0) + 1e-9;
        let ld = p.u > p.v.max(1.0) + 1e-9;
        let mc = p.u.max(p.v) < 1.0 - 1e-9;
        prop_assert!(u8::from(hd) + u8::from(ld) + u8::from(mc) <= 1);
        if hd { prop_assert_eq!(phase.density_phase, DensityPhase::HighDensity); }
        if ld { prop_assert_eq!(phase.density_phase, DensityPhase::LowDensity); }
        if mc { prop_assert_eq!(phase.density_phase, DensityPhase::MaximalCurrent); }
        let uv = p.u * p.v;
        if uv > 1.0 + 1e-9 { prop_assert_eq!(phase.region, Region::Shock); }
        if uv < 1.0 - 1e-9 { prop_assert_eq!(phase.region, Region::Fan); }
    }

    #[test]
    fn tv_against_point_masses(rho in 0.0f64..=1.0) {
        // TV between Ber_1(rho) and Ber_1(r) is |rho - r|.
        let a = bernoulli_product(rho, 1).unwrap();
        let b = bernoulli_product(rho / 2.0, 1).unwrap();
        prop_assert!((tv_distance(&a, &b).unwrap() - rho / 2.0).abs() < 1e-12);
    }
}

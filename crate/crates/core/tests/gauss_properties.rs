use cogx_core::bounds::{thm1_bounds_raw, with_optimal_gammas};
use cogx_core::gauss::{
    assemble, conditional_mutual_information, mutual_information, Component, ComponentSet,
};
use cogx_core::model::{validate, ChannelParams, SignalingParams};
use proptest::prelude::*;

const TOL: f64 = 1e-9;

fn point() -> impl Strategy<Value = (ChannelParams, SignalingParams)> {
    (
        (0.0..1.5f64, 0.0..1.5f64, -1.0..1.0f64, -1.0..1.0f64, -1.0..4.0f64, -1.0..4.0f64),
        (0.05..0.95f64, -3.0..0.0f64, 0.05..0.95f64, -0.5..1.5f64, -0.5..1.5f64),
    )
        .prop_map(|((a12, a21, ln1, ln2, lp1, lp2), (s, lb, t, g1, g2))| {
            let (n1, n2) = (10f64.powf(ln1), 10f64.powf(ln2));
            let ch = ChannelParams {
                alpha12: a12,
                alpha21: a21,
                n1,
                n2,
                p1: n1 * 10f64.powf(lp1),
                p2: n2 * 10f64.powf(lp2),
                antennas: 1,
            };
            let sig = SignalingParams::from_fractions(&ch, s, 10f64.powf(lb), t).with_gammas(g1, g2);
            (ch, sig)
        })
}

/// Each component lands in A, B, C or none; A and B must be nonempty.
fn sets(min_b: usize) -> impl Strategy<Value = (Vec<Component>, Vec<Component>, Vec<Component>)> {
    proptest::collection::vec(0..4u8, 6)
        .prop_map(|tags| {
            let pick = |k| Component::ALL.iter().zip(&tags).filter(|(_, &t)| t == k).map(|(&c, _)| c).collect::<Vec<_>>();
            (pick(0), pick(1), pick(2))
        })
        .prop_filter("A and B need members", move |(a, b, _)| !a.is_empty() && b.len() >= min_b)
}

fn of(v: &[Component]) -> ComponentSet {
    ComponentSet::of(v)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn draws_validate((ch, sig) in point()) {
        prop_assert!(validate(&ch, &sig).is_empty());
    }

    #[test]
    fn information_is_nonnegative((ch, sig) in point(), (a, b, c) in sets(1)) {
        let (_, cov) = assemble(&ch, &sig).unwrap();
        let v = conditional_mutual_information(&cov, of(&a), of(&b), of(&c)).unwrap();
        prop_assert!(v >= 0.0);
    }

    #[test]
    fn information_is_symmetric((ch, sig) in point(), (a, b, c) in sets(1)) {
        let (_, cov) = assemble(&ch, &sig).unwrap();
        let ab = conditional_mutual_information(&cov, of(&a), of(&b), of(&c)).unwrap();
        let ba = conditional_mutual_information(&cov, of(&b), of(&a), of(&c)).unwrap();
        prop_assert!((ab - ba).abs() <= TOL);
    }

    #[test]
    fn chain_rule_holds((ch, sig) in point(), (a, b, c) in sets(2), cut in 1usize..6) {
        let (_, cov) = assemble(&ch, &sig).unwrap();
        let cut = cut.min(b.len() - 1);
        let (b1, b2) = b.split_at(cut);
        let whole = conditional_mutual_information(&cov, of(&a), of(&b), of(&c)).unwrap();
        let first = conditional_mutual_information(&cov, of(&a), of(b1), of(&c)).unwrap();
        let second = conditional_mutual_information(&cov, of(&a), of(b2), of(b1) | of(&c)).unwrap();
        prop_assert!((whole - first - second).abs() <= TOL, "{} vs {}", whole, first + second);
    }

    #[test]
    fn covariance_is_psd_and_meets_power((ch, sig) in point()) {
        let (_, cov) = assemble(&ch, &sig).unwrap();
        prop_assert!(cov.check_psd().is_ok());
        prop_assert!(cov.check(&ch).is_ok());
    }

    #[test]
    fn conditioning_on_nothing_is_plain_information((ch, sig) in point(), (a, b, _) in sets(1)) {
        let (_, cov) = assemble(&ch, &sig).unwrap();
        let plain = mutual_information(&cov, of(&a), of(&b)).unwrap();
        let cond = conditional_mutual_information(&cov, of(&a), of(&b), ComponentSet::EMPTY).unwrap();
        prop_assert!((plain - cond).abs() <= TOL);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2_000))]

    /// The penalty-free bounds are plain information terms.
    #[test]
    fn bounds_are_finite_at_heuristic_gammas((ch, sig) in point()) {
        let sig = with_optimal_gammas(&ch, &sig).unwrap();
        let b = thm1_bounds_raw(&ch, &sig).unwrap();
        for v in [b.b11, b.b21, b.b_sum1, b.b12, b.b22, b.b_sum2] {
            prop_assert!(v.is_finite());
        }
        prop_assert!(b.b21 >= 0.0 && b.b12 >= 0.0);
    }
}

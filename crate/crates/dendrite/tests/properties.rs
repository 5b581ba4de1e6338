//! Property tests for the structural invariants: enumeration round trips,
//! rewrite bijections, metric axioms, net certification, and text-format
//! round trips.

use dendrite::dyadics::{dyadic_to_index, gamma_cap_kth, index_to_dyadic, Dyadic};
use dendrite::geometry::{build_net_dr, intrinsic_distance, realize_planar, PathPoint};
use dendrite::interval::tent;
use dendrite::itinerary::{apply_f, increment_head, time_to_origin, Itinerary, Step};
use dendrite::rational::{rat, Rat};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn arb_dyadic() -> impl Strategy<Value = Dyadic> {
    (1u32..=6).prop_flat_map(|l| {
        (0u64..(1u64 << (l - 1)))
            .prop_map(move |k| Dyadic::new(2 * k + 1, l).expect("odd numerator in range"))
    })
}

fn arb_step() -> impl Strategy<Value = Step> {
    (0u32..=10, arb_dyadic()).prop_map(|(branch, dyadic)| Step::new(branch, dyadic))
}

fn arb_param() -> impl Strategy<Value = Rat> {
    (1i64..=120, 1i64..=120).prop_map(|(a, b)| {
        let (n, d) = if a <= b { (a, b) } else { (b, a) };
        rat(n, d)
    })
}

fn arb_finite() -> impl Strategy<Value = Itinerary> {
    (
        prop::collection::vec(arb_step(), 0..4),
        0u32..=10,
        arb_param(),
    )
        .prop_map(|(steps, tb, param)| {
            Itinerary::finite(steps, tb, param).expect("parameter lies in (0,1]")
        })
}

proptest! {
    #![proptest_config(ProptestConfig {
        failure_persistence: None,
        ..ProptestConfig::default()
    })]

    #[test]
    fn enumeration_round_trips(n in 1u64..1_000_000) {
        prop_assert_eq!(dyadic_to_index(&index_to_dyadic(n)), n);
    }

    #[test]
    fn cap_subsequence_is_monotone_and_bounded(
        num in 1i64..=64,
        k in 1u64..=100,
    ) {
        let r = rat(num, 64);
        let a = gamma_cap_kth(&r, k).unwrap();
        let b = gamma_cap_kth(&r, k + 1).unwrap();
        prop_assert!(a.value() <= r);
        prop_assert!(b.value() <= r);
        prop_assert!(dyadic_to_index(&a) < dyadic_to_index(&b));
    }

    #[test]
    fn head_shift_round_trips(it in arb_finite()) {
        let up = increment_head(&it);
        prop_assert_eq!(apply_f(&up), it);
    }

    #[test]
    fn finite_orbits_reach_origin_and_stay(it in arb_finite()) {
        let n = time_to_origin(&it).unwrap();
        let mut cur = it.clone();
        for step in 0..n {
            prop_assert!(!cur.is_origin(), "origin reached early at {step}");
            cur = apply_f(&cur);
        }
        prop_assert!(cur.is_origin());
        prop_assert!(apply_f(&cur).is_origin());
    }

    #[test]
    fn metric_axioms_hold_exactly(a in arb_finite(), b in arb_finite(), c in arb_finite()) {
        let tol = rat(1, 256);
        let pa = PathPoint::from_itinerary(&a, &tol).unwrap();
        let pb = PathPoint::from_itinerary(&b, &tol).unwrap();
        let pc = PathPoint::from_itinerary(&c, &tol).unwrap();
        let ab = pa.distance(&pb);
        prop_assert_eq!(&ab, &pb.distance(&pa));
        prop_assert_eq!(ab.is_zero(), a == b);
        prop_assert!(pa.distance(&pc) <= &ab + pb.distance(&pc));
    }

    #[test]
    fn euclidean_is_dominated_by_intrinsic(a in arb_finite(), b in arb_finite()) {
        let tol = rat(1, 1 << 16);
        let d = intrinsic_distance(&a, &b, &tol).unwrap();
        let (pa, pb) = (realize_planar(&a, 12), realize_planar(&b, 12));
        let euclid = ((pa.x - pb.x).powi(2) + (pa.y - pb.y).powi(2)).sqrt();
        let d_f64 = d.numer().to_string().parse::<f64>().unwrap()
            / d.denom().to_string().parse::<f64>().unwrap();
        prop_assert!(euclid <= d_f64 + 1e-9);
    }

    #[test]
    fn net_certification_on_random_beam_points(
        branch in 0u32..=16,
        num in 1i64..=99,
    ) {
        let r = rat(3, 4);
        let t = rat(num, 100);
        prop_assume!(t <= r);
        let eps = rat(1, 32);
        let net = build_net_dr(&r, &eps, 12).unwrap();
        let target = Itinerary::beam_point(branch, t).unwrap();
        let tol = rat(1, 4096);
        let tp = PathPoint::from_itinerary(&target, &tol).unwrap();
        let min = net
            .points
            .iter()
            .map(|p| PathPoint::from_itinerary(p, &tol).unwrap().distance(&tp))
            .min()
            .unwrap();
        prop_assert!(min <= net.resolution);
    }

    #[test]
    fn itinerary_text_round_trips(it in arb_finite()) {
        let s = it.to_string();
        let back: Itinerary = s.parse().unwrap();
        prop_assert_eq!(back, it);
    }

    #[test]
    fn tent_preserves_denominators_and_stays_inside(
        p in 0i64..=500,
        q in 1i64..=500,
    ) {
        prop_assume!(p <= q);
        let x = rat(p, q);
        let y = tent(&x).unwrap();
        prop_assert!(!y.is_negative() && y <= rat(1, 1));
        // Denominator never grows: it divides the (reduced) input's.
        let qx = x.denom().clone();
        prop_assert_eq!(BigInt::from(0), qx % y.denom());
    }
}

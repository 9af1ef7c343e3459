//! Structural properties of the leakage measures on random instances.

mod common;

use alpha_leakage::leakage::{alpha_leakage_from_hellinger, hellinger_from_alpha_leakage};
use alpha_leakage::measures::{alpha_center, k_alpha};
use alpha_leakage::prob::{cascade, product_channel, product_dist};
use alpha_leakage::{
    arimoto_mi, f_leakage, make_joint, maximal_alpha_leakage, maximal_f_leakage, shannon_mi, sibson_mi,
    uniform_input_bound, AlphaOrder, Channel, Dist, FGenerator, SolverOptions,
};
use common::*;
use proptest::prelude::*;

const SLACK: f64 = 1e-8;

fn cap(w: &Channel, order: AlphaOrder) -> f64 {
    let uniform = Dist::uniform_on(w.input().clone());
    maximal_alpha_leakage(w, order, Some(&uniform), SolverOptions::default())
        .and_then(|r| r.require_converged())
        .unwrap()
        .value
}

fn order() -> impl Strategy<Value = AlphaOrder> {
    prop_oneof![(1.05f64..12.0).prop_map(AlphaOrder::Finite), Just(AlphaOrder::Infinity),]
}

fn chi2() -> FGenerator {
    FGenerator::custom("chi2", |t| (t - 1.0) * (t - 1.0), |t| 2.0 * (t - 1.0), 1.0, f64::INFINITY).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn leakage_is_nonnegative_and_bounded(w in channel_strategy(4, 4), a in order()) {
        let v = cap(&w, a);
        let top = (w.n_inputs().min(w.n_outputs()) as f64).ln();
        prop_assert!(v >= 0.0 && v <= top + SLACK, "{v} vs {top}");
        if w.is_rank_one(1e-12) {
            prop_assert!(v < 1e-9);
        }
    }

    #[test]
    fn leakage_grows_with_order(w in channel_strategy(4, 4)) {
        let orders = [AlphaOrder::One, AlphaOrder::Finite(1.5), AlphaOrder::Finite(2.0),
            AlphaOrder::Finite(4.0), AlphaOrder::Finite(10.0), AlphaOrder::Infinity];
        let values: Vec<f64> = orders.iter().map(|&a| cap(&w, a)).collect();
        for pair in values.windows(2) {
            prop_assert!(pair[1] >= pair[0] - SLACK, "{values:?}");
        }
    }

    #[test]
    fn processing_cannot_increase_leakage(
        (first, second) in (2usize..=3, 2usize..=3, 2usize..=3)
            .prop_flat_map(|(a, b, c)| (channel_of(a, b), channel_of(b, c))),
        a in order(),
    ) {
        let end = cap(&cascade(&first, &second).unwrap(), a);
        prop_assert!(end <= cap(&first, a) + SLACK);
        prop_assert!(end <= cap(&second, a) + SLACK);
    }

    #[test]
    fn leakage_is_quasi_convex_in_the_channel(
        (w1, w2) in (2usize..=3, 2usize..=3).prop_flat_map(|(a, b)| (channel_of(a, b), channel_of(a, b))),
        a in order(),
    ) {
        let ends = cap(&w1, a).max(cap(&w2, a));
        for lambda in [0.25, 0.5, 0.75] {
            prop_assert!(cap(&w1.mix(&w2, lambda).unwrap(), a) <= ends + SLACK);
        }
    }

    #[test]
    fn shared_input_composition_is_subadditive(
        (w1, w2) in (2usize..=3, 2usize..=3, 2usize..=3).prop_flat_map(|(x, a, b)| (channel_of(x, a), channel_of(x, b))),
        a in order(),
    ) {
        let joint = cap(&paired_channel(&w1, &w2), a);
        prop_assert!(joint <= cap(&w1, a) + cap(&w2, a) + SLACK);
    }

    #[test]
    fn product_channels_add(
        (w1, w2) in (channel_strategy(3, 3), channel_strategy(3, 3)),
        a in prop_oneof![Just(1.5), Just(2.0), Just(f64::INFINITY)],
    ) {
        let a = AlphaOrder::new(a).unwrap();
        let sum = cap(&w1, a) + cap(&w2, a);
        let both = cap(&product_channel(&[w1, w2]).unwrap(), a);
        prop_assert!((both - sum).abs() < 1e-7, "{both} vs {sum}");
    }

    #[test]
    fn mutual_information_adds_under_product_priors(
        (w1, p1) in channel_strategy(3, 3).prop_flat_map(|w| { let n = w.n_inputs(); (Just(w), dist_strategy(n, n)) }),
        (w2, p2) in channel_strategy(3, 3).prop_flat_map(|w| { let n = w.n_inputs(); (Just(w), dist_strategy(n, n)) }),
    ) {
        let sum = shannon_mi(&make_joint(&p1, &w1).unwrap()) + shannon_mi(&make_joint(&p2, &w2).unwrap());
        let prior = product_dist(&[p1, p2]).unwrap();
        let both = shannon_mi(&make_joint(&prior, &product_channel(&[w1, w2]).unwrap()).unwrap());
        prop_assert!((both - sum).abs() < 1e-7);
    }

    #[test]
    fn k_alpha_and_center_identity(
        (rows, q) in (2usize..=4, 2usize..=5).prop_flat_map(|(k, n)| {
            (prop::collection::vec(dist_strategy(n, n), k), dist_strategy(n, n))
        }),
        alpha in 1.05f64..10.0,
    ) {
        for r in &rows {
            prop_assert!(k_alpha(r, &q, alpha).unwrap() >= 1.0 - 1e-12);
        }
        let c = alpha_center(&rows, alpha).unwrap();
        let at_center: f64 = rows.iter().map(|r| k_alpha(r, &c.center, alpha).unwrap()).sum();
        let z_alpha = c.normalizer.powf(alpha);
        prop_assert!((at_center - z_alpha).abs() <= 1e-9 * z_alpha);
        // and the center minimizes the sum
        let elsewhere: f64 = rows.iter().map(|r| k_alpha(r, &q, alpha).unwrap()).sum();
        prop_assert!(elsewhere >= at_center * (1.0 - 1e-12));
    }

    #[test]
    fn hellinger_round_trip(w in channel_strategy(3, 3), alpha in 1.1f64..8.0) {
        let opts = SolverOptions::default();
        let l = cap(&w, AlphaOrder::Finite(alpha));
        let h = maximal_f_leakage(&w, &FGenerator::hellinger(alpha).unwrap(), opts).unwrap().value;
        prop_assert!((alpha_leakage_from_hellinger(h, alpha) - l).abs() < 1e-9);
        prop_assert!((hellinger_from_alpha_leakage(l, alpha) - h).abs() < 1e-9 * (1.0 + h));
    }

    #[test]
    fn chi_square_matches_order_two_by_direct_minimization(j in joint_strategy(3, 3)) {
        let opts = SolverOptions::default();
        let fac = alpha_leakage::prob::conditional_of(&j);
        let sibson = sibson_mi(&fac.prior, &fac.channel, AlphaOrder::Finite(2.0)).unwrap();
        let direct = f_leakage(&j, &chi2(), opts).unwrap().value;
        prop_assert!((alpha_leakage_from_hellinger(direct, 2.0) - sibson).abs() < 1e-7, "{direct} {sibson}");
    }

    #[test]
    fn uniform_input_bound_is_dominated(w in channel_strategy(4, 4), alpha in 1.05f64..12.0) {
        let b = uniform_input_bound(&w, alpha).unwrap();
        let v = cap(&w, AlphaOrder::Finite(alpha));
        prop_assert!(b.bound <= v + SLACK);
        if b.tight {
            prop_assert!((b.bound - v).abs() < 1e-8, "{} vs {v}", b.bound);
        }
    }

    #[test]
    fn arimoto_mi_is_bounded_by_sibson(j in joint_strategy(3, 4), a in order()) {
        let fac = alpha_leakage::prob::conditional_of(&j);
        let s = sibson_mi(&fac.prior, &fac.channel, a).unwrap();
        let arimoto = arimoto_mi(&j, a);
        prop_assert!(arimoto >= -SLACK);
        // both are dominated by the maximal leakage of the channel
        prop_assert!(s <= cap(&fac.channel, a) + SLACK);
        prop_assert!(arimoto <= cap(&fac.channel, a) + SLACK);
    }
}

#[test]
fn symmetric_channels_meet_the_uniform_bound() {
    // row permutations of one another with permuted columns
    let w = Channel::from_rows(vec![vec![0.6, 0.3, 0.1], vec![0.1, 0.6, 0.3], vec![0.3, 0.1, 0.6]]).unwrap();
    let b = uniform_input_bound(&w, 3.0).unwrap();
    assert!(b.tight);
    assert!((b.bound - cap(&w, AlphaOrder::Finite(3.0))).abs() < 1e-10);
}

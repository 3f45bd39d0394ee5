mod common;

use proptest::prelude::*;

use pfsa_space::pfsa::{
    belief_from_string, minimal_closed_restriction, minimize, stationary_distribution,
    word_probability, DEFAULT_MINIMIZE_TOL,
};
use pfsa_space::process::*;
use pfsa_space::sync::epsilon_synchronize;
use pfsa_space::Pfsa;

fn machine() -> impl Strategy<Value = Pfsa> {
    (0usize..3).prop_flat_map(|g| {
        let n = common::GRAPHS[g].len();
        proptest::collection::vec(0.05f64..0.95, n).prop_map(move |ps| common::on_graph(g, &ps))
    })
}

fn handle(g: &Pfsa) -> ProcessHandle {
    ProcessHandle::new(g, "").unwrap()
}

fn exact(g: &ProcessHandle, h: &ProcessHandle) -> f64 {
    inner_exact(g, h).unwrap().value
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn word_probabilities_match_forward_algorithm(g in machine()) {
        for len in 0..=5 {
            for w in common::words(2, len) {
                let p = word_probability(&g, &w).unwrap();
                prop_assert!((p - common::word_prob(&g, &w)).abs() <= 1e-12);
                let ext: f64 = (0..2)
                    .map(|s| {
                        let mut v = w.clone();
                        v.push(s);
                        word_probability(&g, &v).unwrap()
                    })
                    .sum();
                let pre: f64 = (0..2)
                    .map(|s| {
                        let mut v = vec![s];
                        v.extend(&w);
                        word_probability(&g, &v).unwrap()
                    })
                    .sum();
                prop_assert!((ext - p).abs() <= 1e-12);
                prop_assert!((pre - p).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn stationary_agrees_with_power_iteration(g in machine()) {
        let lu = stationary_distribution(&g).unwrap();
        for (a, b) in lu.as_slice().iter().zip(common::stationary(&g)) {
            prop_assert!((a - b).abs() <= 1e-12);
        }
    }

    #[test]
    fn reduction_preserves_the_process(g in machine()) {
        let r = minimize(&minimal_closed_restriction(&g).unwrap(), DEFAULT_MINIMIZE_TOL);
        prop_assert!(common::fdd_gap(&g, &r, 6) <= 1e-10);
        prop_assert!(r.num_states() <= g.num_states());
    }

    #[test]
    fn synchronizing_strings_are_shortest(g in machine(), k in 1u32..8) {
        let eps = 10f64.powi(-(k as i32));
        let r = epsilon_synchronize(&g, eps, 32).unwrap();
        let peak = |w: &[usize]| common::belief(&g, w).into_iter().fold(0.0, f64::max);
        prop_assert!(peak(&r.string) >= 1.0 - eps);
        prop_assert_eq!(belief_from_string(&g, &r.string).unwrap().max(), r.achieved);
        for len in 0..r.string.len() {
            for w in common::words(2, len) {
                prop_assert!(peak(&w) < 1.0 - eps);
            }
        }
    }

    #[test]
    fn vector_space_laws(g in machine(), h in machine(), a in -2.0f64..2.0, b in -2.0f64..2.0) {
        let (g, h) = (handle(&g), handle(&h));
        let gh = sum_processes(&g, &h).unwrap();
        let hg = sum_processes(&h, &g).unwrap();
        prop_assert!(common::fdd_gap(gh.machine(), hg.machine(), 5) <= 1e-9);

        let lhs = scale_process(a, &gh).unwrap();
        let rhs = sum_processes(&scale_process(a, &g).unwrap(), &scale_process(a, &h).unwrap()).unwrap();
        prop_assert!(common::fdd_gap(lhs.machine(), rhs.machine(), 5) <= 1e-9);

        let lhs = scale_process(a + b, &g).unwrap();
        let rhs = sum_processes(&scale_process(a, &g).unwrap(), &scale_process(b, &g).unwrap()).unwrap();
        prop_assert!(common::fdd_gap(lhs.machine(), rhs.machine(), 5) <= 1e-9);

        let lhs = scale_process(a * b, &g).unwrap();
        let rhs = scale_process(a, &scale_process(b, &g).unwrap()).unwrap();
        prop_assert!(common::fdd_gap(lhs.machine(), rhs.machine(), 5) <= 1e-9);
    }

    #[test]
    fn sum_is_associative(g in machine(), h in machine(), k in machine()) {
        let (g, h, k) = (handle(&g), handle(&h), handle(&k));
        let left = sum_processes(&sum_processes(&g, &h).unwrap(), &k).unwrap();
        let right = sum_processes(&g, &sum_processes(&h, &k).unwrap()).unwrap();
        prop_assert!(common::fdd_gap(left.machine(), right.machine(), 5) <= 1e-9);
    }

    #[test]
    fn exact_inner_matches_uniform_word_average(g in machine(), h in machine()) {
        let (g, h) = (handle(&g), handle(&h));
        let v = exact(&g, &h);
        prop_assert!((v - common::uniform_inner(g.machine(), h.machine(), 6)).abs() <= 1e-9);
    }

    #[test]
    fn inner_product_is_bilinear_symmetric_positive(g in machine(), h in machine(), k in machine(), a in -2.0f64..2.0) {
        let (g, h, k) = (handle(&g), handle(&h), handle(&k));
        prop_assert!((exact(&g, &h) - exact(&h, &g)).abs() <= 1e-12);
        let ag_h = sum_processes(&scale_process(a, &g).unwrap(), &h).unwrap();
        let lhs = exact(&ag_h, &k);
        let rhs = a * exact(&g, &k) + exact(&h, &k);
        prop_assert!((lhs - rhs).abs() <= 1e-9 * (1.0 + rhs.abs()));
        let (gg, hh) = (exact(&g, &g), exact(&h, &h));
        prop_assert!(gg >= 0.0);
        prop_assert!(exact(&g, &h).abs() <= (gg * hh).sqrt() * (1.0 + 1e-12));
    }

    #[test]
    fn angles_are_scale_invariant_and_flip_under_negation(g in machine(), h in machine(), a in 0.1f64..3.0) {
        let (g, h) = (handle(&g), handle(&h));
        let cfg = McConfig::default();
        let ang = |x: &ProcessHandle, y: &ProcessHandle| angle(x, y, InnerMode::Exact, &cfg).map(|r| r.value);
        if let Ok(base) = ang(&g, &h) {
            prop_assert!((ang(&scale_process(a, &g).unwrap(), &h).unwrap() - base).abs() <= 1e-9);
            let flipped = ang(&scale_process(-a, &g).unwrap(), &h).unwrap();
            prop_assert!((flipped - (std::f64::consts::PI - base)).abs() <= 1e-9);
            prop_assert!((ang(&h, &g).unwrap() - base).abs() <= 1e-12);
        }
    }
}

#[test]
fn zero_process_has_zero_norm_and_undefined_angles() {
    let g = handle(&common::on_graph(0, &[0.8, 0.3]));
    let z = zero_process(g.alphabet());
    assert_eq!(process_norm(&z).unwrap(), 0.0);
    assert!(matches!(
        angle(&g, &z, InnerMode::Exact, &McConfig::default()),
        Err(pfsa_space::Error::ZeroNorm(_))
    ));
    let zero_scaled = scale_process(0.0, &g).unwrap();
    assert_eq!(zero_scaled.num_states(), 1);
}

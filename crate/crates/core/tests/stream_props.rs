mod common;

use std::f64::consts::PI;

use proptest::prelude::*;

use pfsa_space::fixtures;
use pfsa_space::pfsa::generate_sequence;
use pfsa_space::process::{angle, scale_process, InnerMode, McConfig, ProcessHandle};
use pfsa_space::stream::*;
use pfsa_space::{Alphabet, SymbolStream};

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    v[v.len() / 2]
}

#[test]
fn estimates_converge_to_true_derivatives() {
    for g in [fixtures::g2(), fixtures::g3_reset()] {
        let gaps: Vec<f64> = [10_000, 100_000, 1_000_000]
            .iter()
            .map(|&n| {
                median(
                    (0..5)
                        .map(|seed| {
                            let s = generate_sequence(&g, n, seed).unwrap();
                            let t =
                                estimate_derivatives(&s, DEFAULT_DEPTH, DEFAULT_SMOOTHING).unwrap();
                            model_derivative_gap(&t, &g).unwrap()
                        })
                        .collect(),
                )
            })
            .collect();
        assert!(gaps[0] > gaps[1] && gaps[1] > gaps[2], "{gaps:?}");
    }
}

#[test]
fn estimates_match_oracle_derivatives_per_context() {
    let g = fixtures::g3_count();
    let s = generate_sequence(&g, 1_000_000, 9).unwrap();
    let t = estimate_derivatives(&s, 3, 0.5).unwrap();
    for i in 0..t.num_contexts() {
        let phi = common::derivative(&g, &t.context(i));
        let n = t.occurrences(i) as f64;
        let est = t.estimates[i].as_slice();
        // five binomial standard errors
        let bound = 5.0 * (phi[0] * phi[1] / n).sqrt() + 1.0 / n;
        assert!(
            (est[0] - phi[0]).abs() <= bound,
            "context {i}: {est:?} vs {phi:?}"
        );
    }
}

#[test]
fn stream_angles_approach_model_angles() {
    const N: usize = 1_000_000;
    let g = ProcessHandle::new(&fixtures::g2(), "G").unwrap();
    let models = [
        g.clone(),
        scale_process(-1.0, &g).unwrap(),
        scale_process(0.5, &g).unwrap(),
        scale_process(-0.3, &g).unwrap(),
    ];
    let streams: Vec<SymbolStream> = models
        .iter()
        .enumerate()
        .map(|(i, m)| generate_sequence(m.machine(), N, 500 + i as u64).unwrap())
        .collect();
    let cfg = McConfig::default();
    for i in 0..models.len() {
        for j in i + 1..models.len() {
            let exact = angle(&models[i], &models[j], InnerMode::Exact, &cfg)
                .unwrap()
                .value;
            let empirical = stream_angle(&streams[i], &streams[j], 4, 0.5).unwrap();
            assert!(
                (empirical - exact).abs() <= 0.3,
                "{i},{j}: {empirical} vs {exact}"
            );
        }
    }
    let a = stream_angle(&streams[0], &streams[1], 4, 0.5).unwrap();
    assert!((a - PI).abs() <= 0.3);
}

#[test]
fn stream_file_round_trip() {
    let s = generate_sequence(&fixtures::g2(), 500, 3).unwrap();
    let text = format!("# a comment\n{}", s.to_text());
    assert_eq!(SymbolStream::parse(Alphabet::binary(), &text).unwrap(), s);
    assert_eq!(SymbolStream::parse_inferred(&text).unwrap(), s);
}

fn binary_stream(max: usize) -> impl Strategy<Value = SymbolStream> {
    proptest::collection::vec(0usize..2, 20..max)
        .prop_map(|v| SymbolStream::new(Alphabet::binary(), v).unwrap())
}

proptest! {
    #[test]
    fn estimates_are_valid_and_follow_the_formula(s in binary_stream(400), depth in 0usize..4, sm in 0.1f64..2.0) {
        let t = estimate_derivatives(&s, depth, sm).unwrap();
        prop_assert_eq!(t.num_contexts(), 1 << depth);
        let total: u64 = (0..t.num_contexts()).map(|i| t.occurrences(i)).sum();
        prop_assert_eq!(total as usize, s.len() - depth);
        for i in 0..t.num_contexts() {
            let c = &t.counts[i];
            let n = (c[0] + c[1]) as f64;
            for (k, &ck) in c.iter().enumerate() {
                let want = (ck as f64 + sm) / (n + 2.0 * sm);
                prop_assert!((t.estimates[i][k] - want).abs() <= 1e-15);
            }
        }
    }

    #[test]
    fn stream_angle_is_symmetric_and_bounded(a in binary_stream(300), b in binary_stream(300)) {
        match (stream_angle(&a, &b, 2, 0.5), stream_angle(&b, &a, 2, 0.5)) {
            (Ok(x), Ok(y)) => {
                prop_assert_eq!(x, y);
                prop_assert!((0.0..=PI).contains(&x));
                prop_assert_eq!(stream_angle(&a, &a, 2, 0.5).unwrap(), 0.0);
            }
            (Err(e1), Err(e2)) => prop_assert_eq!(e1.kind(), e2.kind()),
            (x, y) => prop_assert!(false, "asymmetric outcome {:?} {:?}", x, y),
        }
    }
}

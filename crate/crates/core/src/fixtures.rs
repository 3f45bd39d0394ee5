//! Small reference machines used by the examples and test suites.
//!
//! All of them are over the binary alphabet `{0, 1}`.

use crate::pfsa::Pfsa;

const BIN: &[&str] = &["0", "1"];

/// Two states; the last symbol determines the state. Stationary
/// distribution `(0.6, 0.4)`.
pub fn g2() -> Pfsa {
    Pfsa::from_named(
        BIN,
        &[
            ("A", &[("A", 0.8), ("B", 0.2)]),
            ("B", &[("A", 0.3), ("B", 0.7)]),
        ],
    )
    .unwrap()
}

/// Three states; symbol `1` resets to `a`, symbol `0` advances `a → b → c`
/// and `c` stays.
pub fn g3_reset() -> Pfsa {
    Pfsa::from_named(
        BIN,
        &[
            ("a", &[("b", 0.7), ("a", 0.3)]),
            ("b", &[("c", 0.4), ("a", 0.6)]),
            ("c", &[("c", 0.2), ("a", 0.8)]),
        ],
    )
    .unwrap()
}

/// Three states counting trailing `1`s (capped at two); symbol `0` resets.
pub fn g3_count() -> Pfsa {
    Pfsa::from_named(
        BIN,
        &[
            ("a", &[("a", 0.6), ("b", 0.4)]),
            ("b", &[("a", 0.25), ("c", 0.75)]),
            ("c", &[("a", 0.9), ("c", 0.1)]),
        ],
    )
    .unwrap()
}

/// `{a, b}` is closed; `c` only feeds it and is transient.
pub fn with_transient() -> Pfsa {
    Pfsa::from_named(
        BIN,
        &[
            ("a", &[("a", 0.6), ("b", 0.4)]),
            ("b", &[("a", 0.1), ("b", 0.9)]),
            ("c", &[("a", 0.5), ("b", 0.5)]),
        ],
    )
    .unwrap()
}

/// Encodes the same process as [`g2`] with state `B` split into two
/// indistinguishable copies.
pub fn redundant() -> Pfsa {
    Pfsa::from_named(
        BIN,
        &[
            ("A", &[("A", 0.8), ("B1", 0.2)]),
            ("B1", &[("A", 0.3), ("B2", 0.7)]),
            ("B2", &[("A", 0.3), ("B1", 0.7)]),
        ],
    )
    .unwrap()
}

/// Two absorbing states: not ergodic.
pub fn two_absorbing() -> Pfsa {
    Pfsa::from_named(
        BIN,
        &[
            ("s", &[("s", 0.5), ("s", 0.5)]),
            ("t", &[("t", 0.3), ("t", 0.7)]),
        ],
    )
    .unwrap()
}

/// Two states swapped by `1` and fixed by `0`, with identical rows: the
/// belief never concentrates, so no string synchronizes it.
pub fn permutation() -> Pfsa {
    Pfsa::from_named(
        BIN,
        &[
            ("A", &[("A", 0.5), ("B", 0.5)]),
            ("B", &[("B", 0.5), ("A", 0.5)]),
        ],
    )
    .unwrap()
}

/// One state with a uniform row over `k` symbols named `0..k`.
pub fn single_state_uniform(k: usize) -> Pfsa {
    let names: Vec<String> = (0..k).map(|i| i.to_string()).collect();
    let alphabet = crate::symbols::Alphabet::new(&names).unwrap();
    Pfsa::from_parts(
        alphabet,
        vec!["z".into()],
        vec![vec![0; k]],
        vec![vec![1.0 / k as f64; k]],
    )
    .unwrap()
}

/// Like [`permutation`] but with distinguishable rows: the belief contracts
/// towards one state without ever reaching it exactly.
pub fn noisy_permutation() -> Pfsa {
    Pfsa::from_named(
        BIN,
        &[
            ("A", &[("A", 0.9), ("B", 0.1)]),
            ("B", &[("B", 0.2), ("A", 0.8)]),
        ],
    )
    .unwrap()
}

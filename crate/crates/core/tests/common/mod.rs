//! Reference computations written directly from the definitions, sharing no
//! code with the library beyond reading machine structure.
#![allow(dead_code)]

use pfsa_space::Pfsa;

/// Stationary state distribution by power iteration on the lazy chain.
pub fn stationary(g: &Pfsa) -> Vec<f64> {
    let n = g.num_states();
    let mut p = vec![1.0 / n as f64; n];
    for _ in 0..200_000 {
        let mut next = vec![0.0; n];
        for q in 0..n {
            next[q] += 0.5 * p[q];
            for (s, &m) in g.morph_row(q).iter().enumerate() {
                next[g.next(q, s)] += 0.5 * p[q] * m;
            }
        }
        let diff: f64 = next.iter().zip(&p).map(|(a, b)| (a - b).abs()).sum();
        p = next;
        if diff < 1e-16 {
            break;
        }
    }
    p
}

/// Forward algorithm from the stationary distribution.
pub fn word_prob(g: &Pfsa, word: &[usize]) -> f64 {
    let mut v = stationary(g);
    for &s in word {
        let mut next = vec![0.0; g.num_states()];
        for (q, &mass) in v.iter().enumerate() {
            next[g.next(q, s)] += mass * g.morph_row(q)[s];
        }
        v = next;
    }
    v.iter().sum()
}

/// State belief after observing `word` from the stationary distribution.
pub fn belief(g: &Pfsa, word: &[usize]) -> Vec<f64> {
    let mut v = stationary(g);
    for &s in word {
        let mut next = vec![0.0; g.num_states()];
        for (q, &mass) in v.iter().enumerate() {
            next[g.next(q, s)] += mass * g.morph_row(q)[s];
        }
        let z: f64 = next.iter().sum();
        v = next.into_iter().map(|x| x / z).collect();
    }
    v
}

/// Next-symbol distribution after `word`.
pub fn derivative(g: &Pfsa, word: &[usize]) -> Vec<f64> {
    let b = belief(g, word);
    (0..g.num_symbols())
        .map(|s| (0..g.num_states()).map(|q| b[q] * g.morph_row(q)[s]).sum())
        .collect()
}

pub fn log_inner(a: &[f64], b: &[f64]) -> f64 {
    (0..a.len() - 1)
        .map(|i| (a[i] / a[i + 1]).ln() * (b[i] / b[i + 1]).ln())
        .sum()
}

/// All words of length `len` over `k` symbols.
pub fn words(k: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..k).map(move |s| {
                    let mut v = w.clone();
                    v.push(s);
                    v
                })
            })
            .collect();
    }
    out
}

/// Uniform average of `⟨φ_x(g), φ_x(h)⟩` over all words of length `len`.
/// Equals the process inner product once every such word synchronizes both
/// machines.
pub fn uniform_inner(g: &Pfsa, h: &Pfsa, len: usize) -> f64 {
    let ws = words(g.num_symbols(), len);
    let total: f64 = ws
        .iter()
        .map(|w| log_inner(&derivative(g, w), &derivative(h, w)))
        .sum();
    total / ws.len() as f64
}

/// Largest word-probability difference over all words up to `max_len`.
pub fn fdd_gap(g: &Pfsa, h: &Pfsa, max_len: usize) -> f64 {
    let mut gap: f64 = 0.0;
    for len in 1..=max_len {
        for w in words(g.num_symbols(), len) {
            gap = gap.max((word_prob(g, &w) - word_prob(h, &w)).abs());
        }
    }
    gap
}

/// Transition structures of the reference fixtures, as `(state, [next on 0,
/// next on 1])`. Every word of length 3 synchronizes each of them.
pub const GRAPHS: [&[(&str, [&str; 2])]; 3] = [
    &[("A", ["A", "B"]), ("B", ["A", "B"])],
    &[("a", ["b", "a"]), ("b", ["c", "a"]), ("c", ["c", "a"])],
    &[("a", ["a", "b"]), ("b", ["a", "c"]), ("c", ["a", "c"])],
];

/// Binary machine on one of [`GRAPHS`], `ps[q]` being the probability of
/// symbol `0` in state `q`.
pub fn on_graph(graph: usize, ps: &[f64]) -> Pfsa {
    let states: Vec<(&str, [(&str, f64); 2])> = GRAPHS[graph]
        .iter()
        .zip(ps)
        .map(|(&(name, [n0, n1]), &p)| (name, [(n0, p), (n1, 1.0 - p)]))
        .collect();
    let rows: Vec<(&str, &[(&str, f64)])> = states.iter().map(|(n, r)| (*n, &r[..])).collect();
    Pfsa::from_named(&["0", "1"], &rows).unwrap()
}

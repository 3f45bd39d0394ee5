//! Probabilistic finite-state automata as process encoders.
//!
//! A [`Pfsa`] has a deterministic transition map `δ: Q × Σ → Q` and a morph
//! row `π̃(q, ·)` per state. Starting from the stationary distribution over
//! states, the belief after observing `x` is updated by
//! `℘_{xσ} = normalize(℘_x Γ_σ)` and the next-symbol distribution is the
//! symbolic derivative `φ_x = ℘_x Π̃`. Word probabilities follow by chaining
//! derivatives.

mod format;
mod minimize;
mod restrict;

use std::fmt;

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph;
use crate::markov;
use crate::simplex::{ProbVec, NORMALIZATION_TOL};
use crate::symbols::{Alphabet, SymbolStream};

pub use format::{format_real, parse_pfsa, write_pfsa};
pub use minimize::{minimize, DEFAULT_MINIMIZE_TOL};
pub use restrict::{closed_restrictions, minimal_closed_restriction};

/// A finite probabilistic automaton. Structure (alphabet, state names, a
/// total `δ`) is checked on construction; morph rows are stored as given and
/// checked by [`validate`], so invalid machines can still be loaded and
/// reported on.
#[derive(Debug, Clone, PartialEq)]
pub struct Pfsa {
    alphabet: Alphabet,
    names: Vec<String>,
    // row-major |Q| x |Σ|
    delta: Vec<usize>,
    morph: Vec<f64>,
    valid: bool,
}

impl Pfsa {
    /// Builds a machine from dense tables: `delta[q][σ]` is a state index and
    /// `morph[q][σ]` the probability of emitting `σ` in state `q`.
    pub fn from_parts(
        alphabet: Alphabet,
        names: Vec<String>,
        delta: Vec<Vec<usize>>,
        morph: Vec<Vec<f64>>,
    ) -> Result<Self> {
        let n = names.len();
        let k = alphabet.len();
        if n == 0 {
            return Err(Error::InvalidMachine("no states".into()));
        }
        if delta.len() != n || morph.len() != n {
            return Err(Error::InvalidMachine(format!(
                "{n} states but {} transition rows and {} morph rows",
                delta.len(),
                morph.len()
            )));
        }
        for (i, name) in names.iter().enumerate() {
            if name.is_empty() || name.chars().any(|c| c.is_whitespace() || c == ':') {
                return Err(Error::InvalidMachine(format!("bad state name {name:?}")));
            }
            if names[..i].contains(name) {
                return Err(Error::InvalidMachine(format!("duplicate state {name:?}")));
            }
        }
        let mut flat_delta = Vec::with_capacity(n * k);
        let mut flat_morph = Vec::with_capacity(n * k);
        for q in 0..n {
            if delta[q].len() != k || morph[q].len() != k {
                return Err(Error::InvalidMachine(format!(
                    "state {:?} needs exactly {k} transitions",
                    names[q]
                )));
            }
            for s in 0..k {
                if delta[q][s] >= n {
                    return Err(Error::InvalidMachine(format!(
                        "state {:?} symbol {:?} goes to missing state {}",
                        names[q],
                        alphabet.name(s),
                        delta[q][s]
                    )));
                }
                flat_delta.push(delta[q][s]);
                flat_morph.push(morph[q][s]);
            }
        }
        let mut g = Pfsa {
            alphabet,
            names,
            delta: flat_delta,
            morph: flat_morph,
            valid: false,
        };
        g.valid = validate(&g).is_valid();
        Ok(g)
    }

    /// Convenience constructor from named transitions. Each state lists
    /// `(next_state, probability)` for every symbol, in alphabet order.
    ///
    /// ```
    /// use pfsa_space::pfsa::Pfsa;
    ///
    /// let g = Pfsa::from_named(
    ///     &["0", "1"],
    ///     &[("A", &[("A", 0.8), ("B", 0.2)]), ("B", &[("A", 0.3), ("B", 0.7)])],
    /// )
    /// .unwrap();
    /// assert_eq!(g.num_states(), 2);
    /// ```
    pub fn from_named(alphabet: &[&str], states: &[(&str, &[(&str, f64)])]) -> Result<Self> {
        let alphabet = Alphabet::new(alphabet)?;
        let names: Vec<String> = states.iter().map(|(n, _)| n.to_string()).collect();
        let mut delta = Vec::with_capacity(states.len());
        let mut morph = Vec::with_capacity(states.len());
        for (_, row) in states {
            let mut d = Vec::with_capacity(row.len());
            let mut m = Vec::with_capacity(row.len());
            for (next, p) in row.iter() {
                let idx = names
                    .iter()
                    .position(|n| n == next)
                    .ok_or_else(|| Error::UnknownState(next.to_string()))?;
                d.push(idx);
                m.push(*p);
            }
            delta.push(d);
            morph.push(m);
        }
        Pfsa::from_parts(alphabet, names, delta, morph)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.names.len()
    }

    pub fn num_symbols(&self) -> usize {
        self.alphabet.len()
    }

    pub fn state_names(&self) -> &[String] {
        &self.names
    }

    pub fn state_name(&self, q: usize) -> &str {
        &self.names[q]
    }

    pub fn state_index(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownState(name.to_string()))
    }

    /// `δ(q, σ)`.
    #[inline]
    pub fn next(&self, q: usize, symbol: usize) -> usize {
        self.delta[q * self.alphabet.len() + symbol]
    }

    /// `π̃(q, ·)` as stored.
    #[inline]
    pub fn morph_row(&self, q: usize) -> &[f64] {
        let k = self.alphabet.len();
        &self.morph[q * k..(q + 1) * k]
    }

    /// `π̃(q, ·)` as a probability vector. Fails for rows that are not
    /// strictly positive.
    pub fn morph_vec(&self, q: usize) -> Result<ProbVec> {
        ProbVec::new(self.morph_row(q).to_vec())
    }

    /// Whether [`validate`] reported no violations at construction.
    pub fn is_valid(&self) -> bool {
        self.valid
    }

    pub(crate) fn ensure_valid(&self) -> Result<()> {
        if self.valid {
            Ok(())
        } else {
            Err(Error::InvalidMachine(validate(self).to_string()))
        }
    }

    /// Successor lists of the transition graph (one entry per symbol).
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        (0..self.num_states())
            .map(|q| {
                let mut succ: Vec<usize> =
                    (0..self.num_symbols()).map(|s| self.next(q, s)).collect();
                succ.sort_unstable();
                succ.dedup();
                succ
            })
            .collect()
    }

    /// Same machine with every morph row replaced by `f(q, row)`.
    pub fn map_rows<F>(&self, mut f: F) -> Result<Pfsa>
    where
        F: FnMut(usize, &[f64]) -> Result<Vec<f64>>,
    {
        let k = self.num_symbols();
        let mut morph = Vec::with_capacity(self.morph.len());
        for q in 0..self.num_states() {
            let row = f(q, self.morph_row(q))?;
            if row.len() != k {
                return Err(Error::DimensionMismatch {
                    left: k,
                    right: row.len(),
                });
            }
            morph.extend(row);
        }
        let mut g = Pfsa {
            alphabet: self.alphabet.clone(),
            names: self.names.clone(),
            delta: self.delta.clone(),
            morph,
            valid: false,
        };
        g.valid = validate(&g).is_valid();
        Ok(g)
    }

    /// Keeps only the states in `keep` (which must be closed under `δ`),
    /// preserving their relative order.
    pub(crate) fn restrict(&self, keep: &[usize]) -> Pfsa {
        let mut new_index = vec![usize::MAX; self.num_states()];
        for (i, &q) in keep.iter().enumerate() {
            new_index[q] = i;
        }
        let k = self.num_symbols();
        let mut delta = Vec::with_capacity(keep.len() * k);
        let mut morph = Vec::with_capacity(keep.len() * k);
        for &q in keep {
            for s in 0..k {
                let t = new_index[self.next(q, s)];
                assert!(t != usize::MAX, "restriction must be closed under δ");
                delta.push(t);
            }
            morph.extend_from_slice(self.morph_row(q));
        }
        Pfsa {
            alphabet: self.alphabet.clone(),
            names: keep.iter().map(|&q| self.names[q].clone()).collect(),
            delta,
            morph,
            valid: self.valid,
        }
    }

    /// Reorders states by breadth-first discovery from the lexicographically
    /// smallest name, exploring symbols in alphabet order. States not reached
    /// are appended the same way from the smallest remaining name.
    pub fn canonicalize(&self) -> Pfsa {
        let n = self.num_states();
        let mut by_name: Vec<usize> = (0..n).collect();
        by_name.sort_by(|&a, &b| self.names[a].cmp(&self.names[b]));
        let mut seen = vec![false; n];
        let mut order = Vec::with_capacity(n);
        for &root in &by_name {
            if seen[root] {
                continue;
            }
            seen[root] = true;
            let mut head = order.len();
            order.push(root);
            while head < order.len() {
                let q = order[head];
                head += 1;
                for s in 0..self.num_symbols() {
                    let t = self.next(q, s);
                    if !seen[t] {
                        seen[t] = true;
                        order.push(t);
                    }
                }
            }
        }
        self.permute(&order)
    }

    /// States listed in `order` become `0, 1, ...`. `order` is a permutation.
    fn permute(&self, order: &[usize]) -> Pfsa {
        let mut new_index = vec![0; order.len()];
        for (i, &q) in order.iter().enumerate() {
            new_index[q] = i;
        }
        let k = self.num_symbols();
        let mut delta = Vec::with_capacity(self.delta.len());
        let mut morph = Vec::with_capacity(self.morph.len());
        for &q in order {
            for s in 0..k {
                delta.push(new_index[self.next(q, s)]);
            }
            morph.extend_from_slice(self.morph_row(q));
        }
        Pfsa {
            alphabet: self.alphabet.clone(),
            names: order.iter().map(|&q| self.names[q].clone()).collect(),
            delta,
            morph,
            valid: self.valid,
        }
    }
}

impl fmt::Display for Pfsa {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&write_pfsa(self))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ViolationKind {
    NonFinite,
    NotStrictlyPositive,
    RowSum,
    GammaSum,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub kind: ViolationKind,
    pub state: String,
    pub symbol: Option<String>,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.symbol {
            Some(s) => write!(f, "state {} symbol {}: {}", self.state, s, self.detail),
            None => write!(f, "state {}: {}", self.state, self.detail),
        }
    }
}

/// Outcome of [`validate`].
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return write!(f, "valid");
        }
        let parts: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join("; "))
    }
}

/// Checks morph rows (finite, strictly positive, summing to one) and the
/// identity `Σ_σ Γ_σ = Π`.
pub fn validate(g: &Pfsa) -> ValidationReport {
    let mut violations = Vec::new();
    for q in 0..g.num_states() {
        let row = g.morph_row(q);
        for (s, &p) in row.iter().enumerate() {
            let kind = if !p.is_finite() {
                ViolationKind::NonFinite
            } else if p <= 0.0 {
                ViolationKind::NotStrictlyPositive
            } else {
                continue;
            };
            violations.push(Violation {
                kind,
                state: g.state_name(q).to_string(),
                symbol: Some(g.alphabet.name(s).to_string()),
                detail: format!("probability {p} is not strictly positive"),
            });
        }
        let sum: f64 = row.iter().sum();
        if (sum - 1.0).abs() > NORMALIZATION_TOL {
            violations.push(Violation {
                kind: ViolationKind::RowSum,
                state: g.state_name(q).to_string(),
                symbol: None,
                detail: format!("row sums to {sum}"),
            });
        }
    }
    if violations.is_empty() {
        let m = matrices(g);
        let mut gamma_sum = DMatrix::zeros(g.num_states(), g.num_states());
        for gamma in &m.per_symbol {
            gamma_sum += gamma;
        }
        for i in 0..g.num_states() {
            let diff = (0..g.num_states())
                .map(|j| (gamma_sum[(i, j)] - m.transition[(i, j)]).abs())
                .fold(0.0, f64::max);
            if diff > NORMALIZATION_TOL {
                violations.push(Violation {
                    kind: ViolationKind::GammaSum,
                    state: g.state_name(i).to_string(),
                    symbol: None,
                    detail: format!("sum of event matrices differs from Π by {diff}"),
                });
            }
        }
    }
    ValidationReport { violations }
}

/// Morph matrix `Π̃` (|Q|×|Σ|), transition matrix `Π` and the event-specific
/// matrices `Γ_σ` (each |Q|×|Q|).
#[derive(Debug, Clone, PartialEq)]
pub struct Matrices {
    pub morph: DMatrix<f64>,
    pub transition: DMatrix<f64>,
    pub per_symbol: Vec<DMatrix<f64>>,
}

pub fn matrices(g: &Pfsa) -> Matrices {
    let n = g.num_states();
    let k = g.num_symbols();
    let morph = DMatrix::from_fn(n, k, |q, s| g.morph_row(q)[s]);
    let mut per_symbol = vec![DMatrix::zeros(n, n); k];
    for (s, gamma) in per_symbol.iter_mut().enumerate() {
        for q in 0..n {
            gamma[(q, g.next(q, s))] = g.morph_row(q)[s];
        }
    }
    // Π_ij sums π̃(q_i, σ) over the symbols leading from q_i to q_j
    let mut transition = DMatrix::zeros(n, n);
    for q in 0..n {
        for s in 0..k {
            transition[(q, g.next(q, s))] += g.morph_row(q)[s];
        }
    }
    Matrices {
        morph,
        transition,
        per_symbol,
    }
}

/// A distribution over the states of a machine. Zero entries are allowed.
#[derive(Debug, Clone, PartialEq)]
pub struct Belief(Vec<f64>);

impl Belief {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidArgument("empty belief".into()));
        }
        if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(Error::InvalidArgument(
                "belief weights must be finite and non-negative".into(),
            ));
        }
        let sum: f64 = weights.iter().sum();
        if sum.is_nan() || sum <= 0.0 {
            return Err(Error::InvalidArgument("belief has no mass".into()));
        }
        if (sum - 1.0).abs() > NORMALIZATION_TOL {
            return Ok(Belief(weights.into_iter().map(|w| w / sum).collect()));
        }
        Ok(Belief(weights))
    }

    pub fn one_hot(n: usize, q: usize) -> Self {
        let mut w = vec![0.0; n];
        w[q] = 1.0;
        Belief(w)
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Largest component, `max_q Pr(q | x)`.
    pub fn max(&self) -> f64 {
        self.0.iter().cloned().fold(0.0, f64::max)
    }

    pub fn argmax(&self) -> usize {
        crate::simplex::argmax(&self.0)
    }
}

fn check_belief(g: &Pfsa, b: &Belief) -> Result<()> {
    if b.len() != g.num_states() {
        return Err(Error::DimensionMismatch {
            left: g.num_states(),
            right: b.len(),
        });
    }
    Ok(())
}

/// Unique `℘` with `℘Π = ℘`. Fails with [`Error::NotErgodic`] when the
/// transition graph has more than one closed communicating class.
pub fn stationary_distribution(g: &Pfsa) -> Result<Belief> {
    g.ensure_valid()?;
    let sinks = graph::sink_components(&g.adjacency());
    if sinks.len() != 1 {
        return Err(Error::NotErgodic { sinks: sinks.len() });
    }
    let m = matrices(g);
    let p = markov::stationary_lu(&m.transition).ok_or(Error::NotErgodic { sinks: 2 })?;
    Ok(Belief(p))
}

/// `normalize(℘ Γ_σ)`.
pub fn belief_update(g: &Pfsa, b: &Belief, symbol: usize) -> Result<Belief> {
    check_belief(g, b)?;
    if symbol >= g.num_symbols() {
        return Err(Error::UnknownSymbol(symbol.to_string()));
    }
    let mut out = vec![0.0; g.num_states()];
    let total = update_into(g, &b.0, symbol, &mut out);
    if total.is_nan() || total <= 0.0 {
        return Err(Error::ZeroMass { symbol });
    }
    Ok(Belief(out))
}

/// Writes `normalize(b Γ_σ)` into `out` and returns the mass before
/// normalization, which is `φ_x(σ)`.
#[inline]
pub(crate) fn update_into(g: &Pfsa, b: &[f64], symbol: usize, out: &mut [f64]) -> f64 {
    out.iter_mut().for_each(|v| *v = 0.0);
    let k = g.num_symbols();
    let mut total = 0.0;
    for (q, &w) in b.iter().enumerate() {
        if w != 0.0 {
            let m = w * g.morph[q * k + symbol];
            out[g.delta[q * k + symbol]] += m;
            total += m;
        }
    }
    if total > 0.0 {
        out.iter_mut().for_each(|v| *v /= total);
    }
    total
}

/// `℘_x`: belief after observing `word` from the stationary distribution.
pub fn belief_from_string(g: &Pfsa, word: &[usize]) -> Result<Belief> {
    let mut b = stationary_distribution(g)?;
    for &s in word {
        b = belief_update(g, &b, s)?;
    }
    Ok(b)
}

/// `φ = ℘ Π̃`, the next-symbol distribution under belief `b`.
pub fn symbolic_derivative(g: &Pfsa, b: &Belief) -> Result<ProbVec> {
    check_belief(g, b)?;
    ProbVec::new(derivative_raw(g, &b.0))
}

#[inline]
pub(crate) fn derivative_raw(g: &Pfsa, b: &[f64]) -> Vec<f64> {
    let k = g.num_symbols();
    let mut phi = vec![0.0; k];
    for (q, &w) in b.iter().enumerate() {
        if w != 0.0 {
            for (s, p) in phi.iter_mut().enumerate() {
                *p += w * g.morph[q * k + s];
            }
        }
    }
    phi
}

/// `μ(xΣ^ω)`: the probability that the process starts with `word`.
pub fn word_probability(g: &Pfsa, word: &[usize]) -> Result<f64> {
    let b = stationary_distribution(g)?;
    if let Some(&bad) = word.iter().find(|&&s| s >= g.num_symbols()) {
        return Err(Error::UnknownSymbol(bad.to_string()));
    }
    let mut cur = b.0;
    let mut next = vec![0.0; cur.len()];
    let mut mu = 1.0;
    for &s in word {
        let mass = update_into(g, &cur, s, &mut next);
        mu *= mass;
        if mass == 0.0 {
            return Ok(0.0);
        }
        std::mem::swap(&mut cur, &mut next);
    }
    Ok(mu)
}

/// Samples `length` symbols: the initial state is drawn from the stationary
/// distribution, then each step emits `σ ~ π̃(q, ·)` and moves to `δ(q, σ)`.
/// Deterministic for a given seed.
pub fn generate_sequence(g: &Pfsa, length: usize, seed: u64) -> Result<SymbolStream> {
    let stationary = stationary_distribution(g)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut symbols = Vec::with_capacity(length);
    if length > 0 {
        let mut q = sample_index(&stationary.0, rng.random::<f64>());
        for _ in 0..length {
            let s = sample_index(g.morph_row(q), rng.random::<f64>());
            symbols.push(s);
            q = g.next(q, s);
        }
    }
    SymbolStream::new(g.alphabet.clone(), symbols)
}

/// Inverse-CDF draw; falls back to the last positive entry on round-off.
fn sample_index(weights: &[f64], u: f64) -> usize {
    let mut acc = 0.0;
    let mut last = 0;
    for (i, &w) in weights.iter().enumerate() {
        if w > 0.0 {
            acc += w;
            last = i;
            if u < acc {
                return i;
            }
        }
    }
    last
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn g2_is_valid() {
        let g = fixtures::g2();
        assert!(validate(&g).is_valid());
        assert!(g.is_valid());
    }

    #[test]
    fn invalid_rows_are_reported() {
        let g = Pfsa::from_named(&["0", "1"], &[("A", &[("A", 0.5), ("A", 0.6)])]).unwrap();
        let r = validate(&g);
        assert!(!r.is_valid());
        assert_eq!(r.violations[0].kind, ViolationKind::RowSum);

        let g = Pfsa::from_named(&["0", "1"], &[("A", &[("A", 1.0), ("A", 0.0)])]).unwrap();
        let r = validate(&g);
        assert_eq!(r.violations.len(), 1);
        assert_eq!(r.violations[0].kind, ViolationKind::NotStrictlyPositive);
        assert_eq!(r.violations[0].symbol.as_deref(), Some("1"));
        assert!(matches!(
            stationary_distribution(&g),
            Err(Error::InvalidMachine(_))
        ));
    }

    #[test]
    fn structural_errors_are_rejected() {
        let a = Alphabet::binary();
        assert!(Pfsa::from_parts(a.clone(), vec![], vec![], vec![]).is_err());
        assert!(Pfsa::from_parts(
            a.clone(),
            vec!["A".into()],
            vec![vec![0, 1]],
            vec![vec![0.5, 0.5]]
        )
        .is_err());
        assert!(Pfsa::from_parts(
            a,
            vec!["A".into(), "A".into()],
            vec![vec![0, 1], vec![0, 1]],
            vec![vec![0.5, 0.5], vec![0.5, 0.5]]
        )
        .is_err());
    }

    #[test]
    fn g2_matrices() {
        let m = matrices(&fixtures::g2());
        assert_eq!(
            m.transition,
            DMatrix::from_row_slice(2, 2, &[0.8, 0.2, 0.3, 0.7])
        );
        assert_eq!(
            m.per_symbol[0],
            DMatrix::from_row_slice(2, 2, &[0.8, 0.0, 0.3, 0.0])
        );
        assert_eq!(
            m.per_symbol[1],
            DMatrix::from_row_slice(2, 2, &[0.0, 0.2, 0.0, 0.7])
        );
        assert_eq!(m.morph.shape(), (2, 2));
        let single = matrices(&fixtures::single_state_uniform(2));
        assert_eq!(single.transition, DMatrix::from_element(1, 1, 1.0));
    }

    #[test]
    fn stationary_examples() {
        let p = stationary_distribution(&fixtures::g2()).unwrap();
        assert!((p.as_slice()[0] - 0.6).abs() < 1e-14);
        assert!((p.as_slice()[1] - 0.4).abs() < 1e-14);
        let one = stationary_distribution(&fixtures::single_state_uniform(3)).unwrap();
        assert_eq!(one.as_slice(), &[1.0]);
        let split = fixtures::two_absorbing();
        assert!(matches!(
            stationary_distribution(&split),
            Err(Error::NotErgodic { sinks: 2 })
        ));
    }

    #[test]
    fn belief_update_examples() {
        let g = fixtures::g2();
        let b = Belief::new(vec![0.6, 0.4]).unwrap();
        assert_eq!(belief_update(&g, &b, 0).unwrap().as_slice(), &[1.0, 0.0]);
        let a = Belief::one_hot(2, 0);
        assert_eq!(belief_update(&g, &a, 1).unwrap().as_slice(), &[0.0, 1.0]);
        for h in [fixtures::g3_reset(), fixtures::g3_count()] {
            for q in 0..h.num_states() {
                for s in 0..h.num_symbols() {
                    let out = belief_update(&h, &Belief::one_hot(h.num_states(), q), s).unwrap();
                    assert_eq!(out, Belief::one_hot(h.num_states(), h.next(q, s)));
                }
            }
        }
    }

    #[test]
    fn zero_mass_is_reported() {
        let g = Pfsa::from_named(
            &["0", "1"],
            &[
                ("A", &[("A", 1.0), ("B", 0.0)]),
                ("B", &[("A", 0.5), ("B", 0.5)]),
            ],
        )
        .unwrap();
        let err = belief_update(&g, &Belief::one_hot(2, 0), 1).unwrap_err();
        assert!(matches!(err, Error::ZeroMass { symbol: 1 }));
    }

    #[test]
    fn derivative_examples() {
        let g = fixtures::g2();
        let d = symbolic_derivative(&g, &Belief::one_hot(2, 0)).unwrap();
        assert_eq!(d.as_slice(), &[0.8, 0.2]);
        let d = symbolic_derivative(&g, &Belief::new(vec![0.6, 0.4]).unwrap()).unwrap();
        assert!((d[0] - 0.6).abs() < 1e-15 && (d[1] - 0.4).abs() < 1e-15);
        let flat = fixtures::g3_count().map_rows(|_, r| Ok(vec![1.0 / r.len() as f64; r.len()]));
        let flat = flat.unwrap();
        let d = symbolic_derivative(&flat, &Belief::new(vec![0.2, 0.3, 0.5]).unwrap()).unwrap();
        assert!(d.is_uniform(1e-15));
    }

    #[test]
    fn word_probability_examples() {
        let g = fixtures::g2();
        assert!((word_probability(&g, &[0]).unwrap() - 0.6).abs() < 1e-14);
        assert!((word_probability(&g, &[0, 1]).unwrap() - 0.12).abs() < 1e-14);
        assert_eq!(word_probability(&g, &[]).unwrap(), 1.0);
    }

    #[test]
    fn generate_examples() {
        let g = fixtures::g2();
        assert!(generate_sequence(&g, 0, 1).unwrap().is_empty());
        let a = generate_sequence(&g, 1000, 7).unwrap();
        let b = generate_sequence(&g, 1000, 7).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, generate_sequence(&g, 1000, 8).unwrap());
        assert!(matches!(
            generate_sequence(&fixtures::two_absorbing(), 10, 1),
            Err(Error::NotErgodic { .. })
        ));
    }

    #[test]
    fn canonical_order_is_bfs_from_smallest_name() {
        let g = Pfsa::from_named(
            &["0", "1"],
            &[
                ("c", &[("c", 0.5), ("a", 0.5)]),
                ("b", &[("c", 0.5), ("b", 0.5)]),
                ("a", &[("b", 0.5), ("a", 0.5)]),
            ],
        )
        .unwrap();
        let c = g.canonicalize();
        assert_eq!(c.state_names(), &["a", "b", "c"]);
        assert_eq!(c.canonicalize(), c);
    }
}

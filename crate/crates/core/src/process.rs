//! The vector space of strictly positive ergodic stationary processes.
//!
//! Processes are held as [`ProcessHandle`]s whose machine is always in normal
//! form: the minimal closed restriction, then minimized, in canonical state
//! order. Scaling and addition act row by row on morph matrices (through
//! the product machine for sums), and the inner product averages the
//! logarithmic inner product of the two next-symbol distributions along
//! uniformly random symbol walks.
//!
//! Under uniform driving the pair of states `(q, q')` performs a Markov
//! chain that depends only on the two transition maps, so the walk average
//! has the closed form `Σ ρ(q, q') ⟨π̃(q, ·), π̃'(q', ·)⟩` with `ρ` that
//! chain's stationary distribution ([`inner_exact`]). [`inner_mc`] evaluates
//! the same limit by simulation through the belief recursion.

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph;
use crate::markov;
use crate::pfsa::{
    self, belief_from_string, minimal_closed_restriction, minimize, word_probability, Pfsa,
    DEFAULT_MINIMIZE_TOL,
};
use crate::simplex::{log_inner_unchecked, pscale, psum, AngleSums, ProbVec};
use crate::symbols::Alphabet;
use crate::sync::{default_max_depth, joint_epsilon_synchronize, product_machine, uniform_rows};

/// Norms below this make an angle undefined.
pub const ZERO_NORM: f64 = 1e-12;

/// A process in normal form.
#[derive(Debug, Clone, PartialEq)]
pub struct ProcessHandle {
    machine: Pfsa,
    pub label: String,
}

impl ProcessHandle {
    /// Validates `machine` and brings it to normal form. Fails if the machine
    /// has non-positive rows or more than one closed communicating class.
    pub fn new(machine: &Pfsa, label: impl Into<String>) -> Result<Self> {
        machine.ensure_valid()?;
        let clx = minimal_closed_restriction(machine)?;
        Ok(ProcessHandle {
            machine: minimize(&clx, DEFAULT_MINIMIZE_TOL),
            label: label.into(),
        })
    }

    pub fn machine(&self) -> &Pfsa {
        &self.machine
    }

    pub fn alphabet(&self) -> &Alphabet {
        self.machine.alphabet()
    }

    pub fn num_states(&self) -> usize {
        self.machine.num_states()
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }
}

/// The additive identity: one state emitting uniformly (flat white noise).
pub fn zero_process(alphabet: &Alphabet) -> ProcessHandle {
    let k = alphabet.len();
    let machine = Pfsa::from_parts(
        alphabet.clone(),
        vec!["z".into()],
        vec![vec![0; k]],
        vec![ProbVec::uniform(k)
            .expect("alphabets have at least two symbols")
            .into_vec()],
    )
    .expect("single state machine is well-formed");
    ProcessHandle {
        machine,
        label: "zero".into(),
    }
}

/// `α ⊙ G`: every morph row scaled by `α`, same transitions.
pub fn scale_process(alpha: f64, g: &ProcessHandle) -> Result<ProcessHandle> {
    let scaled = g
        .machine
        .map_rows(|_, row| Ok(pscale(alpha, &ProbVec::new(row.to_vec())?)?.into_vec()))?;
    ProcessHandle::new(&scaled, format!("{alpha}*{}", g.label))
}

/// `G ⊕ H`: product machine with rows `π̃(q, ·) ⊕ π̃'(q', ·)`, restricted to
/// its closed class.
///
/// When the product has several closed classes, the one reached from the
/// pair of states the two processes jointly synchronize to is used.
pub fn sum_processes(g: &ProcessHandle, h: &ProcessHandle) -> Result<ProcessHandle> {
    g.alphabet().ensure_same(h.alphabet())?;
    let product = product_machine(&g.machine, &h.machine, |a, b| {
        Ok(psum(&ProbVec::new(a.to_vec())?, &ProbVec::new(b.to_vec())?)?.into_vec())
    })?;
    let adj = product.adjacency();
    let mut sinks = graph::sink_components(&adj);
    let class = if sinks.len() == 1 {
        sinks.remove(0)
    } else {
        let eps = 1e-6;
        let depth = default_max_depth(&[&g.machine, &h.machine]);
        let sync = joint_epsilon_synchronize(&g.machine, &h.machine, eps, depth)?;
        let start = sync.per_machine[0].state * h.num_states() + sync.per_machine[1].state;
        let reach = graph::reachable_from(&adj, start);
        let mut reached: Vec<Vec<usize>> = sinks
            .into_iter()
            .filter(|c| reach.binary_search(&c[0]).is_ok())
            .collect();
        if reached.len() != 1 {
            return Err(Error::NotErgodic {
                sinks: reached.len(),
            });
        }
        reached.remove(0)
    };
    let restricted = product_restrict(&product, &class);
    ProcessHandle::new(&restricted, format!("({}+{})", g.label, h.label))
}

fn product_restrict(product: &Pfsa, keep: &[usize]) -> Pfsa {
    let names = keep
        .iter()
        .map(|&q| product.state_name(q).to_string())
        .collect();
    let mut index = vec![usize::MAX; product.num_states()];
    for (i, &q) in keep.iter().enumerate() {
        index[q] = i;
    }
    let k = product.num_symbols();
    let delta = keep
        .iter()
        .map(|&q| (0..k).map(|s| index[product.next(q, s)]).collect())
        .collect();
    let morph = keep
        .iter()
        .map(|&q| product.morph_row(q).to_vec())
        .collect();
    Pfsa::from_parts(product.alphabet().clone(), names, delta, morph)
        .expect("closed class of a well-formed product is well-formed")
}

/// How an inner product is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InnerMode {
    Exact,
    MonteCarlo,
}

impl std::fmt::Display for InnerMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            InnerMode::Exact => "exact",
            InnerMode::MonteCarlo => "monte-carlo",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct InnerEstimate {
    pub value: f64,
    /// Standard error across repeats; zero in exact mode.
    pub std_error: f64,
    pub mode: InnerMode,
    pub walks: usize,
    pub walk_length: usize,
}

/// Parameters of the simulated inner product.
#[derive(Debug, Clone, PartialEq)]
pub struct McConfig {
    /// Joint synchronization tolerance for the walk start.
    pub eps: f64,
    pub walk_length: usize,
    pub repeats: usize,
    pub seed: u64,
    /// Synchronization depth bound; [`default_max_depth`] when `None`.
    pub max_depth: Option<usize>,
}

impl Default for McConfig {
    fn default() -> Self {
        McConfig {
            eps: 1e-6,
            walk_length: 100_000,
            repeats: 20,
            seed: 42,
            max_depth: None,
        }
    }
}

/// Stationary law of the uniformly driven pair chain.
#[derive(Debug, Clone, PartialEq)]
pub struct PairChain {
    /// `(q, q')` index pairs of the recurrent class.
    pub states: Vec<(usize, usize)>,
    /// Row-stochastic transition matrix over `states`.
    pub transition: DMatrix<f64>,
    pub rho: Vec<f64>,
}

/// Recurrent class of the pair chain `(q, q') → (δ(q, σ), δ'(q', σ))` with
/// `σ` uniform, and its stationary distribution.
pub fn pair_chain(g: &Pfsa, h: &Pfsa) -> Result<PairChain> {
    g.alphabet().ensure_same(h.alphabet())?;
    let product = product_machine(g, h, uniform_rows)?;
    let adj = product.adjacency();
    let sinks = graph::sink_components(&adj);
    if sinks.len() != 1 {
        return Err(Error::MultipleRecurrentClasses(sinks.len()));
    }
    let class = &sinks[0];
    let m = h.num_states();
    let k = g.num_symbols();
    let mut local = vec![usize::MAX; product.num_states()];
    for (i, &u) in class.iter().enumerate() {
        local[u] = i;
    }
    let mut transition = DMatrix::zeros(class.len(), class.len());
    for (i, &u) in class.iter().enumerate() {
        for s in 0..k {
            transition[(i, local[product.next(u, s)])] += 1.0 / k as f64;
        }
    }
    let rho = markov::stationary_lu(&transition).ok_or(Error::MultipleRecurrentClasses(2))?;
    Ok(PairChain {
        states: class.iter().map(|&u| (u / m, u % m)).collect(),
        transition,
        rho,
    })
}

/// Closed-form inner product `Σ ρ(q, q') ⟨π̃(q, ·), π̃'(q', ·)⟩`.
pub fn inner_exact(g: &ProcessHandle, h: &ProcessHandle) -> Result<InnerEstimate> {
    let chain = pair_chain(&g.machine, &h.machine)?;
    let value = chain
        .states
        .iter()
        .zip(&chain.rho)
        .map(|(&(i, j), r)| r * log_inner_unchecked(g.machine.morph_row(i), h.machine.morph_row(j)))
        .sum();
    Ok(InnerEstimate {
        value,
        std_error: 0.0,
        mode: InnerMode::Exact,
        walks: 0,
        walk_length: 0,
    })
}

/// Start beliefs for walks over `(g, h)`: the beliefs after a jointly
/// ε-synchronizing string.
fn synchronized_start(
    g: &ProcessHandle,
    h: &ProcessHandle,
    cfg: &McConfig,
) -> Result<(Vec<f64>, Vec<f64>)> {
    g.alphabet().ensure_same(h.alphabet())?;
    if cfg.repeats < 2 {
        return Err(Error::InvalidArgument("need at least 2 repeats".into()));
    }
    if cfg.walk_length == 0 {
        return Err(Error::InvalidArgument(
            "walk_length must be positive".into(),
        ));
    }
    let (gm, hm) = (&g.machine, &h.machine);
    let depth = cfg
        .max_depth
        .unwrap_or_else(|| default_max_depth(&[gm, hm]));
    let sync = joint_epsilon_synchronize(gm, hm, cfg.eps, depth)?;
    Ok((
        belief_from_string(gm, &sync.string)?.as_slice().to_vec(),
        belief_from_string(hm, &sync.string)?.as_slice().to_vec(),
    ))
}

/// Runs repeat `r` of the uniform walk and hands the log-ratio coordinates
/// of both symbolic derivatives to `visit` at every step. Repeat `r` uses
/// stream `r` of a ChaCha8 generator seeded with `seed`, so results do not
/// depend on scheduling.
fn walk<F: FnMut(&[f64], &[f64])>(
    g: &Pfsa,
    h: &Pfsa,
    start: &(Vec<f64>, Vec<f64>),
    seed: u64,
    r: usize,
    walk_length: usize,
    mut visit: F,
) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(r as u64);
    let k = g.num_symbols();
    let (mut bg, mut bh) = start.clone();
    let (mut ng, mut nh) = (vec![0.0; bg.len()], vec![0.0; bh.len()]);
    let mut lg = vec![0.0; k - 1];
    let mut lh = vec![0.0; k - 1];
    for _ in 0..walk_length {
        log_ratios_into(&pfsa::derivative_raw(g, &bg), &mut lg);
        log_ratios_into(&pfsa::derivative_raw(h, &bh), &mut lh);
        visit(&lg, &lh);
        let s = rng.random_range(0..k);
        pfsa::update_into(g, &bg, s, &mut ng);
        pfsa::update_into(h, &bh, s, &mut nh);
        std::mem::swap(&mut bg, &mut ng);
        std::mem::swap(&mut bh, &mut nh);
    }
}

fn log_ratios_into(p: &[f64], out: &mut [f64]) {
    for (o, w) in out.iter_mut().zip(p.windows(2)) {
        *o = (w[0] / w[1]).ln();
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn mean_and_std_error(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

/// Simulated inner product: walks of uniform symbols started after a
/// jointly ε-synchronizing string, averaging the logarithmic inner product
/// of the two symbolic derivatives given by the full belief recursion.
pub fn inner_mc(g: &ProcessHandle, h: &ProcessHandle, cfg: &McConfig) -> Result<InnerEstimate> {
    let start = synchronized_start(g, h, cfg)?;
    let means: Vec<f64> = (0..cfg.repeats)
        .into_par_iter()
        .map(|r| {
            let mut sum = 0.0;
            walk(
                &g.machine,
                &h.machine,
                &start,
                cfg.seed,
                r,
                cfg.walk_length,
                |a, b| sum += dot(a, b),
            );
            sum / cfg.walk_length as f64
        })
        .collect();
    let (value, std_error) = mean_and_std_error(&means);
    Ok(InnerEstimate {
        value,
        std_error,
        mode: InnerMode::MonteCarlo,
        walks: cfg.repeats,
        walk_length: cfg.walk_length,
    })
}

pub fn inner(
    g: &ProcessHandle,
    h: &ProcessHandle,
    mode: InnerMode,
    cfg: &McConfig,
) -> Result<InnerEstimate> {
    match mode {
        InnerMode::Exact => inner_exact(g, h),
        InnerMode::MonteCarlo => inner_mc(g, h, cfg),
    }
}

/// `sqrt(⟨G, G⟩)` in exact mode.
pub fn process_norm(g: &ProcessHandle) -> Result<f64> {
    Ok(inner_exact(g, g)?.value.max(0.0).sqrt())
}

#[derive(Debug, Clone, PartialEq)]
pub struct AngleEstimate {
    /// Radians in `[0, π]`.
    pub value: f64,
    /// Standard error of the per-repeat angles; zero in exact mode.
    pub std_error: f64,
    pub mode: InnerMode,
}

fn check_norm(n: f64) -> Result<f64> {
    if n < ZERO_NORM {
        Err(Error::ZeroNorm(n))
    } else {
        Ok(n)
    }
}

/// `arccos(⟨G, H⟩ / (‖G‖ ‖H‖))` in radians.
///
/// The angle is evaluated as `2 atan2(‖Ĝ - Ĥ‖, ‖Ĝ + Ĥ‖)` over the
/// coordinates visited by the pair chain (exact mode) or by the shared walk
/// (Monte Carlo mode), which avoids the loss of precision of `arccos` near
/// `0` and `π`. In Monte Carlo mode the norms are estimated along the same
/// walks as the cross term.
pub fn angle(
    g: &ProcessHandle,
    h: &ProcessHandle,
    mode: InnerMode,
    cfg: &McConfig,
) -> Result<AngleEstimate> {
    match mode {
        InnerMode::Exact => {
            check_norm(process_norm(g)?)?;
            check_norm(process_norm(h)?)?;
            let chain = pair_chain(&g.machine, &h.machine)?;
            let coords: Vec<(f64, Vec<f64>, Vec<f64>)> = chain
                .states
                .iter()
                .zip(&chain.rho)
                .map(|(&(i, j), &r)| {
                    let mut a = vec![0.0; g.alphabet().len() - 1];
                    let mut b = a.clone();
                    log_ratios_into(g.machine.morph_row(i), &mut a);
                    log_ratios_into(h.machine.morph_row(j), &mut b);
                    (r, a, b)
                })
                .collect();
            let ng = coords
                .iter()
                .map(|(r, a, _)| r * dot(a, a))
                .sum::<f64>()
                .sqrt();
            let nh = coords
                .iter()
                .map(|(r, _, b)| r * dot(b, b))
                .sum::<f64>()
                .sqrt();
            let mut sums = AngleSums::default();
            for (r, a, b) in &coords {
                sums.add(*r, a, b, ng, nh);
            }
            Ok(AngleEstimate {
                value: sums.angle(),
                std_error: 0.0,
                mode,
            })
        }
        InnerMode::MonteCarlo => {
            let start = synchronized_start(g, h, cfg)?;
            let n = cfg.walk_length as f64;
            // first pass: per-repeat squared norms
            let norms: Vec<(f64, f64)> = (0..cfg.repeats)
                .into_par_iter()
                .map(|r| {
                    let (mut gg, mut hh) = (0.0, 0.0);
                    walk(
                        &g.machine,
                        &h.machine,
                        &start,
                        cfg.seed,
                        r,
                        cfg.walk_length,
                        |a, b| {
                            gg += dot(a, a);
                            hh += dot(b, b);
                        },
                    );
                    (gg / n, hh / n)
                })
                .collect();
            let reps = cfg.repeats as f64;
            let ng = check_norm((norms.iter().map(|x| x.0).sum::<f64>() / reps).sqrt())?;
            let nh = check_norm((norms.iter().map(|x| x.1).sum::<f64>() / reps).sqrt())?;
            // second pass replays the same walks against the pooled and the
            // per-repeat norms
            let sums: Vec<(AngleSums, Option<AngleSums>)> = (0..cfg.repeats)
                .into_par_iter()
                .map(|r| {
                    let (rg, rh) = (norms[r].0.sqrt(), norms[r].1.sqrt());
                    let own = rg >= ZERO_NORM && rh >= ZERO_NORM;
                    let mut pooled = AngleSums::default();
                    let mut local = AngleSums::default();
                    walk(
                        &g.machine,
                        &h.machine,
                        &start,
                        cfg.seed,
                        r,
                        cfg.walk_length,
                        |a, b| {
                            pooled.add(1.0, a, b, ng, nh);
                            if own {
                                local.add(1.0, a, b, rg, rh);
                            }
                        },
                    );
                    (pooled, own.then_some(local))
                })
                .collect();
            let mut total = AngleSums::default();
            for (p, _) in &sums {
                total.minus += p.minus;
                total.plus += p.plus;
            }
            let per_repeat: Vec<f64> = sums
                .iter()
                .filter_map(|(_, l)| l.map(|l| l.angle()))
                .collect();
            let std_error = if per_repeat.len() >= 2 {
                mean_and_std_error(&per_repeat).1
            } else {
                f64::NAN
            };
            Ok(AngleEstimate {
                value: total.angle(),
                std_error,
                mode,
            })
        }
    }
}

/// Largest difference of word probabilities over all words up to
/// `max_len`: a bounded check of equality of finite-dimensional
/// distributions.
pub fn fdd_gap(g: &Pfsa, h: &Pfsa, max_len: usize) -> Result<f64> {
    g.alphabet().ensure_same(h.alphabet())?;
    let k = g.num_symbols();
    let mut gap: f64 = 0.0;
    let mut word = Vec::with_capacity(max_len);
    for len in 0..=max_len {
        let total = k.pow(len as u32);
        for code in 0..total {
            word.clear();
            let mut c = code;
            for _ in 0..len {
                word.push(c % k);
                c /= k;
            }
            let d = (word_probability(g, &word)? - word_probability(h, &word)?).abs();
            gap = gap.max(d);
        }
    }
    Ok(gap)
}

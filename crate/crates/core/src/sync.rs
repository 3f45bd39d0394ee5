//! ε-synchronizing strings and the product machine.
//!
//! A string `x` ε-synchronizes a machine when the belief over states after
//! observing `x` (starting from the stationary distribution) puts at least
//! `1 - ε` on a single state. Such strings always exist for the machines
//! handled here but no length bound is known, so the search is bounded by a
//! caller-supplied depth and fails with [`Error::DepthExceeded`], carrying
//! the best string found so far.

use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashSet};

use crate::error::{Error, Result};
use crate::pfsa::{self, belief_from_string, stationary_distribution, Pfsa};

/// Upper bound on the number of open search nodes.
pub const FRONTIER_CAP: usize = 1_000_000;

/// Beliefs that agree after rounding to this grid are treated as the same
/// search node.
pub const BELIEF_QUANTUM: f64 = 1e-12;

/// Depth bound used when none is given: `64 · |Q|` (product of the state
/// counts for joint searches).
pub fn default_max_depth(machines: &[&Pfsa]) -> usize {
    64 * machines.iter().map(|g| g.num_states()).product::<usize>()
}

/// Synchronization certificate for one machine.
#[derive(Debug, Clone, PartialEq)]
pub struct SyncResult {
    pub string: Vec<usize>,
    /// `max_q Pr(q | string)`.
    pub achieved: f64,
    /// The state attaining `achieved`.
    pub state: usize,
    pub state_name: String,
    /// Longest string length popped during the search.
    pub depth_searched: usize,
}

/// Certificate for several machines sharing one string.
#[derive(Debug, Clone, PartialEq)]
pub struct JointSyncResult {
    pub string: Vec<usize>,
    pub per_machine: Vec<SyncResult>,
    pub depth_searched: usize,
}

impl JointSyncResult {
    /// The weakest concentration over all machines.
    pub fn achieved(&self) -> f64 {
        self.per_machine
            .iter()
            .map(|r| r.achieved)
            .fold(f64::INFINITY, f64::min)
    }
}

struct Node {
    score: f64,
    string: Vec<usize>,
    beliefs: Vec<Vec<f64>>,
}

impl Node {
    fn better_than(&self, other: &Node) -> bool {
        self.cmp(other) == Ordering::Greater
    }
}

// Higher score first, then shorter, then lexicographically smaller.
impl Ord for Node {
    fn cmp(&self, other: &Self) -> Ordering {
        self.score
            .total_cmp(&other.score)
            .then_with(|| other.string.len().cmp(&self.string.len()))
            .then_with(|| other.string.cmp(&self.string))
    }
}

impl PartialOrd for Node {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl PartialEq for Node {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Node {}

fn score(beliefs: &[Vec<f64>]) -> f64 {
    beliefs
        .iter()
        .map(|b| b.iter().cloned().fold(0.0, f64::max))
        .fold(f64::INFINITY, f64::min)
}

fn quantize(beliefs: &[Vec<f64>]) -> Vec<i64> {
    beliefs
        .iter()
        .flat_map(|b| b.iter().map(|x| (x / BELIEF_QUANTUM).round() as i64))
        .collect()
}

fn check_eps(eps: f64, max_depth: usize) -> Result<()> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "eps must be in (0, 1), got {eps}"
        )));
    }
    if max_depth == 0 {
        return Err(Error::InvalidArgument(
            "max_depth must be at least 1".into(),
        ));
    }
    Ok(())
}

/// Best-first search for a string that ε-synchronizes one machine.
pub fn epsilon_synchronize(g: &Pfsa, eps: f64, max_depth: usize) -> Result<SyncResult> {
    let mut joint = synchronize_all(&[g], eps, max_depth)?;
    Ok(joint.per_machine.remove(0))
}

/// One string that ε-synchronizes both machines. The beliefs of the two
/// machines are driven by the same symbols.
pub fn joint_epsilon_synchronize(
    g: &Pfsa,
    h: &Pfsa,
    eps: f64,
    max_depth: usize,
) -> Result<JointSyncResult> {
    g.alphabet().ensure_same(h.alphabet())?;
    synchronize_all(&[g, h], eps, max_depth)
}

/// Joint ε-synchronization of any finite family of machines over one
/// alphabet. Nodes are ranked by the smallest of the machines' largest
/// belief components; ties go to shorter, then lexicographically smaller
/// strings. Every returned value is recomputed by replaying the string from
/// the stationary distributions.
pub fn synchronize_all(machines: &[&Pfsa], eps: f64, max_depth: usize) -> Result<JointSyncResult> {
    check_eps(eps, max_depth)?;
    let first = machines
        .first()
        .ok_or_else(|| Error::InvalidArgument("no machines to synchronize".into()))?;
    for g in &machines[1..] {
        first.alphabet().ensure_same(g.alphabet())?;
    }
    let k = first.num_symbols();
    let roots = machines
        .iter()
        .map(|g| stationary_distribution(g).map(|b| b.as_slice().to_vec()))
        .collect::<Result<Vec<_>>>()?;

    let mut heap = BinaryHeap::new();
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    seen.insert(quantize(&roots));
    heap.push(Node {
        score: score(&roots),
        string: Vec::new(),
        beliefs: roots,
    });
    let target = 1.0 - eps;
    let mut depth_searched = 0;
    let mut best: Option<Node> = None;

    while let Some(node) = heap.pop() {
        depth_searched = depth_searched.max(node.string.len());
        if node.score >= target {
            return replay(machines, node.string, depth_searched);
        }
        if node.string.len() < max_depth {
            for s in 0..k {
                let mut beliefs = Vec::with_capacity(machines.len());
                let mut possible = true;
                for (g, b) in machines.iter().zip(&node.beliefs) {
                    let mut out = vec![0.0; b.len()];
                    if pfsa::update_into(g, b, s, &mut out) <= 0.0 {
                        possible = false;
                        break;
                    }
                    beliefs.push(out);
                }
                if !possible || heap.len() >= FRONTIER_CAP {
                    continue;
                }
                if seen.insert(quantize(&beliefs)) {
                    let mut string = node.string.clone();
                    string.push(s);
                    heap.push(Node {
                        score: score(&beliefs),
                        string,
                        beliefs,
                    });
                }
            }
        }
        if best.as_ref().is_none_or(|b| node.better_than(b)) {
            best = Some(node);
        }
    }

    let best = best.expect("root node is always visited");
    let best = replay(machines, best.string, depth_searched)?;
    Err(Error::DepthExceeded {
        eps,
        max_depth,
        best: Box::new(best),
    })
}

fn replay(
    machines: &[&Pfsa],
    string: Vec<usize>,
    depth_searched: usize,
) -> Result<JointSyncResult> {
    let per_machine = machines
        .iter()
        .map(|g| {
            let b = belief_from_string(g, &string)?;
            let state = b.argmax();
            Ok(SyncResult {
                string: string.clone(),
                achieved: b.max(),
                state,
                state_name: g.state_name(state).to_string(),
                depth_searched,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(JointSyncResult {
        string,
        per_machine,
        depth_searched,
    })
}

/// Diagonal product: states `Q × Q'` named `(q,q')`, shared alphabet,
/// `δ((i, j), σ) = (δ(i, σ), δ'(j, σ))`. Morph rows come from `combine`
/// applied to the two component rows.
pub fn product_machine<F>(g: &Pfsa, h: &Pfsa, mut combine: F) -> Result<Pfsa>
where
    F: FnMut(&[f64], &[f64]) -> Result<Vec<f64>>,
{
    g.alphabet().ensure_same(h.alphabet())?;
    let m = h.num_states();
    let k = g.num_symbols();
    let mut names = Vec::with_capacity(g.num_states() * m);
    let mut delta = Vec::with_capacity(names.capacity());
    let mut morph = Vec::with_capacity(names.capacity());
    for i in 0..g.num_states() {
        for j in 0..m {
            names.push(format!("({},{})", g.state_name(i), h.state_name(j)));
            delta.push((0..k).map(|s| g.next(i, s) * m + h.next(j, s)).collect());
            morph.push(combine(g.morph_row(i), h.morph_row(j))?);
        }
    }
    Pfsa::from_parts(g.alphabet().clone(), names, delta, morph)
}

/// Row combiner giving uniform rows, for products used only for their
/// transition structure.
pub fn uniform_rows(a: &[f64], _b: &[f64]) -> Result<Vec<f64>> {
    Ok(vec![1.0 / a.len() as f64; a.len()])
}

//! Estimation from raw symbol streams.
//!
//! The next-symbol distribution after each context of fixed depth `D` is
//! estimated from overlapping windows with additive smoothing. Stream inner
//! products average the logarithmic inner product of the two estimates over
//! all `|Σ|^D` contexts with equal weight, the data analogue of driving both
//! processes with uniformly drawn symbols.

use crate::error::{Error, Result};
use crate::pfsa::{belief_from_string, symbolic_derivative, Pfsa};
use crate::simplex::{log_inner_unchecked, pdist, smooth, AngleSums, ProbVec};
use crate::symbols::{Alphabet, SymbolStream};

pub const DEFAULT_DEPTH: usize = 4;
pub const DEFAULT_SMOOTHING: f64 = 0.5;

/// Empirical norms below this make a stream angle undefined.
pub const STREAM_ZERO_NORM: f64 = 1e-9;

/// Largest number of contexts a table may have.
const MAX_CONTEXTS: usize = 1 << 24;

/// Smoothed next-symbol estimates for every context in `Σ^D`.
///
/// Contexts are indexed in base `|Σ|` with the oldest symbol most
/// significant, so index order is lexicographic in alphabet order.
#[derive(Debug, Clone, PartialEq)]
pub struct DerivativeTable {
    pub alphabet: Alphabet,
    pub depth: usize,
    pub smoothing: f64,
    /// `counts[x][σ]`: occurrences of context `x` followed by `σ`.
    pub counts: Vec<Vec<u64>>,
    pub estimates: Vec<ProbVec>,
}

impl DerivativeTable {
    pub fn num_contexts(&self) -> usize {
        self.estimates.len()
    }

    /// The context with index `i`.
    pub fn context(&self, i: usize) -> Vec<usize> {
        let k = self.alphabet.len();
        let mut out = vec![0; self.depth];
        let mut c = i;
        for slot in out.iter_mut().rev() {
            *slot = c % k;
            c /= k;
        }
        out
    }

    pub fn context_index(&self, context: &[usize]) -> usize {
        let k = self.alphabet.len();
        context.iter().fold(0, |acc, &s| acc * k + s)
    }

    /// Number of times context `i` was followed by any symbol.
    pub fn occurrences(&self, i: usize) -> u64 {
        self.counts[i].iter().sum()
    }

    pub fn estimate(&self, context: &[usize]) -> &ProbVec {
        &self.estimates[self.context_index(context)]
    }
}

/// `φ̂_x(σ) = (n(xσ) + s) / (n(x·) + s|Σ|)` for every `x ∈ Σ^D`, counting
/// overlapping windows.
pub fn estimate_derivatives(
    s: &SymbolStream,
    depth: usize,
    smoothing: f64,
) -> Result<DerivativeTable> {
    if s.len() <= depth {
        return Err(Error::StreamTooShort {
            len: s.len(),
            depth,
        });
    }
    let k = s.alphabet.len();
    let contexts = (0..depth)
        .try_fold(1usize, |acc, _| acc.checked_mul(k))
        .filter(|&n| n <= MAX_CONTEXTS)
        .ok_or_else(|| Error::InvalidArgument(format!("|Σ|^{depth} contexts is too many")))?;
    let mut counts = vec![vec![0u64; k]; contexts];
    let mut ctx = 0usize;
    for (i, &sym) in s.symbols.iter().enumerate() {
        if i >= depth {
            counts[ctx][sym] += 1;
        }
        if contexts > 1 {
            ctx = (ctx * k + sym) % contexts;
        }
    }
    let estimates = counts
        .iter()
        .map(|row| {
            let w: Vec<f64> = row.iter().map(|&c| c as f64).collect();
            smooth(&w, smoothing)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(DerivativeTable {
        alphabet: s.alphabet.clone(),
        depth,
        smoothing,
        counts,
        estimates,
    })
}

fn check_tables(a: &DerivativeTable, b: &DerivativeTable) -> Result<()> {
    a.alphabet.ensure_same(&b.alphabet)?;
    if a.depth != b.depth {
        return Err(Error::InvalidArgument(format!(
            "context depths differ: {} vs {}",
            a.depth, b.depth
        )));
    }
    Ok(())
}

/// `(1/|Σ|^D) Σ_x ⟨φ̂¹_x, φ̂²_x⟩`.
pub fn table_inner(a: &DerivativeTable, b: &DerivativeTable) -> Result<f64> {
    check_tables(a, b)?;
    let sum: f64 = a
        .estimates
        .iter()
        .zip(&b.estimates)
        .map(|(x, y)| log_inner_unchecked(x.as_slice(), y.as_slice()))
        .sum();
    Ok(sum / a.num_contexts() as f64)
}

/// Angle between two tables, in radians.
pub fn table_angle(a: &DerivativeTable, b: &DerivativeTable) -> Result<f64> {
    check_tables(a, b)?;
    let na = table_inner(a, a)?.sqrt();
    let nb = table_inner(b, b)?.sqrt();
    for n in [na, nb] {
        if n < STREAM_ZERO_NORM {
            return Err(Error::ZeroNorm(n));
        }
    }
    let w = 1.0 / a.num_contexts() as f64;
    let mut sums = AngleSums::default();
    for (x, y) in a.estimates.iter().zip(&b.estimates) {
        sums.add(w, &x.log_ratios(), &y.log_ratios(), na, nb);
    }
    Ok(sums.angle())
}

/// Empirical angle between the processes behind two streams.
pub fn stream_angle(
    s1: &SymbolStream,
    s2: &SymbolStream,
    depth: usize,
    smoothing: f64,
) -> Result<f64> {
    s1.alphabet.ensure_same(&s2.alphabet)?;
    let a = estimate_derivatives(s1, depth, smoothing)?;
    let b = estimate_derivatives(s2, depth, smoothing)?;
    table_angle(&a, &b)
}

/// Mean and (population) standard deviation of the symbol indices.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StreamStats {
    pub mean: f64,
    pub std: f64,
}

pub fn stream_stats(s: &SymbolStream) -> StreamStats {
    if s.is_empty() {
        return StreamStats {
            mean: f64::NAN,
            std: f64::NAN,
        };
    }
    let n = s.len() as f64;
    let mean = s.symbols.iter().map(|&x| x as f64).sum::<f64>() / n;
    let var = s
        .symbols
        .iter()
        .map(|&x| (x as f64 - mean).powi(2))
        .sum::<f64>()
        / n;
    StreamStats {
        mean,
        std: var.sqrt(),
    }
}

/// Largest distance between an estimated derivative and the true one of
/// `g` over all contexts of the table.
pub fn model_derivative_gap(table: &DerivativeTable, g: &Pfsa) -> Result<f64> {
    table.alphabet.ensure_same(g.alphabet())?;
    let mut gap: f64 = 0.0;
    for i in 0..table.num_contexts() {
        let x = table.context(i);
        let phi = symbolic_derivative(g, &belief_from_string(g, &x)?)?;
        gap = gap.max(pdist(&table.estimates[i], &phi)?);
    }
    Ok(gap)
}

//! The Hilbert space of strictly positive probability vectors.
//!
//! Vectors are added by normalized elementwise product ([`psum`]) and scaled
//! by normalized elementwise powering ([`pscale`]). The uniform vector is the
//! zero element. [`log_inner`] is the logarithmic inner product, built from
//! log-ratios of consecutive coordinates, so the coordinate order of a
//! [`ProbVec`] matters: it is always the declared alphabet order.
//!
//! ```
//! use pfsa_space::simplex::{make_pvec, psum, pscale, ProbVec};
//!
//! let a = make_pvec(&[0.2, 0.8]).unwrap();
//! let minus_a = pscale(-1.0, &a).unwrap();
//! let zero = psum(&a, &minus_a).unwrap();
//! assert!(zero.is_uniform(1e-12));
//! assert_eq!(ProbVec::uniform(2).unwrap().as_slice(), &[0.5, 0.5]);
//! ```

use std::fmt;
use std::ops::Index;

use crate::error::{Error, Result};

/// Entries of a freshly built vector sum to one within this bound.
pub const NORMALIZATION_TOL: f64 = 1e-12;

/// Tolerance used for algebraic identities and orthogonality checks.
pub const ALGEBRA_TOL: f64 = 1e-9;

/// A strictly positive probability vector with at least two entries.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbVec(Vec<f64>);

impl ProbVec {
    /// Validates and normalizes `values`. Same as [`make_pvec`].
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::DimensionTooSmall(values.len()));
        }
        for (index, &value) in values.iter().enumerate() {
            if !value.is_finite() {
                return Err(Error::NonFiniteEntry { index, value });
            }
            if value <= 0.0 {
                return Err(Error::NonPositiveEntry { index, value });
            }
        }
        let out = normalize(values);
        if let Some((index, &value)) = out
            .iter()
            .enumerate()
            .find(|(_, v)| v.is_nan() || **v <= 0.0)
        {
            return Err(Error::NonPositiveEntry { index, value });
        }
        Ok(ProbVec(out))
    }

    /// The zero element of the space: `(1/n, ..., 1/n)`.
    pub fn uniform(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::DimensionTooSmall(n));
        }
        Ok(ProbVec(vec![1.0 / n as f64; n]))
    }

    /// Inverse of [`ProbVec::log_ratios`]: the vector whose consecutive
    /// log-ratios are `u`. Has dimension `u.len() + 1`.
    pub fn from_log_ratios(u: &[f64]) -> Result<Self> {
        if u.is_empty() {
            return Err(Error::DimensionTooSmall(1));
        }
        // ln p_i = ln p_n + sum_{j >= i} u_j
        let n = u.len() + 1;
        let mut logs = vec![0.0; n];
        for i in (0..n - 1).rev() {
            logs[i] = logs[i + 1] + u[i];
        }
        from_logs(logs).ok_or(Error::Overflow { alpha: f64::NAN })
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }

    /// `ln(p_i / p_{i+1})` for `i = 0..n-1`. The inner product is the plain
    /// dot product of these coordinates.
    pub fn log_ratios(&self) -> Vec<f64> {
        self.0.windows(2).map(|w| (w[0] / w[1]).ln()).collect()
    }

    /// True when every entry is within `tol` of `1/n`.
    pub fn is_uniform(&self, tol: f64) -> bool {
        let u = 1.0 / self.dim() as f64;
        self.0.iter().all(|p| (p - u).abs() <= tol)
    }

    /// Index of the largest entry (first one on ties).
    pub fn argmax(&self) -> usize {
        argmax(&self.0)
    }
}

impl Index<usize> for ProbVec {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl fmt::Display for ProbVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

pub(crate) fn argmax(v: &[f64]) -> usize {
    let mut best = 0;
    for (i, &x) in v.iter().enumerate() {
        if x > v[best] {
            best = i;
        }
    }
    best
}

/// Divides by the sum unless the entries already sum to one within
/// [`NORMALIZATION_TOL`]; already normalized input passes through bit-exact.
fn normalize(mut v: Vec<f64>) -> Vec<f64> {
    let sum: f64 = v.iter().sum();
    if (sum - 1.0).abs() > NORMALIZATION_TOL {
        for x in &mut v {
            *x /= sum;
        }
    }
    v
}

/// Normalized `exp(logs)`, shifted by the maximum so the largest entry is one
/// before normalization. `None` if an entry underflows to zero.
fn from_logs(mut logs: Vec<f64>) -> Option<ProbVec> {
    let max = logs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if !max.is_finite() {
        return None;
    }
    for l in &mut logs {
        *l = (*l - max).exp();
    }
    let v = normalize(logs);
    if v.iter().all(|x| *x > 0.0 && x.is_finite()) {
        Some(ProbVec(v))
    } else {
        None
    }
}

fn check_dims(a: &ProbVec, b: &ProbVec) -> Result<()> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            left: a.dim(),
            right: b.dim(),
        });
    }
    Ok(())
}

/// Validation front door: every value must be finite and strictly positive,
/// and there must be at least two of them. The result is normalized.
pub fn make_pvec(values: &[f64]) -> Result<ProbVec> {
    ProbVec::new(values.to_vec())
}

/// Adds `s > 0` to every raw weight and normalizes. For turning counts or
/// estimates that may contain zeros into members of the space.
pub fn smooth(weights: &[f64], s: f64) -> Result<ProbVec> {
    if !s.is_finite() || s <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "smoothing must be positive, got {s}"
        )));
    }
    for (index, &value) in weights.iter().enumerate() {
        if !value.is_finite() {
            return Err(Error::NonFiniteEntry { index, value });
        }
        if value < 0.0 {
            return Err(Error::NonPositiveEntry { index, value });
        }
    }
    ProbVec::new(weights.iter().map(|w| w + s).collect())
}

/// Group sum: `(a ⊕ b)_i = a_i b_i / Σ_j a_j b_j`.
pub fn psum(a: &ProbVec, b: &ProbVec) -> Result<ProbVec> {
    check_dims(a, b)?;
    let prod: Vec<f64> = a.0.iter().zip(&b.0).map(|(x, y)| x * y).collect();
    let out = normalize(prod);
    if out.iter().all(|x| *x > 0.0) {
        Ok(ProbVec(out))
    } else {
        Err(Error::Overflow { alpha: 1.0 })
    }
}

/// Scalar product: `(α ⊙ a)_i = a_i^α / Σ_j a_j^α`.
///
/// Fails with [`Error::Overflow`] when the powered entries cannot be
/// represented as a strictly positive vector in double precision.
pub fn pscale(alpha: f64, a: &ProbVec) -> Result<ProbVec> {
    if !alpha.is_finite() {
        return Err(Error::Overflow { alpha });
    }
    if alpha == 1.0 {
        return Ok(a.clone());
    }
    if alpha == 0.0 {
        return ProbVec::uniform(a.dim());
    }
    let logs = a.0.iter().map(|x| alpha * x.ln()).collect();
    from_logs(logs).ok_or(Error::Overflow { alpha })
}

/// Group inverse, `(-1) ⊙ a`.
pub fn pneg(a: &ProbVec) -> ProbVec {
    let logs = a.0.iter().map(|x| -x.ln()).collect();
    from_logs(logs).expect("inverse of a strictly positive vector is representable")
}

/// `a ⊖ b = a ⊕ ((-1) ⊙ b)`.
pub fn pdiff(a: &ProbVec, b: &ProbVec) -> Result<ProbVec> {
    check_dims(a, b)?;
    let logs = a.0.iter().zip(&b.0).map(|(x, y)| x.ln() - y.ln()).collect();
    from_logs(logs).ok_or(Error::Overflow { alpha: -1.0 })
}

/// Logarithmic inner product `Σ_{i<n} ln(a_i/a_{i+1}) ln(b_i/b_{i+1})`.
pub fn log_inner(a: &ProbVec, b: &ProbVec) -> Result<f64> {
    check_dims(a, b)?;
    Ok(log_inner_unchecked(&a.0, &b.0))
}

pub(crate) fn log_inner_unchecked(a: &[f64], b: &[f64]) -> f64 {
    a.windows(2)
        .zip(b.windows(2))
        .map(|(x, y)| (x[0] / x[1]).ln() * (y[0] / y[1]).ln())
        .sum()
}

pub fn pnorm(a: &ProbVec) -> f64 {
    log_inner_unchecked(&a.0, &a.0).sqrt()
}

/// Induced distance `‖a ⊖ b‖`.
pub fn pdist(a: &ProbVec, b: &ProbVec) -> Result<f64> {
    check_dims(a, b)?;
    // ln((a_i/b_i)/(a_{i+1}/b_{i+1})) summed in squares
    let s: f64 =
        a.0.windows(2)
            .zip(b.0.windows(2))
            .map(|(x, y)| {
                let d = (x[0] / x[1]).ln() - (y[0] / y[1]).ln();
                d * d
            })
            .sum();
    Ok(s.sqrt())
}

/// Point on the geodesic between two vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct GeodesicPoint {
    pub point: ProbVec,
    /// Set when `theta` lies outside `[0, 1]`.
    pub extrapolated: bool,
}

/// `θ ⊙ p0 ⊕ (1-θ) ⊙ p1`: equals `p0` at `θ = 1` and `p1` at `θ = 0` and
/// travels at constant speed `pdist(p0, p1)`.
pub fn geodesic_point(p0: &ProbVec, p1: &ProbVec, theta: f64) -> Result<GeodesicPoint> {
    check_dims(p0, p1)?;
    if !theta.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "theta must be finite, got {theta}"
        )));
    }
    let extrapolated = !(0.0..=1.0).contains(&theta);
    let point = if theta == 1.0 {
        p0.clone()
    } else if theta == 0.0 {
        p1.clone()
    } else {
        let logs =
            p0.0.iter()
                .zip(&p1.0)
                .map(|(x, y)| theta * x.ln() + (1.0 - theta) * y.ln())
                .collect();
        from_logs(logs).ok_or(Error::Overflow { alpha: theta })?
    };
    Ok(GeodesicPoint {
        point,
        extrapolated,
    })
}

/// Crossing point of two orthogonal geodesics.
#[derive(Debug, Clone, PartialEq)]
pub struct Intersection {
    /// Parameter on the first geodesic `γ(θ) = θ p0 + (1-θ) p1`.
    pub theta: f64,
    pub point: ProbVec,
}

/// Intersection of `γ(θ) = θ p0 + (1-θ) p1` with the orthogonal geodesic
/// `η(θ) = θ q0 + (1-θ) q1`.
///
/// `θ⋆ = ⟨p1 ⊖ q1, p1 ⊖ p0⟩ / ‖p1 ⊖ p0‖²`. Orthogonal lines always meet
/// when the dimension is 3; in higher dimensions the returned point is the
/// foot of the perpendicular from `η` onto `γ`.
pub fn geodesic_intersection(
    p0: &ProbVec,
    p1: &ProbVec,
    q0: &ProbVec,
    q1: &ProbVec,
) -> Result<Intersection> {
    check_dims(p0, p1)?;
    check_dims(p0, q0)?;
    check_dims(p0, q1)?;
    let d = pdiff(p1, p0)?;
    let e = pdiff(q1, q0)?;
    let d_sq = log_inner_unchecked(&d.0, &d.0);
    if d_sq.sqrt() <= NORMALIZATION_TOL {
        return Err(Error::DegenerateGeodesic);
    }
    let inner = log_inner_unchecked(&d.0, &e.0);
    let e_norm = pnorm(&e);
    if inner.abs() > ALGEBRA_TOL * (d_sq.sqrt() * e_norm).max(1.0) {
        return Err(Error::NotOrthogonal { inner });
    }
    let w = pdiff(p1, q1)?;
    let theta = log_inner_unchecked(&w.0, &d.0) / d_sq;
    let point = geodesic_point(p0, p1, theta)?.point;
    Ok(Intersection { theta, point })
}

/// Accumulates the squared norms of `x/‖x‖ - y/‖y‖` and `x/‖x‖ + y/‖y‖`
/// over weighted coordinates, giving the angle between `x` and `y` as
/// `2 atan2(‖x̂ - ŷ‖, ‖x̂ + ŷ‖)`. Unlike `arccos` of the cosine this stays
/// accurate near `0` and `π`.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct AngleSums {
    pub minus: f64,
    pub plus: f64,
}

impl AngleSums {
    pub fn add(&mut self, w: f64, a: &[f64], b: &[f64], na: f64, nb: f64) {
        for (x, y) in a.iter().zip(b) {
            let (u, v) = (x / na, y / nb);
            self.minus += w * (u - v) * (u - v);
            self.plus += w * (u + v) * (u + v);
        }
    }

    pub fn angle(&self) -> f64 {
        2.0 * self.minus.sqrt().atan2(self.plus.sqrt())
    }
}

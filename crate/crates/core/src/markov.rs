//! Stationary vectors of finite row-stochastic matrices.

use nalgebra::{DMatrix, DVector};

/// Target residual `max |pP - p|` for [`stationary_lu`].
pub const STATIONARY_RESIDUAL: f64 = 1e-12;

/// Solves `p P = p`, `Σ p = 1` directly: the last equation of
/// `(Pᵀ - I) p = 0` is replaced by the normalization row. Returns `None`
/// when the system is singular, i.e. the stationary vector is not unique.
pub fn stationary_lu(p: &DMatrix<f64>) -> Option<Vec<f64>> {
    let n = p.nrows();
    assert_eq!(n, p.ncols(), "transition matrix must be square");
    if n == 1 {
        return Some(vec![1.0]);
    }
    let mut a = p.transpose();
    for i in 0..n {
        a[(i, i)] -= 1.0;
    }
    for j in 0..n {
        a[(n - 1, j)] = 1.0;
    }
    let mut rhs = DVector::zeros(n);
    rhs[n - 1] = 1.0;
    let lu = a.clone().lu();
    let mut x = lu.solve(&rhs)?;
    // iterative refinement
    for _ in 0..3 {
        let r = &rhs - &a * &x;
        if r.amax() <= STATIONARY_RESIDUAL * 1e-3 {
            break;
        }
        x += lu.solve(&r)?;
    }
    let mut out: Vec<f64> = x.iter().map(|v| v.max(0.0)).collect();
    let sum: f64 = out.iter().sum();
    if !sum.is_finite() || sum <= 0.0 {
        return None;
    }
    out.iter_mut().for_each(|v| *v /= sum);
    Some(out)
}

/// Power iteration on the lazy chain `(I + P) / 2`, which shares the
/// stationary vector of `P` and is aperiodic. Independent of the direct
/// solve; used to cross-check it.
pub fn stationary_power(p: &DMatrix<f64>, tol: f64, max_iter: usize) -> Vec<f64> {
    let n = p.nrows();
    let mut x = vec![1.0 / n as f64; n];
    let mut next = vec![0.0; n];
    for _ in 0..max_iter {
        for (j, v) in next.iter_mut().enumerate() {
            let mut s = 0.0;
            for (i, xi) in x.iter().enumerate() {
                s += xi * p[(i, j)];
            }
            *v = 0.5 * (x[j] + s);
        }
        let delta = x
            .iter()
            .zip(&next)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        std::mem::swap(&mut x, &mut next);
        if delta < tol {
            break;
        }
    }
    let sum: f64 = x.iter().sum();
    x.iter().map(|v| v / sum).collect()
}

/// `max_j |(pP)_j - p_j|`.
pub fn stationary_residual(p: &DMatrix<f64>, x: &[f64]) -> f64 {
    let n = p.nrows();
    (0..n)
        .map(|j| {
            let s: f64 = (0..n).map(|i| x[i] * p[(i, j)]).sum();
            (s - x[j]).abs()
        })
        .fold(0.0, f64::max)
}

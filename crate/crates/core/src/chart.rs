//! Geodesic grid on the 2-simplex, exported as plot-ready rows.
//!
//! In the coordinates `u = (ln p₁/p₂, ln p₂/p₃)` the logarithmic inner
//! product is the Euclidean one, so geodesics are straight lines and two
//! perpendicular families of them form a grid. The chart samples both
//! families, maps every point to the equilateral triangle, and records where
//! the lines cross. The two axis lines cross at the uniform vector.

use std::io::Write;

use crate::error::{Error, Result};
use crate::simplex::{geodesic_intersection, geodesic_point, ProbVec};

#[derive(Debug, Clone, PartialEq)]
pub struct ChartConfig {
    /// Lines per family on each side of the axis line.
    pub lines_per_side: usize,
    /// Spacing between neighbouring parallel lines, in log-ratio units.
    pub spacing: f64,
    /// Every line runs between `±extent` along its own direction.
    pub extent: f64,
    /// Sample points per line, at least 2.
    pub samples: usize,
    /// Direction of the first family in log-ratio coordinates; the second
    /// family runs along its perpendicular.
    pub direction: [f64; 2],
}

impl Default for ChartConfig {
    fn default() -> Self {
        Self {
            lines_per_side: 3,
            spacing: 1.0,
            extent: 4.0,
            samples: 101,
            direction: [1.0, 0.0],
        }
    }
}

/// One sampled point.
#[derive(Debug, Clone, PartialEq)]
pub struct ChartPoint {
    pub curve: usize,
    /// 0 or 1.
    pub family: usize,
    /// Signed offset of the curve from the axis line of its family.
    pub offset: f64,
    pub theta: f64,
    pub p: ProbVec,
    pub xy: [f64; 2],
}

/// Crossing of curve `a` (family 0) with curve `b` (family 1).
#[derive(Debug, Clone, PartialEq)]
pub struct ChartCrossing {
    pub a: usize,
    pub b: usize,
    pub theta: f64,
    pub p: ProbVec,
    pub xy: [f64; 2],
}

#[derive(Debug, Clone, PartialEq)]
pub struct Chart {
    pub points: Vec<ChartPoint>,
    pub crossings: Vec<ChartCrossing>,
}

/// Position in an equilateral triangle with vertices `e₁ = (0, 0)`,
/// `e₂ = (1, 0)`, `e₃ = (1/2, √3/2)`.
pub fn barycentric_xy(p: &ProbVec) -> [f64; 2] {
    let s = p.as_slice();
    [s[1] + 0.5 * s[2], s[2] * 3f64.sqrt() / 2.0]
}

struct Line {
    family: usize,
    offset: f64,
    start: ProbVec,
    end: ProbVec,
}

fn at(u: [f64; 2]) -> Result<ProbVec> {
    ProbVec::from_log_ratios(&u)
}

pub fn geodesic_chart(cfg: &ChartConfig) -> Result<Chart> {
    let [dx, dy] = cfg.direction;
    let len = dx.hypot(dy);
    if !(len.is_finite() && len > 0.0) {
        return Err(Error::InvalidArgument(
            "chart direction must be nonzero".into(),
        ));
    }
    if cfg.samples < 2
        || cfg.extent.is_nan()
        || cfg.extent <= 0.0
        || cfg.spacing.is_nan()
        || cfg.spacing <= 0.0
    {
        return Err(Error::InvalidArgument(
            "chart needs samples >= 2 and positive extent and spacing".into(),
        ));
    }
    let d = [dx / len, dy / len];
    let n = [-d[1], d[0]];
    let side = cfg.lines_per_side as i64;

    let mut lines = Vec::new();
    for (family, (along, across)) in [(d, n), (n, d)].into_iter().enumerate() {
        for k in -side..=side {
            let offset = k as f64 * cfg.spacing;
            let point = |t: f64| {
                [
                    offset * across[0] + t * along[0],
                    offset * across[1] + t * along[1],
                ]
            };
            lines.push(Line {
                family,
                offset,
                // θ = 1 at `start`, θ = 0 at `end`
                start: at(point(cfg.extent))?,
                end: at(point(-cfg.extent))?,
            });
        }
    }

    let mut points = Vec::with_capacity(lines.len() * cfg.samples);
    for (curve, line) in lines.iter().enumerate() {
        for i in 0..cfg.samples {
            let theta = i as f64 / (cfg.samples - 1) as f64;
            let p = geodesic_point(&line.start, &line.end, theta)?.point;
            points.push(ChartPoint {
                curve,
                family: line.family,
                offset: line.offset,
                theta,
                xy: barycentric_xy(&p),
                p,
            });
        }
    }

    let mut crossings = Vec::new();
    for (a, la) in lines.iter().enumerate().filter(|(_, l)| l.family == 0) {
        for (b, lb) in lines.iter().enumerate().filter(|(_, l)| l.family == 1) {
            let hit = geodesic_intersection(&la.start, &la.end, &lb.start, &lb.end)?;
            crossings.push(ChartCrossing {
                a,
                b,
                theta: hit.theta,
                xy: barycentric_xy(&hit.point),
                p: hit.point,
            });
        }
    }
    Ok(Chart { points, crossings })
}

/// Writes the sampled curves as CSV.
pub fn write_chart_points<W: Write>(chart: &Chart, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "curve", "family", "offset", "theta", "p1", "p2", "p3", "x", "y",
    ])?;
    for pt in &chart.points {
        let s = pt.p.as_slice();
        w.write_record([
            pt.curve.to_string(),
            pt.family.to_string(),
            pt.offset.to_string(),
            pt.theta.to_string(),
            s[0].to_string(),
            s[1].to_string(),
            s[2].to_string(),
            pt.xy[0].to_string(),
            pt.xy[1].to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Writes the crossings as CSV.
pub fn write_chart_crossings<W: Write>(chart: &Chart, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["curve_a", "curve_b", "theta", "p1", "p2", "p3", "x", "y"])?;
    for c in &chart.crossings {
        let s = c.p.as_slice();
        w.write_record([
            c.a.to_string(),
            c.b.to_string(),
            c.theta.to_string(),
            s[0].to_string(),
            s[1].to_string(),
            s[2].to_string(),
            c.xy[0].to_string(),
            c.xy[1].to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

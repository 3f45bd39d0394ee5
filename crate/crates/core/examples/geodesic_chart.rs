//! Perpendicular families of geodesics on the 2-simplex, as plot-ready CSV.
//!
//! ```text
//! cargo run --example geodesic_chart -- chart.csv crossings.csv
//! ```
//!
//! Without arguments the curves go to standard output. Plot `x` against `y`
//! grouped by `curve`; the two axis lines cross at the uniform vector.

use std::fs::File;

use pfsa_space::chart::{geodesic_chart, write_chart_crossings, write_chart_points, ChartConfig};
use pfsa_space::Result;

fn main() -> Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let chart = geodesic_chart(&ChartConfig::default())?;
    match args.first() {
        Some(path) => write_chart_points(&chart, File::create(path)?)?,
        None => write_chart_points(&chart, std::io::stdout().lock())?,
    }
    if let Some(path) = args.get(1) {
        write_chart_crossings(&chart, File::create(path)?)?;
    }
    let centre = chart
        .crossings
        .iter()
        .find(|c| c.p.is_uniform(1e-12))
        .expect("axis lines cross at the uniform vector");
    eprintln!(
        "{} points on {} curves; axis lines cross at {} (theta = {})",
        chart.points.len(),
        chart.points.last().map_or(0, |p| p.curve + 1),
        centre.p,
        centre.theta
    );
    Ok(())
}

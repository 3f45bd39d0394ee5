//! Noise-robustness experiment.
//!
//! A base machine is scaled by a handful of factors (by default `1`, `-1`,
//! `0.1`, `-0.1` and `0`, labelled `A`–`D` and `X`). Scaling towards zero
//! corrupts each model into something close to white noise: its streams
//! have near-identical first and second moments. The experiment compares
//! the exact angles between the models with the angles estimated from one
//! stream per model, and also measures each model's angle to a second,
//! independent stream of itself.

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::pfsa::{format_real, generate_sequence, Pfsa};
use crate::process::{angle, scale_process, InnerMode, McConfig, ProcessHandle};
use crate::stream::{
    estimate_derivatives, stream_stats, table_angle, StreamStats, DEFAULT_DEPTH, DEFAULT_SMOOTHING,
};

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub base: Pfsa,
    pub scales: Vec<f64>,
    pub labels: Vec<String>,
    pub length: usize,
    pub depth: usize,
    pub smoothing: f64,
    pub seed: u64,
}

impl ExperimentConfig {
    /// The default five models over `base`.
    pub fn new(base: Pfsa) -> Self {
        Self {
            base,
            scales: vec![1.0, -1.0, 0.1, -0.1, 0.0],
            labels: ["A", "B", "C", "D", "X"].map(String::from).to_vec(),
            length: 1_000_000,
            depth: DEFAULT_DEPTH,
            smoothing: DEFAULT_SMOOTHING,
            seed: 42,
        }
    }
}

/// An angle, or `None` where it is undefined because one side has zero norm.
pub type Angle = Option<f64>;

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentReport {
    pub config: ExperimentConfig,
    pub stats: Vec<StreamStats>,
    pub model_angles: Vec<Vec<Angle>>,
    pub stream_angles: Vec<Vec<Angle>>,
    /// Angle between two independent streams of the same model.
    pub self_angles: Vec<Angle>,
}

/// Seed for stream `copy` (0 or 1) of model `i`.
fn stream_seed(seed: u64, i: usize, copy: usize) -> u64 {
    // splitmix64 finalizer over a per-stream counter
    let mut z = seed ^ (2 * i as u64 + copy as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn undefined_on_zero_norm(r: Result<f64>) -> Result<Angle> {
    match r {
        Ok(a) => Ok(Some(a)),
        Err(Error::ZeroNorm(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

pub fn run_noise_experiment(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    if cfg.scales.len() != cfg.labels.len() {
        return Err(Error::InvalidArgument(format!(
            "{} scales but {} labels",
            cfg.scales.len(),
            cfg.labels.len()
        )));
    }
    let base = ProcessHandle::new(&cfg.base, "base")?;
    let models = cfg
        .scales
        .iter()
        .zip(&cfg.labels)
        .map(|(&a, label)| Ok(scale_process(a, &base)?.with_label(label.clone())))
        .collect::<Result<Vec<_>>>()?;
    let m = models.len();

    let mc = McConfig::default();
    let mut model_angles = vec![vec![None; m]; m];
    for i in 0..m {
        for j in i..m {
            let a = undefined_on_zero_norm(
                angle(&models[i], &models[j], InnerMode::Exact, &mc).map(|a| a.value),
            )?;
            model_angles[i][j] = a;
            model_angles[j][i] = a;
        }
    }

    let jobs: Vec<(usize, usize)> = (0..m).flat_map(|i| [(i, 0), (i, 1)]).collect();
    let tables = jobs
        .par_iter()
        .map(|&(i, copy)| {
            let s = generate_sequence(
                models[i].machine(),
                cfg.length,
                stream_seed(cfg.seed, i, copy),
            )?;
            let stats = stream_stats(&s);
            let table = estimate_derivatives(&s, cfg.depth, cfg.smoothing)?;
            Ok((stats, table))
        })
        .collect::<Result<Vec<_>>>()?;
    let primary = |i: usize| &tables[2 * i];
    let second = |i: usize| &tables[2 * i + 1];

    let mut stream_angles = vec![vec![None; m]; m];
    for i in 0..m {
        for j in i..m {
            let a = undefined_on_zero_norm(table_angle(&primary(i).1, &primary(j).1))?;
            stream_angles[i][j] = a;
            stream_angles[j][i] = a;
        }
    }
    let self_angles = (0..m)
        .map(|i| undefined_on_zero_norm(table_angle(&primary(i).1, &second(i).1)))
        .collect::<Result<Vec<_>>>()?;

    Ok(ExperimentReport {
        config: cfg.clone(),
        stats: (0..m).map(|i| primary(i).0).collect(),
        model_angles,
        stream_angles,
        self_angles,
    })
}

fn angle_cell(a: Angle) -> String {
    a.map_or_else(|| "ZeroNorm".to_string(), format_real)
}

fn write_matrix(path: &Path, seed: u64, labels: &[String], rows: &[Vec<Angle>]) -> Result<()> {
    let mut file = fs::File::create(path)?;
    writeln!(file, "# seed={seed}")?;
    let mut w = csv::Writer::from_writer(file);
    let mut header = vec!["model".to_string()];
    header.extend(labels.iter().cloned());
    w.write_record(&header)?;
    for (label, row) in labels.iter().zip(rows) {
        let mut rec = vec![label.clone()];
        rec.extend(row.iter().map(|&a| angle_cell(a)));
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(())
}

impl ExperimentReport {
    /// Writes `model_angles.csv`, `stream_angles.csv`, `stats.csv` and
    /// `summary.txt` into `dir`, creating it if needed.
    pub fn write_to(&self, dir: &Path) -> Result<Vec<PathBuf>> {
        fs::create_dir_all(dir)?;
        let cfg = &self.config;
        let paths: Vec<PathBuf> = [
            "model_angles.csv",
            "stream_angles.csv",
            "stats.csv",
            "summary.txt",
        ]
        .iter()
        .map(|f| dir.join(f))
        .collect();
        write_matrix(&paths[0], cfg.seed, &cfg.labels, &self.model_angles)?;
        write_matrix(&paths[1], cfg.seed, &cfg.labels, &self.stream_angles)?;

        let mut file = fs::File::create(&paths[2])?;
        writeln!(file, "# seed={}", cfg.seed)?;
        let mut w = csv::Writer::from_writer(file);
        w.write_record(["model", "scale", "mean", "std", "self_angle"])?;
        for i in 0..cfg.labels.len() {
            w.write_record([
                cfg.labels[i].clone(),
                format_real(cfg.scales[i]),
                format_real(self.stats[i].mean),
                format_real(self.stats[i].std),
                angle_cell(self.self_angles[i]),
            ])?;
        }
        w.flush()?;

        fs::write(&paths[3], self.summary())?;
        Ok(paths)
    }

    /// Human-readable digest of the run.
    pub fn summary(&self) -> String {
        let cfg = &self.config;
        let mut s = String::new();
        let _ = writeln!(
            s,
            "noise experiment: seed={} length={} depth={} smoothing={}",
            cfg.seed, cfg.length, cfg.depth, cfg.smoothing
        );
        let _ = writeln!(s, "\nmodel  scale     mean     std      self-angle");
        for i in 0..cfg.labels.len() {
            let _ = writeln!(
                s,
                "{:<6} {:<9} {:<8.4} {:<8.4} {}",
                cfg.labels[i],
                cfg.scales[i],
                self.stats[i].mean,
                self.stats[i].std,
                short(self.self_angles[i]),
            );
        }
        for (title, rows) in [
            ("exact model angles", &self.model_angles),
            ("stream angles", &self.stream_angles),
        ] {
            let _ = writeln!(s, "\n{title} (rad)");
            let _ = write!(s, "{:<6}", "");
            for l in &cfg.labels {
                let _ = write!(s, " {l:>8}");
            }
            s.push('\n');
            for (l, row) in cfg.labels.iter().zip(rows.iter()) {
                let _ = write!(s, "{l:<6}");
                for &a in row {
                    let _ = write!(s, " {:>8}", short(a));
                }
                s.push('\n');
            }
        }
        s
    }
}

fn short(a: Angle) -> String {
    a.map_or_else(|| "-".to_string(), |v| format!("{v:.4}"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use std::f64::consts::PI;

    fn small() -> ExperimentConfig {
        ExperimentConfig {
            length: 20_000,
            depth: 2,
            ..ExperimentConfig::new(fixtures::g2())
        }
    }

    #[test]
    fn model_matrix_identities() {
        let r = run_noise_experiment(&small()).unwrap();
        let a = &r.model_angles;
        assert!((a[0][1].unwrap() - PI).abs() < 1e-9);
        assert!((a[2][3].unwrap() - PI).abs() < 1e-9);
        assert!(a[0][2].unwrap().abs() < 1e-9);
        assert!(a[4].iter().all(Option::is_none));
        for i in 0..5 {
            for j in 0..5 {
                assert_eq!(a[i][j], a[j][i]);
                assert_eq!(r.stream_angles[i][j], r.stream_angles[j][i]);
            }
        }
        assert!(r.self_angles.iter().flatten().all(|&x| x >= 0.0));
    }

    #[test]
    fn deterministic_for_fixed_seed() {
        let a = run_noise_experiment(&small()).unwrap();
        let b = run_noise_experiment(&small()).unwrap();
        assert_eq!(a, b);
        let c = run_noise_experiment(&ExperimentConfig { seed: 7, ..small() }).unwrap();
        assert_ne!(a.stats, c.stats);
    }

    #[test]
    fn stream_seeds_are_distinct() {
        let mut seen = std::collections::HashSet::new();
        for i in 0..50 {
            for c in 0..2 {
                assert!(seen.insert(stream_seed(42, i, c)));
            }
        }
    }

    #[test]
    fn writes_report_files() {
        let dir = tempfile::tempdir().unwrap();
        let r = run_noise_experiment(&small()).unwrap();
        let paths = r.write_to(dir.path()).unwrap();
        let model = fs::read_to_string(&paths[0]).unwrap();
        assert!(model.starts_with("# seed=42\nmodel,A,B,C,D,X\n"));
        assert!(model.contains("ZeroNorm"));
        let summary = fs::read_to_string(&paths[3]).unwrap();
        assert!(summary.contains("seed=42"));
    }
}

//! Angles between a model and its scaled, near-white-noise copies, computed
//! from the models and from one million symbols of each.
//!
//! ```text
//! cargo run --release --example noise_experiment -- [out_dir] [length] [seed]
//! ```

use std::path::PathBuf;

use pfsa_space::experiment::{run_noise_experiment, ExperimentConfig};
use pfsa_space::{fixtures, Result};

fn main() -> Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let mut cfg = ExperimentConfig::new(fixtures::g2());
    if let Some(n) = args.get(1) {
        cfg.length = n.parse().expect("length must be an integer");
    }
    if let Some(seed) = args.get(2) {
        cfg.seed = seed.parse().expect("seed must be an integer");
    }
    let report = run_noise_experiment(&cfg)?;
    print!("{}", report.summary());
    if let Some(dir) = args.first() {
        for path in report.write_to(&PathBuf::from(dir))? {
            eprintln!("wrote {}", path.display());
        }
    }
    Ok(())
}

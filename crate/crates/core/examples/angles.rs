//! Inner products and angles between processes, exactly and by simulation.
//!
//! Run with `cargo run --release --example angles`.

use pfsa_space::process::{
    angle, inner, process_norm, scale_process, InnerMode, McConfig, ProcessHandle,
};
use pfsa_space::{fixtures, Result};

fn main() -> Result<()> {
    let g = ProcessHandle::new(&fixtures::g2(), "G")?;
    let models = [
        g.clone(),
        scale_process(-1.0, &g)?.with_label("-G"),
        scale_process(0.1, &g)?.with_label("0.1 G"),
        ProcessHandle::new(&fixtures::g3_reset(), "R")?,
        ProcessHandle::new(&fixtures::g3_count(), "C")?,
    ];
    let cfg = McConfig::default();

    for m in &models {
        println!("|{}| = {:.6}", m.label, process_norm(m)?);
    }
    println!();
    for (i, a) in models.iter().enumerate() {
        for b in &models[i + 1..] {
            let exact = inner(a, b, InnerMode::Exact, &cfg)?;
            let mc = inner(a, b, InnerMode::MonteCarlo, &cfg)?;
            let theta = angle(a, b, InnerMode::Exact, &cfg)?;
            println!(
                "<{}, {}> = {:+.6} (mc {:+.6} ± {:.6})   angle {:.6} rad",
                a.label, b.label, exact.value, mc.value, mc.std_error, theta.value
            );
        }
    }
    Ok(())
}

//! Estimating next-symbol distributions and angles from raw symbol streams.
//!
//! Run with `cargo run --release --example stream_estimation`.

use pfsa_space::pfsa::generate_sequence;
use pfsa_space::process::{angle, scale_process, InnerMode, McConfig, ProcessHandle};
use pfsa_space::stream::{estimate_derivatives, model_derivative_gap, stream_angle, stream_stats};
use pfsa_space::{fixtures, Result};

fn main() -> Result<()> {
    let g = ProcessHandle::new(&fixtures::g2(), "G")?;
    let s = generate_sequence(g.machine(), 200_000, 1)?;

    let table = estimate_derivatives(&s, 2, 0.5)?;
    for i in 0..table.num_contexts() {
        println!(
            "after {}: {} ({} occurrences)",
            table.alphabet.format_word(&table.context(i)),
            table.estimates[i],
            table.occurrences(i)
        );
    }
    println!(
        "largest distance to the model: {:.4}",
        model_derivative_gap(&table, g.machine())?
    );

    let stats = stream_stats(&s);
    println!("\nmean {:.4}, std {:.4}", stats.mean, stats.std);

    let cfg = McConfig::default();
    for alpha in [0.5, -0.5, -1.0] {
        let h = scale_process(alpha, &g)?;
        let t = generate_sequence(h.machine(), 200_000, 2)?;
        println!(
            "G vs {alpha:+} G: stream angle {:.4}, model angle {:.4}",
            stream_angle(&s, &t, 4, 0.5)?,
            angle(&g, &h, InnerMode::Exact, &cfg)?.value
        );
    }
    Ok(())
}

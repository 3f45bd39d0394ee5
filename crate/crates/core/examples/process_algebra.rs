//! Scaling and adding processes, and the zero process.
//!
//! Run with `cargo run --example process_algebra`.

use pfsa_space::pfsa::write_pfsa;
use pfsa_space::process::{fdd_gap, scale_process, sum_processes, zero_process, ProcessHandle};
use pfsa_space::{fixtures, Result};

fn main() -> Result<()> {
    let g = ProcessHandle::new(&fixtures::g2(), "G")?;
    let h = ProcessHandle::new(&fixtures::g3_count(), "H")?;

    let half = scale_process(0.5, &g)?;
    print!("0.5 G:\n{}", write_pfsa(half.machine()));

    let sum = sum_processes(&g, &h)?;
    println!("\nG + H has {} states", sum.num_states());
    print!("{}", write_pfsa(sum.machine()));

    let zero = zero_process(g.alphabet());
    let cancel = sum_processes(&g, &scale_process(-1.0, &g)?)?;
    println!(
        "\nG + (-G) vs zero process: {} state(s), word gap {:e}",
        cancel.num_states(),
        fdd_gap(cancel.machine(), zero.machine(), 6)?
    );
    let distributive = sum_processes(&scale_process(2.0, &g)?, &scale_process(2.0, &h)?)?;
    println!(
        "2(G + H) vs 2G + 2H: word gap {:e}",
        fdd_gap(
            scale_process(2.0, &sum)?.machine(),
            distributive.machine(),
            6
        )?
    );
    Ok(())
}

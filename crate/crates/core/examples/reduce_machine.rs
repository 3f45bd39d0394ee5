//! Normal form of an encoding: drop transient states, then merge states
//! that generate the same future.
//!
//! Run with `cargo run --example reduce_machine`.

use pfsa_space::pfsa::{
    closed_restrictions, minimal_closed_restriction, minimize, parse_pfsa, write_pfsa,
    DEFAULT_MINIMIZE_TOL,
};
use pfsa_space::process::fdd_gap;
use pfsa_space::Result;

const MACHINE: &str = "\
pfsa v1
alphabet: 0 1
# `start` is never revisited; `B1` and `B2` are indistinguishable
state start:
  0 -> A 0.5
  1 -> B1 0.5
state A:
  0 -> A 0.8
  1 -> B1 0.2
state B1:
  0 -> A 0.3
  1 -> B2 0.7
state B2:
  0 -> A 0.3
  1 -> B1 0.7
";

fn main() -> Result<()> {
    let g = parse_pfsa(MACHINE)?;
    println!("closed restrictions:");
    for c in closed_restrictions(&g) {
        println!("  {:?}", c.state_names());
    }
    let clx = minimal_closed_restriction(&g)?;
    let min = minimize(&clx, DEFAULT_MINIMIZE_TOL);
    print!("\nreduced machine:\n{}", write_pfsa(&min));
    println!(
        "\nlargest word-probability change up to length 8: {:e}",
        fdd_gap(&g, &min, 8)?
    );
    Ok(())
}

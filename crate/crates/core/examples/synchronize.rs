//! Shortest strings after which the state is known up to `eps`, for one
//! machine and jointly for several.
//!
//! Run with `cargo run --example synchronize`.

use pfsa_space::process::{scale_process, ProcessHandle};
use pfsa_space::sync::{default_max_depth, epsilon_synchronize, synchronize_all};
use pfsa_space::{fixtures, Error, Result};

fn main() -> Result<()> {
    for (name, g) in [
        ("g2", fixtures::g2()),
        ("g3_reset", fixtures::g3_reset()),
        ("g3_count", fixtures::g3_count()),
    ] {
        let r = epsilon_synchronize(&g, 1e-6, default_max_depth(&[&g]))?;
        println!(
            "{name:<9} {:>4} -> state {} with belief {}",
            g.alphabet().format_word(&r.string),
            r.state_name,
            r.achieved
        );
    }

    let g = ProcessHandle::new(&fixtures::g2(), "G")?;
    let c = scale_process(0.1, &g)?;
    let r3 = fixtures::g3_reset();
    let machines = [g.machine(), c.machine(), &r3];
    let joint = synchronize_all(&machines, 1e-6, 128)?;
    println!(
        "jointly: {} (worst belief {})",
        r3.alphabet().format_word(&joint.string),
        joint.achieved()
    );

    // on a noisy permutation the belief only concentrates geometrically,
    // so tighter tolerances need longer strings
    let p = fixtures::noisy_permutation();
    for (eps, depth) in [(1e-3, 40), (1e-12, 40), (1e-12, 10)] {
        match epsilon_synchronize(&p, eps, depth) {
            Ok(r) => println!("noisy permutation, eps {eps:e}: {} symbols", r.string.len()),
            Err(Error::DepthExceeded { best, .. }) => println!(
                "noisy permutation, eps {eps:e}: nothing within {depth} symbols, best {}",
                best.achieved()
            ),
            Err(e) => return Err(e),
        }
    }
    Ok(())
}

//! A process encoded as a probabilistic automaton: belief tracking, next
//! symbol distributions, word probabilities and sampling.
//!
//! Run with `cargo run --example encode_process`.

use pfsa_space::pfsa::{
    belief_from_string, generate_sequence, matrices, stationary_distribution, symbolic_derivative,
    word_probability, write_pfsa,
};
use pfsa_space::{fixtures, Result};

fn main() -> Result<()> {
    let g = fixtures::g3_reset();
    print!("{}", write_pfsa(&g));

    let m = matrices(&g);
    println!("\nstate transition matrix:\n{}", m.transition);
    println!("stationary: {:?}", stationary_distribution(&g)?.as_slice());

    for word in ["", "0", "00", "001", "000"] {
        let w = g.alphabet().parse_word(word)?;
        let belief = belief_from_string(&g, &w)?;
        let next = symbolic_derivative(&g, &belief)?;
        println!(
            "x = {:<4} P(x) = {:.5}  belief = {:.3?}  next = {next}",
            if word.is_empty() { "λ" } else { word },
            word_probability(&g, &w)?,
            belief.as_slice(),
        );
    }

    let s = generate_sequence(&g, 60, 42)?;
    println!("\nsample (seed 42): {}", s.to_text().trim_end());
    Ok(())
}

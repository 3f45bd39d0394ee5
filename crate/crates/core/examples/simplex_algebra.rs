//! Vector-space operations on strictly positive probability vectors.
//!
//! Run with `cargo run --example simplex_algebra`.

use pfsa_space::simplex::{log_inner, pdiff, pdist, pnorm, pscale, psum, ProbVec};
use pfsa_space::Result;

fn main() -> Result<()> {
    let a = ProbVec::new(vec![0.7, 0.2, 0.1])?;
    let b = ProbVec::new(vec![1.0, 2.0, 5.0])?; // normalized on construction
    let zero = ProbVec::uniform(3)?;

    println!("a          = {a}");
    println!("b          = {b}");
    println!("a + b      = {}", psum(&a, &b)?);
    println!("a - a      = {}", pdiff(&a, &a)?);
    println!("2 * a      = {}", pscale(2.0, &a)?);
    println!("-1 * a     = {}", pscale(-1.0, &a)?);
    println!("0 * a      = {}", pscale(0.0, &a)?);
    println!("<a, b>     = {:.6}", log_inner(&a, &b)?);
    println!("|a|        = {:.6}", pnorm(&a));
    println!("d(a, b)    = {:.6}", pdist(&a, &b)?);
    println!("|a + 0|-|a|= {:e}", pnorm(&psum(&a, &zero)?) - pnorm(&a));

    let cos = log_inner(&a, &b)? / (pnorm(&a) * pnorm(&b));
    println!("angle(a,b) = {:.6} rad", cos.clamp(-1.0, 1.0).acos());
    Ok(())
}

//! State minimization by Moore-style partition refinement.

use std::collections::HashMap;

use super::Pfsa;

/// Default entrywise tolerance for treating two morph rows as equal.
pub const DEFAULT_MINIMIZE_TOL: f64 = 1e-9;

/// Merges states with identical futures.
///
/// The initial partition groups states whose morph rows agree entrywise
/// within `tol`; blocks are then split by the blocks of their successors
/// until nothing changes. Each block of the quotient keeps the morph row
/// and name of its lexicographically smallest member. The result is in
/// canonical state order.
pub fn minimize(g: &Pfsa, tol: f64) -> Pfsa {
    let n = g.num_states();
    let k = g.num_symbols();

    let mut reps: Vec<usize> = Vec::new();
    let mut block = vec![0usize; n];
    for q in 0..n {
        let row = g.morph_row(q);
        let found = reps.iter().position(|&r| {
            g.morph_row(r)
                .iter()
                .zip(row)
                .all(|(a, b)| (a - b).abs() <= tol)
        });
        block[q] = match found {
            Some(b) => b,
            None => {
                reps.push(q);
                reps.len() - 1
            }
        };
    }
    let mut count = reps.len();

    loop {
        let mut ids: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut next_block = vec![0usize; n];
        for q in 0..n {
            let mut sig = Vec::with_capacity(k + 1);
            sig.push(block[q]);
            sig.extend((0..k).map(|s| block[g.next(q, s)]));
            let fresh = ids.len();
            next_block[q] = *ids.entry(sig).or_insert(fresh);
        }
        let new_count = ids.len();
        block = next_block;
        if new_count == count {
            break;
        }
        count = new_count;
    }

    // smallest-named member represents each block
    let mut rep_of = vec![usize::MAX; count];
    for q in 0..n {
        let r = &mut rep_of[block[q]];
        if *r == usize::MAX || g.state_name(q) < g.state_name(*r) {
            *r = q;
        }
    }
    let names = rep_of
        .iter()
        .map(|&r| g.state_name(r).to_string())
        .collect();
    let delta = rep_of
        .iter()
        .map(|&r| (0..k).map(|s| block[g.next(r, s)]).collect())
        .collect();
    let morph = rep_of.iter().map(|&r| g.morph_row(r).to_vec()).collect();
    Pfsa::from_parts(g.alphabet().clone(), names, delta, morph)
        .expect("quotient of a well-formed machine is well-formed")
        .canonicalize()
}

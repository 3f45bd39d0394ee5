//! Closed restrictions: state subsets that no transition leaves.

use crate::error::{Error, Result};
use crate::graph;

use super::Pfsa;

/// Every non-empty state subset closed under `δ`, each as a restricted
/// machine. The full machine is always included (last).
///
/// Closed subsets are exactly the successor-closed unions of strongly
/// connected components, so the enumeration walks the condensation with the
/// sinks first; its cost is proportional to the size of the output, which
/// can be exponential in the number of components.
pub fn closed_restrictions(g: &Pfsa) -> Vec<Pfsa> {
    let adj = g.adjacency();
    let comps = graph::strongly_connected_components(&adj);
    let id = graph::component_ids(g.num_states(), &comps);
    // successor components; tarjan order puts them at lower indices
    let succ: Vec<Vec<usize>> = comps
        .iter()
        .enumerate()
        .map(|(c, members)| {
            let mut s: Vec<usize> = members
                .iter()
                .flat_map(|&u| adj[u].iter().map(|&v| id[v]))
                .filter(|&d| d != c)
                .collect();
            s.sort_unstable();
            s.dedup();
            s
        })
        .collect();

    let mut chosen = vec![false; comps.len()];
    let mut out = Vec::new();
    enumerate(0, &succ, &mut chosen, &mut |chosen| {
        let mut keep: Vec<usize> = comps
            .iter()
            .enumerate()
            .filter(|(c, _)| chosen[*c])
            .flat_map(|(_, m)| m.iter().copied())
            .collect();
        if keep.is_empty() {
            return;
        }
        keep.sort_unstable();
        out.push(keep);
    });
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out.into_iter().map(|keep| g.restrict(&keep)).collect()
}

fn enumerate<F: FnMut(&[bool])>(
    c: usize,
    succ: &[Vec<usize>],
    chosen: &mut Vec<bool>,
    emit: &mut F,
) {
    if c == succ.len() {
        emit(chosen);
        return;
    }
    chosen[c] = false;
    enumerate(c + 1, succ, chosen, emit);
    if succ[c].iter().all(|&d| chosen[d]) {
        chosen[c] = true;
        enumerate(c + 1, succ, chosen, emit);
        chosen[c] = false;
    }
}

/// The unique minimal closed restriction carrying all stationary mass: the
/// single sink strongly connected component of the transition graph.
pub fn minimal_closed_restriction(g: &Pfsa) -> Result<Pfsa> {
    let sinks = graph::sink_components(&g.adjacency());
    match sinks.as_slice() {
        [only] => Ok(g.restrict(only)),
        _ => Err(Error::NotErgodic { sinks: sinks.len() }),
    }
}

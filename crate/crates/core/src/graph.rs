//! Directed-graph helpers over dense node indices.

use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};

/// Strongly connected components of the graph given by adjacency lists.
/// Components come out in reverse topological order (sinks first) and each
/// component's members are sorted.
pub fn strongly_connected_components(adj: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut g: DiGraph<(), ()> = DiGraph::with_capacity(adj.len(), 0);
    let nodes: Vec<NodeIndex> = (0..adj.len()).map(|_| g.add_node(())).collect();
    for (u, succ) in adj.iter().enumerate() {
        for &v in succ {
            g.add_edge(nodes[u], nodes[v], ());
        }
    }
    tarjan_scc(&g)
        .into_iter()
        .map(|c| {
            let mut c: Vec<usize> = c.into_iter().map(|n| n.index()).collect();
            c.sort_unstable();
            c
        })
        .collect()
}

/// Component id of every node, indexing into `components`.
pub fn component_ids(n: usize, components: &[Vec<usize>]) -> Vec<usize> {
    let mut id = vec![0; n];
    for (c, members) in components.iter().enumerate() {
        for &m in members {
            id[m] = c;
        }
    }
    id
}

/// Components with no edge leaving them (closed communicating classes),
/// ordered by their smallest member.
pub fn sink_components(adj: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let comps = strongly_connected_components(adj);
    let id = component_ids(adj.len(), &comps);
    let mut sinks: Vec<Vec<usize>> = comps
        .iter()
        .enumerate()
        .filter(|(c, members)| members.iter().all(|&u| adj[u].iter().all(|&v| id[v] == *c)))
        .map(|(_, m)| m.clone())
        .collect();
    sinks.sort();
    sinks
}

/// Nodes reachable from `start` (inclusive), sorted.
pub fn reachable_from(adj: &[Vec<usize>], start: usize) -> Vec<usize> {
    let mut seen = vec![false; adj.len()];
    let mut stack = vec![start];
    seen[start] = true;
    while let Some(u) = stack.pop() {
        for &v in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                stack.push(v);
            }
        }
    }
    (0..adj.len()).filter(|&i| seen[i]).collect()
}

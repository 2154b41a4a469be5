use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::graph::Graph;

/// Max-coverage greedy dominating set: repeatedly takes the vertex whose
/// closed neighbourhood contains the most undominated vertices (ties by id).
/// Returned sorted ascending.
pub fn greedy_dominating_set(graph: &Graph) -> Vec<usize> {
    let n = graph.n();
    let mut dominated = vec![false; n];
    let mut remaining = n;
    let gain = |v: usize, dominated: &[bool]| {
        usize::from(!dominated[v])
            + graph
                .neighbors(v)
                .iter()
                .filter(|&&u| !dominated[u])
                .count()
    };
    // gains only shrink, so stale heap keys are upper bounds
    let mut heap: BinaryHeap<(usize, Reverse<usize>)> =
        (0..n).map(|v| (graph.degree(v) + 1, Reverse(v))).collect();
    let mut chosen = Vec::new();
    while remaining > 0 {
        let (stored, Reverse(v)) = heap.pop().expect("undominated vertices remain");
        let fresh = gain(v, &dominated);
        if fresh < stored {
            if fresh > 0 {
                heap.push((fresh, Reverse(v)));
            }
            continue;
        }
        chosen.push(v);
        for u in std::iter::once(v).chain(graph.neighbors(v).iter().copied()) {
            if !dominated[u] {
                dominated[u] = true;
                remaining -= 1;
            }
        }
    }
    chosen.sort_unstable();
    chosen
}

pub fn is_dominating(graph: &Graph, set: &[usize]) -> bool {
    let mut dominated = vec![false; graph.n()];
    for &v in set {
        dominated[v] = true;
        for &u in graph.neighbors(v) {
            dominated[u] = true;
        }
    }
    dominated.into_iter().all(|d| d)
}

/// `⌈n / (Δ + 1)⌉`: no vertex dominates more than `Δ + 1` vertices.
pub fn domination_lower_bound(graph: &Graph) -> usize {
    graph.n().div_ceil(graph.max_degree() + 1)
}

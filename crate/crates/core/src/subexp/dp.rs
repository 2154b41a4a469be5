//! Dynamic program over a nice tree decomposition for the prefix objective
//! `(1 − α)·m(C) + α·m(C, P ∖ C) + α·Σ_{v∈C} ω(v)` with `|C| = k`.
//!
//! States are (membership mask of the bag, number of selected vertices). All
//! values are `q`-scaled integers multiplied by the direction sign, so both
//! directions share one maximising fold. Edges are charged at their
//! introduce-edge node; `ω` terms and the count are charged when a vertex is
//! introduced and the double count is subtracted again at join nodes.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::instance::Direction;
use crate::objective::Weights;
use crate::ordering::DegreeOrdering;
use crate::rational::{Alpha, Rational};

use super::treedec::{NodeKind, TreeDecomposition};

const NONE: i64 = i64::MIN;

/// Largest bag the DP accepts (tables have `2^bag · (k + 1)` entries).
pub const MAX_BAG_SIZE: usize = 24;

/// The graph induced by the first `j` vertices of a degree ordering, with
/// boundary weights `ω(v) = |N(v) ∖ V^j|`.
#[derive(Clone, Debug)]
pub struct PrefixSubproblem {
    pub j: usize,
    /// Original ids in ordering order; local vertex `i` is `vertices[i]`.
    pub vertices: Vec<usize>,
    pub prefix_graph: Graph,
    pub omega: Vec<usize>,
}

impl PrefixSubproblem {
    pub fn new(graph: &Graph, ordering: &DegreeOrdering, j: usize) -> Self {
        let vertices = ordering.prefix(j).to_vec();
        let prefix_graph = graph.induced(&vertices);
        let omega = vertices
            .iter()
            .enumerate()
            .map(|(i, &v)| graph.degree(v) - prefix_graph.degree(i))
            .collect();
        PrefixSubproblem {
            j,
            vertices,
            prefix_graph,
            omega,
        }
    }

    /// The whole graph with `ω ≡ 0`.
    pub fn whole(graph: &Graph) -> Self {
        PrefixSubproblem {
            j: graph.n(),
            vertices: (0..graph.n()).collect(),
            prefix_graph: graph.clone(),
            omega: vec![0; graph.n()],
        }
    }

    /// Arbitrary weights on an arbitrary graph (local ids are original ids).
    pub fn weighted(graph: Graph, omega: Vec<usize>) -> Result<Self> {
        if omega.len() != graph.n() {
            return Err(Error::input("one weight per vertex required"));
        }
        Ok(PrefixSubproblem {
            j: graph.n(),
            vertices: (0..graph.n()).collect(),
            prefix_graph: graph,
            omega,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrefixSolution {
    /// Local (prefix) ids, sorted.
    pub local: Vec<usize>,
    /// Original ids, sorted.
    pub vertices: Vec<usize>,
    pub value: Rational,
    /// Finite DP entries computed.
    pub states: u64,
}

#[inline]
fn insert_bit(mask: usize, pos: usize, bit: usize) -> usize {
    let low = mask & ((1 << pos) - 1);
    ((mask >> pos) << (pos + 1)) | (bit << pos) | low
}

#[inline]
fn remove_bit(mask: usize, pos: usize) -> usize {
    let low = mask & ((1 << pos) - 1);
    ((mask >> (pos + 1)) << pos) | low
}

struct Tables {
    k: usize,
    data: Vec<Vec<i64>>,
}

impl Tables {
    #[inline]
    fn get(&self, node: usize, mask: usize, count: usize) -> i64 {
        self.data[node][mask * (self.k + 1) + count]
    }
}

/// Exact optimum of the weighted prefix objective over k-subsets of the
/// prefix, optionally forcing local vertex `forced` into the solution.
pub fn dp_solve_prefix(
    subproblem: &PrefixSubproblem,
    decomposition: &TreeDecomposition,
    k: usize,
    alpha: Alpha,
    direction: Direction,
    forced: Option<usize>,
) -> Result<PrefixSolution> {
    let graph = &subproblem.prefix_graph;
    decomposition.validate(graph)?;
    if k > graph.n() {
        return Err(Error::input(format!(
            "k = {k} exceeds prefix size {}",
            graph.n()
        )));
    }
    if forced.is_some_and(|f| f >= graph.n()) {
        return Err(Error::input("forced vertex outside the prefix"));
    }
    if decomposition.max_bag_size() > MAX_BAG_SIZE {
        return Err(Error::Resource(format!(
            "bag of size {} exceeds the DP limit {MAX_BAG_SIZE}",
            decomposition.max_bag_size()
        )));
    }
    let weights = Weights::new(alpha);
    weights.check_range(graph)?;
    let sign = match direction {
        Direction::Max => 1,
        Direction::Min => -1,
    };
    let vertex_gain = |v: usize| sign * weights.boundary * subproblem.omega[v] as i64;
    let edge_gain = |a: bool, b: bool| {
        sign * match (a, b) {
            (true, true) => weights.internal,
            (false, false) => 0,
            _ => weights.boundary,
        }
    };

    let nodes = decomposition.nodes();
    let width = k + 1;
    let mut tables = Tables {
        k,
        data: Vec::with_capacity(nodes.len()),
    };
    let mut states = 0u64;
    // children precede parents in node order
    for node in nodes {
        let size = (1usize << node.bag.len()) * width;
        let mut table = vec![NONE; size];
        match node.kind {
            NodeKind::Leaf => table[0] = 0,
            NodeKind::IntroduceVertex(v) => {
                let child = node.children[0];
                let pos = node
                    .bag
                    .binary_search(&v)
                    .expect("introduced vertex in bag");
                for cm in 0..1usize << (node.bag.len() - 1) {
                    for c in 0..=k {
                        let g = tables.get(child, cm, c);
                        if g == NONE {
                            continue;
                        }
                        if forced != Some(v) {
                            let m0 = insert_bit(cm, pos, 0);
                            table[m0 * width + c] = table[m0 * width + c].max(g);
                        }
                        if c < k {
                            let m1 = insert_bit(cm, pos, 1);
                            let slot = &mut table[m1 * width + c + 1];
                            *slot = (*slot).max(g + vertex_gain(v));
                        }
                    }
                }
            }
            NodeKind::IntroduceEdge(u, v) => {
                let child = node.children[0];
                let pu = node.bag.binary_search(&u).expect("edge endpoint in bag");
                let pv = node.bag.binary_search(&v).expect("edge endpoint in bag");
                for m in 0..1usize << node.bag.len() {
                    let add = edge_gain(m >> pu & 1 == 1, m >> pv & 1 == 1);
                    for c in 0..=k {
                        let g = tables.get(child, m, c);
                        if g != NONE {
                            table[m * width + c] = g + add;
                        }
                    }
                }
            }
            NodeKind::Forget(v) => {
                let child = node.children[0];
                let cbag = &nodes[child].bag;
                let pos = cbag
                    .binary_search(&v)
                    .expect("forgotten vertex in child bag");
                for cm in 0..1usize << cbag.len() {
                    let m = remove_bit(cm, pos);
                    for c in 0..=k {
                        let g = tables.get(child, cm, c);
                        if g != NONE {
                            table[m * width + c] = table[m * width + c].max(g);
                        }
                    }
                }
            }
            NodeKind::Join => {
                let (left, right) = (node.children[0], node.children[1]);
                for m in 0..1usize << node.bag.len() {
                    let shared = m.count_ones() as usize;
                    let overlap: i64 = node
                        .bag
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| m >> i & 1 == 1)
                        .map(|(_, &v)| vertex_gain(v))
                        .sum();
                    for c1 in shared..=k {
                        let g1 = tables.get(left, m, c1);
                        if g1 == NONE {
                            continue;
                        }
                        for c2 in shared..=k + shared - c1 {
                            let g2 = tables.get(right, m, c2);
                            if g2 == NONE {
                                continue;
                            }
                            let c = c1 + c2 - shared;
                            let slot = &mut table[m * width + c];
                            *slot = (*slot).max(g1 + g2 - overlap);
                        }
                    }
                }
            }
        }
        states += table.iter().filter(|&&g| g != NONE).count() as u64;
        tables.data.push(table);
    }

    let root = decomposition.root();
    let best = tables.get(root, 0, k);
    if best == NONE {
        return Err(Error::input(
            "no feasible k-subset (forced vertex conflicts with k)",
        ));
    }
    let local = traceback(decomposition, &tables, k, &vertex_gain);
    debug_assert_eq!(local.len(), k);
    let mut vertices: Vec<usize> = local.iter().map(|&i| subproblem.vertices[i]).collect();
    vertices.sort_unstable();
    Ok(PrefixSolution {
        local,
        vertices,
        value: weights.to_rational(sign * best),
        states,
    })
}

fn traceback(
    td: &TreeDecomposition,
    tables: &Tables,
    k: usize,
    vertex_gain: &dyn Fn(usize) -> i64,
) -> Vec<usize> {
    let nodes = td.nodes();
    let mut selected = Vec::new();
    let mut stack = vec![(td.root(), 0usize, k)];
    while let Some((id, mask, count)) = stack.pop() {
        let node = &nodes[id];
        let value = tables.get(id, mask, count);
        match node.kind {
            NodeKind::Leaf => {}
            NodeKind::IntroduceVertex(v) => {
                let pos = node.bag.binary_search(&v).unwrap();
                let bit = mask >> pos & 1;
                if bit == 1 {
                    selected.push(v);
                }
                stack.push((node.children[0], remove_bit(mask, pos), count - bit));
            }
            NodeKind::IntroduceEdge(..) => stack.push((node.children[0], mask, count)),
            NodeKind::Forget(v) => {
                let child = node.children[0];
                let pos = nodes[child].bag.binary_search(&v).unwrap();
                let m0 = insert_bit(mask, pos, 0);
                let m1 = insert_bit(mask, pos, 1);
                let next = if tables.get(child, m0, count) == value {
                    m0
                } else {
                    m1
                };
                stack.push((child, next, count));
            }
            NodeKind::Join => {
                let (left, right) = (node.children[0], node.children[1]);
                let shared = mask.count_ones() as usize;
                let overlap: i64 = node
                    .bag
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &v)| vertex_gain(v))
                    .sum();
                let split = (shared..=count)
                    .find_map(|c1| {
                        let c2 = count + shared - c1;
                        let (g1, g2) = (tables.get(left, mask, c1), tables.get(right, mask, c2));
                        (g1 != NONE && g2 != NONE && g1 + g2 - overlap == value).then_some((c1, c2))
                    })
                    .expect("join value has a witness split");
                stack.push((left, mask, split.0));
                stack.push((right, mask, split.1));
            }
        }
    }
    selected.sort_unstable();
    selected.dedup();
    selected
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{solve_brute_force, ExactOptions};
    use crate::generators::{gen_grid, gen_random_gnm, star};
    use crate::instance::Instance;
    use crate::objective::cut_counts;
    use crate::ordering::OrderDirection;
    use crate::subexp::treedec::{single_bag, tree_decomposition_heuristic};

    /// Weighted objective by direct enumeration of all k-subsets.
    fn weighted_oracle(
        sub: &PrefixSubproblem,
        k: usize,
        alpha: Alpha,
        direction: Direction,
        forced: Option<usize>,
    ) -> Option<Rational> {
        let g = &sub.prefix_graph;
        let a = alpha.to_rational();
        let n = g.n();
        let mut best: Option<Rational> = None;
        for mask in 0u32..1 << n {
            if mask.count_ones() as usize != k || forced.is_some_and(|f| mask >> f & 1 == 0) {
                continue;
            }
            let set: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            let (inside, boundary) = cut_counts(g, &set).unwrap();
            let w: usize = set.iter().map(|&v| sub.omega[v]).sum();
            let value = (Rational::from_integer(1) - a) * Rational::from_integer(inside as i128)
                + a * Rational::from_integer((boundary + w) as i128);
            if best.is_none_or(|b| direction.better(&value, &b)) {
                best = Some(value);
            }
        }
        best
    }

    #[test]
    fn bit_helpers() {
        assert_eq!(insert_bit(0b101, 1, 1), 0b1011);
        assert_eq!(insert_bit(0b101, 0, 0), 0b1010);
        assert_eq!(remove_bit(0b1011, 1), 0b101);
        assert_eq!(remove_bit(0b1, 0), 0);
    }

    #[test]
    fn zero_weights_match_brute_force() {
        for seed in 0..20 {
            let g = gen_random_gnm(9, 4 + seed as usize % 12, seed).unwrap();
            let sub = PrefixSubproblem::whole(&g);
            let td = tree_decomposition_heuristic(&g);
            for (a, dir) in [
                ((1, 2), Direction::Max),
                ((1, 5), Direction::Min),
                ((0, 1), Direction::Max),
            ] {
                let alpha = Alpha::new(a.0, a.1).unwrap();
                let k = 1 + seed as usize % 4;
                let dp = dp_solve_prefix(&sub, &td, k, alpha, dir, None).unwrap();
                let inst = Instance::new(g.clone(), k, alpha, dir).unwrap();
                let bf = solve_brute_force(&inst, None, &ExactOptions::default()).unwrap();
                assert_eq!(dp.value, bf.solution.value);
                assert_eq!(crate::cov_alpha(&g, &dp.vertices, alpha).unwrap(), dp.value);
            }
        }
    }

    #[test]
    fn single_bag_with_weights() {
        for seed in 0..15 {
            let g = gen_random_gnm(8, 10, seed).unwrap();
            let omega: Vec<usize> = (0..8).map(|v| (v * 7 + seed as usize) % 4).collect();
            let sub = PrefixSubproblem::weighted(g.clone(), omega).unwrap();
            let td = single_bag(&g);
            for k in 1..=4 {
                for dir in [Direction::Max, Direction::Min] {
                    let alpha = Alpha::new(2, 7).unwrap();
                    let dp = dp_solve_prefix(&sub, &td, k, alpha, dir, None).unwrap();
                    assert_eq!(Some(dp.value), weighted_oracle(&sub, k, alpha, dir, None));
                    let forced = seed as usize % 8;
                    let dp = dp_solve_prefix(&sub, &td, k, alpha, dir, Some(forced)).unwrap();
                    assert_eq!(
                        Some(dp.value),
                        weighted_oracle(&sub, k, alpha, dir, Some(forced))
                    );
                    assert!(dp.local.contains(&forced));
                }
            }
        }
    }

    #[test]
    fn grid_prefixes_match_oracle() {
        let g = gen_grid(3, 4).unwrap();
        let ordering = DegreeOrdering::new(&g, OrderDirection::NonIncreasing);
        for j in 1..=g.n() {
            let sub = PrefixSubproblem::new(&g, &ordering, j);
            let td = tree_decomposition_heuristic(&sub.prefix_graph);
            for k in 1..=j.min(4) {
                let alpha = Alpha::new(1, 2).unwrap();
                let dp = dp_solve_prefix(&sub, &td, k, alpha, Direction::Max, Some(j - 1)).unwrap();
                assert_eq!(
                    Some(dp.value),
                    weighted_oracle(&sub, k, alpha, Direction::Max, Some(j - 1))
                );
                // the weighted prefix objective is cov_α in the full graph
                assert_eq!(crate::cov_alpha(&g, &dp.vertices, alpha).unwrap(), dp.value);
            }
        }
    }

    #[test]
    fn omega_complements_prefix_degree() {
        let g = star(5);
        let ordering = DegreeOrdering::new(&g, OrderDirection::NonIncreasing);
        let sub = PrefixSubproblem::new(&g, &ordering, 2);
        assert_eq!(sub.vertices, vec![0, 1]);
        assert_eq!(sub.omega, vec![4, 0]);
    }

    #[test]
    fn input_errors() {
        let g = gen_grid(2, 2).unwrap();
        let sub = PrefixSubproblem::whole(&g);
        let td = tree_decomposition_heuristic(&g);
        let a = Alpha::ONE;
        assert!(dp_solve_prefix(&sub, &td, 5, a, Direction::Max, None).is_err());
        assert!(dp_solve_prefix(&sub, &td, 2, a, Direction::Max, Some(9)).is_err());
        let other = tree_decomposition_heuristic(&gen_grid(1, 4).unwrap());
        assert!(dp_solve_prefix(&sub, &other, 2, a, Direction::Max, None).is_err());
        assert!(PrefixSubproblem::weighted(g, vec![0]).is_err());
    }
}

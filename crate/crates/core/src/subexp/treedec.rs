//! Nice tree decompositions built from elimination orderings.
//!
//! Node kinds follow the usual nice form with explicit edge introduction:
//! every edge is introduced exactly once, directly below the node that
//! forgets the first of its endpoints. The root bag is always empty.

use std::collections::BTreeSet;
use std::fmt::{self, Write as _};

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NodeKind {
    Leaf,
    IntroduceVertex(usize),
    /// Endpoints stored with `u < v`.
    IntroduceEdge(usize, usize),
    Forget(usize),
    Join,
}

impl fmt::Display for NodeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NodeKind::Leaf => f.write_str("leaf"),
            NodeKind::IntroduceVertex(v) => write!(f, "introduce-vertex:{v}"),
            NodeKind::IntroduceEdge(u, v) => write!(f, "introduce-edge:{u}-{v}"),
            NodeKind::Forget(v) => write!(f, "forget:{v}"),
            NodeKind::Join => f.write_str("join"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Node {
    pub kind: NodeKind,
    /// Sorted ascending.
    pub bag: Vec<usize>,
    pub children: Vec<usize>,
    pub parent: Option<usize>,
}

/// Rooted nice tree decomposition. Node ids are indices into
/// [`TreeDecomposition::nodes`]; children always precede their parent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeDecomposition {
    nodes: Vec<Node>,
    root: usize,
}

impl TreeDecomposition {
    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Largest bag size minus one (0 for graphs without edges).
    pub fn width(&self) -> usize {
        self.max_bag_size().saturating_sub(1)
    }

    pub fn max_bag_size(&self) -> usize {
        self.nodes.iter().map(|n| n.bag.len()).max().unwrap_or(0)
    }

    /// One line per node: `id kind parent bag-members...`, parent `-` for the root.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (id, node) in self.nodes.iter().enumerate() {
            let _ = write!(out, "{id} {}", node.kind);
            match node.parent {
                Some(p) => {
                    let _ = write!(out, " {p}");
                }
                None => out.push_str(" -"),
            }
            for v in &node.bag {
                let _ = write!(out, " {v}");
            }
            out.push('\n');
        }
        out
    }

    /// Checks tree structure, vertex and edge coverage, connectivity of
    /// every vertex's occurrences, and the nice-form contract of each node.
    pub fn validate(&self, graph: &Graph) -> Result<()> {
        let fail = |msg: String| Err(Error::input(format!("invalid tree decomposition: {msg}")));
        let n = graph.n();
        if self.root >= self.nodes.len() {
            return fail("root out of range".into());
        }
        if self.nodes[self.root].parent.is_some() {
            return fail("root has a parent".into());
        }
        if !self.nodes[self.root].bag.is_empty() {
            return fail("root bag is not empty".into());
        }
        let mut reached = 0;
        let mut stack = vec![self.root];
        let mut seen = vec![false; self.nodes.len()];
        while let Some(id) = stack.pop() {
            if std::mem::replace(&mut seen[id], true) {
                return fail(format!("node {id} reached twice"));
            }
            reached += 1;
            for &c in &self.nodes[id].children {
                if c >= self.nodes.len() || self.nodes[c].parent != Some(id) {
                    return fail(format!("child {c} of node {id} has a wrong parent link"));
                }
                stack.push(c);
            }
        }
        if reached != self.nodes.len() {
            return fail("nodes unreachable from the root".into());
        }

        let mut introduced = BTreeSet::new();
        for (id, node) in self.nodes.iter().enumerate() {
            if node.bag.windows(2).any(|w| w[0] >= w[1]) || node.bag.iter().any(|&v| v >= n) {
                return fail(format!("bag of node {id} is not a sorted vertex set"));
            }
            let child_bag = |i: usize| &self.nodes[node.children[i]].bag;
            let ok = match (node.kind, node.children.len()) {
                (NodeKind::Leaf, 0) => node.bag.is_empty(),
                (NodeKind::IntroduceVertex(v), 1) => {
                    !child_bag(0).contains(&v) && with(child_bag(0), v) == node.bag
                }
                (NodeKind::Forget(v), 1) => {
                    child_bag(0).contains(&v) && without(child_bag(0), v) == node.bag
                }
                (NodeKind::IntroduceEdge(u, v), 1) => {
                    if !graph.has_edge(u, v) || u >= v || !introduced.insert((u, v)) {
                        return fail(format!("node {id} introduces ({u}, {v}) improperly"));
                    }
                    *child_bag(0) == node.bag && node.bag.contains(&u) && node.bag.contains(&v)
                }
                (NodeKind::Join, 2) => *child_bag(0) == node.bag && *child_bag(1) == node.bag,
                _ => false,
            };
            if !ok {
                return fail(format!(
                    "node {id} ({}) violates its nice-form contract",
                    node.kind
                ));
            }
        }
        if introduced.len() != graph.m() {
            return fail(format!(
                "{} of {} edges introduced",
                introduced.len(),
                graph.m()
            ));
        }

        // each vertex: occurrences exist and have exactly one topmost node
        let mut tops = vec![0usize; n];
        for node in &self.nodes {
            for &v in &node.bag {
                let parent_has = node
                    .parent
                    .is_some_and(|p| self.nodes[p].bag.binary_search(&v).is_ok());
                if !parent_has {
                    tops[v] += 1;
                }
            }
        }
        if let Some(v) = (0..n).find(|&v| tops[v] != 1) {
            return fail(format!(
                "vertex {v} occurs in {} disconnected parts of the tree",
                tops[v]
            ));
        }
        // edges co-occur wherever they are introduced; introduction of every edge was checked
        Ok(())
    }
}

fn with(bag: &[usize], v: usize) -> Vec<usize> {
    let mut out = bag.to_vec();
    let pos = out.partition_point(|&x| x < v);
    out.insert(pos, v);
    out
}

fn without(bag: &[usize], v: usize) -> Vec<usize> {
    bag.iter().copied().filter(|&x| x != v).collect()
}

/// Greedy elimination ordering minimising fill-in; ties by degree, then id.
pub fn min_fill_order(graph: &Graph) -> Vec<usize> {
    eliminate(graph, |adj, v| {
        let nb: Vec<usize> = adj[v].iter().copied().collect();
        let mut fill = 0usize;
        for (i, &a) in nb.iter().enumerate() {
            fill += nb[i + 1..]
                .iter()
                .filter(|&&b| !adj[a].contains(&b))
                .count();
        }
        (fill, adj[v].len())
    })
}

/// Greedy elimination ordering by minimum current degree; ties by id.
pub fn min_degree_order(graph: &Graph) -> Vec<usize> {
    eliminate(graph, |adj, v| (adj[v].len(), 0))
}

fn eliminate(
    graph: &Graph,
    score: impl Fn(&[BTreeSet<usize>], usize) -> (usize, usize),
) -> Vec<usize> {
    let n = graph.n();
    let mut adj: Vec<BTreeSet<usize>> = (0..n)
        .map(|v| graph.neighbors(v).iter().copied().collect())
        .collect();
    let mut alive: BTreeSet<usize> = (0..n).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(v) = alive.iter().copied().min_by_key(|&v| (score(&adj, v), v)) {
        let nb: Vec<usize> = adj[v].iter().copied().collect();
        for (i, &a) in nb.iter().enumerate() {
            adj[a].remove(&v);
            for &b in &nb[i + 1..] {
                adj[a].insert(b);
                adj[b].insert(a);
            }
        }
        adj[v].clear();
        alive.remove(&v);
        order.push(v);
    }
    order
}

/// Width of the decomposition induced by `order` without building it.
pub fn elimination_width(graph: &Graph, order: &[usize]) -> usize {
    elimination_bags(graph, order)
        .0
        .iter()
        .map(|b| b.len())
        .max()
        .unwrap_or(0)
        .saturating_sub(1)
}

/// Bags `{v} ∪ N⁺(v)` of the filled graph, indexed by vertex, and the parent
/// of each bag (the earliest-eliminated higher neighbour).
fn elimination_bags(graph: &Graph, order: &[usize]) -> (Vec<Vec<usize>>, Vec<Option<usize>>) {
    let n = graph.n();
    let mut rank = vec![0usize; n];
    for (i, &v) in order.iter().enumerate() {
        rank[v] = i;
    }
    let mut higher: Vec<BTreeSet<usize>> = (0..n)
        .map(|v| {
            graph
                .neighbors(v)
                .iter()
                .copied()
                .filter(|&u| rank[u] > rank[v])
                .collect()
        })
        .collect();
    let mut parent = vec![None; n];
    for &v in order {
        let up = std::mem::take(&mut higher[v]);
        if let Some(&p) = up.iter().min_by_key(|&&u| rank[u]) {
            parent[v] = Some(p);
            for &u in &up {
                if u != p {
                    higher[p].insert(u);
                }
            }
        }
        higher[v] = up;
    }
    let bags = (0..n)
        .map(|v| {
            let mut bag: Vec<usize> = higher[v].iter().copied().collect();
            bag.push(v);
            bag.sort_unstable();
            bag
        })
        .collect();
    (bags, parent)
}

struct Builder<'g> {
    graph: &'g Graph,
    nodes: Vec<Node>,
}

impl Builder<'_> {
    fn push(&mut self, kind: NodeKind, bag: Vec<usize>, children: Vec<usize>) -> usize {
        let id = self.nodes.len();
        for &c in &children {
            self.nodes[c].parent = Some(id);
        }
        self.nodes.push(Node {
            kind,
            bag,
            children,
            parent: None,
        });
        id
    }

    fn forget(&mut self, mut top: usize, v: usize) -> usize {
        let bag = self.nodes[top].bag.clone();
        for &u in &bag {
            if u != v && self.graph.has_edge(u, v) {
                top = self.push(
                    NodeKind::IntroduceEdge(u.min(v), u.max(v)),
                    bag.clone(),
                    vec![top],
                );
            }
        }
        self.push(NodeKind::Forget(v), without(&bag, v), vec![top])
    }

    fn introduce(&mut self, top: usize, v: usize) -> usize {
        let bag = with(&self.nodes[top].bag, v);
        self.push(NodeKind::IntroduceVertex(v), bag, vec![top])
    }

    /// Morphs the bag at `top` into `target` (forgets first, then introduces).
    fn morph(&mut self, mut top: usize, target: &[usize]) -> usize {
        let current = self.nodes[top].bag.clone();
        for &v in current.iter().filter(|v| target.binary_search(v).is_err()) {
            top = self.forget(top, v);
        }
        for &v in target.iter().filter(|v| current.binary_search(v).is_err()) {
            top = self.introduce(top, v);
        }
        top
    }

    fn join_all(&mut self, tops: Vec<usize>) -> usize {
        let mut tops = tops.into_iter();
        let first = tops.next().expect("join of at least one subtree");
        tops.fold(first, |acc, t| {
            let bag = self.nodes[acc].bag.clone();
            self.push(NodeKind::Join, bag, vec![acc, t])
        })
    }
}

/// Nice decomposition from an elimination ordering (a permutation of `0..n`).
pub fn from_elimination_order(graph: &Graph, order: &[usize]) -> TreeDecomposition {
    assert_eq!(
        order.len(),
        graph.n(),
        "elimination order must cover every vertex"
    );
    let (bags, parent) = elimination_bags(graph, order);
    let mut children: Vec<Vec<usize>> = vec![Vec::new(); graph.n()];
    let mut roots = Vec::new();
    for &v in order {
        match parent[v] {
            Some(p) => children[p].push(v),
            None => roots.push(v),
        }
    }
    let mut b = Builder {
        graph,
        nodes: Vec::new(),
    };
    let mut top = vec![usize::MAX; graph.n()];
    // children are eliminated before their parent
    for &v in order {
        let branches: Vec<usize> = if children[v].is_empty() {
            let leaf = b.push(NodeKind::Leaf, Vec::new(), Vec::new());
            vec![b.morph(leaf, &bags[v])]
        } else {
            children[v]
                .iter()
                .map(|&c| b.morph(top[c], &bags[v]))
                .collect()
        };
        top[v] = b.join_all(branches);
    }
    let finished: Vec<usize> = if roots.is_empty() {
        vec![b.push(NodeKind::Leaf, Vec::new(), Vec::new())]
    } else {
        roots.iter().map(|&r| b.morph(top[r], &[])).collect()
    };
    let root = b.join_all(finished);
    TreeDecomposition {
        nodes: b.nodes,
        root,
    }
}

/// Single bag holding every vertex, made nice.
pub fn single_bag(graph: &Graph) -> TreeDecomposition {
    let mut b = Builder {
        graph,
        nodes: Vec::new(),
    };
    let leaf = b.push(NodeKind::Leaf, Vec::new(), Vec::new());
    let all: Vec<usize> = (0..graph.n()).collect();
    let full = b.morph(leaf, &all);
    let root = b.morph(full, &[]);
    TreeDecomposition {
        nodes: b.nodes,
        root,
    }
}

/// Min-fill elimination, falling back to min-degree when that is narrower.
pub fn tree_decomposition_heuristic(graph: &Graph) -> TreeDecomposition {
    let fill = min_fill_order(graph);
    let degree = min_degree_order(graph);
    let order = if elimination_width(graph, &degree) < elimination_width(graph, &fill) {
        degree
    } else {
        fill
    };
    let td = from_elimination_order(graph, &order);
    debug_assert!(td.validate(graph).is_ok());
    td
}

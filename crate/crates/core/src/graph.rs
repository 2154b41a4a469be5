//! Simple undirected graphs on dense vertex ids `0..n` and the edge-list format.

use std::collections::HashSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};

/// Simple undirected graph. Vertices are `0..n`; edges are stored with
/// `u < v` in ascending order and adjacency lists are sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph, rejecting self-loops, duplicate edges (in either
    /// orientation) and out-of-range endpoints.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut seen = HashSet::new();
        let mut normalized = Vec::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::input(format!(
                    "edge ({u}, {v}) has an endpoint outside 0..{n}"
                )));
            }
            if u == v {
                return Err(Error::input(format!("self-loop on vertex {u}")));
            }
            let e = (u.min(v), u.max(v));
            if !seen.insert(e) {
                return Err(Error::input(format!("duplicate edge ({}, {})", e.0, e.1)));
            }
            normalized.push(e);
        }
        normalized.sort_unstable();
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in &normalized {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(Graph {
            n,
            edges: normalized,
            adjacency,
        })
    }

    pub fn edgeless(n: usize) -> Self {
        Graph {
            n,
            edges: Vec::new(),
            adjacency: vec![Vec::new(); n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adjacency.iter().map(Vec::len).collect()
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Subgraph induced by `vertices`; vertex `vertices[i]` becomes `i`.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut local = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            local[v] = i;
        }
        let edges = vertices.iter().enumerate().flat_map(|(i, &v)| {
            let local = &local;
            self.adjacency[v]
                .iter()
                .filter(move |&&u| local[u] != usize::MAX && i < local[u])
                .map(move |&u| (i, local[u]))
        });
        Graph::new(vertices.len(), edges.collect::<Vec<_>>())
            .expect("induced subgraph of a simple graph is simple")
    }

    /// Relabels so that new vertex `i` is old vertex `order[i]`; `order`
    /// must be a permutation of `0..n`.
    pub fn relabel(&self, order: &[usize]) -> Graph {
        debug_assert_eq!(order.len(), self.n);
        self.induced(order)
    }

    /// Checks the structural invariants: no self-loops, no duplicates,
    /// degree/adjacency agreement and the handshake identity.
    pub fn check_invariants(&self) -> Result<()> {
        let mut seen = HashSet::new();
        for &(u, v) in &self.edges {
            if u >= v || v >= self.n || !seen.insert((u, v)) {
                return Err(Error::input(format!("malformed edge ({u}, {v})")));
            }
        }
        let degree_sum: usize = self.adjacency.iter().map(Vec::len).sum();
        if degree_sum != 2 * self.edges.len() {
            return Err(Error::input("degree sum is not twice the edge count"));
        }
        for (v, list) in self.adjacency.iter().enumerate() {
            if list.iter().any(|&u| !seen.contains(&(u.min(v), u.max(v)))) {
                return Err(Error::input(format!(
                    "adjacency of {v} disagrees with edges"
                )));
            }
        }
        Ok(())
    }

    /// Parses the edge-list format: a header line `n m` followed by exactly
    /// `m` lines `u v` with `0 ≤ u < v < n`. Blank lines are ignored.
    pub fn parse_edge_list(text: &str) -> Result<Graph> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());

        let (header_line, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            message: "missing header `n m`".into(),
        })?;
        let (n, m) = parse_pair(header_line, header)?;

        let mut edges = Vec::with_capacity(m);
        let mut seen = HashSet::with_capacity(m);
        for (line, text) in lines {
            if edges.len() == m {
                return Err(Error::Parse {
                    line,
                    message: format!("more than the {m} edges declared in the header"),
                });
            }
            let (u, v) = parse_pair(line, text)?;
            let fail = |message: String| Err(Error::Parse { line, message });
            if u == v {
                return fail(format!("self-loop on vertex {u}"));
            }
            if u > v {
                return fail(format!("edge `{u} {v}` must be written with u < v"));
            }
            if v >= n {
                return fail(format!("vertex {v} out of range 0..{n}"));
            }
            if !seen.insert((u, v)) {
                return fail(format!("duplicate edge `{u} {v}`"));
            }
            edges.push((u, v));
        }
        if edges.len() != m {
            return Err(Error::Parse {
                line: text.lines().count().max(1),
                message: format!("header declares {m} edges but {} were found", edges.len()),
            });
        }
        Graph::new(n, edges)
    }

    /// Serializes into the edge-list format (edges in ascending order).
    pub fn to_edge_list(&self) -> String {
        let mut out = String::with_capacity(16 * (self.edges.len() + 1));
        let _ = writeln!(out, "{} {}", self.n, self.edges.len());
        for (u, v) in &self.edges {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }
}

fn parse_pair(line: usize, text: &str) -> Result<(usize, usize)> {
    let mut fields = text.split_whitespace();
    let mut next = |what: &str| -> Result<usize> {
        let field = fields.next().ok_or_else(|| Error::Parse {
            line,
            message: format!("missing {what}"),
        })?;
        field.parse::<usize>().map_err(|_| Error::Parse {
            line,
            message: format!("`{field}` is not a non-negative integer"),
        })
    };
    let a = next("first field")?;
    let b = next("second field")?;
    if fields.next().is_some() {
        return Err(Error::Parse {
            line,
            message: "expected exactly two fields".into(),
        });
    }
    Ok((a, b))
}

//! Exact optimum: exhaustive enumeration and degree-bounded branch-and-bound.
//!
//! Both solvers walk the same lexicographic search tree over a sorted
//! candidate list, so the first optimum found is the lexicographically
//! smallest one. Work is split across rayon workers by fixing the smallest
//! selected vertex; workers share the best score seen so far and ties are
//! resolved at join, which keeps results independent of the worker count.

use std::sync::atomic::{AtomicI64, Ordering};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::instance::{Algorithm, Direction, Instance, Provenance, Solution};
use crate::objective::Weights;

/// Default cap on the number of k-subsets brute force may enumerate.
pub const DEFAULT_BUDGET: u128 = 100_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    BruteForce,
    BranchAndBound,
    /// Degree-prefix dynamic program over tree decompositions.
    TreeDecompositionDp,
}

#[derive(Clone, Debug)]
pub struct ExactResult {
    pub solution: Solution,
    /// Search-tree nodes (partial selections) visited, or DP states for
    /// [`Method::TreeDecompositionDp`].
    pub nodes_explored: u64,
    pub method: Method,
}

#[derive(Clone, Copy, Debug)]
pub struct ExactOptions {
    /// Maximum `C(|candidates|, k)` accepted by brute force.
    pub budget: u128,
    /// Split the search across the current rayon pool.
    pub parallel: bool,
}

impl Default for ExactOptions {
    fn default() -> Self {
        ExactOptions {
            budget: DEFAULT_BUDGET,
            parallel: true,
        }
    }
}

impl ExactOptions {
    pub fn sequential() -> Self {
        ExactOptions {
            parallel: false,
            ..Self::default()
        }
    }
}

/// `C(n, k)`, saturating at `u128::MAX`.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at every step
        acc = match acc.checked_mul((n - i) as u128) {
            Some(x) => x / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// Best k-subset of `candidates` (default: all vertices) by exhaustive
/// enumeration. Among optima the lexicographically smallest set is returned.
pub fn solve_brute_force(
    instance: &Instance,
    candidates: Option<&[usize]>,
    opts: &ExactOptions,
) -> Result<ExactResult> {
    let cands = normalize_candidates(instance, candidates)?;
    let count = binomial(cands.len(), instance.k);
    if count > opts.budget {
        return Err(Error::Resource(format!(
            "brute force would enumerate {count} subsets (budget {}); use branch-and-bound",
            opts.budget
        )));
    }
    run(instance, cands, false, opts)
}

/// Same optimum and tie-break as [`solve_brute_force`] over all vertices,
/// pruning with an admissible degree bound.
pub fn solve_branch_and_bound(instance: &Instance, opts: &ExactOptions) -> Result<ExactResult> {
    let cands = normalize_candidates(instance, None)?;
    run(instance, cands, true, opts)
}

/// Branch-and-bound restricted to `candidates`.
pub fn solve_branch_and_bound_within(
    instance: &Instance,
    candidates: &[usize],
    opts: &ExactOptions,
) -> Result<ExactResult> {
    let cands = normalize_candidates(instance, Some(candidates))?;
    run(instance, cands, true, opts)
}

fn normalize_candidates(instance: &Instance, candidates: Option<&[usize]>) -> Result<Vec<usize>> {
    let n = instance.graph.n();
    let mut cands = match candidates {
        Some(c) => c.to_vec(),
        None => (0..n).collect(),
    };
    cands.sort_unstable();
    cands.dedup();
    if let Some(&v) = cands.iter().find(|&&v| v >= n) {
        return Err(Error::input(format!("candidate {v} out of range 0..{n}")));
    }
    if cands.len() < instance.k {
        return Err(Error::input(format!(
            "only {} candidates for k = {}",
            cands.len(),
            instance.k
        )));
    }
    Ok(cands)
}

/// Admissible per-vertex caps on the gain of adding a vertex.
///
/// Adding `v` with `t` neighbours already selected changes `q·cov_α` by
/// `p·d(v) + (q − 3p)·t` for `0 ≤ t ≤ d(v)`. For Max this is at most
/// `max(p, q − p)·d(v)`; for Min it is at least `min(p, q − 2p)·d(v)`.
fn gain_caps(graph: &Graph, cands: &[usize], weights: Weights, direction: Direction) -> Vec<i64> {
    let p = weights.boundary;
    let q = weights.scale;
    let coeff = match direction {
        Direction::Max => p.max(q - p),
        Direction::Min => -(p.min(q - 2 * p)),
    };
    cands
        .iter()
        .map(|&v| coeff * graph.degree(v) as i64)
        .collect()
}

/// `table[i * (k + 1) + r]` = largest total cap of `r` candidates in `cands[i..]`.
fn suffix_bounds(caps: &[i64], k: usize) -> Vec<i64> {
    let len = caps.len();
    let mut table = vec![i64::MAX / 4; (len + 1) * (k + 1)];
    let mut top: Vec<i64> = Vec::with_capacity(k + 1);
    table[len * (k + 1)] = 0;
    for i in (0..len).rev() {
        let pos = top.partition_point(|&x| x >= caps[i]);
        top.insert(pos, caps[i]);
        top.truncate(k);
        let row = &mut table[i * (k + 1)..(i + 1) * (k + 1)];
        let mut acc = 0;
        row[0] = 0;
        for (r, &c) in top.iter().enumerate() {
            acc += c;
            row[r + 1] = acc;
        }
    }
    table
}

struct Search<'a> {
    graph: &'a Graph,
    cands: Vec<usize>,
    k: usize,
    weights: Weights,
    sign: i64,
    bounds: Option<Vec<i64>>,
    shared: AtomicI64,
}

struct Worker<'s, 'a> {
    search: &'s Search<'a>,
    member: Vec<bool>,
    chosen: Vec<usize>,
    inside: i64,
    boundary: i64,
    nodes: u64,
    best: Option<(i64, Vec<usize>)>,
}

impl<'s, 'a> Worker<'s, 'a> {
    fn new(search: &'s Search<'a>) -> Self {
        Worker {
            search,
            member: vec![false; search.graph.n()],
            chosen: Vec::with_capacity(search.k),
            inside: 0,
            boundary: 0,
            nodes: 0,
            best: None,
        }
    }

    #[inline]
    fn gain(&self) -> i64 {
        self.search.sign * self.search.weights.score(self.inside, self.boundary)
    }

    fn add(&mut self, v: usize) -> i64 {
        let t = self
            .search
            .graph
            .neighbors(v)
            .iter()
            .filter(|&&u| self.member[u])
            .count() as i64;
        self.inside += t;
        self.boundary += self.search.graph.degree(v) as i64 - 2 * t;
        self.member[v] = true;
        self.chosen.push(v);
        t
    }

    fn remove(&mut self, v: usize, t: i64) {
        self.chosen.pop();
        self.member[v] = false;
        self.boundary -= self.search.graph.degree(v) as i64 - 2 * t;
        self.inside -= t;
    }

    fn pruned(&self, next: usize, need: usize) -> bool {
        let Some(table) = &self.search.bounds else {
            return false;
        };
        let optimistic = self.gain() + table[next * (self.search.k + 1) + need];
        if optimistic < self.search.shared.load(Ordering::Relaxed) {
            return true;
        }
        // an equal completion found later in this worker is lexicographically larger
        matches!(&self.best, Some((b, _)) if optimistic <= *b)
    }

    fn visit(&mut self, idx: usize) {
        let v = self.search.cands[idx];
        self.nodes += 1;
        let t = self.add(v);
        let need = self.search.k - self.chosen.len();
        if need == 0 {
            let g = self.gain();
            if self.best.as_ref().is_none_or(|(b, _)| g > *b) {
                self.best = Some((g, self.chosen.clone()));
                self.search.shared.fetch_max(g, Ordering::Relaxed);
            }
        } else if !self.pruned(idx + 1, need) {
            for next in idx + 1..=self.search.cands.len() - need {
                self.visit(next);
            }
        }
        self.remove(v, t);
    }

    fn run_from(&mut self, first: usize) -> (Option<(i64, Vec<usize>)>, u64) {
        self.best = None;
        self.nodes = 0;
        self.visit(first);
        (self.best.take(), self.nodes)
    }
}

fn better(a: &(i64, Vec<usize>), b: &(i64, Vec<usize>)) -> bool {
    a.0 > b.0 || (a.0 == b.0 && a.1 < b.1)
}

fn merge(
    a: (Option<(i64, Vec<usize>)>, u64),
    b: (Option<(i64, Vec<usize>)>, u64),
) -> (Option<(i64, Vec<usize>)>, u64) {
    let best = match (a.0, b.0) {
        (Some(x), Some(y)) => Some(if better(&y, &x) { y } else { x }),
        (x, None) => x,
        (None, y) => y,
    };
    (best, a.1 + b.1)
}

fn run(
    instance: &Instance,
    cands: Vec<usize>,
    prune: bool,
    opts: &ExactOptions,
) -> Result<ExactResult> {
    let graph = &instance.graph;
    let weights = Weights::new(instance.alpha);
    weights.check_range(graph)?;
    let k = instance.k;
    let bounds =
        prune.then(|| suffix_bounds(&gain_caps(graph, &cands, weights, instance.direction), k));
    let search = Search {
        graph,
        k,
        weights,
        sign: match instance.direction {
            Direction::Max => 1,
            Direction::Min => -1,
        },
        bounds,
        shared: AtomicI64::new(i64::MIN),
        cands,
    };
    let firsts = 0..=search.cands.len() - k;
    let (best, nodes) = if opts.parallel {
        firsts
            .into_par_iter()
            .map_init(|| Worker::new(&search), |w, first| w.run_from(first))
            .reduce(|| (None, 0), merge)
    } else {
        let mut w = Worker::new(&search);
        firsts.fold((None, 0), |acc, first| merge(acc, w.run_from(first)))
    };
    let (gain, vertices) = best.expect("at least one k-subset exists");
    let method = if prune {
        Method::BranchAndBound
    } else {
        Method::BruteForce
    };
    let algorithm = match method {
        Method::BruteForce => Algorithm::BruteForce,
        _ => Algorithm::BranchAndBound,
    };
    let solution = instance.solution(vertices, Provenance::new(algorithm))?;
    debug_assert_eq!(solution.value, weights.to_rational(search.sign * gain));
    Ok(ExactResult {
        solution,
        nodes_explored: nodes,
        method,
    })
}

#![allow(dead_code)]

use fcgp_core::generators::gen_random_gnm;
use fcgp_core::{cov_alpha, Alpha, Direction, Graph, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// All k-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            cur.push(v);
            rec(v + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Optimum and lexicographically smallest optimal set, by evaluating
/// `cov_alpha` on every k-subset.
pub fn oracle(graph: &Graph, k: usize, alpha: Alpha, dir: Direction) -> (Rational, Vec<usize>) {
    let mut best: Option<(Rational, Vec<usize>)> = None;
    for set in combinations(graph.n(), k) {
        let v = cov_alpha(graph, &set, alpha).unwrap();
        if best.as_ref().is_none_or(|(b, _)| dir.better(&v, b)) {
            best = Some((v, set));
        }
    }
    best.unwrap()
}

pub fn random_graph(rng: &mut ChaCha8Rng, max_n: usize) -> Graph {
    let n = rng.gen_range(2..=max_n);
    let m = rng.gen_range(0..=n * (n - 1) / 2);
    gen_random_gnm(n, m, rng.gen()).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn alpha(p: u64, q: u64) -> Alpha {
    Alpha::new(p, q).unwrap()
}

//! Instance factories: the hub/pendant/clique gap construction, uniform
//! `G(n, m)`, grids, random regular graphs and a few fixed families.

use num_traits::{One, Zero};
use rand::seq::{index, SliceRandom};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::instance::{Direction, Instance};
use crate::rational::{Alpha, Rational};

/// Retry limit for the pairing model in [`gen_regular`].
pub const REGULAR_MAX_ATTEMPTS: usize = 10_000;

/// Parameters of the gap construction: `hubs` hub vertices each carrying `k`
/// pendant leaves, plus a `k`-clique; `α = 1/3 − μ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapInstanceSpec {
    pub k: usize,
    pub hubs: usize,
    pub mu: Rational,
}

impl GapInstanceSpec {
    pub fn alpha(&self) -> Result<Alpha> {
        Alpha::from_rational(&(Rational::new(1, 3) - self.mu))
    }

    pub fn vertex_count(&self) -> usize {
        self.hubs * (self.k + 1) + self.k
    }

    /// Hub ids `0..N`.
    pub fn hub_vertices(&self) -> std::ops::Range<usize> {
        0..self.hubs
    }

    /// Pendant ids; hub `h` owns `N + h·k .. N + (h+1)·k`.
    pub fn pendant_vertices(&self) -> std::ops::Range<usize> {
        self.hubs..self.hubs * (self.k + 1)
    }

    /// The clique `O` occupies the last `k` ids.
    pub fn clique_vertices(&self) -> std::ops::Range<usize> {
        self.hubs * (self.k + 1)..self.vertex_count()
    }

    fn validate(&self) -> Result<()> {
        if self.k < 2 {
            return Err(Error::input("gap instance needs k >= 2"));
        }
        if self.hubs == 0 {
            return Err(Error::input("gap instance needs at least one hub"));
        }
        if self.mu <= Rational::zero() || self.mu > Rational::new(1, 3) {
            return Err(Error::input("gap instance needs 0 < mu <= 1/3"));
        }
        Ok(())
    }
}

/// Closed-form quantities of a gap instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapReport {
    pub alpha: Rational,
    /// `cov_α` of any k hubs: `α·k²`.
    pub hub_value: Rational,
    /// `cov_α(O) = (1 − α)·C(k, 2)`.
    pub clique_value: Rational,
    /// `hub_value / clique_value`.
    pub ratio: Rational,
    /// `(1/3 − μ) / (1/3 + μ)`.
    pub claimed_bound: Rational,
    /// `1 − 3μ`.
    pub tightness_bound: Rational,
}

impl GapReport {
    pub fn new(spec: &GapInstanceSpec) -> Result<Self> {
        spec.validate()?;
        let alpha = spec.alpha()?.to_rational();
        let k = Rational::from_integer(spec.k as i128);
        let hub_value = alpha * k * k;
        let pairs = Rational::from_integer((spec.k * (spec.k - 1) / 2) as i128);
        let clique_value = (Rational::one() - alpha) * pairs;
        let third = Rational::new(1, 3);
        Ok(GapReport {
            alpha,
            ratio: hub_value / clique_value,
            hub_value,
            clique_value,
            claimed_bound: (third - spec.mu) / (third + spec.mu),
            tightness_bound: Rational::one() - Rational::from_integer(3) * spec.mu,
        })
    }
}

pub fn gen_gap_instance(spec: &GapInstanceSpec) -> Result<Instance> {
    spec.validate()?;
    let k = spec.k;
    let mut edges = Vec::with_capacity(spec.hubs * k + k * (k - 1) / 2);
    for h in spec.hub_vertices() {
        let first = spec.hubs + h * k;
        edges.extend((first..first + k).map(|leaf| (h, leaf)));
    }
    let clique: Vec<usize> = spec.clique_vertices().collect();
    for (i, &u) in clique.iter().enumerate() {
        edges.extend(clique[i + 1..].iter().map(|&v| (u, v)));
    }
    let graph = Graph::new(spec.vertex_count(), edges)?;
    Instance::new(graph, k, spec.alpha()?, Direction::Max)
}

/// Uniform simple graph with exactly `m` edges; deterministic per seed.
pub fn gen_random_gnm(n: usize, m: usize, seed: u64) -> Result<Graph> {
    let total = n * n.saturating_sub(1) / 2;
    if m > total {
        return Err(Error::input(format!("m = {m} exceeds C({n}, 2) = {total}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut picks = index::sample(&mut rng, total, m).into_vec();
    picks.sort_unstable();
    let mut edges = Vec::with_capacity(m);
    let (mut u, mut row_start) = (0usize, 0usize);
    for idx in picks {
        while idx >= row_start + (n - 1 - u) {
            row_start += n - 1 - u;
            u += 1;
        }
        edges.push((u, u + 1 + idx - row_start));
    }
    Graph::new(n, edges)
}

/// `rows × cols` grid with row-major ids.
pub fn gen_grid(rows: usize, cols: usize) -> Result<Graph> {
    if rows == 0 || cols == 0 {
        return Err(Error::input("grid dimensions must be positive"));
    }
    let id = |r: usize, c: usize| r * cols + c;
    let mut edges = Vec::with_capacity(rows * (cols - 1) + cols * (rows - 1));
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                edges.push((id(r, c), id(r, c + 1)));
            }
            if r + 1 < rows {
                edges.push((id(r, c), id(r + 1, c)));
            }
        }
    }
    Graph::new(rows * cols, edges)
}

/// Simple `d`-regular graph on `n` vertices from the pairing model, retrying
/// until the pairing has no loops or parallel edges.
pub fn gen_regular(n: usize, d: usize, seed: u64) -> Result<Graph> {
    if d >= n.max(1) && !(n == 0 && d == 0) {
        return Err(Error::input(format!(
            "regular graph needs d < n, got d = {d}, n = {n}"
        )));
    }
    if (n * d) % 2 == 1 {
        return Err(Error::input(format!("n·d = {} is odd", n * d)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut stubs: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
    'attempt: for _ in 0..REGULAR_MAX_ATTEMPTS {
        stubs.shuffle(&mut rng);
        let mut edges: Vec<(usize, usize)> = stubs
            .chunks_exact(2)
            .map(|p| (p[0].min(p[1]), p[0].max(p[1])))
            .collect();
        if edges.iter().any(|&(u, v)| u == v) {
            continue;
        }
        edges.sort_unstable();
        if edges.windows(2).any(|w| w[0] == w[1]) {
            continue 'attempt;
        }
        return Graph::new(n, edges);
    }
    Err(Error::Resource(format!(
        "no simple {d}-regular pairing on {n} vertices after {REGULAR_MAX_ATTEMPTS} attempts"
    )))
}

pub fn complete(n: usize) -> Graph {
    let edges: Vec<_> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    Graph::new(n, edges).expect("complete graph is simple")
}

/// `K_{1,leaves}` with centre `0`.
pub fn star(leaves: usize) -> Graph {
    Graph::new(leaves + 1, (1..=leaves).map(|v| (0, v)).collect::<Vec<_>>())
        .expect("star is simple")
}

pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "cycle needs at least three vertices");
    Graph::new(n, (0..n).map(|v| (v, (v + 1) % n)).collect::<Vec<_>>()).expect("cycle is simple")
}

pub fn path(n: usize) -> Graph {
    Graph::new(n, (1..n).map(|v| (v - 1, v)).collect::<Vec<_>>()).expect("path is simple")
}

/// Uniform random labelled tree (Prüfer sequence); deterministic per seed.
pub fn random_tree(n: usize, seed: u64) -> Graph {
    use rand::Rng;
    if n <= 2 {
        return path(n);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let code: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    let mut degree = vec![1usize; n];
    for &c in &code {
        degree[c] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &c in &code {
        let leaf = (0..n)
            .find(|&v| degree[v] == 1)
            .expect("a leaf always exists");
        edges.push((leaf, c));
        degree[leaf] -= 1;
        degree[c] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    Graph::new(n, edges).expect("Prüfer decoding yields a tree")
}

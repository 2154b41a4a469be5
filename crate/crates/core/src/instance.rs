use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::objective::cov_alpha;
use crate::rational::{Alpha, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    Max,
    Min,
}

impl Direction {
    /// True if `a` is strictly better than `b` in this direction.
    pub fn better(self, a: &Rational, b: &Rational) -> bool {
        match self {
            Direction::Max => a > b,
            Direction::Min => a < b,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Direction::Max => "max",
            Direction::Min => "min",
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Direction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "max" => Ok(Direction::Max),
            "min" => Ok(Direction::Min),
            _ => Err(Error::input(format!(
                "direction must be max or min, got {s:?}"
            ))),
        }
    }
}

/// One solve request.
#[derive(Clone, Debug)]
pub struct Instance {
    pub graph: Graph,
    pub k: usize,
    pub alpha: Alpha,
    pub direction: Direction,
    /// Optional decision threshold `p`.
    pub threshold: Option<Rational>,
}

impl Instance {
    pub fn new(graph: Graph, k: usize, alpha: Alpha, direction: Direction) -> Result<Self> {
        if k == 0 || k > graph.n() {
            return Err(Error::input(format!(
                "k must satisfy 1 <= k <= n = {}, got {k}",
                graph.n()
            )));
        }
        Ok(Instance {
            graph,
            k,
            alpha,
            direction,
            threshold: None,
        })
    }

    pub fn with_threshold(mut self, p: Rational) -> Result<Self> {
        if p < Rational::from_integer(0) {
            return Err(Error::input("threshold p must be non-negative"));
        }
        self.threshold = Some(p);
        Ok(self)
    }

    /// Decision answer for `solution`: `value ≥ p` for Max, `value ≤ p` for
    /// Min. `None` if no threshold was set.
    pub fn accepts(&self, solution: &Solution) -> Option<bool> {
        self.threshold.map(|p| match self.direction {
            Direction::Max => solution.value >= p,
            Direction::Min => solution.value <= p,
        })
    }

    /// Builds a [`Solution`] for `vertices`, validating size and range.
    pub fn solution(&self, vertices: Vec<usize>, provenance: Provenance) -> Result<Solution> {
        let solution = Solution::evaluate(&self.graph, vertices, self.alpha, provenance)?;
        if solution.vertices.len() != self.k {
            return Err(Error::input(format!(
                "solution has {} vertices, expected k = {}",
                solution.vertices.len(),
                self.k
            )));
        }
        Ok(solution)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Algorithm {
    BruteForce,
    BranchAndBound,
    Greedy,
    FptasGeneral,
    FptasTopDegree,
    Subexponential,
    ClosedForm,
}

impl Algorithm {
    pub fn as_str(self) -> &'static str {
        match self {
            Algorithm::BruteForce => "brute",
            Algorithm::BranchAndBound => "bnb",
            Algorithm::Greedy => "greedy",
            Algorithm::FptasGeneral => "fptas",
            Algorithm::FptasTopDegree => "topdeg",
            Algorithm::Subexponential => "subexp",
            Algorithm::ClosedForm => "closed-form",
        }
    }
}

/// Control path inside an algorithm that produced a solution.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Branch {
    Greedy,
    BoundedDegree,
    CandidateEnum,
    /// Degree prefix of the given length, with its last vertex forced in.
    Prefix(usize),
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Branch::Greedy => f.write_str("greedy"),
            Branch::BoundedDegree => f.write_str("bounded-degree"),
            Branch::CandidateEnum => f.write_str("candidate-enum"),
            Branch::Prefix(j) => write!(f, "prefix-{j}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Provenance {
    pub algorithm: Algorithm,
    pub branch: Option<Branch>,
}

impl Provenance {
    pub fn new(algorithm: Algorithm) -> Self {
        Provenance {
            algorithm,
            branch: None,
        }
    }

    pub fn with_branch(algorithm: Algorithm, branch: Branch) -> Self {
        Provenance {
            algorithm,
            branch: Some(branch),
        }
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.branch {
            Some(b) => write!(f, "{}:{b}", self.algorithm.as_str()),
            None => f.write_str(self.algorithm.as_str()),
        }
    }
}

/// A vertex set together with its exact objective value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    /// Sorted ascending, no duplicates.
    pub vertices: Vec<usize>,
    pub value: Rational,
    pub provenance: Provenance,
}

impl Solution {
    /// Sorts `vertices` and computes `cov_α` from scratch.
    pub fn evaluate(
        graph: &Graph,
        mut vertices: Vec<usize>,
        alpha: Alpha,
        provenance: Provenance,
    ) -> Result<Self> {
        vertices.sort_unstable();
        if vertices.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::input("solution contains a repeated vertex"));
        }
        let value = cov_alpha(graph, &vertices, alpha)?;
        Ok(Solution {
            vertices,
            value,
            provenance,
        })
    }

    pub fn with_provenance(mut self, provenance: Provenance) -> Self {
        self.provenance = provenance;
        self
    }
}

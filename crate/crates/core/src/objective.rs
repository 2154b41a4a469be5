//! Evaluation of `cov_α` and the scaled-integer weights used by the solvers.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rational::{Alpha, Rational};

/// Returns `(m(S), m(S, V ∖ S))`. Duplicate entries in `vertices` are ignored.
pub fn cut_counts(graph: &Graph, vertices: &[usize]) -> Result<(usize, usize)> {
    let mut member = vec![false; graph.n()];
    for &v in vertices {
        if v >= graph.n() {
            return Err(Error::input(format!(
                "vertex {v} out of range 0..{}",
                graph.n()
            )));
        }
        member[v] = true;
    }
    let mut inside = 0;
    let mut boundary = 0;
    for &(u, v) in graph.edges() {
        match (member[u], member[v]) {
            (true, true) => inside += 1,
            (true, false) | (false, true) => boundary += 1,
            (false, false) => {}
        }
    }
    Ok((inside, boundary))
}

/// `cov_α(S) = (1 − α)·m(S) + α·m(S, V ∖ S)`, exactly.
pub fn cov_alpha(graph: &Graph, vertices: &[usize], alpha: Alpha) -> Result<Rational> {
    let (inside, boundary) = cut_counts(graph, vertices)?;
    Ok(Weights::new(alpha).value(inside as i64, boundary as i64))
}

/// `cov_α` scaled by the denominator `q` of `α = p/q`, so that every
/// objective value becomes an integer: `q·cov_α(S) = (q − p)·m(S) + p·m(S, V∖S)`.
///
/// Solvers compare these integers; [`Weights::to_rational`] converts back.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Weights {
    pub internal: i64,
    pub boundary: i64,
    pub scale: i64,
}

impl Weights {
    pub fn new(alpha: Alpha) -> Self {
        let p = alpha.numerator() as i64;
        let q = alpha.denominator() as i64;
        Weights {
            internal: q - p,
            boundary: p,
            scale: q,
        }
    }

    /// Fails if scores on `graph` could overflow `i64`.
    pub fn check_range(&self, graph: &Graph) -> Result<()> {
        let m = graph.m() as i64;
        self.scale
            .checked_mul(m.max(1))
            .and_then(|x| x.checked_mul(4))
            .map(|_| ())
            .ok_or_else(|| Error::Resource("alpha denominator too large for this graph".into()))
    }

    #[inline]
    pub fn score(&self, inside: i64, boundary: i64) -> i64 {
        self.internal * inside + self.boundary * boundary
    }

    pub fn to_rational(&self, score: i64) -> Rational {
        Rational::new(score as i128, self.scale as i128)
    }

    pub fn value(&self, inside: i64, boundary: i64) -> Rational {
        self.to_rational(self.score(inside, boundary))
    }
}

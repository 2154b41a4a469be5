//! Degree-greedy baseline and the two FPT approximation schemes.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{self, ExactOptions};
use crate::graph::Graph;
use crate::instance::{Algorithm, Branch, Direction, Instance, Provenance, Solution};
use crate::ordering::{DegreeOrdering, OrderDirection};
use crate::rational::{ceil_to_int, format_rational, Alpha, Rational};

#[derive(Clone, Debug)]
pub struct ApproxResult {
    pub solution: Solution,
    pub branch: Branch,
    /// `1 − ε` for Max, `1 + ε` for Min.
    pub guarantee: Rational,
    /// Degree threshold `Δ` consulted by the general scheme.
    pub delta_threshold: Option<Rational>,
}

/// The `k` vertices of largest degree (Max) or smallest degree (Min), ties by id.
///
/// Within `2k²` of the optimum in the instance's direction.
pub fn greedy_extremal_degree(instance: &Instance) -> Solution {
    let ordering = DegreeOrdering::new(&instance.graph, instance.direction.into());
    let vertices = ordering.prefix(instance.k).to_vec();
    instance
        .solution(
            vertices,
            Provenance::with_branch(Algorithm::Greedy, Branch::Greedy),
        )
        .expect("degree prefix is a valid k-subset")
}

/// Closed form for `α = 1/3`, where `cov_α(S) = Σ_{v∈S} d(v) / 3` and the
/// greedy choice is exactly optimal.
pub fn solve_one_third(instance: &Instance) -> Result<Solution> {
    if instance.alpha != Alpha::ONE_THIRD {
        return Err(Error::unsupported(format!(
            "closed form requires alpha = 1/3, got {}",
            instance.alpha
        )));
    }
    Ok(greedy_extremal_degree(instance).with_provenance(Provenance::new(Algorithm::ClosedForm)))
}

/// `Δ = 2k²/(εα) + k`.
pub fn delta_threshold(k: usize, alpha: Alpha, epsilon: &Rational) -> Rational {
    let k = Rational::from_integer(k as i128);
    Rational::from_integer(2) * k * k / (*epsilon * alpha.to_rational()) + k
}

fn check_epsilon(epsilon: &Rational, allow_one: bool) -> Result<()> {
    let ok = *epsilon > Rational::zero()
        && (*epsilon < Rational::one() || (allow_one && epsilon.is_one()));
    if ok {
        Ok(())
    } else {
        let range = if allow_one { "(0, 1]" } else { "(0, 1)" };
        Err(Error::unsupported(format!(
            "epsilon must lie in {range}, got {}",
            format_rational(epsilon)
        )))
    }
}

/// General FPT approximation scheme for `α > 0`, both directions.
///
/// Max: if the top degree exceeds `Δ` the greedy set is already a
/// `(1 − ε)`-approximation; otherwise the graph has maximum degree at most
/// `Δ` and is solved exactly. Min: the greedy set and an exact solve over the
/// vertices of degree at most `Δ` are both computed and the better one wins.
pub fn fptas_general(
    instance: &Instance,
    epsilon: &Rational,
    opts: &ExactOptions,
) -> Result<ApproxResult> {
    if instance.alpha.is_zero() {
        return Err(Error::unsupported(
            "fptas requires alpha > 0 (alpha = 0 admits no FPT approximation)",
        ));
    }
    check_epsilon(epsilon, true)?;
    let delta = delta_threshold(instance.k, instance.alpha, epsilon);
    let degree = |v: usize| Rational::from_integer(instance.graph.degree(v) as i128);
    let result = |solution: Solution, branch: Branch, guarantee: Rational| ApproxResult {
        solution: solution
            .with_provenance(Provenance::with_branch(Algorithm::FptasGeneral, branch)),
        branch,
        guarantee,
        delta_threshold: Some(delta),
    };

    match instance.direction {
        Direction::Max => {
            let guarantee = Rational::one() - epsilon;
            let top = instance.graph.max_degree() as i128;
            if Rational::from_integer(top) > delta {
                Ok(result(
                    greedy_extremal_degree(instance),
                    Branch::Greedy,
                    guarantee,
                ))
            } else {
                let exact = exact::solve_branch_and_bound(instance, opts)?;
                Ok(result(exact.solution, Branch::BoundedDegree, guarantee))
            }
        }
        Direction::Min => {
            let guarantee = Rational::one() + epsilon;
            let greedy = greedy_extremal_degree(instance);
            let low: Vec<usize> = (0..instance.graph.n())
                .filter(|&v| degree(v) <= delta)
                .collect();
            if low.len() < instance.k {
                // every k-set contains a vertex of degree > Δ, so OPT ≥ 2k²/ε
                return Ok(result(greedy, Branch::Greedy, guarantee));
            }
            let exact = exact::solve_branch_and_bound_within(instance, &low, opts)?;
            if greedy.value < exact.solution.value {
                Ok(result(greedy, Branch::Greedy, guarantee))
            } else {
                Ok(result(exact.solution, Branch::BoundedDegree, guarantee))
            }
        }
    }
}

/// The top-degree candidate set `V′`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CandidateSet {
    vertices: Vec<usize>,
}

impl CandidateSet {
    /// The `size` highest-degree vertices (ties by id), capped at `n`.
    pub fn top_degree(graph: &Graph, size: usize) -> Self {
        let ordering = DegreeOrdering::new(graph, OrderDirection::NonIncreasing);
        CandidateSet {
            vertices: ordering.prefix(size.min(graph.n())).to_vec(),
        }
    }

    /// `|V′| = min(n, k + ⌈4k/ε²⌉)`.
    pub fn for_epsilon(graph: &Graph, k: usize, epsilon: &Rational) -> Self {
        Self::top_degree(graph, candidate_set_size(k, epsilon))
    }

    /// Candidates in non-increasing degree order.
    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

/// `k + ⌈4k/ε²⌉`, saturating.
pub fn candidate_set_size(k: usize, epsilon: &Rational) -> usize {
    let extra = ceil_to_int(&(Rational::from_integer(4 * k as i128) / (*epsilon * *epsilon)));
    k.saturating_add(usize::try_from(extra).unwrap_or(usize::MAX))
}

/// Candidate-set FPT-AS for Max with `α ≥ 1/3`: enumerate every k-subset of
/// the `k + ⌈4k/ε²⌉` highest-degree vertices.
pub fn fptas_topdegree(
    instance: &Instance,
    epsilon: &Rational,
    opts: &ExactOptions,
) -> Result<ApproxResult> {
    if instance.direction != Direction::Max {
        return Err(Error::unsupported("topdeg supports only the max direction"));
    }
    if instance.alpha < Alpha::ONE_THIRD {
        return Err(Error::unsupported(format!(
            "topdeg requires alpha >= 1/3, got {}",
            instance.alpha
        )));
    }
    check_epsilon(epsilon, false)?;
    let candidates = CandidateSet::for_epsilon(&instance.graph, instance.k, epsilon);
    let exact = match exact::solve_brute_force(instance, Some(candidates.vertices()), opts) {
        Err(Error::Resource(_)) => {
            exact::solve_branch_and_bound_within(instance, candidates.vertices(), opts)?
        }
        other => other?,
    };
    Ok(ApproxResult {
        solution: exact.solution.with_provenance(Provenance::with_branch(
            Algorithm::FptasTopDegree,
            Branch::CandidateEnum,
        )),
        branch: Branch::CandidateEnum,
        guarantee: Rational::one() - epsilon,
        delta_threshold: None,
    })
}

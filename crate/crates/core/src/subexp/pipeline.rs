use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::{ExactOptions, ExactResult, Method};
use crate::instance::{Algorithm, Branch, Direction, Instance, Provenance};
use crate::ordering::DegreeOrdering;
use crate::rational::{Alpha, Rational};

use super::domination::{domination_lower_bound, greedy_dominating_set};
use super::dp::{dp_solve_prefix, PrefixSubproblem};
use super::treedec::tree_decomposition_heuristic;

/// `max(⌈3·√k⌉, 4)`.
pub fn default_width_budget(k: usize) -> usize {
    // smallest w with w² ≥ 9k
    let target = 9 * k as u128;
    let mut w = (9.0 * k as f64).sqrt() as u128;
    while w * w < target {
        w += 1;
    }
    while w > 0 && (w - 1) * (w - 1) >= target {
        w -= 1;
    }
    (w as usize).max(4)
}

/// Max needs `α ≥ 1/3`, Min needs `α ≤ 1/3`: the ranges in which the
/// lexicographically smallest optimum dominates its degree prefix.
pub fn check_alpha_range(instance: &Instance) -> Result<()> {
    match instance.direction {
        Direction::Max if instance.alpha < Alpha::ONE_THIRD => Err(Error::unsupported(format!(
            "max requires alpha >= 1/3, got {}",
            instance.alpha
        ))),
        Direction::Min if instance.alpha > Alpha::ONE_THIRD => Err(Error::unsupported(format!(
            "min requires alpha <= 1/3, got {}",
            instance.alpha
        ))),
        _ => Ok(()),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PrefixStatus {
    Solved {
        value: Rational,
        vertices: Vec<usize>,
        states: u64,
    },
    /// Even a perfect packing of closed neighbourhoods needs more than `k`
    /// vertices to dominate the prefix.
    SkippedDomination {
        lower_bound: usize,
    },
    SkippedWidth {
        width: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrefixTrace {
    /// Prefix length (1-based position of the forced last vertex).
    pub j: usize,
    pub dominating_set_size: usize,
    pub width: Option<usize>,
    pub status: PrefixStatus,
}

#[derive(Clone, Debug)]
pub struct SubexpReport {
    pub result: ExactResult,
    pub prefixes: Vec<PrefixTrace>,
}

impl SubexpReport {
    /// True if no prefix was dropped by the width gate, in which case the
    /// result is the exact optimum.
    pub fn complete(&self) -> bool {
        !self
            .prefixes
            .iter()
            .any(|p| matches!(p.status, PrefixStatus::SkippedWidth { .. }))
    }
}

fn process_prefix(
    instance: &Instance,
    ordering: &DegreeOrdering,
    j: usize,
    width_budget: usize,
) -> Result<PrefixTrace> {
    let sub = PrefixSubproblem::new(&instance.graph, ordering, j);
    let dominating_set_size = greedy_dominating_set(&sub.prefix_graph).len();
    let lower_bound = domination_lower_bound(&sub.prefix_graph);
    if lower_bound > instance.k {
        return Ok(PrefixTrace {
            j,
            dominating_set_size,
            width: None,
            status: PrefixStatus::SkippedDomination { lower_bound },
        });
    }
    let td = tree_decomposition_heuristic(&sub.prefix_graph);
    let width = td.width();
    if width > width_budget {
        return Ok(PrefixTrace {
            j,
            dominating_set_size,
            width: Some(width),
            status: PrefixStatus::SkippedWidth { width },
        });
    }
    let sol = dp_solve_prefix(
        &sub,
        &td,
        instance.k,
        instance.alpha,
        instance.direction,
        Some(j - 1),
    )?;
    Ok(PrefixTrace {
        j,
        dominating_set_size,
        width: Some(width),
        status: PrefixStatus::Solved {
            value: sol.value,
            vertices: sol.vertices,
            states: sol.states,
        },
    })
}

/// Guesses the last solution vertex `v_j` in degree order and solves each
/// prefix `V^j` (with `v_j` forced in) by tree-decomposition DP. Prefixes
/// whose heuristic decomposition is wider than `width_budget` are skipped;
/// if all are skipped the call fails with [`Error::GateExhausted`].
pub fn solve_subexponential(
    instance: &Instance,
    width_budget: usize,
    opts: &ExactOptions,
) -> Result<ExactResult> {
    solve_subexponential_traced(instance, width_budget, opts).map(|r| r.result)
}

pub fn solve_subexponential_traced(
    instance: &Instance,
    width_budget: usize,
    opts: &ExactOptions,
) -> Result<SubexpReport> {
    check_alpha_range(instance)?;
    let ordering = DegreeOrdering::new(&instance.graph, instance.direction.into());
    let js = instance.k..=instance.graph.n();
    let prefixes: Vec<PrefixTrace> = if opts.parallel {
        js.into_par_iter()
            .map(|j| process_prefix(instance, &ordering, j, width_budget))
            .collect::<Result<_>>()?
    } else {
        js.map(|j| process_prefix(instance, &ordering, j, width_budget))
            .collect::<Result<_>>()?
    };

    let mut best: Option<(&Rational, &Vec<usize>, usize)> = None;
    let mut states = 0;
    for p in &prefixes {
        if let PrefixStatus::Solved {
            value,
            vertices,
            states: s,
        } = &p.status
        {
            states += s;
            if best.is_none_or(|(b, _, _)| instance.direction.better(value, b)) {
                best = Some((value, vertices, p.j));
            }
        }
    }
    let Some((value, vertices, j)) = best else {
        let min_width = prefixes.iter().filter_map(|p| p.width).min().unwrap_or(0);
        return Err(Error::GateExhausted {
            prefixes: prefixes.len(),
            width_budget,
            min_width,
        });
    };
    let solution = instance.solution(
        vertices.clone(),
        Provenance::with_branch(Algorithm::Subexponential, Branch::Prefix(j)),
    )?;
    debug_assert_eq!(&solution.value, value);
    Ok(SubexpReport {
        result: ExactResult {
            solution,
            nodes_explored: states,
            method: Method::TreeDecompositionDp,
        },
        prefixes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::solve_branch_and_bound;
    use crate::generators::{gen_grid, gen_regular, star};
    use crate::graph::Graph;

    #[test]
    fn width_budget_default() {
        assert_eq!(default_width_budget(1), 4);
        assert_eq!(default_width_budget(2), 5); // 3·√2 ≈ 4.24
        assert_eq!(default_width_budget(4), 6);
        assert_eq!(default_width_budget(9), 9);
        assert_eq!(default_width_budget(10), 10); // 3·√10 ≈ 9.49
    }

    #[test]
    fn star_singleton() {
        for n in [3, 6, 10] {
            let i =
                Instance::new(star(n - 1), 1, Alpha::new(1, 2).unwrap(), Direction::Max).unwrap();
            let r = solve_subexponential(&i, default_width_budget(1), &ExactOptions::default())
                .unwrap();
            assert_eq!(r.solution.vertices, vec![0]);
            assert_eq!(r.solution.value, Rational::new(n as i128 - 1, 2));
        }
    }

    #[test]
    fn regular_one_third_closed_form() {
        let g = gen_regular(12, 3, 3).unwrap();
        for k in 1..=4 {
            for dir in [Direction::Max, Direction::Min] {
                let i = Instance::new(g.clone(), k, Alpha::ONE_THIRD, dir).unwrap();
                let r = solve_subexponential(&i, default_width_budget(k), &ExactOptions::default())
                    .unwrap();
                assert_eq!(r.solution.value, Rational::new(3 * k as i128, 3));
            }
        }
    }

    #[test]
    fn grid_matches_oracle() {
        let g = gen_grid(3, 3).unwrap();
        for k in 1..=4 {
            for (a, dir) in [((1, 2), Direction::Max), ((1, 6), Direction::Min)] {
                let i = Instance::new(g.clone(), k, Alpha::new(a.0, a.1).unwrap(), dir).unwrap();
                let r = solve_subexponential(&i, default_width_budget(k), &ExactOptions::default())
                    .unwrap();
                let opt = solve_branch_and_bound(&i, &ExactOptions::default()).unwrap();
                assert_eq!(r.solution.value, opt.solution.value);
            }
        }
    }

    #[test]
    fn range_and_gate_errors() {
        let g = gen_grid(2, 3).unwrap();
        let i = Instance::new(g.clone(), 2, Alpha::new(1, 4).unwrap(), Direction::Max).unwrap();
        assert!(matches!(
            solve_subexponential(&i, 4, &ExactOptions::default()),
            Err(Error::Unsupported(_))
        ));
        let i = Instance::new(g, 2, Alpha::new(1, 2).unwrap(), Direction::Min).unwrap();
        assert!(solve_subexponential(&i, 4, &ExactOptions::default()).is_err());

        // a 4-clique needs width 3 everywhere past its second vertex
        let k4 = crate::generators::complete(4);
        let i = Instance::new(k4, 3, Alpha::ONE, Direction::Max).unwrap();
        match solve_subexponential(&i, 1, &ExactOptions::default()) {
            Err(Error::GateExhausted { min_width, .. }) => assert_eq!(min_width, 2),
            other => panic!("expected gate exhaustion, got {other:?}"),
        }
    }

    #[test]
    fn domination_gate_skips_long_prefixes() {
        // 8 isolated vertices: a prefix of length j needs j dominators
        let i = Instance::new(Graph::edgeless(8), 2, Alpha::ONE, Direction::Max).unwrap();
        let report = solve_subexponential_traced(&i, 4, &ExactOptions::sequential()).unwrap();
        assert!(report.complete());
        assert_eq!(report.result.solution.vertices, vec![0, 1]);
        let skipped = report
            .prefixes
            .iter()
            .filter(|p| matches!(p.status, PrefixStatus::SkippedDomination { .. }))
            .count();
        assert_eq!(skipped, 6);
    }
}

use crate::error::Result;
use crate::exact::{solve_branch_and_bound, ExactOptions};
use crate::instance::Instance;
use crate::ordering::DegreeOrdering;
use crate::rational::Rational;

use super::domination::is_dominating;
use super::pipeline::check_alpha_range;

/// Lexicographically smallest optimum with respect to degree-order
/// positions, and whether it dominates the prefix ending at its last vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExchangeWitness {
    /// Original vertex ids, sorted.
    pub solution: Vec<usize>,
    /// 1-based positions in the degree ordering, sorted.
    pub positions: Vec<usize>,
    /// Position of the last solution vertex (prefix length).
    pub j: usize,
    pub value: Rational,
    pub dominated: bool,
}

/// Test harness for the prefix-domination property; solves the instance
/// exactly, so only for oracle-sized inputs.
pub fn check_exchange_lemma(instance: &Instance, opts: &ExactOptions) -> Result<ExchangeWitness> {
    check_alpha_range(instance)?;
    let ordering = DegreeOrdering::new(&instance.graph, instance.direction.into());
    // relabel so that vertex ids are ordering positions; lexicographic
    // tie-breaking on ids then becomes tie-breaking on positions
    let relabeled = Instance::new(
        instance.graph.relabel(ordering.permutation()),
        instance.k,
        instance.alpha,
        instance.direction,
    )?;
    let opt = solve_branch_and_bound(&relabeled, opts)?;
    let local = &opt.solution.vertices;
    let j = local.last().copied().expect("k >= 1") + 1;
    let prefix: Vec<usize> = (0..j).collect();
    let dominated = is_dominating(&relabeled.graph.induced(&prefix), local);
    let mut solution: Vec<usize> = local.iter().map(|&p| ordering.permutation()[p]).collect();
    solution.sort_unstable();
    Ok(ExchangeWitness {
        solution,
        positions: local.iter().map(|p| p + 1).collect(),
        j,
        value: opt.solution.value,
        dominated,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::generators::{gen_random_gnm, gen_regular, star};
    use crate::instance::Direction;
    use crate::rational::Alpha;

    #[test]
    fn star_centre() {
        let i = Instance::new(star(5), 1, Alpha::new(1, 2).unwrap(), Direction::Max).unwrap();
        let w = check_exchange_lemma(&i, &ExactOptions::default()).unwrap();
        assert_eq!(w.solution, vec![0]);
        assert_eq!(w.j, 1);
        assert!(w.dominated);
    }

    #[test]
    fn regular_graph_takes_first_vertices() {
        let g = gen_regular(10, 3, 11).unwrap();
        for k in 1..=4 {
            let i = Instance::new(g.clone(), k, Alpha::ONE_THIRD, Direction::Max).unwrap();
            let w = check_exchange_lemma(&i, &ExactOptions::default()).unwrap();
            assert_eq!(w.positions, (1..=k).collect::<Vec<_>>());
            assert_eq!(w.solution, (0..k).collect::<Vec<_>>());
            assert!(w.dominated);
        }
    }

    #[test]
    fn holds_on_random_instances() {
        for seed in 0..40 {
            let g = gen_random_gnm(9, (seed as usize * 5) % 30, seed).unwrap();
            for (a, dir) in [((1, 2), Direction::Max), ((1, 6), Direction::Min)] {
                let k = 1 + seed as usize % 4;
                let i = Instance::new(g.clone(), k, Alpha::new(a.0, a.1).unwrap(), dir).unwrap();
                assert!(
                    check_exchange_lemma(&i, &ExactOptions::default())
                        .unwrap()
                        .dominated
                );
            }
        }
    }

    #[test]
    fn rejects_out_of_range_alpha() {
        let i = Instance::new(star(3), 1, Alpha::new(1, 4).unwrap(), Direction::Max).unwrap();
        assert!(matches!(
            check_exchange_lemma(&i, &ExactOptions::default()),
            Err(Error::Unsupported(_))
        ));
    }
}

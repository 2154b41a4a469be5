use std::path::Path;
use std::time::Instant;

use fcgp_core::approx::{fptas_general, fptas_topdegree, greedy_extremal_degree, solve_one_third};
use fcgp_core::exact::{solve_branch_and_bound, solve_brute_force, ExactOptions};
use fcgp_core::rational::{format_rational, parse_rational};
use fcgp_core::subexp::{default_width_budget, solve_subexponential};
use fcgp_core::{Alpha, Direction, Graph, Instance, Rational, Solution};

use crate::args::{Algo, Mode, SolveArgs};
use crate::record::{fmt_ratio, ratio, RunRecord};
use crate::CliError;

impl Algo {
    pub fn as_str(self) -> &'static str {
        match self {
            Algo::Brute => "brute",
            Algo::Bnb => "bnb",
            Algo::Greedy => "greedy",
            Algo::Fptas => "fptas",
            Algo::Topdeg => "topdeg",
            Algo::Subexp => "subexp",
            Algo::ClosedForm => "closed-form",
        }
    }
}

impl From<Mode> for Direction {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Max => Direction::Max,
            Mode::Min => Direction::Min,
        }
    }
}

pub fn read_graph(path: &Path) -> Result<Graph, CliError> {
    let text =
        std::fs::read_to_string(path).map_err(|e| CliError::io(path.display().to_string(), e))?;
    Ok(Graph::parse_edge_list(&text)?)
}

/// Runs one algorithm on an instance.
pub fn run_algorithm(
    instance: &Instance,
    algo: Algo,
    epsilon: Option<&Rational>,
    width_budget: Option<usize>,
    opts: &ExactOptions,
) -> Result<Solution, CliError> {
    let need_eps = || {
        epsilon
            .ok_or_else(|| CliError::Usage(format!("--epsilon is required for {}", algo.as_str())))
    };
    let sol = match algo {
        Algo::Brute => solve_brute_force(instance, None, opts)?.solution,
        Algo::Bnb => solve_branch_and_bound(instance, opts)?.solution,
        Algo::Greedy => greedy_extremal_degree(instance),
        Algo::Fptas => fptas_general(instance, need_eps()?, opts)?.solution,
        Algo::Topdeg => fptas_topdegree(instance, need_eps()?, opts)?.solution,
        Algo::Subexp => {
            let budget = width_budget.unwrap_or_else(|| default_width_budget(instance.k));
            solve_subexponential(instance, budget, opts)?.solution
        }
        Algo::ClosedForm => solve_one_third(instance)?,
    };
    Ok(sol)
}

pub fn elapsed_ms(start: Instant, no_timing: bool) -> u64 {
    if no_timing {
        0
    } else {
        u64::try_from(start.elapsed().as_millis()).unwrap_or(u64::MAX)
    }
}

/// Builds a record for `solution`, filling oracle and ratio when an exact
/// value is supplied.
pub fn make_record(
    instance_name: &str,
    instance: &Instance,
    algo: &str,
    epsilon: Option<&Rational>,
    solution: &Solution,
    wall_ms: u64,
    oracle: Option<&Rational>,
) -> RunRecord {
    RunRecord {
        instance: instance_name.to_string(),
        algo: algo.to_string(),
        k: instance.k,
        alpha: instance.alpha.to_string(),
        epsilon: epsilon.map(format_rational),
        direction: instance.direction.as_str().to_string(),
        value: format_rational(&solution.value),
        vertices: solution.vertices.clone(),
        wall_ms,
        branch: solution.provenance.to_string(),
        oracle: oracle.map(format_rational),
        ratio: oracle.map(|o| fmt_ratio(&ratio(instance.direction, &solution.value, o))),
        check: String::new(),
    }
}

pub fn run_solve(args: &SolveArgs) -> Result<RunRecord, CliError> {
    let graph = read_graph(&args.graph)?;
    let alpha: Alpha = args.alpha.parse()?;
    let epsilon = args.epsilon.as_deref().map(parse_rational).transpose()?;
    let instance = Instance::new(graph, args.k, alpha, args.mode.into())?;
    let opts = ExactOptions::default();

    let start = Instant::now();
    let sol = run_algorithm(
        &instance,
        args.algo,
        epsilon.as_ref(),
        args.width_budget,
        &opts,
    )?;
    let wall_ms = elapsed_ms(start, args.no_timing);

    let oracle = if args.oracle {
        Some(solve_branch_and_bound(&instance, &opts)?.solution.value)
    } else {
        None
    };
    let mut rec = make_record(
        &args.graph.display().to_string(),
        &instance,
        args.algo.as_str(),
        epsilon.as_ref(),
        &sol,
        wall_ms,
        oracle.as_ref(),
    );
    if let Some(o) = &oracle {
        rec.check = check_against(args.algo, &instance, &sol.value, o, epsilon.as_ref()).into();
    }
    Ok(rec)
}

/// Compares a result against the exact optimum under the algorithm's
/// guarantee: equality for exact solvers, `2k²` additive for greedy, the
/// `(1 ± ε)` factor for the schemes. A subexp result below the optimum
/// (possible only when the width gate dropped a prefix) is reported as
/// `gated` rather than as a violation.
pub fn check_against(
    algo: Algo,
    instance: &Instance,
    value: &Rational,
    opt: &Rational,
    epsilon: Option<&Rational>,
) -> &'static str {
    let pass = match algo {
        Algo::Brute | Algo::Bnb | Algo::ClosedForm => value == opt,
        Algo::Subexp if value != opt => return "gated",
        Algo::Subexp => true,
        Algo::Greedy => within_additive(value, opt, instance.k),
        Algo::Fptas | Algo::Topdeg => match epsilon {
            Some(eps) => within_factor(instance.direction, value, opt, eps),
            None => return "",
        },
    };
    if pass {
        "ok"
    } else {
        "violation"
    }
}

/// `value ≥ (1−ε)·OPT` for Max, `value ≤ (1+ε)·OPT` for Min.
pub fn within_factor(
    direction: Direction,
    value: &Rational,
    opt: &Rational,
    eps: &Rational,
) -> bool {
    let one = Rational::from_integer(1);
    match direction {
        Direction::Max => *value >= (one - *eps) * *opt,
        Direction::Min => *value <= (one + *eps) * *opt,
    }
}

/// `|value − OPT| ≤ 2k²`.
pub fn within_additive(value: &Rational, opt: &Rational, k: usize) -> bool {
    let gap = if value > opt {
        *value - *opt
    } else {
        *opt - *value
    };
    gap <= Rational::from_integer(2 * (k as i128) * (k as i128))
}

use std::path::PathBuf;
use std::time::Instant;

use fcgp_core::approx::{fptas_general, fptas_topdegree, greedy_extremal_degree};
use fcgp_core::exact::{solve_branch_and_bound, solve_brute_force, ExactOptions};
use fcgp_core::generators::{
    gen_gap_instance, gen_grid, gen_random_gnm, GapInstanceSpec, GapReport,
};
use fcgp_core::rational::{format_rational, parse_rational};
use fcgp_core::subexp::{check_exchange_lemma, default_width_budget, solve_subexponential_traced};
use fcgp_core::{
    cov_alpha, Algorithm, Alpha, Direction, Error, Graph, Instance, Provenance, Rational, Solution,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;

use crate::args::{Algo, ExperimentArgs, Suite};
use crate::generate::write_instance;
use crate::record::{ratio, RunRecord, Summary};
use crate::solve::{check_against, elapsed_ms, make_record};
use crate::{with_threads, CliError};

impl Suite {
    pub fn as_str(self) -> &'static str {
        match self {
            Suite::Approx => "approx",
            Suite::Gap => "gap",
            Suite::Subexp => "subexp",
            Suite::Exchange => "exchange",
        }
    }
}

pub const APPROX_ALPHAS: [(u64, u64); 6] = [(0, 1), (1, 4), (1, 3), (1, 2), (3, 4), (1, 1)];
pub const APPROX_EPSILONS: [(i128, i128); 2] = [(1, 4), (1, 2)];
pub const TOPDEG_EPSILON: (i128, i128) = (1, 2);
/// `(direction, α)` pairs for which the prefix-domination argument holds.
pub const PREFIX_CASES: [(Direction, u64, u64); 6] = [
    (Direction::Max, 1, 3),
    (Direction::Max, 1, 2),
    (Direction::Max, 1, 1),
    (Direction::Min, 0, 1),
    (Direction::Min, 1, 6),
    (Direction::Min, 1, 3),
];
pub const GAP_DEFAULT_MUS: [(i128, i128); 2] = [(1, 10), (1, 6)];
/// Clique size of the oracle-checked gap instances.
pub const GAP_SPOT_K: usize = 4;
/// Finite-k slack added to the `1 − 3μ` tightness bound.
pub const GAP_TIGHTNESS_SLACK: (i128, i128) = (1, 100);

#[derive(Clone, Debug)]
pub struct ExperimentOutput {
    pub records: Vec<RunRecord>,
    pub summary: Summary,
    /// Graphs of violating rows, by record index.
    pub violations: Vec<(usize, Graph)>,
}

/// One run plus the graph, kept only so violations can be written out.
type Row = (RunRecord, Option<Graph>);

struct Ctx {
    no_timing: bool,
    opts: ExactOptions,
}

fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

fn random_gnm(
    rng: &mut ChaCha8Rng,
    min_n: usize,
    max_n: usize,
) -> Result<(Graph, String), CliError> {
    let n = rng.gen_range(min_n..=max_n.max(min_n));
    let m = rng.gen_range(0..=n * (n - 1) / 2);
    let s: u64 = rng.gen();
    Ok((
        gen_random_gnm(n, m, s)?,
        format!("gnm n={n} m={m} seed={s}"),
    ))
}

fn finish(mut rec: RunRecord, check: &str, graph: &Graph) -> Row {
    rec.check = check.to_string();
    let keep = rec.is_violation().then(|| graph.clone());
    (rec, keep)
}

fn timed<T>(ctx: &Ctx, f: impl FnOnce() -> T) -> (T, u64) {
    let start = Instant::now();
    let out = f();
    (out, elapsed_ms(start, ctx.no_timing))
}

fn approx_rows(ctx: &Ctx, inst: &Instance, name: &str) -> Result<Vec<Row>, CliError> {
    let g = &inst.graph;
    let mut rows = Vec::new();
    let (brute, _) = timed(ctx, || solve_brute_force(inst, None, &ctx.opts));
    let brute = brute?.solution;
    let opt = brute.value;

    let (bnb, ms) = timed(ctx, || solve_branch_and_bound(inst, &ctx.opts));
    let bnb = bnb?.solution;
    let same = bnb.value == brute.value && bnb.vertices == brute.vertices;
    let rec = make_record(name, inst, "bnb", None, &bnb, ms, Some(&opt));
    rows.push(finish(rec, if same { "ok" } else { "violation" }, g));

    let (greedy, ms) = timed(ctx, || greedy_extremal_degree(inst));
    let rec = make_record(name, inst, "greedy", None, &greedy, ms, Some(&opt));
    rows.push(finish(
        rec,
        check_against(Algo::Greedy, inst, &greedy.value, &opt, None),
        g,
    ));

    if !inst.alpha.is_zero() {
        for (p, q) in APPROX_EPSILONS {
            let eps = Rational::new(p, q);
            let (r, ms) = timed(ctx, || fptas_general(inst, &eps, &ctx.opts));
            let sol = r?.solution;
            let rec = make_record(name, inst, "fptas", Some(&eps), &sol, ms, Some(&opt));
            rows.push(finish(
                rec,
                check_against(Algo::Fptas, inst, &sol.value, &opt, Some(&eps)),
                g,
            ));
        }
    }
    if inst.direction == Direction::Max && inst.alpha >= Alpha::ONE_THIRD {
        let eps = Rational::new(TOPDEG_EPSILON.0, TOPDEG_EPSILON.1);
        let (r, ms) = timed(ctx, || fptas_topdegree(inst, &eps, &ctx.opts));
        let sol = r?.solution;
        let rec = make_record(name, inst, "topdeg", Some(&eps), &sol, ms, Some(&opt));
        rows.push(finish(
            rec,
            check_against(Algo::Topdeg, inst, &sol.value, &opt, Some(&eps)),
            g,
        ));
    }
    Ok(rows)
}

fn approx_trial(ctx: &Ctx, args: &ExperimentArgs, t: usize) -> Result<Vec<Row>, CliError> {
    let mut rng = trial_rng(args.seed, t);
    let (graph, name) = random_gnm(&mut rng, 1, args.max_n)?;
    let k = rng.gen_range(1..=graph.n().min(args.max_k.max(1)));
    let (p, q) = APPROX_ALPHAS[t % APPROX_ALPHAS.len()];
    let alpha = Alpha::new(p, q)?;
    let mut rows = Vec::new();
    for dir in [Direction::Max, Direction::Min] {
        let inst = Instance::new(graph.clone(), k, alpha, dir)?;
        rows.extend(approx_rows(ctx, &inst, &name)?);
    }
    Ok(rows)
}

fn prefix_case(t: usize) -> Result<(Direction, Alpha), CliError> {
    let (dir, p, q) = PREFIX_CASES[t % PREFIX_CASES.len()];
    Ok((dir, Alpha::new(p, q)?))
}

fn subexp_trial(ctx: &Ctx, args: &ExperimentArgs, t: usize) -> Result<Vec<Row>, CliError> {
    let mut rng = trial_rng(args.seed, t);
    let max_n = args.max_n.max(4);
    let (graph, name) = if t.is_multiple_of(2) {
        let rows = rng.gen_range(2..=max_n / 2);
        let cols = rng.gen_range(2..=(max_n / rows).max(2));
        (
            gen_grid(rows, cols)?,
            format!("grid rows={rows} cols={cols}"),
        )
    } else {
        let n = rng.gen_range(2..=max_n);
        let m = rng.gen_range(n - 1..=(n + 2).min(n * (n - 1) / 2));
        let s: u64 = rng.gen();
        (
            gen_random_gnm(n, m, s)?,
            format!("gnm n={n} m={m} seed={s}"),
        )
    };
    let k = rng.gen_range(1..=graph.n().min(args.max_k.max(1)));
    let (dir, alpha) = prefix_case(t)?;
    let inst = Instance::new(graph, k, alpha, dir)?;
    let budget = args.width_budget.unwrap_or_else(|| default_width_budget(k));
    let opt = solve_branch_and_bound(&inst, &ctx.opts)?.solution;

    let (r, ms) = timed(ctx, || {
        solve_subexponential_traced(&inst, budget, &ctx.opts)
    });
    let row = match r {
        Ok(report) => {
            let sol = &report.result.solution;
            let rec = make_record(&name, &inst, "subexp", None, sol, ms, Some(&opt.value));
            let check = if sol.value == opt.value {
                "ok"
            } else if report.complete() {
                "violation"
            } else {
                "gated"
            };
            finish(rec, check, &inst.graph)
        }
        Err(Error::GateExhausted { .. }) => {
            let empty = Solution {
                vertices: Vec::new(),
                value: Rational::from_integer(0),
                provenance: opt.provenance,
            };
            let mut rec = make_record(&name, &inst, "subexp", None, &empty, ms, Some(&opt.value));
            rec.value.clear();
            rec.ratio = None;
            rec.branch = "gate-exhausted".into();
            finish(rec, "gated", &inst.graph)
        }
        Err(e) => return Err(e.into()),
    };
    Ok(vec![row])
}

fn exchange_trial(ctx: &Ctx, args: &ExperimentArgs, t: usize) -> Result<Vec<Row>, CliError> {
    let mut rng = trial_rng(args.seed, t);
    let (graph, name) = random_gnm(&mut rng, 1, args.max_n)?;
    let k = rng.gen_range(1..=graph.n().min(args.max_k.max(1)));
    let (dir, alpha) = prefix_case(t)?;
    let inst = Instance::new(graph, k, alpha, dir)?;
    let (w, ms) = timed(ctx, || check_exchange_lemma(&inst, &ctx.opts));
    let w = w?;
    let rec = RunRecord {
        instance: name,
        algo: "exchange".into(),
        k,
        alpha: alpha.to_string(),
        epsilon: None,
        direction: dir.as_str().into(),
        value: format_rational(&w.value),
        vertices: w.solution.clone(),
        wall_ms: ms,
        branch: format!("prefix-{}", w.j),
        oracle: None,
        ratio: None,
        check: String::new(),
    };
    Ok(vec![finish(
        rec,
        if w.dominated { "ok" } else { "violation" },
        &inst.graph,
    )])
}

/// Main rows compare the hub set with the clique; spot rows (small `k`)
/// also solve the instance exactly.
fn gap_rows(
    ctx: &Ctx,
    k: usize,
    hubs: usize,
    mu: Rational,
    spot: bool,
) -> Result<Vec<Row>, CliError> {
    let spec = GapInstanceSpec { k, hubs, mu };
    let report = GapReport::new(&spec)?;
    let inst = gen_gap_instance(&spec)?;
    let g = &inst.graph;
    let name = format!("gap k={k} N={hubs} mu={}", format_rational(&mu));
    let hub_set: Vec<usize> = spec.hub_vertices().take(k).collect();
    let clique: Vec<usize> = spec.clique_vertices().collect();
    let mut rows = Vec::new();

    if !spot && hub_set.len() == k {
        let hub_value = cov_alpha(g, &hub_set, inst.alpha)?;
        let clique_value = cov_alpha(g, &clique, inst.alpha)?;
        let sol = Solution::evaluate(
            g,
            hub_set.clone(),
            inst.alpha,
            Provenance::new(Algorithm::Greedy),
        )?;
        let mut rec = make_record(
            &name,
            &inst,
            "top-degree",
            None,
            &sol,
            0,
            Some(&clique_value),
        );
        rec.branch = "hubs-vs-clique".into();
        let (sp, sq) = GAP_TIGHTNESS_SLACK;
        let r = ratio(Direction::Max, &hub_value, &clique_value);
        let ok = hub_value == report.hub_value
            && clique_value == report.clique_value
            && r < report.tightness_bound + Rational::new(sp, sq);
        rows.push(finish(rec, if ok { "ok" } else { "violation" }, g));
    }

    if spot {
        let hubs_only: Vec<usize> = spec.hub_vertices().collect();
        let (best, ms) = timed(ctx, || {
            solve_brute_force(&inst, Some(&hubs_only), &ctx.opts)
        });
        let best = best?.solution;
        let opt = solve_branch_and_bound(&inst, &ctx.opts)?.solution.value;
        let mut rec = make_record(&name, &inst, "brute", None, &best, ms, Some(&opt));
        rec.branch = "within-hubs".into();
        let ok =
            hub_set.len() < k || (best.value == report.hub_value && opt >= report.clique_value);
        rows.push(finish(rec, if ok { "ok" } else { "violation" }, g));
    }
    Ok(rows)
}

fn gap_suite(ctx: &Ctx, args: &ExperimentArgs) -> Result<Vec<Row>, CliError> {
    let mus = match &args.mu {
        Some(s) => vec![parse_rational(s)?],
        None => GAP_DEFAULT_MUS
            .iter()
            .map(|&(p, q)| Rational::new(p, q))
            .collect(),
    };
    let mut rows = Vec::new();
    for mu in mus {
        rows.extend(gap_rows(
            ctx,
            args.k,
            args.hubs.unwrap_or(args.k),
            mu,
            false,
        )?);
        rows.extend(gap_rows(ctx, GAP_SPOT_K, GAP_SPOT_K, mu, true)?);
    }
    Ok(rows)
}

fn summarize(suite: Suite, records: &[RunRecord], wall_ms: u64) -> Summary {
    let ratios = records
        .iter()
        .filter(|r| suite != Suite::Gap || r.algo == "top-degree")
        .filter_map(|r| r.ratio.as_deref())
        .map(|s| parse_rational(s).expect("emitted ratio parses"));
    // for the gap suite the interesting extreme is the largest ratio
    let worst_ratio = if suite == Suite::Gap {
        ratios.max()
    } else {
        ratios.min()
    };
    Summary {
        suite: suite.as_str().into(),
        runs: records.len(),
        worst_ratio,
        violations: records.iter().filter(|r| r.is_violation()).count(),
        wall_ms,
    }
}

/// Runs a suite on a pool of `threads` workers. Rows come back in trial
/// order whatever the thread count.
pub fn run_experiment(args: &ExperimentArgs, threads: usize) -> Result<ExperimentOutput, CliError> {
    if args.max_n < 1 || args.max_k < 1 {
        return Err(CliError::Usage(
            "--max-n and --max-k must be positive".into(),
        ));
    }
    let ctx = Ctx {
        no_timing: args.no_timing,
        opts: ExactOptions::default(),
    };
    let start = Instant::now();
    let rows: Vec<Row> = with_threads(threads, || -> Result<Vec<Row>, CliError> {
        let trial = |t: usize| match args.suite {
            Suite::Approx => approx_trial(&ctx, args, t),
            Suite::Subexp => subexp_trial(&ctx, args, t),
            Suite::Exchange => exchange_trial(&ctx, args, t),
            Suite::Gap => unreachable!(),
        };
        if args.suite == Suite::Gap {
            return gap_suite(&ctx, args);
        }
        let per_trial: Vec<Vec<Row>> = (0..args.trials)
            .into_par_iter()
            .map(trial)
            .collect::<Result<_, _>>()?;
        Ok(per_trial.into_iter().flatten().collect())
    })??;
    let wall_ms = elapsed_ms(start, args.no_timing);

    let mut records = Vec::with_capacity(rows.len());
    let mut violations = Vec::new();
    for (i, (rec, graph)) in rows.into_iter().enumerate() {
        if let Some(g) = graph {
            violations.push((i, g));
        }
        records.push(rec);
    }
    let summary = summarize(args.suite, &records, wall_ms);
    Ok(ExperimentOutput {
        records,
        summary,
        violations,
    })
}

/// Writes each violating instance as `<dir>/<suite>-<row>.edges` plus a
/// sidecar naming the failed run.
pub fn write_repro(
    args: &ExperimentArgs,
    out: &ExperimentOutput,
) -> Result<Vec<PathBuf>, CliError> {
    let mut paths = Vec::new();
    for (i, graph) in &out.violations {
        let rec = &out.records[*i];
        let sidecar = json!({
            "family": "repro",
            "params": {
                "suite": args.suite.as_str(),
                "instance": rec.instance,
                "algo": rec.algo,
                "k": rec.k,
                "alpha": rec.alpha,
                "epsilon": rec.epsilon,
                "direction": rec.direction,
                "value": rec.value,
                "oracle": rec.oracle,
            },
            "seed": args.seed,
            "n": graph.n(),
            "m": graph.m(),
        });
        let stem = args.repro_dir.join(format!("{}-{i}", args.suite.as_str()));
        let (edges, _) = write_instance(&stem, graph, &sidecar)?;
        paths.push(edges);
    }
    Ok(paths)
}

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use fcgp_cli::args::{ExperimentArgs, Suite};
use fcgp_cli::experiment::{write_repro, ExperimentOutput};
use fcgp_cli::record::{RunRecord, Summary};
use fcgp_core::generators::gen_grid;
use fcgp_core::rational::parse_rational;
use fcgp_core::{cov_alpha, Alpha, Graph};
use serde_json::Value;

fn fcgp(args: &[&str], threads: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_fcgp"));
    cmd.args(args);
    if let Some(t) = threads {
        cmd.env("FCGP_THREADS", t);
    }
    cmd.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn json(o: &Output) -> Value {
    assert!(o.status.success(), "stderr: {}", stderr(o));
    serde_json::from_str(&stdout(o)).unwrap()
}

fn summary_row(csv: &str) -> Vec<String> {
    let last = csv.lines().last().unwrap();
    last.split(',').map(str::to_string).collect()
}

#[test]
fn brute_on_triangle() {
    let dir = tempfile::tempdir().unwrap();
    let k3 = write(dir.path(), "k3.edges", "3 3\n0 1\n0 2\n1 2\n");
    let v = json(&fcgp(
        &[
            "solve",
            k3.to_str().unwrap(),
            "--algo",
            "brute",
            "--k",
            "2",
            "--alpha",
            "1/2",
            "--mode",
            "max",
        ],
        None,
    ));
    assert_eq!(v["value"], "3/2");
    assert_eq!(v["vertices"], serde_json::json!([0, 1]));
}

#[test]
fn topdeg_below_one_third_is_unsupported() {
    let dir = tempfile::tempdir().unwrap();
    let k3 = write(dir.path(), "k3.edges", "3 3\n0 1\n0 2\n1 2\n");
    let o = fcgp(
        &[
            "solve",
            k3.to_str().unwrap(),
            "--algo",
            "topdeg",
            "--k",
            "2",
            "--alpha",
            "1/4",
            "--epsilon",
            "1/2",
        ],
        None,
    );
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("alpha >= 1/3"), "{}", stderr(&o));
}

#[test]
fn greedy_picks_star_centre() {
    let dir = tempfile::tempdir().unwrap();
    let s = write(dir.path(), "star.edges", "5 4\n0 1\n0 2\n0 3\n0 4\n");
    let v = json(&fcgp(
        &[
            "solve",
            s.to_str().unwrap(),
            "--algo",
            "greedy",
            "--k",
            "1",
            "--alpha",
            "1",
            "--mode",
            "max",
        ],
        None,
    ));
    assert_eq!(v["vertices"], serde_json::json!([0]));
    assert_eq!(v["value"], "4/1");
}

#[test]
fn parse_error_names_line() {
    let dir = tempfile::tempdir().unwrap();
    for (name, text) in [
        ("dup.edges", "3 2\n0 1\n0 1\n"),
        ("loop.edges", "3 1\n1 1\n"),
        ("order.edges", "3 1\n2 1\n"),
    ] {
        let p = write(dir.path(), name, text);
        let o = fcgp(
            &[
                "solve",
                p.to_str().unwrap(),
                "--algo",
                "bnb",
                "--k",
                "1",
                "--alpha",
                "1/2",
            ],
            None,
        );
        assert_eq!(o.status.code(), Some(1), "{name}");
        assert!(stderr(&o).contains("line"), "{name}: {}", stderr(&o));
    }
}

#[test]
fn missing_epsilon_is_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let k3 = write(dir.path(), "k3.edges", "3 3\n0 1\n0 2\n1 2\n");
    let o = fcgp(
        &[
            "solve",
            k3.to_str().unwrap(),
            "--algo",
            "fptas",
            "--k",
            "2",
            "--alpha",
            "1/2",
        ],
        None,
    );
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("--epsilon"));
}

#[test]
fn subexp_gate_exhausted_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    let mut text = String::from("6 15\n");
    for u in 0..6 {
        for v in u + 1..6 {
            text.push_str(&format!("{u} {v}\n"));
        }
    }
    let k6 = write(dir.path(), "k6.edges", &text);
    let o = fcgp(
        &[
            "solve",
            k6.to_str().unwrap(),
            "--algo",
            "subexp",
            "--k",
            "3",
            "--alpha",
            "1/2",
            "--width-budget",
            "1",
        ],
        None,
    );
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
}

#[test]
fn every_algorithm_value_recomputes() {
    let dir = tempfile::tempdir().unwrap();
    let grid = gen_grid(3, 4).unwrap();
    let p = write(dir.path(), "grid.edges", &grid.to_edge_list());
    for (algo, mode, alpha) in [
        ("brute", "max", "1/2"),
        ("bnb", "min", "1/6"),
        ("greedy", "max", "3/4"),
        ("fptas", "min", "1/4"),
        ("topdeg", "max", "1/2"),
        ("subexp", "max", "1/2"),
        ("closed-form", "min", "1/3"),
    ] {
        let v = json(&fcgp(
            &[
                "solve",
                p.to_str().unwrap(),
                "--algo",
                algo,
                "--k",
                "3",
                "--alpha",
                alpha,
                "--mode",
                mode,
                "--epsilon",
                "1/2",
                "--oracle",
            ],
            None,
        ));
        let vertices: Vec<usize> = serde_json::from_value(v["vertices"].clone()).unwrap();
        let value = parse_rational(v["value"].as_str().unwrap()).unwrap();
        let alpha: Alpha = alpha.parse().unwrap();
        assert_eq!(cov_alpha(&grid, &vertices, alpha).unwrap(), value, "{algo}");
        assert_eq!(v["check"], "ok", "{algo}");
        assert!(v["ratio"].is_string());
    }
}

#[test]
fn solve_csv_output() {
    let dir = tempfile::tempdir().unwrap();
    let k3 = write(dir.path(), "k3.edges", "3 3\n0 1\n0 2\n1 2\n");
    let o = fcgp(
        &[
            "solve",
            k3.to_str().unwrap(),
            "--algo",
            "bnb",
            "--k",
            "2",
            "--alpha",
            "1/2",
            "--out",
            "csv",
            "--no-timing",
        ],
        None,
    );
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "# fcgp-csv v1");
    assert!(lines[2].starts_with("instance,algo,k,alpha"));
    assert!(
        lines[3].ends_with(",bnb,2,1/2,,max,3/2,0 1,0,bnb,,,"),
        "{}",
        lines[3]
    );
}

#[test]
fn generate_examples_and_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let stem = dir.path().join("gap");
    let o = fcgp(
        &[
            "generate",
            "--family",
            "gap",
            "--k",
            "4",
            "--N",
            "3",
            "--mu",
            "1/6",
            "--out",
            stem.to_str().unwrap(),
        ],
        None,
    );
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o).lines().count(), 2);
    let edges = std::fs::read_to_string(dir.path().join("gap.edges")).unwrap();
    let g = Graph::parse_edge_list(&edges).unwrap();
    assert_eq!(g.n(), 19);
    assert_eq!(g.to_edge_list(), edges);
    let meta: Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("gap.json")).unwrap())
            .unwrap();
    assert_eq!(meta["family"], "gap");
    assert_eq!(meta["n"], 19);
    assert_eq!(meta["m"], g.m());
    assert_eq!(meta["params"]["mu"], "1/6");

    let stem = dir.path().join("grid");
    let o = fcgp(
        &[
            "generate",
            "--family",
            "grid",
            "--rows",
            "2",
            "--cols",
            "2",
            "--out",
            stem.to_str().unwrap(),
        ],
        None,
    );
    assert!(o.status.success());
    let g =
        Graph::parse_edge_list(&std::fs::read_to_string(dir.path().join("grid.edges")).unwrap())
            .unwrap();
    assert_eq!((g.n(), g.m()), (4, 4));
}

#[test]
fn generate_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let mut outputs = Vec::new();
    for run in 0..2 {
        let stem = dir.path().join(format!("r{run}"));
        let o = fcgp(
            &[
                "generate",
                "--family",
                "regular",
                "--n",
                "16",
                "--d",
                "3",
                "--seed",
                "11",
                "--out",
                stem.to_str().unwrap(),
            ],
            None,
        );
        assert!(o.status.success(), "{}", stderr(&o));
        outputs.push((
            std::fs::read(dir.path().join(format!("r{run}.edges"))).unwrap(),
            std::fs::read(dir.path().join(format!("r{run}.json"))).unwrap(),
        ));
    }
    assert_eq!(outputs[0], outputs[1]);
}

#[test]
fn generate_rejects_bad_parameters() {
    let dir = tempfile::tempdir().unwrap();
    let stem = dir.path().join("x");
    for args in [
        vec!["generate", "--family", "gap", "--k", "1", "--mu", "1/6"],
        vec!["generate", "--family", "gnm", "--n", "3", "--m", "4"],
        vec!["generate", "--family", "regular", "--n", "5", "--d", "3"],
        vec!["generate", "--family", "grid", "--rows", "2"],
    ] {
        let mut args = args.clone();
        args.extend(["--out", stem.to_str().unwrap()]);
        let o = fcgp(&args, None);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
    }
}

#[test]
fn approx_and_exchange_sweeps_are_clean() {
    for suite in ["approx", "exchange", "subexp"] {
        let o = fcgp(
            &[
                "experiment",
                "--suite",
                suite,
                "--max-n",
                "12",
                "--trials",
                "60",
                "--no-timing",
            ],
            None,
        );
        assert!(o.status.success(), "{suite}: {}", stderr(&o));
        let out = stdout(&o);
        assert!(out.starts_with("# fcgp-csv v1\n"));
        let summary = summary_row(&out);
        assert_eq!(summary[0], "summary");
        assert_eq!(summary[12], "violations=0", "{suite}");
    }
}

#[test]
fn gap_sweep_reports_closed_form_ratio() {
    let o = fcgp(
        &[
            "experiment",
            "--suite",
            "gap",
            "--k",
            "30",
            "--mu",
            "1/10",
            "--no-timing",
        ],
        None,
    );
    assert!(o.status.success(), "{}", stderr(&o));
    let summary = summary_row(&stdout(&o));
    // 2αk / ((1 − α)(k − 1)) with α = 7/30, k = 30
    assert_eq!(summary[11], "420/667");
    assert_eq!(summary[12], "violations=0");
}

#[test]
fn experiment_output_independent_of_threads() {
    let args = [
        "experiment",
        "--suite",
        "approx",
        "--max-n",
        "10",
        "--trials",
        "30",
        "--seed",
        "4",
        "--no-timing",
    ];
    let one = fcgp(&args, Some("1"));
    let four = fcgp(&args, Some("4"));
    assert!(one.status.success());
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn violations_are_written_for_repro() {
    let dir = tempfile::tempdir().unwrap();
    let args = ExperimentArgs {
        suite: Suite::Approx,
        trials: 1,
        seed: 0,
        max_n: 4,
        max_k: 2,
        k: 30,
        mu: None,
        hubs: None,
        width_budget: None,
        no_timing: true,
        repro_dir: dir.path().join("repro"),
    };
    let graph = gen_grid(2, 3).unwrap();
    let record = RunRecord {
        instance: "grid rows=2 cols=3".into(),
        algo: "greedy".into(),
        k: 2,
        alpha: "1/2".into(),
        epsilon: None,
        direction: "max".into(),
        value: "1/1".into(),
        vertices: vec![0, 1],
        wall_ms: 0,
        branch: "greedy".into(),
        oracle: Some("9/1".into()),
        ratio: Some("1/9".into()),
        check: "violation".into(),
    };
    let out = ExperimentOutput {
        records: vec![record],
        summary: Summary {
            suite: "approx".into(),
            runs: 1,
            worst_ratio: None,
            violations: 1,
            wall_ms: 0,
        },
        violations: vec![(0, graph.clone())],
    };
    let paths = write_repro(&args, &out).unwrap();
    assert_eq!(paths.len(), 1);
    let back = Graph::parse_edge_list(&std::fs::read_to_string(&paths[0]).unwrap()).unwrap();
    assert_eq!(back, graph);
    let meta: Value =
        serde_json::from_str(&std::fs::read_to_string(paths[0].with_extension("json")).unwrap())
            .unwrap();
    assert_eq!(meta["params"]["algo"], "greedy");
}

#[test]
fn decompose_dump() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "c4.edges", "4 4\n0 1\n1 2\n2 3\n0 3\n");
    let o = fcgp(&["decompose", p.to_str().unwrap()], None);
    assert!(o.status.success());
    let out = stdout(&o);
    assert_eq!(out.lines().next(), Some("# width 2"));
    assert_eq!(
        out.lines().filter(|l| l.contains("introduce-edge")).count(),
        4
    );
    assert!(out.lines().last().unwrap().ends_with(" -"));
}

use std::path::{Path, PathBuf};

use fcgp_core::generators::{
    gen_gap_instance, gen_grid, gen_random_gnm, gen_regular, GapInstanceSpec, GapReport,
};
use fcgp_core::rational::{format_rational, parse_rational};
use fcgp_core::Graph;
use serde_json::{json, Value};

use crate::args::{Family, GenerateArgs};
use crate::CliError;

impl Family {
    pub fn as_str(self) -> &'static str {
        match self {
            Family::Gap => "gap",
            Family::Gnm => "gnm",
            Family::Grid => "grid",
            Family::Regular => "regular",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Generated {
    pub graph: Graph,
    /// `{family, params, seed, n, m}`, plus `closed_form` for gap instances.
    pub sidecar: Value,
}

fn required<T: Copy>(value: Option<T>, flag: &str, family: Family) -> Result<T, CliError> {
    value.ok_or_else(|| {
        CliError::Usage(format!(
            "--{flag} is required for --family {}",
            family.as_str()
        ))
    })
}

pub fn generate(args: &GenerateArgs) -> Result<Generated, CliError> {
    let family = args.family;
    let (graph, params, closed_form) = match family {
        Family::Gap => {
            let k = required(args.k, "k", family)?;
            let mu = parse_rational(
                args.mu
                    .as_deref()
                    .ok_or_else(|| CliError::Usage("--mu is required for --family gap".into()))?,
            )?;
            let hubs = args.hubs.unwrap_or(k);
            let spec = GapInstanceSpec { k, hubs, mu };
            let instance = gen_gap_instance(&spec)?;
            let report = GapReport::new(&spec)?;
            let closed_form = json!({
                "alpha": format_rational(&report.alpha),
                "hub_value": format_rational(&report.hub_value),
                "clique_value": format_rational(&report.clique_value),
                "ratio": format_rational(&report.ratio),
                "claimed_bound": format_rational(&report.claimed_bound),
                "tightness_bound": format_rational(&report.tightness_bound),
            });
            let params = json!({"k": k, "N": hubs, "mu": format_rational(&mu)});
            (instance.graph, params, Some(closed_form))
        }
        Family::Gnm => {
            let n = required(args.n, "n", family)?;
            let m = required(args.m, "m", family)?;
            (
                gen_random_gnm(n, m, args.seed)?,
                json!({"n": n, "m": m}),
                None,
            )
        }
        Family::Grid => {
            let rows = required(args.rows, "rows", family)?;
            let cols = required(args.cols, "cols", family)?;
            (
                gen_grid(rows, cols)?,
                json!({"rows": rows, "cols": cols}),
                None,
            )
        }
        Family::Regular => {
            let n = required(args.n, "n", family)?;
            let d = required(args.d, "d", family)?;
            (gen_regular(n, d, args.seed)?, json!({"n": n, "d": d}), None)
        }
    };
    let mut sidecar = json!({
        "family": family.as_str(),
        "params": params,
        "seed": args.seed,
        "n": graph.n(),
        "m": graph.m(),
    });
    if let Some(cf) = closed_form {
        sidecar["closed_form"] = cf;
    }
    Ok(Generated { graph, sidecar })
}

fn with_suffix(stem: &Path, suffix: &str) -> PathBuf {
    let mut s = stem.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

/// Writes `<stem>.edges` and `<stem>.json`, returning both paths.
pub fn write_instance(
    stem: &Path,
    graph: &Graph,
    sidecar: &Value,
) -> Result<(PathBuf, PathBuf), CliError> {
    if let Some(dir) = stem.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir.display().to_string(), e))?;
    }
    let edges = with_suffix(stem, ".edges");
    let meta = with_suffix(stem, ".json");
    std::fs::write(&edges, graph.to_edge_list())
        .map_err(|e| CliError::io(edges.display().to_string(), e))?;
    let mut text = serde_json::to_string_pretty(sidecar).expect("sidecar serializes");
    text.push('\n');
    std::fs::write(&meta, text).map_err(|e| CliError::io(meta.display().to_string(), e))?;
    Ok((edges, meta))
}

pub fn run_generate(args: &GenerateArgs) -> Result<(PathBuf, PathBuf), CliError> {
    let generated = generate(args)?;
    let stem = args
        .out
        .clone()
        .unwrap_or_else(|| PathBuf::from(format!("{}-{}", args.family.as_str(), args.seed)));
    write_instance(&stem, &generated.graph, &generated.sidecar)
}

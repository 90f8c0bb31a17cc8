//! `search`: exact optima over a parameter grid.

use clap::{Args, ValueEnum};
use overlap_lab::bounds::WeightVector;
use overlap_lab::family::reduce_to_weighted;
use overlap_lab::search::{exact_f_shifted_with, oracle_f, ExtremalRecord, DEFAULT_ORACLE_CANDIDATES};
use overlap_lab::{rational, Error, SearchLimits, SolverKind};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::cache::DownsetCache;
use crate::grid::{parse_opt, required};
use crate::report::{group_rows, load_rows, run_cells, Emitter, OutputArgs, Summary};
use crate::Failure;

const HEADER: &[&str] = &[
    "key", "n", "k", "s", "weights", "m", "solver", "status", "optimum", "nodes", "complete", "witness",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SolverChoice {
    Oracle,
    Shifted,
    Both,
}

#[derive(Debug, Clone, Args)]
pub struct LimitArgs {
    /// Stop each search after this many nodes and report it incomplete.
    #[arg(long)]
    pub limit_nodes: Option<u64>,
    /// Cap on enumerated shifted families.
    #[arg(long, default_value_t = overlap_lab::family::DEFAULT_DOWNSET_LIMIT)]
    pub limit_downsets: u64,
    /// Cap on the oracle's raw search space, (s + 2)^C(n, k).
    #[arg(long, default_value_t = DEFAULT_ORACLE_CANDIDATES)]
    pub limit_candidates: u128,
    /// Start from the empty chain instead of the best construction.
    #[arg(long)]
    pub no_warm_start: bool,
}

impl LimitArgs {
    pub fn limits(&self) -> SearchLimits {
        SearchLimits {
            max_nodes: self.limit_nodes,
            max_downsets: self.limit_downsets,
            max_oracle_candidates: self.limit_candidates,
            warm_start: !self.no_warm_start,
        }
    }

    pub fn config(&self) -> serde_json::Value {
        json!({
            "limit_nodes": self.limit_nodes,
            "limit_downsets": self.limit_downsets,
            "limit_candidates": self.limit_candidates.to_string(),
            "warm_start": !self.no_warm_start,
        })
    }
}

#[derive(Debug, Clone, Args)]
pub struct SearchArgs {
    #[arg(long)]
    pub n: String,
    #[arg(long)]
    pub k: String,
    /// Number of families minus one; implied by `--weights`.
    #[arg(long)]
    pub s: Option<String>,
    /// Weight vector `p_0,...,p_s`; repeat for several.
    #[arg(long, conflicts_with_all = ["p", "m"])]
    pub weights: Vec<String>,
    /// Leading weight of `(p, 1, ..., 1)`.
    #[arg(long, conflicts_with = "m")]
    pub p: Option<String>,
    /// Number of families of the unweighted problem, solved through
    /// weights `(m - s, 1, ..., 1)`.
    #[arg(long)]
    pub m: Option<String>,
    #[arg(long, value_enum, default_value_t = SolverChoice::Shifted)]
    pub solver: SolverChoice,
    #[command(flatten)]
    pub limits: LimitArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchRow {
    pub key: String,
    pub n: usize,
    pub k: usize,
    pub s: usize,
    pub weights: String,
    pub m: Option<usize>,
    pub solver: String,
    /// `ok`, `disagree`, `incomplete`, `limit` or `error`.
    pub status: String,
    pub optimum: String,
    pub nodes: u64,
    pub complete: bool,
    /// Witness chain as JSON, or the error message.
    pub witness: String,
}

#[derive(Debug, Clone)]
struct Cell {
    n: usize,
    k: usize,
    s: usize,
    m: Option<usize>,
    weights: Result<WeightVector, String>,
}

impl Cell {
    fn key(&self) -> String {
        match self.m {
            Some(m) => format!("n={},k={},s={},m={m}", self.n, self.k, self.s),
            None => match &self.weights {
                Ok(w) => format!("n={},k={},p={}", self.n, self.k, w.label()),
                Err(_) => format!("n={},k={},s={}", self.n, self.k, self.s),
            },
        }
    }
}

fn cells(args: &SearchArgs) -> Result<Vec<Cell>, Failure> {
    let ns = required("n", &parse_opt("n", &Some(args.n.clone()))?)?;
    let ks = required("k", &parse_opt("k", &Some(args.k.clone()))?)?;
    let ss = parse_opt("s", &args.s)?;
    // (s, m, weights) per inner cell
    let mut inner: Vec<(usize, Option<usize>, Result<WeightVector, String>)> = Vec::new();
    if !args.weights.is_empty() {
        for text in &args.weights {
            let w = WeightVector::parse(text).map_err(Failure::from_core)?;
            if let Some(ss) = &ss {
                if !ss.contains(&(w.s() as u64)) {
                    return Err(Failure::Usage(format!("--weights {text} does not have s + 1 entries for --s")));
                }
            }
            inner.push((w.s(), None, Ok(w)));
        }
    } else if let Some(ps) = parse_opt("p", &args.p)? {
        for &p in &ps {
            for &s in &required("s", &ss)? {
                inner.push((s as usize, None, WeightVector::leading(p, s as usize).map_err(|e| e.to_string())));
            }
        }
    } else if let Some(ms) = parse_opt("m", &args.m)? {
        for &m in &ms {
            for &s in &required("s", &ss)? {
                let w = reduce_to_weighted(m as usize, s as usize).map_err(|e| e.to_string());
                inner.push((s as usize, Some(m as usize), w));
            }
        }
    } else {
        return Err(Failure::Usage("one of --weights, --p or --m is required".into()));
    }
    let mut out = Vec::new();
    for &n in &ns {
        for &k in &ks {
            for (s, m, w) in &inner {
                out.push(Cell { n: n as usize, k: k as usize, s: *s, m: *m, weights: w.clone() });
            }
        }
    }
    Ok(out)
}

fn error_status(e: &Error) -> &'static str {
    match e {
        Error::InstanceTooLarge { .. } | Error::EnumerationCap { .. } => "limit",
        _ => "error",
    }
}

fn row(cell: &Cell, solver: SolverKind, result: &overlap_lab::Result<ExtremalRecord>) -> SearchRow {
    let weights = cell.weights.as_ref().map(WeightVector::label).unwrap_or_default();
    let base = SearchRow {
        key: cell.key(),
        n: cell.n,
        k: cell.k,
        s: cell.s,
        weights,
        m: cell.m,
        solver: solver.name().into(),
        status: String::new(),
        optimum: String::new(),
        nodes: 0,
        complete: false,
        witness: String::new(),
    };
    match result {
        Ok(r) => SearchRow {
            status: if r.complete { "ok" } else { "incomplete" }.into(),
            optimum: rational::format(&r.optimum),
            nodes: r.nodes_explored,
            complete: r.complete,
            witness: serde_json::to_string(&r.witness).unwrap_or_default(),
            ..base
        },
        Err(e) => SearchRow { status: error_status(e).into(), witness: e.to_string(), ..base },
    }
}

fn compute(cell: &Cell, solvers: &[SolverKind], limits: &SearchLimits, cache: &DownsetCache) -> Vec<SearchRow> {
    let weights = match &cell.weights {
        Ok(w) => w,
        Err(msg) => {
            let e = Error::InvalidParameter(msg.clone());
            return solvers.iter().map(|&s| row(cell, s, &Err(clone_err(&e)))).collect();
        }
    };
    let mut rows: Vec<SearchRow> = solvers
        .iter()
        .map(|&solver| {
            let result = match solver {
                SolverKind::Oracle => oracle_f(cell.n, cell.k, weights, limits),
                SolverKind::Shifted => {
                    if cell.k == 0 || cell.k > cell.n || cell.n > 64 {
                        Err(Error::InvalidParameter(format!("need 1 <= k <= n <= 64, got n={}, k={}", cell.n, cell.k)))
                    } else {
                        match cache.get(cell.n, cell.k, limits.max_downsets).as_ref() {
                            Ok(downsets) => exact_f_shifted_with(downsets, cell.n, cell.k, weights, limits),
                            Err(e) => Err(clone_err(e)),
                        }
                    }
                }
            };
            row(cell, solver, &result)
        })
        .collect();
    if rows.len() == 2 && rows.iter().all(|r| r.status == "ok") && rows[0].optimum != rows[1].optimum {
        rows.iter_mut().for_each(|r| r.status = "disagree".into());
    }
    rows
}

fn clone_err(e: &Error) -> Error {
    match e {
        Error::EnumerationCap { limit } => Error::EnumerationCap { limit: *limit },
        Error::InstanceTooLarge { solver, detail } => Error::InstanceTooLarge { solver, detail: detail.clone() },
        other => Error::InvalidParameter(other.to_string()),
    }
}

pub fn run(args: &SearchArgs) -> Result<Summary, Failure> {
    let cells = cells(args)?;
    let solvers = match args.solver {
        SolverChoice::Oracle => vec![SolverKind::Oracle],
        SolverChoice::Shifted => vec![SolverKind::Shifted],
        SolverChoice::Both => vec![SolverKind::Oracle, SolverKind::Shifted],
    };
    let limits = args.limits.limits();
    let cache = DownsetCache::from_env();
    let resumed = match &args.out.resume {
        Some(path) => group_rows(load_rows::<SearchRow>(path, args.out.format)?, |r| r.key.clone()),
        None => Default::default(),
    };
    let mut emitter = Emitter::new(&args.out, HEADER)?;
    run_cells(
        &cells,
        Cell::key,
        resumed,
        |c| compute(c, &solvers, &limits, &cache),
        &mut emitter,
        args.out.jobs,
    )?;
    let rows = emitter.rows();
    let count = |status: &str| rows.iter().filter(|r| r.status == status).count();
    let summary = Summary {
        rows: rows.len(),
        pass: count("ok"),
        fail: count("disagree"),
        incomplete: count("incomplete") + count("limit"),
        errors: count("error"),
        exit_code: 0,
    }
    .finish();
    let config = json!({
        "command": "search",
        "n": args.n, "k": args.k, "s": args.s, "weights": args.weights, "p": args.p, "m": args.m,
        "solver": args.solver,
        "limits": args.limits.config(),
    });
    emitter.finish(&config, &summary)?;
    Ok(summary)
}

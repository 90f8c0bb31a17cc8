//! `verify`: named acceptance suites.

use clap::Args;
use overlap_lab::suites::{self, Cell, SuiteConfig, SuiteRow, FAIL, INCOMPLETE, PASS};
use serde_json::json;

use crate::report::{group_rows, load_rows, run_cells, Emitter, OutputArgs, Summary};
use crate::search::LimitArgs;
use crate::Failure;

const HEADER: &[&str] = &["suite", "cell", "key", "status", "expected", "observed", "detail"];

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    /// Suite name, or `all`.
    #[arg(long)]
    pub suite: String,
    /// Master seed of the randomized suites; drawn at random when absent.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Trials per cell of the randomized suites, overriding the defaults.
    #[arg(long)]
    pub trials: Option<u64>,
    /// Refuse to run randomized suites without an explicit seed.
    #[arg(long)]
    pub ci: bool,
    #[command(flatten)]
    pub limits: LimitArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

fn cell_key(suite: &str, cell: &str) -> String {
    format!("{suite}/{cell}")
}

pub fn run(args: &VerifyArgs) -> Result<Summary, Failure> {
    let names = suites::suite_names(&args.suite).map_err(Failure::from_core)?;
    if args.ci && args.seed.is_none() && names.iter().any(|n| suites::is_randomized(n)) {
        return Err(Failure::Usage("--ci requires --seed for randomized suites".into()));
    }
    if args.trials == Some(0) {
        return Err(Failure::Usage("--trials must be positive".into()));
    }
    let config = SuiteConfig {
        seed: args.seed.unwrap_or_else(rand::random),
        trials: args.trials,
        limits: args.limits.limits(),
    };
    let mut cells: Vec<Cell> = Vec::new();
    for name in &names {
        cells.extend(suites::cells(name, &config).map_err(Failure::from_core)?);
    }
    let resumed = match &args.out.resume {
        Some(path) => group_rows(load_rows::<SuiteRow>(path, args.out.format)?, |r| cell_key(&r.suite, &r.cell)),
        None => Default::default(),
    };
    let mut emitter = Emitter::new(&args.out, HEADER)?;
    let compute = |cell: &Cell| {
        suites::run_cell(cell, &config).unwrap_or_else(|e| {
            let status = match e {
                overlap_lab::Error::InstanceTooLarge { .. } | overlap_lab::Error::EnumerationCap { .. } => INCOMPLETE,
                _ => FAIL,
            };
            vec![SuiteRow {
                suite: cell.suite.into(),
                cell: cell.key.clone(),
                key: cell.key.clone(),
                status: status.into(),
                expected: String::new(),
                observed: String::new(),
                detail: format!("error={e}"),
            }]
        })
    };
    run_cells(&cells, |c| cell_key(c.suite, &c.key), resumed, compute, &mut emitter, args.out.jobs)?;
    let rows = emitter.rows();
    let count = |status: &str| rows.iter().filter(|r| r.status == status).count();
    let summary = Summary {
        rows: rows.len(),
        pass: count(PASS),
        fail: count(FAIL),
        incomplete: count(INCOMPLETE),
        errors: 0,
        exit_code: 0,
    }
    .finish();
    let config_json = json!({
        "command": "verify",
        "suite": args.suite,
        "seed": config.seed,
        "trials": args.trials,
        "limits": args.limits.config(),
    });
    emitter.finish(&config_json, &summary)?;
    Ok(summary)
}

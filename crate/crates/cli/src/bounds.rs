//! `bounds`: closed-form values over a parameter grid.

use clap::Args;
use overlap_lab::bounds::{self, BoundReport, WeightVector};
use overlap_lab::rational;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::grid::{parse_opt, required};
use crate::report::{group_rows, load_rows, run_cells, Emitter, OutputArgs, Summary};
use crate::Failure;

pub const NAMES: &[&str] = &[
    "hilton", "thm1", "g", "g-argmax", "u-zero", "thm2", "thm3", "d-vec", "thm4", "gb-emc", "bde", "conj1", "conj2",
];

const HEADER: &[&str] = &["key", "name", "params", "value", "flags", "construction"];

#[derive(Debug, Clone, Args)]
pub struct BoundsArgs {
    /// Formula to evaluate.
    #[arg(long)]
    pub name: String,
    #[arg(long)]
    pub n: Option<String>,
    #[arg(long)]
    pub k: Option<String>,
    #[arg(long)]
    pub m: Option<String>,
    #[arg(long)]
    pub p: Option<String>,
    #[arg(long)]
    pub s: Option<String>,
    #[arg(long)]
    pub i: Option<String>,
    #[arg(long)]
    pub l: Option<String>,
    /// Weight vector such as `2,1` or `5/2,1,1`; repeat for several.
    #[arg(long)]
    pub weights: Vec<String>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundsRow {
    pub key: String,
    pub name: String,
    pub params: String,
    pub value: String,
    pub flags: String,
    pub construction: String,
}

/// Integer parameters of each formula, outermost grid axis first; `"w"`
/// marks a weight vector axis.
fn params_of(name: &str) -> &'static [&'static str] {
    match name {
        "hilton" => &["n", "k", "m"],
        "thm1" | "thm2" | "conj1" | "g-argmax" => &["n", "k", "p", "s"],
        "g" => &["n", "k", "p", "s", "i"],
        "u-zero" => &["n", "k", "p"],
        "thm3" => &["k", "w"],
        "d-vec" => &["w"],
        "thm4" => &["n", "k", "w"],
        "gb-emc" | "conj2" => &["n", "k", "s"],
        "bde" => &["m", "s", "l"],
        _ => &[],
    }
}

#[derive(Debug, Clone)]
struct Cell {
    values: Vec<(&'static str, u64)>,
    weights: Option<WeightVector>,
}

impl Cell {
    fn get(&self, name: &str) -> u64 {
        self.values.iter().find(|(n, _)| *n == name).map(|&(_, v)| v).expect("grid axis")
    }

    fn key(&self) -> String {
        let mut parts: Vec<String> = self.values.iter().map(|(n, v)| format!("{n}={v}")).collect();
        if let Some(w) = &self.weights {
            parts.push(format!("p={}", w.label()));
        }
        parts.join(",")
    }
}

fn evaluate(name: &str, c: &Cell) -> overlap_lab::Result<BoundsRow> {
    let g = |p: &str| c.get(p);
    let w = || c.weights.as_ref().expect("weights axis");
    let report: BoundReport = match name {
        "hilton" => bounds::hilton_bound(g("n"), g("k"), g("m"))?,
        "thm1" => bounds::thm1_bound(g("n"), g("k"), g("p"), g("s"))?,
        "g" => bounds::g(g("n"), g("k"), g("p"), g("s"), g("i"))?,
        "g-argmax" => {
            let a = bounds::g_argmax(g("n"), g("k"), g("p"), g("s"))?;
            let flags = vec![
                format!("argmax={}", a.argmax),
                if a.at_endpoint { "endpoint" } else { "interior" }.to_string(),
            ];
            return Ok(row(c, name, c.key(), rational::format(&a.value), flags, None));
        }
        "u-zero" => {
            let (lo, hi) = bounds::u_zero(g("n"), g("k"), g("p"))?;
            let flags = vec![format!("hi={}", rational::format(&hi))];
            return Ok(row(c, name, c.key(), rational::format(&lo), flags, None));
        }
        "thm2" => bounds::thm2_value(g("n"), g("k"), g("p"), g("s"))?,
        "thm3" => bounds::thm3_value(g("k"), w())?,
        "d-vec" => {
            let d = bounds::d_vec(w())?;
            return Ok(row(c, name, c.key(), rational::format(&d), Vec::new(), None));
        }
        "thm4" => bounds::thm4_value(g("n"), g("k"), w())?,
        "gb-emc" => bounds::gb_emc_bound(g("n"), g("k"), g("s"))?,
        "bde" => {
            let (first, second) = bounds::bde_check(g("m"), g("s"), g("l"))?;
            let flags = vec![format!("first={first}"), format!("second={second}")];
            let value = if first && second { "1" } else { "0" };
            return Ok(row(c, name, c.key(), value.into(), flags, None));
        }
        "conj1" => bounds::conj1_value(g("n"), g("k"), g("p"), g("s"))?,
        "conj2" => bounds::conj2_bound(g("n"), g("k"), g("s"))?,
        _ => unreachable!("names are validated"),
    };
    Ok(row(c, name, report.params, rational::format(&report.value), report.flags, report.construction))
}

fn row(c: &Cell, name: &str, params: String, value: String, flags: Vec<String>, construction: Option<String>) -> BoundsRow {
    BoundsRow {
        key: c.key(),
        name: name.into(),
        params,
        value,
        flags: flags.join(";"),
        construction: construction.unwrap_or_default(),
    }
}

fn cells(args: &BoundsArgs) -> Result<Vec<Cell>, Failure> {
    let axes = params_of(&args.name);
    let given: [(&str, &Option<String>); 7] = [
        ("n", &args.n),
        ("k", &args.k),
        ("m", &args.m),
        ("p", &args.p),
        ("s", &args.s),
        ("i", &args.i),
        ("l", &args.l),
    ];
    for (flag, value) in given {
        if value.is_some() && !axes.contains(&flag) {
            return Err(Failure::Usage(format!("--{flag} is not a parameter of {}", args.name)));
        }
    }
    if !args.weights.is_empty() && !axes.contains(&"w") {
        return Err(Failure::Usage(format!("--weights is not a parameter of {}", args.name)));
    }
    let mut out = vec![Cell { values: Vec::new(), weights: None }];
    for &axis in axes {
        if axis == "w" {
            if args.weights.is_empty() {
                return Err(Failure::Usage("--weights is required".into()));
            }
            let ws = args
                .weights
                .iter()
                .map(|t| WeightVector::parse(t).map_err(Failure::from_core))
                .collect::<Result<Vec<_>, _>>()?;
            out = out
                .into_iter()
                .flat_map(|c| ws.iter().map(move |w| Cell { weights: Some(w.clone()), ..c.clone() }))
                .collect();
            continue;
        }
        let text = given.iter().find(|(f, _)| *f == axis).map(|(_, v)| *v).expect("known axis");
        let values = required(axis, &parse_opt(axis, text)?)?;
        out = out
            .into_iter()
            .flat_map(|c| {
                values.iter().map(move |&v| {
                    let mut c = c.clone();
                    c.values.push((axis, v));
                    c
                })
            })
            .collect();
    }
    Ok(out)
}

pub fn run(args: &BoundsArgs) -> Result<Summary, Failure> {
    if !NAMES.contains(&args.name.as_str()) {
        return Err(Failure::Usage(format!(
            "unknown formula {:?}; expected one of {}",
            args.name,
            NAMES.join(", ")
        )));
    }
    let cells = cells(args)?;
    let resumed = match &args.out.resume {
        Some(path) => group_rows(load_rows::<BoundsRow>(path, args.out.format)?, |r| r.key.clone()),
        None => Default::default(),
    };
    let mut emitter = Emitter::new(&args.out, HEADER)?;
    let name = args.name.as_str();
    let compute = |c: &Cell| {
        vec![evaluate(name, c).unwrap_or_else(|e| row(c, name, c.key(), String::new(), vec![format!("error={e}")], None))]
    };
    run_cells(&cells, Cell::key, resumed, compute, &mut emitter, args.out.jobs)?;
    let errors = emitter.rows().iter().filter(|r| r.flags.starts_with("error=")).count();
    let summary = Summary {
        rows: emitter.rows().len(),
        pass: emitter.rows().len() - errors,
        errors,
        ..Summary::default()
    }
    .finish();
    let config = json!({
        "command": "bounds",
        "name": args.name,
        "n": args.n, "k": args.k, "m": args.m, "p": args.p, "s": args.s, "i": args.i, "l": args.l,
        "weights": args.weights,
    });
    emitter.finish(&config, &summary)?;
    Ok(summary)
}

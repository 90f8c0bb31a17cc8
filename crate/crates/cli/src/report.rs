//! Report emission. CSV streams row by row; JSON is written once complete.

use std::collections::HashMap;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use rayon::prelude::*;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::Failure;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Report encoding.
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Reuse rows from an earlier report in the same format; their cells are
    /// not recomputed.
    #[arg(long)]
    pub resume: Option<PathBuf>,
    /// Worker threads for independent grid cells.
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub rows: usize,
    pub pass: usize,
    pub fail: usize,
    pub incomplete: usize,
    pub errors: usize,
    pub exit_code: i32,
}

impl Summary {
    /// Violations take precedence over usage errors, which take precedence
    /// over resource limits.
    pub fn finish(mut self) -> Self {
        self.exit_code = if self.fail > 0 {
            1
        } else if self.errors > 0 {
            2
        } else if self.incomplete > 0 {
            3
        } else {
            0
        };
        self
    }
}

#[derive(Serialize)]
struct JsonReport<'a, R> {
    tool_version: &'static str,
    config: &'a serde_json::Value,
    rows: &'a [R],
    summary: &'a Summary,
}

#[derive(Deserialize)]
struct LoadedReport<R> {
    rows: Vec<R>,
}

/// Rows of an earlier report. Unreadable trailing rows of an interrupted
/// CSV stream are dropped.
pub fn load_rows<R: DeserializeOwned>(path: &Path, format: Format) -> Result<Vec<R>, Failure> {
    let io_err = |e: &dyn std::fmt::Display| Failure::Usage(format!("cannot read {}: {e}", path.display()));
    match format {
        Format::Csv => {
            let mut reader = csv::Reader::from_path(path).map_err(|e| io_err(&e))?;
            Ok(reader.deserialize().map_while(|r| r.ok()).collect())
        }
        Format::Json => {
            let text = std::fs::read_to_string(path).map_err(|e| io_err(&e))?;
            let report: LoadedReport<R> = serde_json::from_str(&text).map_err(|e| io_err(&e))?;
            Ok(report.rows)
        }
    }
}

enum Sink {
    Csv(Box<csv::Writer<Box<dyn Write>>>),
    Json(Box<dyn Write>),
}

pub struct Emitter<R> {
    sink: Sink,
    rows: Vec<R>,
}

impl<R: Serialize> Emitter<R> {
    pub fn new(out: &OutputArgs, header: &[&str]) -> Result<Self, Failure> {
        let target: Box<dyn Write> = match &out.output {
            Some(path) => Box::new(BufWriter::new(File::create(path).map_err(|e| {
                Failure::Usage(format!("cannot create {}: {e}", path.display()))
            })?)),
            None => Box::new(io::stdout()),
        };
        let sink = match out.format {
            Format::Csv => {
                let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(target);
                w.write_record(header).map_err(Failure::io)?;
                Sink::Csv(Box::new(w))
            }
            Format::Json => Sink::Json(target),
        };
        Ok(Emitter { sink, rows: Vec::new() })
    }

    pub fn push(&mut self, rows: Vec<R>) -> Result<(), Failure> {
        if let Sink::Csv(w) = &mut self.sink {
            for row in &rows {
                w.serialize(row).map_err(Failure::io)?;
            }
            w.flush().map_err(Failure::io)?;
        }
        self.rows.extend(rows);
        Ok(())
    }

    pub fn rows(&self) -> &[R] {
        &self.rows
    }

    pub fn finish(self, config: &serde_json::Value, summary: &Summary) -> Result<(), Failure> {
        match self.sink {
            Sink::Csv(mut w) => w.flush().map_err(Failure::io),
            Sink::Json(mut w) => {
                let report = JsonReport {
                    tool_version: env!("CARGO_PKG_VERSION"),
                    config,
                    rows: &self.rows,
                    summary,
                };
                let text = serde_json::to_string_pretty(&report).map_err(Failure::io)?;
                writeln!(w, "{text}").map_err(Failure::io)?;
                w.flush().map_err(Failure::io)
            }
        }
    }
}

/// Runs `compute` on every cell not covered by `resumed`, `jobs` at a time,
/// and emits rows in cell order.
pub fn run_cells<C, R>(
    cells: &[C],
    key: impl Fn(&C) -> String,
    mut resumed: HashMap<String, Vec<R>>,
    compute: impl Fn(&C) -> Vec<R> + Sync,
    emitter: &mut Emitter<R>,
    jobs: usize,
) -> Result<(), Failure>
where
    C: Sync,
    R: Serialize + Send,
{
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(Failure::io)?;
    let chunk = if jobs <= 1 { 1 } else { jobs * 4 };
    for group in cells.chunks(chunk) {
        let keys: Vec<String> = group.iter().map(&key).collect();
        let todo: Vec<usize> = (0..group.len()).filter(|&i| !resumed.contains_key(&keys[i])).collect();
        let computed: Vec<Vec<R>> = pool.install(|| todo.par_iter().map(|&i| compute(&group[i])).collect());
        let mut computed = todo.into_iter().zip(computed).collect::<HashMap<_, _>>();
        for (i, k) in keys.iter().enumerate() {
            let rows = match resumed.remove(k) {
                Some(rows) => rows,
                None => computed.remove(&i).unwrap_or_default(),
            };
            emitter.push(rows)?;
        }
    }
    Ok(())
}

/// Groups resumed rows by cell key.
pub fn group_rows<R>(rows: Vec<R>, key: impl Fn(&R) -> String) -> HashMap<String, Vec<R>> {
    let mut map: HashMap<String, Vec<R>> = HashMap::new();
    for row in rows {
        map.entry(key(&row)).or_default().push(row);
    }
    map
}

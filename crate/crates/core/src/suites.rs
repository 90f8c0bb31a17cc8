//! Named verification suites over pinned parameter grids.
//!
//! A suite is a list of independent [`Cell`]s; each cell yields one or more
//! [`SuiteRow`]s. Cells carry stable keys so callers can run them in
//! parallel, skip ones already reported, and still emit rows in grid order.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bounds::{self, WeightVector};
use crate::combinatorics::{binom_u64, ksets};
use crate::cyclic::{self, HarnessReport};
use crate::error::{Error, Result};
use crate::family::{self, construction_chain, nestify, shift_closure_all, Chain, ConstructionKind, Family};
use crate::matching::{max_bipartite_matching, min_vertex_cover, BipartiteGraph};
use crate::rational::{self, Rational};
use crate::search::{self, GridPoint, Relation, SearchLimits, SolverKind, Theorem, VerifyRow};

pub const SUITES: &[&str] = &[
    "hilton",
    "thm1",
    "thm2-k1",
    "thm3",
    "thm4",
    "bde",
    "cyclic",
    "partition",
    "random-matching",
    "konig",
    "reduction",
    "g-endpoint",
    "conj1",
    "conj2",
];

pub const PASS: &str = "pass";
pub const FAIL: &str = "fail";
pub const INCOMPLETE: &str = "incomplete";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Overrides the per-cell trial count of randomized suites.
    pub trials: Option<u64>,
    pub limits: SearchLimits,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { seed: 42, trials: None, limits: SearchLimits::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteRow {
    pub suite: String,
    /// Key of the cell that produced the row.
    pub cell: String,
    pub key: String,
    pub status: String,
    pub expected: String,
    pub observed: String,
    pub detail: String,
}

impl SuiteRow {
    fn new(suite: &str, key: String, ok: bool, expected: String, observed: String, detail: String) -> Self {
        SuiteRow {
            suite: suite.into(),
            cell: String::new(),
            key,
            status: if ok { PASS } else { FAIL }.into(),
            expected,
            observed,
            detail,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == PASS
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub rows: Vec<SuiteRow>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(SuiteRow::passed)
    }

    pub fn incomplete(&self) -> bool {
        self.rows.iter().any(|r| r.status == INCOMPLETE)
    }

    pub fn failures(&self) -> impl Iterator<Item = &SuiteRow> {
        self.rows.iter().filter(|r| !r.passed())
    }
}

#[derive(Debug, Clone, PartialEq)]
enum ChainSpec {
    Construction(ConstructionKind),
    Random(u64),
}

#[derive(Debug, Clone, PartialEq)]
enum Job {
    Theorem { theorem: Theorem, point: GridPoint, solvers: Vec<SolverKind> },
    Solvers { point: GridPoint },
    Bde { m: u64 },
    Cyclic { n: usize, k: usize, s: usize, p: u64, trials: u64 },
    Partition { n: usize, k: usize, weights: WeightVector, chain: ChainSpec, trials: u64 },
    RandomMatching { n: usize, k: usize, weights: WeightVector, chain: ChainSpec, trials: u64 },
    Konig { graphs: u64 },
    ReductionNu { sequences: u64 },
    GEndpoint { k: u64, s: u64 },
    Conj1 { point: GridPoint },
    Conj2 { n: usize, k: usize, s: usize },
}

/// One independent unit of a suite.
#[derive(Debug, Clone, PartialEq)]
pub struct Cell {
    pub suite: &'static str,
    pub key: String,
    seed: u64,
    job: Job,
}

fn suite_name(name: &str) -> Result<&'static str> {
    SUITES
        .iter()
        .copied()
        .find(|s| *s == name)
        .ok_or_else(|| Error::InvalidParameter(format!("unknown suite {name:?}")))
}

/// Expands `"all"` or a single suite name.
pub fn suite_names(name: &str) -> Result<Vec<&'static str>> {
    if name == "all" {
        Ok(SUITES.to_vec())
    } else {
        Ok(vec![suite_name(name)?])
    }
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn cell_seed(master: u64, suite: &str, index: usize) -> u64 {
    let tag = suite.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x100_0000_01b3));
    splitmix(master ^ splitmix(tag ^ index as u64))
}

fn w(v: &[u64]) -> WeightVector {
    WeightVector::from_integers(v).expect("valid weights")
}

/// Weight vectors of the exact-value grids, by `s`.
fn grid_weights(s: usize) -> Vec<WeightVector> {
    match s {
        1 => vec![w(&[1, 1]), w(&[2, 1]), w(&[3, 1])],
        2 => vec![w(&[1, 1, 1]), w(&[4, 2, 1])],
        _ => Vec::new(),
    }
}

fn theorem_cell(theorem: Theorem, point: GridPoint, solvers: Vec<SolverKind>) -> (String, Job) {
    (point.key(), Job::Theorem { theorem, point, solvers })
}

fn chain_label(spec: &ChainSpec) -> String {
    match spec {
        ChainSpec::Construction(kind) => kind.name().into(),
        ChainSpec::Random(i) => format!("random-{i}"),
    }
}

/// Cells of a suite, in grid order.
pub fn cells(name: &str, config: &SuiteConfig) -> Result<Vec<Cell>> {
    let suite = suite_name(name)?;
    let trials = |default: u64| config.trials.unwrap_or(default);
    let mut jobs: Vec<(String, Job)> = Vec::new();
    match suite {
        "hilton" => {
            for n in 4..=7 {
                for m in 1..=4 {
                    jobs.push(theorem_cell(Theorem::Hilton, GridPoint::hilton(n, 2, m), vec![SolverKind::Oracle]));
                }
            }
        }
        "thm1" => {
            for k in 1..=2 {
                for s in 1..=2 {
                    for n in (s + 1) * k..=8 {
                        for p in 1..=3 {
                            let point = GridPoint::weighted(n, k, WeightVector::leading(p, s)?);
                            jobs.push(theorem_cell(Theorem::Thm1, point, vec![SolverKind::Shifted]));
                        }
                    }
                }
            }
        }
        "thm2-k1" => {
            for s in 1..=2 {
                for n in 4 * s..=12 {
                    for p in 1..=12 {
                        let point = GridPoint::weighted(n, 1, WeightVector::leading(p, s)?);
                        jobs.push(theorem_cell(Theorem::Thm2, point, vec![SolverKind::Shifted]));
                    }
                }
            }
        }
        "thm3" => {
            for (k, s) in [(1, 1), (1, 2), (2, 1)] {
                for weights in grid_weights(s) {
                    let point = GridPoint::weighted((s + 1) * k, k, weights);
                    jobs.push(theorem_cell(Theorem::Thm3, point, vec![SolverKind::Shifted, SolverKind::Oracle]));
                }
            }
        }
        "thm4" => {
            for (k, s, max_n) in [(1, 1, 12), (1, 2, 12), (2, 1, 6)] {
                for weights in grid_weights(s) {
                    let lo = bounds::thm4_threshold(k as u64, &weights)? as usize;
                    for n in lo..=max_n {
                        let point = GridPoint::weighted(n, k, weights.clone());
                        jobs.push(theorem_cell(Theorem::Thm4, point, vec![SolverKind::Shifted]));
                    }
                }
            }
        }
        "bde" => {
            for m in 2..=30 {
                jobs.push((format!("m={m}"), Job::Bde { m }));
            }
        }
        "cyclic" => {
            let per_cell = trials(100_000u64.div_ceil(9));
            for (n, k, s) in [(9, 2, 2), (8, 2, 1), (12, 3, 1)] {
                for p in 1..=3 {
                    jobs.push((format!("n={n},k={k},s={s},p={p}"), Job::Cyclic { n, k, s, p, trials: per_cell }));
                }
            }
        }
        "partition" => {
            for (k, s) in [(1, 1), (1, 2), (2, 1), (2, 2), (3, 1)] {
                let n = (s + 1) * k;
                for weights in grid_weights(s) {
                    let specs = ConstructionKind::ALL
                        .into_iter()
                        .map(ChainSpec::Construction)
                        .chain((0..3).map(ChainSpec::Random));
                    for spec in specs {
                        let default = if (n, k, s) == (4, 2, 1) { 100_000 } else { 10_000 };
                        jobs.push((
                            format!("n={n},k={k},p={},chain={}", weights.label(), chain_label(&spec)),
                            Job::Partition { n, k, weights: weights.clone(), chain: spec, trials: trials(default) },
                        ));
                    }
                }
            }
        }
        "random-matching" => {
            for (k, s, ns) in [(1, 1, vec![4, 8, 12]), (1, 2, vec![6, 9, 12]), (2, 1, vec![6, 8, 10]), (2, 2, vec![8, 10])] {
                for &n in &ns {
                    for weights in grid_weights(s) {
                        let specs = [ChainSpec::Construction(ConstructionKind::EmptyThenFull)]
                            .into_iter()
                            .chain([ConstructionKind::Cover, ConstructionKind::Clique].map(ChainSpec::Construction))
                            .chain((0..2).map(ChainSpec::Random));
                        for spec in specs {
                            jobs.push((
                                format!("n={n},k={k},p={},chain={}", weights.label(), chain_label(&spec)),
                                Job::RandomMatching { n, k, weights: weights.clone(), chain: spec, trials: trials(10_000) },
                            ));
                        }
                    }
                }
            }
        }
        "konig" => {
            for batch in 0..10 {
                jobs.push((format!("batch={batch}"), Job::Konig { graphs: trials(10_000).div_ceil(10) }));
            }
        }
        "reduction" => {
            for n in 1..=15usize {
                for k in 1..=n {
                    if binom_u64(n as u64, k as u64)? > 15 {
                        continue;
                    }
                    for s in 1..=2 {
                        for weights in reduction_weights(s) {
                            let point = GridPoint::weighted(n, k, weights);
                            jobs.push((point.key(), Job::Solvers { point }));
                        }
                    }
                }
            }
            for batch in 0..10 {
                jobs.push((format!("nu-batch={batch}"), Job::ReductionNu { sequences: trials(10_000).div_ceil(10) }));
            }
        }
        "g-endpoint" => {
            for k in 1..=3 {
                for s in 1..=5 {
                    jobs.push((format!("k={k},s={s}"), Job::GEndpoint { k, s }));
                }
            }
        }
        "conj1" => {
            for (k, s, max_n, max_p) in [(1, 1, 12, 8), (1, 2, 12, 8), (1, 3, 12, 8), (2, 1, 12, 8), (2, 2, 10, 6), (2, 3, 9, 4), (3, 1, 9, 6)] {
                for n in (s + 1) * k..=max_n {
                    for p in 1..=max_p {
                        let point = GridPoint::weighted(n, k, WeightVector::leading(p, s)?);
                        jobs.push((point.key(), Job::Conj1 { point }));
                    }
                }
            }
        }
        "conj2" => {
            for (k, s, max_n) in [(1, 1, 12), (1, 2, 12), (1, 3, 12), (1, 4, 12), (2, 1, 12), (2, 2, 10), (2, 3, 9), (2, 4, 10), (3, 1, 8)] {
                for n in (s + 1) * k..=max_n {
                    jobs.push((format!("n={n},k={k},s={s}"), Job::Conj2 { n, k, s }));
                }
            }
        }
        _ => unreachable!("suite names are validated"),
    }
    Ok(jobs
        .into_iter()
        .enumerate()
        .map(|(i, (key, job))| Cell { suite, key, seed: cell_seed(config.seed, suite, i), job })
        .collect())
}

fn reduction_weights(s: usize) -> Vec<WeightVector> {
    match s {
        1 => vec![w(&[1, 1]), w(&[2, 1]), w(&[3, 1]), w(&[3, 2])],
        _ => vec![w(&[1, 1, 1]), w(&[2, 1, 1]), w(&[4, 2, 1]), w(&[3, 3, 1])],
    }
}

fn fmt(r: &Rational) -> String {
    rational::format(r)
}

fn incomplete(suite: &str, key: String, expected: String, observed: String, detail: String) -> SuiteRow {
    SuiteRow {
        suite: suite.into(),
        cell: String::new(),
        key,
        status: INCOMPLETE.into(),
        expected,
        observed,
        detail,
    }
}

fn verify_row(suite: &str, row: &VerifyRow, solver: SolverKind) -> SuiteRow {
    let detail = match &row.witness {
        Some(chain) => format!("solver={};witness={}", solver.name(), serde_json::to_string(chain).unwrap_or_default()),
        None => format!("solver={}", solver.name()),
    };
    let (e, o) = (fmt(&row.expected), fmt(&row.observed));
    match row.relation {
        Relation::Equal | Relation::Bounded => SuiteRow::new(suite, row.key.clone(), true, e, o, detail),
        Relation::Violation => SuiteRow::new(suite, row.key.clone(), false, e, o, detail),
        Relation::Incomplete => incomplete(suite, row.key.clone(), e, o, detail),
    }
}

fn harness_row(suite: &str, key: String, r: &HarnessReport) -> SuiteRow {
    let detail = format!(
        "seed={};trials={};violations={};mean={};exact_expectation={};within_3_sigma={}{}",
        r.seed,
        r.trials,
        r.violations.len(),
        r.mean,
        r.exact_expectation.as_ref().map_or("none".into(), fmt),
        r.within_tolerance,
        r.violations
            .first()
            .map_or(String::new(), |v| format!(";first={}:{}:{}", v.trial, v.kind, v.detail)),
    );
    SuiteRow::new(suite, key, r.passed(), format!("<={}", fmt(&r.bound)), fmt(&r.max_observed), detail)
}

fn materialize(spec: &ChainSpec, n: usize, k: usize, weights: &WeightVector, seed: u64) -> Result<Chain> {
    let s = weights.s();
    match spec {
        ChainSpec::Construction(kind) => construction_chain(*kind, n, k, s, weights),
        ChainSpec::Random(i) => cyclic::random_chain(n, k, s, splitmix(seed ^ i)),
    }
}

/// Runs one cell.
pub fn run_cell(cell: &Cell, config: &SuiteConfig) -> Result<Vec<SuiteRow>> {
    let mut rows = cell_rows(cell, config)?;
    for row in &mut rows {
        row.cell = cell.key.clone();
    }
    Ok(rows)
}

/// Whether the suite draws random samples.
pub fn is_randomized(name: &str) -> bool {
    matches!(name, "cyclic" | "partition" | "random-matching" | "konig" | "reduction")
}

fn cell_rows(cell: &Cell, config: &SuiteConfig) -> Result<Vec<SuiteRow>> {
    let suite = cell.suite;
    let key = cell.key.clone();
    Ok(match &cell.job {
        Job::Solvers { point } => vec![compare_solvers(suite, key, point, &config.limits)?],
        Job::Theorem { theorem, point, solvers } => {
            let limits = suite_limits(suite, &config.limits);
            let mut rows = Vec::new();
            for &solver in solvers {
                let row = &search::verify_theorem(*theorem, std::slice::from_ref(point), solver, &limits)?[0];
                rows.push(verify_row(suite, row, solver));
            }
            merge_rows(rows)
        }
        Job::Bde { m } => bde_rows(suite, *m)?,
        Job::Cyclic { n, k, s, p, trials } => {
            let r = cyclic::verify_cyclic_lemma(*n, *k, *s, *p, *trials, cell.seed)?;
            vec![harness_row(suite, key, &r)]
        }
        Job::Partition { n, k, weights, chain, trials } => {
            let chain = materialize(chain, *n, *k, weights, cell.seed)?;
            let r = cyclic::verify_partition_bound(&chain, weights, *trials, cell.seed)?;
            vec![harness_row(suite, key, &r)]
        }
        Job::RandomMatching { n, k, weights, chain, trials } => {
            let chain = materialize(chain, *n, *k, weights, cell.seed)?;
            let r = cyclic::verify_random_matching_bound(&chain, weights, *trials, cell.seed)?;
            vec![harness_row(suite, key, &r)]
        }
        Job::Konig { graphs } => vec![konig_row(suite, key, *graphs, cell.seed)],
        Job::ReductionNu { sequences } => vec![reduction_nu_row(suite, key, *sequences, cell.seed)?],
        Job::GEndpoint { k, s } => g_endpoint_rows(suite, *k, *s)?,
        Job::Conj1 { point } => {
            let row = &search::hunt_conj1(std::slice::from_ref(point), &config.limits)?[0];
            vec![verify_row(suite, row, SolverKind::Shifted)]
        }
        Job::Conj2 { n, k, s } => {
            let row = &search::hunt_conj2(&[(*n, *k, *s)], &config.limits)?[0];
            vec![verify_row(suite, row, SolverKind::Shifted)]
        }
    })
}

/// The Hilton grid exceeds the default oracle candidate cap but is cheap in
/// practice; it runs cold so that no construction seeds the optimum.
fn suite_limits(suite: &str, limits: &SearchLimits) -> SearchLimits {
    let mut limits = limits.clone();
    if suite == "hilton" {
        limits.max_oracle_candidates = u128::MAX;
        limits.warm_start = false;
    }
    limits
}

/// Collapses per-solver rows of one cell into one row.
fn merge_rows(rows: Vec<SuiteRow>) -> Vec<SuiteRow> {
    if rows.len() <= 1 {
        return rows;
    }
    let agree = rows.windows(2).all(|w| w[0].observed == w[1].observed);
    let status = if rows.iter().any(|r| r.status == FAIL) || !agree {
        FAIL
    } else if rows.iter().any(|r| r.status == INCOMPLETE) {
        INCOMPLETE
    } else {
        PASS
    };
    let first = &rows[0];
    vec![SuiteRow {
        suite: first.suite.clone(),
        cell: first.cell.clone(),
        key: first.key.clone(),
        status: status.into(),
        expected: first.expected.clone(),
        observed: rows.iter().map(|r| r.observed.as_str()).collect::<Vec<_>>().join("|"),
        detail: rows.iter().map(|r| r.detail.as_str()).collect::<Vec<_>>().join("|"),
    }]
}

fn compare_solvers(
    suite: &str,
    key: String,
    point: &GridPoint,
    limits: &SearchLimits,
) -> Result<SuiteRow> {
    // the oracle starts from the empty chain, independent of constructions
    let cold = SearchLimits { warm_start: false, ..limits.clone() };
    let records = [(SolverKind::Oracle, &cold), (SolverKind::Shifted, limits)]
        .iter()
        .map(|&(solver, l)| search::solve(solver, point.n, point.k, &point.weights, l))
        .collect::<Result<Vec<_>>>()?;
    let observed: Vec<String> = records.iter().map(|r| fmt(&r.optimum)).collect();
    let detail = records
        .iter()
        .map(|r| format!("{}:nodes={}", r.solver.name(), r.nodes_explored))
        .collect::<Vec<_>>()
        .join(";");
    if records.iter().any(|r| !r.complete) {
        return Ok(incomplete(suite, key, observed[0].clone(), observed.join("|"), detail));
    }
    let witnesses_ok = records
        .iter()
        .all(|r| crate::matching::is_overlapping(&r.witness) && r.witness.weighted_value(&r.weights).ok() == Some(r.optimum.clone()));
    let agree = observed.windows(2).all(|w| w[0] == w[1]);
    Ok(SuiteRow::new(suite, key, agree && witnesses_ok, observed[0].clone(), observed.join("|"), detail))
}

fn bde_rows(suite: &str, m: u64) -> Result<Vec<SuiteRow>> {
    (1..m)
        .map(|s| {
            let mut failed = Vec::new();
            for l in 0..m - s {
                let (a, b) = bounds::bde_check(m, s, l)?;
                if !(a && b) {
                    failed.push(format!("l={l}:{}{}", if a { "" } else { "first" }, if b { "" } else { "second" }));
                }
            }
            Ok(SuiteRow::new(
                suite,
                format!("m={m},s={s}"),
                failed.is_empty(),
                format!("{} values of l", m - s),
                format!("{} failing", failed.len()),
                failed.join(";"),
            ))
        })
        .collect()
}

fn g_endpoint_rows(suite: &str, k: u64, s: u64) -> Result<Vec<SuiteRow>> {
    (1..=10)
        .map(|p| {
            let lo = 4 * k * k * s;
            let mut off = Vec::new();
            for n in lo..=lo + 50 {
                let a = bounds::g_argmax(n, k, p, s)?;
                if !a.at_endpoint {
                    off.push(format!("n={n}:argmax={}", a.argmax));
                }
            }
            Ok(SuiteRow::new(
                suite,
                format!("k={k},s={s},p={p}"),
                off.is_empty(),
                "argmax in {0,s}".into(),
                format!("{} interior", off.len()),
                off.join(";"),
            ))
        })
        .collect()
}

/// Minimum vertex cover by trying every set of left vertices and covering
/// the remaining edges from the right.
fn brute_force_cover(adj: &[u64]) -> u32 {
    let l = adj.len();
    (0u64..1 << l)
        .map(|left| {
            let right = (0..l).filter(|&i| left >> i & 1 == 0).fold(0u64, |acc, i| acc | adj[i]);
            left.count_ones() + right.count_ones()
        })
        .min()
        .unwrap_or(0)
}

fn konig_row(suite: &str, key: String, graphs: u64, seed: u64) -> SuiteRow {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    let mut brute = 0u64;
    for g_idx in 0..graphs {
        let (nl, nr) = (rng.gen_range(0..=12usize), rng.gen_range(0..=12usize));
        let density: f64 = rng.gen();
        let mut g = BipartiteGraph::new(nl, nr);
        let mut adj = vec![0u64; nl];
        for (l, row) in adj.iter_mut().enumerate() {
            for r in 0..nr {
                if rng.gen_bool(density) {
                    g.add_edge(l, r).expect("in range");
                    *row |= 1 << r;
                }
            }
        }
        let m = max_bipartite_matching(&g);
        let cover = min_vertex_cover(&g);
        let mut used_l = 0u64;
        let mut used_r = 0u64;
        let matching_ok = m.pairs.iter().all(|&(l, r)| {
            let fresh = used_l >> l & 1 == 0 && used_r >> r & 1 == 0;
            used_l |= 1 << l;
            used_r |= 1 << r;
            fresh && adj[l] >> r & 1 == 1
        });
        let mut ok = matching_ok && cover.len() == m.len() && g.covers(&cover);
        if nl <= 8 && nr <= 8 {
            brute += 1;
            ok &= brute_force_cover(&adj) as usize == cover.len();
        }
        if !ok {
            failures.push(format!("graph={g_idx}:{nl}+{nr}"));
        }
    }
    SuiteRow::new(
        suite,
        key,
        failures.is_empty(),
        format!("{graphs} graphs"),
        format!("{} failing", failures.len()),
        format!("seed={seed};brute_force_checked={brute};{}", failures.join(";")),
    )
}

/// Rainbow matching number by plain recursion over the sequence: each
/// family is skipped or contributes one set disjoint from those chosen.
fn brute_force_nu(seq: &[Vec<u64>]) -> usize {
    fn go(seq: &[Vec<u64>], used: u64) -> usize {
        let Some((first, rest)) = seq.split_first() else { return 0 };
        let skip = go(rest, used);
        first
            .iter()
            .filter(|&&m| m & used == 0)
            .map(|&m| 1 + go(rest, used | m))
            .fold(skip, usize::max)
    }
    go(seq, 0)
}

fn masks(seq: &[Family]) -> Vec<Vec<u64>> {
    seq.iter().map(|f| f.members().into_iter().map(|x| x.mask()).collect()).collect()
}

fn reduction_nu_row(suite: &str, key: String, sequences: u64, seed: u64) -> Result<SuiteRow> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for i in 0..sequences {
        let n = rng.gen_range(2..=7usize);
        let k = rng.gen_range(1..=3usize.min(n));
        let len = rng.gen_range(1..=4usize);
        let pool = ksets(n, k)?;
        let seq = (0..len)
            .map(|_| {
                let density: f64 = rng.gen();
                Family::from_sets(n, k, pool.iter().copied().filter(|_| rng.gen_bool(density)))
            })
            .collect::<Result<Vec<_>>>()?;
        let nu = brute_force_nu(&masks(&seq));
        let nested = nestify(&seq)?;
        let shifted = shift_closure_all(&seq);
        let total = |s: &[Family]| s.iter().map(Family::len).sum::<u64>();
        let sizes = |s: &[Family]| s.iter().map(Family::len).collect::<Vec<_>>();
        let ok = brute_force_nu(&masks(&nested)) <= nu
            && brute_force_nu(&masks(&shifted)) <= nu
            && total(&nested) == total(&seq)
            && nested.windows(2).all(|w| w[0].is_subset_of(&w[1]))
            && sizes(&shifted) == sizes(&seq)
            && shifted.iter().all(family::is_shifted);
        if !ok {
            failures.push(format!(
                "sequence={i}:{}",
                serde_json::to_string(&seq.iter().map(Family::to_lists).collect::<Vec<_>>()).unwrap_or_default()
            ));
        }
    }
    Ok(SuiteRow::new(
        suite,
        key,
        failures.is_empty(),
        format!("{sequences} sequences"),
        format!("{} failing", failures.len()),
        format!("seed={seed};{}", failures.join(";")),
    ))
}

/// Runs a whole suite sequentially.
pub fn run_suite(name: &str, config: &SuiteConfig) -> Result<SuiteReport> {
    let suite = suite_name(name)?;
    let mut rows = Vec::new();
    for cell in cells(suite, config)? {
        rows.extend(run_cell(&cell, config)?);
    }
    Ok(SuiteReport { suite: suite.into(), rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_resolve() {
        assert_eq!(suite_names("all").unwrap().len(), SUITES.len());
        assert!(suite_names("nope").is_err());
    }

    #[test]
    fn cell_keys_are_unique() {
        let config = SuiteConfig::default();
        for name in SUITES {
            let cells = cells(name, &config).unwrap();
            let mut keys: Vec<&str> = cells.iter().map(|c| c.key.as_str()).collect();
            keys.sort_unstable();
            let before = keys.len();
            keys.dedup();
            assert_eq!(before, keys.len(), "{name}");
        }
    }

    #[test]
    fn grid_sizes() {
        let config = SuiteConfig::default();
        assert_eq!(cells("hilton", &config).unwrap().len(), 16);
        assert_eq!(cells("cyclic", &config).unwrap().len(), 9);
        assert_eq!(cells("bde", &config).unwrap().len(), 29);
    }

    #[test]
    fn seeds_depend_on_master() {
        let a = cells("cyclic", &SuiteConfig::default()).unwrap();
        let b = cells("cyclic", &SuiteConfig { seed: 7, ..SuiteConfig::default() }).unwrap();
        assert_ne!(a[0].seed, b[0].seed);
        assert_ne!(a[0].seed, a[1].seed);
    }

    #[test]
    fn brute_force_nu_examples() {
        // {12}, {34}, {12,34}: ν = 2 of 3 families; rainbow of all three impossible
        let seq = vec![vec![0b0011], vec![0b1100], vec![0b0011, 0b1100]];
        assert_eq!(brute_force_nu(&seq), 2);
        assert_eq!(brute_force_nu(&[]), 0);
    }

    #[test]
    fn brute_force_cover_examples() {
        assert_eq!(brute_force_cover(&[0b11, 0b01]), 2);
        assert_eq!(brute_force_cover(&[0b111]), 1);
        assert_eq!(brute_force_cover(&[]), 0);
    }

    #[test]
    fn small_suites_pass() {
        let config = SuiteConfig { trials: Some(200), ..SuiteConfig::default() };
        for name in ["bde", "thm3", "konig"] {
            let r = run_suite(name, &config).unwrap();
            assert!(r.passed(), "{name}: {:?}", r.failures().next());
        }
    }
}

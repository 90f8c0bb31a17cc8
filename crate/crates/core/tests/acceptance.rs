//! Acceptance criteria. Each criterion runs its pinned grid at its pinned
//! tolerance and prints one line; the process fails if any line fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use overlap_lab::suites::{run_suite, SuiteConfig, SuiteReport};

struct Criterion {
    id: u32,
    title: &'static str,
    suites: &'static [&'static str],
    tolerance: &'static str,
    budget: Duration,
}

const fn minutes(m: u64) -> Duration {
    Duration::from_secs(60 * m)
}

const CRITERIA: &[Criterion] = &[
    Criterion { id: 1, title: "Hilton equality, n=4..7, k=2, m=1..4", suites: &["hilton"], tolerance: "exact", budget: minutes(1) },
    Criterion { id: 2, title: "upper bound for (p,1,...,1), k<=2, s<=2, n<=8, p<=3", suites: &["thm1"], tolerance: "exact", budget: minutes(10) },
    Criterion { id: 3, title: "exact value at k=1, n in [4s,12], s<=2, p<=12", suites: &["thm2-k1"], tolerance: "exact", budget: minutes(5) },
    Criterion { id: 4, title: "exact value at n=(s+1)k", suites: &["thm3"], tolerance: "exact", budget: minutes(10) },
    Criterion { id: 5, title: "exact value (p_1+...+p_s)C(n,k) above the threshold", suites: &["thm4"], tolerance: "exact", budget: minutes(10) },
    Criterion { id: 6, title: "binomial inequality chains, 1<=s<m<=30, 0<=l<m-s", suites: &["bde"], tolerance: "exact rationals", budget: minutes(1) },
    Criterion { id: 7, title: "arc-chain inequality and head-average identity, 1e5 chains", suites: &["cyclic"], tolerance: "zero violations, identity exact", budget: minutes(10) },
    Criterion { id: 8, title: "Konig duality on 1e4 random bipartite graphs", suites: &["konig"], tolerance: "exact", budget: minutes(2) },
    Criterion { id: 9, title: "solver agreement and nu monotonicity under reductions", suites: &["reduction"], tolerance: "exact", budget: minutes(10) },
    Criterion { id: 10, title: "g attains its maximum at 0 or s", suites: &["g-endpoint"], tolerance: "exact", budget: minutes(1) },
    Criterion { id: 11, title: "conjecture hunts on solver-feasible grids", suites: &["conj1", "conj2"], tolerance: "zero counterexamples", budget: minutes(30) },
];

fn main() -> ExitCode {
    let config = SuiteConfig { seed: 20_240_601, ..SuiteConfig::default() };
    let mut failed = 0;
    println!("acceptance: {} criteria, seed {}", CRITERIA.len(), config.seed);
    for c in CRITERIA {
        let start = Instant::now();
        let reports: Vec<Result<SuiteReport, _>> = c.suites.iter().map(|s| run_suite(s, &config)).collect();
        let elapsed = start.elapsed();
        let mut rows = 0;
        let mut notes = Vec::new();
        for r in &reports {
            match r {
                Ok(report) => {
                    rows += report.rows.len();
                    notes.extend(report.failures().take(3).map(|f| {
                        format!("{}:{} {} expected {} observed {}", f.suite, f.key, f.status, f.expected, f.observed)
                    }));
                }
                Err(e) => notes.push(format!("error: {e}")),
            }
        }
        let in_budget = elapsed <= c.budget;
        if !in_budget {
            notes.push(format!("exceeded budget of {:?}", c.budget));
        }
        let ok = in_budget && reports.iter().all(|r| r.as_ref().is_ok_and(SuiteReport::passed));
        if !ok {
            failed += 1;
        }
        println!(
            "criterion {:>2} {}  {} [{}; {} rows; {:.1}s]",
            c.id,
            if ok { "PASS" } else { "FAIL" },
            c.title,
            c.tolerance,
            rows,
            elapsed.as_secs_f64()
        );
        for n in notes {
            println!("    {n}");
        }
    }
    println!("acceptance: {} passed, {} failed", CRITERIA.len() - failed, failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

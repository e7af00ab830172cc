//! One line per acceptance criterion; exits nonzero if any fails.

use std::time::{Duration, Instant};

use procstar::suites::{run_suite, DEFAULT_SEED};
use procstar::tolerances::Config;

const CRITERIA: &[(u32, &str, Option<u64>)] = &[
    (1, "circle-norm", Some(5)),
    (2, "peter-weyl", Some(30)),
    (3, "rf-amen-witness", Some(60)),
    (4, "heisenberg-family", None),
    (5, "compatibility", None),
    (6, "seminorm-axioms", None),
    (7, "z2k-range", None),
    (8, "free-group-u3", Some(60)),
    (9, "truncated-fullness", None),
    (10, "heisenberg-separation", None),
];

fn main() {
    let cfg = Config::default();
    let mut failed = 0;
    for &(id, suite, limit) in CRITERIA {
        let start = Instant::now();
        let result = run_suite(suite, DEFAULT_SEED, &cfg);
        let elapsed = start.elapsed();
        let in_time = limit.is_none_or(|s| elapsed <= Duration::from_secs(s));
        let (ok, note) = match &result {
            Ok(r) => {
                let bad: Vec<&str> = r.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
                (r.passed && in_time, if bad.is_empty() { format!("{} checks", r.checks.len()) } else { format!("failing: {}", bad.join(", ")) })
            }
            Err(e) => (false, format!("error: {e}")),
        };
        let limit = limit.map_or(String::new(), |s| format!(" (limit {s}s)"));
        println!("criterion {id:>2} {suite:<22} {} {:.2}s{limit} {note}", if ok { "PASS" } else { "FAIL" }, elapsed.as_secs_f64());
        if !ok {
            failed += 1;
            if let Ok(r) = &result {
                for c in r.checks.iter().filter(|c| !c.passed) {
                    println!("    {}: {}", c.name, c.detail);
                }
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", CRITERIA.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}

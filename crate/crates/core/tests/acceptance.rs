//! Acceptance criteria 1 through 10, one PASS/FAIL line each.
//!
//! The lines go straight to stdout, so they show up without `--nocapture`.

use std::io::Write;
use std::time::{Duration, Instant};

use fatflats::verifier::matrix::{
    cremona_checks, determinism, e_certificates, g_values, hilbert_sequences, intersection_identities,
    lambda_identities, nosymetry_checks, oracle_equivalence, six_lines_values, MatrixRow,
};
use fatflats::Result;

type Check = fn() -> Result<MatrixRow>;

const CRITERIA: [(Check, Option<u64>); 10] = [
    (oracle_equivalence, Some(5)),
    (hilbert_sequences, None),
    (six_lines_values, None),
    (lambda_identities, Some(5)),
    (g_values, None),
    (e_certificates, Some(30)),
    (cremona_checks, None),
    (intersection_identities, None),
    (nosymetry_checks, Some(30)),
    (determinism, None),
];

#[test]
fn acceptance() {
    let mut failed = Vec::new();
    for (i, (check, budget)) in CRITERIA.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let within = budget.is_none_or(|s| elapsed <= Duration::from_secs(s));
        let (passed, line) = match result {
            Ok(row) => {
                assert_eq!(row.criterion as usize, i + 1);
                (row.passed && within, format!("{}: {}", row.title, row.detail))
            }
            Err(e) => (false, format!("error: {e}")),
        };
        let budget = budget.map_or(String::new(), |s| format!(", budget {s} s"));
        let status = if passed { "PASS" } else { "FAIL" };
        let mut out = std::io::stdout().lock();
        let _ = writeln!(out, "{status} criterion {:>2} ({:.2} s{budget}) {line}", i + 1, elapsed.as_secs_f64());
        if !passed {
            failed.push(i + 1);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

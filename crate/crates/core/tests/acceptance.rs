//! Runs every acceptance criterion once and prints one PASS/FAIL line each.
//! Criterion 14 runs the `selftest` binary twice and compares its bytes.

use std::process::{Command, ExitCode};

use qpmut::selftest::{run_criterion, CriterionResult, CRITERIA};

const SEED: u64 = 0;

fn selftest_output() -> (bool, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_qpmut"))
        .args(["selftest", "--seed", &SEED.to_string()])
        .output()
        .expect("run qpmut selftest");
    (out.status.success(), out.stdout)
}

fn determinism() -> CriterionResult {
    let (ok1, first) = selftest_output();
    let (ok2, second) = selftest_output();
    let same = first == second;
    CriterionResult {
        id: 14,
        name: CRITERIA[13].1,
        passed: ok1 && ok2 && same && !first.is_empty(),
        detail: format!("two selftest runs at seed {SEED}: {} bytes, identical = {same}, exit ok = {}", first.len(), ok1 && ok2),
    }
}

fn main() -> ExitCode {
    let mut results: Vec<CriterionResult> = (1..=13).map(|id| run_criterion(id, SEED)).collect();
    results.push(determinism());
    for r in &results {
        println!("criterion {}", r.line().trim_start());
    }
    let failed = results.iter().filter(|r| !r.passed).count();
    println!("acceptance: {}/{} passed", results.len() - failed, results.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

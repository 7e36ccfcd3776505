//! Runs the nine acceptance criteria over the bundled data and prints one
//! line per criterion. Exits nonzero if any criterion fails.

use std::process::ExitCode;

use mzeta::igusa::DEFAULT_BUDGET;
use mzeta::kodaira::DataSource;
use mzeta::verify;

fn main() -> ExitCode {
    let results = verify::run_all(&DataSource::Bundled, DEFAULT_BUDGET);
    let ids: Vec<u32> = results.iter().map(|c| c.id).collect();
    assert_eq!(ids, (1..=9).collect::<Vec<_>>());
    let mut ok = true;
    for c in &results {
        let status = if c.pass { "PASS" } else { "FAIL" };
        println!("criterion {}: {status}  {}", c.id, c.name);
        if !c.pass {
            eprintln!("  detail: {}", c.detail);
            ok = false;
        }
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

//! Prints the verdict matrix.

use qbag_core::lab::{SearchConfig, run_matrix};

fn main() {
    let report = run_matrix(&SearchConfig::default()).expect("matrix");
    for c in &report.cells {
        println!(
            "{:<42} {:<16} {:<10} expected={} {:<22} at={:<24} instances={} inconclusive={}",
            c.principle.to_string(),
            c.function.to_string(),
            c.semantics.name(),
            c.expected,
            c.status.to_string(),
            c.fixture.as_deref().unwrap_or("-"),
            c.instances,
            c.inconclusive
        );
    }
    println!("all ok: {}", report.all_ok());
}

//! Expand every equation and check the per-family counts against the
//! published tallies (grand total 2413 across ~2400 atomic rules).
//!
//! ```bash
//! cargo run --example verify_counts
//! ```

use sandhi::rulebase::{category_totals, count_report, expand_all, RuleSet};

fn main() {
    let rules = RuleSet::builtin();
    let report = count_report(rules);
    print!("{report}");

    let totals = category_totals(&expand_all(rules));
    let labels = ["C1", "C2", "C3", "C4", "C5"];
    let by_category: Vec<String> = labels
        .iter()
        .zip(totals)
        .map(|(label, n)| format!("{label}={n}"))
        .collect();
    println!("by category: {}", by_category.join(" "));
    println!(
        "verification {}",
        if report.ok() { "passed" } else { "FAILED" }
    );
}

//! Generate the exhaustive 50x50 single-application table and summarize
//! which letter pairs transform.
//!
//! ```bash
//! cargo run --example pair_table_stats
//! ```

use std::collections::BTreeMap;

use sandhi::corpus::gen_pair_table;
use sandhi::rulebase::RuleSet;

fn main() {
    let rules = RuleSet::builtin();
    let table = gen_pair_table(rules, false);

    let changed = table.rows.iter().filter(|r| r.rule.is_some()).count();
    println!("{} pairs, {} transform, {} stay", table.rows.len(), changed, table.rows.len() - changed);

    let mut per_category: BTreeMap<String, usize> = BTreeMap::new();
    for row in &table.rows {
        if let Some(rule) = row.rule {
            *per_category.entry(rule.category.to_string()).or_default() += 1;
        }
    }
    println!("first-firing rule by category:");
    for (category, count) in per_category {
        println!("    {category}: {count}");
    }

    println!("sample rows:");
    for (x, y) in [(1u8, 2u8), (1, 3), (3, 1), (23, 46), (42, 42)] {
        let row = table.rows.iter().find(|r| r.x == x && r.y == y).unwrap();
        println!("    {row}");
    }
}

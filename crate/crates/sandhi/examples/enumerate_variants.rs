//! Optional rules produce variant surfaces; enumerate them all.
//!
//! ```bash
//! cargo run --example enumerate_variants
//! ```

use sandhi::alphabet::{detokenize, tokenize};
use sandhi::engine::{join_variants, JunctionKind};
use sandhi::rulebase::RuleSet;

fn main() {
    let rules = RuleSet::builtin();
    for (left, right) in [("saḥ", "api"), ("kim", "hvayati"), ("deva", "indra")] {
        let l = tokenize(left).unwrap();
        let r = tokenize(right).unwrap();
        let variants = join_variants(&l, &r, JunctionKind::External, rules).unwrap();
        println!("{left} + {right}: {} variant(s)", variants.len());
        for v in variants {
            let choices: Vec<String> = v
                .variant_tag
                .iter()
                .map(|c| {
                    format!("{} {}", c.rule, if c.applied { "applied" } else { "skipped" })
                })
                .collect();
            let tag = if choices.is_empty() {
                "no optional rules".to_string()
            } else {
                choices.join(", ")
            };
            println!("    {}  [{}]", detokenize(&v.surface).unwrap(), tag);
        }
    }
}

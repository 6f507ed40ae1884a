//! Load a hand-written rule file and join with it.
//!
//! The format is line-oriented: category, aphorism and equation indices,
//! the aphorism number, a domain (with optional `/`-separated branches
//! and u/w/X/Y contexts), and the output terms.
//!
//! ```bash
//! cargo run --example custom_ruleset
//! ```

use sandhi::alphabet::{detokenize, tokenize};
use sandhi::engine::{join, JunctionKind};
use sandhi::rulebase::RuleSet;

// A toy dialect: only the two e/o-grade rules and a t-insertion.
const RULES: &str = "
# e and o grades
C1 1 1 sutra=6.1.87 x={1,2} y={3,4} => #10
C1 1 2 sutra=6.1.87 x={1,2} y={5,6} => #11
# vowel + ch gains t
C4 1 1 sutra=6.1.73 x=@vowel y={36} => #41
";

fn main() {
    let rules = RuleSet::parse_rules(RULES).expect("toy rules parse");
    println!("loaded {} rules from {}", rules.len(), rules.source);

    for (left, right) in [("deva", "indra"), ("tava", "chāyā"), ("tat", "śiva")] {
        let l = tokenize(left).unwrap();
        let r = tokenize(right).unwrap();
        let result = join(&l, &r, JunctionKind::External, &rules).unwrap();
        let fired: Vec<String> = result.trace.steps.iter().map(|s| s.rule.to_string()).collect();
        println!(
            "{left} + {right} -> {}  [{}]",
            detokenize(&result.surface).unwrap(),
            if fired.is_empty() { "no rule".to_string() } else { fired.join(", ") }
        );
    }
}

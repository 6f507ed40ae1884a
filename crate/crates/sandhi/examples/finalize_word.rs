//! Word-final settling: obstruents at the end of an utterance drop to
//! their column-3 (soft unaspirated) counterpart.
//!
//! ```bash
//! cargo run --example finalize_word
//! ```

use sandhi::alphabet::{detokenize, tokenize};
use sandhi::engine::finalize_pada;
use sandhi::rulebase::RuleSet;

fn main() {
    let rules = RuleSet::builtin();
    for word in ["vāk", "suhṛt", "kakup", "bhiṣaj", "devī"] {
        let codes = tokenize(word).unwrap();
        let (settled, trace) = finalize_pada(&codes, rules);
        match trace.steps.first() {
            Some(step) => println!(
                "{word} -> {} ({} {})",
                detokenize(&settled).unwrap(),
                step.rule,
                step.sutra
            ),
            None => println!("{word} -> {} (unchanged)", detokenize(&settled).unwrap()),
        }
    }
}

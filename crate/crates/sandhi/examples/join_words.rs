//! Join word pairs and show which rules fired.
//!
//! ```bash
//! cargo run --example join_words
//! ```

use sandhi::alphabet::{detokenize, tokenize};
use sandhi::engine::{join, JunctionKind};
use sandhi::rulebase::RuleSet;

fn main() {
    let rules = RuleSet::builtin();
    let pairs = [
        ("deva", "indra"),   // vowel grade: a+i -> e
        ("mahā", "ṛṇa"),     // ā+ṛ -> ar
        ("vidyā", "ālaya"),  // like vowels merge long
        ("iti", "api"),      // i -> y before a dissimilar vowel
        ("tat", "śiva"),     // two steps: ś -> ch, then t -> c
        ("sam", "kṛta"),     // the sam+kṛ- s-insertion
        ("kim", "karoti"),   // m -> ṃ -> ṅ before k
        ("vāk", "hari"),     // h -> gh after k, then k -> g
        ("tat", "hita"),     // h -> dh after t, then t -> d
        ("saḥ", "gacchati"), // saḥ loses its visarga before a consonant
    ];

    for (left, right) in pairs {
        let l = tokenize(left).expect("known-good IAST");
        let r = tokenize(right).expect("known-good IAST");
        let result = join(&l, &r, JunctionKind::External, rules).expect("no cycles here");
        println!("{left} + {right} -> {}", detokenize(&result.surface).unwrap());
        for step in &result.trace.steps {
            println!(
                "    {} ({})  {}|{} -> {}|{}",
                step.rule,
                step.sutra,
                detokenize(&step.before.0).unwrap(),
                detokenize(&step.before.1).unwrap(),
                detokenize(&step.after.0).unwrap(),
                detokenize(&step.after.1).unwrap(),
            );
        }
    }
}

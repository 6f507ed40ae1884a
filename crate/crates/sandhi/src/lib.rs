//! Deterministic Sanskrit euphonic-conjunction (sandhi) engine.
//!
//! Words are sequences of letter codes numbered after the Māheśvara
//! aphorism order ([`alphabet`]); euphonic junctions are rewritten by a
//! declarative set of 110 equations ([`rulebase`]) applied at a junction
//! cursor to a fixpoint with full tracing ([`engine`]). A flat-scan
//! oracle over the ~2400 expanded atomic rules, exhaustive pair tables,
//! and a golden corpus ([`corpus`]) verify the engine; [`cli`] exposes
//! everything on the command line.
//!
//! ```
//! use sandhi::alphabet::{detokenize, tokenize};
//! use sandhi::engine::{join, JunctionKind};
//! use sandhi::rulebase::RuleSet;
//!
//! let rules = RuleSet::builtin();
//! let left = tokenize("deva").unwrap();
//! let right = tokenize("indra").unwrap();
//! let joined = join(&left, &right, JunctionKind::External, rules).unwrap();
//! assert_eq!(detokenize(&joined.surface).unwrap(), "devendra");
//! ```

pub mod alphabet;
pub mod cli;
pub mod corpus;
pub mod engine;
pub mod error;
pub mod rulebase;

pub use alphabet::{detokenize, in_class, tokenize, CodeSeq, LetterCode};
pub use engine::{join, join_variants, finalize_pada, JoinResult, Junction, JunctionKind};
pub use rulebase::{count_report, RuleId, RuleSet};

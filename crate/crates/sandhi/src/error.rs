//! Error types shared across the crate.

use thiserror::Error;

use crate::rulebase::RuleId;

/// Lexical error while tokenizing IAST text.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unrecognized character {ch:?} at byte offset {offset}")]
pub struct LexError {
    pub offset: usize,
    pub ch: char,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlphabetError {
    #[error("code {0} cannot be spelled (0 is the boundary sentinel, 51 is reserved)")]
    Unspellable(u8),
    #[error("unknown letter class {0:?}")]
    UnknownClass(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RuleError {
    #[error("line {line}: syntax error: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: {msg}")]
    Semantic { line: usize, msg: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    /// The cascade hit the step limit without settling; the junction is
    /// being rewritten in a loop by the named rules.
    #[error("rule cycle after {steps} steps involving {}", rule_list(.rules))]
    Cycle { steps: usize, rules: Vec<RuleId> },
}

fn rule_list(rules: &[RuleId]) -> String {
    let mut names: Vec<String> = rules.iter().map(|r| r.to_string()).collect();
    names.dedup();
    names.join(", ")
}

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("line {line}: {msg}")]
    Malformed { line: usize, msg: String },
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

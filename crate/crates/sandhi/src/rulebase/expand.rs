//! Expansion of equations into atomic (fully instantiated) rules.
//!
//! Counting convention: a branch contributes (#X require-sequences, else
//! |x set|) x (#Y require-sequences, else |y set|) x |u set| x |w set|
//! tuples; forbid contexts contribute factor 1; commutative rules count
//! canonical unordered pairs once; overlapping branches are deduplicated.

use std::collections::HashSet;

use crate::alphabet::{CodeSeq, LetterCode};

use super::{Action, Category, CodeSet, RuleId, RuleSet, SandhiRule, Scope, YSpec};

/// One fully instantiated rule: concrete letters plus any word contexts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AtomicRule {
    pub rule_index: usize,
    pub id: RuleId,
    pub branch: usize,
    pub specificity: u32,
    pub x: LetterCode,
    /// 0 encodes the end-of-word condition.
    pub y: LetterCode,
    pub u: Option<LetterCode>,
    pub w: Option<LetterCode>,
    pub x_seq: Option<CodeSeq>,
    pub y_seq: Option<CodeSeq>,
    pub x_forbid: Vec<CodeSeq>,
    pub y_forbid: Vec<CodeSeq>,
    pub scope: Scope,
    pub optional: bool,
    pub commutative: bool,
    pub action: Action,
    /// Template output under this instantiation.
    pub out: CodeSeq,
}

#[derive(PartialEq, Eq, Hash)]
struct Key {
    x: LetterCode,
    y: LetterCode,
    u: Option<LetterCode>,
    w: Option<LetterCode>,
    x_seq: Option<CodeSeq>,
    y_seq: Option<CodeSeq>,
}

/// Enumerate the atomic rules of one equation. Errors when a template
/// evaluates outside 1..=50 anywhere in the domain.
pub fn expand(rule: &SandhiRule) -> Result<Vec<AtomicRule>, String> {
    expand_indexed(rule, 0)
}

fn expand_indexed(rule: &SandhiRule, rule_index: usize) -> Result<Vec<AtomicRule>, String> {
    let mut seen: HashSet<Key> = HashSet::new();
    let mut out = Vec::new();

    for (bi, branch) in rule.branches.iter().enumerate() {
        // X-requires pin both the suffix and x itself; same for Y.
        let x_axis: Vec<(LetterCode, Option<CodeSeq>)> = match &branch.x_require {
            Some(seqs) => seqs.iter().map(|s| (*s.last().unwrap(), Some(s.clone()))).collect(),
            None => branch.x.iter().map(|c| (c, None)).collect(),
        };
        let y_axis: Vec<(LetterCode, Option<CodeSeq>)> = match branch.y_spec() {
            YSpec::End => vec![(0, None)],
            YSpec::Set(yset) => match &branch.y_require {
                Some(seqs) => seqs.iter().map(|s| (s[0], Some(s.clone()))).collect(),
                None => yset.iter().map(|c| (c, None)).collect(),
            },
        };
        let u_axis: Vec<Option<LetterCode>> = axis(branch.u);
        let w_axis: Vec<Option<LetterCode>> = axis(branch.w);

        for (x, x_seq) in &x_axis {
            for (y, y_seq) in &y_axis {
                for &u in &u_axis {
                    for &w in &w_axis {
                        // commutative rules count each unordered pair once
                        let (kx, ky) = if rule.commutative && x > y {
                            (*y, *x)
                        } else {
                            (*x, *y)
                        };
                        let key = Key {
                            x: kx,
                            y: ky,
                            u,
                            w,
                            x_seq: x_seq.clone(),
                            y_seq: y_seq.clone(),
                        };
                        if !seen.insert(key) {
                            continue;
                        }
                        let out_codes = rule
                            .eval_terms(*x, *y, w.unwrap_or(0))
                            .ok_or_else(|| {
                                format!(
                                    "template evaluates outside 1..=50 at x={x} y={y} w={w:?}"
                                )
                            })?;
                        if rule.template.action != Action::DropX && out_codes.is_empty() {
                            return Err("empty output".to_string());
                        }
                        out.push(AtomicRule {
                            rule_index,
                            id: rule.id,
                            branch: bi,
                            specificity: branch.specificity(),
                            x: *x,
                            y: *y,
                            u,
                            w,
                            x_seq: x_seq.clone(),
                            y_seq: y_seq.clone(),
                            x_forbid: branch.x_forbid.clone().unwrap_or_default(),
                            y_forbid: branch.y_forbid.clone().unwrap_or_default(),
                            scope: rule.scope,
                            optional: rule.optional,
                            commutative: rule.commutative,
                            action: rule.template.action,
                            out: out_codes,
                        });
                    }
                }
            }
        }
    }
    Ok(out)
}

fn axis(set: Option<CodeSet>) -> Vec<Option<LetterCode>> {
    match set {
        Some(s) => s.iter().map(Some).collect(),
        None => vec![None],
    }
}

/// All atomic rules of the set, in firing precedence: specificity
/// (descending), equation domain size (ascending, exception beats
/// general), category, aphorism, equation, then enumeration order.
pub fn expand_all(rs: &RuleSet) -> Vec<AtomicRule> {
    let mut all: Vec<AtomicRule> = Vec::new();
    for (i, rule) in rs.rules.iter().enumerate() {
        all.extend(expand_indexed(rule, i).expect("validated rule set must expand"));
    }
    all.sort_by_key(|a| precedence_key(a, rs));
    all
}

fn precedence_key(a: &AtomicRule, rs: &RuleSet) -> (i64, usize, u8, u8, u8, usize) {
    (
        -(a.specificity as i64),
        rs.rule_size(a.rule_index),
        a.id.category.index(),
        a.id.aphorism,
        a.id.equation,
        a.branch,
    )
}

/// Category subtotals of an expansion, for reporting.
pub fn category_totals(atomics: &[AtomicRule]) -> [usize; 5] {
    let mut totals = [0usize; 5];
    for a in atomics {
        totals[match a.id.category {
            Category::C1 => 0,
            Category::C2 => 1,
            Category::C3 => 2,
            Category::C4 => 3,
            Category::C5 => 4,
        }] += 1;
    }
    totals
}

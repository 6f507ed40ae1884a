//! Declarative rule set: rule model, file format, expansion, count checks.
//!
//! A rule is one specialized equation (category, aphorism j, equation k)
//! with a domain given as one or more branches. A branch constrains x and
//! y and optionally u (letter before x), w (letter after y), and the whole
//! words X (left, suffix match) and Y (right, prefix match). The builtin
//! set carries the 110 shipped equations.

mod expand;
mod parse;
mod verify;

pub use expand::{category_totals, expand, expand_all, AtomicRule};
pub use verify::{count_report, family_name, CountReport, CountRow, RowStatus, EXPECTED_TOTAL};

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use crate::alphabet::{same_letter, CodeSeq, LetterCode};
use crate::error::RuleError;

/// The five transformation categories.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Category {
    C1,
    C2,
    C3,
    C4,
    C5,
}

impl Category {
    pub fn index(self) -> u8 {
        match self {
            Category::C1 => 1,
            Category::C2 => 2,
            Category::C3 => 3,
            Category::C4 => 4,
            Category::C5 => 5,
        }
    }

    fn from_index(n: u8) -> Option<Category> {
        match n {
            1 => Some(Category::C1),
            2 => Some(Category::C2),
            3 => Some(Category::C3),
            4 => Some(Category::C4),
            5 => Some(Category::C5),
            _ => None,
        }
    }

    /// What the category does to the junction.
    pub fn action(self) -> Action {
        match self {
            Category::C1 => Action::ReplaceBoth,
            Category::C2 => Action::ReplaceX,
            Category::C3 => Action::ReplaceY,
            Category::C4 => Action::InsertBetween,
            Category::C5 => Action::DropX,
        }
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C{}", self.index())
    }
}

/// Rule identity: category, aphorism index j, equation index k.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RuleId {
    pub category: Category,
    pub aphorism: u8,
    pub equation: u8,
}

impl RuleId {
    pub fn new(category: Category, aphorism: u8, equation: u8) -> RuleId {
        RuleId { category, aphorism, equation }
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}.{}", self.category, self.aphorism, self.equation)
    }
}

impl FromStr for RuleId {
    type Err = String;

    fn from_str(s: &str) -> Result<RuleId, String> {
        let bad = || format!("bad rule id {s:?} (want C<cat>.<j>.<k>)");
        let rest = s.strip_prefix('C').ok_or_else(bad)?;
        let mut parts = rest.split('.');
        let cat: u8 = parts.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
        let j: u8 = parts.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
        let k: u8 = parts.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
        if parts.next().is_some() {
            return Err(bad());
        }
        Ok(RuleId::new(Category::from_index(cat).ok_or_else(bad)?, j, k))
    }
}

/// Small set of letter codes as a bitmask (codes fit in 0..52).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CodeSet(u64);

impl CodeSet {
    pub fn empty() -> CodeSet {
        CodeSet(0)
    }

    pub fn insert(&mut self, code: LetterCode) {
        debug_assert!(code < 64);
        self.0 |= 1 << code;
    }

    pub fn remove(&mut self, code: LetterCode) {
        self.0 &= !(1 << code);
    }

    fn contains_raw(self, code: LetterCode) -> bool {
        code < 64 && self.0 & (1 << code) != 0
    }

    /// Membership with the h alias: a set naming either 14 or 47 matches both.
    pub fn contains(self, code: LetterCode) -> bool {
        self.contains_raw(code)
            || ((code == 14 || code == 47) && (self.contains_raw(14) || self.contains_raw(47)))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = LetterCode> {
        (0..64u8).filter(move |&c| self.0 & (1 << c) != 0)
    }
}

impl FromIterator<LetterCode> for CodeSet {
    fn from_iter<T: IntoIterator<Item = LetterCode>>(iter: T) -> CodeSet {
        let mut set = CodeSet::empty();
        for c in iter {
            set.insert(c);
        }
        set
    }
}

/// The y side of a domain: a set of letters, or the end-of-word marker.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum YSpec {
    Set(CodeSet),
    End,
}

/// One conjunct of a rule's domain.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Branch {
    pub x: CodeSet,
    pub y: Option<YSpec>,
    pub u: Option<CodeSet>,
    pub w: Option<CodeSet>,
    pub x_require: Option<Vec<CodeSeq>>,
    pub y_require: Option<Vec<CodeSeq>>,
    pub x_forbid: Option<Vec<CodeSeq>>,
    pub y_forbid: Option<Vec<CodeSeq>>,
}

impl Branch {
    /// Number of positive context constraints (X?/Y?/u/w). Forbid
    /// constraints do not count: they are satisfied by absence.
    pub fn specificity(&self) -> u32 {
        self.x_require.is_some() as u32
            + self.y_require.is_some() as u32
            + self.u.is_some() as u32
            + self.w.is_some() as u32
    }

    pub fn y_spec(&self) -> YSpec {
        self.y.expect("branch without y survived validation")
    }
}

/// One output term of a template.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Term {
    Const(LetterCode),
    XPlus(i16),
    YPlus(i16),
    CopyX,
    CopyY,
    CopyW,
}

impl Term {
    /// Evaluate against concrete bindings; None when out of 1..=50.
    pub fn eval(self, x: LetterCode, y: LetterCode, w: LetterCode) -> Option<LetterCode> {
        let v: i16 = match self {
            Term::Const(c) => c as i16,
            Term::XPlus(d) => x as i16 + d,
            Term::YPlus(d) => y as i16 + d,
            Term::CopyX => x as i16,
            Term::CopyY => y as i16,
            Term::CopyW => w as i16,
        };
        if (1..=50).contains(&v) {
            Some(v as u8)
        } else {
            None
        }
    }
}

/// How a rule rewrites the junction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Action {
    ReplaceBoth,
    ReplaceX,
    ReplaceY,
    InsertBetween,
    DropX,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OutputTemplate {
    pub action: Action,
    pub terms: Vec<Term>,
}

/// Where a rule may fire.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scope {
    External,
    Internal,
    Both,
}

impl Scope {
    pub fn allows_external(self) -> bool {
        matches!(self, Scope::External | Scope::Both)
    }

    pub fn allows_internal(self) -> bool {
        matches!(self, Scope::Internal | Scope::Both)
    }
}

/// One specialized equation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SandhiRule {
    pub id: RuleId,
    /// Aphorism number(s), e.g. "6.1.87" or "8.4.41,8.4.43".
    pub sutra: String,
    pub optional: bool,
    pub commutative: bool,
    pub scope: Scope,
    pub branches: Vec<Branch>,
    pub template: OutputTemplate,
}

impl SandhiRule {
    /// Evaluate the template. `w` is only read by CopyW terms.
    pub fn eval_terms(&self, x: LetterCode, y: LetterCode, w: LetterCode) -> Option<CodeSeq> {
        self.template
            .terms
            .iter()
            .map(|t| t.eval(x, y, w))
            .collect()
    }
}

/// A validated, ordered collection of rules.
#[derive(Debug, Clone)]
pub struct RuleSet {
    pub rules: Vec<SandhiRule>,
    pub source: String,
    sizes: Vec<usize>,
}

impl RuleSet {
    /// Parse and validate a rule file. Every template is range-checked by
    /// trial expansion.
    pub fn parse_rules(text: &str) -> Result<RuleSet, RuleError> {
        let rules = parse::parse(text)?;
        Self::assemble(rules, "<inline>".to_string())
    }

    pub fn load(path: &std::path::Path) -> Result<RuleSet, RuleError> {
        let text = std::fs::read_to_string(path).map_err(|e| RuleError::Semantic {
            line: 0,
            msg: format!("cannot read {}: {e}", path.display()),
        })?;
        let rules = parse::parse(&text)?;
        Self::assemble(rules, path.display().to_string())
    }

    fn assemble(rules: Vec<SandhiRule>, source: String) -> Result<RuleSet, RuleError> {
        let mut sizes = Vec::with_capacity(rules.len());
        for rule in &rules {
            let atomics = expand::expand(rule).map_err(|msg| RuleError::Semantic {
                line: 0,
                msg: format!("rule {}: {msg}", rule.id),
            })?;
            if atomics.is_empty() {
                return Err(RuleError::Semantic {
                    line: 0,
                    msg: format!("rule {}: empty domain", rule.id),
                });
            }
            sizes.push(atomics.len());
        }
        Ok(RuleSet { rules, source, sizes })
    }

    /// Number of atomic (fully instantiated) rules the equation expands to.
    pub fn rule_size(&self, index: usize) -> usize {
        self.sizes[index]
    }

    pub fn find(&self, id: RuleId) -> Option<&SandhiRule> {
        self.rules.iter().find(|r| r.id == id)
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    /// The shipped 110-equation set.
    pub fn builtin() -> &'static RuleSet {
        static BUILTIN: OnceLock<RuleSet> = OnceLock::new();
        BUILTIN.get_or_init(|| {
            let mut rs = RuleSet::parse_rules(BUILTIN_RULES)
                .expect("builtin rule file must parse");
            rs.source = "builtin".to_string();
            rs
        })
    }
}

/// Text of the shipped rule file (also installed at rules/panini110.rules).
pub const BUILTIN_RULES: &str =
    include_str!(concat!(env!("CARGO_MANIFEST_DIR"), "/../../rules/panini110.rules"));

/// Sequence comparison with the h alias.
pub fn seq_eq(a: &[LetterCode], b: &[LetterCode]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(&x, &y)| same_letter(x, y))
}

/// Does `word` end with `suffix` (h-aliased)?
pub fn ends_with(word: &[LetterCode], suffix: &[LetterCode]) -> bool {
    word.len() >= suffix.len() && seq_eq(&word[word.len() - suffix.len()..], suffix)
}

/// Does `word` start with `prefix` (h-aliased)?
pub fn starts_with(word: &[LetterCode], prefix: &[LetterCode]) -> bool {
    word.len() >= prefix.len() && seq_eq(&word[..prefix.len()], prefix)
}

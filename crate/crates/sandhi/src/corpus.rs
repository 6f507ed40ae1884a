//! Golden corpus, exhaustive pair tables, and the flat-scan oracle.
//!
//! The oracle is deliberately naive and structurally unlike the engine:
//! it scans the fully expanded atomic rules in precedence order, takes
//! the first hit that changes anything, and applies it once, with no
//! junction bookkeeping. Engine bugs and oracle bugs are unlikely to
//! coincide.

use std::fmt;
use std::str::FromStr;

use crate::alphabet::{canon, detokenize, same_letter, tokenize, CodeSeq, LetterCode};
use crate::engine::{self, JunctionKind};
use crate::error::CorpusError;
use crate::rulebase::{
    ends_with, expand_all, starts_with, Action, AtomicRule, RuleId, RuleSet,
};

// ---- oracle ----

/// Flat list of atomic rules with an index by (alias-normalized) x.
pub struct Oracle {
    atomics: Vec<AtomicRule>,
    buckets: Vec<Vec<u32>>,
}

impl Oracle {
    pub fn new(rs: &RuleSet) -> Oracle {
        let atomics = expand_all(rs);
        let mut buckets: Vec<Vec<u32>> = vec![Vec::new(); 52];
        for (i, a) in atomics.iter().enumerate() {
            buckets[canon(a.x) as usize].push(i as u32);
            if a.commutative && canon(a.y) != canon(a.x) {
                buckets[canon(a.y) as usize].push(i as u32);
            }
        }
        Oracle { atomics, buckets }
    }

    pub fn len(&self) -> usize {
        self.atomics.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atomics.is_empty()
    }

    /// First atomic rule that matches and changes something, applied
    /// once. None when no atomic applies (identity hits do not count).
    pub fn step(
        &self,
        left: &[LetterCode],
        right: &[LetterCode],
        kind: JunctionKind,
    ) -> Option<(RuleId, CodeSeq)> {
        let x = *left.last()?;
        for &i in &self.buckets[canon(x) as usize] {
            let a = &self.atomics[i as usize];
            if let Some(surface) = self.try_atomic(a, left, right, kind) {
                return Some((a.id, surface));
            }
        }
        None
    }

    fn try_atomic(
        &self,
        a: &AtomicRule,
        left: &[LetterCode],
        right: &[LetterCode],
        kind: JunctionKind,
    ) -> Option<CodeSeq> {
        match kind {
            JunctionKind::External if !a.scope.allows_external() => return None,
            JunctionKind::Internal if !a.scope.allows_internal() => return None,
            _ => {}
        }
        let x = *left.last().unwrap();
        let y = right.first().copied().unwrap_or(0);
        let direct = same_letter(a.x, x) && (a.y == y || (a.y != 0 && y != 0 && same_letter(a.y, y)));
        let swapped = a.commutative
            && y != 0
            && same_letter(a.x, y)
            && same_letter(a.y, x)
            && !direct;
        if !direct && !swapped {
            return None;
        }
        if let Some(u) = a.u {
            if left.len() < 2 || !same_letter(left[left.len() - 2], u) {
                return None;
            }
        }
        if let Some(w) = a.w {
            if right.len() < 2 || !same_letter(right[1], w) {
                return None;
            }
        }
        if let Some(seq) = &a.x_seq {
            if !ends_with(left, seq) {
                return None;
            }
        }
        if let Some(seq) = &a.y_seq {
            if !starts_with(right, seq) {
                return None;
            }
        }
        // conjunctive exception group
        let xf = (!a.x_forbid.is_empty()).then(|| a.x_forbid.iter().any(|s| ends_with(left, s)));
        let yf = (!a.y_forbid.is_empty()).then(|| a.y_forbid.iter().any(|s| starts_with(right, s)));
        match (xf, yf) {
            (Some(true), Some(true)) | (Some(true), None) | (None, Some(true)) => return None,
            _ => {}
        }
        // skip identity hits so that pairs with no real rule report none
        let identity = match a.action {
            Action::ReplaceBoth => {
                a.out.len() == 2 && same_letter(a.out[0], x) && same_letter(a.out[1], y)
            }
            Action::ReplaceX => a.out.len() == 1 && same_letter(a.out[0], x),
            Action::ReplaceY => a.out.len() == 1 && same_letter(a.out[0], y),
            Action::InsertBetween | Action::DropX => false,
        };
        if identity {
            return None;
        }
        let mut surface = CodeSeq::new();
        match a.action {
            Action::ReplaceBoth => {
                surface.extend_from_slice(&left[..left.len() - 1]);
                surface.extend_from_slice(&a.out);
                surface.extend_from_slice(&right[1..]);
            }
            Action::ReplaceX => {
                surface.extend_from_slice(&left[..left.len() - 1]);
                surface.extend_from_slice(&a.out);
                surface.extend_from_slice(right);
            }
            Action::ReplaceY => {
                surface.extend_from_slice(left);
                surface.extend_from_slice(&a.out);
                surface.extend_from_slice(&right[1..]);
            }
            Action::InsertBetween => {
                surface.extend_from_slice(left);
                surface.extend_from_slice(&a.out);
                surface.extend_from_slice(right);
            }
            Action::DropX => {
                surface.extend_from_slice(&left[..left.len() - 1]);
                surface.extend_from_slice(right);
            }
        }
        Some(surface)
    }
}

// ---- pair table ----

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairRow {
    pub x: LetterCode,
    pub y: LetterCode,
    pub u: Option<LetterCode>,
    pub w: Option<LetterCode>,
    pub surface: CodeSeq,
    pub rule: Option<RuleId>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairTable {
    pub rows: Vec<PairRow>,
}

/// Context letters any rule declares for u, in order.
pub fn declared_u(rs: &RuleSet) -> Vec<LetterCode> {
    let mut out: Vec<LetterCode> = rs
        .rules
        .iter()
        .flat_map(|r| r.branches.iter())
        .filter_map(|b| b.u)
        .flat_map(|s| s.iter().collect::<Vec<_>>())
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Context letters any rule declares for w, in order.
pub fn declared_w(rs: &RuleSet) -> Vec<LetterCode> {
    let mut out: Vec<LetterCode> = rs
        .rules
        .iter()
        .flat_map(|r| r.branches.iter())
        .filter_map(|b| b.w)
        .flat_map(|s| s.iter().collect::<Vec<_>>())
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Exhaustive single-application table over all letter pairs, produced by
/// the oracle. With contexts, each pair is also evaluated once per
/// declared u value (as `[u,x] + [y]`) and per declared w value
/// (as `[x] + [y,w]`).
pub fn gen_pair_table(rs: &RuleSet, with_contexts: bool) -> PairTable {
    let oracle = Oracle::new(rs);
    let us = if with_contexts { declared_u(rs) } else { Vec::new() };
    let ws = if with_contexts { declared_w(rs) } else { Vec::new() };
    let mut rows = Vec::new();
    for x in 1..=50u8 {
        for y in 1..=50u8 {
            rows.push(oracle_row(&oracle, x, y, None, None));
            for &u in &us {
                rows.push(oracle_row(&oracle, x, y, Some(u), None));
            }
            for &w in &ws {
                rows.push(oracle_row(&oracle, x, y, None, Some(w)));
            }
        }
    }
    PairTable { rows }
}

fn oracle_row(
    oracle: &Oracle,
    x: LetterCode,
    y: LetterCode,
    u: Option<LetterCode>,
    w: Option<LetterCode>,
) -> PairRow {
    let left: CodeSeq = u.into_iter().chain([x]).collect();
    let right: CodeSeq = [y].into_iter().chain(w).collect();
    match oracle.step(&left, &right, JunctionKind::External) {
        Some((rule, surface)) => PairRow { x, y, u, w, surface, rule: Some(rule) },
        None => {
            let mut surface = left;
            surface.extend_from_slice(&right);
            PairRow { x, y, u, w, surface, rule: None }
        }
    }
}

impl PairTable {
    pub fn write_tsv<W: std::io::Write + ?Sized>(&self, out: &mut W) -> std::io::Result<()> {
        writeln!(out, "x\ty\tu\tw\tsurface\trule_id")?;
        for row in &self.rows {
            writeln!(out, "{}", row)?;
        }
        Ok(())
    }
}

impl fmt::Display for PairRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let opt = |v: Option<LetterCode>| v.map_or("-".to_string(), |c| c.to_string());
        let surface = self
            .surface
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(" ");
        let rule = self
            .rule
            .map(|r| r.to_string())
            .unwrap_or_else(|| "none".to_string());
        write!(
            f,
            "{}\t{}\t{}\t{}\t{}\t{}",
            self.x,
            self.y,
            opt(self.u),
            opt(self.w),
            surface,
            rule
        )
    }
}

// ---- golden corpus ----

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EntryKind {
    External,
    Internal,
    /// External join followed by word-final adjustment.
    Final,
}

impl FromStr for EntryKind {
    type Err = String;

    fn from_str(s: &str) -> Result<EntryKind, String> {
        match s {
            "ext" | "external" => Ok(EntryKind::External),
            "int" | "internal" => Ok(EntryKind::Internal),
            "final" => Ok(EntryKind::Final),
            other => Err(format!("bad kind {other:?}")),
        }
    }
}

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub line: usize,
    pub left: String,
    pub right: String,
    pub expected: String,
    pub rule_ids: Vec<RuleId>,
    pub kind: EntryKind,
    pub variants: Option<Vec<String>>,
}

/// Parse the tab-separated corpus format. `#` starts a comment; a field
/// beginning with `#` comments out the rest of its line.
pub fn parse_corpus(text: &str) -> Result<Vec<CorpusEntry>, CorpusError> {
    let mut entries = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        if raw.trim().is_empty() || raw.trim_start().starts_with('#') {
            continue;
        }
        let mut fields: Vec<&str> = raw.split('\t').map(str::trim).collect();
        if let Some(pos) = fields.iter().position(|f| f.starts_with('#')) {
            fields.truncate(pos);
        }
        if fields.len() < 5 || fields.len() > 6 {
            return Err(CorpusError::Malformed {
                line,
                msg: format!("expected 5 or 6 tab-separated fields, got {}", fields.len()),
            });
        }
        let rule_ids = if fields[3] == "-" {
            Vec::new()
        } else {
            fields[3]
                .split(',')
                .map(|s| RuleId::from_str(s.trim()))
                .collect::<Result<Vec<_>, _>>()
                .map_err(|msg| CorpusError::Malformed { line, msg })?
        };
        let kind = fields[4]
            .parse()
            .map_err(|msg| CorpusError::Malformed { line, msg })?;
        let variants = fields.get(5).map(|v| {
            v.split(';')
                .map(|s| s.trim().to_string())
                .filter(|s| !s.is_empty())
                .collect()
        });
        entries.push(CorpusEntry {
            line,
            left: fields[0].to_string(),
            right: fields[1].to_string(),
            expected: fields[2].to_string(),
            rule_ids,
            kind,
            variants,
        });
    }
    Ok(entries)
}

#[derive(Debug, Clone)]
pub struct EntryResult {
    pub line: usize,
    pub label: String,
    pub ok: bool,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct CorpusReport {
    pub results: Vec<EntryResult>,
}

impl CorpusReport {
    pub fn passed(&self) -> usize {
        self.results.iter().filter(|r| r.ok).count()
    }

    pub fn failed(&self) -> usize {
        self.results.len() - self.passed()
    }

    pub fn all_passed(&self) -> bool {
        self.failed() == 0
    }
}

impl fmt::Display for CorpusReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.results {
            let mark = if r.ok { "PASS" } else { "FAIL" };
            writeln!(f, "{mark} line {:>3}  {}  {}", r.line, r.label, r.detail)?;
        }
        writeln!(f, "{} passed, {} failed", self.passed(), self.failed())
    }
}

fn ids_to_string(ids: &[RuleId]) -> String {
    if ids.is_empty() {
        "-".to_string()
    } else {
        ids.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(",")
    }
}

/// Run every corpus entry, comparing surfaces, fired rule ids, and
/// variant sets where listed.
pub fn run_corpus(text: &str, rs: &RuleSet) -> Result<CorpusReport, CorpusError> {
    let entries = parse_corpus(text)?;
    let mut results = Vec::new();
    for entry in &entries {
        results.push(run_entry(entry, rs)?);
    }
    Ok(CorpusReport { results })
}

fn run_entry(entry: &CorpusEntry, rs: &RuleSet) -> Result<EntryResult, CorpusError> {
    let bad = |msg: String| CorpusError::Malformed { line: entry.line, msg };
    let left = tokenize(&entry.left).map_err(|e| bad(format!("left word: {e}")))?;
    let right = tokenize(&entry.right).map_err(|e| bad(format!("right word: {e}")))?;
    for id in &entry.rule_ids {
        if rs.find(*id).is_none() {
            return Err(bad(format!("unknown rule id {id}")));
        }
    }
    let label = format!("{}+{}", entry.left, entry.right);

    let kind = match entry.kind {
        EntryKind::Internal => JunctionKind::Internal,
        _ => JunctionKind::External,
    };
    let joined = match engine::join(&left, &right, kind, rs) {
        Ok(j) => j,
        Err(e) => {
            return Ok(EntryResult {
                line: entry.line,
                label,
                ok: false,
                detail: format!("engine error: {e}"),
            })
        }
    };
    let (surface, mut fired): (CodeSeq, Vec<RuleId>) = {
        let fired = joined.trace.steps.iter().map(|s| s.rule).collect();
        (joined.surface, fired)
    };
    let surface = if entry.kind == EntryKind::Final {
        let (finalized, trace) = engine::finalize_pada(&surface, rs);
        fired.extend(trace.steps.iter().map(|s| s.rule));
        finalized
    } else {
        surface
    };

    // surfaces and variants compare as canonical IAST strings
    let mut problems = Vec::new();
    let got_text = detokenize(&surface).unwrap_or_else(|_| format!("{surface:?}"));
    if got_text != entry.expected {
        problems.push(format!("surface {} != expected {}", got_text, entry.expected));
    }
    if fired != entry.rule_ids {
        problems.push(format!(
            "rules {} != expected {}",
            ids_to_string(&fired),
            ids_to_string(&entry.rule_ids)
        ));
    }
    if let Some(expected_variants) = &entry.variants {
        let mut want = expected_variants.clone();
        want.sort();
        match engine::join_variants(&left, &right, kind, rs) {
            Ok(results) => {
                let mut got: Vec<String> = results
                    .iter()
                    .map(|r| detokenize(&r.surface).unwrap_or_else(|_| format!("{:?}", r.surface)))
                    .collect();
                got.sort();
                if got != want {
                    problems.push(format!(
                        "variants {} != expected {}",
                        got.join(";"),
                        want.join(";")
                    ));
                }
            }
            Err(e) => problems.push(format!("variant enumeration error: {e}")),
        }
    }

    let ok = problems.is_empty();
    let detail = if ok {
        format!("-> {} [{}]", entry.expected, ids_to_string(&entry.rule_ids))
    } else {
        problems.join("; ")
    };
    Ok(EntryResult { line: entry.line, label, ok, detail })
}

/// The shipped golden corpus (also installed at corpus/golden.tsv).
pub const GOLDEN_CORPUS: &str =
    include_str!(concat!(env!("CARGO_MANIFEST_DIR"), "/../../corpus/golden.tsv"));

#[cfg(test)]
mod tests {
    use super::*;

    fn rs() -> &'static RuleSet {
        RuleSet::builtin()
    }

    #[test]
    fn oracle_rows_from_the_letter_tables() {
        let oracle = Oracle::new(rs());
        // 1 + 2 = 2
        let (id, surface) = oracle.step(&[1], &[2], JunctionKind::External).unwrap();
        assert_eq!(id.to_string(), "C1.8.1");
        assert_eq!(surface, vec![2]);
        // i + a -> ya
        let (id, surface) = oracle.step(&[3], &[1], JunctionKind::External).unwrap();
        assert_eq!(id.to_string(), "C2.1.1");
        assert_eq!(surface, vec![15, 1]);
        // no rule for k + k: the identity cartva hit does not count
        assert!(oracle.step(&[42], &[42], JunctionKind::External).is_none());
    }

    #[test]
    fn pair_table_covers_the_grid_once() {
        let table = gen_pair_table(rs(), false);
        assert_eq!(table.rows.len(), 50 * 50);
        let row = table
            .rows
            .iter()
            .find(|r| r.x == 1 && r.y == 2)
            .unwrap();
        assert_eq!(row.surface, vec![2]);
        assert_eq!(row.rule.unwrap().to_string(), "C1.8.1");
        let row = table
            .rows
            .iter()
            .find(|r| r.x == 42 && r.y == 42)
            .unwrap();
        assert_eq!(row.surface, vec![42, 42]);
        assert!(row.rule.is_none());
    }

    #[test]
    fn pair_table_is_stable() {
        let mut a = Vec::new();
        gen_pair_table(rs(), false).write_tsv(&mut a).unwrap();
        let mut b = Vec::new();
        gen_pair_table(rs(), false).write_tsv(&mut b).unwrap();
        assert_eq!(a, b);
        assert!(a.starts_with(b"x\ty\tu\tw\tsurface\trule_id\n"));
    }

    #[test]
    fn declared_contexts() {
        assert_eq!(declared_u(rs()), vec![1, 2, 3, 5, 7, 9, 11]);
        assert_eq!(declared_w(rs()), (1..=23).collect::<Vec<_>>());
    }

    #[test]
    fn corpus_entries_parse() {
        let text = "# comment\nder̄a\tx\ty\tC1.1.1\text\n";
        // malformed IAST only surfaces at run time, parse is structural
        let entries = parse_corpus(text).unwrap();
        assert_eq!(entries.len(), 1);
        assert_eq!(entries[0].line, 2);

        let text = "a\tb\tc\tC1.1.1,C2.2.2\tint\tv1;v2\t# note\n";
        let e = &parse_corpus(text).unwrap()[0];
        assert_eq!(e.rule_ids.len(), 2);
        assert_eq!(e.kind, EntryKind::Internal);
        assert_eq!(e.variants.as_deref(), Some(&["v1".to_string(), "v2".to_string()][..]));

        assert!(parse_corpus("too\tfew\n").is_err());
        assert!(parse_corpus("a\tb\tc\tnot-an-id\text\n").is_err());
    }

    #[test]
    fn corpus_reports_mismatches() {
        // deliberate mismatch shows a surface diff and fails the run
        let report = run_corpus("deva\tindra\txyz\tC1.1.1\text\n", rs()).unwrap();
        assert!(!report.all_passed());
        assert!(report.results[0].detail.contains("surface"));

        let report = run_corpus("deva\tindra\tdevendra\tC1.1.1\text\n", rs()).unwrap();
        assert!(report.all_passed());

        // wrong rule ids also fail
        let report = run_corpus("deva\tindra\tdevendra\tC1.1.2\text\n", rs()).unwrap();
        assert!(!report.all_passed());
        assert!(report.results[0].detail.contains("rules"));
    }

    #[test]
    fn shipped_golden_corpus_passes() {
        let report = run_corpus(GOLDEN_CORPUS, rs()).unwrap();
        assert!(report.all_passed(), "{report}");
        assert!(report.results.len() >= 40);
    }

    #[test]
    fn golden_corpus_fields_are_canonical() {
        // every IAST field round-trips through the letter codes
        for entry in parse_corpus(GOLDEN_CORPUS).unwrap() {
            let fields = [&entry.left, &entry.right, &entry.expected];
            let variants = entry.variants.clone().unwrap_or_default();
            for text in fields.into_iter().chain(variants.iter()) {
                let codes = tokenize(text).unwrap_or_else(|e| panic!("line {}: {e}", entry.line));
                assert_eq!(&detokenize(&codes).unwrap(), text, "line {}", entry.line);
            }
        }
    }
}

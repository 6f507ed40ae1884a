//! Junction evaluation: rule selection, application, cascading, tracing.
//!
//! A junction is a cursor between a left and a right code sequence. One
//! step selects the best matching rule and rewrites the junction; `join`
//! repeats this until nothing changes, relocating the cursor after the
//! letters a rule wrote. Candidate order is: specificity (positive
//! context constraints), then smaller expanded domain (an exception beats
//! the general rule it carves out of), then category, then listing order.

use crate::alphabet::{CodeSeq, LetterCode};
use crate::error::EngineError;
use crate::rulebase::{
    ends_with, starts_with, Action, Branch, RuleId, RuleSet, SandhiRule, YSpec,
};

/// External: between words. Internal: inside a word (before affixes).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JunctionKind {
    External,
    Internal,
}

/// Working state: the boundary between two letter sequences.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Junction {
    pub left: CodeSeq,
    pub right: CodeSeq,
    pub kind: JunctionKind,
}

impl Junction {
    pub fn new(left: CodeSeq, right: CodeSeq, kind: JunctionKind) -> Junction {
        Junction { left, right, kind }
    }

    /// Last letter of the left side (0 when absent).
    pub fn x(&self) -> LetterCode {
        self.left.last().copied().unwrap_or(0)
    }

    /// First letter of the right side (0 when absent).
    pub fn y(&self) -> LetterCode {
        self.right.first().copied().unwrap_or(0)
    }

    /// Letter just before x (0 when absent).
    pub fn u(&self) -> LetterCode {
        if self.left.len() >= 2 {
            self.left[self.left.len() - 2]
        } else {
            0
        }
    }

    /// Letter just after y (0 when absent).
    pub fn w(&self) -> LetterCode {
        self.right.get(1).copied().unwrap_or(0)
    }

    pub fn surface(&self) -> CodeSeq {
        let mut s = self.left.clone();
        s.extend_from_slice(&self.right);
        s
    }
}

/// A rule that matched a junction, with how it matched.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchCandidate {
    pub rule_index: usize,
    pub id: RuleId,
    /// Commutative rule matched with x and y exchanged.
    pub swapped: bool,
    pub branch: usize,
    pub specificity: u32,
    pub optional: bool,
}

fn branch_matches(branch: &Branch, j: &Junction, swapped: bool) -> bool {
    let (x, y) = if swapped { (j.y(), j.x()) } else { (j.x(), j.y()) };
    if x == 0 || !branch.x.contains(x) {
        return false;
    }
    match branch.y_spec() {
        YSpec::End => {
            if y != 0 {
                return false;
            }
        }
        YSpec::Set(set) => {
            if y == 0 || !set.contains(y) {
                return false;
            }
        }
    }
    if let Some(u_set) = branch.u {
        if j.u() == 0 || !u_set.contains(j.u()) {
            return false;
        }
    }
    if let Some(w_set) = branch.w {
        if j.w() == 0 || !w_set.contains(j.w()) {
            return false;
        }
    }
    if let Some(seqs) = &branch.x_require {
        if !seqs.iter().any(|s| ends_with(&j.left, s)) {
            return false;
        }
    }
    if let Some(seqs) = &branch.y_require {
        if !seqs.iter().any(|s| starts_with(&j.right, s)) {
            return false;
        }
    }
    // forbid constraints form one exception group: the branch is blocked
    // only when every one of them matches
    let x_blocked = branch
        .x_forbid
        .as_ref()
        .map(|seqs| seqs.iter().any(|s| ends_with(&j.left, s)));
    let y_blocked = branch
        .y_forbid
        .as_ref()
        .map(|seqs| seqs.iter().any(|s| starts_with(&j.right, s)));
    match (x_blocked, y_blocked) {
        (Some(true), Some(true)) | (Some(true), None) | (None, Some(true)) => return false,
        _ => {}
    }
    true
}

fn scope_allows(rule: &SandhiRule, kind: JunctionKind) -> bool {
    match kind {
        JunctionKind::External => rule.scope.allows_external(),
        JunctionKind::Internal => rule.scope.allows_internal(),
    }
}

/// All rules satisfied at the junction, in firing order.
pub fn match_candidates(j: &Junction, rs: &RuleSet) -> Vec<MatchCandidate> {
    let mut out: Vec<MatchCandidate> = Vec::new();
    for (rule_index, rule) in rs.rules.iter().enumerate() {
        if !scope_allows(rule, j.kind) {
            continue;
        }
        let push_first_branch = |swapped: bool, out: &mut Vec<MatchCandidate>| {
            for (bi, branch) in rule.branches.iter().enumerate() {
                if branch_matches(branch, j, swapped) {
                    out.push(MatchCandidate {
                        rule_index,
                        id: rule.id,
                        swapped,
                        branch: bi,
                        specificity: branch.specificity(),
                        optional: rule.optional,
                    });
                    break;
                }
            }
        };
        push_first_branch(false, &mut out);
        if rule.commutative {
            push_first_branch(true, &mut out);
        }
    }
    out.sort_by_key(|c| {
        (
            -(c.specificity as i64),
            rs.rule_size(c.rule_index),
            c.id.category.index(),
            c.id.aphorism,
            c.id.equation,
            c.swapped,
            c.branch,
        )
    });
    out
}

/// Rewrite the junction as the candidate's rule prescribes. The cursor
/// lands after the letters just written (after left's last letter for
/// C3/C5 rules).
pub fn apply(c: &MatchCandidate, j: &Junction, rs: &RuleSet) -> Junction {
    let rule = &rs.rules[c.rule_index];
    let (bx, by) = if c.swapped { (j.y(), j.x()) } else { (j.x(), j.y()) };
    let out = rule
        .eval_terms(bx, by, j.w())
        .expect("load-time validation keeps templates in range");

    let mut left = j.left.clone();
    let mut right = j.right.clone();
    match rule.template.action {
        Action::ReplaceBoth => {
            left.pop();
            left.extend_from_slice(&out);
            right.remove(0);
        }
        Action::ReplaceX => {
            left.pop();
            left.extend_from_slice(&out);
        }
        Action::ReplaceY => {
            right.remove(0);
            right.splice(0..0, out.iter().copied());
        }
        Action::InsertBetween => {
            left.extend_from_slice(&out);
        }
        Action::DropX => {
            left.pop();
        }
    }
    Junction { left, right, kind: j.kind }
}

/// One recorded rewrite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub rule: RuleId,
    pub sutra: String,
    pub before: (CodeSeq, CodeSeq),
    pub after: (CodeSeq, CodeSeq),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Termination {
    /// Candidates existed but none changed the junction.
    Fixpoint,
    /// No rule matched.
    NoMatch,
    /// The step limit cut the cascade (reported as a cycle error by join).
    StepLimit,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JoinTrace {
    pub steps: Vec<TraceStep>,
    pub terminated_by: Termination,
}

/// One optional-rule decision taken while cascading.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VariantChoice {
    pub rule: RuleId,
    pub applied: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JoinResult {
    pub surface: CodeSeq,
    pub trace: JoinTrace,
    pub variant_tag: Vec<VariantChoice>,
}

/// Cascades are bounded; no classical derivation needs more steps, and
/// the bound turns rewrite cycles into errors.
pub const STEP_LIMIT: usize = 8;

/// First candidate whose application changes the junction, applied once.
pub fn single_step(j: &Junction, rs: &RuleSet) -> Option<(RuleId, Junction)> {
    for c in match_candidates(j, rs) {
        let next = apply(&c, j, rs);
        if next != *j {
            return Some((c.id, next));
        }
    }
    None
}

fn cycle_error(steps: &[TraceStep]) -> EngineError {
    let mut rules: Vec<RuleId> = Vec::new();
    for s in steps {
        if !rules.contains(&s.rule) {
            rules.push(s.rule);
        }
    }
    EngineError::Cycle { steps: steps.len(), rules }
}

/// Join two words at a junction, cascading to a fixpoint. Optional rules
/// are applied as if mandatory, so the result is a single surface.
pub fn join(
    left: &[LetterCode],
    right: &[LetterCode],
    kind: JunctionKind,
    rs: &RuleSet,
) -> Result<JoinResult, EngineError> {
    let mut cur = Junction::new(left.to_vec(), right.to_vec(), kind);
    let mut steps: Vec<TraceStep> = Vec::new();
    let terminated_by = loop {
        let candidates = match_candidates(&cur, rs);
        if candidates.is_empty() {
            break Termination::NoMatch;
        }
        let mut effective = None;
        for c in &candidates {
            let next = apply(c, &cur, rs);
            if next != cur {
                effective = Some((c.clone(), next));
                break;
            }
        }
        let Some((cand, next)) = effective else {
            break Termination::Fixpoint;
        };
        if steps.len() == STEP_LIMIT {
            return Err(cycle_error(&steps));
        }
        steps.push(TraceStep {
            rule: cand.id,
            sutra: rs.rules[cand.rule_index].sutra.clone(),
            before: (cur.left.clone(), cur.right.clone()),
            after: (next.left.clone(), next.right.clone()),
        });
        cur = next;
    };
    Ok(JoinResult {
        surface: cur.surface(),
        trace: JoinTrace { steps, terminated_by },
        variant_tag: Vec::new(),
    })
}

/// Join with branching on every optional-rule decision point. Surfaces
/// are deduplicated; each result carries the choices that produced it.
pub fn join_variants(
    left: &[LetterCode],
    right: &[LetterCode],
    kind: JunctionKind,
    rs: &RuleSet,
) -> Result<Vec<JoinResult>, EngineError> {
    let start = Junction::new(left.to_vec(), right.to_vec(), kind);
    let mut results: Vec<JoinResult> = Vec::new();
    walk(start, Vec::new(), Vec::new(), rs, &mut results)?;
    results.sort_by(|a, b| a.surface.cmp(&b.surface));
    results.dedup_by(|a, b| a.surface == b.surface);
    Ok(results)
}

fn walk(
    mut cur: Junction,
    mut steps: Vec<TraceStep>,
    mut tags: Vec<VariantChoice>,
    rs: &RuleSet,
    results: &mut Vec<JoinResult>,
) -> Result<(), EngineError> {
    loop {
        let candidates = match_candidates(&cur, rs);
        let had_candidates = !candidates.is_empty();
        let mut effectives: Vec<(MatchCandidate, Junction)> = Vec::new();
        for c in candidates {
            let next = apply(&c, &cur, rs);
            if next != cur {
                effectives.push((c, next));
            }
        }

        let mut chosen = None;
        for (c, next) in effectives {
            if c.optional {
                // apply-branch forks off; this walk continues as the skip-branch
                if steps.len() == STEP_LIMIT {
                    return Err(cycle_error(&steps));
                }
                let mut applied_steps = steps.clone();
                applied_steps.push(TraceStep {
                    rule: c.id,
                    sutra: rs.rules[c.rule_index].sutra.clone(),
                    before: (cur.left.clone(), cur.right.clone()),
                    after: (next.left.clone(), next.right.clone()),
                });
                let mut applied_tags = tags.clone();
                applied_tags.push(VariantChoice { rule: c.id, applied: true });
                walk(next, applied_steps, applied_tags, rs, results)?;
                tags.push(VariantChoice { rule: c.id, applied: false });
            } else {
                chosen = Some((c, next));
                break;
            }
        }

        match chosen {
            Some((c, next)) => {
                if steps.len() == STEP_LIMIT {
                    return Err(cycle_error(&steps));
                }
                steps.push(TraceStep {
                    rule: c.id,
                    sutra: rs.rules[c.rule_index].sutra.clone(),
                    before: (cur.left.clone(), cur.right.clone()),
                    after: (next.left.clone(), next.right.clone()),
                });
                cur = next;
            }
            None => {
                let terminated_by = if had_candidates {
                    Termination::Fixpoint
                } else {
                    Termination::NoMatch
                };
                results.push(JoinResult {
                    surface: cur.surface(),
                    trace: JoinTrace { steps, terminated_by },
                    variant_tag: tags,
                });
                return Ok(());
            }
        }
    }
}

/// Apply the word-final (y = end) rules to the last letter, once.
pub fn finalize_pada(word: &[LetterCode], rs: &RuleSet) -> (CodeSeq, JoinTrace) {
    let j = Junction::new(word.to_vec(), Vec::new(), JunctionKind::External);
    match single_step(&j, rs) {
        Some((id, next)) => {
            let rule = rs.find(id).expect("id from match");
            let trace = JoinTrace {
                steps: vec![TraceStep {
                    rule: id,
                    sutra: rule.sutra.clone(),
                    before: (j.left.clone(), j.right.clone()),
                    after: (next.left.clone(), next.right.clone()),
                }],
                terminated_by: Termination::Fixpoint,
            };
            (next.surface(), trace)
        }
        None => (
            word.to_vec(),
            JoinTrace { steps: Vec::new(), terminated_by: Termination::NoMatch },
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::tokenize;
    use crate::error::EngineError;

    fn rs() -> &'static RuleSet {
        RuleSet::builtin()
    }

    fn ext(left: &[LetterCode], right: &[LetterCode]) -> Junction {
        Junction::new(left.to_vec(), right.to_vec(), JunctionKind::External)
    }

    fn ids(trace: &JoinTrace) -> Vec<String> {
        trace.steps.iter().map(|s| s.rule.to_string()).collect()
    }

    #[test]
    fn context_rule_outranks_context_free() {
        // pra + eṣaḥ: the word-pair equation beats the plain vrddhi rule
        let j = ext(&tokenize("pra").unwrap(), &tokenize("eṣaḥ").unwrap());
        let cands = match_candidates(&j, rs());
        assert_eq!(cands[0].id.to_string(), "C1.4.1");
        assert!(cands.iter().any(|c| c.id.to_string() == "C1.3.1"));
    }

    #[test]
    fn bare_vowel_pair_matches_one_rule() {
        let cands = match_candidates(&ext(&[1], &[3]), rs());
        assert_eq!(cands.len(), 1);
        assert_eq!(cands[0].id.to_string(), "C1.1.1");
    }

    #[test]
    fn commutative_rule_matches_swapped() {
        let cands = match_candidates(&ext(&[2], &[1]), rs());
        assert_eq!(cands[0].id.to_string(), "C1.8.1");
        assert!(cands[0].swapped);
        let next = apply(&cands[0], &ext(&[2], &[1]), rs());
        assert_eq!(next.surface(), vec![2]);
    }

    #[test]
    fn apply_examples() {
        // a + u -> o, single letter replaces both
        let j = ext(&[33, 10, 16, 1], &[5, 33, 1]);
        let c = &match_candidates(&j, rs())[0];
        assert_eq!(c.id.to_string(), "C1.1.2");
        let next = apply(c, &j, rs());
        assert_eq!(next.left, vec![33, 10, 16, 11]);
        assert_eq!(next.right, vec![33, 1]);

        // go + vowel: ava replaces the o
        let j = ext(&[31, 11], &[1, 31, 17, 1, 20]);
        let c = &match_candidates(&j, rs())[0];
        assert_eq!(c.id.to_string(), "C2.5.1");
        let next = apply(c, &j, rs());
        assert_eq!(next.left, vec![31, 1, 16, 1]);
        assert_eq!(next.right, vec![1, 31, 17, 1, 20]);

        // ḍ + s: dh inserted between
        let j = ext(&[45, 1, 32], &[46, 5]);
        let c = &match_candidates(&j, rs())[0];
        assert_eq!(c.id.to_string(), "C4.2.1");
        let next = apply(c, &j, rs());
        assert_eq!(next.left, vec![45, 1, 32, 28]);
        assert_eq!(next.right, vec![46, 5]);
    }

    #[test]
    fn join_examples() {
        // deva + indra, one step
        let r = join(&[33, 10, 16, 1], &[3, 23, 33, 17, 1], JunctionKind::External, rs()).unwrap();
        assert_eq!(r.surface, vec![33, 10, 16, 10, 23, 33, 17, 1]);
        assert_eq!(ids(&r.trace), vec!["C1.1.1"]);

        // bare letters 1 + 2 -> 2
        let r = join(&[1], &[2], JunctionKind::External, rs()).unwrap();
        assert_eq!(r.surface, vec![2]);

        // tat + śiva cascades twice
        let r = join(&[41, 1, 41], &[44, 3, 16, 1], JunctionKind::External, rs()).unwrap();
        assert_eq!(r.surface, vec![41, 1, 39, 36, 3, 16, 1]);
        assert_eq!(ids(&r.trace), vec!["C3.4.1", "C2.16.1"]);

        // vane + api: e absorbs the a
        let r = join(&[16, 1, 23, 10], &[1, 43, 3], JunctionKind::External, rs()).unwrap();
        assert_eq!(r.surface, vec![16, 1, 23, 10, 43, 3]);
        assert_eq!(ids(&r.trace), vec!["C1.9.1"]);
    }

    #[test]
    fn identity_candidates_do_not_block_progress() {
        // k + k: only an identity substitution matches, so nothing fires
        let r = join(&[42], &[42], JunctionKind::External, rs()).unwrap();
        assert_eq!(r.surface, vec![42, 42]);
        assert!(r.trace.steps.is_empty());
        assert_eq!(r.trace.terminated_by, Termination::Fixpoint);
        assert!(single_step(&ext(&[42], &[42]), rs()).is_none());
    }

    #[test]
    fn scope_filters_rules() {
        // internal-only anusvara rule for n before an obstruent
        let internal = Junction::new(vec![23], vec![30], JunctionKind::Internal);
        let external = ext(&[23], &[30]);
        assert!(match_candidates(&internal, rs())
            .iter()
            .any(|c| c.id.to_string() == "C2.12.1"));
        assert!(!match_candidates(&external, rs())
            .iter()
            .any(|c| c.id.to_string() == "C2.12.1"));
    }

    #[test]
    fn nasal_onset_rule_cycles_into_an_error() {
        // v before a nasal regenerates its own input and hits the limit
        let err = join(&[16], &[23], JunctionKind::External, rs()).unwrap_err();
        let EngineError::Cycle { steps, rules } = err;
        assert_eq!(steps, STEP_LIMIT);
        assert_eq!(rules.len(), 1);
        assert_eq!(rules[0].to_string(), "C2.18.1");
    }

    #[test]
    fn variants_branch_on_optional_rules() {
        // saḥ + api: the visarga drop is optional
        let sah = tokenize("saḥ").unwrap();
        let api = tokenize("api").unwrap();
        let variants = join_variants(&sah, &api, JunctionKind::External, rs()).unwrap();
        let surfaces: Vec<String> = variants
            .iter()
            .map(|v| crate::alphabet::detokenize(&v.surface).unwrap())
            .collect();
        assert_eq!(surfaces, vec!["saḥapi", "sāpi"]);
        assert_eq!(
            variants[0].variant_tag,
            vec![VariantChoice { rule: "C5.2.1".parse().unwrap(), applied: false }]
        );
        assert!(variants[1].variant_tag[0].applied);

        // no optional rule fires: singleton equal to join
        let deva = tokenize("deva").unwrap();
        let indra = tokenize("indra").unwrap();
        let variants = join_variants(&deva, &indra, JunctionKind::External, rs()).unwrap();
        let joined = join(&deva, &indra, JunctionKind::External, rs()).unwrap();
        assert_eq!(variants.len(), 1);
        assert_eq!(variants[0].surface, joined.surface);
        assert!(variants[0].variant_tag.is_empty());

        // m + h + v context: applied and skipped branches survive
        let kim = tokenize("kim").unwrap();
        let hva = tokenize("hvayati").unwrap();
        let variants = join_variants(&kim, &hva, JunctionKind::External, rs()).unwrap();
        assert_eq!(variants.len(), 2);
    }

    #[test]
    fn finalize_examples() {
        // vāk -> vāg
        let (word, trace) = finalize_pada(&[16, 2, 42], rs());
        assert_eq!(word, vec![16, 2, 31]);
        assert_eq!(ids(&trace), vec!["C2.6.7"]);
        // final j stays (identity branch)
        let (word, trace) = finalize_pada(&[25, 3, 45, 1, 29], rs());
        assert_eq!(word, vec![25, 3, 45, 1, 29]);
        assert!(trace.steps.is_empty());
        // vowel-final word untouched
        let (word, trace) = finalize_pada(&[33, 10, 16, 1], rs());
        assert_eq!(word, vec![33, 10, 16, 1]);
        assert!(trace.steps.is_empty());
    }

    #[test]
    fn joins_are_deterministic() {
        let left = tokenize("haraḥ").unwrap();
        let right = tokenize("śete").unwrap();
        let a = join(&left, &right, JunctionKind::External, rs()).unwrap();
        let b = join(&left, &right, JunctionKind::External, rs()).unwrap();
        assert_eq!(a, b);
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            // any pair of words either settles or reports a cycle,
            // without panicking and within the step limit
            #[test]
            fn join_total_over_arbitrary_words(
                left in proptest::collection::vec(1u8..=50, 1..6),
                right in proptest::collection::vec(1u8..=50, 1..6),
                internal in proptest::bool::ANY,
            ) {
                let kind = if internal { JunctionKind::Internal } else { JunctionKind::External };
                match join(&left, &right, kind, rs()) {
                    Ok(result) => {
                        prop_assert!(result.trace.steps.len() <= STEP_LIMIT);
                        prop_assert!(result.surface.iter().all(|c| (1..=50).contains(c)));
                    }
                    Err(crate::error::EngineError::Cycle { steps, .. }) => {
                        prop_assert_eq!(steps, STEP_LIMIT);
                    }
                }
            }
        }
    }

    #[test]
    fn category_actions_shape_the_junction() {
        // replace-both writes 1 or 2 letters; replace-y a single one;
        // insertion exactly one; drops write nothing
        for a in crate::rulebase::expand_all(rs()) {
            match a.action {
                Action::ReplaceBoth => assert!((1..=2).contains(&a.out.len()), "{}", a.id),
                Action::ReplaceX => assert!((1..=3).contains(&a.out.len()), "{}", a.id),
                Action::ReplaceY => assert_eq!(a.out.len(), 1, "{}", a.id),
                Action::InsertBetween => assert_eq!(a.out.len(), 1, "{}", a.id),
                Action::DropX => assert!(a.out.is_empty(), "{}", a.id),
            }
        }
        // and the sides a rule must not touch stay untouched
        use crate::rulebase::Category;
        for x in 1..=50u8 {
            for y in 1..=50u8 {
                let j = ext(&[x], &[y]);
                for c in match_candidates(&j, rs()) {
                    let next = apply(&c, &j, rs());
                    match c.id.category {
                        Category::C2 => assert_eq!(next.right, j.right, "{}", c.id),
                        Category::C3 => assert_eq!(next.left, j.left, "{}", c.id),
                        Category::C4 => {
                            assert_eq!(next.surface().len(), j.surface().len() + 1)
                        }
                        Category::C5 => {
                            assert_eq!(next.surface().len(), j.surface().len() - 1)
                        }
                        Category::C1 => {}
                    }
                }
            }
        }
    }
}

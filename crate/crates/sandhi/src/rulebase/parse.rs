//! Line-oriented rule-file parser and validation.

use crate::alphabet::{LetterClass, LetterCode};
use crate::error::RuleError;

use super::{
    Branch, Category, CodeSet, OutputTemplate, RuleId, SandhiRule, Scope, Term, YSpec,
};

pub(super) fn parse(text: &str) -> Result<Vec<SandhiRule>, RuleError> {
    let mut rules = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        rules.push(parse_line(line, line_no)?);
    }
    validate(&rules)?;
    Ok(rules)
}

fn syntax(line: usize, msg: impl Into<String>) -> RuleError {
    RuleError::Syntax { line, msg: msg.into() }
}

fn semantic(line: usize, msg: impl Into<String>) -> RuleError {
    RuleError::Semantic { line, msg: msg.into() }
}

fn parse_line(line: &str, no: usize) -> Result<SandhiRule, RuleError> {
    let tokens: Vec<&str> = line.split_whitespace().collect();
    if tokens.len() < 4 {
        return Err(syntax(no, "too few fields"));
    }

    let category = match tokens[0] {
        "C1" => Category::C1,
        "C2" => Category::C2,
        "C3" => Category::C3,
        "C4" => Category::C4,
        "C5" => Category::C5,
        other => return Err(syntax(no, format!("bad category {other:?}"))),
    };
    let aphorism: u8 = tokens[1]
        .parse()
        .map_err(|_| syntax(no, format!("bad aphorism index {:?}", tokens[1])))?;
    let equation: u8 = tokens[2]
        .parse()
        .map_err(|_| syntax(no, format!("bad equation index {:?}", tokens[2])))?;

    let arrow = tokens
        .iter()
        .position(|&t| t == "=>")
        .ok_or_else(|| syntax(no, "missing =>"))?;

    let mut sutra = None;
    let mut optional = false;
    let mut commutative = false;
    let mut scope = Scope::Both;
    let mut branches: Vec<Branch> = vec![Branch::default()];

    for &tok in &tokens[3..arrow] {
        if tok == "/" {
            branches.push(Branch::default());
            continue;
        }
        let branch = branches.last_mut().unwrap();
        if let Some(v) = tok.strip_prefix("sutra=") {
            sutra = Some(v.to_string());
        } else if tok == "opt" {
            optional = true;
        } else if tok == "commut" {
            commutative = true;
        } else if let Some(v) = tok.strip_prefix("scope=") {
            scope = match v {
                "ext" => Scope::External,
                "int" => Scope::Internal,
                "both" => Scope::Both,
                _ => return Err(syntax(no, format!("bad scope {v:?}"))),
            };
        } else if let Some(v) = tok.strip_prefix("x=") {
            set_once(&mut branch.x, parse_set(v, no)?, no, "x")?;
        } else if let Some(v) = tok.strip_prefix("y=") {
            let spec = if v == "END" {
                YSpec::End
            } else {
                YSpec::Set(parse_set(v, no)?)
            };
            if branch.y.replace(spec).is_some() {
                return Err(syntax(no, "duplicate y= in branch"));
            }
        } else if let Some(v) = tok.strip_prefix("u=") {
            if branch.u.replace(parse_set(v, no)?).is_some() {
                return Err(syntax(no, "duplicate u= in branch"));
            }
        } else if let Some(v) = tok.strip_prefix("w=") {
            if branch.w.replace(parse_set(v, no)?).is_some() {
                return Err(syntax(no, "duplicate w= in branch"));
            }
        } else if let Some(v) = tok.strip_prefix("X?=") {
            if branch.x_require.replace(parse_seqs(v, no)?).is_some() {
                return Err(syntax(no, "duplicate X?= in branch"));
            }
        } else if let Some(v) = tok.strip_prefix("X!=") {
            if branch.x_forbid.replace(parse_seqs(v, no)?).is_some() {
                return Err(syntax(no, "duplicate X!= in branch"));
            }
        } else if let Some(v) = tok.strip_prefix("Y?=") {
            if branch.y_require.replace(parse_seqs(v, no)?).is_some() {
                return Err(syntax(no, "duplicate Y?= in branch"));
            }
        } else if let Some(v) = tok.strip_prefix("Y!=") {
            if branch.y_forbid.replace(parse_seqs(v, no)?).is_some() {
                return Err(syntax(no, "duplicate Y!= in branch"));
            }
        } else {
            return Err(syntax(no, format!("unrecognized token {tok:?}")));
        }
    }

    let sutra = sutra.ok_or_else(|| syntax(no, "missing sutra="))?;
    let terms_text = tokens[arrow + 1..].concat();
    if terms_text.is_empty() {
        return Err(syntax(no, "missing output terms"));
    }
    let terms = parse_terms(&terms_text, category, no)?;

    for branch in &branches {
        if branch.x.is_empty() {
            return Err(semantic(no, "branch without x= (or empty x set)"));
        }
        match branch.y {
            None => return Err(semantic(no, "branch without y=")),
            Some(YSpec::Set(s)) if s.is_empty() => {
                return Err(semantic(no, "empty y set"));
            }
            Some(YSpec::End) if category != Category::C2 => {
                return Err(semantic(no, "y=END is only valid for C2 rules"));
            }
            _ => {}
        }
    }

    Ok(SandhiRule {
        id: RuleId::new(category, aphorism, equation),
        sutra,
        optional,
        commutative,
        scope,
        branches,
        template: OutputTemplate { action: category.action(), terms },
    })
}

fn set_once(slot: &mut CodeSet, value: CodeSet, no: usize, field: &str) -> Result<(), RuleError> {
    if !slot.is_empty() {
        return Err(syntax(no, format!("duplicate {field}= in branch")));
    }
    *slot = value;
    Ok(())
}

fn parse_code(text: &str, no: usize) -> Result<LetterCode, RuleError> {
    let v: u8 = text
        .parse()
        .map_err(|_| syntax(no, format!("bad letter code {text:?}")))?;
    if (1..=51).contains(&v) {
        Ok(v)
    } else {
        Err(semantic(no, format!("letter code {v} out of 1..=51")))
    }
}

/// `{n,n,..}`, `n..m`, `@class`, or `@class!{n,..}`.
fn parse_set(text: &str, no: usize) -> Result<CodeSet, RuleError> {
    if let Some(rest) = text.strip_prefix('@') {
        let (name, minus) = match rest.split_once('!') {
            Some((name, tail)) => (name, Some(tail)),
            None => (rest, None),
        };
        let class = LetterClass::from_name(name)
            .map_err(|_| semantic(no, format!("unknown class name {name:?}")))?;
        let mut set: CodeSet = class.codes().iter().copied().collect();
        if let Some(minus) = minus {
            for code in parse_braced(minus, no)? {
                set.remove(code);
            }
        }
        return Ok(set);
    }
    if text.starts_with('{') {
        return Ok(parse_braced(text, no)?.into_iter().collect());
    }
    if let Some((lo, hi)) = text.split_once("..") {
        let lo = parse_code(lo, no)?;
        let hi = parse_code(hi, no)?;
        if lo > hi {
            return Err(semantic(no, format!("empty range {lo}..{hi}")));
        }
        return Ok((lo..=hi).collect());
    }
    Err(syntax(no, format!("bad set {text:?}")))
}

fn parse_braced(text: &str, no: usize) -> Result<Vec<LetterCode>, RuleError> {
    let inner = text
        .strip_prefix('{')
        .and_then(|t| t.strip_suffix('}'))
        .ok_or_else(|| syntax(no, format!("bad set {text:?}")))?;
    inner.split(',').map(|t| parse_code(t.trim(), no)).collect()
}

/// `|`-separated `+`-joined code sequences.
fn parse_seqs(text: &str, no: usize) -> Result<Vec<Vec<LetterCode>>, RuleError> {
    text.split('|')
        .map(|seq| {
            let codes: Result<Vec<LetterCode>, RuleError> =
                seq.split('+').map(|c| parse_code(c, no)).collect();
            let codes = codes?;
            if codes.is_empty() {
                Err(syntax(no, "empty sequence"))
            } else {
                Ok(codes)
            }
        })
        .collect()
}

fn parse_terms(text: &str, category: Category, no: usize) -> Result<Vec<Term>, RuleError> {
    if text == "drop" {
        if category != Category::C5 {
            return Err(semantic(no, "`drop` output is only valid for C5 rules"));
        }
        return Ok(Vec::new());
    }
    if category == Category::C5 {
        return Err(semantic(no, "C5 rules take `=> drop`"));
    }
    text.split(',')
        .map(|term| parse_term(term.trim(), no))
        .collect()
}

fn parse_term(term: &str, no: usize) -> Result<Term, RuleError> {
    if let Some(c) = term.strip_prefix('#') {
        return Ok(Term::Const(parse_code(c, no)?));
    }
    match term {
        "x" => return Ok(Term::CopyX),
        "y" => return Ok(Term::CopyY),
        "w" => return Ok(Term::CopyW),
        _ => {}
    }
    let (var, rest) = term.split_at(1);
    if !rest.starts_with('+') && !rest.starts_with('-') {
        return Err(syntax(no, format!("bad term {term:?}")));
    }
    let delta: i16 = rest
        .parse()
        .map_err(|_| syntax(no, format!("bad term {term:?}")))?;
    match var {
        "x" => Ok(Term::XPlus(delta)),
        "y" => Ok(Term::YPlus(delta)),
        _ => Err(syntax(no, format!("bad term {term:?}"))),
    }
}

fn validate(rules: &[SandhiRule]) -> Result<(), RuleError> {
    let mut seen = std::collections::HashSet::new();
    for rule in rules {
        if !seen.insert(rule.id) {
            return Err(semantic(0, format!("duplicate rule id {}", rule.id)));
        }
        let uses_w = rule.template.terms.contains(&Term::CopyW);
        let uses_y = rule
            .template
            .terms
            .iter()
            .any(|t| matches!(t, Term::CopyY | Term::YPlus(_)));
        for branch in &rule.branches {
            if uses_w && branch.w.is_none() {
                return Err(semantic(
                    0,
                    format!("rule {}: template reads w but branch has no w=", rule.id),
                ));
            }
            if uses_y && branch.y == Some(YSpec::End) {
                return Err(semantic(
                    0,
                    format!("rule {}: template reads y but y=END", rule.id),
                ));
            }
            check_seq_anchors(rule, branch)?;
        }
    }
    Ok(())
}

/// X-sequences must end in a letter of the x set; Y-sequences must start
/// in a letter of the y set.
fn check_seq_anchors(rule: &SandhiRule, branch: &Branch) -> Result<(), RuleError> {
    let xs = branch.x_require.iter().chain(branch.x_forbid.iter()).flatten();
    for seq in xs {
        let last = *seq.last().unwrap();
        if !branch.x.contains(last) {
            return Err(RuleError::Semantic {
                line: 0,
                msg: format!(
                    "rule {}: X sequence ends in {last}, not in the x set",
                    rule.id
                ),
            });
        }
    }
    if let YSpec::Set(yset) = branch.y_spec() {
        let ys = branch.y_require.iter().chain(branch.y_forbid.iter()).flatten();
        for seq in ys {
            let first = seq[0];
            if !yset.contains(first) {
                return Err(RuleError::Semantic {
                    line: 0,
                    msg: format!(
                        "rule {}: Y sequence starts in {first}, not in the y set",
                        rule.id
                    ),
                });
            }
        }
    } else if branch.y_require.is_some() || branch.y_forbid.is_some() {
        return Err(RuleError::Semantic {
            line: 0,
            msg: format!("rule {}: Y context with y=END", rule.id),
        });
    }
    Ok(())
}

//! Lint engine: BIEO legality of the NE and clause layers plus a handful of
//! token-level guideline checks.
//!
//! Structural label violations are errors. Guideline preferences (verbless
//! clauses, lone `B_CLS`, split URLs and punctuation runs, stray white-space
//! characters) are warnings.

use std::fmt;
use std::sync::LazyLock;

use regex::Regex;
use serde::Serialize;

use crate::format::{Document, FormatError, Sentence, Token};
use crate::schema::{clause_transition, ne_transition, BoundaryPrefix, ClauseLabel, PosTag, Violation};

pub const NE_ORPHAN_I: &str = "NE_ORPHAN_I";
pub const NE_ORPHAN_E: &str = "NE_ORPHAN_E";
pub const NE_CAT_MISMATCH: &str = "NE_CAT_MISMATCH";
pub const NE_UNTERMINATED: &str = "NE_UNTERMINATED";
pub const CLS_ORPHAN_I: &str = "CLS_ORPHAN_I";
pub const CLS_ORPHAN_E: &str = "CLS_ORPHAN_E";
pub const CLS_UNTERMINATED: &str = "CLS_UNTERMINATED";
pub const CLS_SINGLETON: &str = "CLS_SINGLETON";
pub const CLS_NO_VERB: &str = "CLS_NO_VERB";
pub const SPACE_NOT_PU: &str = "SPACE_NOT_PU";
pub const URL_SPLIT: &str = "URL_SPLIT";
pub const PUNCT_RUN_SPLIT: &str = "PUNCT_RUN_SPLIT";
pub const FORMAT_SPACE_CHAR: &str = "FORMAT_SPACE_CHAR";

/// Every code the linter can emit apart from reader diagnostics, which use
/// the `FORMAT_*` codes of [`FormatError::code`].
pub const CODES: &[&str] = &[
    NE_ORPHAN_I,
    NE_ORPHAN_E,
    NE_CAT_MISMATCH,
    NE_UNTERMINATED,
    CLS_ORPHAN_I,
    CLS_ORPHAN_E,
    CLS_UNTERMINATED,
    CLS_SINGLETON,
    CLS_NO_VERB,
    SPACE_NOT_PU,
    URL_SPLIT,
    PUNCT_RUN_SPLIT,
    FORMAT_SPACE_CHAR,
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Error,
    Warning,
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Severity::Error => "error",
            Severity::Warning => "warning",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Layer {
    #[serde(rename = "POS")]
    Pos,
    #[serde(rename = "NE")]
    Ne,
    #[serde(rename = "CLS")]
    Cls,
    #[serde(rename = "FORMAT")]
    Format,
}

impl fmt::Display for Layer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Layer::Pos => "POS",
            Layer::Ne => "NE",
            Layer::Cls => "CLS",
            Layer::Format => "FORMAT",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LintIssue {
    pub severity: Severity,
    pub code: &'static str,
    pub message: String,
    pub sentence: usize,
    pub token: usize,
    pub layer: Layer,
}

impl LintIssue {
    fn new(
        severity: Severity,
        code: &'static str,
        layer: Layer,
        sentence: usize,
        token: usize,
        message: String,
    ) -> Self {
        LintIssue {
            severity,
            code,
            message,
            sentence,
            token,
            layer,
        }
    }

    /// Reader diagnostics carry line numbers rather than sentence/token
    /// positions; columnar lines are reported as `(0, line)`.
    pub fn from_format_error(err: &FormatError) -> Self {
        let (sentence, token) = match *err {
            FormatError::Line { line, .. } => (0, line),
            FormatError::Token { sentence, token, .. } | FormatError::Unwritable { sentence, token, .. } => {
                (sentence, token)
            }
            FormatError::EmptyId | FormatError::InvalidLayers(_) => (0, 0),
        };
        LintIssue::new(
            Severity::Error,
            err.code(),
            Layer::Format,
            sentence,
            token,
            err.to_string(),
        )
    }
}

/// Issues in (sentence, token, code) order with per-severity tallies.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LintReport {
    issues: Vec<LintIssue>,
    errors: usize,
    warnings: usize,
}

impl LintReport {
    pub fn new(mut issues: Vec<LintIssue>) -> Self {
        issues
            .sort_by(|a, b| (a.sentence, a.token, a.code, a.severity).cmp(&(b.sentence, b.token, b.code, b.severity)));
        let errors = issues.iter().filter(|i| i.severity == Severity::Error).count();
        let warnings = issues.len() - errors;
        LintReport {
            issues,
            errors,
            warnings,
        }
    }

    pub fn issues(&self) -> &[LintIssue] {
        &self.issues
    }

    pub fn count(&self, severity: Severity) -> usize {
        match severity {
            Severity::Error => self.errors,
            Severity::Warning => self.warnings,
        }
    }

    pub fn errors(&self) -> usize {
        self.errors
    }

    pub fn warnings(&self) -> usize {
        self.warnings
    }

    pub fn is_empty(&self) -> bool {
        self.issues.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct LintOptions {
    /// The document is a window cut out of a longer file: a span left open
    /// at the very start or very end is reported as a warning, not an error.
    pub excerpt: bool,
}

/// Whether the sentence touches a cut edge of an excerpt.
#[derive(Debug, Clone, Copy, Default)]
struct Edges {
    open_start: bool,
    open_end: bool,
}

/// Downgrades a violation to a warning when it sits on an excerpt edge.
fn edge_severity(violation: Violation, at_first_label: bool, at_end: bool, edges: Edges) -> Severity {
    let leading =
        at_first_label && edges.open_start && matches!(violation, Violation::OrphanInside | Violation::OrphanEnd);
    let trailing = at_end && edges.open_end && violation == Violation::Unterminated;
    if leading || trailing {
        Severity::Warning
    } else {
        Severity::Error
    }
}

fn ne_code(v: Violation) -> &'static str {
    match v {
        Violation::OrphanInside => NE_ORPHAN_I,
        Violation::OrphanEnd => NE_ORPHAN_E,
        Violation::CategoryMismatch => NE_CAT_MISMATCH,
        Violation::Unterminated => NE_UNTERMINATED,
    }
}

fn cls_code(v: Violation) -> &'static str {
    match v {
        Violation::OrphanInside => CLS_ORPHAN_I,
        Violation::OrphanEnd => CLS_ORPHAN_E,
        // One category only, so a mismatch cannot happen.
        Violation::CategoryMismatch => unreachable!("clause labels share one category"),
        Violation::Unterminated => CLS_UNTERMINATED,
    }
}

fn violation_message(v: Violation, label: Option<&str>, prev: Option<&str>) -> String {
    let prev = prev.unwrap_or("sentence start");
    match (v, label) {
        (Violation::OrphanInside, Some(l)) | (Violation::OrphanEnd, Some(l)) => {
            format!("{l} after {prev} has no open span")
        }
        (Violation::CategoryMismatch, Some(l)) => format!("{l} continues a span opened as {prev}"),
        (Violation::Unterminated, Some(l)) => format!("span ending in {prev} is closed by {l} without an E_ label"),
        (Violation::Unterminated, None) => format!("span ending in {prev} runs past the sentence end"),
        _ => format!("{v:?}"),
    }
}

pub fn validate_ne_sequence(sentence: &Sentence, sentence_idx: usize) -> Vec<LintIssue> {
    validate_ne_with(sentence, sentence_idx, Edges::default())
}

fn validate_ne_with(sentence: &Sentence, s_idx: usize, edges: Edges) -> Vec<LintIssue> {
    let mut issues = Vec::new();
    let mut prev = None;
    // A span recovered from an orphan I_ is already reported once.
    let mut recovered = false;
    for (i, token) in sentence.tokens.iter().enumerate() {
        let next = token.ne;
        let violation = ne_transition(prev, Some(next)).filter(|&v| !(recovered && v == Violation::Unterminated));
        recovered = match violation {
            Some(Violation::OrphanInside) => true,
            _ => recovered && next.prefix() == BoundaryPrefix::I,
        };
        if let Some(v) = violation {
            let label = next.to_string();
            let prev_s = prev.map(|p| p.to_string());
            issues.push(LintIssue::new(
                edge_severity(v, i == 0, false, edges),
                ne_code(v),
                Layer::Ne,
                s_idx,
                i,
                violation_message(v, Some(&label), prev_s.as_deref()),
            ));
        }
        prev = Some(next);
    }
    if let Some(v) = ne_transition(prev, None).filter(|_| !recovered) {
        let prev_s = prev.map(|p| p.to_string());
        issues.push(LintIssue::new(
            edge_severity(v, false, true, edges),
            ne_code(v),
            Layer::Ne,
            s_idx,
            sentence.len() - 1,
            violation_message(v, None, prev_s.as_deref()),
        ));
    }
    issues
}

/// White space labelled O or I_CLS is never flagged: the guideline lets
/// spaces sit either inside a clause or between two clauses.
fn is_transparent(token: &Token) -> bool {
    token.is_space && matches!(token.clause, ClauseLabel::Outside | ClauseLabel::Inside)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum OpenSpan {
    /// Only the `B_CLS` so far.
    Lone { start: usize, has_verb: bool },
    /// `B_CLS` followed by at least one `I_CLS`.
    Partial { start: usize, has_verb: bool },
}

pub fn validate_clause_sequence(sentence: &Sentence, sentence_idx: usize) -> Vec<LintIssue> {
    validate_clause_with(sentence, sentence_idx, Edges::default())
}

fn validate_clause_with(sentence: &Sentence, s_idx: usize, edges: Edges) -> Vec<LintIssue> {
    let mut issues = Vec::new();
    let mut prev: Option<ClauseLabel> = None;
    let mut open: Option<OpenSpan> = None;
    let mut last_labelled = 0;
    let mut recovered = false;

    let no_verb = |start: usize| {
        LintIssue::new(
            Severity::Warning,
            CLS_NO_VERB,
            Layer::Cls,
            s_idx,
            start,
            "clause contains no VV token".to_owned(),
        )
    };
    let singleton = |start: usize| {
        LintIssue::new(
            Severity::Warning,
            CLS_SINGLETON,
            Layer::Cls,
            s_idx,
            start,
            "single-token clause (lone B_CLS)".to_owned(),
        )
    };
    // Closes a span that did not end in E_CLS.
    let close_open = |open: Option<OpenSpan>, issues: &mut Vec<LintIssue>| {
        if let Some(OpenSpan::Lone { start, has_verb }) = open {
            issues.push(singleton(start));
            if !has_verb {
                issues.push(no_verb(start));
            }
        }
    };

    for (i, token) in sentence.tokens.iter().enumerate() {
        if is_transparent(token) {
            continue;
        }
        let label = token.clause;
        let is_verb = token.pos == PosTag::VV;
        let violation = clause_transition(prev, Some(label)).filter(|&v| !(recovered && v == Violation::Unterminated));
        recovered = match violation {
            Some(Violation::OrphanInside) => true,
            _ => recovered && label.prefix() == BoundaryPrefix::I,
        };
        if let Some(v) = violation {
            issues.push(LintIssue::new(
                edge_severity(v, prev.is_none(), false, edges),
                cls_code(v),
                Layer::Cls,
                s_idx,
                i,
                violation_message(v, Some(label.as_str()), prev.map(ClauseLabel::as_str)),
            ));
        }
        match label.prefix() {
            BoundaryPrefix::B => {
                close_open(open.take(), &mut issues);
                open = Some(OpenSpan::Lone {
                    start: i,
                    has_verb: is_verb,
                });
            }
            BoundaryPrefix::I => {
                open = match open {
                    Some(OpenSpan::Lone { start, has_verb } | OpenSpan::Partial { start, has_verb }) => {
                        Some(OpenSpan::Partial {
                            start,
                            has_verb: has_verb || is_verb,
                        })
                    }
                    // Orphan I_CLS: already reported, not a checkable span.
                    None => None,
                };
            }
            BoundaryPrefix::E => {
                if let Some(OpenSpan::Lone { start, has_verb } | OpenSpan::Partial { start, has_verb }) = open.take() {
                    if !(has_verb || is_verb) {
                        issues.push(no_verb(start));
                    }
                }
            }
            BoundaryPrefix::O => close_open(open.take(), &mut issues),
        }
        prev = Some(label);
        last_labelled = i;
    }
    if let Some(v) = clause_transition(prev, None).filter(|_| !recovered) {
        issues.push(LintIssue::new(
            edge_severity(v, false, true, edges),
            cls_code(v),
            Layer::Cls,
            s_idx,
            last_labelled,
            violation_message(v, None, prev.map(ClauseLabel::as_str)),
        ));
    }
    close_open(open, &mut issues);
    issues
}

static URL_SHAPE: LazyLock<Regex> =
    LazyLock::new(|| Regex::new(r"^(?:https?://|www\.)[A-Za-z0-9\-._~:/?#\[\]@!$&'()*+,;=%]+$").expect("valid regex"));

fn is_non_thai_punct(c: char) -> bool {
    c.is_ascii_punctuation()
        || matches!(c, '\u{00A1}'..='\u{00BF}' | '\u{2010}'..='\u{2027}' | '\u{2030}'..='\u{205E}' | '\u{3000}'..='\u{303F}')
}

fn single_punct(token: &Token) -> bool {
    let mut chars = token.surface.chars();
    matches!((chars.next(), chars.next()), (Some(c), None) if !token.is_space && is_non_thai_punct(c))
}

pub fn validate_token_tags(sentence: &Sentence, sentence_idx: usize) -> Vec<LintIssue> {
    let mut issues = Vec::new();
    let tokens = &sentence.tokens;
    for (i, token) in tokens.iter().enumerate() {
        if token.is_space && token.pos != PosTag::PU {
            issues.push(LintIssue::new(
                Severity::Error,
                SPACE_NOT_PU,
                Layer::Pos,
                sentence_idx,
                i,
                format!("white-space token tagged {} instead of PU", token.pos),
            ));
        }
        if !token.is_space && token.surface.chars().any(char::is_whitespace) {
            issues.push(LintIssue::new(
                Severity::Warning,
                FORMAT_SPACE_CHAR,
                Layer::Format,
                sentence_idx,
                i,
                format!("surface {:?} contains a white-space character", token.surface),
            ));
        }
        let Some(next) = tokens.get(i + 1) else {
            continue;
        };
        if token.is_space || next.is_space {
            continue;
        }
        if next.surface.chars().any(|c| c.is_ascii_alphanumeric()) {
            let joined = format!("{}{}", token.surface, next.surface);
            if URL_SHAPE.is_match(&joined) {
                issues.push(LintIssue::new(
                    Severity::Warning,
                    URL_SPLIT,
                    Layer::Format,
                    sentence_idx,
                    i,
                    format!("URL split across tokens: {joined}"),
                ));
            }
        }
        if single_punct(token) && single_punct(next) {
            issues.push(LintIssue::new(
                Severity::Warning,
                PUNCT_RUN_SPLIT,
                Layer::Format,
                sentence_idx,
                i + 1,
                format!(
                    "consecutive punctuation {:?} {:?} should be one token",
                    token.surface, next.surface
                ),
            ));
        }
    }
    issues
}

pub fn lint_document(doc: &Document) -> LintReport {
    lint_document_with(doc, LintOptions::default())
}

pub fn lint_document_with(doc: &Document, options: LintOptions) -> LintReport {
    let last = doc.sentences.len().saturating_sub(1);
    let issues = doc
        .sentences
        .iter()
        .enumerate()
        .flat_map(|(s_idx, sentence)| {
            let edges = Edges {
                open_start: options.excerpt && s_idx == 0,
                open_end: options.excerpt && s_idx == last,
            };
            let mut v = validate_ne_with(sentence, s_idx, edges);
            v.extend(validate_clause_with(sentence, s_idx, edges));
            v.extend(validate_token_tags(sentence, s_idx));
            v
        })
        .collect();
    LintReport::new(issues)
}

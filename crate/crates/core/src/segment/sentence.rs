use std::ops::Range;

use crate::format::Token;
use crate::schema::PosTag;

use super::{ClauseSpan, MarkerLexicon, Rule, RulePrecedence, SegmenterConfig, SubjectShift};

/// A contiguous, non-empty run of clause indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SentenceSpan {
    pub clauses: Range<usize>,
}

/// Outcome for one adjacent clause pair and the rule that decided it.
/// `None` means the subject-shift default decided.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Decision {
    Merge(Option<Rule>),
    Split(Option<Rule>),
}

impl Decision {
    pub fn is_split(self) -> bool {
        matches!(self, Decision::Split(_))
    }
}

const QUOTES: &[char] = &['"', '“', '”', '\'', '‘', '’', '«', '»'];

fn words(tokens: &[Token]) -> impl DoubleEndedIterator<Item = &Token> {
    tokens.iter().filter(|t| !t.is_space)
}

fn opens_with_quote(clause: &[Token]) -> bool {
    words(clause).next().is_some_and(|t| t.surface.starts_with(QUOTES))
}

/// Last and second-to-last words of a clause.
fn tail(clause: &[Token]) -> (Option<&Token>, Option<&Token>) {
    let mut it = words(clause).rev();
    (it.next(), it.next())
}

/// First word if it can stand as an overt subject.
fn overt_subject<'a>(clause: &'a [Token], lex: &MarkerLexicon) -> Option<&'a str> {
    words(clause)
        .next()
        .filter(|t| matches!(t.pos, PosTag::NN | PosTag::PR | PosTag::AJ) && !lex.is_auxiliary(t))
        .map(|t| t.surface.as_str())
}

fn merge_rule(rule: Rule, prev: &[Token], next: &[Token], lex: &MarkerLexicon) -> bool {
    let (last, before_last) = tail(prev);
    let reporting = |t: Option<&Token>| t.is_some_and(|t| lex.reporting_verbs.contains(&t.surface));
    match rule {
        Rule::S6 => words(next)
            .next()
            .is_some_and(|t| lex.list_markers.contains(&t.surface)),
        Rule::S4 => {
            let ends_reporting = reporting(last) || (last.is_some_and(|t| t.surface == "ว่า") && reporting(before_last));
            ends_reporting && opens_with_quote(next)
        }
        Rule::S5 => last.is_some_and(|t| lex.is_connector(t)) && reporting(before_last),
        _ => false,
    }
}

fn split_rule(rule: Rule, prev: &[Token], next: &[Token], lex: &MarkerLexicon) -> bool {
    match rule {
        Rule::S2 => words(next)
            .next()
            .is_some_and(|t| lex.cohesive_markers.contains(&t.surface)),
        Rule::S7 => tail(prev).0.is_some_and(|t| lex.is_particle(t)),
        _ => false,
    }
}

/// Decides whether `next` starts a new sentence after `prev`.
pub fn decide_pair(
    prev: &[Token],
    next: &[Token],
    paragraph_boundary: bool,
    lex: &MarkerLexicon,
    cfg: &SegmenterConfig,
) -> Decision {
    if paragraph_boundary {
        return Decision::Split(Some(Rule::S1));
    }
    let merges = [Rule::S6, Rule::S4, Rule::S5];
    let splits = [Rule::S2, Rule::S7];
    let try_merges = || {
        merges
            .into_iter()
            .find(|&r| cfg.is_enabled(r) && merge_rule(r, prev, next, lex))
            .map(|r| Decision::Merge(Some(r)))
    };
    let try_splits = || {
        splits
            .into_iter()
            .find(|&r| cfg.is_enabled(r) && split_rule(r, prev, next, lex))
            .map(|r| Decision::Split(Some(r)))
    };
    let ruled = match cfg.precedence {
        RulePrecedence::MergeFirst => try_merges().or_else(try_splits),
        RulePrecedence::SplitFirst => try_splits().or_else(try_merges),
    };
    if let Some(d) = ruled {
        return d;
    }
    let shift = cfg.is_enabled(Rule::S3)
        && match cfg.subject_shift {
            SubjectShift::Always => true,
            SubjectShift::Never => false,
            SubjectShift::Heuristic => match overt_subject(next, lex) {
                Some(subject) => overt_subject(prev, lex) != Some(subject),
                None => false,
            },
        };
    if shift {
        Decision::Split(Some(Rule::S3))
    } else {
        Decision::Merge(None)
    }
}

/// Groups clauses into sentences. `paragraph_starts` holds the token
/// indices that begin a paragraph; a clause pair straddling one is split.
pub fn aggregate_sentences(
    clauses: &[ClauseSpan],
    tokens: &[Token],
    paragraph_starts: &[usize],
    lex: &MarkerLexicon,
    cfg: &SegmenterConfig,
) -> Vec<SentenceSpan> {
    let mut sentences = Vec::new();
    if clauses.is_empty() {
        return sentences;
    }
    let mut start = 0;
    for i in 0..clauses.len() - 1 {
        let (a, b) = (clauses[i], clauses[i + 1]);
        let boundary = paragraph_starts.iter().any(|&p| a.end <= p && p <= b.start);
        let decision = decide_pair(&tokens[a.start..a.end], &tokens[b.start..b.end], boundary, lex, cfg);
        if decision.is_split() {
            sentences.push(SentenceSpan { clauses: start..i + 1 });
            start = i + 1;
        }
    }
    sentences.push(SentenceSpan {
        clauses: start..clauses.len(),
    });
    sentences
}

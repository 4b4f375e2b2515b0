use crate::format::Token;
use crate::schema::{BoundaryPrefix, ClauseLabel, PosTag};

use super::{MarkerLexicon, Rule, SegmenterConfig};

/// Half-open token range `[start, end)` within one paragraph. Spans never
/// begin or end on a space token.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ClauseSpan {
    pub start: usize,
    pub end: usize,
    pub has_verb: bool,
}

impl ClauseSpan {
    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.start == self.end
    }
}

/// Paragraphs of tokens. Empty paragraphs are dropped on construction.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ParagraphStream {
    paragraphs: Vec<Vec<Token>>,
}

impl ParagraphStream {
    pub fn new(paragraphs: Vec<Vec<Token>>) -> Self {
        ParagraphStream {
            paragraphs: paragraphs.into_iter().filter(|p| !p.is_empty()).collect(),
        }
    }

    pub fn paragraphs(&self) -> &[Vec<Token>] {
        &self.paragraphs
    }
}

fn is_verb(token: &Token) -> bool {
    !token.is_space && token.pos == PosTag::VV
}

/// Prefix sums of verb counts: `verbs[b] - verbs[a]` verbs in `a..b`.
fn verb_prefix(tokens: &[Token]) -> Vec<usize> {
    let mut acc = Vec::with_capacity(tokens.len() + 1);
    acc.push(0);
    for t in tokens {
        acc.push(acc.last().copied().unwrap_or(0) + usize::from(is_verb(t)));
    }
    acc
}

/// Narrows `start..end` to its first and last non-space tokens.
fn trim(tokens: &[Token], start: usize, end: usize) -> Option<(usize, usize)> {
    let first = (start..end).find(|&i| !tokens[i].is_space)?;
    let last = (start..end).rev().find(|&i| !tokens[i].is_space)?;
    Some((first, last + 1))
}

/// R2: splits at a space run flanked by a clause marker when both the text
/// since the last cut and the rest of the paragraph contain a verb.
fn space_chunks(tokens: &[Token], verbs: &[usize], lex: &MarkerLexicon) -> Vec<(usize, usize)> {
    let n = tokens.len();
    let mut chunks = Vec::new();
    let mut chunk_start = 0;
    let mut i = 0;
    while i < n {
        if !tokens[i].is_space {
            i += 1;
            continue;
        }
        let run_start = i;
        while i < n && tokens[i].is_space {
            i += 1;
        }
        let run_end = i;
        let (Some(before), Some(after)) = (run_start.checked_sub(1), (run_end < n).then_some(run_end)) else {
            continue;
        };
        let marked = lex.is_clause_marker(&tokens[before]) || lex.is_clause_marker(&tokens[after]);
        if marked && verbs[run_start] > verbs[chunk_start] && verbs[n] > verbs[run_end] {
            chunks.push((chunk_start, run_start));
            chunk_start = run_end;
        }
    }
    chunks.push((chunk_start, n));
    chunks
}

/// R3: a CC-tagged subordinate connector opens a new clause unless it is
/// already at an edge of its chunk.
fn connector_split(tokens: &[Token], (start, end): (usize, usize), lex: &MarkerLexicon, out: &mut Vec<(usize, usize)>) {
    let Some((first, last)) = trim(tokens, start, end) else {
        return;
    };
    let mut piece_start = first;
    for (k, token) in tokens.iter().enumerate().take(last - 1).skip(first + 1) {
        if lex.is_connector(token) {
            out.push((piece_start, k));
            piece_start = k;
        }
    }
    out.push((piece_start, last));
}

/// Clause spans of one paragraph (R1 is the caller's paragraph split).
pub fn detect_paragraph_clauses(tokens: &[Token], lex: &MarkerLexicon, cfg: &SegmenterConfig) -> Vec<ClauseSpan> {
    let verbs = verb_prefix(tokens);
    let chunks = if cfg.is_enabled(Rule::R2) {
        space_chunks(tokens, &verbs, lex)
    } else {
        vec![(0, tokens.len())]
    };
    let mut pieces = Vec::new();
    for chunk in chunks {
        if cfg.is_enabled(Rule::R3) {
            connector_split(tokens, chunk, lex, &mut pieces);
        } else if let Some(t) = trim(tokens, chunk.0, chunk.1) {
            pieces.push(t);
        }
    }

    // Verbless pieces join the next clause, or the previous one at the end.
    let mut spans: Vec<ClauseSpan> = Vec::new();
    let mut pending: Option<usize> = None;
    for (start, end) in pieces.into_iter().filter_map(|(s, e)| trim(tokens, s, e)) {
        if verbs[end] > verbs[start] {
            spans.push(ClauseSpan {
                start: pending.take().unwrap_or(start),
                end,
                has_verb: true,
            });
        } else {
            pending.get_or_insert(start);
        }
    }
    if let Some(start) = pending {
        let end = trim(tokens, 0, tokens.len()).map_or(start, |(_, e)| e);
        match spans.last_mut() {
            Some(last) => last.end = end,
            None => spans.push(ClauseSpan {
                start,
                end,
                has_verb: false,
            }),
        }
    }
    spans
}

pub fn detect_clauses(stream: &ParagraphStream, lex: &MarkerLexicon, cfg: &SegmenterConfig) -> Vec<Vec<ClauseSpan>> {
    stream
        .paragraphs()
        .iter()
        .map(|p| detect_paragraph_clauses(p, lex, cfg))
        .collect()
}

/// BIEO clause labels for `len` tokens; a one-token span is a lone B_CLS,
/// tokens outside every span are O.
pub fn emit_clause_labels(spans: &[ClauseSpan], len: usize) -> Vec<ClauseLabel> {
    let mut labels = vec![ClauseLabel::Outside; len];
    for span in spans {
        labels[span.start] = ClauseLabel::Begin;
        if span.len() > 1 {
            labels[span.start + 1..span.end - 1].fill(ClauseLabel::Inside);
            labels[span.end - 1] = ClauseLabel::End;
        }
    }
    labels
}

/// Reads clause spans off existing clause labels. Malformed sequences are
/// read leniently: an orphan I_/E_ opens a span, an O word closes one.
pub fn clauses_from_labels(tokens: &[Token]) -> Vec<ClauseSpan> {
    let mut spans = Vec::new();
    let mut open: Option<(usize, usize)> = None;
    let close = |open: &mut Option<(usize, usize)>, spans: &mut Vec<ClauseSpan>| {
        if let Some((start, last)) = open.take() {
            spans.push(ClauseSpan {
                start,
                end: last + 1,
                has_verb: tokens[start..=last].iter().any(is_verb),
            });
        }
    };
    for (i, token) in tokens.iter().enumerate() {
        match token.clause.prefix() {
            BoundaryPrefix::B => {
                close(&mut open, &mut spans);
                open = Some((i, i));
            }
            BoundaryPrefix::I | BoundaryPrefix::E => {
                let entry = open.get_or_insert((i, i));
                if !token.is_space {
                    entry.1 = i;
                }
                if token.clause.prefix() == BoundaryPrefix::E {
                    close(&mut open, &mut spans);
                }
            }
            BoundaryPrefix::O if token.is_space => {}
            BoundaryPrefix::O => close(&mut open, &mut spans),
        }
    }
    close(&mut open, &mut spans);
    spans
        .into_iter()
        .filter_map(|s| trim(tokens, s.start, s.end).map(|(start, end)| ClauseSpan { start, end, ..s }))
        .collect()
}

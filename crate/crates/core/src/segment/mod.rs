//! Rule-based clause detection and sentence aggregation over POS-tagged
//! token streams.
//!
//! Clause rules: R1 paragraph boundary, R2 marker-flanked white space,
//! R3 CC-tagged subordinate connector. Sentence rules: S1 paragraph
//! boundary, S2 cohesive marker, S3 subject shift, S4 direct speech,
//! S5 indirect speech, S6 list marker, S7 final particle.

mod clause;
mod lexicon;
mod sentence;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::format::{write_columnar, write_inline, Document, FileFormat, FormatError, Layers, Sentence, Token};

pub use clause::{
    clauses_from_labels, detect_clauses, detect_paragraph_clauses, emit_clause_labels, ClauseSpan, ParagraphStream,
};
pub use lexicon::{load_marker_lexicon, ConfigError, MarkerCategory, MarkerLexicon};
pub use sentence::{aggregate_sentences, decide_pair, Decision, SentenceSpan};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Rule {
    R1,
    R2,
    R3,
    S1,
    S2,
    S3,
    S4,
    S5,
    S6,
    S7,
}

impl Rule {
    pub const ALL: [Rule; 10] = [
        Rule::R1,
        Rule::R2,
        Rule::R3,
        Rule::S1,
        Rule::S2,
        Rule::S3,
        Rule::S4,
        Rule::S5,
        Rule::S6,
        Rule::S7,
    ];
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for Rule {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Rule::ALL
            .into_iter()
            .find(|r| r.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| ConfigError::new(0, format!("unknown rule `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SubjectShift {
    Always,
    Never,
    /// Split when the next clause opens with an overt NN/PR/AJ subject
    /// whose surface differs from the current clause's opening subject.
    #[default]
    Heuristic,
}

impl FromStr for SubjectShift {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "always" => Ok(SubjectShift::Always),
            "never" => Ok(SubjectShift::Never),
            "heuristic" => Ok(SubjectShift::Heuristic),
            other => Err(ConfigError::new(0, format!("unknown subject-shift strategy `{other}`"))),
        }
    }
}

/// Order of the rule groups after S1, which always comes first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RulePrecedence {
    /// S6, S4, S5, then S2, S7, then S3.
    #[default]
    MergeFirst,
    /// S2, S7, then S6, S4, S5, then S3.
    SplitFirst,
}

/// Where clause spans come from when segmenting a document.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ClauseSource {
    #[default]
    Detect,
    /// Read from the existing clause column.
    Gold,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SegmenterConfig {
    disabled: BTreeSet<Rule>,
    pub subject_shift: SubjectShift,
    pub precedence: RulePrecedence,
    pub clause_source: ClauseSource,
}

impl SegmenterConfig {
    pub fn is_enabled(&self, rule: Rule) -> bool {
        !self.disabled.contains(&rule)
    }

    /// R1 and S1 cannot be disabled.
    pub fn disable(&mut self, rule: Rule) -> Result<(), ConfigError> {
        if matches!(rule, Rule::R1 | Rule::S1) {
            return Err(ConfigError::new(0, format!("rule {rule} cannot be disabled")));
        }
        self.disabled.insert(rule);
        Ok(())
    }

    pub fn enable(&mut self, rule: Rule) {
        self.disabled.remove(&rule);
    }
}

/// Groups a document's sentences into paragraphs: by `paragraph_starts`
/// when present, otherwise one paragraph per sentence.
fn paragraphs(doc: &Document) -> Vec<Vec<Token>> {
    let starts: BTreeSet<usize> = match &doc.paragraph_starts {
        Some(starts) => starts.iter().copied().collect(),
        None => (0..doc.sentences.len()).collect(),
    };
    let mut out: Vec<Vec<Token>> = Vec::new();
    for (i, sentence) in doc.sentences.iter().enumerate() {
        if starts.contains(&i) || out.is_empty() {
            out.push(Vec::new());
        }
        out.last_mut()
            .expect("pushed above")
            .extend(sentence.tokens.iter().cloned());
    }
    out
}

/// Re-segments a document into clauses and sentences. Clause labels are
/// rewritten; space tokens between sentences are dropped.
pub fn segment_document(doc: &Document, lex: &MarkerLexicon, cfg: &SegmenterConfig) -> Document {
    let mut tokens: Vec<Token> = Vec::new();
    let mut clauses: Vec<ClauseSpan> = Vec::new();
    let mut paragraph_starts = Vec::new();
    let mut clause_paragraph = Vec::new();
    for (p_idx, paragraph) in ParagraphStream::new(paragraphs(doc)).paragraphs().iter().enumerate() {
        let offset = tokens.len();
        let spans = match cfg.clause_source {
            ClauseSource::Detect => detect_paragraph_clauses(paragraph, lex, cfg),
            ClauseSource::Gold => clauses_from_labels(paragraph),
        };
        paragraph_starts.push(offset);
        clause_paragraph.extend(std::iter::repeat_n(p_idx, spans.len()));
        clauses.extend(spans.into_iter().map(|s| ClauseSpan {
            start: s.start + offset,
            end: s.end + offset,
            ..s
        }));
        tokens.extend(paragraph.iter().cloned());
    }

    let labels = emit_clause_labels(&clauses, tokens.len());
    for (token, label) in tokens.iter_mut().zip(labels) {
        token.clause = label;
    }

    let spans = aggregate_sentences(&clauses, &tokens, &paragraph_starts, lex, cfg);
    let mut sentences = Vec::with_capacity(spans.len());
    let mut out_starts = Vec::new();
    let mut last_paragraph = None;
    for span in spans {
        let first = clauses[span.clauses.start];
        let last = clauses[span.clauses.end - 1];
        let paragraph = clause_paragraph[span.clauses.start];
        if last_paragraph != Some(paragraph) {
            out_starts.push(sentences.len());
            last_paragraph = Some(paragraph);
        }
        sentences.push(Sentence::new(tokens[first.start..last.end].to_vec()));
    }

    Document {
        id: doc.id.clone(),
        genre: doc.genre.clone(),
        sentences,
        paragraph_starts: Some(out_starts),
    }
}

/// Serializes sentences with their boundary markers: `||` per sentence in
/// inline text, an empty line between sentences in columnar files.
pub fn emit_sentence_markers(
    sentences: &[Sentence],
    format: FileFormat,
    layers: Layers,
) -> Result<String, FormatError> {
    match format {
        FileFormat::Inline => write_inline(sentences, layers),
        FileFormat::Columnar => write_columnar(&Document::new("segmented", sentences.to_vec())),
    }
}

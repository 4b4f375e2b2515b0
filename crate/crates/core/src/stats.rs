//! Corpus counts and distributions.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::ops::{Add, AddAssign};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::format::{Corpus, Document};
use crate::schema::{BoundaryPrefix, ClauseLabel};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct CorpusCounts {
    pub documents: usize,
    pub sentences: usize,
    pub clauses: usize,
    pub named_entities: usize,
    pub words: usize,
    pub tokens: usize,
}

impl Add for CorpusCounts {
    type Output = CorpusCounts;

    fn add(self, o: CorpusCounts) -> CorpusCounts {
        CorpusCounts {
            documents: self.documents + o.documents,
            sentences: self.sentences + o.sentences,
            clauses: self.clauses + o.clauses,
            named_entities: self.named_entities + o.named_entities,
            words: self.words + o.words,
            tokens: self.tokens + o.tokens,
        }
    }
}

impl AddAssign for CorpusCounts {
    fn add_assign(&mut self, o: CorpusCounts) {
        *self = *self + o;
    }
}

impl std::iter::Sum for CorpusCounts {
    fn sum<I: Iterator<Item = CorpusCounts>>(iter: I) -> Self {
        iter.fold(CorpusCounts::default(), Add::add)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CountOptions {
    /// Count white-space tokens as words.
    pub include_spaces: bool,
}

/// Counts for one document. Named entities are `B_` labels and clauses
/// are `B_CLS` labels.
pub fn document_counts(doc: &Document, opts: CountOptions) -> CorpusCounts {
    let mut c = CorpusCounts {
        documents: 1,
        sentences: doc.sentences.len(),
        ..CorpusCounts::default()
    };
    for token in doc.tokens() {
        c.tokens += 1;
        if opts.include_spaces || !token.is_space {
            c.words += 1;
        }
        if token.ne.prefix() == BoundaryPrefix::B {
            c.named_entities += 1;
        }
        if token.clause == ClauseLabel::Begin {
            c.clauses += 1;
        }
    }
    c
}

pub fn corpus_counts(corpus: &Corpus, opts: CountOptions) -> CorpusCounts {
    corpus.documents.par_iter().map(|d| document_counts(d, opts)).sum()
}

/// Bin name to count; absent bins are zero.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Histogram {
    bins: BTreeMap<String, usize>,
}

impl Histogram {
    pub fn add(&mut self, bin: &str, n: usize) {
        if n > 0 {
            *self.bins.entry(bin.to_owned()).or_default() += n;
        }
    }

    pub fn merge(mut self, other: Histogram) -> Histogram {
        for (bin, n) in other.bins {
            self.add(&bin, n);
        }
        self
    }

    pub fn bins(&self) -> &BTreeMap<String, usize> {
        &self.bins
    }

    pub fn get(&self, bin: &str) -> usize {
        self.bins.get(bin).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.bins.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bins.is_empty()
    }

    pub fn total(&self) -> usize {
        self.bins.values().sum()
    }
}

impl<S: AsRef<str>> FromIterator<(S, usize)> for Histogram {
    fn from_iter<I: IntoIterator<Item = (S, usize)>>(iter: I) -> Self {
        let mut h = Histogram::default();
        for (bin, n) in iter {
            h.add(bin.as_ref(), n);
        }
        h
    }
}

pub const UNKNOWN_GENRE: &str = "unknown";

/// Documents per genre; documents without one go under `unknown`.
pub fn genre_histogram(corpus: &Corpus) -> Histogram {
    corpus
        .documents
        .iter()
        .map(|d| (d.genre.as_deref().unwrap_or(UNKNOWN_GENRE), 1))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TagLayer {
    /// Every token's POS tag, spaces included.
    Pos,
    /// Category of each entity, counted at its `B_` label.
    NeCategory,
}

pub fn tag_frequency(corpus: &Corpus, layer: TagLayer) -> Histogram {
    corpus
        .documents
        .par_iter()
        .map(|doc| {
            let mut h = Histogram::default();
            for token in doc.tokens() {
                match layer {
                    TagLayer::Pos => h.add(token.pos.as_str(), 1),
                    TagLayer::NeCategory => {
                        if let (BoundaryPrefix::B, Some(cat)) = (token.ne.prefix(), token.ne.category()) {
                            h.add(cat.as_str(), 1);
                        }
                    }
                }
            }
            h
        })
        .reduce(Histogram::default, Histogram::merge)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ManifestError {
    #[error("line {line}: expected `<document-id>\\t<genre>`")]
    Syntax { line: usize },
    #[error("line {line}: document `{id}` listed twice")]
    Duplicate { line: usize, id: String },
}

/// Reads `<document-id>\t<genre>` lines. Blank lines and `#` lines are skipped.
pub fn load_manifest(text: &str) -> Result<BTreeMap<String, String>, ManifestError> {
    let mut out = BTreeMap::new();
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let (id, genre) = line.split_once('\t').ok_or(ManifestError::Syntax { line: line_no })?;
        let (id, genre) = (id.trim(), genre.trim());
        if id.is_empty() || genre.is_empty() || genre.contains('\t') {
            return Err(ManifestError::Syntax { line: line_no });
        }
        if out.insert(id.to_owned(), genre.to_owned()).is_some() {
            return Err(ManifestError::Duplicate {
                line: line_no,
                id: id.to_owned(),
            });
        }
    }
    Ok(out)
}

/// Sets each document's genre from the manifest; unlisted documents keep
/// theirs.
pub fn apply_manifest(corpus: &mut Corpus, manifest: &BTreeMap<String, String>) {
    for doc in &mut corpus.documents {
        if let Some(genre) = manifest.get(&doc.id) {
            doc.genre = Some(genre.clone());
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StatsReport {
    pub counts: CorpusCounts,
    pub genres: Histogram,
    pub pos: Histogram,
    pub ne_categories: Histogram,
}

impl StatsReport {
    pub fn compute(corpus: &Corpus, opts: CountOptions) -> Self {
        StatsReport {
            counts: corpus_counts(corpus, opts),
            genres: genre_histogram(corpus),
            pos: tag_frequency(corpus, TagLayer::Pos),
            ne_categories: tag_frequency(corpus, TagLayer::NeCategory),
        }
    }

    /// Two-column text table.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let c = &self.counts;
        for (name, n) in [
            ("documents", c.documents),
            ("sentences", c.sentences),
            ("clauses", c.clauses),
            ("named_entities", c.named_entities),
            ("words", c.words),
            ("tokens", c.tokens),
        ] {
            let _ = writeln!(out, "{name:<16}{n:>12}");
        }
        for (title, h) in [("genre", &self.genres), ("pos", &self.pos), ("ne", &self.ne_categories)] {
            let _ = writeln!(out, "\n[{title}]");
            for (bin, n) in h.bins() {
                let _ = writeln!(out, "{bin:<16}{n:>12}");
            }
        }
        out
    }
}

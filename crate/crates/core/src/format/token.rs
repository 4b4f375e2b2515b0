use crate::schema::{ClauseLabel, NeLabel, PosTag};

/// In-memory surface of a white-space token. Each serialization maps it to
/// its own glyph (`_` in columnar files, `␣` in inline text).
pub const SPACE_SURFACE: &str = " ";

/// One annotated word with its four layers.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Token {
    pub surface: String,
    pub pos: PosTag,
    pub ne: NeLabel,
    pub clause: ClauseLabel,
    pub is_space: bool,
}

impl Token {
    pub fn word(surface: impl Into<String>, pos: PosTag, ne: NeLabel, clause: ClauseLabel) -> Self {
        Token {
            surface: surface.into(),
            pos,
            ne,
            clause,
            is_space: false,
        }
    }

    pub fn space(pos: PosTag, ne: NeLabel, clause: ClauseLabel) -> Self {
        Token {
            surface: SPACE_SURFACE.to_owned(),
            pos,
            ne,
            clause,
            is_space: true,
        }
    }

    /// Checks the serialization-independent invariants.
    pub fn invariant_violation(&self) -> Option<&'static str> {
        if self.is_space {
            return (self.surface != SPACE_SURFACE).then_some("space token with non-canonical surface");
        }
        if self.surface.is_empty() {
            Some("empty surface")
        } else if self.surface.contains(['\t', '\n']) {
            Some("surface contains a tab or newline")
        } else {
            None
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Sentence {
    pub tokens: Vec<Token>,
}

impl Sentence {
    pub fn new(tokens: Vec<Token>) -> Self {
        Sentence { tokens }
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    pub id: String,
    pub genre: Option<String>,
    pub sentences: Vec<Sentence>,
    /// Indices of paragraph-initial sentences. Only the segmenter fills
    /// this in; neither file format can carry it.
    pub paragraph_starts: Option<Vec<usize>>,
}

impl Document {
    pub fn new(id: impl Into<String>, sentences: Vec<Sentence>) -> Self {
        Document {
            id: id.into(),
            genre: None,
            sentences,
            paragraph_starts: None,
        }
    }

    pub fn tokens(&self) -> impl Iterator<Item = &Token> {
        self.sentences.iter().flat_map(|s| s.tokens.iter())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Corpus {
    pub documents: Vec<Document>,
}

impl Corpus {
    pub fn new(documents: Vec<Document>) -> Self {
        Corpus { documents }
    }
}

//! Columnar (tab-separated, four columns) and inline (`word/POS/NE/CLS | …
//! ||`) serializations, plus conversion between them.

mod columnar;
mod inline;
mod token;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::schema::SchemaError;

pub use columnar::{read_columnar, write_columnar, COLUMNAR_SPACE};
pub use inline::{read_inline, write_inline, Layers, INLINE_SPACE};
pub use token::{Corpus, Document, Sentence, Token, SPACE_SURFACE};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ParseMode {
    /// Abort on the first malformed line or token.
    Strict,
    /// Skip malformed material and collect every diagnostic.
    #[default]
    Permissive,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LineErrorKind {
    #[error("expected 4 tab-separated fields, found {0}")]
    FieldCount(usize),
    #[error("field {0} is empty")]
    EmptyField(usize),
    #[error(transparent)]
    Tag(#[from] SchemaError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TokenErrorKind {
    #[error("empty token")]
    Empty,
    #[error("cannot split into 2 to 4 slash-separated layers")]
    LayerCount,
    #[error("layer count differs from the rest of the sentence")]
    MixedArity,
    #[error(transparent)]
    Tag(#[from] SchemaError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}: {kind}")]
    Line { line: usize, kind: LineErrorKind },
    #[error("sentence {sentence}, token {token}: {kind}")]
    Token {
        sentence: usize,
        token: usize,
        kind: TokenErrorKind,
    },
    #[error("cannot write sentence {sentence}, token {token}: {reason}")]
    Unwritable {
        sentence: usize,
        token: usize,
        reason: &'static str,
    },
    #[error("document id must not be empty")]
    EmptyId,
    #[error("layer count must be 2, 3 or 4 (got {0})")]
    InvalidLayers(u8),
}

impl FormatError {
    /// Stable diagnostic code in the `FORMAT_*` family.
    pub fn code(&self) -> &'static str {
        match self {
            FormatError::Line { kind, .. } => match kind {
                LineErrorKind::FieldCount(_) => "FORMAT_FIELD_COUNT",
                LineErrorKind::EmptyField(_) => "FORMAT_EMPTY_FIELD",
                LineErrorKind::Tag(_) => "FORMAT_BAD_TAG",
            },
            FormatError::Token { kind, .. } => match kind {
                TokenErrorKind::Empty => "FORMAT_EMPTY_TOKEN",
                TokenErrorKind::LayerCount => "FORMAT_LAYER_COUNT",
                TokenErrorKind::MixedArity => "FORMAT_MIXED_ARITY",
                TokenErrorKind::Tag(_) => "FORMAT_BAD_TAG",
            },
            FormatError::Unwritable { .. } => "FORMAT_UNWRITABLE",
            FormatError::EmptyId => "FORMAT_EMPTY_ID",
            FormatError::InvalidLayers(_) => "FORMAT_LAYERS",
        }
    }
}

/// A parse result together with the diagnostics for skipped material.
/// In strict mode `errors` is always empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Parsed<T> {
    pub value: T,
    pub errors: Vec<FormatError>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FileFormat {
    Columnar,
    Inline,
}

impl FromStr for FileFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "columnar" => Ok(FileFormat::Columnar),
            "inline" => Ok(FileFormat::Inline),
            other => Err(format!("unknown format `{other}` (expected columnar or inline)")),
        }
    }
}

impl fmt::Display for FileFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FileFormat::Columnar => "columnar",
            FileFormat::Inline => "inline",
        })
    }
}

/// Reads either format into a document. Inline input has no document id of
/// its own, so `id` is used for both.
pub fn read_document(
    format: FileFormat,
    text: &str,
    id: &str,
    mode: ParseMode,
) -> Result<Parsed<Document>, FormatError> {
    match format {
        FileFormat::Columnar => read_columnar(text, id, mode),
        FileFormat::Inline => {
            if id.is_empty() {
                return Err(FormatError::EmptyId);
            }
            let parsed = read_inline(text, mode)?;
            Ok(Parsed {
                value: Document::new(id, parsed.value),
                errors: parsed.errors,
            })
        }
    }
}

pub fn write_document(format: FileFormat, doc: &Document, layers: Layers) -> Result<String, FormatError> {
    match format {
        FileFormat::Columnar => write_columnar(doc),
        FileFormat::Inline => write_inline(&doc.sentences, layers),
    }
}

/// Reads `text` in one format and writes it in another. Strict: any reader
/// error aborts the conversion. `layers` only affects inline output.
pub fn convert(from: FileFormat, to: FileFormat, text: &str, layers: Layers) -> Result<String, FormatError> {
    let doc = read_document(from, text, "converted", ParseMode::Strict)?.value;
    write_document(to, &doc, layers)
}

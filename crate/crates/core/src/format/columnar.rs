use super::{Document, FormatError, LineErrorKind, ParseMode, Parsed, Sentence, Token};
use crate::schema::{ClauseLabel, NeLabel, PosTag};

/// Surface used for white-space tokens in columnar files.
pub const COLUMNAR_SPACE: &str = "_";

fn parse_line(line: &str) -> Result<Token, LineErrorKind> {
    let fields: Vec<&str> = line.split('\t').collect();
    if fields.len() != 4 {
        return Err(LineErrorKind::FieldCount(fields.len()));
    }
    if let Some(i) = fields.iter().position(|f| f.is_empty()) {
        return Err(LineErrorKind::EmptyField(i + 1));
    }
    let pos: PosTag = fields[1].parse()?;
    let ne: NeLabel = fields[2].parse()?;
    let clause: ClauseLabel = fields[3].parse()?;
    Ok(if fields[0] == COLUMNAR_SPACE {
        Token::space(pos, ne, clause)
    } else {
        Token::word(fields[0], pos, ne, clause)
    })
}

/// Parses a four-column file. Sentences are separated by empty lines; runs
/// of empty lines count as one separator.
pub fn read_columnar(text: &str, id: &str, mode: ParseMode) -> Result<Parsed<Document>, FormatError> {
    if id.is_empty() {
        return Err(FormatError::EmptyId);
    }
    let mut sentences = Vec::new();
    let mut current = Vec::new();
    let mut errors = Vec::new();

    // `lines()` would also strip a trailing '\r', which is not part of the format.
    let body = text.strip_suffix('\n').unwrap_or(text);
    if !body.is_empty() || text.len() > body.len() {
        for (idx, line) in body.split('\n').enumerate() {
            if line.is_empty() {
                if !current.is_empty() {
                    sentences.push(Sentence::new(std::mem::take(&mut current)));
                }
                continue;
            }
            match parse_line(line) {
                Ok(token) => current.push(token),
                Err(kind) => {
                    let err = FormatError::Line { line: idx + 1, kind };
                    if mode == ParseMode::Strict {
                        return Err(err);
                    }
                    errors.push(err);
                }
            }
        }
    }
    if !current.is_empty() {
        sentences.push(Sentence::new(current));
    }
    Ok(Parsed {
        value: Document::new(id, sentences),
        errors,
    })
}

/// One line per token, one empty line between sentences, and a final
/// newline. Empty sentences are skipped.
pub fn write_columnar(doc: &Document) -> Result<String, FormatError> {
    let mut out = String::new();
    let mut first = true;
    for (s_idx, sentence) in doc.sentences.iter().enumerate() {
        if sentence.is_empty() {
            continue;
        }
        if !first {
            out.push('\n');
        }
        first = false;
        for (t_idx, token) in sentence.tokens.iter().enumerate() {
            let unwritable = |reason| FormatError::Unwritable {
                sentence: s_idx,
                token: t_idx,
                reason,
            };
            if let Some(reason) = token.invariant_violation() {
                return Err(unwritable(reason));
            }
            let surface = if token.is_space {
                COLUMNAR_SPACE
            } else if token.surface == COLUMNAR_SPACE {
                return Err(unwritable("a literal `_` word collides with the space glyph"));
            } else {
                token.surface.as_str()
            };
            out.push_str(surface);
            for field in [token.pos.as_str(), &token.ne.to_string(), token.clause.as_str()] {
                out.push('\t');
                out.push_str(field);
            }
            out.push('\n');
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schema::SchemaError;

    fn strict(text: &str) -> Result<Document, FormatError> {
        read_columnar(text, "t", ParseMode::Strict).map(|p| p.value)
    }

    #[test]
    fn single_token_line() {
        let doc = Document::new(
            "t",
            vec![Sentence::new(vec![Token::word(
                "สุนัข",
                PosTag::NN,
                NeLabel::O,
                ClauseLabel::Begin,
            )])],
        );
        let text = write_columnar(&doc).unwrap();
        assert_eq!(text, "สุนัข\tNN\tO\tB_CLS\n");
        assert_eq!(strict(&text).unwrap(), doc);
    }

    #[test]
    fn empty_input() {
        assert!(strict("").unwrap().sentences.is_empty());
        assert!(strict("\n\n\n").unwrap().sentences.is_empty());
        assert_eq!(write_columnar(&Document::new("t", vec![])).unwrap(), "");
    }

    #[test]
    fn field_count_error() {
        assert_eq!(
            strict("a\tNN\tO").unwrap_err(),
            FormatError::Line {
                line: 1,
                kind: LineErrorKind::FieldCount(3)
            }
        );
        // A tab inside a field shows up as an extra field.
        assert_eq!(
            strict("a\tb\tNN\tO\tO\n").unwrap_err(),
            FormatError::Line {
                line: 1,
                kind: LineErrorKind::FieldCount(5)
            }
        );
    }

    #[test]
    fn space_glyph_and_sentence_breaks() {
        let doc = strict("\n\nก\tNN\tO\tB_CLS\n_\tPU\tO\tI_CLS\n\n\n\nข\tVV\tO\tE_CLS\n").unwrap();
        assert_eq!(doc.sentences.len(), 2);
        assert!(doc.sentences[0].tokens[1].is_space);
        assert_eq!(doc.sentences[0].tokens[1].surface, " ");
        assert_eq!(
            write_columnar(&doc).unwrap(),
            "ก\tNN\tO\tB_CLS\n_\tPU\tO\tI_CLS\n\nข\tVV\tO\tE_CLS\n"
        );
    }

    #[test]
    fn permissive_collects_all_errors() {
        let text = "ก\tNN\tO\tO\nข\tQQ\tO\tO\nค\tNN\tB_CAT\tO\n\tNN\tO\tO\nง\tVV\tO\tO\n";
        let parsed = read_columnar(text, "t", ParseMode::Permissive).unwrap();
        assert_eq!(parsed.value.sentences.len(), 1);
        assert_eq!(parsed.value.sentences[0].len(), 2);
        assert_eq!(
            parsed.errors,
            vec![
                FormatError::Line {
                    line: 2,
                    kind: LineErrorKind::Tag(SchemaError::UnknownTag("QQ".into()))
                },
                FormatError::Line {
                    line: 3,
                    kind: LineErrorKind::Tag(SchemaError::UnknownCategory("CAT".into()))
                },
                FormatError::Line {
                    line: 4,
                    kind: LineErrorKind::EmptyField(1)
                },
            ]
        );
        assert_eq!(strict(text).unwrap_err(), parsed.errors[0]);
    }

    #[test]
    fn missing_final_newline_is_accepted() {
        let doc = strict("ก\tNN\tO\tO").unwrap();
        assert_eq!(doc.sentences.len(), 1);
    }

    #[test]
    fn carriage_return_is_not_stripped() {
        assert!(matches!(
            strict("ก\tNN\tO\tO\r\n"),
            Err(FormatError::Line {
                line: 1,
                kind: LineErrorKind::Tag(_)
            })
        ));
    }

    #[test]
    fn literal_underscore_word_is_unwritable() {
        let doc = Document::new(
            "t",
            vec![Sentence::new(vec![Token::word(
                "_",
                PosTag::PU,
                NeLabel::O,
                ClauseLabel::Outside,
            )])],
        );
        assert!(matches!(
            write_columnar(&doc),
            Err(FormatError::Unwritable {
                sentence: 0,
                token: 0,
                ..
            })
        ));
    }

    #[test]
    fn empty_id_rejected() {
        assert_eq!(read_columnar("", "", ParseMode::Strict), Err(FormatError::EmptyId));
    }
}

use super::{FormatError, ParseMode, Parsed, Sentence, Token, TokenErrorKind};
use crate::schema::{ClauseLabel, NeLabel, PosTag};

/// Surface used for white-space tokens in inline text (U+2423).
pub const INLINE_SPACE: &str = "␣";

const TOKEN_SEP: char = '|';
const SENTENCE_END: &str = "||";
const LAYER_SEP: char = '/';

/// How many `/`-separated layers each inline token carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub enum Layers {
    /// word/POS
    Two,
    /// word/POS/NE
    Three,
    /// word/POS/NE/clause
    #[default]
    Four,
}

impl Layers {
    pub fn count(self) -> usize {
        match self {
            Layers::Two => 2,
            Layers::Three => 3,
            Layers::Four => 4,
        }
    }
}

impl TryFrom<u8> for Layers {
    type Error = FormatError;

    fn try_from(n: u8) -> Result<Self, Self::Error> {
        match n {
            2 => Ok(Layers::Two),
            3 => Ok(Layers::Three),
            4 => Ok(Layers::Four),
            n => Err(FormatError::InvalidLayers(n)),
        }
    }
}

/// Splits `raw` into exactly `k` layers, taking separators from the right
/// so the surface may contain `/`.
fn split_layers(raw: &str, k: usize) -> Result<Token, TokenErrorKind> {
    let mut parts: Vec<&str> = raw.rsplitn(k, LAYER_SEP).collect();
    if parts.len() != k {
        return Err(TokenErrorKind::LayerCount);
    }
    parts.reverse();
    let surface = parts[0].trim();
    if surface.is_empty() {
        return Err(TokenErrorKind::LayerCount);
    }
    let tag = |i: usize| parts[i].trim();
    let pos: PosTag = tag(1).parse()?;
    let ne: NeLabel = if k >= 3 { tag(2).parse()? } else { NeLabel::O };
    let clause: ClauseLabel = if k >= 4 { tag(3).parse()? } else { ClauseLabel::Outside };
    Ok(if surface == INLINE_SPACE {
        Token::space(pos, ne, clause)
    } else {
        Token::word(surface, pos, ne, clause)
    })
}

/// Parses every raw token at every arity it supports and keeps the largest
/// arity shared by the whole sentence.
fn parse_sentence(raw_tokens: &[&str], s_idx: usize) -> Result<Vec<Token>, FormatError> {
    let located = |token: usize, kind| FormatError::Token {
        sentence: s_idx,
        token,
        kind,
    };
    let mut candidates: Vec<[Option<Token>; 3]> = Vec::with_capacity(raw_tokens.len());
    for (t_idx, raw) in raw_tokens.iter().enumerate() {
        if raw.is_empty() {
            return Err(located(t_idx, TokenErrorKind::Empty));
        }
        let attempts = [4, 3, 2].map(|k| split_layers(raw, k));
        if attempts.iter().all(Result::is_err) {
            // Report the attempt that used the most separators present.
            let max_k = (raw.matches(LAYER_SEP).count() + 1).clamp(2, 4);
            let kind = attempts
                .into_iter()
                .nth(4 - max_k)
                .and_then(Result::err)
                .unwrap_or(TokenErrorKind::LayerCount);
            return Err(located(t_idx, kind));
        }
        candidates.push(attempts.map(Result::ok));
    }
    // Slot 0 is arity 4, slot 2 is arity 2.
    let shared = (0..3).find(|&slot| candidates.iter().all(|c| c[slot].is_some()));
    match shared {
        Some(slot) => Ok(candidates
            .into_iter()
            .map(|mut c| c[slot].take().expect("checked above"))
            .collect()),
        None => {
            let first_slot = candidates[0]
                .iter()
                .position(Option::is_some)
                .expect("every token has an arity");
            let t_idx = candidates.iter().position(|c| c[first_slot].is_none()).unwrap_or(0);
            Err(located(t_idx, TokenErrorKind::MixedArity))
        }
    }
}

/// Parses inline text: tokens separated by `|`, layers by `/`, sentences
/// terminated by `||`. Line breaks are ordinary white space. A trailing
/// run of tokens without `||` still forms a sentence.
pub fn read_inline(text: &str, mode: ParseMode) -> Result<Parsed<Vec<Sentence>>, FormatError> {
    let mut sentences = Vec::new();
    let mut errors = Vec::new();
    let mut s_idx = 0;
    for chunk in text.split(SENTENCE_END) {
        let mut raw: Vec<&str> = chunk.split(TOKEN_SEP).map(str::trim).collect();
        while raw.last().is_some_and(|r| r.is_empty()) {
            raw.pop();
        }
        let leading = raw.iter().take_while(|r| r.is_empty()).count();
        let raw = &raw[leading..];
        if raw.is_empty() {
            continue;
        }
        match parse_sentence(raw, s_idx) {
            Ok(tokens) => sentences.push(Sentence::new(tokens)),
            Err(err) if mode == ParseMode::Permissive => errors.push(err),
            Err(err) => return Err(err),
        }
        s_idx += 1;
    }
    Ok(Parsed {
        value: sentences,
        errors,
    })
}

fn unwritable(sentence: usize, token: usize, reason: &'static str) -> FormatError {
    FormatError::Unwritable {
        sentence,
        token,
        reason,
    }
}

/// Writes one sentence per line: tokens joined by ` | `, each sentence
/// closed by ` ||`.
pub fn write_inline(sentences: &[Sentence], layers: Layers) -> Result<String, FormatError> {
    let mut out = String::new();
    for (s_idx, sentence) in sentences.iter().enumerate() {
        if sentence.is_empty() {
            continue;
        }
        for (t_idx, token) in sentence.tokens.iter().enumerate() {
            if let Some(reason) = token.invariant_violation() {
                return Err(unwritable(s_idx, t_idx, reason));
            }
            let surface = if token.is_space {
                INLINE_SPACE
            } else {
                let s = token.surface.as_str();
                if s.contains(TOKEN_SEP) {
                    return Err(unwritable(s_idx, t_idx, "surface contains `|`"));
                }
                if s == INLINE_SPACE {
                    return Err(unwritable(
                        s_idx,
                        t_idx,
                        "a literal `␣` word collides with the space glyph",
                    ));
                }
                if s.trim() != s {
                    return Err(unwritable(s_idx, t_idx, "surface has leading or trailing white space"));
                }
                s
            };
            if t_idx > 0 {
                out.push_str(" | ");
            }
            out.push_str(surface);
            out.push(LAYER_SEP);
            out.push_str(token.pos.as_str());
            if layers >= Layers::Three {
                out.push(LAYER_SEP);
                out.push_str(&token.ne.to_string());
            }
            if layers == Layers::Four {
                out.push(LAYER_SEP);
                out.push_str(token.clause.as_str());
            }
        }
        out.push(' ');
        out.push_str(SENTENCE_END);
        out.push('\n');
    }
    Ok(out)
}

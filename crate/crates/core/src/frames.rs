//! Distributional POS test frames: a small pattern language over POS
//! sequences and a backtracking matcher.
//!
//! Spec items, whitespace-separated:
//!
//! | item    | slot                                   |
//! |---------|----------------------------------------|
//! | `_`     | the hole, bound to the candidate word  |
//! | `TAG`   | exactly one token with that POS        |
//! | `(TAG)` | zero or one token with that POS        |
//! | `*`     | one or more tokens of any POS          |
//! | `*?`    | zero or more tokens of any POS         |
//!
//! A frame must cover the whole (space-stripped) sequence. Put `*?` at an
//! end to let it match inside a longer sentence.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::Range;

use thiserror::Error;

use crate::schema::PosTag;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FrameSlot {
    Exact(PosTag),
    Hole,
    OptionalExact(PosTag),
    Phrase,
    OptionalPhrase,
}

impl FrameSlot {
    fn min_len(self) -> usize {
        match self {
            FrameSlot::Exact(_) | FrameSlot::Hole | FrameSlot::Phrase => 1,
            FrameSlot::OptionalExact(_) | FrameSlot::OptionalPhrase => 0,
        }
    }
}

impl fmt::Display for FrameSlot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FrameSlot::Exact(t) => write!(f, "{t}"),
            FrameSlot::Hole => f.write_str("_"),
            FrameSlot::OptionalExact(t) => write!(f, "({t})"),
            FrameSlot::Phrase => f.write_str("*"),
            FrameSlot::OptionalPhrase => f.write_str("*?"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecError {
    #[error("frame has no hole `_`")]
    NoHole,
    #[error("frame has {0} holes; exactly one is allowed")]
    MultipleHoles(usize),
    #[error("unknown POS tag `{0}`")]
    UnknownTag(String),
    #[error("malformed item `{0}`")]
    BadItem(String),
    #[error("frame id must be non-empty and free of white space and `:`")]
    BadId,
}

/// A compiled frame. Exactly one slot is the hole.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FramePattern {
    id: String,
    slots: Vec<FrameSlot>,
    hole: usize,
}

impl FramePattern {
    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn slots(&self) -> &[FrameSlot] {
        &self.slots
    }

    pub fn hole_index(&self) -> usize {
        self.hole
    }

    /// The spec string this pattern compiles from.
    pub fn spec(&self) -> String {
        self.slots.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
    }
}

fn parse_item(item: &str) -> Result<FrameSlot, SpecError> {
    let tag = |s: &str| s.parse::<PosTag>().map_err(|_| SpecError::UnknownTag(s.to_owned()));
    Ok(match item {
        "_" => FrameSlot::Hole,
        "*" => FrameSlot::Phrase,
        "*?" => FrameSlot::OptionalPhrase,
        _ => match item.strip_prefix('(') {
            Some(rest) => {
                let inner = rest
                    .strip_suffix(')')
                    .ok_or_else(|| SpecError::BadItem(item.to_owned()))?;
                FrameSlot::OptionalExact(tag(inner)?)
            }
            None if item.contains(['(', ')']) => return Err(SpecError::BadItem(item.to_owned())),
            None => FrameSlot::Exact(tag(item)?),
        },
    })
}

pub fn compile_frame(id: &str, spec: &str) -> Result<FramePattern, SpecError> {
    if id.is_empty() || id.contains(':') || id.chars().any(char::is_whitespace) {
        return Err(SpecError::BadId);
    }
    let slots = spec.split_whitespace().map(parse_item).collect::<Result<Vec<_>, _>>()?;
    let holes: Vec<usize> = (0..slots.len()).filter(|&i| slots[i] == FrameSlot::Hole).collect();
    match holes.as_slice() {
        [] => Err(SpecError::NoHole),
        &[hole] => Ok(FramePattern {
            id: id.to_owned(),
            slots,
            hole,
        }),
        many => Err(SpecError::MultipleHoles(many.len())),
    }
}

/// A witness alignment: slot `i` covers `alignment[i]`. Absent optional
/// slots get an empty range at their position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrameMatch {
    pub frame_id: String,
    pub alignment: Vec<Range<usize>>,
}

struct Matcher<'a> {
    seq: &'a [PosTag],
    candidate: usize,
    slots: &'a [FrameSlot],
    hole: usize,
    /// `min_rest[i]`: least number of tokens slots `i..` can cover.
    min_rest: Vec<usize>,
    alignment: Vec<Range<usize>>,
}

impl Matcher<'_> {
    /// Depth-first in preference order: optional slots present before
    /// absent, phrases longest first.
    fn go(&mut self, slot: usize, pos: usize) -> bool {
        let n = self.seq.len();
        if slot == self.slots.len() {
            return pos == n;
        }
        if n - pos < self.min_rest[slot] {
            return false;
        }
        let lengths: Box<dyn Iterator<Item = usize>> = match self.slots[slot] {
            FrameSlot::Hole => {
                if pos != self.candidate {
                    return false;
                }
                Box::new(std::iter::once(1))
            }
            FrameSlot::Exact(t) => {
                if self.seq[pos] != t {
                    return false;
                }
                Box::new(std::iter::once(1))
            }
            FrameSlot::OptionalExact(t) => {
                let present = pos < n && self.seq[pos] == t;
                Box::new([1, 0].into_iter().filter(move |&l| l == 0 || present))
            }
            FrameSlot::Phrase | FrameSlot::OptionalPhrase => {
                let min = self.slots[slot].min_len();
                let max = n - pos - self.min_rest[slot + 1];
                Box::new((min..=max).rev())
            }
        };
        for len in lengths {
            // The hole must stay to the right of any phrase that would swallow it.
            let end = pos + len;
            if slot < self.hole && end > self.candidate {
                continue;
            }
            self.alignment.push(pos..end);
            if self.go(slot + 1, end) {
                return true;
            }
            self.alignment.pop();
        }
        false
    }
}

/// Matches `frame` against the whole sequence with its hole on `candidate`.
/// The caller strips space tokens first.
pub fn frame_matches(seq: &[PosTag], candidate: usize, frame: &FramePattern) -> Option<FrameMatch> {
    if candidate >= seq.len() {
        return None;
    }
    let slots = frame.slots();
    let mut min_rest = vec![0; slots.len() + 1];
    for i in (0..slots.len()).rev() {
        min_rest[i] = min_rest[i + 1] + slots[i].min_len();
    }
    let mut m = Matcher {
        seq,
        candidate,
        slots,
        hole: frame.hole,
        min_rest,
        alignment: Vec::with_capacity(slots.len()),
    };
    m.go(0, 0).then(|| FrameMatch {
        frame_id: frame.id.clone(),
        alignment: m.alignment,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ContentClass {
    Noun,
    Verb,
    Adjective,
    Adverb,
}

impl fmt::Display for ContentClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ContentClass::Noun => "noun",
            ContentClass::Verb => "verb",
            ContentClass::Adjective => "adjective",
            ContentClass::Adverb => "adverb",
        })
    }
}

/// Built-in frames as `(id, spec)`.
pub const BUILTIN_FRAMES: &[(&str, &str)] = &[
    ("NN.1", "_ VV (AV)"),
    ("NN.2", "NN VV _ (AV)"),
    ("NN.3", "NN VV PS _ (AV)"),
    ("NN.4", "_ CL AJ"),
    ("VV.1", "NN (AX) _ (AV)"),
    ("VV.2", "(AX) _ NN (AV)"),
    ("VV.3", "(AX) _ NN NN (AV)"),
    ("VV.4", "NN (AX) NN _ (NN) (AV)"),
    ("VV.5", "NN _ VV (NN) (AV)"),
    ("VV.6", "NN VV NN CC (AX) (NN) _ *?"),
    ("AJ.1", "NN (CL) _ VV"),
    ("AJ.2", "_ NN VV"),
    ("AJ.3", "NN _ NU CL VV"),
    ("AJ.4", "NN NU _ CL VV"),
    ("AV.1", "NN VV (NN) _"),
    ("AV.2", "_ NN VV NN"),
    ("AV.3", "_ NN VV NN"),
    ("AV.4", "NN VV NN _"),
];

const NOUN_FRAMES: [&str; 4] = ["NN.1", "NN.2", "NN.3", "NN.4"];
const VERB_FRAMES: [&str; 5] = ["VV.1", "VV.2", "VV.3", "VV.4", "VV.5"];
const VERB_RELATIVE_FRAME: &str = "VV.6";
const ADJECTIVE_FRAMES: [&str; 4] = ["AJ.1", "AJ.2", "AJ.3", "AJ.4"];
const ADVERB_FRAMES: [&str; 4] = ["AV.1", "AV.2", "AV.3", "AV.4"];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FrameFileError {
    #[error("line {line}: {source}")]
    Spec { line: usize, source: SpecError },
    #[error("line {line}: expected `id: spec`")]
    Syntax { line: usize },
    #[error("line {line}: frame `{id}` defined twice")]
    Duplicate { line: usize, id: String },
}

/// Frames keyed by id plus the class rules over them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrameSet {
    frames: BTreeMap<String, FramePattern>,
}

impl Default for FrameSet {
    fn default() -> Self {
        Self::builtin()
    }
}

impl FrameSet {
    pub fn builtin() -> Self {
        let frames = BUILTIN_FRAMES
            .iter()
            .map(|(id, spec)| {
                (
                    (*id).to_owned(),
                    compile_frame(id, spec).expect("built-in frame compiles"),
                )
            })
            .collect();
        FrameSet { frames }
    }

    pub fn get(&self, id: &str) -> Option<&FramePattern> {
        self.frames.get(id)
    }

    pub fn frames(&self) -> impl Iterator<Item = &FramePattern> {
        self.frames.values()
    }

    pub fn insert(&mut self, frame: FramePattern) -> Option<FramePattern> {
        self.frames.insert(frame.id.clone(), frame)
    }

    /// Built-in frames with the definitions in `text` added or replacing
    /// those with the same id.
    pub fn with_overrides(text: &str) -> Result<Self, FrameFileError> {
        let mut set = Self::builtin();
        for frame in load_frames(text)? {
            set.insert(frame);
        }
        Ok(set)
    }

    /// One `id: spec` line per frame, in id order.
    pub fn dump(&self) -> String {
        self.frames
            .values()
            .map(|f| format!("{}: {}\n", f.id, f.spec()))
            .collect()
    }

    pub fn classify_instance(&self, seq: &[PosTag], candidate: usize) -> BTreeSet<String> {
        self.frames
            .values()
            .filter(|f| frame_matches(seq, candidate, f).is_some())
            .map(|f| f.id.clone())
            .collect()
    }

    /// Content classes licensed by the union of frames matched over all
    /// attestations of one word.
    pub fn classify_lexeme<S: AsRef<[PosTag]>>(&self, attestations: &[(S, usize)]) -> BTreeSet<ContentClass> {
        let matched: BTreeSet<String> = attestations
            .iter()
            .flat_map(|(seq, cand)| self.classify_instance(seq.as_ref(), *cand))
            .collect();
        let has = |id: &str| matched.contains(id);
        let mut classes = BTreeSet::new();
        if NOUN_FRAMES.iter().all(|id| has(id)) {
            classes.insert(ContentClass::Noun);
        }
        if VERB_FRAMES.iter().any(|id| has(id)) && has(VERB_RELATIVE_FRAME) {
            classes.insert(ContentClass::Verb);
        }
        if ADJECTIVE_FRAMES.iter().any(|id| has(id)) {
            classes.insert(ContentClass::Adjective);
        }
        if ADVERB_FRAMES.iter().any(|id| has(id)) {
            classes.insert(ContentClass::Adverb);
        }
        classes
    }
}

/// Parses a frame file: `id: spec` per line, `#` starts a comment.
pub fn load_frames(text: &str) -> Result<Vec<FramePattern>, FrameFileError> {
    let mut out: Vec<FramePattern> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (id, spec) = line.split_once(':').ok_or(FrameFileError::Syntax { line: line_no })?;
        let id = id.trim();
        let frame = compile_frame(id, spec).map_err(|source| FrameFileError::Spec { line: line_no, source })?;
        if out.iter().any(|f| f.id == id) {
            return Err(FrameFileError::Duplicate {
                line: line_no,
                id: id.to_owned(),
            });
        }
        out.push(frame);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use PosTag::*;

    fn ids(v: &[&str]) -> BTreeSet<String> {
        v.iter().map(|s| (*s).to_owned()).collect()
    }

    #[test]
    fn compile_examples() {
        let f = compile_frame("NN.1", "_ VV AV").unwrap();
        assert_eq!(
            f.slots(),
            &[FrameSlot::Hole, FrameSlot::Exact(VV), FrameSlot::Exact(AV)]
        );
        assert_eq!(compile_frame("x", "_ _ VV"), Err(SpecError::MultipleHoles(2)));
        let f = compile_frame("AJ.1", "NN (CL) _ VV").unwrap();
        assert_eq!(
            f.slots(),
            &[
                FrameSlot::Exact(NN),
                FrameSlot::OptionalExact(CL),
                FrameSlot::Hole,
                FrameSlot::Exact(VV)
            ]
        );
        assert_eq!(f.spec(), "NN (CL) _ VV");
        assert_eq!(compile_frame("x", "VV"), Err(SpecError::NoHole));
        assert_eq!(compile_frame("x", "_ QQ"), Err(SpecError::UnknownTag("QQ".into())));
        assert_eq!(compile_frame("x", "_ (NN"), Err(SpecError::BadItem("(NN".into())));
        assert_eq!(compile_frame("", "_"), Err(SpecError::BadId));
    }

    #[test]
    fn basic_matching() {
        let set = FrameSet::builtin();
        let nn1 = set.get("NN.1").unwrap();
        let m = frame_matches(&[NN, VV, AV], 0, nn1).unwrap();
        assert_eq!(m.alignment, vec![0..1, 1..2, 2..3]);
        assert!(frame_matches(&[CC, NN, AV], 0, nn1).is_none());
        assert!(frame_matches(&[AJ, NN, VV], 0, set.get("AJ.2").unwrap()).is_some());
        assert!(frame_matches(&[NN], 0, nn1).is_none());
        assert!(frame_matches(&[NN, VV], 5, nn1).is_none());
    }

    #[test]
    fn optional_and_phrase_witness() {
        let f = compile_frame("t", "*? _ (AV) *?").unwrap();
        let m = frame_matches(&[NN, VV, AV, AV], 1, &f).unwrap();
        assert_eq!(m.alignment, vec![0..1, 1..2, 2..3, 3..4]);
        let f = compile_frame("t", "* _").unwrap();
        assert!(frame_matches(&[VV], 0, &f).is_none());
        assert_eq!(frame_matches(&[NN, NN, VV], 2, &f).unwrap().alignment, vec![0..2, 2..3]);
    }

    #[test]
    fn builtins_and_dump_round_trip() {
        let set = FrameSet::builtin();
        assert_eq!(set.frames().count(), 18);
        assert_eq!(FrameSet::with_overrides(&set.dump()).unwrap(), set);
    }

    #[test]
    fn overrides_and_file_errors() {
        let set = FrameSet::with_overrides("# custom\nNN.1: *? _ VV *?\nX.1: _ NN\n").unwrap();
        assert_eq!(set.get("NN.1").unwrap().spec(), "*? _ VV *?");
        assert_eq!(set.frames().count(), 19);
        assert_eq!(load_frames("nope\n").unwrap_err(), FrameFileError::Syntax { line: 1 });
        assert!(matches!(
            load_frames("\nA: _\nA: _ NN\n"),
            Err(FrameFileError::Duplicate { line: 3, .. })
        ));
        assert!(matches!(
            load_frames("A: VV\n"),
            Err(FrameFileError::Spec {
                line: 1,
                source: SpecError::NoHole
            })
        ));
    }

    #[test]
    fn single_token_matches_nothing() {
        assert!(FrameSet::builtin().classify_instance(&[NN], 0).is_empty());
    }

    #[test]
    fn noun_attestations_classify_as_noun() {
        let set = FrameSet::builtin();
        let att: Vec<(Vec<PosTag>, usize)> = vec![
            (vec![NN, VV, AV], 0),
            (vec![NN, VV, NN, AV], 2),
            (vec![NN, VV, PS, NN, AV], 3),
            (vec![NN, CL, AJ], 0),
        ];
        assert!(set.classify_instance(&att[0].0, 0).contains("NN.1"));
        assert_eq!(set.classify_lexeme(&att), BTreeSet::from([ContentClass::Noun]));
        assert!(set.classify_lexeme(&att[..1]).is_empty());
    }

    #[test]
    fn verb_attestations_classify_as_verb() {
        let set = FrameSet::builtin();
        let att = [(vec![NN, AX, VV, AV], 2), (vec![NN, VV, NN, CC, AX, VV], 5)];
        assert_eq!(set.classify_instance(&att[0].0, 2), ids(&["VV.1"]));
        assert_eq!(set.classify_instance(&att[1].0, 5), ids(&["VV.6"]));
        assert_eq!(set.classify_lexeme(&att), BTreeSet::from([ContentClass::Verb]));
    }
}

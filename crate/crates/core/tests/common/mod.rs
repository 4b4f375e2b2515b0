//! Oracles and generators shared by the acceptance and property tests.
#![allow(dead_code)]

use std::path::PathBuf;

use lst20::format::{read_columnar, read_inline, Document, ParseMode, Sentence, Token};
use lst20::frames::{FramePattern, FrameSlot};
use lst20::schema::{ClauseLabel, NeCategory, NeLabel, PosTag};
use proptest::prelude::*;
use regex::Regex;

pub fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

pub fn fixture(name: &str) -> String {
    std::fs::read_to_string(fixture_dir().join(name)).expect("fixture exists")
}

pub fn inline_doc(name: &str) -> Document {
    Document::new(name, read_inline(&fixture(name), ParseMode::Strict).unwrap().value)
}

pub fn window() -> Document {
    read_columnar(&fixture("columnar_window.txt"), "columnar_window", ParseMode::Strict)
        .unwrap()
        .value
}

/// Accepts exactly the well-formed BIEO sequences over `cats`, written one
/// character per label.
pub struct BieoOracle {
    regex: Regex,
    cats: Vec<NeCategory>,
}

impl BieoOracle {
    pub fn new(cats: &[NeCategory]) -> Self {
        assert!(cats.len() <= 8);
        // Category k uses letters b/i/e shifted by k.
        let alts: Vec<String> = (0..cats.len())
            .map(|k| {
                let (b, i, e) = Self::letters(k);
                format!("{b}(?:{i}*{e})?")
            })
            .collect();
        let regex = Regex::new(&format!("^(?:o|{})*$", alts.join("|"))).unwrap();
        BieoOracle {
            regex,
            cats: cats.to_vec(),
        }
    }

    fn letters(k: usize) -> (char, char, char) {
        let base = b'A' + 3 * k as u8;
        (base as char, (base + 1) as char, (base + 2) as char)
    }

    fn encode(&self, label: NeLabel) -> char {
        use lst20::schema::BoundaryPrefix::*;
        let Some(cat) = label.category() else {
            return 'o';
        };
        let k = self.cats.iter().position(|c| *c == cat).expect("category in alphabet");
        let (b, i, e) = Self::letters(k);
        match label.prefix() {
            B => b,
            I => i,
            E => e,
            O => 'o',
        }
    }

    pub fn accepts(&self, labels: &[NeLabel]) -> bool {
        let s: String = labels.iter().map(|l| self.encode(*l)).collect();
        self.regex.is_match(&s)
    }

    /// The 1 + 3k labels of the alphabet.
    pub fn alphabet(&self) -> Vec<NeLabel> {
        let mut out = vec![NeLabel::O];
        for &c in &self.cats {
            out.extend([NeLabel::begin(c), NeLabel::inside(c), NeLabel::end(c)]);
        }
        out
    }
}

pub fn ne_sentence(labels: &[NeLabel]) -> Sentence {
    Sentence::new(
        labels
            .iter()
            .map(|&l| Token::word("ก", PosTag::NN, l, ClauseLabel::Outside))
            .collect(),
    )
}

/// All slot-length vectors that tile `0..n` with the hole on `candidate`,
/// by brute force. Returns the lexicographically greatest one, which is the
/// matcher's preferred witness (present before absent, longer before shorter).
pub fn frame_oracle(seq: &[PosTag], candidate: usize, frame: &FramePattern) -> Option<Vec<std::ops::Range<usize>>> {
    fn enumerate(slots: &[FrameSlot], remaining: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let Some((first, rest)) = slots.split_first() else {
            if remaining == 0 {
                out.push(prefix.clone());
            }
            return;
        };
        let lengths: Vec<usize> = match first {
            FrameSlot::Exact(_) | FrameSlot::Hole => vec![1],
            FrameSlot::OptionalExact(_) => vec![0, 1],
            FrameSlot::Phrase => (1..=remaining).collect(),
            FrameSlot::OptionalPhrase => (0..=remaining).collect(),
        };
        for len in lengths.into_iter().filter(|&l| l <= remaining) {
            prefix.push(len);
            enumerate(rest, remaining - len, prefix, out);
            prefix.pop();
        }
    }
    let mut all = Vec::new();
    enumerate(frame.slots(), seq.len(), &mut Vec::new(), &mut all);
    all.into_iter()
        .filter(|lens| alignment_ok(seq, candidate, frame.slots(), lens))
        .max()
        .map(|lens| to_ranges(&lens))
}

fn alignment_ok(seq: &[PosTag], candidate: usize, slots: &[FrameSlot], lens: &[usize]) -> bool {
    let mut pos = 0;
    for (slot, &len) in slots.iter().zip(lens) {
        let ok = match slot {
            FrameSlot::Hole => pos == candidate,
            FrameSlot::Exact(t) => seq[pos] == *t,
            FrameSlot::OptionalExact(t) => len == 0 || seq[pos] == *t,
            FrameSlot::Phrase | FrameSlot::OptionalPhrase => true,
        };
        if !ok {
            return false;
        }
        pos += len;
    }
    true
}

fn to_ranges(lens: &[usize]) -> Vec<std::ops::Range<usize>> {
    let mut pos = 0;
    lens.iter()
        .map(|&l| {
            let r = pos..pos + l;
            pos += l;
            r
        })
        .collect()
}

/// Maximal entity spans (B I* E or a lone B) in a well-formed sequence.
pub fn extract_entity_spans(labels: &[NeLabel]) -> Vec<(usize, usize, NeCategory)> {
    use lst20::schema::BoundaryPrefix::*;
    let mut spans = Vec::new();
    let mut i = 0;
    while i < labels.len() {
        let l = labels[i];
        if l.prefix() == B {
            let cat = l.category().unwrap();
            let mut j = i + 1;
            while j < labels.len() && labels[j].prefix() == I && labels[j].category() == Some(cat) {
                j += 1;
            }
            if j < labels.len() && labels[j].prefix() == E && labels[j].category() == Some(cat) {
                spans.push((i, j + 1, cat));
                i = j + 1;
            } else {
                spans.push((i, i + 1, cat));
                i += 1;
            }
        } else {
            i += 1;
        }
    }
    spans
}

const WORDS: &[&str] = &[
    "สุนัข",
    "วิ่ง",
    "บริษัท",
    "ที่",
    "ว่า",
    "นะ",
    "เช่น",
    "กล่าว",
    "ไก่",
    "โรค",
    "http://a.b/c",
    "1",
    "(",
    ")",
    "!",
    "a/b",
    "ก.ย.",
    "x_y",
    "ฯลฯ",
    "เอบีซี",
];

fn decode_spans<L>(choices: &[u8], mut begin: impl FnMut(u8) -> [L; 3], outside: L) -> Vec<L>
where
    L: Copy,
{
    // Each choice either emits an outside label or opens a span whose length
    // comes from the same byte, so every decoded sequence is well formed.
    let n = choices.len();
    let mut out = Vec::with_capacity(n);
    let mut i = 0;
    while i < n {
        let c = choices[i];
        if c.is_multiple_of(3) {
            out.push(outside);
            i += 1;
            continue;
        }
        let [b, inside, e] = begin(c);
        let len = (1 + (c as usize / 3) % 4).min(n - i);
        out.push(b);
        if len > 1 {
            out.extend(std::iter::repeat_n(inside, len - 2));
            out.push(e);
        }
        i += len;
    }
    out
}

pub fn valid_ne_labels(choices: &[u8]) -> Vec<NeLabel> {
    decode_spans(
        choices,
        |c| {
            let cat = NeCategory::ALL[c as usize % NeCategory::ALL.len()];
            [NeLabel::begin(cat), NeLabel::inside(cat), NeLabel::end(cat)]
        },
        NeLabel::O,
    )
}

pub fn valid_clause_labels(choices: &[u8]) -> Vec<ClauseLabel> {
    decode_spans(
        choices,
        |_| [ClauseLabel::Begin, ClauseLabel::Inside, ClauseLabel::End],
        ClauseLabel::Outside,
    )
}

/// Tokens with well-formed NE and clause layers; spaces are tagged PU.
pub fn sentence_strategy(max_tokens: usize) -> impl Strategy<Value = Sentence> {
    prop::collection::vec(
        (0..WORDS.len() + 3, 0..PosTag::ALL.len(), any::<u8>(), any::<u8>()),
        1..=max_tokens,
    )
    .prop_map(|raw| {
        let ne_choices: Vec<u8> = raw.iter().map(|r| r.2).collect();
        let cls_choices: Vec<u8> = raw.iter().map(|r| r.3).collect();
        let ne = valid_ne_labels(&ne_choices);
        let cls = valid_clause_labels(&cls_choices);
        let tokens = raw
            .iter()
            .enumerate()
            .map(|(i, &(w, p, _, _))| {
                if w >= WORDS.len() {
                    Token::space(PosTag::PU, ne[i], cls[i])
                } else {
                    Token::word(WORDS[w], PosTag::ALL[p], ne[i], cls[i])
                }
            })
            .collect();
        Sentence::new(tokens)
    })
}

pub fn document_strategy(max_sentences: usize, max_tokens: usize) -> impl Strategy<Value = Document> {
    prop::collection::vec(sentence_strategy(max_tokens), 0..=max_sentences)
        .prop_map(|sentences| Document::new("random", sentences))
}

/// POS-only tokens for segmentation properties: mostly words, some spaces,
/// surfaces drawn from marker-heavy vocabulary.
pub fn pos_stream_strategy(max_tokens: usize) -> impl Strategy<Value = Vec<Token>> {
    const POOL: &[(&str, PosTag)] = &[
        ("ไป", PosTag::VV),
        ("กิน", PosTag::VV),
        ("เขา", PosTag::PR),
        ("ข้าว", PosTag::NN),
        ("ที่", PosTag::CC),
        ("ว่า", PosTag::CC),
        ("ซึ่ง", PosTag::CC),
        ("นะ", PosTag::PA),
        ("เช่น", PosTag::PS),
        ("อย่างไรก็ตาม", PosTag::CC),
        ("จะ", PosTag::AX),
        ("ทำไม", PosTag::AV),
        ("กล่าว", PosTag::VV),
        ("\"", PosTag::PU),
    ];
    prop::collection::vec(0..POOL.len() + 3, 1..=max_tokens).prop_map(|idx| {
        idx.into_iter()
            .map(|i| match POOL.get(i) {
                Some(&(s, p)) => Token::word(s, p, NeLabel::O, ClauseLabel::Outside),
                None => Token::space(PosTag::PU, NeLabel::O, ClauseLabel::Outside),
            })
            .collect()
    })
}

const FRAME_TAGS: [PosTag; 5] = [PosTag::NN, PosTag::VV, PosTag::AV, PosTag::AX, PosTag::CC];

pub fn pos_seq_strategy(max_len: usize) -> impl Strategy<Value = Vec<PosTag>> {
    prop::collection::vec(prop::sample::select(FRAME_TAGS.to_vec()), 1..=max_len)
}

/// Random frames with exactly one hole over a small tag alphabet.
pub fn frame_strategy() -> impl Strategy<Value = FramePattern> {
    let slot = prop_oneof![
        prop::sample::select(FRAME_TAGS.to_vec()).prop_map(FrameSlot::Exact),
        prop::sample::select(FRAME_TAGS.to_vec()).prop_map(FrameSlot::OptionalExact),
        Just(FrameSlot::Phrase),
        Just(FrameSlot::OptionalPhrase),
    ];
    (prop::collection::vec(slot, 0..=5), any::<prop::sample::Index>()).prop_map(|(mut slots, at)| {
        let pos = at.index(slots.len() + 1);
        slots.insert(pos, FrameSlot::Hole);
        let spec = slots.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
        lst20::frames::compile_frame("R", &spec).expect("generated frame compiles")
    })
}

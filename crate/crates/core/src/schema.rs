//! Closed tagsets and the BIEO boundary-label algebra.
//!
//! Every value here is a small `Copy` type with a canonical textual form.
//! Parsing is exact and case-sensitive: `"nn"` is not a POS tag, and
//! `" NN"` is not either. Callers that want normalization do it first.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchemaError {
    #[error("unknown POS tag `{0}`")]
    UnknownTag(String),
    #[error("malformed label `{0}`")]
    MalformedLabel(String),
    #[error("unknown named-entity category `{0}`")]
    UnknownCategory(String),
}

macro_rules! closed_enum {
    (
        $(#[$meta:meta])*
        $name:ident, $err:ident { $($variant:ident),+ $(,)? }
    ) => {
        $(#[$meta])*
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum $name {
            $($variant),+
        }

        impl $name {
            pub const ALL: &'static [$name] = &[$($name::$variant),+];

            pub fn as_str(self) -> &'static str {
                match self {
                    $($name::$variant => stringify!($variant)),+
                }
            }
        }

        impl FromStr for $name {
            type Err = SchemaError;

            fn from_str(s: &str) -> Result<Self, Self::Err> {
                match s {
                    $(stringify!($variant) => Ok($name::$variant),)+
                    _ => Err(SchemaError::$err(s.to_owned())),
                }
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.as_str())
            }
        }
    };
}

closed_enum! {
    /// The 16 part-of-speech tags.
    PosTag, UnknownTag {
        AJ, AV, AX, CC, CL, FX, IJ, NG, NN, NU, PA, PR, PS, PU, VV, XX,
    }
}

closed_enum! {
    /// The 10 named-entity categories.
    NeCategory, UnknownCategory {
        TTL, DES, PER, ORG, LOC, DTM, BRN, MEA, NUM, TRM,
    }
}

impl PosTag {
    /// Noun, verb, adjective or adverb.
    pub fn is_content(self) -> bool {
        matches!(self, PosTag::NN | PosTag::VV | PosTag::AJ | PosTag::AV)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BoundaryPrefix {
    B,
    I,
    E,
    O,
}

impl BoundaryPrefix {
    pub fn as_str(self) -> &'static str {
        match self {
            BoundaryPrefix::B => "B",
            BoundaryPrefix::I => "I",
            BoundaryPrefix::E => "E",
            BoundaryPrefix::O => "O",
        }
    }
}

impl FromStr for BoundaryPrefix {
    type Err = SchemaError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "B" => Ok(BoundaryPrefix::B),
            "I" => Ok(BoundaryPrefix::I),
            "E" => Ok(BoundaryPrefix::E),
            "O" => Ok(BoundaryPrefix::O),
            _ => Err(SchemaError::MalformedLabel(s.to_owned())),
        }
    }
}

/// A named-entity boundary label: `O`, or a B/I/E prefix paired with a
/// category. The constructors make `O`-with-category unrepresentable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NeLabel {
    prefix: BoundaryPrefix,
    category: Option<NeCategory>,
}

impl NeLabel {
    pub const O: NeLabel = NeLabel {
        prefix: BoundaryPrefix::O,
        category: None,
    };

    pub fn begin(category: NeCategory) -> Self {
        NeLabel {
            prefix: BoundaryPrefix::B,
            category: Some(category),
        }
    }

    pub fn inside(category: NeCategory) -> Self {
        NeLabel {
            prefix: BoundaryPrefix::I,
            category: Some(category),
        }
    }

    pub fn end(category: NeCategory) -> Self {
        NeLabel {
            prefix: BoundaryPrefix::E,
            category: Some(category),
        }
    }

    /// Returns `None` when the prefix/category combination is illegal.
    pub fn new(prefix: BoundaryPrefix, category: Option<NeCategory>) -> Option<Self> {
        match (prefix, category) {
            (BoundaryPrefix::O, None) => Some(NeLabel::O),
            (BoundaryPrefix::O, Some(_)) | (_, None) => None,
            (prefix, category) => Some(NeLabel { prefix, category }),
        }
    }

    pub fn prefix(self) -> BoundaryPrefix {
        self.prefix
    }

    pub fn category(self) -> Option<NeCategory> {
        self.category
    }

    pub fn is_outside(self) -> bool {
        self.prefix == BoundaryPrefix::O
    }

    /// Every legal label: `O` followed by B/I/E for each category.
    pub fn all() -> Vec<NeLabel> {
        let mut labels = vec![NeLabel::O];
        for &c in NeCategory::ALL {
            labels.extend([NeLabel::begin(c), NeLabel::inside(c), NeLabel::end(c)]);
        }
        labels
    }

    fn boundary(self) -> Boundary<NeCategory> {
        Boundary::from_parts(self.prefix, self.category)
    }
}

impl FromStr for NeLabel {
    type Err = SchemaError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "O" {
            return Ok(NeLabel::O);
        }
        let (prefix, category) = s
            .split_once('_')
            .ok_or_else(|| SchemaError::MalformedLabel(s.to_owned()))?;
        let prefix = match prefix {
            "B" => BoundaryPrefix::B,
            "I" => BoundaryPrefix::I,
            "E" => BoundaryPrefix::E,
            _ => return Err(SchemaError::MalformedLabel(s.to_owned())),
        };
        let category = category
            .parse::<NeCategory>()
            .map_err(|_| SchemaError::UnknownCategory(category.to_owned()))?;
        Ok(NeLabel {
            prefix,
            category: Some(category),
        })
    }
}

impl fmt::Display for NeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.category {
            None => f.write_str("O"),
            Some(c) => write!(f, "{}_{}", self.prefix.as_str(), c),
        }
    }
}

/// Clause boundary label. Clauses have a single implicit category.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClauseLabel {
    Begin,
    Inside,
    End,
    Outside,
}

impl ClauseLabel {
    pub const ALL: &'static [ClauseLabel] = &[
        ClauseLabel::Begin,
        ClauseLabel::Inside,
        ClauseLabel::End,
        ClauseLabel::Outside,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ClauseLabel::Begin => "B_CLS",
            ClauseLabel::Inside => "I_CLS",
            ClauseLabel::End => "E_CLS",
            ClauseLabel::Outside => "O",
        }
    }

    pub fn prefix(self) -> BoundaryPrefix {
        match self {
            ClauseLabel::Begin => BoundaryPrefix::B,
            ClauseLabel::Inside => BoundaryPrefix::I,
            ClauseLabel::End => BoundaryPrefix::E,
            ClauseLabel::Outside => BoundaryPrefix::O,
        }
    }

    fn boundary(self) -> Boundary<()> {
        let category = (self != ClauseLabel::Outside).then_some(());
        Boundary::from_parts(self.prefix(), category)
    }
}

impl FromStr for ClauseLabel {
    type Err = SchemaError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "B_CLS" => Ok(ClauseLabel::Begin),
            "I_CLS" => Ok(ClauseLabel::Inside),
            "E_CLS" => Ok(ClauseLabel::End),
            "O" => Ok(ClauseLabel::Outside),
            _ => Err(SchemaError::MalformedLabel(s.to_owned())),
        }
    }
}

impl fmt::Display for ClauseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

pub fn parse_pos_tag(text: &str) -> Result<PosTag, SchemaError> {
    text.parse()
}

pub fn parse_ne_label(text: &str) -> Result<NeLabel, SchemaError> {
    text.parse()
}

pub fn parse_clause_label(text: &str) -> Result<ClauseLabel, SchemaError> {
    text.parse()
}

/// Why a transition between two adjacent labels is illegal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Violation {
    /// `I_x` with no open span.
    OrphanInside,
    /// `E_x` with no open span.
    OrphanEnd,
    /// `I_y`/`E_y` continuing a span of a different category.
    CategoryMismatch,
    /// A span opened with `I_x` was left without its `E_x`.
    Unterminated,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Boundary<C> {
    Outside,
    Begin(C),
    Inside(C),
    End(C),
}

impl<C: Copy> Boundary<C> {
    fn from_parts(prefix: BoundaryPrefix, category: Option<C>) -> Self {
        match (prefix, category) {
            (BoundaryPrefix::B, Some(c)) => Boundary::Begin(c),
            (BoundaryPrefix::I, Some(c)) => Boundary::Inside(c),
            (BoundaryPrefix::E, Some(c)) => Boundary::End(c),
            _ => Boundary::Outside,
        }
    }
}

/// The BIEO automaton. `None` stands for sentence start (as `prev`) and
/// sentence end (as `next`). A lone `B_x` closes itself when the next label
/// does not continue it.
fn transition<C: PartialEq + Copy>(prev: Option<Boundary<C>>, next: Option<Boundary<C>>) -> Option<Violation> {
    use Boundary::*;
    match prev {
        None | Some(Outside) | Some(End(_)) => match next {
            Some(Inside(_)) => Some(Violation::OrphanInside),
            Some(End(_)) => Some(Violation::OrphanEnd),
            _ => None,
        },
        Some(Begin(x)) => match next {
            Some(Inside(y)) | Some(End(y)) if y != x => Some(Violation::CategoryMismatch),
            _ => None,
        },
        Some(Inside(x)) => match next {
            Some(Inside(y)) | Some(End(y)) if y == x => None,
            Some(Inside(_)) | Some(End(_)) => Some(Violation::CategoryMismatch),
            None | Some(Outside) | Some(Begin(_)) => Some(Violation::Unterminated),
        },
    }
}

pub fn ne_transition(prev: Option<NeLabel>, next: Option<NeLabel>) -> Option<Violation> {
    transition(prev.map(NeLabel::boundary), next.map(NeLabel::boundary))
}

/// `prev = None` is sentence start, `next = None` is sentence end.
pub fn ne_transition_valid(prev: Option<NeLabel>, next: Option<NeLabel>) -> bool {
    ne_transition(prev, next).is_none()
}

pub fn clause_transition(prev: Option<ClauseLabel>, next: Option<ClauseLabel>) -> Option<Violation> {
    transition(prev.map(ClauseLabel::boundary), next.map(ClauseLabel::boundary))
}

pub fn clause_transition_valid(prev: Option<ClauseLabel>, next: Option<ClauseLabel>) -> bool {
    clause_transition(prev, next).is_none()
}

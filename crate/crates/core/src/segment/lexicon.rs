use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::format::Token;
use crate::schema::PosTag;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ConfigError {
    /// 1-based; 0 when the error is not tied to a line.
    pub line: usize,
    pub message: String,
}

impl ConfigError {
    pub fn new(line: usize, message: impl Into<String>) -> Self {
        ConfigError {
            line,
            message: message.into(),
        }
    }
}

/// Surface lists that drive clause and sentence segmentation. Categories
/// may overlap.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkerLexicon {
    pub subordinate_connectors: BTreeSet<String>,
    pub cohesive_markers: BTreeSet<String>,
    pub list_markers: BTreeSet<String>,
    pub particles: BTreeSet<String>,
    pub question_adverbs: BTreeSet<String>,
    pub reporting_verbs: BTreeSet<String>,
    pub auxiliaries: BTreeSet<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MarkerCategory {
    SubordinateConnectors,
    CohesiveMarkers,
    ListMarkers,
    Particles,
    QuestionAdverbs,
    ReportingVerbs,
    Auxiliaries,
}

impl MarkerCategory {
    pub const ALL: [MarkerCategory; 7] = [
        MarkerCategory::SubordinateConnectors,
        MarkerCategory::CohesiveMarkers,
        MarkerCategory::ListMarkers,
        MarkerCategory::Particles,
        MarkerCategory::QuestionAdverbs,
        MarkerCategory::ReportingVerbs,
        MarkerCategory::Auxiliaries,
    ];

    /// Section name in lexicon files.
    pub fn as_str(self) -> &'static str {
        match self {
            MarkerCategory::SubordinateConnectors => "subordinate_connectors",
            MarkerCategory::CohesiveMarkers => "cohesive_markers",
            MarkerCategory::ListMarkers => "list_markers",
            MarkerCategory::Particles => "particles",
            MarkerCategory::QuestionAdverbs => "question_adverbs",
            MarkerCategory::ReportingVerbs => "reporting_verbs",
            MarkerCategory::Auxiliaries => "auxiliaries",
        }
    }

    fn parse(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.as_str() == name)
    }
}

impl fmt::Display for MarkerCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

const SUBORDINATE_CONNECTORS: &[&str] = &["ซึ่ง", "ที่", "ถ้า", "ว่า", "ผู้"];
const COHESIVE_MARKERS: &[&str] = &["อย่างไรก็ตาม", "นอกจากนี้", "แต่ทว่า", "ในที่สุด"];
const LIST_MARKERS: &[&str] = &["เช่น", "ได้แก่", "ตามลำดับ"];
const PARTICLES: &[&str] = &[
    "ครับ",
    "ค่ะ",
    "นะ",
    "เถิด",
    "สินะ",
    "ซิ",
    "มั้ง",
    "ใช่ไหม",
    "ยัง",
    "หรือเปล่า",
    "วะ",
    "เนี่ย",
];
const QUESTION_ADVERBS: &[&str] = &["อย่างไร", "ไหม", "ทำไม"];
const REPORTING_VERBS: &[&str] = &["กล่าว", "บอก", "ยืนยัน"];
const AUXILIARIES: &[&str] = &[
    "กำลัง",
    "คง",
    "ควร",
    "ค่อย",
    "เคย",
    "จะ",
    "จง",
    "จวน",
    "ได้",
    "ต้อง",
    "น่า",
    "ถูก",
    "โดน",
    "เพิ่ง",
    "มัก",
    "ยัก",
    "ยัง",
    "ยอม",
    "แล้ว",
    "ไว้",
    "เสร็จ",
    "ให้",
    "ทำให้",
    "อยู่",
    "อยู่แล้ว",
];

fn set(items: &[&str]) -> BTreeSet<String> {
    items.iter().map(|s| (*s).to_owned()).collect()
}

impl Default for MarkerLexicon {
    fn default() -> Self {
        MarkerLexicon {
            subordinate_connectors: set(SUBORDINATE_CONNECTORS),
            cohesive_markers: set(COHESIVE_MARKERS),
            list_markers: set(LIST_MARKERS),
            particles: set(PARTICLES),
            question_adverbs: set(QUESTION_ADVERBS),
            reporting_verbs: set(REPORTING_VERBS),
            auxiliaries: set(AUXILIARIES),
        }
    }
}

impl MarkerLexicon {
    pub fn category(&self, cat: MarkerCategory) -> &BTreeSet<String> {
        match cat {
            MarkerCategory::SubordinateConnectors => &self.subordinate_connectors,
            MarkerCategory::CohesiveMarkers => &self.cohesive_markers,
            MarkerCategory::ListMarkers => &self.list_markers,
            MarkerCategory::Particles => &self.particles,
            MarkerCategory::QuestionAdverbs => &self.question_adverbs,
            MarkerCategory::ReportingVerbs => &self.reporting_verbs,
            MarkerCategory::Auxiliaries => &self.auxiliaries,
        }
    }

    pub fn category_mut(&mut self, cat: MarkerCategory) -> &mut BTreeSet<String> {
        match cat {
            MarkerCategory::SubordinateConnectors => &mut self.subordinate_connectors,
            MarkerCategory::CohesiveMarkers => &mut self.cohesive_markers,
            MarkerCategory::ListMarkers => &mut self.list_markers,
            MarkerCategory::Particles => &mut self.particles,
            MarkerCategory::QuestionAdverbs => &mut self.question_adverbs,
            MarkerCategory::ReportingVerbs => &mut self.reporting_verbs,
            MarkerCategory::Auxiliaries => &mut self.auxiliaries,
        }
    }

    /// A subordinate connector acting as one: listed and tagged CC.
    pub fn is_connector(&self, token: &Token) -> bool {
        !token.is_space && token.pos == PosTag::CC && self.subordinate_connectors.contains(&token.surface)
    }

    /// Member of any of the five clause-marker categories.
    pub fn is_clause_marker(&self, token: &Token) -> bool {
        if token.is_space {
            return false;
        }
        let s = &token.surface;
        self.is_connector(token)
            || self.cohesive_markers.contains(s)
            || self.list_markers.contains(s)
            || self.particles.contains(s)
            || self.question_adverbs.contains(s)
    }

    pub fn is_particle(&self, token: &Token) -> bool {
        !token.is_space && (token.pos == PosTag::PA || self.particles.contains(&token.surface))
    }

    pub fn is_auxiliary(&self, token: &Token) -> bool {
        !token.is_space && (token.pos == PosTag::AX || self.auxiliaries.contains(&token.surface))
    }

    /// Renders the lexicon in the file format read by [`load_marker_lexicon`].
    pub fn to_config(&self) -> String {
        let mut out = String::new();
        for cat in MarkerCategory::ALL {
            if !out.is_empty() {
                out.push('\n');
            }
            out.push_str(&format!("[{cat}]\n"));
            for entry in self.category(cat) {
                out.push_str(entry);
                out.push('\n');
            }
        }
        out
    }
}

/// Reads a lexicon file and adds its entries to the built-in defaults.
///
/// ```text
/// # comment
/// [subordinate_connectors]
/// ซึ่ง
/// [particles]
/// จ้ะ
/// ```
pub fn load_marker_lexicon(text: &str) -> Result<MarkerLexicon, ConfigError> {
    let mut lex = MarkerLexicon::default();
    let mut section = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(name) = line.strip_prefix('[') {
            let name = name
                .strip_suffix(']')
                .ok_or_else(|| ConfigError::new(line_no, "unclosed section header"))?
                .trim();
            section = Some(
                MarkerCategory::parse(name)
                    .ok_or_else(|| ConfigError::new(line_no, format!("unknown section `{name}`")))?,
            );
            continue;
        }
        let cat = section.ok_or_else(|| ConfigError::new(line_no, "entry before any section header"))?;
        if line.chars().any(char::is_whitespace) {
            return Err(ConfigError::new(
                line_no,
                format!("entry `{line}` contains white space"),
            ));
        }
        lex.category_mut(cat).insert(line.to_owned());
    }
    Ok(lex)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_config_is_default() {
        assert_eq!(load_marker_lexicon("").unwrap(), MarkerLexicon::default());
        assert_eq!(load_marker_lexicon("# nothing\n\n").unwrap(), MarkerLexicon::default());
    }

    #[test]
    fn defaults() {
        let lex = MarkerLexicon::default();
        assert_eq!(lex.subordinate_connectors.len(), 5);
        assert_eq!(lex.particles.len(), 12);
        assert!(lex.auxiliaries.contains("อยู่แล้ว"));
        assert!(lex.reporting_verbs.contains("ยืนยัน"));
    }

    #[test]
    fn entries_are_added_to_defaults() {
        let lex = load_marker_lexicon("[subordinate_connectors]\nเมื่อ  # when\nเมื่อ\n").unwrap();
        let mut expected = MarkerLexicon::default();
        expected.subordinate_connectors.insert("เมื่อ".into());
        assert_eq!(lex, expected);
    }

    #[test]
    fn malformed_config() {
        assert_eq!(load_marker_lexicon("ซึ่ง\n").unwrap_err().line, 1);
        assert_eq!(load_marker_lexicon("\n[verbs]\n").unwrap_err().line, 2);
        assert_eq!(load_marker_lexicon("[particles\n").unwrap_err().line, 1);
        assert_eq!(load_marker_lexicon("[particles]\nนะ จ้ะ\n").unwrap_err().line, 2);
    }

    #[test]
    fn config_round_trip() {
        let lex = MarkerLexicon::default();
        assert_eq!(load_marker_lexicon(&lex.to_config()).unwrap(), lex);
    }

    #[test]
    fn connector_needs_cc() {
        use crate::schema::{ClauseLabel, NeLabel};
        let lex = MarkerLexicon::default();
        let cc = Token::word("ที่", PosTag::CC, NeLabel::O, ClauseLabel::Outside);
        let ps = Token::word("ที่", PosTag::PS, NeLabel::O, ClauseLabel::Outside);
        assert!(lex.is_connector(&cc) && lex.is_clause_marker(&cc));
        assert!(!lex.is_connector(&ps) && !lex.is_clause_marker(&ps));
    }
}

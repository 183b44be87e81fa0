//! Sentence rebuilding: merge consecutive synchronized units until the
//! designated stream shows sentence-final punctuation.

use std::collections::BTreeSet;
use std::fmt;
use std::path::Path;

use serde::Deserialize;
use thiserror::Error;

use crate::pivot::AlignedTriple;

#[derive(Debug, Error, PartialEq)]
pub enum RebuildError {
    #[error("unknown stream {name:?} (expected one of {known})")]
    UnknownSide { name: String, known: String },
    #[error("unknown strategy {0:?} (expected none, strong-punct:<side> or pivot)")]
    UnknownStrategy(String),
    #[error("punctuation profile: {0}")]
    Profile(String),
}

/// Sentence-final marks and the closing marks skipped before testing them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PunctProfile {
    pub strong: BTreeSet<char>,
    pub closers: BTreeSet<char>,
}

impl Default for PunctProfile {
    /// Strong: `. ! ? …` and Arabic `؟ ۔`; semicolons excluded.
    /// Closers: `" ' ” ’ ) ] »`.
    fn default() -> Self {
        PunctProfile {
            strong: ['.', '!', '?', '…', '\u{061F}', '\u{06D4}'].into_iter().collect(),
            closers: ['"', '\'', '”', '’', ')', ']', '»'].into_iter().collect(),
        }
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum CodePoint {
    Number(u32),
    Text(String),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ProfileFile {
    strong: Option<Vec<CodePoint>>,
    closers: Option<Vec<CodePoint>>,
}

fn to_chars(points: Vec<CodePoint>) -> Result<BTreeSet<char>, RebuildError> {
    points
        .into_iter()
        .map(|p| {
            let bad = |what: String| RebuildError::Profile(format!("invalid code point {what}"));
            match p {
                CodePoint::Number(n) => char::from_u32(n).ok_or_else(|| bad(n.to_string())),
                CodePoint::Text(s) => {
                    if let Some(hex) = s.strip_prefix("U+").or_else(|| s.strip_prefix("u+")) {
                        u32::from_str_radix(hex, 16)
                            .ok()
                            .and_then(char::from_u32)
                            .ok_or_else(|| bad(format!("{s:?}")))
                    } else {
                        let mut chars = s.chars();
                        match (chars.next(), chars.next()) {
                            (Some(c), None) => Ok(c),
                            _ => Err(bad(format!("{s:?}"))),
                        }
                    }
                }
            }
        })
        .collect()
}

impl PunctProfile {
    /// Reads a TOML profile:
    ///
    /// ```toml
    /// strong = [".", "!", "?", "U+2026", 0x061F]
    /// closers = ['"', ")"]
    /// ```
    ///
    /// Entries are integers, `U+XXXX` strings or single characters. A
    /// missing list keeps its default.
    pub fn from_toml(text: &str) -> Result<Self, RebuildError> {
        let file: ProfileFile = toml::from_str(text).map_err(|e| RebuildError::Profile(e.to_string()))?;
        let mut profile = PunctProfile::default();
        if let Some(strong) = file.strong {
            profile.strong = to_chars(strong)?;
        }
        if let Some(closers) = file.closers {
            profile.closers = to_chars(closers)?;
        }
        Ok(profile)
    }

    pub fn load(path: &Path) -> Result<Self, RebuildError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| RebuildError::Profile(format!("{}: {e}", path.display())))?;
        PunctProfile::from_toml(&text)
    }

    pub fn to_toml(&self) -> String {
        let list = |set: &BTreeSet<char>| {
            set.iter()
                .map(|c| format!("\"U+{:04X}\"", *c as u32))
                .collect::<Vec<_>>()
                .join(", ")
        };
        format!("strong = [{}]\nclosers = [{}]\n", list(&self.strong), list(&self.closers))
    }
}

/// True when `text`, once trailing whitespace and closers are stripped, ends
/// in a strong mark.
pub fn is_strong_terminal(text: &str, punct: &PunctProfile) -> bool {
    text.trim_end_matches(|c: char| c.is_whitespace() || punct.closers.contains(&c))
        .chars()
        .next_back()
        .is_some_and(|c| punct.strong.contains(&c))
}

/// One of the three synchronized streams.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Stream {
    Pivot,
    A,
    B,
}

impl Stream {
    pub fn text(self, triple: &AlignedTriple) -> &str {
        match self {
            Stream::Pivot => &triple.pivot_text,
            Stream::A => &triple.a_text,
            Stream::B => &triple.b_text,
        }
    }
}

/// Language codes of the three streams, for resolving names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StreamNames {
    pub pivot: String,
    pub a: String,
    pub b: String,
}

impl StreamNames {
    pub fn new(pivot: impl Into<String>, a: impl Into<String>, b: impl Into<String>) -> Self {
        StreamNames {
            pivot: pivot.into(),
            a: a.into(),
            b: b.into(),
        }
    }

    pub fn resolve(&self, name: &str) -> Result<Stream, RebuildError> {
        match name {
            n if n == self.pivot => Ok(Stream::Pivot),
            n if n == self.a => Ok(Stream::A),
            n if n == self.b => Ok(Stream::B),
            _ => Err(RebuildError::UnknownSide {
                name: name.to_string(),
                known: format!("{}, {}, {}", self.pivot, self.a, self.b),
            }),
        }
    }

    pub fn name(&self, stream: Stream) -> &str {
        match stream {
            Stream::Pivot => &self.pivot,
            Stream::A => &self.a,
            Stream::B => &self.b,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RebuildStrategy {
    /// Keep every unit as it is.
    None,
    /// Close sentences on strong punctuation of one stream.
    StrongPunctSide(Stream),
    /// Close sentences on strong punctuation of the pivot stream.
    PivotPunct,
}

impl RebuildStrategy {
    /// Parses `none`, `pivot` or `strong-punct:<language>`.
    pub fn parse(spec: &str, names: &StreamNames) -> Result<Self, RebuildError> {
        match spec {
            "none" => Ok(RebuildStrategy::None),
            "pivot" => Ok(RebuildStrategy::PivotPunct),
            s => match s.strip_prefix("strong-punct:") {
                Some(side) => Ok(RebuildStrategy::StrongPunctSide(names.resolve(side)?)),
                None => Err(RebuildError::UnknownStrategy(s.to_string())),
            },
        }
    }

    /// A file-name friendly label: `none`, `strong-punct-<lang>`, `pivot`.
    pub fn label(&self, names: &StreamNames) -> String {
        match self {
            RebuildStrategy::None => "none".into(),
            RebuildStrategy::StrongPunctSide(s) => format!("strong-punct-{}", names.name(*s)),
            RebuildStrategy::PivotPunct => "pivot".into(),
        }
    }

    fn boundary_stream(&self) -> Option<Stream> {
        match self {
            RebuildStrategy::None => None,
            RebuildStrategy::StrongPunctSide(s) => Some(*s),
            RebuildStrategy::PivotPunct => Some(Stream::Pivot),
        }
    }
}

impl fmt::Display for RebuildStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RebuildStrategy::None => write!(f, "none"),
            RebuildStrategy::StrongPunctSide(s) => write!(f, "strong-punct:{s:?}"),
            RebuildStrategy::PivotPunct => write!(f, "pivot"),
        }
    }
}

/// A rebuilt sentence in all three streams.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SentenceUnit {
    pub pivot_text: String,
    pub a_text: String,
    pub b_text: String,
    /// Indices into the triple list this sentence was built from.
    pub source_triple_ids: Vec<usize>,
    pub divergent: bool,
}

impl SentenceUnit {
    pub fn text(&self, stream: Stream) -> &str {
        match stream {
            Stream::Pivot => &self.pivot_text,
            Stream::A => &self.a_text,
            Stream::B => &self.b_text,
        }
    }
}

fn join_nonempty<'a>(parts: impl Iterator<Item = &'a str>) -> String {
    parts.filter(|p| !p.is_empty()).collect::<Vec<_>>().join(" ")
}

/// Rebuilds sentences from one talk's ordered triples. Units are only ever
/// merged whole; a caption with an inner full stop is not split. A trailing
/// unterminated group still becomes a sentence.
pub fn rebuild(triples: &[AlignedTriple], strategy: RebuildStrategy, punct: &PunctProfile) -> Vec<SentenceUnit> {
    let close = |t: &AlignedTriple| match strategy.boundary_stream() {
        None => true,
        Some(stream) => is_strong_terminal(stream.text(t), punct),
    };
    let mut out = Vec::new();
    let mut start = 0;
    for (i, triple) in triples.iter().enumerate() {
        if close(triple) || i + 1 == triples.len() {
            let group = &triples[start..=i];
            out.push(SentenceUnit {
                pivot_text: join_nonempty(group.iter().map(|t| t.pivot_text.as_str())),
                a_text: join_nonempty(group.iter().map(|t| t.a_text.as_str())),
                b_text: join_nonempty(group.iter().map(|t| t.b_text.as_str())),
                source_triple_ids: (start..=i).collect(),
                divergent: group.iter().any(|t| t.divergent),
            });
            start = i + 1;
        }
    }
    out
}

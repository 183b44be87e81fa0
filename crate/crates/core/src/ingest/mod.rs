//! Subtitle ingestion: collection XML, SRT and WebVTT parsers producing
//! normalized, validated [`Talk`]s.

mod srt;
mod text;
mod vtt;
mod xml;

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

pub use srt::{parse_srt, write_srt};
pub use text::normalize_caption_text;
pub use vtt::{parse_vtt, write_vtt};
pub use xml::{parse_collection_xml, write_collection_xml};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum IngestError {
    #[error("input is not valid UTF-8 (byte offset {offset})")]
    Encoding { offset: usize },
    #[error("malformed XML at line {line}, column {column}: {message}")]
    Xml {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("talk {talk_id}, caption {index}: {message}")]
    Validation {
        talk_id: String,
        index: usize,
        message: String,
    },
    #[error("duplicate talk id {0:?}")]
    DuplicateTalk(String),
    #[error("invalid collection: {0}")]
    Schema(String),
    #[error("SRT cue {cue}: {message}")]
    Srt { cue: usize, message: String },
    #[error("missing WEBVTT header")]
    MissingVttHeader,
    #[error("WebVTT cue {cue}: {message}")]
    Vtt { cue: usize, message: String },
}

/// One timed subtitle fragment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Caption {
    pub index: usize,
    pub start_ms: u64,
    pub end_ms: u64,
    pub text: String,
}

/// The ordered captions of one talk in one language.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Talk {
    pub talk_id: String,
    pub language: String,
    pub title: Option<String>,
    pub captions: Vec<Caption>,
}

/// A caption before ordering and re-indexing.
#[derive(Debug, Clone)]
pub(crate) struct RawCaption {
    pub start_ms: u64,
    pub end_ms: u64,
    pub text: String,
}

impl Talk {
    /// Builds a talk from unordered captions: sorts by start time (stable, so
    /// ties keep input order) and assigns consecutive indices from 0.
    pub(crate) fn from_raw(
        talk_id: String,
        language: String,
        title: Option<String>,
        mut raw: Vec<RawCaption>,
    ) -> Talk {
        raw.sort_by_key(|c| c.start_ms);
        let captions = raw
            .into_iter()
            .enumerate()
            .map(|(index, c)| Caption {
                index,
                start_ms: c.start_ms,
                end_ms: c.end_ms,
                text: c.text,
            })
            .collect();
        Talk {
            talk_id,
            language,
            title,
            captions,
        }
    }

    pub fn texts(&self) -> Vec<&str> {
        self.captions.iter().map(|c| c.text.as_str()).collect()
    }

    pub fn is_empty(&self) -> bool {
        self.captions.is_empty()
    }

    /// Checks the caption invariants: valid timing, non-empty text, sorted
    /// order and consecutive indices.
    pub fn validate(&self) -> Result<(), IngestError> {
        let fail = |index: usize, message: String| IngestError::Validation {
            talk_id: self.talk_id.clone(),
            index,
            message,
        };
        if self.talk_id.trim().is_empty() {
            return Err(IngestError::Schema("empty talk id".into()));
        }
        let mut prev_start = 0;
        for (pos, c) in self.captions.iter().enumerate() {
            if c.index != pos {
                return Err(fail(pos, format!("index {} out of sequence", c.index)));
            }
            if c.end_ms < c.start_ms {
                return Err(fail(
                    pos,
                    format!("end {} precedes start {}", c.end_ms, c.start_ms),
                ));
            }
            if c.start_ms < prev_start {
                return Err(fail(pos, "captions out of temporal order".into()));
            }
            if c.text.trim().is_empty() {
                return Err(fail(pos, "empty caption text".into()));
            }
            prev_start = c.start_ms;
        }
        Ok(())
    }
}

/// All talks of one language.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TalkCollection {
    pub language: String,
    pub talks: BTreeMap<String, Talk>,
}

impl TalkCollection {
    pub fn new(language: impl Into<String>) -> Self {
        TalkCollection {
            language: language.into(),
            talks: BTreeMap::new(),
        }
    }

    /// Adds a talk, rejecting a talk id that is already present.
    pub fn insert(&mut self, talk: Talk) -> Result<(), IngestError> {
        if self.talks.contains_key(&talk.talk_id) {
            return Err(IngestError::DuplicateTalk(talk.talk_id));
        }
        self.talks.insert(talk.talk_id.clone(), talk);
        Ok(())
    }

    pub fn get(&self, talk_id: &str) -> Option<&Talk> {
        self.talks.get(talk_id)
    }

    pub fn len(&self) -> usize {
        self.talks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.talks.is_empty()
    }
}

/// Sorted talk ids present in every collection. A single collection yields
/// its own ids; no collections yield nothing.
pub fn intersect_collections(collections: &[TalkCollection]) -> Vec<String> {
    let Some((first, rest)) = collections.split_first() else {
        return Vec::new();
    };
    first
        .talks
        .keys()
        .filter(|id| rest.iter().all(|c| c.talks.contains_key(*id)))
        .cloned()
        .collect()
}

/// A non-fatal condition met while parsing, e.g. a skipped empty cue.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseWarning {
    pub cue: usize,
    pub message: String,
}

impl fmt::Display for ParseWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "cue {}: {}", self.cue, self.message)
    }
}

/// A parsed talk together with the warnings raised while parsing it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedTalk {
    pub talk: Talk,
    pub warnings: Vec<ParseWarning>,
}

/// Decodes UTF-8 input and drops a leading byte-order mark.
pub(crate) fn decode_utf8(content: &[u8]) -> Result<&str, IngestError> {
    let s = std::str::from_utf8(content).map_err(|e| IngestError::Encoding {
        offset: e.valid_up_to(),
    })?;
    Ok(s.strip_prefix('\u{feff}').unwrap_or(s))
}

/// Formats milliseconds as `HH:MM:SS<sep>mmm`.
pub(crate) fn format_timestamp(ms: u64, sep: char) -> String {
    let (h, rem) = (ms / 3_600_000, ms % 3_600_000);
    let (m, rem) = (rem / 60_000, rem % 60_000);
    let (s, milli) = (rem / 1000, rem % 1000);
    format!("{h:02}:{m:02}:{s:02}{sep}{milli:03}")
}

//! SubRip: counter line, `HH:MM:SS,mmm --> HH:MM:SS,mmm`, text lines, blank
//! line.

use super::text::normalize_caption_text;
use super::{
    decode_utf8, format_timestamp, IngestError, ParseWarning, ParsedTalk, RawCaption, Talk,
};

/// Parses `[HH:]MM:SS<frac_sep>mmm`. `require_hours` demands the hour field.
pub(crate) fn parse_timestamp(s: &str, frac_sep: char, require_hours: bool) -> Option<u64> {
    let (clock, frac) = s.split_once(frac_sep)?;
    if frac.len() != 3 || !frac.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let fields: Vec<&str> = clock.split(':').collect();
    let (h, m, sec) = match fields.as_slice() {
        [h, m, s] => (Some(*h), *m, *s),
        [m, s] if !require_hours => (None, *m, *s),
        _ => return None,
    };
    let two_digits = |f: &str| -> Option<u64> {
        (f.len() == 2 && f.bytes().all(|b| b.is_ascii_digit()))
            .then(|| f.parse().ok())
            .flatten()
    };
    let hours = match h {
        Some(h) if !h.is_empty() && h.bytes().all(|b| b.is_ascii_digit()) => h.parse::<u64>().ok()?,
        Some(_) => return None,
        None => 0,
    };
    let (minutes, seconds) = (two_digits(m)?, two_digits(sec)?);
    if minutes >= 60 || seconds >= 60 {
        return None;
    }
    let millis: u64 = frac.parse().ok()?;
    Some(((hours * 60 + minutes) * 60 + seconds) * 1000 + millis)
}

/// Splits text into blocks of non-blank lines.
pub(crate) fn blocks(src: &str) -> Vec<Vec<&str>> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    for line in src.lines() {
        let line = line.trim_end_matches('\r');
        if line.trim().is_empty() {
            if !current.is_empty() {
                out.push(std::mem::take(&mut current));
            }
        } else {
            current.push(line);
        }
    }
    if !current.is_empty() {
        out.push(current);
    }
    out
}

/// Parses one SRT file into a talk. Empty cues are skipped with a warning.
pub fn parse_srt(content: &[u8], talk_id: &str, language: &str) -> Result<ParsedTalk, IngestError> {
    let src = decode_utf8(content)?;
    let mut raw = Vec::new();
    let mut warnings = Vec::new();
    for (ordinal, block) in blocks(src).into_iter().enumerate() {
        let cue = ordinal + 1;
        let err = |message: String| IngestError::Srt { cue, message };
        let counter = block[0].trim();
        if counter.parse::<u64>().is_err() {
            return Err(err(format!("expected cue counter, found {counter:?}")));
        }
        let timing = block
            .get(1)
            .ok_or_else(|| err("missing timestamp line".into()))?;
        let (start, end) = timing
            .split_once("-->")
            .ok_or_else(|| err(format!("malformed timestamp line {timing:?}")))?;
        let start = parse_timestamp(start.trim(), ',', true)
            .ok_or_else(|| err(format!("malformed start timestamp {:?}", start.trim())))?;
        let end = parse_timestamp(end.trim(), ',', true)
            .ok_or_else(|| err(format!("malformed end timestamp {:?}", end.trim())))?;
        if end < start {
            return Err(err(format!("end {end} precedes start {start}")));
        }
        let text = normalize_caption_text(&block[2..].join(" "));
        if text.is_empty() {
            warnings.push(ParseWarning {
                cue,
                message: "empty cue text; skipped".into(),
            });
            continue;
        }
        raw.push(RawCaption {
            start_ms: start,
            end_ms: end,
            text,
        });
    }
    Ok(ParsedTalk {
        talk: Talk::from_raw(talk_id.to_string(), language.to_string(), None, raw),
        warnings,
    })
}

pub fn write_srt(talk: &Talk) -> String {
    let mut out = String::new();
    for c in &talk.captions {
        out.push_str(&format!(
            "{}\n{} --> {}\n{}\n\n",
            c.index + 1,
            format_timestamp(c.start_ms, ','),
            format_timestamp(c.end_ms, ','),
            c.text
        ));
    }
    out
}

//! WebVTT cues. Cue settings, NOTE, STYLE and REGION blocks are dropped.

use super::srt::{blocks, parse_timestamp};
use super::text::normalize_caption_text;
use super::{
    decode_utf8, format_timestamp, IngestError, ParseWarning, ParsedTalk, RawCaption, Talk,
};

fn is_header(line: &str) -> bool {
    match line.strip_prefix("WEBVTT") {
        Some(rest) => rest.is_empty() || rest.starts_with([' ', '\t']),
        None => false,
    }
}

pub fn parse_vtt(content: &[u8], talk_id: &str, language: &str) -> Result<ParsedTalk, IngestError> {
    let src = decode_utf8(content)?;
    let mut all = blocks(src).into_iter();
    match all.next() {
        Some(header) if is_header(header[0]) => {}
        _ => return Err(IngestError::MissingVttHeader),
    }

    let mut raw = Vec::new();
    let mut warnings = Vec::new();
    let mut cue = 0;
    for block in all {
        let first = block[0];
        if !first.contains("-->")
            && ["NOTE", "STYLE", "REGION"]
                .iter()
                .any(|kw| first == *kw || first.starts_with(&format!("{kw} ")) || first.starts_with(&format!("{kw}\t")))
        {
            continue;
        }
        cue += 1;
        let err = |message: String| IngestError::Vtt { cue, message };
        let timing_at = if first.contains("-->") { 0 } else { 1 };
        let timing = block
            .get(timing_at)
            .filter(|l| l.contains("-->"))
            .ok_or_else(|| err("missing timing line".into()))?;
        let (start, rest) = timing.split_once("-->").expect("checked above");
        let end = rest.split_whitespace().next().unwrap_or("");
        let start = parse_timestamp(start.trim(), '.', false)
            .ok_or_else(|| err(format!("malformed start timestamp {:?}", start.trim())))?;
        let end = parse_timestamp(end, '.', false)
            .ok_or_else(|| err(format!("malformed end timestamp {end:?}")))?;
        if end < start {
            return Err(err(format!("end {end} precedes start {start}")));
        }
        let text = normalize_caption_text(&block[timing_at + 1..].join(" "));
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

pub fn write_vtt(talk: &Talk) -> String {
    let mut out = String::from("WEBVTT\n\n");
    for c in &talk.captions {
        out.push_str(&format!(
            "{} --> {}\n{}\n\n",
            format_timestamp(c.start_ms, '.'),
            format_timestamp(c.end_ms, '.'),
            c.text
        ));
    }
    out
}

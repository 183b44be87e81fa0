//! Collection XML:
//!
//! ```xml
//! <collection language="en">
//!   <talk id="1443">
//!     <title>Feats of memory</title>
//!     <caption start="0" end="2300">I'd like to invite you to close your eyes.</caption>
//!   </talk>
//! </collection>
//! ```

use std::fmt::Write as _;

use quick_xml::escape::escape;
use quick_xml::events::{BytesStart, Event};
use quick_xml::Reader;

use super::text::normalize_caption_text;
use super::{decode_utf8, IngestError, RawCaption, Talk, TalkCollection};

struct PendingTalk {
    id: String,
    title: Option<String>,
    captions: Vec<(i64, i64, String)>,
}

enum Open {
    Title(String),
    Caption(i64, i64, String),
}

fn position(src: &str, offset: usize) -> (usize, usize) {
    let offset = offset.min(src.len());
    let before = &src[..offset];
    let line = before.matches('\n').count() + 1;
    let line_start = before.rfind('\n').map_or(0, |i| i + 1);
    (line, before[line_start..].chars().count() + 1)
}

fn xml_error(src: &str, offset: usize, message: impl Into<String>) -> IngestError {
    let (line, column) = position(src, offset);
    IngestError::Xml {
        line,
        column,
        message: message.into(),
    }
}

fn attribute(
    src: &str,
    offset: usize,
    e: &BytesStart<'_>,
    name: &str,
) -> Result<Option<String>, IngestError> {
    for attr in e.attributes() {
        let attr = attr.map_err(|err| xml_error(src, offset, err.to_string()))?;
        if attr.key.as_ref() == name.as_bytes() {
            let value = attr
                .unescape_value()
                .map_err(|err| xml_error(src, offset, err.to_string()))?;
            return Ok(Some(value.into_owned()));
        }
    }
    Ok(None)
}

fn required(
    src: &str,
    offset: usize,
    e: &BytesStart<'_>,
    name: &str,
) -> Result<String, IngestError> {
    let element = String::from_utf8_lossy(e.name().as_ref()).into_owned();
    attribute(src, offset, e, name)?
        .ok_or_else(|| xml_error(src, offset, format!("<{element}> lacks attribute {name:?}")))
}

fn millis(src: &str, offset: usize, value: &str) -> Result<i64, IngestError> {
    value
        .trim()
        .parse::<i64>()
        .map_err(|_| xml_error(src, offset, format!("timestamp {value:?} is not an integer")))
}

/// Parses a whole single-language collection.
pub fn parse_collection_xml(content: &[u8]) -> Result<TalkCollection, IngestError> {
    let src = decode_utf8(content)?;
    let mut reader = Reader::from_str(src);
    reader.config_mut().check_end_names = true;

    let mut language: Option<String> = None;
    let mut talks: Vec<PendingTalk> = Vec::new();
    let mut current: Option<PendingTalk> = None;
    let mut open: Option<Open> = None;
    let mut root_closed = false;

    loop {
        let offset = reader.buffer_position() as usize;
        let event = reader
            .read_event()
            .map_err(|e| xml_error(src, reader.error_position() as usize, e.to_string()))?;
        match event {
            Event::Eof => break,
            Event::Decl(_) | Event::Comment(_) | Event::PI(_) | Event::DocType(_) => {}
            Event::Start(e) | Event::Empty(e) if root_closed => {
                let name = String::from_utf8_lossy(e.name().as_ref()).into_owned();
                return Err(xml_error(src, offset, format!("<{name}> after root element")));
            }
            Event::Start(e) => {
                let name = e.name();
                match (name.as_ref(), language.is_some(), &current, &open) {
                    (b"collection", false, None, None) => {
                        language = Some(required(src, offset, &e, "language")?);
                    }
                    (b"talk", true, None, None) => {
                        current = Some(PendingTalk {
                            id: required(src, offset, &e, "id")?,
                            title: None,
                            captions: Vec::new(),
                        });
                    }
                    (b"title", true, Some(_), None) => open = Some(Open::Title(String::new())),
                    (b"caption", true, Some(_), None) => {
                        let start = millis(src, offset, &required(src, offset, &e, "start")?)?;
                        let end = millis(src, offset, &required(src, offset, &e, "end")?)?;
                        open = Some(Open::Caption(start, end, String::new()));
                    }
                    (other, ..) => {
                        let other = String::from_utf8_lossy(other).into_owned();
                        return Err(xml_error(src, offset, format!("unexpected element <{other}>")));
                    }
                }
            }
            Event::Empty(e) => {
                let name = e.name();
                match (name.as_ref(), &mut current, &open) {
                    (b"talk", None, None) if language.is_some() => {
                        talks.push(PendingTalk {
                            id: required(src, offset, &e, "id")?,
                            title: None,
                            captions: Vec::new(),
                        });
                    }
                    (b"caption", Some(talk), None) => {
                        let start = millis(src, offset, &required(src, offset, &e, "start")?)?;
                        let end = millis(src, offset, &required(src, offset, &e, "end")?)?;
                        talk.captions.push((start, end, String::new()));
                    }
                    (b"title", Some(_), None) => {}
                    (other, ..) => {
                        let other = String::from_utf8_lossy(other).into_owned();
                        return Err(xml_error(src, offset, format!("unexpected element <{other}/>")));
                    }
                }
            }
            Event::End(e) => match e.name().as_ref() {
                b"title" | b"caption" => {
                    let talk = current.as_mut().expect("title/caption only open inside a talk");
                    match open.take() {
                        Some(Open::Title(t)) => talk.title = Some(normalize_caption_text(&t)),
                        Some(Open::Caption(s, e, t)) => talk.captions.push((s, e, t)),
                        None => unreachable!("end names are checked by the reader"),
                    }
                }
                b"talk" => talks.extend(current.take()),
                b"collection" => root_closed = true,
                _ => {}
            },
            Event::Text(t) => {
                let text = t
                    .unescape()
                    .map_err(|err| xml_error(src, offset, err.to_string()))?;
                match &mut open {
                    Some(Open::Title(buf)) | Some(Open::Caption(_, _, buf)) => buf.push_str(&text),
                    None if text.trim().is_empty() => {}
                    None => return Err(xml_error(src, offset, "text outside a caption or title")),
                }
            }
            Event::CData(t) => match &mut open {
                Some(Open::Title(buf)) | Some(Open::Caption(_, _, buf)) => {
                    buf.push_str(&String::from_utf8_lossy(&t));
                }
                None => return Err(xml_error(src, offset, "CDATA outside a caption or title")),
            },
        }
    }

    let language = language.ok_or_else(|| IngestError::Schema("missing <collection> root".into()))?;
    if !root_closed {
        return Err(xml_error(src, src.len(), "unclosed <collection>"));
    }
    let mut collection = TalkCollection::new(language.clone());
    for pending in talks {
        collection.insert(finish_talk(pending, &language)?)?;
    }
    Ok(collection)
}

fn finish_talk(pending: PendingTalk, language: &str) -> Result<Talk, IngestError> {
    if pending.id.trim().is_empty() {
        return Err(IngestError::Schema("talk with empty id".into()));
    }
    let fail = |index: usize, message: String| IngestError::Validation {
        talk_id: pending.id.clone(),
        index,
        message,
    };
    let mut raw = Vec::with_capacity(pending.captions.len());
    for (index, (start, end, text)) in pending.captions.iter().enumerate() {
        if *start < 0 || *end < 0 {
            return Err(fail(index, format!("negative timestamp ({start}, {end})")));
        }
        if end < start {
            return Err(fail(index, format!("end {end} precedes start {start}")));
        }
        let text = normalize_caption_text(text);
        if text.is_empty() {
            return Err(fail(index, "empty caption text".into()));
        }
        raw.push(RawCaption {
            start_ms: *start as u64,
            end_ms: *end as u64,
            text,
        });
    }
    let talk = Talk::from_raw(pending.id.clone(), language.to_string(), pending.title, raw);
    for pair in talk.captions.windows(2) {
        if pair[0].end_ms > pair[1].start_ms {
            return Err(fail(
                pair[1].index,
                format!(
                    "overlaps previous caption ({} > {})",
                    pair[0].end_ms, pair[1].start_ms
                ),
            ));
        }
    }
    Ok(talk)
}

/// Serializes a collection in the same schema `parse_collection_xml` reads.
pub fn write_collection_xml(collection: &TalkCollection) -> String {
    let mut out = String::from("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(out, "<collection language=\"{}\">", escape(&collection.language));
    for talk in collection.talks.values() {
        let _ = writeln!(out, "  <talk id=\"{}\">", escape(&talk.talk_id));
        if let Some(title) = &talk.title {
            let _ = writeln!(out, "    <title>{}</title>", escape(title));
        }
        for c in &talk.captions {
            let _ = writeln!(
                out,
                "    <caption start=\"{}\" end=\"{}\">{}</caption>",
                c.start_ms,
                c.end_ms,
                escape(&c.text)
            );
        }
        out.push_str("  </talk>\n");
    }
    out.push_str("</collection>\n");
    out
}

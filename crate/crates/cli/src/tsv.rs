//! Tab-separated files for aligned triples and rebuilt sentences. Both carry
//! a header naming the three languages, and one row per unit.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use pivot_corpus::pivot::AlignedTriple;
use pivot_corpus::rebuild::{SentenceUnit, StreamNames};

fn ids(list: &[usize]) -> String {
    list.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}

fn parse_ids(field: &str) -> Result<Vec<usize>> {
    if field.is_empty() {
        return Ok(Vec::new());
    }
    field
        .split(',')
        .map(|x| x.parse().map_err(|_| anyhow!("bad id list {field:?}")))
        .collect()
}

fn flag(b: bool) -> &'static str {
    if b {
        "1"
    } else {
        "0"
    }
}

fn parse_flag(field: &str) -> Result<bool> {
    match field {
        "0" => Ok(false),
        "1" => Ok(true),
        _ => bail!("bad divergence flag {field:?}"),
    }
}

fn clean(text: &str) -> Result<&str> {
    if text.contains(['\t', '\n', '\r']) {
        bail!("text contains a tab or line break: {text:?}");
    }
    Ok(text)
}

fn triple_header(names: &StreamNames) -> String {
    format!("talk_id\tpivot_ids\ta_ids\tb_ids\tdivergent\t{}\t{}\t{}", names.pivot, names.a, names.b)
}

fn sentence_header(names: &StreamNames) -> String {
    format!("talk_id\tsentence\ttriples\tdivergent\t{}\t{}\t{}", names.pivot, names.a, names.b)
}

pub fn render_triples(talk_id: &str, triples: &[AlignedTriple], names: &StreamNames) -> Result<String> {
    let mut out = triple_header(names);
    out.push('\n');
    for t in triples {
        let _ = writeln!(
            out,
            "{talk_id}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
            ids(&t.pivot_caption_ids),
            ids(&t.a_caption_ids),
            ids(&t.b_caption_ids),
            flag(t.divergent),
            clean(&t.pivot_text)?,
            clean(&t.a_text)?,
            clean(&t.b_text)?,
        );
    }
    Ok(out)
}

pub fn render_sentences(talk_id: &str, units: &[SentenceUnit], names: &StreamNames) -> Result<String> {
    let mut out = sentence_header(names);
    out.push('\n');
    for (i, u) in units.iter().enumerate() {
        let _ = writeln!(
            out,
            "{talk_id}\t{i}\t{}\t{}\t{}\t{}\t{}",
            ids(&u.source_triple_ids),
            flag(u.divergent),
            clean(&u.pivot_text)?,
            clean(&u.a_text)?,
            clean(&u.b_text)?,
        );
    }
    Ok(out)
}

/// Rows of a file after checking its header; each row has `width` fields.
fn rows<'a>(text: &'a str, header: &str, width: usize) -> Result<Vec<Vec<&'a str>>> {
    let mut lines = text.lines();
    match lines.next() {
        Some(h) if h == header => {}
        Some(h) => bail!("unexpected header {h:?}, expected {header:?}"),
        None => bail!("empty file"),
    }
    lines
        .enumerate()
        .map(|(i, line)| {
            let fields: Vec<&str> = line.split('\t').collect();
            if fields.len() != width {
                bail!("line {}: {} fields, expected {width}", i + 2, fields.len());
            }
            Ok(fields)
        })
        .collect()
}

pub fn read_triples(path: &Path, names: &StreamNames) -> Result<Vec<AlignedTriple>> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let parse = || -> Result<Vec<AlignedTriple>> {
        rows(&text, &triple_header(names), 8)?
            .into_iter()
            .map(|f| {
                Ok(AlignedTriple {
                    pivot_caption_ids: parse_ids(f[1])?,
                    a_caption_ids: parse_ids(f[2])?,
                    b_caption_ids: parse_ids(f[3])?,
                    divergent: parse_flag(f[4])?,
                    pivot_text: f[5].to_string(),
                    a_text: f[6].to_string(),
                    b_text: f[7].to_string(),
                })
            })
            .collect()
    };
    parse().with_context(|| format!("{}", path.display()))
}

pub fn read_sentences(path: &Path, names: &StreamNames) -> Result<Vec<SentenceUnit>> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let parse = || -> Result<Vec<SentenceUnit>> {
        rows(&text, &sentence_header(names), 7)?
            .into_iter()
            .map(|f| {
                Ok(SentenceUnit {
                    source_triple_ids: parse_ids(f[2])?,
                    divergent: parse_flag(f[3])?,
                    pivot_text: f[4].to_string(),
                    a_text: f[5].to_string(),
                    b_text: f[6].to_string(),
                })
            })
            .collect()
    };
    parse().with_context(|| format!("{}", path.display()))
}

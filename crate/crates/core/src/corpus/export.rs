use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::rebuild::{SentenceUnit, Stream};

#[derive(Debug, Error)]
pub enum ExportError {
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
    #[error("nothing to export")]
    Empty,
    #[error("talk {talk_id}, sentence {index}: text contains a line break")]
    LineBreak { talk_id: String, index: usize },
    #[error("exported files disagree: {first} has {first_lines} lines, {second} has {second_lines}")]
    LineCountMismatch {
        first: String,
        first_lines: usize,
        second: String,
        second_lines: usize,
    },
}

/// Rebuilt sentences of one talk.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TalkSentences {
    pub talk_id: String,
    pub units: Vec<SentenceUnit>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExportSummary {
    pub lines: usize,
    pub dropped: usize,
    pub first: PathBuf,
    pub second: PathBuf,
    pub companion: PathBuf,
}

fn io_err(path: &Path) -> impl FnOnce(io::Error) -> ExportError + '_ {
    move |source| ExportError::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn count_lines(path: &Path) -> Result<usize, ExportError> {
    let data = fs::read(path).map_err(io_err(path))?;
    Ok(data.iter().filter(|&&b| b == b'\n').count())
}

/// Writes `<dir>/<prefix>.<lang>` for both streams, one sentence per line,
/// plus `<dir>/<prefix>.tsv` with talk id, sentence index, source unit ids
/// and divergence flag for each line. With `drop_divergent`, flagged
/// sentences are left out of all three files.
pub fn export_bitext(
    talks: &[TalkSentences],
    sides: (Stream, Stream),
    langs: (&str, &str),
    dir: &Path,
    prefix: &str,
    drop_divergent: bool,
) -> Result<ExportSummary, ExportError> {
    if talks.iter().all(|t| t.units.is_empty()) {
        return Err(ExportError::Empty);
    }
    fs::create_dir_all(dir).map_err(io_err(dir))?;
    let first = dir.join(format!("{prefix}.{}", langs.0));
    let second = dir.join(format!("{prefix}.{}", langs.1));
    let companion = dir.join(format!("{prefix}.tsv"));

    let open = |p: &Path| File::create(p).map(BufWriter::new).map_err(io_err(p));
    let (mut w1, mut w2, mut w3) = (open(&first)?, open(&second)?, open(&companion)?);
    writeln!(w3, "talk_id\tsentence\tunits\tdivergent").map_err(io_err(&companion))?;

    let (mut lines, mut dropped) = (0, 0);
    for talk in talks {
        for (index, unit) in talk.units.iter().enumerate() {
            if drop_divergent && unit.divergent {
                dropped += 1;
                continue;
            }
            let (t1, t2) = (unit.text(sides.0), unit.text(sides.1));
            if t1.contains(['\n', '\r']) || t2.contains(['\n', '\r']) {
                return Err(ExportError::LineBreak {
                    talk_id: talk.talk_id.clone(),
                    index,
                });
            }
            writeln!(w1, "{t1}").map_err(io_err(&first))?;
            writeln!(w2, "{t2}").map_err(io_err(&second))?;
            let ids: Vec<String> = unit.source_triple_ids.iter().map(usize::to_string).collect();
            writeln!(w3, "{}\t{index}\t{}\t{}", talk.talk_id, ids.join(","), unit.divergent)
                .map_err(io_err(&companion))?;
            lines += 1;
        }
    }
    w1.flush().map_err(io_err(&first))?;
    w2.flush().map_err(io_err(&second))?;
    w3.flush().map_err(io_err(&companion))?;
    drop((w1, w2, w3));

    let (n1, n2) = (count_lines(&first)?, count_lines(&second)?);
    if n1 != n2 || n1 != lines {
        return Err(ExportError::LineCountMismatch {
            first: first.display().to_string(),
            first_lines: n1,
            second: second.display().to_string(),
            second_lines: n2,
        });
    }
    Ok(ExportSummary {
        lines,
        dropped,
        first,
        second,
        companion,
    })
}

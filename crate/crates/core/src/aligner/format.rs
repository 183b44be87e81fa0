//! Text serialization of alignment maps:
//!
//! ```text
//! #src_len=3 tgt_len=4
//! 0-1	0-2	0.1234
//! ```

use std::fmt;
use std::str::FromStr;

use super::{AlignError, AlignmentMap, Bead};

impl fmt::Display for AlignmentMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "#src_len={} tgt_len={}", self.src_len, self.tgt_len)?;
        for b in &self.beads {
            writeln!(
                f,
                "{}-{}\t{}-{}\t{}",
                b.src.start, b.src.end, b.tgt.start, b.tgt.end, b.cost
            )?;
        }
        Ok(())
    }
}

fn range(field: &str, line: usize) -> Result<std::ops::Range<usize>, AlignError> {
    let err = || AlignError::Parse {
        line,
        message: format!("bad range {field:?}"),
    };
    let (a, b) = field.split_once('-').ok_or_else(err)?;
    let (a, b) = (a.parse().map_err(|_| err())?, b.parse().map_err(|_| err())?);
    Ok(a..b)
}

impl FromStr for AlignmentMap {
    type Err = AlignError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut lines = s.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (_, header) = lines.next().ok_or(AlignError::Parse {
            line: 1,
            message: "missing header".into(),
        })?;
        let header_err = || AlignError::Parse {
            line: 1,
            message: format!("bad header {header:?}"),
        };
        let rest = header.strip_prefix("#src_len=").ok_or_else(header_err)?;
        let (src, tgt) = rest.split_once(" tgt_len=").ok_or_else(header_err)?;
        let src_len = src.trim().parse().map_err(|_| header_err())?;
        let tgt_len = tgt.trim().parse().map_err(|_| header_err())?;

        let mut beads = Vec::new();
        for (idx, line) in lines {
            let n = idx + 1;
            let fields: Vec<&str> = line.split('\t').collect();
            let [src, tgt, cost] = fields.as_slice() else {
                return Err(AlignError::Parse {
                    line: n,
                    message: format!("expected 3 tab-separated fields, got {}", fields.len()),
                });
            };
            let cost = cost.trim().parse::<f64>().map_err(|_| AlignError::Parse {
                line: n,
                message: format!("bad cost {cost:?}"),
            })?;
            beads.push(Bead::new(range(src, n)?, range(tgt, n)?, cost));
        }
        AlignmentMap::new(beads, src_len, tgt_len)
    }
}

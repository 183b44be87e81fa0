//! Talk-level partitioning, corpus statistics and bitext export.

mod export;
mod split;
mod stats;

pub use export::{export_bitext, ExportError, ExportSummary, TalkSentences};
pub use split::{partition, Partition, SplitError, SplitSpec, TRAIN};
pub use stats::{diff_stats, length_stats, render_table, render_tsv, DiffStats, LengthStats, StatsError, StatsRow};

//! Building a parallel corpus for two languages from subtitles, using a
//! third (pivot) language to synchronize captions and rebuild sentences.
//!
//! The pipeline is [`ingest`] → [`pivot`] (built on [`aligner`]) →
//! [`rebuild`] → [`corpus`], with [`textproc`] supplying tokenization for
//! statistics.

pub mod aligner;
pub mod corpus;
pub mod fixtures;
pub mod ingest;
pub mod pivot;
pub mod rebuild;
pub mod textproc;

//! Pivot-based synchronization of two languages.
//!
//! 1. Align the pivot stream paired with A to A, and the pivot stream paired
//!    with B to B.
//! 2. Align the two pivot streams to each other (lexical pass on), since
//!    they may have been segmented differently.
//! 3. Chain the three maps so every unit links A, pivot and B captions.

use std::fmt;

use thiserror::Error;

use crate::aligner::{align, AlignError, AlignerParams, AlignmentMap, SyncChain};
use crate::ingest::{normalize_caption_text, Talk};

#[derive(Debug, Error, PartialEq)]
pub enum PivotError {
    #[error("talk {talk_id} ({language}) has no captions")]
    EmptyTalk { talk_id: String, language: String },
    #[error(transparent)]
    Align(#[from] AlignError),
}

/// One synchronized unit: caption groups of the pivot (A-paired side), A and
/// B streams, with their texts joined by single spaces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlignedTriple {
    pub pivot_text: String,
    pub a_text: String,
    pub b_text: String,
    pub pivot_caption_ids: Vec<usize>,
    pub a_caption_ids: Vec<usize>,
    pub b_caption_ids: Vec<usize>,
    /// The two pivot streams disagree textually somewhere in this unit.
    pub divergent: bool,
}

/// Step-2 divergence between the two pivot streams.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DivergenceReport {
    pub total_units: usize,
    pub differing_units: usize,
    pub total_words: usize,
    pub differing_words: usize,
    pub unit_rate: f64,
    pub word_rate: f64,
}

fn ratio(num: usize, den: usize) -> f64 {
    if den == 0 {
        0.0
    } else {
        num as f64 / den as f64
    }
}

impl DivergenceReport {
    pub fn new(total_units: usize, differing_units: usize, total_words: usize, differing_words: usize) -> Self {
        debug_assert!(differing_units <= total_units && differing_words <= total_words);
        DivergenceReport {
            total_units,
            differing_units,
            total_words,
            differing_words,
            unit_rate: ratio(differing_units, total_units),
            word_rate: ratio(differing_words, total_words),
        }
    }

    /// Sums the counts of two reports and recomputes the rates.
    pub fn merge(&self, other: &DivergenceReport) -> DivergenceReport {
        DivergenceReport::new(
            self.total_units + other.total_units,
            self.differing_units + other.differing_units,
            self.total_words + other.total_words,
            self.differing_words + other.differing_words,
        )
    }
}

impl fmt::Display for DivergenceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} of {} units differ ({}), {} of {} words ({})",
            self.differing_units,
            self.total_units,
            percent(self.unit_rate),
            self.differing_words,
            self.total_words,
            percent(self.word_rate)
        )
    }
}

/// Renders a rate as a percentage with one decimal, e.g. `0.4%`.
pub fn percent(rate: f64) -> String {
    format!("{:.1}%", rate * 100.0)
}

pub fn invert(map: &AlignmentMap) -> AlignmentMap {
    map.invert()
}

fn joined(talk: &Talk, ids: std::ops::Range<usize>) -> String {
    talk.captions[ids]
        .iter()
        .map(|c| c.text.as_str())
        .collect::<Vec<_>>()
        .join(" ")
}

/// Whether each bead of `map_pp` joins textually different pivot texts.
/// Also returns the word count charged to each bead (the larger side).
fn bead_divergence(map_pp: &AlignmentMap, pivot_a: &Talk, pivot_b: &Talk) -> Vec<(bool, usize)> {
    assert_eq!(map_pp.src_len, pivot_a.captions.len(), "map does not fit pivot_a");
    assert_eq!(map_pp.tgt_len, pivot_b.captions.len(), "map does not fit pivot_b");
    map_pp
        .beads
        .iter()
        .map(|b| {
            let left = normalize_caption_text(&joined(pivot_a, b.src.clone()));
            let right = normalize_caption_text(&joined(pivot_b, b.tgt.clone()));
            let words = left.split_whitespace().count().max(right.split_whitespace().count());
            (left != right, words)
        })
        .collect()
}

/// Counts step-2 units (beads of `map_pp`) whose two pivot sides differ after
/// whitespace normalization. A unit's words are counted on its longer side.
///
/// # Panics
///
/// If `map_pp` does not span the two talks' caption lists.
pub fn measure_divergence(map_pp: &AlignmentMap, pivot_a: &Talk, pivot_b: &Talk) -> DivergenceReport {
    let per_bead = bead_divergence(map_pp, pivot_a, pivot_b);
    let total_words = per_bead.iter().map(|(_, w)| w).sum();
    let differing: Vec<_> = per_bead.iter().filter(|(d, _)| *d).collect();
    DivergenceReport::new(
        per_bead.len(),
        differing.len(),
        total_words,
        differing.iter().map(|(_, w)| w).sum(),
    )
}

/// Everything produced by [`pivot_align`].
#[derive(Debug, Clone, PartialEq)]
pub struct PivotAlignment {
    pub triples: Vec<AlignedTriple>,
    pub report: DivergenceReport,
    pub map_pa: AlignmentMap,
    pub map_pb: AlignmentMap,
    pub map_pp: AlignmentMap,
    /// The resulting A → B synchronization.
    pub map_ab: AlignmentMap,
}

fn non_empty(talk: &Talk) -> Result<(), PivotError> {
    if talk.is_empty() {
        return Err(PivotError::EmptyTalk {
            talk_id: talk.talk_id.clone(),
            language: talk.language.clone(),
        });
    }
    Ok(())
}

/// Synchronizes `a` and `b` through their pivot-language streams.
///
/// `pivot_a` is the pivot stream as paired with `a`, `pivot_b` as paired with
/// `b`; they hold the same talk but may be segmented differently. Pivot text
/// of each unit comes from `pivot_a`.
pub fn pivot_align(
    pivot_a: &Talk,
    a: &Talk,
    pivot_b: &Talk,
    b: &Talk,
    params: &AlignerParams,
) -> Result<PivotAlignment, PivotError> {
    for talk in [pivot_a, a, pivot_b, b] {
        non_empty(talk)?;
    }
    let map_pa = align(&pivot_a.texts(), &a.texts(), params)?;
    let map_pb = align(&pivot_b.texts(), &b.texts(), params)?;
    let self_params = AlignerParams {
        lexical_pass: true,
        ..params.clone()
    };
    let map_pp = align(&pivot_a.texts(), &pivot_b.texts(), &self_params)?;

    // Levels: 0 = A, 1 = pivot_a, 2 = pivot_b, 3 = B.
    let chain = SyncChain::from_map(&map_pa.invert())
        .then(&map_pp)?
        .then(&map_pb)?;

    let per_bead = bead_divergence(&map_pp, pivot_a, pivot_b);
    let report = measure_divergence(&map_pp, pivot_a, pivot_b);

    let mut triples = Vec::new();
    let mut pp = map_pp.beads.iter().zip(&per_bead).peekable();
    let mut carried = false;
    for seg in chain.segments() {
        let (a_ids, pa_ids, pb_ids, b_ids) = (&seg.spans[0], &seg.spans[1], &seg.spans[2], &seg.spans[3]);
        // Step-2 beads are nested in the chain's pivot spans.
        let mut divergent = carried;
        while let Some((bead, (differs, _))) = pp.peek() {
            if bead.src.end <= pa_ids.end && bead.tgt.end <= pb_ids.end {
                divergent |= *differs;
                pp.next();
            } else {
                break;
            }
        }
        if a_ids.is_empty() && pa_ids.is_empty() && b_ids.is_empty() {
            // Only pivot_b captions: nothing to emit, keep the flag.
            carried = divergent;
            continue;
        }
        carried = false;
        triples.push(AlignedTriple {
            pivot_text: joined(pivot_a, pa_ids.clone()),
            a_text: joined(a, a_ids.clone()),
            b_text: joined(b, b_ids.clone()),
            pivot_caption_ids: pa_ids.clone().collect(),
            a_caption_ids: a_ids.clone().collect(),
            b_caption_ids: b_ids.clone().collect(),
            divergent,
        });
    }
    if carried {
        if let Some(last) = triples.last_mut() {
            last.divergent = true;
        }
    }

    Ok(PivotAlignment {
        triples,
        report,
        map_ab: chain.project(0, 3),
        map_pa,
        map_pb,
        map_pp,
    })
}

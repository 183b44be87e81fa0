//! Length-based monotone sentence alignment with an optional lexical second
//! pass, plus the map algebra (identity, inversion, composition) used to
//! synchronize streams through a pivot.

mod chain;
mod cost;
mod dp;
mod format;
mod lexical;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Range;

use thiserror::Error;

pub use chain::{compose, ChainSegment, SyncChain};
pub use cost::{gaussian_two_sided_tail, length_cost, TAIL_FLOOR};
pub use lexical::{dice, lexical_refine, token_set, DEFAULT_LEXICAL_CORRIDOR};

/// Segment count above which the DP is restricted to a diagonal band unless
/// a band width is configured explicitly.
pub const AUTO_BAND_THRESHOLD: usize = 5000;
/// Band width used above [`AUTO_BAND_THRESHOLD`].
pub const AUTO_BAND_WIDTH: usize = 200;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AlignError {
    #[error("{side} segment {index} is empty")]
    EmptySegment { side: &'static str, index: usize },
    #[error("{0} segment list is empty")]
    EmptyInput(&'static str),
    #[error("length cost is undefined when both sides have zero characters")]
    ZeroLength,
    #[error("bead type {0} has no prior")]
    UnknownBead(BeadType),
    #[error("invalid aligner parameters: {0}")]
    InvalidParams(String),
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("no monotone alignment path exists under the bead inventory and band")]
    NoPath,
    #[error("invalid alignment map: {0}")]
    InvalidMap(String),
    #[error("alignment map line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// An m-to-n grouping shape.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BeadType {
    pub m: usize,
    pub n: usize,
}

impl BeadType {
    pub const fn new(m: usize, n: usize) -> Self {
        BeadType { m, n }
    }

    pub const ONE_ONE: BeadType = BeadType::new(1, 1);
    pub const ONE_ZERO: BeadType = BeadType::new(1, 0);
    pub const ZERO_ONE: BeadType = BeadType::new(0, 1);
    pub const TWO_ONE: BeadType = BeadType::new(2, 1);
    pub const ONE_TWO: BeadType = BeadType::new(1, 2);
    pub const TWO_TWO: BeadType = BeadType::new(2, 2);

    /// The aligner's bead inventory in tie-breaking order: (1,1) first, then
    /// the rest by (m, n).
    pub const INVENTORY: [BeadType; 6] = [
        BeadType::ONE_ONE,
        BeadType::ZERO_ONE,
        BeadType::ONE_ZERO,
        BeadType::ONE_TWO,
        BeadType::TWO_ONE,
        BeadType::TWO_TWO,
    ];

    pub fn is_standard(self) -> bool {
        BeadType::INVENTORY.contains(&self)
    }

    pub fn transpose(self) -> BeadType {
        BeadType::new(self.n, self.m)
    }
}

impl fmt::Display for BeadType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.m, self.n)
    }
}

/// One alignment unit: half-open spans on both sides.
///
/// Maps produced by [`compose`] may contain shapes outside
/// [`BeadType::INVENTORY`] (e.g. 3-to-2), since composition merges beads.
#[derive(Debug, Clone, PartialEq)]
pub struct Bead {
    pub src: Range<usize>,
    pub tgt: Range<usize>,
    pub cost: f64,
}

impl Bead {
    pub fn new(src: Range<usize>, tgt: Range<usize>, cost: f64) -> Self {
        Bead { src, tgt, cost }
    }

    pub fn bead_type(&self) -> BeadType {
        BeadType::new(self.src.len(), self.tgt.len())
    }
}

/// A monotone alignment covering `[0, src_len)` and `[0, tgt_len)`.
#[derive(Debug, Clone, PartialEq)]
pub struct AlignmentMap {
    pub beads: Vec<Bead>,
    pub src_len: usize,
    pub tgt_len: usize,
}

impl AlignmentMap {
    /// Builds a map and checks its invariants.
    pub fn new(beads: Vec<Bead>, src_len: usize, tgt_len: usize) -> Result<Self, AlignError> {
        let map = AlignmentMap {
            beads,
            src_len,
            tgt_len,
        };
        map.validate()?;
        Ok(map)
    }

    /// `k` one-to-one beads `i <-> i` with zero cost.
    pub fn identity(k: usize) -> Self {
        AlignmentMap {
            beads: (0..k).map(|i| Bead::new(i..i + 1, i..i + 1, 0.0)).collect(),
            src_len: k,
            tgt_len: k,
        }
    }

    /// Swaps the two sides of every bead.
    pub fn invert(&self) -> Self {
        AlignmentMap {
            beads: self
                .beads
                .iter()
                .map(|b| Bead::new(b.tgt.clone(), b.src.clone(), b.cost))
                .collect(),
            src_len: self.tgt_len,
            tgt_len: self.src_len,
        }
    }

    /// Sum of bead costs, accumulated in bead order.
    pub fn total_cost(&self) -> f64 {
        self.beads.iter().fold(0.0, |acc, b| acc + b.cost)
    }

    pub fn bead_types(&self) -> Vec<BeadType> {
        self.beads.iter().map(Bead::bead_type).collect()
    }

    pub fn len(&self) -> usize {
        self.beads.len()
    }

    pub fn is_empty(&self) -> bool {
        self.beads.is_empty()
    }

    /// Bead boundaries as `(src, tgt)` positions, from `(0, 0)` to
    /// `(src_len, tgt_len)`.
    pub fn breakpoints(&self) -> Vec<(usize, usize)> {
        std::iter::once((0, 0))
            .chain(self.beads.iter().map(|b| (b.src.end, b.tgt.end)))
            .collect()
    }

    /// Checks monotonicity and exact coverage of both sides.
    pub fn validate(&self) -> Result<(), AlignError> {
        let (mut s, mut t) = (0, 0);
        for (k, b) in self.beads.iter().enumerate() {
            if b.src.start != s || b.tgt.start != t {
                return Err(AlignError::InvalidMap(format!(
                    "bead {k} starts at ({}, {}), expected ({s}, {t})",
                    b.src.start, b.tgt.start
                )));
            }
            if b.src.end < b.src.start || b.tgt.end < b.tgt.start {
                return Err(AlignError::InvalidMap(format!("bead {k} has a reversed span")));
            }
            if b.src.is_empty() && b.tgt.is_empty() {
                return Err(AlignError::InvalidMap(format!("bead {k} is empty on both sides")));
            }
            if !b.cost.is_finite() || b.cost < 0.0 {
                return Err(AlignError::InvalidMap(format!("bead {k} has cost {}", b.cost)));
            }
            s = b.src.end;
            t = b.tgt.end;
        }
        if (s, t) != (self.src_len, self.tgt_len) {
            return Err(AlignError::InvalidMap(format!(
                "beads cover ({s}, {t}) of ({}, {})",
                self.src_len, self.tgt_len
            )));
        }
        Ok(())
    }
}

/// Length-model and search parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct AlignerParams {
    pub bead_priors: BTreeMap<BeadType, f64>,
    /// Expected target characters per source character.
    pub length_ratio_mean: f64,
    /// Variance of the length difference per source character.
    pub length_ratio_var: f64,
    pub lexical_pass: bool,
    pub lexical_weight: f64,
    /// Search band half-width in segments. `None` means unbounded below
    /// [`AUTO_BAND_THRESHOLD`] segments and [`AUTO_BAND_WIDTH`] above; for
    /// the lexical pass it is the corridor around the first-pass path
    /// (default [`DEFAULT_LEXICAL_CORRIDOR`]).
    pub band_width: Option<usize>,
}

/// Gale–Church priors: 1-1 0.89, 1-0/0-1 0.0099 together, 2-1/1-2 0.089
/// together, 2-2 0.011. Length model c = 1, s² = 6.8.
impl Default for AlignerParams {
    fn default() -> Self {
        let bead_priors = [
            (BeadType::ONE_ONE, 0.89),
            (BeadType::ONE_ZERO, 0.0099 / 2.0),
            (BeadType::ZERO_ONE, 0.0099 / 2.0),
            (BeadType::TWO_ONE, 0.089 / 2.0),
            (BeadType::ONE_TWO, 0.089 / 2.0),
            (BeadType::TWO_TWO, 0.011),
        ]
        .into_iter()
        .collect();
        AlignerParams {
            bead_priors,
            length_ratio_mean: 1.0,
            length_ratio_var: 6.8,
            lexical_pass: false,
            lexical_weight: 0.5,
            band_width: None,
        }
    }
}

impl AlignerParams {
    pub fn validate(&self) -> Result<(), AlignError> {
        let bad = |m: String| Err(AlignError::InvalidParams(m));
        if self.bead_priors.is_empty() {
            return bad("no bead priors".into());
        }
        let mut sum = 0.0;
        for (bt, p) in &self.bead_priors {
            if !bt.is_standard() {
                return bad(format!("bead type {bt} is not in the inventory"));
            }
            if !(p.is_finite() && *p > 0.0) {
                return bad(format!("prior for {bt} must be positive, got {p}"));
            }
            sum += p;
        }
        if sum > 1.0 + 1e-9 {
            return bad(format!("priors sum to {sum} > 1"));
        }
        if !(self.length_ratio_mean.is_finite() && self.length_ratio_mean > 0.0) {
            return bad(format!("length ratio mean must be positive, got {}", self.length_ratio_mean));
        }
        if !(self.length_ratio_var.is_finite() && self.length_ratio_var > 0.0) {
            return bad(format!("length ratio variance must be positive, got {}", self.length_ratio_var));
        }
        if !(0.0..=1.0).contains(&self.lexical_weight) {
            return bad(format!("lexical weight {} outside [0, 1]", self.lexical_weight));
        }
        if self.band_width == Some(0) {
            return bad("band width must be at least 1".into());
        }
        Ok(())
    }

    pub fn prior(&self, bead: BeadType) -> Result<f64, AlignError> {
        self.bead_priors
            .get(&bead)
            .copied()
            .ok_or(AlignError::UnknownBead(bead))
    }

    /// Inventory bead types that have a prior, in tie-breaking order.
    pub(crate) fn active_beads(&self) -> Vec<BeadType> {
        BeadType::INVENTORY
            .into_iter()
            .filter(|b| self.bead_priors.contains_key(b))
            .collect()
    }

    fn first_pass_band(&self, src_len: usize, tgt_len: usize) -> Option<usize> {
        self.band_width.or_else(|| {
            (src_len.max(tgt_len) > AUTO_BAND_THRESHOLD).then_some(AUTO_BAND_WIDTH)
        })
    }
}

pub(crate) fn char_lengths<S: AsRef<str>>(
    segments: &[S],
    side: &'static str,
) -> Result<Vec<usize>, AlignError> {
    if segments.is_empty() {
        return Err(AlignError::EmptyInput(side));
    }
    segments
        .iter()
        .enumerate()
        .map(|(index, s)| match s.as_ref().chars().count() {
            0 => Err(AlignError::EmptySegment { side, index }),
            n => Ok(n),
        })
        .collect()
}

/// Minimum-cost monotone alignment of two segment lists under the length
/// model, followed by [`lexical_refine`] when `params.lexical_pass` is set.
pub fn align<S: AsRef<str>, T: AsRef<str>>(
    src: &[S],
    tgt: &[T],
    params: &AlignerParams,
) -> Result<AlignmentMap, AlignError> {
    params.validate()?;
    let src_lens = char_lengths(src, "source")?;
    let tgt_lens = char_lengths(tgt, "target")?;
    let corridor = match params.first_pass_band(src.len(), tgt.len()) {
        Some(w) => dp::Corridor::diagonal(src.len(), tgt.len(), w),
        None => dp::Corridor::full(src.len(), tgt.len()),
    };
    let src_prefix = prefix_sums(&src_lens);
    let tgt_prefix = prefix_sums(&tgt_lens);
    let map = dp::search(&corridor, &params.active_beads(), |i, j, bt| {
        let s = src_prefix[i + bt.m] - src_prefix[i];
        let t = tgt_prefix[j + bt.n] - tgt_prefix[j];
        length_cost(s, t, bt, params).expect("bead types come from the priors; lengths positive")
    })?;
    if params.lexical_pass {
        lexical_refine(&map, src, tgt, params)
    } else {
        Ok(map)
    }
}

pub(crate) fn prefix_sums(lens: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(lens.len() + 1);
    out.push(0);
    for l in lens {
        out.push(out.last().unwrap() + l);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_maps() {
        assert!(AlignmentMap::identity(0).is_empty());
        let id = AlignmentMap::identity(3);
        let spans: Vec<_> = id.beads.iter().map(|b| (b.src.start, b.tgt.start)).collect();
        assert_eq!(spans, vec![(0, 0), (1, 1), (2, 2)]);
        id.validate().unwrap();
    }

    #[test]
    fn inversion() {
        let m = AlignmentMap::new(vec![Bead::new(0..2, 0..1, 1.5)], 2, 1).unwrap();
        let inv = m.invert();
        assert_eq!(inv.beads, vec![Bead::new(0..1, 0..2, 1.5)]);
        assert_eq!((inv.src_len, inv.tgt_len), (1, 2));
        assert_eq!(inv.invert(), m);
        assert_eq!(AlignmentMap::identity(4).invert(), AlignmentMap::identity(4));
    }

    #[test]
    fn validation_catches_gaps_and_overlaps() {
        let gap = AlignmentMap {
            beads: vec![Bead::new(0..1, 0..1, 0.0), Bead::new(2..3, 1..2, 0.0)],
            src_len: 3,
            tgt_len: 2,
        };
        assert!(gap.validate().is_err());
        let short = AlignmentMap {
            beads: vec![Bead::new(0..1, 0..1, 0.0)],
            src_len: 2,
            tgt_len: 1,
        };
        assert!(short.validate().is_err());
        let empty_bead = AlignmentMap {
            beads: vec![Bead::new(0..0, 0..0, 0.0)],
            src_len: 0,
            tgt_len: 0,
        };
        assert!(empty_bead.validate().is_err());
    }

    #[test]
    fn default_params_are_valid() {
        let p = AlignerParams::default();
        p.validate().unwrap();
        assert_eq!(p.active_beads(), BeadType::INVENTORY.to_vec());
    }

    #[test]
    fn bad_params_rejected() {
        let mut p = AlignerParams::default();
        p.length_ratio_var = 0.0;
        assert!(p.validate().is_err());
        let mut p = AlignerParams::default();
        p.bead_priors.insert(BeadType::new(3, 1), 0.001);
        assert!(p.validate().is_err());
        let mut p = AlignerParams::default();
        p.bead_priors.insert(BeadType::ONE_ONE, 0.99);
        assert!(p.validate().is_err());
        let mut p = AlignerParams::default();
        p.band_width = Some(0);
        assert!(p.validate().is_err());
        let mut p = AlignerParams::default();
        p.lexical_weight = 1.5;
        assert!(p.validate().is_err());
    }

    #[test]
    fn align_rejects_empty_input() {
        let p = AlignerParams::default();
        let none: [&str; 0] = [];
        assert_eq!(align(&none, &["a"], &p), Err(AlignError::EmptyInput("source")));
        assert_eq!(
            align(&["a", ""], &["a"], &p),
            Err(AlignError::EmptySegment { side: "source", index: 1 })
        );
    }

    #[test]
    fn identical_lists_align_one_to_one() {
        let segs = ["one short line", "a much longer line of caption text", "x", "end."];
        let map = align(&segs, &segs, &AlignerParams::default()).unwrap();
        assert_eq!(map.bead_types(), vec![BeadType::ONE_ONE; 4]);
    }

    #[test]
    fn split_caption_becomes_one_to_two() {
        let src = ["French sign language was brought to America during the early 1800s,"];
        let tgt = ["French sign language was brought", "to America during the early 1800s,"];
        let map = align(&src, &tgt, &AlignerParams::default()).unwrap();
        assert_eq!(map.bead_types(), vec![BeadType::ONE_TWO]);
    }

    #[test]
    fn banded_search_matches_full_search_near_diagonal() {
        let src: Vec<String> = (0..40).map(|i| "w".repeat(5 + (i * 7) % 23)).collect();
        let tgt: Vec<String> = (0..40).map(|i| "w".repeat(5 + (i * 7) % 23)).collect();
        let full = align(&src, &tgt, &AlignerParams::default()).unwrap();
        let banded = align(
            &src,
            &tgt,
            &AlignerParams {
                band_width: Some(3),
                ..AlignerParams::default()
            },
        )
        .unwrap();
        assert_eq!(full, banded);
    }

    #[test]
    fn missing_deletion_priors_can_leave_no_path() {
        let mut p = AlignerParams::default();
        p.bead_priors.retain(|bt, _| *bt == BeadType::ONE_ONE);
        assert_eq!(align(&["a", "b"], &["a"], &p), Err(AlignError::NoPath));
    }
}

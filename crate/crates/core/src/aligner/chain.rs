//! Joint synchronization of several streams linked by a chain of alignment
//! maps (level 0 → level 1 → … → level k).

use std::ops::Range;

use super::{AlignError, AlignmentMap, Bead};

/// A monotone segmentation shared by every level of a map chain.
///
/// Each breakpoint holds one position per level; consecutive breakpoints
/// delimit a segment whose spans on all levels correspond to one another.
#[derive(Debug, Clone, PartialEq)]
pub struct SyncChain {
    lens: Vec<usize>,
    points: Vec<Vec<usize>>,
    costs: Vec<f64>,
}

/// One synchronized unit of a [`SyncChain`].
#[derive(Debug, Clone, PartialEq)]
pub struct ChainSegment {
    pub spans: Vec<Range<usize>>,
    pub cost: f64,
}

impl SyncChain {
    /// A two-level chain equal to `map`.
    pub fn from_map(map: &AlignmentMap) -> Self {
        SyncChain {
            lens: vec![map.src_len, map.tgt_len],
            points: map.breakpoints().into_iter().map(|(s, t)| vec![s, t]).collect(),
            costs: map.beads.iter().map(|b| b.cost).collect(),
        }
    }

    pub fn levels(&self) -> usize {
        self.lens.len()
    }

    pub fn level_len(&self, level: usize) -> usize {
        self.lens[level]
    }

    /// Extends the chain with `map`, whose source side is the chain's last
    /// level.
    ///
    /// Segments are cut only where both the chain and `map` have a boundary
    /// at the same position of the shared level, giving the coarsest
    /// segmentation consistent with both. Where several boundaries sit at
    /// the same shared position (beads empty on the shared level), the
    /// chain's come first, so empty-side beads stay separate.
    pub fn then(&self, map: &AlignmentMap) -> Result<SyncChain, AlignError> {
        let last = self.lens.len() - 1;
        if self.lens[last] != map.src_len {
            return Err(AlignError::LengthMismatch {
                left: self.lens[last],
                right: map.src_len,
            });
        }
        let theirs = map.breakpoints();
        let mut cuts: Vec<(usize, usize)> = Vec::new();
        let (mut o, mut k) = (0, 0);
        while o < self.points.len() && k < theirs.len() {
            let (po, pk) = (self.points[o][last], theirs[k].0);
            if po < pk {
                o += 1;
                continue;
            }
            if pk < po {
                k += 1;
                continue;
            }
            let mut o_end = o;
            while o_end + 1 < self.points.len() && self.points[o_end + 1][last] == po {
                o_end += 1;
            }
            let mut k_end = k;
            while k_end + 1 < theirs.len() && theirs[k_end + 1].0 == pk {
                k_end += 1;
            }
            cuts.extend((o..=o_end).map(|oi| (oi, k)));
            cuts.extend((k + 1..=k_end).map(|ki| (o_end, ki)));
            o = o_end + 1;
            k = k_end + 1;
        }

        let points = cuts
            .iter()
            .map(|&(oi, ki)| {
                let mut p = self.points[oi].clone();
                p.push(theirs[ki].1);
                p
            })
            .collect();
        let costs = cuts
            .windows(2)
            .map(|w| {
                let ((o1, k1), (o2, k2)) = (w[0], w[1]);
                let ours = self.costs[o1..o2].iter().fold(0.0, |acc, c| acc + c);
                map.beads[k1..k2].iter().fold(ours, |acc, b| acc + b.cost)
            })
            .collect();
        let mut lens = self.lens.clone();
        lens.push(map.tgt_len);
        Ok(SyncChain { lens, points, costs })
    }

    pub fn segments(&self) -> Vec<ChainSegment> {
        self.points
            .windows(2)
            .zip(&self.costs)
            .map(|(w, &cost)| ChainSegment {
                spans: w[0].iter().zip(&w[1]).map(|(&a, &b)| a..b).collect(),
                cost,
            })
            .collect()
    }

    /// The alignment between two levels. Segments empty on both levels are
    /// dropped and their cost carried into the following bead (or the last
    /// one).
    pub fn project(&self, from: usize, to: usize) -> AlignmentMap {
        let mut beads: Vec<Bead> = Vec::new();
        let mut carried = 0.0;
        for seg in self.segments() {
            let (src, tgt) = (seg.spans[from].clone(), seg.spans[to].clone());
            if src.is_empty() && tgt.is_empty() {
                carried += seg.cost;
                continue;
            }
            beads.push(Bead::new(src, tgt, carried + seg.cost));
            carried = 0.0;
        }
        if carried != 0.0 {
            if let Some(b) = beads.last_mut() {
                b.cost += carried;
            }
        }
        AlignmentMap {
            beads,
            src_len: self.lens[from],
            tgt_len: self.lens[to],
        }
    }
}

/// Composes `ab: A → B` with `bc: B → C` into `A → C`.
pub fn compose(ab: &AlignmentMap, bc: &AlignmentMap) -> Result<AlignmentMap, AlignError> {
    if ab.tgt_len != bc.src_len {
        return Err(AlignError::LengthMismatch {
            left: ab.tgt_len,
            right: bc.src_len,
        });
    }
    ab.validate()?;
    bc.validate()?;
    Ok(SyncChain::from_map(ab).then(bc)?.project(0, 2))
}

//! Dynamic-programming search over monotone bead paths restricted to a
//! corridor of allowed lattice points.

use super::{AlignError, AlignmentMap, Bead, BeadType};

const NO_BEAD: u8 = u8::MAX;

/// Allowed lattice points: for each source position `i` in `0..=src_len`, an
/// inclusive range of target positions.
#[derive(Debug, Clone)]
pub(crate) struct Corridor {
    pub rows: Vec<(usize, usize)>,
    pub tgt_len: usize,
}

impl Corridor {
    pub fn full(src_len: usize, tgt_len: usize) -> Self {
        Corridor {
            rows: vec![(0, tgt_len); src_len + 1],
            tgt_len,
        }
    }

    /// Points with `|j*src_len - i*tgt_len| <= width*src_len`.
    pub fn diagonal(src_len: usize, tgt_len: usize, width: usize) -> Self {
        let n = src_len.max(1);
        let rows = (0..=src_len)
            .map(|i| {
                let centre = i * tgt_len;
                let slack = width * n;
                let lo = centre.saturating_sub(slack).div_ceil(n);
                let hi = ((centre + slack) / n).min(tgt_len);
                (lo.min(tgt_len), hi)
            })
            .collect();
        Corridor { rows, tgt_len }
    }

    /// Points within `width` rows and columns of a breakpoint of `map`.
    pub fn around(map: &AlignmentMap, width: usize) -> Self {
        let mut lo = vec![usize::MAX; map.src_len + 1];
        let mut hi = vec![0usize; map.src_len + 1];
        for (i, j) in map.breakpoints() {
            lo[i] = lo[i].min(j);
            hi[i] = hi[i].max(j);
        }
        let rows = (0..=map.src_len)
            .map(|i| {
                let from = i.saturating_sub(width);
                let to = (i + width).min(map.src_len);
                let (mut l, mut h) = (usize::MAX, 0);
                for r in from..=to {
                    if lo[r] != usize::MAX {
                        l = l.min(lo[r]);
                        h = h.max(hi[r]);
                    }
                }
                if l == usize::MAX {
                    // No breakpoint nearby: leave the row empty.
                    (1, 0)
                } else {
                    (l.saturating_sub(width), (h + width).min(map.tgt_len))
                }
            })
            .collect();
        Corridor {
            rows,
            tgt_len: map.tgt_len,
        }
    }

    fn contains(&self, i: usize, j: usize) -> bool {
        let (lo, hi) = self.rows[i];
        lo <= j && j <= hi
    }
}

/// Finds the minimum-cost path from `(0, 0)` to `(src_len, tgt_len)`.
///
/// `bead_cost(i, j, bt)` prices a bead starting at `(i, j)`. Candidates are
/// tried in `beads` order and replace the incumbent only when strictly
/// cheaper, so earlier bead types win ties.
pub(crate) fn search<F>(corridor: &Corridor, beads: &[BeadType], mut bead_cost: F) -> Result<AlignmentMap, AlignError>
where
    F: FnMut(usize, usize, BeadType) -> f64,
{
    let src_len = corridor.rows.len() - 1;
    let tgt_len = corridor.tgt_len;
    if !corridor.contains(0, 0) || !corridor.contains(src_len, tgt_len) {
        return Err(AlignError::NoPath);
    }
    let max_m = beads.iter().map(|b| b.m).max().unwrap_or(0);

    // Costs for the rows still reachable by a bead; back-pointers for all.
    let mut costs: Vec<Vec<f64>> = Vec::with_capacity(src_len + 1);
    let mut back: Vec<Vec<u8>> = Vec::with_capacity(src_len + 1);
    for i in 0..=src_len {
        let (lo, hi) = corridor.rows[i];
        let width = (hi + 1).saturating_sub(lo);
        let mut row_cost = vec![f64::INFINITY; width];
        let mut row_back = vec![NO_BEAD; width];
        for j in lo..=hi.min(tgt_len) {
            if lo > hi {
                break;
            }
            let slot = j - lo;
            if i == 0 && j == 0 {
                row_cost[slot] = 0.0;
                continue;
            }
            for (k, bt) in beads.iter().enumerate() {
                if bt.m > i || bt.n > j {
                    continue;
                }
                let (pi, pj) = (i - bt.m, j - bt.n);
                let prev = if bt.m == 0 {
                    if !(lo <= pj && pj <= hi) {
                        continue;
                    }
                    row_cost[pj - lo]
                } else {
                    let (plo, phi) = corridor.rows[pi];
                    if !(plo <= pj && pj <= phi) {
                        continue;
                    }
                    costs[pi][pj - plo]
                };
                if !prev.is_finite() {
                    continue;
                }
                let total = prev + bead_cost(pi, pj, *bt);
                if total < row_cost[slot] {
                    row_cost[slot] = total;
                    row_back[slot] = k as u8;
                }
            }
        }
        costs.push(row_cost);
        back.push(row_back);
        if i >= max_m + 1 {
            // Rows older than the tallest bead are no longer read.
            costs[i - max_m - 1] = Vec::new();
        }
    }

    let (lo_end, _) = corridor.rows[src_len];
    if !costs[src_len][tgt_len - lo_end].is_finite() {
        return Err(AlignError::NoPath);
    }

    let mut path = Vec::new();
    let (mut i, mut j) = (src_len, tgt_len);
    while i > 0 || j > 0 {
        let lo = corridor.rows[i].0;
        let bt = beads[back[i][j - lo] as usize];
        path.push((i - bt.m, j - bt.n, bt));
        i -= bt.m;
        j -= bt.n;
    }
    path.reverse();
    let beads_out = path
        .into_iter()
        .map(|(i, j, bt)| Bead::new(i..i + bt.m, j..j + bt.n, bead_cost(i, j, bt)))
        .collect();
    Ok(AlignmentMap {
        beads: beads_out,
        src_len,
        tgt_len,
    })
}

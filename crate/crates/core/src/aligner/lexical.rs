use std::collections::{BTreeSet, HashMap};

use super::dp::{self, Corridor};
use super::{char_lengths, length_cost, prefix_sums, AlignError, AlignerParams, AlignmentMap};

/// Corridor half-width for the lexical pass when no band width is set.
pub const DEFAULT_LEXICAL_CORRIDOR: usize = 8;

/// Lowercased whitespace tokens with surrounding punctuation trimmed; a token
/// made only of punctuation is kept as is.
pub fn token_set(text: &str) -> BTreeSet<String> {
    text.split_whitespace()
        .map(|tok| {
            let core = tok.trim_matches(|c: char| !c.is_alphanumeric());
            if core.is_empty() { tok } else { core }.to_lowercase()
        })
        .collect()
}

/// Sørensen–Dice coefficient `2|A ∩ B| / (|A| + |B|)`; 0 when both are empty.
pub fn dice(a: &BTreeSet<String>, b: &BTreeSet<String>) -> f64 {
    let total = a.len() + b.len();
    if total == 0 {
        return 0.0;
    }
    let shared = a.intersection(b).count();
    2.0 * shared as f64 / total as f64
}

fn union(sets: &[Vec<u32>]) -> Vec<u32> {
    match sets {
        [] => Vec::new(),
        [one] => one.clone(),
        _ => {
            let mut v: Vec<u32> = sets.iter().flatten().copied().collect();
            v.sort_unstable();
            v.dedup();
            v
        }
    }
}

/// [`dice`] over sorted, deduplicated token ids.
fn sorted_dice(a: &[u32], b: &[u32]) -> f64 {
    let total = a.len() + b.len();
    if total == 0 {
        return 0.0;
    }
    let (mut i, mut j, mut shared) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                shared += 1;
                i += 1;
                j += 1;
            }
        }
    }
    2.0 * shared as f64 / total as f64
}

/// Second alignment pass mixing length cost with token overlap:
/// `(1 - w) * length_cost + w * (1 - dice)`, searched within a corridor
/// around `map`. A weight of 0 returns `map` unchanged.
pub fn lexical_refine<S: AsRef<str>, T: AsRef<str>>(
    map: &AlignmentMap,
    src: &[S],
    tgt: &[T],
    params: &AlignerParams,
) -> Result<AlignmentMap, AlignError> {
    params.validate()?;
    if !params.lexical_pass {
        return Err(AlignError::InvalidParams("lexical pass is disabled".into()));
    }
    if map.src_len != src.len() {
        return Err(AlignError::LengthMismatch { left: map.src_len, right: src.len() });
    }
    if map.tgt_len != tgt.len() {
        return Err(AlignError::LengthMismatch { left: map.tgt_len, right: tgt.len() });
    }
    map.validate()?;
    let weight = params.lexical_weight;
    if weight == 0.0 {
        return Ok(map.clone());
    }

    let src_prefix = prefix_sums(&char_lengths(src, "source")?);
    let tgt_prefix = prefix_sums(&char_lengths(tgt, "target")?);
    let mut ids: HashMap<String, u32> = HashMap::new();
    let mut intern = |text: &str| -> Vec<u32> {
        let mut v: Vec<u32> = token_set(text)
            .into_iter()
            .map(|tok| {
                let next = ids.len() as u32;
                *ids.entry(tok).or_insert(next)
            })
            .collect();
        v.sort_unstable();
        v
    };
    let src_tokens: Vec<Vec<u32>> = src.iter().map(|s| intern(s.as_ref())).collect();
    let tgt_tokens: Vec<Vec<u32>> = tgt.iter().map(|t| intern(t.as_ref())).collect();

    let corridor = Corridor::around(map, params.band_width.unwrap_or(DEFAULT_LEXICAL_CORRIDOR));
    dp::search(&corridor, &params.active_beads(), |i, j, bt| {
        let s = src_prefix[i + bt.m] - src_prefix[i];
        let t = tgt_prefix[j + bt.n] - tgt_prefix[j];
        let length = length_cost(s, t, bt, params).expect("bead types come from the priors");
        let overlap = sorted_dice(&union(&src_tokens[i..i + bt.m]), &union(&tgt_tokens[j..j + bt.n]));
        (1.0 - weight) * length + weight * (1.0 - overlap)
    })
}

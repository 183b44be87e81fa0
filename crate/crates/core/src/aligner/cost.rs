use super::{AlignError, AlignerParams, BeadType};

/// Lower bound applied to the tail probability before taking its log.
pub const TAIL_FLOOR: f64 = 1e-12;

/// `P(|Z| >= x)` for a standard normal `Z`, i.e. `2 * (1 - Phi(x))`.
pub fn gaussian_two_sided_tail(x: f64) -> f64 {
    libm::erfc(x.abs() / std::f64::consts::SQRT_2)
}

/// Gale–Church bead cost: `-ln prior(bead) - ln P(|delta|)`.
///
/// `delta = (t - s*c) / sqrt(s2 * (s + t/c) / 2)` where `s`, `t` are the
/// character counts of the two sides. A side holding zero segments counts as
/// one character. The denominator uses the mean of both sides, which keeps
/// the cost symmetric under swapping sides when `c = 1`.
pub fn length_cost(
    src_chars: usize,
    tgt_chars: usize,
    bead: BeadType,
    params: &AlignerParams,
) -> Result<f64, AlignError> {
    if src_chars == 0 && tgt_chars == 0 {
        return Err(AlignError::ZeroLength);
    }
    let prior = params.prior(bead)?;
    let s = if bead.m == 0 { 1.0 } else { src_chars as f64 };
    let t = if bead.n == 0 { 1.0 } else { tgt_chars as f64 };
    let c = params.length_ratio_mean;
    let mean = (s + t / c) / 2.0;
    let delta = (t - s * c) / (params.length_ratio_var * mean).sqrt();
    let tail = gaussian_two_sided_tail(delta).max(TAIL_FLOOR);
    // `+ 0.0` folds a -0.0 (prior of exactly 1, delta 0) into +0.0.
    Ok(-prior.ln() - tail.ln() + 0.0)
}

use std::fmt::Write as _;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum StatsError {
    #[error("statistics need at least one sentence")]
    Empty,
}

/// Sentence length statistics in tokens.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LengthStats {
    pub count: usize,
    pub mean: f64,
    /// Population standard deviation.
    pub std: f64,
    pub max: usize,
    /// Sentences longer than 100 tokens, per thousand.
    pub per_mille_over_100: f64,
}

/// Statistics of per-sentence token differences (first minus second).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiffStats {
    pub count: usize,
    pub mean: f64,
    pub std: f64,
}

fn mean_std(values: impl Iterator<Item = f64> + Clone) -> (usize, f64, f64) {
    let (n, sum) = values.clone().fold((0usize, 0.0), |(n, s), v| (n + 1, s + v));
    let mean = sum / n as f64;
    let var = values.map(|v| (v - mean) * (v - mean)).sum::<f64>() / n as f64;
    (n, mean, var.sqrt())
}

pub fn length_stats(sentence_token_counts: &[usize]) -> Result<LengthStats, StatsError> {
    let max = *sentence_token_counts.iter().max().ok_or(StatsError::Empty)?;
    let (count, mean, std) = mean_std(sentence_token_counts.iter().map(|&c| c as f64));
    let long = sentence_token_counts.iter().filter(|&&c| c > 100).count();
    Ok(LengthStats {
        count,
        mean,
        std,
        max,
        per_mille_over_100: 1000.0 * long as f64 / count as f64,
    })
}

pub fn diff_stats(pairs: &[(usize, usize)]) -> Result<DiffStats, StatsError> {
    if pairs.is_empty() {
        return Err(StatsError::Empty);
    }
    let (count, mean, std) = mean_std(pairs.iter().map(|&(a, b)| a as f64 - b as f64));
    Ok(DiffStats { count, mean, std })
}

/// One report line: a strategy with per-language length statistics and the
/// difference statistics between the two languages.
#[derive(Debug, Clone, PartialEq)]
pub struct StatsRow {
    pub strategy: String,
    pub first: LengthStats,
    pub second: LengthStats,
    pub diff: DiffStats,
}

/// Tab-separated report; length columns in the order μ, σ, max, ‰>100.
pub fn render_tsv(rows: &[StatsRow], first_lang: &str, second_lang: &str) -> String {
    let mut out = String::from("strategy\tsentences");
    for lang in [first_lang, second_lang] {
        let _ = write!(out, "\t{lang}_mean\t{lang}_std\t{lang}_max\t{lang}_permille_gt100");
    }
    let _ = writeln!(out, "\tdiff_mean\tdiff_std");
    for r in rows {
        let _ = write!(out, "{}\t{}", r.strategy, r.first.count);
        for s in [&r.first, &r.second] {
            let _ = write!(out, "\t{:.4}\t{:.4}\t{}\t{:.4}", s.mean, s.std, s.max, s.per_mille_over_100);
        }
        let _ = writeln!(out, "\t{:.4}\t{:.4}", r.diff.mean, r.diff.std);
    }
    out
}

/// Human-readable table with one decimal, same column order as the TSV.
pub fn render_table(rows: &[StatsRow], first_lang: &str, second_lang: &str) -> String {
    let width = rows.iter().map(|r| r.strategy.len()).max().unwrap_or(0).max(8);
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:width$}  {:^29}  {:^29}  {:^13}",
        "",
        first_lang,
        second_lang,
        format!("{first_lang}-{second_lang}")
    );
    let head = format!("{:>6} {:>6} {:>7} {:>7}", "μ", "σ", "max", "‰>100");
    let _ = writeln!(out, "{:width$}  {head}  {head}  {:>6} {:>6}", "strategy", "μ", "σ");
    for r in rows {
        let _ = write!(out, "{:width$}", r.strategy);
        for s in [&r.first, &r.second] {
            let _ = write!(out, "  {:>6.1} {:>6.1} {:>7} {:>7.1}", s.mean, s.std, s.max, s.per_mille_over_100);
        }
        let _ = writeln!(out, "  {:>6.2} {:>6.1}", r.diff.mean, r.diff.std);
    }
    out
}

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, Context};
use log::{info, warn};
use pivot_corpus::corpus::{
    diff_stats, export_bitext, length_stats, partition as split_talks, render_table, render_tsv, ExportError,
    ExportSummary, Partition, StatsRow, TalkSentences,
};
use pivot_corpus::ingest::intersect_collections;
use pivot_corpus::pivot::{percent, pivot_align, DivergenceReport};
use pivot_corpus::rebuild::{rebuild as rebuild_talk, Stream};
use pivot_corpus::textproc::{count_tokens, LangProfile};
use rayon::prelude::*;

use crate::config::load_collection;
use crate::tsv;
use crate::{Failure, Outcome, PipelineConfig};

fn io_failure(error: anyhow::Error) -> Failure {
    Failure { code: 1, error }
}

/// Removes `dir` if present and creates it empty.
fn fresh_dir(dir: &Path) -> Outcome<()> {
    if dir.exists() {
        fs::remove_dir_all(dir)
            .with_context(|| format!("removing {}", dir.display()))
            .map_err(io_failure)?;
    }
    fs::create_dir_all(dir)
        .with_context(|| format!("creating {}", dir.display()))
        .map_err(io_failure)
}

fn write_file(path: &Path, contents: &str) -> Outcome<()> {
    fs::write(path, contents)
        .with_context(|| format!("writing {}", path.display()))
        .map_err(io_failure)
}

/// Talk ids become file names, so they are kept to a portable alphabet.
fn safe_talk_id(id: &str) -> bool {
    !id.is_empty()
        && !id.starts_with('.')
        && id.chars().all(|c| c.is_ascii_alphanumeric() || matches!(c, '-' | '_' | '.'))
}

/// Sorted talk ids of the `*.tsv` files in `dir`.
fn list_talks(dir: &Path) -> Outcome<Vec<String>> {
    let mut ids: Vec<String> = fs::read_dir(dir)
        .with_context(|| format!("listing {}", dir.display()))
        .map_err(Failure::usage)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "tsv"))
        .filter_map(|p| p.file_stem().and_then(|s| s.to_str()).map(str::to_string))
        .collect();
    ids.sort();
    Ok(ids)
}

fn require_stage(dir: &Path, stage: &str) -> Outcome<()> {
    if !dir.is_dir() {
        return Err(Failure::usage(anyhow!(
            "missing {stage} output {}; run `{stage}` first",
            dir.display()
        )));
    }
    Ok(())
}

fn talks_dir(config: &PipelineConfig) -> PathBuf {
    config.align_dir().join("talks")
}

#[derive(Debug, Clone, PartialEq)]
pub struct AlignSummary {
    pub reports: Vec<(String, DivergenceReport)>,
    pub skipped: Vec<(String, String)>,
    pub total: DivergenceReport,
}

fn report_row(name: &str, r: &DivergenceReport) -> String {
    format!(
        "{name}\t{}\t{}\t{}\t{}\t{:.6}\t{:.6}\n",
        r.total_units, r.differing_units, r.total_words, r.differing_words, r.unit_rate, r.word_rate
    )
}

/// Aligns every talk present in all four inputs and writes
/// `align/talks/<talk>.tsv`, `align/divergence.tsv` and `align/skipped.tsv`.
pub fn align(config: &PipelineConfig) -> Outcome<AlignSummary> {
    let inputs = config.inputs.as_ref().ok_or_else(|| {
        Failure::usage(anyhow!("align needs --input for {}, {} and {}", config.names.pivot, config.names.a, config.names.b))
    })?;
    let names = &config.names;
    let pivot_a = load_collection(&inputs.pivot_a, &names.pivot, config.format)?;
    let pivot_b = if inputs.pivot_b == inputs.pivot_a {
        pivot_a.clone()
    } else {
        load_collection(&inputs.pivot_b, &names.pivot, config.format)?
    };
    let a = load_collection(&inputs.a, &names.a, config.format)?;
    let b = load_collection(&inputs.b, &names.b, config.format)?;
    let colls = [pivot_a, a, pivot_b, b];
    let ids = intersect_collections(&colls);
    info!(
        "{} talks in all inputs ({} {}, {} {}, {} {}, {} {})",
        ids.len(),
        colls[0].len(),
        inputs.pivot_a.display(),
        colls[1].len(),
        inputs.a.display(),
        colls[2].len(),
        inputs.pivot_b.display(),
        colls[3].len(),
        inputs.b.display()
    );
    if ids.is_empty() {
        return Err(Failure::empty(anyhow!("no talk is present in all inputs")));
    }

    let dir = config.align_dir();
    fresh_dir(&dir)?;
    let talks = talks_dir(config);
    fresh_dir(&talks)?;

    let pool = config.thread_pool()?;
    let results: Vec<(String, Result<DivergenceReport, String>)> = pool.install(|| {
        ids.par_iter()
            .map(|id| {
                let get = |k: usize| colls[k].get(id).expect("id is in the intersection");
                let result = if !safe_talk_id(id) {
                    Err("talk id is not usable as a file name".to_string())
                } else {
                    pivot_align(get(0), get(1), get(2), get(3), &config.params)
                        .map_err(|e| e.to_string())
                        .and_then(|out| {
                            let text = tsv::render_triples(id, &out.triples, names).map_err(|e| e.to_string())?;
                            fs::write(talks.join(format!("{id}.tsv")), text).map_err(|e| e.to_string())?;
                            Ok(out.report)
                        })
                };
                (id.clone(), result)
            })
            .collect()
    });

    let mut summary = AlignSummary { reports: Vec::new(), skipped: Vec::new(), total: DivergenceReport::default() };
    for (id, result) in results {
        match result {
            Ok(report) => {
                summary.total = summary.total.merge(&report);
                summary.reports.push((id, report));
            }
            Err(reason) => {
                warn!("talk {id} skipped: {reason}");
                summary.skipped.push((id, reason));
            }
        }
    }

    let mut table = String::from("talk_id\tunits\tdiffering_units\twords\tdiffering_words\tunit_rate\tword_rate\n");
    for (id, r) in &summary.reports {
        table.push_str(&report_row(id, r));
    }
    table.push_str(&report_row("total", &summary.total));
    write_file(&dir.join("divergence.tsv"), &table)?;
    let mut skipped = String::from("talk_id\treason\n");
    for (id, reason) in &summary.skipped {
        let _ = writeln!(skipped, "{id}\t{}", reason.replace(['\t', '\n'], " "));
    }
    write_file(&dir.join("skipped.tsv"), &skipped)?;

    if summary.reports.is_empty() {
        return Err(Failure::empty(anyhow!("all {} talks failed to align", summary.skipped.len())));
    }
    let t = &summary.total;
    println!("aligned {} talks ({} skipped)", summary.reports.len(), summary.skipped.len());
    println!(
        "pivot divergence: {} of {} units ({}), {} of {} words ({})",
        t.differing_units,
        t.total_units,
        percent(t.unit_rate),
        t.differing_words,
        t.total_words,
        percent(t.word_rate)
    );
    Ok(summary)
}

/// Rebuilds sentences of every aligned talk with each strategy into
/// `rebuild/<label>/<talk>.tsv`. Returns the sentence count per label.
pub fn rebuild(config: &PipelineConfig) -> Outcome<Vec<(String, usize)>> {
    let talks = talks_dir(config);
    require_stage(&talks, "align")?;
    let ids = list_talks(&talks)?;
    if ids.is_empty() {
        return Err(Failure::empty(anyhow!("no aligned talks in {}", talks.display())));
    }
    let dir = config.rebuild_dir();
    fresh_dir(&dir)?;
    let labels: Vec<String> = config.strategies.iter().map(|s| config.label(s)).collect();
    for label in &labels {
        fresh_dir(&dir.join(label))?;
    }

    let pool = config.thread_pool()?;
    let per_talk: Vec<Outcome<Vec<usize>>> = pool.install(|| {
        ids.par_iter()
            .map(|id| {
                let triples = tsv::read_triples(&talks.join(format!("{id}.tsv")), &config.names).map_err(Failure::usage)?;
                let mut counts = Vec::new();
                for (strategy, label) in config.strategies.iter().zip(&labels) {
                    let units = rebuild_talk(&triples, *strategy, &config.punct);
                    let text = tsv::render_sentences(id, &units, &config.names).map_err(io_failure)?;
                    write_file(&dir.join(label).join(format!("{id}.tsv")), &text)?;
                    counts.push(units.len());
                }
                Ok(counts)
            })
            .collect()
    });

    let mut totals = vec![0; labels.len()];
    for counts in per_talk {
        for (t, c) in totals.iter_mut().zip(counts?) {
            *t += c;
        }
    }
    let mut table = String::from("strategy\ttalks\tsentences\n");
    for (label, n) in labels.iter().zip(&totals) {
        let _ = writeln!(table, "{label}\t{}\t{n}", ids.len());
    }
    write_file(&dir.join("summary.tsv"), &table)?;
    let line: Vec<String> = labels.iter().zip(&totals).map(|(l, n)| format!("{l} {n}")).collect();
    println!("rebuilt {} talks; sentences per strategy: {}", ids.len(), line.join(", "));
    Ok(labels.into_iter().zip(totals).collect())
}

fn read_strategy_talks(config: &PipelineConfig, label: &str, ids: &[String]) -> Outcome<Vec<TalkSentences>> {
    let dir = config.rebuild_dir().join(label);
    ids.iter()
        .map(|id| {
            let units = tsv::read_sentences(&dir.join(format!("{id}.tsv")), &config.names).map_err(Failure::usage)?;
            Ok(TalkSentences { talk_id: id.clone(), units })
        })
        .collect()
}

/// Talk ids of the rebuilt data, checking that every strategy is present.
fn rebuilt_talks(config: &PipelineConfig) -> Outcome<Vec<String>> {
    let dir = config.rebuild_dir();
    require_stage(&dir, "rebuild")?;
    let mut ids: Option<Vec<String>> = None;
    for strategy in &config.strategies {
        let label = config.label(strategy);
        let sub = dir.join(&label);
        if !sub.is_dir() {
            return Err(Failure::usage(anyhow!("no rebuilt sentences for strategy {label} in {}", dir.display())));
        }
        let found = list_talks(&sub)?;
        match &ids {
            Some(prev) if *prev != found => {
                return Err(Failure::usage(anyhow!("strategy directories in {} hold different talks", dir.display())))
            }
            _ => ids = Some(found),
        }
    }
    Ok(ids.unwrap_or_default())
}

/// Length statistics per strategy over the train talks (all talks when no
/// split is given), written to `stats/stats.tsv` and `stats/stats.txt`.
pub fn stats(config: &PipelineConfig) -> Outcome<Vec<StatsRow>> {
    let ids = rebuilt_talks(config)?;
    let parts = split_talks(&ids, &config.split).map_err(Failure::usage)?;
    let train = parts.train().to_vec();
    let profiles = (LangProfile::for_language(&config.names.a), LangProfile::for_language(&config.names.b));

    let mut rows = Vec::new();
    for strategy in &config.strategies {
        let label = config.label(strategy);
        let talks = read_strategy_talks(config, &label, &train)?;
        let pairs: Vec<(usize, usize)> = talks
            .iter()
            .flat_map(|t| &t.units)
            .map(|u| (count_tokens(&[&u.a_text], &profiles.0), count_tokens(&[&u.b_text], &profiles.1)))
            .collect();
        if pairs.is_empty() {
            return Err(Failure::empty(anyhow!("no train sentences to measure for {label}")));
        }
        let firsts: Vec<usize> = pairs.iter().map(|p| p.0).collect();
        let seconds: Vec<usize> = pairs.iter().map(|p| p.1).collect();
        rows.push(StatsRow {
            strategy: label,
            first: length_stats(&firsts).expect("non-empty counts"),
            second: length_stats(&seconds).expect("non-empty counts"),
            diff: diff_stats(&pairs).expect("non-empty counts"),
        });
    }
    if rows.is_empty() {
        return Err(Failure::empty(anyhow!("no strategy to measure")));
    }

    let dir = config.stats_dir();
    fresh_dir(&dir)?;
    let (a, b) = (&config.names.a, &config.names.b);
    write_file(&dir.join("stats.tsv"), &render_tsv(&rows, a, b))?;
    let table = render_table(&rows, a, b);
    write_file(&dir.join("stats.txt"), &table)?;
    print!("{table}");
    Ok(rows)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionSummary {
    pub partition: Partition,
    /// Strategy label, set name and what was written.
    pub exports: Vec<(String, String, ExportSummary)>,
}

/// Splits the rebuilt talks into sets and exports one bitext per strategy and
/// set under `partition/<label>/<set>/`, plus `partition/manifest.tsv`.
pub fn partition(config: &PipelineConfig) -> Outcome<PartitionSummary> {
    let ids = rebuilt_talks(config)?;
    let parts = split_talks(&ids, &config.split).map_err(Failure::usage)?;
    let dir = config.partition_dir();
    fresh_dir(&dir)?;

    let mut manifest = String::from("set\ttalk_id\n");
    for (set, talks) in &parts.sets {
        for t in talks {
            let _ = writeln!(manifest, "{set}\t{t}");
        }
    }
    for t in &parts.excluded {
        let _ = writeln!(manifest, "excluded\t{t}");
    }
    write_file(&dir.join("manifest.tsv"), &manifest)?;

    let names = &config.names;
    let mut exports = Vec::new();
    for strategy in &config.strategies {
        let label = config.label(strategy);
        for (set, talks) in &parts.sets {
            if talks.is_empty() {
                warn!("set {set} has no available talks");
                continue;
            }
            let sentences = read_strategy_talks(config, &label, talks)?;
            let out = dir.join(&label).join(set);
            match export_bitext(
                &sentences,
                (Stream::A, Stream::B),
                (&names.a, &names.b),
                &out,
                set,
                config.drop_divergent,
            ) {
                Ok(summary) => {
                    println!(
                        "{label}/{set}: {} talks, {} sentences ({} divergent dropped)",
                        talks.len(),
                        summary.lines,
                        summary.dropped
                    );
                    exports.push((label.clone(), set.clone(), summary));
                }
                Err(ExportError::Empty) => warn!("{label}/{set}: no sentences"),
                Err(e) => return Err(io_failure(anyhow!(e))),
            }
        }
    }
    Ok(PartitionSummary { partition: parts, exports })
}

/// All stages in order.
pub fn pipeline(config: &PipelineConfig) -> Outcome<()> {
    align(config)?;
    rebuild(config)?;
    stats(config)?;
    partition(config)?;
    Ok(())
}

//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails.

#[path = "../../core/tests/common/mod.rs"]
mod common;
mod support;

use std::collections::BTreeMap;
use std::process::Command;
use std::time::Instant;

use common::{check_map, exhaustive_min_cost, random_map, random_segments, synthetic_talk};
use pivot_corpus::aligner::{align, compose, AlignerParams, AlignmentMap, BeadType};
use pivot_corpus::corpus::{diff_stats, length_stats, DiffStats, LengthStats};
use pivot_corpus::fixtures::{self, talk, TrilingualTalk};
use pivot_corpus::pivot::{percent, pivot_align, PivotAlignment};
use pivot_corpus::rebuild::{rebuild, PunctProfile, RebuildStrategy, SentenceUnit, Stream};
use pivot_corpus::textproc::LangProfile;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn run_talk(t: &TrilingualTalk) -> Result<PivotAlignment, String> {
    pivot_align(&t.pivot, &t.a, t.pivot_b(), &t.b, &AlignerParams::default()).map_err(|e| e.to_string())
}

fn oracle_equivalence() -> Check {
    let params = AlignerParams::default();
    let mut rng = StdRng::seed_from_u64(0xacce_0001);
    let start = Instant::now();
    let mut mismatches = 0;
    for _ in 0..1000 {
        let src = random_segments(&mut rng, 8, 12);
        let tgt = random_segments(&mut rng, 8, 12);
        let map = align(&src, &tgt, &params).map_err(|e| e.to_string())?;
        if map.total_cost() != exhaustive_min_cost(&src, &tgt, &params) {
            mismatches += 1;
        }
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(mismatches == 0, format!("{mismatches} of 1000 instances differ from enumeration"))?;
    ensure(secs < 60.0, format!("took {secs:.1} s"))?;
    Ok(format!("1000 instances, exact cost match, {secs:.1} s"))
}

fn map_invariants() -> Check {
    let mut rng = StdRng::seed_from_u64(0xacce_0002);
    let lexical = AlignerParams { lexical_pass: true, ..Default::default() };
    let mut checked = 0;
    let mut violations = Vec::new();
    let mut check = |m: &AlignmentMap, s: usize, t: usize, what: &str| {
        checked += 1;
        if let Err(e) = check_map(m, s, t) {
            violations.push(format!("{what}: {e}"));
        }
    };
    for _ in 0..1000 {
        let src = random_segments(&mut rng, 8, 12);
        let tgt = random_segments(&mut rng, 8, 12);
        let (n, m) = (src.len(), tgt.len());
        let map = align(&src, &tgt, &AlignerParams::default()).map_err(|e| e.to_string())?;
        check(&map, n, m, "align");
        check(&map.invert(), m, n, "invert");
        let lex = align(&src, &tgt, &lexical).map_err(|e| e.to_string())?;
        check(&lex, n, m, "align (lexical)");
        let k = rng.gen_range(1..10);
        let next = random_map(&mut rng, m, k);
        let composed = compose(&map, &next).map_err(|e| e.to_string())?;
        check(&composed, n, k, "compose");
        check(&composed.invert(), k, n, "invert(compose)");
        check(&compose(&map, &map.invert()).map_err(|e| e.to_string())?, n, n, "compose(m, invert m)");
    }
    ensure(violations.is_empty(), format!("{} violations, first: {}", violations.len(), violations[0..1.min(violations.len())].join("")))?;
    Ok(format!("{checked} maps from align/compose/invert, 0 violations"))
}

fn pivot_identity() -> Check {
    let mut rng = StdRng::seed_from_u64(0xacce_0003);
    for k in 0..100 {
        let starved = rng.gen_bool(0.3);
        let t = synthetic_talk(&mut rng, &k.to_string(), starved);
        let out = pivot_align(&t.pivot, &t.a, &t.pivot, &t.b, &AlignerParams::default()).map_err(|e| e.to_string())?;
        let n = t.pivot.captions.len();
        ensure(
            out.map_pp.breakpoints() == AlignmentMap::identity(n).breakpoints()
                && out.map_pp.bead_types().iter().all(|&b| b == BeadType::ONE_ONE),
            format!("talk {k}: step-2 map is not the identity"),
        )?;
        ensure(
            out.report.unit_rate == 0.0 && out.report.word_rate == 0.0,
            format!("talk {k}: rates {} / {}", out.report.unit_rate, out.report.word_rate),
        )?;
    }
    Ok("100 talks, identity step-2 map, rates exactly 0".into())
}

fn golden_1443() -> Check {
    let out = run_talk(&fixtures::talk_1443())?;
    let punct = PunctProfile::default();
    let texts = |units: &[SentenceUnit]| -> Vec<String> { units.iter().map(|u| u.pivot_text.clone()).collect() };
    let pivot = rebuild(&out.triples, RebuildStrategy::PivotPunct, &punct);
    ensure(
        texts(&pivot) == fixtures::TALK_1443_PIVOT_SENTENCES,
        format!("pivot strategy gave {:?}", texts(&pivot)),
    )?;
    let hebrew = rebuild(&out.triples, RebuildStrategy::StrongPunctSide(Stream::B), &punct);
    ensure(hebrew.len() == 1, format!("Hebrew punctuation gave {} sentences", hebrew.len()))?;
    ensure(hebrew[0].pivot_text == fixtures::TALK_1443_PIVOT_SENTENCES.join(" "), "Hebrew sentence text differs")?;
    let none = rebuild(&out.triples, RebuildStrategy::None, &punct);
    ensure(none.len() == 5, format!("none gave {} units", none.len()))?;
    Ok("pivot: 3 exact sentences; strong-punct he: 1; none: 5".into())
}

fn golden_2357() -> Check {
    let t = fixtures::talk_2357();
    let out = run_talk(&t)?;
    let unit = out
        .triples
        .iter()
        .find(|u| u.pivot_caption_ids.contains(&1))
        .ok_or("no unit holds the split caption")?;
    let times: Vec<(u64, u64)> = unit.a_caption_ids.iter().map(|&i| (t.a.captions[i].start_ms, t.a.captions[i].end_ms)).collect();
    ensure(unit.pivot_caption_ids == [1], format!("pivot ids {:?}", unit.pivot_caption_ids))?;
    ensure(times == [(53851, 56091), (56091, 59091)], format!("Arabic captions {times:?}"))?;
    ensure(unit.b_caption_ids == [1], format!("Hebrew ids {:?}", unit.b_caption_ids))?;
    Ok("English 53851-59091 ↔ Arabic 53851-56091 + 56091-59091 in one unit".into())
}

fn multiset(texts: impl Iterator<Item = String>, profile: &LangProfile) -> BTreeMap<String, usize> {
    let mut out = BTreeMap::new();
    for t in texts {
        for tok in profile.tokenize(&t) {
            *out.entry(tok).or_default() += 1;
        }
    }
    out
}

fn token_conservation() -> Check {
    let strategies = [
        RebuildStrategy::None,
        RebuildStrategy::PivotPunct,
        RebuildStrategy::StrongPunctSide(Stream::A),
        RebuildStrategy::StrongPunctSide(Stream::B),
    ];
    let mut rng = StdRng::seed_from_u64(0xacce_0006);
    for k in 0..100 {
        let starved = rng.gen_bool(0.3);
        let t = synthetic_talk(&mut rng, &k.to_string(), starved);
        let out = run_talk(&t)?;
        for strategy in strategies {
            let units = rebuild(&out.triples, strategy, &PunctProfile::default());
            for (stream, lang) in [(Stream::Pivot, "en"), (Stream::A, "ar"), (Stream::B, "he")] {
                let profile = LangProfile::for_language(lang);
                let before = multiset(out.triples.iter().map(|tr| stream.text(tr).to_string()), &profile);
                let after = multiset(units.iter().map(|u| u.text(stream).to_string()), &profile);
                ensure(before == after, format!("talk {k}, {strategy}, {lang}: token multisets differ"))?;
            }
        }
    }
    Ok("100 talks × 4 strategies × 3 streams, multisets equal".into())
}

fn length_spread() -> Check {
    let mut rng = StdRng::seed_from_u64(0xacce_0007);
    let (mut strngp, mut pivot): (Vec<(usize, usize)>, Vec<(usize, usize)>) = (Vec::new(), Vec::new());
    let (ar, he) = (LangProfile::for_language("ar"), LangProfile::for_language("he"));
    for k in 0..200 {
        let starved = k % 10 < 3;
        let t = synthetic_talk(&mut rng, &k.to_string(), starved);
        let out = run_talk(&t)?;
        for (strategy, sink) in [
            (RebuildStrategy::StrongPunctSide(Stream::B), &mut strngp),
            (RebuildStrategy::PivotPunct, &mut pivot),
        ] {
            for u in rebuild(&out.triples, strategy, &PunctProfile::default()) {
                sink.push((ar.tokenize(&u.a_text).len(), he.tokenize(&u.b_text).len()));
            }
        }
    }
    let mut notes = Vec::new();
    for (side, lang) in [(0, "ar"), (1, "he")] {
        let stats = |v: &[(usize, usize)]| -> LengthStats {
            let counts: Vec<usize> = v.iter().map(|p| if side == 0 { p.0 } else { p.1 }).collect();
            length_stats(&counts).expect("non-empty")
        };
        let (s, p) = (stats(&strngp), stats(&pivot));
        ensure(s.std > p.std, format!("{lang}: σ strngP {:.1} ≤ σ pivot {:.1}", s.std, p.std))?;
        ensure(
            s.per_mille_over_100 >= 4.0 * p.per_mille_over_100,
            format!("{lang}: ‰ strngP {:.1} < 4 × ‰ pivot {:.1}", s.per_mille_over_100, p.per_mille_over_100),
        )?;
        notes.push(format!(
            "{lang} σ {:.1} vs {:.1}, ‰>100 {:.1} vs {:.1}",
            s.std, p.std, s.per_mille_over_100, p.per_mille_over_100
        ));
    }
    Ok(format!("200 talks, 30% starved: {}", notes.join("; ")))
}

fn stats_units() -> Check {
    let l = length_stats(&[2, 4]).map_err(|e| e.to_string())?;
    let expected = LengthStats { count: 2, mean: 3.0, std: 1.0, max: 4, per_mille_over_100: 0.0 };
    ensure(l == expected, format!("length_stats([2, 4]) = {l:?}"))?;
    let d = diff_stats(&[(5, 3), (3, 5)]).map_err(|e| e.to_string())?;
    ensure(d == DiffStats { count: 2, mean: 0.0, std: 2.0 }, format!("diff_stats = {d:?}"))?;
    Ok("(3, 1, 4, 0) and (0, 2)".into())
}

fn pipeline_determinism() -> Check {
    let dirs = [tempfile::tempdir().map_err(|e| e.to_string())?, tempfile::tempdir().map_err(|e| e.to_string())?];
    let f = support::fixture_dir();
    for dir in &dirs {
        let status = Command::new(env!("CARGO_BIN_EXE_pivot-corpus"))
            .args(["pipeline", "--langs", "ar,he", "--out"])
            .arg(dir.path())
            .arg("--split")
            .arg(f.join("split.txt"))
            .args(support::input_args(&f))
            .output()
            .map_err(|e| e.to_string())?;
        ensure(status.status.success(), format!("pipeline exited with {:?}", status.status.code()))?;
    }
    let (a, b) = (support::tree(dirs[0].path()), support::tree(dirs[1].path()));
    ensure(!a.is_empty(), "no output")?;
    ensure(a == b, "output trees differ")?;
    Ok(format!("{} files byte-identical across two runs", a.len()))
}

fn divergence_arithmetic() -> Check {
    let mut rng = StdRng::seed_from_u64(0xacce_0010);
    let texts: Vec<String> = (0..500)
        .map(|k| format!("caption {k} {}", common::random_sentence(&mut rng, 8)))
        .collect();
    let mut changed = texts.clone();
    for k in [137, 402] {
        changed[k] = changed[k].replacen("caption", "Caption", 1);
    }
    let cues = |v: &[String]| -> Vec<(u64, u64, String)> {
        v.iter().enumerate().map(|(k, t)| (k as u64 * 2000, k as u64 * 2000 + 1900, t.clone())).collect()
    };
    let t = TrilingualTalk {
        pivot: talk("1", "en", &cues(&texts)),
        pivot_b: Some(talk("1", "en", &cues(&changed))),
        a: talk("1", "ar", &cues(&texts)),
        b: talk("1", "he", &cues(&texts)),
    };
    let out = run_talk(&t)?;
    let r = out.report;
    ensure(r.total_units == 500 && r.differing_units == 2, format!("{} of {} units", r.differing_units, r.total_units))?;
    ensure(r.unit_rate == 0.004, format!("unit rate {}", r.unit_rate))?;
    ensure(percent(r.unit_rate) == "0.4%", format!("rendered {}", percent(r.unit_rate)))?;
    Ok(format!("2 of 500 units: unit_rate {} rendered \"{}\"", r.unit_rate, percent(r.unit_rate)))
}

fn main() {
    let criteria: [(&str, fn() -> Check); 10] = [
        ("aligner oracle equivalence", oracle_equivalence),
        ("alignment map invariants", map_invariants),
        ("pivot identity", pivot_identity),
        ("golden fixture talk 1443", golden_1443),
        ("golden fixture talk 2357", golden_2357),
        ("token conservation", token_conservation),
        ("sentence length spread on synthetic corpus", length_spread),
        ("statistics unit checks", stats_units),
        ("end-to-end determinism", pipeline_determinism),
        ("divergence report arithmetic", divergence_arithmetic),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}

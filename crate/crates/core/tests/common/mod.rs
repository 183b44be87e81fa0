#![allow(dead_code)]

use pivot_corpus::aligner::{length_cost, AlignerParams, AlignmentMap, BeadType};
use rand::rngs::StdRng;
use rand::Rng;

const WORDS: &[&str] = &[
    "water", "door", "home", "eyes", "the", "of", "sign", "language", "history", "color",
    "material", "america", "imagine", "close", "notice", "a", "little", "grew", "made", "out",
];

pub fn random_sentence(rng: &mut StdRng, max_words: usize) -> String {
    let n = rng.gen_range(1..=max_words);
    (0..n).map(|_| WORDS[rng.gen_range(0..WORDS.len())]).collect::<Vec<_>>().join(" ")
}

pub fn random_segments(rng: &mut StdRng, max_len: usize, max_words: usize) -> Vec<String> {
    let n = rng.gen_range(1..=max_len);
    (0..n).map(|_| random_sentence(rng, max_words)).collect()
}

/// Minimum total cost over every decomposition of both sides into beads of
/// the inventory, accumulating costs front to back.
pub fn exhaustive_min_cost(src: &[String], tgt: &[String], params: &AlignerParams) -> f64 {
    let src_lens: Vec<usize> = src.iter().map(|s| s.chars().count()).collect();
    let tgt_lens: Vec<usize> = tgt.iter().map(|s| s.chars().count()).collect();
    let mut best = f64::INFINITY;
    enumerate(&src_lens, &tgt_lens, 0, 0, 0.0, params, &mut best);
    best
}

fn enumerate(
    src: &[usize],
    tgt: &[usize],
    i: usize,
    j: usize,
    acc: f64,
    params: &AlignerParams,
    best: &mut f64,
) {
    if i == src.len() && j == tgt.len() {
        if acc < *best {
            *best = acc;
        }
        return;
    }
    for bt in BeadType::INVENTORY {
        if i + bt.m > src.len() || j + bt.n > tgt.len() {
            continue;
        }
        let s: usize = src[i..i + bt.m].iter().sum();
        let t: usize = tgt[j..j + bt.n].iter().sum();
        let cost = length_cost(s, t, bt, params).unwrap();
        enumerate(src, tgt, i + bt.m, j + bt.n, acc + cost, params, best);
    }
}

/// Monotone, contiguous, gap-free and covering both sides.
pub fn check_map(map: &AlignmentMap, src_len: usize, tgt_len: usize) -> Result<(), String> {
    if map.src_len != src_len || map.tgt_len != tgt_len {
        return Err(format!("sizes {}x{} != {src_len}x{tgt_len}", map.src_len, map.tgt_len));
    }
    let (mut i, mut j) = (0, 0);
    for (k, b) in map.beads.iter().enumerate() {
        if b.src.start != i || b.tgt.start != j {
            return Err(format!("bead {k} starts at ({}, {}), expected ({i}, {j})", b.src.start, b.tgt.start));
        }
        if b.src.end < b.src.start || b.tgt.end < b.tgt.start {
            return Err(format!("bead {k} is reversed"));
        }
        if b.src.is_empty() && b.tgt.is_empty() {
            return Err(format!("bead {k} is empty"));
        }
        i = b.src.end;
        j = b.tgt.end;
    }
    if (i, j) != (src_len, tgt_len) {
        return Err(format!("coverage ends at ({i}, {j})"));
    }
    Ok(())
}

/// A random valid map over the standard inventory.
pub fn random_map(rng: &mut StdRng, src_len: usize, tgt_len: usize) -> AlignmentMap {
    use pivot_corpus::aligner::Bead;
    let mut beads = Vec::new();
    let (mut i, mut j) = (0, 0);
    while (i, j) != (src_len, tgt_len) {
        let options: Vec<BeadType> = BeadType::INVENTORY
            .into_iter()
            .filter(|b| i + b.m <= src_len && j + b.n <= tgt_len)
            .collect();
        let bt = options[rng.gen_range(0..options.len())];
        beads.push(Bead::new(i..i + bt.m, j..j + bt.n, rng.gen_range(0.0..3.0)));
        i += bt.m;
        j += bt.n;
    }
    AlignmentMap::new(beads, src_len, tgt_len).unwrap()
}

use pivot_corpus::fixtures::{talk, TrilingualTalk};

const ARABIC: &[char] = &['ا', 'ب', 'ت', 'ج', 'د', 'ر', 'س', 'ع', 'ف', 'ق', 'ك', 'ل', 'م', 'ن', 'ه', 'و', 'ي'];
const HEBREW: &[char] = &['א', 'ב', 'ג', 'ד', 'ה', 'ו', 'ז', 'ח', 'ט', 'י', 'כ', 'ל', 'מ', 'נ', 'ס', 'ע', 'פ', 'צ', 'ק', 'ר', 'ש', 'ת'];

/// Letter-by-letter transliteration, so both translations keep the pivot's
/// lengths and word counts.
fn transliterate(word: &str, alphabet: &[char]) -> String {
    word.chars()
        .map(|c| if c.is_ascii_alphabetic() { alphabet[(c as usize) % alphabet.len()] } else { c })
        .collect()
}

fn translate(text: &str, alphabet: &[char], question: &str, strip_strong: bool) -> String {
    let words: Vec<String> = text
        .split(' ')
        .map(|w| {
            let w = transliterate(w, alphabet);
            let w = w.replace('?', question);
            if strip_strong {
                w.trim_end_matches(['.', '?', '؟']).to_string()
            } else {
                w
            }
        })
        .filter(|w| !w.is_empty())
        .collect();
    words.join(" ")
}

fn sentence_words(rng: &mut StdRng) -> usize {
    if rng.gen_bool(0.002) {
        rng.gen_range(101..140)
    } else {
        rng.gen_range(3..26)
    }
}

/// A talk of whole pivot sentences cut into captions of 3 to 9 words, with
/// two translations that keep the caption segmentation. With `starved` both
/// translations lose their sentence-final punctuation.
pub fn synthetic_talk(rng: &mut StdRng, id: &str, starved: bool) -> TrilingualTalk {
    let n_sentences = rng.gen_range(12..30);
    let mut captions: Vec<String> = Vec::new();
    for _ in 0..n_sentences {
        let n = sentence_words(rng);
        let mut words: Vec<String> = (0..n).map(|_| WORDS[rng.gen_range(0..WORDS.len())].to_string()).collect();
        if n > 4 && rng.gen_bool(0.3) {
            let k = rng.gen_range(1..n - 1);
            words[k].push(',');
        }
        words[n - 1].push(if rng.gen_bool(0.15) { '?' } else { '.' });
        let mut i = 0;
        while i < n {
            let len = rng.gen_range(3..10).min(n - i);
            captions.push(words[i..i + len].join(" "));
            i += len;
        }
    }
    let cues = |texts: Vec<String>| -> Vec<(u64, u64, String)> {
        texts.into_iter().enumerate().map(|(k, t)| (k as u64 * 3000, k as u64 * 3000 + 2900, t)).collect()
    };
    let build = |lang: &str, texts: Vec<String>| talk(id, lang, &cues(texts));
    let a = captions.iter().map(|c| translate(c, ARABIC, "؟", starved)).collect();
    let b = captions.iter().map(|c| translate(c, HEBREW, "?", starved)).collect();
    TrilingualTalk {
        pivot: build("en", captions),
        pivot_b: None,
        a: build("ar", a),
        b: build("he", b),
    }
}

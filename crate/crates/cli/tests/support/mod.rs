#![allow(dead_code)]

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use pivot_corpus::fixtures::TrilingualTalk;
use pivot_corpus::ingest::{write_collection_xml, TalkCollection};

pub fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

/// Runs the CLI in-process and returns its exit status.
pub fn run_cli(args: &[&str]) -> i32 {
    let mut all = vec!["pivot-corpus"];
    all.extend_from_slice(args);
    pivot_corpus_cli::run(all)
}

/// `--input` arguments for the XML files in `dir`.
pub fn input_args(dir: &Path) -> Vec<String> {
    let p = |name: &str| dir.join(name).display().to_string();
    vec![
        "--input".into(),
        format!("en={}", p("en.xml")),
        "--input".into(),
        format!("en:he={}", p("en-he.xml")),
        "--input".into(),
        format!("ar={}", p("ar.xml")),
        "--input".into(),
        format!("he={}", p("he.xml")),
    ]
}

/// Writes the four XML inputs for `talks` into `dir`.
pub fn write_inputs(dir: &Path, talks: &[TrilingualTalk]) {
    fs::create_dir_all(dir).unwrap();
    let mut colls = [
        TalkCollection::new("en"),
        TalkCollection::new("en"),
        TalkCollection::new("ar"),
        TalkCollection::new("he"),
    ];
    for t in talks {
        colls[0].insert(t.pivot.clone()).unwrap();
        colls[1].insert(t.pivot_b().clone()).unwrap();
        colls[2].insert(t.a.clone()).unwrap();
        colls[3].insert(t.b.clone()).unwrap();
    }
    for (name, c) in ["en.xml", "en-he.xml", "ar.xml", "he.xml"].iter().zip(&colls) {
        fs::write(dir.join(name), write_collection_xml(c)).unwrap();
    }
}

/// Every file below `root`, keyed by relative path.
pub fn tree(root: &Path) -> BTreeMap<PathBuf, Vec<u8>> {
    fn walk(root: &Path, dir: &Path, out: &mut BTreeMap<PathBuf, Vec<u8>>) {
        for entry in fs::read_dir(dir).unwrap() {
            let path = entry.unwrap().path();
            if path.is_dir() {
                walk(root, &path, out);
            } else {
                out.insert(path.strip_prefix(root).unwrap().to_path_buf(), fs::read(&path).unwrap());
            }
        }
    }
    let mut out = BTreeMap::new();
    walk(root, root, &mut out);
    out
}

/// Data rows (header skipped) of a TSV file, split into fields.
pub fn tsv_rows(path: &Path) -> Vec<Vec<String>> {
    fs::read_to_string(path)
        .unwrap()
        .lines()
        .skip(1)
        .map(|l| l.split('\t').map(str::to_string).collect())
        .collect()
}

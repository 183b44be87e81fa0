use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

pub const TRAIN: &str = "train";

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SplitError {
    #[error("talk {talk_id} is listed in both {first} and {second}")]
    TalkInTwoSets {
        talk_id: String,
        first: String,
        second: String,
    },
    #[error("talk {0} appears more than once in the input")]
    DuplicateTalk(String),
    #[error("split file line {line}: {message}")]
    Syntax { line: usize, message: String },
}

/// Named development and test sets plus talks barred from training.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SplitSpec {
    pub dev_sets: BTreeMap<String, Vec<String>>,
    pub test_sets: BTreeMap<String, Vec<String>>,
    pub exclude_from_train: Vec<String>,
}

impl SplitSpec {
    /// Parses the sectioned text format:
    ///
    /// ```text
    /// [dev:dev2010]
    /// 1443
    /// [test:tst2014]
    /// 2357
    /// [exclude]
    /// 1000
    /// ```
    ///
    /// Blank lines and `#` comments are ignored.
    pub fn parse(text: &str) -> Result<Self, SplitError> {
        enum Section {
            Dev(String),
            Test(String),
            Exclude,
        }
        let mut spec = SplitSpec::default();
        let mut section: Option<Section> = None;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(header) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
                let header = header.trim();
                let named = |kind: &str, name: &str| -> Result<String, SplitError> {
                    let name = name.trim();
                    if name.is_empty() || name.contains(char::is_whitespace) {
                        return Err(SplitError::Syntax {
                            line: line_no,
                            message: format!("bad {kind} set name {name:?}"),
                        });
                    }
                    Ok(name.to_string())
                };
                section = Some(if header == "exclude" {
                    Section::Exclude
                } else if let Some(name) = header.strip_prefix("dev:") {
                    let name = named("dev", name)?;
                    spec.dev_sets.entry(name.clone()).or_default();
                    Section::Dev(name)
                } else if let Some(name) = header.strip_prefix("test:") {
                    let name = named("test", name)?;
                    spec.test_sets.entry(name.clone()).or_default();
                    Section::Test(name)
                } else {
                    return Err(SplitError::Syntax {
                        line: line_no,
                        message: format!("unknown section [{header}]"),
                    });
                });
                continue;
            }
            if line.contains(char::is_whitespace) {
                return Err(SplitError::Syntax {
                    line: line_no,
                    message: format!("expected one talk id, found {line:?}"),
                });
            }
            let id = line.to_string();
            match &section {
                None => {
                    return Err(SplitError::Syntax {
                        line: line_no,
                        message: "talk id before any section".into(),
                    })
                }
                Some(Section::Dev(n)) => spec.dev_sets.get_mut(n).expect("created on header").push(id),
                Some(Section::Test(n)) => spec.test_sets.get_mut(n).expect("created on header").push(id),
                Some(Section::Exclude) => spec.exclude_from_train.push(id),
            }
        }
        spec.validate()?;
        Ok(spec)
    }

    /// Output set names and their talks: `dev.<name>` and `test.<name>`.
    pub fn named_sets(&self) -> Vec<(String, &[String])> {
        self.dev_sets
            .iter()
            .map(|(n, ids)| (format!("dev.{n}"), ids.as_slice()))
            .chain(self.test_sets.iter().map(|(n, ids)| (format!("test.{n}"), ids.as_slice())))
            .collect()
    }

    /// Rejects a talk listed in two different dev/test sets.
    pub fn validate(&self) -> Result<(), SplitError> {
        let mut owner: BTreeMap<&str, String> = BTreeMap::new();
        for (set, ids) in self.named_sets() {
            for id in ids {
                match owner.get(id.as_str()) {
                    Some(first) if *first != set => {
                        return Err(SplitError::TalkInTwoSets {
                            talk_id: id.clone(),
                            first: first.clone(),
                            second: set,
                        })
                    }
                    _ => {
                        owner.insert(id, set.clone());
                    }
                }
            }
        }
        Ok(())
    }
}

/// The result of [`partition`]: every input talk is in exactly one set or in
/// `excluded`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    /// `train`, `dev.<name>` and `test.<name>`, each in input talk order.
    pub sets: BTreeMap<String, Vec<String>>,
    pub excluded: Vec<String>,
}

impl Partition {
    pub fn train(&self) -> &[String] {
        &self.sets[TRAIN]
    }

    /// The set holding `talk_id`, if any.
    pub fn set_of(&self, talk_id: &str) -> Option<&str> {
        self.sets
            .iter()
            .find(|(_, ids)| ids.iter().any(|t| t == talk_id))
            .map(|(name, _)| name.as_str())
    }
}

/// Assigns available talks to dev/test sets as listed, drops excluded talks,
/// and puts the rest in `train`.
pub fn partition(talks: &[String], spec: &SplitSpec) -> Result<Partition, SplitError> {
    spec.validate()?;
    let mut seen = BTreeSet::new();
    for t in talks {
        if !seen.insert(t.as_str()) {
            return Err(SplitError::DuplicateTalk(t.clone()));
        }
    }
    let mut owner: BTreeMap<&str, String> = BTreeMap::new();
    for (set, ids) in spec.named_sets() {
        for id in ids {
            owner.insert(id.as_str(), set.clone());
        }
    }
    let excluded_ids: BTreeSet<&str> = spec.exclude_from_train.iter().map(String::as_str).collect();

    let mut sets: BTreeMap<String, Vec<String>> = spec
        .named_sets()
        .into_iter()
        .map(|(name, _)| (name, Vec::new()))
        .collect();
    sets.insert(TRAIN.to_string(), Vec::new());
    let mut excluded = Vec::new();
    for talk in talks {
        if let Some(set) = owner.get(talk.as_str()) {
            sets.get_mut(set).expect("named set").push(talk.clone());
        } else if excluded_ids.contains(talk.as_str()) {
            excluded.push(talk.clone());
        } else {
            sets.get_mut(TRAIN).expect("train set").push(talk.clone());
        }
    }
    Ok(Partition { sets, excluded })
}

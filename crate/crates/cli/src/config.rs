use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, Context};
use log::warn;
use pivot_corpus::aligner::AlignerParams;
use pivot_corpus::corpus::SplitSpec;
use pivot_corpus::ingest::{parse_collection_xml, parse_srt, parse_vtt, ParsedTalk, TalkCollection};
use pivot_corpus::rebuild::{PunctProfile, RebuildStrategy, StreamNames};

use crate::{Failure, Format, GlobalArgs, Outcome};

/// Where each of the four caption streams comes from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputPaths {
    /// Pivot stream paired with the first language.
    pub pivot_a: PathBuf,
    pub a: PathBuf,
    /// Pivot stream paired with the second language.
    pub pivot_b: PathBuf,
    pub b: PathBuf,
}

#[derive(Debug, Clone)]
pub struct PipelineConfig {
    pub names: StreamNames,
    pub inputs: Option<InputPaths>,
    pub strategies: Vec<RebuildStrategy>,
    pub punct: PunctProfile,
    pub split: SplitSpec,
    pub params: AlignerParams,
    pub out: PathBuf,
    pub drop_divergent: bool,
    pub jobs: Option<usize>,
    pub format: Format,
}

impl PipelineConfig {
    pub fn from_args(args: &GlobalArgs) -> Outcome<Self> {
        let (lang_a, lang_b) = match args.langs.as_slice() {
            [a, b] => (a.clone(), b.clone()),
            [] => return Err(Failure::usage(anyhow!("--langs A,B is required"))),
            other => return Err(Failure::usage(anyhow!("--langs takes two languages, got {}", other.join(",")))),
        };
        let pivot = args.pivot_lang.clone();
        for lang in [&pivot, &lang_a, &lang_b] {
            if lang.is_empty() || lang.contains([':', '=', '/', ',']) {
                return Err(Failure::usage(anyhow!("invalid language code {lang:?}")));
            }
        }
        if pivot == lang_a || pivot == lang_b || lang_a == lang_b {
            return Err(Failure::usage(anyhow!(
                "pivot and languages must be distinct, got {pivot}, {lang_a}, {lang_b}"
            )));
        }
        let names = StreamNames::new(pivot, lang_a, lang_b);

        let strategies = if args.strategies.is_empty() {
            vec![
                RebuildStrategy::None,
                RebuildStrategy::StrongPunctSide(pivot_corpus::rebuild::Stream::B),
                RebuildStrategy::PivotPunct,
            ]
        } else {
            let mut out = Vec::new();
            for s in &args.strategies {
                let strategy = RebuildStrategy::parse(s, &names).map_err(Failure::usage)?;
                if !out.contains(&strategy) {
                    out.push(strategy);
                }
            }
            out
        };

        let punct = match &args.punct {
            Some(path) => {
                require_path(path)?;
                PunctProfile::load(path)
                    .with_context(|| format!("punctuation profile {}", path.display()))
                    .map_err(Failure::usage)?
            }
            None => PunctProfile::default(),
        };
        let split = match &args.split {
            Some(path) => {
                let text = read_text(path)?;
                SplitSpec::parse(&text)
                    .and_then(|s| s.validate().map(|()| s))
                    .with_context(|| format!("split file {}", path.display()))
                    .map_err(Failure::usage)?
            }
            None => SplitSpec::default(),
        };

        let mut params = AlignerParams::default();
        if let Some(w) = args.lexical_weight {
            params.lexical_weight = w;
        }
        params.validate().map_err(Failure::usage)?;
        if args.jobs == Some(0) {
            return Err(Failure::usage(anyhow!("--jobs must be at least 1")));
        }

        let inputs = resolve_inputs(&args.inputs, &names)?;
        Ok(PipelineConfig {
            names,
            inputs,
            strategies,
            punct,
            split,
            params,
            out: args.out.clone(),
            drop_divergent: args.drop_divergent,
            jobs: args.jobs,
            format: args.format,
        })
    }

    pub fn align_dir(&self) -> PathBuf {
        self.out.join("align")
    }

    pub fn rebuild_dir(&self) -> PathBuf {
        self.out.join("rebuild")
    }

    pub fn stats_dir(&self) -> PathBuf {
        self.out.join("stats")
    }

    pub fn partition_dir(&self) -> PathBuf {
        self.out.join("partition")
    }

    pub fn label(&self, strategy: &RebuildStrategy) -> String {
        strategy.label(&self.names)
    }

    pub fn thread_pool(&self) -> Outcome<rayon::ThreadPool> {
        let mut builder = rayon::ThreadPoolBuilder::new();
        if let Some(n) = self.jobs {
            builder = builder.num_threads(n);
        }
        builder.build().map_err(|e| Failure::usage(anyhow!("cannot start workers: {e}")))
    }
}

fn require_path(path: &Path) -> Outcome<()> {
    if !path.exists() {
        return Err(Failure::usage(anyhow!("no such file or directory: {}", path.display())));
    }
    Ok(())
}

fn read_text(path: &Path) -> Outcome<String> {
    require_path(path)?;
    fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))
        .map_err(Failure::usage)
}

/// `LANG=PATH` for the three languages, `PIVOT:LANG=PATH` for the pivot
/// stream paired with one language. A plain pivot path serves both sides.
fn resolve_inputs(raw: &[String], names: &StreamNames) -> Outcome<Option<InputPaths>> {
    if raw.is_empty() {
        return Ok(None);
    }
    let mut given: BTreeMap<String, PathBuf> = BTreeMap::new();
    for item in raw {
        let (key, path) = item
            .split_once('=')
            .ok_or_else(|| Failure::usage(anyhow!("--input expects LANG=PATH, got {item:?}")))?;
        let known = [
            names.pivot.clone(),
            names.a.clone(),
            names.b.clone(),
            format!("{}:{}", names.pivot, names.a),
            format!("{}:{}", names.pivot, names.b),
        ];
        if !known.iter().any(|k| k == key) {
            return Err(Failure::usage(anyhow!("--input {key}: expected one of {}", known.join(", "))));
        }
        let path = PathBuf::from(path);
        require_path(&path)?;
        if given.insert(key.to_string(), path).is_some() {
            return Err(Failure::usage(anyhow!("--input {key} given twice")));
        }
    }
    let pivot_for = |lang: &str| -> Outcome<PathBuf> {
        given
            .get(&format!("{}:{lang}", names.pivot))
            .or_else(|| given.get(&names.pivot))
            .cloned()
            .ok_or_else(|| Failure::usage(anyhow!("missing --input {}=PATH (or {0}:{lang}=PATH)", names.pivot)))
    };
    let side = |lang: &str| -> Outcome<PathBuf> {
        given
            .get(lang)
            .cloned()
            .ok_or_else(|| Failure::usage(anyhow!("missing --input {lang}=PATH")))
    };
    Ok(Some(InputPaths {
        pivot_a: pivot_for(&names.a)?,
        a: side(&names.a)?,
        pivot_b: pivot_for(&names.b)?,
        b: side(&names.b)?,
    }))
}

/// Reads one input as a collection of talks in `language`.
pub fn load_collection(path: &Path, language: &str, format: Format) -> Outcome<TalkCollection> {
    require_path(path)?;
    match format {
        Format::Xml => {
            let bytes = fs::read(path)
                .with_context(|| format!("reading {}", path.display()))
                .map_err(Failure::usage)?;
            let coll = parse_collection_xml(&bytes)
                .with_context(|| format!("{}", path.display()))
                .map_err(Failure::usage)?;
            if coll.language != language {
                warn!("{}: collection language is {:?}, used as {language}", path.display(), coll.language);
            }
            Ok(TalkCollection { language: language.to_string(), ..coll })
        }
        Format::Srt | Format::Vtt => {
            let ext = if format == Format::Srt { "srt" } else { "vtt" };
            let mut files: Vec<PathBuf> = fs::read_dir(path)
                .with_context(|| format!("listing {}", path.display()))
                .map_err(Failure::usage)?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|p| p.extension().is_some_and(|x| x == ext))
                .collect();
            files.sort();
            let mut coll = TalkCollection::new(language);
            for file in files {
                let talk_id = file.file_stem().and_then(|s| s.to_str()).unwrap_or_default().to_string();
                let bytes = fs::read(&file)
                    .with_context(|| format!("reading {}", file.display()))
                    .map_err(Failure::usage)?;
                let parsed: ParsedTalk = if format == Format::Srt {
                    parse_srt(&bytes, &talk_id, language)
                } else {
                    parse_vtt(&bytes, &talk_id, language)
                }
                .with_context(|| format!("{}", file.display()))
                .map_err(Failure::usage)?;
                for w in &parsed.warnings {
                    warn!("{}: {w}", file.display());
                }
                coll.insert(parsed.talk)
                    .with_context(|| format!("{}", file.display()))
                    .map_err(Failure::usage)?;
            }
            Ok(coll)
        }
    }
}

//! Tokenization and normalization profiles used for statistics and export.
//!
//! Profiles are declared rule sets addressed by name (`default`, `arabic`,
//! `hebrew`); they fill the role of a corpus tokenizer and an Arabic
//! normalizer without reproducing any particular external tool.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TextError {
    #[error("unknown profile {0:?}")]
    UnknownProfile(String),
    #[error("unknown normalization rule {0:?}")]
    UnknownRule(String),
    #[error("unknown tokenizer rule set {0:?}")]
    UnknownTokenizer(String),
}

const TATWEEL: char = '\u{0640}';
const ALEF: char = '\u{0627}';
const YEH: char = '\u{064A}';
const ALEF_MAQSURA: char = '\u{0649}';
const TEH_MARBUTA: char = '\u{0629}';
const HEH: char = '\u{0647}';
const GERESH: char = '\u{05F3}';
const GERSHAYIM: char = '\u{05F4}';

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormRule {
    CollapseWhitespace,
    ArabicTatweel,
    ArabicDiacritics,
    ArabicAlef,
    ArabicAlefMaqsura,
    /// ة → ه; not part of the default Arabic profile.
    ArabicTehMarbuta,
}

impl NormRule {
    pub const ALL: [NormRule; 6] = [
        NormRule::CollapseWhitespace,
        NormRule::ArabicTatweel,
        NormRule::ArabicDiacritics,
        NormRule::ArabicAlef,
        NormRule::ArabicAlefMaqsura,
        NormRule::ArabicTehMarbuta,
    ];

    pub fn id(self) -> &'static str {
        match self {
            NormRule::CollapseWhitespace => "collapse-whitespace",
            NormRule::ArabicTatweel => "arabic-tatweel",
            NormRule::ArabicDiacritics => "arabic-diacritics",
            NormRule::ArabicAlef => "arabic-alef",
            NormRule::ArabicAlefMaqsura => "arabic-alef-maqsura",
            NormRule::ArabicTehMarbuta => "arabic-teh-marbuta",
        }
    }

    pub fn from_id(id: &str) -> Result<Self, TextError> {
        NormRule::ALL
            .into_iter()
            .find(|r| r.id() == id)
            .ok_or_else(|| TextError::UnknownRule(id.to_string()))
    }

    pub fn apply(self, text: &str) -> String {
        match self {
            NormRule::CollapseWhitespace => text.split_whitespace().collect::<Vec<_>>().join(" "),
            NormRule::ArabicTatweel => text.chars().filter(|&c| c != TATWEEL).collect(),
            NormRule::ArabicDiacritics => text.chars().filter(|&c| !is_arabic_diacritic(c)).collect(),
            NormRule::ArabicAlef => text
                .chars()
                .map(|c| match c {
                    '\u{0622}' | '\u{0623}' | '\u{0625}' | '\u{0671}' => ALEF,
                    c => c,
                })
                .collect(),
            NormRule::ArabicAlefMaqsura => text
                .chars()
                .map(|c| if c == ALEF_MAQSURA { YEH } else { c })
                .collect(),
            NormRule::ArabicTehMarbuta => text
                .chars()
                .map(|c| if c == TEH_MARBUTA { HEH } else { c })
                .collect(),
        }
    }
}

fn is_arabic_diacritic(c: char) -> bool {
    matches!(c, '\u{064B}'..='\u{0652}' | '\u{0670}')
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TokenizerRules {
    /// Whitespace split, leading/trailing punctuation detached one mark per
    /// token, word-internal marks kept.
    Default,
    /// As `Default`, but geresh and gershayim are never detached.
    Hebrew,
}

impl TokenizerRules {
    pub fn id(self) -> &'static str {
        match self {
            TokenizerRules::Default => "default",
            TokenizerRules::Hebrew => "hebrew",
        }
    }

    pub fn from_id(id: &str) -> Result<Self, TextError> {
        match id {
            "default" => Ok(TokenizerRules::Default),
            "hebrew" => Ok(TokenizerRules::Hebrew),
            other => Err(TextError::UnknownTokenizer(other.to_string())),
        }
    }

    fn detaches(self, c: char) -> bool {
        if self == TokenizerRules::Hebrew && (c == GERESH || c == GERSHAYIM) {
            return false;
        }
        c.is_ascii_punctuation()
            || matches!(
                c,
                '“' | '”' | '„' | '‘' | '’' | '«' | '»' | '…' | '–' | '—' | '¿' | '¡'
                    | '\u{060C}' // Arabic comma
                    | '\u{061B}' // Arabic semicolon
                    | '\u{061F}' // Arabic question mark
                    | '\u{06D4}' // Arabic full stop
                    | '\u{066A}' // Arabic percent
                    | GERESH
                    | GERSHAYIM
                    | '\u{05BE}' // maqaf
            )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LangProfile {
    pub language: String,
    pub normalize_rules: Vec<NormRule>,
    pub tokenizer: TokenizerRules,
}

impl LangProfile {
    /// Builds a profile from registry ids.
    pub fn from_ids(language: &str, rule_ids: &[&str], tokenizer: &str) -> Result<Self, TextError> {
        Ok(LangProfile {
            language: language.to_string(),
            normalize_rules: rule_ids.iter().map(|id| NormRule::from_id(id)).collect::<Result<_, _>>()?,
            tokenizer: TokenizerRules::from_id(tokenizer)?,
        })
    }

    /// A registered profile: `default`, `arabic` or `hebrew`.
    pub fn named(name: &str) -> Result<Self, TextError> {
        match name {
            "default" => Ok(LangProfile {
                language: "und".into(),
                normalize_rules: vec![NormRule::CollapseWhitespace],
                tokenizer: TokenizerRules::Default,
            }),
            "arabic" => Ok(LangProfile {
                language: "ar".into(),
                normalize_rules: ARABIC_RULES.to_vec(),
                tokenizer: TokenizerRules::Default,
            }),
            "hebrew" => Ok(LangProfile {
                language: "he".into(),
                normalize_rules: vec![NormRule::CollapseWhitespace],
                tokenizer: TokenizerRules::Hebrew,
            }),
            other => Err(TextError::UnknownProfile(other.to_string())),
        }
    }

    /// The registered profile for a language code (`ar` → arabic,
    /// `he`/`iw` → hebrew, anything else → default).
    pub fn for_language(code: &str) -> Self {
        let base = code.split(['-', '_']).next().unwrap_or(code).to_ascii_lowercase();
        let name = match base.as_str() {
            "ar" => "arabic",
            "he" | "iw" => "hebrew",
            _ => "default",
        };
        let mut profile = LangProfile::named(name).expect("registered profile");
        profile.language = code.to_string();
        profile
    }

    pub fn normalize(&self, text: &str) -> String {
        self.normalize_rules
            .iter()
            .fold(text.to_string(), |acc, rule| rule.apply(&acc))
    }

    pub fn tokenize(&self, text: &str) -> Vec<String> {
        tokenize(text, self)
    }
}

impl fmt::Display for LangProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rules: Vec<_> = self.normalize_rules.iter().map(|r| r.id()).collect();
        write!(f, "{} [{}] tokenizer={}", self.language, rules.join(","), self.tokenizer.id())
    }
}

const ARABIC_RULES: [NormRule; 5] = [
    NormRule::CollapseWhitespace,
    NormRule::ArabicTatweel,
    NormRule::ArabicDiacritics,
    NormRule::ArabicAlef,
    NormRule::ArabicAlefMaqsura,
];

/// Splits on whitespace and detaches leading and trailing punctuation marks,
/// one token per mark. Marks inside a word ("it's", "3.5") stay put.
pub fn tokenize(text: &str, profile: &LangProfile) -> Vec<String> {
    let rules = profile.tokenizer;
    let mut out = Vec::new();
    for chunk in text.split_whitespace() {
        let chars: Vec<char> = chunk.chars().collect();
        let lead = chars.iter().take_while(|&&c| rules.detaches(c)).count();
        if lead == chars.len() {
            out.extend(chars.iter().map(|c| c.to_string()));
            continue;
        }
        let trail = chars.iter().rev().take_while(|&&c| rules.detaches(c)).count();
        out.extend(chars[..lead].iter().map(|c| c.to_string()));
        out.push(chars[lead..chars.len() - trail].iter().collect());
        out.extend(chars[chars.len() - trail..].iter().map(|c| c.to_string()));
    }
    out
}

/// Removes tatweel and diacritics and unifies alef and alef-maqsura forms.
pub fn normalize_arabic(text: &str) -> String {
    ARABIC_RULES[1..]
        .iter()
        .fold(text.to_string(), |acc, rule| rule.apply(&acc))
}

/// Total tokens over `sentences`, after the profile's normalization.
pub fn count_tokens<S: AsRef<str>>(sentences: &[S], profile: &LangProfile) -> usize {
    sentences
        .iter()
        .map(|s| tokenize(&profile.normalize(s.as_ref()), profile).len())
        .sum()
}

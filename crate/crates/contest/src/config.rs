use lnc_kernel::{metasystem, standard_axiomatization, AxiomSystem};
use lnc_languages::{make_std, StdLanguage, Tag};
use lnc_strategies::halting::toy_metasystem;
use lnc_strategies::toy_axioms;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ContestKind {
    /// Entries are closed terms; the score is the referent.
    Lnc,
    /// Entries are toy programs whose output codes the text of a term.
    LncStar,
    /// Entries are toy programs; the score is the output.
    BusyBeaver,
    /// A toy program together with a proof that it halts.
    BusyBeaverProof,
    /// A closed term together with a proof that it is defined.
    LnProof,
}

impl ContestKind {
    pub fn needs_language(self) -> bool {
        matches!(self, ContestKind::Lnc | ContestKind::LncStar | ContestKind::LnProof)
    }

    pub fn needs_axioms(self) -> bool {
        matches!(self, ContestKind::BusyBeaverProof | ContestKind::LnProof)
    }
}

impl fmt::Display for ContestKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ContestKind::Lnc => "lnc",
            ContestKind::LncStar => "lnc-star",
            ContestKind::BusyBeaver => "busy-beaver",
            ContestKind::BusyBeaverProof => "busy-beaver-proof",
            ContestKind::LnProof => "ln-proof",
        })
    }
}

/// Digit width used to read an LNC* program's output as the code of term text.
pub const LNC_STAR_WIDTH: u32 = 8;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ContestConfig {
    pub kind: ContestKind,
    /// Standard language tag such as `gnt`, `nt` or `fin3`.
    #[serde(default)]
    pub language: Option<String>,
    /// `standard`, `meta` (over `language`), `toy` or `toy-meta`.
    #[serde(default)]
    pub axioms: Option<String>,
    /// Largest admissible entry length, in symbols or program tokens.
    pub budget: usize,
    pub fuel: u64,
    /// Also compute the best achievable score by exhaustive search.
    #[serde(default)]
    pub oracle: bool,
}

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config: {0}")]
    Io(#[from] std::io::Error),
    #[error("config: {0}")]
    Toml(#[from] toml::de::Error),
    #[error("budget and fuel must be positive")]
    NonPositive,
    #[error("contest `{0}` needs a `language`")]
    MissingLanguage(ContestKind),
    #[error("contest `{0}` needs `axioms`")]
    MissingAxioms(ContestKind),
    #[error("unknown language: {0}")]
    Language(String),
    #[error("axiom system `{0}` is built over a language; give one")]
    AxiomsNeedLanguage(String),
    #[error("unknown axiom system `{0}`")]
    UnknownAxioms(String),
}

/// The referenced language and axiom system, built once per contest.
#[derive(Debug, Clone)]
pub struct Resolved {
    pub language: Option<StdLanguage>,
    pub axioms: Option<AxiomSystem>,
}

impl ContestConfig {
    pub fn from_toml(text: &str) -> Result<Self, ConfigError> {
        let cfg: ContestConfig = toml::from_str(text)?;
        cfg.resolve()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        Self::from_toml(&std::fs::read_to_string(path)?)
    }

    /// Checks the invariants and builds the referenced systems.
    pub fn resolve(&self) -> Result<Resolved, ConfigError> {
        if self.budget == 0 || self.fuel == 0 {
            return Err(ConfigError::NonPositive);
        }
        let language = match &self.language {
            Some(tag) => {
                let tag = Tag::parse(tag).map_err(|e| ConfigError::Language(e.to_string()))?;
                Some(make_std(&tag).map_err(|e| ConfigError::Language(e.to_string()))?)
            }
            None if self.kind.needs_language() => return Err(ConfigError::MissingLanguage(self.kind)),
            None => None,
        };
        let axioms = match self.axioms.as_deref() {
            Some(name) => Some(axiom_system(name, language.as_ref())?),
            None if self.kind.needs_axioms() => return Err(ConfigError::MissingAxioms(self.kind)),
            None => None,
        };
        Ok(Resolved { language, axioms })
    }
}

/// `standard` or `meta` over `language`, or the toy machine's `toy` / `toy-meta`.
pub fn axiom_system(name: &str, language: Option<&StdLanguage>) -> Result<AxiomSystem, ConfigError> {
    match name {
        "toy" => Ok(toy_axioms()),
        "toy-meta" => Ok(toy_metasystem()),
        "standard" | "meta" => {
            let lang = language.ok_or_else(|| ConfigError::AxiomsNeedLanguage(name.to_string()))?;
            let base = standard_axiomatization(lang);
            Ok(if name == "meta" { metasystem(&base) } else { base })
        }
        other => Err(ConfigError::UnknownAxioms(other.to_string())),
    }
}

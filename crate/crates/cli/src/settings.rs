use serde::Deserialize;
use std::path::{Path, PathBuf};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Plain,
    Json,
}

/// Defaults read from a settings file; flags and `LNC_FUEL` take precedence.
#[derive(Debug, Clone, Default, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Settings {
    pub fuel: Option<u64>,
    /// Default for `--n` and `--max-len`.
    pub budget: Option<usize>,
    /// Default proof corpus for `strat`.
    pub corpus: Option<PathBuf>,
    #[serde(default)]
    pub format: Format,
    pub jobs: Option<usize>,
}

impl Settings {
    pub fn load(path: &Path) -> Result<Settings, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        let s: Settings = toml::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
        if s.fuel == Some(0) || s.jobs == Some(0) {
            return Err(format!("{}: fuel and jobs must be positive", path.display()));
        }
        Ok(s)
    }
}

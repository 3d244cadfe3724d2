use crate::config::{ConfigError, ContestConfig, ContestKind};
use crate::judge::{run_contest_resolved, Entry};
use lnc_eval::{TermOutcome, Value};
use lnc_kernel::{AxiomSystem, Proof};
use lnc_strategies::{axiomatic_strategy, denotation, selfmeta_strategy, synth_brute_force_term};
use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;

/// A way of producing a number, to be pitted against others.
#[derive(Debug, Clone)]
pub enum StrategyRef {
    /// A fixed term, judged as an entry of an LNC contest over the configured language.
    Entry { name: String, term: String },
    /// The referent of the synthesized brute-force term at size `n`.
    BruteForce { n: usize },
    /// Largest output among programs whose halting the system proves within `n` symbols.
    Axiomatic {
        name: String,
        system: AxiomSystem,
        corpus: Vec<Proof>,
        n: usize,
    },
    /// Largest referent among terms the system proves defined in fewer than `n` symbols.
    Selfmeta {
        name: String,
        system: AxiomSystem,
        corpus: Vec<Proof>,
        n: usize,
    },
}

impl StrategyRef {
    pub fn name(&self) -> String {
        match self {
            StrategyRef::Entry { name, .. } | StrategyRef::Axiomatic { name, .. } | StrategyRef::Selfmeta { name, .. } => {
                name.clone()
            }
            StrategyRef::BruteForce { n } => format!("brute-force({n})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Match {
    Win,
    Loss,
    Tie,
}

/// `cells[i][j]` is the result of strategy `i` against strategy `j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DominanceMatrix {
    pub names: Vec<String>,
    /// Decimal value each strategy achieved, if any.
    pub values: Vec<Option<String>>,
    pub cells: Vec<Vec<Match>>,
}

impl DominanceMatrix {
    pub fn get(&self, a: &str, b: &str) -> Option<Match> {
        let i = self.names.iter().position(|n| n == a)?;
        let j = self.names.iter().position(|n| n == b)?;
        Some(self.cells[i][j])
    }
}

fn number(v: &Value) -> Option<BigUint> {
    v.to_big()
}

fn value_of(cfg: &ContestConfig, s: &StrategyRef) -> Result<Option<BigUint>, ConfigError> {
    Ok(match s {
        StrategyRef::Entry { name, term } => {
            let lnc = ContestConfig {
                kind: ContestKind::Lnc,
                axioms: None,
                oracle: false,
                ..cfg.clone()
            };
            let resolved = lnc.resolve()?;
            let report = run_contest_resolved(&lnc, &resolved, &[Entry::new(name, term)]);
            report.entries[0].score.as_ref().and_then(|s| s.parse().ok())
        }
        StrategyRef::BruteForce { n } => {
            let lang = cfg.resolve()?.language.ok_or(ConfigError::MissingLanguage(cfg.kind))?;
            match synth_brute_force_term(&lang, *n) {
                Ok(phi) => match denotation(&lang, &phi, cfg.fuel) {
                    TermOutcome::Value(v) => number(&v),
                    TermOutcome::Unknown(_) => None,
                },
                Err(_) => None,
            }
        }
        StrategyRef::Axiomatic { system, corpus, n, .. } => number(&axiomatic_strategy(system, corpus, *n, cfg.fuel).value),
        StrategyRef::Selfmeta { system, corpus, n, .. } => {
            let lang = cfg.resolve()?.language.ok_or(ConfigError::MissingLanguage(cfg.kind))?;
            number(&selfmeta_strategy(&lang, system, corpus, *n, cfg.fuel).value)
        }
    })
}

/// A strategy with no value loses to any strategy with one.
fn face_off(a: &Option<BigUint>, b: &Option<BigUint>) -> Match {
    match a.cmp(b) {
        Ordering::Greater => Match::Win,
        Ordering::Less => Match::Loss,
        Ordering::Equal => Match::Tie,
    }
}

/// Pairwise results of the strategies at the configured fuel.
pub fn compare_strategies(cfg: &ContestConfig, strategies: &[StrategyRef]) -> Result<DominanceMatrix, ConfigError> {
    let values = strategies
        .par_iter()
        .map(|s| value_of(cfg, s))
        .collect::<Result<Vec<_>, _>>()?;
    let cells = values
        .iter()
        .map(|a| values.iter().map(|b| face_off(a, b)).collect())
        .collect();
    Ok(DominanceMatrix {
        names: strategies.iter().map(StrategyRef::name).collect(),
        values: values.iter().map(|v| v.as_ref().map(BigUint::to_string)).collect(),
        cells,
    })
}

//! Contests at desk scale: configuration, judging and ranking of entries,
//! and pairwise comparison of number-naming strategies.
//!
//! Judging is conservative: an entry whose referent is not found within
//! fuel is invalid. Reports are deterministic whatever the thread count.

pub mod compare;
pub mod config;
pub mod judge;

pub use compare::{compare_strategies, DominanceMatrix, Match, StrategyRef};
pub use config::{axiom_system, ConfigError, ContestConfig, ContestKind, Resolved, LNC_STAR_WIDTH};
pub use judge::{
    load_entries, run_contest, run_contest_resolved, ContestReport, Entry, OracleBound, RankedEntry, Stats, Violation,
    REPORT_SCHEMA,
};

//! Explicit constructions of the contest strategies.

pub mod brute;
pub mod elt_form;
pub mod halting;
pub mod strategy;
pub mod toy;

pub use brute::{denotation, enumerate_max, synth_brute_force_term, BruteError, BruteTerm, MaxEntry};
pub use elt_form::{pad_prefix, to_elt_form, EltFormError};
pub use halting::{halting_proof, halting_subject, toy_axioms};
pub use strategy::{axiomatic_strategy, selfmeta_strategy, strategy_description, AuditEntry, Status, StrategyReport};
pub use toy::{busy_beaver_table, wrap_checks, BbRow, Instr, Run, ToyProgram, WrapCheck};

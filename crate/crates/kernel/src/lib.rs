//! Proof kernel: proofs with explicit dependence, standard axiomatizations
//! and metasystems, proofs with shorthand, partial validation on finite
//! domains, and a soundness harness.

pub mod axioms;
pub mod builder;
pub mod check;
pub mod curated;
pub mod matching;
pub mod proof;
pub mod shorthand;
pub mod soundness;
pub mod validate;

pub use axioms::{metasystem, standard_axiomatization, weak_metasystem, AxiomSystem, Rule, REFLECTION};
pub use builder::ProofBuilder;
pub use check::{check_proof, Clause, Condition, Rejection, Verdict};
pub use matching::{instantiate, Bindings, Matcher};
pub use proof::{Justification, Proof, ProofFormatError, Step, StepKind};
pub use shorthand::{augment, check_shorthand_proof, parse_shorthand, DefKind, Definition, ShorthandError};
pub use soundness::{generate_corpus, soundness_suite, ProofGenerator, SoundnessReport};
pub use validate::{partially_validate, PartialValidation};

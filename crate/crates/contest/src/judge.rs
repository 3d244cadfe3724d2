use crate::config::{ConfigError, ContestConfig, ContestKind, Resolved, LNC_STAR_WIDTH};
use lnc_eval::{eval_term, Env, Reason, TermOutcome, Value};
use lnc_kernel::{check_proof, AxiomSystem, Proof};
use lnc_languages::{ListCodec, StdLanguage};
use lnc_strategies::halting::halting_subject;
use lnc_strategies::{busy_beaver_table, enumerate_max, Run, ToyProgram};
use lnc_syntax::{length, print, Expr};
use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::io;
use std::path::Path;

pub const REPORT_SCHEMA: &str = "lnc-contest-report/1";

/// One submission. In the proof contests the proof starts at the first line
/// beginning with `(proof`; everything before it is the entry proper.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Entry {
    pub name: String,
    pub text: String,
}

impl Entry {
    pub fn new(name: &str, text: &str) -> Self {
        Entry {
            name: name.to_string(),
            text: text.to_string(),
        }
    }

    fn split(&self) -> (&str, Option<&str>) {
        let mut offset = 0;
        for line in self.text.split_inclusive('\n') {
            if line.trim_start().starts_with("(proof") {
                return (self.text[..offset].trim(), Some(self.text[offset..].trim()));
            }
            offset += line.len();
        }
        (self.text.trim(), None)
    }
}

/// Every regular, non-hidden file in `dir`, in file-name order.
pub fn load_entries(dir: &Path) -> io::Result<Vec<Entry>> {
    let mut out = Vec::new();
    for item in std::fs::read_dir(dir)? {
        let item = item?;
        let name = item.file_name().to_string_lossy().into_owned();
        if name.starts_with('.') || !item.file_type()?.is_file() {
            continue;
        }
        out.push(Entry {
            name,
            text: std::fs::read_to_string(item.path())?,
        });
    }
    out.sort_by(|a, b| a.name.cmp(&b.name));
    Ok(out)
}

/// The contest rule an invalid entry broke.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Violation {
    Parse,
    IllFormed,
    OverBudget,
    NoReferent,
    FuelExhausted,
    NotANumber,
    NoTerm,
    MissingProof,
    ProofRejected,
    WrongConclusion,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankedEntry {
    pub rank: usize,
    pub name: String,
    /// The entry proper, without any proof.
    pub subject: String,
    pub length: Option<usize>,
    pub valid: bool,
    /// Decimal referent or output.
    pub score: Option<String>,
    pub violation: Option<Violation>,
    pub diagnostic: Option<String>,
    /// Evaluation or machine steps spent judging.
    pub steps: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleBound {
    pub score: String,
    pub witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stats {
    pub entries: usize,
    pub valid: usize,
    pub invalid: usize,
    pub steps: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContestReport {
    pub schema: String,
    pub config: ContestConfig,
    pub entries: Vec<RankedEntry>,
    pub winner: Option<String>,
    pub oracle: Option<OracleBound>,
    pub stats: Stats,
}

impl ContestReport {
    pub fn entry(&self, name: &str) -> Option<&RankedEntry> {
        self.entries.iter().find(|e| e.name == name)
    }
}

struct Judged {
    name: String,
    subject: String,
    length: Option<usize>,
    score: Result<BigUint, (Violation, String)>,
    steps: u64,
}

struct Judge<'a> {
    cfg: &'a ContestConfig,
    language: Option<&'a StdLanguage>,
    axioms: Option<&'a AxiomSystem>,
}

type Verdict = Result<BigUint, (Violation, String)>;

fn fail<T>(v: Violation, msg: impl ToString) -> Result<T, (Violation, String)> {
    Err((v, msg.to_string()))
}

impl Judge<'_> {
    fn language(&self) -> &StdLanguage {
        self.language.expect("resolved with a language")
    }

    fn axioms(&self) -> &AxiomSystem {
        self.axioms.expect("resolved with axioms")
    }

    fn within_budget(&self, len: usize) -> Result<(), (Violation, String)> {
        if len > self.cfg.budget {
            return fail(Violation::OverBudget, format!("length {len} exceeds budget {}", self.cfg.budget));
        }
        Ok(())
    }

    fn term(&self, text: &str, length_out: &mut Option<usize>) -> Result<Expr, (Violation, String)> {
        let t = self.language().parse(text).or_else(|e| fail(Violation::Parse, e))?;
        if !t.is_term() {
            return fail(Violation::IllFormed, "entry is not a term");
        }
        if let Some(v) = t.free_vars().first() {
            return fail(Violation::IllFormed, format!("free variable `{v}`"));
        }
        *length_out = Some(length(&t));
        Ok(t)
    }

    /// Referent of a closed term; an unknown within fuel counts against the entry.
    fn referent(&self, t: &Expr, steps: &mut u64) -> Verdict {
        let ev = eval_term(self.language(), t, &Env::new(), self.cfg.fuel).or_else(|e| fail(Violation::IllFormed, e))?;
        *steps += ev.steps;
        match ev.outcome {
            TermOutcome::Value(Value::Syn(e)) => fail(Violation::NotANumber, format!("refers to the expression {e}")),
            TermOutcome::Value(v) => Ok(v.to_big().expect("numeric value")),
            TermOutcome::Unknown(Reason::FuelExhausted) => fail(Violation::FuelExhausted, "no referent found within fuel"),
            TermOutcome::Unknown(r) => fail(Violation::NoReferent, format!("{r:?}")),
        }
    }

    fn program(&self, text: &str, length_out: &mut Option<usize>) -> Result<ToyProgram, (Violation, String)> {
        let p: ToyProgram = text.parse().or_else(|e| fail(Violation::Parse, e))?;
        *length_out = Some(p.token_length());
        Ok(p)
    }

    fn output(&self, p: &ToyProgram, steps: &mut u64) -> Verdict {
        match p.run(self.cfg.fuel) {
            Run::Halted { output, steps: s } => {
                *steps += s;
                Ok(BigUint::from(output))
            }
            Run::OutOfFuel => {
                *steps += self.cfg.fuel;
                fail(Violation::FuelExhausted, "did not halt within fuel")
            }
        }
    }

    fn proof(&self, text: Option<&str>) -> Result<Proof, (Violation, String)> {
        let text = text.ok_or((Violation::MissingProof, "no (proof ...) follows the entry".to_string()))?;
        let a = self.axioms();
        let p = Proof::from_text(&a.lang.spec, text).or_else(|e| fail(Violation::Parse, e))?;
        let v = check_proof(a, &p);
        if !v.is_valid() {
            return fail(Violation::ProofRejected, v);
        }
        Ok(p)
    }

    fn judge(&self, e: &Entry) -> Judged {
        let (subject, proof) = e.split();
        let mut length = None;
        let mut steps = 0;
        let score = self.score(subject, proof, &mut length, &mut steps);
        Judged {
            name: e.name.clone(),
            subject: subject.to_string(),
            length,
            score,
            steps,
        }
    }

    fn score(&self, subject: &str, proof: Option<&str>, length: &mut Option<usize>, steps: &mut u64) -> Verdict {
        match self.cfg.kind {
            ContestKind::Lnc => {
                let t = self.term(subject, length)?;
                self.within_budget(length.unwrap_or(0))?;
                self.referent(&t, steps)
            }
            ContestKind::LncStar => {
                let p = self.program(subject, length)?;
                self.within_budget(p.token_length())?;
                let code = self.output(&p, steps)?;
                let t = ListCodec::new(LNC_STAR_WIDTH)
                    .decode_expr(&self.language().spec, &code)
                    .or_else(|e| fail(Violation::NoTerm, e))?;
                if !t.is_term() || !t.is_closed() {
                    return fail(Violation::NoTerm, format!("output codes `{}`, not a closed term", print(&t)));
                }
                self.referent(&t, steps)
            }
            ContestKind::BusyBeaver => {
                let p = self.program(subject, length)?;
                self.within_budget(p.token_length())?;
                self.output(&p, steps)
            }
            ContestKind::BusyBeaverProof => {
                let p = self.program(subject, length)?;
                self.within_budget(p.token_length())?;
                let proof = self.proof(proof)?;
                match halting_subject(&proof) {
                    Some(q) if q == p => self.output(&p, steps),
                    Some(q) => fail(Violation::WrongConclusion, format!("proof is about `{q}`")),
                    None => fail(Violation::WrongConclusion, "proof does not conclude that a program halts"),
                }
            }
            ContestKind::LnProof => {
                let t = self.term(subject, length)?;
                self.within_budget(length.unwrap_or(0))?;
                let proof = self.proof(proof)?;
                let want = Expr::defined(t.clone());
                if proof.conclusion() != Some(&want) || !proof.hypotheses().is_empty() {
                    return fail(Violation::WrongConclusion, format!("proof must conclude {want} from no hypotheses"));
                }
                self.referent(&t, steps)
            }
        }
    }

    fn oracle(&self) -> Option<OracleBound> {
        if !self.cfg.oracle {
            return None;
        }
        match self.cfg.kind {
            ContestKind::Lnc => {
                let m = enumerate_max(self.language(), self.cfg.budget, self.cfg.fuel);
                Some(OracleBound {
                    score: m.score().to_string(),
                    witness: m.witness.map(|w| print(&w)),
                })
            }
            ContestKind::BusyBeaver | ContestKind::BusyBeaverProof => {
                let row = busy_beaver_table(self.cfg.budget, self.cfg.fuel).pop()?;
                Some(OracleBound {
                    score: row.best.unwrap_or(0).to_string(),
                    witness: row.witness.map(|w| w.to_string()),
                })
            }
            ContestKind::LncStar | ContestKind::LnProof => None,
        }
    }
}

/// Valid entries by score, then shorter, then subject text; invalid ones after, by name.
fn ranking(a: &Judged, b: &Judged) -> Ordering {
    match (&a.score, &b.score) {
        (Ok(x), Ok(y)) => y
            .cmp(x)
            .then_with(|| a.length.cmp(&b.length))
            .then_with(|| a.subject.cmp(&b.subject))
            .then_with(|| a.name.cmp(&b.name)),
        (Ok(_), Err(_)) => Ordering::Less,
        (Err(_), Ok(_)) => Ordering::Greater,
        (Err(_), Err(_)) => a.name.cmp(&b.name),
    }
}

pub fn run_contest_resolved(cfg: &ContestConfig, resolved: &Resolved, entries: &[Entry]) -> ContestReport {
    let judge = Judge {
        cfg,
        language: resolved.language.as_ref(),
        axioms: resolved.axioms.as_ref(),
    };
    let mut judged: Vec<Judged> = entries.par_iter().map(|e| judge.judge(e)).collect();
    judged.sort_by(ranking);
    let stats = Stats {
        entries: judged.len(),
        valid: judged.iter().filter(|j| j.score.is_ok()).count(),
        invalid: judged.iter().filter(|j| j.score.is_err()).count(),
        steps: judged.iter().map(|j| j.steps).sum(),
    };
    let winner = judged.first().filter(|j| j.score.is_ok()).map(|j| j.name.clone());
    let entries = judged
        .into_iter()
        .enumerate()
        .map(|(i, j)| {
            let (score, violation, diagnostic) = match j.score {
                Ok(s) => (Some(s.to_string()), None, None),
                Err((v, d)) => (None, Some(v), Some(d)),
            };
            RankedEntry {
                rank: i + 1,
                name: j.name,
                subject: j.subject,
                length: j.length,
                valid: violation.is_none(),
                score,
                violation,
                diagnostic,
                steps: j.steps,
            }
        })
        .collect();
    ContestReport {
        schema: REPORT_SCHEMA.to_string(),
        config: cfg.clone(),
        entries,
        winner,
        oracle: judge.oracle(),
        stats,
    }
}

/// Judges and ranks every entry. Invalid entries are ranked last, each
/// carrying the rule it broke.
pub fn run_contest(cfg: &ContestConfig, entries: &[Entry]) -> Result<ContestReport, ConfigError> {
    let resolved = cfg.resolve()?;
    Ok(run_contest_resolved(cfg, &resolved, entries))
}

//! `lnc`: languages, evaluation, Russell reformulation, proof checking,
//! term synthesis, strategies, Busy Beaver tables and contests.
//!
//! Exit status is 0 on success, 1 when the input is understood but the
//! operation fails (a rejected proof, an ill-formed formula), and 2 on
//! usage errors, including malformed S-expressions.

mod settings;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lnc_contest::{axiom_system, load_entries, run_contest, ContestConfig, ContestReport};
use lnc_eval::{eval, eval_term, Env, Outcome, TermOutcome};
use lnc_kernel::{check_proof, check_shorthand_proof, parse_shorthand, AxiomSystem, Proof, ShorthandError, Verdict};
use lnc_languages::{make_std, StdLanguage, Tag};
use lnc_strategies::{
    axiomatic_strategy, busy_beaver_table, selfmeta_strategy, synth_brute_force_term, to_elt_form, wrap_checks, Status,
    StrategyReport,
};
use lnc_syntax::{length, print, ParseError};
use serde_json::{json, Value as Json};
use settings::{Format, Settings};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

const DEFAULT_FUEL: u64 = 100_000;
const DEFAULT_MAX_LEN: usize = 8;

#[derive(Parser, Debug)]
#[command(name = "lnc", version, about = "Naming large numbers: languages, proofs, strategies and contests")]
struct Cli {
    /// Settings file with defaults (fuel, budget, corpus, format, jobs).
    #[arg(long, global = true, value_name = "FILE")]
    settings: Option<PathBuf>,
    /// Evaluation budget; overrides LNC_FUEL and the settings file.
    #[arg(long, global = true, env = "LNC_FUEL")]
    fuel: Option<u64>,
    /// Worker threads for parallel enumeration.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Describe a standard language (gnt, nt, fin<k>, meta(..)).
    Lang { tag: String },
    /// Evaluate a sentence or closed term.
    Eval {
        #[arg(long)]
        lang: String,
        #[arg(long)]
        expr: String,
    },
    /// Russell reformulation of a formula, or the arrow formula of a term.
    Russell {
        #[arg(long)]
        lang: String,
        #[arg(long)]
        expr: String,
        /// Treat `expr` as a term and print `(expr → VAR)`.
        #[arg(long, value_name = "VAR")]
        arrow: Option<String>,
    },
    /// Check a proof, or a shorthand document, against an axiom system.
    Check {
        #[command(flatten)]
        system: SystemArgs,
        proof: PathBuf,
    },
    /// Synthesize a term.
    Synth {
        what: SynthTarget,
        #[arg(long)]
        lang: String,
        /// Size parameter for `phi`.
        #[arg(long)]
        n: Option<usize>,
        /// The term to rewrite, for `elt`.
        #[arg(long)]
        expr: Option<String>,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Run a proof-driven strategy over a corpus of proofs.
    Strat {
        kind: StratKind,
        #[command(flatten)]
        system: SystemArgs,
        /// Directory of proof files.
        #[arg(long)]
        corpus: Option<PathBuf>,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Fuel-bounded Busy Beaver table of the toy machine, with wrap checks.
    Bb {
        #[arg(long)]
        max_len: Option<usize>,
    },
    /// Contests.
    Contest {
        #[command(subcommand)]
        action: ContestAction,
    },
}

#[derive(Subcommand, Debug)]
enum ContestAction {
    /// Judge a directory of entries under a TOML contest config.
    Run {
        #[arg(long, value_name = "FILE")]
        config: PathBuf,
        #[arg(long, value_name = "DIR")]
        entries: PathBuf,
    },
}

#[derive(Args, Debug)]
struct SystemArgs {
    /// standard, meta, toy or toy-meta.
    #[arg(long, default_value = "standard")]
    axioms: String,
    /// Language for `standard` and `meta`.
    #[arg(long)]
    lang: Option<String>,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum SynthTarget {
    /// The brute-force term of size parameter n.
    Phi,
    /// The elt-form of a closed term.
    Elt,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum StratKind {
    Axiomatic,
    Selfmeta,
}

#[derive(Debug, thiserror::Error)]
enum Failure {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Domain(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Domain(_) => 1,
            Failure::Usage(_) => 2,
        }
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcomes = Result<Output, Failure>;

/// What a command prints, and whether it counts as success.
struct Output {
    plain: String,
    json: Json,
    ok: bool,
}

impl Output {
    fn ok(plain: String, json: Json) -> Self {
        Output { plain, json, ok: true }
    }
}

struct Context {
    fuel: u64,
    budget: Option<usize>,
    corpus: Option<PathBuf>,
}

fn language(tag: &str) -> Result<StdLanguage, Failure> {
    let tag = Tag::parse(tag).map_err(|e| Failure::Usage(e.to_string()))?;
    make_std(&tag).map_err(|e| Failure::Usage(e.to_string()))
}

fn system(args: &SystemArgs) -> Result<AxiomSystem, Failure> {
    let lang = args.lang.as_deref().map(language).transpose()?;
    axiom_system(&args.axioms, lang.as_ref()).map_err(|e| Failure::Usage(e.to_string()))
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Domain(format!("{}: {e}", path.display())))
}

fn outcome_text(o: &Outcome) -> String {
    match o {
        Outcome::True => "True".into(),
        Outcome::False => "False".into(),
        Outcome::Unknown(r) => format!("Unknown ({r:?})"),
    }
}

fn lang_cmd(tag: &str) -> Outcomes {
    let l = language(tag)?;
    let s = &l.spec;
    let relations: Vec<Json> = s
        .relations
        .iter()
        .map(|r| json!({"symbol": &*r.symbol, "arity": r.arity, "negatable": r.negatable, "strong": r.strongly_negatable}))
        .collect();
    let functions: Vec<Json> = s.functions.iter().map(|f| json!({"symbol": &*f.symbol, "arity": f.arity})).collect();
    let constants: Vec<&str> = s.constants.iter().map(|c| &*c.symbol).collect();
    let quantifiers: Vec<&str> = s.quantifiers.iter().map(|q| q.keyword()).collect();
    let operators: Vec<&str> = s.qlos.iter().map(|q| &*q.symbol).collect();
    let sentences: Vec<Json> = l.sentences.iter().map(|(n, e)| json!({"name": &**n, "sentence": print(e)})).collect();
    let mut plain = s.to_sexp().pretty(100);
    for (n, e) in &l.sentences {
        plain += &format!("\n{n} := {}", print(e));
    }
    Ok(Output::ok(
        plain,
        json!({"language": l.tag.to_string(), "relations": relations, "functions": functions, "constants": constants,
               "quantifiers": quantifiers, "operators": operators, "sentences": sentences}),
    ))
}

fn eval_cmd(ctx: &Context, tag: &str, text: &str) -> Outcomes {
    let l = language(tag)?;
    let e = l.parse(text)?;
    let env = Env::new();
    let domain = |err: lnc_eval::EvalError| Failure::Domain(err.to_string());
    if e.is_term() {
        let ev = eval_term(&l, &e, &env, ctx.fuel).map_err(domain)?;
        let (plain, value) = match &ev.outcome {
            TermOutcome::Value(v) => (v.to_string(), json!(v.to_string())),
            TermOutcome::Unknown(r) => (format!("Unknown ({r:?})"), Json::Null),
        };
        Ok(Output::ok(plain, json!({"term": print(&e), "value": value, "steps": ev.steps})))
    } else {
        let ev = eval(&l, &e, &env, ctx.fuel).map_err(domain)?;
        let text = outcome_text(&ev.outcome);
        Ok(Output::ok(text.clone(), json!({"formula": print(&e), "outcome": text, "steps": ev.steps})))
    }
}

fn russell_cmd(tag: &str, text: &str, arrow: Option<&str>) -> Outcomes {
    let l = language(tag)?;
    let e = l.parse(text)?;
    let r = match arrow {
        Some(x) => lnc_russell::arrow_form(&l.spec, &e, x),
        None => lnc_russell::russell_reformulate(&l.spec, &e),
    }
    .map_err(|err| Failure::Domain(err.to_string()))?;
    Ok(Output::ok(
        print(&r),
        json!({"input": print(&e), "output": print(&r), "input_length": length(&e), "output_length": length(&r)}),
    ))
}

fn verdict_output(v: &Verdict) -> Output {
    let json = match v.rejection() {
        None => json!({"valid": true}),
        Some(r) => json!({"valid": false, "condition": r.condition.to_string(), "step": r.step.map(|s| s + 1), "detail": r.detail}),
    };
    Output {
        plain: v.to_string(),
        json,
        ok: v.is_valid(),
    }
}

fn check_cmd(args: &SystemArgs, path: &Path) -> Outcomes {
    let a = system(args)?;
    let text = read(path)?;
    let v = if text.trim_start().starts_with("(shorthand") {
        let (defs, proof) = parse_shorthand(&a, &text).map_err(|e| match e {
            ShorthandError::Format(f) => Failure::Usage(f.to_string()),
            other => Failure::Domain(other.to_string()),
        })?;
        check_shorthand_proof(&a, &defs, &proof).map_err(|e| Failure::Domain(e.to_string()))?
    } else {
        let proof = Proof::from_text(&a.lang.spec, &text).map_err(|e| Failure::Usage(e.to_string()))?;
        check_proof(&a, &proof)
    };
    Ok(verdict_output(&v))
}

fn synth_cmd(what: SynthTarget, tag: &str, n: Option<usize>, expr: Option<&str>, out: Option<&Path>) -> Outcomes {
    let l = language(tag)?;
    let (term, n) = match what {
        SynthTarget::Phi => {
            let n = n.ok_or_else(|| Failure::Usage("synth phi needs --n".into()))?;
            let t = synth_brute_force_term(&l, n).map_err(|e| Failure::Domain(e.to_string()))?;
            (t.term, Some(n))
        }
        SynthTarget::Elt => {
            let text = expr.ok_or_else(|| Failure::Usage("synth elt needs --expr".into()))?;
            let t = l.parse(text)?;
            (to_elt_form(&l.spec, &t).map_err(|e| Failure::Domain(e.to_string()))?, None)
        }
    };
    let text = print(&term);
    let json = json!({"length": length(&term), "n": n, "out": out.map(|p| p.display().to_string())});
    match out {
        Some(path) => {
            std::fs::write(path, format!("{text}\n")).map_err(|e| Failure::Domain(format!("{}: {e}", path.display())))?;
            Ok(Output::ok(format!("wrote {} (length {})", path.display(), length(&term)), json))
        }
        None => {
            let mut json = json;
            json["term"] = json!(text);
            Ok(Output::ok(text, json))
        }
    }
}

fn load_corpus(a: &AxiomSystem, dir: &Path) -> Result<Vec<(String, Proof)>, Failure> {
    let entries = load_entries(dir).map_err(|e| Failure::Domain(format!("{}: {e}", dir.display())))?;
    entries
        .into_iter()
        .map(|e| match Proof::from_text(&a.lang.spec, &e.text) {
            Ok(p) => Ok((e.name, p)),
            Err(err) => Err(Failure::Usage(format!("{}: {err}", e.name))),
        })
        .collect()
}

fn status_text(s: &Status) -> String {
    match s {
        Status::Accepted => "accepted".into(),
        Status::TooLong => "too-long".into(),
        Status::WrongConclusion => "wrong-conclusion".into(),
        Status::Rejected(why) => format!("rejected: {why}"),
        Status::SoundnessViolation(why) => format!("soundness-violation: {why}"),
    }
}

fn strategy_output(names: &[String], r: &StrategyReport) -> Output {
    let log: Vec<Json> = r
        .log
        .iter()
        .map(|e| {
            json!({"proof": names[e.index], "length": e.length, "subject": e.subject,
                   "value": e.value.as_ref().map(|v| v.to_string()), "status": status_text(&e.status)})
        })
        .collect();
    let mut plain = format!("value {}", r.value);
    if let Some(w) = &r.witness {
        plain += &format!(" from {w}");
    }
    if r.no_proofs {
        plain += " (no proof accepted)";
    }
    for e in &r.log {
        plain += &format!("\n  {} [{}]: {}", names[e.index], e.length, status_text(&e.status));
    }
    Output {
        plain,
        json: json!({"value": r.value.to_string(), "witness": r.witness, "no_proofs": r.no_proofs,
                     "accepted": r.accepted(), "violations": r.violations(), "log": log}),
        ok: r.violations() == 0,
    }
}

fn strat_cmd(ctx: &Context, kind: StratKind, args: &SystemArgs, corpus: Option<&Path>, n: Option<usize>) -> Outcomes {
    let a = system(args)?;
    let dir = corpus
        .or(ctx.corpus.as_deref())
        .ok_or_else(|| Failure::Usage("strat needs --corpus".into()))?;
    let n = n.or(ctx.budget).ok_or_else(|| Failure::Usage("strat needs --n".into()))?;
    let (names, proofs): (Vec<String>, Vec<Proof>) = load_corpus(&a, dir)?.into_iter().unzip();
    let report = match kind {
        StratKind::Axiomatic => axiomatic_strategy(&a, &proofs, n, ctx.fuel),
        StratKind::Selfmeta => {
            let tag = args.lang.as_deref().ok_or_else(|| Failure::Usage("selfmeta needs --lang".into()))?;
            selfmeta_strategy(&language(tag)?, &a, &proofs, n, ctx.fuel)
        }
    };
    Ok(strategy_output(&names, &report))
}

fn bb_cmd(ctx: &Context, max_len: Option<usize>) -> Outcomes {
    let max_len = max_len.or(ctx.budget).unwrap_or(DEFAULT_MAX_LEN);
    let table = busy_beaver_table(max_len, ctx.fuel);
    let checks = wrap_checks(&table, ctx.fuel);
    let mut plain = String::from("length  best  halted/programs  witness");
    for r in &table {
        let best = r.best.map_or("-".to_string(), |b| b.to_string());
        let witness = r.witness.as_ref().map_or("-".to_string(), |w| w.to_string());
        plain += &format!("\n{:>6}  {best:>4}  {:>15}  {witness}", r.length, format!("{}/{}", r.halted, r.programs));
    }
    let holds = checks.iter().all(|c| c.holds);
    plain += &format!("\nwrap check {}", if holds { "holds at every length" } else { "FAILS" });
    Ok(Output {
        plain,
        json: json!({"max_len": max_len, "fuel": ctx.fuel, "table": table, "wrap": checks}),
        ok: holds,
    })
}

fn contest_plain(r: &ContestReport) -> String {
    let mut out = format!("{} contest, budget {}, fuel {}", r.config.kind, r.config.budget, r.config.fuel);
    for e in &r.entries {
        let verdict = match (&e.score, e.violation) {
            (Some(s), _) => format!("score {s}"),
            (None, Some(v)) => format!("invalid ({v:?}): {}", e.diagnostic.as_deref().unwrap_or("")),
            (None, None) => "invalid".into(),
        };
        out += &format!("\n{:>3}. {} [{}] {verdict}", e.rank, e.name, e.length.map_or("-".into(), |l| l.to_string()));
    }
    if let Some(o) = &r.oracle {
        out += &format!("\noracle best {}", o.score);
    }
    out += &format!("\nwinner: {}", r.winner.as_deref().unwrap_or("none"));
    out
}

fn contest_cmd(action: &ContestAction) -> Outcomes {
    let ContestAction::Run { config, entries } = action;
    let cfg = ContestConfig::load(config).map_err(|e| Failure::Usage(e.to_string()))?;
    let entries = load_entries(entries).map_err(|e| Failure::Domain(format!("{}: {e}", entries.display())))?;
    let report = run_contest(&cfg, &entries).map_err(|e| Failure::Usage(e.to_string()))?;
    let json = serde_json::to_value(&report).map_err(|e| Failure::Domain(e.to_string()))?;
    Ok(Output::ok(contest_plain(&report), json))
}

fn dispatch(cli: &Cli) -> Result<(Output, Format), Failure> {
    let settings = match &cli.settings {
        Some(p) => Settings::load(p).map_err(Failure::Usage)?,
        None => Settings::default(),
    };
    if let Some(jobs) = cli.jobs.or(settings.jobs) {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .map_err(|e| Failure::Usage(e.to_string()))?;
    }
    let ctx = Context {
        fuel: cli.fuel.or(settings.fuel).unwrap_or(DEFAULT_FUEL),
        budget: settings.budget,
        corpus: settings.corpus.clone(),
    };
    let format = if cli.json { Format::Json } else { settings.format };
    let out = match &cli.command {
        Command::Lang { tag } => lang_cmd(tag),
        Command::Eval { lang, expr } => eval_cmd(&ctx, lang, expr),
        Command::Russell { lang, expr, arrow } => russell_cmd(lang, expr, arrow.as_deref()),
        Command::Check { system, proof } => check_cmd(system, proof),
        Command::Synth { what, lang, n, expr, out } => synth_cmd(*what, lang, *n, expr.as_deref(), out.as_deref()),
        Command::Strat { kind, system, corpus, n } => strat_cmd(&ctx, *kind, system, corpus.as_deref(), *n),
        Command::Bb { max_len } => bb_cmd(&ctx, *max_len),
        Command::Contest { action } => contest_cmd(action),
    }?;
    Ok((out, format))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match dispatch(&cli) {
        Ok((out, format)) => {
            match format {
                Format::Plain => println!("{}", out.plain),
                Format::Json => println!("{}", serde_json::to_string_pretty(&out.json).expect("JSON values serialize")),
            }
            ExitCode::from(if out.ok { 0 } else { 1 })
        }
        Err(f) => {
            eprintln!("lnc: {f}");
            if let Failure::Usage(_) = f {
                eprintln!("Run `lnc --help` for usage.");
            }
            ExitCode::from(f.code())
        }
    }
}

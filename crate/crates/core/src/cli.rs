//! Command-line front end. [`run`] does the work and returns the text to
//! print with the exit code, so it can be driven from tests.

use std::collections::BTreeSet;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::adaptive::{
    al_consequence_verdict, da_consequence, fmt_set, mcs_of, phi_of, sigma_of, FormulaSet, Strategy,
};
use crate::aspic::StructuredAf;
use crate::check::{self, Bounds, CheckConfig, Theorem};
use crate::dung::{Mode, Semantics};
use crate::error::{Error, Result};
use crate::logic::Formula;
use crate::problem::{Kind, Problem};
use crate::translate::{aba_to_al, al_to_aba, al_to_aspic, aspic_to_aba, Direction};

#[derive(Parser, Debug)]
#[command(name = "defeasance", version, about = "Adaptive logics, assumption-based argumentation and ASPIC+")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decide the query of a problem file (exit 0 true, 1 false, 2 error).
    Solve(FileArgs),
    /// List the extensions of an aba or aspic problem.
    Extensions(FileArgs),
    /// Translate a problem into another formalism.
    Translate {
        #[command(flatten)]
        file: FileArgs,
        #[arg(long, short)]
        direction: Direction,
    },
    /// Run a seeded differential check (exit 0 iff every trial passes).
    Check(CheckArgs),
    /// Print the minimal Dab-sets of an al problem.
    Sigma(FileArgs),
    /// Print the minimal choice sets of an al problem.
    Phi(FileArgs),
}

#[derive(Args, Debug)]
pub struct FileArgs {
    pub file: PathBuf,
    /// Overrides `semantics:` in the file.
    #[arg(long, short)]
    pub semantics: Option<Semantics>,
    /// Overrides `mode:` in the file.
    #[arg(long, short)]
    pub mode: Option<Mode>,
    /// Overrides `strategy:` in the file.
    #[arg(long)]
    pub strategy: Option<Strategy>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    pub theorem: Theorem,
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = Bounds::default().atoms)]
    pub atoms: usize,
    #[arg(long, default_value_t = Bounds::default().rules)]
    pub rules: usize,
    #[arg(long, default_value_t = Bounds::default().premises)]
    pub premises: usize,
    #[arg(long)]
    pub json: bool,
}

/// What a command prints and how the process exits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub text: String,
    pub code: i32,
}

impl Output {
    fn error(e: &Error) -> Output {
        Output { text: format!("error: {e}\n"), code: 2 }
    }
}

/// Fields of the `--json` object; absent ones are printed as null.
#[derive(Default)]
struct Json {
    verdict: Option<bool>,
    witnesses: Option<Value>,
    extensions: Option<Value>,
    report: Option<Value>,
}

impl Json {
    fn render(self) -> String {
        // serde_json keeps object keys sorted
        let v = json!({
            "verdict": self.verdict,
            "witnesses": self.witnesses,
            "extensions": self.extensions,
            "report": self.report,
        });
        format!("{v}\n")
    }
}

pub fn run(cli: Cli) -> Output {
    let result = match cli.command {
        Command::Solve(args) => load(&args).and_then(|p| solve(&p, args.json)),
        Command::Extensions(args) => load(&args).and_then(|p| extensions(&p, args.json)),
        Command::Translate { file, direction } => load(&file).and_then(|p| translate(&p, direction, file.json)),
        Command::Sigma(args) => load(&args).and_then(|p| dab_sets(&p, false, args.json)),
        Command::Phi(args) => load(&args).and_then(|p| dab_sets(&p, true, args.json)),
        Command::Check(args) => run_check(&args),
    };
    result.unwrap_or_else(|e| Output::error(&e))
}

fn load(args: &FileArgs) -> Result<Problem> {
    let text = std::fs::read_to_string(&args.file)
        .map_err(|e| Error::Usage(format!("cannot read {}: {e}", args.file.display())))?;
    let mut p = Problem::parse(&text)?;
    p.semantics = args.semantics.or(p.semantics);
    p.mode = args.mode.or(p.mode);
    p.strategy = args.strategy.or(p.strategy);
    Ok(p)
}

fn need<T>(value: Option<T>, key: &str) -> Result<T> {
    value.ok_or_else(|| Error::Usage(format!("missing `{key}:`")))
}

fn set_json(set: &FormulaSet) -> Value {
    json!(crate::adaptive::printed_members(set))
}

fn args_set(ids: &BTreeSet<usize>) -> String {
    let labels: Vec<String> = ids.iter().map(|&i| StructuredAf::label(i)).collect();
    format!("{{{}}}", labels.join(", "))
}

fn args_json(ids: &BTreeSet<usize>) -> Value {
    json!(ids.iter().map(|&i| StructuredAf::label(i)).collect::<Vec<_>>())
}

fn solve(p: &Problem, as_json: bool) -> Result<Output> {
    let goal = need(p.query.clone(), "query")?;
    let mut text = format!("goal: {goal}\n");
    let mut out = Json::default();
    let verdict = match p.kind {
        Kind::Al => {
            let strategy = need(p.strategy, "strategy")?;
            let v = al_consequence_verdict(&p.adaptive_theory()?, strategy, &goal)?;
            let mut ws = Vec::new();
            for w in &v.witnesses {
                match &w.choice_set {
                    Some(c) => {
                        text.push_str(&format!("witness: choice set {} delta {}\n", fmt_set(c), fmt_set(&w.delta)))
                    }
                    None => text.push_str(&format!("witness: delta {}\n", fmt_set(&w.delta))),
                }
                ws.push(json!({
                    "choice_set": w.choice_set.as_ref().map(set_json),
                    "delta": set_json(&w.delta),
                }));
            }
            out.witnesses = Some(json!(ws));
            v.holds
        }
        Kind::Da => {
            let t = p.default_theory()?;
            let holds = da_consequence(&t, &goal)?;
            let mcs = mcs_of(&t)?;
            for m in &mcs {
                text.push_str(&format!("consistent subset: {}\n", fmt_set(m)));
            }
            out.witnesses = Some(json!(mcs.iter().map(set_json).collect::<Vec<_>>()));
            holds
        }
        Kind::Aba => {
            let (sem, mode) = (need(p.semantics, "semantics")?, need(p.mode, "mode")?);
            let abf = p.abf()?;
            let holds = abf.consequence(sem, mode, &goal)?;
            let exts = sorted_sets(abf.extensions(sem)?);
            for e in &exts {
                text.push_str(&format!("extension: {}\n", fmt_set(e)));
            }
            out.extensions = Some(json!(exts.iter().map(set_json).collect::<Vec<_>>()));
            holds
        }
        Kind::Aspic => {
            let (sem, mode) = (need(p.semantics, "semantics")?, need(p.mode, "mode")?);
            let (sys, kb) = p.argumentation()?;
            let af = StructuredAf::build(&sys, &kb)?;
            let holds = af.consequence(sem, mode, &goal)?;
            let exts = af.extensions(sem)?;
            for e in &exts {
                text.push_str(&format!("extension: {}\n", args_set(e)));
            }
            let concluding: Vec<String> = (0..af.arguments.len())
                .filter(|&i| af.arguments[i].conclusion == goal)
                .map(|i| format!("{} {}", StructuredAf::label(i), af.describe(i)))
                .collect();
            for c in &concluding {
                text.push_str(&format!("argument: {c}\n"));
            }
            out.extensions = Some(json!(exts.iter().map(args_json).collect::<Vec<_>>()));
            out.witnesses = Some(json!(concluding));
            holds
        }
    };
    text.insert_str(text.find('\n').expect("goal line") + 1, &format!("verdict: {verdict}\n"));
    out.verdict = Some(verdict);
    let text = if as_json { out.render() } else { text };
    Ok(Output { text, code: if verdict { 0 } else { 1 } })
}

/// Sorts sets by their printed form.
fn sorted_sets(mut sets: Vec<FormulaSet>) -> Vec<FormulaSet> {
    sets.sort_by_cached_key(fmt_set);
    sets
}

fn extensions(p: &Problem, as_json: bool) -> Result<Output> {
    let sem = need(p.semantics, "semantics")?;
    let (lines, values): (Vec<String>, Vec<Value>) = match p.kind {
        Kind::Aba => sorted_sets(p.abf()?.extensions(sem)?).iter().map(|e| (fmt_set(e), set_json(e))).unzip(),
        Kind::Aspic => {
            let (sys, kb) = p.argumentation()?;
            let af = StructuredAf::build(&sys, &kb)?;
            af.extensions(sem)?.iter().map(|e| (args_set(e), args_json(e))).unzip()
        }
        other => return Err(Error::Usage(format!("extensions need an aba or aspic problem, found `{other}`"))),
    };
    let text = if as_json {
        Json { extensions: Some(json!(values)), ..Json::default() }.render()
    } else {
        lines.iter().map(|l| format!("{l}\n")).collect()
    };
    Ok(Output { text, code: 0 })
}

fn strategy_mode(s: Strategy) -> Mode {
    match s {
        Strategy::NormalSelections => Mode::Cup,
        Strategy::MinimalAbnormality => Mode::Cap,
        Strategy::Reliability => Mode::Dcap,
    }
}

fn mode_strategy(m: Mode) -> Strategy {
    match m {
        Mode::Cup => Strategy::NormalSelections,
        Mode::Cap => Strategy::MinimalAbnormality,
        Mode::Dcap => Strategy::Reliability,
    }
}

fn translate(p: &Problem, direction: Direction, as_json: bool) -> Result<Output> {
    let (mut target, report) = match direction {
        Direction::AlToAba => {
            let (abf, report) = al_to_aba(&p.adaptive_theory()?)?;
            let mut t = Problem::from_abf(&abf);
            t.mode = p.strategy.map(strategy_mode);
            (t, report)
        }
        Direction::AspicToAba => {
            let (sys, kb) = p.argumentation()?;
            let (abf, report) = aspic_to_aba(&sys, &kb)?;
            let mut t = Problem::from_abf(&abf);
            t.semantics = p.semantics;
            t.mode = p.mode;
            (t, report)
        }
        Direction::AbaToAl => {
            let (theory, report) = aba_to_al(&p.abf()?)?;
            let mut t = Problem::from_adaptive(&theory);
            t.strategy = p.mode.map(mode_strategy);
            (t, report)
        }
        Direction::AlToAspic => {
            let extra: Vec<Formula> = p.query.iter().cloned().collect();
            let (sys, kb, report) = al_to_aspic(&p.adaptive_theory()?, &extra)?;
            let mut t = Problem::from_aspic(&sys, &kb);
            t.mode = p.strategy.map(strategy_mode);
            (t, report)
        }
    };
    target.query = p.query.clone();
    let problem = target.to_string();
    // the emitted file must load again
    Problem::parse(&problem)?;
    let text = if as_json {
        let report_json = json!({
            "direction": report.direction.to_string(),
            "fresh": report.fresh.iter().map(|(t, m)| json!([t.to_string(), m])).collect::<Vec<_>>(),
            "mapping": report.mapping.iter().map(|(a, b)| json!([a.to_string(), b.to_string()])).collect::<Vec<_>>(),
            "notes": report.notes,
            "problem": problem,
        });
        Json { report: Some(report_json), ..Json::default() }.render()
    } else {
        format!("{problem}{report}")
    };
    Ok(Output { text, code: 0 })
}

fn dab_sets(p: &Problem, minimal_choice: bool, as_json: bool) -> Result<Output> {
    let sigma = sigma_of(&p.adaptive_theory()?)?;
    let sets = if minimal_choice { phi_of(&sigma) } else { sigma };
    let text = if as_json {
        Json { witnesses: Some(json!(sets.iter().map(set_json).collect::<Vec<_>>())), ..Json::default() }.render()
    } else {
        sets.iter().map(|s| format!("{}\n", fmt_set(s))).collect()
    };
    Ok(Output { text, code: 0 })
}

fn run_check(args: &CheckArgs) -> Result<Output> {
    let mut config = CheckConfig::new(args.theorem, args.trials, args.seed);
    config.bounds = Bounds { atoms: args.atoms, rules: args.rules, premises: args.premises, ..config.bounds };
    let report = check::run(&config)?;
    let code = if report.ok() { 0 } else { 1 };
    let text = if args.json {
        let report_json = json!({
            "theorem": report.theorem.to_string(),
            "trials": report.trials,
            "passed": report.passed,
            "first_failure": report.first_failure.as_ref().map(|f| json!({
                "trial": f.trial,
                "message": f.message,
                "problem": f.problem,
            })),
        });
        Json { verdict: Some(report.ok()), report: Some(report_json), ..Json::default() }.render()
    } else {
        report.to_string()
    };
    Ok(Output { text, code })
}

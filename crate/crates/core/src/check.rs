//! Seeded differential checks of the equivalences between the formalisms.
//!
//! Every trial draws one random instance from its own ChaCha stream
//! (`seed`, stream = trial index), so a failing trial can be replayed alone
//! and trials can run in parallel. Generators are biased toward instances
//! with conflicts: adaptive premises often contain a disjunction of
//! abnormalities, and rule systems are drawn so that contraries are often
//! derivable. Preconditions a theorem needs (consistent premises,
//! consistency under the rules) are met by redrawing.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::aba::{closure, Abf, Rule, RuleSet};
use crate::adaptive::{
    al_consequence, al_consequence_semantic, da_consequence, phi_of, sigma_of, AdaptiveTheory, DefaultTheory,
    FormulaSet, Strategy,
};
use crate::aspic::{ArgumentationSystem, Contrariness, DefeasibleTheory, KnowledgeBase, StructuredAf};
use crate::dung::{Mode, Semantics};
use crate::error::{Error, Result};
use crate::logic::{entails, is_trivial, Atom, CoreLogic, Formula, LogicKind};
use crate::problem::{Kind, Problem};
use crate::translate::{aba_to_al, al_to_aba, aspic_to_aba, is_r_consistent, rule_formula};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Theorem {
    T6,
    T7,
    T8,
    C27,
    T31,
    T32,
    T33,
    F1,
    F11,
    F30,
    L10,
    L12,
    L28,
    /// Reliability consequences are minimal abnormality consequences, which
    /// are normal selections consequences.
    Chain,
}

impl Theorem {
    pub const ALL: [Theorem; 14] = [
        Theorem::T6,
        Theorem::T7,
        Theorem::T8,
        Theorem::C27,
        Theorem::T31,
        Theorem::T32,
        Theorem::T33,
        Theorem::F1,
        Theorem::F11,
        Theorem::F30,
        Theorem::L10,
        Theorem::L12,
        Theorem::L28,
        Theorem::Chain,
    ];
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Theorem::T6 => "T6",
            Theorem::T7 => "T7",
            Theorem::T8 => "T8",
            Theorem::C27 => "C27",
            Theorem::T31 => "T31",
            Theorem::T32 => "T32",
            Theorem::T33 => "T33",
            Theorem::F1 => "F1",
            Theorem::F11 => "F11",
            Theorem::F30 => "F30",
            Theorem::L10 => "L10",
            Theorem::L12 => "L12",
            Theorem::L28 => "L28",
            Theorem::Chain => "CHAIN",
        })
    }
}

impl FromStr for Theorem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Theorem> {
        Theorem::ALL
            .into_iter()
            .find(|t| t.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Usage(format!("unknown check `{s}`")))
    }
}

/// Size limits for generated instances.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Bounds {
    pub atoms: usize,
    pub rules: usize,
    pub premises: usize,
    pub abnormalities: usize,
}

impl Default for Bounds {
    fn default() -> Bounds {
        Bounds { atoms: 3, rules: 5, premises: 4, abnormalities: 3 }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct CheckConfig {
    pub theorem: Theorem,
    pub trials: usize,
    pub seed: u64,
    pub bounds: Bounds,
}

impl CheckConfig {
    pub fn new(theorem: Theorem, trials: usize, seed: u64) -> CheckConfig {
        CheckConfig { theorem, trials, seed, bounds: Bounds::default() }
    }

    pub fn validate(&self) -> Result<()> {
        let b = self.bounds;
        if !(1..=4).contains(&b.atoms) || b.premises > 6 || b.rules > 8 || !(1..=4).contains(&b.abnormalities) {
            return Err(Error::Usage(
                "bounds out of range: atoms 1..=4, premises <= 6, rules <= 8, abnormalities 1..=4".into(),
            ));
        }
        Ok(())
    }
}

/// A failed trial: what disagreed, and the instance as a problem file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub trial: usize,
    pub message: String,
    pub problem: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub theorem: Theorem,
    pub trials: usize,
    pub passed: usize,
    pub first_failure: Option<Failure>,
}

impl CheckReport {
    pub fn ok(&self) -> bool {
        self.passed == self.trials
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}: {}/{} pass", self.theorem, self.passed, self.trials)?;
        if let Some(fail) = &self.first_failure {
            writeln!(f, "first counterexample (trial {}): {}", fail.trial, fail.message)?;
            f.write_str(&fail.problem)?;
        }
        Ok(())
    }
}

type Outcome = std::result::Result<(), Box<(String, Problem)>>;

pub fn run(config: &CheckConfig) -> Result<CheckReport> {
    config.validate()?;
    let outcomes: Vec<Outcome> = (0..config.trials)
        .into_par_iter()
        .map(|trial| {
            let mut g = Gen::new(config.seed, trial as u64, config.bounds);
            run_trial(config.theorem, &mut g)
        })
        .collect();
    let passed = outcomes.iter().filter(|o| o.is_ok()).count();
    let first_failure = outcomes.into_iter().enumerate().find_map(|(trial, o)| {
        o.err().map(|failure| {
            let (message, problem) = *failure;
            Failure { trial, message, problem: problem.to_string() }
        })
    });
    Ok(CheckReport { theorem: config.theorem, trials: config.trials, passed, first_failure })
}

fn run_trial(theorem: Theorem, g: &mut Gen) -> Outcome {
    match theorem {
        Theorem::T6 => check_t6(g),
        Theorem::T7 => check_t7(g),
        Theorem::T8 => check_t8(g),
        Theorem::C27 => check_c27(g),
        Theorem::T31 => check_t31(g),
        Theorem::T32 => check_t32(g, false),
        Theorem::T33 => check_t32(g, true),
        Theorem::F1 => check_f1(g),
        Theorem::F11 => check_f11(g),
        Theorem::F30 => check_f30(g),
        Theorem::L10 => check_l10_l12(g, false),
        Theorem::L12 => check_l10_l12(g, true),
        Theorem::L28 => check_l28(g),
        Theorem::Chain => check_chain(g),
    }
}

/// Random choices for one trial.
pub struct Gen {
    rng: ChaCha8Rng,
    bounds: Bounds,
}

const ATOM_NAMES: [&str; 4] = ["p", "q", "r", "s"];

impl Gen {
    pub fn new(seed: u64, trial: u64, bounds: Bounds) -> Gen {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(trial);
        Gen { rng, bounds }
    }

    fn below(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    fn upto(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..=n)
    }

    fn chance(&mut self, p: f64) -> bool {
        self.rng.gen_bool(p)
    }

    fn pick<T: Clone>(&mut self, items: &[T]) -> T {
        items.choose(&mut self.rng).expect("nonempty choice").clone()
    }

    /// `k` distinct items, in their original order.
    fn sample<T: Clone>(&mut self, items: &[T], k: usize) -> Vec<T> {
        let mut idx: Vec<usize> = rand::seq::index::sample(&mut self.rng, items.len(), k.min(items.len())).into_vec();
        idx.sort();
        idx.into_iter().map(|i| items[i].clone()).collect()
    }

    fn atoms(&mut self) -> Vec<Atom> {
        let n = 1 + self.below(self.bounds.atoms);
        ATOM_NAMES[..n].iter().map(|a| Atom::new(a).expect("valid")).collect()
    }

    /// A formula of depth at most `depth`; `weak` allows `~`.
    fn formula(&mut self, atoms: &[Atom], depth: u32, weak: bool) -> Formula {
        if depth == 0 || self.chance(0.35) {
            let a = Formula::Var(self.pick(atoms));
            return match self.below(if weak { 4 } else { 3 }) {
                0 => a.neg(),
                3 => a.weak_neg(),
                _ => a,
            };
        }
        match self.below(if weak { 5 } else { 4 }) {
            0 => self.formula(atoms, depth - 1, weak).neg(),
            1 => {
                let l = self.formula(atoms, depth - 1, weak);
                l.and(self.formula(atoms, depth - 1, weak))
            }
            4 => self.formula(atoms, depth - 1, weak).weak_neg(),
            _ => {
                let l = self.formula(atoms, depth - 1, weak);
                l.or(self.formula(atoms, depth - 1, weak))
            }
        }
    }
}

fn fail(message: String, problem: Problem) -> Outcome {
    Err(Box::new((message, problem)))
}

/// Engine errors count as failures of the trial.
fn guard<T>(r: Result<T>, problem: impl FnOnce() -> Problem) -> std::result::Result<T, Box<(String, Problem)>> {
    r.map_err(|e| Box::new((format!("error: {e}"), problem())))
}

fn al_problem(t: &AdaptiveTheory, goal: Option<&Formula>, strategy: Option<Strategy>) -> Problem {
    let mut p = Problem::from_adaptive(t);
    p.query = goal.cloned();
    p.strategy = strategy;
    p
}

/// A random adaptive theory over CPL or LP. Half of the time the premises
/// include a disjunction of abnormalities.
pub fn adaptive_instance(g: &mut Gen) -> AdaptiveTheory {
    let kind = if g.chance(0.5) { LogicKind::Cpl } else { LogicKind::Lp };
    let weak = kind == LogicKind::Lp;
    let atoms = g.atoms();
    let n_omega = 1 + g.below(g.bounds.abnormalities);
    let omega: Vec<Formula> =
        (0..n_omega)
            .map(|_| {
                if weak && g.chance(0.7) {
                    Formula::contradiction(&g.pick(&atoms))
                } else {
                    g.formula(&atoms, 1, weak)
                }
            })
            .collect();
    let n_gamma = g.upto(g.bounds.premises);
    let mut gamma = Vec::new();
    for i in 0..n_gamma {
        if i == 0 && g.chance(0.5) {
            let k = 1 + g.below(omega.len());
            let picked = g.sample(&omega, k);
            gamma.push(Formula::disjunction(picked).expect("nonempty"));
        } else {
            gamma.push(g.formula(&atoms, 2, weak));
        }
    }
    let logic = CoreLogic::with_kind(kind, atoms.into_iter().collect());
    AdaptiveTheory::new(logic, gamma, omega).expect("generated formulas fit the logic")
}

/// Redraws until the premises have a model.
pub fn consistent_adaptive_instance(g: &mut Gen) -> AdaptiveTheory {
    loop {
        let t = adaptive_instance(g);
        if !is_trivial(&t.logic, &t.gamma).expect("small instance") {
            return t;
        }
    }
}

/// Random goals plus the classical negation of one abnormality.
fn adaptive_goals(g: &mut Gen, t: &AdaptiveTheory) -> Vec<Formula> {
    let atoms: Vec<Atom> = t.logic.signature().iter().cloned().collect();
    let weak = t.logic.kind() == LogicKind::Lp;
    let mut goals = vec![
        Formula::Var(g.pick(&atoms)),
        g.formula(&atoms, 1, weak),
        g.formula(&atoms, 2, weak),
        g.pick(&t.omega).neg(),
    ];
    goals.dedup();
    goals
}

const MODE_STRATEGY: [(Mode, Strategy); 3] = [
    (Mode::Cup, Strategy::NormalSelections),
    (Mode::Cap, Strategy::MinimalAbnormality),
    (Mode::Dcap, Strategy::Reliability),
];

fn check_t6(g: &mut Gen) -> Outcome {
    let t = consistent_adaptive_instance(g);
    for goal in adaptive_goals(g, &t) {
        for s in Strategy::ALL {
            let p = || al_problem(&t, Some(&goal), Some(s));
            let syn = guard(al_consequence(&t, s, &goal), p)?;
            let sem = guard(al_consequence_semantic(&t, s, &goal), p)?;
            if syn != sem {
                return fail(format!("{s}: characterisation says {syn}, models say {sem}"), p());
            }
        }
    }
    Ok(())
}

fn check_chain(g: &mut Gen) -> Outcome {
    let t = adaptive_instance(g);
    for goal in adaptive_goals(g, &t) {
        let p = || al_problem(&t, Some(&goal), None);
        let r = guard(al_consequence(&t, Strategy::Reliability, &goal), p)?;
        let ma = guard(al_consequence(&t, Strategy::MinimalAbnormality, &goal), p)?;
        let ns = guard(al_consequence(&t, Strategy::NormalSelections, &goal), p)?;
        if (r && !ma) || (ma && !ns) {
            return fail(format!("r={r} ma={ma} ns={ns}"), p());
        }
    }
    Ok(())
}

fn check_t8(g: &mut Gen) -> Outcome {
    let t = consistent_adaptive_instance(g);
    let (abf, _) = guard(al_to_aba(&t), || al_problem(&t, None, None))?;
    for goal in adaptive_goals(g, &t) {
        for (mode, s) in MODE_STRATEGY {
            let p = || al_problem(&t, Some(&goal), Some(s));
            let al = guard(al_consequence(&t, s, &goal), p)?;
            for sem in Semantics::ALL {
                let aba = guard(abf.consequence(sem, mode, &goal), p)?;
                if aba != al {
                    let mut prob = p();
                    prob.semantics = Some(sem);
                    prob.mode = Some(mode);
                    return fail(format!("assumptions {sem}/{mode} say {aba}, {s} says {al}"), prob);
                }
            }
        }
    }
    Ok(())
}

/// `Ab \ {-A | A in phi}` for each choice set, as assumption sets.
fn complements(t: &AdaptiveTheory, phi: &[FormulaSet]) -> Vec<FormulaSet> {
    let mut out: Vec<FormulaSet> = phi
        .iter()
        .map(|choice| t.omega.iter().filter(|a| !choice.contains(*a)).map(|a| a.clone().neg()).collect())
        .collect();
    crate::adaptive::canonical_order(&mut out);
    out
}

fn check_l10_l12(g: &mut Gen, all_semantics: bool) -> Outcome {
    let t = consistent_adaptive_instance(g);
    let p = || al_problem(&t, None, None);
    let (abf, _) = guard(al_to_aba(&t), p)?;
    let phi = phi_of(&guard(sigma_of(&t), p)?);
    let expected = complements(&t, &phi);
    if all_semantics {
        for sem in Semantics::ALL {
            let got = guard(abf.extensions(sem), p)?;
            if got != expected {
                return fail(format!("{sem} extensions {got:?}, choice-set complements {expected:?}"), p());
            }
        }
    } else {
        for set in &expected {
            let status = guard(abf.assumption_set(set), p)?.status;
            if !status.stable {
                return fail(format!("{} is not stable", crate::adaptive::fmt_set(set)), p());
            }
        }
    }
    Ok(())
}

fn check_f1(g: &mut Gen) -> Outcome {
    let t = adaptive_instance(g);
    let p = || al_problem(&t, None, None);
    let sigma = guard(sigma_of(&t), p)?;
    let phi = phi_of(&sigma);
    let universe: Vec<Formula> = sigma.iter().flatten().cloned().collect::<FormulaSet>().into_iter().collect();
    let is_choice = |s: &FormulaSet| sigma.iter().all(|d| !d.is_disjoint(s));
    for mask in 0u32..(1 << universe.len()) {
        let s: FormulaSet = crate::adaptive::select(&universe, mask).cloned().collect();
        if is_choice(&s) && !phi.iter().any(|f| f.is_subset(&s)) {
            return fail(format!("choice set {} contains no minimal one", crate::adaptive::fmt_set(&s)), p());
        }
        let witnessed = s.iter().all(|a| sigma.iter().any(|d| d.intersection(&s).eq(std::iter::once(a))));
        if phi.contains(&s) != (is_choice(&s) && witnessed) {
            return fail(format!("witness property fails on {}", crate::adaptive::fmt_set(&s)), p());
        }
    }
    let union_phi: FormulaSet = phi.iter().flatten().cloned().collect();
    if union_phi != universe.iter().cloned().collect() {
        return fail("union of minimal choice sets differs from union of sigma".into(), p());
    }
    Ok(())
}

fn check_f11(g: &mut Gen) -> Outcome {
    let t = adaptive_instance(g);
    let atoms: Vec<Atom> = t.logic.signature().iter().cloned().collect();
    let weak = t.logic.kind() == LogicKind::Lp;
    let k = 1 + g.below(3);
    let delta: Vec<Formula> = (0..k).map(|_| g.formula(&atoms, 1, weak)).collect();
    let goal = g.formula(&atoms, 2, weak);
    let p = || al_problem(&t, Some(&goal), None);
    let mut left = t.gamma.clone();
    left.extend(delta.iter().map(|d| d.clone().neg()));
    let lhs = guard(entails(&t.logic, &left, &goal), p)?;
    let disj = Formula::disjunction(delta.iter().cloned().chain(std::iter::once(goal.clone()))).expect("nonempty");
    let rhs = guard(entails(&t.logic, &t.gamma, &disj), p)?;
    if lhs != rhs {
        let shown: Vec<String> = delta.iter().map(Formula::to_string).collect();
        return fail(format!("delta [{}]: with negations {lhs}, as disjunction {rhs}", shown.join("; ")), p());
    }
    Ok(())
}

fn check_t7(g: &mut Gen) -> Outcome {
    let atoms = g.atoms();
    let n_gamma = g.upto(g.bounds.premises.min(3));
    let gamma: Vec<Formula> = (0..n_gamma).map(|_| g.formula(&atoms, 2, false)).collect();
    let n_delta = 1 + g.below(3);
    let delta: Vec<Formula> = (0..n_delta).map(|_| g.formula(&atoms, 1, false)).collect();
    let logic = CoreLogic::cpl(atoms.clone());
    let dt = DefaultTheory::new(logic.clone(), gamma.clone(), delta.clone()).expect("generated formulas fit");
    let al = AdaptiveTheory::new(logic, gamma, delta.iter().map(|d| d.clone().neg()).collect()).expect("fits");
    let goals = [Formula::Var(g.pick(&atoms)), g.formula(&atoms, 1, false), g.formula(&atoms, 2, false)];
    for goal in goals {
        let p = || {
            let mut prob = Problem::empty(Kind::Da);
            prob.logic = Some(LogicKind::Cpl);
            prob.atoms = Some(atoms.clone());
            prob.premises = dt.gamma.clone();
            prob.assumptions = dt.delta.clone();
            prob.query = Some(goal.clone());
            prob
        };
        let da = guard(da_consequence(&dt, &goal), p)?;
        let ma = guard(al_consequence(&al, Strategy::MinimalAbnormality, &goal), p)?;
        if da != ma {
            return fail(format!("default assumptions say {da}, minimal abnormality says {ma}"), p());
        }
    }
    Ok(())
}

/// A random structured theory over literals with classical contraries.
/// Defeasible rules are named `d1`, `d2`, ...; their negations can appear
/// as conclusions or premises and then undercut. Redrawn until there is
/// something to assume and no rule concludes a plausible premise: without
/// the latter the translated framework is not flat, and its closed
/// assumption sets no longer track the arguments (see `c27_needs_flatness`
/// in the integration tests).
pub fn aspic_instance(g: &mut Gen) -> (ArgumentationSystem, KnowledgeBase) {
    loop {
        let (sys, kb) = aspic_draw(g);
        let assumes = !kb.plausible().is_empty() || !sys.theory.defeasible().is_empty();
        if assumes && translates_flat(&sys, &kb) {
            return (sys, kb);
        }
    }
}

/// No strict or defeasible rule concludes a plausible premise.
pub fn translates_flat(sys: &ArgumentationSystem, kb: &KnowledgeBase) -> bool {
    sys.theory.strict().iter().chain(sys.theory.defeasible()).all(|r| !kb.plausible().contains(&r.rule.consequent))
}

fn aspic_draw(g: &mut Gen) -> (ArgumentationSystem, KnowledgeBase) {
    let atoms = g.atoms();
    let literals: Vec<Formula> =
        atoms.iter().flat_map(|a| [Formula::Var(a.clone()), Formula::Var(a.clone()).neg()]).collect();
    let n_rules = 1 + g.below(g.bounds.rules.max(1));
    let kinds: Vec<bool> = (0..n_rules).map(|_| g.chance(0.6)).collect();
    let names: Vec<Formula> =
        (1..=kinds.iter().filter(|d| **d).count()).map(|i| Formula::atom(&format!("d{i}"))).collect();
    let undercutters: Vec<Formula> = names.iter().map(|n| n.clone().neg()).collect();
    let mut strict = Vec::new();
    let mut defeasible = Vec::new();
    for defeasible_rule in kinds {
        let n_ants = match g.below(20) {
            0..=2 => 0,
            3..=13 => 1,
            _ => 2,
        };
        let ants = g.sample(&literals, n_ants);
        let cons = if !undercutters.is_empty() && g.chance(0.15) { g.pick(&undercutters) } else { g.pick(&literals) };
        let rule = Rule::new(ants, cons);
        if defeasible_rule {
            defeasible.push((Some(names[defeasible.len()].clone()), rule));
        } else {
            strict.push((None, rule));
        }
    }
    let mut pool = literals.clone();
    pool.extend(undercutters.iter().cloned());
    let k = 1 + g.below(g.bounds.premises.max(1));
    let kb_items = g.sample(&pool, k);
    let (mut axioms, mut plausible) = (Vec::new(), Vec::new());
    for item in kb_items {
        if g.chance(0.3) {
            axioms.push(item);
        } else {
            plausible.push(item);
        }
    }
    let theory = DefeasibleTheory::new(strict, defeasible).expect("distinct names");
    let kb = KnowledgeBase::new(axioms, plausible).expect("distinct items");
    (ArgumentationSystem::new(theory, Contrariness::Classical), kb)
}

fn check_c27(g: &mut Gen) -> Outcome {
    let (sys, kb) = aspic_instance(g);
    let base = || Problem::from_aspic(&sys, &kb);
    let af = guard(StructuredAf::build(&sys, &kb), base)?;
    let (abf, _) = guard(aspic_to_aba(&sys, &kb), base)?;
    let goals: Vec<Formula> = sys.language(&kb).into_iter().collect();
    for sem in [Semantics::Stable, Semantics::Preferred] {
        for mode in Mode::ALL {
            for goal in &goals {
                let p = || {
                    let mut prob = base();
                    prob.query = Some(goal.clone());
                    prob.semantics = Some(sem);
                    prob.mode = Some(mode);
                    prob
                };
                let a = guard(af.consequence(sem, mode, goal), p)?;
                let b = guard(abf.consequence(sem, mode, goal), p)?;
                if a != b {
                    return fail(format!("arguments say {a}, assumptions say {b}"), p());
                }
            }
        }
    }
    Ok(())
}

/// A random framework over token sentences: assumptions `a`, `b`, `c` with
/// contraries `na`, `nb`, `nc` (or another assumption), two plain atoms and
/// a few rules. Redrawn until the theory is consistent under the rules.
pub fn token_abf(g: &mut Gen) -> Abf {
    loop {
        let k = 1 + g.below(3);
        let ab: Vec<Formula> = ["a", "b", "c"][..k].iter().map(|n| Formula::atom(n)).collect();
        let mut contrary: Vec<(Formula, Formula)> =
            ab.iter().map(|a| (a.clone(), Formula::atom(&format!("n{a}")))).collect();
        // occasionally two assumptions are each other's contraries
        if k >= 2 && g.chance(0.25) {
            contrary[0].1 = ab[1].clone();
            contrary[1].1 = ab[0].clone();
        }
        let mut sentences: Vec<Formula> = ab.clone();
        for (_, c) in &contrary {
            if !sentences.contains(c) {
                sentences.push(c.clone());
            }
        }
        sentences.push(Formula::atom("x"));
        sentences.push(Formula::atom("y"));
        let contraries: Vec<Formula> = contrary.iter().map(|(_, c)| c.clone()).collect();
        let n_rules = g.upto(g.bounds.rules.min(5));
        let mut rules = Vec::new();
        for _ in 0..n_rules {
            let n_ants = match g.below(10) {
                0 => 0,
                1..=6 => 1,
                _ => 2,
            };
            let ants = g.sample(&sentences, n_ants);
            let cons = if g.chance(0.5) { g.pick(&contraries) } else { g.pick(&sentences) };
            rules.push(Rule::new(ants, cons));
        }
        let n_gamma = g.upto(2);
        let plain = [Formula::atom("x"), Formula::atom("y")];
        let gamma: Vec<Formula> = (0..n_gamma).map(|_| g.pick(&plain)).collect::<FormulaSet>().into_iter().collect();
        let abf = Abf::new(RuleSet::Explicit(rules), gamma.clone(), ab, contrary.into_iter().collect())
            .expect("total contraries");
        if is_r_consistent(&abf, &gamma).expect("explicit rules") {
            return abf;
        }
    }
}

fn check_t31(g: &mut Gen) -> Outcome {
    let abf = token_abf(g);
    let p = || Problem::from_abf(&abf);
    let (t, _) = guard(aba_to_al(&abf), p)?;
    let phi = phi_of(&guard(sigma_of(&t), p)?);
    let mut expected: Vec<FormulaSet> = phi
        .iter()
        .map(|choice| {
            abf.assumptions().iter().filter(|a| !choice.contains(&(*a).clone().weak_neg())).cloned().collect()
        })
        .collect();
    crate::adaptive::canonical_order(&mut expected);
    let got = guard(abf.extensions(Semantics::Naive), p)?;
    if got != expected {
        return fail(format!("naive sets {got:?}, choice-set complements {expected:?}"), p());
    }
    Ok(())
}

fn check_t32(g: &mut Gen, all_semantics: bool) -> Outcome {
    let abf = token_abf(g);
    let p = || Problem::from_abf(&abf);
    let (t, _) = guard(aba_to_al(&abf), p)?;
    let semantics: &[Semantics] = if all_semantics {
        if !guard(abf.satisfies_ex(), p)? {
            return Ok(());
        }
        &Semantics::ALL
    } else {
        &[Semantics::Naive]
    };
    let goals: Vec<Formula> = t.logic.signature().iter().cloned().map(Formula::Var).collect();
    for goal in &goals {
        for (mode, s) in MODE_STRATEGY {
            let al = guard(al_consequence(&t, s, goal), p)?;
            for &sem in semantics {
                let aba = guard(abf.consequence(sem, mode, goal), p)?;
                if aba != al {
                    let mut prob = p();
                    prob.query = Some(goal.clone());
                    prob.semantics = Some(sem);
                    prob.mode = Some(mode);
                    return fail(
                        format!("assumptions {sem}/{mode} say {aba}, {s} over the translation says {al}"),
                        prob,
                    );
                }
            }
        }
    }
    Ok(())
}

fn check_l28(g: &mut Gen) -> Outcome {
    let abf = token_abf(g);
    let p = || Problem::from_abf(&abf);
    let (t, _) = guard(aba_to_al(&abf), p)?;
    let RuleSet::Explicit(rules) = abf.rules() else { unreachable!("token frameworks list their rules") };
    let sentences: Vec<Formula> = t.logic.signature().iter().cloned().map(Formula::Var).collect();
    let k = g.upto(3);
    let base = g.sample(&sentences, k);
    let derived = closure(rules, &base);
    let consistent = guard(is_r_consistent(&abf, &base), p)?;
    let mut premises = base.clone();
    premises.extend(rules.iter().map(rule_formula));
    for goal in &sentences {
        let semantic = guard(entails(&t.logic, &premises, goal), p)?;
        let syntactic = derived.contains(goal);
        if syntactic && !semantic {
            return fail(format!("{goal} derivable from {base:?} but not entailed"), p());
        }
        if consistent && semantic && !syntactic {
            return fail(format!("{goal} entailed by consistent {base:?} but not derivable"), p());
        }
    }
    Ok(())
}

fn check_f30(g: &mut Gen) -> Outcome {
    let abf = token_abf(g);
    let p = || Problem::from_abf(&abf);
    let (t, _) = guard(aba_to_al(&abf), p)?;
    let logic = &t.logic;
    for (a, c) in logic.pairs() {
        let (a, c) = (Formula::Var(a.clone()), Formula::Var(c.clone()));
        for (x, y) in [(&a, &c), (&c, &a)] {
            if !guard(entails(logic, std::slice::from_ref(x), &y.clone().weak_neg()), p)? {
                return fail(format!("{x} does not entail ~{y}"), p());
            }
        }
    }
    let atoms: Vec<Atom> = logic.signature().iter().cloned().collect();
    let n_gamma = g.upto(3);
    let gamma: Vec<Formula> = (0..n_gamma).map(|_| g.formula(&atoms, 2, true)).collect();
    let k = g.upto(2);
    let delta: Vec<Formula> = (0..k).map(|_| g.formula(&atoms, 1, true)).collect();
    let goal = g.formula(&atoms, 1, true);
    let mut left = gamma.clone();
    left.extend(delta.iter().cloned());
    let lhs = guard(entails(logic, &left, &goal), p)?;
    let disj = Formula::disjunction(delta.iter().map(|d| d.clone().weak_neg()).chain(std::iter::once(goal.clone())))
        .expect("nonempty");
    let rhs = guard(entails(logic, &gamma, &disj), p)?;
    if lhs != rhs {
        let mut prob = Problem::from_adaptive(&t);
        prob.premises = gamma;
        prob.query = Some(goal);
        return fail(format!("deduction property fails for delta {delta:?}"), prob);
    }
    Ok(())
}

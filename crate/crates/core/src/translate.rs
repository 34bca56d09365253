//! Translations between adaptive theories, assumption-based frameworks and
//! structured argumentation.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::aba::{closure, Abf, Rule, RuleSet};
use crate::adaptive::{AdaptiveTheory, FormulaSet};
use crate::aspic::{ArgumentationSystem, Contrariness, DefeasibleTheory, KnowledgeBase};
use crate::error::{Error, Result};
use crate::logic::{Atom, CoreLogic, Formula, ModelSet};

/// Largest antecedent list of a materialized rule.
pub const MAX_MATERIALIZED_ANTECEDENTS: usize = 3;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Direction {
    AlToAba,
    AspicToAba,
    AbaToAl,
    AlToAspic,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::AlToAba => "al2aba",
            Direction::AspicToAba => "aspic2aba",
            Direction::AbaToAl => "aba2al",
            Direction::AlToAspic => "al2aspic",
        })
    }
}

impl FromStr for Direction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Direction> {
        match s {
            "al2aba" => Ok(Direction::AlToAba),
            "aspic2aba" => Ok(Direction::AspicToAba),
            "aba2al" => Ok(Direction::AbaToAl),
            "al2aspic" => Ok(Direction::AlToAspic),
            other => Err(Error::Usage(format!("unknown direction `{other}`"))),
        }
    }
}

/// What a translation introduced: fresh sentences (with what they stand
/// for), the source-to-target mapping of abnormalities or assumptions, and
/// free-form notes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranslationReport {
    pub direction: Direction,
    pub fresh: Vec<(Formula, String)>,
    pub mapping: Vec<(Formula, Formula)>,
    pub notes: Vec<String>,
}

impl TranslationReport {
    fn new(direction: Direction) -> TranslationReport {
        TranslationReport { direction, fresh: Vec::new(), mapping: Vec::new(), notes: Vec::new() }
    }
}

impl fmt::Display for TranslationReport {
    /// Comment lines, so the report can trail a problem file.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "# translation: {}", self.direction)?;
        for (token, meaning) in &self.fresh {
            writeln!(f, "# fresh {token}: {meaning}")?;
        }
        for (from, to) in &self.mapping {
            writeln!(f, "# map {from} => {to}")?;
        }
        for note in &self.notes {
            writeln!(f, "# note: {note}")?;
        }
        Ok(())
    }
}

/// Assumptions are the classical negations of the abnormalities, each
/// contrary to its abnormality; rules are everything the core logic
/// entails.
pub fn al_to_aba(theory: &AdaptiveTheory) -> Result<(Abf, TranslationReport)> {
    if theory.omega.is_empty() {
        return Err(Error::EmptyAbnormalities);
    }
    let mut report = TranslationReport::new(Direction::AlToAba);
    let mut contrary = BTreeMap::new();
    for a in &theory.omega {
        let assumption = a.clone().neg();
        report.mapping.push((a.clone(), assumption.clone()));
        contrary.insert(assumption, a.clone());
    }
    report.notes.push(format!("rules are entailments of {}", theory.logic.kind()));
    let ab = contrary.keys().cloned().collect();
    let abf = Abf::new(RuleSet::Oracle(theory.logic.clone()), theory.gamma.clone(), ab, contrary)?;
    Ok((abf, report))
}

/// First name of the form `<stem><k>` (k = 1, 2, ...) not in `taken`.
fn fresh_token(stem: &str, k: &mut usize, taken: &mut FormulaSet) -> Formula {
    loop {
        *k += 1;
        let candidate = Formula::atom(&format!("{stem}{k}"));
        if taken.insert(candidate.clone()) {
            return candidate;
        }
    }
}

/// Each defeasible rule `r` becomes a strict rule with an extra assumption
/// `n__<i>` whose contrary `nc__<i>` follows from any contrary of the rule's
/// consequent or of the rule's name. A plausible premise keeps its contrary
/// when it has exactly one in the language; otherwise it gets a fresh
/// contrary `ct__<k>` derived from each of its contraries.
pub fn aspic_to_aba(system: &ArgumentationSystem, kb: &KnowledgeBase) -> Result<(Abf, TranslationReport)> {
    let language = system.language(kb);
    let mut taken = language.clone();
    let mut report = TranslationReport::new(Direction::AspicToAba);
    let mut rules: Vec<Rule> = system.theory.strict().iter().map(|r| r.rule.clone()).collect();
    let mut ab: Vec<Formula> = kb.plausible().to_vec();
    let mut contrary = BTreeMap::new();
    let (mut kn, mut kc, mut kt) = (0, 0, 0);
    for named in system.theory.defeasible() {
        let n = fresh_token("n__", &mut kn, &mut taken);
        let nc = fresh_token("nc__", &mut kc, &mut taken);
        report.fresh.push((n.clone(), format!("name of {}: {}", named.name, named.rule.display_with("=>"))));
        report.fresh.push((nc.clone(), format!("contrary of {n}")));
        let mut antecedents = vec![n.clone()];
        antecedents.extend(named.rule.antecedents.iter().cloned());
        rules.push(Rule::new(antecedents, named.rule.consequent.clone()));
        let rebutters = system.contrary.contraries_in(&named.rule.consequent, &language);
        let undercutters = system.contrary.contraries_in(&named.name, &language);
        let attackers: BTreeSet<&Formula> = rebutters.into_iter().chain(undercutters).collect();
        for c in attackers {
            rules.push(Rule::new(vec![c.clone()], nc.clone()));
        }
        ab.push(n.clone());
        contrary.insert(n, nc);
    }
    for premise in kb.plausible() {
        let cs = system.contrary.contraries_in(premise, &language);
        if cs.len() == 1 {
            contrary.insert(premise.clone(), cs[0].clone());
        } else {
            let token = fresh_token("ct__", &mut kt, &mut taken);
            report.fresh.push((token.clone(), format!("contrary of {premise}")));
            for c in cs {
                rules.push(Rule::new(vec![c.clone()], token.clone()));
            }
            contrary.insert(premise.clone(), token);
        }
    }
    if ab.is_empty() {
        return Err(Error::EmptyAssumptions);
    }
    report.notes.push("defeasible rules are also undercut through contraries of their names".into());
    let abf = Abf::new(RuleSet::Explicit(rules), kb.axioms().to_vec(), ab, contrary)?;
    Ok((abf, report))
}

/// The adaptive theory over the three-valued logic with contrary pairing
/// that an assumption-based framework translates to.
pub type L3Theory = AdaptiveTheory;

/// `a1, ..., an -> b` as `~a1 | ... | ~an | b`.
pub fn rule_formula(rule: &Rule) -> Formula {
    let parts = rule.antecedents.iter().map(|a| a.clone().weak_neg()).chain(std::iter::once(rule.consequent.clone()));
    Formula::disjunction(parts).expect("a rule has a consequent")
}

fn token(f: &Formula, role: &str) -> Result<Atom> {
    f.as_atom().cloned().ok_or_else(|| Error::Fragment(format!("{role} `{f}` is not an atom")))
}

/// Pairs each assumption with its contrary; the contraries must be atoms
/// forming a matching.
pub fn contrary_pairs(abf: &Abf) -> Result<Vec<(Atom, Atom)>> {
    let mut partner: BTreeMap<Atom, Atom> = BTreeMap::new();
    for (a, c) in abf.contraries() {
        let (a, c) = (token(a, "assumption")?, token(c, "contrary")?);
        if a == c {
            return Err(Error::Fragment(format!("`{a}` is its own contrary")));
        }
        for (x, y) in [(&a, &c), (&c, &a)] {
            match partner.get(x) {
                Some(p) if p != y => {
                    return Err(Error::Fragment(format!("`{x}` would be contrary to both `{p}` and `{y}`")))
                }
                _ => {
                    partner.insert(x.clone(), y.clone());
                }
            }
        }
    }
    Ok(partner.into_iter().filter(|(a, c)| a < c).collect())
}

/// Premises are the theory plus one disjunction per rule, abnormalities the
/// weak negations of the assumptions.
pub fn aba_to_al(abf: &Abf) -> Result<(L3Theory, TranslationReport)> {
    let RuleSet::Explicit(rules) = abf.rules() else {
        return Err(Error::Fragment("rules must be listed explicitly".into()));
    };
    let mut signature = BTreeSet::new();
    for f in abf.gamma().iter().chain(abf.assumptions()) {
        signature.insert(token(f, "sentence")?);
    }
    for r in rules {
        for f in r.antecedents.iter().chain(std::iter::once(&r.consequent)) {
            signature.insert(token(f, "sentence")?);
        }
    }
    let pairs = contrary_pairs(abf)?;
    let logic = CoreLogic::l3r(signature, pairs).map_err(|e| Error::Fragment(e.to_string()))?;
    let mut premises = abf.gamma().to_vec();
    premises.extend(rules.iter().map(rule_formula));
    let mut report = TranslationReport::new(Direction::AbaToAl);
    let omega: Vec<Formula> = abf
        .assumptions()
        .iter()
        .map(|a| {
            let w = a.clone().weak_neg();
            report.mapping.push((a.clone(), w.clone()));
            w
        })
        .collect();
    let theory = AdaptiveTheory::new(logic, premises, omega)?;
    Ok((theory, report))
}

/// No sentence is derived from `base` under the explicit rules of `abf`
/// together with its contrary.
pub fn is_r_consistent(abf: &Abf, base: &[Formula]) -> Result<bool> {
    let RuleSet::Explicit(rules) = abf.rules() else {
        return Err(Error::Fragment("rules must be listed explicitly".into()));
    };
    let derived = closure(rules, base);
    Ok(abf.contraries().iter().all(|(a, c)| !(derived.contains(a) && derived.contains(c))))
}

/// The minimal rules `A1, ..., An -> A` (n at most three, `A` not among the
/// antecedents) that the core logic validates over `universe`.
pub fn materialize_rules(logic: &CoreLogic, universe: &FormulaSet) -> Result<Vec<Rule>> {
    let items: Vec<&Formula> = universe.iter().collect();
    let models = ModelSet::new(logic, &[], &universe.iter().cloned().collect::<Vec<_>>())?;
    let rows: Vec<Vec<bool>> = items.iter().map(|f| models.designation(f)).collect::<Result<_>>()?;
    let n = items.len();
    let mut by_size: Vec<Vec<Vec<usize>>> = vec![vec![Vec::new()]];
    for size in 1..=MAX_MATERIALIZED_ANTECEDENTS.min(n) {
        let mut next = Vec::new();
        for prefix in &by_size[size - 1] {
            let start = prefix.last().map_or(0, |&l| l + 1);
            for i in start..n {
                let mut s = prefix.clone();
                s.push(i);
                next.push(s);
            }
        }
        by_size.push(next);
    }
    let mut found: Vec<(Vec<usize>, usize)> = Vec::new();
    for subsets in &by_size {
        for s in subsets {
            let live: Vec<usize> = (0..models.len()).filter(|&m| s.iter().all(|&i| rows[i][m])).collect();
            for (goal, row) in rows.iter().enumerate().take(n) {
                if s.contains(&goal) || !live.iter().all(|&m| row[m]) {
                    continue;
                }
                let smaller = found.iter().any(|(t, g)| *g == goal && t.iter().all(|i| s.contains(i)));
                if !smaller {
                    found.push((s.clone(), goal));
                }
            }
        }
    }
    Ok(found
        .into_iter()
        .map(|(s, g)| Rule::new(s.iter().map(|&i| items[i].clone()).collect(), items[g].clone()))
        .collect())
}

/// Structured counterpart of an adaptive theory, through its assumption
/// framework: rules materialized over the subformulas of the premises,
/// abnormalities, assumptions and `extra` become strict rules; the premises
/// become axioms and the remaining assumptions plausible premises.
pub fn al_to_aspic(
    theory: &AdaptiveTheory,
    extra: &[Formula],
) -> Result<(ArgumentationSystem, KnowledgeBase, TranslationReport)> {
    let (abf, mut report) = al_to_aba(theory)?;
    report.direction = Direction::AlToAspic;
    let mut universe = FormulaSet::new();
    for f in theory.gamma.iter().chain(&theory.omega).chain(abf.assumptions()).chain(extra) {
        f.subformulas(&mut universe);
    }
    let rules = materialize_rules(&theory.logic, &universe)?;
    report.notes.push(format!(
        "{} strict rules over {} sentences, at most {MAX_MATERIALIZED_ANTECEDENTS} antecedents",
        rules.len(),
        universe.len()
    ));
    let strict = rules.into_iter().map(|r| (None, r)).collect();
    let theory_rules = DefeasibleTheory::new(strict, Vec::new())?;
    let contrary: BTreeMap<Formula, FormulaSet> =
        abf.contraries().iter().map(|(a, c)| (a.clone(), FormulaSet::from([c.clone()]))).collect();
    let axioms: Vec<Formula> = theory.gamma.clone();
    let plausible: Vec<Formula> = abf.assumptions().iter().filter(|a| !axioms.contains(a)).cloned().collect();
    let kb = KnowledgeBase::new(axioms, plausible)?;
    Ok((ArgumentationSystem::new(theory_rules, Contrariness::Explicit(contrary)), kb, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adaptive::{al_consequence, Strategy};
    use crate::aspic::StructuredAf;
    use crate::dung::{Mode, Semantics};

    fn f(s: &str) -> Formula {
        s.parse().unwrap()
    }

    fn set(items: &[&str]) -> FormulaSet {
        items.iter().map(|s| f(s)).collect()
    }

    fn atoms(names: &[&str]) -> Vec<Atom> {
        names.iter().map(|n| Atom::new(n).unwrap()).collect()
    }

    fn rule(ants: &[&str], cons: &str) -> Rule {
        Rule::new(ants.iter().map(|s| f(s)).collect(), f(cons))
    }

    fn example_one() -> AdaptiveTheory {
        let sig = atoms(&["p", "q", "r", "s"]);
        let omega = sig.iter().map(Formula::contradiction).collect();
        let gamma = ["~p", "~q", "p | q", "p | r", "q | s"].iter().map(|s| f(s)).collect();
        AdaptiveTheory::new(CoreLogic::lp(sig), gamma, omega).unwrap()
    }

    #[test]
    fn example_one_stable_assumption_sets() {
        let (abf, _) = al_to_aba(&example_one()).unwrap();
        let all = set(&["-(p & ~p)", "-(q & ~q)", "-(r & ~r)", "-(s & ~s)"]);
        let without = |x: &str| -> FormulaSet { all.iter().filter(|a| **a != f(x)).cloned().collect() };
        let mut expected = vec![without("-(p & ~p)"), without("-(q & ~q)")];
        crate::adaptive::canonical_order(&mut expected);
        assert_eq!(abf.extensions(Semantics::Stable).unwrap(), expected);
    }

    #[test]
    fn single_abnormality() {
        let logic = CoreLogic::cpl(atoms(&["a"]));
        let t = AdaptiveTheory::new(logic.clone(), vec![], vec![f("a")]).unwrap();
        let (abf, _) = al_to_aba(&t).unwrap();
        for sem in Semantics::ALL {
            assert_eq!(abf.extensions(sem).unwrap(), vec![set(&["-a"])]);
        }
        let t = AdaptiveTheory::new(logic, vec![f("a")], vec![f("a")]).unwrap();
        let (abf, _) = al_to_aba(&t).unwrap();
        for sem in Semantics::ALL {
            assert_eq!(abf.extensions(sem).unwrap(), vec![set(&[])]);
        }
    }

    #[test]
    fn empty_abnormalities_rejected() {
        let t = AdaptiveTheory::new(CoreLogic::cpl(atoms(&["a"])), vec![], vec![]).unwrap();
        assert_eq!(al_to_aba(&t).unwrap_err(), Error::EmptyAbnormalities);
        assert_eq!(al_to_aspic(&t, &[]).unwrap_err(), Error::EmptyAbnormalities);
    }

    fn example_three() -> (ArgumentationSystem, KnowledgeBase) {
        let theory =
            DefeasibleTheory::new(vec![(None, rule(&["-q"], "-p"))], vec![(None, rule(&["-p"], "s"))]).unwrap();
        let kb = KnowledgeBase::new(vec![f("-s")], vec![f("-q"), f("-p"), f("q")]).unwrap();
        (ArgumentationSystem::new(theory, Contrariness::Classical), kb)
    }

    #[test]
    fn example_three_to_aba() {
        let (sys, kb) = example_three();
        let (abf, report) = aspic_to_aba(&sys, &kb).unwrap();
        assert_eq!(abf.assumptions().len(), 4);
        assert_eq!(abf.assumptions().iter().cloned().collect::<FormulaSet>(), set(&["-q", "-p", "q", "n__1"]));
        let RuleSet::Explicit(rules) = abf.rules() else { panic!() };
        assert_eq!(rules, &vec![rule(&["-q"], "-p"), rule(&["n__1", "-p"], "s"), rule(&["-s"], "nc__1")]);
        assert_eq!(abf.contrary(&f("q")), Some(&f("-q")));
        // -p has no contrary in the language
        assert_eq!(abf.contrary(&f("-p")), Some(&f("ct__1")));
        assert_eq!(report.fresh.len(), 3);
        let af = StructuredAf::build(&sys, &kb).unwrap();
        for sem in [Semantics::Stable, Semantics::Preferred] {
            for mode in Mode::ALL {
                for goal in ["s", "-s", "-p", "q", "-q"] {
                    assert_eq!(
                        abf.consequence(sem, mode, &f(goal)).unwrap(),
                        af.consequence(sem, mode, &f(goal)).unwrap(),
                        "{sem} {mode} {goal}"
                    );
                }
            }
        }
    }

    #[test]
    fn multiple_contraries_get_a_token() {
        let mut map = BTreeMap::new();
        map.insert(f("a"), set(&["b", "c"]));
        let sys = ArgumentationSystem::new(DefeasibleTheory::new(vec![], vec![]).unwrap(), Contrariness::Explicit(map));
        let kb = KnowledgeBase::new(vec![], vec![f("a")]).unwrap();
        let (abf, _) = aspic_to_aba(&sys, &kb).unwrap();
        let RuleSet::Explicit(rules) = abf.rules() else { panic!() };
        assert_eq!(rules, &vec![rule(&["b"], "ct__1"), rule(&["c"], "ct__1")]);
    }

    #[test]
    fn rule_translation() {
        assert_eq!(rule_formula(&rule(&["a", "b"], "c")), f("~a | ~b | c"));
        assert_eq!(rule_formula(&rule(&[], "t")), f("t"));
    }

    fn token_abf(rules: Vec<Rule>, gamma: &[&str], ab: &[&str], contraries: &[(&str, &str)]) -> Result<Abf> {
        Abf::new(
            RuleSet::Explicit(rules),
            gamma.iter().map(|s| f(s)).collect(),
            ab.iter().map(|s| f(s)).collect(),
            contraries.iter().map(|(a, c)| (f(a), f(c))).collect(),
        )
    }

    #[test]
    fn aba_to_al_shape() {
        let abf = token_abf(vec![rule(&["a", "b"], "c")], &[], &["a", "b"], &[("a", "c"), ("b", "d")]).unwrap();
        let (t, _) = aba_to_al(&abf).unwrap();
        assert_eq!(t.gamma, vec![f("~a | ~b | c")]);
        assert_eq!(t.omega, vec![f("~a"), f("~b")]);
        assert_eq!(t.logic.partner(&Atom::new("a").unwrap()), Some(&Atom::new("c").unwrap()));
    }

    #[test]
    fn aba_to_al_rejects_compound_contraries() {
        let abf = token_abf(vec![], &[], &["a"], &[("a", "-a")]).unwrap();
        assert!(matches!(aba_to_al(&abf), Err(Error::Fragment(_))));
        let abf = token_abf(vec![], &[], &["a", "b"], &[("a", "c"), ("b", "c")]).unwrap();
        assert!(matches!(aba_to_al(&abf), Err(Error::Fragment(_))));
    }

    #[test]
    fn aba_to_al_matches_on_example() {
        // b and c attack each other through rules; a is unopposed
        let abf = token_abf(
            vec![rule(&["b"], "nc"), rule(&["c"], "nb")],
            &["g"],
            &["a", "b", "c"],
            &[("a", "na"), ("b", "nb"), ("c", "nc")],
        )
        .unwrap();
        let (t, _) = aba_to_al(&abf).unwrap();
        for (mode, strategy) in [
            (Mode::Cup, Strategy::NormalSelections),
            (Mode::Cap, Strategy::MinimalAbnormality),
            (Mode::Dcap, Strategy::Reliability),
        ] {
            for goal in ["a", "b", "c", "g", "na", "nb", "nc"] {
                assert_eq!(
                    abf.consequence(Semantics::Naive, mode, &f(goal)).unwrap(),
                    al_consequence(&t, strategy, &f(goal)).unwrap(),
                    "{mode} {goal}"
                );
            }
        }
    }

    #[test]
    fn al_to_aspic_single_abnormality() {
        let logic = CoreLogic::cpl(atoms(&["a"]));
        for gamma in [vec![], vec![f("a")]] {
            let t = AdaptiveTheory::new(logic.clone(), gamma, vec![f("a")]).unwrap();
            let (sys, kb, _) = al_to_aspic(&t, &[f("-a")]).unwrap();
            let af = StructuredAf::build(&sys, &kb).unwrap();
            for goal in ["-a", "a"] {
                assert_eq!(
                    af.consequence(Semantics::Preferred, Mode::Cap, &f(goal)).unwrap(),
                    al_consequence(&t, Strategy::MinimalAbnormality, &f(goal)).unwrap(),
                    "{goal}"
                );
            }
        }
    }

    #[test]
    fn r_consistency() {
        let abf = token_abf(vec![rule(&["g"], "a")], &["g"], &["x"], &[("x", "y")]).unwrap();
        assert!(is_r_consistent(&abf, &[f("g")]).unwrap());
        assert!(!is_r_consistent(&abf, &[f("x"), f("y")]).unwrap());
    }

    #[test]
    fn direction_names() {
        for d in ["al2aba", "aspic2aba", "aba2al", "al2aspic"] {
            assert_eq!(d.parse::<Direction>().unwrap().to_string(), d);
        }
    }
}

//! Structured argumentation with strict and defeasible rules, without
//! preferences.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use crate::aba::Rule;
use crate::adaptive::FormulaSet;
use crate::dung::{AttackGraph, Mode, Semantics};
use crate::error::{Error, Result};
use crate::logic::Formula;

/// Upper bound on the number of arguments built from one theory.
pub const MAX_ARGUMENTS: usize = 4096;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NamedRule {
    pub name: Formula,
    pub rule: Rule,
}

/// Strict and defeasible rules, each with a unique name sentence.
#[derive(Clone, Debug)]
pub struct DefeasibleTheory {
    strict: Vec<NamedRule>,
    defeasible: Vec<NamedRule>,
}

impl DefeasibleTheory {
    /// Rules given without a name get a fresh atom `rn_<k>`.
    pub fn new(
        strict: Vec<(Option<Formula>, Rule)>,
        defeasible: Vec<(Option<Formula>, Rule)>,
    ) -> Result<DefeasibleTheory> {
        let mut used: FormulaSet = FormulaSet::new();
        for (name, rule) in strict.iter().chain(&defeasible) {
            used.extend(name.iter().cloned());
            used.extend(rule.antecedents.iter().cloned());
            used.insert(rule.consequent.clone());
        }
        let mut seen = FormulaSet::new();
        let mut counter = 0;
        let mut name_all = |rules: Vec<(Option<Formula>, Rule)>| -> Result<Vec<NamedRule>> {
            let mut out = Vec::new();
            for (name, rule) in rules {
                let name = match name {
                    Some(n) => n,
                    None => loop {
                        counter += 1;
                        let candidate = Formula::atom(&format!("rn_{counter}"));
                        if !used.contains(&candidate) {
                            break candidate;
                        }
                    },
                };
                if !seen.insert(name.clone()) {
                    return Err(Error::Naming(format!("`{name}` names two rules")));
                }
                out.push(NamedRule { name, rule });
            }
            Ok(out)
        };
        let strict = name_all(strict)?;
        let defeasible = name_all(defeasible)?;
        Ok(DefeasibleTheory { strict, defeasible })
    }

    pub fn strict(&self) -> &[NamedRule] {
        &self.strict
    }

    pub fn defeasible(&self) -> &[NamedRule] {
        &self.defeasible
    }
}

/// The contrariness function: explicit finite contrary sets, or classical
/// contradiction (`B` is a contrary of `A` when both reduce to the same
/// formula as `-A` after removing leading double negations).
#[derive(Clone, Debug)]
pub enum Contrariness {
    Classical,
    Explicit(BTreeMap<Formula, FormulaSet>),
}

impl Contrariness {
    /// Whether `b` is a contrary of `a`.
    pub fn is_contrary(&self, b: &Formula, a: &Formula) -> bool {
        match self {
            Contrariness::Classical => {
                let neg = a.clone().neg();
                b.strip_double_negation() == neg.strip_double_negation()
            }
            Contrariness::Explicit(map) => map.get(a).is_some_and(|set| set.contains(b)),
        }
    }

    /// Contraries of `a` that occur in `language`.
    pub fn contraries_in<'a>(&self, a: &Formula, language: &'a FormulaSet) -> Vec<&'a Formula> {
        match self {
            Contrariness::Explicit(map) => match map.get(a) {
                Some(set) => language.iter().filter(|b| set.contains(*b)).collect(),
                None => Vec::new(),
            },
            Contrariness::Classical => language.iter().filter(|b| self.is_contrary(b, a)).collect(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ArgumentationSystem {
    pub theory: DefeasibleTheory,
    pub contrary: Contrariness,
}

impl ArgumentationSystem {
    pub fn new(theory: DefeasibleTheory, contrary: Contrariness) -> ArgumentationSystem {
        ArgumentationSystem { theory, contrary }
    }

    /// Every sentence mentioned by the rules, their names, the explicit
    /// contrariness function and `kb`.
    pub fn language(&self, kb: &KnowledgeBase) -> FormulaSet {
        let mut out: FormulaSet = kb.axioms.iter().chain(&kb.plausible).cloned().collect();
        for r in self.theory.strict.iter().chain(&self.theory.defeasible) {
            out.insert(r.name.clone());
            out.extend(r.rule.antecedents.iter().cloned());
            out.insert(r.rule.consequent.clone());
        }
        if let Contrariness::Explicit(map) = &self.contrary {
            for (a, cs) in map {
                out.insert(a.clone());
                out.extend(cs.iter().cloned());
            }
        }
        out
    }
}

/// Axioms (`K_n`) and plausible premises (`K_a`), disjoint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KnowledgeBase {
    axioms: Vec<Formula>,
    plausible: Vec<Formula>,
}

impl KnowledgeBase {
    pub fn new(axioms: Vec<Formula>, plausible: Vec<Formula>) -> Result<KnowledgeBase> {
        let axioms: Vec<Formula> = axioms.into_iter().collect::<FormulaSet>().into_iter().collect();
        let plausible: Vec<Formula> = plausible.into_iter().collect::<FormulaSet>().into_iter().collect();
        if let Some(both) = axioms.iter().find(|a| plausible.contains(a)) {
            return Err(Error::KnowledgeBase(format!("`{both}` is both an axiom and a plausible premise")));
        }
        Ok(KnowledgeBase { axioms, plausible })
    }

    pub fn axioms(&self) -> &[Formula] {
        &self.axioms
    }

    pub fn plausible(&self) -> &[Formula] {
        &self.plausible
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Step {
    Premise,
    /// Index into the strict rules.
    Strict(usize),
    /// Index into the defeasible rules.
    Defeasible(usize),
}

/// An argument, stored in an arena; `children` and `sub` are arena ids.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Argument {
    pub conclusion: Formula,
    pub step: Step,
    pub children: Vec<usize>,
    /// All subarguments, including the argument itself.
    pub sub: BTreeSet<usize>,
    pub prem: FormulaSet,
    /// Defeasible rules used anywhere in the argument.
    pub defeasible_rules: BTreeSet<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum AttackKind {
    Undermine,
    Rebut,
    Undercut,
}

impl fmt::Display for AttackKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AttackKind::Undermine => "undermine",
            AttackKind::Rebut => "rebut",
            AttackKind::Undercut => "undercut",
        })
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Attack {
    pub attacker: usize,
    pub target: usize,
    pub kind: AttackKind,
}

/// All arguments premised on `kb`, in construction order: premise
/// arguments first, then rule applications round by round. An argument may
/// not conclude what one of its proper subarguments concludes.
pub fn build_arguments(system: &ArgumentationSystem, kb: &KnowledgeBase) -> Result<Vec<Argument>> {
    let mut args: Vec<Argument> = Vec::new();
    let mut premises: Vec<&Formula> = kb.axioms.iter().chain(&kb.plausible).collect();
    premises.sort_by_cached_key(|f| f.to_string());
    for p in premises {
        let id = args.len();
        args.push(Argument {
            conclusion: p.clone(),
            step: Step::Premise,
            children: Vec::new(),
            sub: BTreeSet::from([id]),
            prem: FormulaSet::from([p.clone()]),
            defeasible_rules: BTreeSet::new(),
        });
    }
    let rules: Vec<(Step, &Rule)> = system
        .theory
        .strict
        .iter()
        .enumerate()
        .map(|(i, r)| (Step::Strict(i), &r.rule))
        .chain(system.theory.defeasible.iter().enumerate().map(|(i, r)| (Step::Defeasible(i), &r.rule)))
        .collect();
    let mut built: HashSet<(Step, Vec<usize>)> = HashSet::new();
    loop {
        let mut by_conclusion: BTreeMap<&Formula, Vec<usize>> = BTreeMap::new();
        for (i, a) in args.iter().enumerate() {
            by_conclusion.entry(&a.conclusion).or_default().push(i);
        }
        let mut fresh: Vec<Argument> = Vec::new();
        for &(step, rule) in &rules {
            let pools: Vec<&[usize]> =
                rule.antecedents.iter().map(|a| by_conclusion.get(a).map_or(&[][..], |v| v.as_slice())).collect();
            if pools.iter().any(|p| p.is_empty()) {
                continue;
            }
            let mut pick = vec![0usize; pools.len()];
            'combos: loop {
                let children: Vec<usize> = pick.iter().zip(&pools).map(|(&k, p)| p[k]).collect();
                if !built.contains(&(step, children.clone())) {
                    let sub: BTreeSet<usize> = children.iter().flat_map(|&c| args[c].sub.iter().copied()).collect();
                    if sub.iter().all(|&s| args[s].conclusion != rule.consequent) {
                        built.insert((step, children.clone()));
                        let id = args.len() + fresh.len();
                        let mut sub = sub;
                        sub.insert(id);
                        let mut defeasible_rules: BTreeSet<usize> =
                            children.iter().flat_map(|&c| args[c].defeasible_rules.iter().copied()).collect();
                        if let Step::Defeasible(i) = step {
                            defeasible_rules.insert(i);
                        }
                        fresh.push(Argument {
                            conclusion: rule.consequent.clone(),
                            step,
                            prem: children.iter().flat_map(|&c| args[c].prem.iter().cloned()).collect(),
                            children,
                            sub,
                            defeasible_rules,
                        });
                        if args.len() + fresh.len() > MAX_ARGUMENTS {
                            return Err(Error::TooLarge(format!("more than {MAX_ARGUMENTS} arguments")));
                        }
                    }
                }
                // odometer over the antecedent pools
                for slot in (0..pick.len()).rev() {
                    pick[slot] += 1;
                    if pick[slot] < pools[slot].len() {
                        continue 'combos;
                    }
                    pick[slot] = 0;
                }
                break;
            }
        }
        if fresh.is_empty() {
            return Ok(args);
        }
        args.extend(fresh);
    }
}

/// The attack relation, one triple per attack form that applies.
pub fn compute_attacks(system: &ArgumentationSystem, kb: &KnowledgeBase, args: &[Argument]) -> Vec<Attack> {
    let mut out = Vec::new();
    for (i, a) in args.iter().enumerate() {
        let c = &a.conclusion;
        for (j, b) in args.iter().enumerate() {
            if b.prem.iter().any(|p| kb.plausible.contains(p) && system.contrary.is_contrary(c, p)) {
                out.push(Attack { attacker: i, target: j, kind: AttackKind::Undermine });
            }
            let defeasible_subs = || {
                b.sub.iter().filter_map(|&s| match args[s].step {
                    Step::Defeasible(r) => Some((s, r)),
                    _ => None,
                })
            };
            if defeasible_subs().any(|(s, _)| system.contrary.is_contrary(c, &args[s].conclusion)) {
                out.push(Attack { attacker: i, target: j, kind: AttackKind::Rebut });
            }
            if defeasible_subs().any(|(_, r)| system.contrary.is_contrary(c, &system.theory.defeasible[r].name)) {
                out.push(Attack { attacker: i, target: j, kind: AttackKind::Undercut });
            }
        }
    }
    out
}

/// Arguments, attacks and the induced attack graph.
#[derive(Clone, Debug)]
pub struct StructuredAf {
    pub arguments: Vec<Argument>,
    pub attacks: Vec<Attack>,
    graph: AttackGraph,
}

impl StructuredAf {
    pub fn build(system: &ArgumentationSystem, kb: &KnowledgeBase) -> Result<StructuredAf> {
        let arguments = build_arguments(system, kb)?;
        let attacks = compute_attacks(system, kb, &arguments);
        let graph = AttackGraph::new(arguments.len(), attacks.iter().map(|a| (a.attacker, a.target)));
        Ok(StructuredAf { arguments, attacks, graph })
    }

    pub fn graph(&self) -> &AttackGraph {
        &self.graph
    }

    /// Attacking pairs, without their kinds.
    pub fn attack_pairs(&self) -> BTreeSet<(usize, usize)> {
        self.attacks.iter().map(|a| (a.attacker, a.target)).collect()
    }

    pub fn extensions(&self, semantics: Semantics) -> Result<Vec<BTreeSet<usize>>> {
        self.graph.extensions(semantics)
    }

    pub fn consequence(&self, semantics: Semantics, mode: Mode, goal: &Formula) -> Result<bool> {
        let exts = self.extensions(semantics)?;
        let concludes = |set: &BTreeSet<usize>| set.iter().any(|&a| &self.arguments[a].conclusion == goal);
        Ok(match mode {
            Mode::Cup => exts.iter().any(concludes),
            Mode::Cap => exts.iter().all(concludes),
            Mode::Dcap => {
                let all: BTreeSet<usize> = (0..self.arguments.len()).collect();
                let meet = exts.iter().fold(all, |acc, e| acc.intersection(e).copied().collect());
                concludes(&meet)
            }
        })
    }

    /// `a<id+1>` label of an argument.
    pub fn label(id: usize) -> String {
        format!("a{}", id + 1)
    }

    /// E.g. `<a1, a2 => s>` or `<q>`.
    pub fn describe(&self, id: usize) -> String {
        let a = &self.arguments[id];
        let arrow = match a.step {
            Step::Premise => return format!("<{}>", a.conclusion),
            Step::Strict(_) => "->",
            Step::Defeasible(_) => "=>",
        };
        let kids: Vec<String> = a.children.iter().map(|&c| Self::label(c)).collect();
        if kids.is_empty() {
            format!("<{arrow} {}>", a.conclusion)
        } else {
            format!("<{} {arrow} {}>", kids.join(", "), a.conclusion)
        }
    }
}

pub fn aspic_consequence(af: &StructuredAf, semantics: Semantics, mode: Mode, goal: &Formula) -> Result<bool> {
    af.consequence(semantics, mode, goal)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(s: &str) -> Formula {
        s.parse().unwrap()
    }

    fn rule(ants: &[&str], cons: &str) -> Rule {
        Rule::new(ants.iter().map(|s| f(s)).collect(), f(cons))
    }

    fn fs(items: &[&str]) -> Vec<Formula> {
        items.iter().map(|s| f(s)).collect()
    }

    fn example_three() -> (ArgumentationSystem, KnowledgeBase) {
        let theory =
            DefeasibleTheory::new(vec![(None, rule(&["-q"], "-p"))], vec![(None, rule(&["-p"], "s"))]).unwrap();
        let kb = KnowledgeBase::new(fs(&["-s"]), fs(&["-q", "-p", "q"])).unwrap();
        (ArgumentationSystem::new(theory, Contrariness::Classical), kb)
    }

    fn find(af: &StructuredAf, described: &str) -> usize {
        (0..af.arguments.len())
            .find(|&i| af.describe(i) == described)
            .unwrap_or_else(|| panic!("no argument {described}"))
    }

    #[test]
    fn example_three_arguments_and_attacks() {
        let (sys, kb) = example_three();
        let af = StructuredAf::build(&sys, &kb).unwrap();
        assert_eq!(af.arguments.len(), 7);
        let a1 = find(&af, "<-q>");
        let a2 = find(&af, "<-p>");
        let a3 = find(&af, &format!("<{} -> -p>", StructuredAf::label(a1)));
        let a4 = find(&af, &format!("<{} => s>", StructuredAf::label(a3)));
        let a5 = find(&af, &format!("<{} => s>", StructuredAf::label(a2)));
        let a6 = find(&af, "<q>");
        let a7 = find(&af, "<-s>");
        let expected = BTreeSet::from([(a1, a6), (a6, a1), (a6, a3), (a6, a4), (a7, a4), (a7, a5)]);
        assert_eq!(af.attack_pairs(), expected);
        assert_eq!(sys.theory.defeasible()[0].name, f("rn_2"));
    }

    #[test]
    fn example_three_consequence() {
        let (sys, kb) = example_three();
        let af = StructuredAf::build(&sys, &kb).unwrap();
        assert!(af.consequence(Semantics::Preferred, Mode::Cup, &f("-s")).unwrap());
        assert!(!af.consequence(Semantics::Preferred, Mode::Cap, &f("s")).unwrap());
        let stable = af.extensions(Semantics::Stable).unwrap();
        // q or -q wins; s never survives -s
        assert_eq!(stable.len(), 2);
        for e in &stable {
            assert!(e.iter().all(|&a| af.arguments[a].conclusion != f("s")));
        }
    }

    #[test]
    fn single_premise() {
        let sys = ArgumentationSystem::new(DefeasibleTheory::new(vec![], vec![]).unwrap(), Contrariness::Classical);
        let kb = KnowledgeBase::new(vec![], fs(&["a"])).unwrap();
        let af = StructuredAf::build(&sys, &kb).unwrap();
        assert_eq!(af.arguments.len(), 1);
        assert!(af.attacks.is_empty());
        assert_eq!(af.extensions(Semantics::Preferred).unwrap(), vec![BTreeSet::from([0])]);
    }

    #[test]
    fn path_guard_blocks_cycles() {
        let theory = DefeasibleTheory::new(vec![(None, rule(&["a"], "b")), (None, rule(&["b"], "a"))], vec![]).unwrap();
        let sys = ArgumentationSystem::new(theory, Contrariness::Classical);
        let kb = KnowledgeBase::new(vec![], fs(&["a"])).unwrap();
        let af = StructuredAf::build(&sys, &kb).unwrap();
        let described: Vec<String> = (0..af.arguments.len()).map(|i| af.describe(i)).collect();
        assert_eq!(described, vec!["<a>", "<a1 -> b>"]);
    }

    #[test]
    fn undercut_on_rule_name() {
        let theory = DefeasibleTheory::new(vec![], vec![(Some(f("r1")), rule(&["-p"], "s"))]).unwrap();
        let sys = ArgumentationSystem::new(theory, Contrariness::Classical);
        let kb = KnowledgeBase::new(vec![], fs(&["-p", "-r1"])).unwrap();
        let af = StructuredAf::build(&sys, &kb).unwrap();
        let cut = find(&af, "<-r1>");
        let target = find(&af, &format!("<{} => s>", StructuredAf::label(find(&af, "<-p>"))));
        assert!(af.attacks.contains(&Attack { attacker: cut, target, kind: AttackKind::Undercut }));
    }

    #[test]
    fn no_defeasible_material_no_attacks() {
        let theory = DefeasibleTheory::new(vec![(None, rule(&["a"], "-b"))], vec![]).unwrap();
        let sys = ArgumentationSystem::new(theory, Contrariness::Classical);
        let kb = KnowledgeBase::new(fs(&["a", "b"]), vec![]).unwrap();
        let af = StructuredAf::build(&sys, &kb).unwrap();
        assert!(af.attacks.is_empty());
    }

    #[test]
    fn knowledge_base_must_be_disjoint() {
        assert!(matches!(KnowledgeBase::new(fs(&["a"]), fs(&["a"])), Err(Error::KnowledgeBase(_))));
    }

    #[test]
    fn duplicate_names_rejected() {
        let r = DefeasibleTheory::new(vec![(Some(f("n")), rule(&[], "a"))], vec![(Some(f("n")), rule(&[], "b"))]);
        assert!(matches!(r, Err(Error::Naming(_))));
    }

    #[test]
    fn classical_contraries() {
        let c = Contrariness::Classical;
        assert!(c.is_contrary(&f("-a"), &f("a")));
        assert!(c.is_contrary(&f("a"), &f("-a")));
        assert!(c.is_contrary(&f("---a"), &f("a")));
        assert!(!c.is_contrary(&f("a"), &f("a")));
    }
}

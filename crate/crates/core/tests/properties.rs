use std::collections::BTreeSet;

use proptest::prelude::*;

use defeasance::aba::{closure, derives, Rule};
use defeasance::adaptive::{phi_of, AdaptiveTheory, FormulaSet};
use defeasance::aspic::{
    ArgumentationSystem, AttackKind, Contrariness, DefeasibleTheory, KnowledgeBase, Step, StructuredAf,
};
use defeasance::logic::{entails, Atom, CoreLogic, Formula, LogicKind};
use defeasance::problem::Problem;

fn atom(i: usize) -> Formula {
    Formula::atom(["p", "q", "r"][i])
}

fn formula(weak: bool) -> impl Strategy<Value = Formula> {
    let leaf = (0..3usize).prop_map(atom);
    leaf.prop_recursive(3, 12, 2, move |inner| {
        let mut options = vec![
            inner.clone().prop_map(Formula::neg).boxed(),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.and(b)).boxed(),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.or(b)).boxed(),
        ];
        if weak {
            options.push(inner.prop_map(Formula::weak_neg).boxed());
        }
        proptest::strategy::Union::new(options)
    })
}

fn logic_and_formulas() -> impl Strategy<Value = (CoreLogic, Vec<Formula>, Formula, Formula)> {
    prop_oneof![Just(LogicKind::Cpl), Just(LogicKind::Lp)].prop_flat_map(|kind| {
        let weak = kind == LogicKind::Lp;
        (prop::collection::vec(formula(weak), 0..4), formula(weak), formula(weak)).prop_map(move |(g, a, b)| {
            let sig: BTreeSet<Atom> = ["p", "q", "r"].iter().map(|n| Atom::new(n).unwrap()).collect();
            (CoreLogic::with_kind(kind, sig), g, a, b)
        })
    })
}

fn token(i: usize) -> Formula {
    Formula::atom(["a", "b", "c", "d", "e"][i])
}

fn rules() -> impl Strategy<Value = Vec<Rule>> {
    prop::collection::vec((prop::collection::vec(0..5usize, 0..3), 0..5usize), 0..6).prop_map(|rs| {
        rs.into_iter().map(|(ants, c)| Rule::new(ants.into_iter().map(token).collect(), token(c))).collect()
    })
}

fn base() -> impl Strategy<Value = Vec<Formula>> {
    prop::collection::vec((0..5usize).prop_map(token), 0..4)
}

fn literal() -> impl Strategy<Value = Formula> {
    (0..3usize, any::<bool>()).prop_map(|(i, n)| if n { atom(i).neg() } else { atom(i) })
}

fn structured() -> impl Strategy<Value = (ArgumentationSystem, KnowledgeBase)> {
    let rule = || (prop::collection::vec(literal(), 0..3), literal()).prop_map(|(a, c)| Rule::new(a, c));
    (
        prop::collection::vec(rule(), 0..4),
        prop::collection::vec(rule(), 0..4),
        prop::collection::btree_set(literal(), 1..5),
        any::<u8>(),
    )
        .prop_map(|(strict, defeasible, kb, split)| {
            let theory = DefeasibleTheory::new(
                strict.into_iter().map(|r| (None, r)).collect(),
                defeasible.into_iter().map(|r| (None, r)).collect(),
            )
            .unwrap();
            let (mut axioms, mut plausible) = (Vec::new(), Vec::new());
            for (i, item) in kb.into_iter().enumerate() {
                if split & (1 << i) != 0 {
                    axioms.push(item);
                } else {
                    plausible.push(item);
                }
            }
            (ArgumentationSystem::new(theory, Contrariness::Classical), KnowledgeBase::new(axioms, plausible).unwrap())
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn entailment_is_reflexive((logic, gamma, a, _b) in logic_and_formulas()) {
        let mut premises = gamma;
        premises.push(a.clone());
        prop_assert!(entails(&logic, &premises, &a).unwrap());
    }

    #[test]
    fn entailment_is_monotone((logic, gamma, a, b) in logic_and_formulas()) {
        if entails(&logic, &gamma, &a).unwrap() {
            let mut more = gamma;
            more.push(b);
            prop_assert!(entails(&logic, &more, &a).unwrap());
        }
    }

    #[test]
    fn closure_is_an_idempotent_extension(rs in rules(), b in base()) {
        let once = closure(&rs, &b);
        prop_assert!(b.iter().all(|x| once.contains(x)));
        let items: Vec<Formula> = once.iter().cloned().collect();
        prop_assert_eq!(closure(&rs, &items), once.clone());
        for r in &rs {
            if r.antecedents.iter().all(|a| once.contains(a)) {
                prop_assert!(once.contains(&r.consequent));
            }
        }
    }

    #[test]
    fn derivability_is_monotone(rs in rules(), b in base(), extra in base(), goal in 0..5usize) {
        if derives(&rs, &b, &token(goal)) {
            let more: Vec<Formula> = b.iter().chain(&extra).cloned().collect();
            prop_assert!(derives(&rs, &more, &token(goal)));
        }
    }

    #[test]
    fn phi_is_the_family_of_minimal_hitting_sets(
        family in prop::collection::vec(prop::collection::btree_set(0..4usize, 1..3), 0..4)
    ) {
        let sigma: Vec<FormulaSet> = family.iter().map(|s| s.iter().map(|&i| token(i)).collect()).collect();
        let universe: Vec<Formula> = (0..4).map(token).collect();
        let hits = |s: &FormulaSet| sigma.iter().all(|d| !d.is_disjoint(s));
        let subsets: Vec<FormulaSet> = (0u32..16)
            .map(|m| (0..4).filter(|i| m & (1 << i) != 0).map(|i| universe[i].clone()).collect())
            .collect();
        let mut want: Vec<FormulaSet> = subsets
            .iter()
            .filter(|s| hits(s) && !subsets.iter().any(|t| hits(t) && t.len() < s.len() && t.is_subset(s)))
            .cloned()
            .collect();
        want.sort();
        let mut got = phi_of(&sigma);
        got.sort();
        prop_assert_eq!(got, want);
    }

    #[test]
    fn arguments_are_closed_under_subarguments((sys, kb) in structured()) {
        let af = StructuredAf::build(&sys, &kb).unwrap();
        let conclusions: Vec<&Formula> = af.arguments.iter().map(|a| &a.conclusion).collect();
        for (id, a) in af.arguments.iter().enumerate() {
            prop_assert!(a.sub.contains(&id));
            for &s in &a.sub {
                prop_assert!(af.arguments[s].sub.is_subset(&a.sub));
            }
            for &c in &a.children {
                prop_assert!(c != id && !af.arguments[c].sub.contains(&id));
            }
            // no conclusion repeats along a path
            for &s in &a.sub {
                if s != id {
                    prop_assert!(conclusions[s] != &a.conclusion);
                }
            }
        }
    }

    #[test]
    fn attacks_are_exactly_the_three_forms((sys, kb) in structured()) {
        let af = StructuredAf::build(&sys, &kb).unwrap();
        let n = af.arguments.len();
        let mut want = BTreeSet::new();
        for x in 0..n {
            let by = &af.arguments[x].conclusion;
            for y in 0..n {
                for &s in &af.arguments[y].sub {
                    let s = &af.arguments[s];
                    let kind = match s.step {
                        Step::Premise if kb.plausible().contains(&s.conclusion) && sys.contrary.is_contrary(by, &s.conclusion) => {
                            Some(AttackKind::Undermine)
                        }
                        Step::Defeasible(_) if sys.contrary.is_contrary(by, &s.conclusion) => Some(AttackKind::Rebut),
                        _ => None,
                    };
                    want.extend(kind.map(|k| (x, y, k)));
                    if let Step::Defeasible(r) = s.step {
                        if sys.contrary.is_contrary(by, &sys.theory.defeasible()[r].name) {
                            want.insert((x, y, AttackKind::Undercut));
                        }
                    }
                }
            }
        }
        let got: BTreeSet<_> = af.attacks.iter().map(|a| (a.attacker, a.target, a.kind)).collect();
        prop_assert_eq!(got, want);
    }

    #[test]
    fn adaptive_problems_round_trip(
        gamma in prop::collection::vec(formula(true), 0..4),
        omega in prop::collection::vec(formula(true), 1..3),
    ) {
        let sig: BTreeSet<Atom> = ["p", "q", "r"].iter().map(|n| Atom::new(n).unwrap()).collect();
        let t = AdaptiveTheory::new(CoreLogic::with_kind(LogicKind::Lp, sig), gamma, omega).unwrap();
        let back = Problem::parse(&Problem::from_adaptive(&t).to_string()).unwrap().adaptive_theory().unwrap();
        prop_assert_eq!(back.gamma, t.gamma);
        prop_assert_eq!(back.omega, t.omega);
    }
}

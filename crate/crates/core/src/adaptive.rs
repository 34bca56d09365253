//! Adaptive-logic consequence and default-assumption consequence.
//!
//! The adaptive consequence relations are computed from the minimal
//! disjunctions of abnormalities derivable from the premises (`sigma_of`)
//! and their minimal choice sets (`phi_of`). `al_consequence_semantic` is a
//! separate route over minimally abnormal models and is used to cross-check
//! the first.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::logic::{CoreLogic, Formula, ModelSet};

pub type FormulaSet = BTreeSet<Formula>;

/// Largest abnormality or assumption set enumerated by subset scans.
pub const MAX_SUBSET_BASE: usize = 16;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Strategy {
    Reliability,
    MinimalAbnormality,
    NormalSelections,
}

impl Strategy {
    pub const ALL: [Strategy; 3] = [Strategy::Reliability, Strategy::MinimalAbnormality, Strategy::NormalSelections];
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::Reliability => "r",
            Strategy::MinimalAbnormality => "ma",
            Strategy::NormalSelections => "ns",
        })
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Strategy> {
        match s {
            "r" => Ok(Strategy::Reliability),
            "ma" => Ok(Strategy::MinimalAbnormality),
            "ns" => Ok(Strategy::NormalSelections),
            other => Err(Error::Usage(format!("unknown strategy `{other}`"))),
        }
    }
}

/// Core logic, premises and a finite set of abnormalities.
#[derive(Clone, Debug)]
pub struct AdaptiveTheory {
    pub logic: CoreLogic,
    pub gamma: Vec<Formula>,
    pub omega: Vec<Formula>,
}

impl AdaptiveTheory {
    /// Duplicates in `omega` are dropped; an empty `omega` is allowed.
    pub fn new(logic: CoreLogic, gamma: Vec<Formula>, omega: Vec<Formula>) -> Result<AdaptiveTheory> {
        for f in gamma.iter().chain(&omega) {
            logic.check(f)?;
        }
        let omega: Vec<Formula> = omega.into_iter().collect::<FormulaSet>().into_iter().collect();
        if omega.len() > MAX_SUBSET_BASE {
            return Err(Error::TooLarge(format!("{} abnormalities", omega.len())));
        }
        Ok(AdaptiveTheory { logic, gamma, omega })
    }

    fn models(&self, extra: Option<&Formula>) -> Result<ModelSet> {
        let mut also = self.omega.clone();
        also.extend(extra.cloned());
        ModelSet::new(&self.logic, &self.gamma, &also)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DabFamily {
    pub sigma: Vec<FormulaSet>,
    pub phi: Vec<FormulaSet>,
    pub union_sigma: FormulaSet,
}

impl DabFamily {
    pub fn of(theory: &AdaptiveTheory) -> Result<DabFamily> {
        let sigma = sigma_of(theory)?;
        let phi = phi_of(&sigma);
        let union_sigma = sigma.iter().flatten().cloned().collect();
        Ok(DabFamily { sigma, phi, union_sigma })
    }
}

/// Subset masks over `n` elements, by cardinality then numerically.
pub(crate) fn masks_by_size(n: usize) -> Vec<u32> {
    let mut masks: Vec<u32> = (0..(1u32 << n)).collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));
    masks
}

pub(crate) fn select(items: &[Formula], mask: u32) -> impl Iterator<Item = &Formula> + '_ {
    items.iter().enumerate().filter(move |(i, _)| mask & (1 << i) != 0).map(|(_, f)| f)
}

/// Orders sets of formulas by their printed, sorted member lists.
pub fn canonical_order(sets: &mut [FormulaSet]) {
    sets.sort_by_cached_key(printed_members);
}

pub fn printed_members(set: &FormulaSet) -> Vec<String> {
    let mut names: Vec<String> = set.iter().map(Formula::to_string).collect();
    names.sort();
    names
}

/// `{a, b}` with members sorted by their printed form.
pub fn fmt_set(set: &FormulaSet) -> String {
    format!("{{{}}}", printed_members(set).join(", "))
}

fn within(sub: u32, mask: u32) -> bool {
    sub & !mask == 0
}

/// The minimal nonempty subsets of the abnormalities whose disjunction the
/// premises entail.
pub fn sigma_of(theory: &AdaptiveTheory) -> Result<Vec<FormulaSet>> {
    let models = theory.models(None)?;
    let omega = &theory.omega;
    let mut found: Vec<u32> = Vec::new();
    for mask in masks_by_size(omega.len()) {
        if mask == 0 || found.iter().any(|&f| within(f, mask)) {
            continue;
        }
        let dab = Formula::disjunction(select(omega, mask).cloned()).expect("nonempty");
        if models.entails(&dab)? {
            found.push(mask);
        }
    }
    let mut sigma: Vec<FormulaSet> = found.into_iter().map(|m| select(omega, m).cloned().collect()).collect();
    canonical_order(&mut sigma);
    Ok(sigma)
}

/// The minimal choice sets (hitting sets) of `sigma`. An empty family has the
/// single choice set `{}`.
pub fn phi_of(sigma: &[FormulaSet]) -> Vec<FormulaSet> {
    let universe: Vec<Formula> = sigma.iter().flatten().cloned().collect::<FormulaSet>().into_iter().collect();
    assert!(universe.len() <= 24, "choice-set universe too large");
    let family: Vec<u32> = sigma
        .iter()
        .map(|s| universe.iter().enumerate().filter(|(_, f)| s.contains(*f)).fold(0u32, |m, (i, _)| m | (1 << i)))
        .collect();
    let mut found: Vec<u32> = Vec::new();
    for mask in masks_by_size(universe.len()) {
        if found.iter().any(|&f| within(f, mask)) {
            continue;
        }
        if family.iter().all(|&s| s & mask != 0) {
            found.push(mask);
        }
    }
    let mut phi: Vec<FormulaSet> = found.into_iter().map(|m| select(&universe, m).cloned().collect()).collect();
    canonical_order(&mut phi);
    phi
}

/// A witness `delta` with `goal | \/delta` entailed by the premises, drawn
/// from the abnormalities outside `choice_set` (or outside the union of
/// sigma, for reliability).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlWitness {
    pub choice_set: Option<FormulaSet>,
    pub delta: FormulaSet,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlVerdict {
    pub holds: bool,
    pub family: DabFamily,
    pub witnesses: Vec<AlWitness>,
}

/// Smallest `delta` drawn from `pool` such that `goal | \/delta` is entailed.
fn smallest_witness(models: &ModelSet, goal: &Formula, pool: &[Formula]) -> Result<Option<FormulaSet>> {
    if pool.len() > MAX_SUBSET_BASE {
        return Err(Error::TooLarge(format!("{} candidate abnormalities", pool.len())));
    }
    let widest = Formula::disjunction(std::iter::once(goal.clone()).chain(pool.iter().cloned())).expect("nonempty");
    if !models.entails(&widest)? {
        return Ok(None);
    }
    for mask in masks_by_size(pool.len()) {
        let disj =
            Formula::disjunction(std::iter::once(goal.clone()).chain(select(pool, mask).cloned())).expect("nonempty");
        if models.entails(&disj)? {
            return Ok(Some(select(pool, mask).cloned().collect()));
        }
    }
    unreachable!("the full pool is a witness")
}

pub fn al_consequence_verdict(theory: &AdaptiveTheory, strategy: Strategy, goal: &Formula) -> Result<AlVerdict> {
    theory.logic.check(goal)?;
    let family = DabFamily::of(theory)?;
    let models = theory.models(Some(goal))?;
    let outside = |excluded: &FormulaSet| -> Vec<Formula> {
        theory.omega.iter().filter(|a| !excluded.contains(*a)).cloned().collect()
    };
    let mut witnesses = Vec::new();
    let holds = match strategy {
        Strategy::Reliability => match smallest_witness(&models, goal, &outside(&family.union_sigma))? {
            Some(delta) => {
                witnesses.push(AlWitness { choice_set: None, delta });
                true
            }
            None => false,
        },
        Strategy::MinimalAbnormality => {
            let mut all = true;
            for phi in &family.phi {
                match smallest_witness(&models, goal, &outside(phi))? {
                    Some(delta) => witnesses.push(AlWitness { choice_set: Some(phi.clone()), delta }),
                    None => {
                        all = false;
                        witnesses.clear();
                        break;
                    }
                }
            }
            all
        }
        Strategy::NormalSelections => {
            let mut any = false;
            for phi in &family.phi {
                if let Some(delta) = smallest_witness(&models, goal, &outside(phi))? {
                    witnesses.push(AlWitness { choice_set: Some(phi.clone()), delta });
                    any = true;
                    break;
                }
            }
            any
        }
    };
    Ok(AlVerdict { holds, family, witnesses })
}

/// Adaptive consequence through the choice-set characterisations of the
/// three strategies.
pub fn al_consequence(theory: &AdaptiveTheory, strategy: Strategy, goal: &Formula) -> Result<bool> {
    Ok(al_consequence_verdict(theory, strategy, goal)?.holds)
}

/// Adaptive consequence over models: `ma` quantifies over minimally abnormal
/// models, `r` over models whose abnormalities all occur in some minimally
/// abnormal model, and `ns` asks for one minimally abnormal abnormal-part
/// all of whose models verify the goal.
pub fn al_consequence_semantic(theory: &AdaptiveTheory, strategy: Strategy, goal: &Formula) -> Result<bool> {
    theory.logic.check(goal)?;
    let models = theory.models(Some(goal))?;
    let mut ab = vec![0u32; models.len()];
    for (i, a) in theory.omega.iter().enumerate() {
        for (m, designated) in models.designation(a)?.into_iter().enumerate() {
            if designated {
                ab[m] |= 1 << i;
            }
        }
    }
    let verifies = models.designation(goal)?;
    let distinct: BTreeSet<u32> = ab.iter().copied().collect();
    let minimal: Vec<u32> =
        distinct.iter().copied().filter(|&m| !distinct.iter().any(|&o| o != m && o & m == o)).collect();
    let holds = match strategy {
        Strategy::MinimalAbnormality => ab.iter().zip(&verifies).all(|(m, &v)| v || !minimal.contains(m)),
        Strategy::Reliability => {
            let reliable = minimal.iter().fold(0u32, |acc, m| acc | m);
            ab.iter().zip(&verifies).all(|(m, &v)| v || m & !reliable != 0)
        }
        Strategy::NormalSelections => minimal.iter().any(|sel| ab.iter().zip(&verifies).all(|(m, &v)| v || m != sel)),
    };
    Ok(holds)
}

/// Strict premises plus defeasible background assumptions.
#[derive(Clone, Debug)]
pub struct DefaultTheory {
    pub logic: CoreLogic,
    pub gamma: Vec<Formula>,
    pub delta: Vec<Formula>,
}

impl DefaultTheory {
    pub fn new(logic: CoreLogic, gamma: Vec<Formula>, delta: Vec<Formula>) -> Result<DefaultTheory> {
        for f in gamma.iter().chain(&delta) {
            logic.check(f)?;
        }
        let delta: Vec<Formula> = delta.into_iter().collect::<FormulaSet>().into_iter().collect();
        if delta.len() > MAX_SUBSET_BASE {
            return Err(Error::TooLarge(format!("{} default assumptions", delta.len())));
        }
        Ok(DefaultTheory { logic, gamma, delta })
    }
}

/// Maximal subsets of the assumptions that are consistent with the premises.
pub fn mcs_of(theory: &DefaultTheory) -> Result<Vec<FormulaSet>> {
    let models = ModelSet::new(&theory.logic, &theory.gamma, &theory.delta)?;
    // designated assumptions per model; a subset is consistent iff some
    // model designates all of it
    let mut per_model = vec![0u32; models.len()];
    for (i, d) in theory.delta.iter().enumerate() {
        for (m, designated) in models.designation(d)?.into_iter().enumerate() {
            if designated {
                per_model[m] |= 1 << i;
            }
        }
    }
    let consistent = |mask: u32| per_model.iter().any(|&m| m & mask == mask);
    let n = theory.delta.len();
    let full = if n == 0 { 0 } else { u32::MAX >> (32 - n) };
    let mut result: Vec<FormulaSet> = (0..=full)
        .filter(|&mask| consistent(mask))
        .filter(|&mask| (0..n).all(|i| mask & (1 << i) != 0 || !consistent(mask | (1 << i))))
        .map(|mask| select(&theory.delta, mask).cloned().collect())
        .collect();
    canonical_order(&mut result);
    Ok(result)
}

/// The goal follows from the premises together with every maximal consistent
/// subset of the assumptions.
pub fn da_consequence(theory: &DefaultTheory, goal: &Formula) -> Result<bool> {
    theory.logic.check(goal)?;
    let models = ModelSet::new(&theory.logic, &theory.gamma, &[theory.delta.clone(), vec![goal.clone()]].concat())?;
    for mcs in mcs_of(theory)? {
        let extra: Vec<Formula> = mcs.into_iter().collect();
        if !models.restrict(&extra)?.entails(goal)? {
            return Ok(false);
        }
    }
    Ok(true)
}

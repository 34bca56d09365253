//! Assumption-based argumentation.
//!
//! Sentences are formulas; token sentences are plain atoms. A rule set is
//! either an explicit list of rules or backed by a core logic, in which case
//! a sentence is derivable exactly when the logic entails it.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use crate::adaptive::{canonical_order, select, FormulaSet, MAX_SUBSET_BASE};
use crate::dung::{Mode, Semantics};
use crate::error::{Error, Result};
use crate::logic::{CoreLogic, Formula, ModelSet};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Rule {
    pub antecedents: Vec<Formula>,
    pub consequent: Formula,
}

impl Rule {
    pub fn new(antecedents: Vec<Formula>, consequent: Formula) -> Rule {
        Rule { antecedents, consequent }
    }

    pub fn axiom(consequent: Formula) -> Rule {
        Rule::new(Vec::new(), consequent)
    }

    /// Formats with the given arrow, e.g. `a, b -> c` or `-> t`.
    pub fn display_with(&self, arrow: &str) -> String {
        let ants: Vec<String> = self.antecedents.iter().map(Formula::to_string).collect();
        if ants.is_empty() {
            format!("{arrow} {}", self.consequent)
        } else {
            format!("{} {arrow} {}", ants.join(", "), self.consequent)
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("->"))
    }
}

#[derive(Clone, Debug)]
pub enum RuleSet {
    Explicit(Vec<Rule>),
    /// All rules `A1, ..., An -> A` such that the logic entails `A` from
    /// the antecedents.
    Oracle(CoreLogic),
}

impl RuleSet {
    pub fn derives(&self, base: &[Formula], goal: &Formula) -> Result<bool> {
        match self {
            RuleSet::Explicit(rules) => Ok(closure(rules, base).contains(goal)),
            RuleSet::Oracle(logic) => crate::logic::entails(logic, base, goal),
        }
    }

    pub fn closure(&self, base: &[Formula]) -> Result<FormulaSet> {
        match self {
            RuleSet::Explicit(rules) => Ok(closure(rules, base)),
            RuleSet::Oracle(_) => Err(Error::IntensionalClosure),
        }
    }
}

/// Least superset of `base` closed under `rules`.
pub fn closure(rules: &[Rule], base: &[Formula]) -> FormulaSet {
    let mut known: FormulaSet = base.iter().cloned().collect();
    let mut pending: Vec<&Rule> = rules.iter().collect();
    loop {
        let before = pending.len();
        pending.retain(|r| {
            if r.antecedents.iter().all(|a| known.contains(a)) {
                known.insert(r.consequent.clone());
                false
            } else {
                true
            }
        });
        if pending.len() == before {
            return known;
        }
    }
}

pub fn derives(rules: &[Rule], base: &[Formula], goal: &Formula) -> bool {
    closure(rules, base).contains(goal)
}

/// An assumption-based framework: rules, theory, assumptions and the
/// contrary of each assumption.
#[derive(Clone, Debug)]
pub struct Abf {
    rules: RuleSet,
    gamma: Vec<Formula>,
    ab: Vec<Formula>,
    contrary: BTreeMap<Formula, Formula>,
    lattice: OnceLock<Lattice>,
}

impl Abf {
    /// Assumptions are deduplicated and sorted.
    pub fn new(
        rules: RuleSet,
        gamma: Vec<Formula>,
        ab: Vec<Formula>,
        contrary: BTreeMap<Formula, Formula>,
    ) -> Result<Abf> {
        let ab: Vec<Formula> = ab.into_iter().collect::<FormulaSet>().into_iter().collect();
        if ab.is_empty() {
            return Err(Error::EmptyAssumptions);
        }
        if ab.len() > MAX_SUBSET_BASE {
            return Err(Error::TooLarge(format!("{} assumptions", ab.len())));
        }
        if let Some(a) = ab.iter().find(|a| !contrary.contains_key(*a)) {
            return Err(Error::MissingContrary(a.to_string()));
        }
        let contrary: BTreeMap<Formula, Formula> = contrary.into_iter().filter(|(a, _)| ab.contains(a)).collect();
        if let RuleSet::Oracle(logic) = &rules {
            for f in gamma.iter().chain(&ab).chain(contrary.values()) {
                logic.check(f)?;
            }
        }
        Ok(Abf { rules, gamma, ab, contrary, lattice: OnceLock::new() })
    }

    pub fn rules(&self) -> &RuleSet {
        &self.rules
    }

    pub fn gamma(&self) -> &[Formula] {
        &self.gamma
    }

    pub fn assumptions(&self) -> &[Formula] {
        &self.ab
    }

    pub fn contrary(&self, assumption: &Formula) -> Option<&Formula> {
        self.contrary.get(assumption)
    }

    pub fn contraries(&self) -> &BTreeMap<Formula, Formula> {
        &self.contrary
    }

    /// Whether `gamma` together with `delta` derives `goal`.
    pub fn derives<'a, I: IntoIterator<Item = &'a Formula>>(&self, delta: I, goal: &Formula) -> Result<bool> {
        let base: Vec<Formula> = self.gamma.iter().cloned().chain(delta.into_iter().cloned()).collect();
        self.rules.derives(&base, goal)
    }

    fn mask_of(&self, set: &FormulaSet) -> Result<u32> {
        let mut mask = 0;
        for a in set {
            match self.ab.iter().position(|b| b == a) {
                Some(i) => mask |= 1 << i,
                None => return Err(Error::Usage(format!("`{a}` is not an assumption"))),
            }
        }
        Ok(mask)
    }

    fn set_of(&self, mask: u32) -> FormulaSet {
        select(&self.ab, mask).cloned().collect()
    }

    /// Derivability of every assumption and every contrary, per subset of
    /// assumptions. Computed once.
    pub fn lattice(&self) -> Result<&Lattice> {
        if let Some(l) = self.lattice.get() {
            return Ok(l);
        }
        let built = Lattice::build(self)?;
        Ok(self.lattice.get_or_init(|| built))
    }

    /// `attacker` derives the contrary of some member of `target`.
    pub fn set_attacks(&self, attacker: &FormulaSet, target: &FormulaSet) -> Result<bool> {
        let (x, y) = (self.mask_of(attacker)?, self.mask_of(target)?);
        Ok(self.lattice()?.attacks(x, y))
    }

    pub fn attacks_assumption(&self, attacker: &FormulaSet, target: &Formula) -> Result<bool> {
        self.set_attacks(attacker, &FormulaSet::from([target.clone()]))
    }

    pub fn assumption_set(&self, members: &FormulaSet) -> Result<AssumptionSet> {
        let mask = self.mask_of(members)?;
        Ok(self.lattice()?.assumption_set(self, mask))
    }

    pub fn extensions(&self, semantics: Semantics) -> Result<Vec<FormulaSet>> {
        let mut out: Vec<FormulaSet> =
            self.lattice()?.extension_masks(semantics).into_iter().map(|m| self.set_of(m)).collect();
        canonical_order(&mut out);
        Ok(out)
    }

    pub fn consequence(&self, semantics: Semantics, mode: Mode, goal: &Formula) -> Result<bool> {
        let exts = self.lattice()?.extension_masks(semantics);
        match mode {
            Mode::Cup => {
                for m in exts {
                    if self.derives(select(&self.ab, m), goal)? {
                        return Ok(true);
                    }
                }
                Ok(false)
            }
            Mode::Cap => {
                for m in exts {
                    if !self.derives(select(&self.ab, m), goal)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            Mode::Dcap => {
                let meet = exts.iter().fold(self.lattice()?.full(), |acc, m| acc & m);
                self.derives(select(&self.ab, meet), goal)
            }
        }
    }

    /// Every naive set derives the contrary of each assumption it leaves out.
    pub fn satisfies_ex(&self) -> Result<bool> {
        let l = self.lattice()?;
        let full = l.full();
        Ok(l.extension_masks(Semantics::Naive)
            .into_iter()
            .all(|m| l.derived_contrary[m as usize] & (full & !m) == full & !m))
    }

    /// Every naive set is stable.
    pub fn is_normal(&self) -> Result<bool> {
        let l = self.lattice()?;
        Ok(l.extension_masks(Semantics::Naive).into_iter().all(|m| l.is_stable(m)))
    }

    /// No sentence is derived together with its contrary.
    pub fn is_consistent_base(&self, delta: &FormulaSet) -> Result<bool> {
        for (a, c) in &self.contrary {
            let base: Vec<&Formula> = delta.iter().collect();
            if self.derives(base.iter().copied(), a)? && self.derives(base.iter().copied(), c)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct Status {
    pub closed: bool,
    pub conflict_free: bool,
    pub naive: bool,
    pub admissible: bool,
    pub preferred: bool,
    pub stable: bool,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AssumptionSet {
    pub members: FormulaSet,
    pub status: Status,
}

/// Per subset mask of the assumptions: which assumptions and which
/// contraries the theory plus the subset derives.
#[derive(Clone, Debug)]
pub struct Lattice {
    n: usize,
    derived_ab: Vec<u32>,
    derived_contrary: Vec<u32>,
    admissible: Vec<bool>,
}

impl Lattice {
    fn build(abf: &Abf) -> Result<Lattice> {
        let n = abf.ab.len();
        let size = 1usize << n;
        let contraries: Vec<&Formula> = abf.ab.iter().map(|a| &abf.contrary[a]).collect();
        let mut derived_ab = vec![0u32; size];
        let mut derived_contrary = vec![0u32; size];
        match &abf.rules {
            RuleSet::Explicit(rules) => {
                for mask in 0..size {
                    let base: Vec<Formula> = abf.gamma.iter().chain(select(&abf.ab, mask as u32)).cloned().collect();
                    let closed = closure(rules, &base);
                    for (i, (a, c)) in abf.ab.iter().zip(&contraries).enumerate() {
                        if closed.contains(a) {
                            derived_ab[mask] |= 1 << i;
                        }
                        if closed.contains(*c) {
                            derived_contrary[mask] |= 1 << i;
                        }
                    }
                }
            }
            RuleSet::Oracle(logic) => {
                let also: Vec<Formula> = abf.ab.iter().chain(contraries.iter().copied()).cloned().collect();
                let models = ModelSet::new(logic, &abf.gamma, &also)?;
                let pack = |f: &Formula| -> Result<Vec<bool>> { models.designation(f) };
                let ab_rows: Vec<Vec<bool>> = abf.ab.iter().map(pack).collect::<Result<_>>()?;
                let ct_rows: Vec<Vec<bool>> = contraries.iter().map(|c| pack(c)).collect::<Result<_>>()?;
                // per model, the mask of assumptions it designates
                let per_model: Vec<u32> = (0..models.len())
                    .map(|m| (0..n).filter(|&i| ab_rows[i][m]).fold(0, |acc, i| acc | (1 << i)))
                    .collect();
                for mask in 0..size {
                    let live: Vec<usize> =
                        (0..models.len()).filter(|&m| per_model[m] & mask as u32 == mask as u32).collect();
                    for i in 0..n {
                        if live.iter().all(|&m| ab_rows[i][m]) {
                            derived_ab[mask] |= 1 << i;
                        }
                        if live.iter().all(|&m| ct_rows[i][m]) {
                            derived_contrary[mask] |= 1 << i;
                        }
                    }
                }
            }
        }
        let mut lattice = Lattice { n, derived_ab, derived_contrary, admissible: Vec::new() };
        let closed: Vec<u32> = (0..size as u32).filter(|&m| lattice.is_closed(m)).collect();
        lattice.admissible = (0..size as u32)
            .map(|m| {
                lattice.is_closed(m)
                    && lattice.is_conflict_free(m)
                    && closed.iter().all(|&x| !lattice.attacks(x, m) || lattice.attacks(m, x))
            })
            .collect();
        Ok(lattice)
    }

    pub fn full(&self) -> u32 {
        if self.n == 0 {
            0
        } else {
            u32::MAX >> (32 - self.n)
        }
    }

    pub fn is_closed(&self, m: u32) -> bool {
        self.derived_ab[m as usize] == m
    }

    /// No assumption is derived together with its contrary.
    pub fn is_conflict_free(&self, m: u32) -> bool {
        self.derived_ab[m as usize] & self.derived_contrary[m as usize] == 0
    }

    pub fn attacks(&self, attacker: u32, target: u32) -> bool {
        self.derived_contrary[attacker as usize] & target != 0
    }

    pub fn is_admissible(&self, m: u32) -> bool {
        self.admissible[m as usize]
    }

    pub fn is_stable(&self, m: u32) -> bool {
        let rest = self.full() & !m;
        self.is_closed(m) && self.is_conflict_free(m) && self.derived_contrary[m as usize] & rest == rest
    }

    fn maximal(masks: Vec<u32>) -> Vec<u32> {
        masks.iter().copied().filter(|&m| !masks.iter().any(|&o| o != m && o & m == m)).collect()
    }

    pub fn extension_masks(&self, semantics: Semantics) -> Vec<u32> {
        let all = 0..=self.full();
        match semantics {
            Semantics::Naive => Self::maximal(all.filter(|&m| self.is_closed(m) && self.is_conflict_free(m)).collect()),
            Semantics::Preferred => Self::maximal(all.filter(|&m| self.is_admissible(m)).collect()),
            Semantics::Stable => all.filter(|&m| self.is_stable(m)).collect(),
        }
    }

    fn assumption_set(&self, abf: &Abf, m: u32) -> AssumptionSet {
        let status = Status {
            closed: self.is_closed(m),
            conflict_free: self.is_conflict_free(m),
            naive: self.extension_masks(Semantics::Naive).contains(&m),
            admissible: self.is_admissible(m),
            preferred: self.extension_masks(Semantics::Preferred).contains(&m),
            stable: self.is_stable(m),
        };
        AssumptionSet { members: abf.set_of(m), status }
    }
}

//! Line-oriented problem files.
//!
//! ```text
//! kind: al
//! logic: lp
//! premises: ~p; ~q; p | q; p | r; q | s
//! abnormalities: contradictions(p, q, r, s)
//! query: r | s
//! strategy: ma
//! ```
//!
//! Lists are separated by `;`, rule antecedents by `,`. Rules may carry a
//! name: `r1: -p => s`. Everything after `#` is a comment.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::aba::{Abf, Rule, RuleSet};
use crate::adaptive::{AdaptiveTheory, DefaultTheory, FormulaSet, Strategy};
use crate::aspic::{ArgumentationSystem, Contrariness, DefeasibleTheory, KnowledgeBase};
use crate::dung::{Mode, Semantics};
use crate::error::{Error, Result};
use crate::logic::{parse_formula, Atom, CoreLogic, Formula, LogicKind};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Kind {
    Al,
    Da,
    Aba,
    Aspic,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Al => "al",
            Kind::Da => "da",
            Kind::Aba => "aba",
            Kind::Aspic => "aspic",
        })
    }
}

impl FromStr for Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Kind> {
        match s {
            "al" => Ok(Kind::Al),
            "da" => Ok(Kind::Da),
            "aba" => Ok(Kind::Aba),
            "aspic" => Ok(Kind::Aspic),
            other => Err(Error::Usage(format!("unknown kind `{other}`"))),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Abnormalities {
    /// `a & ~a` for each listed atom.
    Contradictions(Vec<Atom>),
    Explicit(Vec<Formula>),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Contraries {
    Classical,
    Explicit(Vec<(Formula, Vec<Formula>)>),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Rules {
    /// Everything the core logic entails.
    Classical,
    Explicit(Vec<Rule>),
}

pub type NamedRules = Vec<(Option<Formula>, Rule)>;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Problem {
    pub kind: Kind,
    pub logic: Option<LogicKind>,
    pub atoms: Option<Vec<Atom>>,
    pub pairs: Vec<(Atom, Atom)>,
    pub premises: Vec<Formula>,
    pub abnormalities: Option<Abnormalities>,
    pub assumptions: Vec<Formula>,
    pub contraries: Option<Contraries>,
    pub rules: Option<Rules>,
    pub strict_rules: NamedRules,
    pub defeasible_rules: NamedRules,
    pub axioms: Vec<Formula>,
    pub plausible: Vec<Formula>,
    pub query: Option<Formula>,
    pub strategy: Option<Strategy>,
    pub semantics: Option<Semantics>,
    pub mode: Option<Mode>,
}

const KEYS: [&str; 17] = [
    "kind",
    "logic",
    "atoms",
    "pairs",
    "premises",
    "abnormalities",
    "assumptions",
    "contraries",
    "rules",
    "strict_rules",
    "defeasible_rules",
    "axioms",
    "plausible",
    "query",
    "strategy",
    "semantics",
    "mode",
];

fn items(value: &str) -> impl Iterator<Item = &str> {
    value.split(';').map(str::trim).filter(|s| !s.is_empty())
}

fn formula_list(value: &str) -> Result<Vec<Formula>> {
    items(value).map(parse_formula).collect()
}

fn atom_list(value: &str) -> Result<Vec<Atom>> {
    value.split(|c: char| c == ',' || c.is_whitespace()).filter(|s| !s.is_empty()).map(Atom::new).collect()
}

/// `a, b -> c`, `-> c`, or with `=>` for defeasible rules.
fn parse_rule(text: &str, arrow: &str) -> Result<Rule> {
    let (lhs, rhs) =
        text.split_once(arrow).ok_or_else(|| Error::Usage(format!("expected `{arrow}` in rule `{text}`")))?;
    let antecedents =
        lhs.split(',').map(str::trim).filter(|s| !s.is_empty()).map(parse_formula).collect::<Result<Vec<_>>>()?;
    Ok(Rule::new(antecedents, parse_formula(rhs.trim())?))
}

/// Optional `name:` prefix before a rule.
fn parse_named_rule(text: &str, arrow: &str) -> Result<(Option<Formula>, Rule)> {
    match text.split_once(':') {
        Some((name, rest)) => Ok((Some(parse_formula(name.trim())?), parse_rule(rest, arrow)?)),
        None => Ok((None, parse_rule(text, arrow)?)),
    }
}

fn parse_contraries(value: &str) -> Result<Contraries> {
    if value.trim() == "classical" {
        return Ok(Contraries::Classical);
    }
    let mut out: Vec<(Formula, Vec<Formula>)> = Vec::new();
    for item in items(value) {
        let (a, cs) =
            item.split_once("->").ok_or_else(|| Error::Usage(format!("expected `->` in contrary `{item}`")))?;
        let a = parse_formula(a.trim())?;
        let cs = cs.split(',').map(|c| parse_formula(c.trim())).collect::<Result<Vec<_>>>()?;
        match out.iter_mut().find(|(b, _)| *b == a) {
            Some((_, existing)) => existing.extend(cs),
            None => out.push((a, cs)),
        }
    }
    Ok(Contraries::Explicit(out))
}

impl Problem {
    pub fn empty(kind: Kind) -> Problem {
        Problem {
            kind,
            logic: None,
            atoms: None,
            pairs: Vec::new(),
            premises: Vec::new(),
            abnormalities: None,
            assumptions: Vec::new(),
            contraries: None,
            rules: None,
            strict_rules: Vec::new(),
            defeasible_rules: Vec::new(),
            axioms: Vec::new(),
            plausible: Vec::new(),
            query: None,
            strategy: None,
            semantics: None,
            mode: None,
        }
    }

    pub fn parse(text: &str) -> Result<Problem> {
        let mut fields: BTreeMap<&str, (usize, &str)> = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let at = |message: String| Error::Problem { line: i + 1, message };
            let (key, value) = line.split_once(':').ok_or_else(|| at("expected `key: value`".into()))?;
            let key = key.trim();
            if !KEYS.contains(&key) {
                return Err(at(format!("unknown key `{key}`")));
            }
            if fields.insert(key, (i + 1, value.trim())).is_some() {
                return Err(at(format!("duplicate key `{key}`")));
            }
        }
        let (kind_line, kind) =
            fields.get("kind").copied().ok_or(Error::Problem { line: 1, message: "missing `kind:`".into() })?;
        let located = |line: usize, e: Error| Error::Problem { line, message: e.to_string() };
        let mut p = Problem::empty(kind.parse().map_err(|e| located(kind_line, e))?);
        for (&key, &(line, value)) in &fields {
            let wrap = |e| located(line, e);
            match key {
                "kind" => {}
                "logic" => p.logic = Some(value.parse().map_err(wrap)?),
                "atoms" => p.atoms = Some(atom_list(value).map_err(wrap)?),
                "pairs" => {
                    for item in items(value) {
                        match atom_list(item).map_err(wrap)?.as_slice() {
                            [a, b] => p.pairs.push((a.clone(), b.clone())),
                            _ => return Err(located(line, Error::Usage(format!("expected two atoms in `{item}`")))),
                        }
                    }
                }
                "premises" => p.premises = formula_list(value).map_err(wrap)?,
                "abnormalities" => {
                    p.abnormalities = Some(match value.strip_prefix("contradictions") {
                        Some(rest) => {
                            let inner =
                                rest.trim().strip_prefix('(').and_then(|r| r.strip_suffix(')')).ok_or_else(|| {
                                    located(line, Error::Usage("expected `contradictions(a, b, ...)`".into()))
                                })?;
                            Abnormalities::Contradictions(atom_list(inner).map_err(wrap)?)
                        }
                        None => Abnormalities::Explicit(formula_list(value).map_err(wrap)?),
                    })
                }
                "assumptions" => p.assumptions = formula_list(value).map_err(wrap)?,
                "contraries" => p.contraries = Some(parse_contraries(value).map_err(wrap)?),
                "rules" => {
                    p.rules = Some(if value == "classical" {
                        Rules::Classical
                    } else {
                        Rules::Explicit(items(value).map(|r| parse_rule(r, "->")).collect::<Result<_>>().map_err(wrap)?)
                    })
                }
                "strict_rules" => {
                    p.strict_rules =
                        items(value).map(|r| parse_named_rule(r, "->")).collect::<Result<_>>().map_err(wrap)?
                }
                "defeasible_rules" => {
                    p.defeasible_rules =
                        items(value).map(|r| parse_named_rule(r, "=>")).collect::<Result<_>>().map_err(wrap)?
                }
                "axioms" => p.axioms = formula_list(value).map_err(wrap)?,
                "plausible" => p.plausible = formula_list(value).map_err(wrap)?,
                "query" => p.query = Some(parse_formula(value).map_err(wrap)?),
                "strategy" => p.strategy = Some(value.parse().map_err(wrap)?),
                "semantics" => p.semantics = Some(value.parse().map_err(wrap)?),
                "mode" => p.mode = Some(value.parse().map_err(wrap)?),
                _ => unreachable!("keys are checked above"),
            }
        }
        Ok(p)
    }

    fn omega(&self) -> Vec<Formula> {
        match &self.abnormalities {
            Some(Abnormalities::Contradictions(atoms)) => atoms.iter().map(Formula::contradiction).collect(),
            Some(Abnormalities::Explicit(fs)) => fs.clone(),
            None => Vec::new(),
        }
    }

    /// Every formula the file mentions.
    fn formulas(&self) -> Vec<Formula> {
        let mut out: Vec<Formula> = Vec::new();
        out.extend(self.premises.iter().cloned());
        out.extend(self.omega());
        out.extend(self.assumptions.iter().cloned());
        if let Some(Contraries::Explicit(cs)) = &self.contraries {
            for (a, c) in cs {
                out.push(a.clone());
                out.extend(c.iter().cloned());
            }
        }
        if let Some(Rules::Explicit(rules)) = &self.rules {
            for r in rules {
                out.extend(r.antecedents.iter().cloned());
                out.push(r.consequent.clone());
            }
        }
        for (name, r) in self.strict_rules.iter().chain(&self.defeasible_rules) {
            out.extend(name.iter().cloned());
            out.extend(r.antecedents.iter().cloned());
            out.push(r.consequent.clone());
        }
        out.extend(self.axioms.iter().cloned());
        out.extend(self.plausible.iter().cloned());
        out.extend(self.query.iter().cloned());
        out
    }

    /// The declared atoms, or the atoms the file mentions.
    pub fn signature(&self) -> BTreeSet<Atom> {
        match &self.atoms {
            Some(atoms) => atoms.iter().cloned().collect(),
            None => {
                let mut sig = BTreeSet::new();
                for f in self.formulas() {
                    f.collect_atoms(&mut sig);
                }
                sig.extend(self.pairs.iter().flat_map(|(a, b)| [a.clone(), b.clone()]));
                sig
            }
        }
    }

    pub fn core_logic(&self) -> Result<CoreLogic> {
        let kind = self.logic.ok_or_else(|| Error::Usage("missing `logic:`".into()))?;
        let sig = self.signature();
        match kind {
            LogicKind::L3r => CoreLogic::l3r(sig, self.pairs.clone()),
            _ if !self.pairs.is_empty() => Err(Error::Usage("`pairs:` needs `logic: l3r`".into())),
            other => Ok(CoreLogic::with_kind(other, sig)),
        }
    }

    fn expect(&self, kind: Kind) -> Result<()> {
        if self.kind == kind {
            Ok(())
        } else {
            Err(Error::Usage(format!("expected a `{kind}` problem, found `{}`", self.kind)))
        }
    }

    pub fn adaptive_theory(&self) -> Result<AdaptiveTheory> {
        self.expect(Kind::Al)?;
        if self.abnormalities.is_none() {
            return Err(Error::Usage("missing `abnormalities:`".into()));
        }
        AdaptiveTheory::new(self.core_logic()?, self.premises.clone(), self.omega())
    }

    pub fn default_theory(&self) -> Result<DefaultTheory> {
        self.expect(Kind::Da)?;
        DefaultTheory::new(self.core_logic()?, self.premises.clone(), self.assumptions.clone())
    }

    pub fn abf(&self) -> Result<Abf> {
        self.expect(Kind::Aba)?;
        let rules = match &self.rules {
            Some(Rules::Classical) => RuleSet::Oracle(self.core_logic()?),
            Some(Rules::Explicit(rules)) => RuleSet::Explicit(rules.clone()),
            None => RuleSet::Explicit(Vec::new()),
        };
        let contrary: BTreeMap<Formula, Formula> = match &self.contraries {
            Some(Contraries::Classical) => self.assumptions.iter().map(|a| (a.clone(), a.clone().neg())).collect(),
            Some(Contraries::Explicit(cs)) => cs
                .iter()
                .map(|(a, c)| match c.as_slice() {
                    [one] => Ok((a.clone(), one.clone())),
                    _ => Err(Error::Usage(format!("assumption `{a}` needs exactly one contrary"))),
                })
                .collect::<Result<_>>()?,
            None => BTreeMap::new(),
        };
        Abf::new(rules, self.premises.clone(), self.assumptions.clone(), contrary)
    }

    pub fn argumentation(&self) -> Result<(ArgumentationSystem, KnowledgeBase)> {
        self.expect(Kind::Aspic)?;
        let theory = DefeasibleTheory::new(self.strict_rules.clone(), self.defeasible_rules.clone())?;
        let contrary = match &self.contraries {
            Some(Contraries::Classical) | None => Contrariness::Classical,
            Some(Contraries::Explicit(cs)) => {
                let mut map: BTreeMap<Formula, FormulaSet> = BTreeMap::new();
                for (a, c) in cs {
                    map.entry(a.clone()).or_default().extend(c.iter().cloned());
                }
                Contrariness::Explicit(map)
            }
        };
        let kb = KnowledgeBase::new(self.axioms.clone(), self.plausible.clone())?;
        Ok((ArgumentationSystem::new(theory, contrary), kb))
    }

    fn with_logic(&mut self, logic: &CoreLogic) {
        self.logic = Some(logic.kind());
        self.atoms = Some(logic.signature().iter().cloned().collect());
        self.pairs = logic.pairs().map(|(a, b)| (a.clone(), b.clone())).collect();
    }

    pub fn from_adaptive(theory: &AdaptiveTheory) -> Problem {
        let mut p = Problem::empty(Kind::Al);
        p.with_logic(&theory.logic);
        p.premises = theory.gamma.clone();
        p.abnormalities = Some(Abnormalities::Explicit(theory.omega.clone()));
        p
    }

    pub fn from_abf(abf: &Abf) -> Problem {
        let mut p = Problem::empty(Kind::Aba);
        p.rules = Some(match abf.rules() {
            RuleSet::Oracle(logic) => {
                p.with_logic(logic);
                Rules::Classical
            }
            RuleSet::Explicit(rules) => Rules::Explicit(rules.clone()),
        });
        p.premises = abf.gamma().to_vec();
        p.assumptions = abf.assumptions().to_vec();
        p.contraries =
            Some(Contraries::Explicit(abf.contraries().iter().map(|(a, c)| (a.clone(), vec![c.clone()])).collect()));
        p
    }

    pub fn from_aspic(system: &ArgumentationSystem, kb: &KnowledgeBase) -> Problem {
        let mut p = Problem::empty(Kind::Aspic);
        let named = |rules: &[crate::aspic::NamedRule]| -> NamedRules {
            rules.iter().map(|r| (Some(r.name.clone()), r.rule.clone())).collect()
        };
        p.strict_rules = named(system.theory.strict());
        p.defeasible_rules = named(system.theory.defeasible());
        p.contraries = Some(match &system.contrary {
            Contrariness::Classical => Contraries::Classical,
            Contrariness::Explicit(map) => {
                Contraries::Explicit(map.iter().map(|(a, cs)| (a.clone(), cs.iter().cloned().collect())).collect())
            }
        });
        p.axioms = kb.axioms().to_vec();
        p.plausible = kb.plausible().to_vec();
        p
    }

    /// Copies the query block of `other`.
    pub fn with_query_of(mut self, other: &Problem) -> Problem {
        self.query = other.query.clone();
        self.strategy = other.strategy;
        self.semantics = other.semantics;
        self.mode = other.mode;
        self
    }
}

fn join(fs: &[Formula]) -> String {
    fs.iter().map(Formula::to_string).collect::<Vec<_>>().join("; ")
}

fn join_named(rules: &NamedRules, arrow: &str) -> String {
    rules
        .iter()
        .map(|(name, r)| match name {
            Some(n) => format!("{n}: {}", r.display_with(arrow)),
            None => r.display_with(arrow),
        })
        .collect::<Vec<_>>()
        .join("; ")
}

fn join_atoms(atoms: &[Atom], sep: &str) -> String {
    atoms.iter().map(Atom::to_string).collect::<Vec<_>>().join(sep)
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "kind: {}", self.kind)?;
        if let Some(logic) = self.logic {
            writeln!(f, "logic: {logic}")?;
        }
        if let Some(atoms) = &self.atoms {
            writeln!(f, "atoms: {}", join_atoms(atoms, " "))?;
        }
        if !self.pairs.is_empty() {
            let pairs: Vec<String> = self.pairs.iter().map(|(a, b)| format!("{a} {b}")).collect();
            writeln!(f, "pairs: {}", pairs.join("; "))?;
        }
        if !self.premises.is_empty() {
            writeln!(f, "premises: {}", join(&self.premises))?;
        }
        match &self.abnormalities {
            Some(Abnormalities::Contradictions(atoms)) => {
                writeln!(f, "abnormalities: contradictions({})", join_atoms(atoms, ", "))?
            }
            Some(Abnormalities::Explicit(fs)) => writeln!(f, "abnormalities: {}", join(fs))?,
            None => {}
        }
        if !self.assumptions.is_empty() {
            writeln!(f, "assumptions: {}", join(&self.assumptions))?;
        }
        match &self.contraries {
            Some(Contraries::Classical) => writeln!(f, "contraries: classical")?,
            Some(Contraries::Explicit(cs)) => {
                let items: Vec<String> =
                    cs.iter().map(|(a, c)| format!("{a} -> {}", join(c).replace("; ", ", "))).collect();
                writeln!(f, "contraries: {}", items.join("; "))?
            }
            None => {}
        }
        match &self.rules {
            Some(Rules::Classical) => writeln!(f, "rules: classical")?,
            Some(Rules::Explicit(rules)) => {
                let items: Vec<String> = rules.iter().map(Rule::to_string).collect();
                writeln!(f, "rules: {}", items.join("; "))?
            }
            None => {}
        }
        if !self.strict_rules.is_empty() {
            writeln!(f, "strict_rules: {}", join_named(&self.strict_rules, "->"))?;
        }
        if !self.defeasible_rules.is_empty() {
            writeln!(f, "defeasible_rules: {}", join_named(&self.defeasible_rules, "=>"))?;
        }
        if !self.axioms.is_empty() {
            writeln!(f, "axioms: {}", join(&self.axioms))?;
        }
        if !self.plausible.is_empty() {
            writeln!(f, "plausible: {}", join(&self.plausible))?;
        }
        if let Some(q) = &self.query {
            writeln!(f, "query: {q}")?;
        }
        if let Some(s) = self.strategy {
            writeln!(f, "strategy: {s}")?;
        }
        if let Some(s) = self.semantics {
            writeln!(f, "semantics: {s}")?;
        }
        if let Some(m) = self.mode {
            writeln!(f, "mode: {m}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const EXAMPLE_ONE: &str = "\
kind: al
logic: lp
premises: ~p; ~q; p|q; p|r; q|s
abnormalities: contradictions(p,q,r,s)   # one per atom
query: r | s
strategy: ma
";

    const EXAMPLE_THREE: &str = "\
kind: aspic
strict_rules: -q -> -p
defeasible_rules: r1: -p => s
contraries: classical
axioms: -s
plausible: -q; -p; q
query: -s
semantics: prf
mode: cup
";

    #[test]
    fn parses_adaptive_problem() {
        let p = Problem::parse(EXAMPLE_ONE).unwrap();
        assert_eq!(p.kind, Kind::Al);
        assert_eq!(p.premises.len(), 5);
        let t = p.adaptive_theory().unwrap();
        assert_eq!(t.omega.len(), 4);
        assert_eq!(p.strategy, Some(Strategy::MinimalAbnormality));
    }

    #[test]
    fn round_trips() {
        for text in [EXAMPLE_ONE, EXAMPLE_THREE] {
            let p = Problem::parse(text).unwrap();
            let again = Problem::parse(&p.to_string()).unwrap();
            assert_eq!(p, again);
        }
    }

    #[test]
    fn named_rules() {
        let p = Problem::parse(EXAMPLE_THREE).unwrap();
        assert_eq!(p.defeasible_rules[0].0, Some(Formula::atom("r1")));
        assert_eq!(p.strict_rules[0].0, None);
        let (sys, kb) = p.argumentation().unwrap();
        assert_eq!(sys.theory.defeasible()[0].name, Formula::atom("r1"));
        assert_eq!(kb.plausible().len(), 3);
    }

    #[test]
    fn errors_carry_lines() {
        let err = Problem::parse("kind: al\nlogic: lp\npremises: p &\n").unwrap_err();
        assert!(matches!(err, Error::Problem { line: 3, .. }), "{err}");
        let err = Problem::parse("kind: al\nbogus: 1\n").unwrap_err();
        assert!(matches!(err, Error::Problem { line: 2, .. }));
        assert!(Problem::parse("logic: lp\n").is_err());
    }

    #[test]
    fn aba_with_explicit_rules() {
        let p = Problem::parse("kind: aba\nrules: a, b -> c; -> t\nassumptions: a; b\ncontraries: a -> x; b -> c\n")
            .unwrap();
        let abf = p.abf().unwrap();
        assert_eq!(abf.assumptions().len(), 2);
        let RuleSet::Explicit(rules) = abf.rules() else { panic!() };
        assert_eq!(rules.len(), 2);
        assert_eq!(
            Problem::parse(&Problem::from_abf(&abf).to_string()).unwrap().abf().unwrap().assumptions(),
            abf.assumptions()
        );
    }

    #[test]
    fn l3r_pairs() {
        let p = Problem::parse("kind: al\nlogic: l3r\npairs: a b\npremises: b\nabnormalities: ~a\n").unwrap();
        let t = p.adaptive_theory().unwrap();
        assert_eq!(t.logic.partner(&Atom::new("a").unwrap()), Some(&Atom::new("b").unwrap()));
        let back = Problem::parse(&Problem::from_adaptive(&t).to_string()).unwrap();
        assert_eq!(back.pairs, p.pairs);
    }
}

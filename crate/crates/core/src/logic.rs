//! Formulas, their concrete syntax, and decidable entailment for the three
//! core logics: classical propositional logic (CPL), the paraconsistent
//! logic LP with a superimposed classical negation, and the three-valued
//! logic L3R whose atoms may be tied together by a contrary pairing.
//!
//! Entailment is decided by enumerating every valuation over the atoms that
//! matter for a query. Signatures are finite, so every logic here is a
//! compact Tarski logic.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Propositional letter. Names match `[a-z][a-zA-Z0-9_]*`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Atom(Arc<str>);

impl Atom {
    pub fn new(name: &str) -> Result<Atom> {
        if is_atom_name(name) {
            Ok(Atom(Arc::from(name)))
        } else {
            Err(Error::Syntax { offset: 0, message: format!("`{name}` is not a valid atom name") })
        }
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

pub fn is_atom_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some('a'..='z')) && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Var(Atom),
    /// `~A`: LP negation, or the external negation of L3R.
    WeakNeg(Box<Formula>),
    /// `-A`: classical negation.
    ClassNeg(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
}

impl Formula {
    /// Panics on an invalid atom name; use [`Atom::new`] for untrusted input.
    pub fn atom(name: &str) -> Formula {
        Formula::Var(Atom::new(name).expect("valid atom name"))
    }

    pub fn weak_neg(self) -> Formula {
        Formula::WeakNeg(Box::new(self))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(self) -> Formula {
        Formula::ClassNeg(Box::new(self))
    }

    pub fn and(self, other: Formula) -> Formula {
        Formula::And(Box::new(self), Box::new(other))
    }

    pub fn or(self, other: Formula) -> Formula {
        Formula::Or(Box::new(self), Box::new(other))
    }

    /// Left-associated disjunction; `None` for an empty iterator.
    pub fn disjunction<I: IntoIterator<Item = Formula>>(items: I) -> Option<Formula> {
        items.into_iter().reduce(Formula::or)
    }

    /// `A & ~A`.
    pub fn contradiction(atom: &Atom) -> Formula {
        let v = Formula::Var(atom.clone());
        v.clone().and(v.weak_neg())
    }

    pub fn as_atom(&self) -> Option<&Atom> {
        match self {
            Formula::Var(a) => Some(a),
            _ => None,
        }
    }

    pub fn atoms(&self) -> BTreeSet<Atom> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    pub fn collect_atoms(&self, out: &mut BTreeSet<Atom>) {
        match self {
            Formula::Var(a) => {
                out.insert(a.clone());
            }
            Formula::WeakNeg(x) | Formula::ClassNeg(x) => x.collect_atoms(out),
            Formula::And(l, r) | Formula::Or(l, r) => {
                l.collect_atoms(out);
                r.collect_atoms(out);
            }
        }
    }

    pub fn subformulas(&self, out: &mut BTreeSet<Formula>) {
        if !out.insert(self.clone()) {
            return;
        }
        match self {
            Formula::Var(_) => {}
            Formula::WeakNeg(x) | Formula::ClassNeg(x) => x.subformulas(out),
            Formula::And(l, r) | Formula::Or(l, r) => {
                l.subformulas(out);
                r.subformulas(out);
            }
        }
    }

    pub fn contains_weak_neg(&self) -> bool {
        match self {
            Formula::Var(_) => false,
            Formula::WeakNeg(_) => true,
            Formula::ClassNeg(x) => x.contains_weak_neg(),
            Formula::And(l, r) | Formula::Or(l, r) => l.contains_weak_neg() || r.contains_weak_neg(),
        }
    }

    /// Strips pairs of leading classical negations.
    pub fn strip_double_negation(&self) -> &Formula {
        match self {
            Formula::ClassNeg(inner) => match inner.as_ref() {
                Formula::ClassNeg(x) => x.strip_double_negation(),
                _ => self,
            },
            _ => self,
        }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, ctx: u8) -> fmt::Result {
        let (prec, wrap) = match self {
            Formula::Or(..) => (1, ctx > 1),
            Formula::And(..) => (2, ctx > 2),
            _ => (3, false),
        };
        if wrap {
            f.write_str("(")?;
        }
        match self {
            Formula::Var(a) => write!(f, "{a}")?,
            Formula::WeakNeg(x) => {
                f.write_str("~")?;
                x.fmt_prec(f, 3)?;
            }
            Formula::ClassNeg(x) => {
                f.write_str("-")?;
                x.fmt_prec(f, 3)?;
            }
            Formula::And(l, r) => {
                l.fmt_prec(f, prec)?;
                f.write_str(" & ")?;
                r.fmt_prec(f, prec + 1)?;
            }
            Formula::Or(l, r) => {
                l.fmt_prec(f, prec)?;
                f.write_str(" | ")?;
                r.fmt_prec(f, prec + 1)?;
            }
        }
        if wrap {
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "`{self}`")
    }
}

impl FromStr for Formula {
    type Err = Error;

    fn from_str(s: &str) -> Result<Formula> {
        parse_formula(s)
    }
}

/// Parses the formula grammar: `~` and `-` bind tightest, then `&`, then `|`;
/// binary operators associate to the left.
pub fn parse_formula(text: &str) -> Result<Formula> {
    let mut parser = Parser { src: text, pos: 0 };
    let formula = parser.disjunction()?;
    parser.skip_ws();
    if let Some(c) = parser.peek() {
        return Err(parser.error(format!("unexpected `{c}`")));
    }
    Ok(formula)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn error(&self, message: String) -> Error {
        Error::Syntax { offset: self.pos, message }
    }

    fn eat(&mut self, op: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(op) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn disjunction(&mut self) -> Result<Formula> {
        let mut left = self.conjunction()?;
        while self.eat('|') {
            let right = self.conjunction()?;
            left = left.or(right);
        }
        Ok(left)
    }

    fn conjunction(&mut self) -> Result<Formula> {
        let mut left = self.unary()?;
        while self.eat('&') {
            let right = self.unary()?;
            left = left.and(right);
        }
        Ok(left)
    }

    fn unary(&mut self) -> Result<Formula> {
        self.skip_ws();
        match self.peek() {
            None => Err(self.error("unexpected end of input".into())),
            Some('~') => {
                self.pos += 1;
                Ok(self.unary()?.weak_neg())
            }
            Some('-') => {
                self.pos += 1;
                Ok(self.unary()?.neg())
            }
            Some('(') => {
                self.pos += 1;
                let inner = self.disjunction()?;
                if !self.eat(')') {
                    return Err(self.error("expected `)`".into()));
                }
                Ok(inner)
            }
            Some('a'..='z') => {
                let start = self.pos;
                while let Some(c) = self.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        self.pos += 1;
                    } else {
                        break;
                    }
                }
                Ok(Formula::Var(Atom(Arc::from(&self.src[start..self.pos]))))
            }
            Some(c) => Err(self.error(format!("expected a formula, found `{c}`"))),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum TruthValue {
    False,
    /// `b` in LP, `u` in L3R; never used by CPL.
    Middle,
    True,
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum LogicKind {
    Cpl,
    Lp,
    L3r,
}

impl LogicKind {
    pub fn symbol(self, value: TruthValue) -> &'static str {
        match (self, value) {
            (LogicKind::Lp, TruthValue::True) => "t",
            (LogicKind::Lp, TruthValue::Middle) => "b",
            (LogicKind::Lp, TruthValue::False) => "f",
            (_, TruthValue::True) => "1",
            (_, TruthValue::Middle) => "u",
            (_, TruthValue::False) => "0",
        }
    }

    fn values(self) -> &'static [TruthValue] {
        match self {
            LogicKind::Cpl => &[TruthValue::False, TruthValue::True],
            _ => &[TruthValue::False, TruthValue::Middle, TruthValue::True],
        }
    }

    pub fn is_designated(self, value: TruthValue) -> bool {
        match self {
            LogicKind::Lp => value != TruthValue::False,
            LogicKind::Cpl | LogicKind::L3r => value == TruthValue::True,
        }
    }
}

impl fmt::Display for LogicKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LogicKind::Cpl => "cpl",
            LogicKind::Lp => "lp",
            LogicKind::L3r => "l3r",
        })
    }
}

impl FromStr for LogicKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<LogicKind> {
        match s {
            "cpl" => Ok(LogicKind::Cpl),
            "lp" => Ok(LogicKind::Lp),
            "l3r" => Ok(LogicKind::L3r),
            other => Err(Error::Usage(format!("unknown logic `{other}`"))),
        }
    }
}

/// A core logic over a finite signature. For L3R, `partner` records the
/// contrary pairing: a symmetric matching on atoms.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CoreLogic {
    kind: LogicKind,
    signature: BTreeSet<Atom>,
    partner: BTreeMap<Atom, Atom>,
}

impl CoreLogic {
    pub fn cpl<I: IntoIterator<Item = Atom>>(signature: I) -> CoreLogic {
        Self::plain(LogicKind::Cpl, signature)
    }

    pub fn lp<I: IntoIterator<Item = Atom>>(signature: I) -> CoreLogic {
        Self::plain(LogicKind::Lp, signature)
    }

    fn plain<I: IntoIterator<Item = Atom>>(kind: LogicKind, signature: I) -> CoreLogic {
        CoreLogic { kind, signature: signature.into_iter().collect(), partner: BTreeMap::new() }
    }

    /// Each atom may occur in at most one pair and never with itself.
    pub fn l3r<I, P>(signature: I, pairs: P) -> Result<CoreLogic>
    where
        I: IntoIterator<Item = Atom>,
        P: IntoIterator<Item = (Atom, Atom)>,
    {
        let mut logic = Self::plain(LogicKind::L3r, signature);
        for (a, b) in pairs {
            if a == b {
                return Err(Error::Pairing(format!("`{a}` cannot be its own contrary")));
            }
            for (x, y) in [(&a, &b), (&b, &a)] {
                match logic.partner.get(x) {
                    Some(existing) if existing != y => {
                        return Err(Error::Pairing(format!("`{x}` is paired with both `{existing}` and `{y}`")))
                    }
                    _ => {}
                }
            }
            logic.partner.insert(a.clone(), b.clone());
            logic.partner.insert(b.clone(), a.clone());
            logic.signature.insert(a);
            logic.signature.insert(b);
        }
        Ok(logic)
    }

    pub fn with_kind(kind: LogicKind, signature: BTreeSet<Atom>) -> CoreLogic {
        Self::plain(kind, signature)
    }

    pub fn kind(&self) -> LogicKind {
        self.kind
    }

    pub fn signature(&self) -> &BTreeSet<Atom> {
        &self.signature
    }

    pub fn partner(&self, atom: &Atom) -> Option<&Atom> {
        self.partner.get(atom)
    }

    /// Each pair once, smaller atom first.
    pub fn pairs(&self) -> impl Iterator<Item = (&Atom, &Atom)> + '_ {
        self.partner.iter().filter(|(a, b)| a < b)
    }

    pub fn with_atoms<I: IntoIterator<Item = Atom>>(&self, atoms: I) -> CoreLogic {
        let mut logic = self.clone();
        logic.signature.extend(atoms);
        logic
    }

    pub fn check(&self, formula: &Formula) -> Result<()> {
        if self.kind == LogicKind::Cpl && formula.contains_weak_neg() {
            return Err(Error::WeakNegInClassical);
        }
        for atom in formula.atoms() {
            if !self.signature.contains(&atom) {
                return Err(Error::Signature(atom));
            }
        }
        Ok(())
    }

    pub fn designates(&self, value: TruthValue) -> bool {
        self.kind.is_designated(value)
    }

    /// Atoms of `formulas` plus their contrary partners, sorted.
    fn relevant_atoms<'a, I: IntoIterator<Item = &'a Formula>>(&self, formulas: I) -> Vec<Atom> {
        let mut atoms = BTreeSet::new();
        for f in formulas {
            f.collect_atoms(&mut atoms);
        }
        let partners: Vec<Atom> = atoms.iter().filter_map(|a| self.partner.get(a).cloned()).collect();
        atoms.extend(partners);
        atoms.into_iter().collect()
    }

    /// Calls `visit` on every admissible valuation of `atoms` (which must be
    /// closed under the pairing) until it returns `false`.
    fn for_each_valuation<F: FnMut(&[TruthValue]) -> bool>(&self, atoms: &[Atom], mut visit: F) {
        let index: BTreeMap<&Atom, usize> = atoms.iter().enumerate().map(|(i, a)| (a, i)).collect();
        // Free positions and the positions they determine.
        let mut units: Vec<(usize, Option<usize>)> = Vec::new();
        for (i, atom) in atoms.iter().enumerate() {
            match self.partner.get(atom).and_then(|p| index.get(p)) {
                Some(&j) if j < i => {}
                Some(&j) => units.push((i, Some(j))),
                None => units.push((i, None)),
            }
        }
        let values = self.kind.values();
        let mut counter = vec![0usize; units.len()];
        let mut current = vec![TruthValue::False; atoms.len()];
        loop {
            for (&(i, j), &c) in units.iter().zip(&counter) {
                current[i] = values[c];
                if let Some(j) = j {
                    current[j] = kleene_neg(values[c]);
                }
            }
            if !visit(&current) {
                return;
            }
            // odometer, last unit fastest
            let mut k = units.len();
            loop {
                if k == 0 {
                    return;
                }
                k -= 1;
                counter[k] += 1;
                if counter[k] < values.len() {
                    break;
                }
                counter[k] = 0;
            }
        }
    }
}

fn kleene_neg(v: TruthValue) -> TruthValue {
    match v {
        TruthValue::True => TruthValue::False,
        TruthValue::False => TruthValue::True,
        TruthValue::Middle => TruthValue::Middle,
    }
}

/// Formula with atoms resolved to valuation positions.
#[derive(Clone, Debug)]
enum Node {
    Var(usize),
    Weak(Box<Node>),
    Neg(Box<Node>),
    And(Box<Node>, Box<Node>),
    Or(Box<Node>, Box<Node>),
}

impl Node {
    fn compile(f: &Formula, index: &BTreeMap<Atom, usize>) -> Option<Node> {
        Some(match f {
            Formula::Var(a) => Node::Var(*index.get(a)?),
            Formula::WeakNeg(x) => Node::Weak(Box::new(Node::compile(x, index)?)),
            Formula::ClassNeg(x) => Node::Neg(Box::new(Node::compile(x, index)?)),
            Formula::And(l, r) => Node::And(Box::new(Node::compile(l, index)?), Box::new(Node::compile(r, index)?)),
            Formula::Or(l, r) => Node::Or(Box::new(Node::compile(l, index)?), Box::new(Node::compile(r, index)?)),
        })
    }

    fn eval(&self, kind: LogicKind, vals: &[TruthValue]) -> TruthValue {
        use TruthValue::*;
        match self {
            Node::Var(i) => vals[*i],
            Node::Weak(x) => match (kind, x.eval(kind, vals)) {
                (LogicKind::L3r, True) => False,
                (LogicKind::L3r, _) => True,
                (_, v) => kleene_neg(v),
            },
            // classical negation is two-valued on top of designation
            Node::Neg(x) => {
                if kind.is_designated(x.eval(kind, vals)) {
                    False
                } else {
                    True
                }
            }
            Node::And(l, r) => l.eval(kind, vals).min(r.eval(kind, vals)),
            Node::Or(l, r) => l.eval(kind, vals).max(r.eval(kind, vals)),
        }
    }
}

fn index_of(atoms: &[Atom]) -> BTreeMap<Atom, usize> {
    atoms.iter().enumerate().map(|(i, a)| (a.clone(), i)).collect()
}

/// Truth-value assignment to a finite signature.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Valuation {
    kind: LogicKind,
    values: BTreeMap<Atom, TruthValue>,
}

impl Valuation {
    pub fn get(&self, atom: &Atom) -> Option<TruthValue> {
        self.values.get(atom).copied()
    }

    pub fn values(&self) -> &BTreeMap<Atom, TruthValue> {
        &self.values
    }

    pub fn evaluate(&self, formula: &Formula) -> Option<TruthValue> {
        let atoms: Vec<Atom> = self.values.keys().cloned().collect();
        let node = Node::compile(formula, &index_of(&atoms))?;
        let vals: Vec<TruthValue> = self.values.values().copied().collect();
        Some(node.eval(self.kind, &vals))
    }

    pub fn designates(&self, formula: &Formula) -> Option<bool> {
        self.evaluate(formula).map(|v| self.kind.is_designated(v))
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (atom, value)) in self.values.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{atom}:{}", self.kind.symbol(*value))?;
        }
        f.write_str("}")
    }
}

/// Models of a fixed premise set over a fixed, pairing-closed atom list.
/// Entailment queries against the same premises reuse the enumeration.
#[derive(Clone, Debug)]
pub struct ModelSet {
    logic: CoreLogic,
    atoms: Vec<Atom>,
    index: BTreeMap<Atom, usize>,
    premises: Vec<Formula>,
    models: Vec<Vec<TruthValue>>,
}

impl ModelSet {
    /// Models over the whole signature of `logic`.
    pub fn over_signature(logic: &CoreLogic, premises: &[Formula]) -> Result<ModelSet> {
        let atoms: Vec<Atom> = logic.signature.iter().cloned().collect();
        Self::build(logic, atoms, premises)
    }

    /// Models over the atoms of `premises` and `also` (plus partners).
    pub fn new(logic: &CoreLogic, premises: &[Formula], also: &[Formula]) -> Result<ModelSet> {
        let atoms = logic.relevant_atoms(premises.iter().chain(also));
        Self::build(logic, atoms, premises)
    }

    fn build(logic: &CoreLogic, atoms: Vec<Atom>, premises: &[Formula]) -> Result<ModelSet> {
        for p in premises {
            logic.check(p)?;
        }
        if atoms.len() > 20 {
            return Err(Error::TooLarge(format!("{} atoms to enumerate", atoms.len())));
        }
        let index = index_of(&atoms);
        let nodes: Vec<Node> =
            premises.iter().map(|p| Node::compile(p, &index).expect("premise atoms are enumerated")).collect();
        let kind = logic.kind;
        let mut models = Vec::new();
        logic.for_each_valuation(&atoms, |vals| {
            if nodes.iter().all(|n| kind.is_designated(n.eval(kind, vals))) {
                models.push(vals.to_vec());
            }
            true
        });
        Ok(ModelSet { logic: logic.clone(), atoms, index, premises: premises.to_vec(), models })
    }

    pub fn len(&self) -> usize {
        self.models.len()
    }

    pub fn is_empty(&self) -> bool {
        self.models.is_empty()
    }

    pub fn logic(&self) -> &CoreLogic {
        &self.logic
    }

    fn compile(&self, formula: &Formula) -> Result<Option<Node>> {
        self.logic.check(formula)?;
        Ok(Node::compile(formula, &self.index))
    }

    /// Per-model designation of `formula`.
    pub fn designation(&self, formula: &Formula) -> Result<Vec<bool>> {
        let kind = self.logic.kind;
        match self.compile(formula)? {
            Some(node) => Ok(self.models.iter().map(|m| kind.is_designated(node.eval(kind, m))).collect()),
            None => Err(Error::TooLarge(format!("`{formula}` mentions atoms outside this model set"))),
        }
    }

    pub fn entails(&self, goal: &Formula) -> Result<bool> {
        let kind = self.logic.kind;
        match self.compile(goal)? {
            Some(node) => Ok(self.models.iter().all(|m| kind.is_designated(node.eval(kind, m)))),
            // goal brings new atoms: enumerate again over the larger set
            None => ModelSet::new(&self.logic, &self.premises, std::slice::from_ref(goal))?.entails(goal),
        }
    }

    /// The models satisfying `extra` as well.
    pub fn restrict(&self, extra: &[Formula]) -> Result<ModelSet> {
        let kind = self.logic.kind;
        let mut nodes = Vec::with_capacity(extra.len());
        for f in extra {
            match self.compile(f)? {
                Some(n) => nodes.push(n),
                None => return Err(Error::TooLarge(format!("`{f}` mentions atoms outside this model set"))),
            }
        }
        let models =
            self.models.iter().filter(|m| nodes.iter().all(|n| kind.is_designated(n.eval(kind, m)))).cloned().collect();
        let mut premises = self.premises.clone();
        premises.extend_from_slice(extra);
        Ok(ModelSet {
            logic: self.logic.clone(),
            atoms: self.atoms.clone(),
            index: self.index.clone(),
            premises,
            models,
        })
    }

    /// Models as valuations, in lexicographic order of value vectors.
    pub fn valuations(&self) -> Vec<Valuation> {
        let mut rows: Vec<&Vec<TruthValue>> = self.models.iter().collect();
        rows.sort();
        rows.into_iter()
            .map(|m| Valuation {
                kind: self.logic.kind,
                values: self.atoms.iter().cloned().zip(m.iter().copied()).collect(),
            })
            .collect()
    }
}

/// Every valuation over the signature that designates all premises
/// designates the goal.
pub fn entails(logic: &CoreLogic, premises: &[Formula], goal: &Formula) -> Result<bool> {
    logic.check(goal)?;
    ModelSet::new(logic, premises, std::slice::from_ref(goal))?.entails(goal)
}

/// All models over the full signature, in canonical order.
pub fn models_of(logic: &CoreLogic, premises: &[Formula]) -> Result<Vec<Valuation>> {
    Ok(ModelSet::over_signature(logic, premises)?.valuations())
}

/// `premises` entail every formula exactly when they have no model: any
/// model leaves a fresh atom `x` or its negation undesignated.
pub fn is_trivial(logic: &CoreLogic, premises: &[Formula]) -> Result<bool> {
    Ok(ModelSet::new(logic, premises, &[])?.is_empty())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(s: &str) -> Formula {
        s.parse().unwrap()
    }

    fn atoms(names: &[&str]) -> Vec<Atom> {
        names.iter().map(|n| Atom::new(n).unwrap()).collect()
    }

    #[test]
    fn parses_with_precedence() {
        let p = Formula::atom("p");
        let q = Formula::atom("q");
        let r = Formula::atom("r");
        assert_eq!(f("~p & (q | r)"), p.clone().weak_neg().and(q.clone().or(r.clone())));
        assert_eq!(f("p | q | r"), p.clone().or(q.clone()).or(r.clone()));
        assert_eq!(f("p | q & r"), p.clone().or(q.clone().and(r.clone())));
        assert_eq!(f("-~p"), p.weak_neg().neg());
    }

    #[test]
    fn reports_offsets() {
        assert_eq!(parse_formula("p &"), Err(Error::Syntax { offset: 3, message: "unexpected end of input".into() }));
        assert!(matches!(parse_formula("(p | q"), Err(Error::Syntax { offset: 6, .. })));
        assert!(matches!(parse_formula("p q"), Err(Error::Syntax { offset: 2, .. })));
        assert!(matches!(parse_formula("P"), Err(Error::Syntax { offset: 0, .. })));
    }

    #[test]
    fn prints_minimal_parentheses() {
        for s in ["p | q | r", "p | (q | r)", "(p | q) & r", "p & q & r", "p & (q & r)", "-(p & ~q)", "~~p"] {
            assert_eq!(f(s).to_string(), s);
        }
    }

    #[test]
    fn lp_examples() {
        let lp = CoreLogic::lp(atoms(&["p", "r"]));
        assert!(entails(&lp, &[f("~p"), f("p | r")], &f("r | p & ~p")).unwrap());
        assert!(!entails(&lp, &[f("p"), f("~p | r")], &f("r")).unwrap());
    }

    #[test]
    fn cpl_examples() {
        let cpl = CoreLogic::cpl(atoms(&["p", "q"]));
        assert!(entails(&cpl, &[f("p | q"), f("-p")], &f("q")).unwrap());
        assert_eq!(entails(&cpl, &[], &f("~p")), Err(Error::WeakNegInClassical));
        assert_eq!(entails(&cpl, &[], &f("z")), Err(Error::Signature(Atom::new("z").unwrap())));
    }

    #[test]
    fn l3r_examples() {
        let l3 = CoreLogic::l3r(atoms(&["a", "b"]), [(Atom::new("a").unwrap(), Atom::new("b").unwrap())]).unwrap();
        assert!(entails(&l3, &[f("b")], &f("~a")).unwrap());
        assert!(entails(&l3, &[], &f("a | ~a")).unwrap());
        assert!(!entails(&l3, &[], &f("a | b")).unwrap());
        // pairing: a and b never both designated
        assert!(is_trivial(&l3, &[f("a"), f("b")]).unwrap());
    }

    #[test]
    fn l3r_rejects_bad_pairings() {
        let a = Atom::new("a").unwrap();
        let b = Atom::new("b").unwrap();
        let c = Atom::new("c").unwrap();
        assert!(CoreLogic::l3r([], [(a.clone(), a.clone())]).is_err());
        assert!(CoreLogic::l3r([], [(a.clone(), b.clone()), (c, a.clone())]).is_err());
        assert!(CoreLogic::l3r([], [(a.clone(), b.clone()), (b, a)]).is_ok());
    }

    #[test]
    fn models_of_examples() {
        let cpl = CoreLogic::cpl(atoms(&["p"]));
        let ms = models_of(&cpl, &[f("p")]).unwrap();
        assert_eq!(ms.len(), 1);
        assert_eq!(ms[0].to_string(), "{p:1}");
        assert!(models_of(&cpl, &[f("p"), f("-p")]).unwrap().is_empty());

        let lp = CoreLogic::lp(atoms(&["p"]));
        let ms = models_of(&lp, &[f("p"), f("~p")]).unwrap();
        assert_eq!(ms.iter().map(|m| m.to_string()).collect::<Vec<_>>(), ["{p:b}"]);
    }

    #[test]
    fn superimposed_negation_is_classical_on_designation() {
        let lp = CoreLogic::lp(atoms(&["p"]));
        // -p holds exactly where p is false, unlike ~p
        assert!(is_trivial(&lp, &[f("p"), f("-p")]).unwrap());
        assert!(!is_trivial(&lp, &[f("p"), f("~p")]).unwrap());
        assert!(entails(&lp, &[], &f("p | -p")).unwrap());
        assert!(entails(&lp, &[], &f("p | ~p")).unwrap());
    }

    #[test]
    fn model_set_extends_to_fresh_goal_atoms() {
        let lp = CoreLogic::lp(atoms(&["p", "q"]));
        let ms = ModelSet::new(&lp, &[f("p")], &[]).unwrap();
        assert!(ms.entails(&f("p | q")).unwrap());
        assert!(!ms.entails(&f("q")).unwrap());
        assert!(ms.entails(&f("q | -q")).unwrap());
    }
}

//! Extension semantics shared by the assumption-level and argument-level
//! frameworks, and Dung-style extensions over an explicit attack graph.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Semantics {
    Naive,
    Preferred,
    Stable,
}

impl Semantics {
    pub const ALL: [Semantics; 3] = [Semantics::Naive, Semantics::Preferred, Semantics::Stable];
}

impl fmt::Display for Semantics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Semantics::Naive => "niv",
            Semantics::Preferred => "prf",
            Semantics::Stable => "stb",
        })
    }
}

impl FromStr for Semantics {
    type Err = Error;

    fn from_str(s: &str) -> Result<Semantics> {
        match s {
            "niv" => Ok(Semantics::Naive),
            "prf" => Ok(Semantics::Preferred),
            "stb" => Ok(Semantics::Stable),
            other => Err(Error::Usage(format!("unknown semantics `{other}`"))),
        }
    }
}

/// How a consequence is read off a family of extensions: in some extension
/// (`cup`), in every extension (`cap`), or in their intersection (`dcap`).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Mode {
    Cup,
    Cap,
    Dcap,
}

impl Mode {
    pub const ALL: [Mode; 3] = [Mode::Cup, Mode::Cap, Mode::Dcap];
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Cup => "cup",
            Mode::Cap => "cap",
            Mode::Dcap => "dcap",
        })
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Mode> {
        match s {
            "cup" => Ok(Mode::Cup),
            "cap" => Ok(Mode::Cap),
            "dcap" => Ok(Mode::Dcap),
            other => Err(Error::Usage(format!("unknown mode `{other}`"))),
        }
    }
}

/// Largest number of undecided arguments a search will branch on.
const MAX_BRANCHING: usize = 28;

/// Attack relation over arguments `0..n`.
#[derive(Clone, Debug)]
pub struct AttackGraph {
    n: usize,
    attacks: Vec<Vec<bool>>,
}

impl AttackGraph {
    pub fn new<I: IntoIterator<Item = (usize, usize)>>(n: usize, edges: I) -> AttackGraph {
        let mut attacks = vec![vec![false; n]; n];
        for (a, b) in edges {
            attacks[a][b] = true;
        }
        AttackGraph { n, attacks }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn attacks(&self, a: usize, b: usize) -> bool {
        self.attacks[a][b]
    }

    fn set_attacks(&self, set: &[bool], b: usize) -> bool {
        (0..self.n).any(|a| set[a] && self.attacks[a][b])
    }

    pub fn is_conflict_free(&self, set: &[bool]) -> bool {
        (0..self.n).all(|a| !set[a] || (0..self.n).all(|b| !set[b] || !self.attacks[a][b]))
    }

    /// Every attacker of `a` is attacked by `set`.
    pub fn defends(&self, set: &[bool], a: usize) -> bool {
        (0..self.n).all(|c| !self.attacks[c][a] || self.set_attacks(set, c))
    }

    pub fn is_admissible(&self, set: &[bool]) -> bool {
        self.is_conflict_free(set) && (0..self.n).all(|a| !set[a] || self.defends(set, a))
    }

    pub fn is_stable(&self, set: &[bool]) -> bool {
        self.is_conflict_free(set) && (0..self.n).all(|a| set[a] || self.set_attacks(set, a))
    }

    /// Least fixed point of the characteristic function.
    pub fn grounded(&self) -> Vec<bool> {
        let mut set = vec![false; self.n];
        loop {
            let next: Vec<bool> = (0..self.n).map(|a| self.defends(&set, a)).collect();
            if next == set {
                return set;
            }
            set = next;
        }
    }

    pub fn extensions(&self, semantics: Semantics) -> Result<Vec<BTreeSet<usize>>> {
        let mut found = match semantics {
            Semantics::Naive => self.naive(),
            Semantics::Preferred => {
                let admissible = self.search(|g, s| g.is_admissible(s))?;
                maximal(admissible)
            }
            Semantics::Stable => self.search(|g, s| g.is_stable(s))?,
        };
        found.sort();
        Ok(found)
    }

    /// Maximal conflict-free sets: maximal cliques of the compatibility
    /// graph (Bron-Kerbosch with pivoting).
    fn naive(&self) -> Vec<BTreeSet<usize>> {
        let usable: Vec<usize> = (0..self.n).filter(|&a| !self.attacks[a][a]).collect();
        let compatible = |a: usize, b: usize| !self.attacks[a][b] && !self.attacks[b][a];
        let mut out = Vec::new();
        fn expand(
            r: &mut Vec<usize>,
            mut p: Vec<usize>,
            mut x: Vec<usize>,
            compatible: &dyn Fn(usize, usize) -> bool,
            out: &mut Vec<BTreeSet<usize>>,
        ) {
            if p.is_empty() && x.is_empty() {
                out.push(r.iter().copied().collect());
                return;
            }
            let pivot = *p.iter().chain(&x).max_by_key(|&&u| p.iter().filter(|&&v| compatible(u, v)).count()).unwrap();
            let candidates: Vec<usize> = p.iter().copied().filter(|&v| v == pivot || !compatible(pivot, v)).collect();
            for v in candidates {
                r.push(v);
                let np = p.iter().copied().filter(|&w| w != v && compatible(v, w)).collect();
                let nx = x.iter().copied().filter(|&w| compatible(v, w)).collect();
                expand(r, np, nx, compatible, out);
                r.pop();
                p.retain(|&w| w != v);
                x.push(v);
            }
        }
        expand(&mut Vec::new(), usable, Vec::new(), &compatible, &mut out);
        out
    }

    /// Every preferred or stable extension contains the grounded extension,
    /// so only arguments compatible with it are branched on.
    fn search<F: Fn(&AttackGraph, &[bool]) -> bool>(&self, accept: F) -> Result<Vec<BTreeSet<usize>>> {
        let grounded = self.grounded();
        let open: Vec<usize> = (0..self.n)
            .filter(|&a| !grounded[a] && !self.attacks[a][a])
            .filter(|&a| (0..self.n).all(|g| !grounded[g] || (!self.attacks[g][a] && !self.attacks[a][g])))
            .collect();
        if open.len() > MAX_BRANCHING {
            return Err(Error::TooLarge(format!("{} undecided arguments", open.len())));
        }
        let mut out = Vec::new();
        let mut set = grounded.clone();
        self.branch(&open, 0, &mut set, &accept, &mut out);
        Ok(out)
    }

    fn branch<F: Fn(&AttackGraph, &[bool]) -> bool>(
        &self,
        open: &[usize],
        i: usize,
        set: &mut Vec<bool>,
        accept: &F,
        out: &mut Vec<BTreeSet<usize>>,
    ) {
        if i == open.len() {
            if accept(self, set) {
                out.push((0..self.n).filter(|&a| set[a]).collect());
            }
            return;
        }
        let a = open[i];
        self.branch(open, i + 1, set, accept, out);
        if (0..self.n).all(|b| !set[b] || (!self.attacks[a][b] && !self.attacks[b][a])) {
            set[a] = true;
            self.branch(open, i + 1, set, accept, out);
            set[a] = false;
        }
    }
}

/// Members of `sets` with no proper superset in `sets`.
pub fn maximal<T: Ord + Clone>(sets: Vec<BTreeSet<T>>) -> Vec<BTreeSet<T>> {
    sets.iter().filter(|s| !sets.iter().any(|o| o.len() > s.len() && s.is_subset(o))).cloned().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ext(sets: &[&[usize]]) -> Vec<BTreeSet<usize>> {
        sets.iter().map(|s| s.iter().copied().collect()).collect()
    }

    #[test]
    fn attack_free_graph_has_one_extension() {
        let g = AttackGraph::new(4, []);
        for sem in Semantics::ALL {
            assert_eq!(g.extensions(sem).unwrap(), ext(&[&[0, 1, 2, 3]]));
        }
    }

    #[test]
    fn mutual_attack_gives_two_singletons() {
        let g = AttackGraph::new(2, [(0, 1), (1, 0)]);
        for sem in Semantics::ALL {
            assert_eq!(g.extensions(sem).unwrap(), ext(&[&[0], &[1]]));
        }
    }

    #[test]
    fn odd_cycle() {
        let g = AttackGraph::new(3, [(0, 1), (1, 2), (2, 0)]);
        assert!(g.extensions(Semantics::Stable).unwrap().is_empty());
        assert_eq!(g.extensions(Semantics::Preferred).unwrap(), ext(&[&[]]));
        assert_eq!(g.extensions(Semantics::Naive).unwrap(), ext(&[&[0], &[1], &[2]]));
    }

    #[test]
    fn self_attacker_is_excluded() {
        let g = AttackGraph::new(2, [(0, 0), (0, 1)]);
        assert_eq!(g.extensions(Semantics::Naive).unwrap(), ext(&[&[1]]));
        // 1 cannot answer the attack from 0
        assert_eq!(g.extensions(Semantics::Preferred).unwrap(), ext(&[&[]]));
        assert!(g.extensions(Semantics::Stable).unwrap().is_empty());
    }

    #[test]
    fn matches_brute_force_on_small_graphs() {
        // all graphs on 3 nodes, against a plain subset scan
        for bits in 0u32..(1 << 9) {
            let edges: Vec<(usize, usize)> = (0..9).filter(|i| bits & (1 << i) != 0).map(|i| (i / 3, i % 3)).collect();
            let g = AttackGraph::new(3, edges);
            let subsets: Vec<Vec<bool>> = (0..8u32).map(|m| (0..3).map(|i| m & (1 << i) != 0).collect()).collect();
            let to_set = |s: &Vec<bool>| -> BTreeSet<usize> { (0..3).filter(|&i| s[i]).collect() };
            let cf: Vec<BTreeSet<usize>> = subsets.iter().filter(|s| g.is_conflict_free(s)).map(to_set).collect();
            let adm: Vec<BTreeSet<usize>> = subsets.iter().filter(|s| g.is_admissible(s)).map(to_set).collect();
            let mut stb: Vec<BTreeSet<usize>> = subsets.iter().filter(|s| g.is_stable(s)).map(to_set).collect();
            let mut niv = maximal(cf);
            let mut prf = maximal(adm);
            niv.sort();
            prf.sort();
            stb.sort();
            assert_eq!(g.extensions(Semantics::Naive).unwrap(), niv, "graph {bits}");
            assert_eq!(g.extensions(Semantics::Preferred).unwrap(), prf, "graph {bits}");
            assert_eq!(g.extensions(Semantics::Stable).unwrap(), stb, "graph {bits}");
        }
    }
}

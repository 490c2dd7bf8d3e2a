//! Finite posets stored as full order matrices in row bitsets.
//!
//! Every poset is validated when it is built, so downstream code may assume
//! reflexivity, antisymmetry and transitivity without re-checking.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::bitset::{ElemSet, MAX_CARRIER};
use crate::error::{Error, Result};
use crate::verdict::Verdict;

/// Index-addressed element names.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Carrier {
    labels: Vec<String>,
}

impl Carrier {
    pub fn new(labels: Vec<String>) -> Result<Carrier> {
        if labels.is_empty() {
            return Err(Error::Invalid("carrier must be nonempty".into()));
        }
        if labels.len() > MAX_CARRIER {
            return Err(Error::Invalid(format!("carrier larger than {MAX_CARRIER}")));
        }
        let mut seen = HashMap::new();
        for (i, l) in labels.iter().enumerate() {
            if l.is_empty() || l.chars().any(|c| c.is_whitespace() || c.is_control()) {
                return Err(Error::Invalid(format!("label `{l}` is not printable")));
            }
            if seen.insert(l.as_str(), i).is_some() {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        Ok(Carrier { labels })
    }

    /// Labels `0, 1, .., n-1`.
    pub fn numbered(n: usize) -> Carrier {
        Carrier { labels: (0..n).map(|i| i.to_string()).collect() }
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn restrict(&self, keep: &[usize]) -> Carrier {
        Carrier { labels: keep.iter().map(|&x| self.labels[x].clone()).collect() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConeDir {
    Lower,
    Upper,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundDir {
    Meet,
    Join,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FinPoset {
    carrier: Carrier,
    /// `up[x]` = { y | x <= y }
    up: Vec<ElemSet>,
    /// `down[x]` = { y | y <= x }
    down: Vec<ElemSet>,
}

impl FinPoset {
    /// Build from a full order matrix, rejecting the first violated poset axiom.
    pub fn from_matrix(carrier: Carrier, leq: &[Vec<bool>]) -> Result<FinPoset> {
        let n = carrier.size();
        if leq.len() != n || leq.iter().any(|r| r.len() != n) {
            return Err(Error::Invalid("order matrix has the wrong shape".into()));
        }
        let mut up = vec![ElemSet::EMPTY; n];
        for x in 0..n {
            for y in 0..n {
                if leq[x][y] {
                    up[x].insert(y);
                }
            }
        }
        Self::from_up_sets(carrier, up)
    }

    /// Build from `a < b` pairs, taking the reflexive-transitive closure.
    pub fn from_pairs(carrier: Carrier, pairs: &[(usize, usize)]) -> Result<FinPoset> {
        let n = carrier.size();
        let mut up: Vec<ElemSet> = (0..n).map(ElemSet::singleton).collect();
        for &(a, b) in pairs {
            up[a].insert(b);
        }
        // Warshall closure on row bitsets.
        for k in 0..n {
            for x in 0..n {
                if up[x].contains(k) {
                    up[x] = up[x].union(up[k]);
                }
            }
        }
        Self::from_up_sets(carrier, up)
    }

    pub fn from_up_sets(carrier: Carrier, up: Vec<ElemSet>) -> Result<FinPoset> {
        let n = carrier.size();
        for x in 0..n {
            if !up[x].contains(x) {
                return Err(Error::NotAPoset { axiom: "reflexivity", witness: vec![x] });
            }
        }
        for x in 0..n {
            for y in up[x].without(x) {
                if up[y].contains(x) {
                    return Err(Error::NotAPoset { axiom: "antisymmetry", witness: vec![x, y] });
                }
            }
        }
        for x in 0..n {
            for y in up[x] {
                if let Some(z) = up[y].iter().find(|&z| !up[x].contains(z)) {
                    return Err(Error::NotAPoset { axiom: "transitivity", witness: vec![x, y, z] });
                }
            }
        }
        let mut down = vec![ElemSet::EMPTY; n];
        for x in 0..n {
            for y in up[x] {
                down[y].insert(x);
            }
        }
        Ok(FinPoset { carrier, up, down })
    }

    pub fn chain(n: usize) -> FinPoset {
        let pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        FinPoset::from_pairs(Carrier::numbered(n), &pairs).expect("chain is a poset")
    }

    pub fn size(&self) -> usize {
        self.carrier.size()
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn label(&self, x: usize) -> &str {
        self.carrier.label(x)
    }

    pub fn all(&self) -> ElemSet {
        ElemSet::full(self.size())
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.up[x].contains(y)
    }

    #[inline]
    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq(x, y)
    }

    pub fn comparable(&self, x: usize, y: usize) -> bool {
        self.leq(x, y) || self.leq(y, x)
    }

    /// U(x)
    #[inline]
    pub fn up(&self, x: usize) -> ElemSet {
        self.up[x]
    }

    /// L(x)
    #[inline]
    pub fn down(&self, x: usize) -> ElemSet {
        self.down[x]
    }

    /// `L(a)` or `U(a)`; the cone of the empty set is the whole carrier.
    pub fn cone(&self, a: ElemSet, dir: ConeDir) -> ElemSet {
        let rows = match dir {
            ConeDir::Lower => &self.down,
            ConeDir::Upper => &self.up,
        };
        a.iter().fold(self.all(), |acc, y| acc.intersect(rows[y]))
    }

    pub fn lower(&self, a: ElemSet) -> ElemSet {
        self.cone(a, ConeDir::Lower)
    }

    pub fn upper(&self, a: ElemSet) -> ElemSet {
        self.cone(a, ConeDir::Upper)
    }

    /// U(x, y)
    pub fn upper2(&self, x: usize, y: usize) -> ElemSet {
        self.up[x].intersect(self.up[y])
    }

    /// L(x, y)
    pub fn lower2(&self, x: usize, y: usize) -> ElemSet {
        self.down[x].intersect(self.down[y])
    }

    /// Greatest element of `a`, if it has one.
    pub fn greatest(&self, a: ElemSet) -> Option<usize> {
        a.iter().find(|&m| a.is_subset(self.down[m]))
    }

    /// Least element of `a`, if it has one.
    pub fn least(&self, a: ElemSet) -> Option<usize> {
        a.iter().find(|&m| a.is_subset(self.up[m]))
    }

    /// Infimum or supremum of `a`; absence is a value, not an error.
    pub fn bound(&self, a: ElemSet, dir: BoundDir) -> Option<usize> {
        match dir {
            BoundDir::Meet => self.greatest(self.lower(a)),
            BoundDir::Join => self.least(self.upper(a)),
        }
    }

    pub fn meet(&self, x: usize, y: usize) -> Option<usize> {
        self.greatest(self.lower2(x, y))
    }

    pub fn join(&self, x: usize, y: usize) -> Option<usize> {
        self.least(self.upper2(x, y))
    }

    /// For comparable elements, the smaller one.
    pub fn min(&self, x: usize, y: usize) -> Option<usize> {
        if self.leq(x, y) {
            Some(x)
        } else if self.leq(y, x) {
            Some(y)
        } else {
            None
        }
    }

    pub fn top(&self) -> Option<usize> {
        self.greatest(self.all())
    }

    pub fn bottom(&self) -> Option<usize> {
        self.least(self.all())
    }

    /// Passes iff every pair has a meet and a join; the witness is the
    /// first pair (lexicographically) lacking one.
    pub fn is_lattice(&self) -> Verdict {
        let n = self.size();
        for x in 0..n {
            for y in 0..n {
                if self.meet(x, y).is_none() {
                    return Verdict::fail("meet", vec![x, y], "pair has no infimum");
                }
                if self.join(x, y).is_none() {
                    return Verdict::fail("join", vec![x, y], "pair has no supremum");
                }
            }
        }
        Verdict::pass("every pair has an infimum and a supremum")
    }

    /// Hasse diagram edges `(x, y)` with `x` covered by `y`.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.size();
        let mut out = Vec::new();
        for x in 0..n {
            for y in self.up[x].without(x) {
                let between = self.up[x].intersect(self.down[y]).without(x).without(y);
                if between.is_empty() {
                    out.push((x, y));
                }
            }
        }
        out
    }

    /// Table of meets, `None` where the meet is missing.
    pub fn meet_table(&self) -> Vec<Vec<Option<usize>>> {
        let n = self.size();
        (0..n).map(|x| (0..n).map(|y| self.meet(x, y)).collect()).collect()
    }

    pub fn join_table(&self) -> Vec<Vec<Option<usize>>> {
        let n = self.size();
        (0..n).map(|x| (0..n).map(|y| self.join(x, y)).collect()).collect()
    }

    /// The order reversed, same carrier.
    pub fn dual(&self) -> FinPoset {
        FinPoset { carrier: self.carrier.clone(), up: self.down.clone(), down: self.up.clone() }
    }

    /// The induced sub-poset on `keep`, renumbered in the order given.
    pub fn restrict(&self, keep: &[usize]) -> FinPoset {
        let carrier = self.carrier.restrict(keep);
        let up = keep
            .iter()
            .map(|&x| ElemSet::from_iter((0..keep.len()).filter(|&j| self.leq(x, keep[j]))))
            .collect();
        FinPoset::from_up_sets(carrier, up).expect("sub-poset of a poset")
    }

    /// Relabel through `perm`: element `x` becomes `perm[x]`.
    pub fn permuted(&self, perm: &[usize]) -> FinPoset {
        let n = self.size();
        let mut labels = vec![String::new(); n];
        let mut up = vec![ElemSet::EMPTY; n];
        for x in 0..n {
            labels[perm[x]] = self.label(x).to_string();
            up[perm[x]] = ElemSet::from_iter(self.up[x].iter().map(|y| perm[y]));
        }
        FinPoset::from_up_sets(Carrier { labels }, up).expect("relabelled poset")
    }

    pub fn leq_matrix(&self) -> Vec<Vec<bool>> {
        let n = self.size();
        (0..n).map(|x| (0..n).map(|y| self.leq(x, y)).collect()).collect()
    }

    pub fn with_carrier(&self, carrier: Carrier) -> FinPoset {
        assert_eq!(carrier.size(), self.size());
        FinPoset { carrier, up: self.up.clone(), down: self.down.clone() }
    }

    /// Graphviz rendering of the Hasse diagram, bottom to top.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph hasse {\n  rankdir=BT;\n  node [shape=plaintext];\n");
        for x in 0..self.size() {
            let _ = writeln!(s, "  n{x} [label=\"{}\"];", self.label(x).replace('"', "\\\""));
        }
        for (x, y) in self.covers() {
            let _ = writeln!(s, "  n{x} -> n{y} [arrowhead=none];");
        }
        s.push_str("}\n");
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(s: &str) -> Carrier {
        Carrier::new(s.split_whitespace().map(String::from).collect()).unwrap()
    }

    fn poset(ls: &str, pairs: &str) -> FinPoset {
        let c = labels(ls);
        let pairs: Vec<_> = pairs
            .split_whitespace()
            .map(|p| {
                let (a, b) = p.split_once('<').unwrap();
                (c.index_of(a).unwrap(), c.index_of(b).unwrap())
            })
            .collect();
        FinPoset::from_pairs(c, &pairs).unwrap()
    }

    fn fig1() -> FinPoset {
        poset("0 a b c d e 1", "0<a 0<b a<c b<c b<d b<e c<1 d<1 e<1")
    }

    fn fig2() -> FinPoset {
        poset("a b c d e 1", "a<c a<d a<e b<e c<1 d<1 e<1")
    }

    fn set(p: &FinPoset, ls: &str) -> ElemSet {
        ElemSet::from_iter(ls.split_whitespace().map(|l| p.carrier().index_of(l).unwrap()))
    }

    #[test]
    fn cones_on_fig1() {
        let p = fig1();
        assert_eq!(p.upper(set(&p, "a b")), set(&p, "c 1"));
        assert_eq!(p.lower(set(&p, "c d")), set(&p, "0 b"));
        assert_eq!(p.lower(ElemSet::EMPTY), p.all());
        assert_eq!(p.upper(ElemSet::EMPTY), p.all());
    }

    #[test]
    fn bounds() {
        let p = fig1();
        let b = p.carrier().index_of("b").unwrap();
        assert_eq!(p.bound(set(&p, "c d"), BoundDir::Meet), Some(b));
        for x in 0..p.size() {
            assert_eq!(p.bound(ElemSet::singleton(x), BoundDir::Meet), Some(x));
            assert_eq!(p.bound(ElemSet::singleton(x), BoundDir::Join), Some(x));
        }
        let q = fig2();
        assert_eq!(q.bound(set(&q, "c d"), BoundDir::Join), q.carrier().index_of("1"));
        assert_eq!(q.bound(set(&q, "c e"), BoundDir::Meet), q.carrier().index_of("a"));
        assert_eq!(q.bound(set(&q, "a b"), BoundDir::Meet), None);
    }

    #[test]
    fn lattice_detection() {
        assert!(fig1().is_lattice().pass);
        let v = fig2().is_lattice();
        assert!(!v.pass);
        let (x, y) = (v.witness[0], v.witness[1]);
        let q = fig2();
        assert!(q.meet(x, y).is_none() || q.join(x, y).is_none());
        assert!(FinPoset::chain(1).is_lattice().pass);
    }

    #[test]
    fn covers_examples() {
        assert_eq!(FinPoset::chain(2).covers(), vec![(0, 1)]);
        let p = poset("a b 1", "a<1 b<1");
        assert_eq!(p.covers(), vec![(0, 2), (1, 2)]);
        let f5 = poset("0 a b c d e 1", "0<a 0<b a<c b<d c<e d<e e<1");
        let names: Vec<_> = f5.covers().iter().map(|&(x, y)| format!("{}<{}", f5.label(x), f5.label(y))).collect();
        assert_eq!(names, ["0<a", "0<b", "a<c", "b<d", "c<e", "d<e", "e<1"]);
    }

    #[test]
    fn rejects_non_posets() {
        let c = labels("x y");
        let err = FinPoset::from_pairs(c.clone(), &[(0, 1), (1, 0)]).unwrap_err();
        assert!(matches!(err, Error::NotAPoset { axiom: "antisymmetry", .. }));
        let m = vec![vec![true, false], vec![false, false]];
        assert!(matches!(FinPoset::from_matrix(c.clone(), &m), Err(Error::NotAPoset { axiom: "reflexivity", .. })));
        let c3 = labels("x y z");
        let m = vec![vec![true, true, false], vec![false, true, true], vec![false, false, true]];
        assert!(matches!(FinPoset::from_matrix(c3, &m), Err(Error::NotAPoset { axiom: "transitivity", .. })));
        assert!(matches!(Carrier::new(vec!["a".into(), "a".into()]), Err(Error::DuplicateLabel(_))));
    }

    #[test]
    fn restrict_permute_dual() {
        let p = fig1();
        let q = p.restrict(&[2, 3, 4, 5, 6]);
        assert_eq!(q.bottom(), Some(0));
        assert_eq!(q.top(), Some(4));
        let r = p.permuted(&[6, 5, 4, 3, 2, 1, 0]);
        assert!(r.leq(6, 0));
        assert_eq!(r.label(6), "0");
        assert_eq!(p.dual().top(), p.bottom());
    }
}

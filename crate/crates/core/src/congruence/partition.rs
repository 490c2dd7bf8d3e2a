use std::fmt;

use serde::Serialize;

use crate::bitset::ElemSet;
use crate::error::{Error, Result};
use crate::order::Carrier;

/// An equivalence relation on `0..n`, stored as a block index per element.
/// Block indices are canonical: blocks are numbered in order of their
/// least element, so two equal partitions compare equal.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Partition {
    block: Vec<usize>,
}

impl Partition {
    pub fn identity(n: usize) -> Partition {
        Partition { block: (0..n).collect() }
    }

    pub fn full(n: usize) -> Partition {
        Partition { block: vec![0; n] }
    }

    /// Canonicalizes an arbitrary labelling of elements by blocks.
    pub fn from_labels(labels: &[usize]) -> Partition {
        let mut map: Vec<(usize, usize)> = Vec::new();
        let block = labels
            .iter()
            .map(|&l| match map.iter().find(|(k, _)| *k == l) {
                Some(&(_, v)) => v,
                None => {
                    map.push((l, map.len()));
                    map.len() - 1
                }
            })
            .collect();
        Partition { block }
    }

    /// Builds a partition from disjoint blocks; elements not covered become
    /// singletons.
    pub fn from_blocks(n: usize, blocks: &[ElemSet]) -> Result<Partition> {
        let mut labels: Vec<usize> = (0..n).map(|x| n + x).collect();
        let mut seen = ElemSet::EMPTY;
        for (i, b) in blocks.iter().enumerate() {
            if b.is_empty() {
                return Err(Error::Invalid("empty block".into()));
            }
            if !b.intersect(seen).is_empty() {
                return Err(Error::Invalid("blocks overlap".into()));
            }
            for x in b.iter() {
                if x >= n {
                    return Err(Error::Invalid(format!("element {x} out of range")));
                }
                labels[x] = i;
            }
            seen = seen.union(*b);
        }
        Ok(Partition::from_labels(&labels))
    }

    /// Least equivalence containing the given pairs.
    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Partition {
        let mut uf = UnionFind::new(n);
        for &(a, b) in pairs {
            uf.union(a, b);
        }
        uf.partition()
    }

    pub fn size(&self) -> usize {
        self.block.len()
    }

    pub fn block_of(&self, x: usize) -> usize {
        self.block[x]
    }

    pub fn labels(&self) -> &[usize] {
        &self.block
    }

    pub fn num_blocks(&self) -> usize {
        self.block.iter().max().map_or(0, |m| m + 1)
    }

    pub fn blocks(&self) -> Vec<ElemSet> {
        let mut out = vec![ElemSet::EMPTY; self.num_blocks()];
        for (x, &b) in self.block.iter().enumerate() {
            out[b].insert(x);
        }
        out
    }

    #[inline]
    pub fn same(&self, x: usize, y: usize) -> bool {
        self.block[x] == self.block[y]
    }

    pub fn class_of(&self, x: usize) -> ElemSet {
        let b = self.block[x];
        ElemSet::from_iter((0..self.size()).filter(|&y| self.block[y] == b))
    }

    pub fn is_identity(&self) -> bool {
        self.num_blocks() == self.size()
    }

    pub fn is_full(&self) -> bool {
        self.num_blocks() <= 1
    }

    /// Join in the partition lattice: transitive closure of the union.
    pub fn join(&self, other: &Partition) -> Partition {
        let mut uf = UnionFind::new(self.size());
        for x in 0..self.size() {
            uf.union(x, self.first_in_block(x));
            uf.union(x, other.first_in_block(x));
        }
        uf.partition()
    }

    pub fn meet(&self, other: &Partition) -> Partition {
        let n = self.size();
        let pairs: Vec<usize> = (0..n).map(|x| self.block[x] * n + other.block[x]).collect();
        Partition::from_labels(&pairs)
    }

    /// `self ⊆ other` as relations.
    pub fn refines(&self, other: &Partition) -> bool {
        (0..self.size()).all(|x| other.same(x, self.first_in_block(x)))
    }

    fn first_in_block(&self, x: usize) -> usize {
        let b = self.block[x];
        self.block.iter().position(|&c| c == b).unwrap_or(x)
    }

    pub fn relation(&self) -> Relation {
        let n = self.size();
        let mut r = Relation::empty(n);
        for x in 0..n {
            r.rows[x] = self.class_of(x);
        }
        r
    }

    pub fn format(&self, carrier: &Carrier) -> String {
        let blocks: Vec<String> = self
            .blocks()
            .into_iter()
            .map(|b| b.iter().map(|x| carrier.label(x)).collect::<Vec<_>>().join(","))
            .collect();
        format!("{{{}}}", blocks.join("|"))
    }

    /// Parses `{a,b|c|d,e}`. Elements not mentioned are singletons.
    pub fn parse(carrier: &Carrier, text: &str) -> Result<Partition> {
        let t = text.trim();
        let inner = t
            .strip_prefix('{')
            .and_then(|r| r.strip_suffix('}'))
            .ok_or_else(|| Error::Parse { line: 1, reason: "partition must be enclosed in braces".into() })?;
        let mut blocks = Vec::new();
        let mut seen = ElemSet::EMPTY;
        for part in inner.split('|') {
            let mut b = ElemSet::EMPTY;
            for tok in part.split([',', ' ']).map(str::trim).filter(|s| !s.is_empty()) {
                let x = carrier
                    .index_of(tok)
                    .ok_or_else(|| Error::Parse { line: 1, reason: format!("unknown label `{tok}`") })?;
                if seen.contains(x) {
                    return Err(Error::Parse { line: 1, reason: format!("`{tok}` occurs in two blocks") });
                }
                seen.insert(x);
                b.insert(x);
            }
            if !b.is_empty() {
                blocks.push(b);
            }
        }
        Partition::from_blocks(carrier.size(), &blocks)
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let blocks: Vec<String> = self
            .blocks()
            .into_iter()
            .map(|b| b.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
            .collect();
        write!(f, "{{{}}}", blocks.join("|"))
    }
}

/// A binary relation on `0..n` as one successor set per element.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Relation {
    rows: Vec<ElemSet>,
}

impl Relation {
    pub fn empty(n: usize) -> Relation {
        Relation { rows: vec![ElemSet::EMPTY; n] }
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn insert(&mut self, x: usize, y: usize) {
        self.rows[x].insert(y);
    }

    #[inline]
    pub fn contains(&self, x: usize, y: usize) -> bool {
        self.rows[x].contains(y)
    }

    pub fn row(&self, x: usize) -> ElemSet {
        self.rows[x]
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (0..self.size()).flat_map(|x| self.rows[x].iter().map(move |y| (x, y))).collect()
    }

    pub fn len(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.iter().all(|r| r.is_empty())
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.size()).all(|x| self.contains(x, x))
    }

    pub fn is_symmetric(&self) -> bool {
        self.pairs().into_iter().all(|(x, y)| self.contains(y, x))
    }

    pub fn is_transitive(&self) -> bool {
        (0..self.size()).all(|x| self.rows[x].iter().all(|y| self.rows[y].is_subset(self.rows[x])))
    }

    /// The partition this relation defines, if it is an equivalence.
    pub fn to_partition(&self) -> Option<Partition> {
        if !(self.is_reflexive() && self.is_symmetric() && self.is_transitive()) {
            return None;
        }
        let labels: Vec<usize> = (0..self.size()).map(|x| self.rows[x].first().unwrap_or(x)).collect();
        Some(Partition::from_labels(&labels))
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> UnionFind {
        UnionFind { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns true when two distinct classes were merged.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }

    pub(crate) fn partition(&mut self) -> Partition {
        let labels: Vec<usize> = (0..self.parent.len()).map(|x| self.find(x)).collect();
        Partition::from_labels(&labels)
    }
}

/// Every partition of `0..n`, as restricted-growth strings.
pub fn all_partitions(n: usize) -> Vec<Partition> {
    fn go(rgs: &mut Vec<usize>, max: usize, n: usize, out: &mut Vec<Partition>) {
        if rgs.len() == n {
            out.push(Partition { block: rgs.clone() });
            return;
        }
        let limit = if rgs.is_empty() { 0 } else { max + 1 };
        for b in 0..=limit {
            rgs.push(b);
            go(rgs, max.max(b), n, out);
            rgs.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        out.push(Partition { block: Vec::new() });
    } else {
        go(&mut Vec::with_capacity(n), 0, n, &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn carrier() -> Carrier {
        Carrier::new(["a", "b", "c", "d"].iter().map(|s| s.to_string()).collect()).unwrap()
    }

    #[test]
    fn bell_numbers() {
        let counts: Vec<usize> = (0..7).map(|n| all_partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 15, 52, 203]);
    }

    #[test]
    fn parse_and_format_round_trip() {
        let c = carrier();
        let p = Partition::parse(&c, "{a,c|b}").unwrap();
        assert!(p.same(0, 2));
        assert!(!p.same(0, 1));
        assert_eq!(p.format(&c), "{a,c|b|d}");
        assert_eq!(Partition::parse(&c, &p.format(&c)).unwrap(), p);
    }

    #[test]
    fn parse_rejects_repeats_and_unknowns() {
        let c = carrier();
        assert!(Partition::parse(&c, "{a,b|a}").is_err());
        assert!(Partition::parse(&c, "{a,z}").is_err());
        assert!(Partition::parse(&c, "a,b").is_err());
    }

    #[test]
    fn join_meet_refines() {
        let p = Partition::from_pairs(4, &[(0, 1)]);
        let q = Partition::from_pairs(4, &[(1, 2)]);
        let j = p.join(&q);
        assert_eq!(j, Partition::from_pairs(4, &[(0, 1), (1, 2)]));
        assert_eq!(p.meet(&q), Partition::identity(4));
        assert!(p.refines(&j) && q.refines(&j));
        assert!(!j.refines(&p));
        assert!(Partition::identity(4).refines(&p));
        assert!(p.refines(&Partition::full(4)));
    }

    #[test]
    fn relation_round_trip() {
        let p = Partition::from_pairs(4, &[(0, 3)]);
        assert_eq!(p.relation().to_partition(), Some(p.clone()));
        let mut r = Relation::empty(2);
        r.insert(0, 1);
        assert_eq!(r.to_partition(), None);
    }
}

//! Finite structures: a poset together with operation tables.
//!
//! The constants are read off the order: `one` is always the top and `zero`
//! is the bottom whenever the poset has one. Tables are stored as given and
//! checked by [`FinStructure::validate`], so malformed input can still be
//! inspected and reported on.

use crate::bitset::ElemSet;
use crate::error::{Error, Result};
use crate::order::{Carrier, FinPoset};
use crate::verdict::Verdict;

pub type Table = Vec<Vec<usize>>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SectionDir {
    /// Sections `[p, 1]`.
    Upper,
    /// Sections `[0, p]`.
    Lower,
}

/// A family of unary maps `x -> x^p`, one per base element `p`. Each map is
/// defined on the section of `p` and may be extended beyond it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Sectionals {
    pub dir: SectionDir,
    pub maps: Vec<Vec<Option<usize>>>,
}

impl Sectionals {
    #[inline]
    pub fn at(&self, p: usize, x: usize) -> Option<usize> {
        self.maps[p][x]
    }

    pub fn section(&self, poset: &FinPoset, p: usize) -> ElemSet {
        match self.dir {
            SectionDir::Upper => poset.up(p),
            SectionDir::Lower => poset.down(p),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct Lattice {
    join: Table,
    meet: Table,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FinStructure {
    poset: FinPoset,
    one: usize,
    zero: Option<usize>,
    star: Option<Table>,
    comp: Option<Vec<usize>>,
    join_t: Option<Table>,
    meet_t: Option<Table>,
    sectionals: Option<Sectionals>,
    lat: Option<Lattice>,
}

impl FinStructure {
    /// A bare structure over a poset with a top; add tables with the `with_*` methods.
    pub fn from_poset(poset: FinPoset) -> Result<FinStructure> {
        let one = poset.top().ok_or(Error::NoTop)?;
        let zero = poset.bottom();
        let lat = poset.is_lattice().pass.then(|| {
            let n = poset.size();
            let t = |f: &dyn Fn(usize, usize) -> Option<usize>| -> Table {
                (0..n).map(|x| (0..n).map(|y| f(x, y).unwrap()).collect()).collect()
            };
            Lattice { join: t(&|x, y| poset.join(x, y)), meet: t(&|x, y| poset.meet(x, y)) }
        });
        Ok(FinStructure {
            poset,
            one,
            zero,
            star: None,
            comp: None,
            join_t: None,
            meet_t: None,
            sectionals: None,
            lat,
        })
    }

    /// Structure whose order is induced from `star` through `x <= y iff x*y = one`.
    pub fn from_star(carrier: Carrier, star: Table, one: usize) -> Result<FinStructure> {
        let poset = induced_order(carrier, &star, one)?;
        Ok(FinStructure::from_poset(poset)?.with_star(star))
    }

    pub fn with_star(mut self, star: Table) -> FinStructure {
        self.star = Some(star);
        self
    }

    pub fn with_comp(mut self, comp: Vec<usize>) -> FinStructure {
        self.comp = Some(comp);
        self
    }

    pub fn with_lattice_tables(mut self, join: Option<Table>, meet: Option<Table>) -> FinStructure {
        self.join_t = join;
        self.meet_t = meet;
        self
    }

    pub fn with_sectionals(mut self, s: Sectionals) -> FinStructure {
        self.sectionals = Some(s);
        self
    }

    pub fn without_star(mut self) -> FinStructure {
        self.star = None;
        self
    }

    pub fn poset(&self) -> &FinPoset {
        &self.poset
    }

    pub fn carrier(&self) -> &Carrier {
        self.poset.carrier()
    }

    pub fn size(&self) -> usize {
        self.poset.size()
    }

    pub fn label(&self, x: usize) -> &str {
        self.poset.label(x)
    }

    pub fn one(&self) -> usize {
        self.one
    }

    pub fn zero(&self) -> Option<usize> {
        self.zero
    }

    pub fn star_table(&self) -> Option<&Table> {
        self.star.as_ref()
    }

    pub fn comp_table(&self) -> Option<&Vec<usize>> {
        self.comp.as_ref()
    }

    pub fn explicit_join(&self) -> Option<&Table> {
        self.join_t.as_ref()
    }

    pub fn explicit_meet(&self) -> Option<&Table> {
        self.meet_t.as_ref()
    }

    pub fn sectionals(&self) -> Option<&Sectionals> {
        self.sectionals.as_ref()
    }

    pub fn has_star(&self) -> bool {
        self.star.is_some()
    }

    pub fn is_lattice(&self) -> bool {
        self.lat.is_some()
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.poset.leq(x, y)
    }

    /// `x * y`. Panics when the structure has no star table.
    #[inline]
    pub fn s(&self, x: usize, y: usize) -> usize {
        self.star.as_ref().expect("structure has a star table")[x][y]
    }

    /// `x'`. Panics when the structure has no complementation.
    #[inline]
    pub fn c(&self, x: usize) -> usize {
        self.comp.as_ref().expect("structure has a complementation")[x]
    }

    /// Join, from the order; `None` when the pair has no supremum.
    #[inline]
    pub fn join(&self, x: usize, y: usize) -> Option<usize> {
        match &self.lat {
            Some(l) => Some(l.join[x][y]),
            None => self.poset.join(x, y),
        }
    }

    #[inline]
    pub fn meet(&self, x: usize, y: usize) -> Option<usize> {
        match &self.lat {
            Some(l) => Some(l.meet[x][y]),
            None => self.poset.meet(x, y),
        }
    }

    /// Lattice join. Panics on non-lattices.
    #[inline]
    pub fn jn(&self, x: usize, y: usize) -> usize {
        self.lat.as_ref().expect("lattice-ordered structure").join[x][y]
    }

    /// Lattice meet. Panics on non-lattices.
    #[inline]
    pub fn mt(&self, x: usize, y: usize) -> usize {
        self.lat.as_ref().expect("lattice-ordered structure").meet[x][y]
    }

    /// Typing checks: shapes, index ranges, agreement of explicit lattice
    /// tables with the order, and sectionals mapping sections into themselves.
    pub fn validate(&self) -> Verdict {
        let n = self.size();
        if let Some(t) = &self.star {
            if let Some(v) = check_table("star", t, n) {
                return v;
            }
        }
        if let Some(c) = &self.comp {
            if c.len() != n {
                return Verdict::fail("comp-shape", vec![], format!("comp has {} entries, expected {n}", c.len()));
            }
            if let Some(x) = (0..n).find(|&x| c[x] >= n) {
                return Verdict::fail("comp-range", vec![x], "comp entry out of range");
            }
        }
        for (name, t, exact) in [
            ("join", &self.join_t, &(|x, y| self.poset.join(x, y)) as &dyn Fn(usize, usize) -> Option<usize>),
            ("meet", &self.meet_t, &|x, y| self.poset.meet(x, y)),
        ] {
            let Some(t) = t else { continue };
            if let Some(v) = check_table(name, t, n) {
                return v;
            }
            for x in 0..n {
                for y in 0..n {
                    if exact(x, y) != Some(t[x][y]) {
                        return Verdict::fail(
                            format!("{name}-order"),
                            vec![x, y],
                            format!("{name} table disagrees with the order"),
                        );
                    }
                }
            }
        }
        if let Some(s) = &self.sectionals {
            if s.maps.len() != n || s.maps.iter().any(|r| r.len() != n) {
                return Verdict::fail("sectionals-shape", vec![], "sectional family has the wrong shape");
            }
            for p in 0..n {
                let sec = s.section(&self.poset, p);
                for x in 0..n {
                    // Outside its section a map may be left undefined or extended
                    // arbitrarily; inside it must stay inside.
                    let ok = match s.at(p, x) {
                        Some(v) => v < n && (!sec.contains(x) || sec.contains(v)),
                        None => !sec.contains(x),
                    };
                    if !ok {
                        return Verdict::fail("sectionals-range", vec![p, x], "sectional map leaves its section");
                    }
                }
            }
        }
        Verdict::pass("well-formed")
    }

    pub fn require_star(&self) -> Result<()> {
        self.star.as_ref().map(|_| ()).ok_or(Error::MissingComponent("star"))
    }

    /// Relabel: element `x` becomes `perm[x]`.
    pub fn permuted(&self, perm: &[usize]) -> FinStructure {
        let n = self.size();
        let pt = |t: &Table| -> Table {
            let mut out = vec![vec![0; n]; n];
            for x in 0..n {
                for y in 0..n {
                    out[perm[x]][perm[y]] = perm[t[x][y]];
                }
            }
            out
        };
        let mut s = FinStructure::from_poset(self.poset.permuted(perm)).expect("top survives relabelling");
        s.star = self.star.as_ref().map(pt);
        s.join_t = self.join_t.as_ref().map(pt);
        s.meet_t = self.meet_t.as_ref().map(pt);
        s.comp = self.comp.as_ref().map(|c| {
            let mut out = vec![0; n];
            for x in 0..n {
                out[perm[x]] = perm[c[x]];
            }
            out
        });
        s.sectionals = self.sectionals.as_ref().map(|sec| {
            let mut maps = vec![vec![None; n]; n];
            for p in 0..n {
                for x in 0..n {
                    maps[perm[p]][perm[x]] = sec.maps[p][x].map(|v| perm[v]);
                }
            }
            Sectionals { dir: sec.dir, maps }
        });
        s
    }

    /// Same structure, new labels.
    pub fn relabelled(&self, carrier: Carrier) -> FinStructure {
        let mut s = self.clone();
        s.poset = self.poset.with_carrier(carrier);
        s
    }
}

fn check_table(name: &str, t: &Table, n: usize) -> Option<Verdict> {
    if t.len() != n || t.iter().any(|r| r.len() != n) {
        return Some(Verdict::fail(format!("{name}-shape"), vec![], format!("{name} table is not {n}x{n}")));
    }
    for x in 0..n {
        for y in 0..n {
            if t[x][y] >= n {
                return Some(Verdict::fail(
                    format!("{name}-range"),
                    vec![x, y],
                    format!("{name} entry {} out of range", t[x][y]),
                ));
            }
        }
    }
    None
}

/// The relation `x <= y iff x*y = one`, provided it is a partial order with
/// `one` on top.
pub fn induced_order(carrier: Carrier, star: &Table, one: usize) -> Result<FinPoset> {
    let n = carrier.size();
    if star.len() != n || star.iter().any(|r| r.len() != n) {
        return Err(Error::Invalid(format!("star table is not {n}x{n}")));
    }
    if one >= n {
        return Err(Error::Invalid("one is not in the carrier".into()));
    }
    let m: Vec<Vec<bool>> = star.iter().map(|r| r.iter().map(|&v| v == one).collect()).collect();
    let p = FinPoset::from_matrix(carrier, &m)?;
    if p.top() != Some(one) {
        return Err(Error::NoTop);
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_chain() -> FinStructure {
        FinStructure::from_star(Carrier::numbered(2), vec![vec![1, 1], vec![0, 1]], 1).unwrap()
    }

    #[test]
    fn induced_two_chain() {
        let s = two_chain();
        assert!(s.leq(0, 1) && !s.leq(1, 0));
        assert_eq!(s.one(), 1);
        assert_eq!(s.zero(), Some(0));
        assert!(s.validate().pass);
        assert!(s.is_lattice());
    }

    #[test]
    fn one_point() {
        let s = FinStructure::from_star(Carrier::numbered(1), vec![vec![0]], 0).unwrap();
        assert_eq!(s.poset().size(), 1);
        assert_eq!(s.zero(), Some(0));
    }

    #[test]
    fn induced_rejects_cycles_and_missing_top() {
        let c = Carrier::numbered(2);
        assert!(matches!(
            induced_order(c.clone(), &vec![vec![1, 1], vec![1, 1]], 1),
            Err(Error::NotAPoset { axiom: "antisymmetry", .. })
        ));
        assert!(matches!(induced_order(c, &vec![vec![1, 0], vec![0, 1]], 1), Err(Error::NoTop)));
    }

    #[test]
    fn out_of_range_entry() {
        let s = two_chain().with_star(vec![vec![1, 1], vec![5, 1]]);
        let v = s.validate();
        assert!(!v.pass);
        assert_eq!(v.clause.as_deref(), Some("star-range"));
        assert_eq!(v.witness, vec![1, 0]);
    }

    #[test]
    fn wrong_join_table() {
        let s = two_chain().with_lattice_tables(Some(vec![vec![0, 0], vec![1, 1]]), None);
        assert_eq!(s.validate().clause.as_deref(), Some("join-order"));
    }

    #[test]
    fn permute_roundtrip() {
        let s = two_chain().with_comp(vec![1, 0]);
        let p = s.permuted(&[1, 0]);
        assert_eq!(p.one(), 0);
        assert_eq!(p.s(0, 1), 1);
        assert_eq!(p.permuted(&[1, 0]), s);
    }
}

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::axioms::{self, AxiomSystem};
use crate::bitset::ElemSet;
use crate::error::{Error, Result};
use crate::structure::FinStructure;
use crate::verdict::Verdict;

use super::partition::Relation;

/// Subset enumeration is exhaustive, so it is capped.
pub const FILTER_ENUM_CAP: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum FilterKind {
    /// Closed under `∨`, `∧` and `*` applied to `F`-related pairs.
    #[serde(rename = "LATTICE_FILTER")]
    LatticeFilter,
    /// F1 only.
    #[serde(rename = "STAR_FILTER")]
    StarFilter,
    /// F1 and F2.
    #[serde(rename = "FILTER")]
    Filter,
    /// F1, F2 and F3.
    #[serde(rename = "STRONG_FILTER")]
    StrongFilter,
}

impl FilterKind {
    pub const ALL: [FilterKind; 4] =
        [FilterKind::LatticeFilter, FilterKind::StarFilter, FilterKind::Filter, FilterKind::StrongFilter];

    pub fn tag(self) -> &'static str {
        match self {
            FilterKind::LatticeFilter => "LATTICE_FILTER",
            FilterKind::StarFilter => "STAR_FILTER",
            FilterKind::Filter => "FILTER",
            FilterKind::StrongFilter => "STRONG_FILTER",
        }
    }

    pub fn clauses(self) -> &'static [&'static str] {
        match self {
            FilterKind::LatticeFilter => &["one", "join", "meet", "star"],
            FilterKind::StarFilter => &["one", "F1"],
            FilterKind::Filter => &["one", "F1", "F2"],
            FilterKind::StrongFilter => &["one", "F1", "F2", "F3"],
        }
    }

    /// Kinds whose clauses are Horn, so that least closures exist.
    pub fn has_closure(self) -> bool {
        self != FilterKind::StrongFilter
    }
}

impl fmt::Display for FilterKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for FilterKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<FilterKind> {
        let norm = s.trim().to_ascii_uppercase().replace('-', "_");
        FilterKind::ALL
            .into_iter()
            .find(|k| k.tag() == norm)
            .ok_or_else(|| Error::Invalid(format!("unknown filter kind `{s}`")))
    }
}

/// `Φ(M) = {(x, y) | x*y ∈ M and y*x ∈ M}`.
pub fn phi(s: &FinStructure, m: ElemSet) -> Relation {
    let n = s.size();
    let mut r = Relation::empty(n);
    for x in 0..n {
        for y in 0..n {
            if m.contains(s.s(x, y)) && m.contains(s.s(y, x)) {
                r.insert(x, y);
            }
        }
    }
    r
}

fn related_pairs(s: &FinStructure, f: ElemSet) -> Vec<(usize, usize)> {
    phi(s, f).pairs()
}

/// First element produced by the kind's closure rules that lies outside `f`,
/// with the rule name and the assignment that produced it.
fn first_escape(s: &FinStructure, f: ElemSet, kind: FilterKind) -> Option<(&'static str, Vec<usize>, usize)> {
    let pairs = related_pairs(s, f);
    let p = s.poset();
    for &(x, y) in &pairs {
        for &(z, v) in &pairs {
            let w = vec![x, y, z, v];
            if kind == FilterKind::LatticeFilter {
                let j = s.s(s.jn(x, z), s.jn(y, v));
                if !f.contains(j) {
                    return Some(("join", w, j));
                }
                let m = s.s(s.mt(x, z), s.mt(y, v));
                if !f.contains(m) {
                    return Some(("meet", w, m));
                }
            }
            let t = s.s(s.s(x, z), s.s(y, v));
            if !f.contains(t) {
                let name = if kind == FilterKind::LatticeFilter { "star" } else { "F1" };
                return Some((name, w, t));
            }
            if matches!(kind, FilterKind::Filter | FilterKind::StrongFilter) {
                if let (Some(a), Some(b)) = (p.min(x, z), p.min(y, v)) {
                    let t = s.s(a, b);
                    if !f.contains(t) {
                        return Some(("F2", w, t));
                    }
                }
            }
        }
    }
    None
}

fn require_kind(s: &FinStructure, kind: FilterKind) -> Result<()> {
    s.require_star()?;
    if kind == FilterKind::LatticeFilter && !s.is_lattice() {
        return Err(Error::MissingComponent("lattice"));
    }
    Ok(())
}

/// Checks the clauses of `kind` in order. Witnesses are `(x, y, z, v)` for
/// the closure clauses and `(x, y)` for F3.
pub fn is_filter(s: &FinStructure, f: ElemSet, kind: FilterKind) -> Result<Verdict> {
    require_kind(s, kind)?;
    if !f.contains(s.one()) {
        return Ok(Verdict::fail("one", vec![], "1 is not in F"));
    }
    if let Some((clause, w, _)) = first_escape(s, f, kind) {
        return Ok(Verdict::fail(clause, w, "closure rule leaves F"));
    }
    if kind == FilterKind::StrongFilter {
        let p = s.poset();
        for x in 0..s.size() {
            for y in 0..s.size() {
                if f.contains(s.s(x, y)) && !p.upper2(x, y).iter().any(|z| f.contains(s.s(z, y))) {
                    return Ok(Verdict::fail("F3", vec![x, y], "no z above x and y with z*y in F"));
                }
            }
        }
    }
    Ok(Verdict::pass(kind.tag()))
}

/// Every subset satisfying `kind`, smallest first.
pub fn enumerate_filters(s: &FinStructure, kind: FilterKind) -> Result<Vec<ElemSet>> {
    require_kind(s, kind)?;
    let n = s.size();
    if n > FILTER_ENUM_CAP {
        return Err(Error::CapExceeded { size: n, cap: FILTER_ENUM_CAP });
    }
    let one = s.one();
    let others: Vec<usize> = (0..n).filter(|&x| x != one).collect();
    let mut out: Vec<ElemSet> = (0u64..1 << others.len())
        .into_par_iter()
        .filter_map(|mask| {
            let f = ElemSet::from_iter(
                others.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &x)| x),
            )
            .with(one);
            is_filter(s, f, kind).ok().filter(|v| v.pass).map(|_| f)
        })
        .collect();
    out.sort_by_key(|f| (f.len(), f.0));
    Ok(out)
}

/// Least set of the given Horn kind containing `m`.
pub fn closure(s: &FinStructure, m: ElemSet, kind: FilterKind) -> Result<ElemSet> {
    require_kind(s, kind)?;
    if !kind.has_closure() {
        return Err(Error::Precondition(format!("{} has no least closure", kind.tag())));
    }
    let mut f = m.with(s.one());
    while let Some((_, _, x)) = first_escape(s, f, kind) {
        f.insert(x);
    }
    Ok(f)
}

/// The lattice filter generated by `m` in a skew Hilbert algebra on a
/// lattice order.
pub fn generate_filter(s: &FinStructure, m: ElemSet) -> Result<ElemSet> {
    let v = axioms::check(s, AxiomSystem::SkewHilbert)?;
    if !v.pass {
        return Err(Error::Precondition(format!(
            "not a skew Hilbert algebra: {} fails",
            v.clause.unwrap_or_default()
        )));
    }
    if !s.is_lattice() {
        return Err(Error::Precondition("order is not a lattice".into()));
    }
    closure(s, m, FilterKind::LatticeFilter)
}

/// `c*(F∧c) ⊆ F` (where the meet exists) and `(F*(F*c))*c ⊆ F`.
pub fn filter_containments(s: &FinStructure, f: ElemSet) -> Result<Verdict> {
    s.require_star()?;
    for c in 0..s.size() {
        for a in f.iter() {
            if let Some(m) = s.meet(a, c) {
                if !f.contains(s.s(c, m)) {
                    return Ok(Verdict::fail("meet-containment", vec![a, c], "c*(a∧c) is not in F"));
                }
            }
            for b in f.iter() {
                if !f.contains(s.s(s.s(a, s.s(b, c)), c)) {
                    return Ok(Verdict::fail("star-containment", vec![a, b, c], "(a*(b*c))*c is not in F"));
                }
            }
        }
    }
    Ok(Verdict::pass("containments hold"))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DeductiveReport {
    /// `1 ∈ D`, and `a ∈ D`, `a*b ∈ D` imply `b ∈ D`.
    pub system: Verdict,
    /// `1 ∈ D` and `(D*(D*x))*x ⊆ D` for all `x`.
    pub sufficient: Verdict,
}

pub fn is_deductive_system(s: &FinStructure, d: ElemSet) -> Result<DeductiveReport> {
    s.require_star()?;
    let n = s.size();
    let one_missing = || Verdict::fail("one", vec![], "1 is not in D");
    let system = if !d.contains(s.one()) {
        one_missing()
    } else {
        d.iter()
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .find(|&(a, b)| d.contains(s.s(a, b)) && !d.contains(b))
            .map_or_else(
                || Verdict::pass("deductive system"),
                |(a, b)| Verdict::fail("modus-ponens", vec![a, b], "a and a*b in D but b is not"),
            )
    };
    let sufficient = if !d.contains(s.one()) {
        one_missing()
    } else {
        let mut found = None;
        'outer: for x in 0..n {
            for a in d.iter() {
                for b in d.iter() {
                    if !d.contains(s.s(s.s(a, s.s(b, x)), x)) {
                        found = Some(vec![a, b, x]);
                        break 'outer;
                    }
                }
            }
        }
        match found {
            Some(w) => Verdict::fail("closure-condition", w, "(a*(b*x))*x is not in D"),
            None => Verdict::pass("(D*(D*x))*x ⊆ D"),
        }
    };
    Ok(DeductiveReport { system, sufficient })
}

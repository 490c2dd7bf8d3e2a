//! Congruences and filters of finite structures with an implication.
//!
//! An *algebraic congruence* is an equivalence compatible with `*`. A
//! *congruence* is an algebraic congruence that is also min-stable, and a
//! *strong* congruence additionally links the induced quotient relation
//! `[a] ≤' [b]  ⇔  a*b Θ 1` to the order. On lattice-ordered structures the
//! full signature `∨, ∧, *` is used instead.

mod filter;
mod partition;

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::axioms::{self, AxiomSystem};
use crate::bitset::ElemSet;
use crate::error::{Error, Result};
use crate::structure::FinStructure;
use crate::verdict::Verdict;

pub use filter::{
    closure, enumerate_filters, filter_containments, generate_filter, is_deductive_system, is_filter, phi,
    DeductiveReport, FilterKind, FILTER_ENUM_CAP,
};
pub use partition::{all_partitions, Partition, Relation};

use partition::UnionFind;

/// Carriers up to this size are enumerated by brute force over all
/// partitions; larger ones by joins of principal congruences.
pub const BRUTE_FORCE_LIMIT: usize = 9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CongMode {
    Algebraic,
    MinStable,
    Strong,
    FullSignature,
}

impl CongMode {
    pub const ALL: [CongMode; 4] = [CongMode::Algebraic, CongMode::MinStable, CongMode::Strong, CongMode::FullSignature];

    pub fn name(self) -> &'static str {
        match self {
            CongMode::Algebraic => "algebraic",
            CongMode::MinStable => "min_stable",
            CongMode::Strong => "strong",
            CongMode::FullSignature => "full_signature",
        }
    }

    /// Full signature on lattice-ordered structures, min-stable otherwise.
    pub fn default_for(s: &FinStructure) -> CongMode {
        if s.is_lattice() {
            CongMode::FullSignature
        } else {
            CongMode::MinStable
        }
    }
}

impl fmt::Display for CongMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CongMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<CongMode> {
        let norm = s.trim().to_ascii_lowercase().replace('-', "_");
        CongMode::ALL
            .into_iter()
            .find(|m| m.name() == norm)
            .ok_or_else(|| Error::Invalid(format!("unknown congruence mode `{s}`")))
    }
}

fn check_size(s: &FinStructure, theta: &Partition) -> Result<()> {
    if theta.size() != s.size() {
        return Err(Error::Invalid(format!("partition on {} elements, structure has {}", theta.size(), s.size())));
    }
    Ok(())
}

/// Compatibility with `*`. Witness `(a, b, c)` with `a Θ b` but
/// `a*c` and `b*c` (or `c*a` and `c*b`) in different classes.
pub fn is_algebraic(s: &FinStructure, theta: &Partition) -> Result<Verdict> {
    s.require_star()?;
    check_size(s, theta)?;
    let n = s.size();
    for a in 0..n {
        for b in a + 1..n {
            if !theta.same(a, b) {
                continue;
            }
            for c in 0..n {
                if !theta.same(s.s(a, c), s.s(b, c)) {
                    return Ok(Verdict::fail("star-left", vec![a, b, c], "a Θ b but not a*c Θ b*c"));
                }
                if !theta.same(s.s(c, a), s.s(c, b)) {
                    return Ok(Verdict::fail("star-right", vec![a, b, c], "a Θ b but not c*a Θ c*b"));
                }
            }
        }
    }
    Ok(Verdict::pass("compatible with *"))
}

/// Compatibility with `∨`, `∧` and `*`.
pub fn is_full_signature(s: &FinStructure, theta: &Partition) -> Result<Verdict> {
    if !s.is_lattice() {
        return Err(Error::MissingComponent("lattice"));
    }
    let v = is_algebraic(s, theta)?;
    if !v.pass {
        return Ok(v);
    }
    let n = s.size();
    for a in 0..n {
        for b in a + 1..n {
            if !theta.same(a, b) {
                continue;
            }
            for c in 0..n {
                if !theta.same(s.jn(a, c), s.jn(b, c)) {
                    return Ok(Verdict::fail("join", vec![a, b, c], "a Θ b but not a∨c Θ b∨c"));
                }
                if !theta.same(s.mt(a, c), s.mt(b, c)) {
                    return Ok(Verdict::fail("meet", vec![a, b, c], "a Θ b but not a∧c Θ b∧c"));
                }
            }
        }
    }
    Ok(Verdict::pass("compatible with ∨, ∧ and *"))
}

/// Witness `(a, b, c, d)`: `a Θ b`, `c Θ d`, `a ~ c`, `b ~ d` comparable,
/// but `min(a,c)` and `min(b,d)` are not related.
pub fn is_min_stable(s: &FinStructure, theta: &Partition) -> Verdict {
    let p = s.poset();
    let n = s.size();
    for a in 0..n {
        for b in 0..n {
            if !theta.same(a, b) {
                continue;
            }
            for c in 0..n {
                let Some(m1) = p.min(a, c) else { continue };
                for d in 0..n {
                    if !theta.same(c, d) {
                        continue;
                    }
                    let Some(m2) = p.min(b, d) else { continue };
                    if !theta.same(m1, m2) {
                        return Verdict::fail("min-stable", vec![a, b, c, d], "(min(a,c), min(b,d)) not in Θ");
                    }
                }
            }
        }
    }
    Verdict::pass("min-stable")
}

/// `[a] ≤' [b]`, i.e. `a*b Θ 1`, for every pair of elements.
pub fn quotient_leq(s: &FinStructure, theta: &Partition) -> Vec<Vec<bool>> {
    let n = s.size();
    let one = s.one();
    (0..n).map(|a| (0..n).map(|b| theta.same(s.s(a, b), one)).collect()).collect()
}

/// Strongness: `[a] ≤' [b]` iff some `c ∈ [b]` lies above both `a` and `b`.
/// Also requires compatibility with `*` and min-stability.
pub fn is_strong_congruence(s: &FinStructure, theta: &Partition) -> Result<Verdict> {
    let v = is_algebraic(s, theta)?;
    if !v.pass {
        return Ok(v);
    }
    let v = is_min_stable(s, theta);
    if !v.pass {
        return Ok(v);
    }
    let p = s.poset();
    let le = quotient_leq(s, theta);
    let n = s.size();
    for a in 0..n {
        for b in 0..n {
            let rhs = !theta.class_of(b).intersect(p.up(a)).intersect(p.up(b)).is_empty();
            if le[a][b] != rhs {
                let detail = if le[a][b] {
                    "[a] ≤' [b] but no c in [b] lies above a and b"
                } else {
                    "some c in [b] lies above a and b but [a] ≤' [b] fails"
                };
                return Ok(Verdict::fail("strong", vec![a, b], detail));
            }
        }
    }
    Ok(Verdict::pass("strong congruence"))
}

/// Greatest element of each block, in block order.
pub fn class_greatest(s: &FinStructure, theta: &Partition) -> Vec<Option<usize>> {
    theta.blocks().into_iter().map(|b| s.poset().greatest(b)).collect()
}

/// Every class is up-directed within itself. Witness `(b, c)`.
pub fn classes_up_directed(s: &FinStructure, theta: &Partition) -> Verdict {
    let p = s.poset();
    for b in 0..s.size() {
        let class = theta.class_of(b);
        for c in class.iter().filter(|&c| c > b) {
            if class.intersect(p.upper2(b, c)).is_empty() {
                return Verdict::fail("up-directed", vec![b, c], "no common upper bound inside the class");
            }
        }
    }
    Verdict::pass("classes are up-directed")
}

/// Every class is order-convex. Witness `(b, c, d)` with `b ≤ c ≤ d`,
/// `b Θ d` and `c` outside their class.
pub fn classes_convex(s: &FinStructure, theta: &Partition) -> Verdict {
    let p = s.poset();
    let n = s.size();
    for b in 0..n {
        for d in p.up(b).iter() {
            if !theta.same(b, d) {
                continue;
            }
            for c in p.up(b).intersect(p.down(d)).iter() {
                if !theta.same(b, c) {
                    return Verdict::fail("convex", vec![b, c, d], "class is not order-convex");
                }
            }
        }
    }
    Verdict::pass("classes are convex")
}

/// Upper cones in the quotient: for all `a1, a2` the classes above both
/// `[a1]` and `[a2]` under `≤'` are exactly the classes of `U(a1, a2)`.
pub fn cone_formula(s: &FinStructure, theta: &Partition) -> Verdict {
    let p = s.poset();
    let le = quotient_leq(s, theta);
    let n = s.size();
    let blocks = theta.blocks();
    let reps: Vec<usize> = blocks.iter().map(|b| b.first().expect("nonempty block")).collect();
    for a1 in 0..n {
        for a2 in a1..n {
            let lhs = ElemSet::from_iter((0..reps.len()).filter(|&k| le[a1][reps[k]] && le[a2][reps[k]]));
            let rhs = ElemSet::from_iter(p.upper2(a1, a2).iter().map(|x| theta.block_of(x)));
            if lhs != rhs {
                return Verdict::fail("cone", vec![a1, a2], "upper cone of the classes differs from the classes of the cone");
            }
        }
    }
    Verdict::pass("cones commute with the quotient map")
}

/// Whether `theta` belongs to the family selected by `mode`.
pub fn is_congruence(s: &FinStructure, theta: &Partition, mode: CongMode) -> Result<Verdict> {
    match mode {
        CongMode::Algebraic => is_algebraic(s, theta),
        CongMode::MinStable => {
            let v = is_algebraic(s, theta)?;
            Ok(v.and_then(|| is_min_stable(s, theta)))
        }
        CongMode::Strong => is_strong_congruence(s, theta),
        CongMode::FullSignature => is_full_signature(s, theta),
    }
}

fn prepare(s: &FinStructure, mode: CongMode) -> Result<()> {
    s.require_star()?;
    let v = s.validate();
    if !v.pass {
        return Err(Error::Invalid(format!("{}: {}", v.clause.unwrap_or_default(), v.detail)));
    }
    if mode == CongMode::FullSignature && !s.is_lattice() {
        return Err(Error::MissingComponent("lattice"));
    }
    Ok(())
}

/// All congruences of the given kind, finest first. The identity and the
/// full partition are included whenever they qualify.
pub fn enumerate_congruences(s: &FinStructure, mode: CongMode) -> Result<Vec<Partition>> {
    prepare(s, mode)?;
    let n = s.size();
    let keep = |t: &Partition| is_congruence(s, t, mode).map(|v| v.pass).unwrap_or(false);
    let mut out: Vec<Partition> = if n <= BRUTE_FORCE_LIMIT {
        all_partitions(n).into_par_iter().filter(|t| keep(t)).collect()
    } else {
        let sig = if mode == CongMode::FullSignature { Signature::Full } else { Signature::Star };
        let mut family = principal_join_closure(s, sig);
        family.retain(|t| keep(t));
        family
    };
    sort_finest_first(&mut out);
    Ok(out)
}

/// A linear extension of refinement: more blocks first, then lexicographic.
pub fn sort_finest_first(list: &mut [Partition]) {
    list.sort_by(|a, b| b.num_blocks().cmp(&a.num_blocks()).then_with(|| a.cmp(b)));
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Signature {
    Star,
    Full,
}

fn principal_join_closure(s: &FinStructure, sig: Signature) -> Vec<Partition> {
    let n = s.size();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let principal: Vec<Partition> = pairs.par_iter().map(|&pr| close(s, &[pr], sig)).collect();
    let mut family: Vec<Partition> = vec![Partition::identity(n)];
    for p in principal {
        if !family.contains(&p) {
            family.push(p);
        }
    }
    let mut i = 0;
    while i < family.len() {
        let mut fresh = Vec::new();
        for j in 0..i {
            let m = close(s, &pair_list(&family[i].join(&family[j])), sig);
            if !family.contains(&m) && !fresh.contains(&m) {
                fresh.push(m);
            }
        }
        family.extend(fresh);
        i += 1;
    }
    family
}

fn pair_list(p: &Partition) -> Vec<(usize, usize)> {
    (0..p.size())
        .filter_map(|x| {
            let first = p.class_of(x).first()?;
            (first != x).then_some((first, x))
        })
        .collect()
}

fn close(s: &FinStructure, pairs: &[(usize, usize)], sig: Signature) -> Partition {
    let n = s.size();
    let mut uf = UnionFind::new(n);
    for &(a, b) in pairs {
        uf.union(a, b);
    }
    let p = s.poset();
    loop {
        let mut changed = false;
        for x in 0..n {
            let r = uf.find(x);
            if r == x {
                continue;
            }
            for c in 0..n {
                changed |= uf.union(s.s(x, c), s.s(r, c));
                changed |= uf.union(s.s(c, x), s.s(c, r));
                if sig == Signature::Full {
                    changed |= uf.union(s.jn(x, c), s.jn(r, c));
                    changed |= uf.union(s.mt(x, c), s.mt(r, c));
                }
            }
        }
        if sig == Signature::Star {
            let snapshot = uf.partition();
            for a in 0..n {
                for b in snapshot.class_of(a).iter() {
                    for c in 0..n {
                        let Some(m1) = p.min(a, c) else { continue };
                        for d in snapshot.class_of(c).iter() {
                            if let Some(m2) = p.min(b, d) {
                                changed |= uf.union(m1, m2);
                            }
                        }
                    }
                }
            }
        }
        if !changed {
            return uf.partition();
        }
    }
}

/// Least congruence containing `pairs`: closed under `∨, ∧, *` on lattices,
/// under `*` and min-stability otherwise.
pub fn principal_congruence(s: &FinStructure, pairs: &[(usize, usize)]) -> Result<Partition> {
    s.require_star()?;
    if let Some(&(a, b)) = pairs.iter().find(|&&(a, b)| a >= s.size() || b >= s.size()) {
        return Err(Error::Invalid(format!("pair ({a}, {b}) out of range")));
    }
    let sig = if s.is_lattice() { Signature::Full } else { Signature::Star };
    Ok(close(s, pairs, sig))
}

/// A skew Hilbert algebra whose order is a lattice. This is weaker than
/// `LATTICE_SKEW_HILBERT`, which also demands the strong identity.
pub fn lattice_ordered_sha(s: &FinStructure) -> bool {
    s.is_lattice() && axioms::holds(s, AxiomSystem::SkewHilbert)
}

/// The congruence and filter families compared by [`verify_correspondence`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Pairing {
    pub mode: CongMode,
    pub kind: FilterKind,
}

impl Pairing {
    /// Skew Hilbert algebras on a lattice order pair full-signature
    /// congruences with lattice filters; strong ones pair strong congruences with strong
    /// filters; any other skew Hilbert structure pairs min-stable
    /// congruences with filters, where the correspondence may fail.
    pub fn for_structure(s: &FinStructure) -> Result<Pairing> {
        if lattice_ordered_sha(s) {
            Ok(Pairing { mode: CongMode::FullSignature, kind: FilterKind::LatticeFilter })
        } else if axioms::holds(s, AxiomSystem::StrongSkewHilbert) {
            Ok(Pairing { mode: CongMode::Strong, kind: FilterKind::StrongFilter })
        } else if axioms::holds(s, AxiomSystem::SkewHilbert) {
            Ok(Pairing { mode: CongMode::MinStable, kind: FilterKind::Filter })
        } else {
            Err(Error::Precondition("structure is not a skew Hilbert algebra".into()))
        }
    }
}

/// Checks that `Θ ↦ [1]Θ` and `F ↦ Φ(F)` are mutually inverse between the
/// congruence and filter families chosen by [`Pairing::for_structure`].
/// Both maps are monotone, so a bijection is an order isomorphism.
pub fn verify_correspondence(s: &FinStructure) -> Result<Verdict> {
    let pairing = Pairing::for_structure(s)?;
    correspondence(s, pairing)
}

pub fn correspondence(s: &FinStructure, pairing: Pairing) -> Result<Verdict> {
    let congs = enumerate_congruences(s, pairing.mode)?;
    let filters = enumerate_filters(s, pairing.kind)?;
    let one = s.one();
    for theta in &congs {
        let f = theta.class_of(one);
        if !filters.contains(&f) {
            return Ok(Verdict::fail(
                "one-class",
                f.iter().collect(),
                format!("1-class of {theta:?} is not a {}", pairing.kind.tag()),
            ));
        }
        let back = phi(s, f);
        if let Some((a, b)) = (0..s.size())
            .flat_map(|a| (0..s.size()).map(move |b| (a, b)))
            .find(|&(a, b)| back.contains(a, b) != theta.same(a, b))
        {
            return Ok(Verdict::fail("phi-inverse", vec![a, b], format!("Φ([1]Θ) differs from Θ = {theta:?}")));
        }
    }
    for &f in &filters {
        let rel = phi(s, f);
        let Some(theta) = rel.to_partition() else {
            return Ok(Verdict::fail("phi-equivalence", f.iter().collect(), "Φ(F) is not an equivalence"));
        };
        if !congs.contains(&theta) {
            return Ok(Verdict::fail(
                "phi-congruence",
                f.iter().collect(),
                format!("Φ(F) is not a {} congruence", pairing.mode),
            ));
        }
        if theta.class_of(one) != f {
            return Ok(Verdict::fail("one-class-inverse", f.iter().collect(), "[1]Φ(F) differs from F"));
        }
    }
    Ok(Verdict::pass(format!(
        "{} {} congruences correspond to {} {} sets",
        congs.len(),
        pairing.mode,
        filters.len(),
        pairing.kind.tag()
    )))
}

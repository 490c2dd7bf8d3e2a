//! Structure-to-structure maps: star operations built from an order, the
//! closed-element orthoposet, sections, the product/implication
//! translations, duals and quotients.

use crate::axioms::{self, long_identity_by, AxiomSystem};
use crate::bitset::ElemSet;
use crate::congruence::{self, Partition};
use crate::error::{Error, Result};
use crate::order::{Carrier, FinPoset};
use crate::structure::{FinStructure, SectionDir, Sectionals, Table};
use crate::verdict::Verdict;

fn require(s: &FinStructure, sys: AxiomSystem) -> Result<()> {
    let v = axioms::check(s, sys)?;
    if v.pass {
        Ok(())
    } else {
        Err(Error::Precondition(format!(
            "{} fails {} at ({})",
            sys.name(),
            v.clause.as_deref().unwrap_or_default(),
            v.labeled_witness(s.carrier()).join(",")
        )))
    }
}

fn require_zero(s: &FinStructure) -> Result<usize> {
    s.zero().ok_or(Error::MissingComponent("zero"))
}

fn table(n: usize, f: impl Fn(usize, usize) -> usize) -> Table {
    (0..n).map(|x| (0..n).map(|y| f(x, y)).collect()).collect()
}

/// `x*y = 1` if `x ≤ y`, else `y`.
pub fn trivial_star(p: &FinPoset) -> Result<FinStructure> {
    let one = p.top().ok_or(Error::NoTop)?;
    let star = table(p.size(), |x, y| if p.leq(x, y) { one } else { y });
    Ok(FinStructure::from_poset(p.clone())?.with_star(star))
}

/// `x*y = 1` if `x ≤ y`, `x'` if `y = 0`, else `y`. The verdict reports
/// conditions (a) to (d) on the complementation.
pub fn pst_construct(p: &FinPoset, comp: &[usize]) -> Result<(FinStructure, Verdict)> {
    let (one, zero) = match (p.top(), p.bottom()) {
        (Some(o), Some(z)) => (o, z),
        _ => return Err(Error::NoBounds),
    };
    let n = p.size();
    if comp.len() != n || comp.iter().any(|&v| v >= n) {
        return Err(Error::Invalid("complementation table does not match the carrier".into()));
    }
    let star = table(n, |x, y| {
        if p.leq(x, y) {
            one
        } else if y == zero {
            comp[x]
        } else {
            y
        }
    });
    let s = FinStructure::from_poset(p.clone())?.with_star(star).with_comp(comp.to_vec());
    Ok((s, complement_conditions(p, comp)))
}

fn complement_conditions(p: &FinPoset, comp: &[usize]) -> Verdict {
    let (one, zero) = (p.top().unwrap(), p.bottom().unwrap());
    let n = p.size();
    if let Some(x) = (0..n).find(|&x| (comp[x] == one) != (x == zero)) {
        return Verdict::fail("a", vec![x], "x' = 1 exactly when x = 0 fails");
    }
    for x in 0..n {
        for y in 0..n {
            if p.leq(x, y) && !p.leq(comp[y], comp[x]) {
                return Verdict::fail("b", vec![x, y], "x ≤ y but y' ≰ x'");
            }
        }
    }
    if let Some(x) = (0..n).find(|&x| !p.leq(x, comp[comp[x]])) {
        return Verdict::fail("c", vec![x], "x ≰ x''");
    }
    if let Some(x) = (0..n).find(|&x| p.lower2(x, comp[x]) != ElemSet::singleton(zero)) {
        return Verdict::fail("d", vec![x], "L(x, x') is not {0}");
    }
    Verdict::pass("complementation conditions hold")
}

/// The orthoposet of closed elements `{x*0}` with complementation `x ↦ x*0`.
pub fn closed_elements(s: &FinStructure) -> Result<FinStructure> {
    require(s, AxiomSystem::SkewHilbert)?;
    let zero = require_zero(s)?;
    let keep: Vec<usize> = closed_set(s, zero).iter().collect();
    let poset = s.poset().restrict(&keep);
    let pos = |x: usize| keep.iter().position(|&k| k == x).expect("closed under complementation");
    let comp = keep.iter().map(|&x| pos(s.s(x, zero))).collect();
    Ok(FinStructure::from_poset(poset)?.with_comp(comp))
}

fn closed_set(s: &FinStructure, zero: usize) -> ElemSet {
    ElemSet::from_iter((0..s.size()).map(|x| s.s(x, zero)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecialSubsets {
    pub closed: ElemSet,
    pub dense: ElemSet,
    pub weakly_dense: ElemSet,
    /// Each closed `a` with the nonempty set `{x | x'' = a}`.
    pub fibers: Vec<(usize, ElemSet)>,
}

pub fn special_subsets(s: &FinStructure) -> Result<SpecialSubsets> {
    require(s, AxiomSystem::SkewHilbert)?;
    let zero = require_zero(s)?;
    let n = s.size();
    let c = |x: usize| s.s(x, zero);
    let closed = closed_set(s, zero);
    let dense = ElemSet::from_iter((0..n).filter(|&x| c(x) == zero));
    let weakly_dense = ElemSet::from_iter((0..n).map(|y| s.s(c(c(y)), y)));
    let fibers = closed
        .iter()
        .map(|a| (a, ElemSet::from_iter((0..n).filter(|&x| c(c(x)) == a))))
        .filter(|(_, f)| !f.is_empty())
        .collect();
    Ok(SpecialSubsets { closed, dense, weakly_dense, fibers })
}

/// First `(x, y)` with `x ∈ set`, `x ≤ y` and `y ∉ set`.
pub fn upper_set_witness(p: &FinPoset, set: ElemSet) -> Option<(usize, usize)> {
    set.iter().find_map(|x| p.up(x).iter().find(|&y| !set.contains(y)).map(|y| (x, y)))
}

/// `a = a'' ∧ (a''*a)` for every `a`.
pub fn triplet_lemma(s: &FinStructure) -> Result<Verdict> {
    s.require_star()?;
    let zero = require_zero(s)?;
    for a in 0..s.size() {
        let cc = s.s(s.s(a, zero), zero);
        if s.meet(cc, s.s(cc, a)) != Some(a) {
            return Ok(Verdict::fail("triplet", vec![a], "a ≠ a'' ∧ (a''*a)"));
        }
    }
    Ok(Verdict::pass("a = a'' ∧ (a''*a) for all a"))
}

/// The section `[p, 1]` with complementation `x ↦ x*p`.
pub fn section(s: &FinStructure, p: usize) -> Result<FinStructure> {
    require(s, AxiomSystem::SkewHilbert)?;
    let keep: Vec<usize> = s.poset().up(p).iter().collect();
    let poset = s.poset().restrict(&keep);
    let comp = keep
        .iter()
        .map(|&x| {
            keep.iter().position(|&k| k == s.s(x, p)).ok_or_else(|| {
                Error::Precondition(format!("{}*{} leaves the section", s.label(x), s.label(p)))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FinStructure::from_poset(poset)?.with_comp(comp))
}

/// BP1 to BP3 for `x^p = x*p` on `[p, 1]`, plus `1^p = p` and `p^p = 1`.
pub fn section_laws(s: &FinStructure, p: usize) -> Result<Verdict> {
    s.require_star()?;
    let po = s.poset();
    let sec: Vec<usize> = po.up(p).iter().collect();
    let h = |x: usize| s.s(x, p);
    for &x in &sec {
        for &y in &sec {
            if po.leq(x, y) && !po.leq(h(y), h(x)) {
                return Ok(Verdict::fail("BP1", vec![x, y], "x ≤ y but y^p ≰ x^p"));
            }
        }
    }
    if let Some(&x) = sec.iter().find(|&&x| !po.leq(x, h(h(x)))) {
        return Ok(Verdict::fail("BP2", vec![x], "x ≰ x^pp"));
    }
    if let Some(&x) = sec.iter().find(|&&x| po.lower2(x, h(x)) != po.down(p)) {
        return Ok(Verdict::fail("BP3", vec![x], "L(x, x^p) ≠ L(p)"));
    }
    if h(s.one()) != p {
        return Ok(Verdict::fail("unit", vec![], "1^p ≠ p"));
    }
    if h(p) != s.one() {
        return Ok(Verdict::fail("self", vec![], "p^p ≠ 1"));
    }
    Ok(Verdict::pass("section laws hold"))
}

/// `x*y = (x∨y)y` with `x∨y = (xy)y`, from an implication-algebra product
/// stored in the star slot.
pub fn oia_to_sha(a: &FinStructure) -> Result<FinStructure> {
    require(a, AxiomSystem::Oia)?;
    let m = |x, y| a.s(x, y);
    let star = table(a.size(), |x, y| m(m(m(x, y), y), y));
    FinStructure::from_star(a.carrier().clone(), star, a.one())
}

/// `(x*y)*y = (y*x)*x` and the long identity, both over `*`.
pub fn oia_identities(s: &FinStructure) -> Result<Verdict> {
    s.require_star()?;
    let n = s.size();
    for x in 0..n {
        for y in 0..n {
            if s.s(s.s(x, y), y) != s.s(s.s(y, x), x) {
                return Ok(Verdict::fail("i", vec![x, y], "(x*y)*y ≠ (y*x)*x"));
            }
        }
    }
    let mut found = None;
    axioms::for_each_tuple(n, 3, |t| {
        if long_identity_by(|a, b| s.s(a, b), t[0], t[1], t[2]) {
            true
        } else {
            found = Some(t.to_vec());
            false
        }
    });
    Ok(match found {
        Some(w) => Verdict::fail("ii", w, "long identity fails"),
        None => Verdict::pass("identities (i) and (ii) hold"),
    })
}

/// `x·y = (x∨y)*y` with `x∨y = (x*y)*y`; the product goes in the star slot.
pub fn sha_to_oia(s: &FinStructure) -> Result<FinStructure> {
    require(s, AxiomSystem::SkewHilbert)?;
    let v = oia_identities(s)?;
    if !v.pass {
        return Err(Error::Precondition(format!(
            "identity ({}) fails at ({})",
            v.clause.as_deref().unwrap_or_default(),
            v.labeled_witness(s.carrier()).join(",")
        )));
    }
    let product = table(s.size(), |x, y| s.s(s.s(s.s(x, y), y), y));
    FinStructure::from_star(s.carrier().clone(), product, s.one())
}

/// `x*y = (x∨y)'∨y` on a lattice with complementation.
pub fn oml_implication(s: &FinStructure) -> Result<FinStructure> {
    s.comp_table().ok_or(Error::MissingComponent("comp"))?;
    if !s.is_lattice() {
        return Err(Error::MissingComponent("lattice"));
    }
    let star = table(s.size(), |x, y| s.jn(s.c(s.jn(x, y)), y));
    Ok(s.clone().with_star(star))
}

/// Reverses the order of a sectional orthomodular lattice; the sectional
/// maps on `[0, p]` become maps on the upper sections of the dual.
pub fn dualize(s: &FinStructure) -> Result<FinStructure> {
    require(s, AxiomSystem::SectionalOml)?;
    let sec = axioms::effective_sectionals(s, SectionDir::Lower).ok_or(Error::MissingComponent("sectionals"))?;
    let mut d = FinStructure::from_poset(s.poset().dual())?;
    if let Some(c) = s.comp_table() {
        d = d.with_comp(c.clone());
    }
    Ok(d.with_sectionals(Sectionals { dir: SectionDir::Upper, maps: sec.maps }))
}

/// `(x∨y)^y = (x∨y)^(y∧z) ∨ y` over the upper sectionals in force.
pub fn identity_b(s: &FinStructure) -> Result<Verdict> {
    let sec = axioms::effective_sectionals(s, SectionDir::Upper).ok_or(Error::MissingComponent("sectionals"))?;
    let mut out = Verdict::pass("(x∨y)^y = (x∨y)^(y∧z) ∨ y");
    axioms::for_each_tuple(s.size(), 3, |t| {
        let (x, y, z) = (t[0], t[1], t[2]);
        let lhs = s.join(x, y).and_then(|j| sec.at(y, j));
        let rhs = s
            .join(x, y)
            .zip(s.meet(y, z))
            .and_then(|(j, m)| sec.at(m, j))
            .and_then(|v| s.join(v, y));
        match (lhs, rhs) {
            (Some(l), Some(r)) if l == r => true,
            _ => {
                out = Verdict::fail("B", t.to_vec(), "identity (B) fails or is undefined");
                false
            }
        }
    });
    Ok(out)
}

/// The globalized sections `x^p = x*p`, with `*` removed.
pub fn to_psb(s: &FinStructure) -> Result<FinStructure> {
    let sec = axioms::upper_from_star(s).ok_or(Error::MissingComponent("star"))?;
    Ok(s.clone().without_star().with_sectionals(sec))
}

/// `x*y = x^y`; needs total explicit upper sectionals.
pub fn from_psb(s: &FinStructure) -> Result<FinStructure> {
    let sec = s
        .sectionals()
        .filter(|sec| sec.dir == SectionDir::Upper)
        .ok_or(Error::MissingComponent("sectionals"))?;
    let n = s.size();
    let mut star = vec![vec![0; n]; n];
    for (x, row) in star.iter_mut().enumerate() {
        for (y, v) in row.iter_mut().enumerate() {
            *v = sec.at(y, x).ok_or_else(|| {
                Error::Precondition(format!("{}^{} is undefined", s.label(x), s.label(y)))
            })?;
        }
    }
    let mut out = FinStructure::from_poset(s.poset().clone())?.with_star(star);
    if let Some(c) = s.comp_table() {
        out = out.with_comp(c.clone());
    }
    Ok(out)
}

/// Labels each class by its greatest element, or by its members joined
/// with `+` when it has none.
fn class_carrier(s: &FinStructure, blocks: &[ElemSet]) -> Result<Carrier> {
    let labels = blocks
        .iter()
        .map(|&b| match s.poset().greatest(b) {
            Some(g) => s.label(g).to_string(),
            None => b.iter().map(|x| s.label(x)).collect::<Vec<_>>().join("+"),
        })
        .collect();
    Carrier::new(labels)
}

/// `S/Θ` ordered by `[a] ≤' [b]` iff `a*b Θ 1`.
pub fn quotient(s: &FinStructure, theta: &Partition) -> Result<FinStructure> {
    if theta.size() != s.size() {
        return Err(Error::Invalid("partition size does not match the carrier".into()));
    }
    let v = congruence::is_strong_congruence(s, theta)?;
    if !v.pass {
        return Err(Error::NotStrongCongruence { clause: v.clause.unwrap_or_default(), witness: v.witness });
    }
    let blocks = theta.blocks();
    let carrier = class_carrier(s, &blocks)?;
    let reps: Vec<usize> = blocks.iter().map(|b| b.first().expect("nonempty block")).collect();
    let star = table(blocks.len(), |i, j| theta.block_of(s.s(reps[i], reps[j])));
    FinStructure::from_star(carrier, star, theta.block_of(s.one()))
}

/// The raw relation `≤'` on classes, without any precondition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Preorder {
    pub classes: Vec<ElemSet>,
    pub leq: Vec<Vec<bool>>,
    pub antisymmetric: bool,
}

pub fn quotient_preorder(s: &FinStructure, theta: &Partition) -> Result<Preorder> {
    s.require_star()?;
    let classes = theta.blocks();
    let reps: Vec<usize> = classes.iter().map(|b| b.first().expect("nonempty block")).collect();
    let one = theta.block_of(s.one());
    let leq: Vec<Vec<bool>> = reps
        .iter()
        .map(|&a| reps.iter().map(|&b| theta.block_of(s.s(a, b)) == one).collect())
        .collect();
    let k = classes.len();
    let antisymmetric = (0..k).all(|i| (0..k).all(|j| i == j || !(leq[i][j] && leq[j][i])));
    Ok(Preorder { classes, leq, antisymmetric })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codec::parse_set;
    use crate::corpus;

    fn comp_of(s: &FinStructure) -> Vec<usize> {
        s.comp_table().unwrap().clone()
    }

    #[test]
    fn trivial_star_on_two_chain() {
        let s = trivial_star(&FinPoset::chain(2)).unwrap();
        assert_eq!(s.star_table().unwrap(), &vec![vec![1, 1], vec![0, 1]]);
        assert!(axioms::holds(&s, AxiomSystem::StrongSkewHilbert));
    }

    #[test]
    fn trivial_star_differs_from_printed_fig2() {
        let printed = corpus::load("fig2");
        let s = trivial_star(printed.poset()).unwrap();
        let (a, b, c) = ["a", "b", "c"].map(|l| printed.carrier().index_of(l).unwrap()).into();
        assert_eq!(s.s(b, a), a);
        assert_eq!(printed.s(b, a), c);
    }

    #[test]
    fn pst_reproduces_mo2() {
        let mo2 = corpus::load("mo2");
        let (s, v) = pst_construct(mo2.poset(), &comp_of(&mo2)).unwrap();
        assert!(v.pass);
        assert_eq!(s.star_table(), mo2.star_table());
    }

    #[test]
    fn pst_on_o6_gives_the_ortholattice_back() {
        let o6 = corpus::load("o6");
        let (s, v) = pst_construct(o6.poset(), &comp_of(&o6)).unwrap();
        assert!(v.pass);
        assert!(axioms::holds(&s, AxiomSystem::LatticeSkewHilbert));
        let back = closed_elements(&s).unwrap();
        assert_eq!(back.poset(), o6.poset());
        assert_eq!(back.comp_table(), o6.comp_table());
    }

    #[test]
    fn pst_condition_a() {
        let (_, v) = pst_construct(&FinPoset::chain(2), &[1, 1]).unwrap();
        assert_eq!(v.clause.as_deref(), Some("a"));
        let (_, v) = pst_construct(&FinPoset::chain(2), &[1, 0]).unwrap();
        assert!(v.pass);
    }

    #[test]
    fn fig5_sets() {
        let s = corpus::load("fig5");
        let c = s.carrier();
        let sets = special_subsets(&s).unwrap();
        assert_eq!(sets.closed, parse_set(c, "{0,c,d,1}").unwrap());
        assert_eq!(sets.dense, parse_set(c, "{e,1}").unwrap());
        assert_eq!(sets.weakly_dense, parse_set(c, "{a,b,e,1}").unwrap());
        assert!(upper_set_witness(s.poset(), sets.weakly_dense).is_some());
        let o = closed_elements(&s).unwrap();
        assert!(axioms::holds(&o, AxiomSystem::BooleanPoset));
    }

    #[test]
    fn triplet_lemma_on_bounded_corpus() {
        for name in corpus::NAMES {
            let s = corpus::load(name);
            if s.zero().is_some() {
                assert!(triplet_lemma(&s).unwrap().pass, "{name}");
            }
        }
    }

    #[test]
    fn sections() {
        let s = corpus::load("fig1");
        let b = s.carrier().index_of("b").unwrap();
        let sec = section(&s, b).unwrap();
        assert_eq!(sec.size(), 5);
        assert!(section_laws(&s, b).unwrap().pass);
        let top = section(&s, s.one()).unwrap();
        assert_eq!(top.size(), 1);
    }

    #[test]
    fn oia_round_trip_on_mo2() {
        let mo2 = corpus::load("mo2");
        let a = sha_to_oia(&mo2).unwrap();
        assert!(axioms::holds(&a, AxiomSystem::Oia));
        let back = oia_to_sha(&a).unwrap();
        assert_eq!(back.star_table(), mo2.star_table());
    }

    #[test]
    fn oml_implication_matches_mo2() {
        let mo2 = corpus::load("mo2");
        let s = oml_implication(&mo2.clone().without_star()).unwrap();
        assert_eq!(s.star_table(), mo2.star_table());
    }

    #[test]
    fn dual_of_mo2() {
        let mo2 = corpus::load("mo2").without_star();
        let d = dualize(&mo2).unwrap();
        assert!(axioms::holds(&d, AxiomSystem::OmJoinSemilattice));
        assert!(identity_b(&d).unwrap().pass);
        assert!(axioms::holds(&mo2, AxiomSystem::Goml));
    }

    #[test]
    fn psb_round_trip() {
        for name in corpus::NAMES {
            let s = corpus::load(name);
            if axioms::holds(&s, AxiomSystem::StrongSkewHilbert) {
                let b = to_psb(&s).unwrap();
                assert!(axioms::holds(&b, AxiomSystem::StrongPsb), "{name}");
                assert_eq!(from_psb(&b).unwrap().star_table(), s.star_table(), "{name}");
            }
        }
    }

    #[test]
    fn quotients() {
        let s = corpus::load("fig1alt");
        let theta = Partition::parse(s.carrier(), "{0|a|b,e|c,d,1}").unwrap();
        let q = quotient(&s, &theta).unwrap();
        assert_eq!(q.size(), 4);
        let id = quotient(&s, &Partition::identity(s.size())).unwrap();
        assert_eq!(id.star_table(), s.star_table());

        let s = corpus::load("fig6");
        let theta = Partition::parse(s.carrier(), "{a,b|c|d,e,f,g,1}").unwrap();
        assert!(matches!(quotient(&s, &theta), Err(Error::NotStrongCongruence { .. })));
        assert_eq!(quotient_preorder(&s, &theta).unwrap().classes.len(), 3);
    }
}

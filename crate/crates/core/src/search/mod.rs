//! Exhaustive generation of finite models.
//!
//! Models are structures whose order is the one induced by `*` (or, for the
//! orthoposet systems, bounded posets with a complementation). The main
//! strategy enumerates posets with a top up to isomorphism and fills the
//! star table column by column: every clause of the skew Hilbert family
//! reads a single column once `u*v = 1` is replaced by `u ≤ v`. A second,
//! table-first strategy scans every table for very small sizes.

mod columns;
mod posets;

use std::collections::HashSet;

use rayon::prelude::*;

use crate::axioms::{self, AxiomSystem};
use crate::error::{Error, Result};
use crate::order::{Carrier, FinPoset};
use crate::structure::{induced_order, FinStructure, Table};
use crate::verdict::Verdict;

pub use posets::posets_with_top;

use columns::{column_candidates, Profile};
use posets::{automorphisms, for_each_perm};

/// Largest size for unrestricted search.
pub const SEARCH_CAP: usize = 6;
/// Largest size when the poset is fixed.
pub const FIXED_POSET_CAP: usize = 8;
/// Largest size for the table-first strategy.
pub const BRUTE_FORCE_CAP: usize = 3;
/// Largest number of candidate star tables examined on a single order.
pub const TABLE_LIMIT: u64 = 5_000_000;

#[derive(Debug, Clone)]
pub struct SearchSpec {
    pub size: usize,
    pub system: AxiomSystem,
    pub up_to_iso: bool,
    pub fixed_poset: Option<FinPoset>,
}

impl SearchSpec {
    pub fn new(size: usize, system: AxiomSystem) -> SearchSpec {
        SearchSpec { size, system, up_to_iso: true, fixed_poset: None }
    }

    pub fn labelled(mut self) -> SearchSpec {
        self.up_to_iso = false;
        self
    }

    pub fn with_poset(mut self, p: FinPoset) -> SearchSpec {
        self.size = p.size();
        self.fixed_poset = Some(p);
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Shape {
    Star,
    Comp,
}

fn shape(sys: AxiomSystem) -> Result<Shape> {
    match sys {
        AxiomSystem::Orthoposet | AxiomSystem::BooleanPoset => Ok(Shape::Comp),
        s if s.uses_star() => Ok(Shape::Star),
        s => Err(Error::Invalid(format!("search does not support `{}`", s.name()))),
    }
}

fn needs_lattice(sys: AxiomSystem) -> bool {
    matches!(
        sys,
        AxiomSystem::LatticeSkewHilbert | AxiomSystem::SectionallyPcLattice | AxiomSystem::GomlAsSha
    )
}

fn candidate_posets(spec: &SearchSpec) -> Result<Vec<FinPoset>> {
    if spec.size == 0 {
        return Err(Error::Invalid("search size must be at least 1".into()));
    }
    let posets = match &spec.fixed_poset {
        Some(p) => {
            if p.size() > FIXED_POSET_CAP {
                return Err(Error::CapExceeded { size: p.size(), cap: FIXED_POSET_CAP });
            }
            p.top().ok_or(Error::NoTop)?;
            vec![p.clone()]
        }
        None => {
            if spec.size > SEARCH_CAP {
                return Err(Error::CapExceeded { size: spec.size, cap: SEARCH_CAP });
            }
            posets_with_top(spec.size)
        }
    };
    let shape = shape(spec.system)?;
    Ok(posets
        .into_iter()
        .filter(|p| !needs_lattice(spec.system) || p.is_lattice().pass)
        .filter(|p| shape != Shape::Comp || p.bottom().is_some())
        .collect())
}

/// Every model on one poset, in a fixed order.
fn models_on(p: &FinPoset, sys: AxiomSystem) -> Result<Vec<FinStructure>> {
    models_with_profile(p, sys, Profile::for_system(sys))
}

fn models_with_profile(p: &FinPoset, sys: AxiomSystem, profile: Profile) -> Result<Vec<FinStructure>> {
    let base = FinStructure::from_poset(p.clone()).expect("poset with top");
    let n = p.size();
    let mut out = Vec::new();
    match shape(sys)? {
        Shape::Star => {
            let cols: Vec<Vec<Vec<usize>>> = (0..n).map(|y| column_candidates(p, y, profile)).collect();
            let space = cols.iter().try_fold(1u64, |acc, c| acc.checked_mul(c.len() as u64));
            if space.is_none_or(|s| s > TABLE_LIMIT) {
                return Err(Error::Invalid(format!(
                    "more than {TABLE_LIMIT} candidate tables on one order; `{}` is too weakly constrained at size {n}",
                    sys.name()
                )));
            }
            let sizes: Vec<usize> = cols.iter().map(Vec::len).collect();
            if sizes.contains(&0) {
                return Ok(out);
            }
            odometer(&sizes, |pick| {
                let table: Table = (0..n).map(|x| (0..n).map(|y| cols[y][pick[y]][x]).collect()).collect();
                let s = base.clone().with_star(table);
                if axioms::holds(&s, sys) {
                    out.push(s);
                }
            });
        }
        Shape::Comp => {
            axioms::for_each_tuple(n, n, |c| {
                let inv = (0..n).all(|x| c[c[x]] == x);
                let anti = (0..n).all(|x| p.up(x).iter().all(|y| p.leq(c[y], c[x])));
                if inv && anti {
                    let s = base.clone().with_comp(c.to_vec());
                    if axioms::holds(&s, sys) {
                        out.push(s);
                    }
                }
                true
            });
        }
    }
    Ok(out)
}

/// Visits every index vector below `sizes`, last position fastest.
fn odometer(sizes: &[usize], mut f: impl FnMut(&[usize])) {
    let mut pick = vec![0usize; sizes.len()];
    loop {
        f(&pick);
        let mut i = sizes.len();
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            pick[i] += 1;
            if pick[i] < sizes[i] {
                break;
            }
            pick[i] = 0;
        }
    }
}

/// Lexicographically least image under the automorphisms of its poset.
fn canonical_under(s: &FinStructure, autos: &[Vec<usize>]) -> FinStructure {
    autos
        .iter()
        .map(|perm| s.permuted(perm))
        .min_by(|a, b| key(a).cmp(&key(b)))
        .expect("identity is an automorphism")
}

fn key(s: &FinStructure) -> (Option<Table>, Option<Vec<usize>>) {
    (s.star_table().cloned(), s.comp_table().cloned())
}

fn relabel_numbered(s: FinStructure) -> FinStructure {
    let n = s.size();
    s.relabelled(Carrier::numbered(n))
}

/// All models of the spec. Up to isomorphism, each class is represented by
/// its least table over its canonical poset; otherwise every labelled model
/// on `0..n` with top `n - 1` is listed, with numeric labels.
pub fn enumerate_models(spec: &SearchSpec) -> Result<Vec<FinStructure>> {
    let posets = candidate_posets(spec)?;
    let sys = spec.system;
    let iso = spec.up_to_iso;
    let fixed = spec.fixed_poset.is_some();
    let per_poset: Vec<Vec<FinStructure>> = posets
        .par_iter()
        .map(|p| -> Result<Vec<FinStructure>> {
            let models = models_on(p, sys)?;
            Ok(if iso {
                let autos = automorphisms(p);
                let mut seen = HashSet::new();
                models
                    .into_iter()
                    .map(|m| canonical_under(&m, &autos))
                    .filter(|m| seen.insert(key(m)))
                    .collect()
            } else if fixed {
                models
            } else {
                labelled_orbit(models)
            })
        })
        .collect::<Result<_>>()?;
    Ok(per_poset.into_iter().flatten().collect())
}

/// Images of the models under every permutation fixing the top.
fn labelled_orbit(models: Vec<FinStructure>) -> Vec<FinStructure> {
    let Some(n) = models.first().map(FinStructure::size) else {
        return Vec::new();
    };
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for_each_perm(n - 1, |perm| {
        let mut full = perm.to_vec();
        full.push(n - 1);
        for m in &models {
            let img = relabel_numbered(m.permuted(&full));
            if seen.insert((img.poset().leq_matrix(), key(&img))) {
                out.push(img);
            }
        }
    });
    out.sort_by_key(|s| (s.poset().leq_matrix(), key(s)));
    out
}

pub fn count_models(spec: &SearchSpec) -> Result<usize> {
    enumerate_models(spec).map(|v| v.len())
}

/// Table-first strategy: every `n × n` table whose induced order has top
/// `n - 1`, filtered by the system. Star systems only.
pub fn brute_force_models(size: usize, sys: AxiomSystem, up_to_iso: bool) -> Result<Vec<FinStructure>> {
    if shape(sys)? != Shape::Star {
        return Err(Error::Invalid(format!("table-first search needs a star system, not `{}`", sys.name())));
    }
    if size == 0 {
        return Err(Error::Invalid("search size must be at least 1".into()));
    }
    if size > BRUTE_FORCE_CAP {
        return Err(Error::CapExceeded { size, cap: BRUTE_FORCE_CAP });
    }
    let n = size;
    let carrier = Carrier::numbered(n);
    let mut found = Vec::new();
    axioms::for_each_tuple(n, n * n, |cells| {
        let table: Table = cells.chunks(n).map(<[usize]>::to_vec).collect();
        if let Ok(p) = induced_order(carrier.clone(), &table, n - 1) {
            let s = FinStructure::from_poset(p).expect("top").with_star(table);
            if axioms::holds(&s, sys) {
                found.push(s);
            }
        }
        true
    });
    if !up_to_iso {
        return Ok(found);
    }
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for s in found {
        let mut best: Option<(Vec<Vec<bool>>, Table)> = None;
        for_each_perm(n - 1, |perm| {
            let mut full = perm.to_vec();
            full.push(n - 1);
            let img = s.permuted(&full);
            let k = (img.poset().leq_matrix(), img.star_table().unwrap().clone());
            if best.as_ref().is_none_or(|b| k < *b) {
                best = Some(k);
            }
        });
        if seen.insert(best.expect("some permutation")) {
            out.push(s);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone)]
pub struct Counterexample {
    pub structure: FinStructure,
    /// Why the structure fails the second system.
    pub verdict: Verdict,
}

/// A smallest model of `a` that fails `b`, searching sizes `1..=max_size`.
/// Sizes beyond the search cap are refused only when reached.
pub fn find_counterexample(a: AxiomSystem, b: AxiomSystem, max_size: usize) -> Result<Option<Counterexample>> {
    for n in 1..=max_size {
        for s in enumerate_models(&SearchSpec::new(n, a))? {
            let v = axioms::check(&s, b)?;
            if !v.pass {
                return Ok(Some(Counterexample { structure: s, verdict: v }));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count(n: usize, sys: AxiomSystem, iso: bool) -> usize {
        let spec = SearchSpec::new(n, sys);
        count_models(&if iso { spec } else { spec.labelled() }).unwrap()
    }

    #[test]
    fn pruning_loses_no_models() {
        let systems = [
            AxiomSystem::Hilbert,
            AxiomSystem::SkewHilbert,
            AxiomSystem::StrongSkewHilbert,
            AxiomSystem::LatticeSkewHilbert,
            AxiomSystem::SectionallyPcPoset,
            AxiomSystem::StronglySectionallyPcPoset,
            AxiomSystem::RelativelyPcPoset,
            AxiomSystem::SectionallyPcLattice,
        ];
        for p in (1..=4).flat_map(posets_with_top) {
            for sys in systems {
                let pruned = models_on(&p, sys).unwrap();
                let plain = models_with_profile(&p, sys, Profile::default()).unwrap();
                assert_eq!(pruned, plain, "{} on {:?}", sys.name(), p);
            }
        }
    }

    #[test]
    fn single_element() {
        for sys in [AxiomSystem::SkewHilbert, AxiomSystem::Hilbert, AxiomSystem::StrongSkewHilbert] {
            assert_eq!(count(1, sys, true), 1);
            assert_eq!(count(1, sys, false), 1);
        }
    }

    #[test]
    fn small_skew_counts() {
        assert_eq!(count(2, AxiomSystem::SkewHilbert, false), 1);
        assert_eq!(count(3, AxiomSystem::SkewHilbert, true), 2);
        assert_eq!(count(3, AxiomSystem::SkewHilbert, false), 3);
    }

    #[test]
    fn strategies_agree_up_to_three() {
        for sys in AxiomSystem::ALL.into_iter().filter(|s| s.uses_star()) {
            for n in 1..=3 {
                for iso in [true, false] {
                    let a = count(n, sys, iso);
                    let b = brute_force_models(n, sys, iso).unwrap().len();
                    assert_eq!(a, b, "{} size {n} iso {iso}", sys.name());
                }
            }
        }
    }

    #[test]
    fn caps() {
        assert!(matches!(
            count_models(&SearchSpec::new(SEARCH_CAP + 1, AxiomSystem::SkewHilbert)),
            Err(Error::CapExceeded { .. })
        ));
        assert!(brute_force_models(4, AxiomSystem::SkewHilbert, true).is_err());
    }

    #[test]
    fn strong_implies_skew_up_to_four() {
        assert!(find_counterexample(AxiomSystem::StrongSkewHilbert, AxiomSystem::SkewHilbert, 4).unwrap().is_none());
    }

    #[test]
    fn orthoposets_of_size_four() {
        // The four-element Boolean algebra and the 4-chain with the reversal.
        assert_eq!(count(4, AxiomSystem::Orthoposet, true), 1);
    }
}

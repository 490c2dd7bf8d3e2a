//! Sectional families derived from the other operations when none is given.

use crate::structure::{FinStructure, SectionDir, Sectionals};

/// `x^p = x*p`, defined everywhere.
pub fn upper_from_star(s: &FinStructure) -> Option<Sectionals> {
    let n = s.size();
    s.star_table()?;
    let maps = (0..n).map(|p| (0..n).map(|x| Some(s.s(x, p))).collect()).collect();
    Some(Sectionals { dir: SectionDir::Upper, maps })
}

/// `x^p = x' v p` on `[p, 1]`.
pub fn upper_from_comp(s: &FinStructure) -> Option<Sectionals> {
    let n = s.size();
    s.comp_table()?;
    if !s.is_lattice() {
        return None;
    }
    let maps = (0..n)
        .map(|p| (0..n).map(|x| s.leq(p, x).then(|| s.jn(s.c(x), p))).collect())
        .collect();
    Some(Sectionals { dir: SectionDir::Upper, maps })
}

/// `x^p = x' ^ p` on `[0, p]`.
pub fn lower_from_comp(s: &FinStructure) -> Option<Sectionals> {
    let n = s.size();
    s.comp_table()?;
    if !s.is_lattice() {
        return None;
    }
    let maps = (0..n)
        .map(|p| (0..n).map(|x| s.leq(x, p).then(|| s.mt(s.c(x), p))).collect())
        .collect();
    Some(Sectionals { dir: SectionDir::Lower, maps })
}

/// The sectional family in force for `dir`: explicit if present, otherwise
/// derived from `*` (upper only) or from the complementation.
pub fn effective_sectionals(s: &FinStructure, dir: SectionDir) -> Option<Sectionals> {
    if let Some(sec) = s.sectionals() {
        if sec.dir == dir {
            return Some(sec.clone());
        }
    }
    match dir {
        SectionDir::Upper => upper_from_star(s).or_else(|| upper_from_comp(s)),
        SectionDir::Lower => lower_from_comp(s),
    }
}

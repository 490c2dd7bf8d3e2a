use crate::axioms::AxiomSystem;
use crate::order::FinPoset;

/// Column-local consequences of a system's clauses, given that `x*y = 1`
/// exactly when `x ≤ y`. Everything not listed is left to the final check.
#[derive(Debug, Clone, Copy, Default)]
pub(super) struct Profile {
    /// `L(U(x,y) ∪ {x*y}) = L(y)`.
    cone: bool,
    /// `(x∨y) ∧ (x*y) = y`.
    lattice_absorb: bool,
    /// `y ≤ x*y`.
    above: bool,
    /// `L(x, x*y) ⊆ L(y)`.
    relative: bool,
    /// `L(x,z) ⊆ L(y)` implies `z ≤ x*y`.
    relative_max: bool,
    /// `L(U(x,y) ∪ {z}) = L(y)` implies `z ≤ x*y`.
    sectional_max: bool,
    /// `y ≤ x` implies `x ≤ (x*y)*y`.
    s2: bool,
    /// `x ≤ (x*y)*y`.
    s2_strong: bool,
    /// `x ≤ x'` implies `x'*y ≤ x*y`.
    antitone: bool,
}

impl Profile {
    pub(super) fn for_system(sys: AxiomSystem) -> Profile {
        let p = Profile::default();
        match sys {
            AxiomSystem::Hilbert => Profile { above: true, s2_strong: true, antitone: true, ..p },
            AxiomSystem::Oia => Profile { above: true, ..p },
            AxiomSystem::SkewHilbert => Profile { cone: true, s2: true, antitone: true, ..p },
            AxiomSystem::StrongSkewHilbert => Profile { cone: true, s2_strong: true, antitone: true, ..p },
            AxiomSystem::LatticeSkewHilbert | AxiomSystem::GomlAsSha => {
                Profile { lattice_absorb: true, s2_strong: true, antitone: true, ..p }
            }
            AxiomSystem::SectionallyPcPoset => Profile { cone: true, sectional_max: true, ..p },
            AxiomSystem::StronglySectionallyPcPoset => {
                Profile { cone: true, sectional_max: true, s2_strong: true, ..p }
            }
            AxiomSystem::RelativelyPcPoset => Profile { relative: true, relative_max: true, ..p },
            AxiomSystem::SectionallyPcLattice => Profile { lattice_absorb: true, ..p },
            _ => p,
        }
    }
}

fn cell_ok(p: &FinPoset, x: usize, y: usize, v: usize, pr: Profile) -> bool {
    if pr.cone && p.lower(p.upper2(x, y).with(v)) != p.down(y) {
        return false;
    }
    if pr.lattice_absorb && p.join(x, y).and_then(|j| p.meet(j, v)) != Some(y) {
        return false;
    }
    if pr.above && !p.leq(y, v) {
        return false;
    }
    if pr.relative && !p.lower2(x, v).is_subset(p.down(y)) {
        return false;
    }
    let n = p.size();
    if pr.relative_max && (0..n).any(|z| p.lower2(x, z).is_subset(p.down(y)) && !p.leq(z, v)) {
        return false;
    }
    let cone_xy = p.upper2(x, y);
    if pr.sectional_max && (0..n).any(|z| p.lower(cone_xy.with(z)) == p.down(y) && !p.leq(z, v)) {
        return false;
    }
    true
}

fn column_ok(p: &FinPoset, y: usize, col: &[usize], pr: Profile) -> bool {
    let n = p.size();
    (0..n).all(|x| {
        let back = col[col[x]];
        (!pr.s2_strong || p.leq(x, back)) && (!pr.s2 || !p.leq(y, x) || p.leq(x, back))
    })
}

/// Every admissible column `y`, as the vector of values `x*y`.
pub(super) fn column_candidates(p: &FinPoset, y: usize, pr: Profile) -> Vec<Vec<usize>> {
    let n = p.size();
    let top = p.top().expect("poset with top");
    let cells: Vec<Vec<usize>> = (0..n)
        .map(|x| {
            if p.leq(x, y) {
                vec![top]
            } else {
                (0..n).filter(|&v| v != top && cell_ok(p, x, y, v, pr)).collect()
            }
        })
        .collect();
    let mut out = Vec::new();
    let mut col = Vec::with_capacity(n);
    fill(p, y, &cells, pr, &mut col, &mut out);
    out
}

fn fill(p: &FinPoset, y: usize, cells: &[Vec<usize>], pr: Profile, col: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    let x = col.len();
    if x == cells.len() {
        if column_ok(p, y, col, pr) {
            out.push(col.clone());
        }
        return;
    }
    for &v in &cells[x] {
        let fits = !pr.antitone
            || (0..x).all(|w| (!p.leq(w, x) || p.leq(v, col[w])) && (!p.leq(x, w) || p.leq(col[w], v)));
        if fits {
            col.push(v);
            fill(p, y, cells, pr, col, out);
            col.pop();
        }
    }
}

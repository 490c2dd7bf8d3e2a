//! Membership of finite structures in the axiom systems of the workbench.
//!
//! Each system is a list of prerequisites (components and order shape)
//! followed by clauses. A clause is a predicate over a tuple of elements and
//! holds when it is true for every tuple. Tuples are scanned in lexicographic
//! order of carrier indices and the first failure becomes the witness.

mod clauses;
mod sections;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::structure::{FinStructure, SectionDir, Sectionals};
use crate::verdict::Verdict;

pub(crate) use clauses::long_identity_by;
pub use clauses::sectional_pseudocomplement;
pub use sections::{effective_sectionals, lower_from_comp, upper_from_comp, upper_from_star};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum AxiomSystem {
    Hilbert,
    SkewHilbert,
    StrongSkewHilbert,
    LatticeSkewHilbert,
    SectionallyPcPoset,
    StronglySectionallyPcPoset,
    RelativelyPcPoset,
    SectionallyPcLattice,
    Orthoposet,
    BooleanPoset,
    Oia,
    OmJoinSemilattice,
    SectionalOml,
    Goml,
    Psb,
    StrongPsb,
    LatticeSai,
    GomlAsSha,
}

impl AxiomSystem {
    pub const ALL: [AxiomSystem; 18] = [
        AxiomSystem::Hilbert,
        AxiomSystem::SkewHilbert,
        AxiomSystem::StrongSkewHilbert,
        AxiomSystem::LatticeSkewHilbert,
        AxiomSystem::SectionallyPcPoset,
        AxiomSystem::StronglySectionallyPcPoset,
        AxiomSystem::RelativelyPcPoset,
        AxiomSystem::SectionallyPcLattice,
        AxiomSystem::Orthoposet,
        AxiomSystem::BooleanPoset,
        AxiomSystem::Oia,
        AxiomSystem::OmJoinSemilattice,
        AxiomSystem::SectionalOml,
        AxiomSystem::Goml,
        AxiomSystem::Psb,
        AxiomSystem::StrongPsb,
        AxiomSystem::LatticeSai,
        AxiomSystem::GomlAsSha,
    ];

    /// Command-line name.
    pub fn name(self) -> &'static str {
        match self {
            AxiomSystem::Hilbert => "hilbert",
            AxiomSystem::SkewHilbert => "skew-hilbert",
            AxiomSystem::StrongSkewHilbert => "strong-skew-hilbert",
            AxiomSystem::LatticeSkewHilbert => "lattice-skew-hilbert",
            AxiomSystem::SectionallyPcPoset => "sectionally-pc-poset",
            AxiomSystem::StronglySectionallyPcPoset => "strongly-sectionally-pc-poset",
            AxiomSystem::RelativelyPcPoset => "relatively-pc-poset",
            AxiomSystem::SectionallyPcLattice => "sectionally-pc-lattice",
            AxiomSystem::Orthoposet => "orthoposet",
            AxiomSystem::BooleanPoset => "boolean-poset",
            AxiomSystem::Oia => "oia",
            AxiomSystem::OmJoinSemilattice => "om-join-semilattice",
            AxiomSystem::SectionalOml => "sectional-oml",
            AxiomSystem::Goml => "goml",
            AxiomSystem::Psb => "psb",
            AxiomSystem::StrongPsb => "strong-psb",
            AxiomSystem::LatticeSai => "lattice-sai",
            AxiomSystem::GomlAsSha => "goml-as-sha",
        }
    }

    /// Upper-case tag as used in reports.
    pub fn tag(self) -> String {
        self.name().replace('-', "_").to_uppercase()
    }

    /// Whether the system is stated over a `*` table.
    pub fn uses_star(self) -> bool {
        !matches!(
            self,
            AxiomSystem::Orthoposet
                | AxiomSystem::BooleanPoset
                | AxiomSystem::OmJoinSemilattice
                | AxiomSystem::SectionalOml
                | AxiomSystem::Goml
                | AxiomSystem::Psb
                | AxiomSystem::StrongPsb
                | AxiomSystem::LatticeSai
        )
    }

    pub fn clauses(self) -> &'static [Clause] {
        clauses::clauses(self)
    }

    fn prereqs(self) -> &'static [Prereq] {
        use Prereq::*;
        match self {
            AxiomSystem::Hilbert
            | AxiomSystem::SkewHilbert
            | AxiomSystem::StrongSkewHilbert
            | AxiomSystem::SectionallyPcPoset
            | AxiomSystem::StronglySectionallyPcPoset
            | AxiomSystem::RelativelyPcPoset
            | AxiomSystem::Oia => &[Star],
            AxiomSystem::LatticeSkewHilbert | AxiomSystem::SectionallyPcLattice | AxiomSystem::GomlAsSha => {
                &[Star, Lattice]
            }
            AxiomSystem::Orthoposet | AxiomSystem::BooleanPoset => &[Zero, Comp],
            AxiomSystem::OmJoinSemilattice => &[UpperSections, JoinSemilattice],
            AxiomSystem::SectionalOml | AxiomSystem::Goml => &[Zero, LowerSections, Lattice],
            AxiomSystem::Psb | AxiomSystem::StrongPsb => &[UpperSections],
            AxiomSystem::LatticeSai => &[Zero, UpperSections, Lattice],
        }
    }
}

impl fmt::Display for AxiomSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AxiomSystem {
    type Err = Error;

    fn from_str(s: &str) -> Result<AxiomSystem> {
        let key = s.trim().to_lowercase().replace('_', "-");
        AxiomSystem::ALL
            .into_iter()
            .find(|a| a.name() == key)
            .ok_or_else(|| Error::Invalid(format!("unknown axiom system `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Prereq {
    Star,
    Comp,
    Zero,
    UpperSections,
    LowerSections,
    Lattice,
    JoinSemilattice,
}

/// Evaluation context: the structure plus the sectional family in force.
pub struct Ctx<'a> {
    pub s: &'a FinStructure,
    pub sec: Option<Sectionals>,
}

impl<'a> Ctx<'a> {
    #[inline]
    pub fn st(&self, x: usize, y: usize) -> usize {
        self.s.s(x, y)
    }

    #[inline]
    pub fn one(&self) -> usize {
        self.s.one()
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.s.leq(x, y)
    }

    /// `x^p`; only called where the prerequisites guarantee definedness.
    #[inline]
    pub fn sp(&self, p: usize, x: usize) -> Option<usize> {
        self.sec.as_ref().and_then(|s| s.at(p, x))
    }

    pub fn in_section(&self, p: usize, x: usize) -> bool {
        match self.sec.as_ref().map(|s| s.dir) {
            Some(SectionDir::Upper) => self.leq(p, x),
            Some(SectionDir::Lower) => self.leq(x, p),
            None => false,
        }
    }
}

/// A universally quantified predicate of fixed arity.
pub struct Clause {
    pub name: &'static str,
    pub arity: usize,
    pub holds: fn(&Ctx, &[usize]) -> bool,
}

impl fmt::Debug for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.name, self.arity)
    }
}

/// Odometer over `n^k` tuples in lexicographic order.
pub(crate) fn for_each_tuple(n: usize, k: usize, mut f: impl FnMut(&[usize]) -> bool) -> bool {
    let mut t = vec![0usize; k];
    loop {
        if !f(&t) {
            return false;
        }
        let mut i = k;
        loop {
            if i == 0 {
                return true;
            }
            i -= 1;
            t[i] += 1;
            if t[i] < n {
                break;
            }
            t[i] = 0;
        }
    }
}

fn first_violation(ctx: &Ctx, c: &Clause) -> Option<Vec<usize>> {
    let mut found = None;
    for_each_tuple(ctx.s.size(), c.arity, |t| {
        if (c.holds)(ctx, t) {
            true
        } else {
            found = Some(t.to_vec());
            false
        }
    });
    found
}

fn context(s: &FinStructure, sys: AxiomSystem) -> Result<Result<Ctx<'_>, Verdict>> {
    let v = s.validate();
    if !v.pass {
        return Ok(Err(v));
    }
    let mut sec = None;
    for p in sys.prereqs() {
        match p {
            Prereq::Star => s.require_star()?,
            Prereq::Comp => {
                s.comp_table().ok_or(Error::MissingComponent("comp"))?;
            }
            Prereq::Zero => {
                s.zero().ok_or(Error::MissingComponent("zero"))?;
            }
            Prereq::UpperSections => {
                sec = Some(effective_sectionals(s, SectionDir::Upper).ok_or(Error::MissingComponent("sectionals"))?);
            }
            Prereq::LowerSections => {
                sec = Some(effective_sectionals(s, SectionDir::Lower).ok_or(Error::MissingComponent("sectionals"))?);
            }
            Prereq::Lattice => {
                let v = s.poset().is_lattice();
                if !v.pass {
                    return Ok(Err(Verdict::fail("lattice", v.witness, "the order is not a lattice")));
                }
            }
            Prereq::JoinSemilattice => {
                let n = s.size();
                for x in 0..n {
                    for y in 0..n {
                        if s.join(x, y).is_none() {
                            return Ok(Err(Verdict::fail("join", vec![x, y], "pair has no join")));
                        }
                    }
                }
            }
        }
    }
    Ok(Ok(Ctx { s, sec }))
}

/// Check every clause; the first violated clause and its first tuple are the witness.
pub fn check(s: &FinStructure, sys: AxiomSystem) -> Result<Verdict> {
    let ctx = match context(s, sys)? {
        Ok(c) => c,
        Err(v) => return Ok(v),
    };
    for c in sys.clauses() {
        if let Some(w) = first_violation(&ctx, c) {
            debug_assert!(!(c.holds)(&ctx, &w), "witness re-evaluation");
            return Ok(Verdict::fail(c.name, w, format!("{} fails clause {}", sys.tag(), c.name)));
        }
    }
    Ok(Verdict::pass(format!("{} holds", sys.tag())))
}

/// Re-evaluate a named clause at a tuple. `None` if the clause is unknown.
pub fn clause_holds(s: &FinStructure, sys: AxiomSystem, clause: &str, tuple: &[usize]) -> Result<Option<bool>> {
    let ctx = match context(s, sys)? {
        Ok(c) => c,
        Err(v) => return Ok((v.clause.as_deref() == Some(clause)).then_some(false)),
    };
    Ok(sys
        .clauses()
        .iter()
        .find(|c| c.name == clause && c.arity == tuple.len())
        .map(|c| (c.holds)(&ctx, tuple)))
}

/// Every failing `(clause, tuple)` pair, in check order.
pub fn violations(s: &FinStructure, sys: AxiomSystem) -> Result<Vec<(&'static str, Vec<usize>)>> {
    let ctx = match context(s, sys)? {
        Ok(c) => c,
        Err(_) => return Err(Error::Precondition(format!("{} prerequisites fail", sys.tag()))),
    };
    let mut out = Vec::new();
    for c in sys.clauses() {
        for_each_tuple(s.size(), c.arity, |t| {
            if !(c.holds)(&ctx, t) {
                out.push((c.name, t.to_vec()));
            }
            true
        });
    }
    Ok(out)
}

pub fn holds(s: &FinStructure, sys: AxiomSystem) -> bool {
    matches!(check(s, sys), Ok(v) if v.pass)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub passed: Vec<AxiomSystem>,
    pub failed: Vec<(AxiomSystem, Verdict)>,
    /// Systems whose required component the structure lacks.
    pub not_applicable: Vec<(AxiomSystem, String)>,
}

impl Classification {
    pub fn contains(&self, sys: AxiomSystem) -> bool {
        self.passed.contains(&sys)
    }
}

pub fn classify(s: &FinStructure) -> Classification {
    let mut c = Classification { passed: vec![], failed: vec![], not_applicable: vec![] };
    for sys in AxiomSystem::ALL {
        match check(s, sys) {
            Ok(v) if v.pass => c.passed.push(sys),
            Ok(v) => c.failed.push((sys, v)),
            Err(e) => c.not_applicable.push((sys, e.to_string())),
        }
    }
    c
}

/// The identities every skew Hilbert algebra satisfies: `1*x = x`,
/// `x <= y*x`, `x*1 = 1`, and `1` is the top.
pub fn derived_facts(s: &FinStructure) -> Result<Verdict> {
    if !check(s, AxiomSystem::SkewHilbert)?.pass {
        return Err(Error::Precondition("structure is not a skew Hilbert algebra".into()));
    }
    let n = s.size();
    let one = s.one();
    if s.poset().top() != Some(one) {
        return Ok(Verdict::fail("top", vec![one], "1 is not the top element"));
    }
    for x in 0..n {
        if s.s(one, x) != x {
            return Ok(Verdict::fail("1*x=x", vec![x], "1*x differs from x"));
        }
    }
    for x in 0..n {
        for y in 0..n {
            if !s.leq(x, s.s(y, x)) {
                return Ok(Verdict::fail("x<=y*x", vec![x, y], "x is not below y*x"));
            }
        }
    }
    for x in 0..n {
        if s.s(x, one) != one {
            return Ok(Verdict::fail("x*1=1", vec![x], "x*1 differs from 1"));
        }
    }
    Ok(Verdict::pass("1*x=x, x<=y*x, x*1=1 and 1 is the top"))
}

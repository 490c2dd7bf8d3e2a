use super::{AxiomSystem, Clause, Ctx};
use crate::bitset::ElemSet;
use crate::order::FinPoset;

macro_rules! clause {
    ($name:expr, $arity:expr, |$c:ident, $t:ident| $body:expr) => {
        Clause { name: $name, arity: $arity, holds: |$c: &Ctx, $t: &[usize]| $body }
    };
}

/// Greatest `x` with `L(U(a,b), x) = L(b)`, if there is one.
pub fn sectional_pseudocomplement(p: &FinPoset, a: usize, b: usize) -> Option<usize> {
    let lu = p.lower(p.upper2(a, b));
    let cands = ElemSet::from_iter((0..p.size()).filter(|&x| lu.intersect(p.down(x)) == p.down(b)));
    p.greatest(cands)
}

fn s4(c: &Ctx, x: usize, y: usize) -> bool {
    let p = c.s.poset();
    p.lower(p.upper2(x, y).with(c.st(x, y))) == p.down(y)
}

fn imp(a: bool, b: impl FnOnce() -> bool) -> bool {
    !a || b()
}

/// Meet inside `[p, 1]`.
fn meet_above(c: &Ctx, p: usize, x: usize, y: usize) -> Option<usize> {
    let po = c.s.poset();
    po.greatest(po.lower2(x, y).intersect(po.up(p)))
}

fn sec(c: &Ctx, p: usize, x: usize) -> usize {
    c.sp(p, x).expect("sectional map defined on its section")
}

const S1: Clause = clause!("S1", 2, |c, t| c.leq(t[0], t[1]) == (c.st(t[0], t[1]) == c.one()));
const S2: Clause = clause!("S2", 2, |c, t| {
    let (x, y) = (t[0], t[1]);
    imp(c.st(y, x) == c.one(), || c.st(x, c.st(c.st(x, y), y)) == c.one())
});
const S2P: Clause = clause!("S2'", 2, |c, t| {
    let (x, y) = (t[0], t[1]);
    c.st(x, c.st(c.st(x, y), y)) == c.one()
});
const S3: Clause = clause!("S3", 3, |c, t| {
    let (x, y, z) = (t[0], t[1], t[2]);
    imp(c.st(x, y) == c.one(), || c.st(c.st(y, z), c.st(x, z)) == c.one())
});
const S4: Clause = clause!("S4", 2, |c, t| s4(c, t[0], t[1]));

const L1: Clause = clause!("L1", 2, |c, t| c.st(t[0], c.s.jn(t[0], t[1])) == c.one());
const L2: Clause = clause!("L2", 2, |c, t| {
    let (x, y) = (t[0], t[1]);
    c.st(x, c.st(c.st(x, y), y)) == c.one()
});
const L3: Clause = clause!("L3", 3, |c, t| {
    let (x, y, z) = (t[0], t[1], t[2]);
    c.st(c.st(c.s.jn(x, y), z), c.st(x, z)) == c.one()
});
const L4: Clause = clause!("L4", 2, |c, t| {
    let (x, y) = (t[0], t[1]);
    c.s.mt(c.s.jn(x, y), c.st(x, y)) == y
});

const H1: Clause = clause!("H1", 1, |c, t| c.st(t[0], t[0]) == c.one());
const H2: Clause = clause!("H2", 2, |c, t| {
    let (x, y) = (t[0], t[1]);
    imp(c.st(x, y) == c.one() && c.st(y, x) == c.one(), || x == y)
});
const H3: Clause = clause!("H3", 3, |c, t| {
    let (x, y, z) = (t[0], t[1], t[2]);
    imp(c.st(x, y) == c.one() && c.st(y, z) == c.one(), || c.st(x, z) == c.one())
});
const H4: Clause = clause!("H4", 2, |c, t| c.st(t[0], c.st(t[1], t[0])) == c.one());
const H5: Clause = clause!("H5", 3, |c, t| {
    let (x, y, z) = (t[0], t[1], t[2]);
    c.st(c.st(x, c.st(y, z)), c.st(c.st(x, y), c.st(x, z))) == c.one()
});

const P1: Clause = clause!("P1", 1, |c, t| c.st(t[0], t[0]) == c.one() && c.st(t[0], c.one()) == c.one());
const P5: Clause = clause!("P5", 3, |c, t| {
    let (x, y, z) = (t[0], t[1], t[2]);
    let p = c.s.poset();
    imp(p.lower(p.upper2(x, y).with(z)) == p.down(y), || c.st(z, c.st(x, y)) == c.one())
});
const P2: Clause = Clause { name: "P2", ..H2 };
const P3: Clause = Clause { name: "P3", ..H3 };
const P4: Clause = Clause { name: "P4", ..S4 };
const VI: Clause = clause!("vi", 2, |c, t| c.leq(t[0], c.st(c.st(t[0], t[1]), t[1])));

const RPC1: Clause = clause!("RPC1", 2, |c, t| {
    let (x, y) = (t[0], t[1]);
    let p = c.s.poset();
    p.lower2(x, c.st(x, y)).is_subset(p.down(y))
});
const RPC2: Clause = clause!("RPC2", 3, |c, t| {
    let (x, y, z) = (t[0], t[1], t[2]);
    let p = c.s.poset();
    imp(p.lower2(x, z).is_subset(p.down(y)), || c.leq(z, c.st(x, y)))
});

const SPL1: Clause = clause!("SPL1", 3, |c, t| {
    let (x, y, z) = (t[0], t[1], t[2]);
    let s = c.s;
    c.leq(s.jn(z, y), c.st(x, s.mt(s.jn(x, y), s.jn(z, y))))
});
const SPL2: Clause = Clause { name: "SPL2", ..L4 };

const ANTITONE: Clause = clause!("antitone", 2, |c, t| imp(c.leq(t[0], t[1]), || c.leq(c.s.c(t[1]), c.s.c(t[0]))));
const INVOLUTION: Clause = clause!("involution", 1, |c, t| c.s.c(c.s.c(t[0])) == t[0]);
const COMPLEMENT: Clause = clause!("complement", 1, |c, t| {
    let x = t[0];
    let p = c.s.poset();
    let xc = c.s.c(x);
    p.lower2(x, xc) == ElemSet::singleton(c.s.zero().unwrap()) && p.upper2(x, xc) == ElemSet::singleton(c.one())
});
const LU: Clause = clause!("LU", 3, |c, t| {
    let (x, y, z) = (t[0], t[1], t[2]);
    let p = c.s.poset();
    let lhs = p.upper(p.lower2(x, y).with(z));
    let rhs = p.upper(p.lower(p.upper2(x, z).union(p.upper2(y, z))));
    lhs == rhs
});

const ORD: Clause = clause!("ord", 2, |c, t| c.leq(t[0], t[1]) == (c.st(t[0], t[1]) == c.one()));
const O1: Clause = clause!("O1", 1, |c, t| c.st(t[0], t[0]) == c.one());
const O2: Clause = clause!("O2", 2, |c, t| c.st(t[0], c.st(t[1], t[0])) == c.one());
const O3: Clause = clause!("O3", 2, |c, t| c.st(c.st(t[0], t[1]), t[0]) == t[0]);
const O4: Clause = clause!("O4", 2, |c, t| {
    let (x, y) = (t[0], t[1]);
    c.st(c.st(x, y), y) == c.st(c.st(y, x), x)
});
const O5: Clause = clause!("O5", 3, |c, t| {
    let (x, y, z) = (t[0], t[1], t[2]);
    c.st(c.st(c.st(c.st(x, y), y), z), c.st(x, z)) == c.one()
});
const O6: Clause = clause!("O6", 3, |c, t| long_identity(c, t[0], t[1], t[2]));

/// `(((((((((xy)y)z)z)z)x)x)z)x)x = (((xy)y)z)z`, evaluated exactly as bracketed.
fn long_identity(c: &Ctx, x: usize, y: usize, z: usize) -> bool {
    long_identity_by(|a, b| c.st(a, b), x, y, z)
}

pub(crate) fn long_identity_by(m: impl Fn(usize, usize) -> usize, x: usize, y: usize, z: usize) -> bool {
    let rhs = m(m(m(m(x, y), y), z), z);
    let mut l = rhs;
    for v in [z, x, x, z, x, x] {
        l = m(l, v);
    }
    l == rhs
}

// Sections [p, 1] of a join-semilattice; tuples are (p, x, y).
const OJ_MEET: Clause = clause!("section-meet", 3, |c, t| {
    let (p, x, y) = (t[0], t[1], t[2]);
    imp(c.leq(p, x) && c.leq(p, y), || meet_above(c, p, x, y).is_some())
});
const OJ_ANTITONE: Clause = clause!("antitone", 3, |c, t| {
    let (p, x, y) = (t[0], t[1], t[2]);
    imp(c.leq(p, x) && c.leq(x, y), || c.leq(sec(c, p, y), sec(c, p, x)))
});
const OJ_INVOLUTION: Clause = clause!("involution", 2, |c, t| {
    let (p, x) = (t[0], t[1]);
    imp(c.leq(p, x), || sec(c, p, sec(c, p, x)) == x)
});
const OJ_COMPLEMENT: Clause = clause!("complement", 2, |c, t| {
    let (p, x) = (t[0], t[1]);
    imp(c.leq(p, x), || {
        let xp = sec(c, p, x);
        c.s.join(x, xp) == Some(c.one()) && meet_above(c, p, x, xp) == Some(p)
    })
});
const OJ_OML: Clause = clause!("orthomodular", 3, |c, t| {
    let (p, x, y) = (t[0], t[1], t[2]);
    imp(c.leq(p, x) && c.leq(x, y), || {
        let m = meet_above(c, p, y, sec(c, p, x)).unwrap();
        c.s.join(x, m) == Some(y)
    })
});

// Sections [0, p] of a lattice.
const SO_ANTITONE: Clause = clause!("antitone", 3, |c, t| {
    let (p, x, y) = (t[0], t[1], t[2]);
    imp(c.leq(x, y) && c.leq(y, p), || c.leq(sec(c, p, y), sec(c, p, x)))
});
const SO_INVOLUTION: Clause = clause!("involution", 2, |c, t| {
    let (p, x) = (t[0], t[1]);
    imp(c.leq(x, p), || sec(c, p, sec(c, p, x)) == x)
});
const SO_COMPLEMENT: Clause = clause!("complement", 2, |c, t| {
    let (p, x) = (t[0], t[1]);
    imp(c.leq(x, p), || {
        let xp = sec(c, p, x);
        c.s.jn(x, xp) == p && Some(c.s.mt(x, xp)) == c.s.zero()
    })
});
const SO_OML: Clause = clause!("orthomodular", 3, |c, t| {
    let (p, x, y) = (t[0], t[1], t[2]);
    imp(c.leq(x, y) && c.leq(y, p), || c.s.jn(x, c.s.mt(y, sec(c, p, x))) == y)
});
const GOML_ID: Clause = clause!("goml", 3, |c, t| {
    let (x, a, b) = (t[0], t[1], t[2]);
    let s = c.s;
    let xa = s.mt(x, a);
    sec(c, a, xa) == s.mt(sec(c, s.jn(a, b), xa), a)
});

const BP1: Clause = clause!("BP1", 3, |c, t| {
    let (p, x, y) = (t[0], t[1], t[2]);
    imp(c.leq(p, x) && c.leq(x, y), || c.leq(sec(c, p, y), sec(c, p, x)))
});
const BP2: Clause = clause!("BP2", 2, |c, t| {
    let (p, x) = (t[0], t[1]);
    imp(c.leq(p, x), || c.leq(x, sec(c, p, sec(c, p, x))))
});
const BP3: Clause = clause!("BP3", 2, |c, t| {
    let (p, x) = (t[0], t[1]);
    let po = c.s.poset();
    imp(c.leq(p, x), || po.lower2(x, sec(c, p, x)) == po.down(p))
});
const TOTAL: Clause = clause!("total", 2, |c, t| c.sp(t[0], t[1]).is_some());
const BP1G: Clause = clause!("BP1", 3, |c, t| {
    let (p, x, y) = (t[0], t[1], t[2]);
    imp(c.leq(x, y), || c.leq(sec(c, p, y), sec(c, p, x)))
});
const BP2G: Clause = clause!("BP2", 2, |c, t| {
    let (p, x) = (t[0], t[1]);
    c.leq(x, sec(c, p, sec(c, p, x)))
});
const SAI_ANTITONE: Clause = Clause { name: "antitone", ..BP1 };

const GI: Clause = clause!("i", 2, |c, t| {
    let (x, y) = (t[0], t[1]);
    c.st(c.st(x, y), y) == c.st(c.st(y, x), x)
});
const GII: Clause = clause!("ii", 3, |c, t| long_identity(c, t[0], t[1], t[2]));
const GIII: Clause = clause!("iii", 3, |c, t| {
    let (x, y, z) = (t[0], t[1], t[2]);
    let s = c.s;
    // a.b = (a v b) * b
    let dot = |a: usize, b: usize| c.st(s.jn(a, b), b);
    c.st(x, y) == s.jn(dot(s.jn(x, y), s.mt(y, z)), y)
});

static HILBERT: [Clause; 5] = [H1, H2, H3, H4, H5];
static SKEW: [Clause; 4] = [S1, S2, S3, S4];
static STRONG: [Clause; 4] = [S1, S2P, S3, S4];
static LATTICE: [Clause; 4] = [L1, L2, L3, L4];
static SPC: [Clause; 6] = [S1, P1, P2, P3, P4, P5];
static SSPC: [Clause; 7] = [S1, P1, P2, P3, P4, P5, VI];
static RPC: [Clause; 2] = [RPC1, RPC2];
static SPCL: [Clause; 2] = [SPL1, SPL2];
static ORTHO: [Clause; 3] = [ANTITONE, INVOLUTION, COMPLEMENT];
static BOOLEAN: [Clause; 4] = [ANTITONE, INVOLUTION, COMPLEMENT, LU];
static OIA: [Clause; 7] = [ORD, O1, O2, O3, O4, O5, O6];
static OMJ: [Clause; 5] = [OJ_MEET, OJ_ANTITONE, OJ_INVOLUTION, OJ_COMPLEMENT, OJ_OML];
static SOML: [Clause; 4] = [SO_ANTITONE, SO_INVOLUTION, SO_COMPLEMENT, SO_OML];
static GOML: [Clause; 5] = [SO_ANTITONE, SO_INVOLUTION, SO_COMPLEMENT, SO_OML, GOML_ID];
static PSB: [Clause; 3] = [BP1, BP2, BP3];
static SPSB: [Clause; 4] = [TOTAL, BP1G, BP2G, BP3];
static SAI: [Clause; 2] = [SAI_ANTITONE, OJ_INVOLUTION];
static GSHA: [Clause; 7] = [L1, L2, L3, L4, GI, GII, GIII];

pub(super) fn clauses(sys: AxiomSystem) -> &'static [Clause] {
    match sys {
        AxiomSystem::Hilbert => &HILBERT,
        AxiomSystem::SkewHilbert => &SKEW,
        AxiomSystem::StrongSkewHilbert => &STRONG,
        AxiomSystem::LatticeSkewHilbert => &LATTICE,
        AxiomSystem::SectionallyPcPoset => &SPC,
        AxiomSystem::StronglySectionallyPcPoset => &SSPC,
        AxiomSystem::RelativelyPcPoset => &RPC,
        AxiomSystem::SectionallyPcLattice => &SPCL,
        AxiomSystem::Orthoposet => &ORTHO,
        AxiomSystem::BooleanPoset => &BOOLEAN,
        AxiomSystem::Oia => &OIA,
        AxiomSystem::OmJoinSemilattice => &OMJ,
        AxiomSystem::SectionalOml => &SOML,
        AxiomSystem::Goml => &GOML,
        AxiomSystem::Psb => &PSB,
        AxiomSystem::StrongPsb => &SPSB,
        AxiomSystem::LatticeSai => &SAI,
        AxiomSystem::GomlAsSha => &GSHA,
    }
}

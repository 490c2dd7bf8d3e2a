use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Expected results for one corpus structure.
#[derive(Debug, Clone, PartialEq, Deserialize, Serialize)]
pub struct Manifest {
    pub description: String,
    #[serde(default, rename = "claim")]
    pub claims: Vec<Claim>,
}

impl Manifest {
    pub fn parse(text: &str) -> Result<Manifest> {
        toml::from_str(text).map_err(|e| Error::Parse { line: 0, reason: format!("manifest: {e}") })
    }
}

/// One expected fact. Labels refer to the structure's carrier; sets and
/// partitions use the `{a,b}` and `{a,b|c}` syntax.
#[derive(Debug, Clone, PartialEq, Deserialize, Serialize)]
pub struct Claim {
    pub note: String,
    #[serde(flatten)]
    pub check: Check,
}

#[derive(Debug, Clone, PartialEq, Deserialize, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Check {
    /// The order induced by `*` equals the stated order.
    InducedOrder,
    /// An axiom system passes, or fails at the given clause and witness.
    Axiom {
        system: String,
        expect: bool,
        #[serde(default)]
        clause: Option<String>,
        #[serde(default)]
        witness: Option<Vec<String>>,
    },
    /// Whether the order is a lattice.
    Lattice { expect: bool },
    /// Whether a partition is a congruence of the given kind.
    Congruence {
        partition: String,
        mode: String,
        expect: bool,
        #[serde(default)]
        clause: Option<String>,
        #[serde(default)]
        witness: Option<Vec<String>>,
    },
    /// Whether a partition appears in the enumerated congruence family.
    CongruenceListed { partition: String, mode: String, expect: bool },
    /// Whether the block of `element` has a greatest element.
    ClassGreatest { partition: String, element: String, expect: bool },
    /// Number of blocks of the quotient by a strong congruence.
    QuotientSize { partition: String, classes: usize },
    Filter {
        set: String,
        filter: String,
        expect: bool,
        #[serde(default)]
        clause: Option<String>,
        #[serde(default)]
        witness: Option<Vec<String>>,
    },
    /// Whether `Φ(set)` relates the pair.
    PhiRelates { set: String, pair: [String; 2], expect: bool },
    /// Whether `Φ([1]Θ) = Θ`.
    PhiRecovers { partition: String, expect: bool },
    Correspondence { expect: bool },
    DeductiveSystem { set: String, expect: bool },
    /// An identity in the term language, checked over all assignments.
    Identity {
        identity: String,
        expect: bool,
        #[serde(default)]
        defined_only: bool,
        #[serde(default)]
        witness: Option<Vec<String>>,
    },
    /// One of the sets `closed`, `dense` or `weakly_dense`.
    SpecialSet { which: String, set: String },
    /// Whether a set is an upper set. A given witness `[x, y]` must have
    /// `x` in the set, `x ≤ y` and `y` outside it.
    UpperSet {
        set: String,
        expect: bool,
        #[serde(default)]
        witness: Option<[String; 2]>,
    },
    /// `a = a'' ∧ (a''*a)` for every element.
    TripletLemma { expect: bool },
    /// Building `*` from the order and complementation, then taking closed
    /// elements, returns the same orthoposet.
    ClosedRoundTrip { expect: bool },
    /// Whether `a*b` is the sectional pseudocomplement of `a` relative to `b`.
    SectionalPc { pair: [String; 2], expect: bool },
}

impl Check {
    pub fn kind(&self) -> &'static str {
        match self {
            Check::InducedOrder => "induced_order",
            Check::Axiom { .. } => "axiom",
            Check::Lattice { .. } => "lattice",
            Check::Congruence { .. } => "congruence",
            Check::CongruenceListed { .. } => "congruence_listed",
            Check::ClassGreatest { .. } => "class_greatest",
            Check::QuotientSize { .. } => "quotient_size",
            Check::Filter { .. } => "filter",
            Check::PhiRelates { .. } => "phi_relates",
            Check::PhiRecovers { .. } => "phi_recovers",
            Check::Correspondence { .. } => "correspondence",
            Check::DeductiveSystem { .. } => "deductive_system",
            Check::Identity { .. } => "identity",
            Check::SpecialSet { .. } => "special_set",
            Check::UpperSet { .. } => "upper_set",
            Check::TripletLemma { .. } => "triplet_lemma",
            Check::ClosedRoundTrip { .. } => "closed_round_trip",
            Check::SectionalPc { .. } => "sectional_pc",
        }
    }
}

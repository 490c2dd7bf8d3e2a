use serde::Serialize;

use crate::axioms::{self, sectional_pseudocomplement};
use crate::codec::{format_set, parse_set};
use crate::congruence::{self, CongMode, FilterKind, Partition};
use crate::constructions;
use crate::error::{Error, Result};
use crate::structure::{induced_order, FinStructure};
use crate::term::{self, IdentityMode};
use crate::verdict::Verdict;
use crate::AxiomSystem;

use super::manifest::{Check, Claim};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClaimOutcome {
    pub kind: String,
    pub note: String,
    pub pass: bool,
    pub detail: String,
}

fn label(s: &FinStructure, l: &str) -> Result<usize> {
    s.carrier().index_of(l).ok_or_else(|| Error::Invalid(format!("unknown label `{l}`")))
}

fn agree(expect: bool, got: bool, what: impl Into<String>) -> (bool, String) {
    let what = what.into();
    (expect == got, format!("expected {expect}, got {got}: {what}"))
}

/// Compares a verdict with an expected outcome and, when given, the failing
/// clause and labelled witness.
fn matches(
    s: &FinStructure,
    what: &str,
    v: &Verdict,
    expect: bool,
    clause: &Option<String>,
    witness: &Option<Vec<String>>,
) -> (bool, String) {
    let got = v.labeled_witness(s.carrier());
    let mut ok = v.pass == expect;
    if let Some(c) = clause {
        ok &= v.clause.as_deref() == Some(c.as_str());
    }
    if let Some(w) = witness {
        ok &= &got == w;
    }
    let detail = match &v.clause {
        Some(c) => format!("{what} fails {c} at ({})", got.join(",")),
        None => format!("{what} holds"),
    };
    (ok, detail)
}

fn evaluate(s: &FinStructure, check: &Check) -> Result<(bool, String)> {
    Ok(match check {
        Check::InducedOrder => {
            let star = s.star_table().ok_or(Error::MissingComponent("star"))?;
            let ind = induced_order(s.carrier().clone(), star, s.one())?;
            agree(true, &ind == s.poset(), "order induced by x*y = 1")
        }
        Check::Axiom { system, expect, clause, witness } => {
            let sys: AxiomSystem = system.parse()?;
            let v = axioms::check(s, sys)?;
            matches(s, sys.name(), &v, *expect, clause, witness)
        }
        Check::Lattice { expect } => agree(*expect, s.poset().is_lattice().pass, "lattice order"),
        Check::Congruence { partition, mode, expect, clause, witness } => {
            let theta = Partition::parse(s.carrier(), partition)?;
            let mode: CongMode = mode.parse()?;
            let v = congruence::is_congruence(s, &theta, mode)?;
            matches(s, &format!("{partition} as {mode} congruence"), &v, *expect, clause, witness)
        }
        Check::CongruenceListed { partition, mode, expect } => {
            let theta = Partition::parse(s.carrier(), partition)?;
            let mode: CongMode = mode.parse()?;
            let list = congruence::enumerate_congruences(s, mode)?;
            agree(*expect, list.contains(&theta), format!("{partition} among {} {mode} congruences", list.len()))
        }
        Check::ClassGreatest { partition, element, expect } => {
            let theta = Partition::parse(s.carrier(), partition)?;
            let x = label(s, element)?;
            let class = theta.class_of(x);
            let g = s.poset().greatest(class);
            agree(*expect, g.is_some(), format!("greatest element of {}", format_set(s.carrier(), class)))
        }
        Check::Filter { set, filter, expect, clause, witness } => {
            let f = parse_set(s.carrier(), set)?;
            let kind: FilterKind = filter.parse()?;
            let v = congruence::is_filter(s, f, kind)?;
            matches(s, &format!("{set} as {kind}"), &v, *expect, clause, witness)
        }
        Check::QuotientSize { partition, classes } => {
            let theta = Partition::parse(s.carrier(), partition)?;
            let q = constructions::quotient(s, &theta)?;
            agree(true, q.size() == *classes, format!("quotient by {partition} has {} classes", q.size()))
        }
        Check::PhiRelates { set, pair, expect } => {
            let f = parse_set(s.carrier(), set)?;
            let (a, b) = (label(s, &pair[0])?, label(s, &pair[1])?);
            agree(*expect, congruence::phi(s, f).contains(a, b), format!("({},{}) in Φ({set})", pair[0], pair[1]))
        }
        Check::PhiRecovers { partition, expect } => {
            let theta = Partition::parse(s.carrier(), partition)?;
            let back = congruence::phi(s, theta.class_of(s.one()));
            agree(*expect, back == theta.relation(), format!("Φ([1]Θ) = Θ for {partition}"))
        }
        Check::Correspondence { expect } => {
            let v = congruence::verify_correspondence(s)?;
            agree(*expect, v.pass, v.detail)
        }
        Check::DeductiveSystem { set, expect } => {
            let d = parse_set(s.carrier(), set)?;
            let r = congruence::is_deductive_system(s, d)?;
            agree(*expect, r.system.pass, format!("{set} as deductive system"))
        }
        Check::Identity { identity, expect, defined_only, witness } => {
            let (l, r) = term::parse_identity(identity)?;
            let mode = if *defined_only { IdentityMode::DefinedOnly } else { IdentityMode::Strict };
            let v = term::holds_identity(s, &l, &r, mode)?;
            matches(s, identity, &v, *expect, &None, witness)
        }
        Check::SpecialSet { which, set } => {
            let want = parse_set(s.carrier(), set)?;
            let sets = constructions::special_subsets(s)?;
            let got = match which.as_str() {
                "closed" => sets.closed,
                "dense" => sets.dense,
                "weakly_dense" => sets.weakly_dense,
                other => return Err(Error::Invalid(format!("unknown special set `{other}`"))),
            };
            agree(true, got == want, format!("{which} = {}", format_set(s.carrier(), got)))
        }
        Check::UpperSet { set, expect, witness } => {
            let m = parse_set(s.carrier(), set)?;
            let first = constructions::upper_set_witness(s.poset(), m);
            let (mut ok, mut detail) = agree(*expect, first.is_none(), format!("{set} is an upper set"));
            if let Some([x, y]) = witness {
                let (x, y) = (label(s, x)?, label(s, y)?);
                let genuine = m.contains(x) && s.leq(x, y) && !m.contains(y);
                ok &= genuine;
                detail.push_str(&format!("; ({},{}) {} a violation", s.label(x), s.label(y), if genuine { "is" } else { "is not" }));
            }
            (ok, detail)
        }
        Check::TripletLemma { expect } => {
            let v = constructions::triplet_lemma(s)?;
            matches(s, "a = a'' ∧ (a''*a)", &v, *expect, &None, &None)
        }
        Check::ClosedRoundTrip { expect } => {
            let comp = s.comp_table().ok_or(Error::MissingComponent("comp"))?;
            let (built, _) = constructions::pst_construct(s.poset(), comp)?;
            let back = constructions::closed_elements(&built)?;
            let same = back.poset() == s.poset() && back.comp_table() == s.comp_table();
            agree(*expect, same, "closed elements of the constructed algebra give back the orthoposet")
        }
        Check::SectionalPc { pair, expect } => {
            let (a, b) = (label(s, &pair[0])?, label(s, &pair[1])?);
            let spc = sectional_pseudocomplement(s.poset(), a, b);
            let got = spc.map_or_else(|| "none".to_string(), |x| s.label(x).to_string());
            agree(
                *expect,
                spc == Some(s.s(a, b)),
                format!("sectional pseudocomplement of ({},{}) is {got}, star gives {}", pair[0], pair[1], s.label(s.s(a, b))),
            )
        }
    })
}

/// Runs one claim. Evaluation errors count as failures.
pub fn run_claim(s: &FinStructure, claim: &Claim) -> ClaimOutcome {
    let (pass, detail) = evaluate(s, &claim.check).unwrap_or_else(|e| (false, format!("error: {e}")));
    ClaimOutcome { kind: claim.check.kind().to_string(), note: claim.note.clone(), pass, detail }
}

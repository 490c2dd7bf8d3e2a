use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::axioms::{self, AxiomSystem};
use crate::bitset::ElemSet;
use crate::congruence::lattice_ordered_sha;
use crate::error::{Error, Result};
use crate::structure::FinStructure;
use crate::verdict::Verdict;

use super::eval::{holds_identity, Compiled, IdentityMode};
use super::{coneinf, join, meet, star, var, Term};

pub const BUILTIN_NAMES: [&str; 15] =
    ["p", "q", "T1m", "t", "t1", "t2", "t3", "t4", "T", "T1", "T2", "T3", "w1", "w2", "m"];

fn v(n: &str) -> Term {
    var(n)
}

fn small_t(x: Term, y: Term, z: Term, u: Term) -> Term {
    meet(meet(join(x, y.clone()), star(z, y)), u)
}

fn big_t(x: Term, y: Term, z: Term, u: Term) -> Term {
    coneinf(x, y.clone(), vec![star(z, y), u])
}

fn pair_terms(f: fn(Term, Term, Term, Term) -> Term) -> (Term, Term) {
    (f(v("x1"), v("x2"), v("y1"), v("y2")), f(v("x3"), v("x4"), v("y3"), v("y4")))
}

/// Named terms. `T1m` is the partial Maltsev term, `w1`/`w2` the
/// weak-regularity pair and `m` the lattice majority term.
pub fn builtin(name: &str) -> Option<Term> {
    let (x, y, z) = (v("x"), v("y"), v("z"));
    Some(match name {
        "p" => meet(star(star(x.clone(), y.clone()), z.clone()), star(star(z, y), x)),
        "q" => meet(meet(join(x.clone(), z.clone()), star(star(x.clone(), y.clone()), z)), star(y, x)),
        "T1m" => coneinf(x.clone(), z.clone(), vec![star(star(x.clone(), y.clone()), z), star(y, x)]),
        "t" => small_t(x, y, z, v("u")),
        "T" => big_t(x, y, z, v("u")),
        "t1" | "T1" => Term::One,
        "t2" => {
            let (a, b) = pair_terms(small_t);
            star(join(a, b), join(v("x2"), v("x4")))
        }
        "t3" => {
            let (a, b) = pair_terms(small_t);
            star(meet(a, b), meet(v("x2"), v("x4")))
        }
        "t4" => {
            let (a, b) = pair_terms(small_t);
            star(star(a, b), star(v("x2"), v("x4")))
        }
        "T2" => {
            let (a, b) = pair_terms(big_t);
            star(star(a, b), star(v("x2"), v("x4")))
        }
        "T3" => {
            let (a, b) = pair_terms(big_t);
            star(meet(a, b), meet(v("x2"), v("x4")))
        }
        "w1" => star(x, y),
        "w2" => star(y, x),
        "m" => join(join(meet(x.clone(), y.clone()), meet(y, z.clone())), meet(z, x)),
        _ => return None,
    })
}

fn precondition(s: &FinStructure, sys: AxiomSystem) -> Result<()> {
    let v = axioms::check(s, sys)?;
    if v.pass {
        Ok(())
    } else {
        Err(Error::Precondition(format!("{} fails {}", sys.name(), v.clause.as_deref().unwrap_or_default())))
    }
}

fn lattice_sha(s: &FinStructure) -> Result<()> {
    s.require_star()?;
    if lattice_ordered_sha(s) {
        Ok(())
    } else {
        Err(Error::Precondition("not a skew Hilbert algebra on a lattice order".into()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MaltsevTerm {
    P,
    Q,
    /// The partial term `U(x,z) ∧ ((x*y)*z) ∧ (y*x)`.
    T1,
}

impl MaltsevTerm {
    pub const ALL: [MaltsevTerm; 3] = [MaltsevTerm::P, MaltsevTerm::Q, MaltsevTerm::T1];

    pub fn name(self) -> &'static str {
        match self {
            MaltsevTerm::P => "p",
            MaltsevTerm::Q => "q",
            MaltsevTerm::T1 => "T1m",
        }
    }
}

impl fmt::Display for MaltsevTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MaltsevTerm {
    type Err = Error;

    fn from_str(s: &str) -> Result<MaltsevTerm> {
        MaltsevTerm::ALL
            .into_iter()
            .find(|m| m.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::Invalid(format!("unknown Maltsev term `{s}`")))
    }
}

/// `m(x,x,z) = z` and `m(x,z,z) = x`, strictly. Witnesses are `(x, z)`.
pub fn maltsev_check(s: &FinStructure, which: MaltsevTerm) -> Result<Verdict> {
    match which {
        MaltsevTerm::P | MaltsevTerm::Q => lattice_sha(s)?,
        MaltsevTerm::T1 => precondition(s, AxiomSystem::StrongSkewHilbert)?,
    }
    let t = builtin(which.name()).expect("built-in term");
    let name = which.name();
    let left = t.substitute(&[("y", var("x"))]);
    let v = holds_identity(s, &left, &var("z"), IdentityMode::Strict)?;
    if !v.pass {
        return Ok(Verdict { clause: Some(format!("{name}(x,x,z)=z")), ..v });
    }
    let right = t.substitute(&[("y", var("z"))]);
    let v = holds_identity(s, &right, &var("x"), IdentityMode::Strict)?;
    if !v.pass {
        return Ok(Verdict { clause: Some(format!("{name}(x,z,z)=x")), ..v });
    }
    Ok(Verdict::pass(format!("{name} is a Maltsev term")))
}

/// `m(x,x,y) = m(x,y,x) = m(y,x,x) = x` for the lattice median.
pub fn majority_check(s: &FinStructure) -> Result<Verdict> {
    if !s.is_lattice() {
        return Err(Error::MissingComponent("lattice"));
    }
    let m = builtin("m").expect("built-in term");
    let (x, y) = (var("x"), var("y"));
    let patterns = [
        ("m(x,x,y)=x", [x.clone(), x.clone(), y.clone()]),
        ("m(x,y,x)=x", [x.clone(), y.clone(), x.clone()]),
        ("m(y,x,x)=x", [y, x.clone(), x.clone()]),
    ];
    for (pattern, [a, b, c]) in patterns {
        let lhs = m.substitute(&[("x", a), ("y", b), ("z", c)]);
        let v = holds_identity(s, &lhs, &x, IdentityMode::Strict)?;
        if !v.pass {
            return Ok(Verdict { clause: Some(pattern.to_string()), ..v });
        }
    }
    Ok(Verdict::pass("m is a majority term"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IdealFamily {
    /// `t1` to `t4`, on lattice orders.
    Lattice,
    /// `T1` to `T3`, partial, on strong skew Hilbert algebras.
    Partial,
}

impl IdealFamily {
    pub fn names(self) -> &'static [&'static str] {
        match self {
            IdealFamily::Lattice => &["t1", "t2", "t3", "t4"],
            IdealFamily::Partial => &["T1", "T2", "T3"],
        }
    }
}

impl FromStr for IdealFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<IdealFamily> {
        match s.trim() {
            "t" | "lattice" => Ok(IdealFamily::Lattice),
            "T" | "partial" => Ok(IdealFamily::Partial),
            other => Err(Error::Invalid(format!("unknown ideal-term family `{other}`"))),
        }
    }
}

fn family_precondition(s: &FinStructure, family: IdealFamily) -> Result<()> {
    match family {
        IdealFamily::Lattice => {
            s.require_star()?;
            if !s.is_lattice() {
                return Err(Error::MissingComponent("lattice"));
            }
            Ok(())
        }
        IdealFamily::Partial => precondition(s, AxiomSystem::StrongSkewHilbert),
    }
}

/// Witnesses are `(x1, x2, x3, x4, y1, y2, y3, y4)`.
fn witness(a: (usize, usize, usize, usize), b: (usize, usize, usize, usize)) -> Vec<usize> {
    vec![a.0, a.1, b.0, b.1, a.2, a.3, b.2, b.3]
}

/// Closure of `f` under the family with parameters over the carrier and
/// ideal variables over `f`. The inner terms `t(x1,x2,y1,y2)` are tabulated
/// per `x2`, so the scan is over value pairs rather than all eight variables.
pub fn ideal_closure_check(s: &FinStructure, f: ElemSet, family: IdealFamily) -> Result<Verdict> {
    family_precondition(s, family)?;
    if !f.contains(s.one()) {
        return Ok(Verdict::fail(family.names()[0], vec![], "1 is not in the set"));
    }
    let n = s.size();
    let p = s.poset();
    // values[x2] maps each inner value to one (x1, x2, y1, y2) producing it.
    let mut values: Vec<BTreeMap<usize, (usize, usize, usize, usize)>> = vec![BTreeMap::new(); n];
    for x2 in 0..n {
        for x1 in 0..n {
            for y1 in f.iter() {
                for y2 in f.iter() {
                    let val = match family {
                        IdealFamily::Lattice => Some(s.mt(s.mt(s.jn(x1, x2), s.s(y1, x2)), y2)),
                        IdealFamily::Partial => {
                            let mut set = p.upper2(x1, x2);
                            set.insert(s.s(y1, x2));
                            set.insert(y2);
                            p.greatest(p.lower(set))
                        }
                    };
                    match val {
                        Some(v) => {
                            values[x2].entry(v).or_insert((x1, x2, y1, y2));
                        }
                        None => {
                            let w = (x1, x2, y1, y2);
                            return Ok(Verdict::fail("T2", witness(w, w), "T(x1,x2,y1,y2) is undefined"));
                        }
                    }
                }
            }
        }
    }
    type Outer = fn(&FinStructure, usize, usize, usize, usize) -> Option<usize>;
    let steps: Vec<(&str, Outer)> = match family {
        IdealFamily::Lattice => vec![
            ("t2", |s, a, b, x2, x4| Some(s.s(s.jn(a, b), s.jn(x2, x4)))),
            ("t3", |s, a, b, x2, x4| Some(s.s(s.mt(a, b), s.mt(x2, x4)))),
            ("t4", |s, a, b, x2, x4| Some(s.s(s.s(a, b), s.s(x2, x4)))),
        ],
        IdealFamily::Partial => vec![
            ("T2", |s, a, b, x2, x4| Some(s.s(s.s(a, b), s.s(x2, x4)))),
            ("T3", |s, a, b, x2, x4| Some(s.s(s.meet(a, b)?, s.meet(x2, x4)?))),
        ],
    };
    for (name, outer) in steps {
        for x2 in 0..n {
            for x4 in 0..n {
                for (&a, &wa) in &values[x2] {
                    for (&b, &wb) in &values[x4] {
                        match outer(s, a, b, x2, x4) {
                            Some(r) if f.contains(r) => {}
                            Some(_) => return Ok(Verdict::fail(name, witness(wa, wb), "value leaves the set")),
                            None => return Ok(Verdict::fail(name, witness(wa, wb), "value is undefined")),
                        }
                    }
                }
            }
        }
    }
    Ok(Verdict::pass("closed under the ideal terms"))
}

/// Reference version of [`ideal_closure_check`]: evaluates each built-in
/// term over every assignment. Exponential in the number of variables.
pub fn ideal_closure_oracle(s: &FinStructure, f: ElemSet, family: IdealFamily) -> Result<Verdict> {
    family_precondition(s, family)?;
    let n = s.size();
    let ideals: Vec<usize> = f.iter().collect();
    let xs = ["x1", "x2", "x3", "x4"];
    let ys = ["y1", "y2", "y3", "y4"];
    let vars: Vec<String> = xs.iter().chain(ys.iter()).map(|v| v.to_string()).collect();
    for name in family.names() {
        let c = Compiled::new(&builtin(name).expect("built-in term"), &vars)?;
        let mut found = None;
        axioms::for_each_tuple(n, 4, |xv| {
            if ideals.is_empty() {
                let env: Vec<usize> = xv.iter().copied().chain([0; 4]).collect();
                found = Some(env);
                return false;
            }
            axioms::for_each_tuple(ideals.len(), 4, |yi| {
                let env: Vec<usize> = xv.iter().copied().chain(yi.iter().map(|&i| ideals[i])).collect();
                match c.eval(s, &env) {
                    Some(r) if f.contains(r) => true,
                    _ => {
                        found = Some(env);
                        false
                    }
                }
            })
        });
        if let Some(env) = found {
            let env = if ideals.is_empty() { vec![] } else { env };
            return Ok(Verdict::fail(*name, env, "value leaves the set or is undefined"));
        }
    }
    Ok(Verdict::pass("closed under the ideal terms"))
}

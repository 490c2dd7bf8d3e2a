use rayon::prelude::*;

use crate::axioms::for_each_tuple;
use crate::error::{Error, Result};
use crate::structure::FinStructure;
use crate::verdict::Verdict;

use super::Term;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Node {
    Var(usize),
    One,
    Star(Box<Node>, Box<Node>),
    Join(Box<Node>, Box<Node>),
    Meet(Box<Node>, Box<Node>),
    ConeInf(Box<Node>, Box<Node>, Vec<Node>),
}

/// A term with its variables resolved to positions in a fixed list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Compiled {
    root: Node,
    uses_star: bool,
}

impl Compiled {
    pub fn new(t: &Term, vars: &[String]) -> Result<Compiled> {
        Ok(Compiled { root: compile(t, vars)?, uses_star: t.uses_star() })
    }

    /// `None` when a join, meet or cone infimum does not exist. The caller
    /// must have checked that the structure has `*` if the term uses it.
    pub fn eval(&self, s: &FinStructure, env: &[usize]) -> Option<usize> {
        go(&self.root, s, env)
    }

    fn check(&self, s: &FinStructure) -> Result<()> {
        if self.uses_star {
            s.require_star()?;
        }
        Ok(())
    }
}

fn compile(t: &Term, vars: &[String]) -> Result<Node> {
    let c = |t: &Term| compile(t, vars).map(Box::new);
    Ok(match t {
        Term::Var(v) => Node::Var(vars.iter().position(|x| x == v).ok_or_else(|| Error::UnboundVariable(v.clone()))?),
        Term::One => Node::One,
        Term::Star(a, b) => Node::Star(c(a)?, c(b)?),
        Term::Join(a, b) => Node::Join(c(a)?, c(b)?),
        Term::Meet(a, b) => Node::Meet(c(a)?, c(b)?),
        Term::ConeInf(a, b, rest) => {
            Node::ConeInf(c(a)?, c(b)?, rest.iter().map(|t| compile(t, vars)).collect::<Result<_>>()?)
        }
    })
}

fn go(n: &Node, s: &FinStructure, env: &[usize]) -> Option<usize> {
    match n {
        Node::Var(i) => Some(env[*i]),
        Node::One => Some(s.one()),
        Node::Star(a, b) => Some(s.s(go(a, s, env)?, go(b, s, env)?)),
        Node::Join(a, b) => s.join(go(a, s, env)?, go(b, s, env)?),
        Node::Meet(a, b) => s.meet(go(a, s, env)?, go(b, s, env)?),
        Node::ConeInf(a, b, rest) => {
            let p = s.poset();
            let mut set = p.upper2(go(a, s, env)?, go(b, s, env)?);
            for t in rest {
                set.insert(go(t, s, env)?);
            }
            p.greatest(p.lower(set))
        }
    }
}

/// Evaluates `t` under a named assignment.
pub fn eval(s: &FinStructure, t: &Term, env: &[(&str, usize)]) -> Result<Option<usize>> {
    let vars: Vec<String> = env.iter().map(|(k, _)| k.to_string()).collect();
    let c = Compiled::new(t, &vars)?;
    c.check(s)?;
    if let Some(&(k, v)) = env.iter().find(|(_, v)| *v >= s.size()) {
        return Err(Error::Invalid(format!("value {v} of `{k}` is out of range")));
    }
    let vals: Vec<usize> = env.iter().map(|(_, v)| *v).collect();
    Ok(c.eval(s, &vals))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IdentityMode {
    /// Both sides defined and equal everywhere.
    Strict,
    /// Equal wherever both sides are defined.
    DefinedOnly,
}

fn describe(s: &FinStructure, v: Option<usize>) -> String {
    v.map_or_else(|| "undefined".to_string(), |x| s.label(x).to_string())
}

/// Scans all assignments of the sorted variable list of both sides. The
/// witness is the lexicographically first failing assignment, in that order.
pub fn holds_identity(s: &FinStructure, lhs: &Term, rhs: &Term, mode: IdentityMode) -> Result<Verdict> {
    let mut vars = lhs.vars();
    vars.extend(rhs.vars());
    vars.sort();
    vars.dedup();
    let (l, r) = (Compiled::new(lhs, &vars)?, Compiled::new(rhs, &vars)?);
    l.check(s)?;
    r.check(s)?;
    let n = s.size();
    let k = vars.len();
    let ok = |env: &[usize]| {
        let (a, b) = (l.eval(s, env), r.eval(s, env));
        match mode {
            IdentityMode::Strict => a.is_some() && a == b,
            IdentityMode::DefinedOnly => a.is_none() || b.is_none() || a == b,
        }
    };
    let first_bad = |head: Option<usize>| {
        let mut found = None;
        let rest = if head.is_some() { k - 1 } else { k };
        for_each_tuple(n, rest, |t| {
            let env: Vec<usize> = head.into_iter().chain(t.iter().copied()).collect();
            if ok(&env) {
                true
            } else {
                found = Some(env);
                false
            }
        });
        found
    };
    let found = if k >= 4 {
        (0..n).into_par_iter().map(|h| first_bad(Some(h))).collect::<Vec<_>>().into_iter().flatten().next()
    } else {
        first_bad(None)
    };
    Ok(match found {
        None => Verdict::pass(format!("{lhs} = {rhs}")),
        Some(env) => {
            let detail = format!("lhs is {}, rhs is {}", describe(s, l.eval(s, &env)), describe(s, r.eval(s, &env)));
            Verdict::fail("identity", env, detail)
        }
    })
}

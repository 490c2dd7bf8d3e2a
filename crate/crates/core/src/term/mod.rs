//! Terms over `*`, `∨`, `∧`, `1` and the cone infimum, written as prefix
//! s-expressions:
//!
//! ```text
//! (meet (join x y) (star x y))
//! (coneinf x y (star z y) u)
//! ```
//!
//! `join` and `meet` accept two or more arguments and fold to the left.
//! An identity is two terms separated by `=`.

mod builtin;
mod eval;

use std::fmt;

use crate::error::{Error, Result};

pub use builtin::{
    builtin, ideal_closure_check, ideal_closure_oracle, majority_check, maltsev_check, IdealFamily, MaltsevTerm,
    BUILTIN_NAMES,
};
pub use eval::{eval, holds_identity, Compiled, IdentityMode};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Var(String),
    One,
    Star(Box<Term>, Box<Term>),
    Join(Box<Term>, Box<Term>),
    Meet(Box<Term>, Box<Term>),
    /// Greatest lower bound of `U(x, y)` together with the extra conjuncts.
    ConeInf(Box<Term>, Box<Term>, Vec<Term>),
}

pub fn var(name: &str) -> Term {
    Term::Var(name.to_string())
}

pub fn star(a: Term, b: Term) -> Term {
    Term::Star(Box::new(a), Box::new(b))
}

pub fn join(a: Term, b: Term) -> Term {
    Term::Join(Box::new(a), Box::new(b))
}

pub fn meet(a: Term, b: Term) -> Term {
    Term::Meet(Box::new(a), Box::new(b))
}

pub fn coneinf(a: Term, b: Term, rest: Vec<Term>) -> Term {
    Term::ConeInf(Box::new(a), Box::new(b), rest)
}

impl Term {
    /// Variable names, sorted and without repeats.
    pub fn vars(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out.sort();
        out.dedup();
        out
    }

    fn collect_vars(&self, out: &mut Vec<String>) {
        match self {
            Term::Var(v) => out.push(v.clone()),
            Term::One => {}
            Term::Star(a, b) | Term::Join(a, b) | Term::Meet(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            Term::ConeInf(a, b, rest) => {
                a.collect_vars(out);
                b.collect_vars(out);
                rest.iter().for_each(|t| t.collect_vars(out));
            }
        }
    }

    pub fn uses_star(&self) -> bool {
        match self {
            Term::Var(_) | Term::One => false,
            Term::Star(..) => true,
            Term::Join(a, b) | Term::Meet(a, b) => a.uses_star() || b.uses_star(),
            Term::ConeInf(a, b, rest) => a.uses_star() || b.uses_star() || rest.iter().any(Term::uses_star),
        }
    }

    /// Replaces variables by terms; unmapped variables stay.
    pub fn substitute(&self, map: &[(&str, Term)]) -> Term {
        let go = |t: &Term| Box::new(t.substitute(map));
        match self {
            Term::Var(v) => map.iter().find(|(k, _)| k == v).map_or_else(|| self.clone(), |(_, t)| t.clone()),
            Term::One => Term::One,
            Term::Star(a, b) => Term::Star(go(a), go(b)),
            Term::Join(a, b) => Term::Join(go(a), go(b)),
            Term::Meet(a, b) => Term::Meet(go(a), go(b)),
            Term::ConeInf(a, b, rest) => Term::ConeInf(go(a), go(b), rest.iter().map(|t| t.substitute(map)).collect()),
        }
    }

    pub fn parse(text: &str) -> Result<Term> {
        let toks = tokenize(text)?;
        let mut pos = 0;
        let t = parse_at(&toks, &mut pos)?;
        if pos != toks.len() {
            return Err(perr(format!("unexpected `{}` after the term", toks[pos])));
        }
        Ok(t)
    }
}

/// Parses `lhs = rhs`.
pub fn parse_identity(text: &str) -> Result<(Term, Term)> {
    let mut parts = text.split('=');
    match (parts.next(), parts.next(), parts.next()) {
        (Some(l), Some(r), None) => Ok((Term::parse(l)?, Term::parse(r)?)),
        _ => Err(perr("an identity has the form `lhs = rhs`")),
    }
}

fn perr(reason: impl Into<String>) -> Error {
    Error::Parse { line: 1, reason: reason.into() }
}

fn tokenize(text: &str) -> Result<Vec<String>> {
    let mut out = Vec::new();
    let mut cur = String::new();
    for ch in text.chars() {
        match ch {
            '(' | ')' => {
                if !cur.is_empty() {
                    out.push(std::mem::take(&mut cur));
                }
                out.push(ch.to_string());
            }
            c if c.is_whitespace() => {
                if !cur.is_empty() {
                    out.push(std::mem::take(&mut cur));
                }
            }
            c if c.is_alphanumeric() || c == '_' || c == '\'' => cur.push(c),
            c => return Err(perr(format!("unexpected character `{c}`"))),
        }
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    if out.is_empty() {
        return Err(perr("empty term"));
    }
    Ok(out)
}

fn parse_at(toks: &[String], pos: &mut usize) -> Result<Term> {
    let tok = toks.get(*pos).ok_or_else(|| perr("unexpected end of term"))?;
    *pos += 1;
    match tok.as_str() {
        ")" => Err(perr("unexpected `)`")),
        "(" => {
            let head = toks.get(*pos).ok_or_else(|| perr("unexpected end of term"))?.clone();
            *pos += 1;
            let mut args = Vec::new();
            loop {
                match toks.get(*pos).map(String::as_str) {
                    None => return Err(perr(format!("unclosed `({head}`"))),
                    Some(")") => {
                        *pos += 1;
                        break;
                    }
                    Some(_) => args.push(parse_at(toks, pos)?),
                }
            }
            build(&head, args)
        }
        "1" => Ok(Term::One),
        name if is_operator(name) => Err(perr(format!("operator `{name}` outside parentheses"))),
        name => Ok(Term::Var(name.to_string())),
    }
}

fn is_operator(name: &str) -> bool {
    matches!(name, "star" | "join" | "meet" | "coneinf")
}

fn build(head: &str, args: Vec<Term>) -> Result<Term> {
    let arity = |lo: usize, exact: bool| {
        if args.len() < lo || (exact && args.len() != lo) {
            Err(perr(format!("`{head}` takes {}{lo} arguments, got {}", if exact { "" } else { "at least " }, args.len())))
        } else {
            Ok(())
        }
    };
    match head {
        "star" => {
            arity(2, true)?;
            let mut it = args.into_iter();
            Ok(star(it.next().unwrap(), it.next().unwrap()))
        }
        "join" | "meet" => {
            arity(2, false)?;
            let f = if head == "join" { join } else { meet };
            let mut it = args.into_iter();
            let first = it.next().unwrap();
            Ok(it.fold(first, f))
        }
        "coneinf" => {
            arity(2, false)?;
            let mut it = args.into_iter();
            let (a, b) = (it.next().unwrap(), it.next().unwrap());
            Ok(coneinf(a, b, it.collect()))
        }
        other => Err(perr(format!("unknown operator `{other}`"))),
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => f.write_str(v),
            Term::One => f.write_str("1"),
            Term::Star(a, b) => write!(f, "(star {a} {b})"),
            Term::Join(a, b) => write!(f, "(join {a} {b})"),
            Term::Meet(a, b) => write!(f, "(meet {a} {b})"),
            Term::ConeInf(a, b, rest) => {
                write!(f, "(coneinf {a} {b}")?;
                for t in rest {
                    write!(f, " {t}")?;
                }
                f.write_str(")")
            }
        }
    }
}

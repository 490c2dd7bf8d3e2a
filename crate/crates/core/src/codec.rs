//! Line-oriented algebra files and their JSON mirror.
//!
//! ```text
//! # two-element chain
//! elements: 0 1
//! top: 1
//! bottom: 0
//! order: 0<1
//! star:
//! 0: 1 1
//! 1: 0 1
//! comp: 0:1 1:0
//! ```
//!
//! `join:` and `meet:` blocks have the same shape as `star:`. The order may be
//! omitted when a star table is present; it is then induced from the table.

use serde::{Deserialize, Serialize};

use crate::bitset::ElemSet;
use crate::error::{Error, Result};
use crate::order::{Carrier, FinPoset};
use crate::structure::{induced_order, FinStructure, Table};

const RESERVED: &[char] = &[':', '<', ',', '|', '{', '}', '(', ')', '#', '[', ']'];

fn perr(line: usize, reason: impl Into<String>) -> Error {
    Error::Parse { line, reason: reason.into() }
}

#[derive(Default)]
struct Raw {
    elements: Option<(usize, Vec<String>)>,
    top: Option<(usize, String)>,
    bottom: Option<(usize, String)>,
    order: Option<(usize, Vec<(String, String)>)>,
    tables: [Option<(usize, Vec<(usize, String, Vec<String>)>)>; 3],
    comp: Option<(usize, Vec<(String, String)>)>,
}

const TABLES: [&str; 3] = ["star", "join", "meet"];

pub fn parse(text: &str) -> Result<FinStructure> {
    let mut raw = Raw::default();
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
        .collect();
    let mut i = 0;
    while i < lines.len() {
        let (ln, line) = lines[i];
        i += 1;
        let (key, rest) = line.split_once(':').ok_or_else(|| perr(ln, format!("expected `key:` in `{line}`")))?;
        let key = key.trim();
        let rest = rest.trim();
        let dup = |present: bool| if present { Err(perr(ln, format!("`{key}` given twice"))) } else { Ok(()) };
        match key {
            "elements" => {
                dup(raw.elements.is_some())?;
                let labels: Vec<String> = rest.split_whitespace().map(String::from).collect();
                if labels.is_empty() {
                    return Err(perr(ln, "empty elements line"));
                }
                if let Some(l) = labels.iter().find(|l| l.contains(RESERVED)) {
                    return Err(perr(ln, format!("label `{l}` contains a reserved character")));
                }
                raw.elements = Some((ln, labels));
            }
            "top" | "bottom" => {
                let slot = if key == "top" { &mut raw.top } else { &mut raw.bottom };
                if slot.is_some() {
                    return Err(perr(ln, format!("`{key}` given twice")));
                }
                let mut toks = rest.split_whitespace();
                let (Some(l), None) = (toks.next(), toks.next()) else {
                    return Err(perr(ln, format!("`{key}` takes exactly one label")));
                };
                *slot = Some((ln, l.to_string()));
            }
            "order" => {
                dup(raw.order.is_some())?;
                let mut pairs = Vec::new();
                for tok in rest.split_whitespace() {
                    let parts: Vec<&str> = tok.split('<').collect();
                    if parts.len() < 2 || parts.iter().any(|p| p.is_empty()) {
                        return Err(perr(ln, format!("bad order item `{tok}`")));
                    }
                    for w in parts.windows(2) {
                        pairs.push((w[0].to_string(), w[1].to_string()));
                    }
                }
                raw.order = Some((ln, pairs));
            }
            "comp" => {
                dup(raw.comp.is_some())?;
                let toks: Vec<&str> = rest.split_whitespace().collect();
                let mut pairs = Vec::new();
                let mut k = 0;
                while k < toks.len() {
                    let t = toks[k];
                    let (x, v) = match t.split_once(':') {
                        Some((x, "")) => {
                            k += 1;
                            let v = toks.get(k).ok_or_else(|| perr(ln, format!("`{x}:` lacks a value")))?;
                            (x, *v)
                        }
                        Some((x, v)) => (x, v),
                        None => return Err(perr(ln, format!("bad comp item `{t}`"))),
                    };
                    pairs.push((x.to_string(), v.to_string()));
                    k += 1;
                }
                raw.comp = Some((ln, pairs));
            }
            k if TABLES.contains(&k) => {
                let slot = TABLES.iter().position(|t| *t == k).unwrap();
                dup(raw.tables[slot].is_some())?;
                if !rest.is_empty() {
                    return Err(perr(ln, format!("rows of `{key}` start on the next line")));
                }
                let (_, labels) = raw
                    .elements
                    .as_ref()
                    .ok_or_else(|| perr(ln, format!("`{key}` before `elements`")))?;
                let mut rows = Vec::new();
                while rows.len() < labels.len() && i < lines.len() {
                    let (rl, row) = lines[i];
                    let Some((x, vals)) = row.split_once(':') else { break };
                    let x = x.trim();
                    if !labels.iter().any(|l| l == x) {
                        break;
                    }
                    rows.push((rl, x.to_string(), vals.split_whitespace().map(String::from).collect()));
                    i += 1;
                }
                raw.tables[slot] = Some((ln, rows));
            }
            other => return Err(perr(ln, format!("unknown key `{other}`"))),
        }
    }
    build(raw)
}

fn build(raw: Raw) -> Result<FinStructure> {
    let (eln, labels) = raw.elements.ok_or_else(|| perr(0, "missing `elements` line"))?;
    let carrier = Carrier::new(labels).map_err(|e| match e {
        Error::DuplicateLabel(l) => Error::DuplicateLabel(l),
        other => perr(eln, other.to_string()),
    })?;
    let n = carrier.size();
    let idx = |ln: usize, l: &str| carrier.index_of(l).ok_or_else(|| perr(ln, format!("unknown label `{l}`")));
    let (tln, top) = raw.top.ok_or_else(|| perr(0, "missing `top` line"))?;
    let top = idx(tln, &top)?;

    let mut tables: Vec<Option<Table>> = Vec::new();
    for (k, t) in raw.tables.into_iter().enumerate() {
        let Some((hln, rows)) = t else {
            tables.push(None);
            continue;
        };
        let mut table = vec![None; n];
        for (rl, x, vals) in rows {
            let xi = idx(rl, &x)?;
            if table[xi].is_some() {
                return Err(perr(rl, format!("row `{x}` of `{}` given twice", TABLES[k])));
            }
            if vals.len() != n {
                return Err(perr(rl, format!("row `{x}` has {} entries, expected {n}", vals.len())));
            }
            table[xi] = Some(vals.iter().map(|v| idx(rl, v)).collect::<Result<Vec<_>>>()?);
        }
        if let Some(x) = table.iter().position(|r| r.is_none()) {
            let _ = hln;
            return Err(Error::MissingTable(format!("{} row `{}`", TABLES[k], carrier.label(x))));
        }
        tables.push(Some(table.into_iter().map(Option::unwrap).collect()));
    }
    let [star, join, meet]: [Option<Table>; 3] = tables.try_into().expect("three tables");

    let poset = match (&raw.order, &star) {
        (Some((oln, pairs)), _) => {
            let pairs = pairs
                .iter()
                .map(|(a, b)| Ok((idx(*oln, a)?, idx(*oln, b)?)))
                .collect::<Result<Vec<_>>>()?;
            FinPoset::from_pairs(carrier.clone(), &pairs)?
        }
        (None, Some(star)) => induced_order(carrier.clone(), star, top)?,
        (None, None) => return Err(Error::MissingTable("order or star".into())),
    };
    if poset.top() != Some(top) {
        return Err(perr(tln, format!("`{}` is not the top of the order", carrier.label(top))));
    }
    if let Some((bln, b)) = &raw.bottom {
        let b = idx(*bln, b)?;
        if poset.bottom() != Some(b) {
            return Err(perr(*bln, format!("`{}` is not the bottom of the order", carrier.label(b))));
        }
    }
    let mut s = FinStructure::from_poset(poset)?;
    if let Some(t) = star {
        s = s.with_star(t);
    }
    if join.is_some() || meet.is_some() {
        s = s.with_lattice_tables(join, meet);
    }
    if let Some((cln, pairs)) = raw.comp {
        let mut comp = vec![None; n];
        for (x, v) in &pairs {
            let xi = idx(cln, x)?;
            if comp[xi].replace(idx(cln, v)?).is_some() {
                return Err(perr(cln, format!("comp of `{x}` given twice")));
            }
        }
        if let Some(x) = comp.iter().position(Option::is_none) {
            return Err(Error::MissingTable(format!("comp entry `{}`", carrier.label(x))));
        }
        s = s.with_comp(comp.into_iter().map(Option::unwrap).collect());
    }
    Ok(s)
}

fn emit_table(out: &mut String, name: &str, s: &FinStructure, t: &Table) {
    out.push_str(name);
    out.push_str(":\n");
    for (x, row) in t.iter().enumerate() {
        let vals: Vec<&str> = row.iter().map(|&v| s.label(v)).collect();
        out.push_str(&format!("{}: {}\n", s.label(x), vals.join(" ")));
    }
}

/// Normalized text form; the order is written as its covers.
pub fn emit(s: &FinStructure) -> String {
    let mut out = String::new();
    out.push_str(&format!("elements: {}\n", s.carrier().labels().join(" ")));
    out.push_str(&format!("top: {}\n", s.label(s.one())));
    if let Some(z) = s.zero() {
        out.push_str(&format!("bottom: {}\n", s.label(z)));
    }
    let covers: Vec<String> =
        s.poset().covers().iter().map(|&(x, y)| format!("{}<{}", s.label(x), s.label(y))).collect();
    if covers.is_empty() {
        out.push_str("order:\n");
    } else {
        out.push_str(&format!("order: {}\n", covers.join(" ")));
    }
    if let Some(t) = s.star_table() {
        emit_table(&mut out, "star", s, t);
    }
    if let Some(c) = s.comp_table() {
        let items: Vec<String> = c.iter().enumerate().map(|(x, &v)| format!("{}:{}", s.label(x), s.label(v))).collect();
        out.push_str(&format!("comp: {}\n", items.join(" ")));
    }
    if let Some(t) = s.explicit_join() {
        emit_table(&mut out, "join", s, t);
    }
    if let Some(t) = s.explicit_meet() {
        emit_table(&mut out, "meet", s, t);
    }
    out
}

/// JSON mirror of the text format, with labels in every position.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraDoc {
    pub elements: Vec<String>,
    pub top: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bottom: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<Vec<[String; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub star: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub comp: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub join: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub meet: Option<Vec<Vec<String>>>,
}

impl AlgebraDoc {
    pub fn from_structure(s: &FinStructure) -> AlgebraDoc {
        let l = |x: usize| s.label(x).to_string();
        let tab = |t: &Table| t.iter().map(|r| r.iter().map(|&v| l(v)).collect()).collect();
        AlgebraDoc {
            elements: s.carrier().labels().to_vec(),
            top: l(s.one()),
            bottom: s.zero().map(l),
            order: Some(s.poset().covers().into_iter().map(|(x, y)| [l(x), l(y)]).collect()),
            star: s.star_table().map(tab),
            comp: s.comp_table().map(|c| c.iter().map(|&v| l(v)).collect()),
            join: s.explicit_join().map(tab),
            meet: s.explicit_meet().map(tab),
        }
    }

    /// Rebuild through the text parser so both inputs share one validation path.
    pub fn to_structure(&self) -> Result<FinStructure> {
        let mut t = format!("elements: {}\ntop: {}\n", self.elements.join(" "), self.top);
        if let Some(b) = &self.bottom {
            t.push_str(&format!("bottom: {b}\n"));
        }
        if let Some(o) = &self.order {
            let items: Vec<String> = o.iter().map(|[a, b]| format!("{a}<{b}")).collect();
            t.push_str(&format!("order: {}\n", items.join(" ")));
        }
        for (name, tab) in [("star", &self.star), ("join", &self.join), ("meet", &self.meet)] {
            if let Some(rows) = tab {
                if rows.len() != self.elements.len() {
                    return Err(Error::MissingTable(format!("{name} rows")));
                }
                t.push_str(&format!("{name}:\n"));
                for (x, r) in self.elements.iter().zip(rows) {
                    t.push_str(&format!("{x}: {}\n", r.join(" ")));
                }
            }
        }
        if let Some(c) = &self.comp {
            if c.len() != self.elements.len() {
                return Err(Error::MissingTable("comp entries".into()));
            }
            let items: Vec<String> = self.elements.iter().zip(c).map(|(x, v)| format!("{x}:{v}")).collect();
            t.push_str(&format!("comp: {}\n", items.join(" ")));
        }
        parse(&t)
    }
}

pub fn to_json(s: &FinStructure) -> String {
    serde_json::to_string_pretty(&AlgebraDoc::from_structure(s)).expect("serializable")
}

pub fn from_json(text: &str) -> Result<FinStructure> {
    let doc: AlgebraDoc = serde_json::from_str(text).map_err(|e| perr(e.line(), e.to_string()))?;
    doc.to_structure()
}

/// Parse either format, by sniffing for a leading `{`.
pub fn parse_any(text: &str) -> Result<FinStructure> {
    if text.trim_start().starts_with('{') {
        from_json(text)
    } else {
        parse(text)
    }
}

/// `{a,b,c}` or a bare comma/space separated list of labels.
pub fn parse_set(carrier: &Carrier, text: &str) -> Result<ElemSet> {
    let inner = text.trim().trim_start_matches('{').trim_end_matches('}');
    let mut out = ElemSet::EMPTY;
    for tok in inner.split([',', ' ']).map(str::trim).filter(|t| !t.is_empty()) {
        let x = carrier.index_of(tok).ok_or_else(|| perr(1, format!("unknown label `{tok}`")))?;
        out.insert(x);
    }
    Ok(out)
}

pub fn format_set(carrier: &Carrier, set: ElemSet) -> String {
    let items: Vec<&str> = set.iter().map(|x| carrier.label(x)).collect();
    format!("{{{}}}", items.join(","))
}

pub fn format_tuple(carrier: &Carrier, xs: &[usize]) -> String {
    let items: Vec<&str> = xs.iter().map(|&x| carrier.label(x)).collect();
    format!("({})", items.join(","))
}

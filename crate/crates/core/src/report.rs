//! Command reports. Every command builds one [`Report`]; the text and JSON
//! renderings are produced from the same value.

use serde::Serialize;

use crate::order::Carrier;
use crate::verdict::Verdict;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Item {
    pub name: String,
    /// `None` for purely informational lines.
    pub pass: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub clause: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub witness: Vec<String>,
    pub detail: String,
}

impl Item {
    pub fn info(name: impl Into<String>, detail: impl Into<String>) -> Item {
        Item { name: name.into(), pass: None, clause: None, witness: Vec::new(), detail: detail.into() }
    }

    pub fn check(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Item {
        Item { pass: Some(pass), ..Item::info(name, detail) }
    }

    pub fn verdict(name: impl Into<String>, v: &Verdict, carrier: &Carrier) -> Item {
        Item {
            name: name.into(),
            pass: Some(v.pass),
            clause: v.clause.clone(),
            witness: v.labeled_witness(carrier),
            detail: v.detail.clone(),
        }
    }

    fn status(&self) -> &'static str {
        match self.pass {
            Some(true) => "PASS",
            Some(false) => "FAIL",
            None => "----",
        }
    }

    /// One text line: status, name, detail, and the failing clause if any.
    pub fn to_line(&self) -> String {
        let mut line = format!("{} {}: {}", self.status(), self.name, self.detail);
        if let Some(c) = &self.clause {
            line.push_str(&format!(" [{c} at ({})]", self.witness.join(",")));
        }
        line
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub command: String,
    pub pass: bool,
    pub items: Vec<Item>,
    /// Verbatim payload such as an algebra file, a DOT graph or a count.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub body: Option<String>,
}

impl Report {
    pub fn new(command: &str) -> Report {
        Report { command: command.to_string(), pass: true, items: Vec::new(), body: None }
    }

    /// Adds an item; a failing item fails the report.
    pub fn push(&mut self, item: Item) {
        if item.pass == Some(false) {
            self.pass = false;
        }
        self.items.push(item);
    }

    pub fn with_body(mut self, body: impl Into<String>) -> Report {
        self.body = Some(body.into());
        self
    }

    pub fn exit_code(&self) -> i32 {
        if self.pass {
            0
        } else {
            1
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for item in &self.items {
            out.push_str(&item.to_line());
            out.push('\n');
        }
        if let Some(b) = &self.body {
            out.push_str(b);
            if !b.ends_with('\n') {
                out.push('\n');
            }
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable report")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn failing_item_fails_report() {
        let mut r = Report::new("x");
        r.push(Item::info("a", "b"));
        assert!(r.pass);
        r.push(Item::check("c", false, "d"));
        assert!(!r.pass);
        assert_eq!(r.exit_code(), 1);
        assert_eq!(r.to_text(), "---- a: b\nFAIL c: d\n");
    }

    #[test]
    fn verdict_line_names_clause() {
        let c = Carrier::new(vec!["p".into(), "q".into()]).unwrap();
        let v = Verdict::fail("S2'", vec![1, 0], "bad");
        assert_eq!(Item::verdict("sys", &v, &c).to_line(), "FAIL sys: bad [S2' at (q,p)]");
    }
}

//! Run reports: one JSON document and an aligned text rendering.

use std::fmt::Write as _;

use serde_json::{json, Map, Value};

pub const SCHEMA_VERSION: u32 = 1;

/// Columns separated by two spaces; numeric columns are right-aligned.
#[derive(Debug, Default)]
pub struct Table {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table { header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn row(&mut self, cells: Vec<String>) {
        debug_assert_eq!(cells.len(), self.header.len());
        self.rows.push(cells);
    }

    pub fn render(&self) -> String {
        let mut width: Vec<usize> = self.header.iter().map(|h| h.chars().count()).collect();
        for r in &self.rows {
            for (w, c) in width.iter_mut().zip(r) {
                *w = (*w).max(c.chars().count());
            }
        }
        let numeric: Vec<bool> = (0..width.len())
            .map(|i| self.rows.iter().all(|r| r[i] == "-" || r[i].parse::<i64>().is_ok()))
            .collect();
        let line = |cells: &[String]| {
            let parts: Vec<String> = cells
                .iter()
                .zip(&width)
                .zip(&numeric)
                .map(|((c, w), num)| if *num { format!("{c:>w$}") } else { format!("{c:<w$}") })
                .collect();
            parts.join("  ").trim_end().to_string()
        };
        let mut out = String::new();
        writeln!(out, "{}", line(&self.header)).unwrap();
        for r in &self.rows {
            writeln!(out, "{}", line(r)).unwrap();
        }
        out
    }
}

pub fn yes(b: bool) -> String {
    if b { "yes" } else { "NO" }.to_string()
}

pub fn verdict(b: bool) -> &'static str {
    if b {
        "PASS"
    } else {
        "FAIL"
    }
}

/// Result of one check family within a command.
#[derive(Debug)]
pub struct Section {
    pub name: &'static str,
    pub pass: bool,
    pub data: Value,
    pub text: String,
}

#[derive(Debug)]
pub struct SpecInfo {
    pub name: String,
    pub family: String,
    pub digest: String,
}

#[derive(Debug)]
pub struct RunReport {
    pub command: &'static str,
    pub spec: SpecInfo,
    pub field: String,
    pub sections: Vec<Section>,
}

impl RunReport {
    pub fn pass(&self) -> bool {
        self.sections.iter().all(|s| s.pass)
    }

    /// Keys are sorted by `serde_json`'s map, so output is stable.
    pub fn to_json(&self) -> Value {
        let mut sections = Map::new();
        for s in &self.sections {
            let mut body = match &s.data {
                Value::Object(m) => m.clone(),
                other => {
                    let mut m = Map::new();
                    m.insert("data".into(), other.clone());
                    m
                }
            };
            body.insert("pass".into(), Value::Bool(s.pass));
            sections.insert(s.name.into(), Value::Object(body));
        }
        json!({
            "schema": SCHEMA_VERSION,
            "tool": "tamehecke",
            "version": env!("CARGO_PKG_VERSION"),
            "command": self.command,
            "spec": { "name": self.spec.name, "family": self.spec.family, "sha256": self.spec.digest },
            "field": self.field,
            "sections": sections,
            "pass": self.pass(),
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(
            out,
            "tamehecke {} {}: spec {} ({}, sha256 {}), field {}",
            env!("CARGO_PKG_VERSION"),
            self.command,
            self.spec.name,
            self.spec.family,
            &self.spec.digest[..12],
            self.field
        )
        .unwrap();
        for s in &self.sections {
            writeln!(out, "\n== {} ==", s.name).unwrap();
            out.push_str(&s.text);
            writeln!(out, "{}: {}", s.name, verdict(s.pass)).unwrap();
        }
        writeln!(out, "\noverall: {}", verdict(self.pass())).unwrap();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_alignment() {
        let mut t = Table::new(&["n", "value", "name"]);
        t.row(vec!["1".into(), "3".into(), "phi".into()]);
        t.row(vec!["10".into(), "12345".into(), "x".into()]);
        assert_eq!(t.render(), " n  value  name\n 1      3  phi\n10  12345  x\n");
    }
}

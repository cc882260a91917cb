//! Report tables rendered as TSV or aligned text.

use std::fmt::Write as _;

use sha2::{Digest, Sha256};
use ultralip::rational::{fmt_rational, Rational};
use ultralip::suite::Check;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Tsv,
    Text,
}

#[derive(Debug, Clone)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(name: &str, columns: &[&str]) -> Self {
        Self { name: name.into(), columns: columns.iter().map(|c| c.to_string()).collect(), rows: Vec::new() }
    }

    pub fn row(&mut self, cells: Vec<String>) {
        self.rows.push(cells);
    }
}

#[derive(Debug, Clone)]
pub struct Output {
    pub command: String,
    pub params: Vec<(String, String)>,
    pub tables: Vec<Table>,
    pub checks: Vec<Check>,
}

pub fn r(x: &Rational) -> String {
    fmt_rational(x)
}

/// First 16 hex digits of the SHA-256 of the input text.
pub fn digest(text: &str) -> String {
    let h = Sha256::digest(text.as_bytes());
    hex::encode(&h[..8])
}

impl Output {
    pub fn new(command: &str) -> Self {
        Self { command: command.into(), params: Vec::new(), tables: Vec::new(), checks: Vec::new() }
    }

    pub fn param(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.params.push((key.into(), value.to_string()));
        self
    }

    pub fn check(&mut self, name: &str, pass: bool, detail: impl Into<String>) {
        self.checks.push(Check::new(name, pass, detail));
    }

    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn render(&self, format: Format) -> String {
        let mut out = format!("# {}", self.command);
        for (k, v) in &self.params {
            let _ = write!(out, " {k}={v}");
        }
        out.push('\n');
        let mut tables = self.tables.clone();
        if !self.checks.is_empty() {
            let mut t = Table::new("verdicts", &["check", "verdict", "detail"]);
            for c in &self.checks {
                t.row(vec![c.name.clone(), if c.pass { "PASS" } else { "FAIL" }.into(), c.detail.clone()]);
            }
            tables.push(t);
        }
        for t in &tables {
            match format {
                Format::Tsv => {
                    let _ = writeln!(out, "## {}", t.name);
                    let _ = writeln!(out, "{}", t.columns.join("\t"));
                    for row in &t.rows {
                        let _ = writeln!(out, "{}", row.join("\t"));
                    }
                }
                Format::Text => {
                    let _ = writeln!(out, "\n{}", t.name);
                    let mut widths: Vec<usize> = t.columns.iter().map(|c| c.chars().count()).collect();
                    for row in &t.rows {
                        for (w, c) in widths.iter_mut().zip(row) {
                            *w = (*w).max(c.chars().count());
                        }
                    }
                    let line = |cells: &[String]| {
                        let mut s = String::from(" ");
                        for (k, (c, w)) in cells.iter().zip(&widths).enumerate() {
                            let pad = w - c.chars().count();
                            s.push(' ');
                            s.push_str(c);
                            if k + 1 < cells.len() {
                                s.push_str(&" ".repeat(pad + 1));
                            }
                        }
                        s
                    };
                    let _ = writeln!(out, "{}", line(&t.columns));
                    for row in &t.rows {
                        let _ = writeln!(out, "{}", line(row));
                    }
                }
            }
        }
        out
    }
}

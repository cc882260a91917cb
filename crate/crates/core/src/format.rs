//! Text formats for spaces and dendrograms.
//!
//! Space file:
//!
//! ```text
//! space 3
//! 0 a b
//! 0 1 1
//! 1 0 1/4
//! 1 1/4 0
//! ```
//!
//! Dendrogram file: a `dend` header followed by a nested form
//! `( h : child child ... )` whose leaves are labels. The first leaf in
//! reading order is the base point and leaves are indexed in reading order.

use std::collections::HashMap;

use crate::dendrogram::{DendNode, Dendrogram};
use crate::error::{Error, Result};
use crate::rational::{parse_rational, Rational};
use crate::space::FiniteUltraSpace;

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

/// Parses a space file. Blank lines and `#` comments are ignored.
pub fn parse_space(text: &str) -> Result<FiniteUltraSpace> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (ln, header) = lines.next().ok_or_else(|| perr(1, "missing `space <n>` header"))?;
    let n: usize = match header.split_whitespace().collect::<Vec<_>>().as_slice() {
        ["space", n] => n.parse().map_err(|_| perr(ln, format!("bad point count `{n}`")))?,
        _ => return Err(perr(ln, "expected `space <n>`")),
    };
    if n == 0 {
        return Err(Error::EmptySpace);
    }
    let (ln, label_line) = lines.next().ok_or_else(|| perr(ln + 1, "missing label line"))?;
    let labels: Vec<String> = label_line.split_whitespace().map(str::to_string).collect();
    if labels.len() != n {
        return Err(perr(ln, format!("expected {n} labels, found {}", labels.len())));
    }
    let mut matrix = Vec::with_capacity(n);
    for row in 0..n {
        let (ln, l) = lines.next().ok_or_else(|| perr(ln + 1 + row, format!("missing matrix row {row}")))?;
        let vals = l
            .split_whitespace()
            .map(|t| parse_rational(t).map_err(|e| perr(ln, e.to_string())))
            .collect::<Result<Vec<Rational>>>()?;
        matrix.push(vals);
    }
    if let Some((ln, _)) = lines.next() {
        return Err(perr(ln, "trailing content after matrix"));
    }
    FiniteUltraSpace::validate(matrix, labels)
}

/// Writes a space file with rationals in lowest terms.
pub fn write_space(space: &FiniteUltraSpace) -> String {
    let mut out = format!("space {}\n{}\n", space.len(), space.labels().join(" "));
    for row in space.matrix() {
        let cells: Vec<String> = row.iter().map(Rational::to_string).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Open,
    Close,
    Colon,
    Word(String),
}

fn tokenize(text: &str) -> Vec<(usize, Tok)> {
    let mut toks = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("");
        let mut word = String::new();
        let flush = |w: &mut String, toks: &mut Vec<(usize, Tok)>| {
            if !w.is_empty() {
                toks.push((i + 1, Tok::Word(std::mem::take(w))));
            }
        };
        for ch in line.chars() {
            match ch {
                '(' | ')' | ':' => {
                    flush(&mut word, &mut toks);
                    toks.push((
                        i + 1,
                        match ch {
                            '(' => Tok::Open,
                            ')' => Tok::Close,
                            _ => Tok::Colon,
                        },
                    ));
                }
                c if c.is_whitespace() => flush(&mut word, &mut toks),
                c => word.push(c),
            }
        }
        flush(&mut word, &mut toks);
    }
    toks
}

struct DendParser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    labels: Vec<String>,
    seen: HashMap<String, usize>,
}

impl DendParser {
    fn line(&self) -> usize {
        self.toks.get(self.pos).or(self.toks.last()).map_or(1, |t| t.0)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|t| t.1.clone());
        self.pos += 1;
        t
    }

    fn node(&mut self) -> Result<DendNode> {
        let line = self.line();
        match self.next() {
            Some(Tok::Word(label)) => {
                if self.seen.contains_key(&label) {
                    return Err(Error::DuplicateLabel(label));
                }
                let idx = self.labels.len();
                self.seen.insert(label.clone(), idx);
                self.labels.push(label);
                Ok(DendNode::Leaf(idx))
            }
            Some(Tok::Open) => {
                let height = match self.next() {
                    Some(Tok::Word(w)) => parse_rational(&w).map_err(|e| perr(line, e.to_string()))?,
                    _ => return Err(perr(line, "expected a height after `(`")),
                };
                if self.next() != Some(Tok::Colon) {
                    return Err(perr(line, "expected `:` after height"));
                }
                let mut children = Vec::new();
                loop {
                    match self.toks.get(self.pos).map(|t| &t.1) {
                        Some(Tok::Close) => {
                            self.pos += 1;
                            break;
                        }
                        Some(_) => children.push(self.node()?),
                        None => return Err(perr(self.line(), "unbalanced `(`")),
                    }
                }
                Ok(DendNode::Internal { height, children })
            }
            _ => Err(perr(line, "expected a label or `(`")),
        }
    }
}

/// Parses a dendrogram file.
pub fn parse_dendrogram(text: &str) -> Result<Dendrogram> {
    let mut toks = tokenize(text);
    match toks.first() {
        Some((_, Tok::Word(w))) if w == "dend" => {
            toks.remove(0);
        }
        _ => return Err(perr(1, "missing `dend` header")),
    }
    let mut p = DendParser { toks, pos: 0, labels: Vec::new(), seen: HashMap::new() };
    let root = p.node()?;
    if p.pos < p.toks.len() {
        return Err(perr(p.line(), "trailing content after tree"));
    }
    Dendrogram::new(root, p.labels)
}

/// Writes a dendrogram in canonical child order, so the base leaf is first.
pub fn write_dendrogram(dend: &Dendrogram) -> String {
    fn emit(n: &DendNode, labels: &[String], out: &mut String) {
        match n {
            DendNode::Leaf(i) => out.push_str(&labels[*i]),
            DendNode::Internal { height, children } => {
                out.push_str(&format!("( {height} :"));
                for c in children {
                    out.push(' ');
                    emit(c, labels, out);
                }
                out.push_str(" )");
            }
        }
    }
    let canon = dend.canonical();
    let mut out = String::from("dend\n");
    emit(canon.root(), canon.labels(), &mut out);
    out.push('\n');
    out
}

/// Reads either format, chosen by the first token.
pub fn parse_any(text: &str) -> Result<FiniteUltraSpace> {
    let first = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty())
        .unwrap_or("");
    if first.starts_with("dend") {
        parse_dendrogram(text)?.to_space()
    } else {
        parse_space(text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::u4;
    use crate::rational::rat;

    #[test]
    fn space_round_trip() {
        let text = write_space(&u4());
        assert_eq!(text, "space 4\n0 a b c\n0 1 1 1\n1 0 1/4 1\n1 1/4 0 1\n1 1 1 0\n");
        assert_eq!(parse_space(&text).unwrap(), u4());
    }

    #[test]
    fn space_parse_normalizes_and_reports() {
        let s = parse_space("# toy\nspace 2\n0 x\n0 2/4\n1/2 0\n").unwrap();
        assert_eq!(s.d(0, 1), &rat(1, 2));
        assert!(matches!(parse_space("space 2\n0 x\n0 1\n"), Err(Error::Parse { line: 4, .. })));
        assert!(matches!(parse_space("space 2\n0 x\n0 1\n2 0\n"), Err(Error::AsymmetricMatrix(0, 1))));
        assert!(matches!(parse_space("spaces 2\n"), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn dendrogram_round_trip() {
        let d = Dendrogram::from_space(&u4()).unwrap();
        let text = write_dendrogram(&d);
        assert_eq!(text, "dend\n( 1 : 0 ( 1/4 : a b ) c )\n");
        let back = parse_dendrogram(&text).unwrap();
        assert_eq!(back.to_space().unwrap(), u4());
        assert_eq!(parse_any(&text).unwrap(), u4());
    }

    #[test]
    fn dendrogram_errors() {
        assert!(parse_dendrogram("( 1 : 0 a )").is_err());
        assert!(parse_dendrogram("dend\n( 1 : 0 a").is_err());
        assert!(parse_dendrogram("dend\n( 1 : 0 0 )").is_err());
        assert!(parse_dendrogram("dend\n( 1 : 0 ( 2 : a b ) )").is_err());
        assert!(parse_dendrogram("dend\n( 1 : 0 a ) b").is_err());
        assert_eq!(parse_dendrogram("dend\nsolo").unwrap().len(), 1);
    }
}

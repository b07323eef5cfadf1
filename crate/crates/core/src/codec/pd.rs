//! PD text: `X(e0,e1,e2,e3)` terms, edge labels positive integers, ports
//! counterclockwise from an under port. Terms are separated by commas
//! and/or whitespace; `#` starts a comment running to the end of the line.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::diagram::{Diagram, DiagramError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PdError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("crossing term at line {line}, column {column} has {arity} labels (expected 4)")]
    Arity { line: usize, column: usize, arity: usize },
    #[error("edge label {label} appears {count} times (expected 2)")]
    LabelMultiplicity { label: u64, count: usize },
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

struct Cursor<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    column: usize,
}

impl Cursor<'_> {
    fn peek(&mut self) -> Option<char> {
        self.chars.peek().copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn skip_separators(&mut self, allow_comma: bool) {
        while let Some(c) = self.peek() {
            if c == '#' {
                while self.peek().is_some_and(|c| c != '\n') {
                    self.bump();
                }
            } else if c.is_whitespace() || (allow_comma && c == ',') {
                self.bump();
            } else {
                break;
            }
        }
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, PdError> {
        Err(PdError::Syntax { line: self.line, column: self.column, message: message.into() })
    }

    fn expect(&mut self, want: char) -> Result<(), PdError> {
        self.skip_separators(false);
        match self.peek() {
            Some(c) if c == want => {
                self.bump();
                Ok(())
            }
            Some(c) => self.error(format!("expected '{want}', found '{c}'")),
            None => self.error(format!("expected '{want}', found end of input")),
        }
    }

    fn number(&mut self) -> Result<u64, PdError> {
        self.skip_separators(false);
        let mut digits = String::new();
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            digits.push(c);
            self.bump();
        }
        if digits.is_empty() {
            return match self.peek() {
                Some(c) => self.error(format!("expected edge label, found '{c}'")),
                None => self.error("expected edge label, found end of input"),
            };
        }
        match digits.parse::<u64>() {
            Ok(0) => self.error("edge labels are positive"),
            Ok(n) => Ok(n),
            Err(_) => self.error("edge label too large"),
        }
    }
}

/// Parses PD text into raw crossing tuples (labels as written).
pub fn parse_terms(text: &str) -> Result<Vec<Vec<u64>>, PdError> {
    let mut cur = Cursor { chars: text.chars().peekable(), line: 1, column: 1 };
    let mut terms = Vec::new();
    loop {
        cur.skip_separators(true);
        let Some(c) = cur.peek() else { break };
        if c != 'X' {
            return cur.error(format!("expected 'X', found '{c}'"));
        }
        let (line, column) = (cur.line, cur.column);
        cur.bump();
        cur.expect('(')?;
        let mut labels = vec![cur.number()?];
        loop {
            cur.skip_separators(false);
            match cur.peek() {
                Some(',') => {
                    cur.bump();
                    labels.push(cur.number()?);
                }
                Some(')') => {
                    cur.bump();
                    break;
                }
                Some(c) => return cur.error(format!("expected ',' or ')', found '{c}'")),
                None => return cur.error("unterminated crossing term"),
            }
        }
        if labels.len() != 4 {
            return Err(PdError::Arity { line, column, arity: labels.len() });
        }
        terms.push(labels);
    }
    Ok(terms)
}

/// Maps labels to 0-based edge ids in increasing label order.
pub fn relabel(terms: &[Vec<u64>]) -> Result<Vec<[usize; 4]>, PdError> {
    let mut counts: BTreeMap<u64, usize> = BTreeMap::new();
    for &l in terms.iter().flatten() {
        *counts.entry(l).or_default() += 1;
    }
    if let Some((&label, &count)) = counts.iter().find(|(_, &c)| c != 2) {
        return Err(PdError::LabelMultiplicity { label, count });
    }
    let index: BTreeMap<u64, usize> = counts.keys().enumerate().map(|(i, &l)| (l, i)).collect();
    Ok(terms.iter().map(|t| [index[&t[0]], index[&t[1]], index[&t[2]], index[&t[3]]]).collect())
}

/// Parses and validates PD text. Empty input is the crossingless unknot.
pub fn parse_pd(text: &str) -> Result<Diagram, PdError> {
    let tuples = relabel(&parse_terms(text)?)?;
    let d = Diagram::from_edge_tuples(&tuples)?;
    d.ensure_valid()?;
    Ok(d)
}

/// PD text with 1-based labels taken from semiarc ids.
pub fn to_pd(d: &Diagram) -> String {
    d.crossings()
        .map(|x| {
            let [a, b, c, e] = x.ports.map(|s| s.0 + 1);
            format!("X({a},{b},{c},{e})")
        })
        .collect::<Vec<_>>()
        .join(",")
}

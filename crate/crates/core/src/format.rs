//! Text formats for posets and realizers.
//!
//! A poset file is a sequence of lines:
//!
//! ```text
//! # comment
//! elements x1 x2 z1
//! rel x1 z1
//! rel x2 z1
//! ```
//!
//! `rel a b` means `a < b`; the order is the transitive closure. Elements
//! are indexed in order of first appearance, including first appearance in
//! a `rel` line. A realizer file has one word per line, or is a JSON
//! document `{"elements": [...], "words": [[...], ...], "verified": bool}`.

use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::poset::{validate_label, LinearExtension, Poset, Realizer};

/// A format error, tied to a 1-based line number when one applies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: Option<usize>,
    pub message: String,
}

impl ParseError {
    fn at(line: usize, message: impl Into<String>) -> Self {
        Self {
            line: Some(line),
            message: message.into(),
        }
    }

    fn whole(message: impl Into<String>) -> Self {
        Self {
            line: None,
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(l) => write!(f, "line {l}: {}", self.message),
            None => f.write_str(&self.message),
        }
    }
}

impl std::error::Error for ParseError {}

/// Splits on `\n`, strips one trailing `\r`, and checks UTF-8 per line.
fn lines(bytes: &[u8]) -> impl Iterator<Item = (usize, Result<&str, ParseError>)> {
    bytes.split(|&b| b == b'\n').enumerate().map(|(i, raw)| {
        let raw = raw.strip_suffix(b"\r").unwrap_or(raw);
        let line = std::str::from_utf8(raw).map_err(|_| ParseError::at(i + 1, "invalid UTF-8"));
        (i + 1, line)
    })
}

fn is_blank_or_comment(line: &str) -> bool {
    let t = line.trim_start();
    t.is_empty() || t.starts_with('#')
}

pub fn parse_poset(bytes: &[u8]) -> Result<Poset, ParseError> {
    let mut labels: Vec<String> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut declared: HashSet<usize> = HashSet::new();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut edge_lines: Vec<usize> = Vec::new();

    let mut intern = |tok: &str, line: usize| -> Result<usize, ParseError> {
        validate_label(tok).map_err(|e| ParseError::at(line, e.to_string()))?;
        if let Some(&i) = index.get(tok) {
            return Ok(i);
        }
        labels.push(tok.to_string());
        index.insert(tok.to_string(), labels.len() - 1);
        Ok(labels.len() - 1)
    };

    for (ln, line) in lines(bytes) {
        let line = line?;
        if is_blank_or_comment(line) {
            continue;
        }
        let mut toks = line.split_whitespace();
        match toks.next() {
            Some("elements") => {
                for tok in toks {
                    let i = intern(tok, ln)?;
                    if !declared.insert(i) {
                        return Err(ParseError::at(ln, format!("duplicate element {tok:?}")));
                    }
                }
            }
            Some("rel") => {
                let args: Vec<&str> = toks.collect();
                let [a, b] = args[..] else {
                    return Err(ParseError::at(
                        ln,
                        format!("`rel` takes 2 elements, found {}", args.len()),
                    ));
                };
                if a == b {
                    return Err(ParseError::at(
                        ln,
                        format!("relation {a} < {a} is reflexive"),
                    ));
                }
                let (ia, ib) = (intern(a, ln)?, intern(b, ln)?);
                edges.push((ia, ib));
                edge_lines.push(ln);
            }
            Some(other) => {
                return Err(ParseError::at(ln, format!("unknown directive {other:?}")));
            }
            None => unreachable!("blank lines skipped"),
        }
    }

    match Poset::from_index_relations(labels.clone(), &edges) {
        Ok(p) => Ok(p),
        Err(Error::RelationCycle(_)) => Err(locate_cycle(&labels, &edges, &edge_lines)),
        Err(e) => Err(ParseError::whole(e.to_string())),
    }
}

/// The first relation line that closes a directed cycle.
fn locate_cycle(labels: &[String], edges: &[(usize, usize)], edge_lines: &[usize]) -> ParseError {
    let mut succ = vec![Vec::new(); labels.len()];
    for (&(a, b), &ln) in edges.iter().zip(edge_lines) {
        let mut seen = vec![false; labels.len()];
        let mut stack = vec![b];
        while let Some(v) = stack.pop() {
            if v == a {
                return ParseError::at(
                    ln,
                    format!("relation {} < {} closes a cycle", labels[a], labels[b]),
                );
            }
            if !std::mem::replace(&mut seen[v], true) {
                stack.extend(succ[v].iter().copied());
            }
        }
        succ[a].push(b);
    }
    ParseError::whole("relations contain a cycle")
}

/// `elements` line followed by one `rel` line per cover.
pub fn write_poset(p: &Poset) -> String {
    let mut out = String::from("elements");
    for l in p.labels() {
        out.push(' ');
        out.push_str(l);
    }
    out.push('\n');
    for (a, b) in p.covers() {
        out.push_str(&format!("rel {} {}\n", p.label(a), p.label(b)));
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealizerDocument {
    pub elements: Vec<String>,
    pub words: Vec<Vec<String>>,
    pub verified: bool,
}

/// Parses a realizer file against `p`. Every word must be a permutation of
/// the elements of `p`.
pub fn parse_realizer(bytes: &[u8], p: &Poset) -> Result<Realizer, ParseError> {
    let first = bytes.iter().find(|b| !b.is_ascii_whitespace());
    let words: Vec<(Option<usize>, Vec<String>)> = if first == Some(&b'{') {
        let doc: RealizerDocument = serde_json::from_slice(bytes)
            .map_err(|e| ParseError::whole(format!("invalid realizer document: {e}")))?;
        let mine: HashSet<&str> = p.labels().iter().map(String::as_str).collect();
        let theirs: HashSet<&str> = doc.elements.iter().map(String::as_str).collect();
        if mine != theirs || doc.elements.len() != p.len() {
            return Err(ParseError::whole(
                "document elements differ from the poset's",
            ));
        }
        doc.words.into_iter().map(|w| (None, w)).collect()
    } else {
        let mut out = Vec::new();
        for (ln, line) in lines(bytes) {
            let line = line?;
            if is_blank_or_comment(line) {
                continue;
            }
            out.push((
                Some(ln),
                line.split_whitespace().map(str::to_string).collect(),
            ));
        }
        out
    };

    let mut exts = Vec::with_capacity(words.len());
    for (k, (ln, w)) in words.iter().enumerate() {
        let err = |m: String| match ln {
            Some(l) => ParseError::at(*l, m),
            None => ParseError::whole(format!("word {}: {m}", k + 1)),
        };
        let mut seen = vec![false; p.len()];
        let mut order = Vec::with_capacity(w.len());
        for tok in w {
            let e = p
                .id(tok)
                .ok_or_else(|| err(format!("unknown element {tok:?}")))?;
            if std::mem::replace(&mut seen[e.0], true) {
                return Err(err(format!("element {tok:?} repeated")));
            }
            order.push(e);
        }
        if order.len() != p.len() {
            return Err(err(format!(
                "{} of {} elements listed",
                order.len(),
                p.len()
            )));
        }
        exts.push(LinearExtension::new(order));
    }
    Ok(Realizer::new(exts))
}

/// One word per line.
pub fn write_realizer(p: &Poset, r: &Realizer) -> String {
    let mut out = String::new();
    for w in &r.extensions {
        out.push_str(&w.to_line(p));
        out.push('\n');
    }
    out
}

pub fn realizer_document(p: &Poset, r: &Realizer, verified: bool) -> RealizerDocument {
    RealizerDocument {
        elements: p.labels().to_vec(),
        words: r.label_words(p),
        verified,
    }
}

pub fn write_realizer_document(p: &Poset, r: &Realizer, verified: bool) -> String {
    let mut s = serde_json::to_string(&realizer_document(p, r, verified)).expect("serializable");
    s.push('\n');
    s
}

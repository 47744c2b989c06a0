//! Reading and writing groupoids and semigroups as text.
//!
//! ```text
//! groupoid {
//!   units   = [x, y]
//!   arrows  = [(g, x, y), (h, y, x)]     # (id, source, range)
//!   compose = [(g, h, y), (h, g, x)]     # (left, right, left·right)
//!   inverse = [(g, h)]
//! }
//!
//! semigroup {
//!   elements = [0, e]
//!   zero     = 0                         # optional
//!   table    = [[0, 0], [0, e]]          # row a, column b holds a·b
//! }
//! ```
//!
//! Products with a unit factor follow from the unit laws and may be left
//! out, as may one direction of each inverse pair.

mod syntax;

use std::collections::HashMap;
use std::fmt::Write;

use thiserror::Error;

pub use syntax::{is_ident_char, parse_document, Document, Position, Value};
use syntax::syntax;

use crate::algebra::{validate_inverse_semigroup, AlgebraError, FiniteInverseSemigroup, RawSemigroup};
use crate::groupoid::{validate_groupoid, FiniteGroupoid, GroupoidError, RawGroupoid};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IoError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("validation failed: {0}")]
    Validation(#[from] ValidationError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValidationError {
    #[error(transparent)]
    Groupoid(#[from] GroupoidError),
    #[error(transparent)]
    Semigroup(#[from] AlgebraError),
}

impl From<GroupoidError> for IoError {
    fn from(e: GroupoidError) -> Self {
        IoError::Validation(e.into())
    }
}

impl From<AlgebraError> for IoError {
    fn from(e: AlgebraError) -> Self {
        IoError::Validation(e.into())
    }
}

fn expect_kind(doc: &Document, kind: &str) -> Result<(), IoError> {
    if doc.kind != kind {
        return Err(syntax(doc.position, &format!("expected a `{kind}` document, found `{}`", doc.kind)));
    }
    Ok(())
}

/// Records identifiers, rejecting repeats at their position.
#[derive(Default)]
struct Declared(HashMap<String, usize>);

impl Declared {
    fn declare(&mut self, name: &str, at: Position) -> Result<usize, IoError> {
        let next = self.0.len();
        if self.0.insert(name.to_string(), next).is_some() {
            return Err(syntax(at, &format!("identifier `{name}` is declared twice")));
        }
        Ok(next)
    }
}

/// Parses a groupoid document without validating the groupoid axioms.
pub fn parse_groupoid_document(text: &str) -> Result<RawGroupoid, IoError> {
    let doc = parse_document(text)?;
    expect_kind(&doc, "groupoid")?;
    doc.expect_keys(&["units", "arrows", "compose", "inverse"])?;
    let mut declared = Declared::default();
    let mut raw = RawGroupoid::default();
    for v in doc.required("units")?.list()? {
        let (name, at) = v.ident()?;
        declared.declare(name, at)?;
        raw.units.push(name.to_string());
    }
    for v in doc.required("arrows")?.list()? {
        let t = v.tuple(3)?;
        declared.declare(t[0].0, t[0].1)?;
        raw.arrows.push((t[0].0.into(), t[1].0.into(), t[2].0.into()));
    }
    if let Some(list) = doc.field("compose") {
        for v in list.list()? {
            let t = v.tuple(3)?;
            raw.compose.push((t[0].0.into(), t[1].0.into(), t[2].0.into()));
        }
    }
    if let Some(list) = doc.field("inverse") {
        for v in list.list()? {
            let t = v.tuple(2)?;
            raw.inverse.push((t[0].0.into(), t[1].0.into()));
        }
    }
    Ok(raw)
}

pub fn parse_groupoid(text: &str) -> Result<FiniteGroupoid, IoError> {
    Ok(validate_groupoid(parse_groupoid_document(text)?)?)
}

/// Parses a semigroup document without validating the semigroup axioms.
pub fn parse_semigroup_document(text: &str) -> Result<RawSemigroup, IoError> {
    let doc = parse_document(text)?;
    expect_kind(&doc, "semigroup")?;
    doc.expect_keys(&["elements", "zero", "table"])?;
    let mut declared = Declared::default();
    let mut elements = Vec::new();
    for v in doc.required("elements")?.list()? {
        let (name, at) = v.ident()?;
        declared.declare(name, at)?;
        elements.push(name.to_string());
    }
    let lookup = |v: &Value| -> Result<usize, IoError> {
        let (name, _) = v.ident()?;
        declared.0.get(name).copied().ok_or_else(|| AlgebraError::UnknownElement(name.to_string()).into())
    };
    let zero = doc.field("zero").map(lookup).transpose()?;
    let rows = doc.required("table")?.list()?;
    let n = elements.len();
    if rows.len() != n {
        return Err(syntax(doc.required("table")?.position(), &format!("table has {} rows, expected {n}", rows.len())));
    }
    let mut table = Vec::with_capacity(n * n);
    for row in rows {
        let cells = row.list()?;
        if cells.len() != n {
            return Err(syntax(row.position(), &format!("row has {} entries, expected {n}", cells.len())));
        }
        for cell in cells {
            table.push(lookup(cell)?);
        }
    }
    Ok(RawSemigroup { elements, table, zero })
}

pub fn parse_semigroup(text: &str) -> Result<FiniteInverseSemigroup, IoError> {
    parse_semigroup_with(text, false)
}

/// With `adjoin_zero`, a fresh zero is added before validation.
pub fn parse_semigroup_with(text: &str, adjoin_zero: bool) -> Result<FiniteInverseSemigroup, IoError> {
    let mut raw = parse_semigroup_document(text)?;
    if adjoin_zero {
        raw = raw.adjoin_zero();
    }
    Ok(validate_inverse_semigroup(raw)?)
}

fn wrap_list<T>(out: &mut String, key: &str, items: &[T], item: impl Fn(&T) -> String) {
    if items.is_empty() {
        let _ = writeln!(out, "  {key} = []");
        return;
    }
    let _ = writeln!(out, "  {key} = [");
    for it in items {
        let _ = writeln!(out, "    {},", item(it));
    }
    let _ = writeln!(out, "  ]");
}

/// Prints every non-unit product and one direction of each inverse pair.
pub fn print_groupoid(g: &FiniteGroupoid) -> String {
    let raw = g.to_raw();
    let mut out = String::from("groupoid {\n");
    let _ = writeln!(out, "  units = [{}]", raw.units.join(", "));
    wrap_list(&mut out, "arrows", &raw.arrows, |(a, d, r)| format!("({a}, {d}, {r})"));
    wrap_list(&mut out, "compose", &raw.compose, |(a, b, c)| format!("({a}, {b}, {c})"));
    wrap_list(&mut out, "inverse", &raw.inverse, |(a, b)| format!("({a}, {b})"));
    out.push_str("}\n");
    out
}

pub fn print_semigroup(s: &FiniteInverseSemigroup) -> String {
    let mut out = String::from("semigroup {\n");
    let _ = writeln!(out, "  elements = [{}]", s.names().join(", "));
    let _ = writeln!(out, "  zero = {}", s.name(s.zero()));
    let rows: Vec<usize> = (0..s.len()).collect();
    wrap_list(&mut out, "table", &rows, |&a| {
        let cells: Vec<&str> = (0..s.len()).map(|b| s.name(s.mul(a, b))).collect();
        format!("[{}]", cells.join(", "))
    });
    out.push_str("}\n");
    out
}

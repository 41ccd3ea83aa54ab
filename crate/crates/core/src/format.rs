//! Line-oriented text formats.
//!
//! Reduction systems:
//!
//! ```text
//! # comment
//! v a
//! v b
//! e a b
//! ```
//!
//! Handle graphs use `r <name>`, `g <name>` and `l <green> <red>`; repeated
//! `l` lines add parallel links.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::handle::{HandleError, HandleGraph, NamedHandleGraph};
use crate::system::{ReductionSystem, SystemBuilder, SystemError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unknown record `{0}`")]
    UnknownRecord(String),
    #[error("record `{record}` takes {expected} field(s), found {found}")]
    FieldCount {
        record: String,
        expected: usize,
        found: usize,
    },
    #[error(transparent)]
    System(#[from] SystemError),
    #[error("name `{0}` declared twice")]
    DuplicateName(String),
    #[error("`{0}` is not a declared green vertex")]
    UnknownGreen(String),
    #[error("`{0}` is not a declared red vertex")]
    UnknownRed(String),
    #[error(transparent)]
    Handle(#[from] HandleError),
}

fn records(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            None
        } else {
            Some((i + 1, line.split_whitespace().collect()))
        }
    })
}

fn expect_fields(line: usize, fields: &[&str], expected: usize) -> Result<(), ParseError> {
    if fields.len() == expected + 1 {
        Ok(())
    } else {
        Err(ParseError {
            line,
            kind: ParseErrorKind::FieldCount {
                record: fields[0].to_string(),
                expected,
                found: fields.len() - 1,
            },
        })
    }
}

pub fn parse_system(text: &str) -> Result<ReductionSystem, ParseError> {
    let mut builder = SystemBuilder::new();
    for (line, fields) in records(text) {
        let err = |kind: ParseErrorKind| ParseError { line, kind };
        match fields[0] {
            "v" => {
                expect_fields(line, &fields, 1)?;
                builder.add_vertex(fields[1]).map_err(|e| err(e.into()))?;
            }
            "e" => {
                expect_fields(line, &fields, 2)?;
                let (src, dst) = (fields[1], fields[2]);
                if src == dst && builder.vertex(src).is_some() {
                    return Err(err(SystemError::SelfLoop(src.to_string()).into()));
                }
                builder
                    .add_edge_by_name(src, dst)
                    .map_err(|e| err(e.into()))?;
            }
            other => return Err(err(ParseErrorKind::UnknownRecord(other.to_string()))),
        }
    }
    Ok(builder.build())
}

/// Vertices in id order, then edges in id order.
pub fn write_system(sys: &ReductionSystem) -> String {
    let mut out = String::new();
    for v in sys.vertices() {
        writeln!(out, "v {}", sys.name(v)).expect("write to string");
    }
    for e in sys.edges() {
        writeln!(out, "e {} {}", sys.name(e.src), sys.name(e.dst)).expect("write to string");
    }
    out
}

pub fn parse_handle_graph(text: &str) -> Result<NamedHandleGraph, ParseError> {
    let mut reds: BTreeMap<String, usize> = BTreeMap::new();
    let mut greens: BTreeMap<String, usize> = BTreeMap::new();
    let mut links: Vec<Vec<usize>> = Vec::new();
    for (line, fields) in records(text) {
        let err = |kind: ParseErrorKind| ParseError { line, kind };
        match fields[0] {
            "r" | "g" => {
                expect_fields(line, &fields, 1)?;
                let name = fields[1];
                if reds.contains_key(name) || greens.contains_key(name) {
                    return Err(err(ParseErrorKind::DuplicateName(name.to_string())));
                }
                if fields[0] == "r" {
                    reds.insert(name.to_string(), reds.len());
                } else {
                    greens.insert(name.to_string(), links.len());
                    links.push(Vec::new());
                }
            }
            "l" => {
                expect_fields(line, &fields, 2)?;
                let g = *greens
                    .get(fields[1])
                    .ok_or_else(|| err(ParseErrorKind::UnknownGreen(fields[1].to_string())))?;
                let r = *reds
                    .get(fields[2])
                    .ok_or_else(|| err(ParseErrorKind::UnknownRed(fields[2].to_string())))?;
                links[g].push(r);
            }
            other => return Err(err(ParseErrorKind::UnknownRecord(other.to_string()))),
        }
    }
    let (graph, relabel) =
        HandleGraph::with_relabeling(reds.len(), links).map_err(|e| ParseError {
            line: 0,
            kind: e.into(),
        })?;
    let reds = reds
        .into_iter()
        .map(|(name, raw)| (name, relabel.reds[raw]))
        .collect();
    let greens = greens
        .into_iter()
        .map(|(name, raw)| (name, relabel.greens.get(raw).copied().flatten()))
        .collect();
    Ok(NamedHandleGraph {
        graph,
        reds,
        greens,
    })
}

/// Canonical rendering: reds `r0..`, greens `g0..`, links in green order.
pub fn write_handle_graph(g: &HandleGraph) -> String {
    let mut out = String::new();
    for r in 0..g.red_count() {
        writeln!(out, "r r{r}").expect("write to string");
    }
    for x in g.greens() {
        writeln!(out, "g g{}", x.0).expect("write to string");
    }
    for x in g.greens() {
        for r in g.links(x).expect("green in range") {
            writeln!(out, "l g{} r{r}", x.0).expect("write to string");
        }
    }
    out
}

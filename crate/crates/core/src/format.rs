//! Plain-text instance files.
//!
//! ```text
//! rcsp v1 <family> <n> <r>
//! <member_1> .. <member_r> <selected data>
//! ...
//! ```
//!
//! The family tag is `betweenness`, `tfast` or `fast`. There is one record per
//! r-subset; members are listed in increasing order and followed by the
//! selected data (a pair, a single vertex, or the required order of all
//! members). [`serialize`] writes the records in lexicographic order; the
//! parser accepts any order. Blank lines and lines starting with `#` are
//! skipped.

use std::fmt::Write as _;
use std::path::Path;

use thiserror::Error;

use crate::error::ModelError;
use crate::model::{Constraint, Family, Instance, ProblemKind, Selection, Vertex};

pub const MAGIC: &str = "rcsp";
pub const VERSION: &str = "v1";

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: malformed header: {reason}")]
    Header { line: usize, reason: String },
    #[error("line {line}: unknown family tag `{tag}`")]
    UnknownFamily { line: usize, tag: String },
    #[error("line {line}: `{token}` is not a non-negative integer")]
    NotAnInteger { line: usize, token: String },
    #[error("line {line}: expected {expected} integers per record, found {found}")]
    RecordLength {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("line {line}: vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { line: usize, vertex: Vertex, n: usize },
    #[error("line {line}: selected vertex {vertex} is not a member of {members:?}")]
    SelectedNotMember {
        line: usize,
        vertex: Vertex,
        members: Vec<Vertex>,
    },
    #[error("line {line}: subset {members:?} already given on line {first}")]
    DuplicateSubset {
        line: usize,
        first: usize,
        members: Vec<Vertex>,
    },
    #[error("line {line}: {source}")]
    InvalidRecord { line: usize, source: ModelError },
    #[error("expected {expected} records, found {found}; no record for subset {missing:?}")]
    MissingSubset {
        expected: usize,
        found: usize,
        missing: Vec<Vertex>,
    },
    #[error("missing header line")]
    Empty,
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl FormatError {
    /// The 1-based line the error refers to, if any.
    pub fn line(&self) -> Option<usize> {
        match self {
            FormatError::Header { line, .. }
            | FormatError::UnknownFamily { line, .. }
            | FormatError::NotAnInteger { line, .. }
            | FormatError::RecordLength { line, .. }
            | FormatError::VertexOutOfRange { line, .. }
            | FormatError::SelectedNotMember { line, .. }
            | FormatError::DuplicateSubset { line, .. }
            | FormatError::InvalidRecord { line, .. } => Some(*line),
            _ => None,
        }
    }
}

pub fn serialize(inst: &Instance) -> String {
    let kind = inst.kind();
    let mut out = format!(
        "{MAGIC} {VERSION} {} {} {}\n",
        kind.family().tag(),
        inst.n(),
        kind.arity()
    );
    for c in inst.iter() {
        let mut first = true;
        for v in c.members.iter().chain(c.selected) {
            if !first {
                out.push(' ');
            }
            first = false;
            write!(out, "{v}").expect("writing to a String");
        }
        out.push('\n');
    }
    out
}

fn parse_header(line_no: usize, line: &str) -> Result<(ProblemKind, usize), FormatError> {
    let header = |reason: String| FormatError::Header {
        line: line_no,
        reason,
    };
    let fields: Vec<&str> = line.split_whitespace().collect();
    if fields.len() != 5 {
        return Err(header(format!("expected 5 fields, found {}", fields.len())));
    }
    if fields[0] != MAGIC {
        return Err(header(format!("expected `{MAGIC}`, found `{}`", fields[0])));
    }
    if fields[1] != VERSION {
        return Err(header(format!("unsupported version `{}`", fields[1])));
    }
    let family = Family::ALL
        .into_iter()
        .find(|f| f.tag() == fields[2])
        .ok_or_else(|| FormatError::UnknownFamily {
            line: line_no,
            tag: fields[2].to_string(),
        })?;
    let n: usize = fields[3]
        .parse()
        .map_err(|_| header(format!("bad vertex count `{}`", fields[3])))?;
    let r: usize = fields[4]
        .parse()
        .map_err(|_| header(format!("bad arity `{}`", fields[4])))?;
    let kind = ProblemKind::new(family, r).map_err(|e| header(e.to_string()))?;
    Ok((kind, n))
}

pub fn parse(text: &str) -> Result<Instance, FormatError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (header_line, header) = lines.next().ok_or(FormatError::Empty)?;
    let (kind, n) = parse_header(header_line, header)?;
    let r = kind.arity();
    let width = r + kind.selected_len();
    let expected = crate::model::subset_count(n, r);
    let mut seen: std::collections::HashMap<Vec<Vertex>, usize> = std::collections::HashMap::new();
    let mut constraints = Vec::with_capacity(expected);
    for (line, text) in lines {
        let mut nums = Vec::with_capacity(width);
        for token in text.split_whitespace() {
            let v: Vertex = token.parse().map_err(|_| FormatError::NotAnInteger {
                line,
                token: token.to_string(),
            })?;
            nums.push(v);
        }
        if nums.len() != width {
            return Err(FormatError::RecordLength {
                line,
                expected: width,
                found: nums.len(),
            });
        }
        if let Some(&vertex) = nums.iter().find(|&&v| v >= n) {
            return Err(FormatError::VertexOutOfRange { line, vertex, n });
        }
        let (members, data) = nums.split_at(r);
        if let Some(&vertex) = data.iter().find(|v| !members.contains(v)) {
            return Err(FormatError::SelectedNotMember {
                line,
                vertex,
                members: members.to_vec(),
            });
        }
        let c = Constraint::new(kind, members.to_vec(), Selection::from_slice(kind.family(), data))
            .map_err(|source| FormatError::InvalidRecord { line, source })?;
        if let Some(&first) = seen.get(members) {
            return Err(FormatError::DuplicateSubset {
                line,
                first,
                members: members.to_vec(),
            });
        }
        seen.insert(members.to_vec(), line);
        constraints.push(c);
    }
    let found = constraints.len();
    Instance::from_constraints(kind, n, constraints).map_err(|e| match e {
        ModelError::MissingConstraint(missing) => FormatError::MissingSubset {
            expected,
            found,
            missing,
        },
        other => FormatError::InvalidRecord {
            line: header_line,
            source: other,
        },
    })
}

pub fn read_instance(path: impl AsRef<Path>) -> Result<Instance, FormatError> {
    parse(&std::fs::read_to_string(path)?)
}

pub fn write_instance(path: impl AsRef<Path>, inst: &Instance) -> Result<(), FormatError> {
    std::fs::write(path, serialize(inst))?;
    Ok(())
}

//! Component descriptions, relation schemas and the binary pattern matrix.
//!
//! A *subject type* is a record type (a C `struct`) that relations are
//! derived about. For every subject three relations exist: a component
//! returns it, takes it as an argument, or uses its fields. The relations
//! form the columns of the pattern matrix, kind-major:
//!
//! ```text
//! R0 .. R(n-1)    returns <subject>
//! Rn .. R(2n-1)   has argument of type <subject>
//! R2n .. R(3n-1)  uses field of <subject>
//! ```

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One software component (a function) as seen from its declaration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentRecord {
    pub name: String,
    /// Return type name; `None` for `void`.
    pub returns: Option<String>,
    /// Argument type names in declaration order. Primitive types are kept
    /// but never produce relations.
    pub args: Vec<String>,
    /// Subject types whose fields the component reads or writes.
    pub uses_fields: BTreeSet<String>,
}

impl ComponentRecord {
    pub fn new(name: impl Into<String>) -> Self {
        ComponentRecord {
            name: name.into(),
            returns: None,
            args: Vec::new(),
            uses_fields: BTreeSet::new(),
        }
    }

    pub fn returning(mut self, ty: impl Into<String>) -> Self {
        self.returns = Some(ty.into());
        self
    }

    pub fn arg(mut self, ty: impl Into<String>) -> Self {
        self.args.push(ty.into());
        self
    }

    pub fn uses(mut self, subject: impl Into<String>) -> Self {
        self.uses_fields.insert(subject.into());
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RelationKind {
    Returns,
    HasArg,
    UsesField,
}

impl RelationKind {
    pub const ALL: [RelationKind; 3] = [
        RelationKind::Returns,
        RelationKind::HasArg,
        RelationKind::UsesField,
    ];

    fn ordinal(self) -> usize {
        match self {
            RelationKind::Returns => 0,
            RelationKind::HasArg => 1,
            RelationKind::UsesField => 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub kind: RelationKind,
    pub subject: String,
    pub label: String,
}

impl Relation {
    /// Human-readable definition, e.g. `Return type is struct refstack`.
    pub fn definition(&self) -> String {
        match self.kind {
            RelationKind::Returns => format!("Return type is struct {}", self.subject),
            RelationKind::HasArg => format!("Has argument of type struct {}", self.subject),
            RelationKind::UsesField => format!("Use field of struct {}", self.subject),
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.label, self.definition())
    }
}

/// Ordered relation basis of a pattern matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationSchema {
    subject_types: Vec<String>,
    relations: Vec<Relation>,
}

impl RelationSchema {
    pub fn subject_types(&self) -> &[String] {
        &self.subject_types
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn len(&self) -> usize {
        self.relations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.relations.is_empty()
    }

    pub fn subject_index(&self, subject: &str) -> Option<usize> {
        self.subject_types.iter().position(|s| s == subject)
    }

    /// Column index of `(kind, subject_types[subject])`.
    pub fn column(&self, kind: RelationKind, subject: usize) -> usize {
        kind.ordinal() * self.subject_types.len() + subject
    }

    /// Subject index owning `column`.
    pub fn subject_of_column(&self, column: usize) -> usize {
        column % self.subject_types.len()
    }
}

/// Derives `3 × |subject_types|` relations in kind-major, subject-minor order.
pub fn derive_relations<S: AsRef<str>>(subject_types: &[S]) -> Result<RelationSchema> {
    if subject_types.is_empty() {
        return Err(Error::NoSubjectTypes);
    }
    let mut seen = HashSet::new();
    for s in subject_types {
        if !seen.insert(s.as_ref()) {
            return Err(Error::DuplicateSubjectType(s.as_ref().to_owned()));
        }
    }
    let subject_types: Vec<String> = subject_types.iter().map(|s| s.as_ref().to_owned()).collect();
    let relations = RelationKind::ALL
        .iter()
        .flat_map(|&kind| subject_types.iter().map(move |s| (kind, s)))
        .enumerate()
        .map(|(i, (kind, subject))| Relation {
            kind,
            subject: subject.clone(),
            label: format!("R{i}"),
        })
        .collect();
    Ok(RelationSchema {
        subject_types,
        relations,
    })
}

/// Binary component × relation matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternMatrix {
    row_labels: Vec<String>,
    col_labels: Vec<String>,
    cells: Vec<bool>,
}

impl PatternMatrix {
    /// Builds a matrix from explicit rows. Every row must have one cell per
    /// column label.
    pub fn from_rows(
        row_labels: Vec<String>,
        col_labels: Vec<String>,
        rows: &[Vec<bool>],
    ) -> Result<Self> {
        if row_labels.len() != rows.len() {
            return Err(Error::LengthMismatch {
                left: row_labels.len(),
                right: rows.len(),
            });
        }
        check_unique_names(row_labels.iter().map(String::as_str))?;
        let mut cells = Vec::with_capacity(rows.len() * col_labels.len());
        for row in rows {
            if row.len() != col_labels.len() {
                return Err(Error::LengthMismatch {
                    left: row.len(),
                    right: col_labels.len(),
                });
            }
            cells.extend_from_slice(row);
        }
        Ok(PatternMatrix {
            row_labels,
            col_labels,
            cells,
        })
    }

    pub fn rows(&self) -> usize {
        self.row_labels.len()
    }

    pub fn cols(&self) -> usize {
        self.col_labels.len()
    }

    pub fn row_labels(&self) -> &[String] {
        &self.row_labels
    }

    pub fn col_labels(&self) -> &[String] {
        &self.col_labels
    }

    pub fn row(&self, i: usize) -> &[bool] {
        let t = self.cols();
        &self.cells[i * t..(i + 1) * t]
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.cells[i * self.cols() + j]
    }

    pub fn iter_rows(&self) -> impl Iterator<Item = &[bool]> + '_ {
        // chunks_exact(0) panics; a zero-column matrix has no cells to yield.
        let t = self.cols().max(1);
        self.cells.chunks_exact(t)
    }

    /// Rows as `0`/`1` bytes.
    pub fn to_bits(&self) -> Vec<Vec<u8>> {
        (0..self.rows())
            .map(|i| self.row(i).iter().map(|&b| u8::from(b)).collect())
            .collect()
    }

    pub fn row_index(&self, label: &str) -> Option<usize> {
        self.row_labels.iter().position(|l| l == label)
    }
}

fn check_unique_names<'a>(names: impl Iterator<Item = &'a str>) -> Result<()> {
    let mut seen = HashSet::new();
    for name in names {
        if name.is_empty() {
            return Err(Error::EmptyComponentName);
        }
        if !seen.insert(name) {
            return Err(Error::DuplicateComponent(name.to_owned()));
        }
    }
    Ok(())
}

/// Sets `(RETURNS, T)` when the component returns `T`, `(HAS_ARG, T)` when
/// `T` is among its arguments and `(USES_FIELD, T)` when it uses `T`'s
/// fields. Types outside the schema contribute nothing.
pub fn build_pattern_matrix(
    records: &[ComponentRecord],
    schema: &RelationSchema,
) -> Result<PatternMatrix> {
    if records.is_empty() {
        return Err(Error::NoComponents);
    }
    check_unique_names(records.iter().map(|r| r.name.as_str()))?;

    let t = schema.len();
    let mut cells = vec![false; records.len() * t];
    for (i, record) in records.iter().enumerate() {
        let row = &mut cells[i * t..(i + 1) * t];
        if let Some(s) = record.returns.as_deref().and_then(|ty| schema.subject_index(ty)) {
            row[schema.column(RelationKind::Returns, s)] = true;
        }
        for s in record.args.iter().filter_map(|ty| schema.subject_index(ty)) {
            row[schema.column(RelationKind::HasArg, s)] = true;
        }
        for used in &record.uses_fields {
            let s = schema
                .subject_index(used)
                .ok_or_else(|| Error::UndeclaredSubject {
                    component: record.name.clone(),
                    subject: used.clone(),
                })?;
            row[schema.column(RelationKind::UsesField, s)] = true;
        }
    }

    Ok(PatternMatrix {
        row_labels: records.iter().map(|r| r.name.clone()).collect(),
        col_labels: schema.relations().iter().map(|r| r.label.clone()).collect(),
        cells,
    })
}

//! Structured JSON output of a run.
//!
//! Top-level keys: `schema`, `pattern_matrix`, `rounds`, `dendrogram` and,
//! when a cut was requested, `report`. Display values are two-decimal
//! strings rounded half-up; exact keys sit alongside as `{num, den}`.

use serde::{Deserialize, Serialize};

use crate::dendrogram::Dendrogram;
use crate::engine::{cluster_label, ClusterId, ClusterRun, MergeRound, ProximityMatrix};
use crate::error::{Error, Location, Result};
use crate::feature::{PatternMatrix, RelationKind, RelationSchema};
use crate::metrics::{format_ratio, Key};
use crate::report::{CandidateObjectReport, Dominance};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactKey {
    pub num: u64,
    pub den: u64,
}

impl From<Key> for ExactKey {
    fn from(k: Key) -> Self {
        ExactKey {
            num: *k.numer(),
            den: *k.denom(),
        }
    }
}

impl From<ExactKey> for Key {
    fn from(k: ExactKey) -> Self {
        Key::new(k.num, k.den)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationDoc {
    pub label: String,
    pub kind: RelationKind,
    pub subject: String,
    pub definition: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchemaDoc {
    pub subject_types: Vec<String>,
    pub relations: Vec<RelationDoc>,
}

impl From<&RelationSchema> for SchemaDoc {
    fn from(schema: &RelationSchema) -> Self {
        SchemaDoc {
            subject_types: schema.subject_types().to_vec(),
            relations: schema
                .relations()
                .iter()
                .map(|r| RelationDoc {
                    label: r.label.clone(),
                    kind: r.kind,
                    subject: r.subject.clone(),
                    definition: r.definition(),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternDoc {
    pub row_labels: Vec<String>,
    pub col_labels: Vec<String>,
    pub rows: Vec<Vec<u8>>,
}

impl From<&PatternMatrix> for PatternDoc {
    fn from(p: &PatternMatrix) -> Self {
        PatternDoc {
            row_labels: p.row_labels().to_vec(),
            col_labels: p.col_labels().to_vec(),
            rows: p.to_bits(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MergeDoc {
    pub label: String,
    pub member_labels: Vec<String>,
}

/// Full square matrix over the active clusters, diagonal included.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixDoc {
    pub labels: Vec<String>,
    pub display_values: Vec<Vec<String>>,
    pub exact_keys: Vec<Vec<ExactKey>>,
}

impl MatrixDoc {
    pub fn new(prox: &ProximityMatrix, leaf_labels: &[String]) -> Self {
        let active = prox.active();
        let cell = |a: ClusterId, b: ClusterId| prox.get(a, b).expect("active cluster");
        MatrixDoc {
            labels: active.iter().map(|&id| cluster_label(id, leaf_labels)).collect(),
            display_values: active
                .iter()
                .map(|&a| active.iter().map(|&b| cell(a, b).display()).collect())
                .collect(),
            exact_keys: active
                .iter()
                .map(|&a| active.iter().map(|&b| cell(a, b).key().into()).collect())
                .collect(),
        }
    }

    /// Display value between two labelled clusters.
    pub fn display(&self, a: &str, b: &str) -> Option<&str> {
        let i = self.labels.iter().position(|l| l == a)?;
        let j = self.labels.iter().position(|l| l == b)?;
        Some(&self.display_values[i][j])
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoundDoc {
    pub round: usize,
    pub min_display: String,
    pub min_key: ExactKey,
    pub merges: Vec<MergeDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<MatrixDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeDoc {
    pub label: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub height: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub height_key: Option<ExactKey>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub round: Option<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<NodeDoc>,
}

impl NodeDoc {
    fn build(d: &Dendrogram, id: ClusterId) -> Self {
        match d.node(id) {
            Some(node) => NodeDoc {
                label: d.label(id),
                height: Some(node.height.display()),
                height_key: Some(node.height.key().into()),
                round: Some(node.round),
                children: node.children.iter().map(|&c| NodeDoc::build(d, c)).collect(),
            },
            None => NodeDoc {
                label: d.label(id),
                height: None,
                height_key: None,
                round: None,
                children: Vec::new(),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DominanceDoc {
    Subject(String),
    Ambiguous(Vec<String>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubjectBitsDoc {
    pub subject: String,
    pub bits: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryDoc {
    pub cluster_label: String,
    pub members: Vec<String>,
    pub dominant_subject: DominanceDoc,
    pub affinity: ExactKey,
    pub affinity_display: String,
    pub subject_bits: Vec<SubjectBitsDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDoc {
    pub entries: Vec<EntryDoc>,
}

impl From<&CandidateObjectReport> for ReportDoc {
    fn from(r: &CandidateObjectReport) -> Self {
        ReportDoc {
            entries: r
                .entries
                .iter()
                .map(|e| EntryDoc {
                    cluster_label: e.cluster_label.clone(),
                    members: e.members.clone(),
                    dominant_subject: match &e.dominant {
                        Dominance::Subject(s) => DominanceDoc::Subject(s.clone()),
                        Dominance::Ambiguous(v) => DominanceDoc::Ambiguous(v.clone()),
                    },
                    affinity: e.affinity.into(),
                    affinity_display: format_ratio(e.affinity),
                    subject_bits: e
                        .subject_bits
                        .iter()
                        .map(|(s, b)| SubjectBitsDoc {
                            subject: s.clone(),
                            bits: *b,
                        })
                        .collect(),
                })
                .collect(),
        }
    }
}

impl ReportDoc {
    pub fn to_json(&self) -> String {
        pretty(self)
    }
}

/// The clustering part of the output: rounds plus the nested tree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructuredRun {
    pub rounds: Vec<RoundDoc>,
    pub dendrogram: NodeDoc,
}

pub fn to_structured(d: &Dendrogram, trace: &[MergeRound]) -> StructuredRun {
    let leaves = d.leaf_labels();
    let rounds = trace
        .iter()
        .map(|r| RoundDoc {
            round: r.round_index,
            min_display: r.min.display(),
            min_key: r.min.key().into(),
            merges: r
                .merges
                .iter()
                .map(|m| MergeDoc {
                    label: cluster_label(m.id, leaves),
                    member_labels: m
                        .constituents
                        .iter()
                        .map(|&c| cluster_label(c, leaves))
                        .collect(),
                })
                .collect(),
            matrix: r.matrix_after.as_ref().map(|p| MatrixDoc::new(p, leaves)),
        })
        .collect();
    StructuredRun {
        rounds,
        dendrogram: NodeDoc::build(d, d.root()),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunDocument {
    pub schema: SchemaDoc,
    pub pattern_matrix: PatternDoc,
    #[serde(flatten)]
    pub run: StructuredRun,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub report: Option<ReportDoc>,
}

impl RunDocument {
    pub fn new(
        schema: &RelationSchema,
        pattern: &PatternMatrix,
        run: &ClusterRun,
        report: Option<&CandidateObjectReport>,
    ) -> Self {
        RunDocument {
            schema: schema.into(),
            pattern_matrix: pattern.into(),
            run: to_structured(&run.dendrogram, &run.trace),
            report: report.map(ReportDoc::from),
        }
    }

    pub fn to_json(&self) -> String {
        pretty(self)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            location: Location::Document {
                line: e.line(),
                column: e.column(),
            },
            message: e.to_string(),
        })
    }
}

fn pretty<T: Serialize>(value: &T) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("document serializes");
    out.push('\n');
    out
}

//! Candidate-object identification for procedural code.
//!
//! Each function of a legacy code base is described by binary relations to
//! the record types it touches (returns it, takes it as an argument, uses
//! its fields). The resulting pattern matrix is clustered with
//! agglomerative single linkage over exact dissimilarities, and the
//! dendrogram is cut into groups that are attributed to the record type
//! they operate on: candidate classes.
//!
//! ```
//! use objident::{
//!     build_pattern_matrix, cluster, derive_relations, label_clusters, ComponentRecord,
//!     Linkage, MergePolicy, Metric,
//! };
//!
//! let schema = derive_relations(&["stack", "queue"]).unwrap();
//! let records = vec![
//!     ComponentRecord::new("push").arg("stack").arg("int").uses("stack"),
//!     ComponentRecord::new("pop").returning("int").arg("stack").uses("stack"),
//!     ComponentRecord::new("enQ").arg("queue").arg("int").uses("queue"),
//!     ComponentRecord::new("deQ").returning("int").arg("queue").uses("queue"),
//! ];
//! let pattern = build_pattern_matrix(&records, &schema).unwrap();
//! let run = cluster(&pattern, Metric::Euclidean, Linkage::Single, MergePolicy::Sequential).unwrap();
//! let two = run.dendrogram.cut_k(2).unwrap();
//! let report = label_clusters(&two, &pattern, &schema).unwrap();
//! assert_eq!(report.entries.len(), 2);
//! ```

pub mod dendrogram;
pub mod engine;
pub mod error;
pub mod feature;
pub mod ingest;
pub mod metrics;
pub mod report;

pub use dendrogram::{Dendrogram, Group, MergeNode, Partition};
pub use engine::{
    cluster, initial_proximity, select_merges, ClusterId, ClusterRun, Clusterer, Linkage, Merge,
    MergePolicy, MergeRound, ProximityMatrix, Selection,
};
pub use error::{Error, ErrorCategory, Location, Result};
pub use feature::{
    build_pattern_matrix, derive_relations, ComponentRecord, PatternMatrix, Relation,
    RelationKind, RelationSchema,
};
pub use ingest::Corpus;
pub use metrics::{
    euclidean, hamming, jaccard, manhattan, simple_matching, ExactDissimilarity, Key, Metric,
};
pub use report::{label_clusters, CandidateEntry, CandidateObjectReport, Dominance};

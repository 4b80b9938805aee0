//! Attributes each group of a partition to the subject type its members
//! relate to most, producing candidate objects.

use std::collections::HashSet;

use crate::dendrogram::Partition;
use crate::error::{Error, Result};
use crate::feature::{PatternMatrix, RelationSchema};
use crate::metrics::Key;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Dominance {
    Subject(String),
    /// Several subjects share the maximal bit count, or the group has no set bits.
    Ambiguous(Vec<String>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateEntry {
    pub cluster_label: String,
    pub members: Vec<String>,
    pub dominant: Dominance,
    /// Share of the group's set bits lying in the dominant subject's columns.
    pub affinity: Key,
    /// Set-bit count per subject type, in schema order.
    pub subject_bits: Vec<(String, u64)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CandidateObjectReport {
    pub entries: Vec<CandidateEntry>,
}

pub fn label_clusters(
    partition: &Partition,
    pattern: &PatternMatrix,
    schema: &RelationSchema,
) -> Result<CandidateObjectReport> {
    if pattern.cols() != schema.len() {
        return Err(Error::InvalidPartition {
            detail: format!(
                "pattern has {} columns but the schema defines {} relations",
                pattern.cols(),
                schema.len()
            ),
        });
    }
    let mut seen = HashSet::new();
    let mut entries = Vec::with_capacity(partition.len());
    let subjects = schema.subject_types();

    for group in &partition.groups {
        let mut counts = vec![0u64; subjects.len()];
        for member in &group.members {
            let row = pattern.row_index(member).ok_or_else(|| Error::InvalidPartition {
                detail: format!("`{member}` is not a row of the pattern matrix"),
            })?;
            if !seen.insert(row) {
                return Err(Error::InvalidPartition {
                    detail: format!("`{member}` appears in more than one group"),
                });
            }
            for (col, &bit) in pattern.row(row).iter().enumerate() {
                if bit {
                    counts[schema.subject_of_column(col)] += 1;
                }
            }
        }

        let total: u64 = counts.iter().sum();
        let best = counts.iter().copied().max().unwrap_or(0);
        let tied: Vec<String> = subjects
            .iter()
            .zip(&counts)
            .filter(|&(_, &c)| c == best)
            .map(|(s, _)| s.clone())
            .collect();
        let (dominant, affinity) = if total == 0 {
            (Dominance::Ambiguous(tied), Key::from_integer(0))
        } else if tied.len() > 1 {
            (Dominance::Ambiguous(tied), Key::new(best, total))
        } else {
            (
                Dominance::Subject(tied.into_iter().next().expect("one subject")),
                Key::new(best, total),
            )
        };

        let mut members = group.members.clone();
        members.sort_by_key(|m| pattern.row_index(m));
        entries.push(CandidateEntry {
            cluster_label: group.label.clone(),
            members,
            dominant,
            affinity,
            subject_bits: subjects.iter().cloned().zip(counts).collect(),
        });
    }

    if seen.len() != pattern.rows() {
        let missing: Vec<&str> = (0..pattern.rows())
            .filter(|r| !seen.contains(r))
            .map(|r| pattern.row_labels()[r].as_str())
            .collect();
        return Err(Error::InvalidPartition {
            detail: format!("partition does not cover {}", missing.join(", ")),
        });
    }
    Ok(CandidateObjectReport { entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dendrogram::Group;
    use crate::engine::ClusterId;
    use crate::feature::{build_pattern_matrix, derive_relations, ComponentRecord};

    fn setup() -> (PatternMatrix, RelationSchema) {
        let schema = derive_relations(&["a", "b"]).unwrap();
        let records = vec![
            ComponentRecord::new("f").returning("a").uses("a"),
            ComponentRecord::new("g").arg("a").arg("b"),
            ComponentRecord::new("h").arg("b").uses("b"),
            ComponentRecord::new("z").arg("int"),
        ];
        (build_pattern_matrix(&records, &schema).unwrap(), schema)
    }

    fn group(label: &str, members: &[&str]) -> Group {
        Group {
            id: ClusterId(0),
            label: label.into(),
            members: members.iter().map(|s| s.to_string()).collect(),
            member_ids: vec![],
        }
    }

    #[test]
    fn dominance_and_ties() {
        let (p, s) = setup();
        let part = Partition {
            groups: vec![group("C1", &["f"]), group("C2", &["g"]), group("C3", &["h", "z"])],
        };
        let r = label_clusters(&part, &p, &s).unwrap();
        assert_eq!(r.entries[0].dominant, Dominance::Subject("a".into()));
        assert_eq!(r.entries[0].affinity, Key::from_integer(1));
        assert_eq!(
            r.entries[1].dominant,
            Dominance::Ambiguous(vec!["a".into(), "b".into()])
        );
        assert_eq!(r.entries[1].affinity, Key::new(1, 2));
        assert_eq!(r.entries[2].dominant, Dominance::Subject("b".into()));
        assert_eq!(r.entries[2].subject_bits, vec![("a".into(), 0), ("b".into(), 2)]);
    }

    #[test]
    fn all_zero_group_is_ambiguous() {
        let (p, s) = setup();
        let part = Partition {
            groups: vec![group("C1", &["f", "g", "h"]), group("z", &["z"])],
        };
        let r = label_clusters(&part, &p, &s).unwrap();
        assert!(matches!(r.entries[1].dominant, Dominance::Ambiguous(_)));
        assert_eq!(r.entries[1].affinity, Key::from_integer(0));
    }

    #[test]
    fn member_order_does_not_matter() {
        let (p, s) = setup();
        let a = Partition {
            groups: vec![group("C1", &["f", "g"]), group("C2", &["h", "z"])],
        };
        let b = Partition {
            groups: vec![group("C1", &["g", "f"]), group("C2", &["z", "h"])],
        };
        assert_eq!(label_clusters(&a, &p, &s).unwrap(), label_clusters(&b, &p, &s).unwrap());
    }

    #[test]
    fn mismatched_partitions_rejected() {
        let (p, s) = setup();
        let missing = Partition {
            groups: vec![group("C1", &["f", "g", "h"])],
        };
        assert!(matches!(
            label_clusters(&missing, &p, &s),
            Err(Error::InvalidPartition { .. })
        ));
        let unknown = Partition {
            groups: vec![group("C1", &["f", "g", "h", "z", "q"])],
        };
        assert!(label_clusters(&unknown, &p, &s).is_err());
        let twice = Partition {
            groups: vec![group("C1", &["f", "g"]), group("C2", &["g", "h", "z"])],
        };
        assert!(label_clusters(&twice, &p, &s).is_err());
    }
}

//! Test-only oracles and frozen reference tables.
//!
//! Nothing here calls into the crate's metric or engine code: distances are
//! recomputed from raw 0/1 rows, and single linkage is recomputed as a
//! minimum over all cross-cluster member pairs.

#![allow(dead_code)]

use std::cmp::Ordering;
use std::path::PathBuf;

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

pub fn read_fixture(name: &str) -> String {
    std::fs::read_to_string(fixture(name)).unwrap()
}

pub const STACK_ROWS: [&str; 10] = [
    "initRef",
    "initExec",
    "isEmptyRef",
    "isEmptyExec",
    "ePush",
    "rPush",
    "ePop",
    "rPop",
    "traRef",
    "traExec",
];

/// Reference pattern matrix for the reference/execution stack functions.
pub const STACK_PATTERN: [[u8; 6]; 10] = [
    [0, 1, 0, 0, 0, 1],
    [1, 0, 0, 0, 1, 0],
    [0, 0, 0, 1, 0, 1],
    [0, 0, 1, 0, 1, 0],
    [0, 0, 1, 0, 1, 0],
    [0, 0, 0, 1, 0, 1],
    [0, 0, 1, 0, 1, 0],
    [0, 0, 0, 1, 0, 1],
    [0, 1, 0, 1, 0, 1],
    [1, 0, 1, 0, 1, 0],
];

pub const MODULAR_ROWS: [&str; 8] = [
    "initStack",
    "initQ",
    "isEmptyStack",
    "isEmptyQ",
    "push",
    "enQ",
    "pop",
    "deQ",
];

/// Reference pattern matrix for the stack/queue module.
pub const MODULAR_PATTERN: [[u8; 6]; 8] = [
    [1, 0, 0, 0, 1, 0],
    [0, 1, 0, 0, 0, 1],
    [0, 0, 1, 0, 1, 0],
    [0, 0, 0, 1, 0, 1],
    [0, 0, 1, 0, 1, 0],
    [0, 0, 0, 1, 0, 1],
    [0, 0, 1, 0, 1, 0],
    [0, 0, 0, 1, 0, 1],
];

/// Reference first proximity matrix, lower triangle, rows in STACK_ROWS order.
pub const PRINTED_FIRST_MATRIX: [&[&str]; 10] = [
    &[],
    &["2.00"],
    &["1.41", "2.00"],
    &["2.00", "1.41", "2.00"],
    &["1.41", "1.41", "2.00", "0.00"],
    &["1.41", "2.00", "0.00", "2.00", "2.00"],
    &["2.00", "1.41", "2.00", "0.00", "0.00", "2.00"],
    &["1.41", "2.00", "0.00", "2.00", "2.00", "0.00", "2.00"],
    &["1.00", "2.24", "2.00", "2.24", "2.24", "1.00", "2.24", "1.00"],
    &["2.24", "1.00", "2.24", "1.00", "1.00", "2.24", "1.00", "2.24", "2.45"],
];

/// Reference later matrices: (row labels, lower triangle).
pub const PRINTED_SECOND_MATRIX: (&[&str], &[&[&str]]) = (
    &["initRef", "initExec", "C1", "C2", "traRef", "traExec"],
    &[
        &[],
        &["2.00"],
        &["1.41", "2.00"],
        &["1.41", "1.41", "2.00"],
        &["1.00", "2.24", "1.00", "2.24"],
        &["2.24", "1.00", "2.24", "1.00", "2.45"],
    ],
);

pub const PRINTED_THIRD_MATRIX: (&[&str], &[&[&str]]) = (
    &["C1", "C2", "C3", "C4"],
    &[&[], &["2.00"], &["1.00", "1.41"], &["2.00", "1.00", "2.00"]],
);

pub const PRINTED_FOURTH_MATRIX: (&[&str], &[&[&str]]) = (&["C5", "C6"], &[&[], &["1.41"]]);

/// Equation for the Euclidean distance, evaluated literally in floating point.
pub fn euclid_f64(a: &[u8], b: &[u8]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(&x, &y)| {
            let d = f64::from(x) - f64::from(y);
            d * d
        })
        .sum::<f64>()
        .sqrt()
}

/// Round half-up to two decimals and format.
pub fn two_decimals(x: f64) -> String {
    format!("{:.2}", (x * 100.0 + 0.5 + 1e-9).floor() / 100.0)
}

/// An unreduced fraction compared by cross-multiplication.
#[derive(Debug, Clone, Copy)]
pub struct Frac(pub u64, pub u64);

impl Frac {
    pub fn cmp(self, other: Frac) -> Ordering {
        (u128::from(self.0) * u128::from(other.1)).cmp(&(u128::from(other.0) * u128::from(self.1)))
    }

    pub fn eq(self, other: Frac) -> bool {
        self.cmp(other) == Ordering::Equal
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleMetric {
    EuclidSquared,
    Manhattan,
    Smc,
    Jaccard,
}

pub const ORACLE_METRICS: [OracleMetric; 4] = [
    OracleMetric::EuclidSquared,
    OracleMetric::Manhattan,
    OracleMetric::Smc,
    OracleMetric::Jaccard,
];

/// Contingency counts (both set, mismatching, both clear).
pub fn counts(a: &[u8], b: &[u8]) -> (u64, u64, u64) {
    let mut both = 0;
    let mut diff = 0;
    let mut neither = 0;
    for (&x, &y) in a.iter().zip(b) {
        match (x, y) {
            (1, 1) => both += 1,
            (0, 0) => neither += 1,
            _ => diff += 1,
        }
    }
    (both, diff, neither)
}

pub fn oracle_key(metric: OracleMetric, a: &[u8], b: &[u8]) -> Frac {
    assert_eq!(a.len(), b.len());
    match metric {
        OracleMetric::EuclidSquared => {
            Frac(a.iter().zip(b).map(|(&x, &y)| (i64::from(x) - i64::from(y)).pow(2) as u64).sum(), 1)
        }
        OracleMetric::Manhattan => {
            Frac(a.iter().zip(b).map(|(&x, &y)| (i64::from(x) - i64::from(y)).unsigned_abs()).sum(), 1)
        }
        OracleMetric::Smc => {
            let (_, diff, _) = counts(a, b);
            Frac(diff, a.len() as u64)
        }
        OracleMetric::Jaccard => {
            let (both, diff, _) = counts(a, b);
            if both + diff == 0 {
                Frac(0, 1)
            } else {
                Frac(diff, both + diff)
            }
        }
    }
}

/// Single linkage from scratch: minimum over every cross pair.
pub fn brute_link(rows: &[Vec<u8>], metric: OracleMetric, left: &[usize], right: &[usize]) -> Frac {
    let mut best: Option<Frac> = None;
    for &p in left {
        for &q in right {
            let d = oracle_key(metric, &rows[p], &rows[q]);
            if best.is_none_or(|b| d.cmp(b) == Ordering::Less) {
                best = Some(d);
            }
        }
    }
    best.expect("non-empty clusters")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleMerge {
    pub new_id: usize,
    pub left: usize,
    pub right: usize,
    /// Leaves of the merged cluster, ascending.
    pub members: Vec<usize>,
}

/// Classic SAHN with every linkage recomputed from member pairs. Ties go to
/// the lexicographically smallest (id, id) pair. Returns the merges and
/// whether every step had a unique minimum.
pub fn brute_sahn(rows: &[Vec<u8>], metric: OracleMetric) -> (Vec<OracleMerge>, Vec<Frac>, bool) {
    let n = rows.len();
    let mut clusters: Vec<(usize, Vec<usize>)> = (0..n).map(|i| (i, vec![i])).collect();
    let mut merges = Vec::new();
    let mut heights = Vec::new();
    let mut unique = true;
    let mut next = n;
    while clusters.len() > 1 {
        let mut best: Option<(Frac, usize, usize)> = None;
        let mut ties = 0;
        for a in 0..clusters.len() {
            for b in a + 1..clusters.len() {
                let d = brute_link(rows, metric, &clusters[a].1, &clusters[b].1);
                match best {
                    None => {
                        best = Some((d, a, b));
                        ties = 1;
                    }
                    Some((bd, _, _)) => match d.cmp(bd) {
                        Ordering::Less => {
                            best = Some((d, a, b));
                            ties = 1;
                        }
                        Ordering::Equal => ties += 1,
                        Ordering::Greater => {}
                    },
                }
            }
        }
        let (d, a, b) = best.unwrap();
        if ties > 1 {
            unique = false;
        }
        let (ida, ma) = clusters[a].clone();
        let (idb, mb) = clusters[b].clone();
        let mut members: Vec<usize> = ma.into_iter().chain(mb).collect();
        members.sort_unstable();
        clusters.remove(b);
        clusters.remove(a);
        clusters.push((next, members.clone()));
        merges.push(OracleMerge {
            new_id: next,
            left: ida,
            right: idb,
            members,
        });
        heights.push(d);
        next += 1;
    }
    (merges, heights, unique)
}

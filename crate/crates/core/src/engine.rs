//! Agglomerative single-linkage clustering over exact proximity matrices.
//!
//! Clusters are identified by [`ClusterId`]: `0..n` are the original
//! patterns, merged clusters take `n, n+1, ...` in creation order and are
//! labelled `C1, C2, ...` accordingly.
//!
//! Two merge policies are available. [`MergePolicy::Sequential`] is the
//! classic SAHN loop: one minimum pair per step, ties broken by the
//! lexicographically smallest `(i, j)` id pair. [`MergePolicy::PaperRepro`]
//! merges several clusters per round: at dissimilarity zero every connected
//! component of the zero graph collapses into one cluster, at any other
//! minimum a greedy left-to-right scan picks disjoint minimum pairs.

use std::fmt;
use std::str::FromStr;

use crate::dendrogram::{Dendrogram, MergeNode};
use crate::error::{Error, Result};
use crate::feature::PatternMatrix;
use crate::metrics::{ExactDissimilarity, Key, Metric};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClusterId(pub usize);

impl ClusterId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for ClusterId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// Display label of a cluster given the number of original patterns.
pub fn cluster_label(id: ClusterId, leaf_labels: &[String]) -> String {
    match leaf_labels.get(id.0) {
        Some(label) => label.clone(),
        None => format!("C{}", id.0 - leaf_labels.len() + 1),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum MergePolicy {
    #[default]
    Sequential,
    PaperRepro,
}

impl MergePolicy {
    pub fn name(self) -> &'static str {
        match self {
            MergePolicy::Sequential => "sequential",
            MergePolicy::PaperRepro => "paper",
        }
    }
}

impl FromStr for MergePolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "sequential" => Ok(MergePolicy::Sequential),
            "paper" | "paper_repro" | "paper-repro" => Ok(MergePolicy::PaperRepro),
            _ => Err(Error::Config(format!(
                "unknown policy `{s}` (expected sequential or paper)"
            ))),
        }
    }
}

/// Cluster-to-cluster linkage rule. Only single linkage exists today.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Linkage {
    #[default]
    Single,
}

impl Linkage {
    pub fn name(self) -> &'static str {
        "single"
    }
}

impl FromStr for Linkage {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.eq_ignore_ascii_case("single") {
            Ok(Linkage::Single)
        } else {
            Err(Error::Config(format!("unknown linkage `{s}` (expected single)")))
        }
    }
}

/// Symmetric dissimilarities between the active clusters.
///
/// Stored as a condensed upper triangle over `active`, which is kept in
/// ascending id order, so the storage order is the lexicographic `(i, j)`
/// order used for tie scanning.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProximityMatrix {
    metric: Metric,
    active: Vec<ClusterId>,
    keys: Vec<Key>,
    next_id: usize,
}

fn condensed_index(m: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < m);
    i * (2 * m - i - 1) / 2 + (j - i - 1)
}

impl ProximityMatrix {
    pub fn metric(&self) -> Metric {
        self.metric
    }

    pub fn active(&self) -> &[ClusterId] {
        &self.active
    }

    pub fn len(&self) -> usize {
        self.active.len()
    }

    pub fn is_empty(&self) -> bool {
        self.active.is_empty()
    }

    /// Smallest id that has never been used.
    pub fn next_id(&self) -> ClusterId {
        ClusterId(self.next_id)
    }

    fn position(&self, id: ClusterId) -> Option<usize> {
        self.active.binary_search(&id).ok()
    }

    fn key_at(&self, i: usize, j: usize) -> Key {
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        self.keys[condensed_index(self.active.len(), i, j)]
    }

    /// Dissimilarity between two active clusters; zero on the diagonal.
    pub fn get(&self, a: ClusterId, b: ClusterId) -> Option<ExactDissimilarity> {
        let (i, j) = (self.position(a)?, self.position(b)?);
        if i == j {
            return Some(ExactDissimilarity::zero(self.metric));
        }
        Some(ExactDissimilarity::new(self.metric, self.key_at(i, j)))
    }

    /// All stored cells in lexicographic `(i, j)` order.
    pub fn cells(&self) -> impl Iterator<Item = (ClusterId, ClusterId, ExactDissimilarity)> + '_ {
        let m = self.active.len();
        (0..m)
            .flat_map(move |i| (i + 1..m).map(move |j| (i, j)))
            .zip(&self.keys)
            .map(|((i, j), &k)| {
                (
                    self.active[i],
                    self.active[j],
                    ExactDissimilarity::new(self.metric, k),
                )
            })
    }

    pub fn min(&self) -> Option<ExactDissimilarity> {
        self.keys
            .iter()
            .min()
            .map(|&k| ExactDissimilarity::new(self.metric, k))
    }

    /// Single-linkage update: replaces `group` by `new_id`, whose distance to
    /// every other active cluster is the minimum over the group's members.
    pub fn linkage_update(&self, group: &[ClusterId], new_id: ClusterId) -> Result<Self> {
        if group.len() < 2 {
            return Err(Error::DegenerateGroup(group.len()));
        }
        if new_id.0 < self.next_id {
            return Err(Error::StaleClusterId(new_id.0));
        }
        let mut in_group = vec![false; self.active.len()];
        let mut member_pos = Vec::with_capacity(group.len());
        for &id in group {
            let p = self.position(id).ok_or(Error::InactiveCluster(id.0))?;
            if in_group[p] {
                return Err(Error::InactiveCluster(id.0));
            }
            in_group[p] = true;
            member_pos.push(p);
        }

        let rest: Vec<usize> = (0..self.active.len()).filter(|&p| !in_group[p]).collect();
        let m = rest.len() + 1;
        let mut keys = Vec::with_capacity(m * (m - 1) / 2);
        for (a, &pa) in rest.iter().enumerate() {
            for &pb in &rest[a + 1..] {
                keys.push(self.key_at(pa, pb));
            }
            let linked = member_pos
                .iter()
                .map(|&pm| self.key_at(pa, pm))
                .min()
                .expect("group has members");
            keys.push(linked);
        }

        let mut active: Vec<ClusterId> = rest.iter().map(|&p| self.active[p]).collect();
        active.push(new_id);
        Ok(ProximityMatrix {
            metric: self.metric,
            active,
            keys,
            next_id: new_id.0 + 1,
        })
    }
}

/// Pairwise dissimilarities between all pattern rows.
pub fn initial_proximity(pattern: &PatternMatrix, metric: Metric) -> Result<ProximityMatrix> {
    let n = pattern.rows();
    if n < 2 {
        return Err(Error::TooFewClusters(n));
    }
    let mut keys = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            keys.push(metric.dissimilarity(pattern.row(i), pattern.row(j))?.key());
        }
    }
    Ok(ProximityMatrix {
        metric,
        active: (0..n).map(ClusterId).collect(),
        keys,
        next_id: n,
    })
}

/// Groups chosen for one round, all at dissimilarity `min`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Selection {
    pub min: ExactDissimilarity,
    /// Disjoint groups, each sorted ascending and of size >= 2.
    pub groups: Vec<Vec<ClusterId>>,
}

pub fn select_merges(prox: &ProximityMatrix, policy: MergePolicy) -> Result<Selection> {
    let m = prox.len();
    if m < 2 {
        return Err(Error::TooFewClusters(m));
    }
    let min_key = *prox.keys.iter().min().expect("m >= 2");
    let min = ExactDissimilarity::new(prox.metric, min_key);
    let minimal_pairs = || {
        (0..m)
            .flat_map(move |i| (i + 1..m).map(move |j| (i, j)))
            .zip(&prox.keys)
            .filter(move |(_, &k)| k == min_key)
            .map(|(p, _)| p)
    };

    let groups = match policy {
        MergePolicy::Sequential => {
            let (i, j) = minimal_pairs().next().expect("minimum exists");
            vec![vec![prox.active[i], prox.active[j]]]
        }
        MergePolicy::PaperRepro if min.is_zero() => {
            let mut parent: Vec<usize> = (0..m).collect();
            fn find(parent: &mut [usize], mut x: usize) -> usize {
                while parent[x] != x {
                    parent[x] = parent[parent[x]];
                    x = parent[x];
                }
                x
            }
            for (i, j) in minimal_pairs() {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    // Keep the smallest position as root.
                    parent[ri.max(rj)] = ri.min(rj);
                }
            }
            let mut by_root: Vec<Vec<ClusterId>> = vec![Vec::new(); m];
            for p in 0..m {
                let r = find(&mut parent, p);
                by_root[r].push(prox.active[p]);
            }
            // Roots are component minima, so position order is smallest-member order.
            by_root.into_iter().filter(|g| g.len() >= 2).collect()
        }
        MergePolicy::PaperRepro => {
            let mut used = vec![false; m];
            let mut groups = Vec::new();
            for (i, j) in minimal_pairs() {
                if !used[i] && !used[j] {
                    used[i] = true;
                    used[j] = true;
                    groups.push(vec![prox.active[i], prox.active[j]]);
                }
            }
            groups
        }
    };
    Ok(Selection { min, groups })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Merge {
    pub id: ClusterId,
    pub constituents: Vec<ClusterId>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MergeRound {
    /// 1-based.
    pub round_index: usize,
    pub min: ExactDissimilarity,
    pub merges: Vec<Merge>,
    /// Matrix after every merge of the round; `None` when snapshots are off.
    pub matrix_after: Option<ProximityMatrix>,
}

/// Output of a clustering run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClusterRun {
    pub dendrogram: Dendrogram,
    pub trace: Vec<MergeRound>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Clusterer {
    metric: Metric,
    linkage: Linkage,
    policy: MergePolicy,
    snapshots: bool,
}

impl Default for Clusterer {
    fn default() -> Self {
        Clusterer {
            metric: Metric::default(),
            linkage: Linkage::default(),
            policy: MergePolicy::default(),
            snapshots: true,
        }
    }
}

impl Clusterer {
    pub fn new(metric: Metric) -> Self {
        Clusterer {
            metric,
            ..Default::default()
        }
    }

    pub fn linkage(mut self, linkage: Linkage) -> Self {
        self.linkage = linkage;
        self
    }

    pub fn policy(mut self, policy: MergePolicy) -> Self {
        self.policy = policy;
        self
    }

    /// Whether each round keeps a copy of the matrix. Snapshots cost
    /// O(n^2) memory per round; large inputs may want them off.
    pub fn snapshots(mut self, on: bool) -> Self {
        self.snapshots = on;
        self
    }

    pub fn run(&self, pattern: &PatternMatrix) -> Result<ClusterRun> {
        let Linkage::Single = self.linkage;
        let mut prox = initial_proximity(pattern, self.metric)?;
        let mut nodes = Vec::with_capacity(pattern.rows() - 1);
        let mut trace = Vec::new();

        while prox.len() > 1 {
            let round_index = trace.len() + 1;
            let selection = select_merges(&prox, self.policy)?;
            let mut merges = Vec::with_capacity(selection.groups.len());
            for group in selection.groups {
                let id = prox.next_id();
                prox = prox.linkage_update(&group, id)?;
                nodes.push(MergeNode {
                    id,
                    children: group.clone(),
                    height: selection.min,
                    round: round_index,
                });
                merges.push(Merge {
                    id,
                    constituents: group,
                });
            }
            trace.push(MergeRound {
                round_index,
                min: selection.min,
                merges,
                matrix_after: self.snapshots.then(|| prox.clone()),
            });
        }

        Ok(ClusterRun {
            dendrogram: Dendrogram::new(pattern.row_labels().to_vec(), nodes),
            trace,
        })
    }
}

/// Runs the whole agglomeration with matrix snapshots on.
pub fn cluster(
    pattern: &PatternMatrix,
    metric: Metric,
    linkage: Linkage,
    policy: MergePolicy,
) -> Result<ClusterRun> {
    Clusterer::new(metric).linkage(linkage).policy(policy).run(pattern)
}

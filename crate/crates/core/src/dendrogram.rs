//! Merge trees, flat cuts and text renderings.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::engine::{cluster_label, ClusterId};
use crate::error::{Error, Result};
use crate::metrics::ExactDissimilarity;

/// An internal node. Closure merges may have more than two children.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MergeNode {
    pub id: ClusterId,
    /// Ascending ids.
    pub children: Vec<ClusterId>,
    pub height: ExactDissimilarity,
    pub round: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dendrogram {
    leaves: Vec<String>,
    /// `nodes[k]` has id `leaves.len() + k`.
    nodes: Vec<MergeNode>,
}

impl Dendrogram {
    /// Nodes must be in creation order with consecutive ids starting at
    /// `leaves.len()`, and every node must be a child of exactly one later
    /// node except the last.
    pub fn new(leaves: Vec<String>, nodes: Vec<MergeNode>) -> Self {
        debug_assert!(nodes
            .iter()
            .enumerate()
            .all(|(k, node)| node.id.0 == leaves.len() + k));
        Dendrogram { leaves, nodes }
    }

    pub fn leaf_count(&self) -> usize {
        self.leaves.len()
    }

    pub fn leaf_labels(&self) -> &[String] {
        &self.leaves
    }

    pub fn merges(&self) -> &[MergeNode] {
        &self.nodes
    }

    pub fn node(&self, id: ClusterId) -> Option<&MergeNode> {
        id.0.checked_sub(self.leaves.len())
            .and_then(|k| self.nodes.get(k))
    }

    pub fn root(&self) -> ClusterId {
        self.nodes.last().map_or(ClusterId(0), |n| n.id)
    }

    pub fn label(&self, id: ClusterId) -> String {
        cluster_label(id, &self.leaves)
    }

    pub fn height(&self, id: ClusterId) -> Option<ExactDissimilarity> {
        self.node(id).map(|n| n.height)
    }

    /// Children of an internal node (empty for leaves).
    pub fn children(&self, id: ClusterId) -> &[ClusterId] {
        self.node(id).map_or(&[], |n| n.children.as_slice())
    }

    /// Leaf ids below `id`, ascending.
    pub fn members(&self, id: ClusterId) -> Vec<ClusterId> {
        let mut out = Vec::new();
        let mut stack = vec![id];
        while let Some(c) = stack.pop() {
            match self.node(c) {
                Some(n) => stack.extend_from_slice(&n.children),
                None => out.push(c),
            }
        }
        out.sort_unstable();
        out
    }

    fn min_leaf(&self, id: ClusterId) -> ClusterId {
        match self.node(id) {
            Some(n) => n
                .children
                .iter()
                .map(|&c| self.min_leaf(c))
                .min()
                .expect("internal node has children"),
            None => id,
        }
    }

    fn group(&self, id: ClusterId) -> Group {
        let member_ids = self.members(id);
        Group {
            id,
            label: self.label(id),
            members: member_ids.iter().map(|&m| self.label(m)).collect(),
            member_ids,
        }
    }

    fn partition_of(&self, roots: impl IntoIterator<Item = ClusterId>) -> Partition {
        let mut groups: Vec<Group> = roots.into_iter().map(|r| self.group(r)).collect();
        groups.sort_by_key(|g| g.member_ids[0]);
        Partition { groups }
    }

    /// Undoes merges from the most recent one downward until `k` groups
    /// remain. Fails when a multi-way merge jumps past `k`.
    pub fn cut_k(&self, k: usize) -> Result<Partition> {
        let n = self.leaf_count();
        if k == 0 || k > n {
            return Err(Error::CutOutOfRange { k, leaves: n });
        }
        let mut roots = BTreeSet::from([self.root()]);
        for node in self.nodes.iter().rev() {
            if roots.len() >= k {
                break;
            }
            let below = roots.len();
            roots.remove(&node.id);
            roots.extend(node.children.iter().copied());
            if roots.len() > k {
                return Err(Error::CutUnattainable {
                    k,
                    below,
                    above: roots.len(),
                });
            }
        }
        Ok(self.partition_of(roots))
    }

    /// Maximal subtrees whose merge heights are all at most `h`, compared on
    /// the display scale (square-rooted for Euclidean).
    pub fn cut_height(&self, h: f64) -> Result<Partition> {
        if !h.is_finite() || h < 0.0 {
            return Err(Error::NegativeHeight(h));
        }
        let mut roots = Vec::new();
        let mut stack = vec![self.root()];
        while let Some(id) = stack.pop() {
            if self.max_height_below(id).is_none_or(|m| m <= h) {
                roots.push(id);
            } else {
                stack.extend_from_slice(self.children(id));
            }
        }
        Ok(self.partition_of(roots))
    }

    fn max_height_below(&self, id: ClusterId) -> Option<f64> {
        let node = self.node(id)?;
        Some(
            node.children
                .iter()
                .filter_map(|&c| self.max_height_below(c))
                .fold(node.height.value(), f64::max),
        )
    }

    /// Children in the order the tree is drawn: by smallest leaf id.
    pub fn layout_children(&self, id: ClusterId) -> Vec<ClusterId> {
        let mut children = self.children(id).to_vec();
        children.sort_by_key(|&c| self.min_leaf(c));
        children
    }

    fn describe(&self, id: ClusterId) -> String {
        match self.node(id) {
            Some(node) => {
                let parts: Vec<String> = node.children.iter().map(|&c| self.label(c)).collect();
                format!(
                    "{} = {}  [height {}, round {}]",
                    self.label(id),
                    parts.join(" + "),
                    node.height.display(),
                    node.round
                )
            }
            None => self.label(id),
        }
    }

    /// Box-drawing tree, root first, leaves in id order.
    pub fn render_ascii(&self) -> String {
        let mut out = String::new();
        let root = self.root();
        out.push_str(&self.describe(root));
        out.push('\n');
        self.ascii_children(root, "", &mut out);
        out
    }

    fn ascii_children(&self, id: ClusterId, prefix: &str, out: &mut String) {
        let children = self.layout_children(id);
        for (i, &child) in children.iter().enumerate() {
            let last = i + 1 == children.len();
            let (branch, indent) = if last { ("└── ", "    ") } else { ("├── ", "│   ") };
            let _ = writeln!(out, "{prefix}{branch}{}", self.describe(child));
            self.ascii_children(child, &format!("{prefix}{indent}"), out);
        }
    }

    /// Graphviz digraph with one node per leaf and merge, edges child to parent.
    pub fn render_dot(&self) -> String {
        let mut out = String::from("digraph dendrogram {\n    rankdir=BT;\n    node [shape=box];\n");
        for (i, label) in self.leaves.iter().enumerate() {
            let _ = writeln!(out, "    n{i} [label=\"{}\"];", escape_dot(label));
        }
        for node in &self.nodes {
            let _ = writeln!(
                out,
                "    n{} [label=\"{}\\n{}\", shape=ellipse];",
                node.id.0,
                escape_dot(&self.label(node.id)),
                node.height.display()
            );
        }
        for node in &self.nodes {
            for child in &node.children {
                let _ = writeln!(out, "    n{} -> n{};", child.0, node.id.0);
            }
        }
        out.push_str("}\n");
        out
    }
}

fn escape_dot(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// One flat group: the subtree rooted at `id`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Group {
    pub id: ClusterId,
    pub label: String,
    pub members: Vec<String>,
    pub member_ids: Vec<ClusterId>,
}

/// Disjoint groups covering every leaf, ordered by smallest member id.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Partition {
    pub groups: Vec<Group>,
}

impl Partition {
    pub fn len(&self) -> usize {
        self.groups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }

    /// Member label sets, for order-insensitive comparison.
    pub fn as_sets(&self) -> BTreeSet<BTreeSet<String>> {
        self.groups
            .iter()
            .map(|g| g.members.iter().cloned().collect())
            .collect()
    }
}

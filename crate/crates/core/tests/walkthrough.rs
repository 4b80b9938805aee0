mod common;

use std::collections::BTreeSet;

use objident::ingest::document::RunDocument;
use objident::ingest::parse_components;
use objident::{
    build_pattern_matrix, cluster, derive_relations, initial_proximity, select_merges, ClusterId,
    ClusterRun, Key, Linkage, MergePolicy, Metric, PatternMatrix, RelationSchema,
};

use common::*;

fn stacks() -> (RelationSchema, PatternMatrix) {
    let corpus = parse_components(&read_fixture("stacks.components.json")).unwrap();
    let schema = derive_relations(&corpus.subject_types).unwrap();
    let pattern = build_pattern_matrix(&corpus.components, &schema).unwrap();
    (schema, pattern)
}

fn grouped_run() -> ClusterRun {
    let (_, p) = stacks();
    cluster(&p, Metric::Euclidean, Linkage::Single, MergePolicy::PaperRepro).unwrap()
}

fn set(names: &[&str]) -> BTreeSet<String> {
    names.iter().map(|s| s.to_string()).collect()
}

fn sets(groups: &[&[&str]]) -> BTreeSet<BTreeSet<String>> {
    groups.iter().map(|g| set(g)).collect()
}

const C1: &[&str] = &["isEmptyRef", "rPush", "rPop"];
const C2: &[&str] = &["isEmptyExec", "ePush", "ePop"];
const C3: &[&str] = &["initRef", "traRef"];
const C4: &[&str] = &["initExec", "traExec"];
const C5: &[&str] = &["initRef", "isEmptyRef", "rPush", "rPop", "traRef"];
const C6: &[&str] = &["initExec", "isEmptyExec", "ePush", "ePop", "traExec"];

#[test]
fn first_matrix_spot_values() {
    let (_, p) = stacks();
    let prox = initial_proximity(&p, Metric::Euclidean).unwrap();
    let d = |a: &str, b: &str| {
        let (i, j) = (p.row_index(a).unwrap(), p.row_index(b).unwrap());
        prox.get(ClusterId(i), ClusterId(j)).unwrap()
    };
    assert_eq!(d("isEmptyRef", "rPush").display(), "0.00");
    assert_eq!(d("traRef", "initRef").display(), "1.00");
    let e2 = d("traRef", "isEmptyRef");
    assert_eq!(e2.key(), Key::from_integer(1));
    assert_eq!(e2.display(), "1.00");
}

#[test]
fn grouped_selection_rounds() {
    let (_, p) = stacks();
    let prox = initial_proximity(&p, Metric::Euclidean).unwrap();
    let first = select_merges(&prox, MergePolicy::PaperRepro).unwrap();
    assert!(first.min.is_zero());
    let labels: Vec<Vec<&str>> = first
        .groups
        .iter()
        .map(|g| g.iter().map(|id| p.row_labels()[id.0].as_str()).collect())
        .collect();
    assert_eq!(labels, [C1.to_vec(), C2.to_vec()]);

    let seq = select_merges(&prox, MergePolicy::Sequential).unwrap();
    assert_eq!(seq.groups, vec![vec![ClusterId(2), ClusterId(5)]]);
}

#[test]
fn linkage_values_after_first_round() {
    let run = grouped_run();
    let snap = run.trace[0].matrix_after.as_ref().unwrap();
    let c1 = ClusterId(10);
    assert_eq!(run.dendrogram.label(c1), "C1");
    assert_eq!(snap.get(c1, ClusterId(0)).unwrap().display(), "1.41");
    assert_eq!(snap.get(c1, ClusterId(8)).unwrap().display(), "1.00");
    let after_second = run.trace[1].matrix_after.as_ref().unwrap();
    assert_eq!(after_second.get(ClusterId(12), ClusterId(13)).unwrap().display(), "2.00");
}

#[test]
fn sequential_matches_brute_force_sahn() {
    let (_, p) = stacks();
    let run = cluster(&p, Metric::Euclidean, Linkage::Single, MergePolicy::Sequential).unwrap();
    assert_eq!(run.trace.len(), 9);
    assert!(run.trace.iter().all(|r| r.merges.len() == 1));
    let rows: Vec<Vec<u8>> = STACK_PATTERN.iter().map(|r| r.to_vec()).collect();
    let (oracle, _, _) = brute_sahn(&rows, OracleMetric::EuclidSquared);
    for (node, om) in run.dendrogram.merges().iter().zip(&oracle) {
        assert_eq!(node.children, [ClusterId(om.left), ClusterId(om.right)]);
    }
    // The oracle's root joins the two stack families.
    let root = &oracle[8];
    let members_of = |id: usize| -> BTreeSet<String> {
        oracle
            .iter()
            .find(|m| m.new_id == id)
            .map(|m| m.members.iter().map(|&i| STACK_ROWS[i].to_string()).collect())
            .unwrap_or_else(|| [STACK_ROWS[id].to_string()].into())
    };
    let oracle_split: BTreeSet<_> = [members_of(root.left), members_of(root.right)].into();
    assert_eq!(oracle_split, sets(&[C5, C6]));
    let pre_root = run.dendrogram.cut_k(2).unwrap();
    assert_eq!(pre_root.as_sets(), sets(&[C5, C6]));
    assert_eq!(run.dendrogram.merges().len(), 9);
}

#[test]
fn cuts_of_the_stack_tree() {
    let d = grouped_run().dendrogram;
    assert_eq!(d.cut_k(1).unwrap().as_sets(), sets(&[&STACK_ROWS]));
    assert_eq!(d.cut_k(2).unwrap().as_sets(), sets(&[C5, C6]));
    let four = d.cut_k(4).unwrap();
    assert_eq!(four.as_sets(), sets(&[C1, C3, C2, C4]));
    let order: Vec<&str> = four.groups.iter().map(|g| g.label.as_str()).collect();
    assert_eq!(order, ["C3", "C4", "C1", "C2"]);
    assert_eq!(d.cut_k(10).unwrap().len(), 10);
    // Splitting C1 or C2 adds two groups at once.
    assert!(d.cut_k(7).is_err());
    assert_eq!(d.cut_k(8).unwrap().len(), 8);

    let zero = d.cut_height(0.0).unwrap();
    assert_eq!(zero.len(), 6);
    assert!(zero.as_sets().contains(&set(C1)) && zero.as_sets().contains(&set(C2)));
    assert_eq!(d.cut_height(1.0).unwrap().as_sets(), sets(&[C5, C6]));
    assert_eq!(d.cut_height(2.0).unwrap().len(), 1);
    assert_eq!(d.cut_height(100.0).unwrap().len(), 1);
}

#[test]
fn renderings_of_the_stack_tree() {
    let d = grouped_run().dendrogram;
    let ascii = d.render_ascii();
    assert!(ascii.lines().any(|l| l.contains("C5 = C1 + C3")));
    assert!(ascii.lines().any(|l| l.contains("C6 = C2 + C4")));
    assert!(ascii.starts_with("C7 = C5 + C6  [height 2.00, round 4]"));
    assert_eq!(ascii, d.render_ascii());
    assert_eq!(ascii.lines().count(), 17);

    let dot = d.render_dot();
    let leaf_nodes = dot.lines().filter(|l| l.contains("[label=") && !l.contains("ellipse")).count();
    let merge_nodes = dot.lines().filter(|l| l.contains("shape=ellipse]")).count();
    assert_eq!((leaf_nodes, merge_nodes), (10, 7));
    for k in 1..=7 {
        assert!(dot.contains(&format!("label=\"C{k}\\n")));
    }
    assert_eq!(dot.matches(" -> ").count(), 16);
}

#[test]
fn structured_document() {
    let (schema, pattern) = stacks();
    let run = grouped_run();
    let doc = RunDocument::new(&schema, &pattern, &run, None);
    assert_eq!(doc.run.rounds.len(), 4);
    assert_eq!(doc.pattern_matrix.rows, STACK_PATTERN.iter().map(|r| r.to_vec()).collect::<Vec<_>>());
    assert_eq!(doc.schema.relations[0].definition, "Return type is struct execstack");

    // Corrected later matrices from brute-force linkage of the reference rows.
    let rows: Vec<Vec<u8>> = STACK_PATTERN.iter().map(|r| r.to_vec()).collect();
    for (round, r) in run.trace.iter().zip(&doc.run.rounds) {
        let m = r.matrix.as_ref().unwrap();
        let snap = round.matrix_after.as_ref().unwrap();
        for &a in snap.active() {
            for &b in snap.active() {
                let want = if a == b {
                    "0.00".to_string()
                } else {
                    let ma: Vec<usize> = run.dendrogram.members(a).iter().map(|c| c.0).collect();
                    let mb: Vec<usize> = run.dendrogram.members(b).iter().map(|c| c.0).collect();
                    let f = brute_link(&rows, OracleMetric::EuclidSquared, &ma, &mb);
                    two_decimals((f.0 as f64 / f.1 as f64).sqrt())
                };
                let (la, lb) = (run.dendrogram.label(a), run.dendrogram.label(b));
                assert_eq!(m.display(&la, &lb), Some(want.as_str()), "{la},{lb}");
            }
        }
    }
    assert_eq!(doc.run.rounds[1].merges[0].label, "C3");
    assert_eq!(doc.run.rounds[1].merges[0].member_labels, ["initRef", "traRef"]);
    assert_eq!(doc.run.rounds[3].min_display, "2.00");
    assert_eq!(doc.run.dendrogram.label, "C7");

    let text = doc.to_json();
    let back = RunDocument::from_json(&text).unwrap();
    assert_eq!(back, doc);
    assert_eq!(back.to_json(), text);
}

#[test]
fn two_leaf_document_has_one_round() {
    let schema = derive_relations(&["s"]).unwrap();
    let pattern = build_pattern_matrix(
        &[
            objident::ComponentRecord::new("a").arg("s"),
            objident::ComponentRecord::new("b").returning("s"),
        ],
        &schema,
    )
    .unwrap();
    let run = cluster(&pattern, Metric::Euclidean, Linkage::Single, MergePolicy::Sequential).unwrap();
    let doc = RunDocument::new(&schema, &pattern, &run, None);
    assert_eq!(doc.run.rounds.len(), 1);
    assert_eq!(doc.run.rounds[0].min_display, "1.41");
    assert_eq!(run.dendrogram.render_dot().matches(" -> ").count(), 2);
}

#[test]
fn modular_case_separates_stack_and_queue() {
    let corpus = parse_components(&read_fixture("modular.components.json")).unwrap();
    let schema = derive_relations(&corpus.subject_types).unwrap();
    let pattern = build_pattern_matrix(&corpus.components, &schema).unwrap();
    for policy in [MergePolicy::Sequential, MergePolicy::PaperRepro] {
        let run = cluster(&pattern, Metric::Euclidean, Linkage::Single, policy).unwrap();
        let two = run.dendrogram.cut_k(2).unwrap();
        assert_eq!(
            two.as_sets(),
            sets(&[
                &["initStack", "isEmptyStack", "push", "pop"],
                &["initQ", "isEmptyQ", "enQ", "deQ"],
            ])
        );
        let report = objident::label_clusters(&two, &pattern, &schema).unwrap();
        assert_eq!(
            report.entries[0].dominant,
            objident::Dominance::Subject("stack".into())
        );
    }
}

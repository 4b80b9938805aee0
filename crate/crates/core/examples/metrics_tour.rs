//! Compares the four dissimilarity measures on a few binary rows and shows
//! how each one changes the tree built from the same pattern.

use objident::ingest::parse_declarations;
use objident::{build_pattern_matrix, cluster, derive_relations, Linkage, MergePolicy, Metric};

const DECLS: &str = include_str!("../fixtures/stacks.decls");

const METRICS: [Metric; 4] = [
    Metric::Euclidean,
    Metric::Manhattan,
    Metric::SimpleMatching,
    Metric::Jaccard,
];

fn main() -> objident::Result<()> {
    let pairs: [(&[bool], &[bool]); 3] = [
        (&[true, false, true, false], &[true, false, true, false]),
        (&[true, true, false, false], &[true, false, false, false]),
        (&[false, false, false, false], &[false, false, false, false]),
    ];
    println!("{:<10} {:>10} {:>10} {:>10}", "metric", "equal", "one-off", "all-zero");
    for metric in METRICS {
        print!("{:<10}", metric.name());
        for (a, b) in pairs {
            let d = metric.dissimilarity(a, b)?;
            print!(" {:>10}", format!("{} ({})", d.display(), d.key()));
        }
        println!();
    }

    let corpus = parse_declarations(DECLS)?;
    let schema = derive_relations(&corpus.subject_types)?;
    let pattern = build_pattern_matrix(&corpus.components, &schema)?;
    for metric in METRICS {
        let run = cluster(&pattern, metric, Linkage::Single, MergePolicy::Sequential)?;
        let heights: Vec<String> = run.dendrogram.merges().iter().map(|n| n.height.display()).collect();
        println!("\n{}: merge heights {}", metric.name(), heights.join(" "));
        for group in &run.dendrogram.cut_k(2)?.groups {
            println!("  {}: {}", group.label, group.members.join(", "));
        }
    }
    Ok(())
}

//! Clusters the two-stack program round by round and prints every
//! proximity matrix as a lower triangle.
//!
//!     cargo run --example stack_walkthrough [-- sequential]

use objident::ingest::parse_declarations;
use objident::{
    build_pattern_matrix, derive_relations, initial_proximity, Clusterer, MergePolicy, Metric,
    ProximityMatrix,
};

const DECLS: &str = include_str!("../fixtures/stacks.decls");

fn print_triangle(prox: &ProximityMatrix, label: impl Fn(objident::ClusterId) -> String) {
    let active = prox.active();
    let labels: Vec<String> = active.iter().map(|&id| label(id)).collect();
    let width = labels.iter().map(String::len).max().unwrap_or(0);
    for (i, &a) in active.iter().enumerate() {
        print!("  {:>width$}", labels[i]);
        for &b in &active[..i] {
            print!(" {}", prox.get(a, b).unwrap().display());
        }
        println!();
    }
}

fn main() -> objident::Result<()> {
    let policy = match std::env::args().nth(1) {
        Some(p) => p.parse()?,
        None => MergePolicy::PaperRepro,
    };
    let corpus = parse_declarations(DECLS)?;
    let schema = derive_relations(&corpus.subject_types)?;
    let pattern = build_pattern_matrix(&corpus.components, &schema)?;

    println!("pattern matrix ({} functions, {} relations)", pattern.rows(), pattern.cols());
    for (label, row) in pattern.row_labels().iter().zip(pattern.iter_rows()) {
        let bits: String = row.iter().map(|&b| if b { '1' } else { '0' }).collect();
        println!("  {label:<12} {bits}");
    }

    let run = Clusterer::new(Metric::Euclidean).policy(policy).run(&pattern)?;
    let d = &run.dendrogram;
    let label = |id| d.label(id);

    println!("\ninitial dissimilarities");
    print_triangle(&initial_proximity(&pattern, Metric::Euclidean)?, label);

    for round in &run.trace {
        println!("\nround {} at {}", round.round_index, round.min.display());
        for merge in &round.merges {
            let parts: Vec<String> = merge.constituents.iter().map(|&c| d.label(c)).collect();
            println!("  {} = {}", d.label(merge.id), parts.join(" + "));
        }
        if let Some(m) = &round.matrix_after {
            if m.len() > 1 {
                print_triangle(m, label);
            }
        }
    }
    Ok(())
}

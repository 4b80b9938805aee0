//! Cuts the tree at several levels and attributes each group to the record
//! type it works on.

use objident::ingest::{parse_components, Analysis, CutSpec};
use objident::{Clusterer, Dominance, Metric};

const CORPORA: [(&str, &str); 2] = [
    ("stacks", include_str!("../fixtures/stacks.components.json")),
    ("modular", include_str!("../fixtures/modular.components.json")),
];

fn main() -> objident::Result<()> {
    let cuts = [CutSpec::Groups(2), CutSpec::Groups(4), CutSpec::Height(0.0)];
    for (name, text) in CORPORA {
        let corpus = parse_components(text)?;
        for cut in cuts {
            let analysis = Analysis::new(&corpus, &Clusterer::new(Metric::Euclidean), Some(cut))?;
            println!("{name}, cut {cut:?}");
            for e in &analysis.report.as_ref().expect("cut given").entries {
                let subject = match &e.dominant {
                    Dominance::Subject(s) => s.clone(),
                    Dominance::Ambiguous(tied) => format!("AMBIGUOUS {tied:?}"),
                };
                println!(
                    "  {:<10} {:<10} affinity {} -> {}",
                    e.cluster_label,
                    subject,
                    e.affinity,
                    e.members.join(", ")
                );
            }
        }
        println!();
    }
    Ok(())
}

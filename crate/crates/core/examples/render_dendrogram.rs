//! Renders one clustering in each output format.
//!
//!     cargo run --example render_dendrogram -- dot | dot -Tsvg > tree.svg

use objident::ingest::{parse_components, Analysis, DendrogramFormat};
use objident::{Clusterer, MergePolicy, Metric};

const COMPONENTS: &str = include_str!("../fixtures/stacks.components.json");

fn main() -> objident::Result<()> {
    let corpus = parse_components(COMPONENTS)?;
    let clusterer = Clusterer::new(Metric::Euclidean).policy(MergePolicy::PaperRepro);
    let analysis = Analysis::new(&corpus, &clusterer, None)?;

    let formats: Vec<DendrogramFormat> = match std::env::args().nth(1) {
        Some(f) => vec![f.parse()?],
        None => vec![DendrogramFormat::Ascii, DendrogramFormat::Dot, DendrogramFormat::Structured],
    };
    for format in formats {
        print!("{}", analysis.render(format));
    }
    Ok(())
}

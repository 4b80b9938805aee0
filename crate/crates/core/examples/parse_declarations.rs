//! Reads annotated prototypes, derives the relation schema and pattern
//! matrix, and shows the diagnostics produced for malformed input.

use objident::ingest::{parse_declarations, write_components};
use objident::{build_pattern_matrix, derive_relations};

const DECLS: &str = include_str!("../fixtures/modular.decls");

fn main() -> objident::Result<()> {
    let corpus = parse_declarations(DECLS)?;
    let schema = derive_relations(&corpus.subject_types)?;
    for rel in schema.relations() {
        println!("{:<3} {}", rel.label, rel.definition());
    }

    let pattern = build_pattern_matrix(&corpus.components, &schema)?;
    println!("\n{:<14} {}", "", pattern.col_labels().join(" "));
    for (label, row) in pattern.row_labels().iter().zip(pattern.to_bits()) {
        let cells: Vec<String> = row.iter().map(|b| format!("{b:>2}")).collect();
        println!("{label:<14} {}", cells.join(" "));
    }

    println!("\ncomponents document:\n{}", write_components(&corpus));

    let broken = [
        "struct stack\nint top (struct stack * s\n",
        "struct stack\nstruct * make (void)\n",
        "%types stack\nint peek (struct stack * s) ! uses: heap\n",
        "struct stack\nint size (struct stack * s)\nint size (struct stack * t)\n",
    ];
    for text in broken {
        let err = parse_declarations(text).unwrap_err();
        println!("error[{}]: {err}", err.category().as_str());
    }
    Ok(())
}

//! Drives the whole pipeline from a configuration, as the command line does,
//! writing the trace, tree and report into a scratch directory.

use std::path::PathBuf;

use objident::ingest::{run, CutSpec, DendrogramFormat, InputKind, RunConfig};
use objident::MergePolicy;

fn main() -> objident::Result<()> {
    let fixtures = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let out = tempfile::tempdir().map_err(|source| objident::Error::Io {
        path: std::env::temp_dir(),
        source,
    })?;

    let mut config = RunConfig::new(fixtures.join("stacks.decls"), InputKind::Declarations);
    config.policy = MergePolicy::PaperRepro;
    config.cut = Some(CutSpec::Groups(2));
    config.trace = Some(out.path().join("trace.json"));
    config.dendrogram = Some((out.path().join("tree.txt"), DendrogramFormat::Ascii));
    config.report = Some(out.path().join("report.json"));

    let output = run(&config)?;
    for w in &output.warnings {
        eprintln!("warning: {w}");
    }
    for (path, contents) in &output.files {
        println!("{} ({} bytes)", path.file_name().unwrap().to_string_lossy(), contents.len());
    }
    println!("\n{}", std::fs::read_to_string(out.path().join("tree.txt")).unwrap());

    // A report without a cut is refused before anything is written.
    config.cut = None;
    let err = run(&config).unwrap_err();
    println!("error[{}]: {err}", err.category().as_str());
    Ok(())
}

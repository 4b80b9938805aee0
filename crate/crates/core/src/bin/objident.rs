use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use objident::engine::{Linkage, MergePolicy};
use objident::ingest::run::{convert_declarations, run, CutSpec, DendrogramFormat, InputKind, RunConfig};
use objident::{Error, Metric};

#[derive(Parser)]
#[command(version, about = "Identify candidate objects by hierarchical clustering")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Cluster a corpus and write trace, dendrogram and report outputs.
    Cluster {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_parser = parse::<InputKind>)]
        kind: InputKind,
        #[arg(long, default_value = "euclidean", value_parser = parse::<Metric>)]
        metric: Metric,
        #[arg(long, default_value = "sequential", value_parser = parse::<MergePolicy>)]
        policy: MergePolicy,
        #[arg(long, default_value = "single", value_parser = parse::<Linkage>)]
        linkage: Linkage,
        /// `k:<groups>` or `h:<height>`.
        #[arg(long, value_parser = parse::<CutSpec>)]
        cut: Option<CutSpec>,
        #[arg(long)]
        trace: Option<PathBuf>,
        #[arg(long)]
        dendrogram: Option<PathBuf>,
        #[arg(long, requires = "dendrogram", default_value = "ascii", value_parser = parse::<DendrogramFormat>)]
        format: DendrogramFormat,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Convert a declarations file into a components document.
    Parse {
        #[arg(long)]
        decls: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

fn parse<T: std::str::FromStr<Err = Error>>(s: &str) -> Result<T, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Cluster {
            input,
            kind,
            metric,
            policy,
            linkage,
            cut,
            trace,
            dendrogram,
            format,
            report,
        } => {
            let config = RunConfig {
                input,
                kind,
                metric,
                policy,
                linkage,
                cut,
                trace,
                dendrogram: dendrogram.map(|p| (p, format)),
                report,
            };
            run(&config).map(|out| {
                for w in &out.warnings {
                    eprintln!("warning: {w}");
                }
                if out.files.is_empty() {
                    print!("{}", out.analysis.run.dendrogram.render_ascii());
                }
            })
        }
        Command::Parse { decls, out } => convert_declarations(&decls, &out).map(|_| ()),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error[{}]: {e}", e.category());
            ExitCode::from(e.category().exit_code() as u8)
        }
    }
}

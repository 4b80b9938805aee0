//! End-to-end pipeline driven by a [`RunConfig`].

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use super::components::{parse_components, write_components};
use super::decls::parse_declarations;
use super::document::{ReportDoc, RunDocument};
use super::Corpus;
use crate::dendrogram::Partition;
use crate::engine::{ClusterRun, Clusterer, Linkage, MergePolicy};
use crate::error::{Error, Result};
use crate::feature::{build_pattern_matrix, derive_relations, PatternMatrix, RelationSchema};
use crate::metrics::Metric;
use crate::report::{label_clusters, CandidateObjectReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum InputKind {
    #[default]
    Components,
    Declarations,
}

impl FromStr for InputKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "components" => Ok(InputKind::Components),
            "decls" | "declarations" => Ok(InputKind::Declarations),
            _ => Err(Error::Config(format!(
                "unknown input kind `{s}` (expected components or decls)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CutSpec {
    Groups(usize),
    Height(f64),
}

impl CutSpec {
    pub fn apply(self, run: &ClusterRun) -> Result<Partition> {
        match self {
            CutSpec::Groups(k) => run.dendrogram.cut_k(k),
            CutSpec::Height(h) => run.dendrogram.cut_height(h),
        }
    }
}

impl FromStr for CutSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Config(format!("invalid cut `{s}` (expected k:<n> or h:<x>)"));
        match s.split_once(':') {
            Some(("k", n)) => n.trim().parse().map(CutSpec::Groups).map_err(|_| bad()),
            Some(("h", x)) => {
                let h: f64 = x.trim().parse().map_err(|_| bad())?;
                if h.is_finite() && h >= 0.0 {
                    Ok(CutSpec::Height(h))
                } else {
                    Err(bad())
                }
            }
            _ => Err(bad()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DendrogramFormat {
    #[default]
    Ascii,
    Dot,
    Structured,
}

impl FromStr for DendrogramFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ascii" => Ok(DendrogramFormat::Ascii),
            "dot" => Ok(DendrogramFormat::Dot),
            "structured" => Ok(DendrogramFormat::Structured),
            _ => Err(Error::Config(format!(
                "unknown dendrogram format `{s}` (expected ascii, dot or structured)"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct RunConfig {
    pub input: PathBuf,
    pub kind: InputKind,
    pub metric: Metric,
    pub policy: MergePolicy,
    pub linkage: Linkage,
    pub cut: Option<CutSpec>,
    /// Full structured document.
    pub trace: Option<PathBuf>,
    pub dendrogram: Option<(PathBuf, DendrogramFormat)>,
    pub report: Option<PathBuf>,
}

impl RunConfig {
    pub fn new(input: impl Into<PathBuf>, kind: InputKind) -> Self {
        RunConfig {
            input: input.into(),
            kind,
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.report.is_some() && self.cut.is_none() {
            return Err(Error::Config("--report needs --cut".into()));
        }
        let mut outputs: Vec<&Path> = Vec::new();
        outputs.extend(self.trace.as_deref());
        outputs.extend(self.dendrogram.as_ref().map(|(p, _)| p.as_path()));
        outputs.extend(self.report.as_deref());
        for (i, a) in outputs.iter().enumerate() {
            if *a == self.input || outputs[i + 1..].contains(a) {
                return Err(Error::Config(format!(
                    "output path {} is used twice",
                    a.display()
                )));
            }
        }
        Ok(())
    }
}

/// Everything computed for a corpus.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub schema: RelationSchema,
    pub pattern: PatternMatrix,
    pub run: ClusterRun,
    pub partition: Option<Partition>,
    pub report: Option<CandidateObjectReport>,
}

impl Analysis {
    pub fn new(corpus: &Corpus, clusterer: &Clusterer, cut: Option<CutSpec>) -> Result<Self> {
        let schema = derive_relations(&corpus.subject_types)?;
        let pattern = build_pattern_matrix(&corpus.components, &schema)?;
        let run = clusterer.run(&pattern)?;
        let partition = cut.map(|c| c.apply(&run)).transpose()?;
        let report = partition
            .as_ref()
            .map(|p| label_clusters(p, &pattern, &schema))
            .transpose()?;
        Ok(Analysis {
            schema,
            pattern,
            run,
            partition,
            report,
        })
    }

    pub fn document(&self) -> RunDocument {
        RunDocument::new(&self.schema, &self.pattern, &self.run, self.report.as_ref())
    }

    pub fn render(&self, format: DendrogramFormat) -> String {
        match format {
            DendrogramFormat::Ascii => self.run.dendrogram.render_ascii(),
            DendrogramFormat::Dot => self.run.dendrogram.render_dot(),
            DendrogramFormat::Structured => self.document().to_json(),
        }
    }
}

#[derive(Debug)]
pub struct RunOutput {
    pub analysis: Analysis,
    pub warnings: Vec<String>,
    /// Rendered outputs in the order they are written.
    pub files: Vec<(PathBuf, String)>,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_owned(),
        source,
    })
}

pub fn load_corpus(path: &Path, kind: InputKind) -> Result<Corpus> {
    let text = read(path)?;
    match kind {
        InputKind::Components => parse_components(&text),
        InputKind::Declarations => parse_declarations(&text),
    }
}

/// Runs the pipeline and renders outputs without touching the filesystem
/// beyond reading the input.
pub fn execute(config: &RunConfig) -> Result<RunOutput> {
    config.validate()?;
    let corpus = load_corpus(&config.input, config.kind)?;
    let mut warnings = Vec::new();
    if config.kind == InputKind::Declarations
        && corpus.components.iter().all(|c| c.uses_fields.is_empty())
    {
        warnings.push(
            "no `! uses:` annotations found; uses-field relation columns are all zero".to_owned(),
        );
    }

    let clusterer = Clusterer::new(config.metric)
        .linkage(config.linkage)
        .policy(config.policy);
    let analysis = Analysis::new(&corpus, &clusterer, config.cut)?;

    let mut files = Vec::new();
    if let Some(path) = &config.trace {
        files.push((path.clone(), analysis.document().to_json()));
    }
    if let Some((path, format)) = &config.dendrogram {
        files.push((path.clone(), analysis.render(*format)));
    }
    if let (Some(path), Some(report)) = (&config.report, &analysis.report) {
        files.push((path.clone(), ReportDoc::from(report).to_json()));
    }
    Ok(RunOutput {
        analysis,
        warnings,
        files,
    })
}

/// [`execute`] followed by writing every output. Files are staged next to
/// their targets and renamed into place only once all of them are staged.
pub fn run(config: &RunConfig) -> Result<RunOutput> {
    let output = execute(config)?;
    write_all(&output.files)?;
    Ok(output)
}

/// Converts a declarations file into a components document.
pub fn convert_declarations(decls: &Path, out: &Path) -> Result<Corpus> {
    let corpus = parse_declarations(&read(decls)?)?;
    write_all(&[(out.to_owned(), write_components(&corpus))])?;
    Ok(corpus)
}

pub fn write_all(files: &[(PathBuf, String)]) -> Result<()> {
    let io_err = |path: &Path| {
        let path = path.to_owned();
        move |source| Error::Io { path, source }
    };
    let mut staged = Vec::with_capacity(files.len());
    for (path, contents) in files {
        let dir = match path.parent() {
            Some(p) if !p.as_os_str().is_empty() => p,
            _ => Path::new("."),
        };
        let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io_err(path))?;
        tmp.write_all(contents.as_bytes()).map_err(io_err(path))?;
        tmp.as_file().sync_all().map_err(io_err(path))?;
        staged.push((tmp, path));
    }
    for (tmp, path) in staged {
        tmp.persist(path).map_err(|e| io_err(path)(e.error))?;
    }
    Ok(())
}

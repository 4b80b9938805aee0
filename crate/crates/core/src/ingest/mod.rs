//! Input formats, the structured output document and the run driver.

pub mod components;
pub mod decls;
pub mod document;
pub mod run;

use crate::feature::ComponentRecord;

/// Subject types plus component records, as read from any input format.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Corpus {
    pub subject_types: Vec<String>,
    pub components: Vec<ComponentRecord>,
}

pub use components::{parse_components, write_components};
pub use decls::parse_declarations;
pub use document::{to_structured, RunDocument};
pub use run::{execute, run, Analysis, CutSpec, DendrogramFormat, InputKind, RunConfig};

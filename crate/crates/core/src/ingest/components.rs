//! JSON components documents.
//!
//! ```json
//! {
//!   "subject_types": ["execstack", "refstack"],
//!   "components": [
//!     { "name": "initRef", "returns": "refstack", "args": ["int"], "uses_fields": ["refstack"] }
//!   ]
//! }
//! ```

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::Corpus;
use crate::error::{Error, Location, Result};
use crate::feature::ComponentRecord;

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawComponent {
    name: String,
    returns: Option<String>,
    args: Vec<String>,
    uses_fields: Vec<String>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    subject_types: Vec<String>,
    components: Vec<RawComponent>,
}

pub fn parse_components(document: &str) -> Result<Corpus> {
    let raw: RawDocument = serde_json::from_str(document).map_err(|e| Error::Parse {
        location: Location::Document {
            line: e.line(),
            column: e.column(),
        },
        message: e.to_string(),
    })?;

    if raw.subject_types.is_empty() {
        return Err(Error::parse_field("subject_types", "must list at least one type"));
    }
    let mut types = HashSet::new();
    for (i, t) in raw.subject_types.iter().enumerate() {
        if !types.insert(t.as_str()) {
            return Err(Error::parse_field(
                format!("subject_types[{i}]"),
                format!("duplicate subject type `{t}`"),
            ));
        }
    }
    if raw.components.is_empty() {
        return Err(Error::parse_field("components", "must list at least one component"));
    }

    let mut names = HashSet::new();
    let mut components = Vec::with_capacity(raw.components.len());
    for (i, c) in raw.components.into_iter().enumerate() {
        if c.name.is_empty() {
            return Err(Error::parse_field(format!("components[{i}].name"), "name is empty"));
        }
        if !names.insert(c.name.clone()) {
            return Err(Error::parse_field(
                format!("components[{i}].name"),
                format!("duplicate component name `{}`", c.name),
            ));
        }
        for (j, u) in c.uses_fields.iter().enumerate() {
            if !types.contains(u.as_str()) {
                return Err(Error::parse_field(
                    format!("components[{i}].uses_fields[{j}]"),
                    format!("`{u}` is not a declared subject type"),
                ));
            }
        }
        components.push(ComponentRecord {
            name: c.name,
            returns: c.returns,
            args: c.args,
            uses_fields: c.uses_fields.into_iter().collect(),
        });
    }

    Ok(Corpus {
        subject_types: raw.subject_types,
        components,
    })
}

/// Canonical pretty-printed form with a trailing newline.
pub fn write_components(corpus: &Corpus) -> String {
    let raw = RawDocument {
        subject_types: corpus.subject_types.clone(),
        components: corpus
            .components
            .iter()
            .map(|c| RawComponent {
                name: c.name.clone(),
                returns: c.returns.clone(),
                args: c.args.clone(),
                uses_fields: c.uses_fields.iter().cloned().collect(),
            })
            .collect(),
    };
    let mut out = serde_json::to_string_pretty(&raw).expect("components serialize");
    out.push('\n');
    out
}

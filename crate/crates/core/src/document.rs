//! Rulebase persistence: a schema-versioned TOML document mirroring
//! [`RuleBase`].
//!
//! The document lists every variable with its universe and term curves
//! (breakpoint lists), names the output variable, and spells the rules
//! out as atom lists with an optional `not` flag. Variable and term
//! order in the file is preserved through load/serialize round-trips.
//!
//! ```toml
//! schema_version = 1
//! output = "probability"
//!
//! [variables.speed]
//! universe = [0.0, 100.0]
//!
//! [variables.speed.terms]
//! "высокая" = [[20.0, 0.0], [80.0, 1.0]]
//!
//! # ... reliability, concentration, probability ...
//!
//! [[rules]]
//! if = [
//!     { variable = "speed", term = "высокая" },
//!     { variable = "reliability", term = "высокая" },
//!     { variable = "concentration", term = "низкая" },
//! ]
//! then = { variable = "probability", term = "высокая" }
//! ```

use std::path::Path;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::mf::MembershipFunction;
use crate::resource::default_rulebase;
use crate::rules::{Rule, RuleAtom, RuleBase};
use crate::variable::{LinguisticVariable, Universe};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    /// TOML syntax/shape errors; the message carries line and column.
    #[error("parse error: {0}")]
    Parse(#[from] toml::de::Error),
    #[error("unsupported schema_version {found} (this build reads {SCHEMA_VERSION})")]
    Schema { found: u32 },
    /// A structurally valid document that violates a rulebase invariant;
    /// `location` is the offending field path.
    #[error("invalid rulebase at {location}: {message}")]
    Invalid { location: String, message: String },
}

#[derive(Debug, Serialize, Deserialize)]
struct RulebaseDocument {
    schema_version: u32,
    output: String,
    variables: IndexMap<String, VariableDocument>,
    rules: Vec<RuleDocument>,
}

#[derive(Debug, Serialize, Deserialize)]
struct VariableDocument {
    universe: [f64; 2],
    terms: IndexMap<String, Vec<[f64; 2]>>,
}

#[derive(Debug, Serialize, Deserialize)]
struct RuleDocument {
    #[serde(rename = "if")]
    antecedent: Vec<AtomDocument>,
    #[serde(rename = "then")]
    consequent: AtomDocument,
}

#[derive(Debug, Serialize, Deserialize)]
struct AtomDocument {
    variable: String,
    term: String,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    not: bool,
}

/// Parses and validates a rulebase document.
pub fn parse_rulebase(text: &str) -> Result<RuleBase, DocumentError> {
    let doc: RulebaseDocument = toml::from_str(text)?;
    if doc.schema_version != SCHEMA_VERSION {
        return Err(DocumentError::Schema { found: doc.schema_version });
    }

    let mut inputs = Vec::new();
    let mut output = None;
    for (name, var_doc) in &doc.variables {
        let var = build_variable(name, var_doc)?;
        if *name == doc.output {
            output = Some(var);
        } else {
            inputs.push(var);
        }
    }
    let output = output.ok_or_else(|| DocumentError::Invalid {
        location: "output".to_string(),
        message: format!("output variable {:?} is not declared under [variables]", doc.output),
    })?;

    let rules = doc
        .rules
        .iter()
        .map(|rule| Rule {
            antecedent: rule.antecedent.iter().map(atom).collect(),
            consequent: atom(&rule.consequent),
        })
        .collect();

    RuleBase::new(inputs, output, rules).map_err(|err| DocumentError::Invalid {
        location: "rules".to_string(),
        message: err.to_string(),
    })
}

fn build_variable(name: &str, doc: &VariableDocument) -> Result<LinguisticVariable, DocumentError> {
    let [min, max] = doc.universe;
    let universe = Universe::new(min, max).map_err(|err| DocumentError::Invalid {
        location: format!("variables.{name}.universe"),
        message: err.to_string(),
    })?;
    let mut terms = Vec::with_capacity(doc.terms.len());
    for (term, points) in &doc.terms {
        let mf = MembershipFunction::new(points.iter().map(|&[x, mu]| (x, mu)).collect())
            .map_err(|err| DocumentError::Invalid {
                location: format!("variables.{name}.terms.{term}"),
                message: err.to_string(),
            })?;
        terms.push((term.clone(), mf));
    }
    LinguisticVariable::new(name, universe, terms).map_err(|err| DocumentError::Invalid {
        location: format!("variables.{name}"),
        message: err.to_string(),
    })
}

fn atom(doc: &AtomDocument) -> RuleAtom {
    RuleAtom {
        variable: doc.variable.clone(),
        term: doc.term.clone(),
        complemented: doc.not,
    }
}

/// Serializes a rulebase to document text. `parse_rulebase` of the result
/// reconstructs an equal rulebase, breakpoints bit-exact.
pub fn rulebase_to_string(rb: &RuleBase) -> String {
    let mut variables = IndexMap::new();
    for var in rb.inputs().iter().chain(std::iter::once(rb.output())) {
        variables.insert(
            var.name().to_string(),
            VariableDocument {
                universe: [var.universe().min(), var.universe().max()],
                terms: var
                    .terms()
                    .map(|(term, mf)| {
                        (
                            term.to_string(),
                            mf.breakpoints().iter().map(|&(x, mu)| [x, mu]).collect(),
                        )
                    })
                    .collect(),
            },
        );
    }
    let doc = RulebaseDocument {
        schema_version: SCHEMA_VERSION,
        output: rb.output().name().to_string(),
        variables,
        rules: rb
            .rules()
            .iter()
            .map(|rule| RuleDocument {
                antecedent: rule.antecedent.iter().map(atom_doc).collect(),
                consequent: atom_doc(&rule.consequent),
            })
            .collect(),
    };
    toml::to_string(&doc).expect("rulebase documents always serialize")
}

fn atom_doc(atom: &RuleAtom) -> AtomDocument {
    AtomDocument {
        variable: atom.variable.clone(),
        term: atom.term.clone(),
        not: atom.complemented,
    }
}

/// Loads a rulebase document from `path`. An absent file falls back to
/// the built-in default rulebase.
pub fn load_rulebase(path: &Path) -> Result<RuleBase, DocumentError> {
    if !path.exists() {
        return Ok(default_rulebase());
    }
    let text = std::fs::read_to_string(path).map_err(|source| DocumentError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_rulebase(&text)
}

/// Writes the serialized rulebase document to `path`.
pub fn save_rulebase(rb: &RuleBase, path: &Path) -> Result<(), DocumentError> {
    std::fs::write(path, rulebase_to_string(rb)).map_err(|source| DocumentError::Io {
        path: path.display().to_string(),
        source,
    })
}

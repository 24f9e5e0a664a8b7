//! Linguistic variables: a named universe of discourse plus named fuzzy
//! terms, each backed by a [`MembershipFunction`].

use indexmap::IndexMap;
use thiserror::Error;

use crate::mf::MembershipFunction;

/// Interval of crisp values a linguistic variable ranges over.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Universe {
    min: f64,
    max: f64,
}

impl Universe {
    pub fn new(min: f64, max: f64) -> Result<Self, VariableError> {
        if !min.is_finite() || !max.is_finite() || min >= max {
            return Err(VariableError::InvalidUniverse { min, max });
        }
        Ok(Self { min, max })
    }

    pub fn min(&self) -> f64 {
        self.min
    }

    pub fn max(&self) -> f64 {
        self.max
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.min + self.max)
    }

    pub fn contains(&self, x: f64) -> bool {
        (self.min..=self.max).contains(&x)
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum VariableError {
    #[error("universe [{min}, {max}] is not a finite, non-empty interval")]
    InvalidUniverse { min: f64, max: f64 },
    #[error("variable {variable:?}: duplicate term {term:?}")]
    DuplicateTerm { variable: String, term: String },
    #[error("variable {variable:?}: term {term:?} has breakpoint x={x} outside universe [{min}, {max}]")]
    TermOutsideUniverse {
        variable: String,
        term: String,
        x: f64,
        min: f64,
        max: f64,
    },
    #[error("variable {variable:?} has no term {term:?}")]
    UnknownTerm { variable: String, term: String },
}

/// A named variable whose values are fuzzy terms over a universe.
///
/// Term insertion order is preserved; it drives column order in curve
/// exports and document round-trips.
#[derive(Debug, Clone, PartialEq)]
pub struct LinguisticVariable {
    name: String,
    universe: Universe,
    terms: IndexMap<String, MembershipFunction>,
}

impl LinguisticVariable {
    pub fn new(
        name: impl Into<String>,
        universe: Universe,
        terms: Vec<(String, MembershipFunction)>,
    ) -> Result<Self, VariableError> {
        let name = name.into();
        let mut map = IndexMap::with_capacity(terms.len());
        for (term, mf) in terms {
            for &(x, _) in mf.breakpoints() {
                if !universe.contains(x) {
                    return Err(VariableError::TermOutsideUniverse {
                        variable: name,
                        term,
                        x,
                        min: universe.min,
                        max: universe.max,
                    });
                }
            }
            if map.insert(term.clone(), mf).is_some() {
                return Err(VariableError::DuplicateTerm { variable: name, term });
            }
        }
        Ok(Self { name, universe, terms: map })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn universe(&self) -> Universe {
        self.universe
    }

    pub fn term(&self, name: &str) -> Option<&MembershipFunction> {
        self.terms.get(name)
    }

    /// Terms in insertion order.
    pub fn terms(&self) -> impl Iterator<Item = (&str, &MembershipFunction)> {
        self.terms.iter().map(|(name, mf)| (name.as_str(), mf))
    }

    /// Replaces an existing term's curve, validating it against the universe.
    pub fn replace_term(
        &mut self,
        term: &str,
        mf: MembershipFunction,
    ) -> Result<(), VariableError> {
        if !self.terms.contains_key(term) {
            return Err(VariableError::UnknownTerm {
                variable: self.name.clone(),
                term: term.to_string(),
            });
        }
        for &(x, _) in mf.breakpoints() {
            if !self.universe.contains(x) {
                return Err(VariableError::TermOutsideUniverse {
                    variable: self.name.clone(),
                    term: term.to_string(),
                    x,
                    min: self.universe.min,
                    max: self.universe.max,
                });
            }
        }
        self.terms[term] = mf;
        Ok(())
    }
}

//! Conjunctive IF/THEN rules over linguistic variables.
//!
//! A [`RuleBase`] bundles the input variables, the single output
//! variable, and the rules. Every reference is resolved at construction,
//! so inference never has to cope with dangling names.

use thiserror::Error;

use crate::variable::LinguisticVariable;

/// One antecedent or consequent reference: a variable, one of its terms,
/// and an optional complement ("not", degree `1 - mu`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleAtom {
    pub variable: String,
    pub term: String,
    pub complemented: bool,
}

impl RuleAtom {
    pub fn new(variable: impl Into<String>, term: impl Into<String>) -> Self {
        Self { variable: variable.into(), term: term.into(), complemented: false }
    }

    pub fn complement(variable: impl Into<String>, term: impl Into<String>) -> Self {
        Self { variable: variable.into(), term: term.into(), complemented: true }
    }
}

/// IF (atom AND atom AND ...) THEN consequent.
#[derive(Debug, Clone, PartialEq)]
pub struct Rule {
    pub antecedent: Vec<RuleAtom>,
    pub consequent: RuleAtom,
}

#[derive(Debug, Error, PartialEq)]
pub enum RuleBaseError {
    #[error("rule base needs at least one rule")]
    NoRules,
    #[error("rule {rule}: antecedent must not be empty")]
    EmptyAntecedent { rule: usize },
    #[error("duplicate input variable {0:?}")]
    DuplicateInput(String),
    #[error("input variable {0:?} collides with the output variable name")]
    InputShadowsOutput(String),
    #[error("rule {rule}: unknown input variable {variable:?}")]
    UnknownVariable { rule: usize, variable: String },
    #[error("rule {rule}: variable {variable:?} has no term {term:?}")]
    UnknownTerm { rule: usize, variable: String, term: String },
    #[error("rule {rule}: consequent must reference the output variable {output:?}, got {variable:?}")]
    ConsequentNotOutput { rule: usize, output: String, variable: String },
    #[error("rule {rule}: consequent must not be complemented")]
    ComplementedConsequent { rule: usize },
}

/// Validated rule base: inputs, one output, and at least one rule.
#[derive(Debug, Clone, PartialEq)]
pub struct RuleBase {
    inputs: Vec<LinguisticVariable>,
    output: LinguisticVariable,
    rules: Vec<Rule>,
}

impl RuleBase {
    pub fn new(
        inputs: Vec<LinguisticVariable>,
        output: LinguisticVariable,
        rules: Vec<Rule>,
    ) -> Result<Self, RuleBaseError> {
        for (i, var) in inputs.iter().enumerate() {
            if var.name() == output.name() {
                return Err(RuleBaseError::InputShadowsOutput(var.name().to_string()));
            }
            if inputs[..i].iter().any(|other| other.name() == var.name()) {
                return Err(RuleBaseError::DuplicateInput(var.name().to_string()));
            }
        }
        if rules.is_empty() {
            return Err(RuleBaseError::NoRules);
        }
        for (index, rule) in rules.iter().enumerate() {
            if rule.antecedent.is_empty() {
                return Err(RuleBaseError::EmptyAntecedent { rule: index });
            }
            for atom in &rule.antecedent {
                let var = inputs
                    .iter()
                    .find(|v| v.name() == atom.variable)
                    .ok_or_else(|| RuleBaseError::UnknownVariable {
                        rule: index,
                        variable: atom.variable.clone(),
                    })?;
                if var.term(&atom.term).is_none() {
                    return Err(RuleBaseError::UnknownTerm {
                        rule: index,
                        variable: atom.variable.clone(),
                        term: atom.term.clone(),
                    });
                }
            }
            let cons = &rule.consequent;
            if cons.variable != output.name() {
                return Err(RuleBaseError::ConsequentNotOutput {
                    rule: index,
                    output: output.name().to_string(),
                    variable: cons.variable.clone(),
                });
            }
            if cons.complemented {
                return Err(RuleBaseError::ComplementedConsequent { rule: index });
            }
            if output.term(&cons.term).is_none() {
                return Err(RuleBaseError::UnknownTerm {
                    rule: index,
                    variable: cons.variable.clone(),
                    term: cons.term.clone(),
                });
            }
        }
        Ok(Self { inputs, output, rules })
    }

    pub fn inputs(&self) -> &[LinguisticVariable] {
        &self.inputs
    }

    pub fn input(&self, name: &str) -> Option<&LinguisticVariable> {
        self.inputs.iter().find(|v| v.name() == name)
    }

    pub fn output(&self) -> &LinguisticVariable {
        &self.output
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    /// Looks a variable up by name among inputs and the output.
    pub fn variable(&self, name: &str) -> Option<&LinguisticVariable> {
        if self.output.name() == name {
            Some(&self.output)
        } else {
            self.input(name)
        }
    }
}

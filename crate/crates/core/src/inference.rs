//! Mamdani inference: fuzzification, rule firing via min, min-implication
//! (clipping), max-aggregation, and center-of-gravity defuzzification.
//!
//! Everything here is a pure function over immutable inputs.

use std::collections::HashMap;

use thiserror::Error;

use crate::mf::MembershipFunction;
use crate::rules::{Rule, RuleAtom, RuleBase};
use crate::variable::Universe;

/// Crisp input values keyed by variable name.
pub type CrispInputs = HashMap<String, f64>;

#[derive(Debug, Error, PartialEq)]
pub enum InferenceError {
    #[error("unknown variable {0:?}")]
    UnknownVariable(String),
    #[error("variable {variable:?} has no term {term:?}")]
    UnknownTerm { variable: String, term: String },
    #[error("no crisp input supplied for variable {0:?}")]
    MissingInput(String),
    #[error("cannot aggregate an empty rule set")]
    EmptyRuleSet,
    #[error("aggregated output has zero area: no rule fired")]
    DegenerateOutput,
}

/// Pointwise max of the implicated consequent curves of all rules.
#[derive(Debug, Clone, PartialEq)]
pub struct AggregatedOutput {
    curve: MembershipFunction,
}

impl AggregatedOutput {
    pub fn new(curve: MembershipFunction) -> Self {
        Self { curve }
    }

    pub fn curve(&self) -> &MembershipFunction {
        &self.curve
    }
}

/// Mamdani min-implication: clips the consequent curve at the rule's
/// firing strength.
pub fn implicate(consequent: &MembershipFunction, strength: f64) -> MembershipFunction {
    consequent.clip(strength)
}

/// Pointwise max over the clipped consequents.
pub fn aggregate(clipped: &[MembershipFunction]) -> Result<AggregatedOutput, InferenceError> {
    let (first, rest) = clipped.split_first().ok_or(InferenceError::EmptyRuleSet)?;
    let curve = rest
        .iter()
        .fold(first.clone(), |acc, mf| acc.pointwise_max(mf));
    Ok(AggregatedOutput::new(curve))
}

/// Center of gravity of the aggregated curve over the output universe:
/// `∫x·mu(x)dx / ∫mu(x)dx`, closed form per linear segment.
///
/// Fails with [`InferenceError::DegenerateOutput`] when the curve has
/// zero area (no rule fired); the caller owns the fallback policy.
pub fn defuzzify_centroid(
    agg: &AggregatedOutput,
    universe: Universe,
) -> Result<f64, InferenceError> {
    let area = agg.curve.area(universe.min(), universe.max());
    if area == 0.0 {
        return Err(InferenceError::DegenerateOutput);
    }
    let moment = agg.curve.first_moment(universe.min(), universe.max());
    Ok((moment / area).clamp(universe.min(), universe.max()))
}

impl RuleBase {
    /// Degree of one antecedent atom for the given crisp inputs:
    /// `mu(x)` for a plain atom, `1 - mu(x)` for a complemented one.
    pub fn atom_degree(
        &self,
        atom: &RuleAtom,
        inputs: &CrispInputs,
    ) -> Result<f64, InferenceError> {
        let var = self
            .input(&atom.variable)
            .ok_or_else(|| InferenceError::UnknownVariable(atom.variable.clone()))?;
        let mf = var.term(&atom.term).ok_or_else(|| InferenceError::UnknownTerm {
            variable: atom.variable.clone(),
            term: atom.term.clone(),
        })?;
        let x = *inputs
            .get(&atom.variable)
            .ok_or_else(|| InferenceError::MissingInput(atom.variable.clone()))?;
        let degree = mf.degree(x);
        Ok(if atom.complemented { 1.0 - degree } else { degree })
    }

    /// Firing strength of a rule: min over its antecedent degrees.
    pub fn firing_strength(
        &self,
        rule: &Rule,
        inputs: &CrispInputs,
    ) -> Result<f64, InferenceError> {
        debug_assert!(!rule.antecedent.is_empty());
        let mut strength = f64::INFINITY;
        for atom in &rule.antecedent {
            strength = strength.min(self.atom_degree(atom, inputs)?);
        }
        Ok(strength)
    }

    /// Full Mamdani pipeline: clip every rule's consequent at its firing
    /// strength, max-aggregate, and defuzzify by center of gravity.
    pub fn infer(&self, inputs: &CrispInputs) -> Result<f64, InferenceError> {
        let clipped = self
            .rules()
            .iter()
            .map(|rule| {
                let strength = self.firing_strength(rule, inputs)?;
                let mf = self
                    .output()
                    .term(&rule.consequent.term)
                    .expect("consequent terms resolve; validated at construction");
                Ok(implicate(mf, strength))
            })
            .collect::<Result<Vec<_>, InferenceError>>()?;
        defuzzify_centroid(&aggregate(&clipped)?, self.output().universe())
    }
}

//! Storage-resource scoring: the three input variables (speed in Mb/s,
//! reliability and concentration in percent), the probability output, the
//! built-in two-rule base, and per-resource score computation.
//!
//! Rule 1: speed high AND reliability high AND concentration low ->
//! probability high. Rule 2 is the complemented mirror ending in
//! probability low. The default curve shapes below are configuration and
//! can all be overridden, either programmatically or through the rulebase
//! document.

use std::collections::HashSet;

use thiserror::Error;

use crate::inference::{CrispInputs, InferenceError};
use crate::mf::MembershipFunction;
use crate::rules::{Rule, RuleAtom, RuleBase};
use crate::variable::{LinguisticVariable, Universe};

pub const VAR_SPEED: &str = "speed";
pub const VAR_RELIABILITY: &str = "reliability";
pub const VAR_CONCENTRATION: &str = "concentration";
pub const VAR_PROBABILITY: &str = "probability";

/// Default term names ("high" / "low").
pub const TERM_HIGH: &str = "высокая";
pub const TERM_LOW: &str = "низкая";

#[derive(Debug, Error, PartialEq)]
pub enum ResourceError {
    #[error("{field} must be finite, got {value}")]
    NotFinite { field: &'static str, value: f64 },
    #[error("{field} {value} is outside [{min}, {max}]")]
    OutOfRange { field: &'static str, value: f64, min: f64, max: f64 },
    #[error("duplicate resource id {0:?}")]
    DuplicateResourceId(String),
    #[error("override targets unknown variable/term {variable:?}/{term:?}")]
    UnknownOverrideTarget { variable: String, term: String },
    #[error("invalid override: {0}")]
    InvalidOverride(String),
}

/// One resource's crisp inputs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResourceMetrics {
    pub speed: f64,
    pub reliability: f64,
    pub concentration: f64,
}

impl ResourceMetrics {
    /// Validates: speed >= 0 Mb/s, reliability and concentration in
    /// [0, 100] percent, all finite.
    pub fn new(speed: f64, reliability: f64, concentration: f64) -> Result<Self, ResourceError> {
        check_finite("speed", speed)?;
        check_finite("reliability", reliability)?;
        check_finite("concentration", concentration)?;
        if speed < 0.0 {
            return Err(ResourceError::OutOfRange {
                field: "speed",
                value: speed,
                min: 0.0,
                max: f64::INFINITY,
            });
        }
        check_percent("reliability", reliability)?;
        check_percent("concentration", concentration)?;
        Ok(Self { speed, reliability, concentration })
    }

    fn as_inputs(&self) -> CrispInputs {
        CrispInputs::from([
            (VAR_SPEED.to_string(), self.speed),
            (VAR_RELIABILITY.to_string(), self.reliability),
            (VAR_CONCENTRATION.to_string(), self.concentration),
        ])
    }
}

fn check_finite(field: &'static str, value: f64) -> Result<(), ResourceError> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(ResourceError::NotFinite { field, value })
    }
}

fn check_percent(field: &'static str, value: f64) -> Result<(), ResourceError> {
    if (0.0..=100.0).contains(&value) {
        Ok(())
    } else {
        Err(ResourceError::OutOfRange { field, value, min: 0.0, max: 100.0 })
    }
}

/// A resource id together with its inferred score.
#[derive(Debug, Clone, PartialEq)]
pub struct ResourceScore {
    pub resource_id: String,
    pub p: f64,
}

/// Replaces the curve of one (variable, term) pair in the default rulebase.
#[derive(Debug, Clone, PartialEq)]
pub struct TermOverride {
    pub variable: String,
    pub term: String,
    pub curve: MembershipFunction,
}

/// The built-in two-rule placement rulebase with default curve shapes.
pub fn default_rulebase() -> RuleBase {
    default_rulebase_with(&[]).expect("built-in rulebase is valid")
}

/// The built-in rulebase with term curves replaced by `overrides`.
pub fn default_rulebase_with(overrides: &[TermOverride]) -> Result<RuleBase, ResourceError> {
    let percent = Universe::new(0.0, 100.0).expect("static universe");
    let unit = Universe::new(0.0, 1.0).expect("static universe");

    let mut variables = vec![
        build_variable(VAR_SPEED, percent, vec![(TERM_HIGH, ramp_up(20.0, 80.0))]),
        build_variable(VAR_RELIABILITY, percent, vec![(TERM_HIGH, ramp_up(90.0, 99.9))]),
        build_variable(VAR_CONCENTRATION, percent, vec![(TERM_LOW, ramp_down(0.0, 50.0))]),
        build_variable(
            VAR_PROBABILITY,
            unit,
            vec![(TERM_LOW, ramp_down(0.0, 0.5)), (TERM_HIGH, ramp_up(0.5, 1.0))],
        ),
    ];

    for ov in overrides {
        let var = variables
            .iter_mut()
            .find(|v| v.name() == ov.variable)
            .ok_or_else(|| ResourceError::UnknownOverrideTarget {
                variable: ov.variable.clone(),
                term: ov.term.clone(),
            })?;
        var.replace_term(&ov.term, ov.curve.clone()).map_err(|err| {
            use crate::variable::VariableError;
            match err {
                VariableError::UnknownTerm { variable, term } => {
                    ResourceError::UnknownOverrideTarget { variable, term }
                }
                other => ResourceError::InvalidOverride(other.to_string()),
            }
        })?;
    }

    let output = variables.pop().expect("four variables built above");
    let rules = vec![
        Rule {
            antecedent: vec![
                RuleAtom::new(VAR_SPEED, TERM_HIGH),
                RuleAtom::new(VAR_RELIABILITY, TERM_HIGH),
                RuleAtom::new(VAR_CONCENTRATION, TERM_LOW),
            ],
            consequent: RuleAtom::new(VAR_PROBABILITY, TERM_HIGH),
        },
        Rule {
            antecedent: vec![
                RuleAtom::complement(VAR_SPEED, TERM_HIGH),
                RuleAtom::complement(VAR_RELIABILITY, TERM_HIGH),
                RuleAtom::complement(VAR_CONCENTRATION, TERM_LOW),
            ],
            consequent: RuleAtom::new(VAR_PROBABILITY, TERM_LOW),
        },
    ];
    Ok(RuleBase::new(variables, output, rules).expect("built-in rulebase is structurally valid"))
}

fn build_variable(
    name: &str,
    universe: Universe,
    terms: Vec<(&str, MembershipFunction)>,
) -> LinguisticVariable {
    LinguisticVariable::new(
        name,
        universe,
        terms.into_iter().map(|(t, mf)| (t.to_string(), mf)).collect(),
    )
    .expect("static defaults are valid")
}

fn ramp_up(zero_at: f64, one_at: f64) -> MembershipFunction {
    MembershipFunction::ramp_up(zero_at, one_at).expect("static ramp")
}

fn ramp_down(one_at: f64, zero_at: f64) -> MembershipFunction {
    MembershipFunction::ramp_down(one_at, zero_at).expect("static ramp")
}

/// Checks a rulebase is usable for resource scoring: every input variable
/// must be one of speed/reliability/concentration (curves and universes
/// are free).
pub fn validate_placement_rulebase(rb: &RuleBase) -> Result<(), InferenceError> {
    const KNOWN: [&str; 3] = [VAR_SPEED, VAR_RELIABILITY, VAR_CONCENTRATION];
    for var in rb.inputs() {
        if !KNOWN.contains(&var.name()) {
            return Err(InferenceError::UnknownVariable(var.name().to_string()));
        }
    }
    Ok(())
}

/// Scores one resource through the Mamdani pipeline.
///
/// When no rule fires (degenerate aggregate), the score falls back to the
/// midpoint of the probability universe: a neutral value that keeps the
/// resource selectable without dominating.
///
/// The rulebase's input variables must be drawn from
/// speed/reliability/concentration (see [`validate_placement_rulebase`]);
/// other reference errors are impossible for the built-in rulebase and
/// panic for custom ones.
pub fn resource_probability(metrics: &ResourceMetrics, rb: &RuleBase) -> f64 {
    match rb.infer(&metrics.as_inputs()) {
        Ok(p) => p,
        Err(InferenceError::DegenerateOutput) => rb.output().universe().midpoint(),
        Err(err) => panic!("rulebase is not a placement rulebase: {err}"),
    }
}

/// Scores a batch of resources, order preserved. Ids must be unique.
pub fn score_all(
    resources: &[(String, ResourceMetrics)],
    rb: &RuleBase,
) -> Result<Vec<ResourceScore>, ResourceError> {
    let mut seen = HashSet::with_capacity(resources.len());
    for (id, _) in resources {
        if !seen.insert(id.as_str()) {
            return Err(ResourceError::DuplicateResourceId(id.clone()));
        }
    }
    Ok(resources
        .iter()
        .map(|(id, metrics)| ResourceScore {
            resource_id: id.clone(),
            p: resource_probability(metrics, rb),
        })
        .collect())
}

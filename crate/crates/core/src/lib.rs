//! Mamdani fuzzy inference over piecewise-linear membership curves, plus
//! a storage-resource selection toolkit built on it.
//!
//! The crate scores storage resources by speed, reliability, and data
//! concentration through a two-rule Mamdani system (fuzzification, min
//! conjunction, min-implication, max-aggregation, center-of-gravity
//! defuzzification — all in closed form, no sampling grids), then picks a
//! placement target either by argmax or by a seeded probability-
//! proportional trial. A small cluster simulator feeds placements back
//! into the concentration input to exercise the load-balancing loop.
//!
//! Everything is immutable after construction and every operation is a
//! pure function, so values can be shared across threads freely.
//!
//! ```
//! use fuzzy_placer::{default_rulebase, resource_probability, ResourceMetrics};
//!
//! let rb = default_rulebase();
//! let p = resource_probability(&ResourceMetrics::new(100.0, 100.0, 0.0).unwrap(), &rb);
//! assert!((p - 0.833333).abs() < 1e-6);
//! ```

pub mod document;
pub mod inference;
pub mod inventory;
pub mod mf;
pub mod resource;
pub mod rules;
pub mod selector;
pub mod simulator;
pub mod variable;

pub use document::{load_rulebase, parse_rulebase, rulebase_to_string, save_rulebase, DocumentError};
pub use inference::{
    aggregate, defuzzify_centroid, implicate, AggregatedOutput, CrispInputs, InferenceError,
};
pub use inventory::{load_inventory, parse_inventory, InventoryError};
pub use mf::{MembershipFunction, MfError};
pub use resource::{
    default_rulebase, default_rulebase_with, resource_probability, score_all,
    validate_placement_rulebase, ResourceError, ResourceMetrics, ResourceScore, TermOverride,
};
pub use rules::{Rule, RuleAtom, RuleBase, RuleBaseError};
pub use selector::{normalize, select_argmax, RngSeed, SelectError, SelectionDistribution};
pub use simulator::{
    run, step, ClusterState, ShareSummary, SimError, SimResource, SimulationReport, Strategy,
    TraceRow,
};
pub use variable::{LinguisticVariable, Universe, VariableError};

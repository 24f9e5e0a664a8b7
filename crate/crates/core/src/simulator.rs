//! Synthetic storage-cluster harness.
//!
//! Places a workload of uniformly sized chunks one at a time. Speed and
//! reliability are fixed resource attributes; concentration is derived
//! live from the placements (share of all placed chunks residing on the
//! resource, measured before the pending placement), which closes the
//! feedback loop between placements and scores.
//!
//! Stepping is sequential (each step depends on the previous state);
//! independent runs with different seeds or strategies can go in
//! parallel.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use indexmap::IndexMap;
use thiserror::Error;

use crate::resource::{resource_probability, ResourceMetrics, ResourceScore};
use crate::rules::RuleBase;
use crate::selector::{normalize, select_argmax, RngSeed, SelectError, SelectionDistribution};

#[derive(Debug, Error, PartialEq)]
pub enum SimError {
    #[error("cluster needs at least one resource")]
    EmptyCluster,
    #[error("duplicate resource id {0:?}")]
    DuplicateResourceId(String),
    #[error("unknown resource {0:?}")]
    UnknownResource(String),
    #[error("resource {id:?}: {reason}")]
    InvalidResource { id: String, reason: String },
    #[error("resource {id:?} scored negative ({p}); scores must be non-negative to sample")]
    NegativeScore { id: String, p: f64 },
}

/// One simulated resource: fixed attributes plus its placement count.
#[derive(Debug, Clone, PartialEq)]
pub struct SimResource {
    pub id: String,
    pub speed: f64,
    pub reliability: f64,
    pub placed_chunks: u64,
}

impl SimResource {
    pub fn new(id: impl Into<String>, speed: f64, reliability: f64) -> Self {
        Self { id: id.into(), speed, reliability, placed_chunks: 0 }
    }
}

/// Immutable cluster snapshot; `step` returns a new one.
#[derive(Debug, Clone, PartialEq)]
pub struct ClusterState {
    resources: Vec<SimResource>,
    total_placed: u64,
}

impl ClusterState {
    pub fn new(resources: Vec<SimResource>) -> Result<Self, SimError> {
        if resources.is_empty() {
            return Err(SimError::EmptyCluster);
        }
        let mut seen = HashSet::with_capacity(resources.len());
        for r in &resources {
            if !seen.insert(r.id.as_str()) {
                return Err(SimError::DuplicateResourceId(r.id.clone()));
            }
            // speed and reliability must satisfy the metric ranges; the
            // derived concentration is always in range
            ResourceMetrics::new(r.speed, r.reliability, 0.0).map_err(|err| {
                SimError::InvalidResource { id: r.id.clone(), reason: err.to_string() }
            })?;
        }
        let total_placed = resources.iter().map(|r| r.placed_chunks).sum();
        Ok(Self { resources, total_placed })
    }

    pub fn resources(&self) -> &[SimResource] {
        &self.resources
    }

    pub fn total_placed(&self) -> u64 {
        self.total_placed
    }

    /// Concentration in percent: share of all placed chunks residing on
    /// the resource; 0 for every resource while the cluster is empty.
    pub fn concentration_of(&self, id: &str) -> Result<f64, SimError> {
        let resource = self
            .resources
            .iter()
            .find(|r| r.id == id)
            .ok_or_else(|| SimError::UnknownResource(id.to_string()))?;
        if self.total_placed == 0 {
            return Ok(0.0);
        }
        Ok(100.0 * resource.placed_chunks as f64 / self.total_placed as f64)
    }

    /// Scores every resource with its live concentration.
    pub fn scores(&self, rb: &RuleBase) -> Vec<ResourceScore> {
        self.resources
            .iter()
            .map(|r| {
                let concentration = if self.total_placed == 0 {
                    0.0
                } else {
                    100.0 * r.placed_chunks as f64 / self.total_placed as f64
                };
                let metrics = ResourceMetrics {
                    speed: r.speed,
                    reliability: r.reliability,
                    concentration,
                };
                ResourceScore { resource_id: r.id.clone(), p: resource_probability(&metrics, rb) }
            })
            .collect()
    }

    fn with_placement(&self, index: usize) -> ClusterState {
        let mut next = self.clone();
        next.resources[index].placed_chunks += 1;
        next.total_placed += 1;
        next
    }
}

/// Placement strategy for one simulation run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    /// Score everything, place on the maximal score.
    FuzzyArgmax,
    /// Score everything, place by a probability-proportional trial.
    FuzzySample,
    /// Baseline: cycle through resources in order.
    RoundRobin,
    /// Baseline: always place on the first resource.
    AlwaysFirst,
}

impl Strategy {
    pub const ALL: [Strategy; 4] = [
        Strategy::FuzzyArgmax,
        Strategy::FuzzySample,
        Strategy::RoundRobin,
        Strategy::AlwaysFirst,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Strategy::FuzzyArgmax => "fuzzy-argmax",
            Strategy::FuzzySample => "fuzzy-sample",
            Strategy::RoundRobin => "round-robin",
            Strategy::AlwaysFirst => "always-first",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Strategy::ALL
            .into_iter()
            .find(|strategy| strategy.name() == s)
            .ok_or_else(|| format!("unknown strategy {s:?}"))
    }
}

/// Places one chunk: scores (for fuzzy strategies), selects, and returns
/// the successor state plus the chosen id. The input state is unchanged.
///
/// A zero-mass score set under `FuzzySample` is remapped to a uniform
/// random selection over all resources so the chunk is always placed.
pub fn step(
    state: &ClusterState,
    strategy: Strategy,
    rb: &RuleBase,
    seed: RngSeed,
    step_index: u64,
) -> Result<(ClusterState, String), SimError> {
    let index = match strategy {
        Strategy::AlwaysFirst => 0,
        Strategy::RoundRobin => (step_index % state.resources.len() as u64) as usize,
        Strategy::FuzzyArgmax => {
            let scores = state.scores(rb);
            let chosen = select_argmax(&scores).expect("cluster is nonempty");
            index_of(state, chosen)
        }
        Strategy::FuzzySample => {
            let scores = state.scores(rb);
            let chosen = match normalize(&scores) {
                Ok(dist) => dist.sample(seed, step_index).to_string(),
                Err(SelectError::ZeroMass) => {
                    let ids = state.resources.iter().map(|r| r.id.clone()).collect();
                    let uniform =
                        SelectionDistribution::uniform(ids).expect("cluster is nonempty");
                    uniform.sample(seed, step_index).to_string()
                }
                Err(SelectError::NegativeScore { id, p }) => {
                    return Err(SimError::NegativeScore { id, p })
                }
                Err(SelectError::EmptyScoreSet) => unreachable!("cluster is nonempty"),
            };
            index_of(state, &chosen)
        }
    };
    let chosen_id = state.resources[index].id.clone();
    Ok((state.with_placement(index), chosen_id))
}

fn index_of(state: &ClusterState, id: &str) -> usize {
    state
        .resources
        .iter()
        .position(|r| r.id == id)
        .expect("id came from this state")
}

/// One traced placement: the step number, the chosen resource, and the
/// score snapshot (one p per resource, in resource order) that the step
/// observed before placing.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceRow {
    pub step: u64,
    pub chosen_id: String,
    pub scores: Vec<f64>,
}

/// Per-resource shares of the placed chunks; only defined once something
/// has been placed.
#[derive(Debug, Clone, PartialEq)]
pub struct ShareSummary {
    pub per_resource: IndexMap<String, f64>,
    pub max_share: f64,
    pub min_share: f64,
}

/// Outcome of a simulation run.
#[derive(Debug, Clone, PartialEq)]
pub struct SimulationReport {
    pub strategy: Strategy,
    pub seed: RngSeed,
    pub chunks: u64,
    pub total_placed: u64,
    pub counts: IndexMap<String, u64>,
    pub shares: Option<ShareSummary>,
    pub trace: Option<Vec<TraceRow>>,
}

impl SimulationReport {
    /// Renders the report as stable, diffable structured text: header
    /// fields, a count/share table, the share extrema, and (when traced)
    /// CSV rows `step,chosen_id,p_<id>...`. All numbers use fixed
    /// 6-decimal formatting.
    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str("schema_version 1\n");
        out.push_str(&format!("strategy {}\n", self.strategy));
        out.push_str(&format!("seed {}\n", self.seed.0));
        out.push_str(&format!("chunks {}\n", self.chunks));
        out.push_str(&format!("total_placed {}\n", self.total_placed));
        out.push('\n');
        out.push_str("id count share\n");
        for (id, count) in &self.counts {
            let share = match &self.shares {
                Some(s) => format!("{:.6}", s.per_resource[id]),
                None => "-".to_string(),
            };
            out.push_str(&format!("{id} {count} {share}\n"));
        }
        out.push('\n');
        match &self.shares {
            Some(s) => {
                out.push_str(&format!("max_share {:.6}\n", s.max_share));
                out.push_str(&format!("min_share {:.6}\n", s.min_share));
            }
            None => {
                out.push_str("max_share -\n");
                out.push_str("min_share -\n");
            }
        }
        if let Some(trace) = &self.trace {
            out.push('\n');
            out.push_str("trace\n");
            out.push_str("step,chosen_id");
            for id in self.counts.keys() {
                out.push_str(&format!(",p_{id}"));
            }
            out.push('\n');
            for row in trace {
                out.push_str(&format!("{},{}", row.step, row.chosen_id));
                for p in &row.scores {
                    out.push_str(&format!(",{p:.6}"));
                }
                out.push('\n');
            }
        }
        out
    }
}

/// Runs `n_chunks` sequential placement steps and aggregates the final
/// counts. With `trace` enabled every placement and its score snapshot is
/// recorded.
pub fn run(
    initial: &ClusterState,
    strategy: Strategy,
    rb: &RuleBase,
    seed: RngSeed,
    n_chunks: u64,
    trace: bool,
) -> Result<SimulationReport, SimError> {
    let mut state = initial.clone();
    let mut rows = trace.then(Vec::new);
    for step_index in 0..n_chunks {
        if let Some(rows) = rows.as_mut() {
            let scores = state.scores(rb).into_iter().map(|s| s.p).collect();
            let (next, chosen_id) = step(&state, strategy, rb, seed, step_index)?;
            rows.push(TraceRow { step: step_index, chosen_id, scores });
            state = next;
        } else {
            let (next, _) = step(&state, strategy, rb, seed, step_index)?;
            state = next;
        }
    }

    let counts: IndexMap<String, u64> = state
        .resources
        .iter()
        .map(|r| (r.id.clone(), r.placed_chunks))
        .collect();
    let shares = (state.total_placed > 0).then(|| {
        let per_resource: IndexMap<String, f64> = state
            .resources
            .iter()
            .map(|r| (r.id.clone(), r.placed_chunks as f64 / state.total_placed as f64))
            .collect();
        let max_share = per_resource.values().cloned().fold(f64::MIN, f64::max);
        let min_share = per_resource.values().cloned().fold(f64::MAX, f64::min);
        ShareSummary { per_resource, max_share, min_share }
    });

    Ok(SimulationReport {
        strategy,
        seed,
        chunks: n_chunks,
        total_placed: state.total_placed,
        counts,
        shares,
        trace: rows,
    })
}

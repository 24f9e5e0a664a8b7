//! Post-inference selection: argmax over scores, or a probability-
//! proportional random trial over the normalized score distribution.
//!
//! # Randomness
//!
//! Sampling is keyed by `(seed, draw_index)` and uses ChaCha8
//! (`rand_chacha::ChaCha8Rng`): the generator is seeded with
//! `seed_from_u64(seed)`, moved to stream `draw_index`, and one `u64` is
//! taken and mapped to `[0, 1)` as `(word >> 11) * 2^-53`. Draw N is
//! therefore reproducible across runs and platforms without replaying
//! draws `1..N-1`.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::resource::ResourceScore;

/// Seed for the deterministic selection trial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RngSeed(pub u64);

#[derive(Debug, Error, PartialEq)]
pub enum SelectError {
    #[error("cannot select from an empty score set")]
    EmptyScoreSet,
    #[error("scores sum to zero: no resource has positive score")]
    ZeroMass,
    #[error("resource {id:?} has negative score {p}")]
    NegativeScore { id: String, p: f64 },
}

/// Ids with their normalized selection weights (non-negative, sum 1).
#[derive(Debug, Clone, PartialEq)]
pub struct SelectionDistribution {
    ids: Vec<String>,
    weights: Vec<f64>,
}

impl SelectionDistribution {
    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Uniform distribution over the given ids.
    pub fn uniform(ids: Vec<String>) -> Result<Self, SelectError> {
        if ids.is_empty() {
            return Err(SelectError::EmptyScoreSet);
        }
        let w = 1.0 / ids.len() as f64;
        let weights = vec![w; ids.len()];
        Ok(Self { ids, weights })
    }

    /// Roulette-wheel draw: returns the id at the smallest index whose
    /// cumulative weight exceeds `u`. Cumulative sums run left to right
    /// and the final positive-weight bucket absorbs any floating-point
    /// residual, so the whole of `[0, 1)` is covered and a zero-weight id
    /// can never be returned.
    pub fn sample(&self, seed: RngSeed, draw_index: u64) -> &str {
        let u = unit_draw(seed, draw_index);
        let mut cumulative = 0.0;
        let mut last_positive = 0;
        for (i, &w) in self.weights.iter().enumerate() {
            if w > 0.0 {
                last_positive = i;
            }
            cumulative += w;
            if u < cumulative {
                return &self.ids[i];
            }
        }
        &self.ids[last_positive]
    }
}

/// One deterministic uniform draw in `[0, 1)` keyed by `(seed, draw_index)`.
fn unit_draw(seed: RngSeed, draw_index: u64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.0);
    rng.set_stream(draw_index);
    // top 53 bits scaled by 2^-53
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Strategy 1: id of the maximal score; ties break to the lowest index.
pub fn select_argmax(scores: &[ResourceScore]) -> Result<&str, SelectError> {
    let mut best: Option<&ResourceScore> = None;
    for score in scores {
        match best {
            Some(b) if score.p <= b.p => {}
            _ => best = Some(score),
        }
    }
    best.map(|s| s.resource_id.as_str())
        .ok_or(SelectError::EmptyScoreSet)
}

/// Strategy 2 preparation: weights `p_i / S` with `S = Σ p_i`.
pub fn normalize(scores: &[ResourceScore]) -> Result<SelectionDistribution, SelectError> {
    if scores.is_empty() {
        return Err(SelectError::EmptyScoreSet);
    }
    for score in scores {
        if score.p < 0.0 {
            return Err(SelectError::NegativeScore {
                id: score.resource_id.clone(),
                p: score.p,
            });
        }
    }
    let total: f64 = scores.iter().map(|s| s.p).sum();
    if total == 0.0 {
        return Err(SelectError::ZeroMass);
    }
    Ok(SelectionDistribution {
        ids: scores.iter().map(|s| s.resource_id.clone()).collect(),
        weights: scores.iter().map(|s| s.p / total).collect(),
    })
}

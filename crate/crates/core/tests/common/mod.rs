//! Shared test oracles, independent of the library's closed-form paths.
#![allow(dead_code)] // not every test binary uses every oracle

/// Discretized centroid: plain Riemann quotient over 10,001 uniform
/// samples of `eval` on `[lo, hi]`. Brute-force counterpart to the
/// closed-form segment integration.
pub fn oracle_centroid(eval: impl Fn(f64) -> f64, lo: f64, hi: f64) -> f64 {
    const SAMPLES: usize = 10_001;
    let mut weighted = 0.0;
    let mut mass = 0.0;
    for i in 0..SAMPLES {
        let x = lo + (hi - lo) * i as f64 / (SAMPLES - 1) as f64;
        let mu = eval(x);
        weighted += x * mu;
        mass += mu;
    }
    weighted / mass
}

fn unit(v: f64) -> f64 {
    v.clamp(0.0, 1.0)
}

/// Hand-coded default curve shapes, written independently of the
/// library's membership evaluation.
pub mod default_shapes {
    use super::unit;

    pub fn speed_high(x: f64) -> f64 {
        unit((x - 20.0) / 60.0)
    }

    pub fn reliability_high(x: f64) -> f64 {
        unit((x - 90.0) / 9.9)
    }

    pub fn concentration_low(x: f64) -> f64 {
        unit(1.0 - x / 50.0)
    }

    pub fn probability_low(x: f64) -> f64 {
        unit(1.0 - x / 0.5)
    }

    pub fn probability_high(x: f64) -> f64 {
        unit((x - 0.5) / 0.5)
    }
}

/// Full hand-built pipeline over the default shapes: min conjunction,
/// clip, max, and the discretized centroid; 0.5 midpoint when nothing
/// fires. Mirrors the production contract without touching its code.
pub fn oracle_default_probability(speed: f64, reliability: f64, concentration: f64) -> f64 {
    use default_shapes::*;

    let s = speed_high(speed);
    let r = reliability_high(reliability);
    let c = concentration_low(concentration);
    let fire_high = s.min(r).min(c);
    let fire_low = (1.0 - s).min(1.0 - r).min(1.0 - c);
    if fire_high == 0.0 && fire_low == 0.0 {
        return 0.5;
    }
    oracle_centroid(
        |x| {
            let high = probability_high(x).min(fire_high);
            let low = probability_low(x).min(fire_low);
            high.max(low)
        },
        0.0,
        1.0,
    )
}

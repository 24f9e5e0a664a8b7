//! Property tests for the inference kernel and the selectors.

use fuzzy_placer::inference::{defuzzify_centroid, AggregatedOutput};
use fuzzy_placer::mf::MembershipFunction;
use fuzzy_placer::resource::{default_rulebase, score_all, ResourceMetrics, ResourceScore};
use fuzzy_placer::rules::RuleAtom;
use fuzzy_placer::selector::{normalize, select_argmax, RngSeed};
use fuzzy_placer::variable::Universe;
use proptest::prelude::*;

/// Random curve over [0, 1] with 2..=6 breakpoints spaced >= 0.05.
fn curve_strategy() -> impl Strategy<Value = MembershipFunction> {
    (
        proptest::collection::vec(0.05f64..0.45, 1..=5),
        proptest::collection::vec(0.0f64..=1.0, 6),
        0.0f64..0.3,
    )
        .prop_map(|(gaps, mus, start)| {
            let mut x = start;
            let mut points = vec![(x, mus[0])];
            for (i, gap) in gaps.iter().enumerate() {
                x += gap;
                points.push((x, mus[i + 1]));
            }
            MembershipFunction::new(points).unwrap()
        })
}

fn metrics_strategy() -> impl Strategy<Value = ResourceMetrics> {
    (0.0f64..=150.0, 0.0f64..=100.0, 0.0f64..=100.0)
        .prop_map(|(s, r, c)| ResourceMetrics::new(s, r, c).unwrap())
}

proptest! {
    #[test]
    fn degree_stays_in_unit_interval(mf in curve_strategy(), x in -1.0f64..2.0) {
        let d = mf.degree(x);
        prop_assert!((0.0..=1.0).contains(&d));
    }

    #[test]
    fn degree_is_linear_between_breakpoints(mf in curve_strategy()) {
        for w in mf.breakpoints().windows(2) {
            let mid = 0.5 * (w[0].0 + w[1].0);
            let expected = 0.5 * (w[0].1 + w[1].1);
            prop_assert!((mf.degree(mid) - expected).abs() <= 1e-12);
        }
    }

    #[test]
    fn clip_is_pointwise_min(mf in curve_strategy(), strength in 0.0f64..=1.0) {
        let clipped = mf.clip(strength);
        let (lo, hi) = mf.span();
        for i in 0..1000 {
            let x = lo - 0.1 + (hi - lo + 0.2) * i as f64 / 999.0;
            let expected = mf.degree(x).min(strength);
            prop_assert!((clipped.degree(x) - expected).abs() <= 1e-12);
        }
    }

    #[test]
    fn max_is_pointwise_max(a in curve_strategy(), b in curve_strategy()) {
        let m = a.pointwise_max(&b);
        for i in 0..1000 {
            let x = -0.2 + 1.4 * i as f64 / 999.0;
            let expected = a.degree(x).max(b.degree(x));
            prop_assert!((m.degree(x) - expected).abs() <= 1e-12,
                "at x={x}: {} vs {}", m.degree(x), expected);
        }
    }

    #[test]
    fn complement_toggle_restores_degree(metrics in metrics_strategy()) {
        let rb = default_rulebase();
        let inputs = [
            ("speed".to_string(), metrics.speed),
            ("reliability".to_string(), metrics.reliability),
            ("concentration".to_string(), metrics.concentration),
        ].into_iter().collect();
        let atom = RuleAtom::new("speed", "высокая");
        let mut twice = atom.clone();
        twice.complemented = !twice.complemented;
        twice.complemented = !twice.complemented;
        let original = rb.atom_degree(&atom, &inputs).unwrap();
        let toggled = rb.atom_degree(&twice, &inputs).unwrap();
        prop_assert_eq!(original.to_bits(), toggled.to_bits());
    }

    #[test]
    fn firing_strength_is_one_of_the_atom_degrees(metrics in metrics_strategy()) {
        let rb = default_rulebase();
        let inputs = [
            ("speed".to_string(), metrics.speed),
            ("reliability".to_string(), metrics.reliability),
            ("concentration".to_string(), metrics.concentration),
        ].into_iter().collect();
        for rule in rb.rules() {
            let strength = rb.firing_strength(rule, &inputs).unwrap();
            let degrees: Vec<f64> = rule.antecedent.iter()
                .map(|a| rb.atom_degree(a, &inputs).unwrap())
                .collect();
            prop_assert!(degrees.iter().all(|&d| strength <= d));
            prop_assert!(degrees.iter().any(|&d| d.to_bits() == strength.to_bits()));
        }
    }

    #[test]
    fn centroid_lies_within_the_universe(mf in curve_strategy()) {
        let universe = Universe::new(0.0, 1.0).unwrap();
        if let Ok(c) = defuzzify_centroid(&AggregatedOutput::new(mf), universe) {
            prop_assert!((0.0..=1.0).contains(&c));
        }
    }

    #[test]
    fn centroid_is_scaling_invariant(mf in curve_strategy(), c in 0.01f64..=1.0) {
        let universe = Universe::new(0.0, 1.0).unwrap();
        let base = defuzzify_centroid(&AggregatedOutput::new(mf.clone()), universe);
        let scaled_curve = MembershipFunction::new(
            mf.breakpoints().iter().map(|&(x, mu)| (x, c * mu)).collect(),
        ).unwrap();
        let scaled = defuzzify_centroid(&AggregatedOutput::new(scaled_curve), universe);
        if let (Ok(a), Ok(b)) = (base, scaled) {
            prop_assert!((a - b).abs() <= 1e-9);
        }
    }

    #[test]
    fn infer_output_within_universe(metrics in metrics_strategy()) {
        let rb = default_rulebase();
        let inputs = [
            ("speed".to_string(), metrics.speed),
            ("reliability".to_string(), metrics.reliability),
            ("concentration".to_string(), metrics.concentration),
        ].into_iter().collect();
        if let Ok(p) = rb.infer(&inputs) {
            prop_assert!((0.0..=1.0).contains(&p));
        }
    }

    /// Scores quantized to 1e-6 (the CLI's printed resolution) keep their
    /// argmax under positive scaling.
    #[test]
    fn argmax_choice_is_scale_invariant(
        raw in proptest::collection::vec(0u32..=1_000_000, 1..8),
        c in prop_oneof![Just(0.01f64), Just(1.0), Just(100.0), Just(0.125), Just(8.0)],
    ) {
        let scores: Vec<ResourceScore> = raw.iter().enumerate()
            .map(|(i, &k)| ResourceScore { resource_id: format!("r{i}"), p: k as f64 * 1e-6 })
            .collect();
        let scaled: Vec<ResourceScore> = scores.iter()
            .map(|s| ResourceScore { resource_id: s.resource_id.clone(), p: s.p * c })
            .collect();
        prop_assert_eq!(select_argmax(&scores).unwrap(), select_argmax(&scaled).unwrap());
    }

    /// Power-of-two scaling is exact in binary floating point, so the
    /// normalized weights must match bit for bit.
    #[test]
    fn normalize_is_invariant_under_pow2_scaling(
        raw in proptest::collection::vec(1u32..=1_000_000, 1..8),
        exp in -8i32..=8,
    ) {
        let c = 2.0f64.powi(exp);
        let scores: Vec<ResourceScore> = raw.iter().enumerate()
            .map(|(i, &k)| ResourceScore { resource_id: format!("r{i}"), p: k as f64 * 1e-6 })
            .collect();
        let scaled: Vec<ResourceScore> = scores.iter()
            .map(|s| ResourceScore { resource_id: s.resource_id.clone(), p: s.p * c })
            .collect();
        let w1 = normalize(&scores).unwrap();
        let w2 = normalize(&scaled).unwrap();
        for (a, b) in w1.weights().iter().zip(w2.weights()) {
            prop_assert_eq!(a.to_bits(), b.to_bits());
        }
        // identical weights give identical draws
        for i in 0..4 {
            prop_assert_eq!(w1.sample(RngSeed(9), i), w2.sample(RngSeed(9), i));
        }
    }

    /// General positive scaling agrees to within a unit in the last place.
    #[test]
    fn normalize_is_stable_under_general_scaling(
        raw in proptest::collection::vec(1u32..=1_000_000, 1..8),
        c in 0.01f64..=100.0,
    ) {
        let scores: Vec<ResourceScore> = raw.iter().enumerate()
            .map(|(i, &k)| ResourceScore { resource_id: format!("r{i}"), p: k as f64 * 1e-6 })
            .collect();
        let scaled: Vec<ResourceScore> = scores.iter()
            .map(|s| ResourceScore { resource_id: s.resource_id.clone(), p: s.p * c })
            .collect();
        let w1 = normalize(&scores).unwrap();
        let w2 = normalize(&scaled).unwrap();
        for (a, b) in w1.weights().iter().zip(w2.weights()) {
            prop_assert!((a - b).abs() <= 1e-12);
        }
    }

    #[test]
    fn score_all_is_permutation_equivariant(
        metrics in proptest::collection::vec(metrics_strategy(), 1..6),
        rotation in 0usize..6,
    ) {
        let rb = default_rulebase();
        let rows: Vec<(String, ResourceMetrics)> = metrics.iter().enumerate()
            .map(|(i, &m)| (format!("r{i}"), m))
            .collect();
        let mut rotated = rows.clone();
        rotated.rotate_left(rotation % rows.len());

        let scores = score_all(&rows, &rb).unwrap();
        let rotated_scores = score_all(&rotated, &rb).unwrap();
        for rs in &rotated_scores {
            let original = scores.iter().find(|s| s.resource_id == rs.resource_id).unwrap();
            prop_assert_eq!(original.p.to_bits(), rs.p.to_bits());
        }
    }
}

use std::f64::consts::{FRAC_PI_2, PI};

use entangler::experiments::{
    cnot_mixed_distance, delta_e_distribution, dw_distribution, entangling_power,
    map_chunks, multiqubit_delta_e, random_pair_distribution, run_parallel, ExperimentSpec,
    SamplingPlan,
};
use entangler::gates::GateSpec;
use entangler::histogram::{compare_histograms, BinSpec, Histogram, HistogramMeta};
use entangler::measures::{eof_from_concurrence, pure_state_entanglement};
use entangler::metrics::MetricKind;
use entangler::random::haar_pure_state_factored;

/// `ε_P(CNOT)` by quadrature.
///
/// CNOT maps `|a>|b>` to a state of concurrence `2|a0 a1||b0² - b1²|`.
/// With `|a0|² = sin² t`, `|b0|² = sin² s` (both uniform under Haar) and
/// relative phase `φ` of `b`, `|b0² - b1²|² = cos²2s + sin²2s sin²φ`.
fn cnot_entangling_power_quadrature(n: usize) -> f64 {
    let h_t = FRAC_PI_2 / n as f64;
    let h_phi = PI / n as f64;
    let mut sum = 0.0;
    for i in 0..n {
        let t = (i as f64 + 0.5) * h_t;
        // d(sin² t) = sin 2t dt, and |a0 a1| = sin(2t)/2
        let wa = (2.0 * t).sin();
        for j in 0..n {
            let s = (j as f64 + 0.5) * h_t;
            let wb = (2.0 * s).sin();
            for k in 0..n {
                let phi = (k as f64 + 0.5) * h_phi;
                let b = ((2.0 * s).cos().powi(2) + ((2.0 * s).sin() * phi.sin()).powi(2)).sqrt();
                let c = (wa * b).min(1.0);
                sum += wa * wb * eof_from_concurrence(c).unwrap();
            }
        }
    }
    sum * h_t * h_t * h_phi / PI
}

#[test]
fn cnot_entangling_power_matches_quadrature() {
    let oracle = cnot_entangling_power_quadrature(160);
    let finer = cnot_entangling_power_quadrature(240);
    assert!((oracle - finer).abs() < 1e-5, "{oracle} {finer}");
    let plan = SamplingPlan::new(100_000, 2024);
    let r = entangling_power(&GateSpec::Cnot, BinSpec::unit(100).unwrap(), &plan).unwrap();
    let (eps, se) = (r.scalar("epsilon_p").unwrap(), r.scalar("epsilon_p_stderr").unwrap());
    assert!((eps - finer).abs() < 3.0 * se, "{eps} ± {se} vs {finer}");
}

#[test]
fn identity_and_swap_have_zero_entangling_power() {
    let plan = SamplingPlan::new(5_000, 1);
    let bins = BinSpec::unit(100).unwrap();
    for gate in ["canon:0,0,0", "canon:0.7853981633974483,0.7853981633974483,0.7853981633974483"] {
        let g: GateSpec = gate.parse().unwrap();
        let r = entangling_power(&g, bins, &plan).unwrap();
        assert!(r.scalar("epsilon_p").unwrap() < 1e-12, "{gate}");
    }
}

#[test]
fn cnot_reaches_the_extremes() {
    let plan = SamplingPlan::new(100_000, 3);
    let r = delta_e_distribution(&GateSpec::Cnot, BinSpec::delta_e(201).unwrap(), &plan).unwrap();
    assert!(r.scalar("max_abs_delta_e").unwrap() > 0.95);
}

#[test]
fn random_pair_is_symmetric() {
    let plan = SamplingPlan::new(50_000, 4);
    let r = random_pair_distribution(3, BinSpec::delta_e(201).unwrap(), &plan).unwrap();
    let h = &r.histogram;
    let mut mirrored = Histogram::new(*h.spec(), HistogramMeta::default());
    for (i, &c) in h.counts().iter().enumerate() {
        let x = -h.spec().center(i);
        for _ in 0..c {
            mirrored.add(x).unwrap();
        }
    }
    let cmp = compare_histograms(h, &mirrored).unwrap();
    assert!(cmp.agrees_within(3.0), "{cmp:?}");
    assert!(r.scalar("mean_delta_e").unwrap().abs() < 4.0 * r.scalar("mean_delta_e_stderr").unwrap());
}

#[test]
fn dw_is_biased_low() {
    let r = dw_distribution(BinSpec::unit(100).unwrap(), &SamplingPlan::new(50_000, 5)).unwrap();
    assert!(r.scalar("mode_dw").unwrap() < r.scalar("mean_dw").unwrap());
    assert!(r.scalar("min_dw_raw").unwrap() >= -1e-9);
    assert!(r.scalar("max_dw_raw").unwrap() <= 1.0 + 1e-9);
}

#[test]
fn spectator_pairs_agree() {
    let r = multiqubit_delta_e(3, BinSpec::delta_e(201).unwrap(), &SamplingPlan::new(50_000, 6)).unwrap();
    let cmp = compare_histograms(r.companion("ac").unwrap(), r.companion("bc").unwrap()).unwrap();
    assert!(cmp.agrees_within(3.0), "{cmp:?}");
    assert!(r.scalar("width").unwrap() < r.scalar("width_random").unwrap());
}

#[test]
fn region_histograms_integrate_to_one() {
    let plan = SamplingPlan::new(3_000, 7);
    for metric in [MetricKind::Bures, MetricKind::HilbertSchmidt] {
        let r = cnot_mixed_distance(metric, BinSpec::distance(200).unwrap(), &plan).unwrap();
        for h in [&r.histogram, r.companion("region_i").unwrap(), r.companion("region_ii").unwrap()] {
            assert!((h.integral() - 1.0).abs() < 1e-9);
        }
    }
}

#[test]
fn region_i_moves_at_most_one_ball_diameter() {
    // HS balls are round, so both ρ and CNOT ρ CNOT† lie within r of I/4
    let plan = SamplingPlan::new(3_000, 8);
    let r = cnot_mixed_distance(MetricKind::HilbertSchmidt, BinSpec::distance(200).unwrap(), &plan).unwrap();
    let radius = r.scalar("ball_radius").unwrap();
    let h = r.companion("region_i").unwrap();
    let beyond: u64 = h
        .counts()
        .iter()
        .enumerate()
        .filter(|(i, _)| h.spec().center(*i) > 2.0 * radius + h.bin_width())
        .map(|(_, c)| c)
        .sum();
    assert_eq!(beyond, 0);
}

#[test]
fn worker_count_does_not_change_counts() {
    let specs = [
        ExperimentSpec::DeltaE {
            gate: GateSpec::Cnot,
            bins: BinSpec::delta_e(201).unwrap(),
        },
        ExperimentSpec::RandomPair {
            n_a: 3,
            bins: BinSpec::delta_e(201).unwrap(),
        },
        ExperimentSpec::CnotMixedDistance {
            metric: MetricKind::HilbertSchmidt,
            bins: BinSpec::distance(200).unwrap(),
        },
        ExperimentSpec::DwDistribution {
            bins: BinSpec::unit(100).unwrap(),
        },
        ExperimentSpec::MultiqubitDeltaE {
            n: 3,
            bins: BinSpec::delta_e(201).unwrap(),
        },
    ];
    for spec in &specs {
        let one = run_parallel(spec, 5_000, 1, 11).unwrap();
        let eight = run_parallel(spec, 5_000, 8, 11).unwrap();
        assert_eq!(one.histogram, eight.histogram, "{spec:?}");
        assert_eq!(one.companions, eight.companions);
        assert_eq!(one.scalars, eight.scalars);
    }
}

#[test]
fn stderr_scales_as_inverse_root_n() {
    let se = |n| {
        let r = entangling_power(&GateSpec::Cnot, BinSpec::unit(100).unwrap(), &SamplingPlan::new(n, 12)).unwrap();
        r.scalar("epsilon_p_stderr").unwrap()
    };
    let (s1, s2, s4) = (se(20_000), se(40_000), se(80_000));
    let r2 = s1 / s2;
    let r4 = s1 / s4;
    assert!((r2 / 2f64.sqrt() - 1.0).abs() < 0.2, "{r2}");
    assert!((r4 / 2.0 - 1.0).abs() < 0.2, "{r4}");
}

#[test]
fn merged_chunk_histograms_equal_the_concatenated_histogram() {
    let bins = BinSpec::delta_e(201).unwrap();
    let plan = SamplingPlan::new(5_000, 13).with_chunk_size(700).with_workers(3);
    let gate = entangler::gates::cnot();
    let dims = entangler::FactoredDims::qubits(2);
    let chunks = map_chunks(&plan, |rng, n| {
        (0..n)
            .map(|_| {
                let psi = haar_pure_state_factored(&dims, rng);
                let after = pure_state_entanglement(&psi.evolve(&gate)?)?.value();
                Ok(after - pure_state_entanglement(&psi)?.value())
            })
            .collect::<entangler::Result<Vec<f64>>>()
    })
    .unwrap();
    let mut merged = Histogram::new(bins, HistogramMeta::default());
    let mut flat = Histogram::new(bins, HistogramMeta::default());
    for chunk in &chunks {
        let mut h = Histogram::new(bins, HistogramMeta::default());
        for &x in chunk {
            h.add(x).unwrap();
            flat.add(x).unwrap();
        }
        merged.merge(&h).unwrap();
    }
    assert_eq!(merged, flat);
    let report = delta_e_distribution(&GateSpec::Cnot, bins, &plan).unwrap();
    assert_eq!(report.histogram.counts(), flat.counts());
}

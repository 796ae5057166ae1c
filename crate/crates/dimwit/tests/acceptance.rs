//! Acceptance suite: one test per release criterion, each printing a
//! PASS line with the measured numbers. Run with
//! `cargo test -p dimwit --test acceptance -- --nocapture`.

use dimwit::classical::classical_bound;
use dimwit::certify::certify;
use dimwit::qmath::{HermitianMatrix, Sign, StateVector};
use dimwit::quantum::{
    optimize, quantum_value, random_dichotomic, random_state, seesaw_measurement_update,
    seesaw_state_update, QuantumStrategy, SeesawConfig,
};
use dimwit::sampling::{rng_from_seed, uniform, ChaCha8Rng};
use dimwit::settings::{angles_for, experiment, experiment_ids, hwp_state, HwpAngles};
use dimwit::simulate::{run_experiment, RunConfig, WitnessEstimate};
use dimwit::witness::{algebraic_max, catalog, evaluate, Witness};
use std::time::Instant;

const SQRT2: f64 = std::f64::consts::SQRT_2;

#[test]
fn criterion_1_classical_bounds_exact() {
    let start = Instant::now();
    let (i3, _) = catalog("i3").unwrap();
    let (i4, _) = catalog("i4").unwrap();
    let cases = [
        (&i3, 2usize, 3.0),
        (&i3, 3, 5.0),
        (&i4, 2, 5.0),
        (&i4, 3, 7.0),
        (&i4, 4, 9.0),
    ];
    for (w, d, expected) in cases {
        let (value, _) = classical_bound(w, d).unwrap();
        assert_eq!(value, expected, "classical bound of {} at d={d}", w.name());
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "enumeration took {elapsed:.2?}");
    println!("criterion 1 PASS: five classical bounds exact in {elapsed:.2?}");
}

#[test]
fn criterion_2_quantum_bounds_via_seesaw() {
    let start = Instant::now();
    let cfg = SeesawConfig { restarts: 64, seed: 42, ..Default::default() };
    let (i3, _) = catalog("i3").unwrap();
    let (i4, _) = catalog("i4").unwrap();
    let cases = [
        (&i3, 2usize, 1.0 + 2.0 * SQRT2),
        (&i4, 2, 6.0),
        (&i4, 3, 2.0 + (13.0 + 16.0 * SQRT2).sqrt()),
        (&i3, 3, 5.0),
        (&i4, 4, 9.0),
    ];
    for (w, d, expected) in cases {
        let result = optimize(w, d, &cfg).unwrap();
        assert!(
            (result.best_value - expected).abs() < 1e-6,
            "{} at d={d}: see-saw {} vs {expected}",
            w.name(),
            result.best_value
        );
        println!(
            "  {} d={d}: {:.9} (expected {expected:.9})",
            w.name(),
            result.best_value
        );
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 30.0, "see-saw took {elapsed:.2?}");
    println!("criterion 2 PASS: five quantum bounds within 1e-6 in {elapsed:.2?}");
}

#[test]
fn criterion_3_catalog_golden_values() {
    let expected = [
        ("i3-qubit", 1.0 + 2.0 * SQRT2),
        ("i3-qutrit", 5.0),
        ("i4-qubit", 6.0),
        ("i4-trit", 7.0),
        ("i4-qutrit", 2.0 + (13.0 + 16.0 * SQRT2).sqrt()),
        ("i4-ququart", 9.0),
        ("i4-bb84", SQRT2 + 2.0 + 5.0_f64.sqrt()),
    ];
    assert!((SQRT2 + 2.0 + 5.0_f64.sqrt() - 5.650281539872885).abs() < 1e-12);
    for (id, value) in expected {
        let spec = experiment(id).unwrap();
        assert_eq!(spec.expected_value, value, "{id}: stored closed form");
        let recomputed = spec.recomputed_value().unwrap();
        assert!(
            (recomputed - value).abs() < 1e-9,
            "{id}: recomputed {recomputed} vs closed form {value}"
        );
        println!("  {id}: {recomputed:.9}");
    }
    println!("criterion 3 PASS: all seven catalog values match closed forms within 1e-9");
}

#[test]
fn criterion_4_catalog_optima_are_stationary() {
    // The BB84 configuration fixes the cryptographic states and only its
    // measurements are optimal, so only measurement updates apply there;
    // the other five quantum optima are stationary under full sweeps.
    for id in experiment_ids() {
        let spec = experiment(id).unwrap();
        let Some(q) = spec.quantum_strategy() else {
            continue;
        };
        let w = spec.witness().unwrap();
        let signed = w.signed(Sign::Plus);
        let mut states = q.states().to_vec();
        let mut observables = q.observables().to_vec();
        let before = spec.recomputed_value().unwrap();
        if id != "i4-bb84" {
            for (x, state) in states.iter_mut().enumerate() {
                *state = seesaw_state_update(&signed, &observables, x);
            }
        }
        for (y, obs) in observables.iter_mut().enumerate() {
            *obs = seesaw_measurement_update(&signed, &states, y, Sign::Plus);
        }
        let strategy = QuantumStrategy::new(states, observables).unwrap();
        let after = evaluate(&w, &strategy.expectation_table()).unwrap();
        let drift = (after - before).abs();
        assert!(drift < 1e-10, "{id}: sweep drifted by {drift:.3e}");
        println!("  {id}: sweep drift {drift:.2e}");
    }
    println!("criterion 4 PASS: catalog optima are see-saw stationary (< 1e-10)");
}

#[test]
fn criterion_5_simulation_statistics_at_default_rate() {
    let start = Instant::now();
    let seeds = 1000u64;
    for id in experiment_ids() {
        let spec = experiment(id).unwrap();
        let expected = spec.expected_value;
        // experiments whose used expectations are all exactly +-1 reproduce
        // the value with zero error; coverage applies to the rest
        let table = spec.theoretical_expectations();
        let w = spec.witness().unwrap();
        let degenerate = (0..w.preparations()).all(|x| {
            (0..w.measurements())
                .all(|y| w.coeff(x, y) == 0.0 || table.entry(x, y).abs() == 1.0)
        });

        let mut covered = 0u32;
        let mut min_bb84_significance = f64::INFINITY;
        for seed in 0..seeds {
            let est = run_experiment(id, &RunConfig { seed, ..Default::default() }).unwrap();
            if degenerate {
                assert_eq!(est.value, expected, "{id} seed {seed}: degenerate run not exact");
                assert_eq!(est.sigma, 0.0);
                covered += 1;
            } else {
                assert!(est.sigma > 0.0, "{id} seed {seed}: sigma unexpectedly zero");
                if (est.value - expected).abs() < 3.0 * est.sigma {
                    covered += 1;
                }
            }
            if id == "i4-bb84" {
                let significance = (est.value - 5.0) / est.sigma;
                min_bb84_significance = min_bb84_significance.min(significance);
                assert!(
                    significance > 20.0,
                    "{id} seed {seed}: bit bound exceeded by only {significance:.1} sigma"
                );
            }
        }
        assert!(
            covered * 100 >= seeds as u32 * 98,
            "{id}: coverage {covered}/{seeds}"
        );
        if id == "i4-bb84" {
            println!(
                "  {id}: coverage {covered}/{seeds}, min bit-bound significance {min_bb84_significance:.1} sigma"
            );
        } else {
            println!("  {id}: coverage {covered}/{seeds}");
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 300.0, "simulation sweep took {elapsed:.2?}");
    println!("criterion 5 PASS: 3-sigma coverage >= 98% across 7x1000 seeded runs in {elapsed:.2?}");
}

#[test]
fn criterion_6_certification_of_exact_values() {
    let expected = [
        ("i3-qubit", 3usize, 2usize),
        ("i3-qutrit", 3, 3),
        ("i4-qubit", 3, 2),
        ("i4-trit", 3, 3),
        ("i4-qutrit", 4, 3),
        ("i4-ququart", 4, 4),
        ("i4-bb84", 3, 2),
    ];
    for (id, min_classical, min_quantum) in expected {
        let spec = experiment(id).unwrap();
        let est = WitnessEstimate { value: spec.expected_value, sigma: 0.0, counts: vec![] };
        let cert = certify(&spec.witness_name, &est, 3.0).unwrap();
        assert_eq!(
            (cert.min_classical_dim, cert.min_quantum_dim),
            (min_classical, min_quantum),
            "{id}"
        );
        assert!(cert.min_quantum_dim <= cert.min_classical_dim);
        println!(
            "  {id}: min classical dim {}, min quantum dim {}",
            cert.min_classical_dim, cert.min_quantum_dim
        );
    }
    println!("criterion 6 PASS: exact catalog values certify the published bound chains");
}

#[test]
fn criterion_7_hwp_parametrization() {
    let mut rng = rng_from_seed(2024);
    let pi = std::f64::consts::PI;
    let mut worst_norm = 0.0f64;
    for _ in 0..10_000 {
        let angles = HwpAngles::new(
            (uniform(&mut rng) - 0.5) * 4.0 * pi,
            (uniform(&mut rng) - 0.5) * 4.0 * pi,
            (uniform(&mut rng) - 0.5) * 4.0 * pi,
        )
        .unwrap();
        worst_norm = worst_norm.max((hwp_state(&angles).norm() - 1.0).abs());
    }
    assert!(worst_norm <= 1e-12, "worst norm deviation {worst_norm:.3e}");

    let mut states_checked = 0;
    let mut worst_round_trip = 0.0f64;
    for id in experiment_ids() {
        let spec = experiment(id).unwrap();
        let strategy = spec.as_quantum().unwrap();
        for state in strategy.states() {
            let angles = angles_for(state).unwrap();
            let back = hwp_state(&angles);
            let mut padded = [0.0f64; 4];
            for (i, amp) in state.amplitudes().iter().enumerate() {
                padded[i] = amp.re;
            }
            let dot: f64 =
                back.amplitudes().iter().zip(&padded).map(|(b, &p)| b.re * p).sum();
            let sign = if dot >= 0.0 { 1.0 } else { -1.0 };
            for (b, &p) in back.amplitudes().iter().zip(&padded) {
                worst_round_trip = worst_round_trip.max((b.re - sign * p).abs());
            }
            states_checked += 1;
        }
    }
    assert!(worst_round_trip <= 1e-9, "worst round trip {worst_round_trip:.3e}");
    println!(
        "criterion 7 PASS: 10^4 angle triples unit-norm (worst {worst_norm:.2e}); \
         {states_checked} catalog states round-trip (worst {worst_round_trip:.2e})"
    );
}

fn random_witness(rng: &mut ChaCha8Rng) -> Witness {
    use rand_chacha::rand_core::RngCore;
    let n = 2 + (rng.next_u64() % 3) as usize;
    let m = 2 + (rng.next_u64() % 3) as usize;
    loop {
        let coeffs: Vec<Vec<f64>> = (0..n)
            .map(|_| {
                (0..m)
                    .map(|_| ((uniform(rng) * 4.0 - 2.0) * 4.0).round() / 4.0)
                    .collect()
            })
            .collect();
        if coeffs.iter().flatten().any(|&c| c != 0.0) {
            let take_abs = rng.next_u64().is_multiple_of(2);
            return Witness::new("random", coeffs, take_abs).unwrap();
        }
    }
}

#[test]
fn criterion_8_property_suites_on_random_witnesses() {
    let mut rng = rng_from_seed(4242);
    let witnesses: Vec<Witness> = (0..100).map(|_| random_witness(&mut rng)).collect();

    // (a) see-saw monotone ascent, driven through the public update ops
    for (i, w) in witnesses.iter().enumerate() {
        let d = 2 + (i % 2); // 2 or 3
        let branch = if w.take_abs() {
            if i % 2 == 0 { Sign::Plus } else { Sign::Minus }
        } else {
            Sign::Plus
        };
        let signed = w.signed(branch);
        let mut states: Vec<StateVector> = (0..w.preparations())
            .map(|_| random_state(&mut rng, d).unwrap())
            .collect();
        let mut observables: Vec<HermitianMatrix> = (0..w.measurements())
            .map(|_| random_dichotomic(&mut rng, d).unwrap())
            .collect();
        let objective = |st: &[StateVector], ob: &[HermitianMatrix]| -> f64 {
            let strategy = QuantumStrategy::new(st.to_vec(), ob.to_vec()).unwrap();
            quantum_value(&strategy, &signed).unwrap()
        };
        let mut prev = objective(&states, &observables);
        for _ in 0..25 {
            for (x, state) in states.iter_mut().enumerate() {
                *state = seesaw_state_update(&signed, &observables, x);
            }
            for (y, obs) in observables.iter_mut().enumerate() {
                *obs = seesaw_measurement_update(&signed, &states, y, Sign::Plus);
            }
            let now = objective(&states, &observables);
            assert!(now >= prev - 1e-12, "witness {i}: ascent broke ({prev} -> {now})");
            prev = now;
        }
    }
    println!("  monotone ascent held on 100 random witnesses");

    // (b) classical bound monotone in d, saturating at d = N
    for (i, w) in witnesses.iter().enumerate() {
        let mut prev = f64::NEG_INFINITY;
        for d in 1..=w.preparations() {
            let (v, _) = classical_bound(w, d).unwrap();
            assert!(v >= prev - 1e-12, "witness {i}: classical bound not monotone");
            prev = v;
        }
        assert!(
            (prev - algebraic_max(w)).abs() < 1e-12,
            "witness {i}: d=N bound {prev} vs algebraic max {}",
            algebraic_max(w)
        );
    }
    println!("  classical bounds monotone and saturating on 100 random witnesses");

    // (c) quantum lower bound >= classical bound at equal d
    let cfg = SeesawConfig { restarts: 16, max_iters: 200, seed: 777, ..Default::default() };
    for (i, w) in witnesses.iter().enumerate() {
        for d in 2..=3 {
            let q = optimize(w, d, &cfg).unwrap().best_value;
            let (c, _) = classical_bound(w, d).unwrap();
            assert!(q <= algebraic_max(w) + 1e-9);
            assert!(
                q >= c - 1e-9,
                "witness {i} d={d}: quantum {q} below classical {c}"
            );
        }
    }
    println!("  quantum >= classical at equal d on 100 random witnesses");
    println!("criterion 8 PASS: property suites hold on 100 random witnesses");
}

//! Quantum witness values and their maximization by multi-restart see-saw.
//!
//! A quantum strategy is a set of pure states and dichotomic observables of a
//! common dimension. Fixing the observables, each state's optimal update is
//! the top eigenvector of its coefficient-weighted observable sum; fixing the
//! states, each observable's optimal update replaces the eigenvalues of the
//! coefficient-weighted state sum by their signs. Both steps are exact
//! maximizations, so the objective never decreases and each restart converges
//! to a stationary point. The best value over restarts is a certified lower
//! bound on the d-dimensional quantum maximum.

use crate::error::{Error, Result};
use crate::qmath::{
    eigh, expectation, sign_observable, Complex64, HermitianMatrix, Sign, StateVector,
};
use crate::sampling::{rng_from_seed, standard_normal, ChaCha8Rng};
use crate::witness::{evaluate, ExpectationTable, Witness};
use serde::{Deserialize, Serialize};

/// Tolerance on M² = 𝟙 for dichotomic observables.
pub const INVOLUTION_TOL: f64 = 1e-8;

/// Pure states and dichotomic observables of a common dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumStrategy {
    d: usize,
    states: Vec<StateVector>,
    observables: Vec<HermitianMatrix>,
}

impl QuantumStrategy {
    pub fn new(states: Vec<StateVector>, observables: Vec<HermitianMatrix>) -> Result<Self> {
        let d = states
            .first()
            .map(StateVector::dim)
            .or_else(|| observables.first().map(HermitianMatrix::dim))
            .ok_or_else(|| Error::Dimension("strategy needs states and observables".into()))?;
        if states.is_empty() || observables.is_empty() {
            return Err(Error::Dimension("strategy needs states and observables".into()));
        }
        if states.iter().any(|s| s.dim() != d) || observables.iter().any(|o| o.dim() != d) {
            return Err(Error::Dimension(
                "states and observables must share one dimension".into(),
            ));
        }
        let eye = HermitianMatrix::identity(d);
        for (y, obs) in observables.iter().enumerate() {
            let sq = obs.mul_raw(obs);
            let dev = sq
                .iter()
                .zip(eye.entries())
                .map(|(a, b)| (a - b).norm())
                .fold(0.0, f64::max);
            if dev > INVOLUTION_TOL {
                return Err(Error::InvariantViolation(format!(
                    "observable {y} deviates from M^2 = 1 by {dev:.3e}"
                )));
            }
        }
        Ok(Self { d, states, observables })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn states(&self) -> &[StateVector] {
        &self.states
    }

    pub fn observables(&self) -> &[HermitianMatrix] {
        &self.observables
    }

    /// The table E_xy = ⟨ψ_x|M_y|ψ_x⟩ of all pairings.
    pub fn expectation_table(&self) -> ExpectationTable {
        let values = self
            .states
            .iter()
            .map(|s| {
                self.observables
                    .iter()
                    .map(|o| {
                        expectation(s, o)
                            .expect("strategy components share one dimension")
                            .clamp(-1.0, 1.0)
                    })
                    .collect()
            })
            .collect();
        ExpectationTable::new(values).expect("clamped expectations are in range")
    }
}

#[derive(Serialize, Deserialize)]
struct StrategyJson {
    d: usize,
    states: Vec<Vec<[f64; 2]>>,
    observables: Vec<Vec<Vec<[f64; 2]>>>,
}

impl Serialize for QuantumStrategy {
    fn serialize<S>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error>
    where
        S: serde::Serializer,
    {
        let raw = StrategyJson {
            d: self.d,
            states: self
                .states
                .iter()
                .map(|s| s.amplitudes().iter().map(|a| [a.re, a.im]).collect())
                .collect(),
            observables: self
                .observables
                .iter()
                .map(|o| {
                    (0..self.d)
                        .map(|i| (0..self.d).map(|j| [o.entry(i, j).re, o.entry(i, j).im]).collect())
                        .collect()
                })
                .collect(),
        };
        raw.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for QuantumStrategy {
    fn deserialize<D>(deserializer: D) -> std::result::Result<Self, D::Error>
    where
        D: serde::Deserializer<'de>,
    {
        use serde::de::Error as DeError;
        let raw = StrategyJson::deserialize(deserializer)?;
        let states = raw
            .states
            .into_iter()
            .map(|amps| {
                StateVector::new(amps.into_iter().map(|[re, im]| Complex64::new(re, im)).collect())
            })
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        let observables = raw
            .observables
            .into_iter()
            .map(|rows| {
                if rows.len() != raw.d || rows.iter().any(|row| row.len() != raw.d) {
                    return Err(Error::Dimension(format!(
                        "observable rows do not form a {0}x{0} matrix",
                        raw.d
                    )));
                }
                let entries: Vec<Complex64> = rows
                    .into_iter()
                    .flatten()
                    .map(|[re, im]| Complex64::new(re, im))
                    .collect();
                HermitianMatrix::new(raw.d, entries)
            })
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        let s = QuantumStrategy::new(states, observables).map_err(D::Error::custom)?;
        if s.d() != raw.d {
            return Err(D::Error::custom("declared dimension disagrees with components"));
        }
        Ok(s)
    }
}

/// See-saw configuration. `seed` drives every restart; restart i derives its
/// own ChaCha stream from `seed ^ i`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeesawConfig {
    pub restarts: u32,
    pub max_iters: u32,
    pub conv_tol: f64,
    pub seed: u64,
    /// Sign taken by zero eigenvalues in measurement updates.
    pub zero_tie: Sign,
}

impl Default for SeesawConfig {
    fn default() -> Self {
        Self {
            restarts: 64,
            max_iters: 500,
            conv_tol: 1e-10,
            seed: 0,
            zero_tie: Sign::Plus,
        }
    }
}

impl SeesawConfig {
    pub fn validate(&self) -> Result<()> {
        if self.restarts < 1 {
            return Err(Error::InvariantViolation("restarts must be at least 1".into()));
        }
        if !self.conv_tol.is_finite() || self.conv_tol <= 0.0 {
            return Err(Error::InvariantViolation("conv_tol must be positive".into()));
        }
        Ok(())
    }
}

/// Outcome of a multi-restart see-saw run.
#[derive(Debug, Clone)]
pub struct SeesawResult {
    pub best_value: f64,
    pub best_strategy: QuantumStrategy,
    pub per_restart_values: Vec<f64>,
    /// Sweeps spent per restart (summed over sign branches).
    pub iterations_used: Vec<u32>,
}

/// The witness value of a strategy.
pub fn quantum_value(s: &QuantumStrategy, w: &Witness) -> Result<f64> {
    if s.states.len() != w.preparations() || s.observables.len() != w.measurements() {
        return Err(Error::Dimension(format!(
            "strategy is {}x{} but witness expects {}x{}",
            s.states.len(),
            s.observables.len(),
            w.preparations(),
            w.measurements()
        )));
    }
    evaluate(w, &s.expectation_table())
}

/// Optimal state update for preparation `x` (0-based): the top eigenvector
/// of Σ_y c_xy M_y.
///
/// For absolute-value witnesses pass the sign-resolved table from
/// [`Witness::signed`]; the update itself is branch-agnostic.
pub fn seesaw_state_update(
    w: &Witness,
    observables: &[HermitianMatrix],
    x: usize,
) -> StateVector {
    let d = observables[0].dim();
    let mut h = HermitianMatrix::build(d, |_, _| Complex64::new(0.0, 0.0));
    for (y, obs) in observables.iter().enumerate() {
        let c = w.coeff(x, y);
        if c != 0.0 {
            h = h.add(&obs.scale(c)).expect("observables share one dimension");
        }
    }
    eigh(&h).top_eigenvector().clone()
}

/// Optimal measurement update for measurement `y` (0-based):
/// sign_observable(Σ_x c_xy |ψ_x⟩⟨ψ_x|, zero_tie).
pub fn seesaw_measurement_update(
    w: &Witness,
    states: &[StateVector],
    y: usize,
    zero_tie: Sign,
) -> HermitianMatrix {
    let d = states[0].dim();
    let mut h = HermitianMatrix::build(d, |_, _| Complex64::new(0.0, 0.0));
    for (x, state) in states.iter().enumerate() {
        let c = w.coeff(x, y);
        if c != 0.0 {
            h = h.add(&state.projector().scale(c)).expect("states share one dimension");
        }
    }
    sign_observable(&h, zero_tie)
}

/// A Haar-random pure state (normalized complex Gaussian components).
pub fn random_state(rng: &mut ChaCha8Rng, d: usize) -> Result<StateVector> {
    loop {
        let amps: Vec<Complex64> = (0..d)
            .map(|_| Complex64::new(standard_normal(rng), standard_normal(rng)))
            .collect();
        if amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt() > 1e-6 {
            return StateVector::from_unnormalized(amps);
        }
    }
}

/// A random dichotomic observable: a Haar-random unitary conjugating a random
/// diagonal sign matrix with at least one −1.
pub fn random_dichotomic(rng: &mut ChaCha8Rng, d: usize) -> Result<HermitianMatrix> {
    // Ginibre ensemble + Gram-Schmidt gives Haar-distributed columns.
    let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(d);
    while cols.len() < d {
        let mut v: Vec<Complex64> = (0..d)
            .map(|_| Complex64::new(standard_normal(rng), standard_normal(rng)))
            .collect();
        for prev in &cols {
            let ip: Complex64 = prev.iter().zip(&v).map(|(p, q)| p.conj() * q).sum();
            for (vi, pi) in v.iter_mut().zip(prev) {
                *vi -= pi * ip;
            }
        }
        let norm = v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-8 {
            continue;
        }
        v.iter_mut().for_each(|a| *a /= norm);
        cols.push(v);
    }
    let signs: Vec<f64> = loop {
        let s: Vec<f64> = (0..d)
            .map(|_| if crate::sampling::uniform(rng) <= 0.5 { 1.0 } else { -1.0 })
            .collect();
        if s.iter().any(|&v| v < 0.0) {
            break s;
        }
    };
    Ok(HermitianMatrix::build(d, |i, j| {
        (0..d).map(|c| cols[c][i] * cols[c][j].conj() * signs[c]).sum()
    }))
}

/// Maximizes the witness over d-dimensional quantum strategies by see-saw
/// with random restarts. Deterministic given `cfg.seed`; the result is a
/// lower bound on the true quantum maximum.
pub fn optimize(w: &Witness, d: usize, cfg: &SeesawConfig) -> Result<SeesawResult> {
    if !(2..=4).contains(&d) {
        return Err(Error::Dimension(format!("quantum dimension {d} outside 2..=4")));
    }
    cfg.validate()?;

    let branches: Vec<Sign> = if w.take_abs() {
        vec![Sign::Plus, Sign::Minus]
    } else {
        vec![Sign::Plus]
    };

    let mut per_restart_values = Vec::with_capacity(cfg.restarts as usize);
    let mut iterations_used = Vec::with_capacity(cfg.restarts as usize);
    let mut best_value = f64::NEG_INFINITY;
    let mut best_strategy: Option<QuantumStrategy> = None;

    for restart in 0..cfg.restarts {
        let mut rng = rng_from_seed(cfg.seed ^ restart as u64);
        let init_states: Vec<StateVector> = (0..w.preparations())
            .map(|_| random_state(&mut rng, d))
            .collect::<Result<_>>()?;
        let init_observables: Vec<HermitianMatrix> = (0..w.measurements())
            .map(|_| random_dichotomic(&mut rng, d))
            .collect::<Result<_>>()?;

        let mut restart_value = f64::NEG_INFINITY;
        let mut restart_strategy: Option<QuantumStrategy> = None;
        let mut restart_iters = 0u32;

        for &branch in &branches {
            let signed = w.signed(branch);
            let mut states = init_states.clone();
            let mut observables = init_observables.clone();
            let mut objective = branch_objective(&signed, &states, &observables);
            let mut iters = 0;
            for _ in 0..cfg.max_iters {
                iters += 1;
                for (x, state) in states.iter_mut().enumerate() {
                    *state = seesaw_state_update(&signed, &observables, x);
                }
                for (y, obs) in observables.iter_mut().enumerate() {
                    *obs = seesaw_measurement_update(&signed, &states, y, cfg.zero_tie);
                }
                let next = branch_objective(&signed, &states, &observables);
                let improved = next - objective;
                objective = next;
                if improved < cfg.conv_tol {
                    break;
                }
            }
            restart_iters += iters;
            let strategy = QuantumStrategy::new(states, observables)?;
            let value = quantum_value(&strategy, w)?;
            if value > restart_value {
                restart_value = value;
                restart_strategy = Some(strategy);
            }
        }

        per_restart_values.push(restart_value);
        iterations_used.push(restart_iters);
        if restart_value > best_value {
            best_value = restart_value;
            best_strategy = restart_strategy;
        }
    }

    Ok(SeesawResult {
        best_value,
        best_strategy: best_strategy.expect("at least one restart ran"),
        per_restart_values,
        iterations_used,
    })
}

/// Polishes an existing strategy by see-saw sweeps until convergence.
/// Returns the refined strategy, its value, and the sweeps used.
pub fn refine(
    w: &Witness,
    start: &QuantumStrategy,
    cfg: &SeesawConfig,
) -> Result<(f64, QuantumStrategy, u32)> {
    if start.states.len() != w.preparations() || start.observables.len() != w.measurements() {
        return Err(Error::Dimension(format!(
            "strategy is {}x{} but witness expects {}x{}",
            start.states.len(),
            start.observables.len(),
            w.preparations(),
            w.measurements()
        )));
    }
    cfg.validate()?;
    let branches: Vec<Sign> =
        if w.take_abs() { vec![Sign::Plus, Sign::Minus] } else { vec![Sign::Plus] };

    let mut best_value = f64::NEG_INFINITY;
    let mut best: Option<QuantumStrategy> = None;
    let mut total_iters = 0;
    for &branch in &branches {
        let signed = w.signed(branch);
        let mut states = start.states.clone();
        let mut observables = start.observables.clone();
        let mut objective = branch_objective(&signed, &states, &observables);
        for _ in 0..cfg.max_iters {
            total_iters += 1;
            for (x, state) in states.iter_mut().enumerate() {
                *state = seesaw_state_update(&signed, &observables, x);
            }
            for (y, obs) in observables.iter_mut().enumerate() {
                *obs = seesaw_measurement_update(&signed, &states, y, cfg.zero_tie);
            }
            let next = branch_objective(&signed, &states, &observables);
            let improved = next - objective;
            objective = next;
            if improved < cfg.conv_tol {
                break;
            }
        }
        let strategy = QuantumStrategy::new(states, observables)?;
        let value = quantum_value(&strategy, w)?;
        if value > best_value {
            best_value = value;
            best = Some(strategy);
        }
    }
    Ok((best_value, best.expect("at least one branch ran"), total_iters))
}

fn branch_objective(
    signed: &Witness,
    states: &[StateVector],
    observables: &[HermitianMatrix],
) -> f64 {
    let mut sum = 0.0;
    for (x, s) in states.iter().enumerate() {
        for (y, o) in observables.iter().enumerate() {
            let c = signed.coeff(x, y);
            if c != 0.0 {
                sum += c * expectation(s, o).expect("dimensions agree");
            }
        }
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::classical_bound;
    use crate::qmath::dichotomic_from_vector;
    use crate::settings::experiment;
    use crate::witness::{algebraic_max, catalog};

    #[test]
    fn quantum_value_of_catalog_optima() {
        let spec = experiment("i3-qubit").unwrap();
        let (w, _) = catalog("i3").unwrap();
        let s = spec.quantum_strategy().unwrap();
        let v = quantum_value(s, &w).unwrap();
        assert!((v - (1.0 + 2.0 * 2.0_f64.sqrt())).abs() < 1e-12);

        let spec = experiment("i4-ququart").unwrap();
        let (w4, _) = catalog("i4").unwrap();
        let v = quantum_value(spec.quantum_strategy().unwrap(), &w4).unwrap();
        assert!((v - 9.0).abs() < 1e-12);

        let spec = experiment("i4-bb84").unwrap();
        let v = quantum_value(spec.quantum_strategy().unwrap(), &w4).unwrap();
        assert!((v - (2.0_f64.sqrt() + 2.0 + 5.0_f64.sqrt())).abs() < 1e-12);
    }

    #[test]
    fn quantum_value_checks_shape() {
        let (w4, _) = catalog("i4").unwrap();
        let spec = experiment("i3-qubit").unwrap();
        assert!(matches!(
            quantum_value(spec.quantum_strategy().unwrap(), &w4),
            Err(Error::Dimension(_))
        ));
    }

    #[test]
    fn state_update_rows_with_single_negative_coefficient() {
        // Row (-1, 0): the optimal state is the top eigenvector of -M_1,
        // which is |m_1> itself.
        let spec = experiment("i3-qubit").unwrap();
        let s = spec.quantum_strategy().unwrap();
        let (w, _) = catalog("i3").unwrap();
        let updated = seesaw_state_update(&w.signed(Sign::Plus), s.observables(), 2);
        let m1 = &s.states()[2]; // psi_3 = m_1 in the catalog
        assert!(updated.overlap(m1).unwrap() > 1.0 - 1e-10);

        let spec = experiment("i4-qubit").unwrap();
        let s = spec.quantum_strategy().unwrap();
        let (w4, _) = catalog("i4").unwrap();
        let updated = seesaw_state_update(&w4, s.observables(), 3);
        assert!(updated.overlap(&s.states()[3]).unwrap() > 1.0 - 1e-10);
    }

    #[test]
    fn state_update_with_zero_row_is_any_unit_vector() {
        let w = Witness::new("z", vec![vec![1.0], vec![0.0]], false).unwrap();
        let obs = vec![dichotomic_from_vector(&StateVector::basis(2, 1).unwrap())];
        let updated = seesaw_state_update(&w, &obs, 1);
        assert!((updated.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn measurement_update_is_stationary_at_catalog_optimum() {
        let spec = experiment("i3-qubit").unwrap();
        let s = spec.quantum_strategy().unwrap();
        let (w, _) = catalog("i3").unwrap();
        let updated = seesaw_measurement_update(&w.signed(Sign::Plus), s.states(), 0, Sign::Plus);
        assert!(updated.max_abs_diff(&s.observables()[0]) < 1e-9);
    }

    #[test]
    fn measurement_update_simple_structures() {
        // single state, coefficient +1, zero ties resolved to +1: identity
        let w = Witness::new("p", vec![vec![1.0]], false).unwrap();
        let psi = StateVector::from_real(&[0.6, 0.8]).unwrap();
        let m = seesaw_measurement_update(&w, std::slice::from_ref(&psi), 0, Sign::Plus);
        let mv = m.mul_vec(psi.amplitudes());
        for (a, b) in mv.iter().zip(psi.amplitudes()) {
            assert!((a - b).norm() < 1e-10);
        }
        assert!(m.max_abs_diff(&HermitianMatrix::identity(2)) < 1e-10);

        // orthogonal states with coefficients (+1, -1)
        let w = Witness::new("o", vec![vec![1.0], vec![-1.0]], false).unwrap();
        let states = [StateVector::basis(2, 0).unwrap(), StateVector::basis(2, 1).unwrap()];
        let m = seesaw_measurement_update(&w, &states, 0, Sign::Plus);
        assert!(m.max_abs_diff(&HermitianMatrix::diagonal(&[1.0, -1.0]).unwrap()) < 1e-10);
    }

    #[test]
    fn optimize_reaches_published_bounds_with_few_restarts() {
        let cfg = SeesawConfig { restarts: 12, seed: 7, ..Default::default() };
        let (i3, _) = catalog("i3").unwrap();
        let r = optimize(&i3, 2, &cfg).unwrap();
        assert!((r.best_value - (1.0 + 2.0 * 2.0_f64.sqrt())).abs() < 1e-6);

        let (i4, _) = catalog("i4").unwrap();
        let r = optimize(&i4, 2, &cfg).unwrap();
        assert!((r.best_value - 6.0).abs() < 1e-6);
    }

    #[test]
    fn optimize_is_deterministic_and_consistent() {
        let cfg = SeesawConfig { restarts: 6, seed: 21, ..Default::default() };
        let (i3, _) = catalog("i3").unwrap();
        let a = optimize(&i3, 2, &cfg).unwrap();
        let b = optimize(&i3, 2, &cfg).unwrap();
        assert_eq!(a.per_restart_values, b.per_restart_values);
        assert_eq!(a.iterations_used, b.iterations_used);

        // best_value is the max of the restarts and is reproduced by the
        // returned strategy
        let max = a.per_restart_values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        assert_eq!(a.best_value, max);
        let re = quantum_value(&a.best_strategy, &i3).unwrap();
        assert!((re - a.best_value).abs() < 1e-9);
    }

    #[test]
    fn optimize_rejects_bad_inputs() {
        let (i3, _) = catalog("i3").unwrap();
        assert!(matches!(
            optimize(&i3, 5, &SeesawConfig::default()),
            Err(Error::Dimension(_))
        ));
        let cfg = SeesawConfig { restarts: 0, ..Default::default() };
        assert!(optimize(&i3, 2, &cfg).is_err());
        let cfg = SeesawConfig { conv_tol: 0.0, ..Default::default() };
        assert!(optimize(&i3, 2, &cfg).is_err());
    }

    #[test]
    fn sandwich_between_classical_bound_and_algebraic_max() {
        let cfg = SeesawConfig { restarts: 10, seed: 5, ..Default::default() };
        for name in ["i3", "i4"] {
            let (w, _) = catalog(name).unwrap();
            for d in 2..=3 {
                let q = optimize(&w, d, &cfg).unwrap().best_value;
                let (c, _) = classical_bound(&w, d).unwrap();
                assert!(q <= algebraic_max(&w) + 1e-9, "{name} d={d}");
                assert!(q >= c - 1e-9, "{name} d={d}: quantum {q} < classical {c}");
            }
        }
    }

    #[test]
    fn zero_tie_choice_does_not_move_the_optimum() {
        let (i4, _) = catalog("i4").unwrap();
        let base = SeesawConfig { restarts: 8, seed: 3, ..Default::default() };
        let plus = optimize(&i4, 2, &base).unwrap().best_value;
        let minus = optimize(&i4, 2, &SeesawConfig { zero_tie: Sign::Minus, ..base }).unwrap().best_value;
        assert!((plus - minus).abs() < 1e-9);
    }

    #[test]
    fn monotone_ascent_within_a_restart() {
        let mut rng = rng_from_seed(17);
        for trial in 0..20 {
            let n = 2 + (trial % 3) as usize;
            let m = 2 + (trial % 2) as usize;
            let coeffs: Vec<Vec<f64>> = (0..n)
                .map(|_| (0..m).map(|_| crate::sampling::uniform(&mut rng) * 4.0 - 2.0).collect())
                .collect();
            let Ok(w) = Witness::new("r", coeffs, false) else { continue };
            let d = 2 + (trial % 2) as usize;
            let mut states: Vec<StateVector> =
                (0..n).map(|_| random_state(&mut rng, d).unwrap()).collect();
            let mut observables: Vec<HermitianMatrix> =
                (0..m).map(|_| random_dichotomic(&mut rng, d).unwrap()).collect();
            let mut prev = branch_objective(&w, &states, &observables);
            for _ in 0..40 {
                for x in 0..n {
                    states[x] = seesaw_state_update(&w, &observables, x);
                    let now = branch_objective(&w, &states, &observables);
                    assert!(now >= prev - 1e-12, "state update decreased objective");
                    prev = now;
                }
                for y in 0..m {
                    observables[y] = seesaw_measurement_update(&w, &states, y, Sign::Plus);
                    let now = branch_objective(&w, &states, &observables);
                    assert!(now >= prev - 1e-12, "measurement update decreased objective");
                    prev = now;
                }
            }
        }
    }

    #[test]
    fn strategy_json_round_trip() {
        let spec = experiment("i4-qutrit").unwrap();
        let s = spec.quantum_strategy().unwrap();
        let json = serde_json::to_string(s).unwrap();
        let back: QuantumStrategy = serde_json::from_str(&json).unwrap();
        assert_eq!(back.d(), s.d());
        let (w, _) = catalog("i4").unwrap();
        let v0 = quantum_value(s, &w).unwrap();
        let v1 = quantum_value(&back, &w).unwrap();
        assert!((v0 - v1).abs() < 1e-12);
        // malformed: observable that is not an involution
        let bad = r#"{"d":2,"states":[[[1.0,0.0],[0.0,0.0]]],"observables":[[[[0.5,0.0],[0.0,0.0]],[[0.0,0.0],[0.5,0.0]]]]}"#;
        assert!(serde_json::from_str::<QuantumStrategy>(bad).is_err());
        // malformed: jagged rows that happen to total d*d entries
        let jagged = r#"{"d":2,"states":[[[1.0,0.0],[0.0,0.0]]],"observables":[[[[1.0,0.0],[0.0,0.0],[0.0,0.0]],[[-1.0,0.0]]]]}"#;
        assert!(serde_json::from_str::<QuantumStrategy>(jagged).is_err());
        // declared dimension must agree with the components
        let wrong_d = r#"{"d":3,"states":[[[1.0,0.0],[0.0,0.0]]],"observables":[[[[1.0,0.0],[0.0,0.0]],[[0.0,0.0],[-1.0,0.0]]]]}"#;
        assert!(serde_json::from_str::<QuantumStrategy>(wrong_d).is_err());
    }
}

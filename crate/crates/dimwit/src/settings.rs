//! The catalog of optimal experiment configurations and the half-wave-plate
//! state parametrization of the optical source.
//!
//! Seven configurations are built in, one per published experiment:
//!
//! | id          | witness | system  | reaches                    |
//! |-------------|---------|---------|----------------------------|
//! | `i3-qubit`  | I3      | qubit   | 1 + 2√2                    |
//! | `i3-qutrit` | I3      | qutrit  | 5 (algebraic max)          |
//! | `i4-qubit`  | I4      | qubit   | 6                          |
//! | `i4-trit`   | I4      | trit    | 7                          |
//! | `i4-qutrit` | I4      | qutrit  | 2 + √(13 + 16√2)           |
//! | `i4-ququart`| I4      | ququart | 9 (algebraic max)          |
//! | `i4-bb84`   | I4      | qubit   | √2 + 2 + √5                |
//!
//! States live in their native dimension (2, 3 or 4); the optical-mode
//! embedding into the four-mode space |H,a⟩, |V,a⟩, |H,b⟩, |V,b⟩ only matters
//! for wave-plate angles, where shorter states are zero-padded.

use crate::classical::{classical_expectations, ClassicalStrategy};
use crate::error::{Error, Result};
use crate::qmath::{dichotomic_from_vector, Complex64, HermitianMatrix, StateVector};
use crate::quantum::QuantumStrategy;
use crate::witness::{catalog, evaluate, ExpectationTable, Model, Witness};

/// Tolerance for treating an amplitude as real in [`angles_for`].
pub const REAL_AMP_TOL: f64 = 1e-9;

/// Rotation angles (radians) of the three preparation half-wave plates.
/// Angles enter amplitudes through their doubled values, so physically
/// everything is periodic in π/2 steps of 2θ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HwpAngles {
    pub theta1: f64,
    pub theta2: f64,
    pub theta3: f64,
}

impl HwpAngles {
    pub fn new(theta1: f64, theta2: f64, theta3: f64) -> Result<Self> {
        if !(theta1.is_finite() && theta2.is_finite() && theta3.is_finite()) {
            return Err(Error::InvariantViolation("wave-plate angles must be finite".into()));
        }
        Ok(Self { theta1, theta2, theta3 })
    }
}

/// The state prepared by the three-plate source:
///
/// sin(2θ1)cos(2θ2)|0⟩ + sin(2θ1)sin(2θ2)|1⟩
///   + cos(2θ1)cos(2θ3)|2⟩ + cos(2θ1)sin(2θ3)|3⟩
///
/// Always exactly unit norm, with real amplitudes.
pub fn hwp_state(a: &HwpAngles) -> StateVector {
    let (s1, c1) = (2.0 * a.theta1).sin_cos();
    let (s2, c2) = (2.0 * a.theta2).sin_cos();
    let (s3, c3) = (2.0 * a.theta3).sin_cos();
    let amps = [s1 * c2, s1 * s2, c1 * c3, c1 * s3];
    StateVector::from_unnormalized(amps.iter().map(|&r| Complex64::new(r, 0.0)).collect())
        .expect("the parametrization is unit norm")
}

/// Canonical plate angles reproducing a real-amplitude state.
///
/// States of dimension 2 or 3 are zero-padded into the four-mode space.
/// When one arm carries no amplitude its plate angle is reported as 0.
/// Fails with [`Error::NotRepresentable`] if any relative phase is nonreal.
pub fn angles_for(state: &StateVector) -> Result<HwpAngles> {
    let mut a = [0.0f64; 4];
    for (i, amp) in state.amplitudes().iter().enumerate() {
        if amp.im.abs() > REAL_AMP_TOL {
            return Err(Error::NotRepresentable(format!(
                "amplitude {i} has imaginary part {:.3e}; the plate parametrization only reaches real states",
                amp.im
            )));
        }
        a[i] = amp.re;
    }
    let r_a = (a[0] * a[0] + a[1] * a[1]).sqrt();
    let r_b = (a[2] * a[2] + a[3] * a[3]).sqrt();
    let theta1 = 0.5 * r_a.atan2(r_b);
    let theta2 = if r_a > 0.0 { 0.5 * a[1].atan2(a[0]) } else { 0.0 };
    let theta3 = if r_b > 0.0 { 0.5 * a[3].atan2(a[2]) } else { 0.0 };
    HwpAngles::new(theta1, theta2, theta3)
}

/// Either side of a prepare-and-measure experiment's strategy.
#[derive(Debug, Clone)]
pub enum ExperimentStrategy {
    Quantum(QuantumStrategy),
    Classical(ClassicalStrategy),
}

/// A fully specified experiment: witness, system model and dimension,
/// the optimal strategy, and its closed-form value.
#[derive(Debug, Clone)]
pub struct ExperimentSpec {
    pub id: String,
    pub witness_name: String,
    pub d: usize,
    pub model: Model,
    pub strategy: ExperimentStrategy,
    pub expected_value: f64,
}

impl ExperimentSpec {
    pub fn witness(&self) -> Result<Witness> {
        Ok(catalog(&self.witness_name)?.0)
    }

    pub fn quantum_strategy(&self) -> Option<&QuantumStrategy> {
        match &self.strategy {
            ExperimentStrategy::Quantum(q) => Some(q),
            ExperimentStrategy::Classical(_) => None,
        }
    }

    /// The exact expectation table of the strategy.
    pub fn theoretical_expectations(&self) -> ExpectationTable {
        match &self.strategy {
            ExperimentStrategy::Quantum(q) => q.expectation_table(),
            ExperimentStrategy::Classical(c) => {
                classical_expectations(c, c.prep_labels().len(), c.responses().len())
                    .expect("a classical strategy always has a table of its own shape")
            }
        }
    }

    /// Re-evaluates the witness on the strategy, which must reproduce
    /// `expected_value` to within 1e-9.
    pub fn recomputed_value(&self) -> Result<f64> {
        evaluate(&self.witness()?, &self.theoretical_expectations())
    }

    /// The classical-embedded quantum view: for a classical strategy, labels
    /// become basis states and responses diagonal sign observables.
    pub fn as_quantum(&self) -> Result<QuantumStrategy> {
        match &self.strategy {
            ExperimentStrategy::Quantum(q) => Ok(q.clone()),
            ExperimentStrategy::Classical(c) => {
                let states = c
                    .prep_labels()
                    .iter()
                    .map(|&l| StateVector::basis(c.d(), l))
                    .collect::<Result<Vec<_>>>()?;
                let observables = c
                    .responses()
                    .iter()
                    .map(|f| {
                        HermitianMatrix::diagonal(
                            &f.iter().map(|&v| v as f64).collect::<Vec<_>>(),
                        )
                    })
                    .collect::<Result<Vec<_>>>()?;
                QuantumStrategy::new(states, observables)
            }
        }
    }
}

/// All built-in experiment identifiers.
pub fn experiment_ids() -> [&'static str; 7] {
    [
        "i3-qubit",
        "i3-qutrit",
        "i4-qubit",
        "i4-trit",
        "i4-qutrit",
        "i4-ququart",
        "i4-bb84",
    ]
}

/// Looks up one of the seven built-in experiment configurations.
pub fn experiment(id: &str) -> Result<ExperimentSpec> {
    let sqrt2 = 2.0_f64.sqrt();
    match id {
        "i3-qubit" => {
            // Two measurement vectors at opening angle x = pi/4 around |0>,
            // states |1>, (|0>+|1>)/sqrt(2), and |m_1> itself.
            let x = std::f64::consts::FRAC_PI_4;
            let (s, c) = (x / 2.0).sin_cos();
            let m1 = StateVector::from_real(&[c, -s])?;
            let m2 = StateVector::from_real(&[c, s])?;
            let states = vec![
                StateVector::basis(2, 1)?,
                StateVector::from_real(&[1.0, 1.0])?,
                m1.clone(),
            ];
            let observables = vec![dichotomic_from_vector(&m1), dichotomic_from_vector(&m2)];
            Ok(ExperimentSpec {
                id: id.into(),
                witness_name: "i3".into(),
                d: 2,
                model: Model::Quantum,
                strategy: ExperimentStrategy::Quantum(QuantumStrategy::new(states, observables)?),
                expected_value: 1.0 + 2.0 * sqrt2,
            })
        }
        "i3-qutrit" => {
            let states = vec![
                StateVector::basis(3, 0)?,
                StateVector::basis(3, 2)?,
                StateVector::basis(3, 1)?,
            ];
            let observables = vec![
                HermitianMatrix::diagonal(&[1.0, -1.0, 1.0])?,
                HermitianMatrix::diagonal(&[1.0, 1.0, -1.0])?,
            ];
            Ok(ExperimentSpec {
                id: id.into(),
                witness_name: "i3".into(),
                d: 3,
                model: Model::Quantum,
                strategy: ExperimentStrategy::Quantum(QuantumStrategy::new(states, observables)?),
                expected_value: 5.0,
            })
        }
        "i4-qubit" => {
            // Opening angle x = pi/6; psi_1 and psi_2 are the top
            // eigenvectors of M1+M2+M3 and M1+M2-M3, proportional to
            // |0> +- (2+sqrt(3))|1>.
            let x = std::f64::consts::FRAC_PI_6;
            let (s, c) = (x / 2.0).sin_cos();
            let m1 = StateVector::from_real(&[c, -s])?;
            let m2 = StateVector::from_real(&[c, s])?;
            let m3 = StateVector::from_real(&[1.0, -1.0])?;
            let g = 2.0 + 3.0_f64.sqrt();
            let states = vec![
                StateVector::from_real(&[1.0, g])?,
                StateVector::from_real(&[1.0, -g])?,
                StateVector::from_real(&[1.0, 1.0])?,
                m1.clone(),
            ];
            let observables = vec![
                dichotomic_from_vector(&m1),
                dichotomic_from_vector(&m2),
                dichotomic_from_vector(&m3),
            ];
            Ok(ExperimentSpec {
                id: id.into(),
                witness_name: "i4".into(),
                d: 2,
                model: Model::Quantum,
                strategy: ExperimentStrategy::Quantum(QuantumStrategy::new(states, observables)?),
                expected_value: 6.0,
            })
        }
        "i4-trit" => {
            let strategy = ClassicalStrategy::new(
                3,
                vec![0, 0, 2, 1],
                vec![vec![1, -1, 1], vec![1, 1, -1], vec![1, -1, -1]],
            )?;
            Ok(ExperimentSpec {
                id: id.into(),
                witness_name: "i4".into(),
                d: 3,
                model: Model::Classical,
                strategy: ExperimentStrategy::Classical(strategy),
                expected_value: 7.0,
            })
        }
        "i4-qutrit" => {
            // Measurement vectors live in span{|1>,|2>} at the optimal
            // opening cos(x0) = (1 - sqrt(2) + sqrt(2*sqrt(2) - 1))/2;
            // psi_1,2 mix |0> with |2> through
            // gamma = 1 - cos(x0) - sqrt(1 + (1 - cos(x0))^2).
            let cos_x0 = 0.5 * (1.0 - sqrt2 + (2.0 * sqrt2 - 1.0).sqrt());
            let x0 = cos_x0.acos();
            let (sh, ch) = (x0 / 2.0).sin_cos();
            let m1 = StateVector::from_real(&[0.0, ch, sh])?;
            let m2 = StateVector::from_real(&[0.0, ch, -sh])?;
            let m3 = StateVector::from_real(&[1.0, 0.0, 1.0])?;
            let gamma = 1.0 - cos_x0 - (1.0 + (1.0 - cos_x0) * (1.0 - cos_x0)).sqrt();
            let states = vec![
                StateVector::from_real(&[1.0, 0.0, gamma])?,
                StateVector::from_real(&[1.0, 0.0, -gamma])?,
                StateVector::from_real(&[0.0, 1.0, -1.0])?,
                m1.clone(),
            ];
            let observables = vec![
                dichotomic_from_vector(&m1),
                dichotomic_from_vector(&m2),
                dichotomic_from_vector(&m3),
            ];
            Ok(ExperimentSpec {
                id: id.into(),
                witness_name: "i4".into(),
                d: 3,
                model: Model::Quantum,
                strategy: ExperimentStrategy::Quantum(QuantumStrategy::new(states, observables)?),
                expected_value: 2.0 + (13.0 + 16.0 * sqrt2).sqrt(),
            })
        }
        "i4-ququart" => {
            let states = vec![
                StateVector::basis(4, 0)?,
                StateVector::basis(4, 2)?,
                StateVector::basis(4, 1)?,
                StateVector::basis(4, 3)?,
            ];
            let observables = vec![
                HermitianMatrix::diagonal(&[1.0, 1.0, 1.0, -1.0])?,
                HermitianMatrix::diagonal(&[1.0, -1.0, 1.0, -1.0])?,
                HermitianMatrix::diagonal(&[1.0, 1.0, -1.0, -1.0])?,
            ];
            Ok(ExperimentSpec {
                id: id.into(),
                witness_name: "i4".into(),
                d: 4,
                model: Model::Quantum,
                strategy: ExperimentStrategy::Quantum(QuantumStrategy::new(states, observables)?),
                expected_value: 9.0,
            })
        }
        "i4-bb84" => {
            // The four cryptographic states; measurements from the published
            // (c, s, p) construction with p = (1 + 3/sqrt(10))/2.
            let psi1 = StateVector::basis(2, 0)?;
            let psi2 = StateVector::from_real(&[1.0, 1.0])?;
            let psi3 = StateVector::basis(2, 1)?;
            let psi4 = StateVector::from_real(&[1.0, -1.0])?;
            let (s, c) = std::f64::consts::FRAC_PI_8.sin_cos();
            let p = 0.5 * (1.0 + 3.0 / 10.0_f64.sqrt());
            let m1 = psi4.clone();
            let m2 = StateVector::from_real(&[
                c * (1.0 - p).sqrt() - s * p.sqrt(),
                c * p.sqrt() + s * (1.0 - p).sqrt(),
            ])?;
            let m3 = StateVector::from_real(&[(c - s) / sqrt2, (c + s) / sqrt2])?;
            let states = vec![psi1, psi2, psi3, psi4];
            let observables = vec![
                dichotomic_from_vector(&m1),
                dichotomic_from_vector(&m2),
                dichotomic_from_vector(&m3),
            ];
            Ok(ExperimentSpec {
                id: id.into(),
                witness_name: "i4".into(),
                d: 2,
                model: Model::Quantum,
                strategy: ExperimentStrategy::Quantum(QuantumStrategy::new(states, observables)?),
                expected_value: sqrt2 + 2.0 + 5.0_f64.sqrt(),
            })
        }
        other => Err(Error::NotFound(format!("unknown experiment '{other}'"))),
    }
}

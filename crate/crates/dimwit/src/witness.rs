//! Linear dimension witnesses over expectation values.
//!
//! A witness is a real coefficient table c_xy over N preparations and m
//! dichotomic measurements; its value on an expectation table E is
//! Σ c_xy E_xy, optionally in absolute value. The built-in catalog carries
//! the two published witnesses I3 and I4 together with their classical and
//! quantum dimension bounds in closed form.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Slack allowed on |E_xy| ≤ 1 for numerically computed tables.
pub const EXPECTATION_RANGE_TOL: f64 = 1e-9;

/// Which resource model a bound constrains.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    Classical,
    Quantum,
}

impl std::fmt::Display for Model {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Model::Classical => write!(f, "classical"),
            Model::Quantum => write!(f, "quantum"),
        }
    }
}

/// A witness: named coefficient table with an absolute-value flag.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Witness {
    name: String,
    #[serde(rename = "coefficients")]
    coeffs: Vec<Vec<f64>>,
    take_abs: bool,
}

impl Witness {
    pub fn new(name: impl Into<String>, coeffs: Vec<Vec<f64>>, take_abs: bool) -> Result<Self> {
        let name = name.into();
        if coeffs.is_empty() || coeffs[0].is_empty() {
            return Err(Error::InvariantViolation(
                "witness coefficient table must be non-empty".into(),
            ));
        }
        let m = coeffs[0].len();
        if coeffs.iter().any(|row| row.len() != m) {
            return Err(Error::InvariantViolation(
                "witness coefficient rows must have equal length".into(),
            ));
        }
        if coeffs.iter().flatten().any(|c| !c.is_finite()) {
            return Err(Error::InvariantViolation(
                "witness coefficients must be finite".into(),
            ));
        }
        if coeffs.iter().flatten().all(|&c| c == 0.0) {
            return Err(Error::InvariantViolation(
                "witness needs at least one nonzero coefficient".into(),
            ));
        }
        Ok(Self { name, coeffs, take_abs })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Number of preparations N.
    pub fn preparations(&self) -> usize {
        self.coeffs.len()
    }

    /// Number of measurements m.
    pub fn measurements(&self) -> usize {
        self.coeffs[0].len()
    }

    /// Coefficient c_xy with 0-based indices.
    pub fn coeff(&self, x: usize, y: usize) -> f64 {
        self.coeffs[x][y]
    }

    pub fn coefficients(&self) -> &[Vec<f64>] {
        &self.coeffs
    }

    pub fn take_abs(&self) -> bool {
        self.take_abs
    }

    /// The sign-resolved branch of this witness: coefficients multiplied by
    /// `sign` and the absolute value dropped. Maximizing an absolute-value
    /// witness is the maximum of its two branches.
    pub fn signed(&self, sign: crate::qmath::Sign) -> Witness {
        let s = sign.value();
        Witness {
            name: self.name.clone(),
            coeffs: self
                .coeffs
                .iter()
                .map(|row| row.iter().map(|c| c * s).collect())
                .collect(),
            take_abs: false,
        }
    }
}

impl<'de> Deserialize<'de> for Witness {
    fn deserialize<D>(deserializer: D) -> std::result::Result<Self, D::Error>
    where
        D: serde::Deserializer<'de>,
    {
        #[derive(Deserialize)]
        struct Raw {
            name: String,
            coefficients: Vec<Vec<f64>>,
            take_abs: bool,
        }
        let raw = Raw::deserialize(deserializer)?;
        Witness::new(raw.name, raw.coefficients, raw.take_abs).map_err(serde::de::Error::custom)
    }
}

/// An N×m table of expectation values E_xy ∈ [−1, 1].
#[derive(Debug, Clone, PartialEq)]
pub struct ExpectationTable {
    values: Vec<Vec<f64>>,
}

impl ExpectationTable {
    pub fn new(values: Vec<Vec<f64>>) -> Result<Self> {
        if values.is_empty() || values[0].is_empty() {
            return Err(Error::InvariantViolation("empty expectation table".into()));
        }
        let m = values[0].len();
        if values.iter().any(|row| row.len() != m) {
            return Err(Error::InvariantViolation(
                "expectation table rows must have equal length".into(),
            ));
        }
        for row in &values {
            for &e in row {
                if !e.is_finite() || e.abs() > 1.0 + EXPECTATION_RANGE_TOL {
                    return Err(Error::InvariantViolation(format!(
                        "expectation value {e} outside [-1, 1]"
                    )));
                }
            }
        }
        Ok(Self { values })
    }

    pub fn preparations(&self) -> usize {
        self.values.len()
    }

    pub fn measurements(&self) -> usize {
        self.values[0].len()
    }

    /// Entry E_xy with 0-based indices.
    pub fn entry(&self, x: usize, y: usize) -> f64 {
        self.values[x][y]
    }

    pub fn values(&self) -> &[Vec<f64>] {
        &self.values
    }
}

/// One published bound: the maximum value reachable by the model at the
/// given dimension.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Bound {
    pub model: Model,
    pub dim: usize,
    pub bound: f64,
    /// Whether the bound is exact (closed form) rather than numerical.
    pub exact: bool,
}

/// The bound chain of a witness, ordered and mutually consistent.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundTable {
    entries: Vec<Bound>,
}

impl BoundTable {
    pub fn new(entries: Vec<Bound>) -> Result<Self> {
        for model in [Model::Classical, Model::Quantum] {
            let mut in_model: Vec<&Bound> = entries.iter().filter(|b| b.model == model).collect();
            in_model.sort_by_key(|b| b.dim);
            for w in in_model.windows(2) {
                if w[1].bound < w[0].bound {
                    return Err(Error::InvariantViolation(format!(
                        "{model} bound decreases from dim {} to {}",
                        w[0].dim, w[1].dim
                    )));
                }
            }
        }
        for b in entries.iter().filter(|b| b.model == Model::Classical) {
            if let Some(q) = entries
                .iter()
                .find(|q| q.model == Model::Quantum && q.dim == b.dim)
            {
                if q.bound < b.bound {
                    return Err(Error::InvariantViolation(format!(
                        "quantum bound below classical bound at dim {}",
                        b.dim
                    )));
                }
            }
        }
        Ok(Self { entries })
    }

    pub fn entries(&self) -> &[Bound] {
        &self.entries
    }

    pub fn get(&self, model: Model, dim: usize) -> Option<f64> {
        self.entries
            .iter()
            .find(|b| b.model == model && b.dim == dim)
            .map(|b| b.bound)
    }
}

impl<'de> Deserialize<'de> for BoundTable {
    fn deserialize<D>(deserializer: D) -> std::result::Result<Self, D::Error>
    where
        D: serde::Deserializer<'de>,
    {
        #[derive(Deserialize)]
        struct Raw {
            entries: Vec<Bound>,
        }
        let raw = Raw::deserialize(deserializer)?;
        BoundTable::new(raw.entries).map_err(serde::de::Error::custom)
    }
}

/// Evaluates a witness on an expectation table.
pub fn evaluate(w: &Witness, e: &ExpectationTable) -> Result<f64> {
    if w.preparations() != e.preparations() || w.measurements() != e.measurements() {
        return Err(Error::Dimension(format!(
            "witness is {}x{} but table is {}x{}",
            w.preparations(),
            w.measurements(),
            e.preparations(),
            e.measurements()
        )));
    }
    let mut sum = 0.0;
    for x in 0..w.preparations() {
        for y in 0..w.measurements() {
            sum += w.coeff(x, y) * e.entry(x, y);
        }
    }
    Ok(if w.take_abs { sum.abs() } else { sum })
}

/// The algebraic maximum Σ|c_xy|: reached when every correlator matches the
/// sign of its coefficient.
pub fn algebraic_max(w: &Witness) -> f64 {
    w.coefficients().iter().flatten().map(|c| c.abs()).sum()
}

/// Looks up a published witness and its bound chain by name ("i3" or "i4").
pub fn catalog(name: &str) -> Result<(Witness, BoundTable)> {
    let sqrt2 = 2.0_f64.sqrt();
    match name {
        "i3" => {
            let w = Witness::new(
                "i3",
                vec![vec![1.0, 1.0], vec![1.0, -1.0], vec![-1.0, 0.0]],
                true,
            )?;
            let bounds = BoundTable::new(vec![
                Bound { model: Model::Classical, dim: 2, bound: 3.0, exact: true },
                Bound { model: Model::Quantum, dim: 2, bound: 1.0 + 2.0 * sqrt2, exact: true },
                Bound { model: Model::Classical, dim: 3, bound: 5.0, exact: true },
                Bound { model: Model::Quantum, dim: 3, bound: 5.0, exact: true },
            ])?;
            Ok((w, bounds))
        }
        "i4" => {
            let w = Witness::new(
                "i4",
                vec![
                    vec![1.0, 1.0, 1.0],
                    vec![1.0, 1.0, -1.0],
                    vec![1.0, -1.0, 0.0],
                    vec![-1.0, 0.0, 0.0],
                ],
                false,
            )?;
            let bounds = BoundTable::new(vec![
                Bound { model: Model::Classical, dim: 2, bound: 5.0, exact: true },
                Bound { model: Model::Quantum, dim: 2, bound: 6.0, exact: true },
                Bound { model: Model::Classical, dim: 3, bound: 7.0, exact: true },
                Bound {
                    model: Model::Quantum,
                    dim: 3,
                    bound: 2.0 + (13.0 + 16.0 * sqrt2).sqrt(),
                    exact: true,
                },
                Bound { model: Model::Classical, dim: 4, bound: 9.0, exact: true },
                Bound { model: Model::Quantum, dim: 4, bound: 9.0, exact: true },
            ])?;
            Ok((w, bounds))
        }
        other => Err(Error::NotFound(format!("unknown witness '{other}'"))),
    }
}

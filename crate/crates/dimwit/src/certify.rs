//! Turning a measured witness value into a device-independent dimension
//! statement.
//!
//! A bound counts as violated when value − k·sigma exceeds it; the minimum
//! dimension per model is one more than the largest violated dimension. Any
//! violation at all also rules out a one-dimensional quantum source, because
//! a one-dimensional source (quantum or classical) answers each measurement
//! deterministically and is therefore a special case of every tabulated
//! strategy class.

use crate::error::{Error, Result};
use crate::simulate::{CountRecord, CountsFile, WitnessEstimate};
use crate::witness::{algebraic_max, BoundTable, Model, Witness};
use serde::{Deserialize, Serialize, Serializer};

/// How many sigmas beyond the algebraic maximum trigger a data-sanity
/// warning.
pub const SANITY_WARNING_SIGMAS: f64 = 3.0;

/// One violated bound and how significantly it is exceeded.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub model: Model,
    pub dim: usize,
    pub bound: f64,
    /// (value − bound)/sigma; infinite when sigma = 0.
    #[serde(serialize_with = "serialize_significance", deserialize_with = "deserialize_significance")]
    pub significance: f64,
}

fn serialize_significance<S: Serializer>(v: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    if v.is_finite() {
        s.serialize_f64(*v)
    } else {
        s.serialize_str("inf")
    }
}

fn deserialize_significance<'de, D>(d: D) -> std::result::Result<f64, D::Error>
where
    D: serde::Deserializer<'de>,
{
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Raw {
        Num(f64),
        Str(String),
    }
    match Raw::deserialize(d)? {
        Raw::Num(v) => Ok(v),
        Raw::Str(s) if s == "inf" => Ok(f64::INFINITY),
        Raw::Str(s) => Err(serde::de::Error::custom(format!("unexpected significance '{s}'"))),
    }
}

/// The certificate: which bounds the data violates and the implied minimum
/// classical and quantum dimensions.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DimensionCertificate {
    pub witness_name: String,
    pub value: f64,
    pub sigma: f64,
    pub confidence_sigmas: f64,
    pub violations: Vec<Violation>,
    pub min_classical_dim: usize,
    pub min_quantum_dim: usize,
    /// The bound chain the certificate was judged against.
    pub bounds: BoundTable,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub data_sanity_warning: Option<String>,
}

impl DimensionCertificate {
    /// Whether any bound is violated at the configured confidence.
    pub fn is_nontrivial(&self) -> bool {
        !self.violations.is_empty()
    }
}

/// Certifies against a catalog witness.
pub fn certify(witness_name: &str, est: &WitnessEstimate, k: f64) -> Result<DimensionCertificate> {
    let (w, bounds) = crate::witness::catalog(witness_name)?;
    certify_with_bounds(&w, &bounds, est, k)
}

/// Certifies against an explicit bound table (for custom witnesses).
pub fn certify_with_bounds(
    w: &Witness,
    bounds: &BoundTable,
    est: &WitnessEstimate,
    k: f64,
) -> Result<DimensionCertificate> {
    if !(k > 0.0 && k.is_finite()) {
        return Err(Error::InvariantViolation("confidence k must be positive".into()));
    }
    if est.sigma < 0.0 || !est.sigma.is_finite() {
        return Err(Error::InvariantViolation(format!(
            "sigma must be finite and nonnegative, got {}",
            est.sigma
        )));
    }
    if !est.value.is_finite() {
        return Err(Error::InvariantViolation("witness value must be finite".into()));
    }

    let lower = est.value - k * est.sigma;
    let mut violations = Vec::new();
    for b in bounds.entries() {
        if lower > b.bound {
            let significance = if est.sigma > 0.0 {
                (est.value - b.bound) / est.sigma
            } else {
                f64::INFINITY
            };
            violations.push(Violation {
                model: b.model,
                dim: b.dim,
                bound: b.bound,
                significance,
            });
        }
    }

    let max_violated = |model: Model| {
        violations
            .iter()
            .filter(|v| v.model == model)
            .map(|v| v.dim)
            .max()
            .unwrap_or(0)
    };
    let min_classical_dim = 1 + max_violated(Model::Classical);
    // Any violation excludes a one-dimensional quantum source (see module
    // docs), so a nontrivial certificate always implies at least a qubit.
    let quantum_floor = if violations.is_empty() { 1 } else { 2 };
    let min_quantum_dim = (1 + max_violated(Model::Quantum)).max(quantum_floor);

    let max = algebraic_max(w);
    let data_sanity_warning = if est.value > max + SANITY_WARNING_SIGMAS * est.sigma {
        Some(format!(
            "value {} exceeds the algebraic maximum {max} by more than {SANITY_WARNING_SIGMAS} sigma; \
             the data cannot come from the declared witness model",
            est.value
        ))
    } else {
        None
    };

    Ok(DimensionCertificate {
        witness_name: w.name().to_string(),
        value: est.value,
        sigma: est.sigma,
        confidence_sigmas: k,
        violations,
        min_classical_dim,
        min_quantum_dim,
        bounds: bounds.clone(),
        data_sanity_warning,
    })
}

/// Reads a counts file, rejecting duplicate settings.
pub fn load_counts(path: &std::path::Path) -> Result<(String, Vec<CountRecord>)> {
    load_counts_with(path, false)
}

/// Reads a counts file; with `merge` set, duplicate settings are summed
/// instead of rejected.
pub fn load_counts_with(path: &std::path::Path, merge: bool) -> Result<(String, Vec<CountRecord>)> {
    let text = std::fs::read_to_string(path)?;
    let file: CountsFile = serde_json::from_str(&text)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;

    let mut records: Vec<CountRecord> = Vec::new();
    for raw in &file.records {
        let rec = raw.validate()?;
        if let Some(existing) = records.iter_mut().find(|r| r.x == rec.x && r.y == rec.y) {
            if merge {
                existing.n_plus += rec.n_plus;
                existing.n_minus += rec.n_minus;
            } else {
                return Err(Error::Parse(format!(
                    "{}: duplicate record for setting ({},{}); pass --merge to sum repeated runs",
                    path.display(),
                    rec.x,
                    rec.y
                )));
            }
        } else {
            records.push(rec);
        }
    }
    Ok((file.witness, records))
}

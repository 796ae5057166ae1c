//! Monte Carlo simulation of the photon-counting experiment.
//!
//! Each setting (x, y) with a nonzero witness coefficient accumulates a
//! Poisson-distributed number of detections over the measurement time; each
//! detection lands in the +1 or −1 detector group with probability
//! (1 ± E_xy)/2. Empirical expectations and the propagated counting error
//! then give a witness estimate.
//!
//! The detector model is ideal: no dark counts, unit efficiency, exact
//! outcome mapping. Each setting draws from its own seed-derived stream
//! (`seed ^ (1000x + y)`), so results do not depend on evaluation order.

use crate::error::{Error, Result};
use crate::sampling::{binomial, poisson, rng_from_seed};
use crate::settings::ExperimentSpec;
use crate::witness::{evaluate, ExpectationTable, Witness};
use serde::{Deserialize, Serialize};

/// Raw detection counts for one setting. Indices are 1-based, matching the
/// E_xy subscripts in witness definitions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountRecord {
    pub x: usize,
    pub y: usize,
    pub n_plus: u64,
    pub n_minus: u64,
}

impl CountRecord {
    pub fn total(&self) -> u64 {
        self.n_plus + self.n_minus
    }

    /// The empirical expectation (n₊ − n₋)/(n₊ + n₋).
    pub fn empirical_expectation(&self) -> f64 {
        (self.n_plus as f64 - self.n_minus as f64) / self.total() as f64
    }

    /// Delta-method variance of the empirical expectation under independent
    /// Poisson counts: 4·n₊·n₋/(n₊+n₋)³. Zero when either count is zero; in
    /// that degenerate case the error bar underestimates.
    pub fn expectation_variance(&self) -> f64 {
        let n = self.total() as f64;
        4.0 * self.n_plus as f64 * self.n_minus as f64 / (n * n * n)
    }
}

/// Counting-rate configuration of a simulated run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    /// Detected photons per second.
    pub rate: f64,
    /// Seconds spent on each setting.
    pub duration: f64,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self { rate: 2e4, duration: 30.0, seed: 0 }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.rate > 0.0 && self.rate.is_finite()) {
            return Err(Error::InvariantViolation("rate must be positive".into()));
        }
        if !(self.duration > 0.0 && self.duration.is_finite()) {
            return Err(Error::InvariantViolation("duration must be positive".into()));
        }
        Ok(())
    }
}

/// A witness value estimated from counts, with its propagated error.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessEstimate {
    pub value: f64,
    pub sigma: f64,
    pub counts: Vec<CountRecord>,
}

impl WitnessEstimate {
    /// Settings whose variance degenerated to zero because one detector saw
    /// every count; their contribution to `sigma` is an underestimate.
    pub fn degenerate_settings(&self) -> Vec<(usize, usize)> {
        self.counts
            .iter()
            .filter(|r| r.n_plus == 0 || r.n_minus == 0)
            .map(|r| (r.x, r.y))
            .collect()
    }
}

/// Simulates counts for every setting the experiment's witness uses.
pub fn simulate_counts(spec: &ExperimentSpec, cfg: &RunConfig) -> Result<Vec<CountRecord>> {
    cfg.validate()?;
    let w = spec.witness()?;
    let table = spec.theoretical_expectations();
    let mean_total = cfg.rate * cfg.duration;

    let mut records = Vec::new();
    for x in 1..=w.preparations() {
        for y in 1..=w.measurements() {
            if w.coeff(x - 1, y - 1) == 0.0 {
                continue;
            }
            let mut rng = rng_from_seed(cfg.seed ^ (1000 * x as u64 + y as u64));
            let total = poisson(&mut rng, mean_total);
            let p_plus = ((1.0 + table.entry(x - 1, y - 1)) / 2.0).clamp(0.0, 1.0);
            let n_plus = binomial(&mut rng, total, p_plus);
            records.push(CountRecord { x, y, n_plus, n_minus: total - n_plus });
        }
    }
    Ok(records)
}

/// Estimates the witness value and its propagated Poisson error from counts.
///
/// Every setting with a nonzero coefficient needs exactly one record with at
/// least one count; records for zero-coefficient settings are ignored.
pub fn estimate(w: &Witness, counts: &[CountRecord]) -> Result<WitnessEstimate> {
    let mut by_setting = std::collections::HashMap::new();
    for r in counts {
        if by_setting.insert((r.x, r.y), *r).is_some() {
            return Err(Error::DuplicateRecord { x: r.x, y: r.y });
        }
    }

    let n = w.preparations();
    let m = w.measurements();
    let mut values = vec![vec![0.0; m]; n];
    let mut variance = 0.0;
    let mut used = Vec::new();
    for x in 1..=n {
        for y in 1..=m {
            let c = w.coeff(x - 1, y - 1);
            if c == 0.0 {
                continue;
            }
            let r = by_setting
                .get(&(x, y))
                .ok_or_else(|| Error::MissingData(format!("no record for setting ({x},{y})")))?;
            if r.total() == 0 {
                return Err(Error::MissingData(format!(
                    "record for setting ({x},{y}) has zero total counts"
                )));
            }
            values[x - 1][y - 1] = r.empirical_expectation();
            variance += c * c * r.expectation_variance();
            used.push(*r);
        }
    }

    let value = evaluate(w, &ExpectationTable::new(values)?)?;
    Ok(WitnessEstimate { value, sigma: variance.sqrt(), counts: used })
}

/// Simulates one full experiment and estimates its witness value.
pub fn run_experiment(id: &str, cfg: &RunConfig) -> Result<WitnessEstimate> {
    let spec = crate::settings::experiment(id)?;
    let counts = simulate_counts(&spec, cfg)?;
    estimate(&spec.witness()?, &counts)
}

/// Counts file: the schema `simulate` writes and `certify` reads.
///
/// The `witness` and `records` fields are the wire contract; the optional
/// metadata fields carry the simulated estimate so report rendering does not
/// need to re-derive them.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CountsFile {
    pub witness: String,
    pub records: Vec<RawRecord>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub experiment: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub value: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub sigma: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub theory: Option<f64>,
}

/// A record as it appears on disk. Counts are parsed as signed so that
/// negative values fail validation rather than deserialization.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct RawRecord {
    pub x: usize,
    pub y: usize,
    pub n_plus: i64,
    pub n_minus: i64,
}

impl RawRecord {
    pub fn validate(&self) -> Result<CountRecord> {
        if self.n_plus < 0 || self.n_minus < 0 {
            return Err(Error::InvariantViolation(format!(
                "negative count in record for setting ({},{})",
                self.x, self.y
            )));
        }
        Ok(CountRecord {
            x: self.x,
            y: self.y,
            n_plus: self.n_plus as u64,
            n_minus: self.n_minus as u64,
        })
    }
}

impl From<&CountRecord> for RawRecord {
    fn from(r: &CountRecord) -> Self {
        Self { x: r.x, y: r.y, n_plus: r.n_plus as i64, n_minus: r.n_minus as i64 }
    }
}

//! Exact classical bounds by exhaustive enumeration of deterministic
//! d-dimensional strategies.
//!
//! A deterministic strategy sends one of d labels per preparation and answers
//! each measurement with a fixed ±1 value per label. Shared randomness cannot
//! beat the deterministic maximum (the witness is linear in the strategy's
//! expectation table), so enumerating deterministic strategies gives the
//! exact classical bound.

use crate::error::{Error, Result};
use crate::witness::{ExpectationTable, Witness};
use serde::{Deserialize, Serialize};

/// Default cap on the enumeration size dᴺ·2^(d·m).
pub const DEFAULT_GUARD_LIMIT: u128 = 1_000_000_000;

/// A deterministic classical strategy of dimension d.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassicalStrategy {
    d: usize,
    /// Label in [0, d) sent by each preparation.
    prep_labels: Vec<usize>,
    /// One ±1-valued response function per measurement, indexed by label.
    responses: Vec<Vec<i8>>,
}

impl ClassicalStrategy {
    pub fn new(d: usize, prep_labels: Vec<usize>, responses: Vec<Vec<i8>>) -> Result<Self> {
        if d == 0 {
            return Err(Error::Dimension("classical dimension must be at least 1".into()));
        }
        if let Some(&bad) = prep_labels.iter().find(|&&l| l >= d) {
            return Err(Error::InvariantViolation(format!(
                "preparation label {bad} outside [0, {d})"
            )));
        }
        for f in &responses {
            if f.len() != d {
                return Err(Error::Dimension(format!(
                    "response function has {} values, expected {d}",
                    f.len()
                )));
            }
            if f.iter().any(|&v| v != 1 && v != -1) {
                return Err(Error::InvariantViolation(
                    "response values must be +1 or -1".into(),
                ));
            }
        }
        Ok(Self { d, prep_labels, responses })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn prep_labels(&self) -> &[usize] {
        &self.prep_labels
    }

    pub fn responses(&self) -> &[Vec<i8>] {
        &self.responses
    }
}

impl<'de> Deserialize<'de> for ClassicalStrategy {
    fn deserialize<D>(deserializer: D) -> std::result::Result<Self, D::Error>
    where
        D: serde::Deserializer<'de>,
    {
        #[derive(Deserialize)]
        struct Raw {
            d: usize,
            prep_labels: Vec<usize>,
            responses: Vec<Vec<i8>>,
        }
        let raw = Raw::deserialize(deserializer)?;
        ClassicalStrategy::new(raw.d, raw.prep_labels, raw.responses)
            .map_err(serde::de::Error::custom)
    }
}

/// The deterministic expectation table E_xy = f_y(label_x).
pub fn classical_expectations(
    s: &ClassicalStrategy,
    preparations: usize,
    measurements: usize,
) -> Result<ExpectationTable> {
    if s.prep_labels.len() != preparations || s.responses.len() != measurements {
        return Err(Error::Dimension(format!(
            "strategy is {}x{} but witness expects {preparations}x{measurements}",
            s.prep_labels.len(),
            s.responses.len()
        )));
    }
    let values = s
        .prep_labels
        .iter()
        .map(|&label| s.responses.iter().map(|f| f[label] as f64).collect())
        .collect();
    ExpectationTable::new(values)
}

/// Exact classical bound with the default guard limit.
pub fn classical_bound(w: &Witness, d: usize) -> Result<(f64, ClassicalStrategy)> {
    classical_bound_with_limit(w, d, DEFAULT_GUARD_LIMIT)
}

/// Exact classical bound over all deterministic d-dimensional strategies,
/// together with one maximizing strategy.
///
/// Response patterns are enumerated as ascending bitmasks; for a fixed
/// pattern each preparation's label only enters its own row of the sum, so
/// the rows maximize independently with labels scanned in ascending order.
/// Ties keep the first strategy found, so the returned maximizer is stable
/// across runs. For absolute-value witnesses both global sign branches are
/// maximized and the response symmetry f ↦ −f halves the pattern scan.
pub fn classical_bound_with_limit(
    w: &Witness,
    d: usize,
    guard_limit: u128,
) -> Result<(f64, ClassicalStrategy)> {
    if d == 0 {
        return Err(Error::Dimension("classical dimension must be at least 1".into()));
    }
    let n = w.preparations();
    let m = w.measurements();

    let count = enumeration_count(d, n, m);
    if count > guard_limit {
        return Err(Error::TooLarge { count, limit: guard_limit });
    }

    let bits = d * m;
    let patterns: u64 = 1 << bits;
    // Fixing f_1(0) = +1 (bit 0 clear) selects one representative of each
    // {F, -F} orbit; valid only when the witness takes an absolute value.
    let stride_ok = |pat: u64| !w.take_abs() || (pat & 1) == 0;

    let mut best_value = f64::NEG_INFINITY;
    let mut best: Option<(u64, Vec<usize>)> = None;

    let branches: &[f64] = if w.take_abs() { &[1.0, -1.0] } else { &[1.0] };
    let mut labels = vec![0usize; n];

    for pat in 0..patterns {
        if !stride_ok(pat) {
            continue;
        }
        for &sigma in branches {
            let mut total = 0.0;
            for (x, chosen) in labels.iter_mut().enumerate() {
                let mut row_best = f64::NEG_INFINITY;
                let mut row_label = 0usize;
                for label in 0..d {
                    let mut v = 0.0;
                    for y in 0..m {
                        let bit = (pat >> (y * d + label)) & 1;
                        let f = if bit == 0 { 1.0 } else { -1.0 };
                        v += w.coeff(x, y) * f;
                    }
                    let v = sigma * v;
                    if v > row_best {
                        row_best = v;
                        row_label = label;
                    }
                }
                total += row_best;
                *chosen = row_label;
            }
            if total > best_value {
                best_value = total;
                best = Some((pat, labels.clone()));
            }
        }
    }

    let (pat, labels) = best.expect("at least one strategy is enumerated");
    let responses = (0..m)
        .map(|y| {
            (0..d)
                .map(|label| if (pat >> (y * d + label)) & 1 == 0 { 1i8 } else { -1i8 })
                .collect()
        })
        .collect();
    let strategy = ClassicalStrategy::new(d, labels, responses)?;
    Ok((best_value, strategy))
}

/// The enumeration size dᴺ·2^(d·m), saturating on overflow.
pub fn enumeration_count(d: usize, preparations: usize, measurements: usize) -> u128 {
    let labels = (d as u128).checked_pow(preparations as u32);
    let shift = d.checked_mul(measurements).filter(|&b| b < 128);
    match (labels, shift) {
        (Some(l), Some(b)) => l.saturating_mul(1u128 << b),
        _ => u128::MAX,
    }
}

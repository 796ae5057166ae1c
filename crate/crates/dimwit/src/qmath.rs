//! Dense complex linear algebra for Hilbert-space dimensions 2–4.
//!
//! Everything a prepare-and-measure witness needs: unit state vectors,
//! Hermitian matrices, a cyclic Jacobi eigensolver, dichotomic (±1-eigenvalue)
//! observables, and expectation values. All types are immutable after
//! construction and all operations are pure, so they can be shared freely
//! across threads.

use crate::error::{Error, Result};
pub use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Unit-norm tolerance for state vectors.
pub const NORM_TOL: f64 = 1e-9;
/// Entrywise tolerance for the Hermitian symmetry check.
pub const HERM_TOL: f64 = 1e-12;
/// Reconstruction/orthonormality tolerance of the eigensolver.
pub const EIG_TOL: f64 = 1e-8;
/// Eigenvalues within this of zero take the tie sign in [`sign_observable`].
pub const SIGN_ZERO_TOL: f64 = 1e-10;

/// Jacobi sweeps stop once the off-diagonal Frobenius mass drops below this.
const JACOBI_OFF_TOL: f64 = 1e-12;
const JACOBI_MAX_SWEEPS: usize = 60;

const MIN_DIM: usize = 2;
const MAX_DIM: usize = 4;

fn check_dim(dim: usize) -> Result<()> {
    if !(MIN_DIM..=MAX_DIM).contains(&dim) {
        return Err(Error::Dimension(format!(
            "dimension {dim} outside supported range {MIN_DIM}..={MAX_DIM}"
        )));
    }
    Ok(())
}

/// A sign, used for eigenvalue tie-breaking and global sign branches.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    #[default]
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

/// A pure state: a unit-norm complex amplitude vector of dimension 2–4.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    dim: usize,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    /// Builds a state from amplitudes, checking finiteness and unit norm.
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        let dim = amplitudes.len();
        check_dim(dim)?;
        for (i, a) in amplitudes.iter().enumerate() {
            if !a.re.is_finite() || !a.im.is_finite() {
                return Err(Error::InvariantViolation(format!(
                    "non-finite amplitude at index {i}"
                )));
            }
        }
        let norm = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::InvariantViolation(format!(
                "state norm {norm} deviates from 1 by more than {NORM_TOL}"
            )));
        }
        Ok(Self { dim, amplitudes })
    }

    /// Normalizes an arbitrary nonzero vector into a state.
    pub fn from_unnormalized(amplitudes: Vec<Complex64>) -> Result<Self> {
        check_dim(amplitudes.len())?;
        let norm = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if !norm.is_finite() || norm < 1e-12 {
            return Err(Error::InvariantViolation(
                "cannot normalize a (near-)zero or non-finite vector".into(),
            ));
        }
        Self::new(amplitudes.into_iter().map(|a| a / norm).collect())
    }

    /// Builds a state from real amplitudes (normalizing).
    pub fn from_real(amplitudes: &[f64]) -> Result<Self> {
        Self::from_unnormalized(amplitudes.iter().map(|&r| Complex64::new(r, 0.0)).collect())
    }

    /// The computational basis state |k⟩.
    pub fn basis(dim: usize, k: usize) -> Result<Self> {
        check_dim(dim)?;
        if k >= dim {
            return Err(Error::Dimension(format!("basis index {k} for dimension {dim}")));
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
        amplitudes[k] = Complex64::new(1.0, 0.0);
        Ok(Self { dim, amplitudes })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Inner product ⟨self|other⟩.
    pub fn inner(&self, other: &StateVector) -> Result<Complex64> {
        if self.dim != other.dim {
            return Err(Error::Dimension(format!(
                "inner product between dimensions {} and {}",
                self.dim, other.dim
            )));
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Squared overlap |⟨self|other⟩|², insensitive to global phase.
    pub fn overlap(&self, other: &StateVector) -> Result<f64> {
        Ok(self.inner(other)?.norm_sqr())
    }

    /// The rank-1 projector |ψ⟩⟨ψ|.
    pub fn projector(&self) -> HermitianMatrix {
        let amps = &self.amplitudes;
        HermitianMatrix::build(self.dim, |i, j| amps[i] * amps[j].conj())
    }
}

/// A Hermitian matrix of dimension 2–4, stored dense row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix {
    dim: usize,
    entries: Vec<Complex64>,
}

impl HermitianMatrix {
    /// Builds from row-major entries, checking finiteness and hermiticity.
    pub fn new(dim: usize, entries: Vec<Complex64>) -> Result<Self> {
        check_dim(dim)?;
        if entries.len() != dim * dim {
            return Err(Error::Dimension(format!(
                "expected {} entries for a {dim}x{dim} matrix, got {}",
                dim * dim,
                entries.len()
            )));
        }
        for (k, e) in entries.iter().enumerate() {
            if !e.re.is_finite() || !e.im.is_finite() {
                return Err(Error::InvariantViolation(format!(
                    "non-finite matrix entry at flat index {k}"
                )));
            }
        }
        for i in 0..dim {
            for j in i..dim {
                let diff = entries[i * dim + j] - entries[j * dim + i].conj();
                if diff.norm() > HERM_TOL {
                    return Err(Error::InvariantViolation(format!(
                        "entry ({i},{j}) breaks hermiticity by {:.3e}",
                        diff.norm()
                    )));
                }
            }
        }
        Ok(Self { dim, entries })
    }

    /// Builds an exactly Hermitian matrix: `f` is evaluated for i ≤ j only,
    /// the lower triangle is mirrored and the diagonal imaginary part dropped.
    pub fn build(dim: usize, f: impl Fn(usize, usize) -> Complex64) -> Self {
        debug_assert!((MIN_DIM..=MAX_DIM).contains(&dim));
        let mut entries = vec![Complex64::new(0.0, 0.0); dim * dim];
        for i in 0..dim {
            for j in i..dim {
                let v = f(i, j);
                debug_assert!(v.re.is_finite() && v.im.is_finite());
                if i == j {
                    entries[i * dim + i] = Complex64::new(v.re, 0.0);
                } else {
                    entries[i * dim + j] = v;
                    entries[j * dim + i] = v.conj();
                }
            }
        }
        Self { dim, entries }
    }

    pub fn identity(dim: usize) -> Self {
        Self::build(dim, |i, j| {
            Complex64::new(if i == j { 1.0 } else { 0.0 }, 0.0)
        })
    }

    /// A real diagonal matrix.
    pub fn diagonal(values: &[f64]) -> Result<Self> {
        check_dim(values.len())?;
        Ok(Self::build(values.len(), |i, j| {
            Complex64::new(if i == j { values[i] } else { 0.0 }, 0.0)
        }))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i * self.dim + j]
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    /// Real trace (the imaginary part of a Hermitian trace is zero).
    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|i| self.entries[i * self.dim + i].re).sum()
    }

    pub fn add(&self, other: &HermitianMatrix) -> Result<HermitianMatrix> {
        if self.dim != other.dim {
            return Err(Error::Dimension(format!(
                "adding matrices of dimensions {} and {}",
                self.dim, other.dim
            )));
        }
        Ok(HermitianMatrix::build(self.dim, |i, j| {
            self.entry(i, j) + other.entry(i, j)
        }))
    }

    pub fn scale(&self, factor: f64) -> HermitianMatrix {
        HermitianMatrix::build(self.dim, |i, j| self.entry(i, j) * factor)
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        let d = self.dim;
        (0..d)
            .map(|i| (0..d).map(|j| self.entries[i * d + j] * v[j]).sum())
            .collect()
    }

    /// Matrix product (not Hermitian in general, returned as raw entries).
    pub fn mul_raw(&self, other: &HermitianMatrix) -> Vec<Complex64> {
        let d = self.dim;
        let mut out = vec![Complex64::new(0.0, 0.0); d * d];
        for i in 0..d {
            for j in 0..d {
                out[i * d + j] = (0..d).map(|k| self.entry(i, k) * other.entry(k, j)).sum();
            }
        }
        out
    }

    /// Largest entrywise absolute difference to another matrix.
    pub fn max_abs_diff(&self, other: &HermitianMatrix) -> f64 {
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// Eigenvalues (descending) with a matching orthonormal eigenbasis.
///
/// Within a degenerate eigenvalue cluster the basis is an arbitrary
/// orthonormal choice; callers must not rely on which one.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: Vec<StateVector>,
}

impl EigenDecomposition {
    /// The eigenvector of the largest eigenvalue.
    pub fn top_eigenvector(&self) -> &StateVector {
        &self.eigenvectors[0]
    }
}

/// Expectation value ⟨ψ|M|ψ⟩ of a Hermitian observable in a pure state.
pub fn expectation(state: &StateVector, obs: &HermitianMatrix) -> Result<f64> {
    if state.dim != obs.dim {
        return Err(Error::Dimension(format!(
            "state dimension {} vs observable dimension {}",
            state.dim, obs.dim
        )));
    }
    let mv = obs.mul_vec(&state.amplitudes);
    Ok(state
        .amplitudes
        .iter()
        .zip(&mv)
        .map(|(a, b)| (a.conj() * b).re)
        .sum())
}

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi
/// rotations. For dimensions up to 4 this converges in a handful of sweeps.
pub fn eigh(obs: &HermitianMatrix) -> EigenDecomposition {
    let d = obs.dim;
    let mut a = obs.entries.clone();
    let mut q = HermitianMatrix::identity(d).entries;

    let off = |m: &[Complex64]| -> f64 {
        let mut s = 0.0;
        for i in 0..d {
            for j in 0..d {
                if i != j {
                    s += m[i * d + j].norm_sqr();
                }
            }
        }
        s.sqrt()
    };

    for _ in 0..JACOBI_MAX_SWEEPS {
        if off(&a) < JACOBI_OFF_TOL {
            break;
        }
        for p in 0..d {
            for r in (p + 1)..d {
                let apr = a[p * d + r];
                let mag = apr.norm();
                if mag <= f64::MIN_POSITIVE {
                    continue;
                }
                let alpha = apr / mag;
                let app = a[p * d + p].re;
                let arr = a[r * d + r].re;
                let tau = (arr - app) / (2.0 * mag);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;

                // Columns: M[:,p], M[:,r] <- M[:,p]*c - M[:,r]*s*conj(alpha),
                //                            M[:,p]*s + M[:,r]*c*conj(alpha)
                let sca = alpha.conj() * s;
                let cca = alpha.conj() * c;
                for k in 0..d {
                    let mp = a[k * d + p];
                    let mr = a[k * d + r];
                    a[k * d + p] = mp * c - mr * sca;
                    a[k * d + r] = mp * s + mr * cca;
                }
                // Rows: M[p,:], M[r,:] <- c*M[p,:] - s*alpha*M[r,:],
                //                          s*M[p,:] + c*alpha*M[r,:]
                let sa = alpha * s;
                let ca = alpha * c;
                for k in 0..d {
                    let mp = a[p * d + k];
                    let mr = a[r * d + k];
                    a[p * d + k] = mp * c - mr * sa;
                    a[r * d + k] = mp * s + mr * ca;
                }
                a[p * d + r] = Complex64::new(0.0, 0.0);
                a[r * d + p] = Complex64::new(0.0, 0.0);
                a[p * d + p] = Complex64::new(a[p * d + p].re, 0.0);
                a[r * d + r] = Complex64::new(a[r * d + r].re, 0.0);

                for k in 0..d {
                    let qp = q[k * d + p];
                    let qr = q[k * d + r];
                    q[k * d + p] = qp * c - qr * sca;
                    q[k * d + r] = qp * s + qr * cca;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&i, &j| {
        a[j * d + j]
            .re
            .partial_cmp(&a[i * d + i].re)
            .expect("eigenvalues are finite")
    });

    let eigenvalues = order.iter().map(|&i| a[i * d + i].re).collect();
    let eigenvectors = order
        .iter()
        .map(|&col| {
            let amps: Vec<Complex64> = (0..d).map(|row| q[row * d + col]).collect();
            StateVector::new(amps).expect("Jacobi columns stay unit norm")
        })
        .collect();

    EigenDecomposition {
        eigenvalues,
        eigenvectors,
    }
}

/// The dichotomic observable M = 𝟙 − 2|m⟩⟨m| defined by a unit vector.
///
/// Its eigenvalues are +1 with multiplicity dim−1 and −1 on |m⟩ itself.
pub fn dichotomic_from_vector(m: &StateVector) -> HermitianMatrix {
    let amps = m.amplitudes();
    HermitianMatrix::build(m.dim(), |i, j| {
        let delta = Complex64::new(if i == j { 1.0 } else { 0.0 }, 0.0);
        delta - amps[i] * amps[j].conj() * 2.0
    })
}

/// Replaces each eigenvalue of `h` with its sign, keeping the eigenvectors.
///
/// Eigenvalues within [`SIGN_ZERO_TOL`] of zero take `zero_tie`; either tie
/// choice preserves the see-saw objective, which is why it is a parameter.
pub fn sign_observable(h: &HermitianMatrix, zero_tie: Sign) -> HermitianMatrix {
    let eig = eigh(h);
    let signs: Vec<f64> = eig
        .eigenvalues
        .iter()
        .map(|&l| {
            if l > SIGN_ZERO_TOL {
                1.0
            } else if l < -SIGN_ZERO_TOL {
                -1.0
            } else {
                zero_tie.value()
            }
        })
        .collect();
    let d = h.dim();
    HermitianMatrix::build(d, |i, j| {
        (0..d)
            .map(|k| {
                let v = eig.eigenvectors[k].amplitudes();
                v[i] * v[j].conj() * signs[k]
            })
            .sum()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand_chacha::rand_core::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn random_hermitian(rng: &mut ChaCha8Rng, dim: usize) -> HermitianMatrix {
        let mut raw = Vec::with_capacity(dim * dim);
        for _ in 0..dim * dim {
            raw.push(c(
                crate::sampling::standard_normal(rng),
                crate::sampling::standard_normal(rng),
            ));
        }
        HermitianMatrix::build(dim, |i, j| {
            if i == j {
                c(raw[i * dim + i].re, 0.0)
            } else {
                raw[i * dim + j]
            }
        })
    }

    fn reconstruct(eig: &EigenDecomposition, dim: usize) -> HermitianMatrix {
        HermitianMatrix::build(dim, |i, j| {
            (0..dim)
                .map(|k| {
                    let v = eig.eigenvectors[k].amplitudes();
                    v[i] * v[j].conj() * eig.eigenvalues[k]
                })
                .sum()
        })
    }

    #[test]
    fn state_vector_enforces_norm_and_finiteness() {
        assert!(StateVector::new(vec![c(1.0, 0.0), c(0.1, 0.0)]).is_err());
        assert!(StateVector::new(vec![c(f64::NAN, 0.0), c(0.0, 0.0)]).is_err());
        assert!(StateVector::new(vec![c(1.0, 0.0)]).is_err());
        let s = StateVector::from_real(&[3.0, 4.0]).unwrap();
        assert!((s.norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn hermitian_matrix_rejects_asymmetry() {
        let bad = vec![c(1.0, 0.0), c(0.5, 0.1), c(0.5, 0.1), c(-1.0, 0.0)];
        assert!(matches!(
            HermitianMatrix::new(2, bad),
            Err(Error::InvariantViolation(_))
        ));
        let good = vec![c(1.0, 0.0), c(0.5, 0.1), c(0.5, -0.1), c(-1.0, 0.0)];
        assert!(HermitianMatrix::new(2, good).is_ok());
    }

    #[test]
    fn expectation_of_eigenstate_is_eigenvalue() {
        let z = HermitianMatrix::diagonal(&[1.0, -1.0]).unwrap();
        let zero = StateVector::basis(2, 0).unwrap();
        assert_eq!(expectation(&zero, &z).unwrap(), 1.0);
    }

    #[test]
    fn expectation_of_balanced_superposition_vanishes() {
        let z = HermitianMatrix::diagonal(&[1.0, -1.0]).unwrap();
        let plus = StateVector::from_real(&[1.0, 1.0]).unwrap();
        assert!(expectation(&plus, &z).unwrap().abs() < 1e-15);
    }

    #[test]
    fn expectation_against_direct_2x2_arithmetic() {
        // Oracle: <psi|M|psi> computed with plain f64 arithmetic for the
        // measurement vector m1 = cos(pi/8)|0> - sin(pi/8)|1> and the state
        // (|0>+|1>)/sqrt(2).
        let (cc, ss) = ((std::f64::consts::PI / 8.0).cos(), (std::f64::consts::PI / 8.0).sin());
        // M = I - 2 m m^T (real): [[1-2c^2, 2cs], [2cs, 1-2s^2]]
        let m00 = 1.0 - 2.0 * cc * cc;
        let m01 = 2.0 * cc * ss;
        let m11 = 1.0 - 2.0 * ss * ss;
        let a = std::f64::consts::FRAC_1_SQRT_2;
        let oracle = a * (m00 * a + m01 * a) + a * (m01 * a + m11 * a);
        assert!((oracle - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12);

        let m1 = StateVector::from_real(&[cc, -ss]).unwrap();
        let obs = dichotomic_from_vector(&m1);
        let psi = StateVector::from_real(&[1.0, 1.0]).unwrap();
        let got = expectation(&psi, &obs).unwrap();
        assert!((got - oracle).abs() < 1e-12, "got {got}, oracle {oracle}");
    }

    #[test]
    fn expectation_rejects_dimension_mismatch() {
        let z = HermitianMatrix::diagonal(&[1.0, -1.0]).unwrap();
        let s = StateVector::basis(3, 0).unwrap();
        assert!(matches!(expectation(&s, &z), Err(Error::Dimension(_))));
    }

    #[test]
    fn eigh_identity_and_diagonal() {
        let eye = HermitianMatrix::identity(3);
        let eig = eigh(&eye);
        assert_eq!(eig.eigenvalues, vec![1.0, 1.0, 1.0]);

        let z = HermitianMatrix::diagonal(&[1.0, -1.0]).unwrap();
        let eig = eigh(&z);
        assert_eq!(eig.eigenvalues, vec![1.0, -1.0]);
        assert!(eig.eigenvectors[0].overlap(&StateVector::basis(2, 0).unwrap()).unwrap() > 1.0 - 1e-12);
        assert!(eig.eigenvectors[1].overlap(&StateVector::basis(2, 1).unwrap()).unwrap() > 1.0 - 1e-12);
    }

    #[test]
    fn eigh_of_reflection_has_plus_minus_one() {
        let m = StateVector::from_real(&[0.6, 0.8]).unwrap();
        let obs = dichotomic_from_vector(&m);
        let eig = eigh(&obs);
        assert!((eig.eigenvalues[0] - 1.0).abs() < 1e-12);
        assert!((eig.eigenvalues[1] + 1.0).abs() < 1e-12);
    }

    #[test]
    fn eigh_reconstructs_random_hermitians() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for dim in 2..=4 {
            for _ in 0..1000 {
                let h = random_hermitian(&mut rng, dim);
                let eig = eigh(&h);
                // descending order
                for w in eig.eigenvalues.windows(2) {
                    assert!(w[0] >= w[1]);
                }
                // A v = lambda v
                for (k, v) in eig.eigenvectors.iter().enumerate() {
                    let av = h.mul_vec(v.amplitudes());
                    for (i, a) in av.iter().enumerate() {
                        let lv = v.amplitudes()[i] * eig.eigenvalues[k];
                        assert!((a - lv).norm() < EIG_TOL, "dim {dim}: residual {:.3e}", (a - lv).norm());
                    }
                }
                // orthonormality
                for i in 0..dim {
                    for j in (i + 1)..dim {
                        let ip = eig.eigenvectors[i].inner(&eig.eigenvectors[j]).unwrap();
                        assert!(ip.norm() < EIG_TOL);
                    }
                }
                // reconstruction
                assert!(reconstruct(&eig, dim).max_abs_diff(&h) < EIG_TOL);
            }
        }
    }

    #[test]
    fn eigenbasis_choice_in_degenerate_cluster_is_immaterial() {
        // 1 - 2|m><m| has a (dim-1)-fold degenerate +1 eigenspace. Mixing the
        // degenerate eigenvectors by a rotation must leave the reconstruction
        // unchanged.
        let m = StateVector::from_real(&[0.2, 0.3, 0.932737904865262]).unwrap();
        let obs = dichotomic_from_vector(&m);
        let eig = eigh(&obs);
        let (c, s) = (0.8, 0.6);
        let v0 = eig.eigenvectors[0].amplitudes().to_vec();
        let v1 = eig.eigenvectors[1].amplitudes().to_vec();
        let w0: Vec<Complex64> = v0.iter().zip(&v1).map(|(a, b)| a * c + b * s).collect();
        let w1: Vec<Complex64> = v0.iter().zip(&v1).map(|(a, b)| b * c - a * s).collect();
        let rotated = EigenDecomposition {
            eigenvalues: eig.eigenvalues.clone(),
            eigenvectors: vec![
                StateVector::new(w0).unwrap(),
                StateVector::new(w1).unwrap(),
                eig.eigenvectors[2].clone(),
            ],
        };
        assert!(reconstruct(&rotated, 3).max_abs_diff(&obs) < 1e-12);
    }

    #[test]
    fn dichotomic_examples() {
        // m = |1>  ->  diag(+1, -1)
        let m = StateVector::basis(2, 1).unwrap();
        let obs = dichotomic_from_vector(&m);
        assert!(obs.max_abs_diff(&HermitianMatrix::diagonal(&[1.0, -1.0]).unwrap()) < 1e-15);

        // m = (|0>-|1>)/sqrt(2)  ->  [[0,1],[1,0]]
        let m = StateVector::from_real(&[1.0, -1.0]).unwrap();
        let obs = dichotomic_from_vector(&m);
        let x = HermitianMatrix::new(2, vec![c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        assert!(obs.max_abs_diff(&x) < 1e-15);

        // m = |2> in dimension 3  ->  diag(+1, +1, -1)
        let m = StateVector::basis(3, 2).unwrap();
        let obs = dichotomic_from_vector(&m);
        assert!(obs.max_abs_diff(&HermitianMatrix::diagonal(&[1.0, 1.0, -1.0]).unwrap()) < 1e-15);
    }

    #[test]
    fn dichotomic_trace_and_action_on_m() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for dim in 2..=4 {
            for _ in 0..50 {
                let mut amps = Vec::with_capacity(dim);
                for _ in 0..dim {
                    amps.push(c(
                        crate::sampling::standard_normal(&mut rng),
                        crate::sampling::standard_normal(&mut rng),
                    ));
                }
                let m = StateVector::from_unnormalized(amps).unwrap();
                let obs = dichotomic_from_vector(&m);
                assert!((obs.trace() - (dim as f64 - 2.0)).abs() < 1e-10);
                let mv = obs.mul_vec(m.amplitudes());
                for (a, b) in mv.iter().zip(m.amplitudes()) {
                    assert!((a + b).norm() < 1e-12, "M m != -m");
                }
                assert!((expectation(&m, &HermitianMatrix::identity(dim)).unwrap() - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn sign_observable_examples_and_tie() {
        let h = HermitianMatrix::diagonal(&[3.0, -0.5]).unwrap();
        let s = sign_observable(&h, Sign::Plus);
        assert!(s.max_abs_diff(&HermitianMatrix::diagonal(&[1.0, -1.0]).unwrap()) < 1e-12);

        let h = HermitianMatrix::diagonal(&[0.0, 2.0]).unwrap();
        let s = sign_observable(&h, Sign::Plus);
        assert!(s.max_abs_diff(&HermitianMatrix::identity(2)) < 1e-12);
        let s = sign_observable(&h, Sign::Minus);
        assert!(s.max_abs_diff(&HermitianMatrix::diagonal(&[-1.0, 1.0]).unwrap()) < 1e-12);
    }

    #[test]
    fn sign_observable_is_idempotent() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for dim in 2..=4 {
            for _ in 0..100 {
                let h = random_hermitian(&mut rng, dim);
                let once = sign_observable(&h, Sign::Plus);
                let twice = sign_observable(&once, Sign::Plus);
                assert!(once.max_abs_diff(&twice) < 1e-10);
            }
        }
    }
}

//! # dimwit — device-independent **dim**ension **wit**nesses
//!
//! Tools for prepare-and-measure dimension witness experiments: a state
//! preparator emits one of N states on demand, a measurement device applies
//! one of m dichotomic measurements, and a linear combination of the observed
//! correlators E_xy = P(+1|x,y) − P(−1|x,y) reveals a lower bound on the
//! dimension of whatever travels between them, with no assumption about
//! either device.
//!
//! The crate covers the full pipeline:
//!
//! * [`qmath`] — complex vectors, Hermitian matrices and a Jacobi
//!   eigensolver for dimensions 2–4.
//! * [`witness`] — witness evaluation and the I3/I4 catalog with classical
//!   and quantum bounds in closed form.
//! * [`classical`] — exact classical bounds by exhaustive enumeration of
//!   deterministic strategies.
//! * [`quantum`] — quantum lower bounds by multi-restart see-saw
//!   optimization over states and dichotomic observables.
//! * [`settings`] — the seven optimal experiment configurations and the
//!   half-wave-plate angles realizing each prepared state.
//! * [`simulate`] — Poisson photon-counting simulation with propagated
//!   counting errors.
//! * [`certify`] — turning a measured value into minimum classical and
//!   quantum dimensions.
//! * [`report`] — SVG/CSV rendering of measured values against bound lines.
//!
//! Start with the examples (`cargo run --example catalog_optima`) or the
//! `dimwit` binary:
//!
//! ```sh
//! dimwit simulate --experiment i4-bb84 --out run.json && dimwit certify run.json
//! ```
//!
//! A minimal end-to-end round in library form — simulate the BB84
//! configuration, estimate the witness, and certify the dimension:
//!
//! ```
//! use dimwit::{certify::certify, simulate::{run_experiment, RunConfig}};
//!
//! let estimate = run_experiment("i4-bb84", &RunConfig { seed: 7, ..Default::default() })?;
//! let certificate = certify("i4", &estimate, 3.0)?;
//! assert_eq!(certificate.min_classical_dim, 3); // the bit bound is violated
//! assert_eq!(certificate.min_quantum_dim, 2);   // a qubit source suffices
//! # Ok::<(), dimwit::Error>(())
//! ```

#![forbid(unsafe_code)]

pub mod certify;
pub mod classical;
pub mod cli;
pub mod error;
pub mod qmath;
pub mod quantum;
pub mod report;
pub mod sampling;
pub mod settings;
pub mod simulate;
pub mod witness;

pub use error::{Error, Result};

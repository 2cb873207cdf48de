//! Frequency-domain quantum noise of laser-interferometric gravitational-wave
//! detectors in the presence of optical loss.
//!
//! The crate is organised bottom-up:
//!
//! * [`quadrature`] — 2×2 complex algebra over the amplitude/phase quadrature
//!   basis and the elementary transfer matrices (rotation, squeezing,
//!   ponderomotive coupling).
//! * [`ifo`] — the single-mode signal-recycled interferometer: effective
//!   losses, the input–output relation, output covariance and exact
//!   sensitivity spectra for fixed or optimal homodyne readout.
//! * [`limits`] — closed-form sensitivity limits (SQL, QCRB, the loss-induced
//!   limit and its leading-order expansions).
//! * [`fdt`] — an independent fluctuation–dissipation computation of the arm
//!   loss floor.
//! * [`budget`] — curve sweeps, cross-validation reports and file output used
//!   by the `qnlimit` binary.

// `!(x > 0.0)` is used deliberately so that NaN fails the guard.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod budget;
pub mod constants;
pub mod error;
pub mod fdt;
pub mod ifo;
pub mod limits;
pub mod quadrature;
pub mod table;

pub use error::{Error, Result};
pub use ifo::{Band, IfoConfig, Interferometer, IoRelation, NoiseSpectrum};
pub use quadrature::{ComplexMat2, ComplexVec2, SqueezeParams};

//! Single-mode model of a signal-recycled interferometer with optical loss.
//!
//! The signal-recycling cavity is reduced to an effective mirror of power
//! transmissivity `T_src`. Inside it, a round trip applies
//! `M_rot(Θ)·M_sqz·M_rot(Θ)`; all propagation phases are assumed cancelled
//! unless a residual phase is configured. Arm and SRC losses are folded into
//! a single internal loss `ε_int`, and readout losses into `ε_ext`.

mod config;
mod model;
mod spectrum;

pub use config::{Band, IfoConfig, InternalSqueezing};
pub use model::{effective_src_loss, CovarianceFactor, Interferometer, IoRelation, OptimalReadout};
pub use spectrum::{log_spaced, NoiseSpectrum};

//! Closed-form sensitivity limits.
//!
//! These are direct evaluations of analytic expressions; the exact matrix
//! pipeline in [`crate::ifo`] remains authoritative and the expansions here
//! are cross-checked against it.
//!
//! The leading-order expansions assume `T_src ≪ 1`, `Θ ≪ 1` and an internal
//! squeeze factor `r` of order `T_src`. Out-of-regime use is logged, not
//! rejected.

use std::collections::BTreeSet;
use std::f64::consts::FRAC_PI_2;
use std::sync::Mutex;

use crate::constants::{HBAR, SPEED_OF_LIGHT};
use crate::error::{Error, Result};
use crate::ifo::Interferometer;
use crate::quadrature::{arccot, SqueezeParams};

/// Weight of the external loss in the loss-induced limit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Alpha {
    /// Internal squeezing used to maximise power fluctuation (α = 1).
    InternalSqueezing,
    /// Negligible internal squeezing (α = 1/4).
    NoInternalSqueezing,
}

impl Alpha {
    pub fn value(self) -> f64 {
        match self {
            Alpha::InternalSqueezing => 1.0,
            Alpha::NoInternalSqueezing => 0.25,
        }
    }
}

impl TryFrom<f64> for Alpha {
    type Error = Error;

    fn try_from(x: f64) -> Result<Self> {
        if x == 1.0 {
            Ok(Alpha::InternalSqueezing)
        } else if x == 0.25 {
            Ok(Alpha::NoInternalSqueezing)
        } else {
            Err(Error::param("alpha", format!("must be 1 or 1/4, got {x}")))
        }
    }
}

/// Arm length, carrier frequency and arm power: the quantities that set the
/// overall scale `ħc²/(4L²ω0P)` of every loss and shot-noise limit.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OpticalScale {
    pub arm_length: f64,
    pub omega0: f64,
    pub arm_power: f64,
}

impl OpticalScale {
    pub fn of(ifo: &Interferometer) -> Self {
        let c = ifo.config();
        Self {
            arm_length: c.arm_length,
            omega0: c.omega0,
            arm_power: c.arm_power,
        }
    }

    /// `ħc²/(4L²ω0P)` [1/Hz]; equals `1/β²`.
    pub fn loss_prefactor(&self) -> f64 {
        HBAR * SPEED_OF_LIGHT * SPEED_OF_LIGHT
            / (4.0 * self.arm_length * self.arm_length * self.omega0 * self.arm_power)
    }
}

/// Expansion parameters `δ = √(T_src² + 16Θ²)` and `θ0 = arccot(4Θ/T_src)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LimitParams {
    pub delta: f64,
    pub theta0: f64,
}

impl LimitParams {
    pub fn new(t_src: f64, rotation: f64) -> Result<Self> {
        if !(t_src > 0.0 && t_src < 1.0) {
            return Err(Error::param(
                "T_src",
                format!("must lie in (0, 1), got {t_src}"),
            ));
        }
        if !rotation.is_finite() {
            return Err(Error::param("Theta", "must be finite"));
        }
        Ok(Self {
            delta: t_src.hypot(4.0 * rotation),
            theta0: arccot(4.0 * rotation / t_src),
        })
    }
}

/// True inside the leading-order expansion regime
/// (`T_src < 0.05`, `|Θ| < 0.05`, `|r| ≤ δ`).
pub fn in_expansion_regime(t_src: f64, rotation: f64, r: f64) -> bool {
    let delta = t_src.hypot(4.0 * rotation);
    t_src < 0.05 && rotation.abs() < 0.05 && r.abs() <= delta
}

/// Logs an out-of-regime warning once per expansion and process; sweeps would
/// otherwise repeat it at every frequency.
fn warn_regime(what: &'static str, t_src: f64, rotation: f64, r: f64) {
    static WARNED: Mutex<BTreeSet<&'static str>> = Mutex::new(BTreeSet::new());
    if !in_expansion_regime(t_src, rotation, r)
        && WARNED.lock().map(|mut w| w.insert(what)).unwrap_or(false)
    {
        log::warn!(
            "{what}: T_src = {t_src}, Θ = {rotation}, r = {r} outside the expansion regime; \
             use the exact pipeline"
        );
    }
}

/// Standard quantum limit `8ħ/(M·Ω²·L²)`.
pub fn sql(mass: f64, arm_length: f64, omega: f64) -> Result<f64> {
    for (name, x) in [("M", mass), ("L", arm_length), ("Omega", omega)] {
        if !(x.is_finite() && x > 0.0) {
            return Err(Error::param(name, format!("must be > 0, got {x}")));
        }
    }
    Ok(8.0 * HBAR / (mass * omega * omega * arm_length * arm_length))
}

/// Quantum Cramér–Rao bound from the arm power-fluctuation spectrum,
/// `ħ²c²/(2·S_PP·L²)`.
pub fn qcrb_from_spp(s_pp: f64, arm_length: f64) -> Result<f64> {
    if !(s_pp > 0.0) {
        return Err(Error::param("S_PP", format!("must be > 0, got {s_pp}")));
    }
    let hc = HBAR * SPEED_OF_LIGHT;
    Ok(hc * hc / (2.0 * s_pp * arm_length * arm_length))
}

/// Inverse of [`qcrb_from_spp`].
pub fn spp_from_qcrb(s_hh: f64, arm_length: f64) -> Result<f64> {
    if !(s_hh > 0.0) {
        return Err(Error::param("S_hh", format!("must be > 0, got {s_hh}")));
    }
    let hc = HBAR * SPEED_OF_LIGHT;
    Ok(hc * hc / (2.0 * s_hh * arm_length * arm_length))
}

/// Loss-induced limit to first order in the losses:
///
/// `ħc²/(4L²ω0P)·[ε_arm + (1 + Ω²/γ²)·T_itm·ε_src/4 + α·T_src·ε_ext]`.
pub fn loss_limit(ifo: &Interferometer, omega: f64, alpha: Alpha) -> f64 {
    let c = ifo.config();
    let x = omega / ifo.arm_bandwidth();
    let bracket = c.eps_arm
        + (1.0 + x * x) * c.t_itm * ifo.eps_src() / 4.0
        + alpha.value() * c.t_src * c.eps_ext;
    OpticalScale::of(ifo).loss_prefactor() * bracket
}

/// Arm and readout losses only, without internal squeezing:
/// `ħc²/(4L²ω0P)·(ε_arm + T_src·ε_ext/4)`.
pub fn metrology_limit(ifo: &Interferometer) -> f64 {
    let c = ifo.config();
    OpticalScale::of(ifo).loss_prefactor() * (c.eps_arm + c.t_src * c.eps_ext / 4.0)
}

/// Angular frequency at which the SRC-loss term equals the arm-loss term, if
/// it exists.
pub fn src_arm_crossover(ifo: &Interferometer) -> Option<f64> {
    let c = ifo.config();
    let src = c.t_itm * ifo.eps_src() / 4.0;
    if src <= 0.0 {
        return None;
    }
    let k = c.eps_arm / src - 1.0;
    (k > 0.0).then(|| ifo.arm_bandwidth() * k.sqrt())
}

/// Leading-order lossless QCRB with internal squeezing `squeeze` inside the
/// signal-recycling cavity:
///
/// `ħc²(δ² − 4r²)²e^{−2r_in} / {16L²ω0P·T_src·[δ² + 4r² + 4δr·sin(θ0 − 2θ)]}`
///
/// where `θ` is the squeeze angle of [`crate::quadrature::sqz_matrix`]. The
/// combination `−2θ` is the squeeze phase that enters the expansion; see
/// [`expansion_phase`].
pub fn taylor_qcrb_internal(
    scale: OpticalScale,
    t_src: f64,
    rotation: f64,
    squeeze: SqueezeParams,
    r_input: f64,
) -> Result<f64> {
    let p = LimitParams::new(t_src, rotation)?;
    let r = squeeze.r();
    warn_regime("taylor_qcrb_internal", t_src, rotation, r);
    let (d2, r2) = (p.delta * p.delta, r * r);
    let psi = expansion_phase(squeeze.theta());
    let denom = d2 + 4.0 * r2 + 4.0 * p.delta * r * (psi + p.theta0).sin();
    if !(denom > 0.0) {
        return Err(Error::OutsideValidity(format!(
            "denominator {denom:e} ≤ 0 for r = {r}, θ = {}",
            squeeze.theta()
        )));
    }
    let num = (d2 - 4.0 * r2).powi(2) * (-2.0 * r_input).exp();
    Ok(4.0 * scale.loss_prefactor() * num / (16.0 * t_src * denom))
}

/// Squeeze phase `ψ = −2θ` used by the expansions, from the squeeze angle θ
/// of the squeezing matrix.
pub fn expansion_phase(theta: f64) -> f64 {
    -2.0 * theta
}

/// Squeeze angle that minimises the loss-induced noise at `r = δ/2`
/// (expansion phase `ψ = π/2 − θ0`).
pub fn optimal_loss_squeeze_angle(t_src: f64, rotation: f64) -> Result<f64> {
    let p = LimitParams::new(t_src, rotation)?;
    Ok(-(FRAC_PI_2 - p.theta0) / 2.0)
}

/// Loss limit with optimised internal squeezing (`r = δ/2`):
/// `ħc²/(4L²ω0P)·(ε_int + T_src·ε_ext)`.
pub fn taylor_loss_internal(ifo: &Interferometer, omega: f64) -> f64 {
    let c = ifo.config();
    warn_regime("taylor_loss_internal", c.t_src, 0.0, 0.0);
    OpticalScale::of(ifo).loss_prefactor()
        * (ifo.effective_internal_loss(omega) + c.t_src * c.eps_ext)
}

/// Shot-noise-only QCRB without internal squeezing:
/// `ħc²δ²e^{−2r_in}/(16·T_src·L²ω0P)`.
pub fn taylor_qcrb_no_internal(
    scale: OpticalScale,
    t_src: f64,
    rotation: f64,
    r_input: f64,
) -> Result<f64> {
    let p = LimitParams::new(t_src, rotation)?;
    warn_regime("taylor_qcrb_no_internal", t_src, rotation, 0.0);
    Ok(4.0 * scale.loss_prefactor() * p.delta * p.delta * (-2.0 * r_input).exp() / (16.0 * t_src))
}

/// Loss limit without internal squeezing, minimised at `Θ = 0`:
/// `ħc²/(4L²ω0P)·(ε_int + T_src·ε_ext/4)`.
pub fn taylor_loss_no_internal(ifo: &Interferometer, omega: f64) -> f64 {
    let c = ifo.config();
    warn_regime("taylor_loss_no_internal", c.t_src, 0.0, 0.0);
    OpticalScale::of(ifo).loss_prefactor()
        * (ifo.effective_internal_loss(omega) + c.t_src * c.eps_ext / 4.0)
}

/// Signal-response ratio `√[(1 + sin(ψ + θ0))/4]` between `r = δ/2` and
/// `r = 0`, in terms of the expansion phase ψ.
pub fn signal_response_ratio(psi: f64, theta0: f64) -> Result<f64> {
    if !(psi.is_finite() && theta0.is_finite()) {
        return Err(Error::param("theta", "angles must be finite"));
    }
    Ok(((1.0 + (psi + theta0).sin()) / 4.0).max(0.0).sqrt())
}

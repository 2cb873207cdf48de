//! Arm-loss floor from the fluctuation–dissipation theorem.
//!
//! The arm cavity is treated as a single optical mode damped at
//! `γ_ε = c·ε_arm/(4L)`. At zero temperature the loss-induced fluctuation of
//! the phase quadrature follows from the imaginary part of its
//! susceptibility, `S_xx = 2ħ·Im χ_xx`, and is referred to strain through the
//! GW coupling `g`. This gives an estimate of the arm-loss floor that does
//! not share any code with the matrix pipeline.
//!
//! Public functions take sideband frequencies Ω; the shift to the absolute
//! optical frequency `ω = ω0 + Ω` happens here, using the factored form
//! `ω_cav² − ω² = −Ω(2ω0 + Ω)` so that the detuning is never formed by
//! subtracting two numbers of order 10¹⁵.

use num_complex::Complex64 as C64;

use crate::constants::{HBAR, SPEED_OF_LIGHT};
use crate::error::{Error, Result};
use crate::ifo::Interferometer;

/// Below this `ω_cav/γ_ε` the single-mode treatment is flagged.
pub const MIN_QUALITY_FACTOR: f64 = 1e3;

/// Single optical mode with resonance `omega_cav` and loss rate `gamma_eps`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CavityMode {
    omega_cav: f64,
    gamma_eps: f64,
}

impl CavityMode {
    /// `gamma_eps = 0` describes a lossless mode.
    pub fn new(omega_cav: f64, gamma_eps: f64) -> Result<Self> {
        if !(omega_cav.is_finite() && omega_cav > 0.0) {
            return Err(Error::param(
                "omega_cav",
                format!("must be > 0, got {omega_cav}"),
            ));
        }
        if !(gamma_eps.is_finite() && gamma_eps >= 0.0) {
            return Err(Error::param(
                "gamma_eps",
                format!("must be ≥ 0, got {gamma_eps}"),
            ));
        }
        if gamma_eps > 0.0 && omega_cav / gamma_eps < MIN_QUALITY_FACTOR {
            log::warn!(
                "ω_cav/γ_ε = {:.3e} < {MIN_QUALITY_FACTOR:e}: single-mode approximation is poor",
                omega_cav / gamma_eps
            );
        }
        Ok(Self {
            omega_cav,
            gamma_eps,
        })
    }

    /// Arm mode of `ifo`, resonant with the carrier.
    pub fn arm(ifo: &Interferometer) -> Result<Self> {
        let c = ifo.config();
        Self::new(c.omega0, SPEED_OF_LIGHT * c.eps_arm / (4.0 * c.arm_length))
    }

    pub fn omega_cav(&self) -> f64 {
        self.omega_cav
    }

    pub fn gamma_eps(&self) -> f64 {
        self.gamma_eps
    }

    /// `ħ[(γ − iω)² + ω_cav²]` given ω and the precomputed `ω_cav² − ω²`.
    fn denominator(&self, omega: f64, cav2_minus_w2: f64) -> C64 {
        let g = self.gamma_eps;
        HBAR * C64::new(g * g + cav2_minus_w2, -2.0 * g * omega)
    }

    fn at_absolute(&self, omega: f64) -> (f64, C64) {
        let w = self.omega_cav;
        (omega, self.denominator(omega, (w - omega) * (w + omega)))
    }

    fn at_offset(&self, offset: f64) -> (f64, C64) {
        let w = self.omega_cav;
        (
            w + offset,
            self.denominator(w + offset, -offset * (2.0 * w + offset)),
        )
    }
}

/// Complex linear response of one degree of freedom at one frequency.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Susceptibility(pub C64);

impl Susceptibility {
    pub fn value(&self) -> C64 {
        self.0
    }

    pub fn is_finite(&self) -> bool {
        self.0.re.is_finite() && self.0.im.is_finite()
    }
}

fn chi22_from(mode: &CavityMode, (_, d): (f64, C64)) -> Susceptibility {
    Susceptibility(C64::from(mode.omega_cav) / d)
}

fn chi21_from(mode: &CavityMode, (omega, d): (f64, C64)) -> Susceptibility {
    Susceptibility(C64::new(-mode.gamma_eps, omega) / d)
}

/// Phase-quadrature self-susceptibility `ω_cav/{ħ[(γ_ε − iω)² + ω_cav²]}` at
/// absolute optical frequency ω.
pub fn chi_22(mode: &CavityMode, omega: f64) -> Susceptibility {
    chi22_from(mode, mode.at_absolute(omega))
}

/// Cross susceptibility `(iω − γ_ε)/{ħ[(γ_ε − iω)² + ω_cav²]}` at absolute ω.
pub fn chi_21(mode: &CavityMode, omega: f64) -> Susceptibility {
    chi21_from(mode, mode.at_absolute(omega))
}

/// [`chi_22`] at `ω = ω_cav + offset`.
pub fn chi_22_offset(mode: &CavityMode, offset: f64) -> Susceptibility {
    chi22_from(mode, mode.at_offset(offset))
}

/// [`chi_21`] at `ω = ω_cav + offset`.
pub fn chi_21_offset(mode: &CavityMode, offset: f64) -> Susceptibility {
    chi21_from(mode, mode.at_offset(offset))
}

/// Zero-temperature fluctuation spectrum `2ħ·Im χ`.
pub fn fdt_spectrum(chi: Susceptibility) -> f64 {
    2.0 * HBAR * chi.0.im
}

/// GW coupling constant `g = 2√(Pω0/(ħLc))`.
pub fn gw_coupling(arm_power: f64, omega0: f64, arm_length: f64) -> Result<f64> {
    if !(arm_power >= 0.0 && arm_power.is_finite()) {
        return Err(Error::param("P", format!("must be ≥ 0, got {arm_power}")));
    }
    if !(omega0 > 0.0 && arm_length > 0.0) {
        return Err(Error::param("L", "omega0 and L must be > 0"));
    }
    Ok(2.0 * (arm_power * omega0 / (HBAR * arm_length * SPEED_OF_LIGHT)).sqrt())
}

/// `Im χ22/|χ21|²`, the quantity left unchanged by lossless couplings.
pub fn dissipation_ratio(chi22: Susceptibility, chi21: Susceptibility) -> f64 {
    chi22.0.im / chi21.0.norm_sqr()
}

/// Susceptibilities after coupling to a passive degree of freedom with
/// response `chi_yy`: both are divided by `1 − χ22·χ_yy`.
pub fn coupled_susceptibilities(
    chi22: Susceptibility,
    chi21: Susceptibility,
    chi_yy: C64,
) -> Result<(Susceptibility, Susceptibility)> {
    let den = C64::new(1.0, 0.0) - chi22.0 * chi_yy;
    if den.norm() <= f64::EPSILON || !den.is_finite() {
        return Err(Error::param(
            "chi_yy",
            "coupling denominator 1 − χ22·χ_yy vanishes",
        ));
    }
    Ok((Susceptibility(chi22.0 / den), Susceptibility(chi21.0 / den)))
}

/// Arm-loss strain floor `2·Im χ22/(ħ·g²·L²·|χ21|²)` at sideband frequency Ω.
pub fn loss_floor_fdt(ifo: &Interferometer, omega: f64) -> Result<f64> {
    if !(omega.is_finite() && omega > 0.0) {
        return Err(Error::param("Omega", format!("must be > 0, got {omega}")));
    }
    let c = ifo.config();
    if c.eps_arm == 0.0 {
        return Ok(0.0);
    }
    let mode = CavityMode::arm(ifo)?;
    let g = gw_coupling(c.arm_power, c.omega0, c.arm_length)?;
    let chi22 = chi_22_offset(&mode, omega);
    let chi21 = chi_21_offset(&mode, omega);
    let gl = g * c.arm_length;
    Ok(2.0 * dissipation_ratio(chi22, chi21) / (HBAR * gl * gl))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::angular;
    use crate::ifo::log_spaced;
    use approx::assert_relative_eq;

    fn mode() -> CavityMode {
        CavityMode::arm(&Interferometer::aligo_like()).unwrap()
    }

    #[test]
    fn static_response_is_real() {
        let m = CavityMode::new(10.0, 0.5).unwrap();
        let chi = chi_22(&m, 0.0).value();
        assert_eq!(chi.im, 0.0);
        assert_relative_eq!(chi.re, 10.0 / (HBAR * (0.25 + 100.0)), max_relative = 1e-14);
        let chi = chi_21(&m, 0.0).value();
        assert_relative_eq!(chi.re, -0.5 / (HBAR * 100.25), max_relative = 1e-14);
    }

    #[test]
    fn dissipation_sign_and_lossless_limit() {
        let m = CavityMode::new(10.0, 0.5).unwrap();
        for i in 1..200 {
            let w = 0.1 * i as f64;
            assert!(chi_22(&m, w).value().im > 0.0);
            assert!(fdt_spectrum(chi_22(&m, w)) >= 0.0);
        }
        let lossless = CavityMode::new(10.0, 0.0).unwrap();
        assert_eq!(chi_22(&lossless, 3.0).value().im, 0.0);
        assert_eq!(chi_21(&lossless, 3.0).value().re, 0.0);
    }

    #[test]
    fn resonance_peak_near_cavity_frequency() {
        let m = CavityMode::new(10.0, 0.05).unwrap();
        let grid: Vec<f64> = (1..4000).map(|i| i as f64 * 0.005).collect();
        let peak = grid
            .iter()
            .copied()
            .max_by(|a, b| {
                chi_21(&m, *a)
                    .value()
                    .norm()
                    .total_cmp(&chi_21(&m, *b).value().norm())
            })
            .unwrap();
        assert!((peak - 10.0).abs() < 0.01, "peak at {peak}");
    }

    #[test]
    fn fdt_spectrum_examples() {
        assert_eq!(fdt_spectrum(Susceptibility(C64::new(3.0, 0.0))), 0.0);
        assert_eq!(fdt_spectrum(Susceptibility(C64::i())), 2.0 * HBAR);
        // at ω = ω_cav: χ22 = ω/(ħγ(γ − 2iω)), Im = 2ω²/(ħγ(γ² + 4ω²))
        let m = CavityMode::new(10.0, 0.5).unwrap();
        let direct = 2.0 * HBAR * 2.0 * 100.0 / (HBAR * 0.5 * (0.25 + 400.0));
        assert_relative_eq!(fdt_spectrum(chi_22(&m, 10.0)), direct, max_relative = 1e-13);
    }

    #[test]
    fn offset_and_absolute_forms_agree() {
        let m = CavityMode::new(1e3, 2.0).unwrap();
        for off in [-30.0, -1.0, 0.5, 7.0, 100.0] {
            let a = chi_22(&m, 1e3 + off).value();
            let b = chi_22_offset(&m, off).value();
            assert!((a - b).norm() <= 1e-12 * b.norm());
        }
    }

    #[test]
    fn coupling_constant() {
        assert_eq!(gw_coupling(0.0, 1.77e15, 4000.0).unwrap(), 0.0);
        let a = gw_coupling(1.0, 1.77e15, 4000.0).unwrap();
        assert_relative_eq!(
            gw_coupling(4.0, 1.77e15, 4000.0).unwrap(),
            2.0 * a,
            max_relative = 1e-15
        );
        let i = Interferometer::aligo_like();
        let c = i.config();
        let g = gw_coupling(c.arm_power, c.omega0, c.arm_length).unwrap();
        assert_relative_eq!(g, 6.693e21, max_relative = 1e-3);
    }

    #[test]
    fn floor_matches_closed_form_arm_term() {
        let i = Interferometer::aligo_like();
        let c = i.config();
        let closed = HBAR * SPEED_OF_LIGHT * SPEED_OF_LIGHT * c.eps_arm
            / (4.0 * c.arm_length * c.arm_length * c.omega0 * c.arm_power);
        for f in log_spaced(5.0, 5000.0, 40) {
            let s = loss_floor_fdt(&i, angular(f)).unwrap();
            assert_relative_eq!(s, closed, max_relative = 1e-6);
        }
    }

    #[test]
    fn floor_is_flat() {
        let i = Interferometer::aligo_like();
        let lo = loss_floor_fdt(&i, angular(5.0)).unwrap();
        for f in log_spaced(5.0, 5000.0, 50) {
            let s = loss_floor_fdt(&i, angular(f)).unwrap();
            assert!((s / lo - 1.0).abs() < 1e-5);
        }
    }

    #[test]
    fn floor_vanishes_without_arm_loss() {
        let i = Interferometer::aligo_like()
            .with_config(|c| c.eps_arm = 0.0)
            .unwrap();
        assert_eq!(loss_floor_fdt(&i, 100.0).unwrap(), 0.0);
    }

    #[test]
    fn zero_coupling_is_identity() {
        let m = mode();
        let (a, b) = (chi_22_offset(&m, 600.0), chi_21_offset(&m, 600.0));
        let (a2, b2) = coupled_susceptibilities(a, b, C64::new(0.0, 0.0)).unwrap();
        assert_eq!((a, b), (a2, b2));
    }

    #[test]
    fn lossy_coupling_breaks_invariance() {
        let m = mode();
        let (a, b) = (chi_22_offset(&m, 600.0), chi_21_offset(&m, 600.0));
        let before = dissipation_ratio(a, b);
        let chi_yy = C64::new(0.5, 0.05) / a.value().norm();
        let (a2, b2) = coupled_susceptibilities(a, b, chi_yy).unwrap();
        let after = dissipation_ratio(a2, b2);
        assert!((after / before - 1.0).abs() > 1e-3);
    }

    proptest::proptest! {
        #[test]
        fn lossless_coupling_preserves_ratio(u in -5.0f64..5.0, f in 1.0f64..5000.0) {
            let m = mode();
            let off = angular(f);
            let (a, b) = (chi_22_offset(&m, off), chi_21_offset(&m, off));
            let chi_yy = C64::from(u / a.value().norm());
            if let Ok((a2, b2)) = coupled_susceptibilities(a, b, chi_yy) {
                let before = dissipation_ratio(a, b);
                let after = dissipation_ratio(a2, b2);
                proptest::prop_assert!((after / before - 1.0).abs() < 1e-12);
            }
        }

        #[test]
        fn fluctuations_non_negative(w in 0.0f64..100.0, g in 0.0f64..5.0) {
            let m = CavityMode::new(10.0, g).unwrap();
            proptest::prop_assert!(fdt_spectrum(chi_22(&m, w)) >= 0.0);
        }
    }
}

use std::f64::consts::{FRAC_PI_2, PI};

use crate::constants::{hertz, HBAR, LASING_DET_THRESHOLD, SPEED_OF_LIGHT};
use crate::error::{Error, Result};
use crate::quadrature::{
    ponderomotive_decompose, rotation, sqz_matrix, ComplexMat2, ComplexVec2, SqueezeParams, C64,
};
use crate::table::Tabulated;

use super::config::{Band, IfoConfig, InternalSqueezing};

/// Effective SRC loss: the minimum over the band of the summed channel losses.
///
/// Channels are piecewise linear in `log f`, so the minimum of their sum is
/// attained at a band edge or at an interior knot; those are the only points
/// sampled.
pub fn effective_src_loss(channels: &[Tabulated], band: Band) -> Result<f64> {
    if channels.is_empty() {
        return Err(Error::param("eps_src_channels", "no loss channels given"));
    }
    let (lo, hi) = (band.f_min_hz(), band.f_max_hz());
    let mut points = vec![lo, hi];
    for (i, ch) in channels.iter().enumerate() {
        ch.validate(&format!("eps_src_channels[{i}]"))?;
        if !ch.covers(lo, hi) {
            return Err(Error::config(
                format!("eps_src_channels[{i}]"),
                format!("table does not cover the analysis band {lo}..{hi} Hz"),
            ));
        }
        points.extend(ch.knots_within(lo, hi));
    }
    let mut best = f64::INFINITY;
    for f in points {
        let mut total = 0.0;
        for ch in channels {
            total += ch.eval("eps_src_channels", f)?;
        }
        best = best.min(total);
    }
    Ok(best)
}

/// Everything the input–output relation provides at one sideband frequency:
///
/// `a_out = M_io·a_in + √(T_src·ε_int)·M_c·n_int + √ε_ext·n_ext + v·h`.
#[derive(Clone, Copy, Debug)]
pub struct IoRelation {
    pub omega: f64,
    /// Round-trip operator `e^{iφ_res}·M_rot·M_sqz·M_rot`.
    pub round_trip: ComplexMat2,
    pub m_io: ComplexMat2,
    pub m_c: ComplexMat2,
    /// Strain response [per unit strain].
    pub v: ComplexVec2,
    pub internal_coupling: f64,
    pub external_coupling: f64,
}

/// Square-root factor `A` of the output covariance, `Σ_tot = A·A†`.
///
/// Columns: `M_io·S_in` (input state), `√(T_src ε_int)·M_c` (internal loss),
/// `√ε_ext·I` (readout loss). Determinants and quadratic forms are evaluated
/// from `A` as sums of squares, which stays accurate when `Σ_tot` is highly
/// squeezed.
#[derive(Clone, Copy, Debug)]
pub struct CovarianceFactor {
    pub columns: [ComplexVec2; 6],
}

impl CovarianceFactor {
    pub fn gram(&self) -> ComplexMat2 {
        let mut s = ComplexMat2::ZERO;
        for col in &self.columns {
            for i in 0..2 {
                for j in 0..2 {
                    s.0[i][j] += col[i] * col[j].conj();
                }
            }
        }
        s
    }

    /// `det(A·A†)` by Cauchy–Binet.
    pub fn det(&self) -> f64 {
        let c = &self.columns;
        let mut total = 0.0;
        for i in 0..c.len() {
            for j in i + 1..c.len() {
                total += (c[i][0] * c[j][1] - c[i][1] * c[j][0]).norm_sqr();
            }
        }
        total
    }

    /// `x†·Σ·x = |A†x|²`.
    pub fn quadratic_form(&self, x: &ComplexVec2) -> f64 {
        self.columns.iter().map(|col| col.inner(x).norm_sqr()).sum()
    }
}

/// Minimum noise and the homodyne angle that realizes it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OptimalReadout {
    /// `1/(v†·Σ_tot⁻¹·v)` [1/Hz].
    pub s_hh: f64,
    /// Best real homodyne angle, in `[0, π)`.
    pub zeta_opt: f64,
}

/// Validated interferometer bound to an analysis band.
#[derive(Clone, Debug)]
pub struct Interferometer {
    cfg: IfoConfig,
    band: Band,
    eps_src: f64,
}

impl Interferometer {
    pub fn new(cfg: IfoConfig, band: Band) -> Result<Self> {
        cfg.validate()?;
        cfg.validate_band(band)?;
        let eps_src = effective_src_loss(&cfg.eps_src_channels, band)?;
        Ok(Self { cfg, band, eps_src })
    }

    pub fn aligo_like() -> Self {
        Self::new(IfoConfig::aligo_like(), Band::default()).expect("default config is valid")
    }

    pub fn config(&self) -> &IfoConfig {
        &self.cfg
    }

    pub fn band(&self) -> Band {
        self.band
    }

    /// Rebuild with a modified copy of the configuration.
    pub fn with_config(&self, edit: impl FnOnce(&mut IfoConfig)) -> Result<Self> {
        let mut cfg = self.cfg.clone();
        edit(&mut cfg);
        Self::new(cfg, self.band)
    }

    pub fn lossless(&self) -> Self {
        Self::new(self.cfg.lossless(), self.band).expect("removing loss keeps config valid")
    }

    pub fn eps_src(&self) -> f64 {
        self.eps_src
    }

    /// Arm-cavity half-bandwidth `γ = c·T_itm/(4L)` [rad/s].
    pub fn arm_bandwidth(&self) -> f64 {
        SPEED_OF_LIGHT * self.cfg.t_itm / (4.0 * self.cfg.arm_length)
    }

    /// Ponderomotive gain `κ = 16·P·ω0/(M·c²·Ω²)`.
    pub fn kappa(&self, omega: f64) -> Result<f64> {
        check_omega(omega)?;
        let c2 = SPEED_OF_LIGHT * SPEED_OF_LIGHT;
        Ok(16.0 * self.cfg.arm_power * self.cfg.omega0
            / (self.cfg.mirror_mass * c2 * omega * omega))
    }

    /// `ε_int = ε_arm + (T_itm/4)·(1 + Ω²/γ²)·ε_src`.
    pub fn effective_internal_loss(&self, omega: f64) -> f64 {
        let gamma = self.arm_bandwidth();
        let x = omega / gamma;
        self.cfg.eps_arm + self.cfg.t_itm / 4.0 * (1.0 + x * x) * self.eps_src
    }

    /// Signal amplitude `β = 2·√(ω0·L²·P/(ħ·c²))`.
    pub fn beta(&self) -> f64 {
        let c = &self.cfg;
        2.0 * (c.omega0 * c.arm_length * c.arm_length * c.arm_power
            / (HBAR * SPEED_OF_LIGHT * SPEED_OF_LIGHT))
            .sqrt()
    }

    pub fn rotation_angle(&self, omega: f64) -> Result<f64> {
        self.cfg.rotation.eval("Theta", hertz(omega))
    }

    /// Squeeze parameters of the internal element at `omega`, plus the extra
    /// rotation that follows it (non-zero only for ponderomotive squeezing).
    pub fn internal_squeeze(&self, omega: f64) -> Result<(SqueezeParams, f64)> {
        match &self.cfg.internal_sqz {
            InternalSqueezing::None => Ok((SqueezeParams::vacuum(), 0.0)),
            InternalSqueezing::Fixed { r, theta } => {
                let f = hertz(omega);
                let p = SqueezeParams::new(
                    r.eval("internal_sqz.r", f)?,
                    theta.eval("internal_sqz.theta", f)?,
                )?;
                Ok((p, 0.0))
            }
            InternalSqueezing::Ponderomotive => {
                let kappa = self.kappa(omega)?;
                if kappa == 0.0 {
                    return Ok((SqueezeParams::vacuum(), 0.0));
                }
                let d = ponderomotive_decompose(kappa)?;
                Ok((d.squeeze, d.phi))
            }
        }
    }

    /// `e^{iφ_res}·M_rot(Θ)·M_sqz(r, θ)·M_rot(Θ + φ)`.
    pub fn round_trip(&self, omega: f64) -> Result<ComplexMat2> {
        check_omega(omega)?;
        let theta_rot = self.rotation_angle(omega)?;
        let (sq, phi) = self.internal_squeeze(omega)?;
        let m = rotation(theta_rot) * sqz_matrix(sq)? * rotation(theta_rot + phi);
        let res = self
            .cfg
            .residual_phase
            .eval("residual_phase", hertz(omega))?;
        Ok(if res == 0.0 {
            m
        } else {
            m.scale(C64::from_polar(1.0, res))
        })
    }

    pub fn io_relation(&self, omega: f64) -> Result<IoRelation> {
        let t = self.cfg.t_src;
        let sqrt_r = (1.0 - t).sqrt();
        let round_trip = self.round_trip(omega)?;

        let feedback = ComplexMat2::IDENTITY - round_trip.scale_re(sqrt_r);
        let det = feedback.det();
        if !(det.norm() >= LASING_DET_THRESHOLD) {
            return Err(Error::LasingThreshold {
                omega,
                det: det.norm(),
            });
        }
        let m_c = feedback.adjugate().scale(det.inv());
        let m_io = ComplexMat2::IDENTITY.scale_re(-sqrt_r) + (m_c * round_trip).scale_re(t);
        let v0 = ComplexVec2::real(0.0, self.beta());
        let v = m_c.apply(&v0).scale(C64::new(t.sqrt(), 0.0));

        Ok(IoRelation {
            omega,
            round_trip,
            m_io,
            m_c,
            v,
            internal_coupling: (t * self.effective_internal_loss(omega)).sqrt(),
            external_coupling: self.cfg.eps_ext.sqrt(),
        })
    }

    fn input_state(&self) -> Result<ComplexMat2> {
        sqz_matrix(SqueezeParams::new(self.cfg.r_input, self.cfg.theta_input)?)
    }

    pub fn covariance_factor(&self, omega: f64) -> Result<(IoRelation, CovarianceFactor)> {
        let io = self.io_relation(omega)?;
        let input = io.m_io * self.input_state()?;
        let internal = io.m_c.scale_re(io.internal_coupling);
        let ext = io.external_coupling;
        let factor = CovarianceFactor {
            columns: [
                input.column(0),
                input.column(1),
                internal.column(0),
                internal.column(1),
                ComplexVec2::real(ext, 0.0),
                ComplexVec2::real(0.0, ext),
            ],
        };
        Ok((io, factor))
    }

    /// `Σ_tot = M_io·Σ_in·M_io† + T_src·ε_int·M_c·M_c† + ε_ext·I`.
    pub fn total_covariance(&self, omega: f64) -> Result<ComplexMat2> {
        Ok(self.covariance_factor(omega)?.1.gram())
    }

    /// Signal-referred noise for a fixed homodyne angle ζ.
    pub fn homodyne_spectrum(&self, omega: f64, zeta: f64) -> Result<f64> {
        if !zeta.is_finite() {
            return Err(Error::param("zeta", "homodyne angle must be finite"));
        }
        let (io, factor) = self.covariance_factor(omega)?;
        homodyne(&io, &factor, zeta).ok_or(Error::BlindQuadrature { zeta })
    }

    /// [`Self::homodyne_spectrum`] for many angles at one frequency; `None`
    /// marks angles blind to the signal.
    pub fn homodyne_scan(&self, omega: f64, zetas: &[f64]) -> Result<Vec<Option<f64>>> {
        let (io, factor) = self.covariance_factor(omega)?;
        Ok(zetas.iter().map(|&z| homodyne(&io, &factor, z)).collect())
    }

    /// Minimum over all readout quadratures, `1/(v†·Σ_tot⁻¹·v)`.
    pub fn optimal_spectrum(&self, omega: f64) -> Result<OptimalReadout> {
        let (io, factor) = self.covariance_factor(omega)?;
        let det = factor.det();
        if !(det > 0.0 && det.is_finite()) {
            return Err(Error::SingularCovariance { omega });
        }
        // v†·adj(Σ)·v = |A†·conj(J v)|²
        let jv = ComplexVec2::new(io.v[1], -io.v[0]).conj();
        let response = factor.quadratic_form(&jv);
        if !(response > 0.0) {
            return Err(Error::NoSignal { omega });
        }
        Ok(OptimalReadout {
            s_hh: det / response,
            zeta_opt: best_real_quadrature(&factor.gram(), &io.v),
        })
    }

    /// Lossless optimal readout, which attains the quantum Cramér–Rao bound.
    pub fn qcrb_lossless(&self, omega: f64) -> Result<f64> {
        Ok(self.lossless().optimal_spectrum(omega)?.s_hh)
    }

    /// Input squeeze angle that aligns the squeezed quadrature with the
    /// signal as seen from the input port, `M_io⁻¹·v`.
    pub fn optimal_input_squeeze_angle(&self, omega: f64) -> Result<f64> {
        let io = self.io_relation(omega)?;
        let inv = io
            .m_io
            .inverse()
            .ok_or(Error::SingularCovariance { omega })?;
        let w = inv.apply(&io.v);
        let c11 = w[0].norm_sqr();
        let c22 = w[1].norm_sqr();
        let c12 = (w[0] * w[1].conj()).re;
        let axis = 0.5 * (2.0 * c12).atan2(c11 - c22);
        Ok((axis - FRAC_PI_2).rem_euclid(2.0 * PI))
    }

    /// Strain-noise spectrum of the optimal readout on a frequency grid [Hz].
    pub fn sweep_optimal(&self, f_hz: &[f64]) -> Result<Vec<f64>> {
        f_hz.iter()
            .map(|&f| Ok(self.optimal_spectrum(crate::constants::angular(f))?.s_hh))
            .collect()
    }
}

fn homodyne(io: &IoRelation, factor: &CovarianceFactor, zeta: f64) -> Option<f64> {
    let signal = io.v.project(zeta).norm_sqr();
    if !(signal > (1e-14 * io.v.norm()).powi(2)) || !zeta.is_finite() {
        return None;
    }
    let q = ComplexVec2::real(zeta.cos(), zeta.sin());
    Some(factor.quadratic_form(&q) / signal)
}

fn check_omega(omega: f64) -> Result<()> {
    if omega.is_finite() && omega > 0.0 {
        Ok(())
    } else {
        Err(Error::param(
            "Omega",
            format!("sideband frequency must be > 0, got {omega}"),
        ))
    }
}

/// Real unit vector `q(ζ)` maximizing `|q·v|² / (qᵀ·Σ·q)`.
///
/// For real `Σ` and `v` this is the direction of `Σ⁻¹·v`; in general it is the
/// top generalized eigenvector of `(Re(v v†), Re Σ)`.
fn best_real_quadrature(sigma: &ComplexMat2, v: &ComplexVec2) -> f64 {
    let b = sigma.real_part();
    let (vr, vi) = ([v[0].re, v[1].re], [v[0].im, v[1].im]);
    let cm = |i: usize, j: usize| vr[i] * vr[j] + vi[i] * vi[j];
    // adj(B)·C
    let adj = [[b[1][1], -b[0][1]], [-b[1][0], b[0][0]]];
    let mut n = [[0.0; 2]; 2];
    for (i, row) in n.iter_mut().enumerate() {
        for (j, x) in row.iter_mut().enumerate() {
            *x = adj[i][0] * cm(0, j) + adj[i][1] * cm(1, j);
        }
    }
    let tr = n[0][0] + n[1][1];
    let det = n[0][0] * n[1][1] - n[0][1] * n[1][0];
    let lambda = 0.5 * (tr + (tr * tr - 4.0 * det).max(0.0).sqrt());
    let q1 = [n[0][1], lambda - n[0][0]];
    let q2 = [lambda - n[1][1], n[1][0]];
    let q = if q1[0].hypot(q1[1]) >= q2[0].hypot(q2[1]) {
        q1
    } else {
        q2
    };
    q[1].atan2(q[0]).rem_euclid(PI) % PI
}

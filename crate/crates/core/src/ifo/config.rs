use serde::{Deserialize, Serialize};

use crate::constants::{omega_from_wavelength, MIN_FREQUENCY_HZ};
use crate::error::{Error, Result};
use crate::table::Tabulated;

/// Squeezing generated inside the signal-recycling cavity.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum InternalSqueezing {
    #[default]
    None,
    /// Radiation-pressure squeezing of a free test mass, derived from κ(Ω).
    Ponderomotive,
    /// User-supplied squeeze factor and angle (radians).
    Fixed { r: Tabulated, theta: Tabulated },
}

/// Parameter set of the simplified interferometer.
///
/// Serialized field names follow the symbols used throughout the crate
/// (`L`, `M`, `P`, `omega0`, `T_itm`, ...). `Theta`, the SRC loss channels and
/// the residual phase may be tabulated against frequency in Hz.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IfoConfig {
    /// Arm length [m].
    #[serde(rename = "L")]
    pub arm_length: f64,
    /// Test-mass mass [kg].
    #[serde(rename = "M")]
    pub mirror_mass: f64,
    /// Circulating power in each arm [W].
    #[serde(rename = "P")]
    pub arm_power: f64,
    /// Carrier angular frequency [rad/s].
    pub omega0: f64,
    #[serde(rename = "T_itm")]
    pub t_itm: f64,
    #[serde(rename = "T_src")]
    pub t_src: f64,
    pub eps_arm: f64,
    pub eps_src_channels: Vec<Tabulated>,
    pub eps_ext: f64,
    #[serde(default)]
    pub r_input: f64,
    #[serde(default)]
    pub theta_input: f64,
    #[serde(default)]
    pub internal_sqz: InternalSqueezing,
    /// Intra-cavity quadrature rotation [rad].
    #[serde(rename = "Theta", default)]
    pub rotation: Tabulated,
    /// Uncancelled round-trip phase [rad]; zero means perfect cancellation.
    #[serde(default)]
    pub residual_phase: Tabulated,
}

impl Default for IfoConfig {
    fn default() -> Self {
        Self::aligo_like()
    }
}

impl IfoConfig {
    /// Advanced-LIGO-like design point: 4 km arms, 40 kg masses, 800 kW arm
    /// power at 1064 nm, broadband signal recycling.
    pub fn aligo_like() -> Self {
        Self {
            arm_length: 4000.0,
            mirror_mass: 40.0,
            arm_power: 8e5,
            omega0: omega_from_wavelength(1064e-9),
            t_itm: 0.014,
            t_src: 0.14,
            eps_arm: 1e-4,
            eps_src_channels: vec![Tabulated::Constant(1e-3)],
            eps_ext: 0.1,
            r_input: 0.0,
            theta_input: 0.0,
            internal_sqz: InternalSqueezing::Ponderomotive,
            rotation: Tabulated::Constant(0.0),
            residual_phase: Tabulated::Constant(0.0),
        }
    }

    /// Same instrument with every loss set to zero.
    pub fn lossless(&self) -> Self {
        Self {
            eps_arm: 0.0,
            eps_src_channels: vec![Tabulated::Constant(0.0)],
            eps_ext: 0.0,
            ..self.clone()
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: Self = serde_json::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    /// Field-level validation independent of the analysis band.
    pub fn validate(&self) -> Result<()> {
        positive("L", self.arm_length)?;
        positive("M", self.mirror_mass)?;
        positive("P", self.arm_power)?;
        positive("omega0", self.omega0)?;
        open_unit("T_itm", self.t_itm)?;
        open_unit("T_src", self.t_src)?;
        loss("eps_arm", self.eps_arm)?;
        loss("eps_ext", self.eps_ext)?;
        if self.eps_src_channels.is_empty() {
            return Err(Error::config(
                "eps_src_channels",
                "at least one channel is required (use [0.0] for none)",
            ));
        }
        for (i, ch) in self.eps_src_channels.iter().enumerate() {
            let field = format!("eps_src_channels[{i}]");
            ch.validate(&field)?;
            let values: &[f64] = match ch {
                Tabulated::Constant(x) => std::slice::from_ref(x),
                Tabulated::Table { values, .. } => values,
            };
            if let Some(v) = values.iter().find(|v| !(**v >= 0.0 && **v < 1.0)) {
                return Err(Error::config(field, format!("loss {v} outside [0, 1)")));
            }
        }
        finite("r_input", self.r_input)?;
        finite("theta_input", self.theta_input)?;
        if self.r_input.abs() > crate::constants::MAX_SQUEEZE_FACTOR {
            return Err(Error::config("r_input", "|r_input| exceeds 20"));
        }
        self.rotation.validate("Theta")?;
        self.residual_phase.validate("residual_phase")?;
        if let InternalSqueezing::Fixed { r, theta } = &self.internal_sqz {
            r.validate("internal_sqz.r")?;
            theta.validate("internal_sqz.theta")?;
        }
        Ok(())
    }

    /// Every tabulated field must cover `band`.
    pub fn validate_band(&self, band: Band) -> Result<()> {
        let (lo, hi) = (band.f_min_hz(), band.f_max_hz());
        let mut tables: Vec<(String, &Tabulated)> = vec![
            ("Theta".into(), &self.rotation),
            ("residual_phase".into(), &self.residual_phase),
        ];
        for (i, ch) in self.eps_src_channels.iter().enumerate() {
            tables.push((format!("eps_src_channels[{i}]"), ch));
        }
        if let InternalSqueezing::Fixed { r, theta } = &self.internal_sqz {
            tables.push(("internal_sqz.r".into(), r));
            tables.push(("internal_sqz.theta".into(), theta));
        }
        for (field, t) in tables {
            if !t.covers(lo, hi) {
                return Err(Error::config(
                    field,
                    format!("table does not cover the analysis band {lo}..{hi} Hz"),
                ));
            }
        }
        Ok(())
    }
}

fn finite(field: &str, x: f64) -> Result<()> {
    if x.is_finite() {
        Ok(())
    } else {
        Err(Error::config(field, format!("{x} is not finite")))
    }
}

fn positive(field: &str, x: f64) -> Result<()> {
    if x.is_finite() && x > 0.0 {
        Ok(())
    } else {
        Err(Error::config(field, format!("must be > 0, got {x}")))
    }
}

fn open_unit(field: &str, x: f64) -> Result<()> {
    if x > 0.0 && x < 1.0 {
        Ok(())
    } else {
        Err(Error::config(field, format!("must lie in (0, 1), got {x}")))
    }
}

fn loss(field: &str, x: f64) -> Result<()> {
    if (0.0..1.0).contains(&x) {
        Ok(())
    } else {
        Err(Error::config(
            field,
            format!("loss must lie in [0, 1), got {x}"),
        ))
    }
}

/// Analysis band in Hz, `f_min ≥ 0.1 Hz`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Band {
    f_min_hz: f64,
    f_max_hz: f64,
}

impl Band {
    pub fn new(f_min_hz: f64, f_max_hz: f64) -> Result<Self> {
        if !(f_min_hz.is_finite() && f_min_hz >= MIN_FREQUENCY_HZ) {
            return Err(Error::config(
                "fmin",
                format!("must be ≥ {MIN_FREQUENCY_HZ} Hz, got {f_min_hz}"),
            ));
        }
        if !(f_max_hz.is_finite() && f_max_hz >= f_min_hz) {
            return Err(Error::config(
                "fmax",
                format!("must be ≥ fmin = {f_min_hz}, got {f_max_hz}"),
            ));
        }
        Ok(Self { f_min_hz, f_max_hz })
    }

    pub fn f_min_hz(&self) -> f64 {
        self.f_min_hz
    }

    pub fn f_max_hz(&self) -> f64 {
        self.f_max_hz
    }
}

impl Default for Band {
    fn default() -> Self {
        Self {
            f_min_hz: crate::constants::DEFAULT_F_MIN_HZ,
            f_max_hz: crate::constants::DEFAULT_F_MAX_HZ,
        }
    }
}

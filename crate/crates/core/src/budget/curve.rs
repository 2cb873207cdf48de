use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::fdt::loss_floor_fdt;
use crate::ifo::Interferometer;
use crate::limits::{self, Alpha, OpticalScale};

/// A named curve of the noise budget. The names are a stable interface:
/// they appear as CSV column headers and JSON column names.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Curve {
    Sql,
    /// Lossless optimal-readout spectrum of the configured instrument.
    Qcrb,
    LossLimitA1,
    LossLimitA4,
    FullOptimal,
    /// Fixed homodyne angle in radians.
    FullFixedZeta(f64),
    FdtFloor,
    TaylorQcrbInternal,
    TaylorLossInternal,
    TaylorQcrbNoInternal,
    TaylorLossNoInternal,
}

const SIMPLE: [(&str, Curve); 10] = [
    ("sql", Curve::Sql),
    ("qcrb", Curve::Qcrb),
    ("loss_limit_a1", Curve::LossLimitA1),
    ("loss_limit_a4", Curve::LossLimitA4),
    ("full_optimal", Curve::FullOptimal),
    ("fdt_floor", Curve::FdtFloor),
    ("taylor_qcrb_internal", Curve::TaylorQcrbInternal),
    ("taylor_loss_internal", Curve::TaylorLossInternal),
    ("taylor_qcrb_no_internal", Curve::TaylorQcrbNoInternal),
    ("taylor_loss_no_internal", Curve::TaylorLossNoInternal),
];

impl Curve {
    /// Every parameter-free curve.
    pub fn all_simple() -> impl Iterator<Item = Curve> {
        SIMPLE.iter().map(|(_, c)| *c)
    }

    /// Parses a comma-separated list, e.g. `sql,full_fixed_zeta(1.2),qcrb`.
    pub fn parse_list(text: &str) -> Result<Vec<Curve>> {
        let mut out = Vec::new();
        let mut depth = 0usize;
        let mut start = 0;
        for (i, ch) in text.char_indices() {
            match ch {
                '(' => depth += 1,
                ')' => depth = depth.saturating_sub(1),
                ',' if depth == 0 => {
                    out.push(text[start..i].parse()?);
                    start = i + 1;
                }
                _ => {}
            }
        }
        out.push(text[start..].parse()?);
        Ok(out)
    }

    /// Power spectral density of this curve at angular frequency Ω [1/Hz].
    pub fn eval(&self, ifo: &Interferometer, omega: f64) -> Result<f64> {
        let c = ifo.config();
        match *self {
            Curve::Sql => limits::sql(c.mirror_mass, c.arm_length, omega),
            Curve::Qcrb => ifo.qcrb_lossless(omega),
            Curve::LossLimitA1 => Ok(limits::loss_limit(ifo, omega, Alpha::InternalSqueezing)),
            Curve::LossLimitA4 => Ok(limits::loss_limit(ifo, omega, Alpha::NoInternalSqueezing)),
            Curve::FullOptimal => Ok(ifo.optimal_spectrum(omega)?.s_hh),
            Curve::FullFixedZeta(zeta) => ifo.homodyne_spectrum(omega, zeta),
            Curve::FdtFloor => loss_floor_fdt(ifo, omega),
            Curve::TaylorQcrbInternal => {
                let (squeeze, _) = ifo.internal_squeeze(omega)?;
                limits::taylor_qcrb_internal(
                    OpticalScale::of(ifo),
                    c.t_src,
                    ifo.rotation_angle(omega)?,
                    squeeze,
                    c.r_input,
                )
            }
            Curve::TaylorLossInternal => Ok(limits::taylor_loss_internal(ifo, omega)),
            Curve::TaylorQcrbNoInternal => limits::taylor_qcrb_no_internal(
                OpticalScale::of(ifo),
                c.t_src,
                ifo.rotation_angle(omega)?,
                c.r_input,
            ),
            Curve::TaylorLossNoInternal => Ok(limits::taylor_loss_no_internal(ifo, omega)),
        }
    }
}

impl fmt::Display for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Curve::FullFixedZeta(z) = self {
            return write!(f, "full_fixed_zeta({z})");
        }
        let name = SIMPLE
            .iter()
            .find(|(_, c)| c == self)
            .map(|(n, _)| *n)
            .unwrap_or("?");
        f.write_str(name)
    }
}

impl FromStr for Curve {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some((_, c)) = SIMPLE.iter().find(|(n, _)| *n == s) {
            return Ok(*c);
        }
        if let Some(arg) = s
            .strip_prefix("full_fixed_zeta(")
            .and_then(|r| r.strip_suffix(')'))
        {
            let zeta: f64 = arg
                .trim()
                .parse()
                .map_err(|_| Error::config("curves", format!("bad angle in `{s}`")))?;
            if !zeta.is_finite() {
                return Err(Error::config("curves", format!("bad angle in `{s}`")));
            }
            return Ok(Curve::FullFixedZeta(zeta));
        }
        Err(Error::config("curves", format!("unknown curve `{s}`")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for c in Curve::all_simple().chain([Curve::FullFixedZeta(0.25)]) {
            assert_eq!(c.to_string().parse::<Curve>().unwrap(), c);
        }
    }

    #[test]
    fn list_with_parameterised_curve() {
        let v = Curve::parse_list("sql, full_fixed_zeta(1.5),loss_limit_a4").unwrap();
        assert_eq!(
            v,
            vec![Curve::Sql, Curve::FullFixedZeta(1.5), Curve::LossLimitA4]
        );
        assert!(Curve::parse_list("sql,nope").is_err());
        assert!(Curve::parse_list("full_fixed_zeta(x)").is_err());
        assert!(Curve::parse_list("").is_err());
    }
}

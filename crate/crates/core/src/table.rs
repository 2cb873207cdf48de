//! Frequency-tabulated scalar parameters.
//!
//! A parameter is either a constant or a table of `(f_hz, value)` knots.
//! Tables are interpolated linearly in `log f`; evaluation outside the knot
//! range is an error.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Tabulated {
    Constant(f64),
    Table { f_hz: Vec<f64>, values: Vec<f64> },
}

impl Default for Tabulated {
    fn default() -> Self {
        Tabulated::Constant(0.0)
    }
}

impl From<f64> for Tabulated {
    fn from(x: f64) -> Self {
        Tabulated::Constant(x)
    }
}

impl Tabulated {
    pub fn table(f_hz: Vec<f64>, values: Vec<f64>) -> Self {
        Tabulated::Table { f_hz, values }
    }

    /// Structural checks: knots positive, finite and strictly increasing.
    pub fn validate(&self, field: &str) -> Result<()> {
        match self {
            Tabulated::Constant(x) if !x.is_finite() => {
                Err(Error::config(field, format!("value {x} is not finite")))
            }
            Tabulated::Constant(_) => Ok(()),
            Tabulated::Table { f_hz, values } => {
                if f_hz.is_empty() {
                    return Err(Error::config(field, "table has no knots"));
                }
                if f_hz.len() != values.len() {
                    return Err(Error::config(
                        field,
                        format!("{} frequencies but {} values", f_hz.len(), values.len()),
                    ));
                }
                if f_hz.iter().any(|f| !(f.is_finite() && *f > 0.0)) {
                    return Err(Error::config(field, "frequencies must be positive"));
                }
                if values.iter().any(|v| !v.is_finite()) {
                    return Err(Error::config(field, "values must be finite"));
                }
                if f_hz.windows(2).any(|w| w[1] <= w[0]) {
                    return Err(Error::config(
                        field,
                        "frequencies must be strictly increasing",
                    ));
                }
                Ok(())
            }
        }
    }

    pub fn is_constant(&self) -> bool {
        matches!(self, Tabulated::Constant(_))
    }

    /// True when `[lo, hi]` (Hz) lies inside the knot range.
    pub fn covers(&self, lo: f64, hi: f64) -> bool {
        match self {
            Tabulated::Constant(_) => true,
            Tabulated::Table { f_hz, .. } => {
                let (first, last) = (f_hz[0], f_hz[f_hz.len() - 1]);
                first <= lo && hi <= last
            }
        }
    }

    pub fn eval(&self, name: &str, f_hz: f64) -> Result<f64> {
        match self {
            Tabulated::Constant(x) => Ok(*x),
            Tabulated::Table {
                f_hz: knots,
                values,
            } => {
                let (lo, hi) = (knots[0], knots[knots.len() - 1]);
                if !(f_hz >= lo && f_hz <= hi) {
                    return Err(Error::TableCoverage {
                        name: name.to_string(),
                        f_hz,
                        lo,
                        hi,
                    });
                }
                if knots.len() == 1 {
                    return Ok(values[0]);
                }
                let i = knots
                    .partition_point(|&k| k <= f_hz)
                    .clamp(1, knots.len() - 1);
                let (x0, x1) = (knots[i - 1].ln(), knots[i].ln());
                let t = (f_hz.ln() - x0) / (x1 - x0);
                Ok(values[i - 1] + t * (values[i] - values[i - 1]))
            }
        }
    }

    /// Knot frequencies strictly inside `(lo, hi)`.
    pub fn knots_within(&self, lo: f64, hi: f64) -> Vec<f64> {
        match self {
            Tabulated::Constant(_) => Vec::new(),
            Tabulated::Table { f_hz, .. } => {
                f_hz.iter().copied().filter(|&f| f > lo && f < hi).collect()
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn constant_everywhere() {
        let t = Tabulated::Constant(3.0);
        assert_eq!(t.eval("x", 1e-3).unwrap(), 3.0);
        assert!(t.covers(0.1, 1e9));
    }

    #[test]
    fn log_linear_interpolation() {
        let t = Tabulated::table(vec![10.0, 1000.0], vec![0.0, 2.0]);
        assert_abs_diff_eq!(t.eval("x", 100.0).unwrap(), 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(t.eval("x", 10.0).unwrap(), 0.0, epsilon = 0.0);
        assert_abs_diff_eq!(t.eval("x", 1000.0).unwrap(), 2.0, epsilon = 1e-15);
    }

    #[test]
    fn extrapolation_rejected() {
        let t = Tabulated::table(vec![10.0, 1000.0], vec![0.0, 2.0]);
        assert!(matches!(
            t.eval("x", 9.99),
            Err(Error::TableCoverage { .. })
        ));
        assert!(t.eval("x", 1000.1).is_err());
        assert!(!t.covers(5.0, 100.0));
        assert!(t.covers(10.0, 1000.0));
    }

    #[test]
    fn malformed_tables() {
        assert!(Tabulated::table(vec![], vec![]).validate("x").is_err());
        assert!(Tabulated::table(vec![1.0, 2.0], vec![1.0])
            .validate("x")
            .is_err());
        assert!(Tabulated::table(vec![2.0, 1.0], vec![1.0, 1.0])
            .validate("x")
            .is_err());
        assert!(Tabulated::table(vec![0.0, 1.0], vec![1.0, 1.0])
            .validate("x")
            .is_err());
    }

    #[test]
    fn serde_forms() {
        let c: Tabulated = serde_json::from_str("0.25").unwrap();
        assert_eq!(c, Tabulated::Constant(0.25));
        let t: Tabulated =
            serde_json::from_str(r#"{"f_hz": [1.0, 2.0], "values": [3.0, 4.0]}"#).unwrap();
        assert_eq!(t, Tabulated::table(vec![1.0, 2.0], vec![3.0, 4.0]));
    }
}

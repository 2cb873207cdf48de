use crate::error::{Error, Result};

/// A strain-referred power spectral density `S_hh` [1/Hz] on an ascending
/// frequency grid [Hz].
#[derive(Clone, Debug, PartialEq)]
pub struct NoiseSpectrum {
    label: String,
    frequencies_hz: Vec<f64>,
    values: Vec<f64>,
}

impl NoiseSpectrum {
    pub fn new(
        label: impl Into<String>,
        frequencies_hz: Vec<f64>,
        values: Vec<f64>,
    ) -> Result<Self> {
        if frequencies_hz.len() != values.len() {
            return Err(Error::param(
                "values",
                format!(
                    "{} values for {} frequencies",
                    values.len(),
                    frequencies_hz.len()
                ),
            ));
        }
        if frequencies_hz.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::param("frequencies", "must be strictly increasing"));
        }
        // Zero is allowed: several closed forms vanish exactly.
        if let Some(bad) = values.iter().find(|v| !(v.is_finite() && **v >= 0.0)) {
            return Err(Error::param(
                "values",
                format!("PSD value {bad} is not ≥ 0"),
            ));
        }
        Ok(Self {
            label: label.into(),
            frequencies_hz,
            values,
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn frequencies_hz(&self) -> &[f64] {
        &self.frequencies_hz
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Amplitude spectral density `√S_hh` [1/√Hz].
    pub fn amplitude(&self) -> Vec<f64> {
        self.values.iter().map(|s| s.sqrt()).collect()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// `n` log-spaced points from `lo` to `hi` inclusive.
pub fn log_spaced(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => {
            let (a, b) = (lo.ln(), hi.ln());
            let step = (b - a) / (n - 1) as f64;
            (0..n)
                .map(|i| match i {
                    0 => lo,
                    i if i == n - 1 => hi,
                    i => (a + step * i as f64).exp(),
                })
                .collect()
        }
    }
}

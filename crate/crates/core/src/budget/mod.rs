//! Noise-budget sweeps, file output and the cross-validation report.

mod curve;
mod output;
mod validation;

use std::path::PathBuf;

use rayon::prelude::*;

pub use curve::Curve;
pub use output::{config_hash, render_csv, render_json, OutputFormat};
pub use validation::{first_order_split_deviation, run_validation, CheckResult, ValidationReport};

use crate::constants::{angular, DEFAULT_POINTS};
use crate::error::{Error, Result};
use crate::ifo::{log_spaced, Band, IfoConfig, Interferometer, NoiseSpectrum};

pub const MAX_POINTS: usize = 1_000_000;

/// Everything needed to produce one budget file.
#[derive(Clone, Debug, PartialEq)]
pub struct BudgetRequest {
    /// `None` uses the built-in design point.
    pub config: Option<PathBuf>,
    pub band: Band,
    pub points: usize,
    pub curves: Vec<Curve>,
    /// `None` writes to standard output.
    pub out: Option<PathBuf>,
    pub format: OutputFormat,
    /// Emit amplitude spectral density `√S_hh` instead of `S_hh`.
    pub asd: bool,
}

impl Default for BudgetRequest {
    fn default() -> Self {
        Self {
            config: None,
            band: Band::default(),
            points: DEFAULT_POINTS,
            curves: vec![Curve::Sql, Curve::LossLimitA4, Curve::FullOptimal],
            out: None,
            format: OutputFormat::Csv,
            asd: false,
        }
    }
}

impl BudgetRequest {
    pub fn validate(&self) -> Result<()> {
        if !(2..=MAX_POINTS).contains(&self.points) {
            return Err(Error::config(
                "points",
                format!("must lie in [2, {MAX_POINTS}], got {}", self.points),
            ));
        }
        if self.curves.is_empty() {
            return Err(Error::config("curves", "select at least one curve"));
        }
        Ok(())
    }

    pub fn load_config(&self) -> Result<IfoConfig> {
        match &self.config {
            None => Ok(IfoConfig::aligo_like()),
            Some(path) => IfoConfig::from_json(&std::fs::read_to_string(path)?),
        }
    }
}

/// Computed curves plus the configuration they came from.
#[derive(Clone, Debug)]
pub struct Budget {
    pub config: IfoConfig,
    pub spectra: Vec<NoiseSpectrum>,
}

/// Evaluates `curves` on `points` log-spaced frequencies across the band of
/// `ifo`. Frequencies are processed in parallel; results keep grid order.
pub fn compute_budget(
    ifo: &Interferometer,
    points: usize,
    curves: &[Curve],
) -> Result<Vec<NoiseSpectrum>> {
    let band = ifo.band();
    let freqs = log_spaced(band.f_min_hz(), band.f_max_hz(), points);
    let rows: Vec<Vec<f64>> = freqs
        .par_iter()
        .map(|&f| {
            let omega = angular(f);
            curves
                .iter()
                .map(|c| c.eval(ifo, omega))
                .collect::<Result<Vec<f64>>>()
                .map_err(|e| Error::AtFrequency {
                    f_hz: f,
                    source: Box::new(e),
                })
        })
        .collect::<Result<_>>()?;
    curves
        .iter()
        .enumerate()
        .map(|(j, c)| {
            let values = rows.iter().map(|row| row[j]).collect();
            NoiseSpectrum::new(c.to_string(), freqs.clone(), values)
        })
        .collect()
}

/// Validates the request, computes the curves and writes the output file
/// (or standard output). Returns the computed budget.
pub fn run_budget(req: &BudgetRequest) -> Result<Budget> {
    req.validate()?;
    let config = req.load_config()?;
    let ifo = Interferometer::new(config.clone(), req.band)?;
    let spectra = compute_budget(&ifo, req.points, &req.curves)?;
    let text = match req.format {
        OutputFormat::Csv => render_csv(&spectra, req.asd),
        OutputFormat::Json => render_json(&config, &spectra, req.asd),
    };
    match &req.out {
        Some(path) => std::fs::write(path, text)?,
        None => {
            use std::io::Write;
            std::io::stdout().lock().write_all(text.as_bytes())?;
        }
    }
    Ok(Budget { config, spectra })
}

use std::fmt::Write;

use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::constants::{HBAR, SPEED_OF_LIGHT};
use crate::error::{Error, Result};
use crate::ifo::{IfoConfig, NoiseSpectrum};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

impl std::str::FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            _ => Err(Error::config(
                "format",
                format!("expected csv or json, got `{s}`"),
            )),
        }
    }
}

/// Scientific notation with 12 significant digits.
fn sci(x: f64) -> String {
    format!("{x:.11e}")
}

fn quantity(asd: bool) -> &'static str {
    if asd {
        "asd"
    } else {
        "psd"
    }
}

fn emitted(s: &NoiseSpectrum, asd: bool) -> Vec<f64> {
    if asd {
        s.amplitude()
    } else {
        s.values().to_vec()
    }
}

/// Header `f_hz,<curve>...` followed by one row per frequency.
pub fn render_csv(spectra: &[NoiseSpectrum], asd: bool) -> String {
    let mut out = String::from("f_hz");
    for s in spectra {
        out.push(',');
        out.push_str(s.label());
    }
    out.push('\n');
    let Some(first) = spectra.first() else {
        return out;
    };
    let cols: Vec<Vec<f64>> = spectra.iter().map(|s| emitted(s, asd)).collect();
    for (i, f) in first.frequencies_hz().iter().enumerate() {
        out.push_str(&sci(*f));
        for col in &cols {
            let _ = write!(out, ",{}", sci(col[i]));
        }
        out.push('\n');
    }
    out
}

/// SHA-256 of the compact JSON serialisation of `cfg`.
pub fn config_hash(cfg: &IfoConfig) -> String {
    let text = serde_json::to_string(cfg).expect("config serializes");
    Sha256::digest(text.as_bytes())
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

/// Same numbers as the CSV encoding: each value is rounded through the
/// 12-significant-digit text form.
fn rounded(x: f64) -> Value {
    json!(sci(x).parse::<f64>().expect("formatted float parses"))
}

/// Array of columns with a metadata block.
pub fn render_json(cfg: &IfoConfig, spectra: &[NoiseSpectrum], asd: bool) -> String {
    let mut columns = Vec::with_capacity(spectra.len() + 1);
    if let Some(first) = spectra.first() {
        columns.push(json!({
            "name": "f_hz",
            "values": first.frequencies_hz().iter().map(|&f| rounded(f)).collect::<Vec<_>>(),
        }));
    }
    for s in spectra {
        columns.push(json!({
            "name": s.label(),
            "values": emitted(s, asd).into_iter().map(rounded).collect::<Vec<_>>(),
        }));
    }
    let doc = json!({
        "metadata": {
            "version": env!("CARGO_PKG_VERSION"),
            "config_sha256": config_hash(cfg),
            "quantity": quantity(asd),
            "units": if asd { "1/sqrt(Hz)" } else { "1/Hz" },
            "constants": { "hbar": HBAR, "c": SPEED_OF_LIGHT },
            "config": cfg,
        },
        "columns": columns,
    });
    let mut text = serde_json::to_string_pretty(&doc).expect("budget serializes");
    text.push('\n');
    text
}

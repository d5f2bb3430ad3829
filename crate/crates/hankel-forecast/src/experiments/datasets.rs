//! Loaders for the two study series and published benchmark figures for
//! the accidental-deaths forecasting exercise.

use std::path::{Path, PathBuf};

use super::csv_io;
use crate::error::{Error, Result};
use crate::series::TimeSeries;

/// The repository's data directory when running from a checkout.
pub fn default_data_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

/// A loaded study series split into its known part and held-out tail.
#[derive(Debug, Clone)]
pub struct StudySeries {
    pub known: TimeSeries,
    pub holdout: Vec<f64>,
}

fn load_split(
    path: &Path,
    expected_len: usize,
    holdout_len: usize,
    name: &str,
) -> Result<StudySeries> {
    let (series, _) = csv_io::ingest_csv(path)?;
    if series.len() != expected_len {
        return Err(Error::Parse {
            path: path.display().to_string(),
            row: series.len(),
            message: format!(
                "{name} series should have {expected_len} observations, found {}",
                series.len()
            ),
        });
    }
    let split = expected_len - holdout_len;
    Ok(StudySeries {
        known: TimeSeries::with_origin(series.values()[..split].to_vec(), name)?,
        holdout: series.values()[split..].to_vec(),
    })
}

/// Monthly accidental deaths in the USA: 72 training observations
/// (1973-1978) plus the 6 held-out months forecast in the classic
/// textbook exercise.
pub fn load_deaths(data_dir: impl AsRef<Path>) -> Result<StudySeries> {
    load_split(
        &data_dir.as_ref().join("deaths.csv"),
        78,
        6,
        "accidental deaths",
    )
}

/// Monthly Australian fortified wine sales: 120 observations, no holdout
/// (the study approximates rather than forecasts).
pub fn load_wine(data_dir: impl AsRef<Path>) -> Result<StudySeries> {
    load_split(
        &data_dir.as_ref().join("wine.csv"),
        120,
        0,
        "fortified wine",
    )
}

/// Published benchmark forecasts of the six held-out accidental-deaths
/// months, with their root-mean-square errors, for comparative reporting:
/// two seasonal ARIMA fits, Holt-Winters seasonal smoothing, and the ARAR
/// algorithm.
pub const DEATHS_BENCHMARKS: [(&str, [f64; 6], f64); 4] = [
    (
        "SARIMA I",
        [8441.0, 7704.0, 8549.0, 8885.0, 9843.0, 10279.0],
        582.626,
    ),
    (
        "SARIMA II",
        [8345.0, 7619.0, 8356.0, 8742.0, 9795.0, 10179.0],
        500.500,
    ),
    (
        "Holt-Winters seasonal",
        [8039.0, 7077.0, 7750.0, 7941.0, 8824.0, 9329.0],
        401.263,
    ),
    (
        "ARAR",
        [8168.0, 7196.0, 7982.0, 8284.0, 9144.0, 9465.0],
        253.202,
    ),
];

/// Root of the mean squared error over a forecast window.
pub fn sqrt_mse(forecast: &[f64], truth: &[f64]) -> f64 {
    assert_eq!(forecast.len(), truth.len());
    let sum: f64 = forecast
        .iter()
        .zip(truth)
        .map(|(a, b)| (a - b) * (a - b))
        .sum();
    (sum / forecast.len() as f64).sqrt()
}

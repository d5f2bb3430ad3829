use std::ops::Deref;

use crate::error::{Error, Result};

/// An observed real-valued time series.
///
/// The vector of observations is immutable once constructed. Indices in
/// documentation and error messages are 1-based (entry `i` of a series of
/// length `n` means `values[i-1]`).
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    values: Vec<f64>,
    origin: Option<String>,
}

impl TimeSeries {
    /// Builds a series from raw values. Requires at least two finite entries.
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::InvalidSeries(format!(
                "need at least 2 observations, got {}",
                values.len()
            )));
        }
        if let Some(pos) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidSeries(format!(
                "non-finite value {} at entry {}",
                values[pos],
                pos + 1
            )));
        }
        Ok(Self {
            values,
            origin: None,
        })
    }

    /// Like [`TimeSeries::new`] with a free-text origin label attached
    /// (file name, generator description). Metadata only.
    pub fn with_origin(values: Vec<f64>, origin: impl Into<String>) -> Result<Self> {
        let mut s = Self::new(values)?;
        s.origin = Some(origin.into());
        Ok(s)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn origin(&self) -> Option<&str> {
        self.origin.as_deref()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false // construction requires length >= 2
    }

    /// First `n` entries, the known part of a forecasting problem.
    pub fn known_part(&self, n: usize) -> Result<&[f64]> {
        if n > self.values.len() {
            return Err(Error::Shape(format!(
                "known length {} exceeds series length {}",
                n,
                self.values.len()
            )));
        }
        Ok(&self.values[..n])
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }
}

impl Deref for TimeSeries {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.values
    }
}

impl AsRef<[f64]> for TimeSeries {
    fn as_ref(&self) -> &[f64] {
        &self.values
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_short_series() {
        assert!(TimeSeries::new(vec![1.0]).is_err());
        assert!(TimeSeries::new(vec![]).is_err());
    }

    #[test]
    fn rejects_non_finite() {
        assert!(TimeSeries::new(vec![1.0, f64::NAN]).is_err());
        assert!(TimeSeries::new(vec![1.0, f64::INFINITY, 3.0]).is_err());
    }

    #[test]
    fn keeps_origin_label() {
        let s = TimeSeries::with_origin(vec![1.0, 2.0], "unit test").unwrap();
        assert_eq!(s.origin(), Some("unit test"));
        assert_eq!(s.values(), &[1.0, 2.0]);
    }
}

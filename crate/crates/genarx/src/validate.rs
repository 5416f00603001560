//! Playback validation: drive an estimated model with the measured input
//! and score the prediction against the measured output.

use std::io::Write as _;
use std::path::Path;

use serde::Serialize;

use crate::discretize::{self, DiscretizationMethod, OutputKind};
use crate::error::{Error, Result};
use crate::model::GeneratorParams;
use crate::simulate::{simulate_arx, TimeSeries};

/// Goodness-of-fit summary of a playback run.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct FitReport {
    /// Root-mean-square prediction error, output units.
    pub rmse: f64,
    /// Normalized fit in percent: `100 (1 - |y - yhat| / |y - mean(y)|)`.
    /// 100 is a perfect match; 0 is no better than the mean.
    pub nrmse_fit: f64,
    /// Largest absolute prediction error, output units.
    pub max_abs_err: f64,
}

/// Discretizes the parameters at the input's sampling interval (speed
/// output) and simulates the response to the measured input.
pub fn playback(
    p: &GeneratorParams,
    method: DiscretizationMethod,
    u: &TimeSeries,
) -> Result<TimeSeries> {
    let model = discretize::discretize(p, method, OutputKind::Omega, u.h())?;
    simulate_arx(&model, u)
}

/// Compares a measured series against a prediction on the same grid.
pub fn fit_metrics(measured: &TimeSeries, predicted: &TimeSeries) -> Result<FitReport> {
    if measured.len() != predicted.len() {
        return Err(Error::LengthMismatch {
            left: measured.len(),
            right: predicted.len(),
        });
    }
    if !measured.same_sampling(predicted.h()) {
        return Err(Error::SamplingMismatch {
            left: measured.h(),
            right: predicted.h(),
        });
    }
    let n = measured.len() as f64;
    let mean = measured.values().iter().sum::<f64>() / n;
    let mut err_sq = 0.0f64;
    let mut spread_sq = 0.0f64;
    let mut max_abs_err = 0.0f64;
    for (y, yhat) in measured.values().iter().zip(predicted.values()) {
        let e = y - yhat;
        err_sq += e * e;
        spread_sq += (y - mean) * (y - mean);
        max_abs_err = max_abs_err.max(e.abs());
    }
    if spread_sq == 0.0 {
        return Err(Error::DegenerateCoefficients {
            reason: "measured series is constant; normalized fit undefined".into(),
        });
    }
    Ok(FitReport {
        rmse: (err_sq / n).sqrt(),
        nrmse_fit: 100.0 * (1.0 - (err_sq.sqrt() / spread_sq.sqrt())),
        max_abs_err,
    })
}

/// Writes the `t,measured,predicted` overlay CSV for external plotting.
pub fn write_overlay_csv(
    path: &Path,
    measured: &TimeSeries,
    predicted: &TimeSeries,
    meta_lines: &[String],
) -> Result<()> {
    if measured.len() != predicted.len() {
        return Err(Error::LengthMismatch {
            left: measured.len(),
            right: predicted.len(),
        });
    }
    let mut file = std::io::BufWriter::new(std::fs::File::create(path)?);
    for line in meta_lines {
        writeln!(file, "# {line}")?;
    }
    writeln!(file, "t,measured,predicted")?;
    for (k, (m, p)) in measured.values().iter().zip(predicted.values()).enumerate() {
        writeln!(file, "{},{},{}", measured.time_at(k), m, p)?;
    }
    Ok(())
}

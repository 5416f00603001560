//! PMU-style CSV ingestion: the front end of the real-data pipeline.
//!
//! Recordings carry absolute frequency (Hz) and power (MW) channels with
//! timestamps; estimation wants uniformly sampled per-unit deviation
//! signals around an event. The pipeline is
//!
//! 1. strict CSV parsing with a configurable column map,
//! 2. sampling-interval inference (median of successive differences,
//!    1% jitter tolerance so 30/60 Hz streams pass),
//! 3. per-unit conversion against the nominal frequency and power base,
//! 4. detrending by the pre-event mean (the deviation quantities are
//!    defined against the pre-event operating point, so the frequency
//!    deviation in p.u. is `(f - f_pre)/f_nom` with `f_pre` the pre-event
//!    mean; the applied offsets are recorded in the output metadata),
//! 5. event-window selection on the input-power channel.
//!
//! Everything downstream is deterministic: the same file and
//! configuration produce a bit-identical prepared dataset.

use std::io::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::simulate::TimeSeries;

/// Sidecar metadata describing a recording.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PmuMeta {
    /// Nominal system frequency, Hz.
    pub f_nom: f64,
    /// Power base, MVA.
    pub s_base: f64,
    /// When true the file already holds per-unit values and the base
    /// conversion is skipped.
    #[serde(default)]
    pub prescaled: bool,
    /// Free-form origin tag.
    #[serde(default)]
    pub source: String,
}

impl PmuMeta {
    pub fn from_json_file(path: &Path) -> Result<Self> {
        Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?)
    }
}

/// Column-name map for PMU CSV files.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CsvSchema {
    pub time: String,
    pub freq: String,
    pub power: String,
}

impl Default for CsvSchema {
    fn default() -> Self {
        Self {
            time: "t".into(),
            freq: "freq_hz".into(),
            power: "p_mw".into(),
        }
    }
}

/// A parsed recording: strictly increasing timestamps with frequency and
/// power channels of equal length.
#[derive(Debug, Clone, PartialEq)]
pub struct PmuRecording {
    timestamps: Vec<f64>,
    freq: Vec<f64>,
    power: Vec<f64>,
    meta: PmuMeta,
}

impl PmuRecording {
    pub fn new(timestamps: Vec<f64>, freq: Vec<f64>, power: Vec<f64>, meta: PmuMeta) -> Result<Self> {
        if timestamps.len() != freq.len() || timestamps.len() != power.len() {
            return Err(Error::LengthMismatch {
                left: timestamps.len(),
                right: freq.len().max(power.len()),
            });
        }
        if timestamps.is_empty() {
            return Err(Error::EmptySeries);
        }
        for (row, window) in timestamps.windows(2).enumerate() {
            if !(window[1] > window[0]) {
                return Err(Error::NonMonotoneTime { row: row + 2 });
            }
        }
        Ok(Self {
            timestamps,
            freq,
            power,
            meta,
        })
    }

    pub fn len(&self) -> usize {
        self.timestamps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.timestamps.is_empty()
    }

    pub fn timestamps(&self) -> &[f64] {
        &self.timestamps
    }

    pub fn freq(&self) -> &[f64] {
        &self.freq
    }

    pub fn power(&self) -> &[f64] {
        &self.power
    }

    pub fn meta(&self) -> &PmuMeta {
        &self.meta
    }

    /// Writes the recording back out with round-trip decimal formatting;
    /// `read_pmu_csv` of the result is value-identical.
    pub fn write_csv(&self, path: &Path, schema: &CsvSchema) -> Result<()> {
        let mut file = std::io::BufWriter::new(std::fs::File::create(path)?);
        writeln!(file, "{},{},{}", schema.time, schema.freq, schema.power)?;
        for i in 0..self.len() {
            writeln!(
                file,
                "{},{},{}",
                self.timestamps[i], self.freq[i], self.power[i]
            )?;
        }
        Ok(())
    }
}

/// Reads a PMU CSV with strict numeric validation. Rows with missing or
/// non-finite fields are rejected with their (1-based) data-row number.
pub fn read_pmu_csv(path: &Path, schema: &CsvSchema, meta: PmuMeta) -> Result<PmuRecording> {
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_path(path)?;
    let headers = reader.headers()?.clone();
    let col = |name: &str| -> Result<usize> {
        headers
            .iter()
            .position(|c| c == name)
            .ok_or_else(|| Error::MissingColumn(name.into()))
    };
    let (tc, fc, pc) = (
        col(&schema.time)?,
        col(&schema.freq)?,
        col(&schema.power)?,
    );
    let mut timestamps = Vec::new();
    let mut freq = Vec::new();
    let mut power = Vec::new();
    for (idx, record) in reader.records().enumerate() {
        let row = idx + 1;
        let record = record?;
        let parse = |column: usize, name: &str| -> Result<f64> {
            let raw = record.get(column).ok_or_else(|| Error::MalformedRow {
                row,
                reason: format!("missing `{name}` field"),
            })?;
            let v: f64 = raw.trim().parse().map_err(|_| Error::MalformedRow {
                row,
                reason: format!("`{raw}` in column `{name}` is not a number"),
            })?;
            if !v.is_finite() {
                return Err(Error::MalformedRow {
                    row,
                    reason: format!("non-finite value in column `{name}`"),
                });
            }
            Ok(v)
        };
        timestamps.push(parse(tc, &schema.time)?);
        freq.push(parse(fc, &schema.freq)?);
        power.push(parse(pc, &schema.power)?);
    }
    PmuRecording::new(timestamps, freq, power, meta)
}

/// Infers the sampling interval as the median of successive timestamp
/// differences; any difference deviating from the median by more than 1%
/// relative is an error.
pub fn infer_sampling(timestamps: &[f64]) -> Result<f64> {
    if timestamps.len() < 3 {
        return Err(Error::TooFewSamples {
            context: "sampling inference",
            needed: 3,
            got: timestamps.len(),
        });
    }
    let mut diffs: Vec<f64> = timestamps.windows(2).map(|w| w[1] - w[0]).collect();
    if let Some(index) = diffs.iter().position(|d| !(*d > 0.0)) {
        return Err(Error::NonMonotoneTime { row: index + 2 });
    }
    let mut sorted = diffs.clone();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let median = sorted[sorted.len() / 2];
    for (index, d) in diffs.drain(..).enumerate() {
        if (d - median).abs() > 0.01 * median {
            return Err(Error::IrregularSampling {
                index,
                got: d,
                median,
            });
        }
    }
    Ok(median)
}

/// Converts a recording to per-unit series `(freq_pu, power_pu)` on its
/// inferred sampling grid. Skipped when the metadata marks the file as
/// already per-unit.
pub fn to_per_unit(rec: &PmuRecording) -> Result<(TimeSeries, TimeSeries)> {
    let meta = rec.meta();
    if !(meta.f_nom > 0.0) {
        return Err(Error::NonPositiveParameter {
            name: "f_nom",
            value: meta.f_nom,
        });
    }
    if !(meta.s_base > 0.0) {
        return Err(Error::NonPositiveParameter {
            name: "s_base",
            value: meta.s_base,
        });
    }
    let h = infer_sampling(rec.timestamps())?;
    let t0 = rec.timestamps()[0];
    let (freq, power): (Vec<f64>, Vec<f64>) = if meta.prescaled {
        (rec.freq().to_vec(), rec.power().to_vec())
    } else {
        (
            rec.freq().iter().map(|f| f / meta.f_nom).collect(),
            rec.power().iter().map(|p| p / meta.s_base).collect(),
        )
    };
    Ok((
        TimeSeries::new(h, t0, freq, "p.u.")?,
        TimeSeries::new(h, t0, power, "p.u.")?,
    ))
}

/// Subtracts the mean of the first `pre_event_samples` values, turning an
/// absolute channel into a deviation around the pre-event operating
/// point. Returns the removed offset alongside the shifted series.
pub fn detrend(series: &TimeSeries, pre_event_samples: usize) -> Result<(TimeSeries, f64)> {
    if pre_event_samples < 10 {
        return Err(Error::WindowTooShort {
            needed: 10,
            got: pre_event_samples,
        });
    }
    if series.len() < pre_event_samples {
        return Err(Error::WindowTooShort {
            needed: pre_event_samples,
            got: series.len(),
        });
    }
    let mean = series.values()[..pre_event_samples].iter().sum::<f64>()
        / pre_event_samples as f64;
    let shifted = TimeSeries::new(
        series.h(),
        series.t0(),
        series.values().iter().map(|v| v - mean).collect(),
        series.unit(),
    )?;
    Ok((shifted, mean))
}

/// Finds the event window: the first sample whose first difference
/// exceeds `threshold` in magnitude anchors it (ties broken by taking the
/// earliest), then `pre`/`post` seconds are added around the anchor and
/// clipped to the series bounds. Returns `(start, end)` sample indices
/// with `end` exclusive.
pub fn select_event_window(
    u: &TimeSeries,
    threshold: f64,
    pre: f64,
    post: f64,
) -> Result<(usize, usize)> {
    if !(threshold > 0.0) {
        return Err(Error::Config(format!(
            "event threshold must be positive, got {threshold}"
        )));
    }
    let values = u.values();
    let anchor = values
        .windows(2)
        .position(|w| (w[1] - w[0]).abs() > threshold)
        .map(|i| i + 1)
        .ok_or(Error::NoEventFound { threshold })?;
    let pre_samples = (pre / u.h()).round() as usize;
    let post_samples = (post / u.h()).round() as usize;
    let start = anchor.saturating_sub(pre_samples);
    let end = (anchor + post_samples + 1).min(values.len());
    Ok((start, end))
}

/// Ingestion configuration with the defaults used by the CLI.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IngestConfig {
    /// Samples whose mean defines the pre-event operating point.
    pub pre_event_samples: usize,
    /// Event-detection threshold on the power first difference, p.u.
    pub threshold: f64,
    /// Window extent before the anchor, seconds.
    pub pre_seconds: f64,
    /// Window extent after the anchor, seconds.
    pub post_seconds: f64,
}

impl Default for IngestConfig {
    fn default() -> Self {
        Self {
            pre_event_samples: 30,
            threshold: 0.02,
            pre_seconds: 2.0,
            post_seconds: 30.0,
        }
    }
}

/// Normalization applied while preparing a dataset; recorded prominently
/// because the deviation definition (pre-event means, bases) is a
/// modelling choice.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Normalization {
    pub f_nom: f64,
    pub s_base: f64,
    pub prescaled: bool,
    /// Pre-event mean removed from the per-unit frequency channel.
    pub freq_offset_pu: f64,
    /// Pre-event mean removed from the per-unit power channel.
    pub power_offset_pu: f64,
}

/// Uniform per-unit deviation signals around a detected event, ready for
/// estimation.
#[derive(Debug, Clone)]
pub struct PreparedDataset {
    pub u: TimeSeries,
    pub y: TimeSeries,
    pub h: f64,
    /// `[start, end)` sample indices of the event window in the source
    /// recording.
    pub window: (usize, usize),
    pub normalization: Normalization,
}

/// Runs the full ingestion pipeline on a recording.
pub fn prepare(rec: &PmuRecording, cfg: &IngestConfig) -> Result<PreparedDataset> {
    let (freq_pu, power_pu) = to_per_unit(rec)?;
    let (freq_dev, freq_offset) = detrend(&freq_pu, cfg.pre_event_samples)?;
    let (power_dev, power_offset) = detrend(&power_pu, cfg.pre_event_samples)?;
    let window = select_event_window(&power_dev, cfg.threshold, cfg.pre_seconds, cfg.post_seconds)?;
    let u = power_dev.slice(window.0, window.1)?;
    let y = freq_dev.slice(window.0, window.1)?;
    Ok(PreparedDataset {
        h: u.h(),
        u,
        y,
        window,
        normalization: Normalization {
            f_nom: rec.meta().f_nom,
            s_base: rec.meta().s_base,
            prescaled: rec.meta().prescaled,
            freq_offset_pu: freq_offset,
            power_offset_pu: power_offset,
        },
    })
}

//! Benchmark data generation and difference-equation simulation.
//!
//! Reproduces the role of the reference Simulink benchmark: a step in
//! electrical power, optional zero-mean Gaussian noise on the input
//! channel, and exact simulation of any [`ArxModel`] by its recursion
//!
//! ```text
//! y(k) = -a_{n-1} y(k-1) - ... - a_0 y(k-n)
//!        + b_m u(k-(n-m)) + ... + b_0 u(k-n)
//! ```
//!
//! with zero pre-history (all delta quantities start at the operating
//! point). For the speed output the closed-form continuous step response
//! is also provided; ZOH models must reproduce it exactly at the sample
//! instants, which the tests and the acceptance suite rely on as an
//! independent oracle.
//!
//! Noise is generated from a ChaCha8 stream through the Box-Muller
//! transform, so a scenario is fully reproducible from its seed; the
//! generator name is recorded in exported metadata.

use std::io::Write as _;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::discretize::{self, ArxModel, DiscretizationMethod, OutputKind};
use crate::error::{Error, Result};
use crate::model::GeneratorParams;
use crate::pmu_io;

/// Uniformly sampled signal.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TimeSeries {
    h: f64,
    t0: f64,
    values: Vec<f64>,
    unit: String,
}

impl TimeSeries {
    /// Validates and constructs a series: `h > 0`, at least one sample,
    /// all samples finite.
    pub fn new(h: f64, t0: f64, values: Vec<f64>, unit: impl Into<String>) -> Result<Self> {
        if !(h > 0.0) || !h.is_finite() {
            return Err(Error::NonPositiveParameter { name: "h", value: h });
        }
        if values.is_empty() {
            return Err(Error::EmptySeries);
        }
        if let Some(index) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFiniteSample { index });
        }
        Ok(Self {
            h,
            t0,
            values,
            unit: unit.into(),
        })
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn t0(&self) -> f64 {
        self.t0
    }

    pub fn unit(&self) -> &str {
        &self.unit
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Time of sample `i`.
    pub fn time_at(&self, i: usize) -> f64 {
        self.t0 + i as f64 * self.h
    }

    /// Contiguous slice `[lo, hi)` as a new series.
    pub fn slice(&self, lo: usize, hi: usize) -> Result<Self> {
        if lo >= hi || hi > self.values.len() {
            return Err(Error::Config(format!(
                "invalid slice [{lo}, {hi}) of series with {} samples",
                self.values.len()
            )));
        }
        TimeSeries::new(
            self.h,
            self.time_at(lo),
            self.values[lo..hi].to_vec(),
            self.unit.clone(),
        )
    }

    /// Same sampling grid within a relative tolerance of 1e-9 on `h`
    /// (decimal round-tripping and median-based inference keep `h` only
    /// approximately bit-stable).
    pub fn same_sampling(&self, other_h: f64) -> bool {
        (self.h - other_h).abs() <= 1e-9 * self.h.max(other_h)
    }
}

/// Benchmark scenario description.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioConfig {
    /// Step height, p.u.
    pub step_amplitude: f64,
    /// Step onset, seconds.
    pub step_time: f64,
    /// Total duration, seconds.
    pub duration: f64,
    /// Variance of the zero-mean Gaussian noise added to the input
    /// channel, p.u.^2.
    pub noise_variance: f64,
    /// Seed of the ChaCha8 noise stream.
    pub rng_seed: u64,
    /// Variance of optional measurement noise on the output channel,
    /// p.u.^2. Off (0) by default; the reference scenarios add noise to
    /// the input only.
    #[serde(default)]
    pub output_noise_variance: f64,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        Self {
            step_amplitude: 0.2,
            step_time: 1.0,
            duration: 15.0,
            noise_variance: 1e-4,
            rng_seed: 0,
            output_noise_variance: 0.0,
        }
    }
}

impl ScenarioConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.step_time >= 0.0) {
            return Err(Error::Config(format!(
                "step_time must be >= 0, got {}",
                self.step_time
            )));
        }
        if !(self.duration > self.step_time) {
            return Err(Error::Config(format!(
                "duration {} must exceed step_time {}",
                self.duration, self.step_time
            )));
        }
        if !(self.noise_variance >= 0.0) || !(self.output_noise_variance >= 0.0) {
            return Err(Error::Config("noise variance must be >= 0".into()));
        }
        Ok(())
    }
}

/// Step input: 0 before `step_time`, `step_amplitude` from `step_time`
/// on. Length is `floor(duration/h) + 1` samples starting at t = 0.
pub fn step_signal(cfg: &ScenarioConfig, h: f64) -> Result<TimeSeries> {
    cfg.validate()?;
    if !(h > 0.0) || !h.is_finite() {
        return Err(Error::NonPositiveParameter { name: "h", value: h });
    }
    // Guard against h not dividing duration exactly in binary.
    let len = (cfg.duration / h + 1e-9).floor() as usize + 1;
    let values = (0..len)
        .map(|k| {
            let t = k as f64 * h;
            if t + 1e-9 * h >= cfg.step_time {
                cfg.step_amplitude
            } else {
                0.0
            }
        })
        .collect();
    TimeSeries::new(h, 0.0, values, "p.u.")
}

/// Adds zero-mean Gaussian noise of the given variance, deterministically
/// for a fixed seed (ChaCha8 + Box-Muller).
pub fn add_gaussian_noise(s: &TimeSeries, variance: f64, seed: u64) -> Result<TimeSeries> {
    if !(variance >= 0.0) || !variance.is_finite() {
        return Err(Error::Config(format!(
            "noise variance must be >= 0, got {variance}"
        )));
    }
    if variance == 0.0 {
        return Ok(s.clone());
    }
    let sigma = variance.sqrt();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let values = s
        .values()
        .iter()
        .map(|&v| v + sigma * standard_normal(&mut rng))
        .collect();
    TimeSeries::new(s.h(), s.t0(), values, s.unit())
}

/// One standard-normal draw via the Box-Muller transform.
fn standard_normal(rng: &mut ChaCha8Rng) -> f64 {
    // u1 in (0, 1] so the log argument never vanishes.
    let u1: f64 = 1.0 - rng.gen::<f64>();
    let u2: f64 = rng.gen();
    (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}

/// Runs the ARX recursion over an input series with zero pre-history.
/// Output length equals input length.
pub fn simulate_arx(m: &ArxModel, u: &TimeSeries) -> Result<TimeSeries> {
    if !u.same_sampling(m.h) {
        return Err(Error::SamplingMismatch {
            left: m.h,
            right: u.h(),
        });
    }
    let n = m.denominator_order();
    let mo = m.numerator_order();
    let input = u.values();
    let mut y = vec![0.0f64; input.len()];
    for k in 0..input.len() {
        let mut acc = 0.0;
        for (i, &a) in m.den.iter().enumerate() {
            let lag = i + 1;
            if k >= lag {
                acc -= a * y[k - lag];
            }
        }
        for (j, &b) in m.num.iter().enumerate() {
            let lag = (n - mo) + j;
            if k >= lag {
                acc += b * input[k - lag];
            }
        }
        y[k] = acc;
    }
    let unit = match m.output {
        OutputKind::Omega => "p.u.",
        OutputKind::Delta => "p.u.-integral",
    };
    TimeSeries::new(u.h(), u.t0(), y, unit)
}

/// Closed-form continuous step response of the speed output at time `t`
/// after the step:
///
/// ```text
/// y(t) = A R [ 1 - exp(-t/2T) (cos(omega t) + k sin(omega t)) ]
/// ```
///
/// Derived by partial fractions of the transfer function over `s`; the
/// tests verify it against the ZOH recursion, which must match it exactly
/// at the sample instants.
pub fn step_response_omega_at(p: &GeneratorParams, amplitude: f64, t: f64) -> f64 {
    if t < 0.0 {
        return 0.0;
    }
    let c = p.derived_constants();
    let decay = (-t / (2.0 * p.governor_tc())).exp();
    amplitude * p.droop() * (1.0 - decay * ((c.omega * t).cos() + c.k * (c.omega * t).sin()))
}

/// Samples the closed-form speed step response at `t = 0, h, ..., (n-1)h`.
pub fn analytic_step_response_omega(
    p: &GeneratorParams,
    amplitude: f64,
    h: f64,
    n: usize,
) -> Result<TimeSeries> {
    if !(h > 0.0) || !h.is_finite() {
        return Err(Error::NonPositiveParameter { name: "h", value: h });
    }
    if n == 0 {
        return Err(Error::EmptySeries);
    }
    let values = (0..n)
        .map(|k| step_response_omega_at(p, amplitude, k as f64 * h))
        .collect();
    TimeSeries::new(h, 0.0, values, "p.u.")
}

/// A generated benchmark dataset: driving input, simulated output and the
/// model that produced it.
#[derive(Debug, Clone)]
pub struct Benchmark {
    pub u: TimeSeries,
    pub y: TimeSeries,
    pub model: ArxModel,
}

/// Generates a benchmark dataset with the given data-generation method:
/// step input, input-channel noise, simulation through the discretized
/// model and (optionally) output measurement noise.
pub fn benchmark_dataset(
    p: &GeneratorParams,
    method: DiscretizationMethod,
    output: OutputKind,
    h: f64,
    cfg: &ScenarioConfig,
) -> Result<Benchmark> {
    cfg.validate()?;
    let model = discretize::discretize(p, method, output, h)?;
    let clean = step_signal(cfg, h)?;
    let u = add_gaussian_noise(&clean, cfg.noise_variance, cfg.rng_seed)?;
    let mut y = simulate_arx(&model, &u)?;
    if cfg.output_noise_variance > 0.0 {
        // Distinct stream for the output channel.
        y = add_gaussian_noise(
            &y,
            cfg.output_noise_variance,
            cfg.rng_seed ^ 0x9e37_79b9_7f4a_7c15,
        )?;
    }
    Ok(Benchmark { u, y, model })
}

/// Writes a `t,u,y` dataset CSV. Metadata lines are emitted first as `#`
/// comments; values use the shortest decimal form that round-trips f64.
pub fn write_dataset_csv(
    path: &Path,
    u: &TimeSeries,
    y: &TimeSeries,
    meta_lines: &[String],
) -> Result<()> {
    if u.len() != y.len() {
        return Err(Error::LengthMismatch {
            left: u.len(),
            right: y.len(),
        });
    }
    let mut file = std::io::BufWriter::new(std::fs::File::create(path)?);
    for line in meta_lines {
        writeln!(file, "# {line}")?;
    }
    writeln!(file, "t,u,y")?;
    for (k, (uv, yv)) in u.values().iter().zip(y.values()).enumerate() {
        writeln!(file, "{},{},{}", u.time_at(k), uv, yv)?;
    }
    Ok(())
}

/// Reads a `t,u,y` dataset CSV (skipping `#` comment lines) and infers
/// the sampling interval from the time column.
pub fn read_dataset_csv(path: &Path) -> Result<(TimeSeries, TimeSeries)> {
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
    let (tc, uc, yc) = (col("t")?, col("u")?, col("y")?);
    let mut t = Vec::new();
    let mut u = Vec::new();
    let mut y = Vec::new();
    for (row, record) in reader.records().enumerate() {
        let record = record?;
        let parse = |idx: usize| -> Result<f64> {
            let raw = record.get(idx).ok_or(Error::MalformedRow {
                row: row + 1,
                reason: "missing field".into(),
            })?;
            let v: f64 = raw.parse().map_err(|_| Error::MalformedRow {
                row: row + 1,
                reason: format!("`{raw}` is not a number"),
            })?;
            if !v.is_finite() {
                return Err(Error::MalformedRow {
                    row: row + 1,
                    reason: "non-finite value".into(),
                });
            }
            Ok(v)
        };
        t.push(parse(tc)?);
        u.push(parse(uc)?);
        y.push(parse(yc)?);
    }
    let h = pmu_io::infer_sampling(&t)?;
    let t0 = t.first().copied().unwrap_or(0.0);
    Ok((
        TimeSeries::new(h, t0, u, "p.u.")?,
        TimeSeries::new(h, t0, y, "p.u.")?,
    ))
}

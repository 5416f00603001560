//! Identification of synchronous-generator electromechanical parameters
//! (inertia H, droop R, governor time constant T) from input/output time
//! series.
//!
//! The continuous generator model is converted to a discrete ARX form by
//! zero-order hold or Tustin's approximation, the ARX coefficients are
//! estimated by linear least squares, and the coefficient algebra is
//! inverted back to the physical parameters. A benchmark simulator, PMU
//! CSV ingestion and playback validation round out the pipeline.
//!
//! # Module map
//!
//! - [`model`] — continuous-time model: checked parameters, modal
//!   constants, poles, DC gain.
//! - [`discretize`] — exact ARX coefficient sets for ZOH/Tustin and both
//!   output choices (speed and rotor angle).
//! - [`simulate`] — step scenarios, seeded Gaussian noise,
//!   difference-equation simulation, closed-form step response, dataset
//!   CSV I/O.
//! - [`regression`] — the overdetermined ARX regression and its SVD
//!   least-squares solution.
//! - [`recover`] — inverse maps from estimated coefficients to (H, R, T)
//!   for all four method/output combinations.
//! - [`pmu_io`] — PMU-style CSV ingestion: sampling inference, per-unit
//!   conversion, detrending, event-window selection.
//! - [`validate`] — playback of an estimated model against measured data
//!   and goodness-of-fit metrics.
//! - [`cli`] — the `genarx` binary: `simulate`, `estimate`, `validate`,
//!   `roundtrip`, `ingest`.
//!
//! # Examples directory
//!
//! Each major capability has a runnable example:
//!
//! ```text
//! cargo run -p genarx --example step_response      # benchmark vs closed form
//! cargo run -p genarx --example discretize_methods # the four coefficient sets
//! cargo run -p genarx --example estimate_benchmark # noisy estimation end to end
//! cargo run -p genarx --example roundtrip_grid     # discretize -> recover sweep
//! cargo run -p genarx --example method_mismatch    # Tustin structure on ZOH data
//! cargo run -p genarx --example pmu_pipeline       # ingest -> estimate -> playback
//! ```
//!
//! # Quick start
//!
//! ```
//! use genarx::{
//!     discretize::{self, DiscretizationMethod, OutputKind},
//!     model::GeneratorParams,
//!     recover,
//! };
//!
//! let p = GeneratorParams::new(2.5, 0.05, 0.5).unwrap();
//! let arx = discretize::tustin_omega(&p, 0.1).unwrap();
//! let back = recover::from_model(&arx).unwrap();
//! assert!((back.inertia() - 2.5).abs() < 1e-9);
//! ```

pub mod cli;
pub mod discretize;
pub mod error;
pub mod model;
pub mod pmu_io;
pub mod recover;
pub mod regression;
pub mod simulate;
pub mod validate;

pub use discretize::{ArxModel, DiscretizationMethod, OutputKind};
pub use error::{Error, Result};
pub use model::GeneratorParams;
pub use simulate::TimeSeries;

//! Command-line front end: `simulate`, `estimate`, `validate`,
//! `roundtrip` and `ingest`.
//!
//! Every command resolves its configuration with precedence
//! flags > config file > defaults, echoes the resolved configuration into
//! each output file (CSV `#` header comments, JSON `meta` object) and is
//! deterministic given that configuration including the seed.
//!
//! Exit codes: 0 success, 2 configuration error, 3 data error,
//! 4 numerical/recovery error.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use crate::discretize::{self, DiscretizationMethod, OutputKind};
use crate::error::{Error, Result};
use crate::model::GeneratorParams;
use crate::pmu_io::{self, CsvSchema, IngestConfig, PmuMeta};
use crate::recover::{self, Coefficient, EstimationResult};
use crate::regression::{build_regression, residual_stats, solve_lse};
use crate::simulate::{benchmark_dataset, read_dataset_csv, write_dataset_csv, ScenarioConfig};
use crate::validate::{fit_metrics, playback, write_overlay_csv};

const TOOL: &str = concat!("genarx ", env!("CARGO_PKG_VERSION"));
const RNG_NAME: &str = "chacha8+box-muller";

#[derive(Parser)]
#[command(
    name = "genarx",
    version,
    about = "Generator parameter identification via discrete ARX least squares"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a benchmark dataset (step input, optional noise).
    Simulate(SimulateArgs),
    /// Estimate ARX coefficients from a dataset and recover (H, R, T).
    Estimate(EstimateArgs),
    /// Replay an estimated model against measured data and score the fit.
    Validate(ValidateArgs),
    /// Sweep discretize -> recover round trips over a parameter grid.
    Roundtrip(RoundtripArgs),
    /// Ingest a PMU CSV recording into a per-unit deviation dataset.
    Ingest(IngestArgs),
}

/// Parses arguments and runs; returns the process exit code.
pub fn main() -> i32 {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error[{}]: {e}", error_code(&e));
            e.exit_code()
        }
    }
}

fn run(command: Command) -> Result<()> {
    match command {
        Command::Simulate(args) => cmd_simulate(args),
        Command::Estimate(args) => cmd_estimate(args),
        Command::Validate(args) => cmd_validate(args),
        Command::Roundtrip(args) => cmd_roundtrip(args),
        Command::Ingest(args) => cmd_ingest(args),
    }
}

fn error_code(e: &Error) -> &'static str {
    use Error::*;
    match e {
        NonPositiveParameter { .. } => "NonPositiveParameter",
        NotUnderdamped { .. } => "NotUnderdamped",
        DampingUnsupported(_) => "DampingUnsupported",
        Config(_) => "Config",
        FoldedSampling { .. } => "FoldedSampling",
        SamplingMismatch { .. } => "SamplingMismatch",
        EmptySeries => "EmptySeries",
        NonFiniteSample { .. } => "NonFiniteSample",
        TooFewSamples { .. } => "TooFewSamples",
        LengthMismatch { .. } => "LengthMismatch",
        MissingColumn(_) => "MissingColumn",
        MalformedRow { .. } => "MalformedRow",
        NonMonotoneTime { .. } => "NonMonotoneTime",
        IrregularSampling { .. } => "IrregularSampling",
        WindowTooShort { .. } => "WindowTooShort",
        NoEventFound { .. } => "NoEventFound",
        RankDeficient { .. } => "RankDeficient",
        BranchViolation { .. } => "BranchViolation",
        NonPhysical { .. } => "NonPhysical",
        DegenerateCoefficients { .. } => "DegenerateCoefficients",
        SingularRecovery { .. } => "SingularRecovery",
        Io(_) => "Io",
        Csv(_) => "Csv",
        Json(_) => "Json",
    }
}

fn merged<T>(flag: Option<T>, file: Option<T>, default: T) -> T {
    flag.or(file).unwrap_or(default)
}

fn required<T>(flag: Option<T>, file: Option<T>, name: &str) -> Result<T> {
    flag.or(file)
        .ok_or_else(|| Error::Config(format!("missing required option --{name}")))
}

fn load_file_config<T: Default + for<'de> Deserialize<'de>>(path: &Option<PathBuf>) -> Result<T> {
    match path {
        Some(p) => Ok(serde_json::from_str(&std::fs::read_to_string(p)?)?),
        None => Ok(T::default()),
    }
}

fn meta_json(command: &str, config: &impl Serialize) -> Result<serde_json::Value> {
    Ok(serde_json::json!({
        "tool": TOOL,
        "command": command,
        "rng": RNG_NAME,
        "config": serde_json::to_value(config)?,
    }))
}

fn meta_lines(command: &str, config: &impl Serialize) -> Result<Vec<String>> {
    Ok(vec![
        format!("{TOOL} {command} (rng: {RNG_NAME})"),
        format!("config: {}", serde_json::to_string(config)?),
    ])
}

// ---------------------------------------------------------------------
// simulate
// ---------------------------------------------------------------------

#[derive(Args)]
struct SimulateArgs {
    /// JSON config file; flags take precedence over its entries.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Inertia constant H, seconds.
    #[arg(long = "H")]
    inertia: Option<f64>,
    /// Droop R, p.u.
    #[arg(long = "R")]
    droop: Option<f64>,
    /// Governor time constant T, seconds.
    #[arg(long = "T")]
    governor_tc: Option<f64>,
    /// Damping factor D, p.u. (estimation requires 0).
    #[arg(long = "D")]
    damping: Option<f64>,
    /// Sampling interval, seconds.
    #[arg(long = "h")]
    h: Option<f64>,
    /// Step amplitude, p.u.
    #[arg(long = "step")]
    step_amplitude: Option<f64>,
    /// Step onset, seconds.
    #[arg(long)]
    step_time: Option<f64>,
    /// Duration, seconds.
    #[arg(long)]
    duration: Option<f64>,
    /// Input noise variance, p.u.^2.
    #[arg(long = "noise-var")]
    noise_variance: Option<f64>,
    /// Output measurement-noise variance, p.u.^2 (robustness experiments).
    #[arg(long = "output-noise-var")]
    output_noise_variance: Option<f64>,
    /// RNG seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Data-generation model structure: zoh | tustin.
    #[arg(long)]
    method: Option<DiscretizationMethod>,
    /// Output signal: omega | delta.
    #[arg(long)]
    output: Option<OutputKind>,
    /// Dataset CSV path; the scenario JSON lands next to it.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct SimulateFileConfig {
    inertia: Option<f64>,
    droop: Option<f64>,
    governor_tc: Option<f64>,
    damping: Option<f64>,
    h: Option<f64>,
    step_amplitude: Option<f64>,
    step_time: Option<f64>,
    duration: Option<f64>,
    noise_variance: Option<f64>,
    output_noise_variance: Option<f64>,
    seed: Option<u64>,
    method: Option<DiscretizationMethod>,
    output: Option<OutputKind>,
    out: Option<PathBuf>,
}

#[derive(Serialize)]
struct SimulateConfig {
    inertia: f64,
    droop: f64,
    governor_tc: f64,
    damping: f64,
    h: f64,
    method: DiscretizationMethod,
    output: OutputKind,
    scenario: ScenarioConfig,
    out: PathBuf,
}

fn cmd_simulate(args: SimulateArgs) -> Result<()> {
    let file: SimulateFileConfig = load_file_config(&args.config)?;
    let cfg = SimulateConfig {
        inertia: merged(args.inertia, file.inertia, 2.5),
        droop: merged(args.droop, file.droop, 0.05),
        governor_tc: merged(args.governor_tc, file.governor_tc, 0.5),
        damping: merged(args.damping, file.damping, 0.0),
        h: merged(args.h, file.h, 0.1),
        method: merged(args.method, file.method, DiscretizationMethod::Zoh),
        output: merged(args.output, file.output, OutputKind::Omega),
        scenario: ScenarioConfig {
            step_amplitude: merged(args.step_amplitude, file.step_amplitude, 0.2),
            step_time: merged(args.step_time, file.step_time, 1.0),
            duration: merged(args.duration, file.duration, 15.0),
            noise_variance: merged(args.noise_variance, file.noise_variance, 1e-4),
            rng_seed: merged(args.seed, file.seed, 0),
            output_noise_variance: merged(
                args.output_noise_variance,
                file.output_noise_variance,
                0.0,
            ),
        },
        out: merged(args.out, file.out, PathBuf::from("dataset.csv")),
    };
    let params =
        GeneratorParams::with_damping(cfg.inertia, cfg.droop, cfg.governor_tc, cfg.damping)?;
    let bench = benchmark_dataset(&params, cfg.method, cfg.output, cfg.h, &cfg.scenario)?;
    write_dataset_csv(&cfg.out, &bench.u, &bench.y, &meta_lines("simulate", &cfg)?)?;

    let scenario_path = cfg.out.with_extension("json");
    let doc = serde_json::json!({
        "meta": meta_json("simulate", &cfg)?,
        "model": bench.model,
    });
    std::fs::write(&scenario_path, serde_json::to_string_pretty(&doc)?)?;
    println!(
        "wrote {} samples to {} (scenario: {})",
        bench.u.len(),
        cfg.out.display(),
        scenario_path.display()
    );
    Ok(())
}

// ---------------------------------------------------------------------
// estimate
// ---------------------------------------------------------------------

#[derive(Args)]
struct EstimateArgs {
    /// JSON config file; flags take precedence over its entries.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Dataset CSV (`t,u,y`).
    #[arg(long)]
    data: Option<PathBuf>,
    /// Assumed ARX structure: zoh | tustin. Independent of how the data
    /// was generated, which permits deliberate structure mismatches.
    #[arg(long)]
    method: Option<DiscretizationMethod>,
    /// Output signal the `y` column holds: omega | delta.
    #[arg(long)]
    output: Option<OutputKind>,
    /// Where to write the estimation result JSON.
    #[arg(long = "json-out")]
    json_out: Option<PathBuf>,
    /// Dump the regression matrix and right-hand side as CSV.
    #[arg(long = "dump-regression")]
    dump_regression: Option<PathBuf>,
}

#[derive(Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct EstimateFileConfig {
    data: Option<PathBuf>,
    method: Option<DiscretizationMethod>,
    output: Option<OutputKind>,
    json_out: Option<PathBuf>,
    dump_regression: Option<PathBuf>,
}

#[derive(Serialize)]
struct EstimateConfig {
    data: PathBuf,
    method: DiscretizationMethod,
    output: OutputKind,
    json_out: Option<PathBuf>,
    dump_regression: Option<PathBuf>,
}

/// Runs the estimation pipeline on an in-memory dataset. Shared by the
/// CLI command, the examples and the integration tests.
pub fn estimate_series(
    u: &crate::simulate::TimeSeries,
    y: &crate::simulate::TimeSeries,
    method: DiscretizationMethod,
    output: OutputKind,
) -> Result<EstimationResult> {
    let (n, m) = discretize::arx_orders(method, output);
    let prob = build_regression(y, u, n, m)?;
    let sol = solve_lse(&prob)?;
    let params = recover::from_coefficients(method, output, &sol.x, u.h())?;
    let residual = residual_stats(&prob, &sol);
    let mut warnings = Vec::new();
    if sol.condition_estimate > 1e8 {
        warnings.push(format!(
            "regression condition estimate {:.3e} is high; coefficients may be poorly determined",
            sol.condition_estimate
        ));
    }
    Ok(EstimationResult {
        method,
        output,
        h: u.h(),
        coefficients: prob
            .column_labels()
            .iter()
            .zip(&sol.x)
            .map(|(name, &value)| Coefficient {
                name: name.clone(),
                value,
            })
            .collect(),
        params,
        residual,
        warnings,
    })
}

fn cmd_estimate(args: EstimateArgs) -> Result<()> {
    let file: EstimateFileConfig = load_file_config(&args.config)?;
    let cfg = EstimateConfig {
        data: required(args.data, file.data, "data")?,
        method: merged(args.method, file.method, DiscretizationMethod::Zoh),
        output: merged(args.output, file.output, OutputKind::Omega),
        json_out: args.json_out.or(file.json_out),
        dump_regression: args.dump_regression.or(file.dump_regression),
    };
    let (u, y) = read_dataset_csv(&cfg.data)?;
    if let Some(dump) = &cfg.dump_regression {
        let (n, m) = discretize::arx_orders(cfg.method, cfg.output);
        build_regression(&y, &u, n, m)?.dump_csv(dump)?;
    }
    let result = estimate_series(&u, &y, cfg.method, cfg.output)?;

    println!(
        "Estimated coefficients ({}/{}, h = {}):",
        result.method, result.output, result.h
    );
    for c in &result.coefficients {
        println!("  {:<3} {:>14.7e}", c.name, c.value);
    }
    println!("Recovered parameters:");
    println!("  T {:>10.4}", result.params.governor_tc());
    println!("  R {:>10.4}", result.params.droop());
    println!("  H {:>10.4}", result.params.inertia());
    println!(
        "Residual rms = {:.3e}, max = {:.3e}",
        result.residual.rms, result.residual.max_abs
    );
    for w in &result.warnings {
        println!("warning: {w}");
    }

    if let Some(path) = &cfg.json_out {
        let doc = serde_json::json!({
            "meta": meta_json("estimate", &cfg)?,
            "result": result,
        });
        std::fs::write(path, serde_json::to_string_pretty(&doc)?)?;
    }
    Ok(())
}

// ---------------------------------------------------------------------
// validate
// ---------------------------------------------------------------------

#[derive(Args)]
struct ValidateArgs {
    /// JSON config file; flags take precedence over its entries.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Dataset CSV (`t,u,y`) holding the measured signals.
    #[arg(long)]
    data: Option<PathBuf>,
    /// Estimation result JSON produced by `estimate --json-out`; its
    /// recovered parameters drive the playback.
    #[arg(long)]
    result: Option<PathBuf>,
    /// Inertia constant H, seconds (alternative to --result).
    #[arg(long = "H")]
    inertia: Option<f64>,
    /// Droop R, p.u.
    #[arg(long = "R")]
    droop: Option<f64>,
    /// Governor time constant T, seconds.
    #[arg(long = "T")]
    governor_tc: Option<f64>,
    /// Discretization used for playback: zoh | tustin.
    #[arg(long)]
    method: Option<DiscretizationMethod>,
    /// Overlay CSV (`t,measured,predicted`) output path.
    #[arg(long)]
    overlay: Option<PathBuf>,
    /// Fit report JSON output path.
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ValidateFileConfig {
    data: Option<PathBuf>,
    result: Option<PathBuf>,
    inertia: Option<f64>,
    droop: Option<f64>,
    governor_tc: Option<f64>,
    method: Option<DiscretizationMethod>,
    overlay: Option<PathBuf>,
    report: Option<PathBuf>,
}

#[derive(Serialize)]
struct ValidateConfig {
    data: PathBuf,
    params: GeneratorParams,
    method: DiscretizationMethod,
    overlay: Option<PathBuf>,
    report: Option<PathBuf>,
}

fn params_from_result_json(path: &Path) -> Result<GeneratorParams> {
    let doc: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(path)?)?;
    let raw = doc
        .pointer("/result/params")
        .cloned()
        .ok_or_else(|| Error::Config(format!("{}: no result.params object", path.display())))?;
    Ok(serde_json::from_value(raw)?)
}

fn cmd_validate(args: ValidateArgs) -> Result<()> {
    let file: ValidateFileConfig = load_file_config(&args.config)?;
    let params = match args.result.or(file.result) {
        Some(path) => params_from_result_json(&path)?,
        None => GeneratorParams::new(
            required(args.inertia, file.inertia, "H")?,
            required(args.droop, file.droop, "R")?,
            required(args.governor_tc, file.governor_tc, "T")?,
        )?,
    };
    let cfg = ValidateConfig {
        data: required(args.data, file.data, "data")?,
        params,
        method: merged(args.method, file.method, DiscretizationMethod::Zoh),
        overlay: args.overlay.or(file.overlay),
        report: args.report.or(file.report),
    };
    let (u, y) = read_dataset_csv(&cfg.data)?;
    let predicted = playback(&cfg.params, cfg.method, &u)?;
    let fit = fit_metrics(&y, &predicted)?;
    println!(
        "playback fit: {:.2}% (rmse {:.3e}, max {:.3e})",
        fit.nrmse_fit, fit.rmse, fit.max_abs_err
    );
    if let Some(path) = &cfg.overlay {
        write_overlay_csv(path, &y, &predicted, &meta_lines("validate", &cfg)?)?;
    }
    if let Some(path) = &cfg.report {
        let doc = serde_json::json!({
            "meta": meta_json("validate", &cfg)?,
            "fit": fit,
        });
        std::fs::write(path, serde_json::to_string_pretty(&doc)?)?;
    }
    Ok(())
}

// ---------------------------------------------------------------------
// roundtrip
// ---------------------------------------------------------------------

#[derive(Args)]
struct RoundtripArgs {
    /// JSON config file; flags take precedence over its entries.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Comma-separated methods, e.g. "zoh,tustin".
    #[arg(long, value_delimiter = ',')]
    methods: Option<Vec<DiscretizationMethod>>,
    /// Comma-separated outputs, e.g. "omega,delta".
    #[arg(long, value_delimiter = ',')]
    outputs: Option<Vec<OutputKind>>,
    /// Comma-separated sampling intervals.
    #[arg(long = "h-list", value_delimiter = ',')]
    h_list: Option<Vec<f64>>,
    /// Relative tolerance per recovered parameter.
    #[arg(long)]
    tolerance: Option<f64>,
}

#[derive(Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RoundtripFileConfig {
    methods: Option<Vec<DiscretizationMethod>>,
    outputs: Option<Vec<OutputKind>>,
    h_list: Option<Vec<f64>>,
    tolerance: Option<f64>,
}

#[derive(Serialize)]
struct RoundtripConfig {
    methods: Vec<DiscretizationMethod>,
    outputs: Vec<OutputKind>,
    h_list: Vec<f64>,
    tolerance: f64,
}

/// Parameter grid driven by the round-trip sweep.
pub fn roundtrip_grid() -> Vec<GeneratorParams> {
    let mut grid = Vec::new();
    for &h in &[1.0, 2.5, 5.0, 10.0] {
        for &r in &[0.02, 0.05, 0.1] {
            for &t in &[0.2, 0.5, 1.0] {
                if let Ok(p) = GeneratorParams::new(h, r, t) {
                    grid.push(p);
                }
            }
        }
    }
    grid
}

fn cmd_roundtrip(args: RoundtripArgs) -> Result<()> {
    let file: RoundtripFileConfig = load_file_config(&args.config)?;
    let cfg = RoundtripConfig {
        methods: merged(
            args.methods,
            file.methods,
            vec![DiscretizationMethod::Zoh, DiscretizationMethod::Tustin],
        ),
        outputs: merged(
            args.outputs,
            file.outputs,
            vec![OutputKind::Omega, OutputKind::Delta],
        ),
        h_list: merged(args.h_list, file.h_list, vec![0.1, 0.01, 0.001]),
        tolerance: merged(args.tolerance, file.tolerance, 1e-8),
    };
    println!("{TOOL} roundtrip");
    println!("config: {}", serde_json::to_string(&cfg)?);
    let grid = roundtrip_grid();
    let mut failures = 0usize;
    for &method in &cfg.methods {
        for &output in &cfg.outputs {
            for &h in &cfg.h_list {
                let mut max_err = 0.0f64;
                let mut folded = 0usize;
                let mut failed = 0usize;
                for p in &grid {
                    match discretize::discretize(p, method, output, h) {
                        Err(Error::FoldedSampling { .. }) => folded += 1,
                        Err(e) => return Err(e),
                        Ok(model) => match recover::from_model(&model) {
                            Err(_) => failed += 1,
                            Ok(back) => {
                                let err = [
                                    (back.inertia(), p.inertia()),
                                    (back.droop(), p.droop()),
                                    (back.governor_tc(), p.governor_tc()),
                                ]
                                .iter()
                                .map(|(got, want)| (got - want).abs() / want.abs())
                                .fold(0.0, f64::max);
                                max_err = max_err.max(err);
                                if err > cfg.tolerance {
                                    failed += 1;
                                }
                            }
                        },
                    }
                }
                let verdict = if failed > 0 { "FAIL" } else { "PASS" };
                if failed > 0 {
                    failures += 1;
                }
                let fold_note = if folded > 0 {
                    format!(" folded={folded}")
                } else {
                    String::new()
                };
                println!(
                    "{verdict} method={method} output={output} h={h} cells={} max_rel_err={max_err:.3e}{fold_note}",
                    grid.len(),
                );
            }
        }
    }
    if failures > 0 {
        return Err(Error::NonPhysical {
            reason: format!("{failures} round-trip cells exceeded tolerance"),
        });
    }
    Ok(())
}

// ---------------------------------------------------------------------
// ingest
// ---------------------------------------------------------------------

#[derive(Args)]
struct IngestArgs {
    /// JSON config file; flags take precedence over its entries.
    #[arg(long)]
    config: Option<PathBuf>,
    /// PMU recording CSV.
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Metadata sidecar JSON ({"f_nom": 60, "s_base": ..., "prescaled": false}).
    #[arg(long)]
    meta: Option<PathBuf>,
    /// Prepared dataset CSV output; a JSON sidecar lands next to it.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Time column name.
    #[arg(long = "t-col")]
    t_col: Option<String>,
    /// Frequency column name.
    #[arg(long = "freq-col")]
    freq_col: Option<String>,
    /// Power column name.
    #[arg(long = "power-col")]
    power_col: Option<String>,
    /// Event-detection threshold on the power first difference, p.u.
    #[arg(long)]
    threshold: Option<f64>,
    /// Window extent before the event anchor, seconds.
    #[arg(long)]
    pre: Option<f64>,
    /// Window extent after the event anchor, seconds.
    #[arg(long)]
    post: Option<f64>,
    /// Samples defining the pre-event operating point.
    #[arg(long = "pre-event-samples")]
    pre_event_samples: Option<usize>,
}

#[derive(Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct IngestFileConfig {
    csv: Option<PathBuf>,
    meta: Option<PathBuf>,
    out: Option<PathBuf>,
    t_col: Option<String>,
    freq_col: Option<String>,
    power_col: Option<String>,
    threshold: Option<f64>,
    pre: Option<f64>,
    post: Option<f64>,
    pre_event_samples: Option<usize>,
}

#[derive(Serialize)]
struct IngestCliConfig {
    csv: PathBuf,
    meta: PathBuf,
    out: PathBuf,
    schema: CsvSchema,
    ingest: IngestConfig,
}

fn cmd_ingest(args: IngestArgs) -> Result<()> {
    let file: IngestFileConfig = load_file_config(&args.config)?;
    let defaults_schema = CsvSchema::default();
    let defaults_ingest = IngestConfig::default();
    let cfg = IngestCliConfig {
        csv: required(args.csv, file.csv, "csv")?,
        meta: required(args.meta, file.meta, "meta")?,
        out: merged(args.out, file.out, PathBuf::from("prepared.csv")),
        schema: CsvSchema {
            time: merged(args.t_col, file.t_col, defaults_schema.time),
            freq: merged(args.freq_col, file.freq_col, defaults_schema.freq),
            power: merged(args.power_col, file.power_col, defaults_schema.power),
        },
        ingest: IngestConfig {
            pre_event_samples: merged(
                args.pre_event_samples,
                file.pre_event_samples,
                defaults_ingest.pre_event_samples,
            ),
            threshold: merged(args.threshold, file.threshold, defaults_ingest.threshold),
            pre_seconds: merged(args.pre, file.pre, defaults_ingest.pre_seconds),
            post_seconds: merged(args.post, file.post, defaults_ingest.post_seconds),
        },
    };
    let meta = PmuMeta::from_json_file(&cfg.meta)?;
    let rec = pmu_io::read_pmu_csv(&cfg.csv, &cfg.schema, meta)?;
    let prepared = pmu_io::prepare(&rec, &cfg.ingest)?;
    write_dataset_csv(
        &cfg.out,
        &prepared.u,
        &prepared.y,
        &meta_lines("ingest", &cfg)?,
    )?;
    let sidecar = cfg.out.with_extension("json");
    let doc = serde_json::json!({
        "meta": meta_json("ingest", &cfg)?,
        "h": prepared.h,
        "window": { "start": prepared.window.0, "end": prepared.window.1 },
        "normalization": prepared.normalization,
    });
    std::fs::write(&sidecar, serde_json::to_string_pretty(&doc)?)?;
    println!(
        "prepared {} samples (window [{}, {}), h = {}) -> {}",
        prepared.u.len(),
        prepared.window.0,
        prepared.window.1,
        prepared.h,
        cfg.out.display()
    );
    Ok(())
}

//! Benchmark simulation against the closed-form continuous step response.
//!
//! The ZOH conversion is exact at the sample instants; the Tustin
//! conversion converges at second order. Writes an overlay CSV under
//! `out/` for plotting.

use genarx::discretize::{tustin_omega, zoh_omega};
use genarx::model::GeneratorParams;
use genarx::simulate::{
    analytic_step_response_omega, simulate_arx, step_signal, ScenarioConfig,
};

fn main() -> genarx::Result<()> {
    let p = GeneratorParams::new(2.5, 0.05, 0.5)?;
    let h = 0.1;
    let cfg = ScenarioConfig {
        step_time: 0.0,
        noise_variance: 0.0,
        ..ScenarioConfig::default()
    };
    let u = step_signal(&cfg, h)?;
    let zoh = simulate_arx(&zoh_omega(&p, h)?, &u)?;
    let tustin = simulate_arx(&tustin_omega(&p, h)?, &u)?;
    let exact = analytic_step_response_omega(&p, cfg.step_amplitude, h, u.len())?;

    println!("0.2 p.u. step on (H, R, T) = (2.5, 0.05, 0.5), h = {h}:");
    println!("{:>6} {:>12} {:>12} {:>12}", "t", "exact", "zoh", "tustin");
    for k in (0..=30).step_by(5) {
        println!(
            "{:>6.1} {:>12.6e} {:>12.6e} {:>12.6e}",
            exact.time_at(k),
            exact.values()[k],
            zoh.values()[k],
            tustin.values()[k],
        );
    }
    let max_dev = |s: &genarx::TimeSeries| {
        s.values()
            .iter()
            .zip(exact.values())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0f64, f64::max)
    };
    println!("max |zoh - exact|    = {:.3e}", max_dev(&zoh));
    println!("max |tustin - exact| = {:.3e}", max_dev(&tustin));

    std::fs::create_dir_all("out")?;
    genarx::validate::write_overlay_csv(
        std::path::Path::new("out/step_response.csv"),
        &exact,
        &zoh,
        &["step_response example: exact vs zoh simulation".into()],
    )?;
    println!("overlay written to out/step_response.csv");
    Ok(())
}

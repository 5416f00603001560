//! What happens when the assumed ARX structure does not match the data:
//! fitting the direct-feedthrough (Tustin) structure to ZOH-generated
//! data drives the extra coefficient to zero and breaks recovery, so the
//! structure of the data-generating process matters.

use genarx::discretize::{self, DiscretizationMethod, OutputKind};
use genarx::model::GeneratorParams;
use genarx::recover;
use genarx::regression::{build_regression, solve_lse};
use genarx::simulate::{simulate_arx, step_signal, ScenarioConfig};

fn main() -> genarx::Result<()> {
    let p = GeneratorParams::new(2.5, 0.05, 0.5)?;
    let h = 0.1;
    let zoh = discretize::zoh_omega(&p, h)?;
    let cfg = ScenarioConfig {
        noise_variance: 0.0,
        ..ScenarioConfig::default()
    };
    let u = step_signal(&cfg, h)?;
    let y = simulate_arx(&zoh, &u)?;

    // Assume the 5-coefficient direct-feedthrough structure instead.
    let prob = build_regression(&y, &u, 2, 2)?;
    let sol = solve_lse(&prob)?;
    println!("clean ZOH data fitted with the tustin structure:");
    for (name, value) in prob.column_labels().iter().zip(&sol.x) {
        println!("  {name:<3} {value:>14.6e}");
    }
    println!("\nZOH truth: a1 = {:.6e}, a0 = {:.6e}, b1 = {:.6e}, b0 = {:.6e}",
        zoh.den[0], zoh.den[1], zoh.num[0], zoh.num[1]);
    println!(
        "-> the estimate collapses onto the ZOH coefficients with b2 ~ {:.1e}",
        sol.x[2]
    );

    match recover::from_coefficients(DiscretizationMethod::Tustin, OutputKind::Omega, &sol.x, h) {
        Ok(q) => println!("unexpectedly recovered {q:?}"),
        Err(e) => println!("recovery then fails loudly: {e}"),
    }
    Ok(())
}

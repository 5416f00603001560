//! Pure-algebra round trip: discretize a grid of parameter sets, recover
//! the parameters from the coefficients alone and report the worst
//! relative error per method/output/h cell.

use genarx::cli::roundtrip_grid;
use genarx::discretize::{discretize, DiscretizationMethod, OutputKind};
use genarx::recover;

fn main() -> genarx::Result<()> {
    let grid = roundtrip_grid();
    println!("{} underdamped parameter sets per cell\n", grid.len());
    println!("{:>8} {:>8} {:>8} {:>14}", "method", "output", "h", "max rel err");
    for method in [DiscretizationMethod::Zoh, DiscretizationMethod::Tustin] {
        for output in [OutputKind::Omega, OutputKind::Delta] {
            for h in [0.1, 0.01, 0.001] {
                let mut max_err = 0.0f64;
                for p in &grid {
                    let back = recover::from_model(&discretize(p, method, output, h)?)?;
                    for (got, want) in [
                        (back.inertia(), p.inertia()),
                        (back.droop(), p.droop()),
                        (back.governor_tc(), p.governor_tc()),
                    ] {
                        max_err = max_err.max((got - want).abs() / want);
                    }
                }
                println!(
                    "{:>8} {:>8} {:>8} {:>14.3e}",
                    method.to_string(),
                    output.to_string(),
                    h,
                    max_err
                );
            }
        }
    }
    Ok(())
}

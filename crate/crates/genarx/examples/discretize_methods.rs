//! The four discrete coefficient sets for one parameter point, plus the
//! JSON interchange form.

use genarx::discretize::{discretize, DiscretizationMethod, OutputKind};
use genarx::model::GeneratorParams;

fn main() -> genarx::Result<()> {
    let p = GeneratorParams::new(2.5, 0.05, 0.5)?;
    let h = 0.1;
    let c = p.derived_constants();
    println!("(H, R, T) = (2.5, 0.05, 0.5), h = {h}");
    println!(
        "modal constants: alpha = {}, omega = {:.6} rad/s, k = {:.6}",
        c.alpha, c.omega, c.k
    );
    let poles = p.continuous_poles();
    println!("continuous poles: {} +/- j{:.6}\n", poles.re, poles.im);

    for method in [DiscretizationMethod::Zoh, DiscretizationMethod::Tustin] {
        for output in [OutputKind::Omega, OutputKind::Delta] {
            let m = discretize(&p, method, output, h)?;
            println!("{method}/{output}: (n = {}, m = {})", m.denominator_order(), m.numerator_order());
            println!("  den {:?}", m.den);
            println!("  num {:?}", m.num);
        }
    }

    let json = discretize(&p, DiscretizationMethod::Tustin, OutputKind::Omega, h)?.to_json()?;
    println!("\ninterchange JSON (tustin/omega):\n{json}");
    Ok(())
}

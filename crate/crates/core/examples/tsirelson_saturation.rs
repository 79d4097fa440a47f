// Sharp and unsharp CHSH values on the maximally entangled state, computed
// both through the density matrix and from the closed form.

use std::error::Error;
use std::f64::consts::{FRAC_PI_4, SQRT_2};

use unsharp_chsh::povm::PovmParams;
use unsharp_chsh::quantum::{chsh_value, closed_form_unbiased, pure_state, MeasurementSettings};

fn run() -> Result<(), Box<dyn Error>> {
    let rho = pure_state(FRAC_PI_4);
    let settings = MeasurementSettings::canonical();

    println!("{:>6}  {:>14}  {:>14}", "eta", "matrix", "closed form");
    for eta in [1.0, 0.95, 0.9, 0.85, 0.8, 0.5] {
        let params = PovmParams::unbiased(eta)?;
        let matrix = chsh_value(&rho, &settings, params, params)?;
        let closed = closed_form_unbiased(FRAC_PI_4, eta)?;
        assert!((matrix - closed).abs() < 1e-10);
        println!("{eta:>6.2}  {matrix:>14.10}  {closed:>14.10}");
    }
    println!("2*sqrt(2) = {:.10}", 2.0 * SQRT_2);
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run()
}

// Critical sharpness for a standard violation and the largest bias that
// still gives a corrected violation, swept over the state angle.

use std::error::Error;
use std::f64::consts::FRAC_PI_4;

use unsharp_chsh::analysis::{critical_eta_standard, max_alpha_modified};

fn run() -> Result<(), Box<dyn Error>> {
    println!("{:>8}  {:>12}  {:>12}", "theta", "eta*", "alpha sup");
    for k in 1..=9 {
        let theta = FRAC_PI_4 * k as f64 / 9.0;
        let eta = critical_eta_standard(theta, 0.0)?
            .map(|e| format!("{e:.8}"))
            .unwrap_or_else(|| "none".into());
        let alpha = max_alpha_modified(theta)?;
        println!("{theta:>8.4}  {eta:>12}  {alpha:>12.6}");
    }

    println!();
    println!("with bias, theta = pi/4");
    for alpha in [0.0, 0.02, 0.05, 0.08] {
        match critical_eta_standard(FRAC_PI_4, alpha)? {
            Some(eta) => println!("  alpha {alpha:.2}: eta* = {eta:.8}"),
            None => println!("  alpha {alpha:.2}: no standard violation"),
        }
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run()
}

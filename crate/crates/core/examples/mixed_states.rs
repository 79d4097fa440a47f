// CHSH values for Werner states and a hand-built density matrix.

use std::error::Error;

use unsharp_chsh::lhv::closed_form_local_bound;
use unsharp_chsh::povm::PovmParams;
use unsharp_chsh::quantum::{chsh_value, werner_state, DensityMatrix, MeasurementSettings};

fn run() -> Result<(), Box<dyn Error>> {
    let settings = MeasurementSettings::canonical();
    let params = PovmParams::unbiased(0.9)?;
    let local = closed_form_local_bound(params);

    println!("eta = 0.9, local bound {local:.6}");
    for p in [0.0, 0.25, 0.5, 0.6, 0.75, 1.0] {
        let v = chsh_value(&werner_state(p)?, &settings, params, params)?;
        let mark = if v > local { "violates" } else { "" };
        println!("  werner p = {p:.2}: {v:.6} {mark}");
    }

    // 0.7 |Phi+><Phi+| + 0.3 |01><01|, entered as (re, im) pairs row by row.
    let mut entries = [0.0; 32];
    for idx in [0, 3, 12, 15] {
        entries[2 * idx] = 0.35;
    }
    entries[2 * 5] = 0.3;
    let rho = DensityMatrix::from_row_major_pairs(&entries)?;
    let v = chsh_value(&rho, &settings, params, params)?;
    println!("  custom state: {v:.6}");

    // Unit trace but a negative population: refused.
    let mut bad = [0.0; 32];
    bad[0] = 1.2;
    bad[2 * 5] = -0.2;
    match DensityMatrix::from_row_major_pairs(&bad) {
        Ok(_) => println!("  unexpected: invalid state accepted"),
        Err(err) => println!("  rejected: {err}"),
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run()
}

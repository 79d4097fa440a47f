// Builds biased and unbiased two-outcome POVMs and prints their effects.

use std::error::Error;
use std::f64::consts::FRAC_PI_4;

use unsharp_chsh::linalg::{BlochVector, ComplexMatrix2};
use unsharp_chsh::povm::{biased_povm, unbiased_povm, PovmParams};

fn show(label: &str, m: &ComplexMatrix2) {
    println!("  {label}:");
    for r in 0..2 {
        let row: Vec<String> = (0..2)
            .map(|c| {
                let z = m.get(r, c);
                format!("{:+.4}{:+.4}i", z.re, z.im)
            })
            .collect();
        println!("    [{}]", row.join("  "));
    }
}

fn run() -> Result<(), Box<dyn Error>> {
    let z = BlochVector::z_axis();
    let tilted = BlochVector::from_angles(FRAC_PI_4, 0.0);

    let e = unbiased_povm(&z, 0.6)?;
    println!("unbiased, eta = 0.6, along z");
    show("E+", e.plus());
    show("E-", e.minus());

    let params = PovmParams::new(0.2, 0.7)?;
    let e = biased_povm(&tilted, params);
    println!("biased, alpha = 0.2, eta = 0.7, along (x+z)/sqrt2");
    show("E+", e.plus());
    show("E-", e.minus());
    println!("  spectral weights {:?}", params.spectral_weights());
    println!("  smallest eigenvalue {:.6}", e.min_eigenvalue());

    // Outside the triangle |alpha| + eta <= 1 the effects stop being positive.
    match PovmParams::new(0.4, 0.7) {
        Ok(_) => println!("alpha = 0.4, eta = 0.7 accepted"),
        Err(err) => println!("alpha = 0.4, eta = 0.7 rejected: {err}"),
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run()
}

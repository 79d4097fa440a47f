// Runs the built-in consistency checks with a chosen seed.
//
// ```text
// cargo run --release --example verify_suite -- 42
// ```

use std::error::Error;

use unsharp_chsh::verify::{run_with_seed, DEFAULT_SEED};

fn run(seed: u64) -> Result<(), Box<dyn Error>> {
    let report = run_with_seed(seed);
    for c in &report.checks {
        let tag = if c.passed { "ok  " } else { "FAIL" };
        println!(
            "{tag} {:<40} worst {:.2e} / tol {:.0e}",
            c.name, c.worst, c.tolerance
        );
    }
    println!("{} passed, {} failed", report.passed(), report.failed());
    if !report.all_passed() {
        return Err("verification failed".into());
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    let seed = match std::env::args().nth(1) {
        Some(s) => s.parse()?,
        None => DEFAULT_SEED,
    };
    run(seed)
}

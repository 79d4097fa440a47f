// Enumerates the sixteen deterministic strategies and reports the local
// bound for a few measurement parameters.

use std::error::Error;

use unsharp_chsh::lhv::{lhv_bound_bruteforce, strategy_chsh, DeterministicStrategy};

fn run() -> Result<(), Box<dyn Error>> {
    let (alpha, eta) = (0.15, 0.6);
    println!("strategy values at alpha = {alpha}, eta = {eta}");
    for s in DeterministicStrategy::all() {
        println!("  {s}  {:+.6}", strategy_chsh(&s, alpha, eta)?);
    }

    println!();
    println!(
        "{:>6} {:>6} {:>10} {:>10}  maximizers",
        "alpha", "eta", "bound", "closed"
    );
    for (alpha, eta) in [
        (0.0, 1.0),
        (0.0, 0.5),
        (0.15, 0.6),
        (-0.15, 0.6),
        (0.3, 0.7),
    ] {
        let r = lhv_bound_bruteforce(alpha, eta)?;
        let closed = r.closed_form.unwrap_or(f64::NAN);
        println!(
            "{alpha:>6.2} {eta:>6.2} {:>10.6} {closed:>10.6}  {}",
            r.bound,
            r.maximizing_strategies.len()
        );
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run()
}

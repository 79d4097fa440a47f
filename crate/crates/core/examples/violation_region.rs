// Scans the (alpha, eta) square at theta = pi/4 and summarises which cells
// violate the standard and the bias-corrected local bound.
//
// Pass a path to also write the full grid as CSV:
//
// ```text
// cargo run --example violation_region -- grid.csv
// ```

use std::error::Error;
use std::f64::consts::FRAC_PI_4;

use unsharp_chsh::analysis::{scan_region, ScanSummary, ViolationClass};
use unsharp_chsh::cli::scan_to_csv;

fn run(csv_path: Option<&str>) -> Result<(), Box<dyn Error>> {
    let steps = 51;
    let cells = scan_region(FRAC_PI_4, steps, steps)?;
    let summary = ScanSummary::of(&cells);
    println!("{summary:#?}");

    // Coarse picture: rows are eta (top = 1), columns alpha.
    let glyph = |c: &unsharp_chsh::analysis::ScanCell| match (c.feasible, c.class) {
        (false, _) => ' ',
        (true, ViolationClass::None) => '.',
        (true, ViolationClass::ModifiedOnly) => 'm',
        (true, ViolationClass::Both) => '#',
    };
    for j in (0..steps).rev().step_by(5) {
        let row: String = (0..steps)
            .step_by(2)
            .map(|i| glyph(&cells[i * steps + j]))
            .collect();
        println!("{:>4.2} |{row}", j as f64 / (steps - 1) as f64);
    }

    if let Some(path) = csv_path {
        std::fs::write(path, scan_to_csv(&cells))?;
        println!("wrote {} cells to {path}", cells.len());
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    let arg = std::env::args().nth(1);
    run(arg.as_deref())
}

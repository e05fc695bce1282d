//! Finite-volume diagonalization of the oscillator channels against the exact spectrum.
use std::time::Instant;

use superosc::algebra::rat;
use superosc::generators::Family;
use superosc::numcheck::{grid_spectrum, GridSpec};

fn main() -> superosc::Result<()> {
    let grid = GridSpec::default();
    for (f, v) in [(Family::KleinN1, rat(1, 4)), (Family::KleinN2, rat(1, 5)), (Family::NonKleinN2, rat(7, 10))] {
        let t = Instant::now();
        let r = grid_spectrum(f, &v, &grid, 6, None)?;
        let vals: Vec<String> = r.values.iter().map(|x| format!("{x:.5}")).collect();
        println!("{f}: {} pass={} max rel err {:.1e} ({:.2?})", vals.join(" "), r.report.pass(), r.report.rows.iter().take(6).map(|x| x.rel_err()).fold(0.0, f64::max), t.elapsed());
        for n in &r.report.notes {
            println!("    {n}");
        }
    }
    Ok(())
}

//! Dilatation grades of the generators.
use superosc::closure::verify_grading;
use superosc::generators::{build_klein_n2, build_undeformed};

fn main() -> superosc::Result<()> {
    for gs in [build_undeformed(2)?, build_klein_n2()] {
        let r = verify_grading(&gs);
        println!("{}: pass={}", r.model, r.pass);
        for g in r.grades.iter().filter(|g| g.name.starts_with('W') || g.name.len() <= 3) {
            println!("  {:<6} {}", g.name, g.found.as_deref().unwrap_or("-"));
        }
    }
    Ok(())
}

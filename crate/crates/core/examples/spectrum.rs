//! Energy levels and exact degeneracies.
use superosc::algebra::{rat, rat_string};
use superosc::generators::Family;
use superosc::spectral::spectrum;

fn main() -> superosc::Result<()> {
    let cases = [
        (Family::KleinN1, rat(1, 4), None),
        (Family::KleinN1, rat(1, 4), Some("iiia-bos")),
        (Family::KleinN2, rat(1, 5), None),
        (Family::NonKleinN2, rat(7, 10), None),
    ];
    for (f, v, choice) in cases {
        let r = spectrum(f, &v, 5, choice)?;
        let levels: Vec<String> = r.levels.iter().map(|l| format!("{}x{}", rat_string(&l.energy), l.degeneracy)).collect();
        println!("{f} at {} [{}]: {}", rat_string(&v), r.option, levels.join(" "));
    }
    match spectrum(Family::NonKleinN2, &rat(0, 1), 3, None) {
        Err(e) => println!("nu = 0: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}

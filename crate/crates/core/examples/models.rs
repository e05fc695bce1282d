//! The generator sets and their potentials.
use std::collections::BTreeMap;

use superosc::algebra::rat;
use superosc::generators::{potential, Family, ModelSpec, BETA};

fn main() -> superosc::Result<()> {
    for f in [Family::Undeformed(1), Family::KleinN1, Family::KleinN2, Family::NonKleinN2] {
        let gs = ModelSpec::symbolic(f).build()?;
        println!("{f}: {} generators, {}x{} matrices", gs.names().len(), gs.dim(), gs.dim());
        println!("  names {:?}", gs.names());
        println!("  V =\n{}", potential(&gs));
    }
    let at = ModelSpec::symbolic(Family::KleinN1).build()?.substitute(&BTreeMap::from([(BETA.to_string(), rat(1, 4))]));
    println!("klein-n1 H at beta = 1/4: {}", at.h());
    Ok(())
}

//! Soft superalgebra of the ladder operators, phase equivalence and the beta -> -beta similarity.
use superosc::generators::{build_klein_n1, build_klein_n2, build_nonklein};
use superosc::spectral::{klein_similarity, phase_equivalence_check, similarity_check, soft_susy_check};

fn main() -> superosc::Result<()> {
    for gs in [build_klein_n1(), build_klein_n2(), build_nonklein()] {
        let r = soft_susy_check(&gs)?;
        println!("{}: {} identities, pass={}", gs.family, r.identities.len(), r.pass());
        if let Some(s) = klein_similarity(&gs) {
            println!("  similarity pass={}", similarity_check(&gs, &s)?.pass());
        }
    }
    let ph = phase_equivalence_check(&build_klein_n1(), 6)?;
    println!("klein-n1 phase equivalence up to n=6: {}", ph.pass());
    for e in &ph.entries {
        println!("  n={} phase {}", e.n, e.phase.as_ref().map(|p| p.to_string()).unwrap_or("-".into()));
    }
    Ok(())
}

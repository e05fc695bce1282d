//! Euclidean gamma matrices with a diagonal fermion parity.
use superosc::clifford::{build_gamma_set, verify_clifford, verify_parity};

fn main() -> superosc::Result<()> {
    for n in 1..=3 {
        let gs = build_gamma_set(n)?;
        println!("n = {n}: {} gammas of size {}", gs.gammas.len(), gs.dim());
        println!("  clifford {:?}", verify_clifford(&gs).pass);
        println!("  parity   {:?}", verify_parity(&gs).pass);
    }
    let g2 = build_gamma_set(2)?;
    println!("gamma_1 at n=2:\n{}", g2.gamma(1));
    println!("F at n=2:\n{}", g2.parity);
    Ok(())
}

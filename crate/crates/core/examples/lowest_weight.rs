//! Lowest-weight vectors, symbolic in the deformation parameter.
use superosc::generators::{build_klein_n1, build_klein_n2, build_nonklein};
use superosc::spectral::lowest_weight_states;

fn main() {
    for gs in [build_klein_n1(), build_klein_n2(), build_nonklein()] {
        println!("{}", gs.family);
        for lw in lowest_weight_states(&gs) {
            println!(
                "  {:<10} component {} |x|^({}) e^(-x^2/2), E = {}, {}",
                lw.label,
                lw.component + 1,
                lw.exponent.to_poly(),
                lw.energy,
                if lw.is_bosonic() { "bosonic" } else { "fermionic" }
            );
        }
    }
}

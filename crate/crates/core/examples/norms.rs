//! Tower norms: recursion, Pochhammer closed form and exact Gaussian moments.
use superosc::algebra::rat;
use superosc::generators::{build_klein_n1, BETA};
use superosc::spectral::{inner, lowest_weight_states, norm_table, tower, Affine};

fn main() {
    let t = norm_table(1, 20, Some(&rat(1, 4)));
    println!("recursion equals closed form up to n=20: {}", t.agree);
    for e in t.entries.iter().take(6) {
        println!("  M_{} = {}", e.n, e.symbolic);
    }
    let zero = norm_table(-1, 5, Some(&rat(0, 1)));
    let vals: Vec<String> = zero.entries.iter().map(|e| format!("{}{}", e.value.as_ref().unwrap(), if e.pole { "*" } else { "" })).collect();
    println!("beta = 0 (* = removable pole): {}", vals.join(" "));

    // <n|n> as a multiple of Gamma(1/2 - eps beta), straight from the states
    let gs = build_klein_n1();
    let lw = &lowest_weight_states(&gs)[0];
    let base = lw.exponent.shift(&rat(1, 2));
    for s in tower(&gs, lw, 4) {
        let (num, den) = inner(&s.state, &s.state).ratio_to_gamma(&base).unwrap();
        println!("  <{0}|{0}> / Gamma({1}) = {num} / {den}", s.level, base.to_poly());
    }
    let _ = (BETA, Affine::default());
}

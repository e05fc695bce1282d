//! Solving the inverse-square deformation constraints.
use std::collections::BTreeSet;

use superosc::algebra::ParamPoly;
use superosc::defsolver::{check_rsym_multiplet, solve_ansatz, solve_candidate, Ansatz, DeformationCandidate};
use superosc::generators::NU;

fn main() -> superosc::Result<()> {
    // n = 1, M_I in span{i gamma_J F}
    let (sols, _) = solve_ansatz(&Ansatz::klein(1)?);
    for s in &sols {
        println!("klein n=1: {:?} free {:?} -> {}", s.assignment.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>(), s.free, s.classification);
    }

    // the non-Klein ansatz with a symbolic coefficient b
    let t = DeformationCandidate::nonklein(&ParamPoly::var("b"));
    let (sols, _) = solve_candidate(&t, &["b".to_string()], &BTreeSet::from([NU.to_string()]));
    for s in &sols {
        println!("nonklein: b = {} ({})", s.assignment["b"], s.classification);
    }

    for n in 1..=3 {
        let m = check_rsym_multiplet(&DeformationCandidate::klein(n)?);
        print!("klein n={n}: multiplet {} over {} brackets", if m.pass { "closes" } else { "fails" }, m.brackets_checked);
        match &m.witness {
            Some(w) => println!(", witness {}", w.bracket),
            None => println!(),
        }
    }
    Ok(())
}

//! Matrix-valued differential operators: composition, brackets, adjoints, grades.
use superosc::algebra::{rat, MatrixConst, Operator};
use superosc::generators::{build_klein_n1, dilatation};

fn main() -> superosc::Result<()> {
    let x = Operator::x_pow(1, 1);
    let d = Operator::d_pow(1, 1);
    println!("[d, x] = {}", d.commutator(&x)?);
    println!("(x d)^dagger = {}", x.compose(&d)?.adjoint());

    let gs = build_klein_n1();
    let h = gs.h();
    println!("H hermitian: {}", h.is_hermitian());
    let dil = dilatation(2);
    for name in ["H", "K", "Q1", "Qt2", "J"] {
        let g = gs.get(name).grade(&dil).map(|r| superosc::algebra::rat_string(&r));
        println!("grade({name}) = {}", g.unwrap_or_else(|| "none".into()));
    }
    // a constant matrix commutes with x but not with another matrix
    let s = Operator::constant(MatrixConst::identity(2).scale(&superosc::algebra::Scalar::from_rational(rat(1, 2))));
    println!("[1/2, x] is zero: {}", s.commutator(&Operator::x_pow(2, 1))?.is_zero());
    Ok(())
}

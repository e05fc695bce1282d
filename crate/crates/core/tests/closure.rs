use std::time::Instant;

use superosc::closure::{table_d21, table_osp22, table_osp2n2, verify_closure, verify_grading};
use superosc::generators::{build_klein_n1, build_klein_n2, build_nonklein, build_undeformed};

fn show_failures(r: &superosc::closure::ClosureReport) -> String {
    r.entries
        .iter()
        .filter(|e| !e.residual.is_zero())
        .map(|e| format!("{} -> {}", e.lhs(), e.residual))
        .collect::<Vec<_>>()
        .join("\n")
}

#[test]
fn klein_n1_closes_osp22() {
    let t = Instant::now();
    let r = verify_closure(&build_klein_n1(), &table_osp22()).unwrap();
    assert!(r.pass, "{}", show_failures(&r));
    eprintln!("klein-n1: {:?}", t.elapsed());
}

#[test]
fn klein_n2_closes_d21() {
    let r = verify_closure(&build_klein_n2(), &table_d21()).unwrap();
    assert!(r.pass, "{}", show_failures(&r));
}

#[test]
fn undeformed_closes_osp2n2() {
    for n in 1..=3 {
        let r = verify_closure(&build_undeformed(n).unwrap(), &table_osp2n2(n)).unwrap();
        assert!(r.pass, "n={n}\n{}", show_failures(&r));
    }
}

#[test]
fn nonklein_closes_osp22_with_identification() {
    let r = verify_closure(&build_nonklein(), &table_osp22()).unwrap();
    assert!(r.pass, "{}", show_failures(&r));
    let id = r.identification.unwrap();
    eprintln!("{id:?} after {} candidates", r.candidates_tried);
}

#[test]
fn tables_satisfy_jacobi() {
    for t in [table_osp22(), table_d21(), table_osp2n2(1), table_osp2n2(2)] {
        let r = t.verify_jacobi();
        assert!(r.pass, "{}: {:?}", t.algebra, r.failures.first());
    }
}

#[test]
fn grading_of_all_families() {
    for gs in [build_klein_n1(), build_klein_n2(), build_nonklein(), build_undeformed(2).unwrap()] {
        let r = verify_grading(&gs);
        assert!(r.pass, "{:?}", r.grades.iter().filter(|g| !g.ok).collect::<Vec<_>>());
    }
}

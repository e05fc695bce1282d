//! Every bracket of each model checked against its superalgebra table.
use std::time::Instant;

use superosc::closure::{table_d21, table_osp22, table_osp2n2, verify_closure};
use superosc::generators::{build_klein_n1, build_klein_n2, build_nonklein, build_undeformed};

fn main() -> superosc::Result<()> {
    let mut jobs = vec![
        (build_klein_n1(), table_osp22()),
        (build_klein_n2(), table_d21()),
        (build_nonklein(), table_osp22()),
    ];
    for n in 1..=3 {
        jobs.push((build_undeformed(n)?, table_osp2n2(n)));
    }
    for (gs, table) in &jobs {
        let t = Instant::now();
        let r = verify_closure(gs, table)?;
        println!("{:<14} {:<16} pass={} brackets={} ({:.2?})", r.model, r.algebra, r.pass, r.entries.len(), t.elapsed());
        if let Some(id) = &r.identification {
            for s in id {
                print!(" {}={}*{}", s.slot, s.phase, s.source);
            }
            println!();
        }
    }
    let j = table_d21().verify_jacobi();
    println!("Jacobi for {}: {} triples, pass={}", j.algebra, j.triples, j.pass);
    Ok(())
}

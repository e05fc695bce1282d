//! Hilbert-space options from normalizability of the lowest-weight vectors.
use superosc::algebra::rat;
use superosc::hilbert::{classify_dff, classify_klein_n1, classify_klein_n2};

fn main() -> superosc::Result<()> {
    for b in [rat(-1, 1), rat(-1, 5), rat(0, 1), rat(1, 4), rat(1, 2)] {
        let r = classify_klein_n1(&b)?;
        let ids: Vec<_> = r.options.iter().map(|o| o.id.as_str()).collect();
        println!("klein-n1 beta={}: case {} options {:?}", r.param.1, r.case, ids);
    }
    let r = classify_klein_n2(&rat(1, 5))?;
    println!("klein-n2 beta=1/5: alpha={} domains {:?} flags {:?}", r.alpha.as_ref().unwrap(), r.domains, r.flags);
    for g in [rat(-1, 4), rat(-1, 10), rat(0, 1), rat(1, 2), rat(3, 4), rat(1, 1)] {
        let r = classify_dff(&g);
        let ids: Vec<_> = r.options.iter().map(|o| format!("{}:{:?}", o.id, o.boundary)).collect();
        println!("dff g={}: case {} {:?}", r.param.1, r.case, ids);
    }
    // selections are explicit
    let chosen = classify_klein_n1(&rat(1, 4))?.choose("iiia-fer")?;
    println!("chosen: {:?}", chosen.chosen);
    Ok(())
}

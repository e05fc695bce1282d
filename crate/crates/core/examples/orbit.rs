//! The S3 orbit of alpha and the six fundamental domains.
use superosc::algebra::{rat, rat_string};
use superosc::hilbert::{fundamental_domain, s3_orbit};

fn main() {
    let r = s3_orbit(&rat(1, 1));
    println!("orbit(1) = {:?}", r.values().iter().map(rat_string).collect::<Vec<_>>());
    for a in [rat(-2, 1), rat(-1, 1), rat(-1, 2), rat(0, 1), rat(1, 1), rat(3, 7)] {
        let fds: Vec<String> = fundamental_domain(&a).iter().map(|d| d.to_string()).collect();
        let orbit = s3_orbit(&a);
        println!("alpha={:<5} domains {:<10} orbit {:?}{}", rat_string(&a), fds.join(","), orbit.values().iter().map(rat_string).collect::<Vec<_>>(), if orbit.degenerate { " (degenerate)" } else { "" });
    }
}

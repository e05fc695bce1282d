use crate::algebra::{rat, ParamPoly, Scalar};
use crate::generators::{pair_name, BETA};

use super::table::{combo_add, BracketTable, Combo};

fn num(re: i64, im: i64, den: i64) -> ParamPoly {
    ParamPoly::constant(Scalar::gaussian(rat(re, den), rat(im, den)))
}

fn one(name: &str, c: ParamPoly) -> Combo {
    let mut out = Combo::new();
    combo_add(&mut out, name, &c);
    out
}

/// Levi-Civita symbol on {1,2,3}.
pub fn eps3(i: usize, j: usize, k: usize) -> i64 {
    match (i, j, k) {
        (1, 2, 3) | (2, 3, 1) | (3, 1, 2) => 1,
        (3, 2, 1) | (1, 3, 2) | (2, 1, 3) => -1,
        _ => 0,
    }
}

/// `ε_{12} = -ε_{21} = 1`.
pub fn eps2(i: usize, j: usize) -> i64 {
    match (i, j) {
        (1, 2) => 1,
        (2, 1) => -1,
        _ => 0,
    }
}

/// Shared conformal part: `sl(2)` and its action on `Q_I`, `Q̃_I`, plus
/// `{Q_I,Q_J} = 2δH`, `{Q̃_I,Q̃_J} = 2δK`, `{Q_I,Q̃_I} = -2D`.
fn conformal_core(t: &mut BracketTable, m: usize) {
    t.add_generator("H", false);
    t.add_generator("D", false);
    t.add_generator("K", false);
    for i in 1..=m {
        t.add_generator(format!("Q{i}"), true);
    }
    for i in 1..=m {
        t.add_generator(format!("Qt{i}"), true);
    }
}

fn conformal_entries(t: &mut BracketTable, m: usize) {
    t.set("D", "K", one("K", num(0, -1, 1)));
    t.set("D", "H", one("H", num(0, 1, 1)));
    t.set("H", "K", one("D", num(0, -2, 1)));
    for i in 1..=m {
        let (q, qt) = (format!("Q{i}"), format!("Qt{i}"));
        t.set(&q, &q, one("H", num(2, 0, 1)));
        t.set(&qt, &qt, one("K", num(2, 0, 1)));
        t.set(&q, &qt, one("D", num(-2, 0, 1)));
        t.set("D", &q, one(&q, num(0, 1, 2)));
        t.set("D", &qt, one(&qt, num(0, -1, 2)));
        t.set(&q, "K", one(&qt, num(0, 1, 1)));
        t.set(&qt, "H", one(&q, num(0, -1, 1)));
    }
}

/// `osp(2|2)` with `u(1)` generator `J`.
pub fn table_osp22() -> BracketTable {
    let mut t = BracketTable::new("osp(2|2)");
    conformal_core(&mut t, 2);
    t.add_generator("J", false);
    conformal_entries(&mut t, 2);
    for i in 1..=2 {
        for j in 1..=2 {
            let e = eps2(i, j);
            if e == 0 {
                continue;
            }
            t.add(&format!("Q{i}"), &format!("Qt{j}"), "J", num(e, 0, 1));
            t.set("J", &format!("Q{i}"), one(&format!("Q{j}"), num(0, -e, 1)));
            t.set("J", &format!("Qt{i}"), one(&format!("Qt{j}"), num(0, -e, 1)));
        }
    }
    t
}

/// Coefficient and generator of `Σ_IJ` in terms of the stored `Σ_{min,max}`.
fn sigma(i: usize, j: usize) -> Option<(i64, String)> {
    match i.cmp(&j) {
        std::cmp::Ordering::Less => Some((1, pair_name("Sigma", i, j))),
        std::cmp::Ordering::Greater => Some((-1, pair_name("Sigma", j, i))),
        std::cmp::Ordering::Equal => None,
    }
}

fn add_sigma(c: &mut Combo, i: usize, j: usize, coeff: i64) {
    if let Some((s, name)) = sigma(i, j) {
        combo_add(c, &name, &num(0, s * coeff, 1));
    }
}

/// `osp(2n|2)` with `so(2n)` R-symmetry `Σ_IJ`.
pub fn table_osp2n2(n: usize) -> BracketTable {
    let m = 2 * n;
    let mut t = BracketTable::new(format!("osp({m}|2)"));
    conformal_core(&mut t, m);
    for i in 1..=m {
        for j in i + 1..=m {
            t.add_generator(pair_name("Sigma", i, j), false);
        }
    }
    conformal_entries(&mut t, m);
    for i in 1..=m {
        for j in 1..=m {
            if let Some((s, name)) = sigma(i, j) {
                t.add(&format!("Q{i}"), &format!("Qt{j}"), &name, num(s, 0, 1));
            }
        }
    }
    let pairs: Vec<(usize, usize)> = (1..=m).flat_map(|i| (i + 1..=m).map(move |j| (i, j))).collect();
    for &(i, j) in &pairs {
        let s_ij = pair_name("Sigma", i, j);
        // [Σ_IJ, Q_K] = -iδ_IK Q_J + iδ_JK Q_I, same for Q̃.
        for prefix in ["Q", "Qt"] {
            t.set(&s_ij, &format!("{prefix}{i}"), one(&format!("{prefix}{j}"), num(0, -1, 1)));
            t.set(&s_ij, &format!("{prefix}{j}"), one(&format!("{prefix}{i}"), num(0, 1, 1)));
        }
        // [Σ_IJ, Σ_KL] = -i(δ_IK Σ_JL - δ_IL Σ_JK - δ_JK Σ_IL + δ_JL Σ_IK)
        for &(k, l) in &pairs {
            if (k, l) <= (i, j) {
                continue;
            }
            let mut c = Combo::new();
            let d = |a: usize, b: usize| a == b;
            if d(i, k) {
                add_sigma(&mut c, j, l, -1);
            }
            if d(i, l) {
                add_sigma(&mut c, j, k, 1);
            }
            if d(j, k) {
                add_sigma(&mut c, i, l, 1);
            }
            if d(j, l) {
                add_sigma(&mut c, i, k, -1);
            }
            if !c.is_empty() {
                t.set(&s_ij, &pair_name("Sigma", k, l), c);
            }
        }
    }
    t
}

/// `W_ij` for any ordered pair as `(sign, stored name)`.
fn w(i: usize, j: usize) -> Option<(i64, String)> {
    match i.cmp(&j) {
        std::cmp::Ordering::Less => Some((1, pair_name("W", i, j))),
        std::cmp::Ordering::Greater => Some((-1, pair_name("W", j, i))),
        std::cmp::Ordering::Equal => None,
    }
}

fn add_w(c: &mut Combo, i: usize, j: usize, coeff: &ParamPoly) {
    if let Some((s, name)) = w(i, j) {
        combo_add(c, &name, &coeff.scale(&Scalar::from_int(s)));
    }
}

/// `W̃_ij = W_ij - 2β ε_ijk S_k`, scaled by `coeff`.
fn add_wt(c: &mut Combo, i: usize, j: usize, coeff: &ParamPoly) {
    add_w(c, i, j, coeff);
    let beta = ParamPoly::var(BETA);
    for k in 1..=3 {
        let e = eps3(i, j, k);
        if e != 0 {
            combo_add(c, &format!("S{k}"), &(&beta * coeff).scale(&Scalar::from_int(-2 * e)));
        }
    }
}

/// `D(2,1;α)` in the basis `H, D, K, Q_I, Q̃_I, S_i, W_ij` with symbolic `β`
/// and `α = β - 1/2`.
pub fn table_d21() -> BracketTable {
    let mut t = BracketTable::new("D(2,1;alpha)");
    t.parameter_map = Some("alpha = beta - 1/2".into());
    conformal_core(&mut t, 4);
    for i in 1..=3 {
        t.add_generator(format!("S{i}"), false);
    }
    for i in 1..=3 {
        for j in i + 1..=3 {
            t.add_generator(pair_name("W", i, j), false);
        }
    }
    conformal_entries(&mut t, 4);
    let beta = ParamPoly::var(BETA);
    let ib = |c: i64| beta.scale(&Scalar::gaussian(rat(0, 1), rat(c, 1)));
    for i in 1..=3 {
        let s = format!("S{i}");
        t.set("Q4", &format!("Qt{i}"), one(&s, num(1, 0, 1)));
        t.set("Qt4", &format!("Q{i}"), one(&s, num(-1, 0, 1)));
        for j in 1..=3 {
            if let Some((sg, name)) = w(i, j) {
                t.set(&format!("Q{i}"), &format!("Qt{j}"), one(&name, num(sg, 0, 1)));
            }
        }
        for (p4, p) in [("Q4", "Q"), ("Qt4", "Qt")] {
            // [Q_4, S_i] = i Q_i
            t.set(p4, &s, one(&format!("{p}{i}"), num(0, 1, 1)));
            // [Q_i, S_j] = -iδ_ij Q_4 + 2iβ ε_ijk Q_k
            for j in 1..=3 {
                let mut c = Combo::new();
                if i == j {
                    combo_add(&mut c, p4, &num(0, -1, 1));
                }
                for k in 1..=3 {
                    combo_add(&mut c, &format!("{p}{k}"), &ib(2 * eps3(i, j, k)));
                }
                t.set(&format!("{p}{i}"), &format!("S{j}"), c);
            }
        }
    }
    for j in 1..=3 {
        for k in j + 1..=3 {
            let wjk = pair_name("W", j, k);
            for (p4, p) in [("Q4", "Q"), ("Qt4", "Qt")] {
                // [Q_4, W_jk] = -2iβ ε_jkl Q_l
                let mut c = Combo::new();
                for l in 1..=3 {
                    combo_add(&mut c, &format!("{p}{l}"), &ib(-2 * eps3(j, k, l)));
                }
                t.set(p4, &wjk, c);
                // [Q_i, W_jk] = i(δ_ij Q_k - δ_ik Q_j) + 2iβ ε_ijk Q_4
                for i in 1..=3 {
                    let mut c = Combo::new();
                    if i == j {
                        combo_add(&mut c, &format!("{p}{k}"), &num(0, 1, 1));
                    }
                    if i == k {
                        combo_add(&mut c, &format!("{p}{j}"), &num(0, -1, 1));
                    }
                    combo_add(&mut c, p4, &ib(2 * eps3(i, j, k)));
                    t.set(&format!("{p}{i}"), &wjk, c);
                }
            }
        }
    }
    let i1 = num(0, 1, 1);
    for i in 1..=3 {
        for j in i + 1..=3 {
            // [S_i, S_j] = -i W_ij + 2iβ ε_ijk S_k
            let mut c = Combo::new();
            add_w(&mut c, i, j, &num(0, -1, 1));
            for k in 1..=3 {
                combo_add(&mut c, &format!("S{k}"), &ib(2 * eps3(i, j, k)));
            }
            t.set(&format!("S{i}"), &format!("S{j}"), c);
        }
    }
    // S_k - β ε_klm W_lm, summed over l, m.
    let s_shift = |k: usize| {
        let mut c = Combo::new();
        combo_add(&mut c, &format!("S{k}"), &ParamPoly::one());
        for l in 1..=3 {
            for m in 1..=3 {
                let e = eps3(k, l, m);
                if e != 0 {
                    add_w(&mut c, l, m, &beta.scale(&Scalar::from_int(-e)));
                }
            }
        }
        c
    };
    for i in 1..=3 {
        for j in 1..=3 {
            for k in j + 1..=3 {
                // [S_i, W_jk] = iδ_ij(S_k - βε_klm W_lm) - iδ_ik(S_j - βε_jlm W_lm)
                let mut c = Combo::new();
                if i == j {
                    for (n, v) in s_shift(k) {
                        combo_add(&mut c, &n, &(&v * &i1));
                    }
                }
                if i == k {
                    for (n, v) in s_shift(j) {
                        combo_add(&mut c, &n, &(&v * &-&i1));
                    }
                }
                t.set(&format!("S{i}"), &pair_name("W", j, k), c);
            }
        }
    }
    let pairs = [(1, 2), (1, 3), (2, 3)];
    for (a, &(i, j)) in pairs.iter().enumerate() {
        for &(k, l) in &pairs[a + 1..] {
            // [W_ij, W_kl] = i(δ_ik W̃_lj - δ_il W̃_kj + δ_jk W̃_il - δ_jl W̃_ik)
            let mut c = Combo::new();
            if i == k {
                add_wt(&mut c, l, j, &i1);
            }
            if i == l {
                add_wt(&mut c, k, j, &-&i1);
            }
            if j == k {
                add_wt(&mut c, i, l, &i1);
            }
            if j == l {
                add_wt(&mut c, i, k, &-&i1);
            }
            t.set(&pair_name("W", i, j), &pair_name("W", k, l), c);
        }
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn osp22_sample_entries() {
        let t = table_osp22();
        assert_eq!(t.bracket("J", "Q1"), one("Q2", num(0, -1, 1)));
        assert_eq!(t.bracket("Qt1", "Qt1"), one("K", num(2, 0, 1)));
        let mut c = one("D", num(-2, 0, 1));
        assert_eq!(t.bracket("Q1", "Qt1"), c);
        combo_add(&mut c, "D", &num(2, 0, 1));
        combo_add(&mut c, "J", &num(1, 0, 1));
        assert_eq!(t.bracket("Q1", "Qt2"), c);
        // graded antisymmetry of the mirrored lookup
        assert_eq!(t.bracket("Q2", "J"), one("Q1", num(0, -1, 1)));
    }

    #[test]
    fn osp2n2_compact_entries() {
        let t = table_osp2n2(2);
        assert_eq!(t.bracket("Sigma13", "Q1"), one("Q3", num(0, -1, 1)));
        assert_eq!(t.bracket("Sigma13", "Qt3"), one("Qt1", num(0, 1, 1)));
        assert_eq!(t.bracket("H", "Qt2"), one("Q2", num(0, 1, 1)));
        assert_eq!(t.bracket("Sigma12", "Sigma13"), one("Sigma23", num(0, -1, 1)));
    }

    #[test]
    fn d21_at_zero_beta_has_no_beta_terms() {
        let t = table_d21().substitute(&[(BETA.to_string(), rat(0, 1))].into());
        for (_, c) in t.entries() {
            for v in c.values() {
                assert!(v.vars().is_empty());
            }
        }
        let full = table_d21();
        let c = full.bracket("Q1", "S2");
        assert_eq!(c.get("Q3"), Some(&ParamPoly::var(BETA).scale(&Scalar::gaussian(rat(0, 1), rat(2, 1)))));
    }
}

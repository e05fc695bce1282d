use std::collections::BTreeMap;

use proptest::prelude::*;
use superosc::algebra::{rat, rat_to_f64, MatrixConst, Operator, ParamPoly, Rational, Scalar};
use superosc::generators::BETA;
use superosc::hilbert::{fundamental_domain, is_degenerate_alpha, s3_orbit, FundamentalDomain};
use superosc::numcheck::{quad_norm, tridiagonal_lowest};
use superosc::spectral::{norm_closed_form, norm_recursion, special::gamma, Affine, StateFn};

fn rational() -> impl Strategy<Value = Rational> {
    (-40i64..=40, 1i64..=12).prop_map(|(p, q)| rat(p, q))
}

/// Scalar operator `Σ c_{k,m} x^k ∂^m` with small integer coefficients.
fn operator() -> impl Strategy<Value = Operator> {
    prop::collection::vec((-2i32..=2, 0u32..=2, -3i64..=3), 1..4).prop_map(|terms| {
        terms.into_iter().fold(Operator::zero(1), |acc, (k, m, c)| {
            let mat = MatrixConst::identity(1).scale(&Scalar::from_int(c));
            &acc + &Operator::mono(k, m, mat)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn orbit_is_closed(a in rational()) {
        let orbit = s3_orbit(&a).values();
        for b in &orbit {
            prop_assert_eq!(&s3_orbit(b).values(), &orbit);
        }
    }

    #[test]
    fn generic_orbit_meets_every_domain_once(a in rational()) {
        let orbit = s3_orbit(&a).values();
        prop_assume!(!is_degenerate_alpha(&a) && orbit.len() == 6);
        for fd in FundamentalDomain::ALL {
            let hits = orbit.iter().filter(|v| fd.contains(v)).count();
            prop_assert!(hits >= 1, "{fd} misses orbit of {a}");
        }
        for v in &orbit {
            prop_assert!(!fundamental_domain(v).is_empty());
        }
    }

    #[test]
    fn commutator_is_antisymmetric_and_jacobi(a in operator(), b in operator(), c in operator()) {
        let ab = a.commutator(&b).unwrap();
        prop_assert!((&ab + &b.commutator(&a).unwrap()).is_zero());
        let j = &(&a.commutator(&b.commutator(&c).unwrap()).unwrap()
            + &b.commutator(&c.commutator(&a).unwrap()).unwrap())
            + &c.commutator(&a.commutator(&b).unwrap()).unwrap();
        prop_assert!(j.is_zero());
    }

    #[test]
    fn adjoint_reverses_products(a in operator(), b in operator()) {
        let lhs = a.compose(&b).unwrap().adjoint();
        let rhs = b.adjoint().compose(&a.adjoint()).unwrap();
        prop_assert_eq!(lhs, rhs.clone());
        prop_assert_eq!(rhs.adjoint().adjoint(), rhs);
    }

    #[test]
    fn norm_recursion_matches_closed_form_at_rational_beta(b in rational(), eps in prop::sample::select(vec![1i8, -1])) {
        let at = BTreeMap::from([(BETA.to_string(), b)]);
        for (n, m) in norm_recursion(eps, 8).iter().enumerate() {
            prop_assert_eq!(m.substitute(&at), norm_closed_form(eps, n as u32).substitute(&at));
        }
    }

    #[test]
    fn quadrature_matches_gamma(num in -9i64..60) {
        // |x|^p e^{-x²/2} has squared norm Γ(p + ½)
        let r = rat(num, 20);
        let s = StateFn::single(1, 0, Affine::constant(r.clone()), ParamPoly::one());
        let q = quad_norm(&s, &BTreeMap::new()).unwrap();
        let g = gamma(rat_to_f64(&r) + 0.5).unwrap();
        prop_assert!((q - g).abs() <= 1e-8 * g.max(1.0), "{q} vs {g}");
    }

    #[test]
    fn sturm_bisection_on_diagonal(d in prop::collection::vec(-5.0f64..5.0, 3..12)) {
        let mut sorted = d.clone();
        sorted.sort_by(f64::total_cmp);
        let ev = tridiagonal_lowest(&d, &vec![0.0; d.len() - 1], d.len());
        for (a, b) in ev.iter().zip(&sorted) {
            prop_assert!((a - b).abs() < 1e-10);
        }
    }
}

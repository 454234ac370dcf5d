use proptest::prelude::*;
use resurf::fuzz::{case_rng, random_bipoly, random_cv, random_nonzero, random_series};
use resurf::laurent::{
    expand_rational, jacobian, pullback_form, substitute_cv, TruncCtx, UniLaurent, VSeries,
};
use resurf::{BiPoly, Field, UniRat};

fn ctx(q: u64) -> TruncCtx {
    TruncCtx { field: Field::with_order(q).unwrap(), u_precision: 24 }
}

fn fields() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![4u64, 5, 7])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn valuation_is_preserved(q in prop::sample::select(vec![5u64, 7]), seed in any::<u64>(), n in -3i64..=3) {
        let c = ctx(q);
        let mut rng = case_rng(seed, 0);
        let s = random_series(&mut rng, c, 2, 3, 4);
        let lead = VSeries::monomial(c, random_nonzero(&mut rng, c.field), 0, n, 4 + n);
        let s = s.shift(n + 3).add(&lead).unwrap();
        let (f, g) = random_cv(&mut rng, c, 10);
        let r = substitute_cv(&s, &f, &g).unwrap();
        prop_assert_eq!(r.valuation(), Some(n));
    }

    #[test]
    fn two_residue_is_invariant(q in fields(), seed in any::<u64>(), pole in 1i64..=4) {
        let c = ctx(q);
        let mut rng = case_rng(seed, 1);
        let s = random_series(&mut rng, c, pole, 3, 2);
        let (f, g) = random_cv(&mut rng, c, 10);
        let r = pullback_form(&s, &f, &g).unwrap();
        prop_assert_eq!(r.residue2_coeff().unwrap(), s.residue2_coeff().unwrap());
    }

    #[test]
    fn exact_differentials_have_no_residue(q in fields(), seed in any::<u64>()) {
        let c = ctx(q);
        let mut rng = case_rng(seed, 2);
        let a = random_series(&mut rng, c, 2, 3, 4);
        let b = random_series(&mut rng, c, 2, 3, 4);
        let jac = jacobian(&a, &b).unwrap();
        prop_assert!(jac.rho().unwrap().residue().unwrap().is_zero());
        let (f, g) = random_cv(&mut rng, c, 10);
        let r = substitute_cv(&jac, &f, &g).unwrap().mul(&jacobian(&f, &g).unwrap()).unwrap();
        prop_assert!(r.residue2_coeff().unwrap().is_zero());
    }

    #[test]
    fn exact_mode_jacobian_has_no_residue(q in fields(), seed in any::<u64>()) {
        let field = Field::with_order(q).unwrap();
        let mut rng = case_rng(seed, 3);
        let den = |rng: &mut _| {
            let mut d = random_bipoly(rng, field, 2, 2);
            d = &d + &BiPoly::constant(random_nonzero(rng, field));
            &d * &BiPoly::from_terms(field, &[(1, 1, 1)])
        };
        let (n1, d1) = (random_bipoly(&mut rng, field, 2, 2), den(&mut rng));
        let (n2, d2) = (random_bipoly(&mut rng, field, 2, 2), den(&mut rng));
        let a = expand_rational::<UniRat>(&n1, &d1, field, 6).unwrap();
        let b = expand_rational::<UniRat>(&n2, &d2, field, 6).unwrap();
        let jac = jacobian(&a, &b).unwrap();
        prop_assert!(jac.residue2_coeff().unwrap().is_zero());
    }

    #[test]
    fn simple_pole_rho_follows_the_curve_change(q in fields(), seed in any::<u64>()) {
        let c = ctx(q);
        let mut rng = case_rng(seed, 4);
        let s = random_series(&mut rng, c, 1, 3, 3);
        let (f, g) = random_cv(&mut rng, c, 10);
        let lhs = pullback_form(&s, &f, &g).unwrap().rho().unwrap();
        let f0 = f.coefficient(0).unwrap();
        let rhs = s.rho().unwrap().compose(&f0, c.u_precision).unwrap().mul(&f0.derivative());
        prop_assert!(lhs.agrees_with(&rhs), "{} vs {}", lhs, rhs);
    }

    #[test]
    fn exact_and_truncated_modes_agree(q in fields(), seed in any::<u64>()) {
        let c = ctx(q);
        let mut rng = case_rng(seed, 5);
        let num = random_bipoly(&mut rng, c.field, 2, 2);
        let den = &random_bipoly(&mut rng, c.field, 2, 2) * &BiPoly::from_terms(c.field, &[(2, 1, 1)]);
        prop_assume!(!den.is_zero());
        let ex = expand_rational::<UniRat>(&num, &den, c.field, 5).unwrap();
        match expand_rational::<UniLaurent>(&num, &den, c, 5) {
            Ok(tr) => prop_assert!(ex.to_truncated(8, c.u_precision).agrees_with(&tr)),
            Err(e) => prop_assert!(matches!(e, resurf::Error::Precision(_))),
        }
    }

    #[test]
    fn truncated_input_windows_are_sound(q in fields(), seed in any::<u64>(), h in -2i64..=2) {
        let c = ctx(q);
        let mut rng = case_rng(seed, 6);
        let s = random_series(&mut rng, c, 2, 5, 3);
        let cut: Vec<UniLaurent> = s.coeffs().iter().map(|x| x.truncate(h)).collect();
        let t = VSeries::new(c, s.lo(), cut, s.hi());
        let (f, g) = random_cv(&mut rng, c, 8);
        let full = substitute_cv(&s, &f, &g).unwrap();
        let part = substitute_cv(&t, &f, &g).unwrap();
        prop_assert!(part.agrees_with(&full), "{} vs {}", part, full);
    }
}

use proptest::prelude::*;
use resurf::fuzz::{case_rng, random_bipoly, random_line, random_line_form, random_nonzero};
use resurf::surface::{
    intersect, intersection_multiplicity, res1, res2, res2_truncated, res2_two_step, verify_rf1, verify_rf2,
    verify_rf3, Curve, Divisor, Res1, Surface, SurfacePoint, TwoForm,
};
use resurf::{BiPoly, BiRat, Field};

fn surface(q: u64, p2: bool) -> Surface {
    let f = Field::with_order(q).unwrap();
    if p2 {
        Surface::p2(f)
    } else {
        Surface::p1xp1(f)
    }
}

fn fields() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![4u64, 5, 7])
}

/// Rational points of C1 ∩ C2.
fn rational_meets(s: &Surface, a: &Curve, b: &Curve) -> Vec<SurfacePoint> {
    intersect(s, a, b).unwrap().into_iter().filter(|o| o.degree() == 1).map(|o| o.points[0]).collect()
}

/// Pole components of the form as (curve, order).
fn poles(w: &TwoForm) -> Vec<(Curve, i64)> {
    w.divisor().unwrap().iter().filter(|(_, &k)| k < 0).map(|(c, &k)| (c.clone(), -k)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn rf1_sums_vanish(q in fields(), p2 in any::<bool>(), seed in any::<u64>(), n in 1usize..=3) {
        let s = surface(q, p2);
        let mut rng = case_rng(seed, 10);
        let (w, _) = random_line_form(&mut rng, s, n);
        for (c, _) in poles(&w) {
            let r = verify_rf1(&w, &c).unwrap();
            prop_assert!(r.pass, "{} along {}: {:?}", w.fmt_h(), c, r);
        }
    }

    #[test]
    fn rf2_sums_vanish(q in fields(), p2 in any::<bool>(), seed in any::<u64>(), n in 2usize..=4) {
        let s = surface(q, p2);
        let mut rng = case_rng(seed, 11);
        let (w, lines) = random_line_form(&mut rng, s, n);
        for p in rational_meets(&s, &lines[0], &lines[1]) {
            let r = verify_rf2(&w, &p).unwrap();
            prop_assert!(r.pass, "{} at {}: {:?}", w.fmt_h(), s.fmt_point(&p), r);
        }
    }

    #[test]
    fn rf3_sums_vanish(q in fields(), p2 in any::<bool>(), seed in any::<u64>(), n in 2usize..=3, mask in any::<u32>()) {
        let s = surface(q, p2);
        let mut rng = case_rng(seed, 12);
        let (w, _) = random_line_form(&mut rng, s, n);
        let (mut da, mut db) = (Divisor::zero(), Divisor::zero());
        for (i, (c, k)) in poles(&w).into_iter().enumerate() {
            if mask >> (i % 32) & 1 == 1 { da.add_term(c, k) } else { db.add_term(c, k) }
        }
        prop_assume!(!da.is_zero() && !db.is_zero());
        let r = verify_rf3(&w, &da, &db).unwrap();
        prop_assert!(r.pass, "{} with {} / {}: {:?}", w.fmt_h(), da, db, r);
    }

    #[test]
    fn residue_is_independent_of_the_local_parameter(q in fields(), seed in any::<u64>()) {
        let s = surface(q, true);
        let mut rng = case_rng(seed, 13);
        let (w, lines) = random_line_form(&mut rng, s, 3);
        let c = &lines[0];
        prop_assume!(!c.eq().coeff(1, 0).is_zero() && !c.eq().coeff(0, 1).is_zero());
        for p in rational_meets(&s, c, &lines[1]).into_iter().filter(|p| p.chart() == 0) {
            let a = res2(&w, c, &p).unwrap();
            prop_assert_eq!(res2_truncated(&w, c, &p, 4, false).unwrap(), a);
            prop_assert_eq!(res2_truncated(&w, c, &p, 4, true).unwrap(), a);
        }
    }

    #[test]
    fn lone_pole_has_no_residue(q in fields(), seed in any::<u64>(), k in 1u32..=3) {
        let f = Field::with_order(q).unwrap();
        let s = Surface::p2(f);
        let mut rng = case_rng(seed, 14);
        let c = random_line(&mut rng, f);
        let num = random_bipoly(&mut rng, f, 2, 2);
        prop_assume!(!num.is_zero());
        let w = TwoForm::new(s, BiRat::new(num, c.eq().pow(k)).unwrap()).unwrap();
        for p in s.rational_points().into_iter().filter(|p| p.chart() == 0) {
            if c.eq().eval(p.coords().0, p.coords().1).is_zero() {
                prop_assert!(res2(&w, &c, &p).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn simple_pole_residue_valuation(q in fields(), p2 in any::<bool>(), seed in any::<u64>()) {
        let s = surface(q, p2);
        let mut rng = case_rng(seed, 15);
        let (w, lines) = random_line_form(&mut rng, s, 3);
        let div = w.divisor().unwrap();
        let c = &lines[0];
        prop_assume!(div.coeff(c) == -1);
        let rest = div.add(&Divisor::single(c.clone(), 1));
        for l in &lines[1..] {
            for p in rational_meets(&s, c, l) {
                let Res1::Exact(r) = res1(&w, c, &p).unwrap() else { unreachable!() };
                let m = intersection_multiplicity(&s, c, &rest, &p).unwrap();
                prop_assert_eq!(r.valuation(), Some(m));
            }
        }
    }

    #[test]
    fn residue_is_linear_in_regular_functions(q in fields(), seed in any::<u64>()) {
        let f = Field::with_order(q).unwrap();
        let s = Surface::p2(f);
        let mut rng = case_rng(seed, 16);
        let (w, lines) = random_line_form(&mut rng, s, 3);
        let div = w.divisor().unwrap();
        let c = &lines[0];
        prop_assume!(div.coeff(c) == -1);
        let rest = div.add(&Divisor::single(c.clone(), 1));
        let g = &random_bipoly(&mut rng, f, 2, 2) + &BiPoly::constant(random_nonzero(&mut rng, f));
        let gw = w.mul_function(&BiRat::from_poly(g.clone())).unwrap();
        for l in &lines[1..] {
            for p in rational_meets(&s, c, l).into_iter().filter(|p| p.chart() == 0) {
                if intersection_multiplicity(&s, c, &rest, &p).unwrap() >= -1 {
                    let (a, b) = p.coords();
                    prop_assert_eq!(res2(&gw, c, &p).unwrap(), g.eval(a, b) * res2(&w, c, &p).unwrap());
                }
            }
        }
    }

    #[test]
    fn exact_truncated_and_two_step_agree(q in fields(), p2 in any::<bool>(), seed in any::<u64>()) {
        let s = surface(q, p2);
        let mut rng = case_rng(seed, 17);
        let (w, lines) = random_line_form(&mut rng, s, 3);
        let c = &lines[0];
        for l in &lines[1..] {
            for p in rational_meets(&s, c, l) {
                let a = res2(&w, c, &p).unwrap();
                prop_assert_eq!(res2_truncated(&w, c, &p, 4, false).unwrap(), a);
                if let Some(b) = res2_two_step(&w, c, &p).unwrap() {
                    prop_assert_eq!(b, a);
                }
            }
        }
    }
}

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;
use resurf::agcodes::{
    canonical_form_omega0, construct_convenient_pair, differential_code, functional_code, g_mn,
    verify_diff_equals_functional, ZeroCycle,
};
use resurf::fuzz::{case_rng, random_line};
use resurf::surface::{Curve, Divisor, Surface};
use resurf::{Field, FieldElement};

fn surface(q: u64, p2: bool) -> Surface {
    let f = Field::with_order(q).unwrap();
    if p2 {
        Surface::p2(f)
    } else {
        Surface::p1xp1(f)
    }
}

/// Points with pairwise distinct x and pairwise distinct y.
fn scattered(s: &Surface, seed: u64, k: usize) -> ZeroCycle {
    let mut rng = case_rng(seed, 0);
    let mut xs: Vec<FieldElement> = s.field.elements().collect();
    let mut ys = xs.clone();
    xs.shuffle(&mut rng);
    ys.shuffle(&mut rng);
    let pts = xs.into_iter().zip(ys).take(k).map(|(a, b)| s.affine_point(a, b)).collect();
    ZeroCycle::new(s, pts).unwrap()
}

/// Boundary part plus, sometimes, a line missing Δ.
fn random_g(s: &Surface, delta: &ZeroCycle, seed: u64) -> Divisor {
    let mut rng = case_rng(seed, 1);
    let f = s.field;
    let mut g = match s.kind {
        resurf::surface::SurfaceKind::P2 => Divisor::single(Curve::linf(f), rng.gen_range(-1..=3)),
        _ => g_mn(s, rng.gen_range(-1..=3), rng.gen_range(-1..=3)),
    };
    if rng.gen_bool(0.5) {
        for _ in 0..20 {
            let l = random_line(&mut rng, f);
            if delta.points().iter().all(|p| !s.passes_through(&l, p).unwrap()) {
                g.add_term(l, if rng.gen_bool(0.5) { 1 } else { -1 });
                break;
            }
        }
    }
    g
}

fn dot(a: &[FieldElement], b: &[FieldElement]) -> FieldElement {
    a.iter().zip(b).fold(a[0].field().zero(), |acc, (&x, &y)| acc + x * y)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(30))]

    #[test]
    fn residues_over_delta_sum_to_zero(q in prop::sample::select(vec![5u64, 7]), p2 in any::<bool>(), seed in any::<u64>(), k in 1usize..=4) {
        let s = surface(q, p2);
        let delta = scattered(&s, seed, k);
        let pair = construct_convenient_pair(&s, &delta).unwrap();
        let g = random_g(&s, &delta, seed);
        // Forms in Ω²(G − D) have poles only along D when G ≥ 0.
        prop_assume!(g.is_effective());
        let c = differential_code(&s, &delta, &pair, &g).unwrap().code;
        for r in c.rows() {
            prop_assert!(r.iter().fold(s.field.zero(), |a, &x| a + x).is_zero());
        }
    }

    #[test]
    fn differential_rows_are_orthogonal_to_functional_rows(q in prop::sample::select(vec![5u64, 7]), p2 in any::<bool>(), seed in any::<u64>(), k in 1usize..=4) {
        let s = surface(q, p2);
        let delta = scattered(&s, seed, k);
        let pair = construct_convenient_pair(&s, &delta).unwrap();
        let g = random_g(&s, &delta, seed);
        let c = differential_code(&s, &delta, &pair, &g).unwrap().code;
        let l = functional_code(&s, &delta, &g).unwrap();
        for a in c.rows() {
            for b in l.rows() {
                prop_assert!(dot(a, b).is_zero());
            }
        }
    }

    #[test]
    fn swapping_the_pair_keeps_the_code(q in prop::sample::select(vec![5u64, 7]), p2 in any::<bool>(), seed in any::<u64>(), k in 1usize..=4) {
        let s = surface(q, p2);
        let delta = scattered(&s, seed, k);
        let pair = construct_convenient_pair(&s, &delta).unwrap();
        let g = random_g(&s, &delta, seed);
        let a = differential_code(&s, &delta, &pair, &g).unwrap().code;
        let b = differential_code(&s, &delta, &pair.swapped(), &g).unwrap().code;
        prop_assert_eq!(a, b);
    }

    #[test]
    fn differential_equals_functional_of_k_minus_g_plus_d(q in prop::sample::select(vec![5u64, 7]), p2 in any::<bool>(), seed in any::<u64>(), k in 1usize..=4) {
        let s = surface(q, p2);
        let delta = scattered(&s, seed, k);
        let pair = construct_convenient_pair(&s, &delta).unwrap();
        let g = random_g(&s, &delta, seed);
        let r = verify_diff_equals_functional(&s, &delta, &pair, &g).unwrap();
        prop_assert!(r.pass, "{:?}", r);
    }

    #[test]
    fn every_functional_code_is_differential(q in prop::sample::select(vec![5u64, 7]), p2 in any::<bool>(), seed in any::<u64>(), k in 1usize..=4) {
        let s = surface(q, p2);
        let delta = scattered(&s, seed, k);
        let pair = construct_convenient_pair(&s, &delta).unwrap();
        let w0 = canonical_form_omega0(&s, &pair, &delta).unwrap();
        prop_assume!(w0.g.total_degree() == Some(0));
        let kd = w0.form.divisor().unwrap();
        let g = random_g(&s, &delta, seed);
        let other = kd.sub(&g).add(&pair.d());
        prop_assume!(other.iter().all(|(c, _)| c.is_boundary() || c.eq().total_degree() == Some(1)));
        let fun = functional_code(&s, &delta, &g).unwrap();
        let diff = differential_code(&s, &delta, &pair, &other).unwrap().code;
        prop_assert_eq!(fun, diff);
    }

    #[test]
    fn grid_functional_dimension(q in prop::sample::select(vec![4u64, 5, 7]), m in 0i64..7, n in 0i64..7) {
        let s = surface(q, false);
        let (m, n) = (m % q as i64, n % q as i64);
        let c = functional_code(&s, &ZeroCycle::grid(&s), &g_mn(&s, m, n)).unwrap();
        prop_assert_eq!(c.dim() as i64, (m + 1) * (n + 1));
    }
}

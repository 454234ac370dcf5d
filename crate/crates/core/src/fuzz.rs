//! Seeded random generators shared by the property suites, the acceptance
//! runner and the CLI.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::field::{Field, FieldElement};
use crate::laurent::{TruncCtx, UniLaurent, VSeries};
use crate::poly::{BiPoly, UniPoly};

/// Deterministic generator for case `case` of a suite seeded by `seed`.
pub fn case_rng(seed: u64, case: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ case)
}

pub fn random_elem<R: Rng>(rng: &mut R, field: Field) -> FieldElement {
    field.elem(rng.gen_range(0..field.q()))
}

pub fn random_nonzero<R: Rng>(rng: &mut R, field: Field) -> FieldElement {
    field.elem(rng.gen_range(1..field.q()))
}

/// Random polynomial of degree at most `deg`.
pub fn random_poly<R: Rng>(rng: &mut R, field: Field, deg: usize) -> UniPoly {
    UniPoly::new(field, (0..=deg).map(|_| random_elem(rng, field)).collect())
}

/// Random exact Laurent polynomial with exponents in `lo..=hi`.
pub fn random_laurent<R: Rng>(rng: &mut R, field: Field, lo: i64, hi: i64) -> UniLaurent {
    let c = (lo..=hi).map(|_| random_elem(rng, field)).collect();
    UniLaurent::new(field, lo, c, crate::laurent::EXACT)
}

/// Random bivariate polynomial with degree at most `dx` in x and `dy` in y.
pub fn random_bipoly<R: Rng>(rng: &mut R, field: Field, dx: usize, dy: usize) -> BiPoly {
    BiPoly::new(field, (0..=dy).map(|_| random_poly(rng, field, dx)).collect())
}

/// Random truncated series Σ s_j(u) v^j, j in `-pole..=v_hi`, each s_j a
/// Laurent polynomial with exponents in `-pole..=u_top`.
pub fn random_series<R: Rng>(rng: &mut R, ctx: TruncCtx, pole: i64, u_top: i64, v_hi: i64) -> VSeries<UniLaurent> {
    let c = (-pole..=v_hi).map(|_| random_laurent(rng, ctx.field, -pole, u_top)).collect();
    VSeries::new(ctx, -pole, c, v_hi)
}

/// Random valid change of variables (f, g): f(x, 0) of x-valuation 1, g of
/// y-valuation 1 with a nonzero (possibly non-constant) leading coefficient.
pub fn random_cv<R: Rng>(rng: &mut R, ctx: TruncCtx, y_hi: i64) -> (VSeries<UniLaurent>, VSeries<UniLaurent>) {
    let field = ctx.field;
    let unit = |rng: &mut R, shift: i64| {
        let mut c = vec![random_nonzero(rng, field)];
        c.extend((0..2).map(|_| random_elem(rng, field)));
        UniLaurent::new(field, shift, c, crate::laurent::EXACT)
    };
    let mut fc = vec![unit(rng, 1)];
    let shift = rng.gen_range(-1..=1);
    let mut gc = vec![UniLaurent::exact_zero(field), unit(rng, shift)];
    for _ in 1..=2 {
        let lo = rng.gen_range(-1..=1);
        fc.push(random_laurent(rng, field, lo, lo + 2));
    }
    let lo = rng.gen_range(-1..=1);
    gc.push(random_laurent(rng, field, lo, lo + 2));
    (VSeries::new(ctx, 0, fc, y_hi), VSeries::new(ctx, 0, gc, y_hi))
}

/// Random line a·x + b·y + c = 0 over the base field.
pub fn random_line<R: Rng>(rng: &mut R, field: Field) -> crate::surface::Curve {
    loop {
        let (a, b, c) = (random_elem(rng, field), random_elem(rng, field), random_elem(rng, field));
        if let Ok(l) = crate::surface::Curve::line(a, b, c) {
            return l;
        }
    }
}

/// Random line-arrangement form c·Π L_i^(e_i) dx∧dy with `poles` lines in
/// the denominator (exponent 1 or 2) and up to two lines in the numerator.
/// Returns the form and its distinct denominator lines.
pub fn random_line_form<R: Rng>(
    rng: &mut R,
    surface: crate::surface::Surface,
    poles: usize,
) -> (crate::surface::TwoForm, Vec<crate::surface::Curve>) {
    let field = surface.field;
    let mut den = BiPoly::one(field);
    let mut lines: Vec<crate::surface::Curve> = Vec::new();
    while lines.len() < poles {
        let l = random_line(rng, field);
        if lines.contains(&l) {
            continue;
        }
        let e = if rng.gen_bool(0.25) { 2 } else { 1 };
        den = &den * &l.eq().pow(e);
        lines.push(l);
    }
    let mut num = BiPoly::constant(random_nonzero(rng, field));
    for _ in 0..rng.gen_range(0..=2) {
        let l = random_line(rng, field);
        if !lines.contains(&l) {
            num = &num * l.eq();
        }
    }
    let h = crate::rational::BiRat::new(num, den).expect("nonzero denominator");
    (crate::surface::TwoForm::new(surface, h).expect("same field"), lines)
}

/// Random code of length `n` spanned by `k` random vectors (dimension ≤ k).
pub fn random_code<R: Rng>(rng: &mut R, field: Field, n: usize, k: usize) -> crate::codes::LinearCode {
    let rows = (0..k).map(|_| (0..n).map(|_| random_elem(rng, field)).collect()).collect();
    crate::codes::LinearCode::from_generators(field, n, rows).expect("consistent lengths")
}

/// Random code of length `n` and dimension exactly `k` (k ≤ n).
pub fn random_code_of_dim<R: Rng>(rng: &mut R, field: Field, n: usize, k: usize) -> crate::codes::LinearCode {
    loop {
        let c = random_code(rng, field, n, k);
        if c.dim() == k {
            return c;
        }
    }
}

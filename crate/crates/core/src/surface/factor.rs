//! Factorization over F_q: univariate by distinct- and equal-degree
//! splitting, bivariate by contents, line search and specialization.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::fuzz::random_poly;
use crate::poly::{BiPoly, UniPoly};

/// Monic irreducible factors with multiplicities, sorted.
pub fn factor_uni(f: &UniPoly) -> Vec<(UniPoly, u32)> {
    if f.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut irr = Vec::new();
    for (g, d) in ddf(&f.squarefree_part()) {
        edf(&g, d, &mut rng, &mut irr);
    }
    let mut out: Vec<(UniPoly, u32)> = irr
        .into_iter()
        .map(|p| {
            let mut k = 0;
            let mut cur = f.clone();
            while let Some(next) = cur.div_exact(&p) {
                k += 1;
                cur = next;
            }
            (p, k)
        })
        .collect();
    out.sort();
    out
}

/// Distinct-degree blocks (product of all degree-d factors, d).
fn ddf(f: &UniPoly) -> Vec<(UniPoly, usize)> {
    let q = f.field().q() as u64;
    let x = UniPoly::x(f.field());
    let mut out = Vec::new();
    let mut f = f.monic();
    let mut h = x.clone();
    let mut d = 0;
    while f.degree().unwrap_or(0) > 0 {
        d += 1;
        if 2 * d > f.degree().unwrap() {
            let n = f.degree().unwrap();
            out.push((f, n));
            break;
        }
        h = h.powmod(q, &f);
        let g = f.gcd(&(&h - &x));
        if g.degree().unwrap_or(0) > 0 {
            f = f.div_exact(&g).expect("gcd divides");
            h = h.rem(&f).expect("nonzero");
            out.push((g, d));
        }
    }
    out
}

fn edf(g: &UniPoly, d: usize, rng: &mut ChaCha8Rng, out: &mut Vec<UniPoly>) {
    let n = g.degree().unwrap_or(0);
    if n == 0 {
        return;
    }
    if n == d {
        out.push(g.monic());
        return;
    }
    let field = g.field();
    let q = field.q() as u64;
    loop {
        let a = random_poly(rng, field, n - 1);
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let b = if q % 2 == 1 {
            // a^((q^d - 1)/2) = prod_i (a^((q-1)/2))^(q^i)
            let b0 = a.powmod((q - 1) / 2, g);
            let mut c = b0.clone();
            let mut acc = b0;
            for _ in 1..d {
                c = c.powmod(q, g);
                acc = (&acc * &c).rem(g).expect("nonzero");
            }
            &acc - &UniPoly::one(field)
        } else {
            // Absolute trace to F_2.
            let bits = field.m() as usize * d;
            let mut c = a.rem(g).expect("nonzero");
            let mut acc = c.clone();
            for _ in 1..bits {
                c = (&c * &c).rem(g).expect("nonzero");
                acc = &acc + &c;
            }
            acc
        };
        let h = g.gcd(&b);
        let k = h.degree().unwrap_or(0);
        if k > 0 && k < n {
            let rest = g.div_exact(&h).expect("gcd divides");
            edf(&h, d, rng, out);
            edf(&rest, d, rng, out);
            return;
        }
    }
}

/// True when `f` is irreducible over its field.
pub fn is_irreducible_uni(f: &UniPoly) -> bool {
    let fs = factor_uni(f);
    fs.len() == 1 && fs[0].1 == 1
}

/// Brute-force budget for the conic-factor search (number of candidates).
const CONIC_SEARCH_BUDGET: u64 = 400_000;

/// Irreducible factors of a bivariate polynomial, each monic, with
/// multiplicities, sorted. Constants are dropped.
pub fn factor_bi(p: &BiPoly) -> Result<Vec<(BiPoly, u32)>> {
    if p.is_zero() {
        return Err(Error::Invalid("cannot factor the zero polynomial".into()));
    }
    let mut out: Vec<(BiPoly, u32)> = Vec::new();
    let mut rest = p.clone();
    let push = |f: BiPoly, k: u32, out: &mut Vec<(BiPoly, u32)>| {
        if let Some(e) = out.iter_mut().find(|(g, _)| *g == f) {
            e.1 += k;
        } else {
            out.push((f, k));
        }
    };

    for (f, k) in factor_uni(&rest.content()) {
        push(BiPoly::from_x(f), k, &mut out);
    }
    rest = rest.primitive_part();
    let swapped = rest.swap();
    for (f, k) in factor_uni(&swapped.content()) {
        let g = BiPoly::from_y(&f);
        let (kk, r) = rest.split_power(&g);
        debug_assert_eq!(kk, k);
        push(g.monic(), k, &mut out);
        rest = r;
    }

    // Lines y - m x - c with m != 0.
    if rest.total_degree().unwrap_or(0) > 0 {
        for (line, k) in line_factors(&rest) {
            let (_, r) = rest.split_power(&line);
            rest = r;
            push(line.monic(), k, &mut out);
        }
    }

    let deg = rest.total_degree().unwrap_or(0);
    if deg > 0 {
        for (f, k) in factor_nonlinear(&rest)? {
            push(f.monic(), k, &mut out);
        }
    }
    out.sort();
    Ok(out)
}

fn line_factors(p: &BiPoly) -> Vec<(BiPoly, u32)> {
    let field = p.field();
    let d = p.total_degree().unwrap_or(0);
    // Top homogeneous part evaluated at x = 1 gives the admissible slopes.
    let top: Vec<_> = (0..=d).map(|j| p.coeff(d - j, j)).collect();
    let top = UniPoly::new(field, top);
    let mut slopes: Vec<_> = if top.is_zero() { Vec::new() } else { top.roots().unwrap_or_default() };
    slopes.dedup();
    let at0 = p.eval_x(field.zero());
    let mut cs: Vec<_> = if at0.is_zero() { field.elements().collect() } else { at0.roots().unwrap_or_default() };
    cs.dedup();
    let mut out = Vec::new();
    let mut cur = p.clone();
    for &m in &slopes {
        if m.is_zero() {
            continue;
        }
        for &c in &cs {
            let line = BiPoly::linear(-m, field.one(), -c);
            let (k, r) = cur.split_power(&line);
            if k > 0 {
                cur = r;
                out.push((line, k));
            }
        }
    }
    out
}

/// Factors of a polynomial with no line factors and no one-variable factors.
fn factor_nonlinear(p: &BiPoly) -> Result<Vec<(BiPoly, u32)>> {
    let deg = p.total_degree().unwrap_or(0);
    if deg <= 3 || certified_irreducible(p) {
        return Ok(vec![(p.clone(), 1)]);
    }
    // A degree-4 or degree-5 polynomial without line factors is reducible only
    // through a conic factor.
    if deg <= 5 {
        let field = p.field();
        let q = field.q() as u64;
        if q.pow(5) > CONIC_SEARCH_BUDGET {
            return Err(Error::Bound(format!("conic factor search over F_{q} is beyond the desk-scale budget")));
        }
        let elems: Vec<_> = field.elements().collect();
        // Monic conics: normalize the last nonzero coefficient in the order
        // (1, x, y, x^2, xy, y^2) to one.
        let monos = [(0usize, 0usize), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)];
        for lead in 3..6 {
            let free = lead;
            let count = (q as usize).pow(free as u32);
            for idx in 0..count {
                let mut t = idx;
                let mut c = BiPoly::monomial(field.one(), monos[lead].0, monos[lead].1);
                for &(i, j) in monos.iter().take(free) {
                    let e = elems[t % q as usize];
                    t /= q as usize;
                    if !e.is_zero() {
                        c = &c + &BiPoly::monomial(e, i, j);
                    }
                }
                if c.total_degree() != Some(2) {
                    continue;
                }
                let (k, r) = p.split_power(&c);
                if k > 0 {
                    let mut out = vec![(c, k)];
                    if r.total_degree().unwrap_or(0) > 0 {
                        out.extend(factor_nonlinear(&r)?);
                    }
                    return Ok(out);
                }
            }
        }
        return Ok(vec![(p.clone(), 1)]);
    }
    Err(Error::Bound(format!("cannot certify the factorization of a degree-{deg} polynomial")))
}

/// Sufficient irreducibility test: some specialization x = x0 (or y = y0)
/// keeps the degree and is irreducible.
fn certified_irreducible(p: &BiPoly) -> bool {
    let field = p.field();
    let check = |p: &BiPoly| {
        let dy = p.deg_y().unwrap_or(0);
        dy > 0
            && field.elements().any(|a| {
                let s = p.eval_x(a);
                s.degree() == Some(dy) && is_irreducible_uni(&s)
            })
    };
    check(p) || check(&p.swap())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    #[test]
    fn univariate_factorization() {
        for q in [4u64, 5, 7, 8, 9] {
            let f = Field::with_order(q).unwrap();
            let a = UniPoly::from_ints(f, &[1, 1, 0, 1]);
            let b = UniPoly::from_ints(f, &[2, 0, 1]);
            let c = UniPoly::from_ints(f, &[1, 1]);
            let prod = &(&(&a * &b) * &c) * &c;
            let fs = factor_uni(&prod);
            let mut back = UniPoly::one(f);
            for (g, k) in &fs {
                assert!(is_irreducible_uni(g) || g.degree() == Some(1));
                back = &back * &g.pow(*k);
            }
            assert_eq!(back, prod.monic());
        }
    }

    #[test]
    fn bivariate_lines_and_conics() {
        let f = Field::prime(5).unwrap();
        let l1 = BiPoly::from_terms(f, &[(1, 0, 1), (0, 1, 1), (0, 0, 2)]);
        let l2 = BiPoly::from_terms(f, &[(1, 0, 1)]);
        let h = BiPoly::from_terms(f, &[(0, 1, 1), (0, 0, 3)]);
        let conic = BiPoly::from_terms(f, &[(2, 0, 1), (0, 2, 1), (0, 0, 2)]);
        let p = &(&(&l1 * &l1) * &l2) * &(&h * &conic);
        let fs = factor_bi(&p).unwrap();
        assert_eq!(fs.len(), 4);
        assert!(fs.contains(&(l1.monic(), 2)));
        assert!(fs.contains(&(conic.monic(), 1)));
        let c2 = &conic * &BiPoly::from_terms(f, &[(2, 0, 1), (0, 2, 2), (0, 0, 1), (1, 1, 1)]);
        let fs = factor_bi(&c2).unwrap();
        assert_eq!(fs.len(), 2);
    }
}

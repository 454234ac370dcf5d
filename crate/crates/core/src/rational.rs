//! Rational functions in one and two variables, kept in reduced form.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::{Embedding, Field, FieldElement};
use crate::poly::{BiPoly, UniPoly};

/// num/den with gcd(num, den) = 1 and den monic; zero is 0/1.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UniRat {
    num: UniPoly,
    den: UniPoly,
}

impl UniRat {
    pub fn new(num: UniPoly, den: UniPoly) -> Result<UniRat> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(UniRat::zero(num.field()));
        }
        let g = num.gcd(&den);
        let (mut n, mut d) = (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"));
        let lc = d.lc().inv()?;
        n = n.scale(lc);
        d = d.scale(lc);
        Ok(UniRat { num: n, den: d })
    }

    pub fn from_poly(p: UniPoly) -> UniRat {
        let f = p.field();
        UniRat { num: p, den: UniPoly::one(f) }
    }

    pub fn constant(c: FieldElement) -> UniRat {
        UniRat::from_poly(UniPoly::constant(c))
    }

    pub fn zero(field: Field) -> UniRat {
        UniRat { num: UniPoly::zero(field), den: UniPoly::one(field) }
    }

    pub fn one(field: Field) -> UniRat {
        UniRat::from_poly(UniPoly::one(field))
    }

    pub fn field(&self) -> Field {
        self.num.field()
    }

    pub fn num(&self) -> &UniPoly {
        &self.num
    }

    pub fn den(&self) -> &UniPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn inv(&self) -> Result<UniRat> {
        UniRat::new(self.den.clone(), self.num.clone())
    }

    pub fn scale(&self, s: FieldElement) -> UniRat {
        if s.is_zero() {
            return UniRat::zero(self.field());
        }
        UniRat { num: self.num.scale(s), den: self.den.clone() }
    }

    pub fn derivative(&self) -> UniRat {
        let n = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        UniRat::new(n, &self.den * &self.den).expect("nonzero denominator")
    }

    /// Value at a point, `None` at a pole.
    pub fn eval(&self, a: FieldElement) -> Option<FieldElement> {
        let d = self.den.eval(a);
        (!d.is_zero()).then(|| self.num.eval(a) / d)
    }

    /// Order of vanishing at u = 0 (`None` for zero).
    pub fn valuation(&self) -> Option<i64> {
        let vn = self.num.valuation()? as i64;
        Some(vn - self.den.valuation().expect("nonzero") as i64)
    }

    /// Coefficients of the Laurent expansion at u = 0 for exponents lo..=hi,
    /// where lo is the valuation. Exact.
    pub fn laurent_coeffs(&self, hi: i64) -> (i64, Vec<FieldElement>) {
        let Some(val) = self.valuation() else {
            return (0, Vec::new());
        };
        if hi < val {
            return (val, Vec::new());
        }
        let vn = self.num.valuation().unwrap();
        let vd = self.den.valuation().unwrap();
        let n = self.num.unshift(vn);
        let d = self.den.unshift(vd);
        let len = (hi - val + 1) as usize;
        let inv0 = d.coeff(0).inv().expect("unit constant term");
        let mut out = Vec::with_capacity(len);
        for k in 0..len {
            let mut s = n.coeff(k);
            for i in 1..=k.min(d.degree().unwrap_or(0)) {
                s -= d.coeff(i) * out[k - i];
            }
            out.push(s * inv0);
        }
        (val, out)
    }

    /// Residue at u = 0: the coefficient of u^-1 of the Laurent expansion.
    pub fn residue_at_zero(&self) -> FieldElement {
        let (lo, c) = self.laurent_coeffs(-1);
        if lo > -1 {
            self.field().zero()
        } else {
            c[(-1 - lo) as usize]
        }
    }

    pub fn map(&self, emb: &Embedding) -> UniRat {
        UniRat::new(self.num.map(emb), self.den.map(emb)).expect("embedding preserves nonzero")
    }

    pub fn fmt_var(&self, var: &str) -> String {
        if self.den.is_one() {
            format!("({})", self.num.fmt_var(var))
        } else {
            format!("({})/({})", self.num.fmt_var(var), self.den.fmt_var(var))
        }
    }
}

impl fmt::Display for UniRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_var("u"))
    }
}

impl fmt::Debug for UniRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_var("u"))
    }
}

impl Add for &UniRat {
    type Output = UniRat;
    fn add(self, rhs: &UniRat) -> UniRat {
        if self.den == rhs.den {
            return UniRat::new(&self.num + &rhs.num, self.den.clone()).expect("nonzero");
        }
        let n = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        UniRat::new(n, &self.den * &rhs.den).expect("nonzero")
    }
}

impl Sub for &UniRat {
    type Output = UniRat;
    fn sub(self, rhs: &UniRat) -> UniRat {
        self + &(-rhs)
    }
}

impl Mul for &UniRat {
    type Output = UniRat;
    fn mul(self, rhs: &UniRat) -> UniRat {
        if self.is_zero() || rhs.is_zero() {
            return UniRat::zero(self.field());
        }
        // Cross-cancel before multiplying to keep degrees small.
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let n = &self.num.div_exact(&g1).unwrap() * &rhs.num.div_exact(&g2).unwrap();
        let d = &self.den.div_exact(&g2).unwrap() * &rhs.den.div_exact(&g1).unwrap();
        let lc = d.lc().inv().expect("nonzero");
        UniRat { num: n.scale(lc), den: d.scale(lc) }
    }
}

impl Neg for &UniRat {
    type Output = UniRat;
    fn neg(self) -> UniRat {
        UniRat { num: -&self.num, den: self.den.clone() }
    }
}

/// num/den in two variables with gcd(num, den) = 1 and den monic; zero is 0/1.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BiRat {
    num: BiPoly,
    den: BiPoly,
}

impl BiRat {
    pub fn new(num: BiPoly, den: BiPoly) -> Result<BiRat> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(BiRat::zero(num.field()));
        }
        let g = num.gcd(&den);
        let n = num.div_exact(&g).expect("gcd divides");
        let d = den.div_exact(&g).expect("gcd divides");
        let lc = d.lc().inv()?;
        Ok(BiRat { num: n.scale(lc), den: d.scale(lc) })
    }

    pub fn from_poly(p: BiPoly) -> BiRat {
        let f = p.field();
        BiRat { num: p, den: BiPoly::one(f) }
    }

    pub fn constant(c: FieldElement) -> BiRat {
        BiRat::from_poly(BiPoly::constant(c))
    }

    pub fn zero(field: Field) -> BiRat {
        BiRat { num: BiPoly::zero(field), den: BiPoly::one(field) }
    }

    pub fn one(field: Field) -> BiRat {
        BiRat::from_poly(BiPoly::one(field))
    }

    pub fn x(field: Field) -> BiRat {
        BiRat::from_poly(BiPoly::x(field))
    }

    pub fn y(field: Field) -> BiRat {
        BiRat::from_poly(BiPoly::y(field))
    }

    pub fn field(&self) -> Field {
        self.num.field()
    }

    pub fn num(&self) -> &BiPoly {
        &self.num
    }

    pub fn den(&self) -> &BiPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn inv(&self) -> Result<BiRat> {
        BiRat::new(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, e: i32) -> Result<BiRat> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let k = e.unsigned_abs();
        Ok(BiRat { num: base.num.pow(k), den: base.den.pow(k) })
    }

    /// Value at a point, `None` where the denominator vanishes.
    pub fn eval(&self, a: FieldElement, b: FieldElement) -> Option<FieldElement> {
        let d = self.den.eval(a, b);
        (!d.is_zero()).then(|| self.num.eval(a, b) / d)
    }

    pub fn map(&self, emb: &Embedding) -> BiRat {
        BiRat { num: self.num.map(emb), den: self.den.map(emb) }
    }

    /// Substitutes x -> X, y -> Y.
    pub fn compose(&self, x: &BiRat, y: &BiRat) -> BiRat {
        let (n, dn) = compose_poly(&self.num, x, y);
        let (d, dd) = compose_poly(&self.den, x, y);
        BiRat::new(n, d).expect("nonzero").mul_pow_ratio(&dd, &dn)
    }

    fn mul_pow_ratio(&self, a: &BiPoly, b: &BiPoly) -> BiRat {
        BiRat::new(&self.num * a, &self.den * b).expect("nonzero")
    }

    pub fn fmt_vars(&self, vx: &str, vy: &str) -> String {
        if self.den.is_constant() {
            self.num.fmt_vars(vx, vy)
        } else {
            format!("({})/({})", self.num.fmt_vars(vx, vy), self.den.fmt_vars(vx, vy))
        }
    }
}

/// P(a/b, c/d) written as N / (b^dx d^dy) with dx = deg_x P, dy = deg_y P.
/// Returns (N, b^dx d^dy).
fn compose_poly(p: &BiPoly, x: &BiRat, y: &BiRat) -> (BiPoly, BiPoly) {
    let f = p.field();
    if p.is_zero() {
        return (BiPoly::zero(f), BiPoly::one(f));
    }
    let dx = p.deg_x().unwrap_or(0);
    let dy = p.deg_y().unwrap_or(0);
    let (a, b) = (&x.num, &x.den);
    let (c, d) = (&y.num, &y.den);
    let a_pows: Vec<BiPoly> = pows(a, dx);
    let b_pows: Vec<BiPoly> = pows(b, dx);
    let c_pows: Vec<BiPoly> = pows(c, dy);
    let d_pows: Vec<BiPoly> = pows(d, dy);
    let mut acc = BiPoly::zero(f);
    for (j, row) in p.rows().iter().enumerate() {
        if row.is_zero() {
            continue;
        }
        let mut rx = BiPoly::zero(f);
        for (i, &coef) in row.coeffs().iter().enumerate() {
            if coef.is_zero() {
                continue;
            }
            rx = &rx + &(&a_pows[i] * &b_pows[dx - i]).scale(coef);
        }
        acc = &acc + &(&rx * &(&c_pows[j] * &d_pows[dy - j]));
    }
    (acc, &b_pows[dx] * &d_pows[dy])
}

fn pows(p: &BiPoly, n: usize) -> Vec<BiPoly> {
    let mut out = vec![BiPoly::one(p.field())];
    for k in 1..=n {
        out.push(&out[k - 1] * p);
    }
    out
}

impl fmt::Display for BiRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_vars("x", "y"))
    }
}

impl fmt::Debug for BiRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_vars("x", "y"))
    }
}

impl Add for &BiRat {
    type Output = BiRat;
    fn add(self, rhs: &BiRat) -> BiRat {
        if self.den == rhs.den {
            return BiRat::new(&self.num + &rhs.num, self.den.clone()).expect("nonzero");
        }
        let n = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        BiRat::new(n, &self.den * &rhs.den).expect("nonzero")
    }
}

impl Sub for &BiRat {
    type Output = BiRat;
    fn sub(self, rhs: &BiRat) -> BiRat {
        self + &(-rhs)
    }
}

impl Mul for &BiRat {
    type Output = BiRat;
    fn mul(self, rhs: &BiRat) -> BiRat {
        BiRat::new(&self.num * &rhs.num, &self.den * &rhs.den).expect("nonzero")
    }
}

/// Panics when dividing by zero.
impl Div for &BiRat {
    type Output = BiRat;
    fn div(self, rhs: &BiRat) -> BiRat {
        BiRat::new(&self.num * &rhs.den, &self.den * &rhs.num).expect("division by zero")
    }
}

impl Neg for &BiRat {
    type Output = BiRat;
    fn neg(self) -> BiRat {
        BiRat { num: -&self.num, den: self.den.clone() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unirat_reduces() {
        let f = Field::prime(5).unwrap();
        let n = UniPoly::from_ints(f, &[-1, 0, 1]);
        let d = UniPoly::from_ints(f, &[2, 2]);
        let r = UniRat::new(n, d).unwrap();
        assert_eq!(r.num(), &UniPoly::from_ints(f, &[-3, 3]));
        assert!(r.den().is_one());
    }

    #[test]
    fn laurent_expansion_at_zero() {
        let f = Field::prime(7).unwrap();
        // 1/(u^2 + u) = u^-1 (1 - u + u^2 - ...)
        let r = UniRat::new(UniPoly::one(f), UniPoly::from_ints(f, &[0, 1, 1])).unwrap();
        let (lo, c) = r.laurent_coeffs(2);
        assert_eq!(lo, -1);
        let ints: Vec<u32> = c.iter().map(|x| x.index()).collect();
        assert_eq!(ints, vec![1, 6, 1, 6]);
        assert_eq!(r.residue_at_zero(), f.one());
    }

    #[test]
    fn birat_compose_round_trip() {
        let f = Field::prime(5).unwrap();
        let h = BiRat::new(BiPoly::from_terms(f, &[(1, 0, 1), (0, 1, 2)]), BiPoly::from_terms(f, &[(1, 1, 1), (0, 0, 1)]))
            .unwrap();
        // (x, y) -> (1/x, y/x) is an involution.
        let xi = BiRat::x(f).inv().unwrap();
        let yi = &BiRat::y(f) * &xi;
        let back = h.compose(&xi, &yi).compose(&xi, &yi);
        assert_eq!(back, h);
    }
}

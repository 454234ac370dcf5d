//! Dense univariate and bivariate polynomials over a finite field.
//!
//! A bivariate polynomial is stored recursively as a polynomial in y whose
//! coefficients are polynomials in x. The leading coefficient of a nonzero
//! bivariate polynomial is the leading x-coefficient of its top y-row; it is
//! the normalization point for monic representatives.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::{Embedding, Field, FieldElement};

/// A univariate polynomial, coefficients low degree first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UniPoly {
    field: Field,
    c: Vec<FieldElement>,
}

impl PartialOrd for Field {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Field {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.p(), self.m(), self.modulus()).cmp(&(other.p(), other.m(), other.modulus()))
    }
}

impl PartialOrd for UniPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for UniPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.c.len().cmp(&other.c.len()).then_with(|| self.c.iter().rev().cmp(other.c.iter().rev()))
    }
}

impl UniPoly {
    pub fn new(field: Field, mut c: Vec<FieldElement>) -> UniPoly {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        UniPoly { field, c }
    }

    pub fn zero(field: Field) -> UniPoly {
        UniPoly { field, c: Vec::new() }
    }

    pub fn one(field: Field) -> UniPoly {
        UniPoly::constant(field.one())
    }

    pub fn constant(c: FieldElement) -> UniPoly {
        UniPoly::new(c.field(), vec![c])
    }

    /// The variable.
    pub fn x(field: Field) -> UniPoly {
        UniPoly::monomial(field.one(), 1)
    }

    pub fn monomial(c: FieldElement, k: usize) -> UniPoly {
        let mut v = vec![c.field().zero(); k + 1];
        v[k] = c;
        UniPoly::new(c.field(), v)
    }

    pub fn from_ints(field: Field, c: &[i64]) -> UniPoly {
        UniPoly::new(field, c.iter().map(|&v| field.from_int(v)).collect())
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.c.get(i).copied().unwrap_or_else(|| self.field.zero())
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    pub fn is_one(&self) -> bool {
        self.c.len() == 1 && self.c[0].is_one()
    }

    pub fn lc(&self) -> FieldElement {
        self.c.last().copied().unwrap_or_else(|| self.field.zero())
    }

    /// Lowest exponent with nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.c.iter().position(|x| !x.is_zero())
    }

    pub fn eval(&self, a: FieldElement) -> FieldElement {
        let mut acc = a.field().zero();
        for &c in self.c.iter().rev() {
            acc = acc * a + c;
        }
        acc
    }

    pub fn scale(&self, s: FieldElement) -> UniPoly {
        if s.is_zero() {
            return UniPoly::zero(self.field);
        }
        UniPoly { field: self.field, c: self.c.iter().map(|&x| x * s).collect() }
    }

    /// Multiplication by x^k.
    pub fn shift(&self, k: usize) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = vec![self.field.zero(); k];
        c.extend_from_slice(&self.c);
        UniPoly { field: self.field, c }
    }

    /// Drops the factor x^k (the low k coefficients must vanish).
    pub fn unshift(&self, k: usize) -> UniPoly {
        debug_assert!(self.c.iter().take(k).all(|c| c.is_zero()));
        UniPoly { field: self.field, c: self.c.iter().skip(k).copied().collect() }
    }

    pub fn pow(&self, mut e: u32) -> UniPoly {
        let mut acc = UniPoly::one(self.field);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn derivative(&self) -> UniPoly {
        let c = self.c.iter().enumerate().skip(1).map(|(i, &x)| x.mul_int(i as i64)).collect();
        UniPoly::new(self.field, c)
    }

    pub fn monic(&self) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.lc().inv().expect("nonzero leading coefficient");
        self.scale(inv)
    }

    pub fn divrem(&self, d: &UniPoly) -> Result<(UniPoly, UniPoly)> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.c.len() < d.c.len() {
            return Ok((UniPoly::zero(self.field), self.clone()));
        }
        let inv = d.lc().inv()?;
        let mut r = self.c.clone();
        let dd = d.c.len() - 1;
        let mut q = vec![self.field.zero(); r.len() - dd];
        for k in (dd..r.len()).rev() {
            let coef = r[k] * inv;
            if coef.is_zero() {
                continue;
            }
            q[k - dd] = coef;
            for (i, &di) in d.c.iter().enumerate() {
                r[k - dd + i] -= coef * di;
            }
        }
        Ok((UniPoly::new(self.field, q), UniPoly::new(self.field, r)))
    }

    pub fn rem(&self, d: &UniPoly) -> Result<UniPoly> {
        Ok(self.divrem(d)?.1)
    }

    /// Quotient when `d` divides `self` exactly.
    pub fn div_exact(&self, d: &UniPoly) -> Option<UniPoly> {
        let (q, r) = self.divrem(d).ok()?;
        r.is_zero().then_some(q)
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Composition self(g).
    pub fn compose(&self, g: &UniPoly) -> UniPoly {
        let mut acc = UniPoly::zero(self.field);
        for &c in self.c.iter().rev() {
            acc = &(&acc * g) + &UniPoly::constant(c);
        }
        acc
    }

    /// self(x + a).
    pub fn translate(&self, a: FieldElement) -> UniPoly {
        let lin = UniPoly::new(self.field, vec![a, self.field.one()]);
        self.compose(&lin)
    }

    pub fn map(&self, emb: &Embedding) -> UniPoly {
        UniPoly::new(emb.target(), self.c.iter().map(|&x| emb.map(x)).collect())
    }

    /// Roots in the coefficient field with multiplicity, by exhaustive
    /// evaluation followed by repeated synthetic division.
    pub fn roots(&self) -> Result<Vec<FieldElement>> {
        if self.is_zero() {
            return Err(Error::Invalid("the zero polynomial has every element as a root".into()));
        }
        let mut out = Vec::new();
        if self.is_constant() {
            return Ok(out);
        }
        for r in self.field.elements() {
            if !self.eval(r).is_zero() {
                continue;
            }
            let lin = UniPoly::new(self.field, vec![-r, self.field.one()]);
            let mut g = self.clone();
            while let Some(q) = g.div_exact(&lin) {
                out.push(r);
                g = q;
            }
        }
        Ok(out)
    }

    /// Degrees of the irreducible factors of a squarefree part, via
    /// distinct-degree factorization. Used to choose splitting fields.
    pub fn factor_degrees(&self) -> Vec<usize> {
        let mut degs = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return degs;
        }
        let sq = self.squarefree_part();
        let q = self.field.q() as u64;
        let x = UniPoly::x(self.field);
        let mut f = sq;
        let mut h = x.clone();
        let mut d = 0;
        while f.degree().unwrap_or(0) > 0 {
            d += 1;
            if 2 * d > f.degree().unwrap() {
                degs.push(f.degree().unwrap());
                break;
            }
            h = h.powmod(q, &f);
            let g = f.gcd(&(&h - &x));
            if g.degree().unwrap_or(0) > 0 {
                let k = g.degree().unwrap() / d;
                degs.extend(std::iter::repeat_n(d, k));
                f = f.div_exact(&g).expect("gcd divides");
                h = h.rem(&f).expect("nonzero");
            }
        }
        degs
    }

    /// Product of the distinct irreducible factors, monic.
    pub fn squarefree_part(&self) -> UniPoly {
        if self.degree().unwrap_or(0) == 0 {
            return UniPoly::one(self.field);
        }
        let d = self.derivative();
        if d.is_zero() {
            // self = g(x^p); a -> a^(q/p) inverts the Frobenius on F_q.
            let p = self.field.p() as usize;
            let e = self.field.q() as u64 / p as u64;
            let c = (0..=self.degree().unwrap() / p).map(|i| self.coeff(i * p).pow(e)).collect();
            return UniPoly::new(self.field, c).squarefree_part();
        }
        let g = self.gcd(&d);
        let core = self.div_exact(&g).expect("gcd divides").monic();
        // Factors whose multiplicity is divisible by p survive only in g.
        let mut rest = g;
        loop {
            let common = rest.gcd(&core);
            if common.degree().unwrap_or(0) == 0 {
                break;
            }
            rest = rest.div_exact(&common).expect("gcd divides");
        }
        (&core * &rest.squarefree_part()).monic()
    }

    pub fn powmod(&self, mut e: u64, m: &UniPoly) -> UniPoly {
        let mut acc = UniPoly::one(self.field).rem(m).expect("nonzero modulus");
        let mut base = self.rem(m).expect("nonzero modulus");
        while e > 0 {
            if e & 1 == 1 {
                acc = (&acc * &base).rem(m).expect("nonzero modulus");
            }
            e >>= 1;
            if e > 0 {
                base = (&base * &base).rem(m).expect("nonzero modulus");
            }
        }
        acc
    }

    /// Formats with the given variable name, highest degree first.
    pub fn fmt_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, c) in self.c.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !s.is_empty() {
                s.push('+');
            }
            s.push_str(&monomial_str(*c, &[(var, i)]));
        }
        s
    }
}

fn coeff_str(c: FieldElement) -> String {
    if c.field().m() == 1 {
        c.to_string()
    } else {
        format!("({c})")
    }
}

fn monomial_str(c: FieldElement, vars: &[(&str, usize)]) -> String {
    let mut parts = Vec::new();
    for &(v, e) in vars {
        match e {
            0 => {}
            1 => parts.push(v.to_string()),
            _ => parts.push(format!("{v}^{e}")),
        }
    }
    if parts.is_empty() {
        return coeff_str(c);
    }
    let body = parts.join("*");
    if c.is_one() {
        body
    } else {
        format!("{}*{}", coeff_str(c), body)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_var("u"))
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_var("u"))
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.c.len().max(rhs.c.len());
        let c = (0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect();
        UniPoly::new(self.field, c)
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.c.len().max(rhs.c.len());
        let c = (0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect();
        UniPoly::new(self.field, c)
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero(self.field);
        }
        let mut c = vec![self.field.zero(); self.c.len() + rhs.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in rhs.c.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        UniPoly::new(self.field, c)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly { field: self.field, c: self.c.iter().map(|&x| -x).collect() }
    }
}

/// A bivariate polynomial: `rows[j]` is the coefficient of y^j, a polynomial in x.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BiPoly {
    field: Field,
    rows: Vec<UniPoly>,
}

impl PartialOrd for BiPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for BiPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rows.len().cmp(&other.rows.len()).then_with(|| self.rows.iter().rev().cmp(other.rows.iter().rev()))
    }
}

impl BiPoly {
    pub fn new(field: Field, mut rows: Vec<UniPoly>) -> BiPoly {
        while rows.last().is_some_and(|r| r.is_zero()) {
            rows.pop();
        }
        BiPoly { field, rows }
    }

    pub fn zero(field: Field) -> BiPoly {
        BiPoly { field, rows: Vec::new() }
    }

    pub fn one(field: Field) -> BiPoly {
        BiPoly::constant(field.one())
    }

    pub fn constant(c: FieldElement) -> BiPoly {
        BiPoly::new(c.field(), vec![UniPoly::constant(c)])
    }

    pub fn x(field: Field) -> BiPoly {
        BiPoly::from_x(UniPoly::x(field))
    }

    pub fn y(field: Field) -> BiPoly {
        BiPoly::new(field, vec![UniPoly::zero(field), UniPoly::one(field)])
    }

    /// Embeds a polynomial in x.
    pub fn from_x(p: UniPoly) -> BiPoly {
        let f = p.field();
        BiPoly::new(f, vec![p])
    }

    /// Embeds a polynomial in y.
    pub fn from_y(p: &UniPoly) -> BiPoly {
        let f = p.field();
        BiPoly::new(f, p.coeffs().iter().map(|&c| UniPoly::constant(c)).collect())
    }

    /// Builds a polynomial from (i, j, c) meaning c·x^i·y^j.
    pub fn from_terms(field: Field, terms: &[(usize, usize, i64)]) -> BiPoly {
        let mut acc = BiPoly::zero(field);
        for &(i, j, c) in terms {
            acc = &acc + &BiPoly::monomial(field.from_int(c), i, j);
        }
        acc
    }

    pub fn monomial(c: FieldElement, i: usize, j: usize) -> BiPoly {
        let f = c.field();
        let mut rows = vec![UniPoly::zero(f); j + 1];
        rows[j] = UniPoly::monomial(c, i);
        BiPoly::new(f, rows)
    }

    /// a·x + b·y + c.
    pub fn linear(a: FieldElement, b: FieldElement, c: FieldElement) -> BiPoly {
        let f = a.field();
        BiPoly::new(f, vec![UniPoly::new(f, vec![c, a]), UniPoly::constant(b)])
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> &[UniPoly] {
        &self.rows
    }

    pub fn coeff(&self, i: usize, j: usize) -> FieldElement {
        self.rows.get(j).map(|r| r.coeff(i)).unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.rows.len() <= 1 && self.rows.first().is_none_or(|r| r.is_constant())
    }

    pub fn deg_y(&self) -> Option<usize> {
        self.rows.len().checked_sub(1)
    }

    pub fn deg_x(&self) -> Option<usize> {
        self.rows.iter().filter_map(|r| r.degree()).max()
    }

    pub fn total_degree(&self) -> Option<usize> {
        self.rows.iter().enumerate().filter_map(|(j, r)| r.degree().map(|d| d + j)).max()
    }

    /// Nonzero terms (i, j, c) for c·x^i·y^j, ordered by (j, i).
    pub fn terms(&self) -> Vec<(usize, usize, FieldElement)> {
        let mut out = Vec::new();
        for (j, r) in self.rows.iter().enumerate() {
            for (i, &c) in r.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    out.push((i, j, c));
                }
            }
        }
        out
    }

    pub fn lc(&self) -> FieldElement {
        self.rows.last().map(|r| r.lc()).unwrap_or_else(|| self.field.zero())
    }

    /// Leading coefficient as a polynomial in y.
    pub fn lc_y(&self) -> UniPoly {
        self.rows.last().cloned().unwrap_or_else(|| UniPoly::zero(self.field))
    }

    /// Scalar multiple with leading coefficient 1.
    pub fn monic(&self) -> BiPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(self.lc().inv().expect("nonzero"))
    }

    pub fn eval(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let mut acc = a.field().zero();
        for r in self.rows.iter().rev() {
            acc = acc * b + r.eval(a);
        }
        acc
    }

    /// Specializes x = a, giving a polynomial in y.
    pub fn eval_x(&self, a: FieldElement) -> UniPoly {
        UniPoly::new(a.field(), self.rows.iter().map(|r| r.eval(a)).collect())
    }

    /// Specializes y = b, giving a polynomial in x.
    pub fn eval_y(&self, b: FieldElement) -> UniPoly {
        let mut acc = UniPoly::zero(self.field);
        let bb = UniPoly::constant(b);
        for r in self.rows.iter().rev() {
            acc = &(&acc * &bb) + r;
        }
        acc
    }

    pub fn scale(&self, s: FieldElement) -> BiPoly {
        BiPoly::new(self.field, self.rows.iter().map(|r| r.scale(s)).collect())
    }

    /// Multiplication by a polynomial in x.
    pub fn mul_x_poly(&self, p: &UniPoly) -> BiPoly {
        BiPoly::new(self.field, self.rows.iter().map(|r| r * p).collect())
    }

    /// Multiplication by x^i y^j.
    pub fn shift(&self, i: usize, j: usize) -> BiPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut rows = vec![UniPoly::zero(self.field); j];
        rows.extend(self.rows.iter().map(|r| r.shift(i)));
        BiPoly::new(self.field, rows)
    }

    pub fn pow(&self, mut e: u32) -> BiPoly {
        let mut acc = BiPoly::one(self.field);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn d_dx(&self) -> BiPoly {
        BiPoly::new(self.field, self.rows.iter().map(|r| r.derivative()).collect())
    }

    pub fn d_dy(&self) -> BiPoly {
        let rows = self.rows.iter().enumerate().skip(1).map(|(j, r)| r.scale(self.field.from_int(j as i64))).collect();
        BiPoly::new(self.field, rows)
    }

    /// self(x + a, y + b).
    pub fn translate(&self, a: FieldElement, b: FieldElement) -> BiPoly {
        let shifted: Vec<UniPoly> = self.rows.iter().map(|r| r.translate(a)).collect();
        let lin = BiPoly::new(self.field, vec![UniPoly::constant(b), UniPoly::one(self.field)]);
        let mut acc = BiPoly::zero(self.field);
        for r in shifted.iter().rev() {
            acc = &(&acc * &lin) + &BiPoly::from_x(r.clone());
        }
        acc
    }

    /// Exchanges the roles of x and y.
    pub fn swap(&self) -> BiPoly {
        let mut acc = BiPoly::zero(self.field);
        for (i, j, c) in self.terms() {
            acc = &acc + &BiPoly::monomial(c, j, i);
        }
        acc
    }

    pub fn map(&self, emb: &Embedding) -> BiPoly {
        BiPoly::new(emb.target(), self.rows.iter().map(|r| r.map(emb)).collect())
    }

    /// Quotient when `d` divides `self` exactly.
    pub fn div_exact(&self, d: &BiPoly) -> Option<BiPoly> {
        if d.is_zero() {
            return None;
        }
        let db = d.rows.len() - 1;
        let lcd = d.lc_y();
        let mut r = self.clone();
        let mut q = BiPoly::zero(self.field);
        while !r.is_zero() && r.rows.len() > db {
            let k = r.rows.len() - 1;
            let cq = r.lc_y().div_exact(&lcd)?;
            let term = BiPoly::from_x(cq).shift(0, k - db);
            r = &r - &(&term * d);
            q = &q + &term;
        }
        r.is_zero().then_some(q)
    }

    /// Largest k with d^k dividing self, and the cofactor.
    pub fn split_power(&self, d: &BiPoly) -> (u32, BiPoly) {
        let mut k = 0;
        let mut cur = self.clone();
        if d.is_constant() || self.is_zero() {
            return (0, cur);
        }
        while let Some(next) = cur.div_exact(d) {
            k += 1;
            cur = next;
        }
        (k, cur)
    }

    /// Monic gcd of the x-coefficient rows.
    pub fn content(&self) -> UniPoly {
        let mut g = UniPoly::zero(self.field);
        for r in &self.rows {
            g = g.gcd(r);
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub fn primitive_part(&self) -> BiPoly {
        if self.is_zero() {
            return self.clone();
        }
        let c = self.content();
        BiPoly::new(self.field, self.rows.iter().map(|r| r.div_exact(&c).expect("content divides")).collect())
    }

    fn pseudo_rem(&self, d: &BiPoly) -> BiPoly {
        let db = d.rows.len() - 1;
        let lcd = d.lc_y();
        let mut r = self.clone();
        while !r.is_zero() && r.rows.len() > db {
            let k = r.rows.len() - 1;
            let lr = r.lc_y();
            r = &r.mul_x_poly(&lcd) - &d.mul_x_poly(&lr).shift(0, k - db);
        }
        r
    }

    /// Greatest common divisor, normalized to be monic (primitive PRS in y over
    /// F[x]). Zero only when both inputs are zero.
    pub fn gcd(&self, other: &BiPoly) -> BiPoly {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        let c = self.content().gcd(&other.content());
        let (mut a, mut b) = (self.primitive_part(), other.primitive_part());
        if a.rows.len() < b.rows.len() {
            std::mem::swap(&mut a, &mut b);
        }
        let g = loop {
            if b.is_zero() {
                break a;
            }
            if b.rows.len() == 1 {
                break BiPoly::one(self.field);
            }
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive_part();
        };
        g.primitive_part().mul_x_poly(&c).monic()
    }

    /// Formats in the variables `vx`, `vy`.
    pub fn fmt_vars(&self, vx: &str, vy: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut terms = self.terms();
        terms.sort_by(|a, b| (b.0 + b.1, b.1).cmp(&(a.0 + a.1, a.1)));
        let mut s = String::new();
        for (i, j, c) in terms {
            if !s.is_empty() {
                s.push('+');
            }
            s.push_str(&monomial_str(c, &[(vx, i), (vy, j)]));
        }
        s
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_vars("x", "y"))
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_vars("x", "y"))
    }
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        let n = self.rows.len().max(rhs.rows.len());
        let z = UniPoly::zero(self.field);
        let rows = (0..n).map(|j| self.rows.get(j).unwrap_or(&z) + rhs.rows.get(j).unwrap_or(&z)).collect();
        BiPoly::new(self.field, rows)
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        let n = self.rows.len().max(rhs.rows.len());
        let z = UniPoly::zero(self.field);
        let rows = (0..n).map(|j| self.rows.get(j).unwrap_or(&z) - rhs.rows.get(j).unwrap_or(&z)).collect();
        BiPoly::new(self.field, rows)
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        if self.is_zero() || rhs.is_zero() {
            return BiPoly::zero(self.field);
        }
        let mut rows = vec![UniPoly::zero(self.field); self.rows.len() + rhs.rows.len() - 1];
        for (i, a) in self.rows.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.rows.iter().enumerate() {
                rows[i + j] = &rows[i + j] + &(a * b);
            }
        }
        BiPoly::new(self.field, rows)
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly::new(self.field, self.rows.iter().map(|r| -r).collect())
    }
}

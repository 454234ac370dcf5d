//! Truncated univariate Laurent series in u.
//!
//! A series stores coefficients for exponents `lo..lo+len` and a bound `hi`:
//! every coefficient with exponent `<= hi` is certified, coefficients beyond
//! the stored ones (up to `hi`) are zero. `hi == EXACT` marks a Laurent
//! polynomial known exactly.
//!
//! Window rules, with `v(a)` the valuation of `a` (or `hi(a)+1` when `a` is
//! zero on its window):
//! - sum: `hi = min(hi(a), hi(b))`
//! - product: `hi = min(v(a) + hi(b), v(b) + hi(a))`
//! - inverse: `hi = hi(a) - 2 v(a)`; exact non-monomial inputs are capped at
//!   the caller's absolute precision
//! - derivative: `hi - 1`

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Embedding, Field, FieldElement};
use crate::poly::UniPoly;
use crate::rational::UniRat;

/// Window bound of an exactly known series.
pub const EXACT: i64 = i64::MAX / 4;

pub(crate) fn sat_add(a: i64, b: i64) -> i64 {
    if a >= EXACT || b >= EXACT {
        EXACT
    } else {
        a + b
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UniLaurent {
    field: Field,
    lo: i64,
    c: Vec<FieldElement>,
    hi: i64,
}

impl UniLaurent {
    /// Builds and normalizes: coefficients past `hi` are dropped, leading and
    /// trailing zeros removed, the zero series gets `lo = 0`.
    pub fn new(field: Field, lo: i64, mut c: Vec<FieldElement>, hi: i64) -> UniLaurent {
        let hi = hi.min(EXACT);
        if hi < EXACT {
            let keep = (hi - lo + 1).max(0) as usize;
            c.truncate(keep);
        }
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        let lead = c.iter().position(|x| !x.is_zero()).unwrap_or(c.len());
        if lead == c.len() {
            return UniLaurent { field, lo: 0, c: Vec::new(), hi };
        }
        c.drain(..lead);
        UniLaurent { field, lo: lo + lead as i64, c, hi }
    }

    /// Zero up to and including exponent `hi`.
    pub fn zero(field: Field, hi: i64) -> UniLaurent {
        UniLaurent { field, lo: 0, c: Vec::new(), hi: hi.min(EXACT) }
    }

    pub fn exact_zero(field: Field) -> UniLaurent {
        UniLaurent::zero(field, EXACT)
    }

    pub fn from_poly(p: &UniPoly) -> UniLaurent {
        UniLaurent::new(p.field(), 0, p.coeffs().to_vec(), EXACT)
    }

    /// c·u^k, exact.
    pub fn monomial(c: FieldElement, k: i64) -> UniLaurent {
        UniLaurent::new(c.field(), k, vec![c], EXACT)
    }

    /// Expansion of a rational function at u = 0, certified up to `hi`.
    pub fn from_rat(r: &UniRat, hi: i64) -> UniLaurent {
        if r.den().is_constant() {
            return UniLaurent::from_poly(&r.num().scale(r.den().lc().inv().expect("nonzero")));
        }
        let (lo, c) = r.laurent_coeffs(hi);
        UniLaurent::new(r.field(), lo, c, hi)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    /// Largest certified exponent (`EXACT` when exact).
    pub fn hi(&self) -> i64 {
        self.hi
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.c
    }

    pub fn is_exact(&self) -> bool {
        self.hi >= EXACT
    }

    pub fn is_zero_on_window(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_exact_zero(&self) -> bool {
        self.c.is_empty() && self.is_exact()
    }

    /// Valuation, `None` when zero on the window.
    pub fn valuation(&self) -> Option<i64> {
        (!self.c.is_empty()).then_some(self.lo)
    }

    /// A certified lower bound for the valuation.
    pub fn val_bound(&self) -> i64 {
        if self.c.is_empty() {
            sat_add(self.hi, 1)
        } else {
            self.lo
        }
    }

    /// Certified coefficient of u^n.
    pub fn coefficient(&self, n: i64) -> Result<FieldElement> {
        if n > self.hi {
            return Err(Error::Precision(format!("coefficient of u^{n} is beyond the certified window u^{}", self.hi)));
        }
        Ok(self.raw(n))
    }

    fn raw(&self, n: i64) -> FieldElement {
        if n < self.lo || n >= self.lo + self.c.len() as i64 {
            self.field.zero()
        } else {
            self.c[(n - self.lo) as usize]
        }
    }

    fn top(&self) -> i64 {
        self.lo + self.c.len() as i64 - 1
    }

    /// Lowers the certified window to `hi` (never raises it).
    pub fn truncate(&self, hi: i64) -> UniLaurent {
        UniLaurent::new(self.field, self.lo, self.c.clone(), hi.min(self.hi))
    }

    pub fn add(&self, o: &UniLaurent) -> UniLaurent {
        self.combine(o, false)
    }

    pub fn sub(&self, o: &UniLaurent) -> UniLaurent {
        self.combine(o, true)
    }

    fn combine(&self, o: &UniLaurent, negate: bool) -> UniLaurent {
        let hi = self.hi.min(o.hi);
        if o.c.is_empty() {
            return self.truncate(hi);
        }
        if self.c.is_empty() {
            let t = o.truncate(hi);
            return if negate { t.neg() } else { t };
        }
        let lo = self.lo.min(o.lo);
        let top = self.top().max(o.top()).min(hi);
        if top < lo {
            return UniLaurent::zero(self.field, hi);
        }
        let c = (lo..=top)
            .map(|n| if negate { self.raw(n) - o.raw(n) } else { self.raw(n) + o.raw(n) })
            .collect();
        UniLaurent::new(self.field, lo, c, hi)
    }

    pub fn neg(&self) -> UniLaurent {
        UniLaurent { field: self.field, lo: self.lo, c: self.c.iter().map(|&x| -x).collect(), hi: self.hi }
    }

    pub fn scale(&self, s: FieldElement) -> UniLaurent {
        UniLaurent::new(self.field, self.lo, self.c.iter().map(|&x| x * s).collect(), self.hi)
    }

    /// Multiplication by u^k.
    pub fn shift(&self, k: i64) -> UniLaurent {
        if self.c.is_empty() {
            return UniLaurent::zero(self.field, sat_add(self.hi, k));
        }
        UniLaurent { field: self.field, lo: self.lo + k, c: self.c.clone(), hi: sat_add(self.hi, k) }
    }

    pub fn mul(&self, o: &UniLaurent) -> UniLaurent {
        let hi = sat_add(self.val_bound(), o.hi).min(sat_add(o.val_bound(), self.hi));
        if self.c.is_empty() || o.c.is_empty() {
            return UniLaurent::zero(self.field, hi);
        }
        let lo = self.lo + o.lo;
        let max_len = if hi >= EXACT { usize::MAX } else { (hi - lo + 1).max(0) as usize };
        let len = (self.c.len() + o.c.len() - 1).min(max_len);
        let mut c = vec![self.field.zero(); len];
        for (i, &a) in self.c.iter().enumerate() {
            if a.is_zero() || i >= len {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                c[i + j] += a * b;
            }
        }
        UniLaurent::new(self.field, lo, c, hi)
    }

    /// Multiplicative inverse. `cap` bounds the window when the input is an
    /// exact non-monomial series.
    pub fn inv(&self, cap: i64) -> Result<UniLaurent> {
        if self.c.is_empty() {
            return Err(Error::Precision("leading coefficient not certified nonzero".into()));
        }
        let v = self.lo;
        let inv0 = self.c[0].inv()?;
        if self.is_exact() && self.c.len() == 1 {
            return Ok(UniLaurent::monomial(inv0, -v));
        }
        let hi = if self.is_exact() { cap } else { self.hi - 2 * v };
        if hi < -v {
            return Err(Error::Precision(format!("inverse window is empty (u-precision {cap} too small)")));
        }
        let n = (hi + v + 1) as usize;
        let mut b: Vec<FieldElement> = Vec::with_capacity(n);
        for k in 0..n {
            if k == 0 {
                b.push(inv0);
                continue;
            }
            let mut s = self.field.zero();
            for i in 1..=k.min(self.c.len() - 1) {
                s += self.c[i] * b[k - i];
            }
            b.push(-(s * inv0));
        }
        Ok(UniLaurent::new(self.field, -v, b, hi))
    }

    pub fn derivative(&self) -> UniLaurent {
        let c = self.c.iter().enumerate().map(|(i, &x)| x.mul_int(self.lo + i as i64)).collect();
        let hi = if self.is_exact() { EXACT } else { self.hi - 1 };
        UniLaurent::new(self.field, self.lo - 1, c, hi)
    }

    /// Coefficient of u^-1.
    pub fn residue(&self) -> Result<FieldElement> {
        self.coefficient(-1)
    }

    /// self(f0(x)) for f0 of valuation exactly 1. `cap` bounds inverses of
    /// exact data.
    pub fn compose(&self, f0: &UniLaurent, cap: i64) -> Result<UniLaurent> {
        if f0.valuation() != Some(1) {
            return Err(Error::Invalid("inner series must have valuation exactly 1".into()));
        }
        if self.c.is_empty() {
            // Zero on window up to hi maps to O(x^(hi+1)).
            return Ok(UniLaurent::zero(self.field, self.hi));
        }
        let mut acc = UniLaurent::exact_zero(self.field);
        for &c in self.c.iter().rev() {
            acc = acc.mul(f0).add(&UniLaurent::monomial(c, 0));
        }
        let base = if self.lo >= 0 {
            f0.pow_nonneg(self.lo as u64)
        } else {
            f0.inv(cap)?.pow_nonneg((-self.lo) as u64)
        };
        Ok(acc.mul(&base).truncate(self.hi))
    }

    fn pow_nonneg(&self, e: u64) -> UniLaurent {
        let mut acc = UniLaurent::monomial(self.field.one(), 0);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn map(&self, emb: &Embedding) -> UniLaurent {
        UniLaurent::new(emb.target(), self.lo, self.c.iter().map(|&x| emb.map(x)).collect(), self.hi)
    }

    /// Agreement on the common certified window.
    pub fn agrees_with(&self, o: &UniLaurent) -> bool {
        let hi = self.hi.min(o.hi);
        let lo = self.lo.min(o.lo);
        let top = self.top().max(o.top()).min(hi);
        (lo..=top).all(|n| self.raw(n) == o.raw(n))
    }

    /// Terms as (exponent, coefficient), nonzero only.
    pub fn terms(&self) -> impl Iterator<Item = (i64, FieldElement)> + '_ {
        self.c.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(move |(i, &c)| (self.lo + i as i64, c))
    }
}

impl fmt::Display for UniLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.terms().map(|(i, c)| format!("{c}*(u^{i})")).collect();
        if parts.is_empty() {
            parts.push("0".into());
        }
        if !self.is_exact() {
            parts.push(format!("O(u^{})", self.hi + 1));
        }
        f.write_str(&parts.join(" + "))
    }
}

impl fmt::Debug for UniLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

//! Series in v over a coefficient ring in u: exact rational functions
//! ([`UniRat`]) or truncated Laurent series ([`UniLaurent`]).
//!
//! A [`VSeries`] stores coefficients for every v-exponent `lo..=hi`; all of
//! them are certified in v. In truncated mode each coefficient carries its
//! own u-window. Leading coefficients are stripped only when they are
//! certified zero, so a truncated series may start with a coefficient that is
//! merely zero on its window; inverting such a series is an error.

mod cv;
mod unilaurent;

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::poly::{BiPoly, UniPoly};
use crate::rational::UniRat;

pub use cv::{pullback_form, substitute_cv};
pub use unilaurent::{UniLaurent, EXACT};

/// Coefficient ring of a [`VSeries`].
pub trait Coefficient: Clone + PartialEq + fmt::Debug {
    type Ctx: Clone + PartialEq + fmt::Debug + HasField;

    /// Certified zero.
    fn zero(ctx: &Self::Ctx) -> Self;
    fn from_poly(p: &UniPoly, ctx: &Self::Ctx) -> Self;
    fn from_elem(c: FieldElement, ctx: &Self::Ctx) -> Self {
        Self::from_poly(&UniPoly::constant(c), ctx)
    }
    fn is_certified_zero(&self) -> bool;
    fn is_zero_on_window(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn scale(&self, c: FieldElement) -> Self;
    fn inv(&self, ctx: &Self::Ctx) -> Result<Self>;
    fn derivative(&self) -> Self;
    /// Coefficient of u^-1.
    fn residue(&self) -> Result<FieldElement>;
    /// Printed terms "c*(u^i)*(v^j)" (or the exact form) for the v^j slot.
    fn render(&self, j: i64) -> Vec<String>;
}

impl Coefficient for UniRat {
    type Ctx = Field;

    fn zero(ctx: &Field) -> Self {
        UniRat::zero(*ctx)
    }
    fn from_poly(p: &UniPoly, _: &Field) -> Self {
        UniRat::from_poly(p.clone())
    }
    fn is_certified_zero(&self) -> bool {
        self.is_zero()
    }
    fn is_zero_on_window(&self) -> bool {
        self.is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn scale(&self, c: FieldElement) -> Self {
        UniRat::scale(self, c)
    }
    fn inv(&self, _: &Field) -> Result<Self> {
        UniRat::inv(self)
    }
    fn derivative(&self) -> Self {
        UniRat::derivative(self)
    }
    fn residue(&self) -> Result<FieldElement> {
        Ok(self.residue_at_zero())
    }
    fn render(&self, j: i64) -> Vec<String> {
        if self.is_zero() {
            return Vec::new();
        }
        vec![format!("({})/({})*(v^{j})", self.num().fmt_var("u"), self.den().fmt_var("u"))]
    }
}

/// Context of truncated mode: the field and the absolute u-precision used
/// when exact data has to be inverted.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TruncCtx {
    pub field: Field,
    pub u_precision: i64,
}

impl Coefficient for UniLaurent {
    type Ctx = TruncCtx;

    fn zero(ctx: &TruncCtx) -> Self {
        UniLaurent::exact_zero(ctx.field)
    }
    fn from_poly(p: &UniPoly, _: &TruncCtx) -> Self {
        UniLaurent::from_poly(p)
    }
    fn is_certified_zero(&self) -> bool {
        self.is_exact_zero()
    }
    fn is_zero_on_window(&self) -> bool {
        UniLaurent::is_zero_on_window(self)
    }
    fn add(&self, o: &Self) -> Self {
        UniLaurent::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        UniLaurent::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        UniLaurent::mul(self, o)
    }
    fn neg(&self) -> Self {
        UniLaurent::neg(self)
    }
    fn scale(&self, c: FieldElement) -> Self {
        UniLaurent::scale(self, c)
    }
    fn inv(&self, ctx: &TruncCtx) -> Result<Self> {
        UniLaurent::inv(self, ctx.u_precision)
    }
    fn derivative(&self) -> Self {
        UniLaurent::derivative(self)
    }
    fn residue(&self) -> Result<FieldElement> {
        UniLaurent::residue(self)
    }
    fn render(&self, j: i64) -> Vec<String> {
        self.terms().map(|(i, c)| format!("{c}*(u^{i})*(v^{j})")).collect()
    }
}

/// Truncated series in v: coefficients for exponents `lo..=hi`.
#[derive(Clone, PartialEq)]
pub struct VSeries<C: Coefficient> {
    ctx: C::Ctx,
    lo: i64,
    c: Vec<C>,
    hi: i64,
}

impl<C: Coefficient> VSeries<C> {
    /// Builds from coefficients starting at `lo`, padded with certified zeros
    /// up to `hi` and truncated past it.
    pub fn new(ctx: C::Ctx, lo: i64, mut c: Vec<C>, hi: i64) -> VSeries<C> {
        let len = (hi - lo + 1).max(0) as usize;
        c.truncate(len);
        c.resize(len, C::zero(&ctx));
        let lead = c.iter().position(|x| !x.is_certified_zero()).unwrap_or(c.len());
        if lead == c.len() {
            return VSeries { ctx, lo: 0, c: Vec::new(), hi };
        }
        c.drain(..lead);
        VSeries { ctx, lo: lo + lead as i64, c, hi }
    }

    pub fn zero(ctx: C::Ctx, hi: i64) -> VSeries<C> {
        VSeries { ctx, lo: 0, c: Vec::new(), hi }
    }

    /// A single coefficient at v^0.
    pub fn constant(ctx: C::Ctx, c: C, hi: i64) -> VSeries<C> {
        VSeries::new(ctx, 0, vec![c], hi)
    }

    /// c·u^i·v^j, certified in v up to `hi`.
    pub fn monomial(ctx: C::Ctx, c: FieldElement, i: usize, j: i64, hi: i64) -> VSeries<C> {
        let coeff = C::from_poly(&UniPoly::monomial(c, i), &ctx);
        VSeries::new(ctx, j, vec![coeff], hi)
    }

    /// A bivariate polynomial in (u, v) = (x, y), certified in v up to `hi`.
    pub fn from_bipoly(p: &BiPoly, ctx: C::Ctx, hi: i64) -> VSeries<C> {
        let c = p.rows().iter().map(|r| C::from_poly(r, &ctx)).collect();
        VSeries::new(ctx, 0, c, hi)
    }

    pub fn ctx(&self) -> &C::Ctx {
        &self.ctx
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    /// Largest certified v-exponent.
    pub fn hi(&self) -> i64 {
        self.hi
    }

    pub fn coeffs(&self) -> &[C] {
        &self.c
    }

    /// True when no coefficient is stored (every coefficient certified zero).
    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// First v-exponent whose coefficient is nonzero on its window.
    pub fn valuation(&self) -> Option<i64> {
        self.c.iter().position(|x| !x.is_zero_on_window()).map(|k| self.lo + k as i64)
    }

    fn val_bound(&self) -> i64 {
        if self.c.is_empty() {
            self.hi + 1
        } else {
            self.lo
        }
    }

    /// Coefficient of v^j.
    pub fn coefficient(&self, j: i64) -> Result<C> {
        if j > self.hi {
            return Err(Error::Precision(format!("coefficient of v^{j} is beyond the certified window v^{}", self.hi)));
        }
        Ok(self.raw(j))
    }

    fn raw(&self, j: i64) -> C {
        if j < self.lo || j >= self.lo + self.c.len() as i64 {
            C::zero(&self.ctx)
        } else {
            self.c[(j - self.lo) as usize].clone()
        }
    }

    fn check(&self, o: &VSeries<C>) -> Result<()> {
        if self.ctx == o.ctx {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn truncate(&self, hi: i64) -> VSeries<C> {
        VSeries::new(self.ctx.clone(), self.lo, self.c.clone(), hi.min(self.hi))
    }

    pub fn add(&self, o: &VSeries<C>) -> Result<VSeries<C>> {
        self.combine(o, false)
    }

    pub fn sub(&self, o: &VSeries<C>) -> Result<VSeries<C>> {
        self.combine(o, true)
    }

    fn combine(&self, o: &VSeries<C>, negate: bool) -> Result<VSeries<C>> {
        self.check(o)?;
        let hi = self.hi.min(o.hi);
        let lo = match (self.c.is_empty(), o.c.is_empty()) {
            (true, true) => return Ok(VSeries::zero(self.ctx.clone(), hi)),
            (false, true) => self.lo,
            (true, false) => o.lo,
            (false, false) => self.lo.min(o.lo),
        };
        let c = (lo..=hi)
            .map(|j| {
                let (a, b) = (self.raw(j), o.raw(j));
                if negate {
                    a.sub(&b)
                } else {
                    a.add(&b)
                }
            })
            .collect();
        Ok(VSeries::new(self.ctx.clone(), lo, c, hi))
    }

    pub fn neg(&self) -> VSeries<C> {
        VSeries { ctx: self.ctx.clone(), lo: self.lo, c: self.c.iter().map(C::neg).collect(), hi: self.hi }
    }

    pub fn scale(&self, s: FieldElement) -> VSeries<C> {
        VSeries::new(self.ctx.clone(), self.lo, self.c.iter().map(|x| x.scale(s)).collect(), self.hi)
    }

    /// Coefficientwise product with a series in u alone.
    pub fn scale_coeff(&self, s: &C) -> VSeries<C> {
        VSeries::new(self.ctx.clone(), self.lo, self.c.iter().map(|x| x.mul(s)).collect(), self.hi)
    }

    /// Multiplication by v^k.
    pub fn shift(&self, k: i64) -> VSeries<C> {
        if self.c.is_empty() {
            return VSeries::zero(self.ctx.clone(), self.hi + k);
        }
        VSeries { ctx: self.ctx.clone(), lo: self.lo + k, c: self.c.clone(), hi: self.hi + k }
    }

    pub fn mul(&self, o: &VSeries<C>) -> Result<VSeries<C>> {
        self.check(o)?;
        let hi = (self.val_bound() + o.hi).min(o.val_bound() + self.hi);
        if self.c.is_empty() || o.c.is_empty() {
            return Ok(VSeries::zero(self.ctx.clone(), hi));
        }
        let lo = self.lo + o.lo;
        let len = (hi - lo + 1).max(0) as usize;
        let mut c = vec![C::zero(&self.ctx); len];
        for (i, a) in self.c.iter().enumerate().take(len) {
            if a.is_certified_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate().take(len - i) {
                if !b.is_certified_zero() {
                    c[i + j] = c[i + j].add(&a.mul(b));
                }
            }
        }
        Ok(VSeries::new(self.ctx.clone(), lo, c, hi))
    }

    /// Inverse: v^-n times the geometric-series inverse of the unit part.
    pub fn invert(&self) -> Result<VSeries<C>> {
        if self.c.is_empty() {
            return Err(Error::DivisionByZero);
        }
        let n = self.lo;
        let len = self.c.len();
        let inv0 = self.c[0]
            .inv(&self.ctx)
            .map_err(|_| Error::Precision("leading coefficient not certified nonzero".into()))?;
        let mut b: Vec<C> = Vec::with_capacity(len);
        for k in 0..len {
            if k == 0 {
                b.push(inv0.clone());
                continue;
            }
            let mut s = C::zero(&self.ctx);
            for i in 1..=k {
                if !self.c[i].is_certified_zero() {
                    s = s.add(&self.c[i].mul(&b[k - i]));
                }
            }
            b.push(s.mul(&inv0).neg());
        }
        Ok(VSeries::new(self.ctx.clone(), -n, b, self.hi - 2 * n))
    }

    /// Integer power; negative exponents go through [`VSeries::invert`].
    pub fn pow(&self, e: i64) -> Result<VSeries<C>> {
        let base = if e < 0 { self.invert()? } else { self.clone() };
        let one = C::from_elem(self.field().one(), &self.ctx);
        let mut acc = VSeries::constant(self.ctx.clone(), one, base.hi - base.val_bound());
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base)?;
        }
        Ok(acc)
    }

    pub fn d_du(&self) -> VSeries<C> {
        VSeries::new(self.ctx.clone(), self.lo, self.c.iter().map(C::derivative).collect(), self.hi)
    }

    pub fn d_dv(&self) -> VSeries<C> {
        let c = self.c.iter().enumerate().map(|(k, x)| x.scale(self.field().from_int(self.lo + k as i64))).collect();
        VSeries::new(self.ctx.clone(), self.lo - 1, c, self.hi - 1)
    }

    /// Coefficient of v^-1.
    pub fn rho(&self) -> Result<C> {
        if self.hi < -1 {
            return Err(Error::Precision(format!("window v^{} does not certify v^-1", self.hi)));
        }
        Ok(self.raw(-1))
    }

    /// Coefficient of u^-1 v^-1.
    pub fn residue2_coeff(&self) -> Result<FieldElement> {
        self.rho()?.residue()
    }

    pub fn field(&self) -> Field {
        self.ctx.field()
    }

    /// Printed terms, sorted by (j, i).
    pub fn render(&self) -> String {
        let terms: Vec<String> =
            self.c.iter().enumerate().flat_map(|(k, x)| x.render(self.lo + k as i64)).collect();
        let body = if terms.is_empty() { "0".to_string() } else { terms.join(" + ") };
        format!("{body} + O(v^{})", self.hi + 1)
    }
}

/// Contexts that know their field.
pub trait HasField {
    fn field(&self) -> Field;
}

impl HasField for Field {
    fn field(&self) -> Field {
        *self
    }
}

impl HasField for TruncCtx {
    fn field(&self) -> Field {
        self.field
    }
}

impl<C: Coefficient> fmt::Display for VSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl<C: Coefficient> fmt::Debug for VSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl VSeries<UniLaurent> {
    /// Agreement on the common certified windows.
    pub fn agrees_with(&self, o: &VSeries<UniLaurent>) -> bool {
        let hi = self.hi.min(o.hi);
        let lo = self.lo.min(o.lo).min(hi + 1);
        (lo..=hi).all(|j| self.raw(j).agrees_with(&o.raw(j)))
    }

    /// Caps the u-window of the v^j coefficient at `bound(j)`.
    pub fn cap_u_windows(&self, bound: impl Fn(i64) -> i64) -> VSeries<UniLaurent> {
        let c = self.c.iter().enumerate().map(|(k, x)| x.truncate(bound(self.lo + k as i64))).collect();
        VSeries::new(self.ctx, self.lo, c, self.hi)
    }

    /// Smallest u-window over the stored coefficients.
    pub fn min_u_window(&self) -> i64 {
        self.c.iter().map(UniLaurent::hi).min().unwrap_or(EXACT)
    }
}

impl VSeries<UniRat> {
    /// Truncated-mode image: each exact coefficient expanded up to u^`u_hi`.
    pub fn to_truncated(&self, u_hi: i64, u_precision: i64) -> VSeries<UniLaurent> {
        let ctx = TruncCtx { field: self.ctx, u_precision };
        let c = self.c.iter().map(|r| UniLaurent::from_rat(r, u_hi)).collect();
        VSeries::new(ctx, self.lo, c, self.hi)
    }
}

/// Jacobian ∂A/∂u·∂B/∂v − ∂A/∂v·∂B/∂u.
pub fn jacobian<C: Coefficient>(a: &VSeries<C>, b: &VSeries<C>) -> Result<VSeries<C>> {
    a.d_du().mul(&b.d_dv())?.sub(&a.d_dv().mul(&b.d_du())?)
}

/// Expansion mode.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Exact,
    Truncated { u_precision: i64 },
}

/// Default relative v-precision for a pole of the given order.
pub fn default_v_precision(pole_order: i64) -> i64 {
    4.max(pole_order + 2)
}

fn split_v_power(p: &BiPoly) -> (usize, BiPoly) {
    let a = p.rows().iter().position(|r| !r.is_zero()).unwrap_or(0);
    (a, BiPoly::new(p.field(), p.rows()[a..].to_vec()))
}

/// Expansion of num/den in (u, v) with `v_precision` terms starting at the
/// leading v-exponent.
pub fn expand_rational<C: Coefficient>(
    num: &BiPoly,
    den: &BiPoly,
    ctx: C::Ctx,
    v_precision: i64,
) -> Result<VSeries<C>> {
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    if v_precision < 1 {
        return Err(Error::Invalid("v_precision must be positive".into()));
    }
    let (a, dt) = split_v_power(den);
    if num.is_zero() {
        return Ok(VSeries::zero(ctx, v_precision - 1 - a as i64));
    }
    let (b, nt) = split_v_power(num);
    let dinv = VSeries::<C>::from_bipoly(&dt, ctx.clone(), v_precision - 1).invert()?;
    let n = VSeries::<C>::from_bipoly(&nt, ctx, v_precision - 1);
    Ok(n.mul(&dinv)?.shift(b as i64 - a as i64))
}

/// Either mode, for callers that pick the mode at run time.
#[derive(Clone, Debug, PartialEq)]
pub enum AnySeries {
    Exact(VSeries<UniRat>),
    Truncated(VSeries<UniLaurent>),
}

/// Ring operations on [`AnySeries`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesOp {
    Add,
    Sub,
    Mul,
    Invert,
}

impl AnySeries {
    pub fn expand(num: &BiPoly, den: &BiPoly, mode: Mode, v_precision: i64) -> Result<AnySeries> {
        let field = num.field();
        Ok(match mode {
            Mode::Exact => AnySeries::Exact(expand_rational(num, den, field, v_precision)?),
            Mode::Truncated { u_precision } => AnySeries::Truncated(expand_rational(
                num,
                den,
                TruncCtx { field, u_precision },
                v_precision,
            )?),
        })
    }

    pub fn arith(&self, other: Option<&AnySeries>, op: SeriesOp) -> Result<AnySeries> {
        fn go<C: Coefficient>(a: &VSeries<C>, b: Option<&VSeries<C>>, op: SeriesOp) -> Result<VSeries<C>> {
            let need = || b.ok_or_else(|| Error::Invalid("binary operation needs two operands".into()));
            match op {
                SeriesOp::Add => a.add(need()?),
                SeriesOp::Sub => a.sub(need()?),
                SeriesOp::Mul => a.mul(need()?),
                SeriesOp::Invert => a.invert(),
            }
        }
        match (self, other) {
            (AnySeries::Exact(a), None) => Ok(AnySeries::Exact(go(a, None, op)?)),
            (AnySeries::Exact(a), Some(AnySeries::Exact(b))) => Ok(AnySeries::Exact(go(a, Some(b), op)?)),
            (AnySeries::Truncated(a), None) => Ok(AnySeries::Truncated(go(a, None, op)?)),
            (AnySeries::Truncated(a), Some(AnySeries::Truncated(b))) => {
                Ok(AnySeries::Truncated(go(a, Some(b), op)?))
            }
            _ => Err(Error::Invalid("mode mismatch between EXACT and TRUNCATED series".into())),
        }
    }

    pub fn residue2_coeff(&self) -> Result<FieldElement> {
        match self {
            AnySeries::Exact(s) => s.residue2_coeff(),
            AnySeries::Truncated(s) => s.residue2_coeff(),
        }
    }

    pub fn rho_string(&self) -> Result<String> {
        Ok(match self {
            AnySeries::Exact(s) => s.rho()?.fmt_var("u"),
            AnySeries::Truncated(s) => s.rho()?.to_string(),
        })
    }
}

impl fmt::Display for AnySeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnySeries::Exact(s) => fmt::Display::fmt(s, f),
            AnySeries::Truncated(s) => fmt::Display::fmt(s, f),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f7() -> Field {
        Field::prime(7).unwrap()
    }

    fn tctx(field: Field) -> TruncCtx {
        TruncCtx { field, u_precision: 12 }
    }

    fn bp(field: Field, terms: &[(usize, usize, i64)]) -> BiPoly {
        BiPoly::from_terms(field, terms)
    }

    #[test]
    fn geometric_inverse() {
        let f = f7();
        let s = VSeries::<UniRat>::from_bipoly(&bp(f, &[(0, 0, 1), (0, 1, -1)]), f, 5).invert().unwrap();
        assert_eq!(s.lo(), 0);
        assert_eq!(s.hi(), 5);
        assert!(s.coeffs().iter().all(|c| *c == UniRat::one(f)));
    }

    #[test]
    fn inverse_of_u_minus_v_exact() {
        let f = f7();
        let s = VSeries::<UniRat>::from_bipoly(&bp(f, &[(1, 0, 1), (0, 1, -1)]), f, 4).invert().unwrap();
        for k in 0..=4 {
            let expect = UniRat::new(UniPoly::one(f), UniPoly::monomial(f.one(), k + 1)).unwrap();
            assert_eq!(s.coefficient(k as i64).unwrap(), expect);
        }
        let e = expand_rational::<UniRat>(&BiPoly::one(f), &bp(f, &[(1, 0, 1), (0, 1, -1)]), f, 5).unwrap();
        assert_eq!(e, s);
    }

    #[test]
    fn laurent_product() {
        let f = f7();
        let a = VSeries::<UniRat>::new(f, -1, vec![UniRat::one(f), UniRat::one(f)], 3);
        let b = VSeries::<UniRat>::monomial(f, f.one(), 0, 1, 5);
        let p = a.mul(&b).unwrap();
        assert_eq!(p.lo(), 0);
        assert_eq!(p.coefficient(0).unwrap(), UniRat::one(f));
        assert_eq!(p.coefficient(1).unwrap(), UniRat::one(f));
        assert!(p.coefficient(2).unwrap().is_zero());
    }

    #[test]
    fn expansion_examples() {
        let f = f7();
        let e = expand_rational::<UniRat>(&BiPoly::one(f), &bp(f, &[(1, 1, 1)]), f, 4).unwrap();
        assert_eq!(e.lo(), -1);
        assert_eq!(e.residue2_coeff().unwrap(), f.one());
        let e = expand_rational::<UniLaurent>(&bp(f, &[(1, 0, 1), (0, 1, 1)]), &bp(f, &[(2, 0, 1)]), tctx(f), 3)
            .unwrap();
        assert_eq!(e.render(), "1*(u^-1)*(v^0) + 1*(u^-2)*(v^1) + O(v^3)");
    }

    #[test]
    fn derivatives_and_jacobians() {
        let f = Field::prime(5).unwrap();
        let v5 = VSeries::<UniRat>::monomial(f, f.one(), 0, 5, 8);
        assert!(v5.d_dv().is_zero());
        let u = VSeries::<UniRat>::monomial(f, f.one(), 1, 0, 6);
        let v = VSeries::<UniRat>::monomial(f, f.one(), 0, 1, 6);
        let one = |s: &VSeries<UniRat>| s.coefficient(0).unwrap();
        assert_eq!(one(&jacobian(&u, &v).unwrap()), UniRat::one(f));
        assert_eq!(one(&jacobian(&v, &u).unwrap()), UniRat::constant(f.from_int(-1)));
        let u2 = u.mul(&u).unwrap();
        assert_eq!(one(&jacobian(&u2, &v).unwrap()), UniRat::from_poly(UniPoly::from_ints(f, &[0, 2])));
    }

    #[test]
    fn rho_examples() {
        let f = f7();
        let ctx = tctx(f);
        let s = VSeries::<UniLaurent>::new(
            ctx,
            -1,
            vec![
                UniLaurent::monomial(f.one(), -1),
                UniLaurent::monomial(f.from_int(3), 0),
                UniLaurent::monomial(f.one(), 0),
            ],
            4,
        );
        assert_eq!(s.rho().unwrap(), UniLaurent::monomial(f.one(), -1));
        let t = VSeries::<UniLaurent>::monomial(ctx, f.one(), 0, 0, 3);
        assert!(t.rho().unwrap().is_exact_zero());
        let too_short = VSeries::<UniLaurent>::monomial(ctx, f.one(), 0, -3, -2);
        assert!(too_short.rho().is_err());
        // d(1/u) ^ d(1/v) has no residue.
        let a = expand_rational::<UniRat>(&BiPoly::one(f), &BiPoly::x(f), f, 4).unwrap();
        let b = expand_rational::<UniRat>(&BiPoly::one(f), &BiPoly::y(f), f, 4).unwrap();
        assert_eq!(jacobian(&a, &b).unwrap().residue2_coeff().unwrap(), f.zero());
    }

    #[test]
    fn mode_mismatch_is_rejected() {
        let f = f7();
        let a = AnySeries::expand(&BiPoly::one(f), &BiPoly::y(f), Mode::Exact, 4).unwrap();
        let b = AnySeries::expand(&BiPoly::one(f), &BiPoly::y(f), Mode::Truncated { u_precision: 5 }, 4).unwrap();
        assert!(a.arith(Some(&b), SeriesOp::Add).is_err());
        assert!(a.arith(Some(&a), SeriesOp::Mul).is_ok());
    }

    #[test]
    fn exact_and_truncated_agree() {
        let f = f7();
        let num = bp(f, &[(0, 0, 3), (1, 1, 2), (2, 2, 1)]);
        let den = bp(f, &[(2, 0, 1), (0, 1, 1), (1, 2, 5)]);
        let ex = expand_rational::<UniRat>(&num, &den, f, 5).unwrap();
        let tr = expand_rational::<UniLaurent>(&num, &den, tctx(f), 5).unwrap();
        assert!(ex.to_truncated(6, 12).agrees_with(&tr));
    }
}

//! Change of variables u = f(x, y), v = g(x, y) on truncated series.
//!
//! A coefficient s_j(u) known up to u^h is composed with f by Horner on its
//! stored terms. The unknown tail is a combination of powers f^N, N > h. Write
//! f = f_0 + Σ_{i≥1} f_i y^i with f_0 of x-valuation 1 and let
//! μ_k = min_{1≤i≤k} val(f_i). The y^k coefficient of f^N has x-valuation at
//! least N + k·min(0, μ_k − 1), which is increasing in N, so the y^k
//! coefficient of s_j(f) is certified up to x^(h + k·min(0, μ_k − 1)).
//! Truncating s at v^H costs O(y^(H+1)) because g has y-valuation 1.

use super::{UniLaurent, VSeries, EXACT};
use crate::error::{Error, Result};

type TSeries = VSeries<UniLaurent>;

/// s(f(x, y), g(x, y)) in truncated mode.
pub fn substitute_cv(s: &TSeries, f: &TSeries, g: &TSeries) -> Result<TSeries> {
    if s.ctx() != f.ctx() || s.ctx() != g.ctx() {
        return Err(Error::ContextMismatch);
    }
    let ctx = *s.ctx();
    if f.lo() < 0 || g.lo() < 0 {
        return Err(Error::Invalid("change of variables must be regular in y".into()));
    }
    if f.coefficient(0)?.valuation() != Some(1) {
        return Err(Error::Invalid("f(x,0) must have x-valuation exactly 1".into()));
    }
    if !g.coefficient(0)?.is_zero_on_window() || g.coefficient(1)?.is_zero_on_window() {
        return Err(Error::Invalid("g must have y-valuation exactly 1".into()));
    }
    // g = y·gu with gu a unit; the v^0 coefficient of g is zero by the check above.
    let gu = TSeries::new(ctx, 0, g.coeffs()[((1 - g.lo()) as usize)..].to_vec(), g.hi() - 1);

    let mu: Vec<i64> = {
        let mut acc = EXACT;
        (0..=f.hi().max(0))
            .map(|k| {
                if k >= 1 {
                    acc = acc.min(f.coefficient(k).map(|c| c.val_bound()).unwrap_or(EXACT));
                }
                acc
            })
            .collect()
    };
    let tail_bound = |h: i64, k: i64| -> i64 {
        if h >= EXACT {
            return EXACT;
        }
        let m = mu.get(k.max(0) as usize).copied().unwrap_or(EXACT);
        if k <= 0 || m >= EXACT {
            h
        } else {
            h + k * (m - 1).min(0)
        }
    };

    let needs_finv = s.coeffs().iter().any(|c| !c.is_zero_on_window() && c.lo() < 0);
    let finv = if needs_finv { Some(f.invert()?) } else { None };

    let mut gpow = gu.pow(s.lo())?.shift(s.lo());
    let mut out = TSeries::zero(ctx, s.hi());
    for (idx, sj) in s.coeffs().iter().enumerate() {
        if idx > 0 {
            gpow = gpow.mul(&gu)?.shift(1);
        }
        if sj.is_exact_zero() {
            continue;
        }
        let h = sj.hi();
        let comp = compose(sj, f, finv.as_ref())?.cap_u_windows(|k| tail_bound(h, k));
        out = out.add(&comp.mul(&gpow)?)?;
    }
    Ok(out.truncate(s.hi()))
}

/// The stored part of `c`, evaluated at u = f.
fn compose(c: &UniLaurent, f: &TSeries, finv: Option<&TSeries>) -> Result<TSeries> {
    let ctx = *f.ctx();
    if c.is_zero_on_window() {
        let zero = UniLaurent::zero(ctx.field, c.hi());
        return Ok(TSeries::new(ctx, 0, vec![zero; (f.hi() + 1).max(0) as usize], f.hi()));
    }
    let mut acc = TSeries::zero(ctx, f.hi());
    for &a in c.coeffs().iter().rev() {
        acc = acc.mul(f)?.add(&TSeries::constant(ctx, UniLaurent::monomial(a, 0), f.hi()))?;
    }
    let base = if c.lo() >= 0 {
        f.pow(c.lo())?
    } else {
        finv.ok_or_else(|| Error::Invalid("missing inverse of f".into()))?.pow(-c.lo())?
    };
    acc.mul(&base)
}

/// Pullback of the form s du∧dv: substitute_cv(s, f, g)·Jac(f, g).
pub fn pullback_form(s: &TSeries, f: &TSeries, g: &TSeries) -> Result<TSeries> {
    substitute_cv(s, f, g)?.mul(&super::jacobian(f, g)?)
}

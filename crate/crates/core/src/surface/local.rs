//! Local coordinates (u, v) at a smooth point of a curve and the 1- and
//! 2-residues computed in them.
//!
//! In the chart of P, after translating P to the origin, let e(s, t) be the
//! local equation of C with ∂e/∂t(0,0) ≠ 0 (s, t being x, y or y, x). Then
//! u = s, v = e(s, t) and t = T(u, v) inverts the map. Since
//! du∧dv = e_t ds∧dt, a form h dx∧dy becomes sign·h(u, T)/e_t(u, T) du∧dv,
//! where sign = -1 when s = y.
//!
//! When e is linear in t, T = (v - A(u))/B(u) is rational and the expansion
//! is exact. Otherwise T is a truncated power series from the fixed point
//! T = (v - αu - Q(u, T))/β, with Q the part of e of total degree ≥ 2.

use crate::error::{Error, Result};
use crate::field::{Embedding, Field, FieldElement};
use crate::laurent::{default_v_precision, expand_rational, TruncCtx, UniLaurent, VSeries};
use crate::poly::{BiPoly, UniPoly};
use crate::rational::{BiRat, UniRat};

use super::{function_in_chart, Curve, Divisor, Surface, SurfacePoint, TwoForm};

/// Largest total-degree window tried by the truncated expansion.
const MAX_WINDOW: i64 = 256;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Orient {
    /// u = x when ∂e/∂y(P) ≠ 0, else u = y.
    Default,
    /// The other admissible choice, if there is one.
    Alternate,
    /// An admissible choice where e is linear in t, when one exists.
    PreferExact,
}

/// Local coordinates at a smooth point P of C.
#[derive(Clone, Debug)]
pub struct WeakPair {
    surface: Surface,
    point: SurfacePoint,
    emb: &'static Embedding,
    /// Local equation of C in (s, t), P at the origin, over the field of P.
    e: BiPoly,
    /// u = y (and t = x) instead of u = x.
    swapped: bool,
}

/// Local coordinates with u = x − x_P when ∂e/∂y(P) ≠ 0, else u = y − y_P.
pub fn weak_pair(surface: &Surface, c: &Curve, p: &SurfacePoint) -> Result<WeakPair> {
    WeakPair::new(surface, c, p, Orient::Default)
}

impl WeakPair {
    fn new(surface: &Surface, c: &Curve, p: &SurfacePoint, orient: Orient) -> Result<WeakPair> {
        let field = p.field();
        let emb = surface.field.embedding(field)?;
        let (a, b) = p.coords();
        let e = surface.local_eq(c, p.chart())?.map(emb).translate(a, b);
        if !e.coeff(0, 0).is_zero() {
            return Err(Error::Invalid(format!("point {} is not on {c}", surface.fmt_point(p))));
        }
        let (ex, ey) = (e.coeff(1, 0), e.coeff(0, 1));
        if ex.is_zero() && ey.is_zero() {
            return Err(Error::Singular(format!("{c} is singular at {}", surface.fmt_point(p))));
        }
        let default_swapped = ey.is_zero();
        let swapped = match orient {
            Orient::Default => default_swapped,
            Orient::Alternate => {
                if ex.is_zero() || ey.is_zero() {
                    return Err(Error::Invalid("only one coordinate is a local parameter here".into()));
                }
                !default_swapped
            }
            Orient::PreferExact => {
                let linear_in_y = e.deg_y().unwrap_or(0) <= 1;
                let linear_in_x = e.deg_x().unwrap_or(0) <= 1;
                if !ey.is_zero() && linear_in_y {
                    false
                } else if !ex.is_zero() && linear_in_x {
                    true
                } else {
                    default_swapped
                }
            }
        };
        let e = if swapped { e.swap() } else { e };
        Ok(WeakPair { surface: *surface, point: *p, emb, e, swapped })
    }

    pub fn point(&self) -> SurfacePoint {
        self.point
    }

    pub fn field(&self) -> Field {
        self.point.field()
    }

    /// Whether u is the (translated) y coordinate.
    pub fn u_is_y(&self) -> bool {
        self.swapped
    }

    /// u and v as text, in chart coordinates.
    pub fn describe(&self) -> (String, String) {
        let (a, b) = self.point.coords();
        let (var, at) = if self.swapped { ("y", b) } else { ("x", a) };
        let u = if at.is_zero() { var.to_string() } else { format!("{var} - ({at})") };
        let (vx, vy) = if self.swapped { ("Y", "X") } else { ("X", "Y") };
        (u, self.e.fmt_vars(vx, vy))
    }

    /// Local equation e(s, t).
    pub fn local_equation(&self) -> &BiPoly {
        &self.e
    }

    fn sign(&self) -> FieldElement {
        let f = self.field();
        if self.swapped {
            f.from_int(-1)
        } else {
            f.one()
        }
    }

    /// A chart polynomial over the base field, in (s, t).
    fn transform(&self, p: &BiPoly) -> BiPoly {
        let (a, b) = self.point.coords();
        let q = p.map(self.emb).translate(a, b);
        if self.swapped {
            q.swap()
        } else {
            q
        }
    }

    /// (A, B) with e = A(s) + B(s)·t, when e is linear in t.
    fn linear_parts(&self) -> Option<(UniPoly, UniPoly)> {
        if self.e.deg_y().unwrap_or(0) > 1 {
            return None;
        }
        let rows = self.e.rows();
        Some((rows[0].clone(), rows.get(1).cloned().unwrap_or_else(|| UniPoly::zero(self.field()))))
    }

    pub fn is_exact(&self) -> bool {
        self.linear_parts().is_some()
    }

    /// T(u, v) with t = T, truncated at total degree `k`.
    pub fn t_series(&self, k: i64) -> BiPoly {
        let f = self.field();
        let alpha = self.e.coeff(1, 0);
        let beta_inv = self.e.coeff(0, 1).inv().expect("smooth in t");
        let q = &(&self.e - &BiPoly::monomial(alpha, 1, 0)) - &BiPoly::monomial(self.e.coeff(0, 1), 0, 1);
        let base = &BiPoly::y(f) - &BiPoly::monomial(alpha, 1, 0);
        let mut t = BiPoly::zero(f);
        for _ in 0..=k {
            let qt = compose_trunc(&q, &t, k);
            t = (&base - &qt).scale(beta_inv);
        }
        t
    }

    /// The inverse map: (x, y) − P as truncated series in (u, v).
    pub fn inverse(&self, k: i64) -> (BiPoly, BiPoly) {
        let u = BiPoly::x(self.field());
        let t = self.t_series(k);
        if self.swapped {
            (t, u)
        } else {
            (u, t)
        }
    }
}

fn truncate_total(p: &BiPoly, k: i64) -> BiPoly {
    let rows = p
        .rows()
        .iter()
        .enumerate()
        .map(|(j, r)| {
            let keep = (k - j as i64 + 1).max(0) as usize;
            UniPoly::new(p.field(), r.coeffs().iter().take(keep).copied().collect())
        })
        .collect();
    BiPoly::new(p.field(), rows)
}

/// p(u, T(u, v)) truncated at total degree k.
fn compose_trunc(p: &BiPoly, t: &BiPoly, k: i64) -> BiPoly {
    let mut acc = BiPoly::zero(p.field());
    for r in p.rows().iter().rev() {
        acc = truncate_total(&(&acc * t), k);
        acc = &acc + &truncate_total(&BiPoly::from_x(r.clone()), k);
    }
    acc
}

/// Σ_j p_j(u)·(v − A)^j·B^(n−j) = p(u, (v − A)/B)·B^n, with n = deg_t p.
fn subst_linear(p: &BiPoly, a: &UniPoly, b: &UniPoly) -> (BiPoly, u32) {
    let n = p.deg_y().unwrap_or(0);
    let f = p.field();
    let vma = &BiPoly::y(f) - &BiPoly::from_x(a.clone());
    let bb = BiPoly::from_x(b.clone());
    let mut out = BiPoly::zero(f);
    let mut pw = BiPoly::one(f);
    let mut bpow = vec![BiPoly::one(f)];
    for _ in 0..n {
        let last = bpow.last().unwrap().clone();
        bpow.push(&last * &bb);
    }
    for (j, r) in p.rows().iter().enumerate() {
        if !r.is_zero() {
            out = &out + &(&(&pw * &BiPoly::from_x(r.clone())) * &bpow[n - j]);
        }
        pw = &pw * &vma;
    }
    (out, n as u32)
}

/// Numerator and denominator in (u, v) with ω = num/den du∧dv, exact path.
fn exact_rational(w: &WeakPair, h: &BiRat) -> Result<(BiPoly, BiPoly)> {
    let (a, b) = w.linear_parts().ok_or_else(|| Error::Invalid("curve is not linear in t".into()))?;
    let (n, kn) = subst_linear(&w.transform(h.num()), &a, &b);
    let (d, kd) = subst_linear(&w.transform(h.den()), &a, &b);
    let num = BiPoly::from_x(b.pow(kd)).scale(w.sign());
    let den = BiPoly::from_x(b.pow(kn + 1));
    Ok((&n * &num, &d * &den))
}

/// Exact expansion of ω in the local coordinates of an exact pair.
fn expand_exact(w: &WeakPair, h: &BiRat, v_precision: Option<i64>) -> Result<VSeries<UniRat>> {
    let (num, den) = exact_rational(w, h)?;
    let lo_v = |p: &BiPoly| p.rows().iter().position(|r| !r.is_zero()).unwrap_or(0) as i64;
    let pole = lo_v(&den) - lo_v(&num);
    let prec = v_precision.unwrap_or_else(|| default_v_precision(pole));
    expand_rational::<UniRat>(&num, &den, w.field(), prec)
}

/// Truncated series of a bivariate truncated polynomial: v^j certified to
/// u^(k − j).
fn windowed(p: &BiPoly, ctx: TruncCtx, k: i64) -> VSeries<UniLaurent> {
    let c = (0..=k)
        .map(|j| {
            let r = p.rows().get(j as usize).cloned().unwrap_or_else(|| UniPoly::zero(ctx.field));
            UniLaurent::new(ctx.field, 0, r.coeffs().to_vec(), k - j)
        })
        .collect();
    VSeries::new(ctx, 0, c, k)
}

/// Truncated expansion of ω with total-degree window k.
fn expand_truncated(w: &WeakPair, c: &Curve, h: &BiRat, k: i64) -> Result<VSeries<UniLaurent>> {
    let eq = w.surface.local_eq(c, w.point.chart())?;
    let (a, dd) = h.den().split_power(&eq);
    let (b, nn) = h.num().split_power(&eq);
    let ctx = TruncCtx { field: w.field(), u_precision: k };
    let t = w.t_series(k);
    let ns = windowed(&compose_trunc(&w.transform(&nn), &t, k), ctx, k);
    let ds = windowed(&compose_trunc(&w.transform(&dd), &t, k), ctx, k);
    let es = windowed(&compose_trunc(&w.e.d_dy(), &t, k), ctx, k);
    let s = ns.mul(&ds.mul(&es)?.invert()?)?;
    Ok(s.shift(b as i64 - a as i64).scale(w.sign()))
}

fn form_in_chart(form: &TwoForm, p: &SurfacePoint) -> Result<BiRat> {
    form.coefficient_in(p.chart())
}

/// Exact expansion of a fixed form ω along C at P, reused to get
/// res²_{C,P}(f·ω) for many chart polynomials f: with f(u, T) = Σ g_j(u) v^j
/// the 2-residue is Σ_j res_u(g_j · s_{-1-j}).
#[derive(Clone, Debug)]
pub struct LocalExpansion {
    w: WeakPair,
    a: UniPoly,
    b: UniPoly,
    max_t_degree: usize,
    /// Laurent coefficients of s_{-1-j}/B^max_t_degree on [lo_j, -1].
    tails: Vec<(i64, Vec<FieldElement>)>,
}

impl LocalExpansion {
    /// `None` when C is not linear in a local parameter at P. Multipliers
    /// passed later must have degree at most `max_t_degree` in t.
    pub fn new(form: &TwoForm, c: &Curve, p: &SurfacePoint, max_t_degree: usize) -> Result<Option<LocalExpansion>> {
        let s = form.surface();
        let w = WeakPair::new(&s, c, p, Orient::PreferExact)?;
        let Some((a, b)) = w.linear_parts() else {
            return Ok(None);
        };
        let series = expand_exact(&w, &form_in_chart(form, p)?, None)?;
        let bn = UniRat::from_poly(b.pow(max_t_degree as u32)).inv()?;
        let mut tails = Vec::new();
        let mut j = 0i64;
        while -1 - j >= series.lo() {
            let sj = &series.coefficient(-1 - j)? * &bn;
            tails.push(sj.laurent_coeffs(-1));
            j += 1;
        }
        Ok(Some(LocalExpansion { w, a, b, max_t_degree, tails }))
    }

    /// res²_{C,P}(f·ω) for a polynomial f in the coordinates of P's chart,
    /// with coefficients in the base field.
    pub fn residue_of_multiple(&self, f: &BiPoly) -> Result<FieldElement> {
        let field = self.w.field();
        let tf = self.w.transform(f);
        let n = tf.deg_y().unwrap_or(0);
        if n > self.max_t_degree {
            return Err(Error::Invalid(format!("multiplier has t-degree {n} above {}", self.max_t_degree)));
        }
        let (g, _) = subst_linear(&tf, &self.a, &self.b);
        let pad = self.b.pow((self.max_t_degree - n) as u32);
        let mut acc = field.zero();
        for (row, (lo, coeffs)) in g.rows().iter().zip(&self.tails) {
            let row = row * &pad;
            for (i, &c) in row.coeffs().iter().enumerate() {
                // u^i times the u^(-1-i) coefficient.
                let k = -1 - i as i64 - lo;
                if k < 0 {
                    break;
                }
                acc += c * coeffs[k as usize];
            }
        }
        Ok(acc)
    }
}

/// The local 1-residue h_{-1}(u): exact when the curve is linear in one
/// coordinate at P, a certified truncated series otherwise.
#[derive(Clone, Debug, PartialEq)]
pub enum Res1 {
    Exact(UniRat),
    Truncated(UniLaurent),
}

impl Res1 {
    pub fn residue(&self) -> Result<FieldElement> {
        match self {
            Res1::Exact(r) => Ok(r.residue_at_zero()),
            Res1::Truncated(s) => s.residue(),
        }
    }
}

impl std::fmt::Display for Res1 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Res1::Exact(r) => f.write_str(&r.fmt_var("u")),
            Res1::Truncated(s) => write!(f, "{s}"),
        }
    }
}

/// The v^-1 coefficient of ω along C at P.
pub fn res1(form: &TwoForm, c: &Curve, p: &SurfacePoint) -> Result<Res1> {
    let s = form.surface();
    let w = WeakPair::new(&s, c, p, Orient::PreferExact)?;
    let h = form_in_chart(form, p)?;
    if w.is_exact() {
        return Ok(Res1::Exact(expand_exact(&w, &h, None)?.rho()?));
    }
    let w = WeakPair::new(&s, c, p, Orient::Default)?;
    truncated_with_retry(&w, c, &h, 16, |series| Ok(Res1::Truncated(series.rho()?)))
}

fn truncated_with_retry<T>(
    w: &WeakPair,
    c: &Curve,
    h: &BiRat,
    k0: i64,
    finish: impl Fn(&VSeries<UniLaurent>) -> Result<T>,
) -> Result<T> {
    let mut k = k0;
    loop {
        let attempt = expand_truncated(w, c, h, k).and_then(|s| {
            let out = finish(&s)?;
            // The 1-residue must also certify u^-1 to be usable.
            s.residue2_coeff()?;
            Ok(out)
        });
        match attempt {
            Err(Error::Precision(_)) if k < MAX_WINDOW => k *= 2,
            other => return other,
        }
    }
}

/// The 2-residue of ω along C at P (a smooth point of C).
pub fn res2(form: &TwoForm, c: &Curve, p: &SurfacePoint) -> Result<FieldElement> {
    let s = form.surface();
    let w = WeakPair::new(&s, c, p, Orient::PreferExact)?;
    let h = form_in_chart(form, p)?;
    if w.is_exact() {
        return expand_exact(&w, &h, None)?.residue2_coeff();
    }
    let w = WeakPair::new(&s, c, p, Orient::Default)?;
    truncated_with_retry(&w, c, &h, 16, |series| series.residue2_coeff())
}

/// The 2-residue through the fixed-point inverse and truncated arithmetic
/// only, starting from total-degree window `k0` and doubling on precision
/// failure. `alternate` selects the other admissible u when both are.
pub fn res2_truncated(form: &TwoForm, c: &Curve, p: &SurfacePoint, k0: i64, alternate: bool) -> Result<FieldElement> {
    let s = form.surface();
    let orient = if alternate { Orient::Alternate } else { Orient::Default };
    let w = WeakPair::new(&s, c, p, orient)?;
    let h = form_in_chart(form, p)?;
    truncated_with_retry(&w, c, &h, k0, |series| series.residue2_coeff())
}

/// Two-step 2-residue for a simple pole along C: the 1-residue as the exact
/// rational function sign·N/(D'·B) on the parametrization t = −A(u)/B(u),
/// then its univariate residue at u = 0. `None` when the pole along C is not
/// simple or the curve is not linear in a local parameter.
pub fn res2_two_step(form: &TwoForm, c: &Curve, p: &SurfacePoint) -> Result<Option<FieldElement>> {
    let s = form.surface();
    let w = WeakPair::new(&s, c, p, Orient::PreferExact)?;
    let Some((a, b)) = w.linear_parts() else {
        return Ok(None);
    };
    let h = form_in_chart(form, p)?;
    let eq = s.local_eq(c, p.chart())?;
    let (k_den, dd) = h.den().split_power(&eq);
    let (k_num, _) = h.num().split_power(&eq);
    if k_den != 1 || k_num != 0 {
        return Ok(None);
    }
    let r = UniRat::new(-&a, b.clone())?;
    let eval = |poly: &BiPoly| -> UniRat {
        let mut acc = UniRat::zero(w.field());
        for row in w.transform(poly).rows().iter().rev() {
            acc = &(&acc * &r) + &UniRat::from_poly(row.clone());
        }
        acc
    };
    let den = &eval(&dd) * &UniRat::from_poly(b);
    let h1 = (&eval(h.num()) * &den.inv()?).scale(w.sign());
    Ok(Some(h1.residue_at_zero()))
}

/// Sum of the 2-residues along the support components of D through P.
pub fn res2_divisor(form: &TwoForm, d: &Divisor, p: &SurfacePoint) -> Result<FieldElement> {
    let s = form.surface();
    let mut acc = p.field().zero();
    for c in d.support() {
        if passes_through(&s, &c, p)? {
            acc += res2(form, &c, p)?;
        }
    }
    Ok(acc)
}

pub(crate) fn passes_through(s: &Surface, c: &Curve, p: &SurfacePoint) -> Result<bool> {
    let emb = s.field.embedding(p.field())?;
    let (a, b) = p.coords();
    Ok(s.local_eq(c, p.chart())?.map(emb).eval(a, b).is_zero())
}

/// Restriction to C near P of a chart polynomial, as a series in u.
fn restrict_poly(w: &WeakPair, p: &BiPoly, precision: i64) -> Result<UniLaurent> {
    let f = w.field();
    let tp = w.transform(p);
    if let Some((a, b)) = w.linear_parts() {
        let (n, k) = subst_linear(&tp, &a, &b);
        let r = UniRat::new(n.rows().first().cloned().unwrap_or_else(|| UniPoly::zero(f)), b.pow(k))?;
        return Ok(UniLaurent::from_rat(&r, precision));
    }
    let t0 = w.t_series(precision);
    let t0 = UniLaurent::new(f, 0, t0.rows().first().map(|r| r.coeffs().to_vec()).unwrap_or_default(), precision);
    let mut acc = UniLaurent::exact_zero(f);
    for row in tp.rows().iter().rev() {
        acc = acc.mul(&t0).add(&UniLaurent::from_poly(row));
    }
    Ok(acc.truncate(precision))
}

/// Valuation along C at P of a chart polynomial not divisible by C's equation.
fn restricted_valuation(w: &WeakPair, c: &Curve, p: &BiPoly) -> Result<i64> {
    let eq = w.surface.local_eq(c, w.point.chart())?;
    if p.is_zero() || p.div_exact(&eq).is_some() {
        return Err(Error::Invalid(format!("the function vanishes identically on {c}")));
    }
    let mut k = 8;
    loop {
        if let Some(v) = restrict_poly(w, p, k)?.valuation() {
            return Ok(v);
        }
        if k >= MAX_WINDOW {
            return Err(Error::Precision("restriction stays zero on every window".into()));
        }
        k *= 2;
    }
}

/// f (a function in chart-0 coordinates) restricted to C near P, as a
/// Laurent series in u certified up to u^precision.
pub fn restrict_to_curve(
    surface: &Surface,
    f: &BiRat,
    c: &Curve,
    p: &SurfacePoint,
    precision: i64,
) -> Result<UniLaurent> {
    let w = weak_pair(surface, c, p)?;
    let fc = function_in_chart(surface, f, p.chart());
    let eq = surface.local_eq(c, p.chart())?;
    if fc.den().div_exact(&eq).is_some() {
        return Err(Error::Invalid(format!("denominator vanishes identically on {c}")));
    }
    let vd = restricted_valuation(&w, c, fc.den())?;
    let vn = if fc.num().is_zero() { 0 } else { restricted_valuation(&w, c, fc.num()).unwrap_or(precision + 1) };
    // Enough terms for the quotient to be certified up to u^precision.
    let k = precision + 2 * vd.max(0) + vn.max(0) + 1;
    let n = restrict_poly(&w, fc.num(), k)?;
    let d = restrict_poly(&w, fc.den(), k)?;
    Ok(n.mul(&d.inv(k)?).truncate(precision))
}

/// Σ over components C' of D of coeff(C')·val_P(C'|_C).
pub fn intersection_multiplicity(surface: &Surface, c: &Curve, d: &Divisor, p: &SurfacePoint) -> Result<i64> {
    if d.coeff(c) != 0 {
        return Err(Error::Invalid(format!("{c} is a component of the divisor")));
    }
    let w = weak_pair(surface, c, p)?;
    let mut total = 0;
    for (cc, &k) in d.iter() {
        if !passes_through(surface, cc, p)? {
            continue;
        }
        let eq = surface.local_eq(cc, p.chart())?;
        total += k * restricted_valuation(&w, c, &eq)?;
    }
    Ok(total)
}

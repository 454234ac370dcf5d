//! P² and P¹×P¹ with their standard affine charts, curves, divisors, points
//! and rational 2-forms, plus local residue computations and the residue
//! formula verifiers.
//!
//! Charts. On P², chart 0 is (x, y) = (X/Z, Y/Z), chart 1 is (Z/X, Y/X) and
//! chart 2 is (X/Y, Z/Y). On P¹×P¹ the chart index is a bit mask: bit 0 uses
//! 1/x in place of x, bit 1 uses 1/y in place of y. Every chart map is an
//! involution when written in chart-0 coordinates.

mod factor;
mod local;
mod points;
mod verify;

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Embedding, Field, FieldElement};
use crate::poly::BiPoly;
use crate::rational::BiRat;

pub use factor::{factor_bi, factor_uni, is_irreducible_uni};
pub use local::{
    intersection_multiplicity, res1, res2, res2_divisor, res2_truncated, res2_two_step, restrict_to_curve,
    weak_pair, LocalExpansion, Res1, WeakPair,
};
pub use points::{intersect, Orbit};
pub use verify::{check_membership, verify_rf1, verify_rf2, verify_rf3, PointResidue, RfReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SurfaceKind {
    P2,
    P1xP1,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Surface {
    pub kind: SurfaceKind,
    pub field: Field,
}

/// Divisor class: the degree on P² (second entry 0), the bidegree on P¹×P¹.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Class(pub i64, pub i64);

impl Surface {
    pub fn new(kind: SurfaceKind, field: Field) -> Surface {
        Surface { kind, field }
    }

    pub fn p2(field: Field) -> Surface {
        Surface::new(SurfaceKind::P2, field)
    }

    pub fn p1xp1(field: Field) -> Surface {
        Surface::new(SurfaceKind::P1xP1, field)
    }

    pub fn chart_count(&self) -> usize {
        match self.kind {
            SurfaceKind::P2 => 3,
            SurfaceKind::P1xP1 => 4,
        }
    }

    fn check_chart(&self, c: usize) -> Result<()> {
        if c < self.chart_count() {
            Ok(())
        } else {
            Err(Error::Invalid(format!("chart {c} does not exist on {}", self.name())))
        }
    }

    pub fn name(&self) -> &'static str {
        match self.kind {
            SurfaceKind::P2 => "P2",
            SurfaceKind::P1xP1 => "P1xP1",
        }
    }

    /// Chart-0 coordinates (X, Y) as functions of chart-c coordinates, and the
    /// Jacobian det ∂(X,Y)/∂(x,y).
    pub fn chart_map(&self, c: usize) -> (BiRat, BiRat, BiRat) {
        let f = self.field;
        let (x, y) = (BiRat::x(f), BiRat::y(f));
        let inv = |r: &BiRat| r.inv().expect("coordinate is nonzero");
        let neg_one = BiRat::constant(f.from_int(-1));
        match (self.kind, c) {
            (_, 0) => (x, y, BiRat::one(f)),
            (SurfaceKind::P2, 1) => {
                let ix = inv(&x);
                let j = &neg_one * &ix.pow(3).expect("nonzero");
                (ix.clone(), &y * &ix, j)
            }
            (SurfaceKind::P2, 2) => {
                let iy = inv(&y);
                let j = &neg_one * &iy.pow(3).expect("nonzero");
                (&x * &iy, iy, j)
            }
            (SurfaceKind::P1xP1, c) => {
                let mut j = BiRat::one(f);
                let nx = if c & 1 == 1 {
                    j = &(&j * &neg_one) * &inv(&x).pow(2).expect("nonzero");
                    inv(&x)
                } else {
                    x
                };
                let ny = if c & 2 == 2 {
                    j = &(&j * &neg_one) * &inv(&y).pow(2).expect("nonzero");
                    inv(&y)
                } else {
                    y
                };
                (nx, ny, j)
            }
            _ => unreachable!("chart index checked by callers"),
        }
    }

    /// The boundary curves (complement of chart 0).
    pub fn boundary(&self) -> Vec<Curve> {
        match self.kind {
            SurfaceKind::P2 => vec![Curve::linf(self.field)],
            SurfaceKind::P1xP1 => vec![Curve::e(self.field), Curve::f(self.field)],
        }
    }

    pub fn class_of(&self, c: &Curve) -> Result<Class> {
        match (self.kind, c.kind) {
            (SurfaceKind::P2, CurveKind::Linf) => Ok(Class(1, 0)),
            (SurfaceKind::P1xP1, CurveKind::E) => Ok(Class(1, 0)),
            (SurfaceKind::P1xP1, CurveKind::F) => Ok(Class(0, 1)),
            (SurfaceKind::P2, CurveKind::Affine) => Ok(Class(c.eq.total_degree().unwrap_or(0) as i64, 0)),
            (SurfaceKind::P1xP1, CurveKind::Affine) => {
                Ok(Class(c.eq.deg_x().unwrap_or(0) as i64, c.eq.deg_y().unwrap_or(0) as i64))
            }
            _ => Err(Error::Invalid(format!("curve {c} does not live on {}", self.name()))),
        }
    }

    pub fn class_of_divisor(&self, d: &Divisor) -> Result<Class> {
        let mut acc = Class(0, 0);
        for (c, &k) in d.iter() {
            let cl = self.class_of(c)?;
            acc = Class(acc.0 + k * cl.0, acc.1 + k * cl.1);
        }
        Ok(acc)
    }

    /// Intersection number of two classes.
    pub fn intersection_number(&self, a: Class, b: Class) -> i64 {
        match self.kind {
            SurfaceKind::P2 => a.0 * b.0,
            SurfaceKind::P1xP1 => a.0 * b.1 + a.1 * b.0,
        }
    }

    /// Class of a canonical divisor.
    pub fn canonical_class(&self) -> Class {
        match self.kind {
            SurfaceKind::P2 => Class(-3, 0),
            SurfaceKind::P1xP1 => Class(-2, -2),
        }
    }

    /// Equation of `c` in chart `chart`, with coefficients in the base field.
    /// Boundary curves not visible in the chart have equation 1.
    pub fn local_eq(&self, c: &Curve, chart: usize) -> Result<BiPoly> {
        self.check_chart(chart)?;
        let f = self.field;
        let one = BiPoly::one(f);
        Ok(match (self.kind, c.kind) {
            (SurfaceKind::P1xP1, CurveKind::E) => {
                if chart & 1 == 1 {
                    BiPoly::x(f)
                } else {
                    one
                }
            }
            (SurfaceKind::P1xP1, CurveKind::F) => {
                if chart & 2 == 2 {
                    BiPoly::y(f)
                } else {
                    one
                }
            }
            (SurfaceKind::P2, CurveKind::Linf) => match chart {
                0 => one,
                1 => BiPoly::x(f),
                _ => BiPoly::y(f),
            },
            (_, CurveKind::Affine) => {
                let cl = self.class_of(c)?;
                let mut acc = BiPoly::zero(f);
                for (i, j, a) in c.eq.terms() {
                    let (i, j) = (i as i64, j as i64);
                    let (ni, nj) = match (self.kind, chart) {
                        (_, 0) => (i, j),
                        (SurfaceKind::P2, 1) => (cl.0 - i - j, j),
                        (SurfaceKind::P2, _) => (i, cl.0 - i - j),
                        (SurfaceKind::P1xP1, c) => {
                            (if c & 1 == 1 { cl.0 - i } else { i }, if c & 2 == 2 { cl.1 - j } else { j })
                        }
                    };
                    acc = &acc + &BiPoly::monomial(a, ni as usize, nj as usize);
                }
                acc
            }
            _ => return Err(Error::Invalid(format!("curve {c} does not live on {}", self.name()))),
        })
    }

    /// Whether the curve passes through the point.
    pub fn passes_through(&self, c: &Curve, p: &SurfacePoint) -> Result<bool> {
        local::passes_through(self, c, p)
    }

    /// Divisor of dx∧dy.
    pub fn canonical_divisor(&self) -> Divisor {
        match self.kind {
            SurfaceKind::P2 => Divisor::single(Curve::linf(self.field), -3),
            SurfaceKind::P1xP1 => Divisor::from_terms([(Curve::e(self.field), -2), (Curve::f(self.field), -2)]),
        }
    }

    /// Canonical point from chart coordinates: the lowest chart containing it.
    pub fn point(&self, chart: usize, a: FieldElement, b: FieldElement) -> Result<SurfacePoint> {
        self.check_chart(chart)?;
        if a.field() != b.field() {
            return Err(Error::ContextMismatch);
        }
        let inv = |z: FieldElement| z.inv().expect("nonzero");
        let (c, a, b) = match (self.kind, chart) {
            (_, 0) => (0, a, b),
            (SurfaceKind::P1xP1, c) => {
                let (mut c, mut a, mut b) = (c, a, b);
                if c & 1 == 1 && !a.is_zero() {
                    c &= !1;
                    a = inv(a);
                }
                if c & 2 == 2 && !b.is_zero() {
                    c &= !2;
                    b = inv(b);
                }
                (c, a, b)
            }
            (SurfaceKind::P2, 1) => {
                if a.is_zero() {
                    (1, a, b)
                } else {
                    (0, inv(a), b * inv(a))
                }
            }
            (SurfaceKind::P2, _) => {
                if !b.is_zero() {
                    (0, a * inv(b), inv(b))
                } else if !a.is_zero() {
                    (1, b, inv(a))
                } else {
                    (2, a, b)
                }
            }
        };
        Ok(SurfacePoint { chart: c as u8, a, b })
    }

    pub fn affine_point(&self, a: FieldElement, b: FieldElement) -> SurfacePoint {
        SurfacePoint { chart: 0, a, b }
    }

    /// Renders a point: chart 0 as "(a,b)", points at infinity with "inf".
    /// On P², "(inf,m)" is the point at infinity of slope m and "(inf,inf)"
    /// the vertical direction.
    pub fn fmt_point(&self, p: &SurfacePoint) -> String {
        match (self.kind, p.chart) {
            (_, 0) => format!("({},{})", p.a, p.b),
            (SurfaceKind::P1xP1, 1) => format!("(inf,{})", p.b),
            (SurfaceKind::P1xP1, 2) => format!("({},inf)", p.a),
            (SurfaceKind::P2, 1) => format!("(inf,{})", p.b),
            _ => "(inf,inf)".to_string(),
        }
    }

    /// Point from the text coordinates used by [`Surface::fmt_point`];
    /// `None` stands for "inf".
    pub fn point_from_parts(&self, a: Option<FieldElement>, b: Option<FieldElement>) -> Result<SurfacePoint> {
        let f = a.or(b).map(|z| z.field()).unwrap_or(self.field);
        let zero = f.zero();
        match (self.kind, a, b) {
            (_, Some(a), Some(b)) => Ok(self.affine_point(a, b)),
            (SurfaceKind::P1xP1, None, Some(b)) => self.point(1, zero, b),
            (SurfaceKind::P1xP1, Some(a), None) => self.point(2, a, zero),
            (SurfaceKind::P1xP1, None, None) => self.point(3, zero, zero),
            (SurfaceKind::P2, None, Some(m)) => self.point(1, zero, m),
            (SurfaceKind::P2, None, None) => self.point(2, zero, zero),
            (SurfaceKind::P2, Some(_), None) => {
                Err(Error::Parse("on P2 a point at infinity is written (inf,m) or (inf,inf)".into()))
            }
        }
    }

    /// q-Frobenius image of a point (q the order of the base field).
    pub fn frobenius(&self, p: &SurfacePoint) -> SurfacePoint {
        let q = self.field.q() as u64;
        SurfacePoint { chart: p.chart, a: p.a.pow(q), b: p.b.pow(q) }
    }

    /// Degree over the base field of the field generated by the coordinates.
    pub fn point_degree(&self, p: &SurfacePoint) -> u32 {
        let mut cur = *p;
        for k in 1.. {
            cur = self.frobenius(&cur);
            if cur == *p {
                return k;
            }
        }
        unreachable!()
    }

    /// The Galois orbit of a point, sorted.
    pub fn orbit(&self, p: &SurfacePoint) -> Vec<SurfacePoint> {
        let mut out = vec![*p];
        let mut cur = self.frobenius(p);
        while cur != *p {
            out.push(cur);
            cur = self.frobenius(&cur);
        }
        out.sort();
        out
    }

    /// Every F_q-rational point, sorted.
    pub fn rational_points(&self) -> Vec<SurfacePoint> {
        let f = self.field;
        let mut out: Vec<SurfacePoint> =
            f.elements().flat_map(|a| f.elements().map(move |b| SurfacePoint { chart: 0, a, b })).collect();
        let zero = f.zero();
        match self.kind {
            SurfaceKind::P1xP1 => {
                out.extend(f.elements().map(|b| SurfacePoint { chart: 1, a: zero, b }));
                out.extend(f.elements().map(|a| SurfacePoint { chart: 2, a, b: zero }));
                out.push(SurfacePoint { chart: 3, a: zero, b: zero });
            }
            SurfaceKind::P2 => {
                out.extend(f.elements().map(|b| SurfacePoint { chart: 1, a: zero, b }));
                out.push(SurfacePoint { chart: 2, a: zero, b: zero });
            }
        }
        out.sort();
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CurveKind {
    Affine,
    E,
    F,
    Linf,
}

/// An irreducible curve: an affine equation in chart 0, or a boundary line.
/// Curves compare by their monic equation; `eq` keeps the scaling given.
#[derive(Clone)]
pub struct Curve {
    kind: CurveKind,
    key: BiPoly,
    eq: BiPoly,
}

impl PartialEq for Curve {
    fn eq(&self, o: &Curve) -> bool {
        self.kind == o.kind && self.key == o.key
    }
}

impl Eq for Curve {}

impl std::hash::Hash for Curve {
    fn hash<H: std::hash::Hasher>(&self, h: &mut H) {
        self.kind.hash(h);
        self.key.hash(h);
    }
}

impl PartialOrd for Curve {
    fn partial_cmp(&self, o: &Curve) -> Option<std::cmp::Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for Curve {
    fn cmp(&self, o: &Curve) -> std::cmp::Ordering {
        (self.kind, &self.key).cmp(&(o.kind, &o.key))
    }
}

impl Curve {
    /// Curve with the given chart-0 equation; must be irreducible over F_q.
    pub fn affine(eq: BiPoly) -> Result<Curve> {
        if eq.total_degree().unwrap_or(0) == 0 {
            return Err(Error::Invalid("a curve equation must be nonconstant".into()));
        }
        let fs = factor_bi(&eq)?;
        if fs.len() != 1 || fs[0].1 != 1 {
            return Err(Error::Invalid(format!("{eq} is not irreducible over F_{}", eq.field().q())));
        }
        Ok(Curve::affine_unchecked(eq))
    }

    /// Curve from an equation already known to be irreducible.
    pub(crate) fn affine_unchecked(eq: BiPoly) -> Curve {
        Curve { kind: CurveKind::Affine, key: eq.monic(), eq }
    }

    /// The line a·x + b·y + c = 0.
    pub fn line(a: FieldElement, b: FieldElement, c: FieldElement) -> Result<Curve> {
        if a.is_zero() && b.is_zero() {
            return Err(Error::Invalid("line(a,b,c) needs (a,b) != (0,0)".into()));
        }
        Ok(Curve::affine_unchecked(BiPoly::linear(a, b, c)))
    }

    /// {x = ∞} on P¹×P¹.
    pub fn e(field: Field) -> Curve {
        Curve { kind: CurveKind::E, key: BiPoly::one(field), eq: BiPoly::one(field) }
    }

    /// {y = ∞} on P¹×P¹.
    pub fn f(field: Field) -> Curve {
        Curve { kind: CurveKind::F, key: BiPoly::one(field), eq: BiPoly::one(field) }
    }

    /// The line at infinity of P².
    pub fn linf(field: Field) -> Curve {
        Curve { kind: CurveKind::Linf, key: BiPoly::one(field), eq: BiPoly::one(field) }
    }

    pub fn kind(&self) -> CurveKind {
        self.kind
    }

    /// Chart-0 equation (1 for boundary curves).
    pub fn eq(&self) -> &BiPoly {
        &self.eq
    }

    pub fn is_boundary(&self) -> bool {
        self.kind != CurveKind::Affine
    }

    pub fn field(&self) -> Field {
        self.eq.field()
    }
}

impl fmt::Display for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            CurveKind::E => f.write_str("E"),
            CurveKind::F => f.write_str("F"),
            CurveKind::Linf => f.write_str("Linf"),
            CurveKind::Affine => write!(f, "curve({})", self.eq),
        }
    }
}

impl fmt::Debug for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Formal sum of curves with nonzero integer coefficients.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Divisor {
    terms: BTreeMap<Curve, i64>,
}

impl Divisor {
    pub fn zero() -> Divisor {
        Divisor::default()
    }

    pub fn single(c: Curve, k: i64) -> Divisor {
        let mut d = Divisor::zero();
        d.add_term(c, k);
        d
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Curve, i64)>) -> Divisor {
        let mut d = Divisor::zero();
        for (c, k) in terms {
            d.add_term(c, k);
        }
        d
    }

    pub fn add_term(&mut self, c: Curve, k: i64) {
        let e = self.terms.entry(c).or_insert(0);
        *e += k;
        if *e == 0 {
            self.terms.retain(|_, v| *v != 0);
        }
    }

    pub fn coeff(&self, c: &Curve) -> i64 {
        self.terms.get(c).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Curve, &i64)> {
        self.terms.iter()
    }

    pub fn support(&self) -> Vec<Curve> {
        self.terms.keys().cloned().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_effective(&self) -> bool {
        self.terms.values().all(|&k| k > 0)
    }

    pub fn add(&self, o: &Divisor) -> Divisor {
        let mut d = self.clone();
        for (c, &k) in o.iter() {
            d.add_term(c.clone(), k);
        }
        d
    }

    pub fn sub(&self, o: &Divisor) -> Divisor {
        self.add(&o.scale(-1))
    }

    pub fn scale(&self, k: i64) -> Divisor {
        Divisor::from_terms(self.terms.iter().map(|(c, &v)| (c.clone(), v * k)))
    }

    pub fn positive_part(&self) -> Divisor {
        Divisor::from_terms(self.terms.iter().filter(|(_, &v)| v > 0).map(|(c, &v)| (c.clone(), v)))
    }

    /// The effective divisor -min(D, 0).
    pub fn negative_part(&self) -> Divisor {
        Divisor::from_terms(self.terms.iter().filter(|(_, &v)| v < 0).map(|(c, &v)| (c.clone(), -v)))
    }

    /// Whether the supports share a component.
    pub fn shares_component(&self, o: &Divisor) -> Option<Curve> {
        self.terms.keys().find(|c| o.terms.contains_key(*c)).cloned()
    }
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(c, k)| format!("{k}*{c}")).collect();
        f.write_str(&parts.join(" + "))
    }
}

impl fmt::Debug for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A point given by coordinates in its canonical chart, possibly over an
/// extension of the base field.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SurfacePoint {
    chart: u8,
    a: FieldElement,
    b: FieldElement,
}

impl SurfacePoint {
    pub fn chart(&self) -> usize {
        self.chart as usize
    }

    pub fn coords(&self) -> (FieldElement, FieldElement) {
        (self.a, self.b)
    }

    pub fn field(&self) -> Field {
        self.a.field()
    }

    pub fn map(&self, emb: &Embedding) -> SurfacePoint {
        SurfacePoint { chart: self.chart, a: emb.map(self.a), b: emb.map(self.b) }
    }

    /// Pulls the coordinates back to a subfield when possible.
    pub fn preimage(&self, emb: &Embedding) -> Option<SurfacePoint> {
        Some(SurfacePoint { chart: self.chart, a: emb.preimage(self.a)?, b: emb.preimage(self.b)? })
    }
}

impl fmt::Debug for SurfacePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[chart {}]({},{})", self.chart, self.a, self.b)
    }
}

/// The 2-form h·dx∧dy written in one chart.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TwoForm {
    surface: Surface,
    chart: usize,
    h: BiRat,
}

impl TwoForm {
    /// h·dx∧dy in chart 0.
    pub fn new(surface: Surface, h: BiRat) -> Result<TwoForm> {
        TwoForm::in_chart_of(surface, 0, h)
    }

    pub fn in_chart_of(surface: Surface, chart: usize, h: BiRat) -> Result<TwoForm> {
        surface.check_chart(chart)?;
        if h.field() != surface.field {
            return Err(Error::ContextMismatch);
        }
        Ok(TwoForm { surface, chart, h })
    }

    pub fn surface(&self) -> Surface {
        self.surface
    }

    pub fn chart(&self) -> usize {
        self.chart
    }

    pub fn h(&self) -> &BiRat {
        &self.h
    }

    /// The coefficient h' with ω = h'·dx'∧dy' in chart `target`.
    pub fn coefficient_in(&self, target: usize) -> Result<BiRat> {
        self.surface.check_chart(target)?;
        if target == self.chart {
            return Ok(self.h.clone());
        }
        let pull = |h: &BiRat, c: usize| {
            let (x, y, j) = self.surface.chart_map(c);
            &h.compose(&x, &y) * &j
        };
        let h0 = if self.chart == 0 { self.h.clone() } else { pull(&self.h, self.chart) };
        Ok(if target == 0 { h0 } else { pull(&h0, target) })
    }

    pub fn chart_transition(&self, target: usize) -> Result<TwoForm> {
        Ok(TwoForm { surface: self.surface, chart: target, h: self.coefficient_in(target)? })
    }

    /// f·ω for a function f given in chart 0.
    pub fn mul_function(&self, f: &BiRat) -> Result<TwoForm> {
        let h0 = self.coefficient_in(0)?;
        TwoForm::new(self.surface, &h0 * f)
    }

    pub fn is_zero(&self) -> bool {
        self.h.is_zero()
    }

    /// The divisor of the form.
    pub fn divisor(&self) -> Result<Divisor> {
        if self.h.is_zero() {
            return Err(Error::Invalid("the zero form has no divisor".into()));
        }
        let h0 = self.coefficient_in(0)?;
        let mut d = Divisor::zero();
        for (p, k) in factor_bi(h0.num())? {
            d.add_term(Curve::affine_unchecked(p), k as i64);
        }
        for (p, k) in factor_bi(h0.den())? {
            d.add_term(Curve::affine_unchecked(p), -(k as i64));
        }
        for b in self.surface.boundary() {
            let (chart, along_x) = match b.kind {
                CurveKind::E | CurveKind::Linf => (1, true),
                _ => (2, false),
            };
            let h = self.coefficient_in(chart)?;
            let ord = |p: &BiPoly| -> i64 {
                p.terms().iter().map(|&(i, j, _)| if along_x { i } else { j }).min().unwrap_or(0) as i64
            };
            d.add_term(b, ord(h.num()) - ord(h.den()));
        }
        Ok(d)
    }

    pub fn fmt_h(&self) -> String {
        self.h.fmt_vars("x", "y")
    }
}

/// A function given in chart 0, rewritten in chart `c`.
pub fn function_in_chart(surface: &Surface, f: &BiRat, c: usize) -> BiRat {
    if c == 0 {
        return f.clone();
    }
    let (x, y, _) = surface.chart_map(c);
    f.compose(&x, &y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::BiRat;

    fn f5() -> Field {
        Field::prime(5).unwrap()
    }

    fn bp(f: Field, t: &[(usize, usize, i64)]) -> BiPoly {
        BiPoly::from_terms(f, t)
    }

    #[test]
    fn chart_transitions_on_p1xp1() {
        let f = f5();
        let s = Surface::p1xp1(f);
        let one = TwoForm::new(s, BiRat::one(f)).unwrap();
        let h1 = one.coefficient_in(1).unwrap();
        assert_eq!(h1, BiRat::new(bp(f, &[(0, 0, -1)]), bp(f, &[(2, 0, 1)])).unwrap());
        let w = TwoForm::new(s, BiRat::new(BiPoly::one(f), bp(f, &[(1, 1, 1)])).unwrap()).unwrap();
        for c in 1..4 {
            let back = w.chart_transition(c).unwrap().chart_transition(0).unwrap();
            assert_eq!(back.h(), w.h());
        }
        assert_eq!(
            w.coefficient_in(1).unwrap(),
            BiRat::new(bp(f, &[(0, 0, -1)]), bp(f, &[(1, 1, 1)])).unwrap()
        );
    }

    #[test]
    fn chart_transition_agrees_pointwise() {
        let f = Field::prime(7).unwrap();
        for s in [Surface::p2(f), Surface::p1xp1(f)] {
            let h = BiRat::new(bp(f, &[(0, 0, 1), (1, 1, 2)]), bp(f, &[(1, 0, 1), (0, 2, 3), (0, 0, 1)])).unwrap();
            let w = TwoForm::new(s, h.clone()).unwrap();
            for c in 1..s.chart_count() {
                let (x, y, j) = s.chart_map(c);
                let hc = w.coefficient_in(c).unwrap();
                for a in f.nonzero_elements().take(4) {
                    for b in f.nonzero_elements().skip(2).take(5) {
                        let (Some(xx), Some(yy), Some(jj), Some(v)) = (x.eval(a, b), y.eval(a, b), j.eval(a, b), hc.eval(a, b))
                        else {
                            continue;
                        };
                        if let Some(h0) = h.eval(xx, yy) {
                            assert_eq!(v, h0 * jj);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn local_equations_and_classes() {
        let f = f5();
        let s = Surface::p1xp1(f);
        let c = Curve::affine(bp(f, &[(2, 1, 1), (0, 0, 1)])).unwrap();
        assert_eq!(s.class_of(&c).unwrap(), Class(2, 1));
        assert_eq!(s.local_eq(&c, 3).unwrap(), bp(f, &[(0, 0, 1), (2, 1, 1)]));
        assert_eq!(s.local_eq(&Curve::e(f), 1).unwrap(), BiPoly::x(f));
        let p2 = Surface::p2(f);
        let l = Curve::line(f.one(), f.one(), f.from_int(2)).unwrap();
        assert_eq!(p2.local_eq(&l, 1).unwrap(), bp(f, &[(0, 0, 1), (0, 1, 1), (1, 0, 2)]));
        assert!(Curve::affine(bp(f, &[(1, 1, 1)])).is_err());
    }

    #[test]
    fn divisor_of_standard_forms() {
        let f = f5();
        let s = Surface::p1xp1(f);
        let w = TwoForm::new(s, BiRat::new(BiPoly::one(f), bp(f, &[(1, 1, 1)])).unwrap()).unwrap();
        let d = w.divisor().unwrap();
        let x = Curve::line(f.one(), f.zero(), f.zero()).unwrap();
        let y = Curve::line(f.zero(), f.one(), f.zero()).unwrap();
        assert_eq!(d, Divisor::from_terms([(x, -1), (y, -1), (Curve::e(f), -1), (Curve::f(f), -1)]));
        assert_eq!(s.class_of_divisor(&d).unwrap(), s.canonical_class());
        let p2 = Surface::p2(f);
        let dx = TwoForm::new(p2, BiRat::one(f)).unwrap().divisor().unwrap();
        assert_eq!(dx, Divisor::single(Curve::linf(f), -3));
    }

    #[test]
    fn point_canonicalization() {
        let f = f5();
        let s = Surface::p1xp1(f);
        let p = s.point(3, f.from_int(2), f.zero()).unwrap();
        assert_eq!(p.chart(), 2);
        assert_eq!(p.coords().0, f.from_int(3));
        let p2 = Surface::p2(f);
        let q = p2.point(2, f.from_int(2), f.zero()).unwrap();
        assert_eq!(q.chart(), 1);
        assert_eq!(p2.fmt_point(&q), "(inf,3)");
        assert_eq!(s.rational_points().len(), 36);
        assert_eq!(p2.rational_points().len(), 31);
    }
}

//! Intersection points of two curves as Galois orbits with multiplicities.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::poly::UniPoly;

use super::local::intersection_multiplicity;
use super::{Curve, Divisor, Surface, SurfaceKind, SurfacePoint};

/// Largest extension field searched for intersection points.
const MAX_POINT_FIELD: u64 = 1 << 20;

/// A closed point: the conjugate points over F_{q^d}, sorted, and the local
/// intersection multiplicity (the same at each conjugate).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    pub points: Vec<SurfacePoint>,
    pub multiplicity: i64,
}

impl Orbit {
    pub fn degree(&self) -> usize {
        self.points.len()
    }

    pub fn representative(&self) -> &SurfacePoint {
        &self.points[0]
    }
}

/// Roots in `field` of both polynomials; `None` when both vanish identically.
fn common_roots(a: &UniPoly, b: &UniPoly) -> Result<Option<Vec<FieldElement>>> {
    let g = match (a.is_zero(), b.is_zero()) {
        (true, true) => return Ok(None),
        (true, false) => b.clone(),
        (false, true) => a.clone(),
        (false, false) => a.gcd(b),
    };
    if g.degree().unwrap_or(0) == 0 {
        return Ok(Some(Vec::new()));
    }
    Ok(Some(g.roots()?))
}

/// Points of C1 ∩ C2 with coordinates in `l` whose canonical chart is `chart`.
fn chart_points(s: &Surface, c1: &Curve, c2: &Curve, chart: usize, l: Field) -> Result<Vec<SurfacePoint>> {
    let emb = s.field.embedding(l)?;
    let e1 = s.local_eq(c1, chart)?.map(emb);
    let e2 = s.local_eq(c2, chart)?.map(emb);
    let shared = || Error::Invalid(format!("{c1} and {c2} share a component"));
    let zero = l.zero();
    let mut out = Vec::new();
    let mk = |a, b| SurfacePoint { chart: chart as u8, a, b };
    // Free coordinates of the points whose canonical chart is `chart`.
    let (x_free, y_free) = match (s.kind, chart) {
        (_, 0) => (true, true),
        (SurfaceKind::P1xP1, 1) => (false, true),
        (SurfaceKind::P1xP1, 2) => (true, false),
        (SurfaceKind::P2, 1) => (false, true),
        _ => (false, false),
    };
    match (x_free, y_free) {
        (true, true) => {
            for a in l.elements() {
                let roots = common_roots(&e1.eval_x(a), &e2.eval_x(a))?.ok_or_else(shared)?;
                out.extend(roots.into_iter().map(|b| mk(a, b)));
            }
        }
        (false, true) => {
            let roots = common_roots(&e1.eval_x(zero), &e2.eval_x(zero))?.ok_or_else(shared)?;
            out.extend(roots.into_iter().map(|b| mk(zero, b)));
        }
        (true, false) => {
            let roots = common_roots(&e1.eval_y(zero), &e2.eval_y(zero))?.ok_or_else(shared)?;
            out.extend(roots.into_iter().map(|a| mk(a, zero)));
        }
        (false, false) => {
            if e1.eval(zero, zero).is_zero() && e2.eval(zero, zero).is_zero() {
                out.push(mk(zero, zero));
            }
        }
    }
    Ok(out)
}

/// Local intersection multiplicity, computed along whichever curve is smooth.
fn multiplicity(s: &Surface, c1: &Curve, c2: &Curve, p: &SurfacePoint) -> Result<i64> {
    match intersection_multiplicity(s, c1, &Divisor::single(c2.clone(), 1), p) {
        Err(Error::Singular(_)) => intersection_multiplicity(s, c2, &Divisor::single(c1.clone(), 1), p),
        other => other,
    }
}

/// C1 ∩ C2 on the projective surface as Galois orbits, searched over
/// F_{q^d} for growing d until the multiplicities add up to C1·C2.
pub fn intersect(s: &Surface, c1: &Curve, c2: &Curve) -> Result<Vec<Orbit>> {
    if c1 == c2 {
        return Err(Error::Invalid(format!("{c1} meets itself in a curve")));
    }
    let bezout = s.intersection_number(s.class_of(c1)?, s.class_of(c2)?);
    let mut out = Vec::new();
    let mut total = 0;
    let q = s.field.q() as u64;
    let mut d = 1u32;
    while total < bezout {
        if q.checked_pow(d).is_none_or(|n| n > MAX_POINT_FIELD) {
            return Err(Error::Bound(format!(
                "intersection points of {c1} and {c2} need an extension of degree above {}",
                d - 1
            )));
        }
        let l = s.field.extension(d)?;
        let mut pts: BTreeSet<SurfacePoint> = BTreeSet::new();
        for chart in 0..s.chart_count() {
            for p in chart_points(s, c1, c2, chart, l)? {
                if s.point_degree(&p) == d {
                    pts.insert(p);
                }
            }
        }
        while let Some(p) = pts.pop_first() {
            let orbit = s.orbit(&p);
            for o in &orbit {
                pts.remove(o);
            }
            let m = multiplicity(s, c1, c2, &p)?;
            total += m * d as i64;
            out.push(Orbit { points: orbit, multiplicity: m });
        }
        d += 1;
    }
    if total != bezout {
        return Err(Error::Invalid(format!("intersection count {total} differs from C1.C2 = {bezout}")));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::BiPoly;

    #[test]
    fn conic_meets_line_in_a_conjugate_pair() {
        let f = Field::prime(5).unwrap();
        let s = Surface::p1xp1(f);
        let y0 = Curve::line(f.zero(), f.one(), f.zero()).unwrap();
        let c = Curve::affine(BiPoly::from_terms(f, &[(2, 0, 1), (0, 0, 2)])).unwrap();
        // x² + 2 splits into two conjugate vertical lines over F_25.
        let orbits = intersect(&s, &y0, &c).unwrap();
        assert_eq!(orbits.len(), 1);
        assert_eq!(orbits[0].degree(), 2);
        assert_eq!(orbits[0].multiplicity, 1);
    }

    #[test]
    fn points_at_infinity_are_found() {
        let f = Field::prime(7).unwrap();
        let s = Surface::p2(f);
        let l1 = Curve::line(f.from_int(2), f.one(), f.one()).unwrap();
        let l2 = Curve::line(f.from_int(2), f.one(), f.from_int(3)).unwrap();
        let o = intersect(&s, &l1, &l2).unwrap();
        assert_eq!(o.len(), 1);
        assert_eq!(s.fmt_point(o[0].representative()), "(inf,5)");
        let v1 = Curve::line(f.one(), f.zero(), f.one()).unwrap();
        let v2 = Curve::line(f.one(), f.zero(), f.from_int(2)).unwrap();
        let o = intersect(&s, &v1, &v2).unwrap();
        assert_eq!(s.fmt_point(o[0].representative()), "(inf,inf)");
        let p = Curve::affine(BiPoly::from_terms(f, &[(0, 1, 1), (2, 0, -1)])).unwrap();
        let tangent = Curve::line(f.zero(), f.one(), f.zero()).unwrap();
        let o = intersect(&s, &p, &tangent).unwrap();
        assert_eq!(o.len(), 1);
        assert_eq!(o[0].multiplicity, 2);
        let t = Surface::p1xp1(f);
        let o = intersect(&t, &Curve::e(f), &Curve::f(f)).unwrap();
        assert_eq!(t.fmt_point(o[0].representative()), "(inf,inf)");
    }
}

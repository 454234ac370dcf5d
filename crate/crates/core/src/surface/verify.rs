//! Checkers for the three residue formulas: along a curve, around a point,
//! and over the intersection of two divisors.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::field::FieldElement;

use super::local::{passes_through, res2, res2_divisor};
use super::points::{intersect, Orbit};
use super::{Curve, Divisor, Surface, SurfacePoint, TwoForm};

/// Residue contribution of one closed point, summed over its conjugates and
/// brought down to the base field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointResidue {
    pub point: String,
    pub degree: usize,
    pub residue: FieldElement,
    /// For the divisor-pair formula: the residue along the second divisor.
    pub residue_b: Option<FieldElement>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RfReport {
    pub sum: FieldElement,
    pub points: Vec<PointResidue>,
    pub pass: bool,
}

fn orbit_sum(s: &Surface, orbit: &[SurfacePoint], f: impl Fn(&SurfacePoint) -> Result<FieldElement>) -> Result<FieldElement> {
    let field = orbit[0].field();
    let mut acc = field.zero();
    for p in orbit {
        acc += f(p)?;
    }
    s.field
        .embedding(field)?
        .preimage(acc)
        .ok_or_else(|| Error::Invalid(format!("orbit sum at {} is not in the base field", s.fmt_point(&orbit[0]))))
}

/// Adds orbits, skipping closed points already present.
fn merge(acc: &mut Vec<Orbit>, seen: &mut BTreeSet<SurfacePoint>, new: Vec<Orbit>) {
    for o in new {
        if seen.insert(o.points[0]) {
            seen.extend(o.points.iter().copied());
            acc.push(o);
        }
    }
}

fn finish(s: &Surface, mut points: Vec<PointResidue>) -> RfReport {
    points.sort_by(|a, b| a.point.cmp(&b.point));
    let mut sum = s.field.zero();
    for p in &points {
        sum += p.residue;
    }
    let pass = sum.is_zero() && points.iter().all(|p| p.residue_b.is_none_or(|b| (b + p.residue).is_zero()));
    RfReport { sum, points, pass }
}

/// Σ_{P ∈ C} res²_{C,P}(ω). Only points where C meets another pole
/// component of ω can contribute; those are found by intersection.
pub fn verify_rf1(form: &TwoForm, c: &Curve) -> Result<RfReport> {
    let s = form.surface();
    let div = form.divisor()?;
    let mut orbits = Vec::new();
    let mut seen = BTreeSet::new();
    for (other, &k) in div.iter() {
        if k < 0 && other != c {
            merge(&mut orbits, &mut seen, intersect(&s, c, other)?);
        }
    }
    let mut out = Vec::new();
    for o in &orbits {
        let r = orbit_sum(&s, &o.points, |p| res2(form, c, p))?;
        out.push(PointResidue { point: s.fmt_point(o.representative()), degree: o.degree(), residue: r, residue_b: None });
    }
    Ok(finish(&s, out))
}

/// Σ_{C ∋ P} res²_{C,P}(ω) over the pole components of ω through P.
pub fn verify_rf2(form: &TwoForm, p: &SurfacePoint) -> Result<RfReport> {
    let s = form.surface();
    let div = form.divisor()?;
    let mut out = Vec::new();
    for (c, &k) in div.iter() {
        if k < 0 && passes_through(&s, c, p)? {
            let r = res2(form, c, p)?;
            let r = s.field.embedding(p.field())?.preimage(r).ok_or_else(|| {
                Error::Invalid("residue at a non-rational point is not in the base field; use its orbit".into())
            })?;
            out.push(PointResidue { point: c.to_string(), degree: 1, residue: r, residue_b: None });
        }
    }
    Ok(finish(&s, out))
}

/// ω ∈ Ω²(−D): no pole along any curve exceeds the coefficient in D.
pub fn check_membership(form: &TwoForm, d: &Divisor) -> Result<()> {
    for (c, &k) in form.divisor()?.iter() {
        if k + d.coeff(c) < 0 {
            return Err(Error::Invalid(format!(
                "form has a pole of order {} along {c}, more than the divisor allows",
                -k
            )));
        }
    }
    Ok(())
}

/// Σ_{P ∈ D_a ∩ D_b} res²_{D_a,P}(ω), together with the pointwise relation
/// res²_{D_a,P}(ω) = −res²_{D_b,P}(ω).
pub fn verify_rf3(form: &TwoForm, da: &Divisor, db: &Divisor) -> Result<RfReport> {
    let s = form.surface();
    if let Some(c) = da.shares_component(db) {
        return Err(Error::Invalid(format!("the divisors share the component {c}")));
    }
    check_membership(form, &da.add(db))?;
    let mut orbits = Vec::new();
    let mut seen = BTreeSet::new();
    for a in da.support() {
        for b in db.support() {
            merge(&mut orbits, &mut seen, intersect(&s, &a, &b)?);
        }
    }
    let mut out = Vec::new();
    for o in &orbits {
        let ra = orbit_sum(&s, &o.points, |p| res2_divisor(form, da, p))?;
        let rb = orbit_sum(&s, &o.points, |p| res2_divisor(form, db, p))?;
        out.push(PointResidue { point: s.fmt_point(o.representative()), degree: o.degree(), residue: ra, residue_b: Some(rb) });
    }
    Ok(finish(&s, out))
}

//! Text input: rational expressions in x and y, curves, divisors, points and
//! zero-cycles.
//!
//! Expressions use integers, `x`, `y`, `t` (the field generator, extension
//! fields only), `+ - * / ^` and parentheses.

use crate::agcodes::ZeroCycle;
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::poly::BiPoly;
use crate::rational::BiRat;
use crate::surface::{Curve, Divisor, Surface, SurfaceKind, SurfacePoint};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(u128),
    Var(char),
    Op(char),
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let cs: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        match c {
            _ if c.is_whitespace() => i += 1,
            '0'..='9' => {
                let st = i;
                while i < cs.len() && cs[i].is_ascii_digit() {
                    i += 1;
                }
                let n: String = cs[st..i].iter().collect();
                out.push(Tok::Int(n.parse().map_err(|_| Error::Parse(format!("integer {n} is too large")))?));
            }
            'x' | 'y' | 't' => {
                out.push(Tok::Var(c));
                i += 1;
            }
            '+' | '-' | '*' | '/' | '^' | '(' | ')' => {
                out.push(Tok::Op(c));
                i += 1;
            }
            _ => return Err(Error::Parse(format!("unexpected character '{c}' in \"{s}\""))),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: &'a [Tok],
    pos: usize,
    field: Field,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<BiRat> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<BiRat> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.unary()?;
            } else if self.eat('/') {
                let d = self.unary()?;
                if d.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                acc = &acc / &d;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<BiRat> {
        if self.eat('-') {
            return Ok(-&self.unary()?);
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<BiRat> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let neg = self.eat('-');
        match self.peek() {
            Some(&Tok::Int(e)) if e <= i32::MAX as u128 => {
                self.pos += 1;
                base.pow(if neg { -(e as i32) } else { e as i32 })
            }
            _ => Err(Error::Parse("exponent must be an integer literal".into())),
        }
    }

    fn atom(&mut self) -> Result<BiRat> {
        let f = self.field;
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(BiRat::constant(f.from_int((n % f.p() as u128) as i64)))
            }
            Some(Tok::Var('x')) => {
                self.pos += 1;
                Ok(BiRat::x(f))
            }
            Some(Tok::Var('y')) => {
                self.pos += 1;
                Ok(BiRat::y(f))
            }
            Some(Tok::Var(_)) => {
                self.pos += 1;
                if f.m() == 1 {
                    return Err(Error::Parse("t names the generator of an extension field; F_q is prime".into()));
                }
                Ok(BiRat::constant(f.generator()))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(Error::Parse("missing ')'".into()));
                }
                Ok(e)
            }
            Some(t) => Err(Error::Parse(format!("unexpected token {t:?}"))),
            None => Err(Error::Parse("unexpected end of expression".into())),
        }
    }
}

/// A rational function of x and y over `field`.
pub fn rational(field: Field, s: &str) -> Result<BiRat> {
    let toks = lex(s)?;
    let mut p = Parser { toks: &toks, pos: 0, field };
    let e = p.expr()?;
    if p.pos != toks.len() {
        return Err(Error::Parse(format!("trailing input in \"{s}\"")));
    }
    Ok(e)
}

/// A polynomial in x and y.
pub fn polynomial(field: Field, s: &str) -> Result<BiPoly> {
    let r = rational(field, s)?;
    if !r.is_polynomial() {
        return Err(Error::Parse(format!("\"{s}\" is not a polynomial")));
    }
    Ok(r.num().scale(r.den().lc().inv()?))
}

/// A constant field element.
pub fn element(field: Field, s: &str) -> Result<FieldElement> {
    let p = polynomial(field, s)?;
    if !p.is_constant() {
        return Err(Error::Parse(format!("\"{s}\" is not a constant")));
    }
    Ok(p.coeff(0, 0))
}

/// Splits at top-level occurrences of `sep` (outside parentheses).
fn split_top(s: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ if c == sep && depth == 0 => {
                out.push(&s[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

fn call<'a>(s: &'a str, name: &str) -> Option<&'a str> {
    s.strip_prefix(name)?.trim_start().strip_prefix('(')?.strip_suffix(')')
}

/// `E`, `F`, `Linf`, `line(a,b,c)` or `curve(<polynomial>)`.
pub fn curve(surface: &Surface, s: &str) -> Result<Curve> {
    let f = surface.field;
    let s = s.trim();
    let c = match s {
        "E" | "F" if surface.kind == SurfaceKind::P1xP1 => {
            if s == "E" {
                Curve::e(f)
            } else {
                Curve::f(f)
            }
        }
        "Linf" if surface.kind == SurfaceKind::P2 => Curve::linf(f),
        "E" | "F" | "Linf" => return Err(Error::Parse(format!("{s} is not a boundary curve of {}", surface.name()))),
        _ => {
            if let Some(args) = call(s, "line") {
                let a: Vec<&str> = split_top(args, ',');
                if a.len() != 3 {
                    return Err(Error::Parse("line(a,b,c) takes three coefficients".into()));
                }
                Curve::line(element(f, a[0])?, element(f, a[1])?, element(f, a[2])?)?
            } else if let Some(p) = call(s, "curve") {
                Curve::affine(polynomial(f, p)?)?
            } else {
                return Err(Error::Parse(format!("unknown curve \"{s}\"")));
            }
        }
    };
    Ok(c)
}

/// Terms `k*<curve>` or `<curve>` joined by `+` and `-`.
pub fn divisor(surface: &Surface, s: &str) -> Result<Divisor> {
    let s = s.trim();
    if s == "0" {
        return Ok(Divisor::zero());
    }
    let mut d = Divisor::zero();
    let mut terms = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            '+' | '-' if depth == 0 && i > start => {
                terms.push(&s[start..i]);
                start = i;
            }
            _ => {}
        }
    }
    terms.push(&s[start..]);
    for t in terms {
        let t = t.trim();
        let (sign, body) = match t.strip_prefix('-') {
            Some(r) => (-1, r.trim()),
            None => (1, t.strip_prefix('+').unwrap_or(t).trim()),
        };
        let (k, c) = match body.split_once('*') {
            Some((k, c)) if k.trim().chars().all(|ch| ch.is_ascii_digit()) && !k.trim().is_empty() => {
                (k.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad coefficient in \"{t}\"")))?, c)
            }
            _ => (1, body),
        };
        if body.is_empty() {
            return Err(Error::Parse(format!("empty term in divisor \"{s}\"")));
        }
        d.add_term(curve(surface, c)?, sign * k);
    }
    Ok(d)
}

/// `(a,b)` with `inf` allowed in either coordinate.
pub fn point(surface: &Surface, s: &str) -> Result<SurfacePoint> {
    let inner = s
        .trim()
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| Error::Parse(format!("point \"{s}\" must be written (a,b)")))?;
    let parts = split_top(inner, ',');
    if parts.len() != 2 {
        return Err(Error::Parse(format!("point \"{s}\" needs two coordinates")));
    }
    let coord = |c: &str| -> Result<Option<FieldElement>> {
        if c.trim() == "inf" {
            Ok(None)
        } else {
            element(surface.field, c).map(Some)
        }
    };
    surface.point_from_parts(coord(parts[0])?, coord(parts[1])?)
}

/// `grid` or `list:(a,b);(c,d);…`.
pub fn zero_cycle(surface: &Surface, s: &str) -> Result<ZeroCycle> {
    let s = s.trim();
    if s == "grid" {
        return Ok(ZeroCycle::grid(surface));
    }
    let list = s.strip_prefix("list:").ok_or_else(|| Error::Parse(format!("Δ must be grid or list:..., got \"{s}\"")))?;
    let pts = split_top(list, ';')
        .into_iter()
        .filter(|p| !p.trim().is_empty())
        .map(|p| point(surface, p))
        .collect::<Result<Vec<_>>>()?;
    ZeroCycle::new(surface, pts)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expressions() {
        let f = Field::prime(5).unwrap();
        let r = rational(f, "1/(x*y)").unwrap();
        assert_eq!(r, BiRat::new(BiPoly::one(f), BiPoly::from_terms(f, &[(1, 1, 1)])).unwrap());
        let p = polynomial(f, "(x - 2*y)^2 + 7").unwrap();
        assert_eq!(p, BiPoly::from_terms(f, &[(2, 0, 1), (1, 1, -4), (0, 2, 4), (0, 0, 2)]));
        assert_eq!(rational(f, "x^-1").unwrap(), rational(f, "1/x").unwrap());
        assert!(rational(f, "x/0").is_err());
        assert!(rational(f, "x +").is_err());
        assert!(rational(f, "t").is_err());
        let f4 = Field::with_order(4).unwrap();
        assert_eq!(element(f4, "t*t").unwrap(), element(f4, "t+1").unwrap());
    }

    #[test]
    fn curves_divisors_points() {
        let f = Field::prime(5).unwrap();
        let s = Surface::p1xp1(f);
        assert_eq!(curve(&s, "line(0,1,0)").unwrap(), Curve::line(f.zero(), f.one(), f.zero()).unwrap());
        assert!(curve(&s, "Linf").is_err());
        assert!(curve(&s, "curve(x*y)").is_err());
        let d = divisor(&s, "2*E - line(1,0,-1) + curve(y-x^2)").unwrap();
        assert_eq!(d.coeff(&Curve::e(f)), 2);
        assert_eq!(d.coeff(&Curve::line(f.one(), f.zero(), f.from_int(-1)).unwrap()), -1);
        assert_eq!(d.support().len(), 3);
        assert_eq!(s.fmt_point(&point(&s, "(inf, 3)").unwrap()), "(inf,3)");
        assert_eq!(s.fmt_point(&point(&s, "(-1,2)").unwrap()), "(4,2)");
        let z = zero_cycle(&s, "list:(0,0);(1,2)").unwrap();
        assert_eq!(z.len(), 2);
        assert!(zero_cycle(&s, "list:(0,0);(0,0)").is_err());
        assert_eq!(zero_cycle(&s, "grid").unwrap().len(), 25);
    }
}

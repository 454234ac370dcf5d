//! Finite fields F_q with q = p^m <= 2^20.
//!
//! An element of F_{p^m} is a coefficient vector (c_0, ..., c_{m-1}) over F_p,
//! read as c_0 + c_1 t + ... + c_{m-1} t^{m-1} modulo a monic irreducible
//! polynomial in t. Internally the vector is packed into the integer
//! `c_0 + c_1 p + ... + c_{m-1} p^{m-1}`, and that integer is the element's
//! index. Enumeration follows increasing index, which is lexicographic order
//! on (c_{m-1}, ..., c_0).
//!
//! Field contexts are interned: creating the same field twice yields the same
//! handle, so a [`Field`] is a copyable pointer and equality is identity.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::{Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::poly::UniPoly;

/// Largest admissible field size.
pub const MAX_FIELD_SIZE: u64 = 1 << 20;

const MAX_DEGREE: usize = 20;
const TABLE_LIMIT: u32 = 256;

/// Parameters of a finite field. Obtained through [`Field`].
pub struct FieldContext {
    p: u32,
    m: u32,
    q: u32,
    modulus: Vec<u32>,
    mul_table: Option<Vec<u32>>,
}

/// Handle to an interned [`FieldContext`].
#[derive(Clone, Copy)]
pub struct Field(&'static FieldContext);

/// Arithmetic operation selector for [`FieldElement::arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// An element of a finite field.
#[derive(Clone, Copy)]
pub struct FieldElement {
    field: Field,
    v: u32,
}

fn registry() -> &'static Mutex<HashMap<(u32, Vec<u32>), &'static FieldContext>> {
    static REG: OnceLock<Mutex<HashMap<(u32, Vec<u32>), &'static FieldContext>>> = OnceLock::new();
    REG.get_or_init(|| Mutex::new(HashMap::new()))
}

fn embedding_registry() -> &'static Mutex<HashMap<(usize, usize), &'static Embedding>> {
    static REG: OnceLock<Mutex<HashMap<(usize, usize), &'static Embedding>>> = OnceLock::new();
    REG.get_or_init(|| Mutex::new(HashMap::new()))
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits a prime power into (p, m).
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while !q.is_multiple_of(p) {
        p += 1;
    }
    let mut r = q;
    let mut m = 0;
    while r.is_multiple_of(p) {
        r /= p;
        m += 1;
    }
    (r == 1).then_some((p as u32, m))
}

// Dense polynomials over F_p as coefficient vectors, low degree first, used
// only for modulus search.
fn fp_trim(a: &mut Vec<u32>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn fp_inv(a: u32, p: u32) -> u32 {
    let (mut t, mut nt) = (0i64, 1i64);
    let (mut r, mut nr) = (p as i64, a as i64);
    while nr != 0 {
        let qt = r / nr;
        (t, nt) = (nt, t - qt * nt);
        (r, nr) = (nr, r - qt * nr);
    }
    t.rem_euclid(p as i64) as u32
}

fn fp_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    fp_trim(&mut r);
    let db = b.len() - 1;
    let inv = fp_inv(b[db], p);
    while r.len() > db {
        let k = r.len() - 1;
        let c = (r[k] as u64 * inv as u64 % p as u64) as u32;
        let shift = k - db;
        for (i, &bi) in b.iter().enumerate() {
            let sub = (c as u64 * bi as u64 % p as u64) as u32;
            r[shift + i] = (r[shift + i] + p - sub) % p;
        }
        fp_trim(&mut r);
    }
    r
}

fn fp_irreducible(f: &[u32], p: u32) -> bool {
    let m = f.len() - 1;
    if m <= 1 {
        return m == 1;
    }
    for d in 1..=m / 2 {
        let count = (p as u64).pow(d as u32);
        for idx in 0..count {
            let mut g = Vec::with_capacity(d + 1);
            let mut r = idx;
            for _ in 0..d {
                g.push((r % p as u64) as u32);
                r /= p as u64;
            }
            g.push(1);
            if fp_rem(f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

impl FieldContext {
    fn digits(&self, v: u32) -> [u32; MAX_DEGREE] {
        let mut out = [0u32; MAX_DEGREE];
        let mut r = v;
        for d in out.iter_mut().take(self.m as usize) {
            *d = r % self.p;
            r /= self.p;
        }
        out
    }

    fn pack(&self, d: &[u32]) -> u32 {
        let mut v = 0u32;
        for &c in d[..self.m as usize].iter().rev() {
            v = v * self.p + c;
        }
        v
    }

    fn add(&self, a: u32, b: u32) -> u32 {
        if self.m == 1 {
            let s = a + b;
            return if s >= self.p { s - self.p } else { s };
        }
        if self.p == 2 {
            return a ^ b;
        }
        let (da, db) = (self.digits(a), self.digits(b));
        let mut out = [0u32; MAX_DEGREE];
        for i in 0..self.m as usize {
            out[i] = (da[i] + db[i]) % self.p;
        }
        self.pack(&out)
    }

    fn neg(&self, a: u32) -> u32 {
        if self.m == 1 {
            return if a == 0 { 0 } else { self.p - a };
        }
        if self.p == 2 {
            return a;
        }
        let d = self.digits(a);
        let mut out = [0u32; MAX_DEGREE];
        for i in 0..self.m as usize {
            out[i] = (self.p - d[i]) % self.p;
        }
        self.pack(&out)
    }

    fn mul_schoolbook(&self, a: u32, b: u32) -> u32 {
        let m = self.m as usize;
        let p = self.p as u64;
        let (da, db) = (self.digits(a), self.digits(b));
        let mut prod = [0u64; 2 * MAX_DEGREE];
        for i in 0..m {
            if da[i] == 0 {
                continue;
            }
            for j in 0..m {
                prod[i + j] = (prod[i + j] + da[i] as u64 * db[j] as u64) % p;
            }
        }
        for k in (m..2 * m - 1).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for i in 0..m {
                let t = c * self.modulus[i] as u64 % p;
                prod[k - m + i] = (prod[k - m + i] + p - t) % p;
            }
        }
        let mut out = [0u32; MAX_DEGREE];
        for i in 0..m {
            out[i] = prod[i] as u32;
        }
        self.pack(&out)
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        if self.m == 1 {
            return (a as u64 * b as u64 % self.p as u64) as u32;
        }
        match &self.mul_table {
            Some(t) => t[(a * self.q + b) as usize],
            None => self.mul_schoolbook(a, b),
        }
    }

    fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    fn inv(&self, a: u32) -> u32 {
        if self.m == 1 {
            fp_inv(a, self.p)
        } else {
            self.pow(a, self.q as u64 - 2)
        }
    }
}

impl Field {
    /// Creates (or fetches) the field F_{p^m}. When `modulus` is `None` and
    /// m > 1, the monic irreducible of least index is used. A supplied modulus
    /// is given low degree first and must be monic of degree m.
    pub fn new(p: u32, m: u32, modulus: Option<&[u32]>) -> Result<Field> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if m == 0 {
            return Err(Error::Invalid("extension degree must be at least 1".into()));
        }
        let q = (p as u128).pow(m);
        if q > MAX_FIELD_SIZE as u128 {
            return Err(Error::FieldTooLarge(q));
        }
        let modulus = if m == 1 {
            vec![0, 1]
        } else if let Some(f) = modulus {
            let f: Vec<u32> = f.iter().map(|c| c % p).collect();
            if f.len() != m as usize + 1 || f[m as usize] != 1 || !fp_irreducible(&f, p) {
                return Err(Error::ReducibleModulus);
            }
            f
        } else {
            default_modulus(p, m)
        };
        let key = (p, modulus.clone());
        let mut reg = registry().lock().expect("field registry poisoned");
        if let Some(ctx) = reg.get(&key) {
            return Ok(Field(ctx));
        }
        let mut ctx = FieldContext { p, m, q: q as u32, modulus, mul_table: None };
        if m > 1 && ctx.q <= TABLE_LIMIT {
            let mut t = vec![0u32; (ctx.q * ctx.q) as usize];
            for a in 0..ctx.q {
                for b in 0..ctx.q {
                    t[(a * ctx.q + b) as usize] = ctx.mul_schoolbook(a, b);
                }
            }
            ctx.mul_table = Some(t);
        }
        let leaked: &'static FieldContext = Box::leak(Box::new(ctx));
        reg.insert(key, leaked);
        Ok(Field(leaked))
    }

    /// The prime field F_p.
    pub fn prime(p: u32) -> Result<Field> {
        Field::new(p, 1, None)
    }

    /// The field with q elements and default modulus.
    pub fn with_order(q: u64) -> Result<Field> {
        if q > MAX_FIELD_SIZE {
            return Err(Error::FieldTooLarge(q as u128));
        }
        let (p, m) = prime_power(q).ok_or_else(|| Error::Invalid(format!("{q} is not a prime power")))?;
        Field::new(p, m, None)
    }

    pub fn p(self) -> u32 {
        self.0.p
    }

    pub fn m(self) -> u32 {
        self.0.m
    }

    pub fn q(self) -> u32 {
        self.0.q
    }

    /// Modulus coefficients, low degree first (t for prime fields).
    pub fn modulus(self) -> &'static [u32] {
        &self.0.modulus
    }

    /// The element with the given index (see module docs).
    pub fn elem(self, index: u32) -> FieldElement {
        assert!(index < self.0.q, "index {index} out of range for F_{}", self.0.q);
        FieldElement { field: self, v: index }
    }

    pub fn zero(self) -> FieldElement {
        FieldElement { field: self, v: 0 }
    }

    pub fn one(self) -> FieldElement {
        FieldElement { field: self, v: 1 }
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(self, n: i64) -> FieldElement {
        FieldElement { field: self, v: n.rem_euclid(self.0.p as i64) as u32 }
    }

    /// Element c_0 + c_1 t + ...; coefficients are reduced mod p.
    pub fn from_coeffs(self, coeffs: &[i64]) -> Result<FieldElement> {
        if coeffs.len() > self.0.m as usize {
            return Err(Error::Invalid(format!("too many coefficients for F_{}", self.0.q)));
        }
        let mut d = [0u32; MAX_DEGREE];
        for (i, &c) in coeffs.iter().enumerate() {
            d[i] = c.rem_euclid(self.0.p as i64) as u32;
        }
        Ok(FieldElement { field: self, v: self.0.pack(&d) })
    }

    /// The class of t. For a prime field the modulus is t itself, so this is 0.
    pub fn generator(self) -> FieldElement {
        if self.0.m == 1 {
            self.zero()
        } else {
            FieldElement { field: self, v: self.0.p }
        }
    }

    /// All elements in canonical order.
    pub fn elements(self) -> impl Iterator<Item = FieldElement> {
        (0..self.0.q).map(move |v| FieldElement { field: self, v })
    }

    /// Nonzero elements in canonical order.
    pub fn nonzero_elements(self) -> impl Iterator<Item = FieldElement> {
        (1..self.0.q).map(move |v| FieldElement { field: self, v })
    }

    /// The field F_{q^d} (with its own default modulus over F_p).
    pub fn extension(self, d: u32) -> Result<Field> {
        if d == 0 {
            return Err(Error::Invalid("extension degree must be positive".into()));
        }
        let total = self.0.m as u64 * d as u64;
        let size = (self.0.p as u128).pow(total as u32);
        if size > MAX_FIELD_SIZE as u128 {
            return Err(Error::FieldTooLarge(size));
        }
        if d == 1 {
            return Ok(self);
        }
        Field::new(self.0.p, total as u32, None)
    }

    /// The canonical embedding of `self` into `target`: t is sent to the root
    /// of least index of the modulus of `self`. Deterministic, so all
    /// computations agree on it.
    pub fn embedding(self, target: Field) -> Result<&'static Embedding> {
        let key = (self.0 as *const _ as usize, target.0 as *const _ as usize);
        if let Some(e) = embedding_registry().lock().expect("embedding registry poisoned").get(&key) {
            return Ok(e);
        }
        if self.0.p != target.0.p || !target.0.m.is_multiple_of(self.0.m) {
            return Err(Error::Invalid(format!("F_{} does not embed in F_{}", self.0.q, target.0.q)));
        }
        let theta = if self.0.m == 1 {
            target.zero()
        } else {
            let modulus: Vec<FieldElement> =
                self.0.modulus.iter().map(|&c| target.from_int(c as i64)).collect();
            let f = UniPoly::new(target, modulus);
            target
                .elements()
                .find(|&r| f.eval(r).is_zero())
                .ok_or_else(|| Error::Invalid("modulus has no root in target".into()))?
        };
        let mut images = Vec::with_capacity(self.0.q as usize);
        let mut preimages = HashMap::with_capacity(self.0.q as usize);
        for a in self.elements() {
            let d = self.0.digits(a.v);
            let mut img = target.zero();
            for i in (0..self.0.m as usize).rev() {
                img = img * theta + target.from_int(d[i] as i64);
            }
            images.push(img.v);
            preimages.insert(img.v, a.v);
        }
        let emb: &'static Embedding =
            Box::leak(Box::new(Embedding { source: self, target, images, preimages }));
        embedding_registry().lock().expect("embedding registry poisoned").insert(key, emb);
        Ok(emb)
    }

    /// Parses an element: a decimal integer (reduced mod p), or a sum of
    /// terms `c`, `c*t`, `t`, `c*t^k`, `t^k` with optional signs.
    pub fn parse_element(self, s: &str) -> Result<FieldElement> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty field element".into()));
        }
        let mut acc = self.zero();
        let mut rest = s.as_str();
        let t = if self.0.m == 1 { None } else { Some(FieldElement { field: self, v: self.0.p }) };
        while !rest.is_empty() {
            let mut sign = 1i64;
            if let Some(r) = rest.strip_prefix('+') {
                rest = r;
            } else if let Some(r) = rest.strip_prefix('-') {
                rest = r;
                sign = -1;
            }
            let end = rest.find(['+', '-']).unwrap_or(rest.len());
            let term = &rest[..end];
            rest = &rest[end..];
            let (coef, power) = match term.split_once('t') {
                None => (term, None),
                Some((c, e)) => {
                    let c = c.strip_suffix('*').unwrap_or(c);
                    let e = if e.is_empty() {
                        1
                    } else {
                        e.strip_prefix('^')
                            .and_then(|x| x.parse::<u64>().ok())
                            .ok_or_else(|| Error::Parse(format!("bad exponent in '{term}'")))?
                    };
                    (c, Some(e))
                }
            };
            let c = if coef.is_empty() {
                1
            } else {
                coef.parse::<i64>().map_err(|_| Error::Parse(format!("bad coefficient in '{term}'")))?
            };
            let mut val = self.from_int(sign * c);
            if let Some(e) = power {
                let t = t.ok_or_else(|| Error::Parse("t is not defined in a prime field".into()))?;
                val *= t.pow(e);
            }
            acc += val;
        }
        Ok(acc)
    }
}

fn default_modulus(p: u32, m: u32) -> Vec<u32> {
    let count = (p as u64).pow(m);
    for idx in 0..count {
        let mut f = Vec::with_capacity(m as usize + 1);
        let mut r = idx;
        for _ in 0..m {
            f.push((r % p as u64) as u32);
            r /= p as u64;
        }
        f.push(1);
        if f[0] != 0 && fp_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials of every degree exist")
}

impl PartialEq for Field {
    fn eq(&self, other: &Field) -> bool {
        std::ptr::eq(self.0, other.0)
    }
}

impl Eq for Field {}

impl Hash for Field {
    fn hash<H: Hasher>(&self, state: &mut H) {
        (self.0 as *const FieldContext as usize).hash(state);
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.0.q)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.0.q)
    }
}

impl FieldElement {
    pub fn field(self) -> Field {
        self.field
    }

    /// Position in the canonical enumeration.
    pub fn index(self) -> u32 {
        self.v
    }

    pub fn is_zero(self) -> bool {
        self.v == 0
    }

    pub fn is_one(self) -> bool {
        self.v == 1
    }

    /// Coefficients over F_p, low degree first, length m.
    pub fn coeffs(self) -> Vec<u32> {
        let d = self.field.0.digits(self.v);
        d[..self.field.0.m as usize].to_vec()
    }

    /// True when the element lies in the prime subfield.
    pub fn is_prime_subfield(self) -> bool {
        self.v < self.field.0.p
    }

    /// Checked arithmetic.
    pub fn arith(self, rhs: FieldElement, op: ArithOp) -> Result<FieldElement> {
        if self.field != rhs.field {
            return Err(Error::ContextMismatch);
        }
        let ctx = self.field.0;
        let v = match op {
            ArithOp::Add => ctx.add(self.v, rhs.v),
            ArithOp::Sub => ctx.add(self.v, ctx.neg(rhs.v)),
            ArithOp::Mul => ctx.mul(self.v, rhs.v),
            ArithOp::Div => {
                if rhs.v == 0 {
                    return Err(Error::DivisionByZero);
                }
                ctx.mul(self.v, ctx.inv(rhs.v))
            }
        };
        Ok(FieldElement { field: self.field, v })
    }

    pub fn inv(self) -> Result<FieldElement> {
        if self.v == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(FieldElement { field: self.field, v: self.field.0.inv(self.v) })
    }

    pub fn pow(self, e: u64) -> FieldElement {
        FieldElement { field: self.field, v: self.field.0.pow(self.v, e) }
    }

    /// Multiplication by an integer (through the prime subfield).
    pub fn mul_int(self, n: i64) -> FieldElement {
        self * self.field.from_int(n)
    }

    /// a -> a^p.
    pub fn frobenius(self) -> FieldElement {
        self.pow(self.field.0.p as u64)
    }

    fn check(self, rhs: FieldElement) {
        assert!(self.field == rhs.field, "field mismatch: {} vs {}", self.field, rhs.field);
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &FieldElement) -> bool {
        self.v == other.v && self.field == other.field
    }
}

impl Eq for FieldElement {}

impl Hash for FieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.hash(state);
        self.v.hash(state);
    }
}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FieldElement {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.field.q(), self.v).cmp(&(other.field.q(), other.v))
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ctx = self.field.0;
        if ctx.m == 1 {
            return write!(f, "{}", self.v);
        }
        let d = ctx.digits(self.v);
        for i in 0..ctx.m as usize {
            if i > 0 {
                write!(f, "+")?;
            }
            match i {
                0 => write!(f, "{}", d[0])?,
                1 => write!(f, "{}*t", d[1])?,
                _ => write!(f, "{}*t^{}", d[i], i)?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Add for FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: FieldElement) -> FieldElement {
        self.check(rhs);
        FieldElement { field: self.field, v: self.field.0.add(self.v, rhs.v) }
    }
}

impl Sub for FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: FieldElement) -> FieldElement {
        self.check(rhs);
        let ctx = self.field.0;
        FieldElement { field: self.field, v: ctx.add(self.v, ctx.neg(rhs.v)) }
    }
}

impl Mul for FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: FieldElement) -> FieldElement {
        self.check(rhs);
        FieldElement { field: self.field, v: self.field.0.mul(self.v, rhs.v) }
    }
}

/// Panics on division by zero; use [`FieldElement::arith`] for a checked form.
impl Div for FieldElement {
    type Output = FieldElement;
    fn div(self, rhs: FieldElement) -> FieldElement {
        self.check(rhs);
        self * rhs.inv().expect("division by zero in field")
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement { field: self.field, v: self.field.0.neg(self.v) }
    }
}

impl AddAssign for FieldElement {
    fn add_assign(&mut self, rhs: FieldElement) {
        *self = *self + rhs;
    }
}

impl SubAssign for FieldElement {
    fn sub_assign(&mut self, rhs: FieldElement) {
        *self = *self - rhs;
    }
}

impl MulAssign for FieldElement {
    fn mul_assign(&mut self, rhs: FieldElement) {
        *self = *self * rhs;
    }
}

/// A field embedding F_q -> F_{q^d}.
pub struct Embedding {
    source: Field,
    target: Field,
    images: Vec<u32>,
    preimages: HashMap<u32, u32>,
}

impl fmt::Debug for Embedding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Embedding({} -> {})", self.source, self.target)
    }
}

impl Embedding {
    pub fn source(&self) -> Field {
        self.source
    }

    pub fn target(&self) -> Field {
        self.target
    }

    pub fn map(&self, a: FieldElement) -> FieldElement {
        assert!(a.field == self.source, "element not in embedding source");
        FieldElement { field: self.target, v: self.images[a.v as usize] }
    }

    /// The preimage of `b`, if `b` lies in the image.
    pub fn preimage(&self, b: FieldElement) -> Option<FieldElement> {
        if b.field != self.target {
            return None;
        }
        self.preimages.get(&b.v).map(|&v| FieldElement { field: self.source, v })
    }
}

/// All roots of `f` in F_{q^d}, with multiplicity, by exhaustive evaluation.
/// Roots are listed in canonical order of the extension, each repeated by its
/// multiplicity.
pub fn roots_in_extension(f: &UniPoly, ext_degree: u32) -> Result<Vec<FieldElement>> {
    if f.is_zero() {
        return Err(Error::Invalid("the zero polynomial has every element as a root".into()));
    }
    let big = f.field().extension(ext_degree)?;
    let emb = f.field().embedding(big)?;
    let g = f.map(emb);
    g.roots()
}

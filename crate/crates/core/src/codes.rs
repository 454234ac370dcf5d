//! Linear codes over F_q, stored as generator matrices in reduced row-echelon
//! form so that equal codes have equal matrices.
//!
//! Tensor products use row-major indexing: coordinate (i, j) of A⊗B sits at
//! position i·n_B + j.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};

/// Largest number of codewords `min_distance` will enumerate.
pub const MAX_ENUMERATION: u64 = 1 << 24;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinearCode {
    field: Field,
    n: usize,
    rows: Vec<Vec<FieldElement>>,
}

/// Reduced row-echelon form with zero rows dropped, and the pivot columns.
pub fn rref(n: usize, mut rows: Vec<Vec<FieldElement>>) -> (Vec<Vec<FieldElement>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..n {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].inv().expect("nonzero pivot");
        for x in rows[r].iter_mut() {
            *x *= inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[col].is_zero() {
                let c = row[col];
                for (x, &y) in row.iter_mut().zip(&pivot_row) {
                    *x -= c * y;
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    (rows, pivots)
}

impl LinearCode {
    /// The row space of `rows`, each of length `n`.
    pub fn from_generators(field: Field, n: usize, rows: Vec<Vec<FieldElement>>) -> Result<LinearCode> {
        for r in &rows {
            if r.len() != n {
                return Err(Error::Invalid(format!("row of length {} in a code of length {n}", r.len())));
            }
            if r.iter().any(|x| x.field() != field) {
                return Err(Error::ContextMismatch);
            }
        }
        let (rows, _) = rref(n, rows);
        Ok(LinearCode { field, n, rows })
    }

    pub fn zero(field: Field, n: usize) -> LinearCode {
        LinearCode { field, n, rows: Vec::new() }
    }

    /// F_q^n.
    pub fn full(field: Field, n: usize) -> LinearCode {
        let rows = (0..n).map(|i| (0..n).map(|j| if i == j { field.one() } else { field.zero() }).collect()).collect();
        LinearCode { field, n, rows }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Canonical generator matrix.
    pub fn rows(&self) -> &[Vec<FieldElement>] {
        &self.rows
    }

    fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.iter().position(|x| !x.is_zero()).expect("nonzero row")).collect()
    }

    fn check(&self, o: &LinearCode) -> Result<()> {
        if self.field != o.field {
            return Err(Error::ContextMismatch);
        }
        if self.n != o.n {
            return Err(Error::Invalid(format!("codes of lengths {} and {}", self.n, o.n)));
        }
        Ok(())
    }

    /// Dual under the standard bilinear form.
    pub fn dual(&self) -> LinearCode {
        let f = self.field;
        let pivots = self.pivots();
        let mut rows = Vec::new();
        for free in (0..self.n).filter(|c| !pivots.contains(c)) {
            let mut v = vec![f.zero(); self.n];
            v[free] = f.one();
            for (r, &p) in self.rows.iter().zip(&pivots) {
                v[p] = -r[free];
            }
            rows.push(v);
        }
        LinearCode { field: f, n: self.n, rows: rref(self.n, rows).0 }
    }

    pub fn sum(&self, o: &LinearCode) -> Result<LinearCode> {
        self.check(o)?;
        let rows = self.rows.iter().chain(&o.rows).cloned().collect();
        LinearCode::from_generators(self.field, self.n, rows)
    }

    pub fn intersect(&self, o: &LinearCode) -> Result<LinearCode> {
        Ok(self.dual().sum(&o.dual())?.dual())
    }

    /// o ⊆ self.
    pub fn contains(&self, o: &LinearCode) -> Result<bool> {
        Ok(self.sum(o)?.dim() == self.dim())
    }

    pub fn contains_word(&self, w: &[FieldElement]) -> Result<bool> {
        let c = LinearCode::from_generators(self.field, self.n, vec![w.to_vec()])?;
        self.contains(&c)
    }

    /// Message times generator matrix.
    pub fn encode(&self, msg: &[FieldElement]) -> Result<Vec<FieldElement>> {
        if msg.len() != self.dim() {
            return Err(Error::Invalid(format!("message of length {} for dimension {}", msg.len(), self.dim())));
        }
        let mut out = vec![self.field.zero(); self.n];
        for (&m, r) in msg.iter().zip(&self.rows) {
            for (o, &x) in out.iter_mut().zip(r) {
                *o += m * x;
            }
        }
        Ok(out)
    }

    /// A⊗B, coordinate (i, j) at i·n_B + j.
    pub fn tensor(&self, o: &LinearCode) -> Result<LinearCode> {
        if self.field != o.field {
            return Err(Error::ContextMismatch);
        }
        let n = self.n * o.n;
        let mut rows = Vec::with_capacity(self.dim() * o.dim());
        for a in &self.rows {
            for b in &o.rows {
                rows.push(a.iter().flat_map(|&x| b.iter().map(move |&y| x * y)).collect());
            }
        }
        Ok(LinearCode { field: self.field, n, rows: rref(n, rows).0 })
    }

    /// Minimum weight of a nonzero codeword, by enumeration of all
    /// codewords with first nonzero message coordinate equal to one.
    /// `None` for the zero code.
    pub fn min_distance(&self) -> Result<Option<usize>> {
        let k = self.dim();
        if k == 0 {
            return Ok(None);
        }
        let q = self.field.q() as u64;
        if (q as f64).powi(k as i32) > MAX_ENUMERATION as f64 {
            return Err(Error::Bound(format!("{q}^{k} codewords exceed the enumeration bound 2^24")));
        }
        let elems: Vec<FieldElement> = self.field.elements().collect();
        let mut best = self.n;
        for lead in 0..k {
            // Codewords row_lead + Σ_{i > lead} c_i·row_i, via a mixed-radix
            // counter updating the word incrementally.
            let mut word = self.rows[lead].clone();
            let mut digits = vec![0usize; k - lead - 1];
            loop {
                best = best.min(word.iter().filter(|x| !x.is_zero()).count());
                let mut i = 0;
                loop {
                    if i == digits.len() {
                        break;
                    }
                    let row = &self.rows[lead + 1 + i];
                    let old = elems[digits[i]];
                    digits[i] = (digits[i] + 1) % q as usize;
                    let delta = elems[digits[i]] - old;
                    for (w, &r) in word.iter_mut().zip(row) {
                        *w += delta * r;
                    }
                    if digits[i] != 0 {
                        break;
                    }
                    i += 1;
                }
                if i == digits.len() {
                    break;
                }
            }
        }
        Ok(Some(best))
    }

    /// Serializes to the matrix JSON layout.
    pub fn to_json(&self) -> Value {
        MatrixJson::from_rows(self.field, self.n, &self.rows).to_value()
    }

    pub fn from_json(v: &Value) -> Result<LinearCode> {
        let m: MatrixJson = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        let (field, rows) = m.decode()?;
        LinearCode::from_generators(field, m.n, rows)
    }
}

/// Reed–Solomon code: polynomials of degree < k evaluated at every field
/// element, in the canonical element order.
pub fn rs_code(field: Field, k: usize) -> Result<LinearCode> {
    let q = field.q() as usize;
    if k > q {
        return Err(Error::Invalid(format!("RS dimension {k} exceeds the length {q}")));
    }
    let rows = (0..k).map(|i| field.elements().map(|a| a.pow(i as u64)).collect()).collect();
    LinearCode::from_generators(field, q, rows)
}

/// Row and column hulls of a code of length n_a·n_b read as n_a×n_b
/// matrices: U is spanned by all columns, V by all rows. The code is an
/// elementary tensor product exactly when dim = dim U · dim V, and then it
/// equals U⊗V. The zero code gives (0, 0, true).
pub fn tensor_hull(c: &LinearCode, na: usize, nb: usize) -> Result<(LinearCode, LinearCode, bool)> {
    if na * nb != c.len() {
        return Err(Error::Invalid(format!("length {} is not {na}×{nb}", c.len())));
    }
    let mut cols = Vec::new();
    let mut rows = Vec::new();
    for w in c.rows() {
        for i in 0..na {
            rows.push(w[i * nb..(i + 1) * nb].to_vec());
        }
        for j in 0..nb {
            cols.push((0..na).map(|i| w[i * nb + j]).collect());
        }
    }
    let u = LinearCode::from_generators(c.field(), na, cols)?;
    let v = LinearCode::from_generators(c.field(), nb, rows)?;
    let elementary = c.dim() == u.dim() * v.dim();
    Ok((u, v, elementary))
}

/// `{"q", "m", "n", "rows"}` with entries as integers over prime fields and
/// as coefficient arrays of length m otherwise.
#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct MatrixJson {
    pub q: u64,
    pub m: u32,
    pub n: usize,
    pub rows: Vec<Vec<Value>>,
}

impl MatrixJson {
    pub fn from_rows(field: Field, n: usize, rows: &[Vec<FieldElement>]) -> MatrixJson {
        let enc = |x: &FieldElement| -> Value {
            if field.m() == 1 {
                Value::from(x.index())
            } else {
                Value::from(x.coeffs())
            }
        };
        MatrixJson {
            q: field.q() as u64,
            m: field.m(),
            n,
            rows: rows.iter().map(|r| r.iter().map(enc).collect()).collect(),
        }
    }

    pub fn to_value(&self) -> Value {
        serde_json::to_value(self).expect("plain data")
    }

    pub fn decode(&self) -> Result<(Field, Vec<Vec<FieldElement>>)> {
        let field = Field::with_order(self.q)?;
        if field.m() != self.m {
            return Err(Error::Parse(format!("q = {} does not have extension degree {}", self.q, self.m)));
        }
        let dec = |v: &Value| -> Result<FieldElement> {
            match v {
                Value::Number(k) => Ok(field.from_int(k.as_i64().ok_or_else(|| Error::Parse(format!("bad entry {v}")))?)),
                Value::Array(cs) => {
                    let cs: Option<Vec<i64>> = cs.iter().map(|c| c.as_i64()).collect();
                    field.from_coeffs(&cs.ok_or_else(|| Error::Parse(format!("bad entry {v}")))?)
                }
                _ => Err(Error::Parse(format!("bad entry {v}"))),
            }
        };
        let rows = self.rows.iter().map(|r| r.iter().map(dec).collect::<Result<Vec<_>>>()).collect::<Result<_>>()?;
        Ok((field, rows))
    }
}

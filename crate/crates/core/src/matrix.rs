//! Dense matrices over `A[q, q^-1]`.

use std::fmt;

use crate::error::LaurentError;
use crate::laurent::{CoefficientDomain, LaurentPoly};

#[derive(Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    domain: CoefficientDomain,
    rows: usize,
    cols: usize,
    entries: Vec<LaurentPoly>,
}

impl PolyMatrix {
    pub fn zeros(domain: CoefficientDomain, rows: usize, cols: usize) -> Self {
        PolyMatrix {
            domain,
            rows,
            cols,
            entries: vec![LaurentPoly::zero(domain); rows * cols],
        }
    }

    pub fn identity(domain: CoefficientDomain, n: usize) -> Self {
        let mut m = Self::zeros(domain, n, n);
        for i in 0..n {
            m.set(i, i, LaurentPoly::one(domain));
        }
        m
    }

    /// Row-major construction; panics if the rows are ragged or mix domains.
    pub fn from_rows(domain: CoefficientDomain, rows: Vec<Vec<LaurentPoly>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut entries = Vec::with_capacity(nrows * ncols);
        for r in rows {
            assert_eq!(r.len(), ncols, "ragged matrix rows");
            for e in r {
                assert_eq!(e.domain(), domain, "matrix entry over a different domain");
                entries.push(e);
            }
        }
        PolyMatrix {
            domain,
            rows: nrows,
            cols: ncols,
            entries,
        }
    }

    pub fn domain(&self) -> CoefficientDomain {
        self.domain
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &LaurentPoly {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: LaurentPoly) {
        assert_eq!(v.domain(), self.domain);
        self.entries[r * self.cols + c] = v;
    }

    pub fn entries(&self) -> impl Iterator<Item = &LaurentPoly> {
        self.entries.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(LaurentPoly::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.domain, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    /// Largest span of any entry.
    pub fn max_span(&self) -> usize {
        self.entries.iter().map(LaurentPoly::span).max().unwrap_or(0)
    }

    /// `(min valuation, max top exponent)` over nonzero entries.
    pub fn exponent_range(&self) -> Option<(i64, i64)> {
        self.entries
            .iter()
            .filter(|e| !e.is_zero())
            .fold(None, |acc, e| {
                let (lo, hi) = (e.valuation(), e.top_exponent());
                Some(match acc {
                    None => (lo, hi),
                    Some((a, b)) => (a.min(lo), b.max(hi)),
                })
            })
    }

    pub fn map_entries<F>(&self, f: F) -> Result<Self, LaurentError>
    where
        F: Fn(&LaurentPoly) -> Result<LaurentPoly, LaurentError>,
    {
        let entries = self.entries.iter().map(f).collect::<Result<Vec<_>, _>>()?;
        let domain = entries.first().map_or(self.domain, LaurentPoly::domain);
        Ok(PolyMatrix {
            domain,
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    pub fn change_domain(&self, target: CoefficientDomain) -> Result<Self, LaurentError> {
        let mut m = self.map_entries(|e| e.change_domain(target))?;
        m.domain = target;
        Ok(m)
    }

    pub fn mul(&self, other: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.cols, other.rows, "matrix dimension mismatch");
        let mut out = Self::zeros(self.domain, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.get(i, j) + &(a * b);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.entries.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    /// `row[dst] += factor * row[src]`.
    pub fn add_row_multiple(&mut self, dst: usize, src: usize, factor: &LaurentPoly) {
        if factor.is_zero() {
            return;
        }
        for c in 0..self.cols {
            let s = self.get(src, c);
            if s.is_zero() {
                continue;
            }
            let v = self.get(dst, c) + &(factor * s);
            self.set(dst, c, v);
        }
    }

    /// `col[dst] += factor * col[src]`.
    pub fn add_col_multiple(&mut self, dst: usize, src: usize, factor: &LaurentPoly) {
        if factor.is_zero() {
            return;
        }
        for r in 0..self.rows {
            let s = self.get(r, src);
            if s.is_zero() {
                continue;
            }
            let v = self.get(r, dst) + &(factor * s);
            self.set(r, dst, v);
        }
    }

    pub fn scale_row(&mut self, r: usize, factor: &LaurentPoly) {
        for c in 0..self.cols {
            let v = self.get(r, c) * factor;
            self.set(r, c, v);
        }
    }

    pub fn scale_col(&mut self, c: usize, factor: &LaurentPoly) {
        for r in 0..self.rows {
            let v = self.get(r, c) * factor;
            self.set(r, c, v);
        }
    }

    /// Determinant by fraction-free (Bareiss) elimination; valid over any
    /// integral domain since every division is exact.
    pub fn determinant(&self) -> LaurentPoly {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let d = self.domain;
        if n == 0 {
            return LaurentPoly::one(d);
        }
        let mut m = self.clone();
        let mut sign = false;
        let mut prev = LaurentPoly::one(d);
        for k in 0..n - 1 {
            // lightest pivot keeps the fraction-free entries small
            let size = |e: &LaurentPoly| {
                let bits: u64 = e.coefficients().iter().map(|c| c.numer().bits() + c.denom().bits()).sum();
                (e.span(), bits)
            };
            match (k..n).filter(|&r| !m.get(r, k).is_zero()).min_by_key(|&r| size(m.get(r, k))) {
                Some(r) if r != k => {
                    m.swap_rows(k, r);
                    sign = !sign;
                }
                Some(_) => {}
                None => return LaurentPoly::zero(d),
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(m.get(i, j) * m.get(k, k)) - &(m.get(i, k) * m.get(k, j));
                    let v = num.div_exact(&prev).expect("Bareiss division is exact");
                    m.set(i, j, v);
                }
            }
            prev = m.get(k, k).clone();
        }
        let det = m.get(n - 1, n - 1).clone();
        if sign {
            -det
        } else {
            det
        }
    }
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "PolyMatrix {}x{} over {} [", self.rows, self.cols, self.domain)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

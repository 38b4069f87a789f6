//! Sparse exact linear algebra over the rationals.
//!
//! Rows are stored sparsely because nearly every matrix in this crate is a
//! monomial incidence matrix. Rank uses fraction-free elimination on
//! integer rows (content is divided out after every step to keep entries
//! small); reduced row echelon form uses rational Gauss-Jordan.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Q = BigRational;

/// A sparse vector: strictly increasing column indices, no stored zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseVec {
    entries: Vec<(usize, Q)>,
}

impl SparseVec {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_dense(values: &[Q]) -> Self {
        let entries = values
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(i, v)| (i, v.clone()))
            .collect();
        Self { entries }
    }

    /// Builds from unordered `(column, value)` pairs, summing duplicates.
    pub fn from_pairs<I: IntoIterator<Item = (usize, Q)>>(pairs: I) -> Self {
        let mut acc: BTreeMap<usize, Q> = BTreeMap::new();
        for (c, v) in pairs {
            *acc.entry(c).or_insert_with(Q::zero) += v;
        }
        let entries = acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        Self { entries }
    }

    pub fn entries(&self) -> &[(usize, Q)] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, col: usize) -> Q {
        match self.entries.binary_search_by_key(&col, |(c, _)| *c) {
            Ok(i) => self.entries[i].1.clone(),
            Err(_) => Q::zero(),
        }
    }

    pub fn leading(&self) -> Option<(usize, &Q)> {
        self.entries.first().map(|(c, v)| (*c, v))
    }

    pub fn to_dense(&self, len: usize) -> Vec<Q> {
        let mut out = vec![Q::zero(); len];
        for (c, v) in &self.entries {
            out[*c] = v.clone();
        }
        out
    }

    pub fn scale(&self, k: &Q) -> SparseVec {
        if k.is_zero() {
            return SparseVec::new();
        }
        SparseVec {
            entries: self.entries.iter().map(|(c, v)| (*c, v * k)).collect(),
        }
    }

    /// `self + k * other`.
    pub fn add_scaled(&self, k: &Q, other: &SparseVec) -> SparseVec {
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.entries, &other.entries);
        while i < a.len() || j < b.len() {
            if j >= b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i].clone());
                i += 1;
            } else if i >= a.len() || b[j].0 < a[i].0 {
                out.push((b[j].0, &b[j].1 * k));
                j += 1;
            } else {
                let v = &a[i].1 + &b[j].1 * k;
                if !v.is_zero() {
                    out.push((a[i].0, v));
                }
                i += 1;
                j += 1;
            }
        }
        SparseVec { entries: out }
    }
}

/// A matrix with a fixed column count and sparse rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    cols: usize,
    rows: Vec<SparseVec>,
}

/// Reduced row echelon form: nonzero rows only, with their pivot columns.
#[derive(Clone, Debug)]
pub struct Rref {
    pub rows: Vec<SparseVec>,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn new(cols: usize) -> Self {
        Self {
            cols,
            rows: Vec::new(),
        }
    }

    pub fn from_rows(cols: usize, rows: Vec<SparseVec>) -> Self {
        debug_assert!(rows
            .iter()
            .all(|r| r.entries.last().is_none_or(|(c, _)| *c < cols)));
        Self { cols, rows }
    }

    pub fn from_dense(cols: usize, rows: &[Vec<Q>]) -> Self {
        Self {
            cols,
            rows: rows.iter().map(|r| SparseVec::from_dense(r)).collect(),
        }
    }

    pub fn push_row(&mut self, row: SparseVec) {
        debug_assert!(row.entries.last().is_none_or(|(c, _)| *c < self.cols));
        self.rows.push(row);
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn entry(&self, r: usize, c: usize) -> Q {
        self.rows[r].get(c)
    }

    pub fn to_dense(&self) -> Vec<Vec<Q>> {
        self.rows.iter().map(|r| r.to_dense(self.cols)).collect()
    }

    /// Rank by fraction-free elimination over the integers.
    pub fn rank(&self) -> usize {
        let mut basis: BTreeMap<usize, Vec<(usize, BigInt)>> = BTreeMap::new();
        for row in &self.rows {
            let mut row = integer_row(row);
            while let Some(&(lead, _)) = row.first() {
                match basis.get(&lead) {
                    Some(piv) => {
                        row = eliminate_int(&row, piv);
                    }
                    None => {
                        basis.insert(lead, row);
                        break;
                    }
                }
            }
        }
        basis.len()
    }

    /// Reduced row echelon form of the row space.
    pub fn rref(&self) -> Rref {
        // Echelon basis keyed by pivot column; every stored row is monic.
        let mut basis: BTreeMap<usize, SparseVec> = BTreeMap::new();
        for row in &self.rows {
            let mut row = row.clone();
            while let Some((lead, lv)) = row.leading() {
                match basis.get(&lead) {
                    Some(piv) => {
                        let k = -lv.clone();
                        row = row.add_scaled(&k, piv);
                    }
                    None => {
                        let inv = lv.recip();
                        basis.insert(lead, row.scale(&inv));
                        break;
                    }
                }
            }
        }
        // Back substitution, last pivot first.
        let pivots: Vec<usize> = basis.keys().copied().collect();
        for idx in (0..pivots.len()).rev() {
            let p = pivots[idx];
            let prow = basis[&p].clone();
            for &q in &pivots[..idx] {
                let coeff = basis[&q].get(p);
                if !coeff.is_zero() {
                    let updated = basis[&q].add_scaled(&-coeff, &prow);
                    basis.insert(q, updated);
                }
            }
        }
        Rref {
            rows: basis.into_values().collect(),
            pivots,
        }
    }

    /// A particular solution of `self * x = rhs` with every free variable set
    /// to zero, or `None` when the system is inconsistent.
    pub fn solve(&self, rhs: &[Q]) -> Option<Vec<Q>> {
        assert_eq!(
            rhs.len(),
            self.rows.len(),
            "rhs length must match row count"
        );
        // Augment with the right-hand side as the last column.
        let aug_cols = self.cols + 1;
        let rows = self
            .rows
            .iter()
            .zip(rhs)
            .map(|(r, b)| {
                let mut e = r.entries.clone();
                if !b.is_zero() {
                    e.push((self.cols, b.clone()));
                }
                SparseVec { entries: e }
            })
            .collect();
        let rref = Matrix::from_rows(aug_cols, rows).rref();
        if rref.pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Q::zero(); self.cols];
        for (row, &p) in rref.rows.iter().zip(&rref.pivots) {
            x[p] = row.get(self.cols);
        }
        Some(x)
    }

    /// A basis of the right kernel `{x : self * x = 0}`.
    pub fn kernel(&self) -> Vec<Vec<Q>> {
        let rref = self.rref();
        let pivot_set: std::collections::BTreeSet<usize> = rref.pivots.iter().copied().collect();
        let mut out = Vec::new();
        for free in (0..self.cols).filter(|c| !pivot_set.contains(c)) {
            let mut v = vec![Q::zero(); self.cols];
            v[free] = Q::one();
            for (row, &p) in rref.rows.iter().zip(&rref.pivots) {
                v[p] = -row.get(free);
            }
            out.push(v);
        }
        out
    }

    /// Determinant of a square matrix by fraction-free elimination.
    pub fn determinant(&self) -> Q {
        assert_eq!(
            self.rows.len(),
            self.cols,
            "determinant of a non-square matrix"
        );
        let mut m = self.to_dense();
        let n = self.cols;
        let mut det = Q::one();
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| !m[r][col].is_zero()) else {
                return Q::zero();
            };
            if piv != col {
                m.swap(piv, col);
                det = -det;
            }
            let pv = m[col][col].clone();
            det *= &pv;
            for r in col + 1..n {
                if m[r][col].is_zero() {
                    continue;
                }
                let f = &m[r][col] / &pv;
                for c in col..n {
                    let sub = &f * &m[col][c];
                    m[r][c] -= sub;
                }
            }
        }
        det
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.to_dense() {
            let cells: Vec<String> = row.iter().map(format_rational).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

fn integer_row(row: &SparseVec) -> Vec<(usize, BigInt)> {
    let mut lcm = BigInt::one();
    for (_, v) in &row.entries {
        lcm = lcm.lcm(v.denom());
    }
    let mut out: Vec<(usize, BigInt)> = row
        .entries
        .iter()
        .map(|(c, v)| (*c, v.numer() * (&lcm / v.denom())))
        .collect();
    normalize_content(&mut out);
    out
}

fn normalize_content(row: &mut [(usize, BigInt)]) {
    let mut g = BigInt::zero();
    for (_, v) in row.iter() {
        g = g.gcd(v);
        if g.is_one() {
            return;
        }
    }
    if g.is_zero() || g.is_one() {
        return;
    }
    for (_, v) in row.iter_mut() {
        *v /= &g;
    }
}

/// `piv_lead * row - row_lead * piv`, which cancels the shared leading column.
fn eliminate_int(row: &[(usize, BigInt)], piv: &[(usize, BigInt)]) -> Vec<(usize, BigInt)> {
    let rl = &row[0].1;
    let pl = &piv[0].1;
    let g = rl.gcd(pl);
    let rm = pl / &g;
    let pm = rl / &g;
    let mut out = Vec::with_capacity(row.len() + piv.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < piv.len() {
        if j >= piv.len() || (i < row.len() && row[i].0 < piv[j].0) {
            out.push((row[i].0, &row[i].1 * &rm));
            i += 1;
        } else if i >= row.len() || piv[j].0 < row[i].0 {
            out.push((piv[j].0, -(&piv[j].1 * &pm)));
            j += 1;
        } else {
            let v = &row[i].1 * &rm - &piv[j].1 * &pm;
            if !v.is_zero() {
                out.push((row[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    normalize_content(&mut out);
    if let Some((_, lead)) = out.first() {
        if lead.is_negative() {
            for (_, v) in out.iter_mut() {
                *v = -&*v;
            }
        }
    }
    out
}

/// Formats a rational as `numerator/denominator` (always both parts).
pub fn format_rational(q: &Q) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Formats a rational compactly: integers without a denominator.
pub fn format_rational_short(q: &Q) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format_rational(q)
    }
}

/// Parses `"p/q"`, `"p"` or `"-p/q"` into a rational.
pub fn parse_rational(s: &str) -> Result<Q, String> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n
        .parse()
        .map_err(|_| format!("invalid numerator in {s:?}"))?;
    let d: BigInt = d
        .parse()
        .map_err(|_| format!("invalid denominator in {s:?}"))?;
    if d.is_zero() {
        return Err(format!("zero denominator in {s:?}"));
    }
    Ok(Q::new(n, d))
}

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

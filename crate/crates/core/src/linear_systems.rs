//! Linear systems inside section spaces of P1 x P1 and of the first
//! Hirzebruch surface: multiplication maps, the c-generating test, the
//! minimal-dimension formulas, the monomial system `W0(a,b,c)`, initial
//! terms, and an exhaustive oracle for small cases.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::linalg::{format_rational, q, Matrix, SparseVec, Q};
use crate::poly::{bidegree_of, section_basis, BiDegree, Monomial, PolyError, Polynomial, Surface};

/// Largest section space the exhaustive oracle will enumerate subsets of.
pub const BRUTE_FORCE_GUARD: usize = 14;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinSysError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("b = 0 is degenerate for the minimal-dimension formula (a={a}, c={c})")]
    DegenerateB { a: u32, c: u32 },
    #[error("element has bidegree {found}, expected {expected}")]
    WrongBidegree { expected: BiDegree, found: BiDegree },
    #[error("element lives on the wrong surface")]
    WrongSurface,
    #[error("section space of dimension {size} exceeds the brute-force guard of {guard}")]
    GuardExceeded { size: usize, guard: usize },
    #[error("matrix has {found} columns, section space has {expected}")]
    ColumnMismatch { expected: usize, found: usize },
}

/// A subspace of `H^0(O(a,b))`, stored as an RREF basis whose columns are
/// the section-space monomials in descending graded-lex order.
#[derive(Clone, Debug)]
pub struct LinearSystem {
    surface: Surface,
    deg: BiDegree,
    columns: Arc<Vec<Monomial>>,
    basis: Vec<SparseVec>,
    pivots: Vec<usize>,
}

/// Outcome of the c-generating test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CGenResult {
    pub generating: bool,
    /// `dim S_(a,b+c) - rank(mu_{W,c})`.
    pub corank: usize,
}

/// The two expressions for the minimal dimension of a c-generating system,
/// evaluated side by side.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinDimRecord {
    pub a: u32,
    pub b: u32,
    pub c: u32,
    pub sum_formula: i64,
    #[serde(serialize_with = "ser_rational")]
    pub closed_form: Q,
    pub alpha_d: i64,
    pub alpha_r: i64,
    pub beta_d: i64,
    pub beta_r: i64,
    #[serde(rename = "M")]
    pub m: i64,
    #[serde(rename = "E")]
    pub e: i64,
    pub agrees: bool,
}

fn ser_rational<S: serde::Serializer>(v: &Q, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(v))
}

/// Which `j` range to use for the `T0`-heavy monomials of `W0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JRange {
    /// `j = 0..=r(i)`: `r(i) + 2` monomials per `i`, matching the count in
    /// the minimal-dimension argument.
    FromZero,
    /// `j = 1..=r(i)`, as the set is typeset.
    FromOne,
}

impl LinearSystem {
    /// The span of the given polynomials, all of bidegree `deg`.
    pub fn from_polynomials(
        surface: Surface,
        deg: BiDegree,
        polys: &[Polynomial],
    ) -> Result<Self, LinSysError> {
        let columns = section_basis(surface, deg)?;
        let index = column_index(&columns);
        let mut mat = Matrix::new(columns.len());
        for p in polys {
            if p.ring().tag() != surface.tag() {
                return Err(LinSysError::WrongSurface);
            }
            let mut pairs = Vec::with_capacity(p.len());
            for (m, c) in p.terms() {
                let col = *index.get(m).ok_or_else(|| LinSysError::WrongBidegree {
                    expected: deg,
                    found: bidegree_of(m).unwrap_or(deg),
                })?;
                pairs.push((col, c.clone()));
            }
            mat.push_row(SparseVec::from_pairs(pairs));
        }
        Ok(Self::from_parts(surface, deg, Arc::new(columns), &mat))
    }

    /// The span of a set of monomials of bidegree `deg`.
    pub fn from_monomials(
        surface: Surface,
        deg: BiDegree,
        monomials: &[Monomial],
    ) -> Result<Self, LinSysError> {
        let ring = surface.ring();
        let polys: Vec<Polynomial> = monomials
            .iter()
            .map(|m| Polynomial::monomial(&ring, m.clone()))
            .collect();
        Self::from_polynomials(surface, deg, &polys)
    }

    /// The whole section space `S_(a,b)`.
    pub fn full(surface: Surface, deg: BiDegree) -> Result<Self, LinSysError> {
        let columns = section_basis(surface, deg)?;
        Self::from_monomials(surface, deg, &columns)
    }

    /// The row space of `mat`, whose columns index `section_basis(surface, deg)`.
    pub fn from_matrix(surface: Surface, deg: BiDegree, mat: &Matrix) -> Result<Self, LinSysError> {
        let columns = section_basis(surface, deg)?;
        if mat.cols() != columns.len() {
            return Err(LinSysError::ColumnMismatch {
                expected: columns.len(),
                found: mat.cols(),
            });
        }
        Ok(Self::from_parts(surface, deg, Arc::new(columns), mat))
    }

    fn from_parts(
        surface: Surface,
        deg: BiDegree,
        columns: Arc<Vec<Monomial>>,
        mat: &Matrix,
    ) -> Self {
        let rref = mat.rref();
        Self {
            surface,
            deg,
            columns,
            basis: rref.rows,
            pivots: rref.pivots,
        }
    }

    pub fn surface(&self) -> Surface {
        self.surface
    }

    pub fn deg(&self) -> BiDegree {
        self.deg
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Section-space monomials indexing the columns.
    pub fn columns(&self) -> &[Monomial] {
        &self.columns
    }

    /// The basis matrix in reduced row echelon form.
    pub fn basis_matrix(&self) -> Matrix {
        Matrix::from_rows(self.columns.len(), self.basis.clone())
    }

    pub fn basis_polynomials(&self) -> Vec<Polynomial> {
        let ring = self.surface.ring();
        self.basis
            .iter()
            .map(|row| {
                Polynomial::from_terms(
                    &ring,
                    row.entries()
                        .iter()
                        .map(|(c, v)| (self.columns[*c].clone(), v.clone())),
                )
            })
            .collect()
    }

    /// Whether `other` is a subspace of `self`.
    pub fn contains(&self, other: &LinearSystem) -> bool {
        if self.surface != other.surface || self.deg != other.deg {
            return false;
        }
        let mut rows = self.basis.clone();
        rows.extend(other.basis.iter().cloned());
        Matrix::from_rows(self.columns.len(), rows).rank() == self.dim()
    }

    /// `self + other` as subspaces of the same section space.
    pub fn sum(&self, other: &LinearSystem) -> Result<LinearSystem, LinSysError> {
        if self.surface != other.surface {
            return Err(LinSysError::WrongSurface);
        }
        if self.deg != other.deg {
            return Err(LinSysError::WrongBidegree {
                expected: self.deg,
                found: other.deg,
            });
        }
        let mut rows = self.basis.clone();
        rows.extend(other.basis.iter().cloned());
        let mat = Matrix::from_rows(self.columns.len(), rows);
        Ok(Self::from_parts(
            self.surface,
            self.deg,
            self.columns.clone(),
            &mat,
        ))
    }
}

fn column_index(columns: &[Monomial]) -> HashMap<Monomial, usize> {
    columns
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, m)| (m, i))
        .collect()
}

/// Matrix of `mu_{W,c}`: one row per product of a basis element of `W` with
/// a monomial of `S_(0,c)`, columns indexed by `S_(a,b+c)`.
fn multiplication_matrix(w: &LinearSystem, c: u32) -> Result<(Vec<Monomial>, Matrix), LinSysError> {
    let multipliers = section_basis(w.surface, BiDegree::new(0, c as i64))?;
    let target_deg = BiDegree::new(w.deg.a, w.deg.b + c as i64);
    let target = section_basis(w.surface, target_deg)?;
    let index = column_index(&target);
    let mut mat = Matrix::new(target.len());
    for row in &w.basis {
        for s in &multipliers {
            let pairs = row.entries().iter().map(|(col, v)| {
                let prod = w.columns[*col].mul_unchecked(s);
                (index[&prod], v.clone())
            });
            mat.push_row(SparseVec::from_pairs(pairs));
        }
    }
    Ok((target, mat))
}

/// The image of `W (x) H^0(O(0,c)) -> H^0(O(a,b+c))`.
pub fn multiplication_image(w: &LinearSystem, c: u32) -> Result<LinearSystem, LinSysError> {
    let (target, mat) = multiplication_matrix(w, c)?;
    let deg = BiDegree::new(w.deg.a, w.deg.b + c as i64);
    Ok(LinearSystem::from_parts(
        w.surface,
        deg,
        Arc::new(target),
        &mat,
    ))
}

/// Whether multiplication by all sections of `O(0,c)` maps `W` onto
/// `H^0(O(a,b+c))`, with the rank deficiency.
pub fn is_c_generating(w: &LinearSystem, c: u32) -> Result<CGenResult, LinSysError> {
    let (target, mat) = multiplication_matrix(w, c)?;
    let rank = mat.rank();
    Ok(CGenResult {
        generating: rank == target.len(),
        corank: target.len() - rank,
    })
}

/// On P1 x P1 the relevant test is that the system is the whole space.
pub fn is_generating_f0(w: &LinearSystem) -> bool {
    w.surface == Surface::F0 && w.dim() == w.columns.len()
}

/// `r(i) = floor((b + i - 1) / (c + 1))`.
fn r_of(b: u32, i: u32, c: u32) -> i64 {
    (b as i64 + i as i64 - 1).div_euclid(c as i64 + 1)
}

/// Minimal dimension of a c-generating system in `H^0(O(a,b))`:
/// `2a + 2 + sum_{i=0..a} floor((b+i-1)/(c+1))`.
pub fn min_cgen_dim(a: u32, b: u32, c: u32) -> Result<i64, LinSysError> {
    if b == 0 {
        return Err(LinSysError::DegenerateB { a, c });
    }
    Ok(2 * a as i64 + 2 + (0..=a).map(|i| r_of(b, i, c)).sum::<i64>())
}

/// Evaluates the closed-form expressions `M(a,b,c)` and `E(a,b,c)` exactly as
/// typeset and compares `(M+E) / (2(c+1))` with the sum formula.
pub fn closed_form_me(a: u32, b: u32, c: u32) -> Result<MinDimRecord, LinSysError> {
    let sum_formula = min_cgen_dim(a, b, c)?;
    let (ai, bi, ci) = (a as i64, b as i64, c as i64);
    let c1 = ci + 1;
    let (beta_d, beta_r) = ((bi - 1).div_euclid(c1), (bi - 1).rem_euclid(c1));
    let (alpha_d, alpha_r) = ((ai + bi - 1).div_euclid(c1), (ai + bi - 1).rem_euclid(c1));
    let m = ai * ai + (2 * bi + 3 * c1) * ai + 2 * bi + 4 * c1 + 2;
    let e = (beta_r * beta_r - c1 * beta_r) - (alpha_r * alpha_r - (ci - 1) * alpha_r);
    let closed_form = Q::new((m + e).into(), (2 * c1).into());
    let agrees = closed_form == q(sum_formula);
    Ok(MinDimRecord {
        a,
        b,
        c,
        sum_formula,
        closed_form,
        alpha_d,
        alpha_r,
        beta_d,
        beta_r,
        m,
        e,
        agrees,
    })
}

/// Monomials `U^i V^(a-i) T0^((b+i)-j(c+1)) T1^(j(c+1))` for `j` in the
/// chosen range, plus `U^i V^(a-i) T1^(b+i)`, for `i = 0..=a`.
pub fn w0_monomials(a: u32, b: u32, c: u32, range: JRange) -> Result<Vec<Monomial>, LinSysError> {
    if b == 0 {
        return Err(LinSysError::DegenerateB { a, c });
    }
    let mut out = Vec::new();
    for i in 0..=a {
        let t = b + i;
        let r = r_of(b, i, c) as u32;
        let start = match range {
            JRange::FromZero => 0,
            JRange::FromOne => 1,
        };
        for j in start..=r {
            let q1 = j * (c + 1);
            out.push(Monomial::f1(i, a - i, t - q1, q1));
        }
        out.push(Monomial::f1(i, a - i, 0, t));
    }
    out.dedup();
    Ok(out)
}

/// The monomial system `W0(a,b,c)` with `j = 0..=r(i)`.
pub fn w0_basis(a: u32, b: u32, c: u32) -> Result<LinearSystem, LinSysError> {
    let mons = w0_monomials(a, b, c, JRange::FromZero)?;
    LinearSystem::from_monomials(Surface::F1, BiDegree::new(a as i64, b as i64), &mons)
}

/// The initial-term space `IN(W)`: RREF pivot monomials, descending.
pub fn initial_terms(w: &LinearSystem) -> Vec<Monomial> {
    w.pivots.iter().map(|&p| w.columns[p].clone()).collect()
}

/// True when every monomial of `W0(a,b,c)` is an initial term of `W`, which
/// is sufficient for `W` to be c-generating.
pub fn criterion_comput2(w: &LinearSystem, c: u32) -> Result<bool, LinSysError> {
    if w.surface != Surface::F1 {
        return Err(LinSysError::WrongSurface);
    }
    let (a, b) = (w.deg.a as u32, w.deg.b as u32);
    let needed = w0_monomials(a, b, c, JRange::FromZero)?;
    let have: std::collections::HashSet<Monomial> = initial_terms(w).into_iter().collect();
    Ok(needed.iter().all(|m| have.contains(m)))
}

/// Minimum size of a c-generating set of monomials in `S_(a,b)`, found by
/// exhaustive search. For monomial systems the image of the multiplication
/// map is spanned by monomials, so generation is a set-cover condition.
pub fn brute_min_dim(a: u32, b: u32, c: u32) -> Result<usize, LinSysError> {
    let source = section_basis(Surface::F1, BiDegree::new(a as i64, b as i64))?;
    if source.len() > BRUTE_FORCE_GUARD {
        return Err(LinSysError::GuardExceeded {
            size: source.len(),
            guard: BRUTE_FORCE_GUARD,
        });
    }
    let target = section_basis(Surface::F1, BiDegree::new(a as i64, (b + c) as i64))?;
    let multipliers = section_basis(Surface::F1, BiDegree::new(0, c as i64))?;
    let index = column_index(&target);
    let words = target.len().div_ceil(64);
    let covers: Vec<Vec<u64>> = source
        .iter()
        .map(|m| {
            let mut bits = vec![0u64; words];
            for s in &multipliers {
                let k = index[&m.mul_unchecked(s)];
                bits[k / 64] |= 1 << (k % 64);
            }
            bits
        })
        .collect();
    let mut full = vec![u64::MAX; words];
    if target.len() % 64 != 0 {
        full[words - 1] = (1u64 << (target.len() % 64)) - 1;
    }
    let n = source.len();
    let mut best = n;
    let mut acc = vec![0u64; words];
    for mask in 0u32..(1u32 << n) {
        let size = mask.count_ones() as usize;
        if size >= best {
            continue;
        }
        acc.iter_mut().for_each(|w| *w = 0);
        for (i, cover) in covers.iter().enumerate() {
            if mask & (1 << i) != 0 {
                for (x, y) in acc.iter_mut().zip(cover) {
                    *x |= y;
                }
            }
        }
        if acc == full {
            best = size;
        }
    }
    Ok(best)
}

/// Dimension of `S_(a,b)` on the first Hirzebruch surface, counted by
/// enumerating `(i, p)` pairs instead of the closed formula.
pub fn enumerate_section_count(a: u32, b: u32) -> usize {
    (0..=a).map(|i| (0..=b + i).count()).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f1(a: i64, b: i64, mons: &[Monomial]) -> LinearSystem {
        LinearSystem::from_monomials(Surface::F1, BiDegree::new(a, b), mons).unwrap()
    }

    #[test]
    fn full_system_generates() {
        for (a, b, c) in [(0, 0, 0), (1, 2, 1), (2, 1, 3)] {
            let w = LinearSystem::full(Surface::F1, BiDegree::new(a, b)).unwrap();
            let r = is_c_generating(&w, c).unwrap();
            assert_eq!(
                r,
                CGenResult {
                    generating: true,
                    corank: 0
                }
            );
            let img = multiplication_image(&w, c).unwrap();
            assert_eq!(img.dim(), img.columns().len());
        }
    }

    #[test]
    fn single_monomial_image_dimension() {
        let (b, c) = (3u32, 4u32);
        let w = f1(0, b as i64, &[Monomial::f1(0, 0, 0, b)]);
        assert_eq!(multiplication_image(&w, c).unwrap().dim(), c as usize + 1);
    }

    #[test]
    fn w0_small_cases() {
        assert_eq!(
            w0_monomials(0, 3, 1, JRange::FromZero).unwrap(),
            vec![
                Monomial::f1(0, 0, 3, 0),
                Monomial::f1(0, 0, 1, 2),
                Monomial::f1(0, 0, 0, 3)
            ]
        );
        let w = w0_basis(1, 1, 0).unwrap();
        assert_eq!(w.dim(), 5);
        assert_eq!(
            w.dim(),
            LinearSystem::full(Surface::F1, BiDegree::new(1, 1))
                .unwrap()
                .dim()
        );
    }

    #[test]
    fn cgen_examples() {
        let w = w0_basis(0, 3, 1).unwrap();
        assert_eq!(
            is_c_generating(&w, 1).unwrap(),
            CGenResult {
                generating: true,
                corank: 0
            }
        );
        let w = f1(0, 3, &[Monomial::f1(0, 0, 3, 0), Monomial::f1(0, 0, 0, 3)]);
        let r = is_c_generating(&w, 1).unwrap();
        assert!(!r.generating);
        assert!(r.corank >= 1);
    }

    #[test]
    fn min_dim_examples() {
        assert_eq!(min_cgen_dim(0, 1, 0).unwrap(), 2);
        assert_eq!(min_cgen_dim(1, 1, 0).unwrap(), 5);
        assert_eq!(min_cgen_dim(2, 4, 1).unwrap(), 11);
        assert_eq!(min_cgen_dim(1, 2, 1).unwrap(), 5);
        assert_eq!(
            min_cgen_dim(3, 0, 2),
            Err(LinSysError::DegenerateB { a: 3, c: 2 })
        );
    }

    #[test]
    fn closed_form_examples() {
        let r = closed_form_me(2, 4, 1).unwrap();
        assert_eq!((r.m, r.e, r.sum_formula), (50, -2, 11));
        assert_eq!(r.closed_form, q(12));
        assert!(!r.agrees);
        let r = closed_form_me(0, 1, 0).unwrap();
        assert_eq!((r.beta_r, r.alpha_r, r.e), (0, 0, 0));
        // (d-1, (d-1)(k-1), k-3) at d = 4, k = 5.
        assert_eq!(closed_form_me(3, 12, 2).unwrap().sum_formula, 23);
    }

    #[test]
    fn brute_force_examples() {
        assert_eq!(brute_min_dim(0, 1, 0).unwrap(), 2);
        assert_eq!(brute_min_dim(0, 3, 1).unwrap(), 3);
        assert_eq!(brute_min_dim(1, 2, 1).unwrap(), 5);
        assert!(matches!(
            brute_min_dim(2, 4, 0),
            Err(LinSysError::GuardExceeded { size: 18, .. })
        ));
    }

    #[test]
    fn initial_terms_of_single_polynomial() {
        let ring = Surface::F1.ring();
        let p = &Polynomial::monomial(&ring, Monomial::f1(0, 0, 1, 2))
            + &Polynomial::monomial(&ring, Monomial::f1(0, 0, 2, 1));
        let w = LinearSystem::from_polynomials(Surface::F1, BiDegree::new(0, 3), &[p]).unwrap();
        assert_eq!(initial_terms(&w), vec![Monomial::f1(0, 0, 2, 1)]);
    }

    #[test]
    fn initial_terms_of_monomial_system() {
        let mons = w0_monomials(2, 3, 1, JRange::FromZero).unwrap();
        let w = f1(2, 3, &mons);
        let mut got = initial_terms(&w);
        let mut want = mons.clone();
        got.sort();
        want.sort();
        assert_eq!(got, want);
        assert!(criterion_comput2(&w, 1).unwrap());
    }

    #[test]
    fn wrong_bidegree_is_rejected() {
        let err = LinearSystem::from_monomials(
            Surface::F1,
            BiDegree::new(0, 2),
            &[Monomial::f1(0, 1, 0, 0)],
        );
        assert!(matches!(err, Err(LinSysError::WrongBidegree { .. })));
    }

    #[test]
    fn f0_generation_is_fullness() {
        let full = LinearSystem::full(Surface::F0, BiDegree::new(2, 2)).unwrap();
        assert!(is_generating_f0(&full));
        let part = LinearSystem::from_monomials(
            Surface::F0,
            BiDegree::new(1, 1),
            &[Monomial::f0(1, 0, 1, 0)],
        )
        .unwrap();
        assert!(!is_generating_f0(&part));
    }

    #[test]
    fn containment_and_sum() {
        let small = f1(0, 2, &[Monomial::f1(0, 0, 2, 0)]);
        let big = LinearSystem::full(Surface::F1, BiDegree::new(0, 2)).unwrap();
        assert!(big.contains(&small));
        assert!(!small.contains(&big));
        assert_eq!(small.sum(&big).unwrap().dim(), 3);
    }
}

//! Exact sparse polynomials, the bigraded Cox rings of P1 x P1 and of the
//! first Hirzebruch surface, section-space bases and embeddings.

mod embedding;
mod monomial;
mod polynomial;
mod ring;

pub use embedding::Embedding;
pub use monomial::{bidegree_of, compare_graded_lex, total_degree, BiDegree, Monomial};
pub use polynomial::Polynomial;
pub use ring::{f0, f1, Ring, RingTag, Surface, Variable};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("operands belong to different rings")]
    RingMismatch,
    #[error("bidegrees are only defined on the Cox rings")]
    NotACoxRing,
    #[error("duplicate variable name {0:?}")]
    DuplicateVariable(String),
    #[error("polynomial is not homogeneous: term degrees {degrees:?}")]
    Inhomogeneous { degrees: Vec<u32> },
    #[error("polynomial is not bihomogeneous: term bidegrees {0}")]
    NotBihomogeneous(String),
    #[error("bidegree ({a},{b}) is outside the nef cone; no section basis")]
    NotNef { a: i64, b: i64 },
    #[error("embedding needs {expected} images, got {found}")]
    EmbeddingArity { expected: usize, found: usize },
    #[error("malformed embedding: {0}")]
    MalformedEmbedding(String),
    #[error("invariant violation: {0}")]
    InvariantViolation(String),
}

/// All monomials of bidegree `deg`, sorted descending in the graded-lex order.
///
/// On the first Hirzebruch surface these are `U^i V^(a-i) T0^p T1^q` with
/// `p + q = b + i`, so the count is `(a+1)(b+1) + a(a+1)/2`. On P1 x P1 the
/// count for `(p, q)` is `(p+1)(q+1)`.
pub fn section_basis(surface: Surface, deg: BiDegree) -> Result<Vec<Monomial>, PolyError> {
    if deg.a < 0 || deg.b < 0 {
        return Err(PolyError::NotNef { a: deg.a, b: deg.b });
    }
    let (a, b) = (deg.a as u32, deg.b as u32);
    let mut out = Vec::new();
    match surface {
        Surface::F1 => {
            // Descending lex with U > V > T0 > T1 at fixed total degree.
            for i in (0..=a).rev() {
                let t = b + i;
                for p in (0..=t).rev() {
                    out.push(Monomial::f1(i, a - i, p, t - p));
                }
            }
        }
        Surface::F0 => {
            for i0 in (0..=a).rev() {
                for j0 in (0..=b).rev() {
                    out.push(Monomial::f0(i0, a - i0, j0, b - j0));
                }
            }
        }
    }
    debug_assert!(out
        .windows(2)
        .all(|w| compare_graded_lex(&w[0], &w[1]) == Ok(std::cmp::Ordering::Greater)));
    Ok(out)
}

/// `dim H^0(O(a,b))` on the given surface, for nef `(a, b)`.
pub fn section_count(surface: Surface, deg: BiDegree) -> Option<usize> {
    if deg.a < 0 || deg.b < 0 {
        return None;
    }
    let (a, b) = (deg.a as usize, deg.b as usize);
    Some(match surface {
        Surface::F1 => (a + 1) * (b + 1) + a * (a + 1) / 2,
        Surface::F0 => (a + 1) * (b + 1),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f1_basis_small_cases() {
        assert_eq!(
            section_basis(Surface::F1, BiDegree::new(0, 0)).unwrap(),
            vec![Monomial::one(RingTag::CoxF1)]
        );
        assert_eq!(
            section_basis(Surface::F1, BiDegree::new(1, 2))
                .unwrap()
                .len(),
            7
        );
    }

    #[test]
    fn f1_hyperplane_class_basis() {
        for k in 1..6u32 {
            let basis = section_basis(Surface::F1, BiDegree::new(1, k as i64 - 1)).unwrap();
            let mut expected: Vec<Monomial> =
                (0..=k).map(|i| Monomial::f1(1, 0, k - i, i)).collect();
            expected.extend((0..k).map(|j| Monomial::f1(0, 1, k - 1 - j, j)));
            assert_eq!(basis, expected);
        }
    }

    #[test]
    fn f0_bilinear_basis() {
        let basis = section_basis(Surface::F0, BiDegree::new(1, 1)).unwrap();
        assert_eq!(
            basis,
            vec![
                Monomial::f0(1, 0, 1, 0),
                Monomial::f0(1, 0, 0, 1),
                Monomial::f0(0, 1, 1, 0),
                Monomial::f0(0, 1, 0, 1)
            ]
        );
    }

    #[test]
    fn negative_degree_is_flagged() {
        assert_eq!(
            section_basis(Surface::F1, BiDegree::new(-1, 2)),
            Err(PolyError::NotNef { a: -1, b: 2 })
        );
        assert!(section_basis(Surface::F0, BiDegree::new(0, -3)).is_err());
    }
}

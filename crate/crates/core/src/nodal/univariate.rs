//! Dense univariate polynomials over the rationals, just enough for minor
//! determinants and gcds of dehomogenized binary forms.

use num_traits::{One, Zero};

use crate::linalg::Q;

/// Coefficients in increasing degree, with no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UPoly(Vec<Q>);

impl UPoly {
    pub fn zero() -> Self {
        UPoly(Vec::new())
    }

    pub fn new(mut coeffs: Vec<Q>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UPoly(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add(&self, o: &UPoly) -> UPoly {
        let n = self.0.len().max(o.0.len());
        let z = Q::zero();
        UPoly::new(
            (0..n)
                .map(|i| self.0.get(i).unwrap_or(&z) + o.0.get(i).unwrap_or(&z))
                .collect(),
        )
    }

    pub fn neg(&self) -> UPoly {
        UPoly(self.0.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, o: &UPoly) -> UPoly {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero();
        }
        let mut out = vec![Q::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UPoly::new(out)
    }

    fn rem(&self, o: &UPoly) -> UPoly {
        assert!(!o.is_zero(), "division by the zero polynomial");
        let mut r = self.0.clone();
        let dn = o.0.len() - 1;
        let lead = o.0.last().unwrap().clone();
        while r.len() > dn && !r.is_empty() {
            let shift = r.len() - 1 - dn;
            let f = r.last().unwrap() / &lead;
            for (j, b) in o.0.iter().enumerate() {
                r[shift + j] -= &f * b;
            }
            r.pop();
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        UPoly::new(r)
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, o: &UPoly) -> UPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        match a.0.last().cloned() {
            None => a,
            Some(l) => UPoly(a.0.iter().map(|c| c / &l).collect()),
        }
    }

    pub fn is_nonzero_constant(&self) -> bool {
        self.0.len() == 1
    }
}

/// Determinant of a square matrix of polynomials by cofactor expansion.
pub fn det(m: &[Vec<UPoly>]) -> UPoly {
    let n = m.len();
    match n {
        0 => UPoly::new(vec![Q::one()]),
        1 => m[0][0].clone(),
        _ => {
            let mut acc = UPoly::zero();
            for c in 0..n {
                if m[0][c].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<UPoly>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(j, _)| *j != c)
                            .map(|(_, p)| p.clone())
                            .collect()
                    })
                    .collect();
                let term = m[0][c].mul(&det(&minor));
                acc = if c % 2 == 0 {
                    acc.add(&term)
                } else {
                    acc.sub(&term)
                };
            }
            acc
        }
    }
}

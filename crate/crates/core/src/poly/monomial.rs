use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul};

use serde::Serialize;

use super::ring::{f0, f1, Ring, RingTag, Variable};
use super::PolyError;

/// A bidegree `(a, b)`. On the first Hirzebruch surface this names
/// `O(a(E+F) + bF)`; on P1 x P1 it is the pair of degrees in the `U`s and `V`s.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct BiDegree {
    pub a: i64,
    pub b: i64,
}

impl BiDegree {
    pub const fn new(a: i64, b: i64) -> Self {
        Self { a, b }
    }
}

impl Add for BiDegree {
    type Output = BiDegree;
    fn add(self, o: BiDegree) -> BiDegree {
        BiDegree::new(self.a + o.a, self.b + o.b)
    }
}

impl Mul<BiDegree> for i64 {
    type Output = BiDegree;
    fn mul(self, d: BiDegree) -> BiDegree {
        BiDegree::new(self * d.a, self * d.b)
    }
}

impl fmt::Display for BiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

/// A monomial as a sparse exponent list sorted by variable index.
///
/// The derived `Ord` is a storage order only; the graded-lex order used for
/// initial terms is [`compare_graded_lex`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    ring: RingTag,
    exps: Vec<(u32, u32)>,
}

impl Monomial {
    pub fn one(ring: RingTag) -> Self {
        Self {
            ring,
            exps: Vec::new(),
        }
    }

    pub fn var(v: Variable) -> Self {
        Self {
            ring: v.ring,
            exps: vec![(v.index, 1)],
        }
    }

    /// Builds a monomial from `(variable index, exponent)` pairs; zero
    /// exponents are dropped and repeated indices add up.
    pub fn new(ring: RingTag, pairs: impl IntoIterator<Item = (u32, u32)>) -> Self {
        let mut exps: Vec<(u32, u32)> = Vec::new();
        let mut sorted: Vec<(u32, u32)> = pairs.into_iter().filter(|(_, e)| *e > 0).collect();
        sorted.sort_unstable();
        for (i, e) in sorted {
            match exps.last_mut() {
                Some((j, acc)) if *j == i => *acc += e,
                _ => exps.push((i, e)),
            }
        }
        Self { ring, exps }
    }

    /// `U^i V^j T0^p T1^q` on the first Hirzebruch surface.
    pub fn f1(i: u32, j: u32, p: u32, q: u32) -> Self {
        Self::new(
            RingTag::CoxF1,
            [(f1::U, i), (f1::V, j), (f1::T0, p), (f1::T1, q)],
        )
    }

    /// `U0^i0 U1^i1 V0^j0 V1^j1` on P1 x P1.
    pub fn f0(i0: u32, i1: u32, j0: u32, j1: u32) -> Self {
        Self::new(
            RingTag::CoxF0,
            [(f0::U0, i0), (f0::U1, i1), (f0::V0, j0), (f0::V1, j1)],
        )
    }

    pub fn ring(&self) -> RingTag {
        self.ring
    }

    pub fn exponents(&self) -> &[(u32, u32)] {
        &self.exps
    }

    pub fn exponent(&self, index: u32) -> u32 {
        match self.exps.binary_search_by_key(&index, |(i, _)| *i) {
            Ok(k) => self.exps[k].1,
            Err(_) => 0,
        }
    }

    /// Standard degree (sum of exponents).
    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|(_, e)| e).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn mul(&self, other: &Monomial) -> Result<Monomial, PolyError> {
        if self.ring != other.ring {
            return Err(PolyError::RingMismatch);
        }
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.exps, &other.exps);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            if j >= b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i]);
                i += 1;
            } else if i >= a.len() || b[j].0 < a[i].0 {
                out.push(b[j]);
                j += 1;
            } else {
                out.push((a[i].0, a[i].1 + b[j].1));
                i += 1;
                j += 1;
            }
        }
        Monomial {
            ring: self.ring,
            exps: out,
        }
    }

    pub fn pow(&self, n: u32) -> Monomial {
        Monomial {
            ring: self.ring,
            exps: if n == 0 {
                Vec::new()
            } else {
                self.exps.iter().map(|&(i, e)| (i, e * n)).collect()
            },
        }
    }

    /// `self / other` when `other` divides `self`.
    pub fn divide(&self, other: &Monomial) -> Option<Monomial> {
        if self.ring != other.ring {
            return None;
        }
        let mut out = Vec::new();
        for &(i, e) in &self.exps {
            let f = other.exponent(i);
            if f > e {
                return None;
            }
            if e > f {
                out.push((i, e - f));
            }
        }
        if other.exps.iter().any(|&(i, _)| self.exponent(i) == 0) {
            return None;
        }
        Some(Monomial {
            ring: self.ring,
            exps: out,
        })
    }

    /// Formal partial derivative: `(exponent, m / v)` or `None` when `v` is absent.
    pub fn derivative(&self, index: u32) -> Option<(u32, Monomial)> {
        let e = self.exponent(index);
        if e == 0 {
            return None;
        }
        let exps = self
            .exps
            .iter()
            .filter_map(|&(i, x)| {
                if i != index {
                    Some((i, x))
                } else if x > 1 {
                    Some((i, x - 1))
                } else {
                    None
                }
            })
            .collect();
        Some((
            e,
            Monomial {
                ring: self.ring,
                exps,
            },
        ))
    }

    /// Renders with the variable names of `ring`, e.g. `U^2*V*T0^3`.
    pub fn render(&self, ring: &Ring) -> String {
        if self.exps.is_empty() {
            return "1".to_string();
        }
        self.exps
            .iter()
            .map(|&(i, e)| {
                if e == 1 {
                    ring.name(i).to_string()
                } else {
                    format!("{}^{}", ring.name(i), e)
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }
}

/// Bidegree of a monomial of one of the two Cox rings.
///
/// On the first Hirzebruch surface `U^i V^j T0^p T1^q` has bidegree
/// `(i + j, -i + p + q)`; on P1 x P1 it is `(deg in U, deg in V)`.
pub fn bidegree_of(m: &Monomial) -> Result<BiDegree, PolyError> {
    let e = |i| m.exponent(i) as i64;
    match m.ring {
        RingTag::CoxF1 => Ok(BiDegree::new(
            e(f1::U) + e(f1::V),
            -e(f1::U) + e(f1::T0) + e(f1::T1),
        )),
        RingTag::CoxF0 => Ok(BiDegree::new(e(f0::U0) + e(f0::U1), e(f0::V0) + e(f0::V1))),
        RingTag::Ambient(_) => Err(PolyError::NotACoxRing),
    }
}

/// Total degree used by the graded order: `a + b` on Cox rings, the usual
/// degree on ambient rings.
pub fn total_degree(m: &Monomial) -> i64 {
    match m.ring {
        RingTag::CoxF1 => m
            .exps
            .iter()
            .filter(|(i, _)| *i != f1::U)
            .map(|(_, e)| *e as i64)
            .sum(),
        _ => m.degree() as i64,
    }
}

/// Graded lexicographic comparison: total degree first, ties broken
/// lexicographically in roster order (`U > V > T0 > T1` on the first
/// Hirzebruch surface, `U0 > U1 > V0 > V1` on P1 x P1).
pub fn compare_graded_lex(m1: &Monomial, m2: &Monomial) -> Result<Ordering, PolyError> {
    if m1.ring != m2.ring {
        return Err(PolyError::RingMismatch);
    }
    Ok(graded_lex_unchecked(m1, m2))
}

pub(crate) fn graded_lex_unchecked(m1: &Monomial, m2: &Monomial) -> Ordering {
    total_degree(m1).cmp(&total_degree(m2)).then_with(|| {
        // Lex: first variable (lowest index) where exponents differ decides.
        let (a, b) = (&m1.exps, &m2.exps);
        let (mut i, mut j) = (0, 0);
        loop {
            match (a.get(i), b.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some(&(vi, ei)), Some(&(vj, ej))) => {
                    if vi < vj {
                        return Ordering::Greater;
                    } else if vj < vi {
                        return Ordering::Less;
                    } else if ei != ej {
                        return ei.cmp(&ej);
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
    })
}

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};

use super::monomial::{bidegree_of, graded_lex_unchecked, BiDegree, Monomial};
use super::ring::{Ring, Variable};
use super::PolyError;
use crate::linalg::{format_rational_short, Q};

/// A sparse polynomial with exact rational coefficients.
///
/// Arithmetic operators panic if the operands live in different rings; that
/// is a programming error, not a data condition.
#[derive(Clone, Debug)]
pub struct Polynomial {
    ring: Arc<Ring>,
    terms: BTreeMap<Monomial, Q>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.ring.tag() == other.ring.tag() && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl Polynomial {
    pub fn zero(ring: &Arc<Ring>) -> Self {
        Self {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ring: &Arc<Ring>, c: Q) -> Self {
        Self::term(ring, Monomial::one(ring.tag()), c)
    }

    pub fn term(ring: &Arc<Ring>, m: Monomial, c: Q) -> Self {
        assert_eq!(m.ring(), ring.tag(), "monomial from a different ring");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Self {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn monomial(ring: &Arc<Ring>, m: Monomial) -> Self {
        Self::term(ring, m, Q::one())
    }

    pub fn var(ring: &Arc<Ring>, index: u32) -> Self {
        Self::monomial(ring, Monomial::var(ring.var(index)))
    }

    pub fn from_terms(ring: &Arc<Ring>, terms: impl IntoIterator<Item = (Monomial, Q)>) -> Self {
        let mut p = Self::zero(ring);
        for (m, c) in terms {
            assert_eq!(m.ring(), ring.tag(), "monomial from a different ring");
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    /// Terms sorted from largest to smallest in the graded-lex order.
    pub fn terms_desc(&self) -> Vec<(Monomial, Q)> {
        let mut v: Vec<(Monomial, Q)> = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        v.sort_by(|(a, _), (b, _)| graded_lex_unchecked(b, a));
        v
    }

    /// The graded-lex leading monomial and its coefficient.
    pub fn leading_term(&self) -> Option<(Monomial, Q)> {
        self.terms
            .iter()
            .max_by(|(a, _), (b, _)| graded_lex_unchecked(a, b))
            .map(|(m, c)| (m.clone(), c.clone()))
    }

    /// The monomial if this polynomial is a single term with coefficient 1.
    pub fn as_monomial(&self) -> Option<&Monomial> {
        match self.terms.iter().next() {
            Some((m, c)) if self.terms.len() == 1 && c.is_one() => Some(m),
            _ => None,
        }
    }

    pub fn scale(&self, k: &Q) -> Polynomial {
        if k.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Polynomial {
        let mut acc = Polynomial::constant(&self.ring, Q::one());
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Distinct standard degrees of the terms.
    pub fn degrees(&self) -> BTreeSet<u32> {
        self.terms.keys().map(Monomial::degree).collect()
    }

    /// The common degree of all terms (`None` for the zero polynomial), or an
    /// error listing every degree that occurs.
    pub fn homogeneous_degree(&self) -> Result<Option<u32>, PolyError> {
        let degs = self.degrees();
        match degs.len() {
            0 => Ok(None),
            1 => Ok(degs.into_iter().next()),
            _ => Err(PolyError::Inhomogeneous {
                degrees: degs.into_iter().collect(),
            }),
        }
    }

    /// Distinct bidegrees of the terms of a Cox-ring polynomial.
    pub fn bidegrees(&self) -> Result<BTreeSet<BiDegree>, PolyError> {
        self.terms.keys().map(bidegree_of).collect()
    }

    /// Formal partial derivative with respect to `v`.
    ///
    /// The polynomial must be homogeneous (bihomogeneous on a Cox ring); an
    /// inhomogeneous input is reported rather than differentiated.
    pub fn differentiate(&self, v: Variable) -> Result<Polynomial, PolyError> {
        if v.ring != self.ring.tag() {
            return Err(PolyError::RingMismatch);
        }
        if self.ring.surface().is_some() {
            let degs = self.bidegrees()?;
            if degs.len() > 1 {
                let list: Vec<String> = degs.iter().map(|d| format!("({},{})", d.a, d.b)).collect();
                return Err(PolyError::NotBihomogeneous(list.join(", ")));
            }
        } else {
            self.homogeneous_degree()?;
        }
        let mut out = Polynomial::zero(&self.ring);
        for (m, c) in &self.terms {
            if let Some((e, dm)) = m.derivative(v.index) {
                out.add_term(dm, c * Q::from_integer(e.into()));
            }
        }
        Ok(out)
    }

    /// Renders terms in descending graded-lex order, e.g. `2*Y0*Y3 - Y1*Y2`.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (k, (m, c)) in self.terms_desc().into_iter().enumerate() {
            let neg = c < Q::zero();
            let abs = if neg { -c } else { c };
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mon = m.render(&self.ring);
            if abs.is_one() {
                s.push_str(&mon);
            } else if m.is_one() {
                s.push_str(&format_rational_short(&abs));
            } else {
                s.push_str(&format!("{}*{}", format_rational_short(&abs), mon));
            }
        }
        s
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.ring.tag(), rhs.ring.tag(), "ring mismatch in addition");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(
            self.ring.tag(),
            rhs.ring.tag(),
            "ring mismatch in subtraction"
        );
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Q::one())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(
            self.ring.tag(),
            rhs.ring.tag(),
            "ring mismatch in multiplication"
        );
        let mut out = Polynomial::zero(&self.ring);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul_unchecked(m2), c1 * c2);
            }
        }
        out
    }
}

use std::sync::Arc;

use num_traits::{One, Zero};

use super::monomial::{bidegree_of, BiDegree, Monomial};
use super::polynomial::Polynomial;
use super::ring::{Ring, Surface};
use super::PolyError;
use crate::linalg::Q;

/// A map from a surface to projective space, given by one monomial image per
/// ambient coordinate (zero for coordinates vanishing on the surface).
#[derive(Clone, Debug)]
pub struct Embedding {
    source: Arc<Ring>,
    surface: Surface,
    images: Vec<Option<(Monomial, Q)>>,
    class: BiDegree,
}

impl Embedding {
    /// `images[i]` is the pullback of ambient coordinate `i`.
    pub fn new(
        source: &Arc<Ring>,
        surface: Surface,
        images: Vec<Polynomial>,
    ) -> Result<Self, PolyError> {
        if images.len() != source.len() {
            return Err(PolyError::EmbeddingArity {
                expected: source.len(),
                found: images.len(),
            });
        }
        let mut class = None;
        let mut stored = Vec::with_capacity(images.len());
        for (i, img) in images.iter().enumerate() {
            if img.ring().tag() != surface.tag() {
                return Err(PolyError::RingMismatch);
            }
            if img.is_zero() {
                stored.push(None);
                continue;
            }
            let (m, c) = match img.terms().next() {
                Some((m, c)) if img.len() == 1 => (m.clone(), c.clone()),
                _ => {
                    return Err(PolyError::MalformedEmbedding(format!(
                        "image of {} is not a monomial",
                        source.name(i as u32)
                    )))
                }
            };
            let bd = bidegree_of(&m)?;
            match class {
                None => class = Some(bd),
                Some(c0) if c0 != bd => {
                    return Err(PolyError::MalformedEmbedding(format!(
                        "image of {} has bidegree {bd}, expected {c0}",
                        source.name(i as u32)
                    )))
                }
                _ => {}
            }
            stored.push(Some((m, c)));
        }
        let class =
            class.ok_or_else(|| PolyError::MalformedEmbedding("all images are zero".into()))?;
        Ok(Self {
            source: source.clone(),
            surface,
            images: stored,
            class,
        })
    }

    pub fn source(&self) -> &Arc<Ring> {
        &self.source
    }

    pub fn surface(&self) -> Surface {
        self.surface
    }

    /// Bidegree of the pulled-back hyperplane class.
    pub fn class(&self) -> BiDegree {
        self.class
    }

    pub fn image(&self, index: u32) -> Option<&Monomial> {
        self.images[index as usize].as_ref().map(|(m, _)| m)
    }

    /// Pulls a homogeneous ambient polynomial back to the surface.
    pub fn pullback(&self, p: &Polynomial) -> Result<Polynomial, PolyError> {
        if p.ring().tag() != self.source.tag() {
            return Err(PolyError::RingMismatch);
        }
        let deg = p.homogeneous_degree()?;
        let ring = self.surface.ring();
        let mut terms: Vec<(Monomial, Q)> = Vec::new();
        'terms: for (m, c) in p.terms() {
            let mut mon = Monomial::one(self.surface.tag());
            let mut coeff = c.clone();
            for &(i, e) in m.exponents() {
                match &self.images[i as usize] {
                    None => continue 'terms,
                    Some((im, ic)) => {
                        mon = mon.mul_unchecked(&im.pow(e));
                        if !ic.is_one() {
                            for _ in 0..e {
                                coeff *= ic;
                            }
                        }
                    }
                }
            }
            terms.push((mon, coeff));
        }
        let out = Polynomial::from_terms(&ring, terms);
        if let Some(deg) = deg {
            let expected = (deg as i64) * self.class;
            let bds = out.bidegrees()?;
            if bds.iter().any(|b| *b != expected) {
                return Err(PolyError::InvariantViolation(format!(
                    "pullback has bidegrees {:?}, expected {expected}",
                    bds.iter().map(|b| b.to_string()).collect::<Vec<_>>()
                )));
            }
        }
        debug_assert!(out.terms().all(|(_, c)| !c.is_zero()));
        Ok(out)
    }
}

use std::fmt;
use std::sync::atomic::{AtomicU32, Ordering as AtomicOrdering};
use std::sync::{Arc, OnceLock};

use super::PolyError;

/// Identifies the ring a variable, monomial or polynomial lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RingTag {
    /// `C[U0, U1, V0, V1]`, the Cox ring of P1 x P1.
    CoxF0,
    /// `C[U, V, T0, T1]`, the Cox ring of the first Hirzebruch surface.
    CoxF1,
    /// A polynomial ring of projective space with a declared coordinate roster.
    Ambient(u32),
}

/// The two surfaces whose section rings this crate works with.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub enum Surface {
    F0,
    F1,
}

impl Surface {
    pub fn ring(self) -> Arc<Ring> {
        match self {
            Surface::F0 => Ring::cox_f0(),
            Surface::F1 => Ring::cox_f1(),
        }
    }

    pub fn tag(self) -> RingTag {
        match self {
            Surface::F0 => RingTag::CoxF0,
            Surface::F1 => RingTag::CoxF1,
        }
    }

    pub fn from_tag(tag: RingTag) -> Option<Surface> {
        match tag {
            RingTag::CoxF0 => Some(Surface::F0),
            RingTag::CoxF1 => Some(Surface::F1),
            RingTag::Ambient(_) => None,
        }
    }
}

impl fmt::Display for Surface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Surface::F0 => f.write_str("F0"),
            Surface::F1 => f.write_str("F1"),
        }
    }
}

/// A variable: an index into the roster of its ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Variable {
    pub ring: RingTag,
    pub index: u32,
}

/// A polynomial ring with a fixed, ordered roster of variable names.
///
/// The roster order is the lexicographic tie-break order (first declared is
/// largest). `weights` defines the total degree used by the graded order.
#[derive(Debug)]
pub struct Ring {
    tag: RingTag,
    names: Vec<String>,
    weights: Vec<i64>,
}

/// Roster position of each variable of the Cox ring of the first Hirzebruch surface.
pub mod f1 {
    pub const U: u32 = 0;
    pub const V: u32 = 1;
    pub const T0: u32 = 2;
    pub const T1: u32 = 3;
}

/// Roster position of each variable of the Cox ring of P1 x P1.
pub mod f0 {
    pub const U0: u32 = 0;
    pub const U1: u32 = 1;
    pub const V0: u32 = 2;
    pub const V1: u32 = 3;
}

static NEXT_AMBIENT: AtomicU32 = AtomicU32::new(0);

impl Ring {
    pub fn cox_f1() -> Arc<Ring> {
        static F1: OnceLock<Arc<Ring>> = OnceLock::new();
        F1.get_or_init(|| {
            // Total degree a + b: U has bidegree (1,-1) so it weighs 0.
            Arc::new(Ring {
                tag: RingTag::CoxF1,
                names: ["U", "V", "T0", "T1"].map(String::from).to_vec(),
                weights: vec![0, 1, 1, 1],
            })
        })
        .clone()
    }

    pub fn cox_f0() -> Arc<Ring> {
        static F0: OnceLock<Arc<Ring>> = OnceLock::new();
        F0.get_or_init(|| {
            Arc::new(Ring {
                tag: RingTag::CoxF0,
                names: ["U0", "U1", "V0", "V1"].map(String::from).to_vec(),
                weights: vec![1, 1, 1, 1],
            })
        })
        .clone()
    }

    /// A fresh ambient ring `C[x_0, ..., x_n]` with the given coordinate names.
    pub fn ambient<S: Into<String>>(
        names: impl IntoIterator<Item = S>,
    ) -> Result<Arc<Ring>, PolyError> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let mut seen = std::collections::BTreeSet::new();
        for n in &names {
            if !seen.insert(n.as_str()) {
                return Err(PolyError::DuplicateVariable(n.clone()));
            }
        }
        let id = NEXT_AMBIENT.fetch_add(1, AtomicOrdering::Relaxed);
        let weights = vec![1; names.len()];
        Ok(Arc::new(Ring {
            tag: RingTag::Ambient(id),
            names,
            weights,
        }))
    }

    pub fn tag(&self) -> RingTag {
        self.tag
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn weight(&self, index: u32) -> i64 {
        self.weights[index as usize]
    }

    pub fn name(&self, index: u32) -> &str {
        &self.names[index as usize]
    }

    pub fn var(&self, index: u32) -> Variable {
        assert!(
            (index as usize) < self.names.len(),
            "variable index out of range"
        );
        Variable {
            ring: self.tag,
            index,
        }
    }

    pub fn var_named(&self, name: &str) -> Option<Variable> {
        self.names.iter().position(|n| n == name).map(|i| Variable {
            ring: self.tag,
            index: i as u32,
        })
    }

    pub fn variables(&self) -> impl Iterator<Item = Variable> + '_ {
        (0..self.names.len() as u32).map(|i| Variable {
            ring: self.tag,
            index: i,
        })
    }

    pub fn surface(&self) -> Option<Surface> {
        Surface::from_tag(self.tag)
    }
}

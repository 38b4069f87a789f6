//! Explicit hypersurfaces containing a quadric surface or a rational normal
//! scroll, their derivative maps restricted to the surface, and claim-by-claim
//! verification reports.

mod quadric;
mod report;
mod scroll;

pub use quadric::{build_quadric, verify_quadric, QuadricScenario};
pub use report::{sort_reports, Status, VerificationReport};
pub use scroll::{build_scroll, verify_scroll, ScrollScenario};

use std::collections::HashMap;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::linalg::{Matrix, SparseVec, Q};
use crate::linear_systems::{LinSysError, LinearSystem};
use crate::poly::{
    section_basis, Embedding, Monomial, PolyError, Polynomial, Ring, Surface, Variable,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    LinSys(#[from] LinSysError),
    #[error("{what}: need n >= {required_n}, got n = {n}")]
    Infeasible {
        what: String,
        n: i64,
        required_n: i64,
    },
    #[error("invalid parameters: {0}")]
    InvalidParameter(String),
    #[error("coordinate index {index} is outside Y0..Y{max} ({context})")]
    IndexOutOfRange {
        index: i64,
        max: i64,
        context: String,
    },
    #[error("no ambient polynomial pulls back to {0}")]
    NoPreimage(String),
}

/// `(coordinate, pullback of dF/dcoordinate)` for every ambient coordinate.
pub fn partial_images(
    f: &Polynomial,
    emb: &Embedding,
) -> Result<Vec<(Variable, Polynomial)>, ConstructionError> {
    f.ring()
        .variables()
        .map(|v| Ok((v, emb.pullback(&f.differentiate(v)?)?)))
        .collect()
}

/// The image of the derivative map: the span of the pullbacks of all partial
/// derivatives of `f`, in bidegree `(deg F - 1)` times the embedding class.
pub fn derivative_system(
    f: &Polynomial,
    emb: &Embedding,
) -> Result<LinearSystem, ConstructionError> {
    let images = partial_images(f, emb)?;
    derivative_system_from(f, emb, &images)
}

fn derivative_system_from(
    f: &Polynomial,
    emb: &Embedding,
    images: &[(Variable, Polynomial)],
) -> Result<LinearSystem, ConstructionError> {
    let d = f.homogeneous_degree()?.unwrap_or(1) as i64;
    let deg = (d - 1) * emb.class();
    let polys: Vec<Polynomial> = images.iter().map(|(_, p)| p.clone()).collect();
    Ok(LinearSystem::from_polynomials(emb.surface(), deg, &polys)?)
}

/// All monomials of degree `e` in the given ambient variables, in descending
/// lex order of the declaration roster.
fn ambient_monomials(ring: &Ring, vars: &[u32], e: u32) -> Vec<Monomial> {
    fn rec(vars: &[u32], e: u32, acc: &mut Vec<(u32, u32)>, out: &mut Vec<Vec<(u32, u32)>>) {
        match vars.split_first() {
            None => {
                if e == 0 {
                    out.push(acc.clone());
                }
            }
            Some((&v, rest)) => {
                for x in (0..=e).rev() {
                    acc.push((v, x));
                    rec(rest, e - x, acc, out);
                    acc.pop();
                }
            }
        }
    }
    let mut out = Vec::new();
    rec(vars, e, &mut Vec::new(), &mut out);
    out.into_iter()
        .map(|p| Monomial::new(ring.tag(), p))
        .collect()
}

/// Degree-`e` ambient polynomials `G` with `pullback(G) = m` for each target
/// `m`. The choice is the RREF pivot solution (free variables zero) with
/// unknowns ordered by descending ambient monomial, so it is reproducible.
pub fn lift_sections(
    targets: &[Monomial],
    emb: &Embedding,
    e: u32,
) -> Result<Vec<Polynomial>, ConstructionError> {
    let ring = emb.source().clone();
    let live: Vec<u32> = (0..ring.len() as u32)
        .filter(|&i| emb.image(i).is_some())
        .collect();
    let unknowns = ambient_monomials(&ring, &live, e);
    let deg = e as i64 * emb.class();
    let rows = section_basis(emb.surface(), deg)?;
    let row_of: HashMap<&Monomial, usize> = rows.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let n = unknowns.len();

    // Columns: unknowns, then one right-hand side per target.
    let mut entries: Vec<Vec<(usize, Q)>> = vec![Vec::new(); rows.len()];
    for (col, u) in unknowns.iter().enumerate() {
        let p = emb.pullback(&Polynomial::monomial(&ring, u.clone()))?;
        for (m, c) in p.terms() {
            entries[row_of[m]].push((col, c.clone()));
        }
    }
    for (t, m) in targets.iter().enumerate() {
        let r = *row_of
            .get(m)
            .ok_or_else(|| ConstructionError::NoPreimage(m.render(&emb.surface().ring())))?;
        entries[r].push((n + t, Q::one()));
    }
    let mat = Matrix::from_rows(
        n + targets.len(),
        entries.into_iter().map(SparseVec::from_pairs).collect(),
    );
    let rref = mat.rref();
    if let Some(&p) = rref.pivots.iter().find(|&&p| p >= n) {
        return Err(ConstructionError::NoPreimage(
            targets[p - n].render(&emb.surface().ring()),
        ));
    }
    Ok((0..targets.len())
        .map(|t| {
            let terms = rref
                .rows
                .iter()
                .zip(&rref.pivots)
                .map(|(row, &p)| (unknowns[p].clone(), row.get(n + t)));
            Polynomial::from_terms(&ring, terms)
        })
        .collect())
}

/// Single-target form of [`lift_sections`].
pub fn lift_section(
    m: &Monomial,
    emb: &Embedding,
    e: u32,
) -> Result<Polynomial, ConstructionError> {
    Ok(lift_sections(std::slice::from_ref(m), emb, e)?.remove(0))
}

/// A term of a printed formula, with exponents in the surface roster order.
/// Exponents are signed so that a typeset exponent that evaluates negative is
/// kept and reported instead of wrapping.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct PrintedTerm {
    pub sign: i64,
    pub exps: [i64; 4],
}

pub(crate) fn term(sign: i64, exps: [i64; 4]) -> PrintedTerm {
    PrintedTerm { sign, exps }
}

fn render_printed(surface: Surface, terms: &[PrintedTerm]) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let ring = surface.ring();
    let mut s = String::new();
    for (i, t) in terms.iter().enumerate() {
        s.push_str(match (i, t.sign < 0) {
            (0, true) => "-",
            (0, false) => "",
            (_, true) => " - ",
            (_, false) => " + ",
        });
        let factors: Vec<String> = t
            .exps
            .iter()
            .enumerate()
            .filter(|(_, e)| **e != 0)
            .map(|(v, e)| {
                if *e == 1 {
                    ring.name(v as u32).to_string()
                } else {
                    format!("{}^{}", ring.name(v as u32), e)
                }
            })
            .collect();
        s.push_str(&if factors.is_empty() {
            "1".to_string()
        } else {
            factors.join("*")
        });
    }
    s
}

fn printed_polynomial(surface: Surface, terms: &[PrintedTerm]) -> Result<Polynomial, String> {
    let ring = surface.ring();
    let mut out = Polynomial::zero(&ring);
    for t in terms {
        if t.exps.iter().any(|e| *e < 0) {
            return Err(format!(
                "printed term {} has a negative exponent",
                render_printed(surface, std::slice::from_ref(t))
            ));
        }
        let m = Monomial::new(
            surface.tag(),
            t.exps
                .iter()
                .enumerate()
                .map(|(v, e)| (v as u32, *e as u32)),
        );
        out = &out + &Polynomial::term(&ring, m, Q::from_integer(t.sign.into()));
    }
    Ok(out)
}

/// Compares a recomputed image with a printed table line. Equality, or
/// equality up to an overall sign, confirms the line; anything else is a
/// correction whose witness lists the monomial-level differences.
pub(crate) fn compare_line(
    id: String,
    computed: &Polynomial,
    surface: Surface,
    printed: &[PrintedTerm],
) -> VerificationReport {
    let printed_text = render_printed(surface, printed);
    let p = match printed_polynomial(surface, printed) {
        Ok(p) => p,
        Err(why) => return VerificationReport::corrected(id, computed.render(), printed_text, why),
    };
    if *computed == p {
        return VerificationReport::confirmed(id, computed.render(), printed_text);
    }
    if *computed == -&p && !p.is_zero() {
        let mut r = VerificationReport::confirmed(id, computed.render(), printed_text);
        r.witness = Some("agrees up to an overall sign".into());
        return r;
    }
    VerificationReport::corrected(
        id,
        computed.render(),
        printed_text,
        diff_witness(computed, &p),
    )
}

fn diff_witness(computed: &Polynomial, printed: &Polynomial) -> String {
    let ring = computed.ring();
    let mut parts = Vec::new();
    for (m, c) in computed.terms_desc() {
        let pc = printed.coefficient(&m);
        if pc.is_zero() {
            parts.push(format!(
                "missing from table: {}",
                signed_term(&c, &m.render(ring))
            ));
        } else if pc != c && pc != -c.clone() {
            parts.push(format!(
                "coefficient of {}: recomputed {}, printed {}",
                m.render(ring),
                crate::linalg::format_rational_short(&c),
                crate::linalg::format_rational_short(&pc)
            ));
        }
    }
    for (m, c) in printed.terms_desc() {
        if computed.coefficient(&m).is_zero() {
            parts.push(format!(
                "not in recomputation: {}",
                signed_term(&c, &m.render(ring))
            ));
        }
    }
    if parts.is_empty() {
        parts.push("terms agree individually up to sign but not by a common sign".into());
    }
    parts.join("; ")
}

fn signed_term(c: &Q, m: &str) -> String {
    let abs = c.abs();
    let sign = if c.is_negative() { "-" } else { "+" };
    if abs.is_one() {
        format!("{sign}{m}")
    } else {
        format!("{sign}{}*{m}", crate::linalg::format_rational_short(&abs))
    }
}

pub(crate) fn render_monomials(surface: Surface, ms: &[Monomial]) -> String {
    let ring = surface.ring();
    let parts: Vec<String> = ms.iter().map(|m| m.render(&ring)).collect();
    format!("{{{}}}", parts.join(", "))
}

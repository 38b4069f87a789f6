use std::collections::BTreeSet;
use std::sync::Arc;

use super::{
    compare_line, derivative_system_from, lift_sections, partial_images, render_monomials,
    sort_reports, term, ConstructionError, PrintedTerm, VerificationReport,
};
use crate::linear_systems::{
    criterion_comput2, initial_terms, is_c_generating, w0_monomials, JRange,
};
use crate::poly::{compare_graded_lex, BiDegree, Embedding, Monomial, Polynomial, Ring, Surface};

/// The degree-`d` hypersurface containing the rational normal scroll
/// `F1 -> P^(2k)` given by `O(1, k-1)`.
#[derive(Clone, Debug)]
pub struct ScrollScenario {
    pub d: u32,
    pub k: u32,
    pub n: u32,
    /// `A_d` with `j = 1..=r(i)`, as typeset.
    pub a_printed: Vec<Monomial>,
    /// `A_d` with `j = 0..=r(i)`; this is `W0(d-1, (d-1)(k-1), k-3)`.
    pub a_corrected: Vec<Monomial>,
    pub b: Vec<Monomial>,
    /// `A_d` (corrected) minus `B_d`, descending; `X{t}` belongs to `c[t-1]`.
    pub c: Vec<Monomial>,
    pub z_count: u32,
    pub ring: Arc<Ring>,
    pub f: Polynomial,
    pub emb: Embedding,
    /// `G_M` for each `M` in `c`, same order.
    pub lifts: Vec<Polynomial>,
}

impl ScrollScenario {
    /// Bidegree `(d-1, (d-1)(k-1))` of the derivative system.
    pub fn system_degree(&self) -> BiDegree {
        let a = self.d as i64 - 1;
        BiDegree::new(a, a * (self.k as i64 - 1))
    }

    /// Smallest `n` for which the coordinate roster fits.
    pub fn minimal_n(&self) -> u32 {
        2 * self.k + self.c.len() as u32
    }
}

fn mono(exps: [i64; 4], context: &str) -> Result<Monomial, ConstructionError> {
    if exps.iter().any(|e| *e < 0) {
        return Err(ConstructionError::InvalidParameter(format!(
            "{context}: negative exponent in {exps:?}"
        )));
    }
    Ok(Monomial::f1(
        exps[0] as u32,
        exps[1] as u32,
        exps[2] as u32,
        exps[3] as u32,
    ))
}

/// The four families making up `B_d`.
fn b_set(d: i64, k: i64) -> Result<Vec<Monomial>, ConstructionError> {
    let mut out = Vec::new();
    let s = k - 2;
    for i in 0..=d - 2 {
        out.push(mono([d - 1, 0, (d - 1) * k - i * s, i * s], "B_d")?);
        out.push(mono([d - 2, 1, (d - 1) * k - 1 - i * s, i * s], "B_d")?);
    }
    for j in 0..=d - 4 {
        out.push(mono(
            [d - 3, 2, (d - 1) * k - 2 - (j + 2) * s, (j + 2) * s],
            "B_d",
        )?);
        out.push(mono(
            [d - 4, 3, (d - 1) * k - 3 - (j + 2) * s, (j + 2) * s],
            "B_d",
        )?);
    }
    Ok(out)
}

fn sort_desc(v: &mut [Monomial]) {
    v.sort_by(|a, b| compare_graded_lex(b, a).expect("same ring"));
}

/// Builds the scenario. `k` defaults to `2d-3`; `n` defaults to the smallest
/// value for which all coordinates fit.
pub fn build_scroll(
    d: u32,
    k: Option<u32>,
    n: Option<u32>,
) -> Result<ScrollScenario, ConstructionError> {
    if d < 3 {
        return Err(ConstructionError::InvalidParameter(format!(
            "scroll needs d >= 3, got {d}"
        )));
    }
    let k = k.unwrap_or(2 * d - 3);
    if k < 3 {
        return Err(ConstructionError::InvalidParameter(format!(
            "scroll needs k >= 3 so that Y(k-3) exists, got k = {k}"
        )));
    }
    let (di, ki) = (d as i64, k as i64);
    let max = 2 * ki;
    let check = |index: i64, context: &str| {
        if index < 0 || index > max {
            Err(ConstructionError::IndexOutOfRange {
                index,
                max,
                context: context.into(),
            })
        } else {
            Ok(index as u32)
        }
    };
    // Largest indices used by the two sums of F.
    check(ki + di, "Y(k+2+i) at i = d-2")?;
    if d >= 4 {
        check(ki + 2 * di - 3, "Y(k+d+1+j) at j = d-4")?;
        check(2 * ki + 1 - di, "Y(2k+1-d)")?;
    }

    let (a, b, c) = (d - 1, (d - 1) * (k - 1), k - 3);
    let a_corrected = w0_monomials(a, b, c, JRange::FromZero)?;
    let a_printed = w0_monomials(a, b, c, JRange::FromOne)?;
    let b_mons = b_set(di, ki)?;
    let b_lookup: BTreeSet<&Monomial> = b_mons.iter().collect();
    let mut c_mons: Vec<Monomial> = a_corrected
        .iter()
        .filter(|m| !b_lookup.contains(m))
        .cloned()
        .collect();
    sort_desc(&mut c_mons);

    let needed = 2 * k + 1 + c_mons.len() as u32;
    let n = n.unwrap_or(needed - 1);
    if n + 1 < needed {
        return Err(ConstructionError::Infeasible {
            what: format!("scroll construction for d = {d}, k = {k} (2k+1 + |C_d| coordinates)"),
            n: n as i64,
            required_n: needed as i64 - 1,
        });
    }
    let z_count = n + 1 - needed;
    let mut names: Vec<String> = (0..=2 * k).map(|i| format!("Y{i}")).collect();
    names.extend((1..=c_mons.len()).map(|t| format!("X{t}")));
    names.extend((1..=z_count).map(|l| format!("Z{l}")));
    let ring = Ring::ambient(names)?;

    let f1 = Surface::F1.ring();
    let mut images: Vec<Polynomial> = (0..=k)
        .map(|i| Polynomial::monomial(&f1, Monomial::f1(1, 0, k - i, i)))
        .chain((0..k).map(|j| Polynomial::monomial(&f1, Monomial::f1(0, 1, k - 1 - j, j))))
        .collect();
    images.resize(ring.len(), Polynomial::zero(&f1));
    let emb = Embedding::new(&ring, Surface::F1, images)?;

    let y = |i: i64| Polynomial::var(&ring, i as u32);
    let binomial = |i: i64| &(&y(i) * &y(ki + 2 + i)) - &(&y(i + 1) * &y(ki + 1 + i));
    let mut f = Polynomial::zero(&ring);
    for i in 0..=di - 2 {
        f = &f + &(&(&binomial(i) * &y(0).pow((di - 2 - i) as u32)) * &y(ki - 3).pow(i as u32));
    }
    for j in 0..=di - 4 {
        let tail = &(&(&y(0).pow((di - 4 - j) as u32) * &y(ki - 3).pow(j as u32)) * &y(2 * ki - 3))
            * &y(2 * ki + 1 - di);
        f = &f + &(&binomial(di - 1 + j) * &tail);
    }
    let lifts = lift_sections(&c_mons, &emb, d - 1)?;
    for (t, g) in lifts.iter().enumerate() {
        let x = Polynomial::var(&ring, 2 * k + 1 + t as u32);
        f = &f + &(g * &x);
    }
    Ok(ScrollScenario {
        d,
        k,
        n,
        a_printed,
        a_corrected,
        b: b_mons,
        c: c_mons,
        z_count,
        ring,
        f,
        emb,
        lifts,
    })
}

/// One line of the printed table of partial images: the coordinate it is
/// about and its terms.
struct TableLine {
    label: &'static str,
    param: Option<i64>,
    index: i64,
    terms: Vec<PrintedTerm>,
}

/// The printed table of `dF/dY_t` images, term by term.
fn printed_table(d: i64, k: i64) -> Vec<TableLine> {
    let s = k - 2;
    let top = (d - 1) * k;
    let mut lines = vec![TableLine {
        label: "Y0",
        param: None,
        index: 0,
        terms: vec![term(1, [d - 2, 1, top - 2, 0])],
    }];
    for i in 0..=d - 3 {
        lines.push(TableLine {
            label: "Y(i+1)",
            param: Some(i),
            index: i + 1,
            terms: vec![
                term(-1, [d - 2, 1, top - 1 - i * s, i * s]),
                term(1, [d - 2, 1, top - 2 - (i + 1) * s, (i + 1) * s]),
            ],
        });
    }
    lines.push(TableLine {
        label: "Y(d-1)",
        param: None,
        index: d - 1,
        terms: vec![
            term(-1, [d - 2, 1, top - 1 - (d - 2) * s, (d - 2) * s]),
            term(1, [d - 4, 3, top - 4 - 2 * s, 2 * s + 1]),
        ],
    });
    for j in 0..=d - 5 {
        lines.push(TableLine {
            label: "Y(d+j)",
            param: Some(j),
            index: d + j,
            terms: vec![
                term(-1, [d - 4, 3, top - 3 - (j + 2) * s, (j + 2) * s]),
                term(1, [d - 4, 3, top - 4 - (j + 3) * s, (j + 3) * s]),
            ],
        });
    }
    lines.push(TableLine {
        label: "Y(k-1)",
        param: None,
        index: k - 1,
        terms: vec![term(-1, [d - 4, 3, top - 3 - (d - 2) * s, (d - 2) * s])],
    });
    lines.push(TableLine {
        label: "Y(k)",
        param: None,
        index: k,
        terms: vec![],
    });
    lines.push(TableLine {
        label: "Y(k+1)",
        param: None,
        index: k + 1,
        terms: vec![term(-1, [d - 1, 0, top - 1, 1])],
    });
    for i in 0..=d - 3 {
        lines.push(TableLine {
            label: "Y(k+2+i)",
            param: Some(i),
            index: k + 2 + i,
            terms: vec![
                term(1, [d - 1, 0, top - i * s, i * s]),
                term(-1, [d - 1, 0, top - 1 - (i + 1) * s, (i + 1) * s + 1]),
            ],
        });
    }
    lines.push(TableLine {
        label: "Y(k+d)",
        param: None,
        index: k + d,
        terms: vec![
            term(1, [d - 1, 0, top - (d - 2) * s, (d - 2) * s]),
            // The second exponent of T1 is typeset as 2(k+2)+1.
            term(-1, [d - 3, 2, top - 3 - 2 * s, 2 * (k + 2) + 1]),
        ],
    });
    for j in 0..=d - 5 {
        lines.push(TableLine {
            label: "Y(k+d+1+j)",
            param: Some(j),
            index: k + d + 1 + j,
            terms: vec![
                term(1, [d - 3, 2, top - 2 - (j + 2) * s, (j + 2) * s]),
                term(-1, [d - 3, 2, top - 3 - (j + 3) * s, (j + 3) * s + 1]),
            ],
        });
    }
    lines.push(TableLine {
        label: "Y(2k)",
        param: None,
        index: 2 * k,
        terms: vec![term(1, [d - 3, 2, top - 2 - (d - 2) * s, (d - 2) * s])],
    });
    lines
}

/// Checks every printed claim about the scroll construction.
pub fn verify_scroll(
    d: u32,
    k: Option<u32>,
    n: Option<u32>,
) -> Result<Vec<VerificationReport>, ConstructionError> {
    let sc = build_scroll(d, k, n)?;
    let (di, ki) = (d as i64, sc.k as i64);
    let mut out = Vec::new();
    let f1 = Surface::F1;

    // Cardinalities and the coordinate bound.
    let claimed_a = di * di + di;
    for (id, set, note) in [
        ("scroll.count.A_d.j_from_0", &sc.a_corrected, "j = 0..r(i)"),
        ("scroll.count.A_d.j_from_1", &sc.a_printed, "j = 1..r(i)"),
    ] {
        out.push(VerificationReport::check(
            id,
            set.len() as i64 == claimed_a,
            format!("|A_d| = {} ({note})", set.len()),
            format!("d^2 + d = {claimed_a}"),
            || format!("enumerated {} monomials with {note}", set.len()),
        ));
    }
    out.push(VerificationReport::check(
        "scroll.count.B_d",
        sc.b.len() as i64 == 4 * di - 8,
        format!("|B_d| = {}", sc.b.len()),
        format!("4d - 8 = {}", 4 * di - 8),
        || render_monomials(f1, &sc.b),
    ));
    let a_lookup: BTreeSet<&Monomial> = sc.a_corrected.iter().collect();
    let b_outside: Vec<Monomial> =
        sc.b.iter()
            .filter(|m| !a_lookup.contains(m))
            .cloned()
            .collect();
    out.push(VerificationReport::check(
        "scroll.count.B_d_in_A_d",
        b_outside.is_empty(),
        format!(
            "{} of {} B_d monomials lie in A_d",
            sc.b.len() - b_outside.len(),
            sc.b.len()
        ),
        "B_d is a subset of A_d",
        || format!("outside A_d: {}", render_monomials(f1, &b_outside)),
    ));
    let printed_bound = di * di + di + 2;
    let minimal = sc.minimal_n() as i64;
    let bound_report = if minimal == printed_bound {
        VerificationReport::confirmed(
            "scroll.count.n_bound",
            format!("n >= {minimal}"),
            format!("n >= d^2+d+2 = {printed_bound}"),
        )
    } else {
        VerificationReport::corrected(
            "scroll.count.n_bound",
            format!("n >= {minimal}"),
            format!("n >= d^2+d+2 = {printed_bound}"),
            format!(
                "2k+1 = {} Y coordinates plus |C_d| = {} X coordinates",
                2 * ki + 1,
                sc.c.len()
            ),
        )
    };
    out.push(bound_report);

    // Structure of F.
    let hom = sc.f.homogeneous_degree();
    out.push(
        VerificationReport::check(
            "scroll.build.homogeneous",
            hom == Ok(Some(d)),
            format!("{hom:?}"),
            format!("F homogeneous of degree {d}"),
            || format!("{hom:?}"),
        )
        .core(),
    );
    let mut bad_binomials = Vec::new();
    let mut count = 0;
    let y = |i: i64| Polynomial::var(&sc.ring, i as u32);
    let mut binomial_starts: Vec<i64> = (0..=di - 2).collect();
    binomial_starts.extend((0..=di - 4).map(|j| di - 1 + j));
    for i in binomial_starts {
        let bin = &(&y(i) * &y(ki + 2 + i)) - &(&y(i + 1) * &y(ki + 1 + i));
        count += 1;
        let p = sc.emb.pullback(&bin)?;
        if !p.is_zero() {
            bad_binomials.push(format!("i = {i}: {}", p.render()));
        }
    }
    out.push(
        VerificationReport::check(
            "scroll.embedding.binomials",
            bad_binomials.is_empty(),
            format!("{count} binomials vanish on Sigma"),
            "Y_i*Y_(k+2+i) - Y_(i+1)*Y_(k+1+i) vanish on Sigma",
            || bad_binomials.join("; "),
        )
        .core(),
    );
    let pulled = sc.emb.pullback(&sc.f)?;
    out.push(
        VerificationReport::check(
            "scroll.embedding.contains_surface",
            pulled.is_zero(),
            format!("pullback of F = {}", pulled.render()),
            "Sigma is contained in X",
            || pulled.render(),
        )
        .core(),
    );

    // Partial images.
    let images = partial_images(&sc.f, &sc.emb)?;
    let mut bad_x = Vec::new();
    for (t, m) in sc.c.iter().enumerate() {
        let img = &images[(2 * sc.k + 1) as usize + t].1;
        if img.as_monomial() != Some(m) {
            bad_x.push(format!(
                "X{}: {} != {}",
                t + 1,
                img.render(),
                m.render(&f1.ring())
            ));
        }
    }
    out.push(
        VerificationReport::check(
            "scroll.partials.X_M",
            bad_x.is_empty(),
            format!(
                "{} of {} X partials map to their monomial",
                sc.c.len() - bad_x.len(),
                sc.c.len()
            ),
            "dF/dX_M -> M for every M in C_d",
            || bad_x.join("; "),
        )
        .core(),
    );
    let z_start = (2 * sc.k + 1) as usize + sc.c.len();
    let z_nonzero = images[z_start..]
        .iter()
        .filter(|(_, p)| !p.is_zero())
        .count();
    out.push(VerificationReport::check(
        "scroll.partials.Z",
        z_nonzero == 0,
        format!("{} Z partials, {z_nonzero} nonzero", sc.z_count),
        "dF/dZ = 0",
        || "Z coordinate appears in F".into(),
    ));

    // The printed table, line by line.
    let mut covered = BTreeSet::new();
    for (line_no, line) in printed_table(di, ki).into_iter().enumerate() {
        let tag = match line.param {
            Some(p) => format!(
                "{}.{}={p}",
                line.label,
                if line.label.contains("+j") { "j" } else { "i" }
            ),
            None => line.label.to_string(),
        };
        let id = format!("scroll.table.{:02}.{tag}", line_no + 1);
        if line.index < 0 || line.index > 2 * ki {
            out.push(VerificationReport::corrected(
                id,
                "-",
                format!("line for Y{}", line.index),
                format!("index {} is outside Y0..Y{}", line.index, 2 * ki),
            ));
            continue;
        }
        covered.insert(line.index);
        let computed = &images[line.index as usize].1;
        let mut r = compare_line(id, computed, f1, &line.terms);
        r.computed_value = format!("dF/dY{} -> {}", line.index, r.computed_value);
        out.push(r);
    }
    let uncovered: Vec<String> = (0..=2 * ki)
        .filter(|t| !covered.contains(t))
        .map(|t| format!("Y{t}: {}", images[t as usize].1.render()))
        .collect();
    if !uncovered.is_empty() {
        out.push(VerificationReport::skipped(
            "scroll.table.uncovered",
            format!("no printed line for {}", uncovered.join("; ")),
        ));
    }

    // Initial terms of the recomputed partials.
    let leads: BTreeSet<Monomial> = images
        .iter()
        .filter_map(|(_, p)| p.leading_term().map(|(m, _)| m))
        .collect();
    let b_missing: Vec<Monomial> =
        sc.b.iter()
            .filter(|m| !leads.contains(m))
            .cloned()
            .collect();
    out.push(VerificationReport::check(
        "scroll.initial_terms.B_d",
        b_missing.is_empty(),
        format!(
            "{} of {} B_d monomials are leading terms of partials",
            sc.b.len() - b_missing.len(),
            sc.b.len()
        ),
        "every monomial of B_d is the initial term of some partial",
        || format!("not a leading term: {}", render_monomials(f1, &b_missing)),
    ));

    let system = derivative_system_from(&sc.f, &sc.emb, &images)?;
    let c = sc.k - 3;
    let in_w = initial_terms(&system);
    let criterion = criterion_comput2(&system, c)?;
    let in_lookup: BTreeSet<&Monomial> = in_w.iter().collect();
    let w0_missing: Vec<Monomial> = sc
        .a_corrected
        .iter()
        .filter(|m| !in_lookup.contains(m))
        .cloned()
        .collect();
    out.push(VerificationReport::check(
        "scroll.initial_terms.contains_W0",
        criterion,
        format!(
            "IN(image) has {} monomials; {} of {} W0 monomials present",
            in_w.len(),
            sc.a_corrected.len() - w0_missing.len(),
            sc.a_corrected.len()
        ),
        "IN(image of dF) contains W0(a,b,c)",
        || format!("missing from IN: {}", render_monomials(f1, &w0_missing)),
    ));
    let gen = is_c_generating(&system, c)?;
    out.push(
        VerificationReport::check(
            "scroll.c_generating",
            gen.generating,
            format!(
                "dim image = {}, corank of multiplication map = {}",
                system.dim(),
                gen.corank
            ),
            format!("image of dF is {c}-generating"),
            || format!("corank {}", gen.corank),
        )
        .core(),
    );
    out.push(
        VerificationReport::check(
            "scroll.criterion_consistency",
            !criterion || gen.generating,
            format!("criterion {criterion}, rank verdict {}", gen.generating),
            "initial-term criterion implies generation",
            || "criterion holds but the multiplication map is not surjective".into(),
        )
        .core(),
    );
    let bad_lifts: Vec<String> =
        sc.c.iter()
            .zip(&sc.lifts)
            .filter_map(|(m, g)| match sc.emb.pullback(g) {
                Ok(p) if p.as_monomial() == Some(m) => None,
                Ok(p) => Some(format!("{} -> {}", g.render(), p.render())),
                Err(e) => Some(e.to_string()),
            })
            .collect();
    out.push(
        VerificationReport::check(
            "scroll.lifts",
            bad_lifts.is_empty(),
            format!(
                "{} lifts G_M with pullback M",
                sc.lifts.len() - bad_lifts.len()
            ),
            "f^*G_M = M",
            || bad_lifts.join("; "),
        )
        .core(),
    );
    sort_reports(&mut out);
    Ok(out)
}

//! Property tests for the algebraic invariants of each module.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use hirzebruch_verify::constructions::{build_quadric, build_scroll, partial_images};
use hirzebruch_verify::ledger::{ext_dimension_step, induct_step, DefDims, FamilyDegrees, Move};
use hirzebruch_verify::linalg::Q;
use hirzebruch_verify::linear_systems::{
    closed_form_me, criterion_comput2, is_c_generating, min_cgen_dim, LinearSystem,
};
use hirzebruch_verify::nodal::{
    direct_sum, global_sections, is_deformation_ample, tensor_power, twist_canonical, BundleData,
    TreeCurve,
};
use hirzebruch_verify::poly::{
    bidegree_of, compare_graded_lex, section_basis, BiDegree, Monomial, Polynomial, Surface,
};
use proptest::prelude::*;

fn f1_monomial() -> impl Strategy<Value = Monomial> {
    (0u32..4, 0u32..4, 0u32..5, 0u32..5).prop_map(|(i, j, p, q)| Monomial::f1(i, j, p, q))
}

/// A random element of one bidegree piece of the Cox ring.
fn f1_polynomial() -> impl Strategy<Value = Polynomial> {
    (0i64..3, 0i64..3, prop::collection::vec(-3i64..=3, 16)).prop_map(|(a, b, coeffs)| {
        let basis = section_basis(Surface::F1, BiDegree::new(a, b)).unwrap();
        Polynomial::from_terms(
            &Surface::F1.ring(),
            basis
                .into_iter()
                .zip(coeffs.iter().cycle())
                .map(|(m, &c)| (m, Q::from_integer(c.into()))),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn section_count_matches_enumeration(a in 0i64..6, b in 0i64..8) {
        let basis = section_basis(Surface::F1, BiDegree::new(a, b)).unwrap();
        let closed = (a + 1) * (b + 1) + a * (a + 1) / 2;
        let mut pairs = 0;
        for i in 0..=a {
            for _p in 0..=(b + i) {
                pairs += 1;
            }
        }
        prop_assert_eq!(basis.len() as i64, closed);
        prop_assert_eq!(pairs, closed);
        for m in &basis {
            prop_assert_eq!(bidegree_of(m).unwrap(), BiDegree::new(a, b));
        }
    }

    #[test]
    fn bidegree_is_additive(m1 in f1_monomial(), m2 in f1_monomial()) {
        let prod = m1.mul(&m2).unwrap();
        let (d1, d2) = (bidegree_of(&m1).unwrap(), bidegree_of(&m2).unwrap());
        prop_assert_eq!(bidegree_of(&prod).unwrap(), BiDegree::new(d1.a + d2.a, d1.b + d2.b));
    }

    #[test]
    fn graded_lex_is_a_total_order(x in f1_monomial(), y in f1_monomial(), z in f1_monomial()) {
        let cmp = |a: &Monomial, b: &Monomial| compare_graded_lex(a, b).unwrap();
        prop_assert_eq!(cmp(&x, &y), cmp(&y, &x).reverse());
        prop_assert_eq!(cmp(&x, &y) == Ordering::Equal, x == y);
        if cmp(&x, &y) != Ordering::Greater && cmp(&y, &z) != Ordering::Greater {
            prop_assert_ne!(cmp(&x, &z), Ordering::Greater);
        }
    }

    #[test]
    fn leibniz_rule(p in f1_polynomial(), q in f1_polynomial(), v in 0u32..4) {
        let var = Surface::F1.ring().var(v);
        let lhs = (&p * &q).differentiate(var).unwrap();
        let rhs = &(&p.differentiate(var).unwrap() * &q) + &(&p * &q.differentiate(var).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn pullback_is_multiplicative(
        ep in prop::collection::vec(((0u32..3, 0u32..3), -3i64..=3), 1..4),
        eq in prop::collection::vec(((0u32..3, 0u32..3), -3i64..=3), 1..4),
    ) {
        // Degree-2 forms in Y0..Y3 on the quadric surface.
        let sc = build_quadric(2, 3).unwrap();
        let ring = sc.emb.source().clone();
        let form = |terms: &[((u32, u32), i64)]| {
            terms.iter().fold(Polynomial::zero(&ring), |acc, &((i, j), c)| {
                let t = &(&Polynomial::var(&ring, i) * &Polynomial::var(&ring, j + 1)).scale(&Q::from_integer(c.into()));
                &acc + t
            })
        };
        let (p, q) = (form(&ep), form(&eq));
        let lhs = sc.emb.pullback(&(&p * &q)).unwrap();
        let rhs = &sc.emb.pullback(&p).unwrap() * &sc.emb.pullback(&q).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn c_generation_is_monotone(a in 0u32..3, b in 1u32..4, c in 0u32..3, seed in prop::collection::vec(any::<bool>(), 32)) {
        let deg = BiDegree::new(a as i64, b as i64);
        let all = section_basis(Surface::F1, deg).unwrap();
        let small: Vec<Monomial> = all.iter().zip(seed.iter().cycle()).filter(|(_, k)| **k).map(|(m, _)| m.clone()).collect();
        let w = LinearSystem::from_monomials(Surface::F1, deg, &small).unwrap();
        let gen = is_c_generating(&w, c).unwrap().generating;
        let mut bigger = small.clone();
        bigger.extend(all.iter().take(2).cloned());
        let w2 = LinearSystem::from_monomials(Surface::F1, deg, &bigger).unwrap();
        prop_assert!(w2.contains(&w));
        if gen {
            prop_assert!(is_c_generating(&w2, c).unwrap().generating);
        }
        if criterion_comput2(&w, c).unwrap() {
            prop_assert!(gen);
        }
        if (w.dim() as i64) < min_cgen_dim(a, b, c).unwrap() {
            prop_assert!(!gen);
        }
    }

    #[test]
    fn closed_form_flag_matches_recomputation(a in 0u32..6, b in 1u32..10, c in 0u32..5) {
        let rec = closed_form_me(a, b, c).unwrap();
        let (a, b, c) = (a as i64, b as i64, c as i64);
        let sum: i64 = 2 * a + 2 + (0..=a).map(|i| (b + i - 1).div_euclid(c + 1)).sum::<i64>();
        let m = a * a + (2 * b + 3 * (c + 1)) * a + 2 * b + 4 * (c + 1) + 2;
        let (br, ar) = ((b - 1).rem_euclid(c + 1), (a + b - 1).rem_euclid(c + 1));
        let e = br * br - (c + 1) * br - (ar * ar - (c - 1) * ar);
        prop_assert_eq!(rec.sum_formula, sum);
        prop_assert_eq!(rec.agrees, m + e == 2 * (c + 1) * sum);
    }

    #[test]
    fn boundary_degree_identity(l1 in 0i64..20, h1 in 0i64..20, e in 1u32..6, lb in 0i64..30, hb in 0i64..30, k in 1i64..10) {
        let z1 = FamilyDegrees::new(1, l1, h1);
        let zb = FamilyDegrees::new(e, lb, hb);
        match induct_step(&z1, &zb, k) {
            Ok((xi1, xb)) => {
                prop_assert!(k <= zb.s());
                prop_assert_eq!(xb.deg_h - zb.deg_h, z1.deg_h);
                prop_assert_eq!(xi1.deg_l, z1.deg_l + k);
                prop_assert_eq!(xb.deg_l, z1.deg_l + k);
                if e > 1 {
                    prop_assert_eq!(xb.delta(1, e).unwrap().value + k, zb.s());
                } else {
                    prop_assert_eq!(xb.delta(1, 1).unwrap().value, z1.s() + zb.s());
                }
            }
            Err(_) => prop_assert!(k > zb.s()),
        }
    }

    #[test]
    fn euler_change_per_move(aut in 1u32..6, def in 0u32..10, obs in 0u32..4) {
        // aut - def + obs changes by kernel minus cokernel summed with signs.
        let expected = [(Move::Ia, 0), (Move::Ib, -1), (Move::IIa, 1), (Move::IIb, 1), (Move::IIIa, -1), (Move::IIIb, -1)];
        let dims = DefDims::new(aut, def, obs);
        for (mv, delta) in expected {
            let (next, _) = ext_dimension_step(dims, mv).unwrap();
            prop_assert_eq!(next.euler() - dims.euler(), delta);
        }
    }

    #[test]
    fn euler_identity_and_constructions(m in 1usize..5, degs in prop::collection::vec(-2i64..4, 8), code in 0usize..64) {
        let trees = TreeCurve::all_trees(m);
        let curve = &trees[code % trees.len()];
        let rank2: Vec<Vec<i64>> = (0..m).map(|v| vec![degs[2 * v], degs[2 * v + 1]]).collect();
        let bundle = BundleData::with_identity_gluing(curve, rank2).unwrap();
        for b in [bundle.clone(), twist_canonical(curve, &bundle)] {
            let h = global_sections(curve, &b).unwrap();
            let chi: i64 = b.splitting().iter().flatten().map(|a| a + 1).sum::<i64>() - 2 * curve.nodes().len() as i64;
            prop_assert_eq!(h.h0 as i64 - h.h1 as i64, chi);
        }
        let l1 = BundleData::line_bundle(curve, &degs[..m]).unwrap();
        let l2 = BundleData::line_bundle(curve, &degs[m..2 * m]).unwrap();
        if is_deformation_ample(curve, &l1).unwrap() && is_deformation_ample(curve, &l2).unwrap() {
            prop_assert!(is_deformation_ample(curve, &direct_sum(curve, &l1, &l2).unwrap()).unwrap());
        }
        if is_deformation_ample(curve, &l1).unwrap() {
            for n in 1..=4 {
                prop_assert!(is_deformation_ample(curve, &tensor_power(curve, &l1, n).unwrap()).unwrap());
            }
        }
    }
}

#[test]
fn surfaces_lie_on_their_hypersurfaces() {
    for d in 2..=4 {
        let sc = build_quadric(d, d * d - 1).unwrap();
        assert!(sc.emb.pullback(&sc.f).unwrap().is_zero());
        let expected = BTreeSet::from([BiDegree::new(d as i64 - 1, d as i64 - 1)]);
        for (_, p) in partial_images(&sc.f, &sc.emb).unwrap() {
            assert!(p.is_zero() || p.bidegrees().unwrap() == expected);
        }
    }
    for d in 4..=5 {
        let sc = build_scroll(d, None, None).unwrap();
        assert!(sc.emb.pullback(&sc.f).unwrap().is_zero());
        let expected = BTreeSet::from([sc.system_degree()]);
        for (_, p) in partial_images(&sc.f, &sc.emb).unwrap() {
            assert!(p.is_zero() || p.bidegrees().unwrap() == expected);
        }
    }
}

use super::*;
use crate::dgla::tests_support::{ab_ext, build, heis3, heis3_ext, sl2, two_term};
use crate::dgla::{ce_dual_dgla, check_gla, shifted_tangent_dgla};
use crate::hopf::check_antipode_involution;
use crate::scalar::q;
use proptest::prelude::*;

fn t1_r2() -> DglaSpec {
    shifted_tangent_dgla(&build(&[("a", 0), ("b", 0)], &[], &[])).unwrap()
}

fn t1_heis3() -> DglaSpec {
    shifted_tangent_dgla(&heis3()).unwrap()
}

fn aff1() -> DglaSpec {
    build(&[("e1", 0), ("e2", 0)], &[("e1", "e2", &[("e2", 1)])], &[])
}

/// `X` of degree 0 acting on `B → C` in degree 1, with the inner differential `ad_B`.
fn inner_example() -> DglaSpec {
    build(&[("X", 0), ("B", 1), ("C", 1)], &[("X", "B", &[("C", 1)])], &[("X", &[("C", -1)])])
}

fn corpus() -> Vec<(&'static str, DglaSpec)> {
    vec![
        ("ab-ext", ab_ext()),
        ("heis3-ext", heis3_ext()),
        ("t1-r2", t1_r2()),
        ("t1-heis3", t1_heis3()),
        ("ce-sl2", ce_dual_dgla(&sl2()).unwrap()),
        ("ce-two-term", ce_dual_dgla(&two_term()).unwrap()),
    ]
}

fn element(p: &HarishChandraPair, s: &[&str], m: &[u32]) -> usize {
    let mut letters: Vec<usize> = s.iter().map(|n| p.spec().basis().index_of(n).unwrap()).collect();
    letters.sort();
    p.index_of(&PbwMonomial(letters), m).unwrap()
}

fn basis_vec(i: usize) -> Vector {
    [(i, Q::one())].into_iter().collect()
}

#[test]
fn exponent_enumeration() {
    assert_eq!(exponents_up_to(2, 1), vec![vec![0, 0], vec![1, 0], vec![0, 1]]);
    assert_eq!(exponents_up_to(0, 3), vec![Vec::<u32>::new()]);
    assert_eq!(exponents_up_to(3, 4).len(), 35);
}

#[test]
fn ab_ext_q_values() {
    let p = HarishChandraPair::new(&ab_ext(), 4).unwrap();
    let lambda = p.build_lambda();
    let b = p.spec().basis().index_of("b").unwrap();
    assert_eq!(lambda[b], Poly::var(1, 0).scale(&q(-1)));
    let qm = p.build_q(&lambda);
    let beta = element(&p, &["b"], &[0]);
    let x = element(&p, &[], &[1]);
    assert_eq!(qm.col_vector(beta), [(x, q(-1))].into_iter().collect::<Vector>());
    assert!(qm.col_vector(x).is_empty());
    assert_eq!(p.hopf().degree(beta), -1);
    let qq = p.hopf().compose(&qm, &qm);
    assert!(qq.is_zero());
}

#[test]
fn lambda_examples() {
    let p = HarishChandraPair::new(&inner_example(), 4).unwrap();
    let bi = p.spec().basis().index_of("B").unwrap();
    assert_eq!(p.build_lambda(), p.inner_lambda(bi));
    let r = p.lambda_report(&p.build_lambda(), p.spec().differential());
    assert!(r.all_pass(), "{r}");

    let p = HarishChandraPair::new(&heis3(), 4).unwrap();
    assert!(polyvec_is_zero(&p.build_lambda()));
    let qm = p.build_q(&p.build_lambda());
    assert!(qm.is_zero());

    let p = HarishChandraPair::new(&t1_heis3(), 4).unwrap();
    let lambda = p.build_lambda();
    assert!(polyvec_is_zero(&lambda));
    assert!(p.lambda_report(&lambda, p.spec().differential()).all_pass());
}

#[test]
fn lambda_laws_detect_a_wrong_cocycle() {
    let p = HarishChandraPair::new(&heis3_ext(), 4).unwrap();
    let mut lambda = p.build_lambda();
    let c = p.spec().basis().index_of("C").unwrap();
    let nv = p.n0();
    lambda[c] = &lambda[c] + &Poly::var(nv, 0).mul_trunc(&Poly::var(nv, 0), None);
    let r = p.lambda_report(&lambda, p.spec().differential());
    assert!(r.passed("lambda_unit"));
    assert!(!r.passed("lambda_cocycle"));
}

#[test]
fn reduce_evaluate_examples() {
    let p = HarishChandraPair::new(&heis3_ext(), 4).unwrap();
    let g = p.group().unwrap();
    let n0 = p.n0();
    let at: PolyVec = (0..n0).map(|i| Poly::var(n0, i)).collect();
    let x = p.spec().basis().index_of("X").unwrap();
    let b = p.spec().basis().index_of("B").unwrap();
    // f(1, g) = x_Y x_Z, f(B, g) = x_X
    let mut f = HFunction::default();
    f.values.insert(PbwMonomial::default(), Poly::monomial(n0, vec![0, 1, 1], Q::one()));
    f.values.insert(PbwMonomial(vec![b]), Poly::var(n0, 0));
    let one: PolyTerms = [(PbwMonomial::default(), Poly::one(n0))].into_iter().collect();
    assert_eq!(p.reduce_evaluate(&f, &one, &at), f.values[&PbwMonomial::default()]);

    let xr = g.right_invariant_vf(&g.g0.unit(x - p.fiber_count()));
    let ux: PolyTerms = [(PbwMonomial(vec![x]), Poly::one(n0))].into_iter().collect();
    assert_eq!(p.reduce_evaluate(&f, &ux, &at), vf_apply(&xr, &f.values[&PbwMonomial::default()]));

    // B·X is not PBW-sorted the other way round: X·B = B·X + C
    let mut xb = PolyTerms::new();
    for (u, c) in pbw_normal_form(p.spec(), &[x, b]) {
        xb.insert(u, Poly::constant(n0, c));
    }
    let direct = vf_apply(&xr, &f.values[&PbwMonomial(vec![b])]);
    assert_eq!(p.reduce_evaluate(&f, &xb, &at), direct);
}

#[test]
fn product_examples() {
    let p = HarishChandraPair::new(&heis3_ext(), 4).unwrap();
    let h = p.hopf();
    let unit = h.unit();
    for i in 0..h.dim() {
        assert_eq!(h.mul_basis(i, unit), basis_vec(i));
    }
    let bb = element(&p, &["B"], &[0, 0, 0]);
    let cc = element(&p, &["C"], &[0, 0, 0]);
    let bc = h.mul_basis(bb, cc);
    assert!(!bc.is_empty());
    assert_eq!(h.mul_basis(cc, bb), crate::grading::vec_scale(&bc, &q(-1)));
    assert!(h.mul_basis(bb, bb).is_empty());

    let f = p.to_function(&basis_vec(bb));
    let g = p.to_function(&basis_vec(cc));
    assert_eq!(p.from_function(&p.multiply(&f, &g)), bc);
}

#[test]
fn coproduct_of_coordinates_is_primitive_when_abelian() {
    let p = HarishChandraPair::new(&t1_r2(), 4).unwrap();
    let h = p.hopf();
    let unit = h.unit();
    for i in 0..h.dim() {
        if h.weight(i) != 1 {
            continue;
        }
        let expect: Tensor = [(vec![i, unit], Q::one()), (vec![unit, i], Q::one())].into_iter().collect();
        assert_eq!(h.data().coproduct[i], expect, "{}", h.label(i));
    }
}

#[test]
fn coproduct_sees_the_group_law() {
    let p = HarishChandraPair::new(&heis3_ext(), 4).unwrap();
    let h = p.hopf();
    // x_Z(g1 g2) = x_Z + x_Z' + (x_X y' − x_Y x')/2
    let z = element(&p, &[], &[0, 0, 1]);
    let x = element(&p, &[], &[1, 0, 0]);
    let y = element(&p, &[], &[0, 1, 0]);
    let cop = &h.data().coproduct[z];
    assert_eq!(cop.get(&vec![x, y]), Some(&crate::scalar::qr(1, 2)));
    assert_eq!(cop.get(&vec![y, x]), Some(&crate::scalar::qr(-1, 2)));
}

#[test]
fn hopf_axioms_on_corpus_pairs() {
    for (name, s) in corpus() {
        let p = HarishChandraPair::new(&s, 4).unwrap();
        let r = check_hopf_axioms(p.hopf().data());
        assert!(r.all_pass(), "{name}\n{r}");
        assert!(check_antipode_involution(p.hopf()).is_ok(), "{name}");
    }
}

#[test]
fn antipode_on_base_functions_is_group_inversion() {
    let p = HarishChandraPair::new(&heis3_ext(), 4).unwrap();
    let h = p.hopf();
    for (i, (s, m)) in p.basis().iter().enumerate() {
        if s.0.is_empty() {
            let sgn = if m.iter().sum::<u32>() % 2 == 0 { q(1) } else { q(-1) };
            assert_eq!(h.antipode(&basis_vec(i)), [(i, sgn)].into_iter().collect::<Vector>());
        }
    }
}

#[test]
fn pipeline_passes_on_corpus() {
    for (name, s) in corpus() {
        let res = integrate(&s, 4).unwrap();
        assert!(res.report.all_pass(), "{name}\n{}", res.report);
        assert_eq!(res.recovered, s, "{name}");
    }
}

#[test]
fn shifted_tangent_round_trip_has_identity_differential() {
    let res = integrate(&t1_heis3(), 4).unwrap();
    let r = &res.recovered;
    for i in 0..3 {
        let shifted = r.basis().index_of(&format!("{}[1]", r.basis().name(i))).unwrap();
        assert_eq!(r.d(&r.unit(shifted)), r.unit(i));
    }
}

#[test]
fn zero_differential_gives_zero_q() {
    let res = integrate(&heis3(), 4).unwrap();
    assert!(res.q.is_zero());
    assert!(!res.recovered.has_differential());
    assert!(res.report.all_pass(), "{}", res.report);
}

#[test]
fn extended_route_agrees_on_corpus() {
    for (name, s) in corpus() {
        let r = extended_route(&s, 4).unwrap();
        assert!(r.all_pass(), "{name}\n{r}");
    }
    assert!(extended_route(&inner_example(), 4).unwrap().all_pass());
}

#[test]
fn inner_formula_matches_outer_for_inner_differential() {
    let s = inner_example();
    let p = HarishChandraPair::new(&s, 4).unwrap();
    let bi = p.spec().basis().index_of("B").unwrap();
    assert_eq!(p.build_q(&p.build_lambda()), p.build_q_inner(bi));
}

#[test]
fn equivariance_sign_is_forced() {
    let p = HarishChandraPair::with_equivariance_sign(&t1_heis3(), 4, -1).unwrap();
    let r = q_report(p.hopf(), &p.build_q(&p.build_lambda()));
    assert!(!r.passed("Q_squared"));
    assert!(!r.passed("Q_multiplicative"));
}

#[test]
fn literal_sign_placement_breaks_leibniz() {
    let p = HarishChandraPair::new(&t1_r2(), 4).unwrap();
    let r = q_report(p.hopf(), &p.build_q_literal(&p.build_lambda()));
    assert!(!r.passed("Q_derivation"));
    let r = q_report(p.hopf(), &p.build_q(&p.build_lambda()));
    assert!(r.all_pass(), "{r}");
}

#[test]
fn formal_group_recovers_sl2() {
    let p = HarishChandraPair::formal(&sl2(), 3).unwrap();
    assert!(check_hopf_axioms(p.hopf().data()).all_pass());
    let duals: Vec<usize> = (0..3).map(|i| p.tangent_index(i)).collect();
    let zero = HMap::zero(p.hopf().dim(), 1, 1);
    let (rec, r) = dgla_of_group(p.hopf(), &zero, sl2().basis(), &duals);
    assert!(r.all_pass(), "{r}");
    assert_eq!(rec, sl2());
}

#[test]
fn non_nilpotent_base_is_rejected() {
    assert!(matches!(HarishChandraPair::new(&sl2(), 3), Err(HcpError::Group(_))));
    // degree-0 part abelian but acting by a scaling on a fiber direction
    let s = build(&[("a", 0), ("b", 1)], &[("a", "b", &[("b", 1)])], &[]);
    assert!(matches!(HarishChandraPair::new(&s, 3), Err(HcpError::NotNilpotentAction(_))));
}

#[test]
fn ce_aff1_example() {
    let ce = ce_group(&aff1(), 4).unwrap();
    let t1 = AlgebraElement::generator(&ce.basis, 0);
    let t2 = AlgebraElement::generator(&ce.basis, 1);
    assert!(apply_derivation(&ce.derivation, &t1).is_zero());
    let expect = t1.multiply(&t2).unwrap().scale(&q(-1));
    assert_eq!(apply_derivation(&ce.derivation, &t2).terms(), expect.terms());
    let r = ce_report(&ce);
    assert!(r.passed("hopf_axioms") && r.passed("Q_squared") && r.passed("Q_degree"), "{r}");
}

#[test]
fn ce_abelian_has_zero_q() {
    let ce = ce_group(&build(&[("a", 0), ("b", 0)], &[], &[]), 4).unwrap();
    assert!(ce.q.is_zero());
    assert!(ce_report(&ce).all_pass());
}

#[test]
fn ce_q_squared_matches_jacobi() {
    let broken = build(&[("h", 0), ("e", 0), ("f", 0)], &[("e", "f", &[("h", 1)]), ("h", "e", &[("e", 1)]), ("h", "f", &[("f", -2)])], &[]);
    for (s, ok) in [(sl2(), true), (broken, false), (heis3(), true), (t1_heis3(), true), (two_term(), true)] {
        let ce = ce_group(&s, 3).unwrap();
        let r = ce_report(&ce);
        assert_eq!(r.passed("Q_squared"), ok, "{r}");
        assert_eq!(check_gla(&s).passed("jacobi"), ok);
        assert!(r.passed("hopf_axioms"));
    }
}

#[test]
fn ce_q_is_multiplicative_only_when_abelian() {
    assert!(!ce_report(&ce_group(&sl2(), 3).unwrap()).passed("Q_multiplicative"));
    assert!(ce_report(&ce_group(&two_term(), 4).unwrap()).passed("Q_multiplicative"));
}

#[test]
fn ce_rejects_two_sided_grading() {
    let s = build(&[("u", -1), ("v", 1)], &[], &[]);
    assert_eq!(ce_group(&s, 3).unwrap_err(), HcpError::TwoSided);
}

/// `g[1]` with the shifted differential and zero bracket, the tangent
/// algebra of the CE group of an abelian `g`.
fn shifted(g: &DglaSpec) -> DglaSpec {
    let gens: Vec<(String, Degree)> = (0..g.dim()).map(|i| (format!("{}[1]", g.basis().name(i)), g.degree(i) - 1)).collect();
    DglaSpec::new(GradedBasis::new(gens).unwrap(), Vec::new(), g.differential().clone()).unwrap()
}

/// Diagonal map `e[s] ↦ κ_s θ^s` fixed by the products with single letters,
/// checked against every structure map.
fn check_ce_match(g: &DglaSpec, w: u32, with_q: bool) {
    let ce = ce_group(g, w).unwrap();
    let t = shifted(g);
    let p = HarishChandraPair::new(&t, w).unwrap();
    let (h1, h2) = (p.hopf(), &ce.hopf);
    assert_eq!(h1.dim(), h2.dim());
    let target: Vec<usize> = p
        .basis()
        .iter()
        .map(|(s, _)| {
            let word: Vec<usize> = s.0.iter().map(|&l| p.order()[l]).collect();
            let mut factors: Vec<(usize, u32)> = Vec::new();
            for x in word {
                match factors.last_mut() {
                    Some((y, e)) if *y == x => *e += 1,
                    _ => factors.push((x, 1)),
                }
            }
            ce.monomials.iter().position(|m| *m == Monomial::from_factors(factors.clone())).unwrap()
        })
        .collect();
    let mut kappa = vec![Q::zero(); h1.dim()];
    let mut order: Vec<usize> = (0..h1.dim()).collect();
    order.sort_by_key(|&i| h1.weight(i));
    for &i in &order {
        let s = &p.basis()[i].0;
        if s.0.len() <= 1 {
            kappa[i] = Q::one();
            continue;
        }
        let first = p.index_of(&PbwMonomial(vec![s.0[0]]), &[]).unwrap();
        let rest = p.index_of(&PbwMonomial(s.0[1..].to_vec()), &[]).unwrap();
        let prod1 = h1.mul_basis(first, rest);
        let prod2 = h2.mul_basis(target[first], target[rest]);
        let c1 = prod1[&i].clone();
        let c2 = prod2[&target[i]].clone();
        kappa[i] = &kappa[first] * &kappa[rest] * c2 / c1;
    }
    let phi = |v: &Vector| -> Vector { v.iter().map(|(i, c)| (target[*i], c * &kappa[*i])).collect() };
    for i in 0..h1.dim() {
        for j in 0..h1.dim() {
            assert_eq!(phi(&h1.mul_basis(i, j)), h2.mul(&phi(&basis_vec(i)), &phi(&basis_vec(j))));
        }
        let c1: Tensor = h1.data().coproduct[i]
            .iter()
            .map(|(k, c)| (vec![target[k[0]], target[k[1]]], c * &kappa[k[0]] * &kappa[k[1]]))
            .collect();
        assert_eq!(h2.coproduct(&phi(&basis_vec(i))), c1);
        assert_eq!(phi(&h1.antipode(&basis_vec(i))), h2.antipode(&phi(&basis_vec(i))));
    }
    if with_q {
        let q1 = p.build_q(&p.build_lambda());
        for i in 0..h1.dim() {
            let lhs = phi(&q1.col_vector(i));
            let rhs: Vector = crate::grading::vec_scale(&ce.q.col_vector(target[i]), &kappa[i]);
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn ce_matches_point_base_pair() {
    check_ce_match(&two_term(), 4, true);
    check_ce_match(&build(&[("a", 0), ("b", 0)], &[], &[]), 4, true);
    check_ce_match(&sl2(), 3, false);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    /// Two-term complexes `u_i → v_j` (degrees −1, 0) with random differential.
    #[test]
    fn random_two_term_round_trip(m in proptest::collection::vec(-2i64..3, 4)) {
        let diff: Vec<(usize, Vector)> = (0..2)
            .map(|i| (i, (0..2).map(|j| (2 + j, q(m[2 * i + j]))).filter(|(_, c)| !c.is_zero()).collect::<Vector>()))
            .collect();
        let b = GradedBasis::new(vec![("u1".into(), -1), ("u2".into(), -1), ("v1".into(), 0), ("v2".into(), 0)]).unwrap();
        let spec = DglaSpec::new(b, Vec::new(), GradedLinearMap { degree: 1, images: diff.into_iter().collect() }.normalized()).unwrap();
        let res = integrate(&spec, 3).unwrap();
        prop_assert!(res.report.all_pass(), "{}", res.report);
        prop_assert!(extended_route(&spec, 3).unwrap().all_pass());
    }
}

use super::*;
use crate::dgla::tests_support::{heis3, sl2};
use crate::grading::GradedBasis;
use crate::linalg::{mat_mul, zeros, Matrix};
use crate::scalar::qr;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn filiform4() -> DglaSpec {
    // [X1, X2] = X3, [X1, X3] = X4: class 3
    let b = GradedBasis::new((1..=4).map(|i| (format!("X{i}"), 0)).collect()).unwrap();
    let v = |i: usize| -> Vector { [(i, Q::one())].into_iter().collect() };
    DglaSpec::new(b, vec![((0, 1), v(2)), ((0, 2), v(3))], GradedLinearMap::zero(1)).unwrap()
}

fn abelian(n: usize) -> DglaSpec {
    DglaSpec::abelian(GradedBasis::new((0..n).map(|i| (format!("a{i}"), 0)).collect()).unwrap())
}

fn mat_exp(a: &Matrix) -> Matrix {
    let n = a.len();
    let mut out = crate::linalg::identity(n);
    let mut term = crate::linalg::identity(n);
    for k in 1..=n {
        term = mat_mul(&term, a);
        let f = Q::one() / factorial(k as u32);
        for i in 0..n {
            for j in 0..n {
                out[i][j] += &term[i][j] * &f;
            }
        }
    }
    out
}

fn mat_log_unipotent(m: &Matrix) -> Matrix {
    let n = m.len();
    let mut t = m.clone();
    for (i, row) in t.iter_mut().enumerate() {
        row[i] -= Q::one();
    }
    let mut out = zeros(n, n);
    let mut power = crate::linalg::identity(n);
    for k in 1..=n {
        power = mat_mul(&power, &t);
        let c = if k % 2 == 1 { Q::one() } else { -Q::one() } / q(k as i64);
        for i in 0..n {
            for j in 0..n {
                out[i][j] += &power[i][j] * &c;
            }
        }
    }
    out
}

fn commutator(a: &Matrix, b: &Matrix) -> Matrix {
    let ab = mat_mul(a, b);
    let ba = mat_mul(b, a);
    ab.iter().zip(&ba).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x - y).collect()).collect()
}

fn random_strict_upper(rng: &mut ChaCha8Rng, n: usize) -> Matrix {
    let mut m = zeros(n, n);
    for i in 0..n {
        for j in i + 1..n {
            m[i][j] = qr(rng.random_range(-3..=3), rng.random_range(1..=3));
        }
    }
    m
}

#[test]
fn bch_coefficients_match_matrix_oracle() {
    // strictly upper triangular 7×7 matrices form a class-6 nilpotent algebra
    let terms = bch_terms(6);
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..3 {
        let a = random_strict_upper(&mut rng, 7);
        let b = random_strict_upper(&mut rng, 7);
        let expect = mat_log_unipotent(&mat_mul(&mat_exp(&a), &mat_exp(&b)));
        let mut z = zeros(7, 7);
        for (c, w) in &terms {
            let mut m = if *w.last().unwrap() == 0 { a.clone() } else { b.clone() };
            for &l in w.iter().rev().skip(1) {
                m = commutator(if l == 0 { &a } else { &b }, &m);
            }
            for i in 0..7 {
                for j in 0..7 {
                    z[i][j] += &m[i][j] * c;
                }
            }
        }
        assert_eq!(z, expect);
    }
}

#[test]
fn bch_low_order_terms() {
    let t: BTreeMap<Vec<u8>, Q> = bch_terms(3).into_iter().map(|(c, w)| (w, c)).collect();
    assert_eq!(t[&vec![0u8]], q(1));
    assert_eq!(t[&vec![1u8]], q(1));
    // ½[X,Y] arrives as ¼[X,Y] − ¼[Y,X]
    let xy = t.get(&vec![0u8, 1]).cloned().unwrap_or_else(Q::zero) - t.get(&vec![1u8, 0]).cloned().unwrap_or_else(Q::zero);
    assert_eq!(xy, qr(1, 2));
}

#[test]
fn class_detection() {
    assert_eq!(nilpotency_class(&abelian(2), 6), Some(1));
    assert_eq!(nilpotency_class(&heis3(), 6), Some(2));
    assert_eq!(nilpotency_class(&filiform4(), 6), Some(3));
    assert_eq!(nilpotency_class(&sl2(), 6), None);
    assert!(matches!(NilpotentGroup::new(sl2()), Err(NilError::ClassTooLarge(6))));
    assert!(matches!(
        NilpotentGroup::with_declared_class(heis3(), 3),
        Err(NilError::ClassMismatch { declared: 3, actual: 2 })
    ));
}

#[test]
fn bch_examples() {
    let g = NilpotentGroup::new(abelian(2)).unwrap();
    let (x, y) = (g.point(4, 0), g.point(4, 2));
    assert_eq!(g.bch(&x, &y), polyvec_add(&x, &y));
    let h = NilpotentGroup::new(heis3()).unwrap();
    let (x, y) = (h.point(6, 0), h.point(6, 3));
    let z = h.bch(&x, &y);
    let expect = &(&x[2] + &y[2]) + &(&(&x[0] * &y[1]) - &(&x[1] * &y[0])).scale(&qr(1, 2));
    assert_eq!(z[2], expect);
    assert!(polyvec_is_zero(&h.bch(&x, &h.inverse(&x))));
}

#[test]
fn bch_is_associative() {
    for spec in [heis3(), filiform4()] {
        let g = NilpotentGroup::new(spec).unwrap();
        let d = g.dim();
        let (x, y, z) = (g.point(3 * d, 0), g.point(3 * d, d), g.point(3 * d, 2 * d));
        assert_eq!(g.bch(&g.bch(&x, &y), &z), g.bch(&x, &g.bch(&y, &z)));
    }
}

#[test]
fn adjoint_examples() {
    let g = NilpotentGroup::new(abelian(2)).unwrap();
    let x = g.point(2, 0);
    let v: PolyVec = vec![Poly::var(2, 1), Poly::one(2)];
    assert_eq!(g.ad_exp(&x, &v), v);
    let h = NilpotentGroup::new(heis3()).unwrap();
    let t = Poly::var(1, 0);
    let tx = vec![t.clone(), Poly::zero(1), Poly::zero(1)];
    let y = vec![Poly::zero(1), Poly::one(1), Poly::zero(1)];
    assert_eq!(h.ad_exp(&tx, &y), vec![Poly::zero(1), Poly::one(1), t]);
    for spec in [heis3(), filiform4()] {
        let g = NilpotentGroup::new(spec).unwrap();
        let d = g.dim();
        let (x, y, v) = (g.point(3 * d, 0), g.point(3 * d, d), g.point(3 * d, 2 * d));
        assert_eq!(g.ad_exp(&g.bch(&x, &y), &v), g.ad_exp(&x, &g.ad_exp(&y, &v)));
    }
}

#[test]
fn invariant_fields() {
    let g = NilpotentGroup::new(abelian(2)).unwrap();
    let xr = g.right_invariant_vf(&[(0, Q::one())].into_iter().collect());
    assert_eq!(xr, vec![Poly::one(2), Poly::zero(2)]);
    let h = NilpotentGroup::new(heis3()).unwrap();
    let xr = h.right_invariant_vf(&[(0, Q::one())].into_iter().collect());
    assert_eq!(xr[2], Poly::var(3, 1).scale(&qr(1, 2)));
    for spec in [heis3(), filiform4()] {
        let g = NilpotentGroup::new(spec).unwrap();
        for i in 0..g.dim() {
            for j in 0..g.dim() {
                let (a, b) = (g.g0.unit(i), g.g0.unit(j));
                let br = vf_bracket(&g.right_invariant_vf(&a), &g.right_invariant_vf(&b));
                let expect = polyvec_scale(&g.right_invariant_vf(&g.g0.bracket(i, j)), &-Q::one());
                assert_eq!(br, expect);
                let bl = vf_bracket(&g.left_invariant_vf(&a), &g.left_invariant_vf(&b));
                assert_eq!(bl, g.left_invariant_vf(&g.g0.bracket(i, j)));
            }
        }
    }
}

#[test]
fn coboundaries_are_cocycles() {
    for spec in [abelian(2), heis3(), filiform4()] {
        let g = NilpotentGroup::new(spec).unwrap();
        let a: Vector = (0..g.dim()).map(|i| (i, q(i as i64 + 1))).collect();
        let c0 = GroupCochain::constant(&g, &a);
        let da = group_coboundary(&g, &c0);
        let x = g.point(g.dim(), 0);
        assert_eq!(da.values, polyvec_sub(&g.ad_exp(&x, &c0.eval_at_const(g.dim())), &c0.eval_at_const(g.dim())));
        assert!(group_coboundary(&g, &da).is_zero());
    }
}

fn grading_derivation() -> GradedLinearMap {
    let mut d = GradedLinearMap::zero(0);
    d.images.insert(0, [(0, q(1))].into_iter().collect());
    d.images.insert(1, [(1, q(1))].into_iter().collect());
    d.images.insert(2, [(2, q(2))].into_iter().collect());
    d
}

#[test]
fn van_est_round_trip() {
    let g = NilpotentGroup::new(heis3()).unwrap();
    let delta = grading_derivation();
    let xi = van_est_integrate(&g, &delta).unwrap();
    assert!(group_coboundary(&g, &xi).is_zero());
    assert_eq!(van_est_differentiate(&g, &xi).unwrap(), delta);
    // abelian: ξ(exp W) = δW
    let a = NilpotentGroup::new(abelian(2)).unwrap();
    let mut d = GradedLinearMap::zero(0);
    d.images.insert(0, [(1, q(3))].into_iter().collect());
    let xi = van_est_integrate(&a, &d).unwrap();
    assert_eq!(xi.values, vec![Poly::zero(2), Poly::var(2, 0).scale(&q(3))]);
    // ξ = 0 gives δ = 0
    let zero = GroupCochain { n: 1, values: vec![Poly::zero(3); 3] };
    assert!(van_est_differentiate(&g, &zero).unwrap().is_zero());
}

#[test]
fn van_est_of_inner_derivation_is_a_coboundary() {
    let g = NilpotentGroup::new(filiform4()).unwrap();
    let a: Vector = [(0, q(1)), (1, q(2))].into_iter().collect();
    let delta = crate::dgla::adjoint(&g.g0, &a);
    let xi = van_est_integrate(&g, &delta).unwrap();
    let neg_a: Vector = a.iter().map(|(i, c)| (*i, -c.clone())).collect();
    assert_eq!(xi, group_coboundary(&g, &GroupCochain::constant(&g, &neg_a)));
}

#[test]
fn van_est_rejections() {
    let g = NilpotentGroup::new(heis3()).unwrap();
    let ident = GroupCochain { n: 1, values: g.point(3, 0) };
    assert!(matches!(van_est_differentiate(&g, &ident), Err(NilError::NotCocycle(w)) if w.starts_with("g = (")));
    let mut bad = GradedLinearMap::zero(0);
    bad.images.insert(2, [(0, q(1))].into_iter().collect());
    assert!(matches!(van_est_integrate(&g, &bad), Err(NilError::NotDerivation(_))));
}

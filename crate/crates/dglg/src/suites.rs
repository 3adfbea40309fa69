//! Named property suites over one algebra. Randomized checks draw from a
//! ChaCha stream with a fixed seed, so reports are reproducible.

use std::collections::BTreeSet;
use std::sync::Arc;

use dglg_core::dgla::{check_gla, jacobi_failures, DglaSpec};
use dglg_core::gca::{apply_derivation, monomials_up_to, monomials_of_weight, AlgebraDerivation, AlgebraElement};
use dglg_core::grading::{add_entry, koszul_sign, Degree, GradedBasis, GradedLinearMap, Vector};
use dglg_core::hcp::{ce_group, ce_report, CeGroup, HarishChandraPair};
use dglg_core::hopf::{
    check_derivation, check_hopf_axioms, check_unit_derivation_valued, coface, cochain_differential, dual_of,
    is_group_one_cocycle, is_left_invariant, is_multiplicative, is_right_invariant, left_translate, mc_n, mc_right,
    mc_right_inverse, right_translate, value_at_unit, Bicomodule, HMap, TruncatedHopf,
};
use dglg_core::linalg::rref;
use dglg_core::nilgroup::{group_coboundary, van_est_differentiate, van_est_integrate, NilpotentGroup};
use dglg_core::report::Report;
use dglg_core::scalar::{q, sign, Q};
use dglg_core::uea::{pbw_monomials, pbw_normal_form, rewrite_normal_form, Uea};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const SEED: u64 = 0x5eed;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    /// Graded commutativity, associativity and Leibniz in the free graded-commutative algebra.
    Gca,
    /// PBW rewriting confluence and weight dimensions.
    Pbw,
    /// Hopf axioms of U(g), its dual, the CE group and the integrated pair.
    Hopf,
    /// Translations, multiplicative fields, Maurer-Cartan maps and cofaces on the dual of U(g).
    Translations,
    /// Van Est integration of random derivations.
    Vanest,
    /// Jacobi identity against CE `Q² = 0`, with a mutated variant.
    Jacobi,
}

pub fn run(suite: Suite, spec: &DglaSpec, w: u32) -> Report {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    match suite {
        Suite::Gca => gca_suite(spec, 200, &mut rng),
        Suite::Pbw => pbw_suite(spec, 500, &mut rng),
        Suite::Hopf => hopf_suite(spec, w),
        Suite::Translations => translations_suite(spec, w, &mut rng),
        Suite::Vanest => vanest_suite(spec, 3, &mut rng),
        Suite::Jacobi => jacobi_suite(spec, w),
    }
}

fn degrees_up_to(basis: &GradedBasis, w: u32) -> Vec<Degree> {
    let set: BTreeSet<Degree> = monomials_up_to(basis, w).iter().map(|m| m.degree(basis)).collect();
    set.into_iter().collect()
}

/// Random homogeneous element of degree `deg` and weight ≤ `w`, small integer coefficients.
pub fn random_element(basis: &Arc<GradedBasis>, rng: &mut ChaCha8Rng, deg: Degree, w: u32) -> AlgebraElement {
    let mut e = AlgebraElement::zero(basis);
    for m in monomials_up_to(basis, w) {
        if m.degree(basis) == deg && rng.random_range(0..3) == 0 {
            e.add_term(m, q(rng.random_range(-3..=3)));
        }
    }
    e
}

fn random_derivation(basis: &Arc<GradedBasis>, rng: &mut ChaCha8Rng, deg: Degree) -> AlgebraDerivation {
    let mut d = AlgebraDerivation::new(deg);
    for i in 0..basis.len() {
        let v = random_element(basis, rng, basis.degree(i) + deg, 2);
        if !v.is_zero() {
            d.set(i, v);
        }
    }
    d
}

fn first_failure(n: usize, mut check: impl FnMut() -> Result<(), String>) -> Result<(), String> {
    for k in 0..n {
        check().map_err(|w| format!("sample {k}: {w}"))?;
    }
    Ok(())
}

/// `n` random checks per law on the generators of `spec` taken as a graded
/// basis of `S(V)`, elements of weight ≤ 2.
pub fn gca_suite(spec: &DglaSpec, n: usize, rng: &mut ChaCha8Rng) -> Report {
    let basis = spec.basis().clone();
    let degs = degrees_up_to(&basis, 2);
    let pick = |rng: &mut ChaCha8Rng| degs[rng.random_range(0..degs.len())];
    let mut r = Report::new();
    r.record(
        "graded_commutativity",
        first_failure(n, || {
            let (da, db) = (pick(rng), pick(rng));
            let a = random_element(&basis, rng, da, 2);
            let b = random_element(&basis, rng, db, 2);
            let ab = a.multiply(&b).expect("same basis");
            let ba = b.multiply(&a).expect("same basis").scale(&sign(koszul_sign(da, db)));
            if ab == ba { Ok(()) } else { Err(format!("a = {}, b = {}", a.render(), b.render())) }
        }),
    );
    r.record(
        "associativity",
        first_failure(n, || {
            let e: Vec<AlgebraElement> = (0..3).map(|_| { let d = pick(rng); random_element(&basis, rng, d, 2) }).collect();
            let l = e[0].multiply(&e[1]).and_then(|x| x.multiply(&e[2])).expect("same basis");
            let rr = e[1].multiply(&e[2]).and_then(|x| e[0].multiply(&x)).expect("same basis");
            if l == rr { Ok(()) } else { Err(format!("{} | {} | {}", e[0].render(), e[1].render(), e[2].render())) }
        }),
    );
    r.record(
        "leibniz",
        first_failure(n, || {
            let dd = rng.random_range(-1..=1);
            let d = random_derivation(&basis, rng, dd);
            let (da, db) = (pick(rng), pick(rng));
            let a = random_element(&basis, rng, da, 2);
            let b = random_element(&basis, rng, db, 2);
            let lhs = apply_derivation(&d, &a.multiply(&b).expect("same basis"));
            let t1 = apply_derivation(&d, &a).multiply(&b).expect("same basis");
            let t2 = a.multiply(&apply_derivation(&d, &b)).expect("same basis").scale(&sign(koszul_sign(dd, da)));
            let rhs = t1.add(&t2).expect("same basis");
            if lhs == rhs { Ok(()) } else { Err(format!("degree {dd} derivation, a = {}, b = {}", a.render(), b.render())) }
        }),
    );
    r
}

/// Normal form against randomized rewriting and split multiplication on `n`
/// random words of length ≤ 5, plus PBW dimensions for weights ≤ 4.
pub fn pbw_suite(spec: &DglaSpec, n: usize, rng: &mut ChaCha8Rng) -> Report {
    let mut r = Report::new();
    let dim = spec.dim();
    let uea = Uea::new(spec.clone(), 5);
    let mut confluence = Ok(());
    let mut assoc = Ok(());
    for _ in 0..n {
        let len = rng.random_range(0..=5);
        let word: Vec<usize> = (0..len).map(|_| rng.random_range(0..dim)).collect();
        let nf = pbw_normal_form(spec, &word);
        let show = |w: &[usize]| -> String { w.iter().map(|&i| spec.basis().name(i)).collect::<Vec<_>>().join(" ") };
        if confluence.is_ok() && nf != rewrite_normal_form(spec, &word, &mut |k| rng.random_range(0..k)) {
            confluence = Err(show(&word));
        }
        let cut = rng.random_range(0..=len);
        let prod = uea.multiply(&uea.pbw_normal_form(&word[..cut]), &uea.pbw_normal_form(&word[cut..])).expect("same algebra");
        if assoc.is_ok() && prod.terms != nf {
            assoc = Err(format!("({}) ({})", show(&word[..cut]), show(&word[cut..])));
        }
    }
    r.record("confluence", confluence);
    r.record("split_product", assoc);
    let mut dims = Ok(());
    for w in 0..=4 {
        let a = pbw_monomials(spec, w).iter().filter(|m| m.weight() == w).count();
        let b = monomials_of_weight(spec.basis(), w).len();
        if a != b {
            dims = Err(format!("weight {w}: {a} PBW monomials, {b} symmetric"));
            break;
        }
    }
    r.record("pbw_dimension", dims);
    r
}

/// Seven axiom groups for `U(g)`, its dual, the CE group when the grading is
/// one-sided and the integrated pair when `g_0` is nilpotent.
pub fn hopf_suite(spec: &DglaSpec, w: u32) -> Report {
    let mut r = Report::new();
    let data = Uea::new(spec.clone(), w).hopf_data();
    r.extend_prefixed("enveloping", check_hopf_axioms(&data));
    r.extend_prefixed("dual", check_hopf_axioms(&dual_of(&data)));
    if let Ok(ce) = ce_group(spec, w) {
        r.extend_prefixed("ce_group", check_hopf_axioms(ce.hopf.data()));
    }
    if let Ok(p) = HarishChandraPair::new(spec, w) {
        r.extend_prefixed("pair", check_hopf_axioms(p.hopf().data()));
    }
    r
}

fn point_derivations(h: &TruncatedHopf) -> Vec<HMap> {
    (0..h.dim())
        .filter(|&i| h.weight(i) == 1)
        .map(|i| {
            let mut vals = vec![Q::from_integer(0.into()); h.dim()];
            vals[i] = q(1);
            HMap::from_scalars(-h.degree(i), vals)
        })
        .collect()
}

/// Degree-0 map that does not lower weight (rank 0: supported in weight ≤ 1).
pub fn random_map(h: &TruncatedHopf, rng: &mut ChaCha8Rng, rank: usize) -> HMap {
    let mut m = HMap::zero(h.dim(), rank, 0);
    let targets: Vec<Vec<usize>> = match rank {
        0 => vec![vec![]],
        1 => (0..h.dim()).map(|j| vec![j]).collect(),
        _ => (0..h.dim()).flat_map(|a| (0..h.dim()).map(move |b| vec![a, b])).collect(),
    };
    for i in 0..h.dim() {
        for k in &targets {
            let ok = if rank == 0 {
                h.degree(i) == 0 && h.weight(i) <= 1
            } else {
                h.key_degree(k) == h.degree(i) && h.key_weight(k) >= h.weight(i)
            };
            if ok && rng.random_range(0..4) == 0 {
                add_entry(&mut m.cols[i], k.clone(), q(rng.random_range(-3..=3)));
            }
        }
    }
    m
}

fn all(items: impl IntoIterator<Item = (String, Result<(), String>)>) -> Result<(), String> {
    for (what, res) in items {
        res.map_err(|w| format!("{what}: {w}"))?;
    }
    Ok(())
}

/// Instance checks on the dual of `U(g)`: translation round trip and
/// invariance, left/right supercommutation, multiplicativity of
/// `id⋆v − v⋆id` with `X_e = 0` and `S∘X = X∘S`, Maurer-Cartan bijections and
/// cocycles, `δ² = 0` on the coface complex and the interchange identity for
/// cochains of rank ≤ 1.
pub fn translations_suite(spec: &DglaSpec, w: u32, rng: &mut ChaCha8Rng) -> Report {
    let mut r = Report::new();
    let h = match TruncatedHopf::new(dual_of(&Uea::new(spec.clone(), w).hopf_data())) {
        Ok(h) => h,
        Err(e) => {
            r.fail("dual", e.to_string());
            return r;
        }
    };
    let vs = point_derivations(&h);
    let label = |v: &HMap| -> String {
        let i = (0..h.dim()).find(|&i| !v.scalar(i).eq(&q(0))).unwrap_or(0);
        h.label(i).to_string()
    };
    let mut lefts = Vec::new();
    let mut rights = Vec::new();
    let mut round = Vec::new();
    for v in &vs {
        let (l, rt) = match (left_translate(&h, v), right_translate(&h, v)) {
            (Ok(l), Ok(rt)) => (l, rt),
            (Err(e), _) | (_, Err(e)) => {
                round.push((label(v), Err(e.to_string())));
                continue;
            }
        };
        round.push((label(v), h.maps_agree(&value_at_unit(&h, &l), v, 1)));
        round.push((label(v), check_derivation(&h, &l, 1)));
        round.push((label(v), is_left_invariant(&h, &l, 1)));
        round.push((label(v), is_right_invariant(&h, &rt, 1)));
        lefts.push(l);
        rights.push(rt);
    }
    r.record("left_translate_round_trip", all(round));

    let mut comm = Vec::new();
    for (a, l) in vs.iter().zip(&lefts) {
        for (b, rt) in vs.iter().zip(&rights) {
            let lr = h.compose(l, rt);
            let rl = h.compose(rt, l).scale(&sign(koszul_sign(a.degree, b.degree)));
            comm.push((format!("{} {}", label(a), label(b)), h.maps_agree(&lr, &rl, 2)));
        }
    }
    r.record("left_right_supercommute", all(comm));

    let mut mult = Vec::new();
    let mut cocycle = Vec::new();
    for ((v, l), rt) in vs.iter().zip(&lefts).zip(&rights) {
        let x = l.sub(rt);
        mult.push((label(v), is_multiplicative(&h, &x, 1)));
        let xi = mc_right(&h, &x);
        cocycle.push((label(v), is_group_one_cocycle(&h, &xi, 1)));
        cocycle.push((label(v), is_multiplicative(&h, &mc_right_inverse(&h, &xi), 1)));
        cocycle.push((label(v), check_unit_derivation_valued(&h, &mc_right(&h, l), 1)));
    }
    r.record("exact_fields_multiplicative", all(mult));
    r.record("mc_multiplicative_to_cocycle", all(cocycle));

    let mut bij = Vec::new();
    for k in 0..3 {
        let a = random_map(&h, rng, 1);
        bij.push((format!("sample {k}"), h.maps_agree(&mc_right_inverse(&h, &mc_right(&h, &a)), &a, 0)));
        bij.push((format!("sample {k}"), h.maps_agree(&mc_right(&h, &mc_right_inverse(&h, &a)), &a, 0)));
    }
    r.record("mc_bijection", all(bij));

    let mut dd = Vec::new();
    let mut inter = Vec::new();
    for rank in 0..=1 {
        let mut c = random_map(&h, rng, rank);
        while c.is_zero() {
            c = random_map(&h, rng, rank);
        }
        // a rank-0 cochain supported in weight 1 leaks one weight per application
        let k = if rank == 0 { 2 } else { 0 };
        for st in [Bicomodule::Standard, Bicomodule::Twisted] {
            let res = cochain_differential(&h, st, &c)
                .and_then(|d| cochain_differential(&h, st, &d))
                .map_err(|e| e.to_string())
                .and_then(|d2| h.maps_agree(&d2, &HMap::zero(h.dim(), rank + 2, 0), k));
            dd.push((format!("rank {rank} {st:?}"), res));
        }
        let wc = mc_n(&h, &c);
        for i in 0..=rank + 1 {
            let res = coface(&h, Bicomodule::Standard, &c, i)
                .and_then(|f| coface(&h, Bicomodule::Twisted, &wc, i).map(|g| (f, g)))
                .map_err(|e| e.to_string())
                .and_then(|(f, g)| h.maps_agree(&mc_n(&h, &f), &g, k));
            inter.push((format!("rank {rank} face {i}"), res));
        }
    }
    r.record("coface_square_zero", all(dd));
    r.record("mc_interchange", all(inter));
    r
}

/// Basis of the derivations of a degree-0 Lie algebra, as a null space.
pub fn derivation_basis(spec: &DglaSpec) -> Vec<GradedLinearMap> {
    let n = spec.dim();
    // unknown a_{k i}: component k of δ(e_i), column k*n + i
    let col = |k: usize, i: usize| k * n + i;
    let mut rows: Vec<Vec<Q>> = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            for k in 0..n {
                let mut row = vec![q(0); n * n];
                // δ[e_i, e_j]
                for (m, c) in spec.bracket(i, j) {
                    row[col(k, m)] += c;
                }
                // − [δe_i, e_j] − [e_i, δe_j]
                for m in 0..n {
                    if let Some(c) = spec.bracket(m, j).get(&k) {
                        row[col(m, i)] -= c;
                    }
                    if let Some(c) = spec.bracket(i, m).get(&k) {
                        row[col(m, j)] -= c;
                    }
                }
                rows.push(row);
            }
        }
    }
    let pivots = if rows.is_empty() { Vec::new() } else { rref(&mut rows) };
    let free: Vec<usize> = (0..n * n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut sol = vec![q(0); n * n];
            sol[f] = q(1);
            for (r, &p) in pivots.iter().enumerate() {
                sol[p] = -rows[r][f].clone();
            }
            let mut m = GradedLinearMap::zero(0);
            for i in 0..n {
                let img: Vector = (0..n).map(|k| (k, sol[col(k, i)].clone())).filter(|(_, c)| *c != q(0)).collect();
                if !img.is_empty() {
                    m.images.insert(i, img);
                }
            }
            m
        })
        .collect()
}

/// Random nonzero integer combination of the derivation basis.
pub fn random_derivation_of(spec: &DglaSpec, rng: &mut ChaCha8Rng) -> Option<GradedLinearMap> {
    let basis = derivation_basis(spec);
    if basis.is_empty() {
        return None;
    }
    loop {
        let mut m = GradedLinearMap::zero(0);
        for b in &basis {
            let c = q(rng.random_range(-2..=2));
            for (i, v) in &b.images {
                let img = m.images.entry(*i).or_default();
                for (k, x) in v {
                    add_entry(img, *k, x * &c);
                }
            }
        }
        let m = m.normalized();
        if !m.is_zero() {
            return Some(m);
        }
    }
}

/// Integrates `delta` to a group 1-cocycle, checks the cocycle equation
/// symbolically and differentiates back.
pub fn vanest_report(g: &NilpotentGroup, delta: &GradedLinearMap) -> Report {
    let mut r = Report::new();
    let xi = match van_est_integrate(g, delta) {
        Ok(xi) => xi,
        Err(e) => {
            r.fail("derivation", e.to_string());
            return r;
        }
    };
    r.pass("derivation");
    let unit = xi.values.iter().position(|p| p.constant_term() != q(0));
    r.record("unit", unit.map_or(Ok(()), |i| Err(g.g0.basis().name(i).to_string())));
    let d = group_coboundary(g, &xi);
    r.record("cocycle", if d.is_zero() { Ok(()) } else { Err("nonzero coboundary".into()) });
    r.record(
        "round_trip",
        match van_est_differentiate(g, &xi) {
            Ok(back) if back == delta.clone().normalized() => Ok(()),
            Ok(back) => {
                let i = (0..g.dim()).find(|&i| back.image(i) != delta.image(i)).unwrap_or(0);
                Err(format!("differs on {}", g.g0.basis().name(i)))
            }
            Err(e) => Err(e.to_string()),
        },
    );
    r
}

pub fn vanest_suite(spec: &DglaSpec, count: usize, rng: &mut ChaCha8Rng) -> Report {
    let mut r = Report::new();
    let g = match NilpotentGroup::new(spec.clone()) {
        Ok(g) => g,
        Err(e) => {
            r.fail("group", e.to_string());
            return r;
        }
    };
    for k in 0..count {
        match random_derivation_of(spec, rng) {
            Some(delta) => r.extend_prefixed(&format!("derivation_{k}"), vanest_report(&g, &delta)),
            None => r.fail(&format!("derivation_{k}"), "no nonzero derivations"),
        }
    }
    r
}

/// `(sorted letters, target generator)` for every nonzero term of `Q²θ`.
pub fn ce_square_terms(ce: &CeGroup) -> BTreeSet<(Vec<usize>, usize)> {
    let mut out = BTreeSet::new();
    for i in 0..ce.basis.len() {
        let t = AlgebraElement::generator(&ce.basis, i);
        let qq = apply_derivation(&ce.derivation, &apply_derivation(&ce.derivation, &t));
        for m in qq.terms().keys() {
            out.insert((m.word(), i));
        }
    }
    out
}

/// `(sorted letters, component)` for every nonzero defect of the DGLA
/// axioms: Jacobiators on triples, the Leibniz rule of `∂` on pairs and `∂²`
/// on single generators. These are the terms of `Q_CE²` on the generators.
pub fn dgla_defects(spec: &DglaSpec) -> BTreeSet<(Vec<usize>, usize)> {
    let mut out = BTreeSet::new();
    for ((i, j, k), res) in jacobi_failures(spec) {
        for c in res.keys() {
            out.insert((vec![i, j, k], *c));
        }
    }
    let n = spec.dim();
    for i in 0..n {
        for j in i..n {
            let (x, y) = (spec.unit(i), spec.unit(j));
            let mut res = spec.d(&spec.bracket(i, j));
            let t1 = spec.bracket_vec(&spec.d(&x), &y);
            let t2 = spec.bracket_vec(&x, &spec.d(&y));
            for (k, c) in t1 {
                add_entry(&mut res, k, -c);
            }
            let s = if spec.basis().is_odd(i) { q(1) } else { q(-1) };
            for (k, c) in t2 {
                add_entry(&mut res, k, c * &s);
            }
            for c in res.keys() {
                out.insert((vec![i, j], *c));
            }
        }
        for c in spec.d(&spec.d(&spec.unit(i))).keys() {
            out.insert((vec![i], *c));
        }
    }
    out
}

fn render_terms(spec: &DglaSpec, terms: &BTreeSet<(Vec<usize>, usize)>) -> String {
    let b = spec.basis();
    let parts: Vec<String> = terms
        .iter()
        .map(|(w, c)| {
            let names: Vec<&str> = w.iter().map(|&i| b.name(i)).collect();
            format!("({}) -> {}", names.join(", "), b.name(*c))
        })
        .collect();
    parts.join("; ")
}

/// Single-constant mutations `c^k_{ij} += 1` (`i < j`, degree-compatible
/// `k`), in basis order.
pub fn mutations(spec: &DglaSpec) -> Vec<(String, DglaSpec)> {
    let b = spec.basis();
    let n = spec.dim();
    let mut out = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            for k in 0..n {
                if b.degree(k) != b.degree(i) + b.degree(j) {
                    continue;
                }
                let mut brackets: Vec<((usize, usize), Vector)> =
                    spec.stored_brackets().iter().map(|(key, v)| (*key, v.clone())).collect();
                match brackets.iter_mut().find(|(key, _)| *key == (i, j)) {
                    Some((_, v)) => add_entry(v, k, q(1)),
                    None => brackets.push(((i, j), [(k, q(1))].into_iter().collect())),
                }
                let m = DglaSpec::new((**b).clone(), brackets, spec.differential().clone()).expect("mutation keeps the shape");
                let c = spec.bracket(i, j).get(&k).cloned().unwrap_or_else(|| q(0));
                out.push((format!("[{}, {}] coefficient of {} {} -> {}", b.name(i), b.name(j), b.name(k), c, c.clone() + q(1)), m));
            }
        }
    }
    out
}

/// The Jacobi identity and `Q_CE² = 0` agree, with identical witness sets
/// (Leibniz and `∂²` defects included when there is a differential); then the
/// first single-constant mutation breaking Jacobi is checked to break
/// `Q² = 0` at the same witnesses.
pub fn jacobi_suite(spec: &DglaSpec, w: u32) -> Report {
    let mut r = Report::new();
    let compare = |s: &DglaSpec, r: &mut Report, prefix: &str| {
        let gla = check_gla(s);
        let ce = match ce_group(s, w) {
            Ok(ce) => ce,
            Err(e) => {
                r.fail(&format!("{prefix}ce_group"), e.to_string());
                return;
            }
        };
        let rep = ce_report(&ce);
        let key = |k: &str| format!("{prefix}{k}");
        r.lines.push(dglg_core::report::ReportLine { key: key("jacobi"), ..gla.get("jacobi").expect("jacobi line").clone() });
        r.lines.push(dglg_core::report::ReportLine { key: key("Q_squared"), ..rep.get("Q_squared").expect("Q_squared line").clone() });
        let (jt, qt) = (dgla_defects(s), ce_square_terms(&ce));
        r.record(
            &key("witnesses_match"),
            if jt == qt { Ok(()) } else { Err(format!("defects {{{}}} vs Q² {{{}}}", render_terms(s, &jt), render_terms(s, &qt))) },
        );
    };
    compare(spec, &mut r, "");
    match mutations(spec).into_iter().find(|(_, m)| !check_gla(m).passed("jacobi")) {
        Some((what, m)) => {
            r.pass("mutant_found");
            let mut inner = Report::new();
            compare(&m, &mut inner, "");
            let jl = inner.get("jacobi").cloned();
            let ql = inner.get("Q_squared").cloned();
            r.record("mutant.jacobi_fails", if jl.is_some_and(|l| !l.pass) { Ok(()) } else { Err(what.clone()) });
            r.record("mutant.Q_squared_fails", if ql.is_some_and(|l| !l.pass) { Ok(()) } else { Err(what.clone()) });
            let wm = inner.get("witnesses_match").cloned();
            r.record("mutant.witnesses_match", wm.map_or(Err("missing".into()), |l| if l.pass { Ok(()) } else { Err(l.witness.unwrap_or_default()) }));
        }
        None => r.fail("mutant_found", "no single-constant mutation breaks the Jacobi identity"),
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn heis3_derivations() {
        let heis = corpus::load("heis3").unwrap().spec;
        // gl_2 acting on span(X, Y) together with the maps into the center
        assert_eq!(derivation_basis(&heis).len(), 6);
        let sl2 = corpus::load("sl2").unwrap().spec;
        assert_eq!(derivation_basis(&sl2).len(), 3);
    }

    #[test]
    fn mutated_sl2_matches_witnesses() {
        let sl2 = corpus::load("sl2").unwrap().spec;
        let r = jacobi_suite(&sl2, 3);
        assert!(r.all_pass(), "{r}");
    }

    #[test]
    fn two_dimensional_algebras_have_no_breaking_mutation() {
        let aff = corpus::load("aff1").unwrap().spec;
        assert!(mutations(&aff).iter().all(|(_, m)| check_gla(m).passed("jacobi")));
    }

    #[test]
    fn gca_and_pbw_pass_on_mixed_degrees() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let t = corpus::load("t1-heis3").unwrap().spec;
        assert!(gca_suite(&t, 20, &mut rng).all_pass());
        assert!(pbw_suite(&t, 50, &mut rng).all_pass());
    }
}

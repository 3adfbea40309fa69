//! Harish-Chandra pairs `(G_0, g, α)`: the function Hopf algebra
//! `H = Hom_{U(g_0)}(U(g), C^∞(G_0))` in a truncated polynomial model, the
//! λ-cocycle, the homological field `Q`, extended pairs, and the
//! Chevalley–Eilenberg group.
//!
//! A function `f ∈ H` is stored by its values on the fiber section: PBW
//! monomials in the generators of nonzero degree, each value a polynomial in
//! exponential coordinates on `G_0`. The basis element `e[s; m]` takes the
//! value `x^m` on `s` and vanishes on the other fiber monomials; its degree is
//! `−deg s` and its weight `|s| + |m|`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Reverse;
use num_traits::{One, Zero};

use crate::dgla::{check_dgla, extended_dgla, DglaError, DglaSpec};
use crate::gca::{
    apply_derivation, multiply_monomials as gca_multiply, monomials_up_to, primitive_coproduct, AlgebraDerivation,
    AlgebraElement, Monomial,
};
use crate::grading::{add_entry, is_odd, koszul_sign, Degree, GradedBasis, GradedLinearMap, Vector};
use crate::hopf::{
    check_hopf_axioms, check_point_derivation, is_group_one_cocycle, is_multiplicative, tangent_bracket, value_at_unit,
    with_convolution_antipode, HMap, HopfData, Tensor, TruncatedHopf,
};
use crate::nilgroup::{ad_exp_on, apply_linear, bracket_pv, vf_apply, NilError, NilpotentGroup};
use crate::poly::{polyvec_is_zero, polyvec_scale, polyvec_sub, Poly, PolyVec};
use crate::report::Report;
use crate::scalar::{factorial, sign, Q};
use crate::uea::{monomial_coproduct, multiply_monomials, pbw_normal_form, PbwMonomial, UeaTerms};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HcpError {
    #[error(transparent)]
    Dgla(#[from] DglaError),
    #[error(transparent)]
    Group(#[from] NilError),
    #[error("degree-0 part does not act nilpotently on {0}")]
    NotNilpotentAction(String),
    #[error("grading is not one-sided")]
    TwoSided,
    #[error("differential has no extension generator to remove")]
    NotExtended,
}

/// Element of `U(g)` with polynomial coefficients.
pub type PolyTerms = BTreeMap<PbwMonomial, Poly>;

/// Values of a function on the fiber section.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct HFunction {
    pub values: BTreeMap<PbwMonomial, Poly>,
}

fn add_poly(acc: &mut PolyTerms, k: PbwMonomial, p: &Poly, c: &Q) {
    if p.is_zero() || c.is_zero() {
        return;
    }
    let e = acc.entry(k).or_insert_with(|| Poly::zero(p.nvars()));
    e.add_assign_scaled(p, c);
}

/// Exponent vectors of length `n` with total degree at most `d`.
pub fn exponents_up_to(n: usize, d: u32) -> Vec<Vec<u32>> {
    fn rec(n: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for k in 0..=left {
            cur.push(k);
            rec(n, left - k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, d, &mut Vec::new(), &mut out);
    out.sort_by_key(|e| (e.iter().sum::<u32>(), Reverse(e.clone())));
    out
}

fn odd_repeat(spec: &DglaSpec, word: &[usize]) -> bool {
    word.windows(2).any(|w| w[0] == w[1] && spec.basis().is_odd(w[0]))
}

/// Graded Leibniz extension of a linear map of odd or even degree to `U(g)`.
pub fn derivation_on_monomial(spec: &DglaSpec, d: &GradedLinearMap, m: &PbwMonomial) -> UeaTerms {
    let mut out = UeaTerms::new();
    let mut pre: Degree = 0;
    for (p, &l) in m.0.iter().enumerate() {
        let s = sign(koszul_sign(d.degree, pre));
        for (t, c) in d.image(l) {
            let mut w = m.0[..p].to_vec();
            w.push(t);
            w.extend_from_slice(&m.0[p + 1..]);
            for (u, cu) in pbw_normal_form(spec, &w) {
                add_entry(&mut out, u, cu * &c * &s);
            }
        }
        pre += spec.degree(l);
    }
    out
}

/// Function Hopf algebra of the pair integrating `g`, with `G_0` the simply
/// connected group of the degree-0 part and `α(exp X) = exp(ad_X)`.
#[derive(Debug, Clone)]
pub struct HarishChandraPair {
    spec: DglaSpec,
    order: Vec<usize>,
    nf: usize,
    group: Option<NilpotentGroup>,
    truncation: u32,
    fibers: Vec<PbwMonomial>,
    basis: Vec<(PbwMonomial, Vec<u32>)>,
    index: BTreeMap<(PbwMonomial, Vec<u32>), usize>,
    fields: Vec<PolyVec>,
    hopf: TruncatedHopf,
}

impl HarishChandraPair {
    pub fn new(spec: &DglaSpec, truncation: u32) -> Result<Self, HcpError> {
        Self::build(spec, truncation, false, 1)
    }

    /// `f(uX, g) = sign·(X^R f)(u, g)`; only `sign = 1` gives a Hopf algebra
    /// with a multiplicative `Q` in general.
    pub fn with_equivariance_sign(spec: &DglaSpec, truncation: u32, s: i32) -> Result<Self, HcpError> {
        Self::build(spec, truncation, false, s)
    }

    /// Every generator treated as a fiber direction and `G_0` a point: the
    /// graded dual of the truncated `U(g)`.
    pub fn formal(spec: &DglaSpec, truncation: u32) -> Result<Self, HcpError> {
        Self::build(spec, truncation, true, 1)
    }

    fn build(input: &DglaSpec, w: u32, formal: bool, eq_sign: i32) -> Result<Self, HcpError> {
        let n = input.dim();
        let is_base = |i: usize| !formal && input.degree(i) == 0;
        let mut order: Vec<usize> = (0..n).filter(|&i| !is_base(i)).collect();
        let nf = order.len();
        order.extend((0..n).filter(|&i| is_base(i)));
        let spec = input.permuted(&order);
        let n0 = n - nf;
        let group = if n0 > 0 { Some(NilpotentGroup::new(spec.restrict(&(nf..n).collect::<Vec<_>>()))?) } else { None };

        let mut pair = HarishChandraPair {
            spec,
            order,
            nf,
            group,
            truncation: w,
            fibers: Vec::new(),
            basis: Vec::new(),
            index: BTreeMap::new(),
            fields: Vec::new(),
            hopf: TruncatedHopf::unchecked(HopfData {
                labels: Vec::new(),
                degrees: Vec::new(),
                weights: Vec::new(),
                truncation: w,
                unit: 0,
                product: BTreeMap::new(),
                coproduct: Vec::new(),
                counit: Vec::new(),
                antipode: Vec::new(),
            }),
        };
        pair.check_nilpotent_action()?;
        if let Some(g) = &pair.group {
            pair.fields = (0..n0)
                .map(|j| polyvec_scale(&g.right_invariant_vf(&g.g0.unit(j)), &sign(eq_sign)))
                .collect();
        }
        pair.fibers = crate::uea::pbw_monomials(&pair.spec, w).into_iter().filter(|m| m.0.iter().all(|&l| l < nf)).collect();
        let mut basis = Vec::new();
        for s in &pair.fibers {
            for m in exponents_up_to(n0, w - s.weight()) {
                basis.push((s.clone(), m));
            }
        }
        basis.sort_by_key(|(s, m)| (s.weight() + m.iter().sum::<u32>(), s.clone(), Reverse(m.clone())));
        pair.index = basis.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
        pair.basis = basis;
        let data = with_convolution_antipode(pair.structure());
        pair.hopf = TruncatedHopf::unchecked(data);
        Ok(pair)
    }

    fn check_nilpotent_action(&self) -> Result<(), HcpError> {
        if self.group.is_none() {
            return Ok(());
        }
        let n = self.spec.dim();
        let x = self.generic(self.n0(), 0);
        for y in 0..n {
            let mut t = self.unit_pv(y, self.n0());
            for _ in 0..n {
                t = bracket_pv(&self.spec, &x, &t);
            }
            if !polyvec_is_zero(&t) {
                return Err(HcpError::NotNilpotentAction(String::from(self.spec.basis().name(y))));
            }
        }
        Ok(())
    }

    /// The pair's algebra with fiber generators first and `g_0` last.
    pub fn spec(&self) -> &DglaSpec {
        &self.spec
    }

    /// New index `p` is index `order()[p]` of the input algebra.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn fiber_count(&self) -> usize {
        self.nf
    }

    pub fn n0(&self) -> usize {
        self.spec.dim() - self.nf
    }

    pub fn group(&self) -> Option<&NilpotentGroup> {
        self.group.as_ref()
    }

    pub fn hopf(&self) -> &TruncatedHopf {
        &self.hopf
    }

    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    pub fn fibers(&self) -> &[PbwMonomial] {
        &self.fibers
    }

    pub fn basis(&self) -> &[(PbwMonomial, Vec<u32>)] {
        &self.basis
    }

    pub fn index_of(&self, s: &PbwMonomial, m: &[u32]) -> Option<usize> {
        self.index.get(&(s.clone(), m.to_vec())).copied()
    }

    pub fn coordinate_names(&self) -> Vec<String> {
        (self.nf..self.spec.dim()).map(|i| format!("x_{}", self.spec.basis().name(i))).collect()
    }

    /// Generic point of `G_0` as a full-length vector of `g` (fiber entries 0),
    /// coordinates being variables `offset..offset + n0` of `nv`.
    pub fn generic(&self, nv: usize, offset: usize) -> PolyVec {
        (0..self.spec.dim())
            .map(|i| if i < self.nf { Poly::zero(nv) } else { Poly::var(nv, offset + i - self.nf) })
            .collect()
    }

    fn unit_pv(&self, i: usize, nv: usize) -> PolyVec {
        (0..self.spec.dim()).map(|k| if k == i { Poly::one(nv) } else { Poly::zero(nv) }).collect()
    }

    fn g0_part(&self, v: &PolyVec) -> PolyVec {
        v[self.nf..].to_vec()
    }

    /// `α(exp X) v = exp(ad_X) v`.
    pub fn alpha(&self, x: &PolyVec, v: &[Poly]) -> PolyVec {
        ad_exp_on(&self.spec, x, v, self.spec.dim())
    }

    fn split(&self, u: &PbwMonomial) -> (PbwMonomial, Vec<usize>) {
        let cut = u.0.iter().position(|&l| l >= self.nf).unwrap_or(u.0.len());
        (PbwMonomial(u.0[..cut].to_vec()), u.0[cut..].to_vec())
    }

    /// `f(s·X_1⋯X_k, ·) = X_k^R ⋯ X_1^R f(s, ·)`.
    fn reduce(&self, v: &[usize], p: &Poly) -> Poly {
        let mut r = p.clone();
        for &l in v {
            r = vf_apply(&self.fields[l - self.nf], &r);
        }
        r
    }

    pub fn label(&self, i: usize) -> String {
        let (s, m) = &self.basis[i];
        let names = self.coordinate_names();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let mp = Poly::monomial(self.n0(), m.clone(), Q::one()).render(&refs);
        format!("e[{}; {}]", s.render(&self.spec), mp)
    }

    fn structure(&self) -> HopfData {
        let w = self.truncation;
        let dim = self.basis.len();
        let weight = |i: usize| self.basis[i].0.weight() + self.basis[i].1.iter().sum::<u32>();
        let mut cop_cache: BTreeMap<PbwMonomial, BTreeMap<(PbwMonomial, PbwMonomial), Q>> = BTreeMap::new();
        let mut product: BTreeMap<(usize, usize), Vector> = BTreeMap::new();
        for i in 0..dim {
            for j in 0..dim {
                if weight(i) + weight(j) > w {
                    continue;
                }
                let (a, ma) = &self.basis[i];
                let (b, mb) = &self.basis[j];
                let mut word = a.0.clone();
                word.extend_from_slice(&b.0);
                word.sort();
                if odd_repeat(&self.spec, &word) {
                    continue;
                }
                let s = PbwMonomial(word);
                let cop = cop_cache.entry(s.clone()).or_insert_with(|| monomial_coproduct(&self.spec, &s.0));
                if let Some(c) = cop.get(&(a.clone(), b.clone())) {
                    let m: Vec<u32> = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
                    let k = self.index[&(s, m)];
                    let c = c * sign(koszul_sign(a.degree(&self.spec), b.degree(&self.spec)));
                    product.insert((i, j), [(k, c)].into_iter().collect());
                }
            }
        }
        let coproduct = self.coproduct_table();
        let unit = self.index[&(PbwMonomial::default(), vec![0; self.n0()])];
        HopfData {
            labels: (0..dim).map(|i| self.label(i)).collect(),
            degrees: self.basis.iter().map(|(s, _)| -s.degree(&self.spec)).collect(),
            weights: (0..dim).map(weight).collect(),
            truncation: w,
            unit,
            product,
            coproduct,
            counit: (0..dim).map(|i| if i == unit { Q::one() } else { Q::zero() }).collect(),
            antipode: vec![Vector::new(); dim],
        }
    }

    /// `m*(f)(s_1, g_1, s_2, g_2) = f(s_1 α(g_1)(s_2), g_1 g_2)`.
    fn coproduct_table(&self) -> Vec<Tensor> {
        let w = self.truncation;
        let n0 = self.n0();
        let nv = 2 * n0;
        let x1 = self.generic(nv, 0);
        let x2 = self.generic(nv, n0);
        let z: PolyVec = match &self.group {
            Some(g) => g.bch(&self.g0_part(&x1), &self.g0_part(&x2)),
            None => Vec::new(),
        };
        let alpha_letter: Vec<PolyVec> = (0..self.nf).map(|j| self.alpha(&x1, &self.unit_pv(j, nv))).collect();
        let mut at_product: BTreeMap<(Vec<usize>, Vec<u32>), Poly> = BTreeMap::new();
        let mut out = vec![Tensor::new(); self.basis.len()];
        for s1 in &self.fibers {
            for s2 in &self.fibers {
                if s1.weight() + s2.weight() > w {
                    continue;
                }
                let rem = w - s1.weight() - s2.weight();
                let mut words: BTreeMap<Vec<usize>, Poly> = BTreeMap::new();
                words.insert(Vec::new(), Poly::one(nv));
                for &l in &s2.0 {
                    let mut next: BTreeMap<Vec<usize>, Poly> = BTreeMap::new();
                    for (word, p) in &words {
                        for (t, pt) in alpha_letter[l].iter().enumerate() {
                            if pt.is_zero() {
                                continue;
                            }
                            let mut w2 = word.clone();
                            w2.push(t);
                            let prod = p.mul_trunc(pt, Some(rem));
                            if !prod.is_zero() {
                                next.entry(w2).or_insert_with(|| Poly::zero(nv)).add_assign_scaled(&prod, &Q::one());
                            }
                        }
                    }
                    words = next;
                }
                let mut terms = PolyTerms::new();
                for (word, p) in &words {
                    for (u, c) in multiply_monomials(&self.spec, &s1.0, word) {
                        add_poly(&mut terms, u, p, &c);
                    }
                }
                let sgn = sign(koszul_sign(s1.degree(&self.spec), s2.degree(&self.spec)));
                for (u, p) in &terms {
                    let (s, v) = self.split(u);
                    if s.weight() > w {
                        continue;
                    }
                    for m in exponents_up_to(n0, w - s.weight()) {
                        let target = self.index[&(s.clone(), m.clone())];
                        let base = at_product
                            .entry((v.clone(), m.clone()))
                            .or_insert_with(|| {
                                let q = self.reduce(&v, &Poly::monomial(n0, m.clone(), Q::one()));
                                if n0 == 0 {
                                    q
                                } else {
                                    q.substitute(&z, Some(w))
                                }
                            })
                            .clone();
                        let val = base.mul_trunc(p, Some(rem));
                        for (e, c) in val.terms() {
                            let i1 = self.index[&(s1.clone(), e[..n0].to_vec())];
                            let i2 = self.index[&(s2.clone(), e[n0..].to_vec())];
                            add_entry(&mut out[target], vec![i1, i2], c * &sgn);
                        }
                    }
                }
            }
        }
        out
    }

    /// Function with coordinates `v` in the basis `e[s; m]`.
    pub fn to_function(&self, v: &Vector) -> HFunction {
        let n0 = self.n0();
        let mut f = HFunction::default();
        for (i, c) in v {
            let (s, m) = &self.basis[*i];
            let e = f.values.entry(s.clone()).or_insert_with(|| Poly::zero(n0));
            e.add_assign_scaled(&Poly::monomial(n0, m.clone(), Q::one()), c);
        }
        f.values.retain(|_, p| !p.is_zero());
        f
    }

    /// Coordinates of a function; terms beyond the truncation are dropped.
    pub fn from_function(&self, f: &HFunction) -> Vector {
        let mut v = Vector::new();
        for (s, p) in &f.values {
            for (e, c) in p.terms() {
                if let Some(&i) = self.index.get(&(s.clone(), e.clone())) {
                    add_entry(&mut v, i, c.clone());
                }
            }
        }
        v
    }

    /// `f(u, g)` for `u ∈ U(g)` in PBW form with polynomial coefficients over
    /// the same variables as `at`, the coordinates of `g`.
    pub fn reduce_evaluate(&self, f: &HFunction, u: &PolyTerms, at: &[Poly]) -> Poly {
        let nv = at.first().map_or_else(|| u.values().next().map_or(0, Poly::nvars), Poly::nvars);
        let mut r = Poly::zero(nv);
        for (mono, coeff) in u {
            let (s, v) = self.split(mono);
            if let Some(p) = f.values.get(&s) {
                let q = self.reduce(&v, p);
                let q = if self.n0() == 0 { q } else { q.substitute(at, None) };
                r.add_assign_scaled(&q.mul_trunc(coeff, None), &Q::one());
            }
        }
        r
    }

    pub fn multiply(&self, f1: &HFunction, f2: &HFunction) -> HFunction {
        self.to_function(&self.hopf.mul(&self.from_function(f1), &self.from_function(f2)))
    }

    pub fn antipode(&self, f: &HFunction) -> HFunction {
        self.to_function(&self.hopf.antipode(&self.from_function(f)))
    }

    /// Point derivation `f ↦ f(y, e)` for generator `y` (index in the input
    /// algebra): the dual of the weight-1 basis element attached to `y`.
    pub fn tangent_index(&self, original: usize) -> usize {
        let r = self.order.iter().position(|&o| o == original).expect("generator index in range");
        if r < self.nf {
            self.index[&(PbwMonomial(vec![r]), vec![0; self.n0()])]
        } else {
            let mut m = vec![0; self.n0()];
            m[r - self.nf] = 1;
            self.index[&(PbwMonomial::default(), m)]
        }
    }

    /// `λ(exp X) = −Σ_k ad_X^k(∂X)/(k+1)!` in the coordinates of `G_0`.
    pub fn build_lambda(&self) -> PolyVec {
        let n = self.spec.dim();
        let nv = self.n0();
        let x = self.generic(nv, 0);
        let mut term = apply_linear(self.spec.differential(), &x, n);
        let mut out = vec![Poly::zero(nv); n];
        for k in 0..=n as u32 {
            if polyvec_is_zero(&term) {
                break;
            }
            out = polyvec_sub(&out, &polyvec_scale(&term, &(Q::one() / factorial(k + 1))));
            term = bracket_pv(&self.spec, &x, &term);
        }
        out
    }

    /// `λ(g) = α(g)p − p` for an inner differential `ad_p` (reordered index).
    pub fn inner_lambda(&self, p: usize) -> PolyVec {
        let nv = self.n0();
        let e = self.unit_pv(p, nv);
        polyvec_sub(&self.alpha(&self.generic(nv, 0), &e), &e)
    }

    /// `α` is an automorphism and differentiates to `ad`.
    pub fn pair_report(&self) -> Report {
        let mut r = Report::new();
        let n = self.spec.dim();
        let nv = self.n0();
        let x = self.generic(nv, 0);
        let images: Vec<PolyVec> = (0..n).map(|i| self.alpha(&x, &self.unit_pv(i, nv))).collect();
        let mut auto = Ok(());
        'outer: for i in 0..n {
            for j in i..n {
                let lhs = self.alpha(&x, &bracket_pv(&self.spec, &self.unit_pv(i, nv), &self.unit_pv(j, nv)));
                let rhs = bracket_pv(&self.spec, &images[i], &images[j]);
                if polysvec_ne(&lhs, &rhs) {
                    let b = self.spec.basis();
                    auto = Err(format!("[{}, {}]", b.name(i), b.name(j)));
                    break 'outer;
                }
            }
        }
        r.record("alpha_automorphism", auto);
        let mut lin = Ok(());
        for i in 0..n {
            let lhs: PolyVec = images[i].iter().map(|p| p.homogeneous_part(1)).collect();
            let rhs = bracket_pv(&self.spec, &x, &self.unit_pv(i, nv));
            if polysvec_ne(&lhs, &rhs) {
                lin = Err(String::from(self.spec.basis().name(i)));
                break;
            }
        }
        r.record("alpha_differential", lin);
        r
    }

    /// `λ(e) = 0`, `λ(gh) = λ(g) + α(g)λ(h)`, `α(g)∂α(g)⁻¹ − ∂ = ad∘λ(g)`
    /// for the differential `d` (defaults to the algebra's own).
    pub fn lambda_report(&self, lambda: &PolyVec, d: &GradedLinearMap) -> Report {
        let mut r = Report::new();
        let n = self.spec.dim();
        let n0 = self.n0();
        let b = self.spec.basis();
        let at_unit: Vec<usize> = (0..n).filter(|&i| !lambda[i].constant_term().is_zero()).collect();
        r.record(
            "lambda_unit",
            match at_unit.first() {
                Some(&i) => Err(format!("component {} nonzero", b.name(i))),
                None => Ok(()),
            },
        );
        let cocycle = match &self.group {
            None => Ok(()),
            Some(g) => {
                let nv = 2 * n0;
                let x1 = self.generic(nv, 0);
                let x2 = self.generic(nv, n0);
                let z = g.bch(&self.g0_part(&x1), &self.g0_part(&x2));
                let lhs: PolyVec = lambda.iter().map(|p| p.substitute(&z, None)).collect();
                let l1: PolyVec = lambda.iter().map(|p| p.embed(nv, 0)).collect();
                let l2: PolyVec = lambda.iter().map(|p| p.embed(nv, n0)).collect();
                let rhs = crate::poly::polyvec_add(&l1, &self.alpha(&x1, &l2));
                match (0..n).find(|&i| lhs[i] != rhs[i]) {
                    Some(i) => Err(format!("component {}", b.name(i))),
                    None => Ok(()),
                }
            }
        };
        r.record("lambda_cocycle", cocycle);
        let x = self.generic(n0, 0);
        let minus_x = polyvec_scale(&x, &-Q::one());
        let mut compat = Ok(());
        for y in 0..n {
            let e = self.unit_pv(y, n0);
            let lhs = polyvec_sub(&self.alpha(&x, &apply_linear(d, &self.alpha(&minus_x, &e), n)), &apply_linear(d, &e, n));
            let rhs = bracket_pv(&self.spec, lambda, &e);
            if polysvec_ne(&lhs, &rhs) {
                compat = Err(format!("on {}", b.name(y)));
                break;
            }
        }
        r.record("lambda_compatibility", compat);
        r
    }

    /// `(Qf)(s, g) = f(s·λ(g), g) − (−1)^{deg s} f(b(s), g)` for fiber
    /// monomials `s`, `b` the boundary term. This is the sign placement that
    /// makes `Q` a derivation for the Koszul pairing of `H ⊗ H`.
    pub fn q_from<F>(&self, lambda: &PolyVec, boundary: F) -> HMap
    where
        F: Fn(&PbwMonomial) -> UeaTerms,
    {
        self.q_with_signs(lambda, boundary, false)
    }

    /// `(Qf)(s, g) = (−1)^{deg s} f(s·λ(g), g) − f(∂(s), g)` taken literally.
    /// Not a derivation once odd fiber directions meet a nonzero `∂`.
    pub fn build_q_literal(&self, lambda: &PolyVec) -> HMap {
        let d = self.spec.differential().clone();
        self.q_with_signs(lambda, |s| derivation_on_monomial(&self.spec, &d, s), true)
    }

    fn q_with_signs<F>(&self, lambda: &PolyVec, boundary: F, literal: bool) -> HMap
    where
        F: Fn(&PbwMonomial) -> UeaTerms,
    {
        let w = self.truncation;
        let n0 = self.n0();
        let mut cols = vec![Tensor::new(); self.basis.len()];
        for s2 in &self.fibers {
            let mut terms = PolyTerms::new();
            let parity = sign(if is_odd(s2.degree(&self.spec)) { -1 } else { 1 });
            let (lambda_sign, boundary_sign) = if literal { (parity, -Q::one()) } else { (Q::one(), -parity) };
            for (t, lt) in lambda.iter().enumerate() {
                if lt.is_zero() {
                    continue;
                }
                for (u, c) in multiply_monomials(&self.spec, &s2.0, &[t]) {
                    add_poly(&mut terms, u, lt, &(c * &lambda_sign));
                }
            }
            let one = Poly::one(n0);
            for (u, c) in boundary(s2) {
                add_poly(&mut terms, u, &one, &(c * &boundary_sign));
            }
            let cap = w - s2.weight();
            for (u, p) in &terms {
                let (s, v) = self.split(u);
                if s.weight() > w {
                    continue;
                }
                for m in exponents_up_to(n0, w - s.weight()) {
                    let j = self.index[&(s.clone(), m.clone())];
                    let val = self.reduce(&v, &Poly::monomial(n0, m, Q::one())).mul_trunc(p, Some(cap));
                    for (e, c) in val.terms() {
                        let k = self.index[&(s2.clone(), e.clone())];
                        add_entry(&mut cols[j], vec![k], c.clone());
                    }
                }
            }
        }
        HMap { degree: 1, rank: 1, cols }
    }

    /// `Q` for the algebra's own differential (outer formula).
    pub fn build_q(&self, lambda: &PolyVec) -> HMap {
        let d = self.spec.differential().clone();
        self.q_from(lambda, |s| derivation_on_monomial(&self.spec, &d, s))
    }

    /// `Q` by the inner formula for `∂ = ad_p` (reordered index `p`).
    pub fn build_q_inner(&self, p: usize) -> HMap {
        let lambda = self.inner_lambda(p);
        self.q_from(&lambda, |s| {
            let mut out = multiply_monomials(&self.spec, &[p], &s.0);
            let sg = -sign(if is_odd(s.degree(&self.spec)) { -1 } else { 1 });
            for (u, c) in multiply_monomials(&self.spec, &s.0, &[p]) {
                add_entry(&mut out, u, c * &sg);
            }
            out
        })
    }
}

fn polysvec_ne(a: &[Poly], b: &[Poly]) -> bool {
    a.len() != b.len() || a.iter().zip(b).any(|(x, y)| x != y)
}

/// Degree, derivation, multiplicativity and square-zero checks for `Q`.
pub fn q_report(h: &TruncatedHopf, q: &HMap) -> Report {
    let mut r = Report::new();
    let bad = (0..h.dim()).find_map(|j| {
        q.cols[j].keys().find(|k| h.degree(k[0]) != h.degree(j) + q.degree).map(|k| (j, k[0]))
    });
    r.record(
        "Q_degree",
        match bad {
            Some((j, k)) => Err(format!("Q({}) has a term {}", h.label(j), h.label(k))),
            None if q.degree != 1 => Err(format!("degree {}", q.degree)),
            None => Ok(()),
        },
    );
    r.record("Q_derivation", crate::hopf::check_derivation(h, q, 0));
    r.record("Q_multiplicative", is_multiplicative(h, q, 1));
    let qq = h.compose(q, q);
    r.record("Q_squared", h.maps_agree(&qq, &HMap::zero(h.dim(), 1, 2), 2));
    r
}

/// `δv = −(−1)^{|v|} v∘Q`, the graded transpose of a degree-1 map.
pub fn transpose_action(h: &TruncatedHopf, v: &HMap, q: &HMap) -> HMap {
    h.compose(v, q).scale(&-sign(if is_odd(v.degree) { -1 } else { 1 }))
}

/// The DGLA of a dg Lie group: tangent vectors `φ_i` dual to the weight-1
/// elements `duals[i]`, bracket from `tangent_bracket`, differential the
/// graded transpose of `Q`. Also checks that `ξ = Q ⋆ S` has `ξ_e = Q_e` and
/// is a group 1-cocycle.
pub fn dgla_of_group(h: &TruncatedHopf, q: &HMap, basis: &GradedBasis, duals: &[usize]) -> (DglaSpec, Report) {
    let mut r = Report::new();
    let n = basis.len();
    let phi: Vec<HMap> = (0..n)
        .map(|i| {
            let mut vals = vec![Q::zero(); h.dim()];
            vals[duals[i]] = Q::one();
            HMap::from_scalars(basis.degree(i), vals)
        })
        .collect();
    let pd = (0..n).find_map(|i| check_point_derivation(h, &phi[i], 0).err().map(|w| format!("{}: {w}", basis.name(i))));
    r.record("tangent_point_derivations", pd.map_or(Ok(()), Err));

    let mut closed: Result<(), String> = Ok(());
    let coords = |w: &HMap, what: &str| -> (Vector, Option<String>) {
        let c: Vector = (0..n)
            .map(|k| (k, w.scalar(duals[k])))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        let mut back = HMap::zero(h.dim(), 0, w.degree);
        for (k, ck) in &c {
            back = back.add_scaled(&phi[*k], ck);
        }
        let err = h.maps_agree(w, &back, 2).err().map(|e| format!("{what} leaves the tangent span at {e}"));
        (c, err)
    };
    let note = |e: Option<String>, closed: &mut Result<(), String>| {
        if let (Some(e), true) = (e, closed.is_ok()) {
            *closed = Err(e);
        }
    };
    let mut brackets = Vec::new();
    for i in 0..n {
        for j in i..n {
            if i == j && !basis.is_odd(i) {
                continue;
            }
            match tangent_bracket(h, &phi[i], &phi[j]) {
                Ok(b) => {
                    let (v, e) = coords(&b, &format!("[{}, {}]", basis.name(i), basis.name(j)));
                    note(e, &mut closed);
                    if !v.is_empty() {
                        brackets.push(((i, j), v));
                    }
                }
                Err(e) => note(Some(format!("{e}")), &mut closed),
            }
        }
    }
    let mut images = BTreeMap::new();
    for i in 0..n {
        let dv = transpose_action(h, &phi[i], q);
        let (v, e) = coords(&dv, &format!("d{}", basis.name(i)));
        note(e, &mut closed);
        if !v.is_empty() {
            images.insert(i, v);
        }
    }
    r.record("tangent_closed", closed);
    let spec = DglaSpec::new(basis.clone(), brackets, GradedLinearMap { degree: 1, images })
        .unwrap_or_else(|_| DglaSpec::abelian(basis.clone()));
    r.extend_prefixed("recovered", check_dgla(&spec));

    let xi = h.convolve(q, &h.antipode_map());
    r.record("xi_at_unit", h.maps_agree(&value_at_unit(h, &xi), &value_at_unit(h, q), 0));
    r.record("xi_cocycle", is_group_one_cocycle(h, &xi, 2));
    (spec, r)
}

/// Brackets and differential of `a` and `b` agree on the shared basis.
pub fn compare_brackets(a: &DglaSpec, b: &DglaSpec) -> Result<(), String> {
    if a.basis() != b.basis() {
        return Err(String::from("bases differ"));
    }
    for i in 0..a.dim() {
        for j in i..a.dim() {
            if a.bracket(i, j) != b.bracket(i, j) {
                let n = a.basis();
                return Err(format!("[{}, {}]: {} vs {}", n.name(i), n.name(j), a.render(&a.bracket(i, j)), b.render(&b.bracket(i, j))));
            }
        }
    }
    Ok(())
}

pub fn compare_differentials(a: &DglaSpec, b: &DglaSpec) -> Result<(), String> {
    for i in 0..a.dim() {
        let (x, y) = (a.d(&a.unit(i)), b.d(&b.unit(i)));
        if x != y {
            return Err(format!("d{}: {} vs {}", a.basis().name(i), a.render(&x), b.render(&y)));
        }
    }
    Ok(())
}

/// Result of the full integration pipeline.
#[derive(Debug, Clone)]
pub struct Integration {
    pub pair: HarishChandraPair,
    pub lambda: PolyVec,
    pub q: HMap,
    pub recovered: DglaSpec,
    pub report: Report,
}

/// Builds `H`, `λ` and `Q` for `spec`, runs every check and differentiates
/// back to a DGLA.
pub fn integrate(spec: &DglaSpec, w: u32) -> Result<Integration, HcpError> {
    let mut report = Report::new();
    let d = check_dgla(spec);
    report.record("dgla", d.first_failure().map_or(Ok(()), |l| Err(format!("{l}"))));
    let pair = HarishChandraPair::new(spec, w)?;
    let axioms = check_hopf_axioms(pair.hopf().data());
    report.record("hopf_axioms", axioms.first_failure().map_or(Ok(()), |l| Err(format!("{l}"))));
    report.extend(pair.pair_report());
    let lambda = pair.build_lambda();
    report.extend(pair.lambda_report(&lambda, pair.spec().differential()));
    let q = pair.build_q(&lambda);
    report.extend(q_report(pair.hopf(), &q));
    let duals: Vec<usize> = (0..spec.dim()).map(|i| pair.tangent_index(i)).collect();
    let (recovered, r) = dgla_of_group(pair.hopf(), &q, spec.basis(), &duals);
    report.extend(r);
    report.record("bracket_round_trip", compare_brackets(spec, &recovered));
    report.record("delta_Q == partial", compare_differentials(spec, &recovered));
    Ok(Integration { pair, lambda, q, recovered, report })
}

/// Integrates the extended algebra `g ⊕ k·D` with the inner formula for
/// `ad_D`, and compares with the outer `Q` on `g` modulo the ideal of
/// functions vanishing on `U(g)`.
pub fn extended_route(spec: &DglaSpec, w: u32) -> Result<Report, HcpError> {
    let mut r = Report::new();
    let pair = HarishChandraPair::new(spec, w)?;
    let q = pair.build_q(&pair.build_lambda());
    let ext_spec = extended_dgla(spec)?;
    let ext = HarishChandraPair::new(&ext_spec, w)?;
    let d_orig = ext_spec.dim() - 1;
    let d_new = ext.order().iter().position(|&o| o == d_orig).ok_or(HcpError::NotExtended)?;
    let qt = ext.build_q_inner(d_new);
    r.record(
        "extended_lambda",
        ext.lambda_report(&ext.inner_lambda(d_new), &inner_differential(&ext, d_new)).first_failure().map_or(Ok(()), |l| Err(format!("{l}"))),
    );
    let in_ideal: Vec<bool> = ext.basis().iter().map(|(s, _)| s.0.contains(&d_new)).collect();

    let mut inv = Ok(());
    for (i, &ideal) in in_ideal.iter().enumerate() {
        if !ideal {
            continue;
        }
        if let Some(k) = qt.cols[i].keys().find(|k| !in_ideal[k[0]]) {
            inv = Err(format!("f = {}, u = {}", ext.label(i), ext.basis()[k[0]].0.render(ext.spec())));
            break;
        }
    }
    r.record("extended_invariant_ideal", inv);

    // e[s; m] of H corresponds to the element of H~ with the same letters.
    let rename = |s: &PbwMonomial| -> PbwMonomial {
        let mut letters: Vec<usize> = s
            .0
            .iter()
            .map(|&l| ext.spec().basis().index_of(pair.spec().basis().name(l)).expect("shared generator"))
            .collect();
        letters.sort();
        PbwMonomial(letters)
    };
    let to_ext: Vec<usize> = pair.basis().iter().map(|(s, m)| ext.index_of(&rename(s), m).expect("basis embeds")).collect();
    let mut agree = Ok(());
    for (j, &jt) in to_ext.iter().enumerate() {
        let expected: Tensor = q.cols[j].iter().map(|(k, c)| (vec![to_ext[k[0]]], c.clone())).collect();
        let got: Tensor = qt.cols[jt].iter().filter(|(k, _)| !in_ideal[k[0]]).map(|(k, c)| (k.clone(), c.clone())).collect();
        if expected != got {
            let u = expected
                .keys()
                .chain(got.keys())
                .find(|k| expected.get(*k) != got.get(*k))
                .map(|k| ext.basis()[k[0]].0.render(ext.spec()))
                .unwrap_or_default();
            agree = Err(format!("f = {}, u = {u}, g generic", pair.label(j)));
            break;
        }
    }
    r.record("extended_agreement", agree);
    Ok(r)
}

fn inner_differential(pair: &HarishChandraPair, p: usize) -> GradedLinearMap {
    let s = pair.spec();
    let images = (0..s.dim()).map(|i| (i, s.bracket(p, i))).filter(|(_, v)| !v.is_empty()).collect();
    GradedLinearMap { degree: 1, images }
}

/// Chevalley–Eilenberg group: functions `S(g[1]*)` with primitive
/// generators, counit the constant term and `Q = d_CE + ∂*`.
#[derive(Debug, Clone)]
pub struct CeGroup {
    pub basis: Arc<GradedBasis>,
    pub monomials: Vec<Monomial>,
    pub hopf: TruncatedHopf,
    pub derivation: AlgebraDerivation,
    pub q: HMap,
}

/// `θ^i` dual to `x_i`, of degree `1 − |x_i|`, with
/// `Qθ^i = −½ Σ (−1)^{|x_j|} c^i_{jk} θ^j θ^k + Σ (−1)^{|x_j|} ∂^i_j θ^j`
/// where `[x_j, x_k] = Σ c^i_{jk} x_i` and `∂x_j = Σ ∂^i_j x_i`.
pub fn ce_group(spec: &DglaSpec, w: u32) -> Result<CeGroup, HcpError> {
    if spec.one_sided().is_none() {
        return Err(HcpError::TwoSided);
    }
    let n = spec.dim();
    let gens = (0..n).map(|i| (format!("θ_{}", spec.basis().name(i)), 1 - spec.degree(i))).collect();
    let basis = Arc::new(GradedBasis::new(gens).map_err(DglaError::from)?);
    let derivation = ce_derivation(spec, &basis, w);
    let monomials = monomials_up_to(&basis, w);
    let index: BTreeMap<Monomial, usize> = monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let mut product = BTreeMap::new();
    for (i, a) in monomials.iter().enumerate() {
        for (j, b) in monomials.iter().enumerate() {
            if a.weight() + b.weight() > w {
                continue;
            }
            if let Some((s, m)) = gca_multiply(&basis, a, b) {
                product.insert((i, j), [(index[&m], sign(s))].into_iter().collect::<Vector>());
            }
        }
    }
    let coproduct: Vec<Tensor> = monomials
        .iter()
        .map(|m| {
            let mut t = Tensor::new();
            for (a, b, c) in primitive_coproduct(&basis, m) {
                add_entry(&mut t, vec![index[&a], index[&b]], c);
            }
            t
        })
        .collect();
    let dim = monomials.len();
    let unit = index[&Monomial::one()];
    let data = HopfData {
        labels: monomials.iter().map(|m| m.render(&basis)).collect(),
        degrees: monomials.iter().map(|m| m.degree(&basis)).collect(),
        weights: monomials.iter().map(Monomial::weight).collect(),
        truncation: w,
        unit,
        product,
        coproduct,
        counit: (0..dim).map(|i| if i == unit { Q::one() } else { Q::zero() }).collect(),
        antipode: monomials
            .iter()
            .enumerate()
            .map(|(i, m)| [(i, sign(if m.weight() % 2 == 0 { 1 } else { -1 }))].into_iter().collect())
            .collect(),
    };
    let hopf = TruncatedHopf::unchecked(data);
    let cols = monomials
        .iter()
        .map(|m| {
            let img = apply_derivation(&derivation, &AlgebraElement::monomial(&basis, m.clone(), Q::one()).with_truncation(w));
            img.terms().iter().map(|(mm, c)| (vec![index[mm]], c.clone())).collect()
        })
        .collect();
    Ok(CeGroup { basis, monomials, hopf, derivation, q: HMap { degree: 1, rank: 1, cols } })
}

fn ce_derivation(spec: &DglaSpec, basis: &Arc<GradedBasis>, w: u32) -> AlgebraDerivation {
    let n = spec.dim();
    let mut vals: Vec<AlgebraElement> = (0..n).map(|_| AlgebraElement::zero(basis).with_truncation(w)).collect();
    let half = Q::one() / Q::from_integer(2.into());
    for j in 0..n {
        let sj = sign(if is_odd(spec.degree(j)) { -1 } else { 1 });
        for k in 0..n {
            for (i, c) in spec.bracket(j, k) {
                let t = AlgebraElement::generator(basis, j)
                    .multiply(&AlgebraElement::generator(basis, k))
                    .expect("same basis")
                    .scale(&(-&half * &c * &sj));
                vals[i] = vals[i].add(&t).expect("same basis").with_truncation(w);
            }
        }
        for (i, c) in spec.d(&spec.unit(j)) {
            let t = AlgebraElement::generator(basis, j).scale(&(&c * &sj));
            vals[i] = vals[i].add(&t).expect("same basis").with_truncation(w);
        }
    }
    let mut d = AlgebraDerivation::new(1);
    for (i, v) in vals.into_iter().enumerate() {
        if !v.is_zero() {
            d.set(i, v);
        }
    }
    d
}

/// Hopf axioms, degree and `Q² = 0` for a CE group, plus the
/// multiplicativity of `Q` (which holds exactly when the bracket vanishes).
/// `Q` raises weight here, so both checks run on every input with no
/// projection.
pub fn ce_report(ce: &CeGroup) -> Report {
    let h = &ce.hopf;
    let mut r = Report::new();
    let axioms = check_hopf_axioms(h.data());
    r.record("hopf_axioms", axioms.first_failure().map_or(Ok(()), |l| Err(format!("{l}"))));
    if let Some(l) = q_report(h, &ce.q).get("Q_degree") {
        r.lines.push(l.clone());
    }
    let qq = h.compose(&ce.q, &ce.q);
    r.record("Q_squared", h.maps_agree(&qq, &HMap::zero(h.dim(), 1, 2), 0));
    r.record("Q_multiplicative", is_multiplicative(h, &ce.q, 0));
    r
}

#[cfg(test)]
mod tests;

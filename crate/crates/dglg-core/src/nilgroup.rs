//! Simply connected nilpotent Lie groups in exponential coordinates of the
//! first kind: BCH group law, `Ad`, invariant vector fields, group cochains
//! and the van Est correspondence in closed form.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use num_traits::{One, Zero};

use crate::dgla::{derivation_check, DglaSpec};
use crate::grading::{GradedLinearMap, Vector};
use crate::linalg::rank;
use crate::poly::{polyvec_add, polyvec_is_zero, polyvec_scale, polyvec_sub, Poly, PolyVec};
use crate::scalar::{factorial, q, Q};

pub const MAX_CLASS: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NilError {
    #[error("group model needs an algebra concentrated in degree 0")]
    NotDegreeZero,
    #[error("nilpotency class exceeds {0} (or the algebra is not nilpotent)")]
    ClassTooLarge(usize),
    #[error("declared nilpotency class {declared} but the algebra has class {actual}")]
    ClassMismatch { declared: usize, actual: usize },
    #[error("not a derivation: {0}")]
    NotDerivation(String),
    #[error("not a group 1-cocycle: {0}")]
    NotCocycle(String),
}

/// `[a, b]` for vectors of polynomials, using the structure constants of `spec`.
pub fn bracket_pv(spec: &DglaSpec, a: &[Poly], b: &[Poly]) -> PolyVec {
    let nv = a.first().or(b.first()).map_or(0, Poly::nvars);
    let mut out = vec![Poly::zero(nv); spec.dim()];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if bj.is_zero() {
                continue;
            }
            let br = spec.bracket(i, j);
            if br.is_empty() {
                continue;
            }
            let p = ai * bj;
            for (k, c) in br {
                out[k].add_assign_scaled(&p, &c);
            }
        }
    }
    out
}

/// Least `c` with all `(c+1)`-fold brackets zero, if at most `max`.
pub fn nilpotency_class(spec: &DglaSpec, max: usize) -> Option<usize> {
    let n = spec.dim();
    let mut current: Vec<Vector> = (0..n).map(|i| spec.unit(i)).collect();
    for c in 1..=max + 1 {
        let mut next = Vec::new();
        for i in 0..n {
            for v in &current {
                let w = spec.bracket_vec(&spec.unit(i), v);
                if !w.is_empty() {
                    next.push(w);
                }
            }
        }
        // basis of the span, to keep the lists short
        let rows: Vec<Vec<Q>> = next.iter().map(|v| (0..n).map(|k| v.get(&k).cloned().unwrap_or_else(Q::zero)).collect()).collect();
        if rows.is_empty() || rank(&rows) == 0 {
            return Some(c);
        }
        let mut m = rows;
        let piv = crate::linalg::rref(&mut m);
        current = m
            .into_iter()
            .take(piv.len())
            .map(|r| r.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).collect())
            .collect();
        if c == max + 1 {
            break;
        }
    }
    None
}

/// Coefficients `c_w` of `log(exp X exp Y)` on words in `{0 = X, 1 = Y}` of
/// length ≤ `max`, computed in the truncated free associative algebra.
pub fn log_exp_exp_words(max: usize) -> BTreeMap<Vec<u8>, Q> {
    type Word = BTreeMap<Vec<u8>, Q>;
    let mul = |a: &Word, b: &Word| -> Word {
        let mut r = Word::new();
        for (u, x) in a {
            for (v, y) in b {
                if u.len() + v.len() <= max {
                    let mut w = u.clone();
                    w.extend_from_slice(v);
                    crate::grading::add_entry(&mut r, w, x * y);
                }
            }
        }
        r
    };
    // exp X exp Y − 1
    let mut t = Word::new();
    for a in 0..=max {
        for b in 0..=max - a {
            if a + b == 0 {
                continue;
            }
            let mut w = vec![0u8; a];
            w.extend(core::iter::repeat_n(1u8, b));
            t.insert(w, Q::one() / (factorial(a as u32) * factorial(b as u32)));
        }
    }
    let mut out = Word::new();
    let mut power = t.clone();
    for k in 1..=max {
        let c = if k % 2 == 1 { Q::one() } else { -Q::one() } / q(k as i64);
        for (w, x) in &power {
            crate::grading::add_entry(&mut out, w.clone(), x * &c);
        }
        power = mul(&power, &t);
    }
    out
}

/// BCH as a list of `(coefficient, right-nested bracket word)` terms, by
/// Dynkin–Specht–Wever: `Z = Σ_n (1/n) Σ_{|w|=n} c_w [w_1,[w_2,…,w_n]]`.
pub fn bch_terms(max: usize) -> Vec<(Q, Vec<u8>)> {
    log_exp_exp_words(max)
        .into_iter()
        .map(|(w, c)| {
            let n = w.len() as i64;
            (c / q(n), w)
        })
        .filter(|(c, _)| !c.is_zero())
        .collect()
}

/// Nilpotent Lie group integrating a degree-0 Lie algebra.
#[derive(Debug, Clone)]
pub struct NilpotentGroup {
    pub g0: DglaSpec,
    pub class: usize,
    terms: Vec<(Q, Vec<u8>)>,
}

impl NilpotentGroup {
    pub fn new(g0: DglaSpec) -> Result<Self, NilError> {
        if !g0.is_degree_zero() {
            return Err(NilError::NotDegreeZero);
        }
        let class = nilpotency_class(&g0, MAX_CLASS).ok_or(NilError::ClassTooLarge(MAX_CLASS))?;
        Ok(NilpotentGroup { terms: bch_terms(class), g0, class })
    }

    pub fn with_declared_class(g0: DglaSpec, declared: usize) -> Result<Self, NilError> {
        let g = Self::new(g0)?;
        if g.class != declared {
            return Err(NilError::ClassMismatch { declared, actual: g.class });
        }
        Ok(g)
    }

    pub fn dim(&self) -> usize {
        self.g0.dim()
    }

    /// Coordinates of a generic point: `x_i` is variable `offset + i` of `nvars`.
    pub fn point(&self, nvars: usize, offset: usize) -> PolyVec {
        (0..self.dim()).map(|i| Poly::var(nvars, offset + i)).collect()
    }

    pub fn bracket(&self, a: &[Poly], b: &[Poly]) -> PolyVec {
        bracket_pv(&self.g0, a, b)
    }

    /// `log(exp X exp Y)`.
    pub fn bch(&self, x: &[Poly], y: &[Poly]) -> PolyVec {
        bch_with(&self.g0, &self.terms, x, y)
    }

    pub fn inverse(&self, x: &[Poly]) -> PolyVec {
        polyvec_scale(x, &-Q::one())
    }

    /// `exp(ad_X) v = Σ_k ad_X^k v / k!`.
    pub fn ad_exp(&self, x: &[Poly], v: &[Poly]) -> PolyVec {
        ad_exp_on(&self.g0, x, v, self.class)
    }

    /// Matrix of `exp(ad_X)`; column `j` is the image of the `j`-th basis vector.
    pub fn ad_exp_matrix(&self, x: &[Poly]) -> Vec<PolyVec> {
        let nv = x.first().map_or(0, Poly::nvars);
        (0..self.dim())
            .map(|j| {
                let e: PolyVec = (0..self.dim()).map(|i| if i == j { Poly::one(nv) } else { Poly::zero(nv) }).collect();
                self.ad_exp(x, &e)
            })
            .collect()
    }

    /// Components of the right-invariant field `X^R f(g) = d/dt f(exp(tX) g)|_{t=0}`.
    pub fn right_invariant_vf(&self, x: &Vector) -> PolyVec {
        self.invariant_vf(x, true)
    }

    /// Components of the left-invariant field `X^L f(g) = d/dt f(g exp(tX))|_{t=0}`.
    pub fn left_invariant_vf(&self, x: &Vector) -> PolyVec {
        self.invariant_vf(x, false)
    }

    fn invariant_vf(&self, x: &Vector, right: bool) -> PolyVec {
        let n = self.dim();
        let nv = n + 1;
        let t = Poly::var(nv, n);
        let tx: PolyVec = (0..n).map(|i| t.scale(&x.get(&i).cloned().unwrap_or_else(Q::zero))).collect();
        let g = self.point(nv, 0);
        let z = if right { self.bch(&tx, &g) } else { self.bch(&g, &tx) };
        z.iter()
            .map(|p| {
                let d = p.derivative(n);
                let zero_t: Vec<Poly> = (0..nv).map(|k| if k == n { Poly::zero(n) } else { Poly::var(n, k) }).collect();
                d.substitute(&zero_t, None)
            })
            .collect()
    }
}

/// `log(exp X exp Y)` from precomputed bracket terms.
pub fn bch_with(spec: &DglaSpec, terms: &[(Q, Vec<u8>)], x: &[Poly], y: &[Poly]) -> PolyVec {
    let nv = x.first().or(y.first()).map_or(0, Poly::nvars);
    let mut out = vec![Poly::zero(nv); spec.dim()];
    let mut cache: BTreeMap<Vec<u8>, PolyVec> = BTreeMap::new();
    for (c, w) in terms {
        let v = nested(spec, w, x, y, &mut cache);
        out = polyvec_add(&out, &polyvec_scale(&v, c));
    }
    out
}

fn nested(spec: &DglaSpec, w: &[u8], x: &[Poly], y: &[Poly], cache: &mut BTreeMap<Vec<u8>, PolyVec>) -> PolyVec {
    if let Some(v) = cache.get(w) {
        return v.clone();
    }
    let head = if w[0] == 0 { x } else { y };
    let v = if w.len() == 1 {
        head.to_vec()
    } else {
        let tail = nested(spec, &w[1..], x, y, cache);
        if polyvec_is_zero(&tail) {
            tail
        } else {
            bracket_pv(spec, head, &tail)
        }
    };
    cache.insert(w.to_vec(), v.clone());
    v
}

/// `exp(ad_X) v` with `ad` taken in `spec` (which may be larger than `g_0`).
pub fn ad_exp_on(spec: &DglaSpec, x: &[Poly], v: &[Poly], max: usize) -> PolyVec {
    let mut term = v.to_vec();
    let mut out = v.to_vec();
    for k in 1..=max + spec.dim() {
        term = bracket_pv(spec, x, &term);
        if polyvec_is_zero(&term) {
            break;
        }
        out = polyvec_add(&out, &polyvec_scale(&term, &(Q::one() / factorial(k as u32))));
    }
    out
}

/// Lie bracket of vector fields given by components.
pub fn vf_bracket(v: &[Poly], w: &[Poly]) -> PolyVec {
    (0..v.len())
        .map(|i| {
            let mut r = Poly::zero(v[0].nvars());
            for j in 0..v.len() {
                r.add_assign_scaled(&(&v[j] * &w[i].derivative(j)), &Q::one());
                r.add_assign_scaled(&(&w[j] * &v[i].derivative(j)), &-Q::one());
            }
            r
        })
        .collect()
}

/// Applies a vector field to a polynomial.
pub fn vf_apply(v: &[Poly], f: &Poly) -> Poly {
    let mut r = Poly::zero(f.nvars());
    for (j, vj) in v.iter().enumerate() {
        if !vj.is_zero() {
            r.add_assign_scaled(&(vj * &f.derivative(j)), &Q::one());
        }
    }
    r
}

/// Polynomial `n`-cochain with values in `g_0`; arguments occupy variable
/// blocks `[k·dim, (k+1)·dim)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupCochain {
    pub n: usize,
    pub values: PolyVec,
}

impl GroupCochain {
    pub fn constant(g: &NilpotentGroup, a: &Vector) -> Self {
        let values = (0..g.dim()).map(|i| Poly::constant(0, a.get(&i).cloned().unwrap_or_else(Q::zero))).collect();
        GroupCochain { n: 0, values }
    }

    /// Substitutes group points for the arguments.
    pub fn eval(&self, args: &[PolyVec]) -> PolyVec {
        assert_eq!(args.len(), self.n);
        let target = args.first().and_then(|a| a.first()).map_or(0, Poly::nvars);
        let subst: Vec<Poly> = args.iter().flat_map(|a| a.iter().cloned()).collect();
        self.values
            .iter()
            .map(|p| if self.n == 0 { Poly::constant(target, p.constant_term()) } else { p.substitute(&subst, None) })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        polyvec_is_zero(&self.values)
    }
}

/// Group coboundary for `n ≤ 1`:
/// `(da)(g) = Ad_g a − a`, `(dξ)(g,h) = Ad_g ξ(h) − ξ(gh) + ξ(g)`.
pub fn group_coboundary(g: &NilpotentGroup, c: &GroupCochain) -> GroupCochain {
    let d = g.dim();
    match c.n {
        0 => {
            let x = g.point(d, 0);
            let a = c.eval_at_const(d);
            GroupCochain { n: 1, values: polyvec_sub(&g.ad_exp(&x, &a), &a) }
        }
        1 => {
            let nv = 2 * d;
            let x = g.point(nv, 0);
            let y = g.point(nv, d);
            let xy = g.bch(&x, &y);
            let xi_h = c.eval(&[y]);
            let xi_gh = c.eval(&[xy]);
            let xi_g = c.eval(&[x.clone()]);
            let v = polyvec_add(&polyvec_sub(&g.ad_exp(&x, &xi_h), &xi_gh), &xi_g);
            GroupCochain { n: 2, values: v }
        }
        _ => panic!("group coboundary is implemented for n ≤ 1"),
    }
}

impl GroupCochain {
    fn eval_at_const(&self, nvars: usize) -> PolyVec {
        self.values.iter().map(|p| Poly::constant(nvars, p.constant_term())).collect()
    }
}

/// Closed-form van Est integration `ξ(exp W) = Σ_{k<c} ad_W^k(δW)/(k+1)!`.
pub fn van_est_integrate(g: &NilpotentGroup, delta: &GradedLinearMap) -> Result<GroupCochain, NilError> {
    let r = derivation_check(&g.g0, delta);
    if let Some(l) = r.first_failure() {
        return Err(NilError::NotDerivation(format!("{l}")));
    }
    let d = g.dim();
    let w = g.point(d, 0);
    let dw: PolyVec = apply_linear(delta, &w, d);
    let mut term = dw;
    let mut out = term.clone();
    for k in 1..g.class {
        term = g.bracket(&w, &term);
        out = polyvec_add(&out, &polyvec_scale(&term, &(Q::one() / factorial(k as u32 + 1))));
    }
    Ok(GroupCochain { n: 1, values: out })
}

/// Applies a constant linear map to a vector of polynomials.
pub fn apply_linear(m: &GradedLinearMap, v: &[Poly], dim: usize) -> PolyVec {
    let nv = v.first().map_or(0, Poly::nvars);
    let mut out = vec![Poly::zero(nv); dim];
    for (j, img) in &m.images {
        if *j >= v.len() || v[*j].is_zero() {
            continue;
        }
        for (i, c) in img {
            out[*i].add_assign_scaled(&v[*j], c);
        }
    }
    out
}

/// Tangent map at the identity of a polynomial 1-cocycle.
pub fn van_est_differentiate(g: &NilpotentGroup, xi: &GroupCochain) -> Result<GradedLinearMap, NilError> {
    let d = g.dim();
    if let Some(i) = xi.values.iter().position(|p| !p.constant_term().is_zero()) {
        return Err(NilError::NotCocycle(format!("value at the identity has component {} nonzero", g.g0.basis().name(i))));
    }
    let dxi = group_coboundary(g, xi);
    if !dxi.is_zero() {
        return Err(NilError::NotCocycle(witness_point(g, &dxi)));
    }
    let mut images = BTreeMap::new();
    for j in 0..d {
        let mut e = vec![0u32; d];
        e[j] = 1;
        let img: Vector =
            (0..d).filter_map(|i| Some((i, xi.values[i].coefficient(&e))).filter(|(_, c)| !c.is_zero())).collect();
        if !img.is_empty() {
            images.insert(j, img);
        }
    }
    Ok(GradedLinearMap { degree: 0, images })
}

/// A small integer point `(g, h)` where a 2-cochain does not vanish.
fn witness_point(g: &NilpotentGroup, c: &GroupCochain) -> String {
    let d = g.dim();
    let nv = 2 * d;
    let mut pt = vec![Q::zero(); nv];
    let total = 3usize.pow(nv as u32).min(1 << 16);
    for code in 0..total {
        let mut k = code;
        for x in pt.iter_mut() {
            *x = q((k % 3) as i64 - 1);
            k /= 3;
        }
        if c.values.iter().any(|p| !p.evaluate(&pt).is_zero()) {
            let show = |s: &[Q]| -> String {
                let v: Vec<String> = s.iter().map(crate::scalar::render).collect();
                v.join(", ")
            };
            return format!("g = ({}), h = ({})", show(&pt[..d]), show(&pt[d..]));
        }
    }
    String::from("nonzero coboundary")
}

#[cfg(test)]
mod tests;

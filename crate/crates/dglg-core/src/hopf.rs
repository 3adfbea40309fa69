//! Truncated graded Hopf algebras as explicit tensors, convolution calculus,
//! invariant and multiplicative derivations, Maurer–Cartan maps, the adjoint
//! coaction and the coface complex.
//!
//! Every identity is checked "up to weight `W`": with leakage `k`, inputs have
//! total weight at most `W − k` and outputs are compared after projection to
//! weight at most `W − k`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use num_traits::{One, Zero};

use crate::grading::{add_entry, koszul_sign, Degree, Vector};
use crate::report::Report;
use crate::scalar::{sign, Q};

/// Sparse element of `H^{⊗n}`; keys are basis-index tuples of length `n`.
pub type Tensor = BTreeMap<Vec<usize>, Q>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HopfError {
    #[error("Hopf axioms fail: {0}")]
    Axioms(String),
    #[error("not a point derivation: {0}")]
    NotPointDerivation(String),
    #[error("cochain degree {0} out of range")]
    CochainDegree(usize),
    #[error("coface index {0} out of range for degree {1}")]
    CofaceIndex(usize, usize),
}

/// Raw structure tensors. `product` holds only pairs whose weights add up to
/// at most `truncation`; absent pairs multiply to zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HopfData {
    pub labels: Vec<String>,
    pub degrees: Vec<Degree>,
    pub weights: Vec<u32>,
    pub truncation: u32,
    pub unit: usize,
    pub product: BTreeMap<(usize, usize), Vector>,
    pub coproduct: Vec<Tensor>,
    pub counit: Vec<Q>,
    pub antipode: Vec<Vector>,
}

/// Linear map `H → H^{⊗rank}` of fixed degree, one column per basis element.
/// Rank 0 means scalar-valued (keys are empty tuples).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HMap {
    pub degree: Degree,
    pub rank: usize,
    pub cols: Vec<Tensor>,
}

impl HMap {
    pub fn zero(dim: usize, rank: usize, degree: Degree) -> Self {
        HMap { degree, rank, cols: vec![Tensor::new(); dim] }
    }

    pub fn from_vectors(degree: Degree, cols: Vec<Vector>) -> Self {
        HMap { degree, rank: 1, cols: cols.into_iter().map(|v| vec_to_tensor(&v)).collect() }
    }

    pub fn from_scalars(degree: Degree, vals: Vec<Q>) -> Self {
        HMap { degree, rank: 0, cols: vals.into_iter().map(scalar_tensor).collect() }
    }

    pub fn scalar(&self, i: usize) -> Q {
        self.cols[i].get(&Vec::new()).cloned().unwrap_or_else(Q::zero)
    }

    pub fn col_vector(&self, i: usize) -> Vector {
        tensor_to_vec(&self.cols[i])
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(BTreeMap::is_empty)
    }

    pub fn add(&self, o: &HMap) -> HMap {
        self.add_scaled(o, &Q::one())
    }

    pub fn sub(&self, o: &HMap) -> HMap {
        self.add_scaled(o, &-Q::one())
    }

    pub fn add_scaled(&self, o: &HMap, c: &Q) -> HMap {
        let mut r = self.clone();
        for (a, b) in r.cols.iter_mut().zip(&o.cols) {
            tensor_add_scaled(a, b, c);
        }
        r
    }

    pub fn scale(&self, c: &Q) -> HMap {
        HMap::zero(self.cols.len(), self.rank, self.degree).add_scaled(self, c)
    }
}

pub fn scalar_tensor(c: Q) -> Tensor {
    let mut t = Tensor::new();
    add_entry(&mut t, Vec::new(), c);
    t
}

pub fn vec_to_tensor(v: &Vector) -> Tensor {
    v.iter().map(|(&i, c)| (vec![i], c.clone())).collect()
}

pub fn tensor_to_vec(t: &Tensor) -> Vector {
    t.iter().map(|(k, c)| (k[0], c.clone())).collect()
}

pub fn tensor_add_scaled(a: &mut Tensor, b: &Tensor, c: &Q) {
    if c.is_zero() {
        return;
    }
    for (k, v) in b {
        add_entry(a, k.clone(), v * c);
    }
}

fn render_key(labels: &[String], k: &[usize]) -> String {
    if k.is_empty() {
        return String::from("1");
    }
    let parts: Vec<&str> = k.iter().map(|&i| labels[i].as_str()).collect();
    parts.join(" ⊗ ")
}

/// Sorted, validated truncated Hopf algebra.
#[derive(Debug, Clone)]
pub struct TruncatedHopf {
    data: HopfData,
    commutative: bool,
    cocommutative: bool,
}

impl TruncatedHopf {
    /// Validates all seven axiom groups.
    pub fn new(data: HopfData) -> Result<Self, HopfError> {
        let r = check_hopf_axioms(&data);
        if let Some(l) = r.first_failure() {
            return Err(HopfError::Axioms(format!("{l}")));
        }
        Ok(Self::unchecked(data))
    }

    /// Skips validation; used to probe corrupted structures.
    pub fn unchecked(data: HopfData) -> Self {
        let mut h = TruncatedHopf { data, commutative: false, cocommutative: false };
        h.commutative = h.compute_commutative();
        h.cocommutative = h.compute_cocommutative();
        h
    }

    pub fn data(&self) -> &HopfData {
        &self.data
    }

    pub fn dim(&self) -> usize {
        self.data.labels.len()
    }

    pub fn degree(&self, i: usize) -> Degree {
        self.data.degrees[i]
    }

    pub fn weight(&self, i: usize) -> u32 {
        self.data.weights[i]
    }

    pub fn truncation(&self) -> u32 {
        self.data.truncation
    }

    pub fn label(&self, i: usize) -> &str {
        &self.data.labels[i]
    }

    pub fn is_commutative(&self) -> bool {
        self.commutative
    }

    pub fn is_cocommutative(&self) -> bool {
        self.cocommutative
    }

    fn compute_commutative(&self) -> bool {
        self.data.product.iter().all(|(&(i, j), v)| {
            let other = self.data.product.get(&(j, i)).cloned().unwrap_or_default();
            *v == crate::grading::vec_scale(&other, &sign(koszul_sign(self.degree(i), self.degree(j))))
        })
    }

    fn compute_cocommutative(&self) -> bool {
        (0..self.dim()).all(|i| {
            let t = &self.data.coproduct[i];
            *t == self.permute(t, &[1, 0])
        })
    }

    pub fn key_weight(&self, k: &[usize]) -> u32 {
        k.iter().map(|&i| self.weight(i)).sum()
    }

    pub fn key_degree(&self, k: &[usize]) -> Degree {
        k.iter().map(|&i| self.degree(i)).sum()
    }

    /// Basis indices with weight at most `W − k`.
    pub fn inputs(&self, k: u32) -> Vec<usize> {
        let cap = self.truncation().saturating_sub(k);
        (0..self.dim()).filter(|&i| self.weight(i) <= cap).collect()
    }

    /// Pairs with total weight at most `W − k`.
    pub fn input_pairs(&self, k: u32) -> Vec<(usize, usize)> {
        let cap = self.truncation().saturating_sub(k);
        let mut out = Vec::new();
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                if self.weight(i) + self.weight(j) <= cap {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn project(&self, t: &Tensor, k: u32) -> Tensor {
        let cap = self.truncation().saturating_sub(k);
        t.iter().filter(|(key, _)| self.key_weight(key) <= cap).map(|(a, b)| (a.clone(), b.clone())).collect()
    }

    pub fn basis_vec(&self, i: usize) -> Vector {
        [(i, Q::one())].into_iter().collect()
    }

    pub fn unit(&self) -> usize {
        self.data.unit
    }

    pub fn mul_basis(&self, i: usize, j: usize) -> Vector {
        self.data.product.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn mul(&self, a: &Vector, b: &Vector) -> Vector {
        let mut r = Vector::new();
        for (i, ci) in a {
            for (j, cj) in b {
                if let Some(v) = self.data.product.get(&(*i, *j)) {
                    crate::grading::vec_add_scaled(&mut r, v, &(ci * cj));
                }
            }
        }
        r
    }

    pub fn coproduct(&self, a: &Vector) -> Tensor {
        let mut t = Tensor::new();
        for (i, c) in a {
            tensor_add_scaled(&mut t, &self.data.coproduct[*i], c);
        }
        t
    }

    pub fn counit(&self, a: &Vector) -> Q {
        let mut s = Q::zero();
        for (i, c) in a {
            s += c * &self.data.counit[*i];
        }
        s
    }

    pub fn antipode(&self, a: &Vector) -> Vector {
        let mut r = Vector::new();
        for (i, c) in a {
            crate::grading::vec_add_scaled(&mut r, &self.data.antipode[*i], c);
        }
        r
    }

    pub fn identity(&self) -> HMap {
        HMap::from_vectors(0, (0..self.dim()).map(|i| self.basis_vec(i)).collect())
    }

    pub fn counit_map(&self) -> HMap {
        HMap::from_scalars(0, self.data.counit.clone())
    }

    /// `ê = η∘ε`.
    pub fn unit_counit(&self) -> HMap {
        HMap::from_vectors(
            0,
            (0..self.dim()).map(|i| crate::grading::vec_scale(&self.basis_vec(self.unit()), &self.data.counit[i])).collect(),
        )
    }

    pub fn antipode_map(&self) -> HMap {
        HMap::from_vectors(0, self.data.antipode.clone())
    }

    pub fn coproduct_map(&self) -> HMap {
        HMap { degree: 0, rank: 2, cols: self.data.coproduct.clone() }
    }

    /// Iterated coproduct `H → H^{⊗n}` (`n = 0` is the counit, `n = 1` the identity).
    pub fn iterated_coproduct(&self, n: usize) -> HMap {
        match n {
            0 => self.counit_map(),
            1 => self.identity(),
            _ => {
                let mut m = self.coproduct_map();
                for _ in 2..n {
                    let mut maps: Vec<&HMap> = Vec::new();
                    let d = self.coproduct_map();
                    let id = self.identity();
                    maps.push(&d);
                    let rest = vec![id; m.rank - 1];
                    maps.extend(rest.iter());
                    m = self.compose_slots(&maps, &m);
                }
                m
            }
        }
    }

    /// Koszul-signed permutation of tensor slots: new slot `p` holds old slot `perm[p]`.
    pub fn permute(&self, t: &Tensor, perm: &[usize]) -> Tensor {
        let mut out = Tensor::new();
        for (k, c) in t {
            let mut s = 1;
            for p in 0..perm.len() {
                for q in p + 1..perm.len() {
                    if perm[p] > perm[q] {
                        s *= koszul_sign(self.degree(k[perm[p]]), self.degree(k[perm[q]]));
                    }
                }
            }
            let nk: Vec<usize> = perm.iter().map(|&i| k[i]).collect();
            add_entry(&mut out, nk, c * sign(s));
        }
        out
    }

    /// `(f_1 ⊗ … ⊗ f_n)(a_1 ⊗ … ⊗ a_n) = Π_{i<j} (−1)^{|f_j||a_i|} f_1(a_1) ⊗ … ⊗ f_n(a_n)`.
    pub fn apply_slots(&self, maps: &[&HMap], t: &Tensor) -> Tensor {
        let mut out = Tensor::new();
        for (k, c) in t {
            assert_eq!(k.len(), maps.len());
            let mut s = 1;
            for i in 0..k.len() {
                for m in &maps[i + 1..] {
                    s *= koszul_sign(m.degree, self.degree(k[i]));
                }
            }
            let mut acc: Tensor = scalar_tensor(c * sign(s));
            for (slot, m) in k.iter().zip(maps) {
                let col = &m.cols[*slot];
                if col.is_empty() {
                    acc.clear();
                    break;
                }
                let mut next = Tensor::new();
                for (ka, ca) in &acc {
                    for (kb, cb) in col {
                        let mut key = ka.clone();
                        key.extend_from_slice(kb);
                        add_entry(&mut next, key, ca * cb);
                    }
                }
                acc = next;
            }
            tensor_add_scaled(&mut out, &acc, &Q::one());
        }
        out
    }

    /// `(maps) ∘ f` with `maps` applied slotwise to the output of `f`.
    pub fn compose_slots(&self, maps: &[&HMap], f: &HMap) -> HMap {
        let rank = maps.iter().map(|m| m.rank).sum();
        let degree = f.degree + maps.iter().map(|m| m.degree).sum::<Degree>();
        HMap { degree, rank, cols: f.cols.iter().map(|t| self.apply_slots(maps, t)).collect() }
    }

    /// `f ∘ g` for `g` of rank 1.
    pub fn compose(&self, f: &HMap, g: &HMap) -> HMap {
        assert_eq!(g.rank, 1);
        self.compose_slots(&[f], g)
    }

    pub fn apply(&self, f: &HMap, v: &Vector) -> Tensor {
        let mut t = Tensor::new();
        for (i, c) in v {
            tensor_add_scaled(&mut t, &f.cols[*i], c);
        }
        t
    }

    /// Product in `H^{⊗n}`:
    /// `(a_1⊗…⊗a_n)(b_1⊗…⊗b_n) = (−1)^{Σ_{i>j}|a_i||b_j|} a_1b_1 ⊗ … ⊗ a_nb_n`.
    pub fn tensor_mul(&self, a: &Tensor, b: &Tensor) -> Tensor {
        let mut out = Tensor::new();
        for (ka, ca) in a {
            for (kb, cb) in b {
                if ka.len() != kb.len() {
                    // a scalar factor acts by scaling
                    let key = if ka.is_empty() { kb.clone() } else if kb.is_empty() { ka.clone() } else { panic!("rank mismatch") };
                    add_entry(&mut out, key, ca * cb);
                    continue;
                }
                let mut s = 1;
                for i in 0..ka.len() {
                    for j in 0..i {
                        s *= koszul_sign(self.degree(ka[i]), self.degree(kb[j]));
                    }
                }
                let mut acc = scalar_tensor(ca * cb * sign(s));
                for (x, y) in ka.iter().zip(kb) {
                    let prod = self.mul_basis(*x, *y);
                    let mut next = Tensor::new();
                    for (k, c) in &acc {
                        for (z, cz) in &prod {
                            let mut key = k.clone();
                            key.push(*z);
                            add_entry(&mut next, key, c * cz);
                        }
                    }
                    acc = next;
                    if acc.is_empty() {
                        break;
                    }
                }
                tensor_add_scaled(&mut out, &acc, &Q::one());
            }
        }
        out
    }

    /// `(a ⋆ b)(x) = Σ (−1)^{|b||x_1|} a(x_1) b(x_2)` in `H^{⊗r}` (or in `k` for rank 0).
    pub fn convolve(&self, a: &HMap, b: &HMap) -> HMap {
        let rank = a.rank.max(b.rank);
        assert!(a.rank == b.rank || a.rank == 0 || b.rank == 0);
        let cols = (0..self.dim())
            .map(|i| {
                let mut out = Tensor::new();
                for (k, c) in &self.data.coproduct[i] {
                    let s = koszul_sign(b.degree, self.degree(k[0]));
                    let x = &a.cols[k[0]];
                    let y = &b.cols[k[1]];
                    if x.is_empty() || y.is_empty() {
                        continue;
                    }
                    let p = self.tensor_mul(x, y);
                    tensor_add_scaled(&mut out, &p, &(c * sign(s)));
                }
                out
            })
            .collect();
        HMap { degree: a.degree + b.degree, rank, cols }
    }

    /// `[X, Y] = X∘Y − (−1)^{|X||Y|} Y∘X` for rank-1 maps.
    pub fn commutator(&self, x: &HMap, y: &HMap) -> HMap {
        let xy = self.compose(x, y);
        let yx = self.compose(y, x);
        xy.add_scaled(&yx, &-sign(koszul_sign(x.degree, y.degree)))
    }

    fn witness_key(&self, k: &[usize]) -> String {
        render_key(&self.data.labels, k)
    }

    fn diff_witness(&self, what: String, lhs: &Tensor, rhs: &Tensor) -> String {
        let mut d = lhs.clone();
        tensor_add_scaled(&mut d, rhs, &-Q::one());
        let (k, c) = d.iter().next().expect("nonzero difference");
        format!("{what} component {} coefficient {}", self.witness_key(k), crate::scalar::render(c))
    }

    /// `Ok` if `lhs(i) = rhs(i)` on all inputs of weight ≤ `W − k` after projection.
    pub fn compare_on_inputs<F, G>(&self, k: u32, lhs: F, rhs: G) -> Result<(), String>
    where
        F: Fn(usize) -> Tensor,
        G: Fn(usize) -> Tensor,
    {
        for i in self.inputs(k) {
            let (l, r) = (self.project(&lhs(i), k), self.project(&rhs(i), k));
            if l != r {
                return Err(self.diff_witness(String::from(self.label(i)), &l, &r));
            }
        }
        Ok(())
    }

    /// Maps agree on all inputs of weight ≤ `W − k` after projection.
    pub fn maps_agree(&self, f: &HMap, g: &HMap, k: u32) -> Result<(), String> {
        self.compare_on_inputs(k, |i| f.cols[i].clone(), |i| g.cols[i].clone())
    }

    pub fn pair_label(&self, i: usize, j: usize) -> String {
        format!("({}, {})", self.label(i), self.label(j))
    }
}

/// The seven axiom groups, each up to weight `W` (leakage 0).
pub fn check_hopf_axioms(data: &HopfData) -> Report {
    let h = TruncatedHopf { data: data.clone(), commutative: false, cocommutative: false };
    let mut r = Report::new();
    let n = h.dim();
    let u = h.unit();
    let wt = h.truncation();

    // unit
    let unit_res = (|| {
        for i in 0..n {
            let e = h.basis_vec(i);
            if h.mul_basis(u, i) != e || h.mul_basis(i, u) != e {
                return Err(String::from(h.label(i)));
            }
        }
        Ok(())
    })();
    r.record("unit", unit_res);

    // associativity
    let assoc = (|| {
        for i in 0..n {
            for j in 0..n {
                if h.weight(i) + h.weight(j) > wt {
                    continue;
                }
                let ab = h.mul_basis(i, j);
                for k in 0..n {
                    if h.weight(i) + h.weight(j) + h.weight(k) > wt {
                        continue;
                    }
                    let l = h.mul(&ab, &h.basis_vec(k));
                    let rr = h.mul(&h.basis_vec(i), &h.mul_basis(j, k));
                    if l != rr {
                        return Err(format!("({}, {}, {})", h.label(i), h.label(j), h.label(k)));
                    }
                }
            }
        }
        Ok(())
    })();
    r.record("associativity", assoc);

    let id = h.identity();
    let eps = h.counit_map();
    let delta = h.coproduct_map();

    // counit
    r.record(
        "counit",
        h.compare_on_inputs(0, |i| h.apply_slots(&[&eps, &id], &h.data.coproduct[i]), |i| vec_to_tensor(&h.basis_vec(i)))
            .and_then(|_| {
                h.compare_on_inputs(0, |i| h.apply_slots(&[&id, &eps], &h.data.coproduct[i]), |i| vec_to_tensor(&h.basis_vec(i)))
            }),
    );

    // coassociativity
    r.record(
        "coassociativity",
        h.compare_on_inputs(
            0,
            |i| h.apply_slots(&[&delta, &id], &h.data.coproduct[i]),
            |i| h.apply_slots(&[&id, &delta], &h.data.coproduct[i]),
        ),
    );

    // bialgebra: Δ(ab) = Δ(a)Δ(b) in H⊗H
    let bialg = (|| {
        for (i, j) in h.input_pairs(0) {
            let lhs = h.project(&h.coproduct(&h.mul_basis(i, j)), 0);
            let rhs = h.project(&h.tensor_mul(&h.data.coproduct[i], &h.data.coproduct[j]), 0);
            if lhs != rhs {
                return Err(h.diff_witness(h.pair_label(i, j), &lhs, &rhs));
            }
        }
        Ok(())
    })();
    r.record("bialgebra", bialg);

    // unit and counit are coalgebra/algebra morphisms
    let unit_coalg = (|| {
        let one_one: Tensor = [(vec![u, u], Q::one())].into_iter().collect();
        if h.project(&h.data.coproduct[u], 0) != one_one {
            return Err(String::from("coproduct of unit"));
        }
        if !h.data.counit[u].is_one() {
            return Err(String::from("counit of unit"));
        }
        for (i, j) in h.input_pairs(0) {
            if h.counit(&h.mul_basis(i, j)) != &h.data.counit[i] * &h.data.counit[j] {
                return Err(format!("counit of product {}", h.pair_label(i, j)));
            }
        }
        Ok(())
    })();
    r.record("unit_coalgebra", unit_coalg);

    // antipode
    let s = h.antipode_map();
    let ee = h.unit_counit();
    let left = h.convolve(&s, &id);
    let right = h.convolve(&id, &s);
    r.record("antipode", h.maps_agree(&left, &ee, 0).and_then(|_| h.maps_agree(&right, &ee, 0)));
    r
}

/// `S² = id`, meaningful when `H` is commutative or cocommutative.
pub fn check_antipode_involution(h: &TruncatedHopf) -> Result<(), String> {
    let s = h.antipode_map();
    h.maps_agree(&h.compose(&s, &s), &h.identity(), 0)
}

/// Convolution inverse of `f` (with `ε∘f = ε` on the unit), by the Neumann
/// series `Σ_k (ê − f)^{⋆k}`, exact when every non-unit basis element has
/// positive weight.
pub fn convolution_inverse(h: &TruncatedHopf, f: &HMap) -> HMap {
    let ee = h.unit_counit();
    let j = ee.sub(f);
    let mut term = ee.clone();
    let mut total = ee;
    for _ in 0..h.truncation() {
        term = h.convolve(&term, &j);
        if term.is_zero() {
            break;
        }
        total = total.add(&term);
    }
    total
}

/// Fills in the antipode as the convolution inverse of the identity.
pub fn with_convolution_antipode(mut data: HopfData) -> HopfData {
    data.antipode = vec![Vector::new(); data.labels.len()];
    let h = TruncatedHopf::unchecked(data.clone());
    let s = convolution_inverse(&h, &h.identity());
    data.antipode = (0..data.labels.len()).map(|i| s.col_vector(i)).collect();
    data
}

/// `v(ab) = v(a)ε(b) + ε(a)v(b)` on pairs of total weight ≤ `W − k`.
pub fn check_point_derivation(h: &TruncatedHopf, v: &HMap, k: u32) -> Result<(), String> {
    for (i, j) in h.input_pairs(k) {
        let lhs = h.apply(v, &h.mul_basis(i, j)).get(&Vec::new()).cloned().unwrap_or_else(Q::zero);
        let rhs = v.scalar(i) * &h.data.counit[j] + &h.data.counit[i] * v.scalar(j);
        if lhs != rhs {
            return Err(h.pair_label(i, j));
        }
    }
    Ok(())
}

/// `X(ab) = X(a)b + (−1)^{|X||a|} a X(b)`.
pub fn check_derivation(h: &TruncatedHopf, x: &HMap, k: u32) -> Result<(), String> {
    for (i, j) in h.input_pairs(k) {
        let lhs = h.project(&h.apply(x, &h.mul_basis(i, j)), k);
        let mut rhs = vec_to_tensor(&h.mul(&x.col_vector(i), &h.basis_vec(j)));
        let t = vec_to_tensor(&h.mul(&h.basis_vec(i), &x.col_vector(j)));
        tensor_add_scaled(&mut rhs, &t, &sign(koszul_sign(x.degree, h.degree(i))));
        let rhs = h.project(&rhs, k);
        if lhs != rhs {
            return Err(h.diff_witness(h.pair_label(i, j), &lhs, &rhs));
        }
    }
    Ok(())
}

/// `(id ⊗ X)∘Δ = Δ∘X`.
pub fn is_left_invariant(h: &TruncatedHopf, x: &HMap, k: u32) -> Result<(), String> {
    let id = h.identity();
    h.compare_on_inputs(k, |i| h.apply_slots(&[&id, x], &h.data.coproduct[i]), |i| h.coproduct(&x.col_vector(i)))
}

/// `(X ⊗ id)∘Δ = Δ∘X`.
pub fn is_right_invariant(h: &TruncatedHopf, x: &HMap, k: u32) -> Result<(), String> {
    let id = h.identity();
    h.compare_on_inputs(k, |i| h.apply_slots(&[x, &id], &h.data.coproduct[i]), |i| h.coproduct(&x.col_vector(i)))
}

/// `id ⋆ v`, after checking that `v` is a point derivation.
pub fn left_translate(h: &TruncatedHopf, v: &HMap) -> Result<HMap, HopfError> {
    check_point_derivation(h, v, 0).map_err(HopfError::NotPointDerivation)?;
    Ok(h.convolve(&h.identity(), v))
}

/// `v ⋆ id`, after checking that `v` is a point derivation.
pub fn right_translate(h: &TruncatedHopf, v: &HMap) -> Result<HMap, HopfError> {
    check_point_derivation(h, v, 0).map_err(HopfError::NotPointDerivation)?;
    Ok(h.convolve(v, &h.identity()))
}

/// `X_e = ε∘X`.
pub fn value_at_unit(h: &TruncatedHopf, x: &HMap) -> HMap {
    h.compose(&h.counit_map(), x)
}

/// `ε∘[v^L, w^L]`, computed on inputs of weight ≤ `W − 2` (zero elsewhere).
pub fn tangent_bracket(h: &TruncatedHopf, v: &HMap, w: &HMap) -> Result<HMap, HopfError> {
    let vl = left_translate(h, v)?;
    let wl = left_translate(h, w)?;
    let c = value_at_unit(h, &h.commutator(&vl, &wl));
    let cap = h.truncation().saturating_sub(2);
    let vals = (0..h.dim()).map(|i| if h.weight(i) <= cap { c.scalar(i) } else { Q::zero() }).collect();
    Ok(HMap::from_scalars(v.degree + w.degree, vals))
}

/// `(X ⊗ id + id ⊗ X)∘Δ = Δ∘X`; when it holds, also `X_e = 0` and `S∘X = X∘S`.
pub fn is_multiplicative(h: &TruncatedHopf, x: &HMap, k: u32) -> Result<(), String> {
    let id = h.identity();
    h.compare_on_inputs(
        k,
        |i| {
            let mut t = h.apply_slots(&[x, &id], &h.data.coproduct[i]);
            tensor_add_scaled(&mut t, &h.apply_slots(&[&id, x], &h.data.coproduct[i]), &Q::one());
            t
        },
        |i| h.coproduct(&x.col_vector(i)),
    )?;
    let xe = value_at_unit(h, x);
    h.maps_agree(&xe, &HMap::zero(h.dim(), 0, x.degree), k).map_err(|w| format!("value at unit nonzero: {w}"))?;
    let s = h.antipode_map();
    h.maps_agree(&h.compose(&s, x), &h.compose(x, &s), k).map_err(|w| format!("inverse compatibility: {w}"))
}

/// `ω^R(X) = X ⋆ S`.
pub fn mc_right(h: &TruncatedHopf, x: &HMap) -> HMap {
    h.convolve(x, &h.antipode_map())
}

/// Inverse of `mc_right`: `ξ ↦ ξ ⋆ id`.
pub fn mc_right_inverse(h: &TruncatedHopf, xi: &HMap) -> HMap {
    h.convolve(xi, &h.identity())
}

/// `ω^L(X) = S ⋆ X`.
pub fn mc_left(h: &TruncatedHopf, x: &HMap) -> HMap {
    h.convolve(&h.antipode_map(), x)
}

/// Inverse of `mc_left`: `ξ ↦ id ⋆ ξ`.
pub fn mc_left_inverse(h: &TruncatedHopf, xi: &HMap) -> HMap {
    h.convolve(&h.identity(), xi)
}

/// `ξ(ab) = ξ(a)ε(b) + ε(a)ξ(b)`: values are point derivations at the unit.
pub fn check_unit_derivation_valued(h: &TruncatedHopf, xi: &HMap, k: u32) -> Result<(), String> {
    for (i, j) in h.input_pairs(k) {
        let lhs = h.project(&h.apply(xi, &h.mul_basis(i, j)), k);
        let mut rhs = Tensor::new();
        tensor_add_scaled(&mut rhs, &xi.cols[i], &h.data.counit[j]);
        tensor_add_scaled(&mut rhs, &xi.cols[j], &h.data.counit[i]);
        let rhs = h.project(&rhs, k);
        if lhs != rhs {
            return Err(h.diff_witness(h.pair_label(i, j), &lhs, &rhs));
        }
    }
    Ok(())
}

/// `ρ(x) = Σ ± x_1 S(x_3) ⊗ x_2`, i.e. `(μ⊗id)(id⊗τ)(id⊗id⊗S)(Δ⊗id)Δ`;
/// on functions `ρ(f)(g, k) = f(g k g⁻¹)`.
pub fn conjugation_coaction(h: &TruncatedHopf) -> HMap {
    let id = h.identity();
    let d3 = h.iterated_coproduct(3);
    let s = h.antipode_map();
    let cols = d3
        .cols
        .iter()
        .map(|t| {
            let t = h.apply_slots(&[&id, &id, &s], t);
            let t = h.permute(&t, &[0, 2, 1]);
            let mut out = Tensor::new();
            for (k, c) in &t {
                for (z, cz) in h.mul_basis(k[0], k[1]) {
                    add_entry(&mut out, vec![z, k[2]], c * cz);
                }
            }
            out
        })
        .collect();
    HMap { degree: 0, rank: 2, cols }
}

/// Adjoint coaction with the argument in the first slot: `Ad(f)(k, g) = f(g k g⁻¹)`.
pub fn adjoint_coaction(h: &TruncatedHopf) -> HMap {
    let rho = conjugation_coaction(h);
    HMap { degree: 0, rank: 2, cols: rho.cols.iter().map(|t| h.permute(t, &[1, 0])).collect() }
}

/// The literal composite `(μ⊗id)(id⊗id⊗S)Δ^{(3)}`, kept for comparison.
pub fn adjoint_coaction_literal(h: &TruncatedHopf) -> HMap {
    let id = h.identity();
    let d3 = h.iterated_coproduct(3);
    let s = h.antipode_map();
    let cols = d3
        .cols
        .iter()
        .map(|t| {
            let t = h.apply_slots(&[&id, &id, &s], t);
            let mut out = Tensor::new();
            for (k, c) in &t {
                for (z, cz) in h.mul_basis(k[0], k[1]) {
                    add_entry(&mut out, vec![z, k[2]], c * cz);
                }
            }
            out
        })
        .collect();
    HMap { degree: 0, rank: 2, cols }
}

/// Group 1-cocycle law `Δ∘ξ = ξ ⊗ 1 + (id ⊗ ξ)∘τ∘Ad`.
pub fn is_group_one_cocycle(h: &TruncatedHopf, xi: &HMap, k: u32) -> Result<(), String> {
    let rho = conjugation_coaction(h);
    group_cocycle_with(h, xi, &rho, k)
}

/// Same law with a caller-supplied coaction in place of `τ∘Ad`.
pub fn group_cocycle_with(h: &TruncatedHopf, xi: &HMap, coaction: &HMap, k: u32) -> Result<(), String> {
    let id = h.identity();
    let u = h.unit();
    h.compare_on_inputs(
        k,
        |i| h.coproduct(&xi.col_vector(i)),
        |i| {
            let mut t: Tensor = xi.cols[i].iter().map(|(key, c)| (vec![key[0], u], c.clone())).collect();
            tensor_add_scaled(&mut t, &h.apply_slots(&[&id, xi], &coaction.cols[i]), &Q::one());
            t
        },
    )
}

/// Bicomodule structure on `V = H` for the coface complex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bicomodule {
    /// `ρ^L = ρ^R = Δ`.
    Standard,
    /// `ρ^L` the conjugation coaction, `ρ^R(v) = v ⊗ 1`.
    Twisted,
}

pub const MAX_COFACE_DEGREE: usize = 2;

/// `δ_i` on an `n`-cochain `c: H → H^{⊗n}`, `0 ≤ i ≤ n + 1`.
pub fn coface(h: &TruncatedHopf, structure: Bicomodule, c: &HMap, i: usize) -> Result<HMap, HopfError> {
    let n = c.rank;
    if n > MAX_COFACE_DEGREE {
        return Err(HopfError::CochainDegree(n));
    }
    if i > n + 1 {
        return Err(HopfError::CofaceIndex(i, n));
    }
    let id = h.identity();
    let delta = h.coproduct_map();
    if i == 0 {
        let left = match structure {
            Bicomodule::Standard => delta,
            Bicomodule::Twisted => conjugation_coaction(h),
        };
        return Ok(h.compose_slots(&[&id, c], &left));
    }
    if i == n + 1 {
        return Ok(match structure {
            Bicomodule::Standard => h.compose_slots(&[c, &id], &delta),
            Bicomodule::Twisted => {
                let u = h.unit();
                let cols = c
                    .cols
                    .iter()
                    .map(|t| {
                        t.iter()
                            .map(|(k, v)| {
                                let mut k = k.clone();
                                k.push(u);
                                (k, v.clone())
                            })
                            .collect()
                    })
                    .collect();
                HMap { degree: c.degree, rank: n + 1, cols }
            }
        });
    }
    let mut maps: Vec<&HMap> = Vec::new();
    for _ in 1..i {
        maps.push(&id);
    }
    maps.push(&delta);
    for _ in i..n {
        maps.push(&id);
    }
    Ok(h.compose_slots(&maps, c))
}

/// `δ = Σ_i (−1)^i δ_i`.
pub fn cochain_differential(h: &TruncatedHopf, structure: Bicomodule, c: &HMap) -> Result<HMap, HopfError> {
    let mut total = HMap::zero(h.dim(), c.rank + 1, c.degree);
    for i in 0..=c.rank + 1 {
        let d = coface(h, structure, c, i)?;
        total = total.add_scaled(&d, &sign(if i % 2 == 0 { 1 } else { -1 }));
    }
    Ok(total)
}

/// `ω^R_n(c)(x) = Σ ± c(x_1) · Δ^{(n)}(S(x_2))`.
pub fn mc_n(h: &TruncatedHopf, c: &HMap) -> HMap {
    let ds = h.compose(&h.iterated_coproduct(c.rank), &h.antipode_map());
    h.convolve(c, &ds)
}

/// Graded dual of a truncated Hopf algebra whose coproduct is weight-additive
/// and whose product does not raise weight (such as an enveloping algebra).
/// The dual basis element `e^a` has degree `−|a|` and the same weight; the
/// pairing is `(f ⊗ g)(a ⊗ b) = (−1)^{|g||a|} f(a) g(b)`.
pub fn dual_of(data: &HopfData) -> HopfData {
    let n = data.labels.len();
    let w = data.truncation;
    let pair_sign = |a: usize, b: usize| sign(koszul_sign(data.degrees[a], data.degrees[b]));
    let mut product: BTreeMap<(usize, usize), Vector> = BTreeMap::new();
    for (m, t) in data.coproduct.iter().enumerate() {
        for (k, c) in t {
            if data.weights[k[0]] + data.weights[k[1]] <= w {
                let e = product.entry((k[0], k[1])).or_default();
                add_entry(e, m, c * pair_sign(k[0], k[1]));
            }
        }
    }
    product.retain(|_, v| !v.is_empty());
    let mut coproduct = vec![Tensor::new(); n];
    for (&(a, b), v) in &data.product {
        for (m, c) in v {
            add_entry(&mut coproduct[*m], vec![a, b], c * pair_sign(a, b));
        }
    }
    let mut antipode = vec![Vector::new(); n];
    for (a, v) in data.antipode.iter().enumerate() {
        for (m, c) in v {
            add_entry(&mut antipode[*m], a, c.clone());
        }
    }
    let counit = (0..n).map(|i| if i == data.unit { Q::one() } else { Q::zero() }).collect();
    let unit = data.unit;
    HopfData {
        labels: data.labels.iter().map(|l| format!("{l}^")).collect(),
        degrees: data.degrees.iter().map(|d| -d).collect(),
        weights: data.weights.clone(),
        truncation: w,
        unit,
        product,
        coproduct,
        counit,
        antipode,
    }
}

//! Graded Lie algebras and DGLAs by structure constants: axiom checks,
//! adjoint maps, Chevalley–Eilenberg coboundary, and derived constructions.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use num_traits::{One, Zero};

use crate::gca::render_terms;
use crate::grading::{koszul_sign, vec_add_scaled, vec_scale, BasisError, Degree, GradedBasis, GradedLinearMap, Vector};
use crate::linalg::Matrix;
use crate::report::Report;
use crate::scalar::{sign, Q};

pub const MAX_COCHAIN_DEGREE: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DglaError {
    #[error(transparent)]
    Basis(#[from] BasisError),
    #[error("bracket [{0}, {0}] of an even generator must vanish")]
    EvenSelfBracket(String),
    #[error("bracket [{0}, {1}] given twice")]
    DuplicateBracket(String, String),
    #[error("generator {0} has positive degree {1}")]
    PositiveDegree(String, Degree),
    #[error("algebra is not concentrated in degree 0 ({0} has degree {1})")]
    NotDegreeZero(String, Degree),
    #[error("cochain degree {0} exceeds the supported maximum")]
    CochainDegree(usize),
    #[error("representation matrices do not match the target dimension")]
    RepresentationShape,
}

/// `(g, [,], ∂)` with brackets stored for `i < j`, plus `i == j` for odd generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DglaSpec {
    basis: Arc<GradedBasis>,
    brackets: BTreeMap<(usize, usize), Vector>,
    differential: GradedLinearMap,
}

pub fn render_vector(basis: &GradedBasis, v: &Vector) -> String {
    render_terms(v.iter(), |&i| String::from(basis.name(i)))
}

impl DglaSpec {
    /// Brackets may be given for any ordered pair; `(j, i)` with `j > i` is
    /// converted by graded antisymmetry.
    pub fn new(
        basis: GradedBasis,
        brackets: Vec<((usize, usize), Vector)>,
        differential: GradedLinearMap,
    ) -> Result<Self, DglaError> {
        let mut stored: BTreeMap<(usize, usize), Vector> = BTreeMap::new();
        for ((i, j), v) in brackets {
            let (key, val) = if i == j {
                if !basis.is_odd(i) {
                    if v.values().all(Zero::is_zero) {
                        continue;
                    }
                    return Err(DglaError::EvenSelfBracket(basis.name(i).into()));
                }
                ((i, i), v)
            } else if i < j {
                ((i, j), v)
            } else {
                let s = -koszul_sign(basis.degree(i), basis.degree(j));
                ((j, i), vec_scale(&v, &sign(s)))
            };
            if stored.contains_key(&key) {
                return Err(DglaError::DuplicateBracket(basis.name(key.0).into(), basis.name(key.1).into()));
            }
            let val: Vector = val.into_iter().filter(|(_, c)| !c.is_zero()).collect();
            if !val.is_empty() {
                stored.insert(key, val);
            }
        }
        let mut differential = differential.normalized();
        differential.degree = 1;
        Ok(DglaSpec { basis: Arc::new(basis), brackets: stored, differential })
    }

    pub fn abelian(basis: GradedBasis) -> Self {
        DglaSpec { basis: Arc::new(basis), brackets: BTreeMap::new(), differential: GradedLinearMap::zero(1) }
    }

    pub fn basis(&self) -> &Arc<GradedBasis> {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn degree(&self, i: usize) -> Degree {
        self.basis.degree(i)
    }

    pub fn stored_brackets(&self) -> &BTreeMap<(usize, usize), Vector> {
        &self.brackets
    }

    pub fn differential(&self) -> &GradedLinearMap {
        &self.differential
    }

    pub fn with_differential(&self, d: GradedLinearMap) -> Self {
        let mut s = self.clone();
        s.differential = GradedLinearMap { degree: 1, ..d }.normalized();
        s
    }

    pub fn bracket(&self, i: usize, j: usize) -> Vector {
        if i <= j {
            self.brackets.get(&(i, j)).cloned().unwrap_or_default()
        } else {
            let s = -koszul_sign(self.degree(i), self.degree(j));
            vec_scale(&self.brackets.get(&(j, i)).cloned().unwrap_or_default(), &sign(s))
        }
    }

    pub fn bracket_vec(&self, a: &Vector, b: &Vector) -> Vector {
        let mut r = Vector::new();
        for (i, ci) in a {
            for (j, cj) in b {
                vec_add_scaled(&mut r, &self.bracket(*i, *j), &(ci * cj));
            }
        }
        r
    }

    pub fn d(&self, v: &Vector) -> Vector {
        self.differential.apply(v)
    }

    pub fn is_abelian(&self) -> bool {
        self.brackets.is_empty()
    }

    pub fn has_differential(&self) -> bool {
        !self.differential.is_zero()
    }

    /// Generators of degree 0.
    pub fn degree_zero_part(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.degree(i) == 0).collect()
    }

    pub fn is_degree_zero(&self) -> bool {
        self.basis.degrees().iter().all(|&d| d == 0)
    }

    /// `Some(true)` for degrees ≥ 0, `Some(false)` for ≤ 0 (ties go to ≥ 0),
    /// `None` if both signs occur.
    pub fn one_sided(&self) -> Option<bool> {
        let d = self.basis.degrees();
        if d.iter().all(|&x| x >= 0) {
            Some(true)
        } else if d.iter().all(|&x| x <= 0) {
            Some(false)
        } else {
            None
        }
    }

    pub fn unit(&self, i: usize) -> Vector {
        let mut v = Vector::new();
        v.insert(i, Q::one());
        v
    }

    pub fn render(&self, v: &Vector) -> String {
        render_vector(&self.basis, v)
    }

    fn names(&self, idx: &[usize]) -> String {
        let n: Vec<&str> = idx.iter().map(|&i| self.basis.name(i)).collect();
        format!("({})", n.join(", "))
    }

    /// Sub-DGLA spanned by `keep` (caller guarantees closure), reindexed in order.
    pub fn restrict(&self, keep: &[usize]) -> DglaSpec {
        let pos: BTreeMap<usize, usize> = keep.iter().enumerate().map(|(p, &i)| (i, p)).collect();
        let re = |v: &Vector| -> Vector { v.iter().filter_map(|(i, c)| pos.get(i).map(|&p| (p, c.clone()))).collect() };
        let basis = GradedBasis::new(keep.iter().map(|&i| (String::from(self.basis.name(i)), self.degree(i))).collect())
            .expect("subset of a valid basis");
        let mut brackets = BTreeMap::new();
        for (&(i, j), v) in &self.brackets {
            if let (Some(&a), Some(&b)) = (pos.get(&i), pos.get(&j)) {
                let w = re(v);
                if !w.is_empty() {
                    brackets.insert((a.min(b), a.max(b)), w);
                }
            }
        }
        let mut images = BTreeMap::new();
        for (i, v) in &self.differential.images {
            if let Some(&a) = pos.get(i) {
                let w = re(v);
                if !w.is_empty() {
                    images.insert(a, w);
                }
            }
        }
        DglaSpec { basis: Arc::new(basis), brackets, differential: GradedLinearMap { degree: 1, images } }
    }

    /// Same algebra with the basis permuted: new index `p` is old index `order[p]`.
    pub fn permuted(&self, order: &[usize]) -> DglaSpec {
        assert_eq!(order.len(), self.dim());
        let pos: BTreeMap<usize, usize> = order.iter().enumerate().map(|(p, &i)| (i, p)).collect();
        let re = |v: &Vector| -> Vector { v.iter().map(|(i, c)| (pos[i], c.clone())).collect() };
        let basis = GradedBasis::new(order.iter().map(|&i| (String::from(self.basis.name(i)), self.degree(i))).collect())
            .expect("permutation of a valid basis");
        let mut brackets = Vec::new();
        for a in 0..self.dim() {
            for b in a..self.dim() {
                let v = re(&self.bracket(order[a], order[b]));
                if !v.is_empty() {
                    brackets.push(((a, b), v));
                }
            }
        }
        let mut images = BTreeMap::new();
        for (i, v) in &self.differential.images {
            images.insert(pos[i], re(v));
        }
        DglaSpec::new(basis, brackets, GradedLinearMap { degree: 1, images }).expect("permutation of a valid spec")
    }
}

/// Checks bracket degrees, graded antisymmetry and graded Jacobi.
pub fn check_gla(spec: &DglaSpec) -> Report {
    let mut r = Report::new();
    let n = spec.dim();
    let b = &spec.basis;

    let mut bad_degree = None;
    'deg: for i in 0..n {
        for j in i..n {
            let v = spec.bracket(i, j);
            if v.keys().any(|&k| b.degree(k) != b.degree(i) + b.degree(j)) {
                bad_degree = Some(format!("{} = {}", spec.names(&[i, j]), spec.render(&v)));
                break 'deg;
            }
        }
    }
    r.record("bracket_degree", bad_degree.map_or(Ok(()), Err));

    let mut bad_anti = None;
    'anti: for i in 0..n {
        for j in 0..n {
            let lhs = spec.bracket(i, j);
            let rhs = vec_scale(&spec.bracket(j, i), &sign(-koszul_sign(b.degree(i), b.degree(j))));
            if lhs != rhs {
                bad_anti = Some(spec.names(&[i, j]));
                break 'anti;
            }
        }
    }
    r.record("antisymmetry", bad_anti.map_or(Ok(()), Err));

    r.record("jacobi", jacobi_failures(spec).into_iter().next().map_or(Ok(()), |(t, res)| {
        Err(format!("{} residual {}", spec.names(&[t.0, t.1, t.2]), spec.render(&res)))
    }));
    r
}

/// Graded cyclic Jacobi sum
/// `(−1)^{|x||z|}[x,[y,z]] + (−1)^{|y||x|}[y,[z,x]] + (−1)^{|z||y|}[z,[x,y]]`.
pub fn jacobiator(spec: &DglaSpec, i: usize, j: usize, k: usize) -> Vector {
    let (dx, dy, dz) = (spec.degree(i), spec.degree(j), spec.degree(k));
    let mut r = Vector::new();
    let t1 = spec.bracket_vec(&spec.unit(i), &spec.bracket(j, k));
    let t2 = spec.bracket_vec(&spec.unit(j), &spec.bracket(k, i));
    let t3 = spec.bracket_vec(&spec.unit(k), &spec.bracket(i, j));
    vec_add_scaled(&mut r, &t1, &sign(koszul_sign(dx, dz)));
    vec_add_scaled(&mut r, &t2, &sign(koszul_sign(dy, dx)));
    vec_add_scaled(&mut r, &t3, &sign(koszul_sign(dz, dy)));
    r
}

/// All sorted triples `i ≤ j ≤ k` with nonzero Jacobiator.
pub fn jacobi_failures(spec: &DglaSpec) -> Vec<((usize, usize, usize), Vector)> {
    let n = spec.dim();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i..n {
            for k in j..n {
                let res = jacobiator(spec, i, j, k);
                if !res.is_empty() {
                    out.push(((i, j, k), res));
                }
            }
        }
    }
    out
}

/// `check_gla` plus the differential axioms: degree +1, `∂∂ = 0`, Leibniz.
pub fn check_dgla(spec: &DglaSpec) -> Report {
    let mut r = check_gla(spec);
    let b = &spec.basis;
    r.record(
        "differential_degree",
        spec.differential.degree_violation(b, b).map_or(Ok(()), |i| Err(String::from(b.name(i)))),
    );
    let dd = spec.differential.compose(&spec.differential).normalized();
    r.record(
        "differential_squared",
        dd.images.iter().next().map_or(Ok(()), |(&i, v)| Err(format!("{} -> {}", b.name(i), spec.render(v)))),
    );
    let mut d = spec.differential.clone();
    d.degree = 1;
    let dr = derivation_check(spec, &d);
    for l in dr.lines {
        r.lines.push(crate::report::ReportLine { key: "differential_leibniz".into(), ..l });
    }
    r
}

/// Matrix of `[x, -]` as a graded linear map of degree `|x|`.
pub fn adjoint(spec: &DglaSpec, x: &Vector) -> GradedLinearMap {
    let deg = spec.basis.vector_degree(x).unwrap_or(0);
    let mut images = BTreeMap::new();
    for j in 0..spec.dim() {
        let v = spec.bracket_vec(x, &spec.unit(j));
        if !v.is_empty() {
            images.insert(j, v);
        }
    }
    GradedLinearMap { degree: deg, images }
}

/// Checks `δ[x,y] = [δx,y] + (−1)^{|δ||x|}[x,δy]` on all basis pairs.
pub fn derivation_check(spec: &DglaSpec, delta: &GradedLinearMap) -> Report {
    let mut r = Report::new();
    let n = spec.dim();
    let mut fail = None;
    'outer: for i in 0..n {
        for j in 0..n {
            let lhs = delta.apply(&spec.bracket(i, j));
            let mut rhs = spec.bracket_vec(&delta.image(i), &spec.unit(j));
            let t = spec.bracket_vec(&spec.unit(i), &delta.image(j));
            vec_add_scaled(&mut rhs, &t, &sign(koszul_sign(delta.degree, spec.degree(i))));
            let mut res = lhs;
            vec_add_scaled(&mut res, &rhs, &-Q::one());
            if !res.is_empty() {
                fail = Some(format!("{} residual {}", spec.names(&[i, j]), spec.render(&res)));
                break 'outer;
            }
        }
    }
    r.record("derivation", fail.map_or(Ok(()), Err));
    r
}

/// A representation of a degree-0 Lie algebra on `k^dim`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieRepresentation {
    pub dim: usize,
    pub action: Vec<Matrix>,
}

impl LieRepresentation {
    pub fn adjoint(spec: &DglaSpec) -> Self {
        let n = spec.dim();
        let action = (0..n)
            .map(|i| {
                let ad = adjoint(spec, &spec.unit(i));
                let mut m = crate::linalg::zeros(n, n);
                for (j, v) in &ad.images {
                    for (k, c) in v {
                        m[*k][*j] = c.clone();
                    }
                }
                m
            })
            .collect();
        LieRepresentation { dim: n, action }
    }

    pub fn trivial(spec: &DglaSpec, dim: usize) -> Self {
        LieRepresentation { dim, action: vec![crate::linalg::zeros(dim, dim); spec.dim()] }
    }

    pub fn act(&self, x: &Vector, v: &[Q]) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.dim];
        for (i, c) in x {
            let m = &self.action[*i];
            for (r, row) in m.iter().enumerate() {
                for (k, a) in row.iter().enumerate() {
                    if !a.is_zero() && !v[k].is_zero() {
                        out[r] += c * a * &v[k];
                    }
                }
            }
        }
        out
    }

    /// Checks `ρ[x,y] = ρ(x)ρ(y) − ρ(y)ρ(x)` on basis pairs (degree-0 algebras).
    pub fn check(&self, spec: &DglaSpec) -> Report {
        let mut r = Report::new();
        let n = spec.dim();
        let mut fail = None;
        'o: for i in 0..n {
            for j in 0..n {
                let xy = crate::linalg::mat_mul(&self.action[i], &self.action[j]);
                let yx = crate::linalg::mat_mul(&self.action[j], &self.action[i]);
                let mut br = crate::linalg::zeros(self.dim, self.dim);
                for (k, c) in spec.bracket(i, j) {
                    for a in 0..self.dim {
                        for b in 0..self.dim {
                            br[a][b] += &c * &self.action[k][a][b];
                        }
                    }
                }
                for a in 0..self.dim {
                    for b in 0..self.dim {
                        if br[a][b] != &xy[a][b] - &yx[a][b] {
                            fail = Some(spec.names(&[i, j]));
                            break 'o;
                        }
                    }
                }
            }
        }
        r.record("representation", fail.map_or(Ok(()), Err));
        r
    }
}

/// Alternating `n`-cochain on a degree-0 Lie algebra with values in `k^dim`,
/// stored on strictly increasing index tuples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cochain {
    pub n: usize,
    pub dim: usize,
    pub values: BTreeMap<Vec<usize>, Vec<Q>>,
}

impl Cochain {
    pub fn zero(n: usize, dim: usize) -> Self {
        Cochain { n, dim, values: BTreeMap::new() }
    }

    pub fn set(&mut self, args: Vec<usize>, v: Vec<Q>) {
        debug_assert!(args.windows(2).all(|w| w[0] < w[1]));
        if v.iter().any(|c| !c.is_zero()) {
            self.values.insert(args, v);
        } else {
            self.values.remove(&args);
        }
    }

    /// Value on an arbitrary tuple of basis indices.
    pub fn eval(&self, args: &[usize]) -> Vec<Q> {
        let mut a = args.to_vec();
        let mut s = 1;
        for k in 1..a.len() {
            let mut j = k;
            while j > 0 && a[j - 1] > a[j] {
                a.swap(j - 1, j);
                s = -s;
                j -= 1;
            }
        }
        if a.windows(2).any(|w| w[0] == w[1]) {
            return vec![Q::zero(); self.dim];
        }
        match self.values.get(&a) {
            Some(v) => v.iter().map(|c| c * sign(s)).collect(),
            None => vec![Q::zero(); self.dim],
        }
    }

    /// Multilinear evaluation on vectors.
    pub fn eval_vecs(&self, args: &[Vector]) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.dim];
        fn rec(c: &Cochain, args: &[Vector], idx: &mut Vec<usize>, coeff: Q, out: &mut Vec<Q>) {
            if idx.len() == args.len() {
                for (o, v) in out.iter_mut().zip(c.eval(idx)) {
                    *o += &coeff * v;
                }
                return;
            }
            for (i, x) in &args[idx.len()] {
                idx.push(*i);
                rec(c, args, idx, &coeff * x, out);
                idx.pop();
            }
        }
        rec(self, args, &mut Vec::new(), Q::one(), &mut out);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }
}

/// Chevalley–Eilenberg coboundary
/// `Σ (−1)^i ρ(X_i) ω(.., X̂_i, ..) + Σ_{i<j} (−1)^{i+j} ω([X_i,X_j], .., X̂_i, .., X̂_j, ..)`.
pub fn ce_coboundary(spec: &DglaSpec, omega: &Cochain, rho: &LieRepresentation) -> Result<Cochain, DglaError> {
    if let Some(i) = (0..spec.dim()).find(|&i| spec.degree(i) != 0) {
        return Err(DglaError::NotDegreeZero(spec.basis.name(i).into(), spec.degree(i)));
    }
    if omega.n > MAX_COCHAIN_DEGREE {
        return Err(DglaError::CochainDegree(omega.n));
    }
    if rho.dim != omega.dim || rho.action.len() != spec.dim() {
        return Err(DglaError::RepresentationShape);
    }
    let n = omega.n;
    let mut out = Cochain::zero(n + 1, omega.dim);
    for args in increasing_tuples(spec.dim(), n + 1) {
        let mut val = vec![Q::zero(); omega.dim];
        for i in 0..=n {
            let rest: Vec<Vector> = args.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, &a)| spec.unit(a)).collect();
            let w = omega.eval_vecs(&rest);
            let t = rho.act(&spec.unit(args[i]), &w);
            for (v, x) in val.iter_mut().zip(t) {
                *v += sign(if i % 2 == 0 { 1 } else { -1 }) * x;
            }
        }
        for i in 0..=n {
            for j in i + 1..=n {
                let mut rest = vec![spec.bracket(args[i], args[j])];
                rest.extend(args.iter().enumerate().filter(|&(k, _)| k != i && k != j).map(|(_, &a)| spec.unit(a)));
                let w = omega.eval_vecs(&rest);
                for (v, x) in val.iter_mut().zip(w) {
                    *v += sign(if (i + j) % 2 == 0 { 1 } else { -1 }) * x;
                }
            }
        }
        out.set(args, val);
    }
    Ok(out)
}

pub fn increasing_tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(n, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, k, 0, &mut Vec::new(), &mut out);
    out
}

/// `g[1] ⊕ g` with differential the identity `g[1] → g`. The shifted copy of
/// `x` is named `x[1]` and follows the original basis.
pub fn shifted_tangent_dgla(g0: &DglaSpec) -> Result<DglaSpec, DglaError> {
    if let Some(i) = (0..g0.dim()).find(|&i| g0.degree(i) != 0) {
        return Err(DglaError::NotDegreeZero(g0.basis.name(i).into(), g0.degree(i)));
    }
    let n = g0.dim();
    let mut gens: Vec<(String, Degree)> = g0.basis.names().iter().map(|s| (s.clone(), 0)).collect();
    gens.extend(g0.basis.names().iter().map(|s| (format!("{s}[1]"), -1)));
    let basis = GradedBasis::new(gens)?;
    let shift = |v: &Vector| -> Vector { v.iter().map(|(i, c)| (i + n, c.clone())).collect() };
    let mut brackets = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let v = g0.bracket(i, j);
            if i < j && !v.is_empty() {
                brackets.push(((i, j), v.clone()));
            }
            if !v.is_empty() {
                brackets.push(((i, j + n), shift(&v)));
            }
        }
    }
    let mut images = BTreeMap::new();
    for i in 0..n {
        images.insert(i + n, g0.unit(i));
    }
    DglaSpec::new(basis, brackets, GradedLinearMap { degree: 1, images })
}

/// Abelian DGLA on the dual basis: `(g_i)*` sits in degree `1 − i` and the
/// differential is the transpose of `∂`. Requires degrees ≤ 0.
pub fn ce_dual_dgla(spec: &DglaSpec) -> Result<DglaSpec, DglaError> {
    if let Some(i) = (0..spec.dim()).find(|&i| spec.degree(i) > 0) {
        return Err(DglaError::PositiveDegree(spec.basis.name(i).into(), spec.degree(i)));
    }
    let gens: Vec<(String, Degree)> =
        (0..spec.dim()).map(|i| (format!("{}*", spec.basis.name(i)), 1 - spec.degree(i))).collect();
    let basis = GradedBasis::new(gens)?;
    Ok(DglaSpec { basis: Arc::new(basis), brackets: BTreeMap::new(), differential: transpose(&spec.differential) })
}

/// Transpose in dual bases: `(x_j)* ↦ Σ_i a_{ij} ... ` with `∂x_i = Σ a_{ki} x_k`
/// giving `∂*(x_k)* = Σ_i a_{ki} (x_i)*`.
pub fn transpose(d: &GradedLinearMap) -> GradedLinearMap {
    let mut images: BTreeMap<usize, Vector> = BTreeMap::new();
    for (&i, v) in &d.images {
        for (&k, c) in v {
            crate::grading::add_entry(images.entry(k).or_default(), i, c.clone());
        }
    }
    GradedLinearMap { degree: d.degree, images }.normalized()
}

/// `g ⊕ k·D` with `D` of degree 1, `[D, x] = ∂x`, `[D, D] = 0`; the new
/// differential is `ad_D`. `D` is appended last and named `D` (primed until unique).
pub fn extended_dgla(spec: &DglaSpec) -> Result<DglaSpec, DglaError> {
    let n = spec.dim();
    let mut name = String::from("D");
    while spec.basis.index_of(&name).is_ok() {
        name.push('\'');
    }
    let mut gens: Vec<(String, Degree)> =
        (0..n).map(|i| (String::from(spec.basis.name(i)), spec.degree(i))).collect();
    gens.push((name, 1));
    let basis = GradedBasis::new(gens)?;
    let mut brackets: Vec<((usize, usize), Vector)> =
        spec.brackets.iter().map(|(&k, v)| (k, v.clone())).collect();
    for i in 0..n {
        let dx = spec.d(&spec.unit(i));
        if !dx.is_empty() {
            brackets.push(((n, i), dx));
        }
    }
    let mut images = spec.differential.images.clone();
    images.remove(&n);
    DglaSpec::new(basis, brackets, GradedLinearMap { degree: 1, images })
}

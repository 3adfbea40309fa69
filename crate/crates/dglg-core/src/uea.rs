//! Universal enveloping algebra `U(g)` in graded PBW normal form, with its
//! primitive Hopf structure.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use num_traits::{One, Zero};

use crate::dgla::DglaSpec;
use crate::gca::render_terms;
use crate::grading::{add_entry, koszul_sign, Degree};
use crate::hopf::{HopfData, Tensor};
use crate::scalar::{qr, sign, Q};

/// Non-decreasing generator indices, odd generators at most once.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct PbwMonomial(pub Vec<usize>);

impl PbwMonomial {
    pub fn weight(&self) -> u32 {
        self.0.len() as u32
    }

    pub fn degree(&self, spec: &DglaSpec) -> Degree {
        self.0.iter().map(|&i| spec.degree(i)).sum()
    }

    pub fn render(&self, spec: &DglaSpec) -> String {
        if self.0.is_empty() {
            return String::from("1");
        }
        let names: Vec<&str> = self.0.iter().map(|&i| spec.basis().name(i)).collect();
        names.join("*")
    }
}

impl Ord for PbwMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for PbwMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub type UeaTerms = BTreeMap<PbwMonomial, Q>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum UeaError {
    #[error("operands live in enveloping algebras of different specs")]
    SpecMismatch,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UeaElement {
    pub spec: Arc<DglaSpec>,
    pub truncation: u32,
    pub terms: UeaTerms,
}

impl UeaElement {
    pub fn zero(spec: &Arc<DglaSpec>, w: u32) -> Self {
        UeaElement { spec: spec.clone(), truncation: w, terms: BTreeMap::new() }
    }

    pub fn one(spec: &Arc<DglaSpec>, w: u32) -> Self {
        let mut u = Self::zero(spec, w);
        u.terms.insert(PbwMonomial::default(), Q::one());
        u
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn render(&self) -> String {
        render_terms(self.terms.iter(), |m| m.render(&self.spec))
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            add_entry(&mut r.terms, m.clone(), -c.clone());
        }
        r
    }
}

/// Normal form of `m · x` for a PBW monomial `m`, added into `out` with factor `c`.
pub fn insert_right(spec: &DglaSpec, m: &[usize], x: usize, c: &Q, out: &mut UeaTerms) {
    if c.is_zero() {
        return;
    }
    match m.last() {
        None => add_entry(out, PbwMonomial(vec![x]), c.clone()),
        Some(&y) if y < x || (y == x && !spec.basis().is_odd(x)) => {
            let mut w = m.to_vec();
            w.push(x);
            add_entry(out, PbwMonomial(w), c.clone());
        }
        Some(&y) if y == x => {
            // odd square: x·x = ½[x,x]
            let rest = &m[..m.len() - 1];
            for (z, cz) in spec.bracket(x, x) {
                insert_right(spec, rest, z, &(c * cz * qr(1, 2)), out);
            }
        }
        Some(&y) => {
            // m'·y·x = (−1)^{|x||y|} m'·x·y + m'·[y,x]
            let rest = &m[..m.len() - 1];
            let s = sign(koszul_sign(spec.degree(x), spec.degree(y)));
            let mut tmp = UeaTerms::new();
            insert_right(spec, rest, x, &Q::one(), &mut tmp);
            for (t, ct) in tmp {
                insert_right(spec, &t.0, y, &(c * &s * ct), out);
            }
            for (z, cz) in spec.bracket(y, x) {
                insert_right(spec, rest, z, &(c * cz), out);
            }
        }
    }
}

/// PBW normal form of an arbitrary word.
pub fn pbw_normal_form(spec: &DglaSpec, word: &[usize]) -> UeaTerms {
    let mut cur = UeaTerms::new();
    cur.insert(PbwMonomial::default(), Q::one());
    for &x in word {
        let mut next = UeaTerms::new();
        for (m, c) in &cur {
            insert_right(spec, &m.0, x, c, &mut next);
        }
        cur = next;
    }
    cur
}

/// Normal form of `m1 · m2`.
pub fn multiply_monomials(spec: &DglaSpec, m1: &[usize], m2: &[usize]) -> UeaTerms {
    let mut cur = UeaTerms::new();
    cur.insert(PbwMonomial(m1.to_vec()), Q::one());
    for &x in m2 {
        let mut next = UeaTerms::new();
        for (m, c) in &cur {
            insert_right(spec, &m.0, x, c, &mut next);
        }
        cur = next;
    }
    cur
}

/// `Δm = Σ ± m_S ⊗ m_{S^c}` over sub-sequences, Koszul sign for the shuffle.
pub fn monomial_coproduct(spec: &DglaSpec, m: &[usize]) -> BTreeMap<(PbwMonomial, PbwMonomial), Q> {
    let k = m.len();
    let mut out = BTreeMap::new();
    for mask in 0u32..(1 << k) {
        let mut left = Vec::new();
        let mut right = Vec::new();
        let mut s = 1;
        for (p, &x) in m.iter().enumerate() {
            if mask & (1 << p) != 0 {
                // x moves left past every right-factor before it
                for &r in &right {
                    s *= koszul_sign(spec.degree(r), spec.degree(x));
                }
                left.push(x);
            } else {
                right.push(x);
            }
        }
        add_entry(&mut out, (PbwMonomial(left), PbwMonomial(right)), sign(s));
    }
    out
}

/// `S(x_1…x_k) = (−1)^k (Koszul sign of reversal) x_k…x_1`, normalized.
pub fn monomial_antipode(spec: &DglaSpec, m: &[usize]) -> UeaTerms {
    let mut s = if m.len() % 2 == 0 { 1 } else { -1 };
    for i in 0..m.len() {
        for j in i + 1..m.len() {
            s *= koszul_sign(spec.degree(m[i]), spec.degree(m[j]));
        }
    }
    let rev: Vec<usize> = m.iter().rev().copied().collect();
    pbw_normal_form(spec, &rev).into_iter().map(|(k, c)| (k, c * sign(s))).collect()
}

/// All PBW monomials of weight ≤ `w`, in canonical order.
pub fn pbw_monomials(spec: &DglaSpec, w: u32) -> Vec<PbwMonomial> {
    fn rec(spec: &DglaSpec, start: usize, left: u32, cur: &mut Vec<usize>, out: &mut Vec<PbwMonomial>) {
        out.push(PbwMonomial(cur.clone()));
        if left == 0 {
            return;
        }
        for i in start..spec.dim() {
            cur.push(i);
            let next = if spec.basis().is_odd(i) { i + 1 } else { i };
            rec(spec, next, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(spec, 0, w, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// Enveloping algebra of a spec, truncated at weight `W`.
#[derive(Debug, Clone)]
pub struct Uea {
    pub spec: Arc<DglaSpec>,
    pub truncation: u32,
}

impl Uea {
    pub fn new(spec: DglaSpec, truncation: u32) -> Self {
        Uea { spec: Arc::new(spec), truncation }
    }

    fn wrap(&self, terms: UeaTerms) -> UeaElement {
        let mut terms = terms;
        terms.retain(|m, _| m.weight() <= self.truncation);
        UeaElement { spec: self.spec.clone(), truncation: self.truncation, terms }
    }

    pub fn one(&self) -> UeaElement {
        UeaElement::one(&self.spec, self.truncation)
    }

    pub fn generator(&self, i: usize) -> UeaElement {
        self.wrap([(PbwMonomial(vec![i]), Q::one())].into_iter().collect())
    }

    pub fn pbw_normal_form(&self, word: &[usize]) -> UeaElement {
        self.wrap(pbw_normal_form(&self.spec, word))
    }

    /// Product; pairs of terms whose weights add up beyond `W` are dropped.
    pub fn multiply(&self, a: &UeaElement, b: &UeaElement) -> Result<UeaElement, UeaError> {
        if *a.spec != *self.spec || *b.spec != *self.spec {
            return Err(UeaError::SpecMismatch);
        }
        let w = self.truncation.min(a.truncation).min(b.truncation);
        let mut out = UeaTerms::new();
        for (m1, c1) in &a.terms {
            for (m2, c2) in &b.terms {
                if m1.weight() + m2.weight() > w {
                    continue;
                }
                for (m, c) in multiply_monomials(&self.spec, &m1.0, &m2.0) {
                    add_entry(&mut out, m, c * c1 * c2);
                }
            }
        }
        let mut r = self.wrap(out);
        r.truncation = w;
        Ok(r)
    }

    pub fn coproduct(&self, u: &UeaElement) -> BTreeMap<(PbwMonomial, PbwMonomial), Q> {
        let mut out = BTreeMap::new();
        for (m, c) in &u.terms {
            for (k, v) in monomial_coproduct(&self.spec, &m.0) {
                add_entry(&mut out, k, v * c);
            }
        }
        out
    }

    pub fn counit(&self, u: &UeaElement) -> Q {
        u.terms.get(&PbwMonomial::default()).cloned().unwrap_or_else(Q::zero)
    }

    pub fn antipode(&self, u: &UeaElement) -> UeaElement {
        let mut out = UeaTerms::new();
        for (m, c) in &u.terms {
            for (k, v) in monomial_antipode(&self.spec, &m.0) {
                add_entry(&mut out, k, v * c);
            }
        }
        self.wrap(out)
    }

    /// The truncated Hopf algebra on PBW monomials of weight ≤ `W`.
    pub fn hopf_data(&self) -> HopfData {
        let spec = &*self.spec;
        let basis = pbw_monomials(spec, self.truncation);
        let index: BTreeMap<PbwMonomial, usize> = basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let to_vec = |t: UeaTerms| -> crate::grading::Vector {
            t.into_iter().filter_map(|(m, c)| index.get(&m).map(|&i| (i, c))).collect()
        };
        let mut product = BTreeMap::new();
        for (i, a) in basis.iter().enumerate() {
            for (j, b) in basis.iter().enumerate() {
                if a.weight() + b.weight() <= self.truncation {
                    let v = to_vec(multiply_monomials(spec, &a.0, &b.0));
                    if !v.is_empty() {
                        product.insert((i, j), v);
                    }
                }
            }
        }
        let coproduct = basis
            .iter()
            .map(|m| {
                let mut t = Tensor::new();
                for ((l, r), c) in monomial_coproduct(spec, &m.0) {
                    add_entry(&mut t, vec![index[&l], index[&r]], c);
                }
                t
            })
            .collect();
        let counit = basis.iter().map(|m| if m.0.is_empty() { Q::one() } else { Q::zero() }).collect();
        let antipode = basis.iter().map(|m| to_vec(monomial_antipode(spec, &m.0))).collect();
        HopfData {
            labels: basis.iter().map(|m| m.render(spec)).collect(),
            degrees: basis.iter().map(|m| m.degree(spec)).collect(),
            weights: basis.iter().map(PbwMonomial::weight).collect(),
            truncation: self.truncation,
            unit: 0,
            product,
            coproduct,
            counit,
            antipode,
        }
    }
}

/// Normal form by plain rewriting: `pick(n)` chooses one of the `n` pending
/// unsorted words and then one of its `n` rewritable positions. Any choice
/// sequence gives the same result as `pbw_normal_form`.
pub fn rewrite_normal_form(spec: &DglaSpec, word: &[usize], pick: &mut dyn FnMut(usize) -> usize) -> UeaTerms {
    let rewritable = |w: &[usize], p: usize| w[p] > w[p + 1] || (w[p] == w[p + 1] && spec.basis().is_odd(w[p]));
    let mut words: BTreeMap<Vec<usize>, Q> = BTreeMap::new();
    words.insert(word.to_vec(), Q::one());
    loop {
        let pending: Vec<Vec<usize>> =
            words.keys().filter(|w| (0..w.len().saturating_sub(1)).any(|p| rewritable(w, p))).cloned().collect();
        if pending.is_empty() {
            break;
        }
        let w = pending[pick(pending.len())].clone();
        let c = words.remove(&w).expect("pending word is present");
        let spots: Vec<usize> = (0..w.len() - 1).filter(|&p| rewritable(&w, p)).collect();
        let p = spots[pick(spots.len())];
        let (a, b) = (w[p], w[p + 1]);
        let splice = |z: usize| {
            let mut nw = w[..p].to_vec();
            nw.push(z);
            nw.extend_from_slice(&w[p + 2..]);
            nw
        };
        if a == b {
            for (z, cz) in spec.bracket(a, a) {
                add_entry(&mut words, splice(z), &c * cz * qr(1, 2));
            }
        } else {
            let mut sw = w.clone();
            sw.swap(p, p + 1);
            add_entry(&mut words, sw, &c * sign(koszul_sign(spec.degree(a), spec.degree(b))));
            for (z, cz) in spec.bracket(a, b) {
                add_entry(&mut words, splice(z), &c * cz);
            }
        }
    }
    words.into_iter().map(|(w, c)| (PbwMonomial(w), c)).collect()
}

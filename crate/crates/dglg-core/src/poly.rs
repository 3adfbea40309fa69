//! Commutative multivariate polynomials over `Q` (coordinates on a nilpotent group).

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};
use num_traits::{One, Zero};

use crate::grading::add_entry;
use crate::scalar::Q;

/// Dense exponent vectors keyed to coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Q>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Q) -> Self {
        let mut p = Poly::zero(nvars);
        add_entry(&mut p.terms, vec![0; nvars], c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Poly::constant(nvars, Q::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Poly::monomial(nvars, e, Q::one())
    }

    pub fn monomial(nvars: usize, exps: Vec<u32>, c: Q) -> Self {
        assert_eq!(exps.len(), nvars);
        let mut p = Poly::zero(nvars);
        add_entry(&mut p.terms, exps, c);
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, Q> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exps: &[u32]) -> Q {
        self.terms.get(exps).cloned().unwrap_or_else(Q::zero)
    }

    pub fn constant_term(&self) -> Q {
        self.coefficient(&vec![0; self.nvars])
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Drops all terms of total degree above `d`.
    pub fn truncate(mut self, d: u32) -> Self {
        self.terms.retain(|e, _| e.iter().sum::<u32>() <= d);
        self
    }

    /// Keeps only terms of total degree exactly `d`.
    pub fn homogeneous_part(&self, d: u32) -> Self {
        let mut p = self.clone();
        p.terms.retain(|e, _| e.iter().sum::<u32>() == d);
        p
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        let mut p = self.clone();
        for v in p.terms.values_mut() {
            *v *= c;
        }
        p
    }

    pub fn add_assign_scaled(&mut self, other: &Poly, c: &Q) {
        assert_eq!(self.nvars, other.nvars);
        if c.is_zero() {
            return;
        }
        for (e, v) in &other.terms {
            add_entry(&mut self.terms, e.clone(), v * c);
        }
    }

    /// Product with terms of total degree above `max` dropped.
    pub fn mul_trunc(&self, other: &Poly, max: Option<u32>) -> Poly {
        assert_eq!(self.nvars, other.nvars);
        let mut r = Poly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            let d1: u32 = e1.iter().sum();
            for (e2, c2) in &other.terms {
                if let Some(m) = max {
                    if d1 + e2.iter().sum::<u32>() > m {
                        continue;
                    }
                }
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                add_entry(&mut r.terms, e, c1 * c2);
            }
        }
        r
    }

    pub fn pow_trunc(&self, k: u32, max: Option<u32>) -> Poly {
        let mut r = Poly::one(self.nvars);
        for _ in 0..k {
            r = r.mul_trunc(self, max);
        }
        r
    }

    pub fn derivative(&self, i: usize) -> Poly {
        let mut r = Poly::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut e2 = e.clone();
                e2[i] -= 1;
                add_entry(&mut r.terms, e2, c * Q::from_integer(e[i].into()));
            }
        }
        r
    }

    /// `self(values[0], ..., values[n-1])`, all values over a common ring.
    pub fn substitute(&self, values: &[Poly], max: Option<u32>) -> Poly {
        assert_eq!(values.len(), self.nvars);
        let target = values.first().map_or(0, |p| p.nvars);
        let mut cache: BTreeMap<(usize, u32), Poly> = BTreeMap::new();
        let mut r = Poly::zero(target);
        for (e, c) in &self.terms {
            let mut t = Poly::constant(target, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let pw = cache.entry((i, k)).or_insert_with(|| values[i].pow_trunc(k, max)).clone();
                t = t.mul_trunc(&pw, max);
                if t.is_zero() {
                    break;
                }
            }
            r.add_assign_scaled(&t, &Q::one());
        }
        r
    }

    /// Reinterprets in `new_n` variables, variable `i` becoming `offset + i`.
    pub fn embed(&self, new_n: usize, offset: usize) -> Poly {
        let mut r = Poly::zero(new_n);
        for (e, c) in &self.terms {
            let mut e2 = vec![0; new_n];
            e2[offset..offset + self.nvars].copy_from_slice(e);
            r.terms.insert(e2, c.clone());
        }
        r
    }

    pub fn evaluate(&self, point: &[Q]) -> Q {
        let mut s = Q::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                for _ in 0..k {
                    t *= x;
                }
            }
            s += t;
        }
        s
    }

    pub fn render(&self, names: &[&str]) -> String {
        let mut keys: Vec<&Vec<u32>> = self.terms.keys().collect();
        keys.sort_by(|a, b| {
            let (da, db): (u32, u32) = (a.iter().sum(), b.iter().sum());
            da.cmp(&db).then_with(|| b.cmp(a))
        });
        let show = |e: &Vec<u32>| {
            let parts: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { String::from(names[i]) } else { format!("{}^{}", names[i], k) })
                .collect();
            if parts.is_empty() {
                String::from("1")
            } else {
                parts.join("*")
            }
        };
        crate::gca::render_terms(keys.into_iter().map(|k| (k, &self.terms[k])), show)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let mut r = self.clone();
        r.add_assign_scaled(o, &Q::one());
        r
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        let mut r = self.clone();
        r.add_assign_scaled(o, &-Q::one());
        r
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        self.mul_trunc(o, None)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-Q::one())
    }
}

/// A vector of polynomials (a polynomial map into a vector space).
pub type PolyVec = Vec<Poly>;

pub fn polyvec_zero(dim: usize, nvars: usize) -> PolyVec {
    vec![Poly::zero(nvars); dim]
}

pub fn polyvec_is_zero(v: &[Poly]) -> bool {
    v.iter().all(Poly::is_zero)
}

pub fn polyvec_add(a: &[Poly], b: &[Poly]) -> PolyVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn polyvec_sub(a: &[Poly], b: &[Poly]) -> PolyVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn polyvec_scale(a: &[Poly], c: &Q) -> PolyVec {
    a.iter().map(|x| x.scale(c)).collect()
}

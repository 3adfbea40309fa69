//! Degrees, parities, the Koszul sign, graded bases and graded linear maps.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use num_traits::Zero;

use crate::scalar::Q;

pub type Degree = i32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Parity {
    Even,
    Odd,
}

pub fn parity(d: Degree) -> Parity {
    if d.rem_euclid(2) == 0 {
        Parity::Even
    } else {
        Parity::Odd
    }
}

pub fn is_odd(d: Degree) -> bool {
    parity(d) == Parity::Odd
}

/// `(-1)^(d1*d2)` as `+1` / `-1`.
pub fn koszul_sign(d1: Degree, d2: Degree) -> i32 {
    if is_odd(d1) && is_odd(d2) {
        -1
    } else {
        1
    }
}

/// Sparse vector over basis indices; zero coefficients are never stored.
pub type Vector = BTreeMap<usize, Q>;

pub fn vec_add_scaled(acc: &mut Vector, v: &Vector, c: &Q) {
    if c.is_zero() {
        return;
    }
    for (i, x) in v {
        add_entry(acc, *i, x * c);
    }
}

pub fn add_entry<K: Ord>(acc: &mut BTreeMap<K, Q>, k: K, x: Q) {
    if x.is_zero() {
        return;
    }
    use alloc::collections::btree_map::Entry;
    match acc.entry(k) {
        Entry::Vacant(e) => {
            e.insert(x);
        }
        Entry::Occupied(mut e) => {
            let s = e.get() + &x;
            if s.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = s;
            }
        }
    }
}

pub fn vec_scale(v: &Vector, c: &Q) -> Vector {
    if c.is_zero() {
        return Vector::new();
    }
    v.iter().map(|(i, x)| (*i, x * c)).collect()
}

pub fn vec_sub(a: &Vector, b: &Vector) -> Vector {
    let mut r = a.clone();
    for (i, x) in b {
        add_entry(&mut r, *i, -x.clone());
    }
    r
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BasisError {
    #[error("duplicate generator name {0:?}")]
    DuplicateName(String),
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
}

/// Ordered list of named homogeneous generators. The order is the canonical
/// order for monomials and PBW words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedBasis {
    names: Vec<String>,
    degrees: Vec<Degree>,
}

impl GradedBasis {
    pub fn new(gens: Vec<(String, Degree)>) -> Result<Self, BasisError> {
        let mut names = Vec::with_capacity(gens.len());
        let mut degrees = Vec::with_capacity(gens.len());
        for (n, d) in gens {
            if names.contains(&n) {
                return Err(BasisError::DuplicateName(n));
            }
            names.push(n);
            degrees.push(d);
        }
        Ok(GradedBasis { names, degrees })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn degree(&self, i: usize) -> Degree {
        self.degrees[i]
    }

    pub fn degrees(&self) -> &[Degree] {
        &self.degrees
    }

    pub fn index_of(&self, name: &str) -> Result<usize, BasisError> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| BasisError::UnknownGenerator(String::from(name)))
    }

    pub fn is_odd(&self, i: usize) -> bool {
        is_odd(self.degrees[i])
    }

    /// Degree of a vector if all its terms share one degree.
    pub fn vector_degree(&self, v: &Vector) -> Option<Degree> {
        let mut it = v.keys().map(|&i| self.degrees[i]);
        let d = it.next()?;
        if it.all(|e| e == d) {
            Some(d)
        } else {
            None
        }
    }
}

/// Linear map between spaces with graded bases, given on source generators.
/// Generators missing from `images` map to zero.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GradedLinearMap {
    pub degree: Degree,
    pub images: BTreeMap<usize, Vector>,
}

impl GradedLinearMap {
    pub fn zero(degree: Degree) -> Self {
        GradedLinearMap { degree, images: BTreeMap::new() }
    }

    pub fn identity(n: usize) -> Self {
        let mut images = BTreeMap::new();
        for i in 0..n {
            let mut v = Vector::new();
            v.insert(i, crate::scalar::one());
            images.insert(i, v);
        }
        GradedLinearMap { degree: 0, images }
    }

    pub fn image(&self, i: usize) -> Vector {
        self.images.get(&i).cloned().unwrap_or_default()
    }

    pub fn apply(&self, v: &Vector) -> Vector {
        let mut r = Vector::new();
        for (i, c) in v {
            if let Some(img) = self.images.get(i) {
                vec_add_scaled(&mut r, img, c);
            }
        }
        r
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &GradedLinearMap) -> GradedLinearMap {
        let mut images = BTreeMap::new();
        for (i, v) in &other.images {
            let w = self.apply(v);
            if !w.is_empty() {
                images.insert(*i, w);
            }
        }
        GradedLinearMap { degree: self.degree + other.degree, images }
    }

    pub fn is_zero(&self) -> bool {
        self.images.values().all(|v| v.is_empty())
    }

    /// First source generator whose image is not homogeneous of degree
    /// `deg(source) + self.degree`.
    pub fn degree_violation(&self, source: &GradedBasis, target: &GradedBasis) -> Option<usize> {
        self.images.iter().find_map(|(&i, v)| {
            let want = source.degree(i) + self.degree;
            if v.keys().all(|&j| target.degree(j) == want) {
                None
            } else {
                Some(i)
            }
        })
    }

    pub fn normalized(mut self) -> Self {
        self.images.retain(|_, v| {
            v.retain(|_, c| !c.is_zero());
            !v.is_empty()
        });
        self
    }
}

//! Finitely supported integer combinations of basis keys, and the
//! normalized chain complex `CX` with its Alexander–Whitney coproduct.

use std::collections::btree_map::{self, BTreeMap};
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::sset::{Simplex, SimplexId, SimplicialSet};

/// An element of a free graded ℤ-module, homogeneous of one degree.
/// Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Chain<K: Ord> {
    degree: usize,
    terms: BTreeMap<K, BigInt>,
}

impl<K: Ord + Clone> Chain<K> {
    pub fn zero(degree: usize) -> Self {
        Self { degree, terms: BTreeMap::new() }
    }

    pub fn basis(degree: usize, key: K) -> Self {
        Self::term(degree, key, BigInt::one())
    }

    pub fn term(degree: usize, key: K, coeff: impl Into<BigInt>) -> Self {
        let mut c = Self::zero(degree);
        c.add_term(key, coeff);
        c
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> btree_map::Iter<'_, K, BigInt> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.terms.keys()
    }

    pub fn coefficient(&self, key: &K) -> BigInt {
        self.terms.get(key).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, key: K, coeff: impl Into<BigInt>) {
        let coeff = coeff.into();
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// `self += factor * other`.
    pub fn add_scaled(&mut self, other: &Self, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for (k, c) in &other.terms {
            self.add_term(k.clone(), c * factor);
        }
    }

    pub fn add_assign_chain(&mut self, other: &Self) {
        for (k, c) in &other.terms {
            self.add_term(k.clone(), c.clone());
        }
    }

    pub fn scale(&self, factor: &BigInt) -> Self {
        let mut out = Self::zero(self.degree);
        out.add_scaled(self, factor);
        out
    }

    /// Extends `f` linearly; `f` returns chains of `target_degree`.
    pub fn map_linear<L: Ord + Clone>(
        &self,
        target_degree: usize,
        mut f: impl FnMut(&K) -> Result<Chain<L>>,
    ) -> Result<Chain<L>> {
        let mut out = Chain::zero(target_degree);
        for (k, c) in &self.terms {
            let img = f(k)?;
            out.add_scaled(&img, c);
        }
        Ok(out)
    }

    /// Extends a key-to-key map linearly, dropping keys mapped to `None`.
    pub fn map_keys<L: Ord + Clone>(
        &self,
        target_degree: usize,
        mut f: impl FnMut(&K) -> Result<Option<L>>,
    ) -> Result<Chain<L>> {
        let mut out = Chain::zero(target_degree);
        for (k, c) in &self.terms {
            if let Some(l) = f(k)? {
                out.add_term(l, c.clone());
            }
        }
        Ok(out)
    }

    /// Retags the degree of a zero chain; non-zero chains keep theirs.
    pub fn with_degree(mut self, degree: usize) -> Self {
        self.degree = degree;
        self
    }
}

impl<K: Ord + Clone> Add for &Chain<K> {
    type Output = Chain<K>;
    fn add(self, rhs: Self) -> Chain<K> {
        let mut out = self.clone();
        out.add_assign_chain(rhs);
        out
    }
}

impl<K: Ord + Clone> Sub for &Chain<K> {
    type Output = Chain<K>;
    fn sub(self, rhs: Self) -> Chain<K> {
        let mut out = self.clone();
        out.add_scaled(rhs, &BigInt::from(-1));
        out
    }
}

impl<K: Ord + Clone> Neg for &Chain<K> {
    type Output = Chain<K>;
    fn neg(self) -> Chain<K> {
        self.scale(&BigInt::from(-1))
    }
}

impl<K: Ord + Clone> Add for Chain<K> {
    type Output = Chain<K>;
    fn add(self, rhs: Self) -> Chain<K> {
        &self + &rhs
    }
}

impl<K: Ord + Clone> Sub for Chain<K> {
    type Output = Chain<K>;
    fn sub(self, rhs: Self) -> Chain<K> {
        &self - &rhs
    }
}

impl<K: Ord + Clone> Neg for Chain<K> {
    type Output = Chain<K>;
    fn neg(self) -> Chain<K> {
        -&self
    }
}

/// `(−1)^k` as a small integer.
pub fn sign(k: usize) -> i64 {
    if k.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Normalized chains on a simplicial set: basis = nondegenerate simplices.
pub type SimplexChain = Chain<SimplexId>;
/// Elements of `CX ⊗ CX`, keyed by ordered pairs.
pub type TensorChain = Chain<(SimplexId, SimplexId)>;

/// Projection of a simplex to normalized chains.
pub fn simplex_chain(x: Simplex) -> SimplexChain {
    if x.is_degenerate() {
        Chain::zero(x.dim())
    } else {
        Chain::basis(x.dim(), x.base)
    }
}

/// `∂ = Σ (−1)^i d_i` with degenerate faces dropped.
pub fn boundary(x: &SimplicialSet, c: &SimplexChain) -> Result<SimplexChain> {
    if c.degree() == 0 {
        return Err(Error::DegreeZero);
    }
    c.map_linear(c.degree() - 1, |id| {
        let mut out = Chain::zero(c.degree() - 1);
        for (i, f) in x.faces_of(*id).iter().enumerate() {
            if !f.is_degenerate() {
                out.add_term(f.base, sign(i));
            }
        }
        Ok(out)
    })
}

/// Alexander–Whitney diagonal `Σ x_{(0…i)} ⊗ x_{(i…n)}` of a nondegenerate
/// simplex, with degenerate tensor factors dropped.
pub fn aw_coproduct(x: &SimplicialSet, id: SimplexId) -> Result<TensorChain> {
    let s = Simplex::nondegenerate(id);
    let n = id.dim();
    let mut out = Chain::zero(n);
    for i in 0..=n {
        let front = x.front_face(s, i)?;
        let back = x.back_face(s, i)?;
        if !front.is_degenerate() && !back.is_degenerate() {
            out.add_term((front.base, back.base), 1);
        }
    }
    Ok(out)
}

/// The reduced coproduct: the terms of the diagonal with both factors of
/// positive degree.
pub fn reduced_coproduct(x: &SimplicialSet, id: SimplexId) -> Result<TensorChain> {
    let full = aw_coproduct(x, id)?;
    full.map_keys(full.degree(), |&(a, b)| Ok((a.dim() > 0 && b.dim() > 0).then_some((a, b))))
}

/// Diagonal extended linearly.
pub fn aw_coproduct_chain(x: &SimplicialSet, c: &SimplexChain) -> Result<TensorChain> {
    c.map_linear(c.degree(), |id| aw_coproduct(x, *id))
}

/// Tensor differential `∂(a⊗b) = ∂a⊗b + (−1)^{|a|} a⊗∂b` on `CX ⊗ CX`.
pub fn tensor_boundary(x: &SimplicialSet, c: &TensorChain) -> Result<TensorChain> {
    if c.degree() == 0 {
        return Err(Error::DegreeZero);
    }
    c.map_linear(c.degree() - 1, |&(a, b)| {
        let mut out = Chain::zero(c.degree() - 1);
        if a.dim() > 0 {
            for (k, v) in boundary(x, &Chain::basis(a.dim(), a))?.iter() {
                out.add_term((*k, b), v.clone());
            }
        }
        if b.dim() > 0 {
            let s = BigInt::from(sign(a.dim()));
            for (k, v) in boundary(x, &Chain::basis(b.dim(), b))?.iter() {
                out.add_term((a, *k), v * &s);
            }
        }
        Ok(out)
    })
}

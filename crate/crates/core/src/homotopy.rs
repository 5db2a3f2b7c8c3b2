//! The cone contraction of `CGΔ̄[n]`, its summand-wise extension to wedges,
//! and the homotopy `Φ` with `∂Φ + Φ∂ = φψ − Id`.

use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, Mutex};

use serde::Serialize;

use crate::chain::{sign, Chain};
use crate::error::{Error, Result};
use crate::homology::{matrix_of, solve};
use crate::loop_group::{boundary, map_chain, tau, word_chain, GroupChain, GroupWord, Letter};
use crate::models::wedge;
use crate::retraction::Retraction;
use crate::sset::{Simplex, SimplicialMap, SimplicialSet};
use crate::szczarba::Szczarba;

/// Default bound on the degree at which `Φ` is evaluated.
pub const DEFAULT_MAX_DEGREE: usize = 2;

/// The group homomorphism `τx ↦ τ(x·n)`, coning each letter inside its own
/// summand.
pub fn cone_word(x: &SimplicialSet, w: &GroupWord) -> Result<GroupWord> {
    let mut out = GroupWord::identity(w.degree() + 1);
    for l in w.letters() {
        let coned = tau(x.cone_last_vertex(l.generator)?)?;
        let factor = if l.exponent > 0 { coned } else { coned.inv() };
        out = out.mul(&factor)?;
    }
    Ok(out)
}

/// `h̃_i = (−1)^{i+1} h_i` on chains of degree `i`.
pub fn wedge_contraction(x: &SimplicialSet, c: &GroupChain) -> Result<GroupChain> {
    if !x.has_cone() {
        return Err(Error::NoConeStructure(x.name().to_string()));
    }
    let i = c.degree();
    let s = -sign(i);
    let mut out = Chain::zero(i + 1);
    for (w, coeff) in c.iter() {
        let hw = cone_word(x, w)?;
        if !hw.is_degenerate() {
            out.add_term(hw, coeff * s);
        }
    }
    Ok(out)
}

/// The contraction on `CGΔ̄[n]`.
pub fn mp_contraction(x: &SimplicialSet, c: &GroupChain) -> Result<GroupChain> {
    if !x.has_cone() || x.count(x.top_dim()) != 1 {
        return Err(Error::NoConeStructure(x.name().to_string()));
    }
    wedge_contraction(x, c)
}

/// All reduced words of `GX` in `degree` with `1..=max_len` letters whose
/// image in normalized chains is nonzero.
pub fn words_up_to(x: &SimplicialSet, degree: usize, max_len: usize) -> Vec<GroupWord> {
    let gens = x.loop_generators(degree + 1);
    let letters: Vec<Letter> = gens.iter().flat_map(|&g| [Letter::new(g, 1), Letter::new(g, -1)]).collect();
    let mut out = Vec::new();
    let mut layer = vec![GroupWord::identity(degree)];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for &l in &letters {
                if w.letters().last().is_some_and(|last| *last == l.inverse()) {
                    continue;
                }
                let mut ls = w.letters().to_vec();
                ls.push(l);
                next.push(GroupWord::from_letters(degree, ls).expect("reduced by construction"));
            }
        }
        out.extend(next.iter().filter(|w| degree == 0 || !w.is_degenerate()).cloned());
        layer = next;
    }
    out
}

/// An integer chain `z` with `∂z = cycle`, searched over words of length at
/// most `max_len`.
pub fn preimage_solver(x: &SimplicialSet, cycle: &GroupChain, max_len: usize) -> Result<GroupChain> {
    let n = cycle.degree();
    if cycle.is_zero() {
        return Ok(Chain::zero(n + 1));
    }
    if n > 0 && !boundary(x, cycle)?.is_zero() {
        return Err(Error::NotACycle);
    }
    let source = words_up_to(x, n + 1, max_len);
    let mut images = Vec::with_capacity(source.len());
    let mut targets: BTreeSet<GroupWord> = cycle.keys().cloned().collect();
    for w in &source {
        let d = boundary(x, &word_chain(w.clone()))?;
        targets.extend(d.keys().cloned());
        images.push(d);
    }
    let targets: Vec<GroupWord> = targets.into_iter().collect();
    let lookup: HashMap<&GroupWord, usize> = source.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let m = matrix_of(&source, &targets, |w| Ok(images[lookup[w]].clone()))?;
    let b: Vec<_> = targets.iter().map(|w| cycle.coefficient(w)).collect();
    let z = solve(&m, &b).ok_or(Error::BoundExhausted(max_len))?;
    let mut out = Chain::zero(n + 1);
    for (w, c) in source.into_iter().zip(z) {
        out.add_term(w, c);
    }
    Ok(out)
}

/// Exponent pattern of a model word `τδ_1^{α_1}⋯τδ_k^{α_k}` in `W_k(n+1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ModelKey {
    pub n: usize,
    pub exponents: Vec<i8>,
}

impl ModelKey {
    pub fn of(w: &GroupWord) -> Self {
        Self { n: w.degree(), exponents: w.letters().iter().map(|l| l.exponent).collect() }
    }

    pub fn model(&self) -> SimplicialSet {
        wedge(self.exponents.len(), self.n + 1)
    }

    /// The model word in `model`, whose summand `m` has top simplex `δ_m`.
    pub fn word(&self, model: &SimplicialSet) -> Result<GroupWord> {
        let tops: Vec<_> = model.nondegenerate(self.n + 1).collect();
        let letters = self.exponents.iter().zip(&tops).map(|(&a, &d)| Letter::new(Simplex::nondegenerate(d), a));
        GroupWord::from_letters(self.n, letters)
    }
}

/// How the value of `Φ` on a model word was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ContractionPath {
    /// The summand-wise cone contraction.
    Cone,
    /// The cone failed to contract; an exact integer solve was used.
    Solver,
}

pub struct ModelValue {
    pub key: ModelKey,
    pub model: SimplicialSet,
    pub word: GroupWord,
    /// `φψ(w) − w − Φ(∂w)`
    pub cycle: GroupChain,
    pub value: GroupChain,
    pub path: ContractionPath,
}

/// `Ψ_w: W_k(n+1) → X` sending `δ_j` to the generator of the `j`-th letter.
pub fn psi_w(x: &SimplicialSet, w: &GroupWord) -> Result<(ModelKey, SimplicialSet, SimplicialMap)> {
    if w.is_empty() || (w.degree() > 0 && w.is_degenerate()) {
        return Err(Error::DegenerateWord);
    }
    let key = ModelKey::of(w);
    let model = key.model();
    let gens: Vec<Simplex> = w.letters().iter().map(|l| l.generator).collect();
    let map = SimplicialMap::representing(&model, x, &gens)?;
    Ok((key, model, map))
}

/// The homotopy `Φ`, with values on model words cached by [`ModelKey`].
pub struct Homotopy {
    max_degree: usize,
    solver_bound: usize,
    cache: Mutex<HashMap<ModelKey, Arc<ModelValue>>>,
}

impl Default for Homotopy {
    fn default() -> Self {
        Self::new(DEFAULT_MAX_DEGREE)
    }
}

impl Homotopy {
    pub fn new(max_degree: usize) -> Self {
        Self { max_degree, solver_bound: 2, cache: Mutex::new(HashMap::new()) }
    }

    pub fn with_solver_bound(mut self, bound: usize) -> Self {
        self.solver_bound = bound;
        self
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    /// Cached model values computed so far, ordered by key.
    pub fn computed(&self) -> Vec<Arc<ModelValue>> {
        let mut v: Vec<_> = self.cache.lock().expect("cache lock").values().cloned().collect();
        v.sort_by(|a, b| a.key.cmp(&b.key));
        v
    }

    pub fn model_value(&self, key: &ModelKey) -> Result<Arc<ModelValue>> {
        if key.n > self.max_degree {
            return Err(Error::DepthLimit { degree: key.n, max: self.max_degree });
        }
        if let Some(v) = self.cache.lock().expect("cache lock").get(key) {
            return Ok(v.clone());
        }
        let model = key.model();
        let word = key.word(&model)?;
        let n = key.n;
        let phi = Szczarba::new(&model)?;
        let psi = Retraction::new(&model)?;
        let w = word_chain(word.clone());
        let mut cycle = &phi.apply(&psi.on_word(&word)?)? - &w;
        if n >= 1 {
            let lower = self.apply(&model, &boundary(&model, &w)?)?;
            cycle = &cycle - &lower;
        }
        let cone = wedge_contraction(&model, &cycle)?;
        let (value, path) = if n == 0 || boundary(&model, &cone)? == cycle {
            (cone, ContractionPath::Cone)
        } else {
            (preimage_solver(&model, &cycle, self.solver_bound)?, ContractionPath::Solver)
        };
        let entry = Arc::new(ModelValue { key: key.clone(), model, word, cycle, value, path });
        self.cache.lock().expect("cache lock").entry(key.clone()).or_insert(entry.clone());
        Ok(entry)
    }

    pub fn on_word(&self, x: &SimplicialSet, w: &GroupWord) -> Result<GroupChain> {
        let n = w.degree();
        if n > self.max_degree {
            return Err(Error::DepthLimit { degree: n, max: self.max_degree });
        }
        if n == 0 || w.is_degenerate() {
            return Ok(Chain::zero(n + 1));
        }
        let (key, _, map) = psi_w(x, w)?;
        let mv = self.model_value(&key)?;
        map_chain(&map, &mv.value)
    }

    pub fn apply(&self, x: &SimplicialSet, c: &GroupChain) -> Result<GroupChain> {
        x.require_0_reduced()?;
        c.map_linear(c.degree() + 1, |w| self.on_word(x, w))
    }

    /// `∂Φ(c) + Φ(∂c) − (φψ − Id)(c)`, zero when the homotopy identity holds.
    pub fn residual(&self, x: &SimplicialSet, c: &GroupChain) -> Result<GroupChain> {
        let n = c.degree();
        let phi = Szczarba::new(x)?;
        let psi = Retraction::new(x)?;
        let mut r = boundary(x, &self.apply(x, c)?)?;
        if n >= 1 {
            r = &r + &self.apply(x, &boundary(x, c)?)?;
        }
        let target = &phi.apply(&psi.apply(c)?)? - c;
        Ok(&r - &target)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{deltabar, sphere};

    #[test]
    fn cone_on_an_edge() {
        let x = deltabar(2);
        let e = Simplex::nondegenerate(x.find(1, "(01)").unwrap());
        let h = mp_contraction(&x, &word_chain(tau(e).unwrap())).unwrap();
        let t = Simplex::nondegenerate(x.find(2, "(012)").unwrap());
        assert_eq!(h, word_chain(tau(t).unwrap()).scale(&(-1).into()));
        assert!(mp_contraction(&sphere(2), &word_chain(GroupWord::identity(1))).is_err());
        assert!(mp_contraction(&wedge(2, 2), &word_chain(GroupWord::identity(1))).is_err());
    }

    #[test]
    fn contraction_identity_in_low_degree() {
        let x = deltabar(2);
        for n in 1..=2 {
            for w in words_up_to(&x, n, 2) {
                let c = word_chain(w);
                let lhs = &boundary(&x, &mp_contraction(&x, &c).unwrap()).unwrap()
                    + &mp_contraction(&x, &boundary(&x, &c).unwrap()).unwrap();
                assert_eq!(lhs, c);
            }
        }
    }

    #[test]
    fn solver_finds_preimages() {
        let x = deltabar(2);
        assert!(preimage_solver(&x, &Chain::zero(1), 1).unwrap().is_zero());
        let t = Simplex::nondegenerate(x.find(2, "(012)").unwrap());
        let c = boundary(&x, &word_chain(tau(t).unwrap())).unwrap();
        let z = preimage_solver(&x, &c, 1).unwrap();
        assert_eq!(boundary(&x, &z).unwrap(), c);
        let w = words_up_to(&x, 1, 1).remove(0);
        assert!(matches!(preimage_solver(&x, &word_chain(w), 1), Err(Error::NotACycle)));
    }

    #[test]
    fn homotopy_on_sphere_generator() {
        let x = sphere(2);
        let sigma = Simplex::nondegenerate(x.find(2, "sigma").unwrap());
        let h = Homotopy::default();
        let c = word_chain(tau(sigma).unwrap());
        assert!(h.residual(&x, &c).unwrap().is_zero());
        assert!(h.apply(&x, &word_chain(GroupWord::identity(0))).unwrap().is_zero());
        assert!(matches!(h.on_word(&x, &tau(sigma).unwrap().degeneracy(0).unwrap().degeneracy(0).unwrap()),
            Err(Error::DepthLimit { .. })));
    }
}

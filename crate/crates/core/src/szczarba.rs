//! Szczarba operators and the twisting cochain map `φ: Ω̂CX → CGX`.

use std::collections::HashMap;
use std::sync::Mutex;

use serde::Serialize;

use crate::chain::{sign, Chain};
use crate::cobar::{CobarElement, CobarLetter, CobarWord};
use crate::error::{Error, Result};
use crate::loop_group::{shuffle_mul, tau, word_chain, GroupChain, GroupWord};
use crate::operator::SimplicialOperator;
use crate::sset::{Simplex, SimplexId, SimplicialSet};

/// A sequence `(i_1, …, i_n)` with `0 ≤ i_k ≤ n − k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SzSequence {
    entries: Vec<usize>,
}

impl SzSequence {
    pub fn new(entries: Vec<usize>) -> Result<Self> {
        let n = entries.len();
        if n == 0 {
            return Err(Error::InvalidOperator("empty Szczarba sequence".into()));
        }
        for (k, &i) in entries.iter().enumerate() {
            if i > n - 1 - k {
                return Err(Error::IndexOutOfRange { index: i, dim: n - 1 - k });
            }
        }
        Ok(Self { entries })
    }

    pub fn n(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub fn parity(&self) -> usize {
        self.entries.iter().sum::<usize>() % 2
    }

    pub fn sign(&self) -> i64 {
        sign(self.parity())
    }

    /// Least `k` (1-based) with `i_k = 0`.
    pub fn kappa(&self) -> usize {
        self.entries.iter().position(|&i| i == 0).expect("i_n = 0") + 1
    }

    /// `(i_2, …, i_n)`, or `None` when `n = 1`.
    pub fn tail(&self) -> Option<Self> {
        (self.n() > 1).then(|| Self { entries: self.entries[1..].to_vec() })
    }
}

/// All `n!` sequences in lexicographic order.
pub fn enumerate_s(n: usize) -> Vec<SzSequence> {
    let mut out = vec![Vec::new()];
    for k in 1..=n {
        let bound = n - k;
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<usize>| {
                (0..=bound).map(move |i| {
                    let mut p = prefix.clone();
                    p.push(i);
                    p
                })
            })
            .collect();
    }
    out.into_iter().map(|entries| SzSequence { entries }).collect()
}

/// `D^{n+1}_{j;i}`, a frontal operator from dimension `n − j` to `n`.
pub fn d_operator(j: usize, i: &SzSequence) -> Result<SimplicialOperator> {
    let n = i.n();
    if j > n {
        return Err(Error::IndexOutOfRange { index: j, dim: n });
    }
    d_rec(j, &i.entries)
}

fn d_rec(j: usize, entries: &[usize]) -> Result<SimplicialOperator> {
    let n = entries.len();
    if n == 0 {
        return Ok(SimplicialOperator::identity(0));
    }
    let i1 = entries[0];
    let rest = &entries[1..];
    let source = n - j;
    if j < i1 {
        let inner = d_rec(j, rest)?.derived();
        let tail = SimplicialOperator::degeneracy(0, source - 1)?.compose(&SimplicialOperator::face(i1 - j, source)?)?;
        inner.compose(&tail)
    } else if j == i1 {
        Ok(d_rec(j, rest)?.derived())
    } else {
        d_rec(j - 1, rest)?.derived().compose(&SimplicialOperator::degeneracy(0, source)?)
    }
}

/// `Sz_i x = Π_j (τ D'_{j;i} d_0^j x)⁻¹` for `x ∈ X_{n+1}`.
pub fn sz(x: &SimplicialSet, i: &SzSequence, s: Simplex) -> Result<GroupWord> {
    let n = i.n();
    if s.dim() != n + 1 {
        return Err(Error::DimensionMismatch { expected: n + 1, found: s.dim() });
    }
    let mut acc = GroupWord::identity(n);
    let mut face = s;
    for j in 0..=n {
        let op = d_operator(j, i)?.derived();
        let letter = tau(x.apply(&op, face)?)?.inv();
        acc = acc.mul(&letter)?;
        if j < n {
            face = x.face(face, 0)?;
        }
    }
    Ok(acc)
}

/// Whether `D⁰_{0;i}(τx)·Sz_i x` is degenerate.
pub fn common_degeneracy_check(x: &SimplicialSet, i: &SzSequence, s: Simplex) -> Result<bool> {
    let lead = tau(x.apply(&d_operator(0, i)?.derived(), s)?)?;
    Ok(lead.mul(&sz(x, i, s)?)?.is_degenerate())
}

/// The DGA map `φ`, memoizing its values on generators.
pub struct Szczarba<'a> {
    x: &'a SimplicialSet,
    memo: Mutex<HashMap<SimplexId, GroupChain>>,
}

impl<'a> Szczarba<'a> {
    pub fn new(x: &'a SimplicialSet) -> Result<Self> {
        x.require_0_reduced()?;
        Ok(Self { x, memo: Mutex::new(HashMap::new()) })
    }

    pub fn set(&self) -> &'a SimplicialSet {
        self.x
    }

    /// `φ(s⁻¹c)` for a nondegenerate simplex `c` of dimension ≥ 1.
    pub fn on_suspension(&self, c: SimplexId) -> Result<GroupChain> {
        if let Some(v) = self.memo.lock().expect("memo lock").get(&c) {
            return Ok(v.clone());
        }
        let s = Simplex::nondegenerate(c);
        let value = match c.dim() {
            0 => return Err(Error::DimensionMismatch { expected: 1, found: 0 }),
            1 => &word_chain(tau(s)?.inv()) - &word_chain(GroupWord::identity(0)),
            d => {
                let mut out = Chain::zero(d - 1);
                for i in enumerate_s(d - 1) {
                    let w = sz(self.x, &i, s)?;
                    if !w.is_degenerate() {
                        out.add_term(w, i.sign());
                    }
                }
                out
            }
        };
        self.memo.lock().expect("memo lock").insert(c, value.clone());
        Ok(value)
    }

    pub fn on_letter(&self, l: CobarLetter) -> Result<GroupChain> {
        match l {
            CobarLetter::Suspended(c) => self.on_suspension(c),
            CobarLetter::Inverse(e) => Ok(word_chain(tau(Simplex::nondegenerate(e))?)),
        }
    }

    pub fn on_word(&self, w: &CobarWord) -> Result<GroupChain> {
        let mut acc = word_chain(GroupWord::identity(0));
        for &l in w.letters() {
            acc = shuffle_mul(&acc, &self.on_letter(l)?)?;
        }
        Ok(acc)
    }

    pub fn apply(&self, e: &CobarElement) -> Result<GroupChain> {
        e.map_linear(e.degree(), |w| self.on_word(w))
    }
}

/// One-shot `φ` without a shared memo.
pub fn phi(x: &SimplicialSet, e: &CobarElement) -> Result<GroupChain> {
    Szczarba::new(x)?.apply(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cobar::{cobar_diff, letter};
    use crate::loop_group::boundary;
    use crate::models::{deltabar, sphere};

    fn seq(v: &[usize]) -> SzSequence {
        SzSequence::new(v.to_vec()).unwrap()
    }

    #[test]
    fn sequences() {
        assert_eq!(enumerate_s(1), vec![seq(&[0])]);
        assert_eq!(enumerate_s(2), vec![seq(&[0, 0]), seq(&[1, 0])]);
        assert_eq!(enumerate_s(3).len(), 6);
        assert_eq!(enumerate_s(4).len(), 24);
        assert!(SzSequence::new(vec![1]).is_err());
    }

    #[test]
    fn low_d_operators() {
        assert!(d_operator(0, &seq(&[0])).unwrap().is_identity());
        assert_eq!(d_operator(1, &seq(&[0])).unwrap().to_string(), "s0");
        for n in 1..=4 {
            for i in enumerate_s(n) {
                for j in 0..=n {
                    let d = d_operator(j, &i).unwrap();
                    assert!(d.is_frontal());
                    assert_eq!((d.source_dim(), d.target_dim()), (n - j, n));
                }
            }
        }
    }

    #[test]
    fn sz_in_degree_one() {
        let x = deltabar(2);
        let t = Simplex::nondegenerate(x.find(2, "(012)").unwrap());
        let w = sz(&x, &seq(&[0]), t).unwrap();
        assert_eq!(w.render(&x), "[t((012))^-1 * t(s1 (12))^-1]");
        let s2 = sphere(2);
        let sigma = Simplex::nondegenerate(s2.find(2, "sigma").unwrap());
        assert_eq!(sz(&s2, &seq(&[0]), sigma).unwrap().render(&s2), "[t(sigma)^-1]");
    }

    #[test]
    fn chain_map_on_deltabar3() {
        let x = deltabar(3);
        let f = Szczarba::new(&x).unwrap();
        for d in 2..=3 {
            for c in x.nondegenerate(d) {
                let g = letter(CobarLetter::Suspended(c));
                let lhs = boundary(&x, &f.apply(&g).unwrap()).unwrap();
                let rhs = f.apply(&cobar_diff(&x, &g).unwrap()).unwrap();
                assert_eq!(lhs, rhs, "{}", x.simplex_name(c));
            }
        }
    }
}

#[cfg(test)]
mod kappa_tests {
    use super::*;

    #[test]
    fn positive_j_operators_carry_the_kappa_degeneracy() {
        for n in 1..=4 {
            for i in enumerate_s(n) {
                for j in 1..=n {
                    let d = d_operator(j, &i).unwrap();
                    assert!(d.degeneracies().contains(&(i.kappa() - 1)), "{i:?} j={j} {d}");
                }
            }
        }
    }
}

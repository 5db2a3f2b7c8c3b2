//! The retraction `ψ: CGX → Ω̂CX`, by induction on degree and word length.

use std::collections::HashMap;
use std::sync::Mutex;

use crate::chain::Chain;
use crate::cobar::{bar, cobar_mul, one_plus_susp, susp, unit, CobarElement};
use crate::error::{Error, Result};
use crate::loop_group::{tau, GroupChain, GroupWord};
use crate::sset::{Simplex, SimplicialSet};

/// `v_i(x, g) = τd_1^i x · d_0^i g`.
pub fn v(x: &SimplicialSet, i: usize, s: Simplex, g: &GroupWord) -> Result<GroupWord> {
    check_index(i, g.degree())?;
    tau(x.iterated_face(s, 1, i)?)?.mul(&iterated_word_face(x, g, i)?)
}

/// `v̄_i(x, h) = τd_0 d_2^{i−1} x · d_0^i h`.
pub fn v_bar(x: &SimplicialSet, i: usize, s: Simplex, h: &GroupWord) -> Result<GroupWord> {
    check_index(i, h.degree())?;
    let y = x.face(x.iterated_face(s, 2, i - 1)?, 0)?;
    tau(y)?.mul(&iterated_word_face(x, h, i)?)
}

fn check_index(i: usize, n: usize) -> Result<()> {
    if i == 0 || i > n {
        return Err(Error::IndexOutOfRange { index: i, dim: n });
    }
    Ok(())
}

fn iterated_word_face(x: &SimplicialSet, g: &GroupWord, times: usize) -> Result<GroupWord> {
    let mut g = g.clone();
    for _ in 0..times {
        g = g.face(x, 0)?;
    }
    Ok(g)
}

/// The retraction `ψ`, memoized on words.
pub struct Retraction<'a> {
    x: &'a SimplicialSet,
    memo: Mutex<HashMap<GroupWord, CobarElement>>,
}

impl<'a> Retraction<'a> {
    pub fn new(x: &'a SimplicialSet) -> Result<Self> {
        x.require_0_reduced()?;
        Ok(Self { x, memo: Mutex::new(HashMap::new()) })
    }

    pub fn set(&self) -> &'a SimplicialSet {
        self.x
    }

    pub fn on_word(&self, w: &GroupWord) -> Result<CobarElement> {
        let n = w.degree();
        if w.is_empty() {
            return Ok(if n == 0 { unit() } else { Chain::zero(n) });
        }
        if n > 0 && w.is_degenerate() {
            return Ok(Chain::zero(n));
        }
        if let Some(c) = self.memo.lock().expect("memo lock").get(w) {
            return Ok(c.clone());
        }
        let value = self.expand(w)?;
        self.memo.lock().expect("memo lock").insert(w.clone(), value.clone());
        Ok(value)
    }

    fn expand(&self, w: &GroupWord) -> Result<CobarElement> {
        let x = self.x;
        let n = w.degree();
        let first = w.letters()[0];
        let rest = GroupWord::from_letters(n, w.letters()[1..].iter().copied())?;
        let s = first.generator;
        let edge = x.front_face(s, 1)?;
        let mut sum = Chain::zero(n);
        for i in 1..=n {
            let next = if first.exponent > 0 { v(x, i, s, &rest)? } else { v_bar(x, i, s, &rest)? };
            assert!(next.degree() < n, "ψ recursion must decrease the degree");
            let front = susp(x.front_face(s, i + 1)?)?;
            if front.is_zero() {
                continue;
            }
            sum.add_assign_chain(&cobar_mul(&front, &self.on_word(&next)?));
        }
        debug_assert!(rest.len() < w.len());
        let tail = self.on_word(&rest)?;
        if first.exponent > 0 {
            Ok(cobar_mul(&bar(edge)?, &(&tail - &sum)))
        } else {
            Ok(&cobar_mul(&one_plus_susp(edge)?, &tail) + &sum)
        }
    }

    pub fn apply(&self, c: &GroupChain) -> Result<CobarElement> {
        c.map_linear(c.degree(), |w| self.on_word(w))
    }
}

/// One-shot `ψ` without a shared memo.
pub fn psi(x: &SimplicialSet, c: &GroupChain) -> Result<CobarElement> {
    Retraction::new(x)?.apply(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cobar::parse_cobar;
    use crate::loop_group::word_chain;
    use crate::models::deltabar;

    fn render(x: &SimplicialSet, e: &CobarElement) -> Vec<(String, String)> {
        e.iter().map(|(w, c)| (w.render(x), c.to_string())).collect()
    }

    #[test]
    fn degree_zero() {
        let x = deltabar(2);
        let r = Retraction::new(&x).unwrap();
        let e = Simplex::nondegenerate(x.find(1, "(01)").unwrap());
        assert_eq!(r.on_word(&tau(e).unwrap()).unwrap(), bar(e).unwrap());
        assert_eq!(r.on_word(&tau(e).unwrap().inv()).unwrap(), one_plus_susp(e).unwrap());
        assert_eq!(r.on_word(&GroupWord::identity(0)).unwrap(), unit());
    }

    #[test]
    fn degree_one_formulas() {
        let x = deltabar(2);
        let r = Retraction::new(&x).unwrap();
        let t = Simplex::nondegenerate(x.find(2, "(012)").unwrap());
        let inv = r.on_word(&tau(t).unwrap().inv()).unwrap();
        assert_eq!(inv, parse_cobar(&x, "[s-1 (012) | inv (12)]").unwrap());
        let pos = r.on_word(&tau(t).unwrap()).unwrap();
        let expected = parse_cobar(&x, "[inv (01) | s-1 (012) | inv (02)]").unwrap().scale(&(-1).into());
        assert_eq!(render(&x, &pos), render(&x, &expected));
    }

    #[test]
    fn degenerate_words_vanish() {
        let x = deltabar(2);
        let r = Retraction::new(&x).unwrap();
        let e = Simplex::nondegenerate(x.find(1, "(01)").unwrap());
        let w = tau(e).unwrap().degeneracy(0).unwrap();
        assert!(r.on_word(&w).unwrap().is_zero());
        assert!(r.apply(&word_chain(GroupWord::identity(2))).unwrap().is_zero());
    }
}

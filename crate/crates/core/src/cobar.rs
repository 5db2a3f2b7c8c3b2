//! The extended cobar construction on the normalized chains of a 0-reduced
//! simplicial set.
//!
//! Words are tensor products of desuspended nondegenerate simplices `s⁻¹c`
//! and adjoined inverses `x̄` of `1 + s⁻¹x` for 1-simplices `x`. A word is
//! normal when no `x̄` sits next to `s⁻¹x`; normal words form a free basis.

use num_bigint::BigInt;
use num_traits::One;
use rand::Rng;
use serde::Serialize;

use crate::chain::{reduced_coproduct, sign, Chain};
use crate::error::{Error, Result};
use crate::loop_group::{matching_paren, split_top_level};
use crate::sset::{Simplex, SimplexId, SimplicialSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum CobarLetter {
    /// `s⁻¹c` for a nondegenerate simplex `c` of dimension ≥ 1.
    Suspended(SimplexId),
    /// `x̄ = (1 + s⁻¹x)⁻¹` for a nondegenerate 1-simplex `x`.
    Inverse(SimplexId),
}

impl CobarLetter {
    pub fn degree(self) -> usize {
        match self {
            CobarLetter::Suspended(c) => c.dim() - 1,
            CobarLetter::Inverse(_) => 0,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CobarWord {
    letters: Vec<CobarLetter>,
}

pub type CobarElement = Chain<CobarWord>;

fn forbidden(a: CobarLetter, b: CobarLetter) -> bool {
    matches!((a, b),
        (CobarLetter::Inverse(x), CobarLetter::Suspended(y)) | (CobarLetter::Suspended(y), CobarLetter::Inverse(x))
            if x == y)
}

impl CobarWord {
    pub fn unit() -> Self {
        Self::default()
    }

    pub fn new(letters: Vec<CobarLetter>) -> Self {
        Self { letters }
    }

    pub fn letters(&self) -> &[CobarLetter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.letters.iter().map(|l| l.degree()).sum()
    }

    /// Positions `k` where letters `k, k+1` form a rewritable pair.
    pub fn redexes(&self) -> Vec<usize> {
        (0..self.letters.len().saturating_sub(1))
            .filter(|&k| forbidden(self.letters[k], self.letters[k + 1]))
            .collect()
    }

    pub fn is_normal(&self) -> bool {
        self.redexes().is_empty()
    }

    pub fn concat(&self, other: &Self) -> Self {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Self { letters }
    }

    pub fn render(&self, x: &SimplicialSet) -> String {
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|l| match l {
                CobarLetter::Suspended(c) => format!("s-1 {}", x.simplex_name(*c)),
                CobarLetter::Inverse(c) => format!("inv {}", x.simplex_name(*c)),
            })
            .collect();
        format!("[{}]", parts.join(" | "))
    }
}

/// Rewrites the redex at position `k`: `x̄·s⁻¹x = 1 − x̄ = s⁻¹x·x̄`.
fn rewrite_at(word: &CobarWord, k: usize) -> [(CobarWord, i64); 2] {
    let bar = match (word.letters[k], word.letters[k + 1]) {
        (CobarLetter::Inverse(x), _) | (_, CobarLetter::Inverse(x)) => CobarLetter::Inverse(x),
        _ => unreachable!("not a redex"),
    };
    let mut dropped = word.letters.clone();
    dropped.drain(k..k + 2);
    let mut replaced = dropped.clone();
    replaced.insert(k, bar);
    [(CobarWord::new(dropped), 1), (CobarWord::new(replaced), -1)]
}

/// Normal form of a raw word, choosing redexes with `pick` (given the list
/// of redex positions, returns an index into it).
pub fn normalize_word_with(word: &CobarWord, pick: &mut impl FnMut(&[usize]) -> usize) -> CobarElement {
    let degree = word.degree();
    let mut out = Chain::zero(degree);
    let mut stack: Vec<(CobarWord, BigInt)> = vec![(word.clone(), BigInt::one())];
    while let Some((w, c)) = stack.pop() {
        let redexes = w.redexes();
        if redexes.is_empty() {
            out.add_term(w, c);
            continue;
        }
        let k = redexes[pick(&redexes)];
        for (nw, s) in rewrite_at(&w, k) {
            stack.push((nw, &c * s));
        }
    }
    out
}

/// Whether every rewrite order yields the same normal form, checked on the
/// whole rewrite tree of `word`.
pub fn confluent_under_all_orders(word: &CobarWord) -> bool {
    let mut seen = std::collections::HashSet::new();
    all_orders_rec(word, &mut seen)
}

fn all_orders_rec(word: &CobarWord, seen: &mut std::collections::HashSet<CobarWord>) -> bool {
    if !seen.insert(word.clone()) {
        return true;
    }
    let reference = normalize_word(word);
    for k in word.redexes() {
        let mut via = Chain::zero(word.degree());
        for (child, s) in rewrite_at(word, k) {
            if !all_orders_rec(&child, seen) {
                return false;
            }
            via.add_scaled(&normalize_word(&child), &BigInt::from(s));
        }
        if via != reference {
            return false;
        }
    }
    true
}

/// Leftmost-first normal form.
pub fn normalize_word(word: &CobarWord) -> CobarElement {
    normalize_word_with(word, &mut |_| 0)
}

/// Normalizes every word of a raw combination.
pub fn normalize(e: &CobarElement) -> CobarElement {
    let mut out = Chain::zero(e.degree());
    for (w, c) in e.iter() {
        if w.is_normal() {
            out.add_term(w.clone(), c.clone());
        } else {
            out.add_scaled(&normalize_word(w), c);
        }
    }
    out
}

pub fn unit() -> CobarElement {
    Chain::basis(0, CobarWord::unit())
}

pub fn letter(l: CobarLetter) -> CobarElement {
    Chain::basis(l.degree(), CobarWord::new(vec![l]))
}

/// `s⁻¹x`, zero when `x` is degenerate.
pub fn susp(x: Simplex) -> Result<CobarElement> {
    if x.dim() == 0 {
        return Err(Error::DimensionMismatch { expected: 1, found: 0 });
    }
    Ok(if x.is_degenerate() { Chain::zero(x.dim() - 1) } else { letter(CobarLetter::Suspended(x.base)) })
}

/// `x̄` for a 1-simplex; the unit when `x` is degenerate.
pub fn bar(x: Simplex) -> Result<CobarElement> {
    if x.dim() != 1 {
        return Err(Error::DimensionMismatch { expected: 1, found: x.dim() });
    }
    Ok(if x.is_degenerate() { unit() } else { letter(CobarLetter::Inverse(x.base)) })
}

/// `1 + s⁻¹x` for a 1-simplex.
pub fn one_plus_susp(x: Simplex) -> Result<CobarElement> {
    Ok(&unit() + &susp(x)?)
}

/// Product induced by concatenation of words.
pub fn cobar_mul(a: &CobarElement, b: &CobarElement) -> CobarElement {
    let mut out = Chain::zero(a.degree() + b.degree());
    for (u, cu) in a.iter() {
        for (v, cv) in b.iter() {
            let w = u.concat(v);
            let c = cu * cv;
            if w.is_normal() {
                out.add_term(w, c);
            } else {
                out.add_scaled(&normalize_word(&w), &c);
            }
        }
    }
    out
}

/// `∂s⁻¹c = −s⁻¹dc + Σ (−1)^{|c_i|} s⁻¹c_i ⊗ s⁻¹c^i` for `dim c ≥ 2`.
pub fn generator_diff(x: &SimplicialSet, c: SimplexId) -> Result<CobarElement> {
    let n = c.dim();
    if n < 2 {
        return Ok(Chain::zero(0));
    }
    let mut out = Chain::zero(n - 2);
    for (r, f) in x.faces_of(c).iter().enumerate() {
        if !f.is_degenerate() {
            out.add_term(CobarWord::new(vec![CobarLetter::Suspended(f.base)]), -sign(r));
        }
    }
    for ((a, b), coeff) in reduced_coproduct(x, c)?.iter() {
        let w = CobarWord::new(vec![CobarLetter::Suspended(*a), CobarLetter::Suspended(*b)]);
        out.add_term(w, coeff * sign(a.dim()));
    }
    Ok(out)
}

/// The cobar differential, extended as a derivation. Degree-0 elements map
/// to zero.
pub fn cobar_diff(x: &SimplicialSet, e: &CobarElement) -> Result<CobarElement> {
    let target = e.degree().saturating_sub(1);
    let mut out = Chain::zero(target);
    if e.degree() == 0 {
        return Ok(out);
    }
    for (w, coeff) in e.iter() {
        let mut before = 0usize;
        for (k, l) in w.letters().iter().enumerate() {
            if let CobarLetter::Suspended(c) = *l {
                if c.dim() >= 2 {
                    let d = generator_diff(x, c)?;
                    let left = CobarWord::new(w.letters()[..k].to_vec());
                    let right = CobarWord::new(w.letters()[k + 1..].to_vec());
                    let s = BigInt::from(sign(before)) * coeff;
                    for (m, cm) in d.iter() {
                        let full = left.concat(m).concat(&right);
                        out.add_scaled(&normalize_word(&full), &(cm * &s));
                    }
                }
            }
            before += l.degree();
        }
    }
    Ok(out)
}

/// Parses `[s-1 sigma | inv x | s-1 (s0 y)]`. Suspensions of degenerate
/// simplices evaluate to zero and inverses of degenerate edges to the unit.
pub fn parse_cobar(x: &SimplicialSet, text: &str) -> Result<CobarElement> {
    let t = text.trim();
    let inner = t
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| Error::Parse(format!("cobar word must be bracketed: `{t}`")))?
        .trim();
    let mut acc = unit();
    if inner.is_empty() {
        return Ok(acc);
    }
    for part in split_top_level(inner, '|') {
        let part = part.trim();
        let (kind, rest) = part
            .split_once(char::is_whitespace)
            .ok_or_else(|| Error::Parse(format!("bad cobar letter `{part}`")))?;
        let simplex = parse_reference(x, rest.trim())?;
        let l = match kind {
            "s-1" => susp(simplex)?,
            "inv" => bar(simplex)?,
            other => return Err(Error::Parse(format!("unknown cobar letter kind `{other}`"))),
        };
        acc = cobar_mul(&acc, &l);
    }
    Ok(acc)
}

/// A simplex reference, optionally wrapped in parentheses.
fn parse_reference(x: &SimplicialSet, text: &str) -> Result<Simplex> {
    match x.parse_simplex(text) {
        Ok(s) => Ok(s),
        Err(e) => {
            if let Some(rest) = text.strip_prefix('(') {
                if matching_paren(rest) == Some(rest.len() - 1) {
                    return x.parse_simplex(&rest[..rest.len() - 1]);
                }
            }
            Err(e)
        }
    }
}

/// All cobar letters of `X` of degree at most `max_degree`.
pub fn letters_up_to(x: &SimplicialSet, max_degree: usize) -> Vec<CobarLetter> {
    let mut out: Vec<CobarLetter> = x.nondegenerate(1).map(CobarLetter::Inverse).collect();
    for dim in 1..=max_degree + 1 {
        out.extend(x.nondegenerate(dim).map(CobarLetter::Suspended));
    }
    out
}

/// A random raw word with at most `max_letters` letters and total degree at
/// most `max_degree`.
pub fn random_raw_word<R: Rng>(x: &SimplicialSet, max_letters: usize, max_degree: usize, rng: &mut R) -> CobarWord {
    let pool = letters_up_to(x, max_degree);
    let mut letters = Vec::new();
    if pool.is_empty() {
        return CobarWord::unit();
    }
    let len = rng.gen_range(0..=max_letters);
    let mut degree = 0;
    for _ in 0..len {
        let l = pool[rng.gen_range(0..pool.len())];
        if degree + l.degree() <= max_degree {
            degree += l.degree();
            letters.push(l);
        }
    }
    CobarWord::new(letters)
}

/// A random normal word of exactly the given degree, if one is found.
pub fn random_normal_word<R: Rng>(x: &SimplicialSet, degree: usize, max_letters: usize, rng: &mut R) -> Option<CobarWord> {
    for _ in 0..500 {
        let w = random_raw_word(x, max_letters, degree, rng);
        if w.degree() == degree && w.is_normal() {
            return Some(w);
        }
    }
    None
}

/// Normal words of degree `n` built from suspensions of simplices of
/// dimension ≥ 2 only; for 1-reduced `X` this is a basis of degree `n`.
pub fn positive_basis(x: &SimplicialSet, n: usize) -> Vec<CobarWord> {
    let gens: Vec<CobarLetter> =
        (2..=n + 1).flat_map(|d| x.nondegenerate(d).map(CobarLetter::Suspended).collect::<Vec<_>>()).collect();
    let mut out = Vec::new();
    fn go(rem: usize, gens: &[CobarLetter], cur: &mut Vec<CobarLetter>, out: &mut Vec<CobarWord>) {
        if rem == 0 {
            out.push(CobarWord::new(cur.clone()));
            return;
        }
        for &g in gens {
            if g.degree() <= rem {
                cur.push(g);
                go(rem - g.degree(), gens, cur, out);
                cur.pop();
            }
        }
    }
    go(n, &gens, &mut Vec::new(), &mut out);
    out
}

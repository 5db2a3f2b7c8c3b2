//! The Kan loop group `GX` of a 0-reduced simplicial set and the shuffle
//! algebra structure on its normalized chains.
//!
//! `(GX)_n` is the free group on the `(n+1)`-simplices of `X` modulo the
//! image of `s_0`. Elements are stored as freely reduced words whose letters
//! are never `s_0`-degenerate.

use std::fmt;

use num_bigint::BigInt;
use rand::Rng;
use serde::Serialize;

use crate::chain::{sign, Chain};
use crate::error::{Error, Result};
use crate::sset::{Simplex, SimplicialMap, SimplicialSet};

/// A generator `τx` raised to `±1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Letter {
    pub generator: Simplex,
    pub exponent: i8,
}

impl Letter {
    pub fn new(generator: Simplex, exponent: i8) -> Self {
        debug_assert!(exponent == 1 || exponent == -1);
        Self { generator, exponent }
    }

    pub fn inverse(self) -> Self {
        Self { generator: self.generator, exponent: -self.exponent }
    }
}

/// A reduced word in `(GX)_degree`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GroupWord {
    degree: usize,
    letters: Vec<Letter>,
}

impl GroupWord {
    pub fn identity(degree: usize) -> Self {
        Self { degree, letters: Vec::new() }
    }

    /// Reduces an arbitrary letter sequence: `s_0`-degenerate generators are
    /// deleted and adjacent inverse pairs cancelled, to fixpoint.
    pub fn from_letters(degree: usize, letters: impl IntoIterator<Item = Letter>) -> Result<Self> {
        let mut w = Self::identity(degree);
        for l in letters {
            w.push(l)?;
        }
        Ok(w)
    }

    /// `τx` for `x ∈ X_{n+1}`; the identity if `x` is `s_0`-degenerate.
    pub fn generator(x: Simplex) -> Result<Self> {
        Self::generator_power(x, 1)
    }

    pub fn generator_power(x: Simplex, exponent: i8) -> Result<Self> {
        let dim = x.dim();
        if dim == 0 {
            return Err(Error::DimensionMismatch { expected: 1, found: 0 });
        }
        Self::from_letters(dim - 1, [Letter::new(x, exponent)])
    }

    fn push(&mut self, l: Letter) -> Result<()> {
        if l.generator.dim() != self.degree + 1 {
            return Err(Error::DegreeMismatch(l.generator.dim() - 1, self.degree));
        }
        if l.generator.is_s0_degenerate() {
            return Ok(());
        }
        if self.letters.last() == Some(&l.inverse()) {
            self.letters.pop();
        } else {
            self.letters.push(l);
        }
        Ok(())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch(self.degree, other.degree));
        }
        let mut out = self.clone();
        for l in &other.letters {
            out.push(*l)?;
        }
        Ok(out)
    }

    pub fn inv(&self) -> Self {
        Self { degree: self.degree, letters: self.letters.iter().rev().map(|l| l.inverse()).collect() }
    }

    /// `s_i` on `GX`: `s_i τx = τ s_{i+1} x`.
    pub fn degeneracy(&self, i: usize) -> Result<Self> {
        if i > self.degree {
            return Err(Error::IndexOutOfRange { index: i, dim: self.degree });
        }
        let mut out = Self::identity(self.degree + 1);
        for l in &self.letters {
            out.push(Letter::new(l.generator.degenerate(i + 1)?, l.exponent))?;
        }
        Ok(out)
    }

    /// Applies `s_{i_1}, s_{i_2}, …` in the order given.
    pub fn degeneracies(&self, indices: &[usize]) -> Result<Self> {
        let mut w = self.clone();
        for &i in indices {
            w = w.degeneracy(i)?;
        }
        Ok(w)
    }

    /// `d_i` on `GX`: `d_0 τx = (τd_0x)^{-1} τd_1x` and `d_i τx = τd_{i+1}x`.
    pub fn face(&self, x: &SimplicialSet, i: usize) -> Result<Self> {
        if self.degree == 0 {
            return Err(Error::DegreeZero);
        }
        if i > self.degree {
            return Err(Error::IndexOutOfRange { index: i, dim: self.degree });
        }
        let mut out = Self::identity(self.degree - 1);
        for l in &self.letters {
            let y = l.generator;
            if i == 0 {
                let a = Letter::new(x.face(y, 0)?, -1);
                let b = Letter::new(x.face(y, 1)?, 1);
                if l.exponent == 1 {
                    out.push(a)?;
                    out.push(b)?;
                } else {
                    out.push(b.inverse())?;
                    out.push(a.inverse())?;
                }
            } else {
                out.push(Letter::new(x.face(y, i + 1)?, l.exponent))?;
            }
        }
        Ok(out)
    }

    /// True iff the word lies in the image of some `s_j`, `j < degree`.
    ///
    /// `s_j` maps the free generators injectively onto the generators in the
    /// image of `s_{j+1}`, so a reduced word is `s_j`-degenerate iff every
    /// letter is.
    pub fn is_degenerate(&self) -> bool {
        self.degree >= 1
            && (0..self.degree).any(|j| self.letters.iter().all(|l| l.generator.in_image_of(j + 1)))
    }

    /// Degeneracy test straight from the definition: `s_j d_j g = g`.
    pub fn is_degenerate_by_faces(&self, x: &SimplicialSet) -> Result<bool> {
        if self.degree == 0 {
            return Ok(false);
        }
        for j in 0..self.degree {
            if self.face(x, j)?.degeneracy(j)? == *self {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Image under the homomorphism induced by a simplicial map.
    pub fn map(&self, f: &SimplicialMap) -> Result<Self> {
        let mut out = Self::identity(self.degree);
        for l in &self.letters {
            out.push(Letter::new(f.apply(l.generator)?, l.exponent))?;
        }
        Ok(out)
    }

    pub fn render(&self, x: &SimplicialSet) -> String {
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|l| {
                let s = x.render_simplex(l.generator);
                if l.exponent == 1 {
                    format!("t({s})")
                } else {
                    format!("t({s})^-1")
                }
            })
            .collect();
        format!("[{}]", parts.join(" * "))
    }

    /// Parses `t(x)^-1 * t(s1 y)`; `1` or an empty string is the identity.
    pub fn parse(x: &SimplicialSet, text: &str, degree: usize) -> Result<Self> {
        let text = text.trim();
        let text = text.strip_prefix('[').and_then(|t| t.strip_suffix(']')).unwrap_or(text).trim();
        let mut out = Self::identity(degree);
        if text.is_empty() || text == "1" {
            return Ok(out);
        }
        for part in split_top_level(text, '*') {
            let part = part.trim();
            let rest = part
                .strip_prefix("t(")
                .ok_or_else(|| Error::Parse(format!("expected `t(...)`, found `{part}`")))?;
            let close = matching_paren(rest).ok_or_else(|| Error::Parse(format!("unbalanced `{part}`")))?;
            let inner = &rest[..close];
            let exponent = match rest[close + 1..].trim() {
                "" | "^1" | "^+1" => 1,
                "^-1" => -1,
                other => return Err(Error::Parse(format!("bad exponent `{other}`"))),
            };
            let gen = x.parse_simplex(inner)?;
            if gen.dim() != degree + 1 {
                return Err(Error::DegreeMismatch(gen.dim().saturating_sub(1), degree));
            }
            out.push(Letter::new(gen, exponent))?;
        }
        Ok(out)
    }
}

/// Index of the `)` closing an already opened parenthesis.
pub(crate) fn matching_paren(s: &str) -> Option<usize> {
    let mut depth = 1usize;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 {
                    return Some(i);
                }
            }
            _ => {}
        }
    }
    None
}

pub(crate) fn split_top_level(s: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&s[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.letters)
    }
}

/// The universal twisting function.
pub fn tau(x: Simplex) -> Result<GroupWord> {
    GroupWord::generator(x)
}

/// Normalized chains on `GX`.
pub type GroupChain = Chain<GroupWord>;

/// Projection of a group element to normalized chains.
pub fn word_chain(w: GroupWord) -> GroupChain {
    let d = w.degree();
    if w.is_degenerate() {
        Chain::zero(d)
    } else {
        Chain::basis(d, w)
    }
}

/// `∂ = Σ (−1)^i d_i` on `CGX`.
pub fn boundary(x: &SimplicialSet, c: &GroupChain) -> Result<GroupChain> {
    if c.degree() == 0 {
        return Err(Error::DegreeZero);
    }
    let n = c.degree();
    c.map_linear(n - 1, |w| {
        let mut out = Chain::zero(n - 1);
        for i in 0..=n {
            let f = w.face(x, i)?;
            if !f.is_degenerate() {
                out.add_term(f, sign(i));
            }
        }
        Ok(out)
    })
}

/// Chain map induced by a simplicial map.
pub fn map_chain(f: &SimplicialMap, c: &GroupChain) -> Result<GroupChain> {
    c.map_keys(c.degree(), |w| {
        let v = w.map(f)?;
        Ok((!v.is_degenerate()).then_some(v))
    })
}

/// A `(p,q)`-shuffle: `mu` (size q) are the degeneracies applied to the
/// left factor, `nu` (size p) those applied to the right factor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShufflePair {
    pub p: usize,
    pub q: usize,
    pub mu: Vec<usize>,
    pub nu: Vec<usize>,
    pub sign: i8,
}

/// All `binomial(p+q, p)` shuffles, `mu` in lexicographic order.
pub fn shuffles(p: usize, q: usize) -> Vec<ShufflePair> {
    let n = p + q;
    let mut out = Vec::new();
    let mut mu = Vec::with_capacity(q);
    fn go(start: usize, n: usize, q: usize, p: usize, mu: &mut Vec<usize>, out: &mut Vec<ShufflePair>) {
        if mu.len() == q {
            let nu: Vec<usize> = (0..n).filter(|k| !mu.contains(k)).collect();
            // parity of the permutation (ν_1…ν_p, μ_1…μ_q)
            let inversions = nu.iter().map(|&a| mu.iter().filter(|&&b| b < a).count()).sum::<usize>();
            out.push(ShufflePair { p, q, mu: mu.clone(), nu, sign: sign(inversions) as i8 });
            return;
        }
        for k in start..n {
            mu.push(k);
            go(k + 1, n, q, p, mu, out);
            mu.pop();
        }
    }
    go(0, n, q, p, &mut mu, &mut out);
    out
}

/// `m(g⊗h) = Σ ± s_μ g · s_ν h` on basis words.
pub fn shuffle_words(g: &GroupWord, h: &GroupWord) -> Result<GroupChain> {
    let (p, q) = (g.degree(), h.degree());
    let mut out = Chain::zero(p + q);
    for sh in shuffles(p, q) {
        let left = g.degeneracies(&sh.mu)?;
        let right = h.degeneracies(&sh.nu)?;
        let prod = left.mul(&right)?;
        if p + q == 0 || !prod.is_degenerate() {
            out.add_term(prod, sh.sign);
        }
    }
    Ok(out)
}

/// The shuffle product on `CGX`, extended bilinearly.
pub fn shuffle_mul(a: &GroupChain, b: &GroupChain) -> Result<GroupChain> {
    let mut out = Chain::zero(a.degree() + b.degree());
    for (g, cg) in a.iter() {
        for (h, ch) in b.iter() {
            let prod = shuffle_words(g, h)?;
            let c: BigInt = cg * ch;
            out.add_scaled(&prod, &c);
        }
    }
    Ok(out)
}

/// A random reduced word of the given degree with `1..=max_len` letters.
/// Returns `None` when `X` has no generators in that degree.
pub fn random_word<R: Rng>(gens: &[Simplex], degree: usize, max_len: usize, rng: &mut R) -> Option<GroupWord> {
    if gens.is_empty() || max_len == 0 {
        return None;
    }
    let len = rng.gen_range(1..=max_len);
    let letters = (0..len).map(|_| {
        let g = gens[rng.gen_range(0..gens.len())];
        Letter::new(g, if rng.gen_bool(0.5) { 1 } else { -1 })
    });
    GroupWord::from_letters(degree, letters).ok()
}

/// A random nondegenerate word, retrying a bounded number of times.
pub fn random_basis_word<R: Rng>(x: &SimplicialSet, degree: usize, max_len: usize, rng: &mut R) -> Option<GroupWord> {
    let gens = x.loop_generators(degree + 1);
    for _ in 0..200 {
        let w = random_word(&gens, degree, max_len, rng)?;
        if degree == 0 || !w.is_degenerate() {
            return Some(w);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{deltabar, sphere};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn simplex(x: &SimplicialSet, text: &str) -> Simplex {
        x.parse_simplex(text).unwrap()
    }

    #[test]
    fn tau_kills_s0_images() {
        let x = deltabar(2);
        assert!(tau(simplex(&x, "s0 (01)")).unwrap().is_identity());
        let s1 = tau(simplex(&x, "s1 (01)")).unwrap();
        assert_eq!(s1.len(), 1);
        let s2 = sphere(2);
        let t = tau(simplex(&s2, "sigma")).unwrap();
        assert_eq!(t.degree(), 1);
        assert_eq!(t.render(&s2), "[t(sigma)]");
    }

    #[test]
    fn group_axioms() {
        let x = deltabar(2);
        let a = GroupWord::parse(&x, "t((01)) * t((02))^-1", 0).unwrap();
        assert!(a.mul(&a.inv()).unwrap().is_identity());
        assert_eq!(GroupWord::identity(0).mul(&a).unwrap(), a);
        let b = tau(simplex(&x, "(01)")).unwrap();
        assert_eq!(b.mul(&b).unwrap().len(), 2);
        assert!(a.mul(&GroupWord::identity(1)).is_err());
    }

    #[test]
    fn faces_of_generator() {
        let x = deltabar(2);
        let t = tau(simplex(&x, "(012)")).unwrap();
        assert_eq!(t.face(&x, 0).unwrap().render(&x), "[t((12))^-1 * t((02))]");
        assert_eq!(t.face(&x, 1).unwrap().render(&x), "[t((01))]");
        let e = tau(simplex(&x, "(01)")).unwrap();
        assert_eq!(e.degeneracy(0).unwrap().render(&x), "[t(s1 (01))]");
        assert!(t.face(&x, 2).is_err());
    }

    #[test]
    fn degeneracy_criteria() {
        let s2 = sphere(2);
        let t = tau(simplex(&s2, "sigma")).unwrap();
        assert!(!t.is_degenerate());
        assert!(!t.is_degenerate_by_faces(&s2).unwrap());
        assert!(t.degeneracy(0).unwrap().is_degenerate());
        assert!(GroupWord::identity(2).is_degenerate());
        assert!(GroupWord::identity(2).is_degenerate_by_faces(&s2).unwrap());
    }

    #[test]
    fn degeneracy_criteria_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for x in [deltabar(3), sphere(2), deltabar(2)] {
            for deg in 1..=3 {
                let gens = x.loop_generators(deg + 1);
                for _ in 0..100 {
                    let Some(w) = random_word(&gens, deg, 3, &mut rng) else { continue };
                    assert_eq!(w.is_degenerate(), w.is_degenerate_by_faces(&x).unwrap(), "{}", w.render(&x));
                    let d = w.degeneracy(rng.gen_range(0..=deg)).unwrap();
                    assert!(d.is_degenerate() && d.is_degenerate_by_faces(&x).unwrap());
                }
            }
        }
    }

    #[test]
    fn shuffle_counts_and_signs() {
        assert_eq!(shuffles(2, 2).len(), 6);
        assert_eq!(shuffles(0, 3).len(), 1);
        let s = shuffles(1, 1);
        assert_eq!(s.len(), 2);
        assert_eq!(s[0].sign, -s[1].sign);
    }

    #[test]
    fn shuffle_in_degree_zero_is_the_group_product() {
        let x = deltabar(2);
        let g = GroupWord::parse(&x, "t((01))", 0).unwrap();
        let h = GroupWord::parse(&x, "t((12))^-1", 0).unwrap();
        let m = shuffle_mul(&Chain::basis(0, g.clone()), &Chain::basis(0, h.clone())).unwrap();
        assert_eq!(m, Chain::basis(0, g.mul(&h).unwrap()));
        let t = GroupWord::parse(&x, "t((012))", 1).unwrap();
        let unit = Chain::basis(0, GroupWord::identity(0));
        assert_eq!(shuffle_mul(&Chain::basis(1, t.clone()), &unit).unwrap(), Chain::basis(1, t.clone()));
        assert_eq!(shuffle_mul(&unit, &Chain::basis(1, t.clone())).unwrap(), Chain::basis(1, t));
    }

    #[test]
    fn parse_rejects_wrong_degree() {
        let x = deltabar(2);
        assert!(GroupWord::parse(&x, "t((012))", 0).is_err());
        assert!(GroupWord::parse(&x, "u((012))", 1).is_err());
        assert!(GroupWord::parse(&x, "t((012))^2", 1).is_err());
    }
}

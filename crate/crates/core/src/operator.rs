//! Simplicial operators in normal form `s_{i_1}…s_{i_q} d_{j_1}…d_{j_r}`.
//!
//! An operator maps `X_source → X_target`. It is written as a composite
//! acting on the left, so the face operators act first (largest index
//! first) and the degeneracies last (smallest index first).

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A single face or degeneracy letter of an operator word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OpLetter {
    Face(usize),
    Degeneracy(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SimplicialOperator {
    degeneracies: Vec<usize>,
    faces: Vec<usize>,
    source_dim: usize,
}

impl SimplicialOperator {
    /// Builds an operator from its normal form, checking monotonicity and
    /// index bounds at every stage of application.
    pub fn new(degeneracies: Vec<usize>, faces: Vec<usize>, source_dim: usize) -> Result<Self> {
        if degeneracies.windows(2).any(|w| w[0] <= w[1]) {
            return Err(Error::InvalidOperator(format!(
                "degeneracy indices {degeneracies:?} are not strictly decreasing"
            )));
        }
        if faces.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidOperator(format!(
                "face indices {faces:?} are not strictly increasing"
            )));
        }
        if faces.len() > source_dim {
            return Err(Error::InvalidOperator(format!(
                "{} faces cannot act on dimension {source_dim}",
                faces.len()
            )));
        }
        if let Some(&j) = faces.last() {
            if j > source_dim {
                return Err(Error::IndexOutOfRange { index: j, dim: source_dim });
            }
        }
        let base = source_dim - faces.len();
        let q = degeneracies.len();
        for (k, &i) in degeneracies.iter().enumerate() {
            // s_{i_{k+1}} acts on dimension base + (q - 1 - k)
            let dim = base + (q - 1 - k);
            if i > dim {
                return Err(Error::IndexOutOfRange { index: i, dim });
            }
        }
        Ok(Self { degeneracies, faces, source_dim })
    }

    pub fn identity(dim: usize) -> Self {
        Self { degeneracies: Vec::new(), faces: Vec::new(), source_dim: dim }
    }

    /// `d_i : X_source → X_{source-1}`.
    pub fn face(i: usize, source_dim: usize) -> Result<Self> {
        Self::new(Vec::new(), vec![i], source_dim)
    }

    /// `s_i : X_source → X_{source+1}`.
    pub fn degeneracy(i: usize, source_dim: usize) -> Result<Self> {
        Self::new(vec![i], Vec::new(), source_dim)
    }

    pub fn degeneracies(&self) -> &[usize] {
        &self.degeneracies
    }

    pub fn faces(&self) -> &[usize] {
        &self.faces
    }

    pub fn source_dim(&self) -> usize {
        self.source_dim
    }

    pub fn target_dim(&self) -> usize {
        self.source_dim - self.faces.len() + self.degeneracies.len()
    }

    pub fn is_identity(&self) -> bool {
        self.faces.is_empty() && self.degeneracies.is_empty()
    }

    /// True iff the operator contains no `d_0`.
    pub fn is_frontal(&self) -> bool {
        self.faces.first() != Some(&0)
    }

    /// Letters in written order (leftmost acts last).
    pub fn letters(&self) -> Vec<OpLetter> {
        self.degeneracies
            .iter()
            .map(|&i| OpLetter::Degeneracy(i))
            .chain(self.faces.iter().map(|&j| OpLetter::Face(j)))
            .collect()
    }

    /// The derived operator: every index shifted up by one, acting one
    /// dimension higher.
    pub fn derived(&self) -> Self {
        Self {
            degeneracies: self.degeneracies.iter().map(|i| i + 1).collect(),
            faces: self.faces.iter().map(|j| j + 1).collect(),
            source_dim: self.source_dim + 1,
        }
    }

    /// Normal form of `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.source_dim != other.target_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.source_dim,
                found: other.target_dim(),
            });
        }
        let mut word = self.letters();
        word.extend(other.letters());
        let (degeneracies, faces) = normalize_word(word);
        Self::new(degeneracies, faces, other.source_dim)
    }

    /// Composite of a written word of letters acting on `source_dim`.
    pub fn from_letters(letters: &[OpLetter], source_dim: usize) -> Result<Self> {
        // validate dimensions right-to-left before rewriting
        let mut dim = source_dim;
        for l in letters.iter().rev() {
            match *l {
                OpLetter::Face(j) => {
                    if dim == 0 || j > dim {
                        return Err(Error::IndexOutOfRange { index: j, dim });
                    }
                    dim -= 1;
                }
                OpLetter::Degeneracy(i) => {
                    if i > dim {
                        return Err(Error::IndexOutOfRange { index: i, dim });
                    }
                    dim += 1;
                }
            }
        }
        let (degeneracies, faces) = normalize_word(letters.to_vec());
        Self::new(degeneracies, faces, source_dim)
    }

    /// The monotone map `[target] → [source]` representing the operator,
    /// as the list of its values.
    pub fn monotone_map(&self) -> Vec<usize> {
        let mut verts: Vec<usize> = (0..=self.source_dim).collect();
        for &j in self.faces.iter().rev() {
            verts.remove(j);
        }
        for &i in self.degeneracies.iter().rev() {
            let v = verts[i];
            verts.insert(i, v);
        }
        verts
    }

    /// The operator represented by a monotone map `[m] → [source_dim]`.
    pub fn from_monotone(map: &[usize], source_dim: usize) -> Result<Self> {
        if map.is_empty() || map.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidOperator(format!("{map:?} is not monotone")));
        }
        if map[map.len() - 1] > source_dim {
            return Err(Error::IndexOutOfRange { index: map[map.len() - 1], dim: source_dim });
        }
        let faces = (0..=source_dim).filter(|v| !map.contains(v)).collect();
        let mut degeneracies: Vec<usize> =
            (0..map.len() - 1).filter(|&k| map[k] == map[k + 1]).collect();
        degeneracies.reverse();
        Self::new(degeneracies, faces, source_dim)
    }
}

/// Rewrites a word of letters into normal form with the simplicial identities.
fn normalize_word(mut word: Vec<OpLetter>) -> (Vec<usize>, Vec<usize>) {
    use OpLetter::*;
    'outer: loop {
        for k in 0..word.len().saturating_sub(1) {
            let replacement: Option<Vec<OpLetter>> = match (word[k], word[k + 1]) {
                // d_i s_j
                (Face(i), Degeneracy(j)) => Some(if i < j {
                    vec![Degeneracy(j - 1), Face(i)]
                } else if i == j || i == j + 1 {
                    vec![]
                } else {
                    vec![Degeneracy(j), Face(i - 1)]
                }),
                // s_i s_j = s_{j+1} s_i for i <= j
                (Degeneracy(a), Degeneracy(b)) if a <= b => Some(vec![Degeneracy(b + 1), Degeneracy(a)]),
                // d_a d_b = d_b d_{a+1} for a >= b
                (Face(a), Face(b)) if a >= b => Some(vec![Face(b), Face(a + 1)]),
                _ => None,
            };
            if let Some(r) = replacement {
                word.splice(k..k + 2, r);
                continue 'outer;
            }
        }
        break;
    }
    let mut degeneracies = Vec::new();
    let mut faces = Vec::new();
    for l in word {
        match l {
            Degeneracy(i) => degeneracies.push(i),
            Face(j) => faces.push(j),
        }
    }
    (degeneracies, faces)
}

impl fmt::Display for SimplicialOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "id");
        }
        let parts: Vec<String> = self
            .degeneracies
            .iter()
            .map(|i| format!("s{i}"))
            .chain(self.faces.iter().map(|j| format!("d{j}")))
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

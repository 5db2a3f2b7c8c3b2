//! Integer matrices, Smith normal form and the homology of `Ω̂CX` for
//! 1-reduced `X`.
//!
//! Homology of `CGX` is not computed: `(GX)_n` has infinitely many
//! nondegenerate words. The strong deformation retract identities play that
//! role instead.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::cobar::{cobar_diff, positive_basis, CobarWord};
use crate::chain::Chain;
use crate::error::{Error, Result};
use crate::sset::SimplicialSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |v| v.len());
        assert!(rows.iter().all(|v| v.len() == c), "ragged matrix");
        Self { rows: r, cols: c, data: rows.into_iter().flatten().map(BigInt::from).collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix dimensions");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len());
        (0..self.rows).map(|i| (0..self.cols).map(|j| self.get(i, j) * &v[j]).sum()).collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// `row[dst] += f · row[src]`
    fn add_row(&mut self, dst: usize, src: usize, f: &BigInt) {
        for j in 0..self.cols {
            let v = self.get(src, j) * f;
            self.data[dst * self.cols + j] += v;
        }
    }

    /// `col[dst] += f · col[src]`
    fn add_col(&mut self, dst: usize, src: usize, f: &BigInt) {
        for i in 0..self.rows {
            let v = self.get(i, src) * f;
            self.data[i * self.cols + dst] += v;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = -self.get(r, j);
            self.set(r, j, v);
        }
    }
}

impl fmt::Display for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// `u · m · v = d` with `d` diagonal and `d_1 | d_2 | …`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: IntegerMatrix,
    pub v: IntegerMatrix,
    pub d: IntegerMatrix,
    /// Nonzero invariant factors, all positive.
    pub factors: Vec<BigInt>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.factors.len()
    }
}

pub fn smith_normal_form(m: &IntegerMatrix) -> SmithForm {
    let (rows, cols) = (m.rows, m.cols);
    let mut d = m.clone();
    let mut u = IntegerMatrix::identity(rows);
    let mut v = IntegerMatrix::identity(cols);
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry of the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                let a = d.get(i, j);
                if !a.is_zero() && best.is_none_or(|(bi, bj)| a.abs() < d.get(bi, bj).abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if d.get(i, t).is_zero() {
                    continue;
                }
                let q = -d.get(i, t).div_floor(d.get(t, t));
                d.add_row(i, t, &q);
                u.add_row(i, t, &q);
                if !d.get(i, t).is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if d.get(t, j).is_zero() {
                    continue;
                }
                let q = -d.get(t, j).div_floor(d.get(t, t));
                d.add_col(j, t, &q);
                v.add_col(j, t, &q);
                if !d.get(t, j).is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                // move the smallest entry of row/column t to the pivot
                let mut best = (t, t);
                for i in t..rows {
                    let a = d.get(i, t);
                    if !a.is_zero() && a.abs() < d.get(best.0, best.1).abs() {
                        best = (i, t);
                    }
                }
                for j in t..cols {
                    let a = d.get(t, j);
                    if !a.is_zero() && a.abs() < d.get(best.0, best.1).abs() {
                        best = (t, j);
                    }
                }
                d.swap_rows(t, best.0);
                u.swap_rows(t, best.0);
                d.swap_cols(t, best.1);
                v.swap_cols(t, best.1);
                continue;
            }
            // divisibility of the remaining block by the pivot
            let pivot = d.get(t, t).clone();
            let offender = (t + 1..rows)
                .find(|&i| (t + 1..cols).any(|j| !d.get(i, j).is_multiple_of(&pivot)));
            match offender {
                Some(i) => {
                    let one = BigInt::one();
                    d.add_row(t, i, &one);
                    u.add_row(t, i, &one);
                }
                None => break,
            }
        }
        if d.get(t, t).is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }
    let factors = (0..rows.min(cols)).map(|i| d.get(i, i).clone()).take_while(|a| !a.is_zero()).collect();
    SmithForm { u, v, d, factors }
}

/// An integer solution of `m · z = b`, if one exists.
pub fn solve(m: &IntegerMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    let snf = smith_normal_form(m);
    let ub = snf.u.mul_vec(b);
    let mut y = vec![BigInt::zero(); m.cols];
    for (i, c) in ub.iter().enumerate() {
        if i < snf.rank() {
            let (q, r) = c.div_rem(&snf.factors[i]);
            if !r.is_zero() {
                return None;
            }
            y[i] = q;
        } else if !c.is_zero() {
            return None;
        }
    }
    Some(snf.v.mul_vec(&y))
}

/// Matrix of a linear map between chain groups in the given bases, with
/// columns indexed by `source`.
pub fn matrix_of<K: Ord + Clone + std::hash::Hash>(
    source: &[K],
    target: &[K],
    mut f: impl FnMut(&K) -> Result<Chain<K>>,
) -> Result<IntegerMatrix> {
    let index: HashMap<&K, usize> = target.iter().enumerate().map(|(i, k)| (k, i)).collect();
    let mut m = IntegerMatrix::zeros(target.len(), source.len());
    for (j, k) in source.iter().enumerate() {
        for (key, c) in f(k)?.iter() {
            let i = *index.get(key).ok_or_else(|| Error::InvalidSet("image outside target basis".into()))?;
            m.set(i, j, c.clone());
        }
    }
    Ok(m)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyGroup {
    pub degree: usize,
    pub betti: usize,
    pub torsion: Vec<String>,
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        match self.betti {
            0 => {}
            1 => parts.push("Z".into()),
            b => parts.push(format!("Z^{b}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            parts.push("0".into());
        }
        write!(f, "{}", parts.join(" + "))
    }
}

fn cobar_boundary_matrix(x: &SimplicialSet, n: usize, basis: &[Vec<CobarWord>]) -> Result<IntegerMatrix> {
    matrix_of(&basis[n], &basis[n - 1], |w| {
        let d = cobar_diff(x, &Chain::basis(n, w.clone()))?;
        Ok(d.with_degree(n - 1))
    })
}

/// `H_n(Ω̂CX)` for `n ≤ n_max`, `X` 1-reduced.
pub fn cobar_homology(x: &SimplicialSet, n_max: usize) -> Result<Vec<HomologyGroup>> {
    if !x.is_1_reduced() {
        return Err(Error::NotReduced(x.name().to_string(), 1));
    }
    let basis: Vec<Vec<CobarWord>> = (0..=n_max + 1).map(|n| positive_basis(x, n)).collect();
    let mut diffs: Vec<Option<IntegerMatrix>> = vec![None];
    for n in 1..=n_max + 1 {
        diffs.push(Some(cobar_boundary_matrix(x, n, &basis)?));
    }
    for n in 1..=n_max {
        if let (Some(a), Some(b)) = (&diffs[n], &diffs[n + 1]) {
            if !a.mul(b).is_zero() {
                return Err(Error::IdentityViolated(format!("∂∂ ≠ 0 in degree {}", n + 1)));
            }
        }
    }
    let mut out = Vec::new();
    for n in 0..=n_max {
        let rank_out = diffs[n].as_ref().map_or(0, |m| smith_normal_form(m).rank());
        let incoming = diffs[n + 1].as_ref().map(smith_normal_form);
        let rank_in = incoming.as_ref().map_or(0, |s| s.rank());
        let torsion = incoming
            .map(|s| s.factors.into_iter().filter(|f| !f.is_one()).map(|f| f.to_string()).collect())
            .unwrap_or_default();
        out.push(HomologyGroup { degree: n, betti: basis[n].len() - rank_out - rank_in, torsion });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{deltabar, sphere};

    fn check(m: &IntegerMatrix) -> SmithForm {
        let s = smith_normal_form(m);
        assert_eq!(s.u.mul(m).mul(&s.v), s.d);
        for w in s.factors.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
        s
    }

    #[test]
    fn small_matrices() {
        assert_eq!(check(&IntegerMatrix::zeros(2, 3)).rank(), 0);
        let id = check(&IntegerMatrix::identity(3));
        assert!(id.factors.iter().all(|f| f.is_one()));
        // gcd of entries is 2, |det| = 8
        let s = check(&IntegerMatrix::from_rows(vec![vec![2, 4], vec![6, 8]]));
        assert_eq!(s.factors, vec![BigInt::from(2), BigInt::from(4)]);
        let s = check(&IntegerMatrix::from_rows(vec![vec![2, 0], vec![0, 3]]));
        assert_eq!(s.factors, vec![BigInt::from(1), BigInt::from(6)]);
        check(&IntegerMatrix::from_rows(vec![vec![0, 5, 10], vec![3, 0, 7], vec![6, 5, 24]]));
    }

    #[test]
    fn solves_integer_systems() {
        let m = IntegerMatrix::from_rows(vec![vec![2, 4], vec![6, 8]]);
        let b: Vec<BigInt> = [2, 2].map(BigInt::from).to_vec();
        let z = solve(&m, &b).unwrap();
        assert_eq!(m.mul_vec(&z), b);
        assert!(solve(&m, &[BigInt::from(1), BigInt::from(0)]).is_none());
    }

    #[test]
    fn loop_space_of_spheres() {
        let h = cobar_homology(&sphere(2), 3).unwrap();
        assert!(h.iter().all(|g| g.betti == 1 && g.torsion.is_empty()));
        let h = cobar_homology(&sphere(3), 4).unwrap();
        let betti: Vec<usize> = h.iter().map(|g| g.betti).collect();
        assert_eq!(betti, vec![1, 0, 1, 0, 1]);
        assert!(cobar_homology(&deltabar(2), 2).is_err());
    }
}

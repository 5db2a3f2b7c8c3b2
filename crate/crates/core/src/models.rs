//! Built-in simplicial sets: standard simplices, their quotients by the
//! 0-skeleton, spheres and finite wedges.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::sset::{Simplex, SimplexId, SimplicialSet, SimplicialSetBuilder};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ModelKind {
    /// Δ[n]
    Delta(usize),
    /// Δ[n] with its 0-skeleton collapsed to a point.
    DeltaBar(usize),
    /// Δ[n]/∂Δ[n]
    Sphere(usize),
    /// `k` copies of the collapsed n-simplex glued at the basepoint.
    Wedge { copies: usize, n: usize },
}

impl ModelKind {
    pub fn build(self) -> Result<SimplicialSet> {
        match self {
            ModelKind::Delta(n) => Ok(delta(n)),
            ModelKind::DeltaBar(n) if n >= 1 => Ok(deltabar(n)),
            ModelKind::Sphere(n) if n >= 1 => Ok(sphere(n)),
            ModelKind::Wedge { copies, n } if n >= 1 && copies >= 1 => Ok(wedge(copies, n)),
            other => Err(Error::InvalidSet(format!("model {other} needs n >= 1"))),
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelKind::Delta(n) => write!(f, "delta{n}"),
            ModelKind::DeltaBar(n) => write!(f, "deltabar{n}"),
            ModelKind::Sphere(n) => write!(f, "sphere{n}"),
            ModelKind::Wedge { copies, n } => write!(f, "wedge{copies}x{n}"),
        }
    }
}

impl FromStr for ModelKind {
    type Err = Error;

    /// `delta3`, `deltabar2`, `sphere2`, `wedge3x2`.
    fn from_str(s: &str) -> Result<Self> {
        let num = |t: &str| t.parse::<usize>().map_err(|_| Error::Parse(format!("unknown model `{s}`")));
        if let Some(r) = s.strip_prefix("deltabar") {
            Ok(ModelKind::DeltaBar(num(r)?))
        } else if let Some(r) = s.strip_prefix("delta") {
            Ok(ModelKind::Delta(num(r)?))
        } else if let Some(r) = s.strip_prefix("sphere") {
            Ok(ModelKind::Sphere(num(r)?))
        } else if let Some(r) = s.strip_prefix("wedge") {
            let (k, n) = r.split_once('x').ok_or_else(|| Error::Parse(format!("unknown model `{s}`")))?;
            Ok(ModelKind::Wedge { copies: num(k)?, n: num(n)? })
        } else {
            Err(Error::Parse(format!("unknown model `{s}`")))
        }
    }
}

fn vertex_name(verts: &[usize], n: usize) -> String {
    let sep = if n < 10 { "" } else { "," };
    let body: Vec<String> = verts.iter().map(|v| v.to_string()).collect();
    format!("({})", body.join(sep))
}

/// Increasing subsequences of `0..=n` of length `len`.
fn subsequences(n: usize, len: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, len: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for v in start..=n {
            cur.push(v);
            go(v + 1, n, len, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, len, &mut Vec::new(), &mut out);
    out
}

/// Shared construction for Δ[n], Δ̄[n] and wedges of Δ̄[n].
fn simplex_model(name: String, n: usize, copies: usize, collapse: bool) -> SimplicialSet {
    let mut b = SimplicialSetBuilder::new(name);
    let mut geometry: Vec<Vec<(usize, Vec<usize>)>> = vec![Vec::new(); n + 1];
    let suffix = |m: usize| if copies > 1 { format!("#{m}") } else { String::new() };
    let point = if collapse {
        geometry[0].push((0, Vec::new()));
        Some(b.add(0, "*", Vec::new()).expect("basepoint"))
    } else {
        None
    };
    let resolve = |b: &SimplicialSetBuilder, verts: &[usize], m: usize| -> SimplexId {
        if verts.len() == 1 {
            if let Some(p) = point {
                return p;
            }
        }
        b.id(verts.len() - 1, &(vertex_name(verts, n) + &suffix(m))).expect("face present")
    };
    for m in 1..=copies {
        for len in 1..=n + 1 {
            if collapse && len == 1 {
                continue;
            }
            for verts in subsequences(n, len) {
                let dim = len - 1;
                let faces = if dim == 0 {
                    Vec::new()
                } else {
                    (0..=dim)
                        .map(|i| {
                            let mut f = verts.clone();
                            f.remove(i);
                            Simplex::nondegenerate(resolve(&b, &f, m))
                        })
                        .collect()
                };
                b.add(dim, vertex_name(&verts, n) + &suffix(m), faces).expect("valid model");
                geometry[dim].push((m, verts));
            }
        }
        if !collapse {
            break;
        }
    }
    SimplicialSet::set_geometry(&mut b, n, geometry);
    b.build().expect("built-in model satisfies the simplicial identities")
}

pub fn delta(n: usize) -> SimplicialSet {
    simplex_model(format!("delta{n}"), n, 1, false)
}

/// Δ̄[n]: the standard n-simplex with its vertices identified.
pub fn deltabar(n: usize) -> SimplicialSet {
    assert!(n >= 1, "deltabar needs n >= 1");
    simplex_model(format!("deltabar{n}"), n, 1, true)
}

/// `W_k(n)`: `k` copies of Δ̄[n] glued at the basepoint. Simplices of copy
/// `m` are named `(…)#m` when `k > 1`.
pub fn wedge(copies: usize, n: usize) -> SimplicialSet {
    assert!(n >= 1 && copies >= 1, "wedge needs n >= 1 and at least one copy");
    simplex_model(format!("wedge{copies}x{n}"), n, copies, true)
}

/// S^n = Δ[n]/∂Δ[n]: a basepoint `*` and one n-simplex `sigma`.
pub fn sphere(n: usize) -> SimplicialSet {
    assert!(n >= 1, "sphere needs n >= 1");
    let mut b = SimplicialSetBuilder::new(format!("sphere{n}"));
    let p = b.add(0, "*", Vec::new()).expect("basepoint");
    let mut face = Simplex::nondegenerate(p);
    for _ in 0..n - 1 {
        face = face.degenerate(0).expect("small dimension");
    }
    b.add(n, "sigma", vec![face; n + 1]).expect("sphere cell");
    b.build().expect("sphere is valid")
}

//! JSON file format for finitely presented simplicial sets.
//!
//! ```json
//! { "name": "sphere2",
//!   "simplices": {
//!     "0": [ { "id": "*" } ],
//!     "2": [ { "id": "sigma", "faces": [ { "op": "s0", "base": "*" }, … ] } ] } }
//! ```
//!
//! `op` is a degeneracy word in normal form, highest index first; faces are
//! listed `d_0 … d_n`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sset::{Simplex, SimplicialSet, SimplicialSetBuilder};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceEntry {
    #[serde(default)]
    pub op: String,
    pub base: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplexEntry {
    pub id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub faces: Option<Vec<FaceEntry>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplicialSetFile {
    pub name: String,
    pub simplices: BTreeMap<String, Vec<SimplexEntry>>,
}

fn parse_op(op: &str) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for t in op.split_whitespace() {
        let i = t
            .strip_prefix('s')
            .and_then(|r| r.parse::<usize>().ok())
            .ok_or_else(|| Error::Parse(format!("`{t}` is not a degeneracy operator")))?;
        out.push(i);
    }
    if out.windows(2).any(|w| w[0] <= w[1]) {
        return Err(Error::InvalidSet(format!("face operator `{op}` is not in normal form")));
    }
    Ok(out)
}

impl SimplicialSetFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn to_set(&self) -> Result<SimplicialSet> {
        let mut dims: Vec<(usize, &Vec<SimplexEntry>)> = Vec::new();
        for (k, v) in &self.simplices {
            let d = k.parse::<usize>().map_err(|_| Error::Parse(format!("bad dimension key `{k}`")))?;
            dims.push((d, v));
        }
        dims.sort_by_key(|(d, _)| *d);
        let mut b = SimplicialSetBuilder::new(self.name.clone());
        for (dim, entries) in dims {
            for e in entries {
                let faces = match (&e.faces, dim) {
                    (None, 0) => Vec::new(),
                    (Some(f), 0) if f.is_empty() => Vec::new(),
                    (Some(_), 0) => {
                        return Err(Error::InvalidSet(format!("0-simplex `{}` must not list faces", e.id)))
                    }
                    (None, _) => return Err(Error::InvalidSet(format!("simplex `{}` has no faces", e.id))),
                    (Some(fs), _) => {
                        let mut out = Vec::with_capacity(fs.len());
                        for f in fs {
                            let ops = parse_op(&f.op)?;
                            let base_dim = (dim - 1).checked_sub(ops.len()).ok_or_else(|| {
                                Error::InvalidSet(format!("face operator `{}` too long in `{}`", f.op, e.id))
                            })?;
                            let base = b.id(base_dim, &f.base).ok_or_else(|| {
                                Error::UnknownSimplex(format!("{} (dimension {base_dim})", f.base))
                            })?;
                            out.push(Simplex::from_degeneracies(base, &ops)?);
                        }
                        out
                    }
                };
                b.add(dim, e.id.clone(), faces)?;
            }
        }
        b.build()
    }

    pub fn from_set(x: &SimplicialSet) -> Self {
        let mut simplices = BTreeMap::new();
        for dim in 0..=x.top_dim() {
            let entries: Vec<SimplexEntry> = x
                .nondegenerate(dim)
                .map(|id| SimplexEntry {
                    id: x.simplex_name(id).to_string(),
                    faces: (dim > 0).then(|| {
                        x.faces_of(id)
                            .iter()
                            .map(|f| FaceEntry {
                                op: f.degeneracy_indices().iter().map(|i| format!("s{i}")).collect::<Vec<_>>().join(" "),
                                base: x.simplex_name(f.base).to_string(),
                            })
                            .collect()
                    }),
                })
                .collect();
            if !entries.is_empty() {
                simplices.insert(dim.to_string(), entries);
            }
        }
        Self { name: x.name().to_string(), simplices }
    }
}

pub fn load_json(text: &str) -> Result<SimplicialSet> {
    SimplicialSetFile::from_json(text)?.to_set()
}

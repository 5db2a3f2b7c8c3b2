//! Finitely presented simplicial sets.
//!
//! Only nondegenerate simplices are stored. A [`Simplex`] is the
//! Eilenberg–Zilber normal form `s_{i_1}…s_{i_q} b` of an arbitrary simplex,
//! with the degeneracy indices kept as a bit set: bit `j` is set iff the
//! simplex lies in the image of `s_j`.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::operator::{OpLetter, SimplicialOperator};

/// Largest simplex dimension representable by the degeneracy bit set.
pub const MAX_DIM: usize = 31;

/// Index of a nondegenerate simplex in its owning set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SimplexId {
    pub dim: u32,
    pub index: u32,
}

impl SimplexId {
    pub fn new(dim: usize, index: usize) -> Self {
        Self { dim: dim as u32, index: index as u32 }
    }

    pub fn dim(self) -> usize {
        self.dim as usize
    }
}

/// A simplex in Eilenberg–Zilber normal form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Simplex {
    pub base: SimplexId,
    degeneracies: u32,
}

#[inline]
fn low_bits(k: usize) -> u32 {
    if k >= 32 {
        u32::MAX
    } else {
        (1u32 << k) - 1
    }
}

#[inline]
fn remove_bit(mask: u32, b: usize) -> u32 {
    (mask & low_bits(b)) | ((mask >> (b + 1)) << b)
}

impl Simplex {
    pub fn nondegenerate(base: SimplexId) -> Self {
        Self { base, degeneracies: 0 }
    }

    /// Builds `s_{i_1}…s_{i_q} base` from a strictly decreasing index list.
    pub fn from_degeneracies(base: SimplexId, indices: &[usize]) -> Result<Self> {
        if indices.windows(2).any(|w| w[0] <= w[1]) {
            return Err(Error::InvalidOperator(format!(
                "degeneracy word {indices:?} is not in normal form"
            )));
        }
        let mut x = Self::nondegenerate(base);
        for &i in indices.iter().rev() {
            x = x.degenerate(i)?;
        }
        Ok(x)
    }

    pub fn dim(&self) -> usize {
        self.base.dim() + self.degeneracies.count_ones() as usize
    }

    pub fn is_degenerate(&self) -> bool {
        self.degeneracies != 0
    }

    /// True iff the simplex lies in the image of `s_j`.
    pub fn in_image_of(&self, j: usize) -> bool {
        j < 32 && self.degeneracies & (1 << j) != 0
    }

    pub fn is_s0_degenerate(&self) -> bool {
        self.in_image_of(0)
    }

    pub fn degeneracy_mask(&self) -> u32 {
        self.degeneracies
    }

    /// Degeneracy indices in normal-form order (highest first).
    pub fn degeneracy_indices(&self) -> Vec<usize> {
        (0..32).rev().filter(|&j| self.in_image_of(j)).collect()
    }

    /// `s_k` applied to this simplex.
    pub fn degenerate(&self, k: usize) -> Result<Self> {
        let d = self.dim();
        if k > d {
            return Err(Error::IndexOutOfRange { index: k, dim: d });
        }
        if d + 1 > MAX_DIM {
            return Err(Error::InvalidOperator(format!("dimension {} exceeds {MAX_DIM}", d + 1)));
        }
        let m = self.degeneracies;
        let low = low_bits(k);
        let mask = (m & low) | (1 << k) | ((m & !low) << 1);
        Ok(Self { base: self.base, degeneracies: mask })
    }

    fn with_mask(base: SimplexId, degeneracies: u32) -> Self {
        Self { base, degeneracies }
    }
}

/// Cone data for the models built from standard simplices.
#[derive(Clone, Debug)]
struct Geometry {
    cone_vertex: usize,
    /// (summand, vertex list) per nondegenerate simplex; empty list for the basepoint.
    vertices: Vec<Vec<(usize, Vec<usize>)>>,
    by_vertices: HashMap<(usize, Vec<usize>), SimplexId>,
}

#[derive(Clone, Debug)]
pub struct SimplicialSet {
    name: String,
    names: Vec<Vec<String>>,
    faces: Vec<Vec<Vec<Simplex>>>,
    lookup: HashMap<String, Vec<SimplexId>>,
    geometry: Option<Geometry>,
}

/// Incremental construction of a [`SimplicialSet`]; `build` validates.
#[derive(Clone, Debug, Default)]
pub struct SimplicialSetBuilder {
    name: String,
    names: Vec<Vec<String>>,
    faces: Vec<Vec<Vec<Simplex>>>,
    geometry: Option<Geometry>,
}

impl SimplicialSetBuilder {
    pub fn new(name: impl Into<String>) -> Self {
        Self { name: name.into(), ..Default::default() }
    }

    /// Adds a nondegenerate simplex. Faces are listed `d_0 … d_dim` and must
    /// reference simplices added earlier.
    pub fn add(&mut self, dim: usize, name: impl Into<String>, faces: Vec<Simplex>) -> Result<SimplexId> {
        let name = name.into();
        if dim > MAX_DIM {
            return Err(Error::InvalidSet(format!("dimension {dim} exceeds {MAX_DIM}")));
        }
        let expected = if dim == 0 { 0 } else { dim + 1 };
        if faces.len() != expected {
            return Err(Error::InvalidSet(format!(
                "simplex `{name}` of dimension {dim} has {} faces, expected {expected}",
                faces.len()
            )));
        }
        while self.names.len() <= dim {
            self.names.push(Vec::new());
            self.faces.push(Vec::new());
        }
        if self.names[dim].contains(&name) {
            return Err(Error::InvalidSet(format!("duplicate name `{name}` in dimension {dim}")));
        }
        for f in &faces {
            if f.dim() + 1 != dim {
                return Err(Error::InvalidSet(format!(
                    "face of `{name}` has dimension {}, expected {}",
                    f.dim(),
                    dim - 1
                )));
            }
            let b = f.base;
            if b.dim() >= self.names.len() || b.index as usize >= self.names[b.dim()].len() {
                return Err(Error::InvalidSet(format!("face of `{name}` references an unknown simplex")));
            }
        }
        let id = SimplexId::new(dim, self.names[dim].len());
        self.names[dim].push(name);
        self.faces[dim].push(faces);
        Ok(id)
    }

    /// Resolves a name within one dimension.
    pub fn id(&self, dim: usize, name: &str) -> Option<SimplexId> {
        self.names
            .get(dim)?
            .iter()
            .position(|n| n == name)
            .map(|i| SimplexId::new(dim, i))
    }

    pub fn build(self) -> Result<SimplicialSet> {
        let mut lookup: HashMap<String, Vec<SimplexId>> = HashMap::new();
        for (dim, names) in self.names.iter().enumerate() {
            for (i, n) in names.iter().enumerate() {
                lookup.entry(n.clone()).or_default().push(SimplexId::new(dim, i));
            }
        }
        if self.names.first().is_none_or(|v| v.is_empty()) {
            return Err(Error::InvalidSet("no 0-simplices".into()));
        }
        let set = SimplicialSet {
            name: self.name,
            names: self.names,
            faces: self.faces,
            lookup,
            geometry: self.geometry,
        };
        set.validate()?;
        Ok(set)
    }
}

impl SimplicialSet {
    pub fn name(&self) -> &str {
        &self.name
    }

    /// Highest dimension with a stored nondegenerate simplex.
    pub fn top_dim(&self) -> usize {
        self.names.iter().rposition(|v| !v.is_empty()).unwrap_or(0)
    }

    pub fn count(&self, dim: usize) -> usize {
        self.names.get(dim).map_or(0, Vec::len)
    }

    /// Nondegenerate simplices of one dimension.
    pub fn nondegenerate(&self, dim: usize) -> impl Iterator<Item = SimplexId> {
        (0..self.count(dim)).map(move |i| SimplexId::new(dim, i))
    }

    pub fn simplex_name(&self, id: SimplexId) -> &str {
        &self.names[id.dim()][id.index as usize]
    }

    /// Stored faces `d_0 … d_n` of a nondegenerate simplex.
    pub fn faces_of(&self, id: SimplexId) -> &[Simplex] {
        &self.faces[id.dim()][id.index as usize]
    }

    pub fn contains(&self, id: SimplexId) -> bool {
        (id.index as usize) < self.count(id.dim())
    }

    pub fn find(&self, dim: usize, name: &str) -> Result<SimplexId> {
        self.names
            .get(dim)
            .and_then(|v| v.iter().position(|n| n == name))
            .map(|i| SimplexId::new(dim, i))
            .ok_or_else(|| Error::UnknownSimplex(format!("{name} (dimension {dim})")))
    }

    /// Resolves a name across all dimensions.
    pub fn find_any(&self, name: &str) -> Result<SimplexId> {
        match self.lookup.get(name).map(Vec::as_slice) {
            Some([id]) => Ok(*id),
            Some([]) | None => Err(Error::UnknownSimplex(name.to_string())),
            Some(_) => Err(Error::AmbiguousSimplex(name.to_string())),
        }
    }

    /// 0-reduced: exactly one 0-simplex.
    pub fn is_0_reduced(&self) -> bool {
        self.count(0) == 1
    }

    /// 1-reduced: 0-reduced and no nondegenerate 1-simplices.
    pub fn is_1_reduced(&self) -> bool {
        self.is_0_reduced() && self.count(1) == 0
    }

    pub fn require_0_reduced(&self) -> Result<()> {
        if self.is_0_reduced() {
            Ok(())
        } else {
            Err(Error::NotReduced(self.name.clone(), 0))
        }
    }

    pub fn basepoint(&self) -> Result<SimplexId> {
        self.require_0_reduced()?;
        Ok(SimplexId::new(0, 0))
    }

    /// The total degeneracy `s_0^d *` of the basepoint.
    pub fn basepoint_simplex(&self, dim: usize) -> Result<Simplex> {
        let mut x = Simplex::nondegenerate(self.basepoint()?);
        for _ in 0..dim {
            x = x.degenerate(0)?;
        }
        Ok(x)
    }

    pub fn check(&self, x: Simplex) -> Result<()> {
        if self.contains(x.base) {
            Ok(())
        } else {
            Err(Error::UnknownSimplex(format!("{:?}", x.base)))
        }
    }

    /// `d_i x` in normal form.
    pub fn face(&self, x: Simplex, i: usize) -> Result<Simplex> {
        let d = x.dim();
        if d == 0 || i > d {
            return Err(Error::IndexOutOfRange { index: i, dim: d });
        }
        let m = x.degeneracies;
        if i < 32 && m & (1 << i) != 0 {
            return Ok(Simplex::with_mask(x.base, remove_bit(m, i)));
        }
        if i >= 1 && m & (1 << (i - 1)) != 0 {
            return Ok(Simplex::with_mask(x.base, remove_bit(m, i - 1)));
        }
        // vertex i is alone in its fibre: take the face of the base
        let k = i - (m & low_bits(i)).count_ones() as usize;
        let rest = remove_bit(m, i);
        let mut y = self.faces_of(x.base)[k];
        for j in 0..32 {
            if rest & (1 << j) != 0 {
                y = y.degenerate(j)?;
            }
        }
        Ok(y)
    }

    /// Applies `d_i` repeatedly.
    pub fn iterated_face(&self, mut x: Simplex, i: usize, times: usize) -> Result<Simplex> {
        for _ in 0..times {
            x = self.face(x, i)?;
        }
        Ok(x)
    }

    /// Front face `x_{(0,…,k)}`.
    pub fn front_face(&self, mut x: Simplex, k: usize) -> Result<Simplex> {
        let d = x.dim();
        if k > d {
            return Err(Error::IndexOutOfRange { index: k, dim: d });
        }
        for top in ((k + 1)..=d).rev() {
            x = self.face(x, top)?;
        }
        Ok(x)
    }

    /// Back face `x_{(k,…,n)}`.
    pub fn back_face(&self, x: Simplex, k: usize) -> Result<Simplex> {
        let d = x.dim();
        if k > d {
            return Err(Error::IndexOutOfRange { index: k, dim: d });
        }
        self.iterated_face(x, 0, k)
    }

    /// Evaluates a simplicial operator on a simplex.
    pub fn apply(&self, t: &SimplicialOperator, x: Simplex) -> Result<Simplex> {
        self.check(x)?;
        if t.source_dim() != x.dim() {
            return Err(Error::DimensionMismatch { expected: t.source_dim(), found: x.dim() });
        }
        let mut y = x;
        for l in t.letters().into_iter().rev() {
            y = match l {
                OpLetter::Face(j) => self.face(y, j)?,
                OpLetter::Degeneracy(i) => y.degenerate(i)?,
            };
        }
        Ok(y)
    }

    /// Every simplex (degenerate or not) of dimension `dim`.
    pub fn all_simplices(&self, dim: usize) -> Vec<Simplex> {
        let mut out = Vec::new();
        for m in 0..=dim.min(self.top_dim()) {
            let q = dim - m;
            for base in self.nondegenerate(m) {
                for mask in 0u32..(1u32 << dim) {
                    if mask.count_ones() as usize == q {
                        out.push(Simplex::with_mask(base, mask));
                    }
                }
            }
        }
        out
    }

    /// Simplices of dimension `dim` that are not in the image of `s_0`,
    /// i.e. the generators of `(GX)_{dim-1}`.
    pub fn loop_generators(&self, dim: usize) -> Vec<Simplex> {
        self.all_simplices(dim).into_iter().filter(|x| !x.is_s0_degenerate()).collect()
    }

    fn validate(&self) -> Result<()> {
        for (dim, list) in self.faces.iter().enumerate() {
            for (idx, fs) in list.iter().enumerate() {
                let id = SimplexId::new(dim, idx);
                for f in fs {
                    self.check(*f)?;
                }
                if dim < 2 {
                    continue;
                }
                for j in 1..=dim {
                    for i in 0..j {
                        let lhs = self.face(fs[j], i)?;
                        let rhs = self.face(fs[i], j - 1)?;
                        if lhs != rhs {
                            return Err(Error::IdentityViolated(format!(
                                "d{i} d{j} != d{} d{i} on `{}`",
                                j - 1,
                                self.simplex_name(id)
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Renders `x` as `name` or `s1 s0 name`.
    pub fn render_simplex(&self, x: Simplex) -> String {
        let mut parts: Vec<String> = x.degeneracy_indices().iter().map(|i| format!("s{i}")).collect();
        parts.push(self.simplex_name(x.base).to_string());
        parts.join(" ")
    }

    /// Parses `name` or `s1 s0 name` (degeneracies in normal form).
    pub fn parse_simplex(&self, text: &str) -> Result<Simplex> {
        let tokens: Vec<&str> = text.split_whitespace().collect();
        let (base, ops) = tokens
            .split_last()
            .ok_or_else(|| Error::Parse("empty simplex reference".into()))?;
        let mut indices = Vec::new();
        for t in ops {
            let i = t
                .strip_prefix('s')
                .and_then(|r| r.parse::<usize>().ok())
                .ok_or_else(|| Error::Parse(format!("`{t}` is not a degeneracy")))?;
            indices.push(i);
        }
        let base = self.find_any(base)?;
        Simplex::from_degeneracies(base, &indices)
    }

    // ----- cone structure -------------------------------------------------

    pub(crate) fn set_geometry(
        builder: &mut SimplicialSetBuilder,
        cone_vertex: usize,
        vertices: Vec<Vec<(usize, Vec<usize>)>>,
    ) {
        let mut by_vertices = HashMap::new();
        for (dim, list) in vertices.iter().enumerate() {
            for (i, key) in list.iter().enumerate() {
                if !key.1.is_empty() {
                    by_vertices.insert(key.clone(), SimplexId::new(dim, i));
                }
            }
        }
        builder.geometry = Some(Geometry { cone_vertex, vertices, by_vertices });
    }

    pub fn has_cone(&self) -> bool {
        self.geometry.is_some()
    }

    /// Vertex sequence and summand of a simplex in a cone-supporting model;
    /// `None` for degeneracies of the basepoint.
    pub fn vertex_sequence(&self, x: Simplex) -> Result<Option<(usize, Vec<usize>)>> {
        let g = self.geometry.as_ref().ok_or_else(|| Error::NoConeStructure(self.name.clone()))?;
        self.check(x)?;
        let (summand, verts) = &g.vertices[x.base.dim()][x.base.index as usize];
        if verts.is_empty() {
            return Ok(None);
        }
        let mut seq = verts.clone();
        for j in 0..32 {
            if x.in_image_of(j) {
                let v = seq[j];
                seq.insert(j, v);
            }
        }
        Ok(Some((*summand, seq)))
    }

    /// The simplex with a given vertex sequence inside one summand.
    pub fn simplex_from_vertices(&self, summand: usize, seq: &[usize]) -> Result<Simplex> {
        let g = self.geometry.as_ref().ok_or_else(|| Error::NoConeStructure(self.name.clone()))?;
        let mut distinct = seq.to_vec();
        distinct.dedup();
        let mut mask = 0u32;
        for j in 0..seq.len().saturating_sub(1) {
            if seq[j] == seq[j + 1] {
                mask |= 1 << j;
            }
        }
        let base = match g.by_vertices.get(&(summand, distinct.clone())) {
            Some(id) => *id,
            // collapsed vertices
            None if distinct.len() == 1 => SimplexId::new(0, 0),
            None => return Err(Error::UnknownSimplex(format!("{distinct:?} in summand {summand}"))),
        };
        Ok(Simplex::with_mask(base, mask))
    }

    /// `x·n`: appends the cone vertex to the vertex sequence of `x`.
    pub fn cone_last_vertex(&self, x: Simplex) -> Result<Simplex> {
        let g = self.geometry.as_ref().ok_or_else(|| Error::NoConeStructure(self.name.clone()))?;
        let (summand, mut seq) = self.vertex_sequence(x)?.ok_or_else(|| {
            Error::InvalidOperator("the cone on a basepoint degeneracy is not defined".into())
        })?;
        seq.push(g.cone_vertex);
        self.simplex_from_vertices(summand, &seq)
    }
}

impl fmt::Display for SimplicialSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.name)?;
        for dim in 0..=self.top_dim() {
            for id in self.nondegenerate(dim) {
                write!(f, "  [{dim}] {}", self.simplex_name(id))?;
                if dim > 0 {
                    let faces: Vec<String> =
                        self.faces_of(id).iter().map(|x| self.render_simplex(*x)).collect();
                    write!(f, " : {}", faces.join(", "))?;
                }
                writeln!(f)?;
            }
        }
        Ok(())
    }
}

/// A simplicial map, given by the images of the nondegenerate simplices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialMap {
    images: Vec<Vec<Simplex>>,
}

impl SimplicialMap {
    /// Validates dimensions and compatibility with every face operator.
    pub fn new(source: &SimplicialSet, target: &SimplicialSet, images: Vec<Vec<Simplex>>) -> Result<Self> {
        let map = Self { images };
        for dim in 0..=source.top_dim() {
            if map.images.get(dim).map_or(0, Vec::len) != source.count(dim) {
                return Err(Error::InvalidSet(format!("map has wrong number of images in dimension {dim}")));
            }
            for id in source.nondegenerate(dim) {
                let img = map.images[dim][id.index as usize];
                target.check(img)?;
                if img.dim() != dim {
                    return Err(Error::DimensionMismatch { expected: dim, found: img.dim() });
                }
                if dim == 0 {
                    continue;
                }
                for (i, f) in source.faces_of(id).iter().enumerate() {
                    if map.apply(*f)? != target.face(img, i)? {
                        return Err(Error::IdentityViolated(format!(
                            "map does not commute with d{i} on `{}`",
                            source.simplex_name(id)
                        )));
                    }
                }
            }
        }
        Ok(map)
    }

    pub fn apply(&self, x: Simplex) -> Result<Simplex> {
        let mut y = *self
            .images
            .get(x.base.dim())
            .and_then(|v| v.get(x.base.index as usize))
            .ok_or_else(|| Error::UnknownSimplex(format!("{:?}", x.base)))?;
        for j in 0..32 {
            if x.in_image_of(j) {
                y = y.degenerate(j)?;
            }
        }
        Ok(y)
    }

    /// The map `Δ̄[n] → X` (or one summand of a wedge) sending the top
    /// simplex of `summand` to `x`; used summand-wise for wedges.
    pub fn representing(
        model: &SimplicialSet,
        target: &SimplicialSet,
        assignments: &[Simplex],
    ) -> Result<Self> {
        let point = target.basepoint()?;
        let g = model.geometry.as_ref().ok_or_else(|| Error::NoConeStructure(model.name.clone()))?;
        let n = g.cone_vertex;
        let mut images = Vec::new();
        for dim in 0..=model.top_dim() {
            let mut row = Vec::new();
            for id in model.nondegenerate(dim) {
                let (summand, verts) = &g.vertices[dim][id.index as usize];
                if verts.is_empty() {
                    row.push(Simplex::nondegenerate(point));
                    continue;
                }
                let x = *assignments.get(summand - 1).ok_or_else(|| {
                    Error::InvalidSet(format!("no image assigned to summand {summand}"))
                })?;
                if x.dim() != n {
                    return Err(Error::DimensionMismatch { expected: n, found: x.dim() });
                }
                let op = SimplicialOperator::from_monotone(verts, n)?;
                row.push(target.apply(&op, x)?);
            }
            images.push(row);
        }
        Self::new(model, target, images)
    }
}

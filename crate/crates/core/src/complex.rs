//! Finite cube complexes presented as graded cubical sets.
//!
//! A complex is a list of levels, one per dimension. Every `k`-cube carries
//! `2k` face references `∂_{i,ε}` into level `k - 1`, stored in the order
//! `∂_{1,0}, ∂_{1,1}, …, ∂_{k,0}, ∂_{k,1}`. Characteristic maps need not be
//! injective, so loops and cubes glued to themselves are allowed.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::error::ComplexError;

/// Largest supported cube dimension (corners are stored as bitmasks).
pub const MAX_DIMENSION: usize = 30;

/// Identifies a cube by its dimension and its position in that level.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CubeId {
    pub dim: usize,
    pub index: usize,
}

impl CubeId {
    pub const fn new(dim: usize, index: usize) -> Self {
        Self { dim, index }
    }
}

/// A vertex is a 0-cube; this is its index in level 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub usize);

impl From<VertexId> for CubeId {
    fn from(v: VertexId) -> Self {
        CubeId::new(0, v.0)
    }
}

/// A corner `ε ∈ {0,1}^k` of a `k`-cube. Bit `i - 1` of the mask holds `ε_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Corner {
    bits: u32,
    dim: u8,
}

impl Corner {
    pub fn new(dim: usize, bits: u32) -> Self {
        assert!(dim <= MAX_DIMENSION, "cube dimension {dim} too large");
        assert!(dim == 32 || bits >> dim == 0, "corner bits exceed dimension");
        Self { bits, dim: dim as u8 }
    }

    pub fn zero(dim: usize) -> Self {
        Self::new(dim, 0)
    }

    pub fn from_slice(eps: &[bool]) -> Self {
        let bits = eps.iter().enumerate().fold(0u32, |acc, (i, &e)| acc | ((e as u32) << i));
        Self::new(eps.len(), bits)
    }

    pub fn dim(self) -> usize {
        self.dim as usize
    }

    pub fn bits(self) -> u32 {
        self.bits
    }

    /// `ε_i` for `1 ≤ i ≤ dim`.
    pub fn get(self, axis: usize) -> bool {
        debug_assert!(axis >= 1 && axis <= self.dim());
        (self.bits >> (axis - 1)) & 1 == 1
    }

    /// The opposite corner.
    pub fn complement(self) -> Self {
        let mask = if self.dim == 0 { 0 } else { u32::MAX >> (32 - self.dim as u32) };
        Self::new(self.dim(), !self.bits & mask)
    }

    /// Drops axis `i`, shifting the higher axes down.
    fn without_axis(self, axis: usize) -> Self {
        let low = self.bits & ((1u32 << (axis - 1)) - 1);
        let high = self.bits >> axis;
        Self::new(self.dim() - 1, low | (high << (axis - 1)))
    }

    pub fn iter_all(dim: usize) -> impl Iterator<Item = Corner> {
        let mut corners: Vec<Corner> = (0..(1u32 << dim)).map(|b| Corner::new(dim, b)).collect();
        corners.sort();
        corners.into_iter()
    }
}

impl Ord for Corner {
    /// Lexicographic in `(ε_1, …, ε_k)`.
    fn cmp(&self, other: &Self) -> Ordering {
        self.dim.cmp(&other.dim).then_with(|| {
            for axis in 1..=self.dim() {
                match self.get(axis).cmp(&other.get(axis)) {
                    Ordering::Equal => continue,
                    ord => return ord,
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Corner {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Corner {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for axis in 1..=self.dim() {
            f.write_str(if self.get(axis) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// One end of an edge: the `end`-corner of 1-cube `edge`. These are the
/// vertices of vertex links, so a loop contributes two of them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeEnd {
    pub edge: usize,
    pub end: bool,
}

/// A directed diagonal: a cube together with its start corner.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Diagonal {
    pub cube: CubeId,
    pub corner: Corner,
    pub start: VertexId,
    pub end: VertexId,
}

impl Diagonal {
    pub fn dim(&self) -> usize {
        self.cube.dim
    }

    pub fn is_trivial(&self) -> bool {
        self.cube.dim == 0
    }

    /// `d*`: same cube, complemented corner, endpoints swapped.
    pub fn reverse(&self) -> Diagonal {
        Diagonal { cube: self.cube, corner: self.corner.complement(), start: self.end, end: self.start }
    }
}

impl Ord for Diagonal {
    /// `(dim, cube, corner)`; vertices come first since they have dimension 0.
    fn cmp(&self, other: &Self) -> Ordering {
        (self.cube.dim, self.cube.index, self.corner).cmp(&(other.cube.dim, other.cube.index, other.corner))
    }
}

impl PartialOrd for Diagonal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
struct Level {
    names: Vec<String>,
    faces: Vec<Vec<usize>>,
}

/// A validated finite cube complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubicalComplex {
    name: String,
    levels: Vec<Level>,
    by_name: BTreeMap<String, CubeId>,
}

impl CubicalComplex {
    pub fn name(&self) -> &str {
        &self.name
    }

    /// `n`, the largest dimension with a nonempty level.
    pub fn dimension(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn count(&self, dim: usize) -> usize {
        self.levels.get(dim).map_or(0, |l| l.names.len())
    }

    pub fn vertex_count(&self) -> usize {
        self.count(0)
    }

    pub fn edge_count(&self) -> usize {
        self.count(1)
    }

    pub fn cubes(&self) -> impl Iterator<Item = CubeId> + '_ {
        self.levels.iter().enumerate().flat_map(|(dim, level)| (0..level.names.len()).map(move |i| CubeId::new(dim, i)))
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        (0..self.vertex_count()).map(VertexId)
    }

    pub fn cube_name(&self, cube: CubeId) -> &str {
        &self.levels[cube.dim].names[cube.index]
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        self.cube_name(v.into())
    }

    pub fn cube_by_name(&self, name: &str) -> Option<CubeId> {
        self.by_name.get(name).copied()
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<VertexId> {
        match self.cube_by_name(name) {
            Some(CubeId { dim: 0, index }) => Some(VertexId(index)),
            _ => None,
        }
    }

    /// `∂_{i,ε}(c)` for `1 ≤ i ≤ dim c`.
    pub fn face(&self, cube: CubeId, axis: usize, eps: bool) -> CubeId {
        assert!(axis >= 1 && axis <= cube.dim, "face axis out of range");
        let f = self.levels[cube.dim].faces[cube.index][2 * (axis - 1) + eps as usize];
        CubeId::new(cube.dim - 1, f)
    }

    /// The vertex at corner `ε`, resolved through `∂_{1,ε_1}` recursively.
    pub fn corner_vertex(&self, cube: CubeId, corner: Corner) -> VertexId {
        debug_assert_eq!(cube.dim, corner.dim());
        let mut cube = cube;
        let mut corner = corner;
        while cube.dim > 0 {
            let e = corner.get(1);
            cube = self.face(cube, 1, e);
            corner = corner.without_axis(1);
        }
        VertexId(cube.index)
    }

    /// The edge of `cube` along `axis` through corner `corner`, together with
    /// the end of that edge sitting at the corner.
    pub fn axis_edge(&self, cube: CubeId, corner: Corner, axis: usize) -> EdgeEnd {
        debug_assert!(axis >= 1 && axis <= cube.dim);
        let mut current = cube;
        for j in (1..=cube.dim).rev() {
            if j != axis {
                current = self.face(current, j, corner.get(j));
            }
        }
        debug_assert_eq!(current.dim, 1);
        EdgeEnd { edge: current.index, end: corner.get(axis) }
    }

    /// Endpoint `end` of edge `edge`.
    pub fn edge_vertex(&self, edge: usize, end: bool) -> VertexId {
        VertexId(self.face(CubeId::new(1, edge), 1, end).index)
    }

    pub fn diagonal(&self, cube: CubeId, corner: Corner) -> Diagonal {
        Diagonal {
            cube,
            corner,
            start: self.corner_vertex(cube, corner),
            end: self.corner_vertex(cube, corner.complement()),
        }
    }

    /// All directed diagonals in the canonical order: vertices, then
    /// `(dim, cube, corner)`.
    pub fn diagonals(&self) -> Vec<Diagonal> {
        let mut out = Vec::new();
        for cube in self.cubes() {
            for corner in Corner::iter_all(cube.dim) {
                out.push(self.diagonal(cube, corner));
            }
        }
        out
    }

    /// Human-readable diagonal name: the cube name for corner `0…0`, the cube
    /// name with `*` for corner `1…1`, otherwise `name@ε₁…ε_k`.
    pub fn diagonal_name(&self, d: &Diagonal) -> String {
        let base = self.cube_name(d.cube);
        let k = d.dim();
        if k == 0 || d.corner.bits() == 0 {
            String::from(base)
        } else if d.corner == Corner::zero(k).complement() {
            format!("{base}*")
        } else {
            format!("{base}@{}", d.corner)
        }
    }

    /// The cubes that are not a proper face of any other cube.
    pub fn maximal_cubes(&self) -> Vec<CubeId> {
        let mut is_face: Vec<Vec<bool>> = self.levels.iter().map(|l| vec![false; l.names.len()]).collect();
        for (dim, level) in self.levels.iter().enumerate().skip(1) {
            for faces in &level.faces {
                for &f in faces {
                    is_face[dim - 1][f] = true;
                }
            }
        }
        self.cubes().filter(|c| !is_face[c.dim][c.index]).collect()
    }

    fn check_identities(&self) -> Result<(), ComplexError> {
        for (dim, level) in self.levels.iter().enumerate().skip(2) {
            for index in 0..level.names.len() {
                let cube = CubeId::new(dim, index);
                for j in 2..=dim {
                    for i in 1..j {
                        for eps in [false, true] {
                            for delta in [false, true] {
                                let lhs = self.face(self.face(cube, j, delta), i, eps);
                                let rhs = self.face(self.face(cube, i, eps), j - 1, delta);
                                if lhs != rhs {
                                    return Err(ComplexError::CubicalIdentityViolation {
                                        cube: self.cube_name(cube).into(),
                                        i,
                                        j,
                                        eps: eps as u8,
                                        delta: delta as u8,
                                    });
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    fn check_connected(&self) -> Result<(), ComplexError> {
        let n = self.vertex_count();
        let mut adj = vec![Vec::new(); n];
        for e in 0..self.edge_count() {
            let a = self.edge_vertex(e, false).0;
            let b = self.edge_vertex(e, true).0;
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        match seen.iter().position(|s| !s) {
            Some(v) => Err(ComplexError::Disconnected { unreachable: self.vertex_name(VertexId(v)).into() }),
            None => Ok(()),
        }
    }
}

/// Incremental construction of a [`CubicalComplex`] from named cubes.
#[derive(Clone, Debug, Default)]
pub struct ComplexBuilder {
    name: String,
    cubes: Vec<Vec<(String, Vec<String>)>>,
}

impl ComplexBuilder {
    pub fn new(name: impl Into<String>) -> Self {
        Self { name: name.into(), cubes: Vec::new() }
    }

    pub fn vertex(&mut self, id: impl Into<String>) -> &mut Self {
        self.cube(0, id, Vec::<String>::new())
    }

    /// Adds an edge from `from` (corner 0) to `to` (corner 1).
    pub fn edge(&mut self, id: impl Into<String>, from: impl Into<String>, to: impl Into<String>) -> &mut Self {
        self.cube(1, id, [from.into(), to.into()])
    }

    /// Adds a `dim`-cube with faces `∂_{1,0}, ∂_{1,1}, …, ∂_{k,0}, ∂_{k,1}`.
    pub fn cube<I, S>(&mut self, dim: usize, id: impl Into<String>, faces: I) -> &mut Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        if self.cubes.len() <= dim {
            self.cubes.resize_with(dim + 1, Vec::new);
        }
        self.cubes[dim].push((id.into(), faces.into_iter().map(Into::into).collect()));
        self
    }

    pub fn build(&self) -> Result<CubicalComplex, ComplexError> {
        let top = self.cubes.iter().rposition(|l| !l.is_empty());
        let top = match top {
            Some(t) if !self.cubes[0].is_empty() => t,
            _ => return Err(ComplexError::Empty),
        };
        if top > MAX_DIMENSION {
            return Err(ComplexError::DimensionTooLarge { dim: top });
        }
        let mut by_name = BTreeMap::new();
        for (dim, level) in self.cubes.iter().enumerate().take(top + 1) {
            if level.is_empty() {
                return Err(ComplexError::EmptyLevel { dim });
            }
            for (index, (id, _)) in level.iter().enumerate() {
                if by_name.insert(id.clone(), CubeId::new(dim, index)).is_some() {
                    return Err(ComplexError::DuplicateCube { id: id.clone() });
                }
            }
        }
        let mut levels = Vec::with_capacity(top + 1);
        for (dim, level) in self.cubes.iter().enumerate().take(top + 1) {
            let mut out = Level::default();
            for (id, faces) in level {
                if faces.len() != 2 * dim {
                    return Err(ComplexError::WrongFaceCount {
                        cube: id.clone(),
                        expected: 2 * dim,
                        found: faces.len(),
                    });
                }
                let mut resolved = Vec::with_capacity(faces.len());
                for face in faces {
                    match by_name.get(face) {
                        Some(c) if c.dim + 1 == dim => resolved.push(c.index),
                        _ => {
                            return Err(ComplexError::DanglingFaceReference {
                                cube: id.clone(),
                                face: face.clone(),
                                expected_dim: dim - 1,
                            })
                        }
                    }
                }
                out.names.push(id.clone());
                out.faces.push(resolved);
            }
            levels.push(out);
        }
        let complex = CubicalComplex { name: self.name.clone(), levels, by_name };
        complex.check_identities()?;
        complex.check_connected()?;
        Ok(complex)
    }
}


#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn fig1_shape() {
        let c = fig1();
        assert_eq!(c.vertex_count(), 2);
        assert_eq!(c.edge_count(), 2);
        assert_eq!(c.dimension(), 1);
    }

    #[test]
    fn fig1_diagonals_in_canonical_order() {
        let c = fig1();
        let names: Vec<String> = c.diagonals().iter().map(|d| c.diagonal_name(d)).collect();
        assert_eq!(names, ["x", "y", "a", "a*", "b", "b*"]);
        let ds = c.diagonals();
        assert_eq!(ds[2].start, VertexId(0));
        assert_eq!(ds[2].end, VertexId(1));
        assert_eq!(ds[4].start, ds[4].end);
    }

    #[test]
    fn square_counts() {
        let c = square();
        assert_eq!(c.dimension(), 2);
        assert_eq!(c.diagonals().len(), 16);
        let s = c.cube_by_name("s").unwrap();
        let far = c.corner_vertex(s, Corner::new(2, 0b11));
        assert_eq!(c.vertex_name(far), "u11");
        let mid = c.corner_vertex(s, Corner::from_slice(&[true, false]));
        assert_eq!(c.vertex_name(mid), "u10");
    }

    #[test]
    fn cube3_corners_resolve_to_coordinates() {
        let c = cube3();
        let k = c.cube_by_name("k").unwrap();
        for bits in 0..8u32 {
            let v = c.corner_vertex(k, Corner::new(3, bits));
            let expect = format!("p{}{}{}", bits & 1, (bits >> 1) & 1, (bits >> 2) & 1);
            assert_eq!(c.vertex_name(v), expect);
        }
        assert_eq!(c.diagonals().len(), 8 + 24 + 24 + 8);
        assert_eq!(c.maximal_cubes(), [k]);
    }

    #[test]
    fn axis_edges_of_cube3() {
        let c = cube3();
        let k = c.cube_by_name("k").unwrap();
        let corner = Corner::new(3, 0b101);
        let e = c.axis_edge(k, corner, 2);
        assert_eq!(c.cube_name(CubeId::new(1, e.edge)), "c1x1");
        assert!(!e.end);
        let e = c.axis_edge(k, corner, 3);
        assert_eq!(c.cube_name(CubeId::new(1, e.edge)), "c10x");
        assert!(e.end);
    }

    #[test]
    fn identity_violation_is_reported() {
        let err = ComplexBuilder::new("bad")
            .vertex("p")
            .vertex("q")
            .vertex("r")
            .vertex("s")
            .edge("h0", "p", "q")
            .edge("h1", "r", "s")
            .edge("v0", "p", "r")
            .edge("v1", "q", "s")
            // v0 and v1 swapped: ∂_{1,0}∂_{2,0} = p but ∂_{1,0}∂_{1,0} would need v1's start
            .cube(2, "sq", ["v1", "v0", "h0", "h1"])
            .build()
            .unwrap_err();
        assert!(matches!(err, ComplexError::CubicalIdentityViolation { ref cube, .. } if cube == "sq"));
    }

    #[test]
    fn dangling_and_disconnected() {
        let err = ComplexBuilder::new("d").vertex("p").edge("e", "p", "q").build().unwrap_err();
        assert!(matches!(err, ComplexError::DanglingFaceReference { .. }));
        let err = ComplexBuilder::new("d").vertex("p").vertex("q").build().unwrap_err();
        assert!(matches!(err, ComplexError::Disconnected { .. }));
        let err = ComplexBuilder::new("d")
            .vertex("p")
            .vertex("q")
            .edge("e", "p", "q")
            .cube(2, "s", ["e", "e"])
            .build()
            .unwrap_err();
        assert!(matches!(err, ComplexError::WrongFaceCount { .. }));
    }

    #[test]
    fn corner_ordering_and_complement() {
        let all: Vec<String> = Corner::iter_all(2).map(|c| format!("{c}")).collect();
        assert_eq!(all, ["00", "01", "10", "11"]);
        let c = Corner::from_slice(&[true, false, true]);
        assert_eq!(format!("{}", c.complement()), "010");
        assert_eq!(c.complement().complement(), c);
        assert_eq!(Corner::zero(0).complement(), Corner::zero(0));
    }
}

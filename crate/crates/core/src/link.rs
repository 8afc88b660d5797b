//! Vertex links, cube links, and the nonpositive-curvature and Eulerian checks.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::complex::{Corner, CubeId, CubicalComplex, Diagonal, EdgeEnd, VertexId};
use crate::error::ComplexError;

/// The simplex `σ(d)` of a diagonal inside the link of its start vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkSimplex {
    pub diagonal: Diagonal,
    /// Sorted indices into [`LinkComplex::vertices`]. Repeats are kept so that
    /// validation can see them.
    pub vertices: Vec<usize>,
}

/// The link of a vertex: edge-ends as vertices, one simplex per diagonal
/// starting there (the trivial diagonal gives the empty simplex).
#[derive(Clone, Debug)]
pub struct LinkComplex {
    owner: VertexId,
    vertices: Vec<EdgeEnd>,
    simplices: Vec<LinkSimplex>,
    by_diagonal: BTreeMap<(CubeId, Corner), usize>,
    adjacency: Vec<Vec<bool>>,
}

impl LinkComplex {
    fn build(complex: &CubicalComplex, owner: VertexId, diagonals: &[Diagonal]) -> Self {
        let mut vertices: Vec<EdgeEnd> = (0..complex.edge_count())
            .flat_map(|edge| [false, true].map(|end| EdgeEnd { edge, end }))
            .filter(|ee| complex.edge_vertex(ee.edge, ee.end) == owner)
            .collect();
        vertices.sort();
        let mut simplices = Vec::new();
        let mut by_diagonal = BTreeMap::new();
        for d in diagonals.iter().filter(|d| d.start == owner) {
            let mut vs: Vec<usize> = (1..=d.dim())
                .map(|axis| {
                    let ee = complex.axis_edge(d.cube, d.corner, axis);
                    vertices
                        .binary_search(&ee)
                        .expect("cubical identities place every axis edge-end at the corner vertex")
                })
                .collect();
            vs.sort_unstable();
            by_diagonal.insert((d.cube, d.corner), simplices.len());
            simplices.push(LinkSimplex { diagonal: *d, vertices: vs });
        }
        let n = vertices.len();
        let mut adjacency = vec![vec![false; n]; n];
        for s in simplices.iter().filter(|s| s.vertices.len() == 2) {
            let (a, b) = (s.vertices[0], s.vertices[1]);
            if a != b {
                adjacency[a][b] = true;
                adjacency[b][a] = true;
            }
        }
        Self { owner, vertices, simplices, by_diagonal, adjacency }
    }

    pub fn owner(&self) -> VertexId {
        self.owner
    }

    pub fn vertices(&self) -> &[EdgeEnd] {
        &self.vertices
    }

    pub fn simplices(&self) -> &[LinkSimplex] {
        &self.simplices
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.adjacency[a][b]
    }

    pub fn edge_count(&self) -> usize {
        self.simplices.iter().filter(|s| s.vertices.len() == 2).count()
    }

    /// `σ(d)` for a diagonal starting at the owner.
    pub fn simplex_of(&self, d: &Diagonal) -> Option<&[usize]> {
        self.by_diagonal.get(&(d.cube, d.corner)).map(|&i| self.simplices[i].vertices.as_slice())
    }

    /// Whether `star(σ)` meets `τ`. A vertex `w` lies in the star of `σ` iff
    /// `w ∈ σ` or `w` is adjacent to every vertex of `σ`; this relies on the
    /// link being flag.
    pub fn star_meets(&self, sigma: &[usize], tau: &[usize]) -> bool {
        tau.iter().any(|&w| sigma.contains(&w) || sigma.iter().all(|&s| self.adjacency[w][s]))
    }

    /// Euler characteristic over the nonempty simplices.
    pub fn euler_characteristic(&self) -> i64 {
        self.as_simplicial().euler_characteristic()
    }

    pub fn as_simplicial(&self) -> SimplicialComplex {
        SimplicialComplex::new(
            self.simplices.iter().filter(|s| !s.vertices.is_empty()).map(|s| s.vertices.clone()).collect(),
        )
    }

    /// Sanity problems that keep this from being a simplicial complex.
    pub fn simplicial_issues(&self, complex: &CubicalComplex) -> Vec<LinkIssue> {
        let mut issues = Vec::new();
        let mut seen: BTreeMap<&[usize], &Diagonal> = BTreeMap::new();
        for s in &self.simplices {
            if s.vertices.windows(2).any(|w| w[0] == w[1]) {
                issues.push(LinkIssue::RepeatedVertex { diagonal: complex.diagonal_name(&s.diagonal) });
                continue;
            }
            if let Some(prev) = seen.insert(&s.vertices, &s.diagonal) {
                issues.push(LinkIssue::DuplicateSimplex {
                    first: complex.diagonal_name(prev),
                    second: complex.diagonal_name(&s.diagonal),
                });
            }
        }
        for s in &self.simplices {
            let k = s.vertices.len();
            if !(2..=20).contains(&k) {
                continue;
            }
            for mask in 1..(1u32 << k) - 1 {
                let face: Vec<usize> = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| s.vertices[i]).collect();
                if !seen.contains_key(face.as_slice()) {
                    issues.push(LinkIssue::MissingFace {
                        diagonal: complex.diagonal_name(&s.diagonal),
                        face: face.iter().map(|&i| self.vertices[i]).collect(),
                    });
                }
            }
        }
        issues
    }

    /// Minimal sets of pairwise-adjacent link vertices that span no simplex.
    pub fn flag_violations(&self) -> Vec<Vec<EdgeEnd>> {
        let present: BTreeSet<&[usize]> = self.simplices.iter().map(|s| s.vertices.as_slice()).collect();
        let mut found: Vec<Vec<usize>> = Vec::new();
        let n = self.vertices.len();
        let mut stack: Vec<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
        while let Some(clique) = stack.pop() {
            let last = *clique.last().unwrap();
            for w in (last + 1)..n {
                if !clique.iter().all(|&u| self.adjacency[u][w]) {
                    continue;
                }
                let mut bigger = clique.clone();
                bigger.push(w);
                if present.contains(bigger.as_slice()) {
                    stack.push(bigger);
                } else if !found.iter().any(|f| f.iter().all(|x| bigger.contains(x))) {
                    found.push(bigger);
                }
            }
        }
        let minimal: Vec<Vec<usize>> = found
            .iter()
            .filter(|c| !found.iter().any(|f| f.len() < c.len() && f.iter().all(|x| c.contains(x))))
            .cloned()
            .collect();
        let mut found = minimal;
        found.sort();
        found.into_iter().map(|c| c.into_iter().map(|i| self.vertices[i]).collect()).collect()
    }
}

/// A finite abstract simplicial complex given by its nonempty simplices.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SimplicialComplex {
    simplices: Vec<Vec<usize>>,
}

impl SimplicialComplex {
    pub fn new(mut simplices: Vec<Vec<usize>>) -> Self {
        for s in &mut simplices {
            s.sort_unstable();
        }
        simplices.retain(|s| !s.is_empty());
        simplices.sort();
        simplices.dedup();
        Self { simplices }
    }

    pub fn simplices(&self) -> &[Vec<usize>] {
        &self.simplices
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    /// `χ(∅) = 0`.
    pub fn euler_characteristic(&self) -> i64 {
        self.simplices.iter().map(|s| if s.len() % 2 == 1 { 1 } else { -1 }).sum()
    }

    /// `dim(∅) = -1`.
    pub fn dimension(&self) -> i64 {
        self.simplices.iter().map(|s| s.len() as i64 - 1).max().unwrap_or(-1)
    }

    pub fn vertex_count(&self) -> usize {
        self.simplices.iter().filter(|s| s.len() == 1).count()
    }
}

impl CubicalComplex {
    /// The link of every vertex, indexed by vertex.
    pub fn links(&self) -> Vec<LinkComplex> {
        let diagonals = self.diagonals();
        self.vertices().map(|v| LinkComplex::build(self, v, &diagonals)).collect()
    }

    pub fn link(&self, v: VertexId) -> Result<LinkComplex, ComplexError> {
        if v.0 >= self.vertex_count() {
            return Err(ComplexError::NotAVertex(alloc::format!("#{}", v.0)));
        }
        Ok(LinkComplex::build(self, v, &self.diagonals()))
    }

    pub fn link_by_name(&self, name: &str) -> Result<LinkComplex, ComplexError> {
        let v = self.vertex_by_name(name).ok_or_else(|| ComplexError::NotAVertex(name.into()))?;
        self.link(v)
    }

    /// The link of `cube`, computed at the given corner as the link of `σ`
    /// inside the vertex link.
    pub fn link_of_cube_at(&self, cube: CubeId, corner: Corner) -> SimplicialComplex {
        let v = self.corner_vertex(cube, corner);
        let link = LinkComplex::build(self, v, &self.diagonals());
        link_of_simplex(&link, &self.diagonal(cube, corner))
    }

    pub fn link_of_cube(&self, cube: CubeId) -> SimplicialComplex {
        self.link_of_cube_at(cube, Corner::zero(cube.dim))
    }

    pub fn validate_npc(&self) -> NpcReport {
        let links = self.links();
        let vertices = links
            .iter()
            .map(|link| VertexLinkReport {
                vertex: self.vertex_name(link.owner).into(),
                link_vertices: link.vertices.len(),
                link_edges: link.edge_count(),
                simplicial_issues: link.simplicial_issues(self),
                flag_violations: link
                    .flag_violations()
                    .into_iter()
                    .map(|c| c.into_iter().map(|ee| self.edge_end_name(ee)).collect())
                    .collect(),
            })
            .collect();
        NpcReport { connected: true, vertices }
    }

    pub fn eulerian_status(&self) -> EulerianReport {
        let n = self.dimension();
        let links = self.links();
        let non_top_maximal: Vec<String> =
            self.maximal_cubes().into_iter().filter(|c| c.dim != n).map(|c| self.cube_name(c).into()).collect();
        let mut cells = Vec::new();
        for cube in self.cubes() {
            let corner = Corner::zero(cube.dim);
            let d = self.diagonal(cube, corner);
            let lk = link_of_simplex(&links[d.start.0], &d);
            let dim = lk.dimension();
            let chi = lk.euler_characteristic();
            let required = 1 + if dim.rem_euclid(2) == 0 { 1 } else { -1 };
            cells.push(CellEuler {
                cube: self.cube_name(cube).into(),
                cube_dim: cube.dim,
                link_dim: dim,
                chi,
                required,
            });
        }
        EulerianReport { dimension: n, non_top_maximal, cells }
    }

    pub fn edge_end_name(&self, ee: EdgeEnd) -> String {
        alloc::format!("{}:{}", self.cube_name(CubeId::new(1, ee.edge)), ee.end as u8)
    }
}

/// `{τ \ σ : σ ⊊ τ}` over the simplices of the vertex link.
fn link_of_simplex(link: &LinkComplex, d: &Diagonal) -> SimplicialComplex {
    let sigma = link.simplex_of(d).expect("diagonal starts at the link owner");
    let mut out = Vec::new();
    for s in link.simplices() {
        if s.vertices.len() > sigma.len() && sigma.iter().all(|v| s.vertices.contains(v)) {
            out.push(s.vertices.iter().copied().filter(|v| !sigma.contains(v)).collect());
        }
    }
    SimplicialComplex::new(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinkIssue {
    RepeatedVertex { diagonal: String },
    DuplicateSimplex { first: String, second: String },
    MissingFace { diagonal: String, face: Vec<EdgeEnd> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexLinkReport {
    pub vertex: String,
    pub link_vertices: usize,
    pub link_edges: usize,
    pub simplicial_issues: Vec<LinkIssue>,
    /// Cliques (as `edge:end` names) that span no simplex.
    pub flag_violations: Vec<Vec<String>>,
}

impl VertexLinkReport {
    pub fn is_simplicial(&self) -> bool {
        self.simplicial_issues.is_empty()
    }

    pub fn is_flag(&self) -> bool {
        self.flag_violations.is_empty()
    }
}

/// Per-vertex outcome of the nonpositive-curvature check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NpcReport {
    pub connected: bool,
    pub vertices: Vec<VertexLinkReport>,
}

impl NpcReport {
    pub fn all_simplicial(&self) -> bool {
        self.vertices.iter().all(VertexLinkReport::is_simplicial)
    }

    pub fn all_flag(&self) -> bool {
        self.vertices.iter().all(VertexLinkReport::is_flag)
    }

    pub fn passed(&self) -> bool {
        self.connected && self.all_simplicial() && self.all_flag()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellEuler {
    pub cube: String,
    pub cube_dim: usize,
    pub link_dim: i64,
    pub chi: i64,
    /// `1 + (-1)^{dim Lk}`.
    pub required: i64,
}

impl CellEuler {
    pub fn ok(&self) -> bool {
        self.chi == self.required
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerianReport {
    pub dimension: usize,
    /// Maximal cubes whose dimension is below `n`.
    pub non_top_maximal: Vec<String>,
    pub cells: Vec<CellEuler>,
}

impl EulerianReport {
    pub fn pure(&self) -> bool {
        self.non_top_maximal.is_empty()
    }

    pub fn failing_cells(&self) -> impl Iterator<Item = &CellEuler> {
        self.cells.iter().filter(|c| !c.ok())
    }

    pub fn is_eulerian(&self) -> bool {
        self.pure() && self.failing_cells().next().is_none()
    }
}

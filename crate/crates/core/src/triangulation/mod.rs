//! Ideal triangulations given by face pairings, with their edge and vertex
//! combinatorics.

mod orient;
mod tgl;

use serde::{Deserialize, Serialize};

pub use orient::{orient, Oriented};
pub use tgl::{parse_tgl, to_tgl};

use crate::error::TriangulationError;
use crate::perm::Perm4;
use crate::quad::{tet_edge_index, QuadId, QuadSlot, TET_EDGES};

/// Face `f` of one tetrahedron is glued to face `perm(f)` of `tet`, sending
/// vertex `v` to vertex `perm(v)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Gluing {
    pub tet: usize,
    pub perm: Perm4,
}

impl Gluing {
    pub fn new(tet: usize, perm: Perm4) -> Self {
        Gluing { tet, perm }
    }
}

/// One step of the walk around an edge.
///
/// `vertices = [a, b, c, d]`: the edge is `{a, b}` of `tet`, the walk arrived
/// through the face opposite `c` and leaves through the face opposite `d`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Corner {
    pub tet: usize,
    pub vertices: [u8; 4],
}

impl Corner {
    pub fn ends(&self) -> (u8, u8) {
        (self.vertices[0], self.vertices[1])
    }

    pub fn entry_face(&self) -> u8 {
        self.vertices[2]
    }

    pub fn exit_face(&self) -> u8 {
        self.vertices[3]
    }

    pub fn tet_edge(&self) -> usize {
        tet_edge_index(self.vertices[0], self.vertices[1])
    }

    /// The quad in this tetrahedron that faces the edge.
    pub fn facing_quad(&self) -> QuadId {
        QuadId::new(
            self.tet,
            QuadSlot::dual_to(self.vertices[0], self.vertices[1]),
        )
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EdgeClass {
    pub id: usize,
    /// Cyclically ordered as met when walking around the edge.
    pub corners: Vec<Corner>,
}

impl EdgeClass {
    pub fn degree(&self) -> usize {
        self.corners.len()
    }
}

/// The quads facing an edge, in walk order.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct QuadSequence {
    pub edge: usize,
    pub facing: Vec<QuadId>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct VertexLink {
    pub id: usize,
    /// `(tetrahedron, vertex)` pairs making up this ideal vertex.
    pub corners: Vec<(usize, u8)>,
    pub euler_characteristic: i64,
}

impl VertexLink {
    pub fn is_torus(&self) -> bool {
        self.euler_characteristic == 0
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Triangulation {
    gluings: Vec<[Gluing; 4]>,
    edges: Vec<EdgeClass>,
    edge_lookup: Vec<[usize; 6]>,
}

impl Triangulation {
    /// Validates the face pairings and computes the edge classes.
    pub fn new(gluings: Vec<[Gluing; 4]>) -> Result<Self, TriangulationError> {
        let n = gluings.len();
        if n == 0 {
            return Err(TriangulationError::Empty);
        }
        for (t, faces) in gluings.iter().enumerate() {
            for (f, g) in faces.iter().enumerate() {
                let face = f as u8;
                if g.tet >= n {
                    return Err(TriangulationError::TetOutOfRange {
                        tet: t,
                        face,
                        target: g.tet,
                        count: n,
                    });
                }
                let target_face = g.perm.apply(face);
                if g.tet == t && target_face == face {
                    return Err(TriangulationError::FaceGluedToItself { tet: t, face });
                }
                let back = gluings[g.tet][target_face as usize];
                if back.tet != t || back.perm != g.perm.inverse() {
                    return Err(TriangulationError::NonInvolutive { tet: t, face });
                }
            }
        }
        let (edges, edge_lookup) = walk_edges(&gluings)?;
        Ok(Triangulation {
            gluings,
            edges,
            edge_lookup,
        })
    }

    pub fn tet_count(&self) -> usize {
        self.gluings.len()
    }

    pub fn gluing(&self, tet: usize, face: u8) -> Gluing {
        self.gluings[tet][face as usize]
    }

    pub fn gluings(&self) -> &[[Gluing; 4]] {
        &self.gluings
    }

    /// Number of triangles after gluing, always `2n`.
    pub fn face_count(&self) -> usize {
        2 * self.tet_count()
    }

    pub fn edge_classes(&self) -> &[EdgeClass] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edge_degrees(&self) -> Vec<usize> {
        self.edges.iter().map(EdgeClass::degree).collect()
    }

    /// Edge class containing edge `{a, b}` of `tet`.
    pub fn edge_of(&self, tet: usize, a: u8, b: u8) -> usize {
        self.edge_lookup[tet][tet_edge_index(a, b)]
    }

    /// Edge classes of the six edges of `tet`, indexed like [`TET_EDGES`].
    pub fn tet_edges(&self, tet: usize) -> [usize; 6] {
        self.edge_lookup[tet]
    }

    pub fn quad_sequence(&self, edge: usize) -> QuadSequence {
        QuadSequence {
            edge,
            facing: self.edges[edge]
                .corners
                .iter()
                .map(Corner::facing_quad)
                .collect(),
        }
    }

    pub fn quad_count(&self) -> usize {
        3 * self.tet_count()
    }

    /// True when every face pairing is orientation reversing.
    pub fn is_oriented(&self) -> bool {
        self.gluings.iter().flatten().all(|g| g.perm.is_odd())
    }

    /// Renames the vertices of tetrahedron `t` by `relabelling[t]`.
    pub fn relabel(&self, relabelling: &[Perm4]) -> Result<Self, TriangulationError> {
        if relabelling.len() != self.tet_count() {
            return Err(TriangulationError::RelabellingLength {
                expected: self.tet_count(),
                got: relabelling.len(),
            });
        }
        let mut gluings = self.gluings.clone();
        for (t, faces) in self.gluings.iter().enumerate() {
            let sigma = relabelling[t];
            for (f, g) in faces.iter().enumerate() {
                let perm = relabelling[g.tet].compose(g.perm).compose(sigma.inverse());
                gluings[t][sigma.apply(f as u8) as usize] = Gluing::new(g.tet, perm);
            }
        }
        Triangulation::new(gluings)
    }

    /// Euler characteristic of each vertex link, from `V - E + F` on the
    /// induced triangulation of the link.
    pub fn vertex_links(&self) -> Vec<VertexLink> {
        let n = self.tet_count();
        let mut uf = UnionFind::new(4 * n);
        for (t, faces) in self.gluings.iter().enumerate() {
            for (f, g) in faces.iter().enumerate() {
                for v in (0..4u8).filter(|&v| v as usize != f) {
                    uf.union(4 * t + v as usize, 4 * g.tet + g.perm.apply(v) as usize);
                }
            }
        }
        let mut class_of = vec![usize::MAX; 4 * n];
        let mut links: Vec<VertexLink> = Vec::new();
        for slot in 0..4 * n {
            let root = uf.find(slot);
            if class_of[root] == usize::MAX {
                class_of[root] = links.len();
                links.push(VertexLink {
                    id: links.len(),
                    corners: Vec::new(),
                    euler_characteristic: 0,
                });
            }
            links[class_of[root]]
                .corners
                .push((slot / 4, (slot % 4) as u8));
        }
        // Each link vertex is an end of an edge class.
        let mut link_vertices = vec![0i64; links.len()];
        for edge in &self.edges {
            let c = edge.corners[0];
            let (a, b) = c.ends();
            link_vertices[class_of[uf.find(4 * c.tet + a as usize)]] += 1;
            link_vertices[class_of[uf.find(4 * c.tet + b as usize)]] += 1;
        }
        for (link, v) in links.iter_mut().zip(link_vertices) {
            let triangles = link.corners.len() as i64;
            // 3 sides per triangle, each shared by two triangles.
            let sides = 3 * triangles / 2;
            link.euler_characteristic = v - sides + triangles;
        }
        links
    }
}

fn walk_edges(
    gluings: &[[Gluing; 4]],
) -> Result<(Vec<EdgeClass>, Vec<[usize; 6]>), TriangulationError> {
    let n = gluings.len();
    let mut lookup = vec![[usize::MAX; 6]; n];
    let mut edges = Vec::new();
    for t in 0..n {
        for (k, &(a, b)) in TET_EDGES.iter().enumerate() {
            if lookup[t][k] != usize::MAX {
                continue;
            }
            let id = edges.len();
            let [c, d] = complement(a, b);
            let start = Corner {
                tet: t,
                vertices: [a, b, c, d],
            };
            let mut corners = Vec::new();
            let mut cur = start;
            loop {
                let slot = &mut lookup[cur.tet][cur.tet_edge()];
                if *slot != usize::MAX {
                    let (a, b) = cur.ends();
                    return Err(TriangulationError::InvalidEdge { tet: cur.tet, a, b });
                }
                *slot = id;
                corners.push(cur);
                let [a, b, c, d] = cur.vertices;
                let g = gluings[cur.tet][d as usize];
                let p = g.perm;
                cur = Corner {
                    tet: g.tet,
                    vertices: [p.apply(a), p.apply(b), p.apply(d), p.apply(c)],
                };
                if cur == start {
                    break;
                }
            }
            edges.push(EdgeClass { id, corners });
        }
    }
    Ok((edges, lookup))
}

fn complement(a: u8, b: u8) -> [u8; 2] {
    let mut rest = (0..4u8).filter(|&v| v != a && v != b);
    [rest.next().unwrap(), rest.next().unwrap()]
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

//! Plabic graphs stored as combinatorial maps.
//!
//! A graph is a set of darts (half-edges) with an edge involution and, for
//! every vertex, the clockwise cyclic order of its darts. Vertices `0..n` are
//! the boundary vertices `1..=n`, each carrying exactly one dart; the boundary
//! is read clockwise in label order. Internal vertices are black or white.
//!
//! Trips follow the rules of the road: at a black vertex a trip takes the
//! next dart counterclockwise from the one it arrived on (a right turn), at a
//! white vertex the next dart clockwise (a left turn).

mod canon;
mod export;
mod moves;
mod trips;

pub use canon::{move_equivalent, CanonicalForm, Equivalence, MoveSearch};
pub use export::{to_dot, GraphJson};
pub use moves::{MoveKind, MoveSite};
pub use trips::{EdgeTripLabels, ResonanceReport, Trip};

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VertexColor {
    Black,
    White,
    Boundary,
}

impl VertexColor {
    pub fn flipped(self) -> Self {
        match self {
            Self::Black => Self::White,
            Self::White => Self::Black,
            Self::Boundary => Self::Boundary,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlabicError {
    #[error("malformed map: {0}")]
    Malformed(String),
    #[error("boundary vertex {0} must have exactly one incident edge")]
    BoundaryDegree(usize),
    #[error("internal leaf at vertex {0} is not attached to a boundary vertex")]
    InteriorLeaf(usize),
    #[error("component containing vertex {0} does not touch the boundary")]
    IsolatedComponent(usize),
    #[error("component containing vertex {vertex} is not a disk embedding (V - E + F = {euler})")]
    NotPlanar { vertex: usize, euler: i64 },
    #[error("boundary vertices are not in clockwise order on the outer face")]
    BoundaryOrder,
    #[error("trip from boundary {0} does not terminate")]
    TripDoesNotTerminate(usize),
    #[error("trip from boundary {0} returns to its start without a lollipop to color the fixed point")]
    AmbiguousFixedPoint(usize),
    #[error("move precondition violated: {0}")]
    MovePrecondition(String),
    #[error("json: {0}")]
    Json(String),
}

/// A leafless plabic graph in a disk, as a combinatorial map.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PlabicGraph {
    n: usize,
    colors: Vec<VertexColor>,
    /// Clockwise darts around each vertex.
    rotation: Vec<Vec<usize>>,
    dart_vertex: Vec<usize>,
    /// Index of each dart inside its vertex's rotation.
    dart_slot: Vec<usize>,
    involution: Vec<usize>,
}

impl PlabicGraph {
    /// Builds and validates a graph. `colors[i]` for `i < n` must be
    /// `Boundary`; those vertices are the boundary labels `1..=n`.
    pub fn new(
        n: usize,
        colors: Vec<VertexColor>,
        rotation: Vec<Vec<usize>>,
        involution: Vec<usize>,
    ) -> Result<Self, PlabicError> {
        let darts = involution.len();
        if colors.len() != rotation.len() {
            return Err(PlabicError::Malformed("colors and rotation lengths differ".into()));
        }
        let mut dart_vertex = vec![usize::MAX; darts];
        let mut dart_slot = vec![usize::MAX; darts];
        for (v, rot) in rotation.iter().enumerate() {
            for (slot, &d) in rot.iter().enumerate() {
                if d >= darts || dart_vertex[d] != usize::MAX {
                    return Err(PlabicError::Malformed(format!("dart {d} listed twice or out of range")));
                }
                dart_vertex[d] = v;
                dart_slot[d] = slot;
            }
        }
        if let Some(d) = dart_vertex.iter().position(|&v| v == usize::MAX) {
            return Err(PlabicError::Malformed(format!("dart {d} belongs to no vertex")));
        }
        for (d, &e) in involution.iter().enumerate() {
            if e >= darts || involution[e] != d || e == d {
                return Err(PlabicError::Malformed(format!("edge involution broken at dart {d}")));
            }
            if dart_vertex[d] == dart_vertex[e] {
                return Err(PlabicError::Malformed(format!("loop at vertex {}", dart_vertex[d])));
            }
        }
        let g = Self { n, colors, rotation, dart_vertex, dart_slot, involution };
        g.validate()?;
        Ok(g)
    }

    fn validate(&self) -> Result<(), PlabicError> {
        let n = self.n;
        if self.colors.len() < n {
            return Err(PlabicError::Malformed("fewer vertices than boundary labels".into()));
        }
        for v in 0..self.vertex_count() {
            let is_boundary = v < n;
            if is_boundary != (self.colors[v] == VertexColor::Boundary) {
                return Err(PlabicError::Malformed(format!("vertex {v} has color {:?}", self.colors[v])));
            }
            if is_boundary && self.degree(v) != 1 {
                return Err(PlabicError::BoundaryDegree(v + 1));
            }
            if !is_boundary {
                match self.degree(v) {
                    0 => return Err(PlabicError::IsolatedComponent(v)),
                    1 if !self.is_boundary(self.neighbor(self.rotation[v][0])) => {
                        return Err(PlabicError::InteriorLeaf(v));
                    }
                    _ => {}
                }
            }
        }
        // components, Euler characteristic and boundary order
        let comp = self.components();
        let ncomp = comp.iter().max().map_or(0, |&c| c + 1);
        let mut has_boundary = vec![false; ncomp];
        for v in 0..n {
            has_boundary[comp[v]] = true;
        }
        if let Some(c) = has_boundary.iter().position(|&b| !b) {
            let v = comp.iter().position(|&x| x == c).unwrap();
            return Err(PlabicError::IsolatedComponent(v));
        }
        let faces = self.faces();
        let mut vcount = vec![0i64; ncomp];
        let mut ecount = vec![0i64; ncomp];
        let mut fcount = vec![0i64; ncomp];
        for v in 0..self.vertex_count() {
            vcount[comp[v]] += 1;
        }
        for d in 0..self.dart_count() {
            if d < self.involution[d] {
                ecount[comp[self.dart_vertex[d]]] += 1;
            }
        }
        for f in &faces {
            fcount[comp[self.dart_vertex[f[0]]]] += 1;
        }
        for c in 0..ncomp {
            let euler = vcount[c] - ecount[c] + fcount[c];
            if euler != 2 {
                let v = comp.iter().position(|&x| x == c).unwrap();
                return Err(PlabicError::NotPlanar { vertex: v, euler });
            }
        }
        self.check_boundary_order(&comp, &faces)
    }

    /// In each component the boundary darts share one face and appear on it in
    /// clockwise order; the label sets of different components do not interleave.
    fn check_boundary_order(&self, comp: &[usize], faces: &[Vec<usize>]) -> Result<(), PlabicError> {
        let mut face_of = vec![0; self.dart_count()];
        for (fi, f) in faces.iter().enumerate() {
            for &d in f {
                face_of[d] = fi;
            }
        }
        let ncomp = comp.iter().max().map_or(0, |&c| c + 1);
        for c in 0..ncomp {
            let labels: Vec<usize> = (0..self.n).filter(|&v| comp[v] == c).collect();
            let darts: Vec<usize> = labels.iter().map(|&v| self.rotation[v][0]).collect();
            let face = face_of[darts[0]];
            if darts.iter().any(|&d| face_of[d] != face) {
                return Err(PlabicError::BoundaryOrder);
            }
            // the outer face walk meets the boundary darts in increasing cyclic order
            let walk = &faces[face];
            let order: Vec<usize> = walk.iter().filter(|&&d| self.dart_vertex[d] < self.n).map(|&d| self.dart_vertex[d]).collect();
            let m = order.len();
            let start = order.iter().position(|&v| v == labels[0]).unwrap();
            let rotated: Vec<usize> = (0..m).map(|t| order[(start + t) % m]).collect();
            if rotated != labels {
                return Err(PlabicError::BoundaryOrder);
            }
        }
        // non-interleaving of components along the boundary circle
        for a in 0..self.n {
            for b in a + 1..self.n {
                for c2 in b + 1..self.n {
                    for d in c2 + 1..self.n {
                        if comp[a] == comp[c2] && comp[b] == comp[d] && comp[a] != comp[b] {
                            return Err(PlabicError::BoundaryOrder);
                        }
                    }
                }
            }
        }
        Ok(())
    }

    fn components(&self) -> Vec<usize> {
        let mut comp = vec![usize::MAX; self.vertex_count()];
        let mut next = 0;
        for s in 0..self.vertex_count() {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = next;
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for &d in &self.rotation[v] {
                    let u = self.neighbor(d);
                    if comp[u] == usize::MAX {
                        comp[u] = next;
                        stack.push(u);
                    }
                }
            }
            next += 1;
        }
        comp
    }

    /// Face boundary walks: orbits of `d ↦ next clockwise after α(d)`.
    pub fn faces(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.dart_count()];
        let mut out = Vec::new();
        for s in 0..self.dart_count() {
            if seen[s] {
                continue;
            }
            let mut f = Vec::new();
            let mut d = s;
            while !seen[d] {
                seen[d] = true;
                f.push(d);
                d = self.face_next(d);
            }
            out.push(f);
        }
        out
    }

    pub(crate) fn face_next(&self, d: usize) -> usize {
        self.rotate_cw(self.involution[d])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertex_count(&self) -> usize {
        self.colors.len()
    }

    pub fn dart_count(&self) -> usize {
        self.involution.len()
    }

    pub fn edge_count(&self) -> usize {
        self.dart_count() / 2
    }

    pub fn color(&self, v: usize) -> VertexColor {
        self.colors[v]
    }

    pub fn colors(&self) -> &[VertexColor] {
        &self.colors
    }

    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rotation[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rotation[v].len()
    }

    pub fn dart_vertex(&self, d: usize) -> usize {
        self.dart_vertex[d]
    }

    pub fn partner(&self, d: usize) -> usize {
        self.involution[d]
    }

    /// Vertex at the far end of dart `d`.
    pub fn neighbor(&self, d: usize) -> usize {
        self.dart_vertex[self.involution[d]]
    }

    pub fn is_boundary(&self, v: usize) -> bool {
        v < self.n
    }

    /// Internal vertex of degree one hanging off a boundary vertex.
    pub fn is_lollipop(&self, v: usize) -> bool {
        !self.is_boundary(v) && self.degree(v) == 1
    }

    /// The dart of boundary vertex `label` (1-based).
    pub fn boundary_dart(&self, label: usize) -> usize {
        self.rotation[label - 1][0]
    }

    pub fn rotate_cw(&self, d: usize) -> usize {
        let rot = &self.rotation[self.dart_vertex[d]];
        rot[(self.dart_slot[d] + 1) % rot.len()]
    }

    pub fn rotate_ccw(&self, d: usize) -> usize {
        let rot = &self.rotation[self.dart_vertex[d]];
        rot[(self.dart_slot[d] + rot.len() - 1) % rot.len()]
    }

    /// Edges as dart pairs `(d, α(d))` with `d < α(d)`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.dart_count()).filter(|&d| d < self.involution[d]).map(|d| (d, self.involution[d])).collect()
    }

    pub fn internal_vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.n..self.vertex_count()
    }

    /// Graph of `n` boundary lollipops: white for counterclockwise labels in `ccw`, black otherwise.
    pub fn lollipops(n: usize, ccw: &BTreeSet<usize>) -> Self {
        let mut b = MapBuilder::new(n);
        for label in 1..=n {
            let color = if ccw.contains(&label) { VertexColor::White } else { VertexColor::Black };
            let v = b.add_vertex(color);
            let d = b.add_dart(v);
            b.link(b.boundary_dart(label), d);
        }
        b.finish().expect("lollipop graph is valid")
    }
}

/// Mutable scratch representation used to assemble graphs and apply moves.
/// Vertices and darts may be deleted; `finish` renumbers and validates.
#[derive(Debug, Clone)]
pub(crate) struct MapBuilder {
    n: usize,
    colors: Vec<Option<VertexColor>>,
    rotation: Vec<Vec<usize>>,
    partner: Vec<Option<usize>>,
    dart_alive: Vec<bool>,
}

impl MapBuilder {
    /// Starts with boundary vertices `1..=n`, each with one unlinked dart.
    pub(crate) fn new(n: usize) -> Self {
        let mut b = Self { n, colors: Vec::new(), rotation: Vec::new(), partner: Vec::new(), dart_alive: Vec::new() };
        for _ in 0..n {
            let v = b.add_vertex(VertexColor::Boundary);
            b.add_dart(v);
        }
        b
    }

    pub(crate) fn from_graph(g: &PlabicGraph) -> Self {
        Self {
            n: g.n,
            colors: g.colors.iter().map(|&c| Some(c)).collect(),
            rotation: g.rotation.clone(),
            partner: g.involution.iter().map(|&e| Some(e)).collect(),
            dart_alive: vec![true; g.dart_count()],
        }
    }

    pub(crate) fn boundary_dart(&self, label: usize) -> usize {
        self.rotation[label - 1][0]
    }

    pub(crate) fn add_vertex(&mut self, color: VertexColor) -> usize {
        self.colors.push(Some(color));
        self.rotation.push(Vec::new());
        self.colors.len() - 1
    }

    /// Appends a new dart at the end of `v`'s clockwise order.
    pub(crate) fn add_dart(&mut self, v: usize) -> usize {
        self.partner.push(None);
        self.dart_alive.push(true);
        let d = self.partner.len() - 1;
        self.rotation[v].push(d);
        d
    }

    pub(crate) fn link(&mut self, a: usize, b: usize) {
        self.partner[a] = Some(b);
        self.partner[b] = Some(a);
    }

    pub(crate) fn partner(&self, d: usize) -> usize {
        self.partner[d].expect("linked dart")
    }

    pub(crate) fn set_rotation(&mut self, v: usize, rot: Vec<usize>) {
        self.rotation[v] = rot;
    }

    pub(crate) fn set_color(&mut self, v: usize, c: VertexColor) {
        self.colors[v] = Some(c);
    }

    pub(crate) fn vertex_of(&self, d: usize) -> usize {
        self.rotation.iter().position(|r| r.contains(&d)).expect("dart has a vertex")
    }

    /// Deletes dart `d` from its vertex (its partner is left dangling).
    pub(crate) fn remove_dart(&mut self, d: usize) {
        let v = self.vertex_of(d);
        self.rotation[v].retain(|&x| x != d);
        self.dart_alive[d] = false;
        self.partner[d] = None;
    }

    pub(crate) fn remove_vertex(&mut self, v: usize) {
        for d in std::mem::take(&mut self.rotation[v]) {
            self.dart_alive[d] = false;
            self.partner[d] = None;
        }
        self.colors[v] = None;
    }

    /// Removes a bivalent vertex and glues its two edges into one.
    pub(crate) fn splice_out(&mut self, v: usize) {
        let rot = self.rotation[v].clone();
        assert_eq!(rot.len(), 2, "splice_out needs a bivalent vertex");
        let (x, y) = (self.partner(rot[0]), self.partner(rot[1]));
        self.remove_vertex(v);
        self.link(x, y);
    }

    pub(crate) fn finish(self) -> Result<PlabicGraph, PlabicError> {
        let mut vmap = vec![usize::MAX; self.colors.len()];
        let mut colors = Vec::new();
        for (v, c) in self.colors.iter().enumerate() {
            if let Some(c) = c {
                vmap[v] = colors.len();
                colors.push(*c);
            }
        }
        let mut dmap = vec![usize::MAX; self.partner.len()];
        let mut count = 0;
        for (v, rot) in self.rotation.iter().enumerate() {
            if vmap[v] == usize::MAX {
                continue;
            }
            for &d in rot {
                dmap[d] = count;
                count += 1;
            }
        }
        let mut involution = vec![usize::MAX; count];
        let mut rotation = Vec::with_capacity(colors.len());
        for (v, rot) in self.rotation.iter().enumerate() {
            if vmap[v] == usize::MAX {
                continue;
            }
            rotation.push(rot.iter().map(|&d| dmap[d]).collect());
            for &d in rot {
                let e = self.partner[d].ok_or_else(|| PlabicError::Malformed(format!("dangling dart {d}")))?;
                if !self.dart_alive[e] || dmap[e] == usize::MAX {
                    return Err(PlabicError::Malformed(format!("dart {d} linked to a deleted dart")));
                }
                involution[dmap[d]] = dmap[e];
            }
        }
        PlabicGraph::new(self.n, colors, rotation, involution)
    }
}

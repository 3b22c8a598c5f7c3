use serde::{Deserialize, Serialize};

use super::{MapBuilder, PlabicError, PlabicGraph, VertexColor};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MoveKind {
    /// Square move: recolor an alternating square face of trivalent vertices.
    M1,
    /// Contract an edge whose endpoints have the same color.
    M2Contract,
    /// Split a vertex into two same-colored vertices joined by a new edge.
    M2Uncontract,
    /// Insert a bivalent vertex in the middle of an edge.
    M3Insert,
    /// Remove a bivalent vertex, gluing its two edges.
    M3Remove,
    /// Parallel edge reduction.
    R1,
}

impl MoveKind {
    pub const EQUIVALENCE: [MoveKind; 5] =
        [MoveKind::M1, MoveKind::M2Contract, MoveKind::M2Uncontract, MoveKind::M3Insert, MoveKind::M3Remove];
}

/// Where a move applies. Ordering is by kind, then location, then parameters.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MoveSite {
    pub kind: MoveKind,
    pub vertices: Vec<usize>,
    pub darts: Vec<usize>,
    /// Color of the vertex created by `M3Insert`.
    pub color: Option<VertexColor>,
    /// `M2Uncontract`: the contiguous arc `(first slot, length)` of the
    /// vertex's clockwise darts that moves to the first new vertex.
    pub arc: Option<(usize, usize)>,
}

impl MoveSite {
    fn new(kind: MoveKind, vertices: Vec<usize>, darts: Vec<usize>) -> Self {
        Self { kind, vertices, darts, color: None, arc: None }
    }

    pub fn m1(face_darts: [usize; 4], g: &PlabicGraph) -> Self {
        let mut vertices: Vec<usize> = face_darts.iter().map(|&d| g.dart_vertex(d)).collect();
        vertices.sort_unstable();
        let mut darts = face_darts.to_vec();
        darts.sort_unstable();
        Self::new(MoveKind::M1, vertices, darts)
    }

    pub fn m2_contract(dart: usize, g: &PlabicGraph) -> Self {
        let d = dart.min(g.partner(dart));
        Self::new(MoveKind::M2Contract, vec![g.dart_vertex(d), g.neighbor(d)], vec![d])
    }

    pub fn m2_uncontract(vertex: usize, first_slot: usize, len: usize) -> Self {
        Self { arc: Some((first_slot, len)), ..Self::new(MoveKind::M2Uncontract, vec![vertex], vec![]) }
    }

    pub fn m3_insert(dart: usize, color: VertexColor, g: &PlabicGraph) -> Self {
        let d = dart.min(g.partner(dart));
        Self { color: Some(color), ..Self::new(MoveKind::M3Insert, vec![], vec![d]) }
    }

    pub fn m3_remove(vertex: usize) -> Self {
        Self::new(MoveKind::M3Remove, vec![vertex], vec![])
    }

    pub fn r1(digon: [usize; 2], g: &PlabicGraph) -> Self {
        let mut vertices = vec![g.dart_vertex(digon[0]), g.dart_vertex(digon[1])];
        vertices.sort_unstable();
        let mut darts = digon.to_vec();
        darts.sort_unstable();
        Self::new(MoveKind::R1, vertices, darts)
    }
}

fn precondition(msg: impl Into<String>) -> PlabicError {
    PlabicError::MovePrecondition(msg.into())
}

fn is_internal_color(c: VertexColor) -> bool {
    c != VertexColor::Boundary
}

impl PlabicGraph {
    /// Applies a local move, returning a new graph.
    pub fn apply_move(&self, site: &MoveSite) -> Result<PlabicGraph, PlabicError> {
        match site.kind {
            MoveKind::M1 => self.square_move(site),
            MoveKind::M2Contract => self.contract(site),
            MoveKind::M2Uncontract => self.uncontract(site),
            MoveKind::M3Insert => self.insert_middle(site),
            MoveKind::M3Remove => self.remove_middle(site),
            MoveKind::R1 => self.reduce_parallel(site),
        }
    }

    fn dart_in_range(&self, d: usize) -> Result<usize, PlabicError> {
        (d < self.dart_count()).then_some(d).ok_or_else(|| precondition(format!("dart {d} does not exist")))
    }

    fn vertex_in_range(&self, v: usize) -> Result<usize, PlabicError> {
        (v < self.vertex_count()).then_some(v).ok_or_else(|| precondition(format!("vertex {v} does not exist")))
    }

    /// The face walk through `d`, if it has exactly `len` darts.
    fn face_of_len(&self, d: usize, len: usize) -> Option<Vec<usize>> {
        let mut walk = vec![d];
        let mut x = self.face_next(d);
        while x != d {
            walk.push(x);
            if walk.len() > len {
                return None;
            }
            x = self.face_next(x);
        }
        (walk.len() == len).then_some(walk)
    }

    fn square_move(&self, site: &MoveSite) -> Result<PlabicGraph, PlabicError> {
        let &[d0, ..] = site.darts.as_slice() else { return Err(precondition("M1 needs the face darts")) };
        let walk = self.face_of_len(self.dart_in_range(d0)?, 4).ok_or_else(|| precondition("not a square face"))?;
        let mut sorted = walk.clone();
        sorted.sort_unstable();
        if sorted != site.darts {
            return Err(precondition("darts do not form one face"));
        }
        let verts: Vec<usize> = walk.iter().map(|&d| self.dart_vertex(d)).collect();
        let mut distinct = verts.clone();
        distinct.sort_unstable();
        distinct.dedup();
        if distinct.len() != 4 {
            return Err(precondition("square face must have four distinct vertices"));
        }
        for (t, &v) in verts.iter().enumerate() {
            if !is_internal_color(self.color(v)) || self.degree(v) != 3 {
                return Err(precondition("square vertices must be internal and trivalent"));
            }
            if self.color(v) == self.color(verts[(t + 1) % 4]) {
                return Err(precondition("square colors must alternate"));
            }
        }
        let mut b = MapBuilder::from_graph(self);
        for &v in &verts {
            b.set_color(v, self.color(v).flipped());
        }
        b.finish()
    }

    fn contract(&self, site: &MoveSite) -> Result<PlabicGraph, PlabicError> {
        let &[d] = site.darts.as_slice() else { return Err(precondition("M2 contraction needs one dart")) };
        let d = self.dart_in_range(d)?;
        let e = self.partner(d);
        let (u, v) = (self.dart_vertex(d), self.dart_vertex(e));
        if !is_internal_color(self.color(u)) || self.color(u) != self.color(v) {
            return Err(precondition("endpoints must be internal vertices of the same color"));
        }
        if self.rotation(u).iter().filter(|&&x| self.neighbor(x) == v).count() != 1 {
            return Err(precondition("endpoints are joined by more than one edge"));
        }
        let cycle_after = |rot: &[usize], skip: usize| -> Vec<usize> {
            let s = rot.iter().position(|&x| x == skip).unwrap();
            (1..rot.len()).map(|t| rot[(s + t) % rot.len()]).collect()
        };
        let mut merged = cycle_after(self.rotation(u), d);
        merged.extend(cycle_after(self.rotation(v), e));
        let mut b = MapBuilder::from_graph(self);
        // v's surviving darts move to u
        b.set_rotation(v, vec![e]);
        b.remove_vertex(v);
        b.remove_dart(d);
        b.set_rotation(u, merged);
        b.finish()
    }

    fn uncontract(&self, site: &MoveSite) -> Result<PlabicGraph, PlabicError> {
        let (&[v], Some((first, len))) = (site.vertices.as_slice(), site.arc) else {
            return Err(precondition("M2 uncontraction needs a vertex and an arc"));
        };
        let v = self.vertex_in_range(v)?;
        let m = self.degree(v);
        if !is_internal_color(self.color(v)) || first >= m || len < 2 || len + 2 > m {
            return Err(precondition("uncontraction needs an internal vertex split into arcs of size >= 2"));
        }
        let rot = self.rotation(v).to_vec();
        let arc_a: Vec<usize> = (0..len).map(|t| rot[(first + t) % m]).collect();
        let arc_b: Vec<usize> = (len..m).map(|t| rot[(first + t) % m]).collect();
        let mut b = MapBuilder::from_graph(self);
        let w = b.add_vertex(self.color(v));
        let x = b.add_dart(v);
        let y = b.add_dart(w);
        b.link(x, y);
        // v keeps arc A, w takes arc B; each then points at the other
        b.set_rotation(v, arc_a.into_iter().chain([x]).collect());
        b.set_rotation(w, arc_b.into_iter().chain([y]).collect());
        b.finish()
    }

    fn insert_middle(&self, site: &MoveSite) -> Result<PlabicGraph, PlabicError> {
        let (&[d], Some(color)) = (site.darts.as_slice(), site.color) else {
            return Err(precondition("M3 insertion needs an edge and a color"));
        };
        let d = self.dart_in_range(d)?;
        if !is_internal_color(color) {
            return Err(precondition("inserted vertex must be black or white"));
        }
        let e = self.partner(d);
        if self.is_lollipop(self.dart_vertex(d)) || self.is_lollipop(self.dart_vertex(e)) {
            return Err(precondition("cannot subdivide a lollipop edge"));
        }
        let mut b = MapBuilder::from_graph(self);
        let w = b.add_vertex(color);
        let p = b.add_dart(w);
        let q = b.add_dart(w);
        b.link(d, p);
        b.link(q, e);
        b.finish()
    }

    fn remove_middle(&self, site: &MoveSite) -> Result<PlabicGraph, PlabicError> {
        let &[v] = site.vertices.as_slice() else { return Err(precondition("M3 removal needs one vertex")) };
        let v = self.vertex_in_range(v)?;
        if !is_internal_color(self.color(v)) || self.degree(v) != 2 {
            return Err(precondition("M3 removal needs an internal bivalent vertex"));
        }
        let rot = self.rotation(v);
        if self.neighbor(rot[0]) == self.neighbor(rot[1]) {
            return Err(precondition("removal would create a loop"));
        }
        let mut b = MapBuilder::from_graph(self);
        b.splice_out(v);
        b.finish()
    }

    fn reduce_parallel(&self, site: &MoveSite) -> Result<PlabicGraph, PlabicError> {
        let &[d0, d1] = site.darts.as_slice() else { return Err(precondition("R1 needs the two digon darts")) };
        let walk = self.face_of_len(self.dart_in_range(d0)?, 2).ok_or_else(|| precondition("not a digon face"))?;
        if !walk.contains(&d1) {
            return Err(precondition("darts do not bound one digon"));
        }
        let (u, v) = (self.dart_vertex(d0), self.dart_vertex(d1));
        if u == v || self.degree(u) != 3 || self.degree(v) != 3 {
            return Err(precondition("parallel pair needs two distinct trivalent vertices"));
        }
        let (cu, cv) = (self.color(u), self.color(v));
        if !is_internal_color(cu) || !is_internal_color(cv) || cu == cv {
            return Err(precondition("parallel pair needs a black and a white vertex"));
        }
        let third = |w: usize| self.rotation(w).iter().copied().find(|&x| self.neighbor(x) != if w == u { v } else { u });
        let (Some(a), Some(c)) = (third(u), third(v)) else {
            return Err(precondition("vertices share all their edges"));
        };
        let (x, y) = (self.partner(a), self.partner(c));
        if self.dart_vertex(x) == self.dart_vertex(y) {
            return Err(precondition("reduction would create a loop"));
        }
        let mut b = MapBuilder::from_graph(self);
        b.remove_vertex(u);
        b.remove_vertex(v);
        b.link(x, y);
        b.finish()
    }

    /// Replaces the edge of dart `d` by a path through a white and a black
    /// trivalent vertex joined by two parallel edges. The result always has
    /// an `R1` site.
    pub fn with_parallel_pair(&self, d: usize) -> Result<PlabicGraph, PlabicError> {
        let d = self.dart_in_range(d)?;
        let e = self.partner(d);
        let mut b = MapBuilder::from_graph(self);
        let w = b.add_vertex(VertexColor::White);
        let k = b.add_vertex(VertexColor::Black);
        let w_out = b.add_dart(w);
        let w_up = b.add_dart(w);
        let w_down = b.add_dart(w);
        let k_out = b.add_dart(k);
        let k_down = b.add_dart(k);
        let k_up = b.add_dart(k);
        b.link(d, w_out);
        b.link(e, k_out);
        b.link(w_up, k_up);
        b.link(w_down, k_down);
        b.finish()
    }

    /// Every site of `kind`, deduplicated and sorted. A site is listed only
    /// if applying it yields a valid graph.
    pub fn find_move_sites(&self, kind: MoveKind) -> Vec<MoveSite> {
        let mut sites = Vec::new();
        match kind {
            MoveKind::M1 => {
                for f in self.faces() {
                    if let Ok(arr) = <[usize; 4]>::try_from(f.as_slice()) {
                        sites.push(MoveSite::m1(arr, self));
                    }
                }
            }
            MoveKind::M2Contract => {
                for (d, _) in self.edges() {
                    sites.push(MoveSite::m2_contract(d, self));
                }
            }
            MoveKind::M2Uncontract => {
                for v in self.internal_vertices() {
                    let m = self.degree(v);
                    for len in 2..=m.saturating_sub(2) {
                        for first in 0..m {
                            // each bipartition once: keep the arc containing slot 0
                            let contains_zero = first == 0 || first + len > m;
                            if contains_zero {
                                sites.push(MoveSite::m2_uncontract(v, first, len));
                            }
                        }
                    }
                }
            }
            MoveKind::M3Insert => {
                for (d, _) in self.edges() {
                    for color in [VertexColor::Black, VertexColor::White] {
                        sites.push(MoveSite::m3_insert(d, color, self));
                    }
                }
            }
            MoveKind::M3Remove => {
                for v in self.internal_vertices() {
                    if self.degree(v) == 2 {
                        sites.push(MoveSite::m3_remove(v));
                    }
                }
            }
            MoveKind::R1 => {
                for f in self.faces() {
                    if let Ok(arr) = <[usize; 2]>::try_from(f.as_slice()) {
                        sites.push(MoveSite::r1(arr, self));
                    }
                }
            }
        }
        sites.retain(|s| self.apply_move(s).is_ok());
        sites.sort();
        sites.dedup();
        sites
    }
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;

    use super::*;
    use crate::plabic::test_graphs::parallel_pair_gadget;

    #[test]
    fn lollipops_have_no_square_sites() {
        let g = PlabicGraph::lollipops(4, &BTreeSet::from([2]));
        assert!(g.find_move_sites(MoveKind::M1).is_empty());
        assert!(g.find_move_sites(MoveKind::M3Insert).is_empty());
    }

    #[test]
    fn insert_then_remove_round_trips() {
        let g = parallel_pair_gadget();
        for site in g.find_move_sites(MoveKind::M3Insert) {
            let h = g.apply_move(&site).unwrap();
            let removals = h.find_move_sites(MoveKind::M3Remove);
            assert_eq!(removals.len(), 1);
            let back = h.apply_move(&removals[0]).unwrap();
            assert_eq!(back.canonical_form(), g.canonical_form());
        }
    }

    #[test]
    fn m3_remove_sites_are_bivalent_vertices() {
        let g = parallel_pair_gadget();
        let h = g.apply_move(&g.find_move_sites(MoveKind::M3Insert)[0]).unwrap();
        let sites = h.find_move_sites(MoveKind::M3Remove);
        let bivalent: Vec<usize> = h.internal_vertices().filter(|&v| h.degree(v) == 2).collect();
        assert_eq!(sites.iter().map(|s| s.vertices[0]).collect::<Vec<_>>(), bivalent);
    }

    #[test]
    fn parallel_reduction_drops_three_edges() {
        let g = parallel_pair_gadget();
        let sites = g.find_move_sites(MoveKind::R1);
        assert_eq!(sites.len(), 1);
        let h = g.apply_move(&sites[0]).unwrap();
        assert_eq!(g.edge_count() - h.edge_count(), 3);
        assert_eq!(h.trip_permutation().unwrap().perm().one_line(), &[2, 1]);
        assert!(h.is_reduced().unwrap());
        // input untouched
        assert_eq!(g.edge_count(), 4);
    }

    #[test]
    fn parallel_pair_is_reducible() {
        let g = PlabicGraph::lollipops(2, &BTreeSet::from([1]));
        assert!(g.with_parallel_pair(g.boundary_dart(1)).is_err());
        let g = parallel_pair_gadget().apply_move(&parallel_pair_gadget().find_move_sites(MoveKind::R1)[0]).unwrap();
        let h = g.with_parallel_pair(g.boundary_dart(1)).unwrap();
        assert_eq!(h.edge_count(), g.edge_count() + 3);
        assert!(!h.is_reduced().unwrap());
        assert!(!h.find_move_sites(MoveKind::R1).is_empty());
    }

    #[test]
    fn bad_sites_are_rejected() {
        let g = parallel_pair_gadget();
        assert!(g.apply_move(&MoveSite::m3_remove(2)).is_err());
        assert!(g.apply_move(&MoveSite::m2_uncontract(2, 0, 2)).is_err());
        assert!(g.apply_move(&MoveSite { kind: MoveKind::M1, vertices: vec![], darts: vec![0], color: None, arc: None }).is_err());
    }

    #[test]
    fn contract_and_uncontract_are_inverse() {
        // two white vertices in a row between boundary 1,2 and 3,4
        let mut b = MapBuilder::new(4);
        let w1 = b.add_vertex(VertexColor::White);
        let w2 = b.add_vertex(VertexColor::White);
        let a: Vec<usize> = (0..3).map(|_| b.add_dart(w1)).collect();
        let c: Vec<usize> = (0..3).map(|_| b.add_dart(w2)).collect();
        // w1 clockwise: to 1, to 2, to w2 ; w2 clockwise: to w1, to 3, to 4
        b.link(b.boundary_dart(1), a[0]);
        b.link(b.boundary_dart(2), a[1]);
        b.link(a[2], c[0]);
        b.link(b.boundary_dart(3), c[1]);
        b.link(b.boundary_dart(4), c[2]);
        let g = b.finish().unwrap();
        let sites = g.find_move_sites(MoveKind::M2Contract);
        assert_eq!(sites.len(), 1);
        let star = g.apply_move(&sites[0]).unwrap();
        assert_eq!(star.internal_vertices().count(), 1);
        assert_eq!(star.trip_permutation().unwrap(), g.trip_permutation().unwrap());
        let splits = star.find_move_sites(MoveKind::M2Uncontract);
        assert_eq!(splits.len(), 2);
        assert!(splits.iter().any(|s| star.apply_move(s).unwrap().canonical_form() == g.canonical_form()));
        for s in &splits {
            assert_eq!(star.apply_move(s).unwrap().trip_permutation().unwrap(), g.trip_permutation().unwrap());
        }
    }
}

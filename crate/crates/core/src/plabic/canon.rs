use std::collections::{HashMap, VecDeque};

use rayon::prelude::*;

use super::{MoveKind, PlabicError, PlabicGraph, VertexColor};

/// Relabeling-invariant description of a graph. Boundary vertices keep ids
/// `0..n`; internal vertices and all darts are renumbered in the order a
/// breadth-first sweep from boundary dart 1 reaches them, listing the darts
/// of each newly reached vertex clockwise from the dart it was entered by.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    pub n: usize,
    pub colors: Vec<VertexColor>,
    pub rotation: Vec<Vec<usize>>,
    pub involution: Vec<usize>,
}

impl CanonicalForm {
    pub fn to_graph(&self) -> Result<PlabicGraph, PlabicError> {
        PlabicGraph::new(self.n, self.colors.clone(), self.rotation.clone(), self.involution.clone())
    }
}

impl PlabicGraph {
    pub fn canonical_form(&self) -> CanonicalForm {
        let n = self.n();
        let mut vmap = vec![usize::MAX; self.vertex_count()];
        let mut dmap = vec![usize::MAX; self.dart_count()];
        let mut order: Vec<usize> = Vec::with_capacity(self.vertex_count());
        let mut rotation: Vec<Vec<usize>> = Vec::with_capacity(self.vertex_count());
        let mut next_dart = 0;
        let mut queue = VecDeque::new();
        for v in 0..n {
            vmap[v] = v;
            order.push(v);
            let d = self.boundary_dart(v + 1);
            dmap[d] = next_dart;
            rotation.push(vec![next_dart]);
            next_dart += 1;
            queue.push_back(d);
        }
        while let Some(d) = queue.pop_front() {
            let e = self.partner(d);
            let v = self.dart_vertex(e);
            if vmap[v] != usize::MAX {
                continue;
            }
            vmap[v] = order.len();
            order.push(v);
            let rot = self.rotation(v);
            let start = rot.iter().position(|&x| x == e).unwrap();
            let mut ids = Vec::with_capacity(rot.len());
            for t in 0..rot.len() {
                let x = rot[(start + t) % rot.len()];
                dmap[x] = next_dart;
                ids.push(next_dart);
                next_dart += 1;
                queue.push_back(x);
            }
            rotation.push(ids);
        }
        debug_assert_eq!(order.len(), self.vertex_count(), "every component touches the boundary");
        let colors = order.iter().map(|&v| self.color(v)).collect();
        let mut involution = vec![0; self.dart_count()];
        for d in 0..self.dart_count() {
            involution[dmap[d]] = dmap[self.partner(d)];
        }
        CanonicalForm { n, colors, rotation, involution }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoveSearch {
    /// Maximum number of distinct graphs explored across both directions.
    pub budget: usize,
    pub kinds: Vec<MoveKind>,
    /// Graphs may grow at most this many vertices beyond the larger input.
    pub max_extra_vertices: usize,
}

impl Default for MoveSearch {
    fn default() -> Self {
        Self { budget: 10_000, kinds: MoveKind::EQUIVALENCE.to_vec(), max_extra_vertices: 2 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Equivalence {
    /// Connected by this many moves.
    Equivalent { moves: usize },
    /// Trip permutations differ.
    NotEquivalent,
    /// Budget exhausted without meeting.
    Inconclusive { explored: usize },
}

impl Equivalence {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, Self::Equivalent { .. })
    }
}

fn neighbors(g: &PlabicGraph, search: &MoveSearch, max_vertices: usize) -> Vec<(CanonicalForm, PlabicGraph)> {
    let mut out = Vec::new();
    for &kind in &search.kinds {
        for site in g.find_move_sites(kind) {
            if let Ok(h) = g.apply_move(&site) {
                if h.vertex_count() <= max_vertices {
                    out.push((h.canonical_form(), h));
                }
            }
        }
    }
    out
}

struct Side {
    depth: HashMap<CanonicalForm, usize>,
    frontier: Vec<PlabicGraph>,
    level: usize,
}

impl Side {
    fn new(g: &PlabicGraph) -> Self {
        Self { depth: HashMap::from([(g.canonical_form(), 0)]), frontier: vec![g.clone()], level: 0 }
    }

    /// Expands one BFS level; returns the total move count if it meets `other`.
    fn expand(&mut self, other: &Side, search: &MoveSearch, max_vertices: usize, explored: &mut usize) -> Option<usize> {
        let batches: Vec<Vec<(CanonicalForm, PlabicGraph)>> =
            self.frontier.par_iter().map(|g| neighbors(g, search, max_vertices)).collect();
        self.level += 1;
        let mut next = Vec::new();
        // sequential merge keeps the result independent of scheduling
        for (form, h) in batches.into_iter().flatten() {
            if self.depth.contains_key(&form) {
                continue;
            }
            if let Some(&d) = other.depth.get(&form) {
                return Some(self.level + d);
            }
            if *explored >= search.budget {
                return None;
            }
            *explored += 1;
            self.depth.insert(form, self.level);
            next.push(h);
        }
        self.frontier = next;
        None
    }
}

/// Decides whether `g` and `h` are connected by moves, within `search` limits.
pub fn move_equivalent(g: &PlabicGraph, h: &PlabicGraph, search: &MoveSearch) -> Equivalence {
    if g.n() != h.n() {
        return Equivalence::NotEquivalent;
    }
    match (g.trip_permutation(), h.trip_permutation()) {
        (Ok(a), Ok(b)) if a != b => return Equivalence::NotEquivalent,
        _ => {}
    }
    if g.canonical_form() == h.canonical_form() {
        return Equivalence::Equivalent { moves: 0 };
    }
    let max_vertices = g.vertex_count().max(h.vertex_count()) + search.max_extra_vertices;
    let (mut a, mut b) = (Side::new(g), Side::new(h));
    let mut explored = 2;
    loop {
        if explored >= search.budget || (a.frontier.is_empty() && b.frontier.is_empty()) {
            return Equivalence::Inconclusive { explored };
        }
        let grow_a = !a.frontier.is_empty() && (b.frontier.is_empty() || a.frontier.len() <= b.frontier.len());
        let met = if grow_a {
            a.expand(&b, search, max_vertices, &mut explored)
        } else {
            b.expand(&a, search, max_vertices, &mut explored)
        };
        if let Some(moves) = met {
            return Equivalence::Equivalent { moves };
        }
    }
}

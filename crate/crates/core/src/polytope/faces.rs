use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use super::{BridgePolytope, Geodesic, PolytopeError, SkeletonGraph};
use crate::bridges::{assemble_plabic, BridgeDecomposition};
use crate::hull_oracle::{supporting_functional, FaceLattice};
use crate::permcore::Permutation;
use crate::plabic::{move_equivalent, Equivalence, MoveKind, MoveSearch};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TwoFaceKind {
    Square,
    Trapezoid,
    Hexagon,
    Triangle,
    Parallelogram,
    Other,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TwoFace {
    pub kind: TwoFaceKind,
    /// Vertices in cyclic order.
    pub cycle: Vec<Permutation>,
    /// `labels[t]` is the label of the side from `cycle[t]` to `cycle[t+1]`.
    pub labels: Vec<(usize, usize)>,
    /// Whether the labels follow the pattern expected for `kind`.
    pub pattern_ok: bool,
}

fn coords(p: &Permutation) -> Vec<i64> {
    p.one_line().iter().map(|&v| v as i64).collect()
}

fn diff(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn parallel(a: &[i64], b: &[i64]) -> bool {
    (0..a.len()).all(|i| (i + 1..a.len()).all(|j| a[i] * b[j] == a[j] * b[i]))
}

fn det3(m: [[i64; 3]; 3]) -> i64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Whether `x - u` lies in the span of `a - u` and `b - u`.
fn coplanar(u: &[i64], a: &[i64], b: &[i64], x: &[i64]) -> bool {
    let (da, db, dx) = (diff(a, u), diff(b, u), diff(x, u));
    let n = u.len();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let m = [[da[i], da[j], da[k]], [db[i], db[j], db[k]], [dx[i], dx[j], dx[k]]];
                if det3(m) != 0 {
                    return false;
                }
            }
        }
    }
    // three coordinates can miss a dependency only when n < 3
    n >= 3 || {
        let m2 = |v: &[i64], w: &[i64]| if n == 2 { v[0] * w[1] - v[1] * w[0] } else { 0 };
        m2(&da, &db) != 0 || parallel(&da, &dx)
    }
}

fn sorted_pair(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

fn label_pattern(kind: TwoFaceKind, labels: &[(usize, usize)]) -> bool {
    let m = labels.len();
    match kind {
        TwoFaceKind::Square => {
            let (x, y) = (labels[0], labels[1]);
            labels[2] == x && labels[3] == y && (x.1 < y.0 || y.1 < x.0)
        }
        TwoFaceKind::Trapezoid => (0..2).any(|s| {
            // (ij) on opposite sides, (jk) and (ik) on the others, j the middle value
            let (x, y, z) = (labels[s], labels[s + 1], labels[(s + 3) % m]);
            if labels[s + 2] != x || y == z {
                return false;
            }
            let (p, q) = x;
            let others: BTreeSet<(usize, usize)> = [y, z].into();
            (1..p).chain(q + 1..=q.max(y.1).max(z.1)).any(|r| others == [sorted_pair(p, r), sorted_pair(q, r)].into())
        }),
        TwoFaceKind::Hexagon => {
            let (x, y) = (labels[0], labels[1]);
            (0..m).all(|t| labels[t] == if t % 2 == 0 { x } else { y }) && (x.1 == y.0 || y.1 == x.0)
        }
        _ => false,
    }
}

/// Orders a face's vertex set into a polygon using skeleton edges, and
/// classifies it by side directions.
fn build_face(graph: &SkeletonGraph, members: &[usize]) -> TwoFace {
    let in_face = |v: usize| members.binary_search(&v).is_ok();
    let nbrs = |v: usize| -> Vec<usize> {
        let mut l: Vec<usize> = graph.neighbors(v).iter().map(|&(y, _)| y).filter(|&y| in_face(y)).collect();
        l.sort_unstable();
        l
    };
    let polygon = members.len() >= 3 && members.iter().all(|&v| nbrs(v).len() == 2);
    let mut cycle = vec![members[0]];
    if polygon {
        let mut prev = members[0];
        let mut cur = nbrs(members[0])[0];
        while cur != members[0] && cycle.len() <= members.len() {
            cycle.push(cur);
            let next = nbrs(cur).into_iter().find(|&y| y != prev).unwrap();
            prev = cur;
            cur = next;
        }
    }
    let closed = polygon && cycle.len() == members.len();
    if !closed {
        return TwoFace {
            kind: TwoFaceKind::Other,
            cycle: members.iter().map(|&v| graph.vertices()[v].clone()).collect(),
            labels: Vec::new(),
            pattern_ok: false,
        };
    }
    let m = cycle.len();
    let labels: Vec<(usize, usize)> = (0..m).map(|t| graph.label(cycle[t], cycle[(t + 1) % m]).unwrap()).collect();
    let pts: Vec<Vec<i64>> = cycle.iter().map(|&v| coords(&graph.vertices()[v])).collect();
    let sides: Vec<Vec<i64>> = (0..m).map(|t| diff(&pts[(t + 1) % m], &pts[t])).collect();
    let par = |a: usize, b: usize| parallel(&sides[a], &sides[b]);
    let kind = match m {
        3 => TwoFaceKind::Triangle,
        4 => match (par(0, 2), par(1, 3)) {
            (true, true) => {
                let dotp: i64 = sides[0].iter().zip(&sides[1]).map(|(a, b)| a * b).sum();
                if dotp == 0 {
                    TwoFaceKind::Square
                } else {
                    TwoFaceKind::Parallelogram
                }
            }
            (true, false) | (false, true) => TwoFaceKind::Trapezoid,
            _ => TwoFaceKind::Other,
        },
        6 if par(0, 3) && par(1, 4) && par(2, 5) => TwoFaceKind::Hexagon,
        _ => TwoFaceKind::Other,
    };
    let pattern_ok = label_pattern(kind, &labels);
    TwoFace { kind, cycle: cycle.iter().map(|&v| graph.vertices()[v].clone()).collect(), labels, pattern_ok }
}

/// 2-faces found from the skeleton: every pair of edges at a vertex spans
/// a plane, the vertices in that plane form a candidate, and the LP oracle
/// decides whether the candidate is a face.
pub fn classify_two_faces(graph: &SkeletonGraph) -> Vec<TwoFace> {
    let pts: Vec<Vec<i64>> = graph.vertices().iter().map(coords).collect();
    let candidates: BTreeSet<Vec<usize>> = (0..pts.len())
        .into_par_iter()
        .flat_map_iter(|u| {
            let nb: Vec<usize> = graph.neighbors(u).iter().map(|&(y, _)| y).collect();
            let pts = &pts;
            let mut local = Vec::new();
            for (s, &a) in nb.iter().enumerate() {
                for &b in &nb[s + 1..] {
                    let members: Vec<usize> = (0..pts.len()).filter(|&x| coplanar(&pts[u], &pts[a], &pts[b], &pts[x])).collect();
                    local.push(members);
                }
            }
            local
        })
        .collect();
    let set = graph.point_set();
    let candidates: Vec<Vec<usize>> = candidates.into_iter().collect();
    let faces: Vec<Option<TwoFace>> = candidates
        .par_iter()
        .map(|members| supporting_functional(&set, members).map(|_| build_face(graph, members)))
        .collect();
    faces.into_iter().flatten().collect()
}

/// 2-faces read off a face lattice computed on `graph.point_set()`.
pub fn two_faces_from_lattice(graph: &SkeletonGraph, lattice: &FaceLattice) -> Vec<TwoFace> {
    lattice.faces_of_dim(2).iter().map(|members| build_face(graph, members)).collect()
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct FaceCensus {
    pub square: usize,
    pub trapezoid: usize,
    pub hexagon: usize,
    #[serde(skip_serializing_if = "is_zero")]
    pub triangle: usize,
    #[serde(skip_serializing_if = "is_zero")]
    pub parallelogram: usize,
    #[serde(skip_serializing_if = "is_zero")]
    pub other: usize,
}

fn is_zero(x: &usize) -> bool {
    *x == 0
}

impl FaceCensus {
    /// No triangles, parallelograms or unrecognized polygons.
    pub fn only_expected_kinds(&self) -> bool {
        self.triangle == 0 && self.parallelogram == 0 && self.other == 0
    }
}

pub fn face_census(faces: &[TwoFace]) -> FaceCensus {
    let mut c = FaceCensus::default();
    for f in faces {
        match f.kind {
            TwoFaceKind::Square => c.square += 1,
            TwoFaceKind::Trapezoid => c.trapezoid += 1,
            TwoFaceKind::Hexagon => c.hexagon += 1,
            TwoFaceKind::Triangle => c.triangle += 1,
            TwoFaceKind::Parallelogram => c.parallelogram += 1,
            TwoFaceKind::Other => c.other += 1,
        }
    }
    c
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceMoveCertificate {
    pub kind: TwoFaceKind,
    pub flipped: Geodesic,
    pub relation: Equivalence,
    pub both_reduced: bool,
    pub same_trip_permutation: bool,
}

impl FaceMoveCertificate {
    pub fn holds(&self) -> bool {
        self.relation.is_equivalent() && self.both_reduced && self.same_trip_permutation
    }
}

/// Reroutes `p` around the other half of `face` and relates the plabic
/// graphs of the two bridge decompositions: squares give isomorphic graphs,
/// trapezoids are searched with middle-vertex moves only, hexagons with
/// square moves and middle-vertex moves.
pub fn face_move_correspondence(
    bp: &BridgePolytope,
    p: &Geodesic,
    face: &TwoFace,
    budget: usize,
) -> Result<FaceMoveCertificate, PolytopeError> {
    let m = face.cycle.len();
    if m < 4 || m % 2 == 1 {
        return Err(PolytopeError::NotHalfFace);
    }
    let half = m / 2;
    let pos_in_face = |v: &Permutation| face.cycle.iter().position(|c| c == v);
    let mut reroute = None;
    'search: for s in 0..p.vertices.len().saturating_sub(half) {
        let Some(c0) = pos_in_face(&p.vertices[s]) else { continue };
        for dir in [1, m - 1] {
            if (1..=half).all(|t| pos_in_face(&p.vertices[s + t]) == Some((c0 + dir * t) % m)) {
                reroute = Some((s, c0, dir));
                break 'search;
            }
        }
    }
    let (s, c0, dir) = reroute.ok_or(PolytopeError::NotHalfFace)?;
    let other = m - dir;
    let mut vertices = p.vertices[..=s].to_vec();
    for t in 1..=half {
        vertices.push(face.cycle[(c0 + other * t) % m].clone());
    }
    vertices.extend_from_slice(&p.vertices[s + half + 1..]);
    let labels: Vec<(usize, usize)> = vertices
        .windows(2)
        .map(|w| {
            let a = w[0].one_line();
            let diff: Vec<usize> = (0..a.len()).filter(|&i| a[i] != w[1].one_line()[i]).collect();
            sorted_pair(a[diff[0]], a[diff[1]])
        })
        .collect();
    let flipped = Geodesic { vertices, labels };

    let source = bp.apex_inverse_decorated();
    let graph_of = |g: &Geodesic| -> Result<_, PolytopeError> {
        let dec = BridgeDecomposition::replay(&source, &g.labels).map_err(|e| PolytopeError::Other(e.to_string()))?;
        assemble_plabic(&dec).map_err(|e| PolytopeError::Other(e.to_string()))
    };
    let (g1, g2) = (graph_of(p)?, graph_of(&flipped)?);
    let both_reduced = g1.is_reduced().unwrap_or(false) && g2.is_reduced().unwrap_or(false);
    let same_trip_permutation = matches!((g1.trip_permutation(), g2.trip_permutation()), (Ok(a), Ok(b)) if a == b);
    let kinds = match face.kind {
        TwoFaceKind::Square => Vec::new(),
        TwoFaceKind::Trapezoid => vec![MoveKind::M3Insert, MoveKind::M3Remove],
        _ => vec![MoveKind::M1, MoveKind::M3Insert, MoveKind::M3Remove],
    };
    let relation = if g1.canonical_form() == g2.canonical_form() {
        Equivalence::Equivalent { moves: 0 }
    } else if kinds.is_empty() {
        Equivalence::Inconclusive { explored: 1 }
    } else {
        move_equivalent(&g1, &g2, &MoveSearch { budget, kinds, ..MoveSearch::default() })
    };
    Ok(FaceMoveCertificate { kind: face.kind, flipped, relation, both_reduced, same_trip_permutation })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hull_oracle::{face_lattice, HullLimits};
    use crate::permcore::SubsetJ;
    use crate::polytope::{permutohedron_skeleton, s_j_vertices};

    #[test]
    fn patterns() {
        assert!(label_pattern(TwoFaceKind::Square, &[(1, 2), (3, 4), (1, 2), (3, 4)]));
        assert!(!label_pattern(TwoFaceKind::Square, &[(1, 4), (2, 3), (1, 4), (2, 3)]));
        assert!(label_pattern(TwoFaceKind::Hexagon, &[(1, 2), (2, 3), (1, 2), (2, 3), (1, 2), (2, 3)]));
        assert!(label_pattern(TwoFaceKind::Trapezoid, &[(1, 2), (2, 3), (1, 2), (1, 3)]));
        assert!(label_pattern(TwoFaceKind::Trapezoid, &[(1, 3), (2, 3), (1, 2), (2, 3)]));
        assert!(!label_pattern(TwoFaceKind::Trapezoid, &[(1, 2), (1, 3), (2, 3), (1, 3)]));
        assert!(!label_pattern(TwoFaceKind::Trapezoid, &[(1, 2), (1, 3), (1, 2), (1, 3)]));
    }

    #[test]
    fn permutohedron_faces() {
        let g = permutohedron_skeleton(4);
        let faces = classify_two_faces(&g);
        let census = face_census(&faces);
        assert_eq!((census.square, census.hexagon, census.trapezoid), (6, 8, 0));
        assert!(census.only_expected_kinds());
        assert!(faces.iter().all(|f| f.pattern_ok));
        let lattice = face_lattice(&g.point_set(), &HullLimits::default()).unwrap();
        let from_lattice = face_census(&two_faces_from_lattice(&g, &lattice));
        assert_eq!(from_lattice, census);
    }

    #[test]
    fn two_dimensional_bridge_polytope_is_its_own_face() {
        let b = s_j_vertices(&SubsetJ::new([1], 3).unwrap());
        let g = b.skeleton();
        assert_eq!(b.point_set().affine_dimension(), 2);
        let faces = classify_two_faces(&g);
        assert_eq!(faces.len(), 1);
        assert_eq!(faces[0].cycle.len(), b.vertices.len());
    }
}

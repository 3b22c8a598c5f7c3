//! Bridge polytopes `Br_J` and Bruhat interval polytopes `Q_{u,v}` on the
//! vertex coordinates `(π(1), …, π(n))`: combinatorial one-skeleta, geodesics,
//! edge certificates, the coordinate permutation `ψ` between them, and 2-faces.

mod faces;

pub use faces::{
    classify_two_faces, face_census, face_move_correspondence, two_faces_from_lattice, FaceCensus, FaceMoveCertificate,
    TwoFace, TwoFaceKind,
};

use std::collections::{BTreeSet, HashMap, VecDeque};

use thiserror::Error;

use crate::exact::{q, Q};
use crate::hull_oracle::{HullError, RationalPointSet};
use crate::permcore::{bruhat_leq, DecoratedPermutation, PermError, Permutation, SubsetJ};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolytopeError {
    #[error("{0} is not a vertex of the polytope")]
    NotAVertex(String),
    #[error("{0} and {1} are not joined by an edge")]
    NotAnEdge(String, String),
    #[error("{0} is not below {1} in Bruhat order")]
    NotBruhatLeq(String, String),
    #[error("{0} has more than one descent")]
    NotGrassmannian(String),
    #[error("path does not traverse half of the face")]
    NotHalfFace,
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Hull(#[from] HullError),
    #[error("{0}")]
    Other(String),
}

/// A labelled edge; `label = (i, l)` with `i < l` are the swapped values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SkeletonEdge {
    pub u: usize,
    pub v: usize,
    pub label: (usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkeletonGraph {
    vertices: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
    edges: Vec<SkeletonEdge>,
    /// Neighbors sorted by edge label.
    adj: Vec<Vec<(usize, (usize, usize))>>,
}

impl SkeletonGraph {
    /// Builds the graph on `vertices` joining `u` and `(i l)u` whenever
    /// `rule(u, (i l)u, i, l)` holds.
    pub fn by_value_swaps(vertices: Vec<Permutation>, rule: impl Fn(&Permutation, &Permutation, usize, usize) -> bool) -> Self {
        let index: HashMap<Permutation, usize> = vertices.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let n = vertices.first().map_or(0, Permutation::n);
        let mut edges = Vec::new();
        for (a, u) in vertices.iter().enumerate() {
            for i in 1..=n {
                for l in i + 1..=n {
                    let v = u.swap_values(i, l);
                    if let Some(&b) = index.get(&v) {
                        if a < b && rule(u, &v, i, l) {
                            edges.push(SkeletonEdge { u: a, v: b, label: (i, l) });
                        }
                    }
                }
            }
        }
        Self::from_edges(vertices, edges)
    }

    pub fn from_edges(vertices: Vec<Permutation>, mut edges: Vec<SkeletonEdge>) -> Self {
        let index: HashMap<Permutation, usize> = vertices.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        edges.sort();
        let mut adj = vec![Vec::new(); vertices.len()];
        for e in &edges {
            adj[e.u].push((e.v, e.label));
            adj[e.v].push((e.u, e.label));
        }
        for list in &mut adj {
            list.sort_by_key(|&(v, label)| (label, v));
        }
        Self { vertices, index, edges, adj }
    }

    pub fn vertices(&self) -> &[Permutation] {
        &self.vertices
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn edges(&self) -> &[SkeletonEdge] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[(usize, (usize, usize))] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a].iter().any(|&(x, _)| x == b)
    }

    pub fn label(&self, a: usize, b: usize) -> Option<(usize, usize)> {
        self.adj[a].iter().find(|&&(x, _)| x == b).map(|&(_, l)| l)
    }

    /// Edges as sorted index pairs.
    pub fn edge_set(&self) -> BTreeSet<(usize, usize)> {
        self.edges.iter().map(|e| (e.u, e.v)).collect()
    }

    /// Breadth-first distances from `from`.
    pub fn distances_from(&self, from: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.vertices.len()];
        dist[from] = Some(0);
        let mut queue = VecDeque::from([from]);
        while let Some(x) = queue.pop_front() {
            let d = dist[x].unwrap();
            for &(y, _) in &self.adj[x] {
                if dist[y].is_none() {
                    dist[y] = Some(d + 1);
                    queue.push_back(y);
                }
            }
        }
        dist
    }

    pub fn point_set(&self) -> RationalPointSet {
        RationalPointSet::from_permutations(&self.vertices).expect("distinct permutations")
    }

    /// One line per edge, `perm_u;perm_v;i,l`, sorted.
    pub fn to_csv(&self) -> String {
        let fmt = |p: &Permutation| p.one_line().iter().map(usize::to_string).collect::<Vec<_>>().join(",");
        let mut lines: Vec<String> = self
            .edges
            .iter()
            .map(|e| format!("{};{};{},{}", fmt(&self.vertices[e.u]), fmt(&self.vertices[e.v]), e.label.0, e.label.1))
            .collect();
        lines.sort();
        lines.iter().map(|l| format!("{l}\n")).collect()
    }

    fn require(&self, p: &Permutation) -> Result<usize, PolytopeError> {
        self.index_of(p).ok_or_else(|| PolytopeError::NotAVertex(p.to_string()))
    }
}

/// The vertex set `S_J`: permutations with `π(j) >= j` for `j ∈ J` and
/// `π(j) <= j` otherwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BridgePolytope {
    pub j: SubsetJ,
    pub vertices: Vec<Permutation>,
}

pub fn s_j_vertices(j: &SubsetJ) -> BridgePolytope {
    let vertices = Permutation::all(j.n())
        .into_iter()
        .filter(|p| (1..=j.n()).all(|x| if j.contains(x) { p.at(x) >= x } else { p.at(x) <= x }))
        .collect();
    BridgePolytope { j: j.clone(), vertices }
}

impl BridgePolytope {
    /// `π(J)` as a plain permutation.
    pub fn apex(&self) -> Permutation {
        self.j.pi().perm().clone()
    }

    /// `π(J)⁻¹` with the fixed-point colors of `π(J)`.
    pub fn apex_inverse_decorated(&self) -> DecoratedPermutation {
        let pi = self.j.pi();
        DecoratedPermutation::new(pi.perm().inverse(), pi.ccw_fixed().iter().copied()).expect("same fixed points")
    }

    pub fn skeleton(&self) -> SkeletonGraph {
        skeleton_edges(self)
    }

    pub fn point_set(&self) -> RationalPointSet {
        RationalPointSet::from_permutations(&self.vertices).expect("distinct permutations")
    }
}

/// The edge condition for bridge polytopes: `v = (i l)u` with every value
/// strictly between `i` and `l` fixed by both.
pub fn is_bridge_edge(u: &Permutation, v: &Permutation) -> Option<(usize, usize)> {
    let diff: Vec<usize> = (1..=u.n()).filter(|&p| u.at(p) != v.at(p)).collect();
    let &[p, r] = diff.as_slice() else { return None };
    if u.at(p) != v.at(r) || u.at(r) != v.at(p) {
        return None;
    }
    let (i, l) = (u.at(p).min(u.at(r)), u.at(p).max(u.at(r)));
    (i + 1..l).all(|m| u.at(m) == m && v.at(m) == m).then_some((i, l))
}

pub fn skeleton_edges(bp: &BridgePolytope) -> SkeletonGraph {
    SkeletonGraph::by_value_swaps(bp.vertices.clone(), |u, v, _, _| is_bridge_edge(u, v).is_some())
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Geodesic {
    pub vertices: Vec<Permutation>,
    pub labels: Vec<(usize, usize)>,
}

/// All shortest paths `from → to`, in lexicographic order of label
/// sequences, stopping after `cap` paths if given.
pub fn geodesics(
    graph: &SkeletonGraph,
    from: &Permutation,
    to: &Permutation,
    cap: Option<usize>,
) -> Result<Vec<Geodesic>, PolytopeError> {
    let (s, t) = (graph.require(from)?, graph.require(to)?);
    let dist = graph.distances_from(t);
    let mut out = Vec::new();
    if dist[s].is_none() {
        return Ok(out);
    }
    let mut path = vec![s];
    let mut labels = Vec::new();
    fn go(
        g: &SkeletonGraph,
        dist: &[Option<usize>],
        path: &mut Vec<usize>,
        labels: &mut Vec<(usize, usize)>,
        out: &mut Vec<Geodesic>,
        cap: Option<usize>,
    ) {
        if cap.is_some_and(|c| out.len() >= c) {
            return;
        }
        let x = *path.last().unwrap();
        let dx = dist[x].unwrap();
        if dx == 0 {
            out.push(Geodesic { vertices: path.iter().map(|&v| g.vertices[v].clone()).collect(), labels: labels.clone() });
            return;
        }
        for &(y, label) in &g.adj[x] {
            if dist[y] == Some(dx - 1) {
                path.push(y);
                labels.push(label);
                go(g, dist, path, labels, out, cap);
                path.pop();
                labels.pop();
            }
        }
    }
    go(graph, &dist, &mut path, &mut labels, &mut out, cap);
    Ok(out)
}

/// Number of shortest paths `from → to`.
pub fn count_geodesics(graph: &SkeletonGraph, from: &Permutation, to: &Permutation) -> Result<u128, PolytopeError> {
    let (s, t) = (graph.require(from)?, graph.require(to)?);
    let dist = graph.distances_from(t);
    let Some(ds) = dist[s] else { return Ok(0) };
    let mut ways = vec![0u128; graph.vertices.len()];
    ways[t] = 1;
    let mut layers: Vec<Vec<usize>> = vec![Vec::new(); ds + 1];
    for (v, d) in dist.iter().enumerate() {
        if let Some(d) = *d {
            if d <= ds {
                layers[d].push(v);
            }
        }
    }
    for d in 1..=ds {
        for &v in &layers[d] {
            ways[v] = graph.adj[v].iter().filter(|&&(y, _)| dist[y] == Some(d - 1)).map(|&(y, _)| ways[y]).sum();
        }
    }
    Ok(ways[s])
}

/// A functional maximized over `S_J` exactly on the edge `{π, π̂}`.
///
/// Positions are ordered in a chain `π⁻¹(1), …, π⁻¹(i-1)`, then the
/// positions of the values `i < j < l` with `j ∈ J`, then the tied pair
/// `π⁻¹(i), π⁻¹(l)`, then the values `i < j < l` outside `J`, then
/// `π⁻¹(l+1), …, π⁻¹(n)`. Successive links get the values `1, n², n⁴, …`.
pub fn edge_certificate_lambda(bp: &BridgePolytope, pi: &Permutation, pi_hat: &Permutation) -> Result<Vec<Q>, PolytopeError> {
    for p in [pi, pi_hat] {
        if !bp.vertices.contains(p) {
            return Err(PolytopeError::NotAVertex(p.to_string()));
        }
    }
    let (i, l) = is_bridge_edge(pi, pi_hat).ok_or_else(|| PolytopeError::NotAnEdge(pi.to_string(), pi_hat.to_string()))?;
    let n = pi.n();
    let inv = pi.inverse();
    let mut chain: Vec<Vec<usize>> = Vec::with_capacity(n - 1);
    chain.extend((1..i).map(|v| vec![inv.at(v)]));
    chain.extend((i + 1..l).filter(|&j| bp.j.contains(j)).map(|j| vec![inv.at(j)]));
    chain.push(vec![inv.at(i), inv.at(l)]);
    chain.extend((i + 1..l).filter(|&j| !bp.j.contains(j)).map(|j| vec![inv.at(j)]));
    chain.extend((l + 1..=n).map(|v| vec![inv.at(v)]));
    let step = q((n * n) as i64);
    let mut lambda = vec![Q::from_integer(0.into()); n];
    let mut level = q(1);
    for link in chain {
        for p in link {
            lambda[p - 1] = level.clone();
        }
        level *= &step;
    }
    Ok(lambda)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BruhatInterval {
    pub u: Permutation,
    pub v: Permutation,
    pub vertices: Vec<Permutation>,
}

pub fn bruhat_interval_vertices(u: &Permutation, v: &Permutation) -> Result<BruhatInterval, PolytopeError> {
    if !bruhat_leq(u, v)? {
        return Err(PolytopeError::NotBruhatLeq(u.to_string(), v.to_string()));
    }
    let vertices = Permutation::all(u.n())
        .into_iter()
        .filter(|z| bruhat_leq(u, z).unwrap() && bruhat_leq(z, v).unwrap())
        .collect();
    Ok(BruhatInterval { u: u.clone(), v: v.clone(), vertices })
}

/// Edges of `Q_{e,w}` by the position rule: `u ~ (i l)u` when each value
/// strictly between `i` and `l` sits in the same position in `u`, `(i l)u`
/// and `w`. No Grassmannian check.
pub fn interval_edges_position_rule(w: &Permutation) -> Result<SkeletonGraph, PolytopeError> {
    let interval = bruhat_interval_vertices(&Permutation::identity(w.n()), w)?;
    Ok(SkeletonGraph::by_value_swaps(interval.vertices, |u, v, i, l| {
        (i + 1..l).all(|m| {
            let p = u.position_of(m);
            v.position_of(m) == p && w.position_of(m) == p
        })
    }))
}

pub fn grassmannian_interval_edges(w: &Permutation) -> Result<SkeletonGraph, PolytopeError> {
    if !w.is_grassmannian() {
        return Err(PolytopeError::NotGrassmannian(w.to_string()));
    }
    interval_edges_position_rule(w)
}

/// One-skeleton of the permutohedron: `u ~ s_i u`.
pub fn permutohedron_skeleton(n: usize) -> SkeletonGraph {
    SkeletonGraph::by_value_swaps(Permutation::all(n), |_, _, i, l| l == i + 1)
}

/// `ψ(x) = (x_{h₁}, …, x_{h_{n-k}}, x_{j₁}, …, x_{j_k})` for `J = {j₁ < … < j_k}`
/// and complement `h₁ < … < h_{n-k}`.
pub fn psi(j: &SubsetJ, x: &Permutation) -> Permutation {
    let one_line = j.complement().iter().chain(j.members()).map(|&p| x.at(p)).collect();
    Permutation::new(one_line).expect("coordinate permutation of a permutation")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct PsiReport {
    pub bijective: bool,
    pub edges_preserved: bool,
    pub endpoints: bool,
}

impl PsiReport {
    pub fn ok(&self) -> bool {
        self.bijective && self.edges_preserved && self.endpoints
    }
}

/// Checks that `ψ` carries `Br_J` onto `Q_{e, π(J)⁻¹}` as labelled graphs.
pub fn psi_check(j: &SubsetJ) -> Result<PsiReport, PolytopeError> {
    let br = s_j_vertices(j);
    let w = br.apex().inverse();
    let image: Vec<Permutation> = br.vertices.iter().map(|x| psi(j, x)).collect();
    let image_set: BTreeSet<&Permutation> = image.iter().collect();
    let interval = bruhat_interval_vertices(&Permutation::identity(j.n()), &w)?;
    let bijective = image_set.len() == image.len() && image_set == interval.vertices.iter().collect::<BTreeSet<_>>();

    let skel = br.skeleton();
    let pushed: BTreeSet<(Permutation, Permutation, (usize, usize))> = skel
        .edges()
        .iter()
        .map(|e| {
            let (a, b) = (image[e.u].clone(), image[e.v].clone());
            if a < b {
                (a, b, e.label)
            } else {
                (b, a, e.label)
            }
        })
        .collect();
    let target = grassmannian_interval_edges(&w)?;
    let expected: BTreeSet<(Permutation, Permutation, (usize, usize))> = target
        .edges()
        .iter()
        .map(|e| {
            let (a, b) = (target.vertices[e.u].clone(), target.vertices[e.v].clone());
            if a < b {
                (a, b, e.label)
            } else {
                (b, a, e.label)
            }
        })
        .collect();
    let edges_preserved = pushed == expected;
    let endpoints = psi(j, &br.apex()).is_identity() && psi(j, &Permutation::identity(j.n())) == w;
    Ok(PsiReport { bijective, edges_preserved, endpoints })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hull_oracle::verify_argmax_certificate;

    fn perm(v: &[usize]) -> Permutation {
        Permutation::new(v.to_vec()).unwrap()
    }

    fn br(j: &[usize], n: usize) -> BridgePolytope {
        s_j_vertices(&SubsetJ::new(j.iter().copied(), n).unwrap())
    }

    #[test]
    fn vertex_sets() {
        let b = br(&[1, 2], 4);
        assert_eq!(b.vertices.len(), 14);
        assert!(b.vertices.contains(&perm(&[3, 4, 1, 2])));
        assert!(b.vertices.contains(&Permutation::identity(4)));
        assert_eq!(br(&[1, 2, 3], 3).vertices, vec![Permutation::identity(3)]);
        let b = br(&[1, 2, 3], 5);
        assert!(b.vertices.contains(&b.apex()));
    }

    #[test]
    fn edges_of_br24() {
        let b = br(&[1, 2], 4);
        let g = b.skeleton();
        let idx = |v: &[usize]| g.index_of(&perm(v)).unwrap();
        assert_eq!(g.label(idx(&[3, 4, 1, 2]), idx(&[4, 3, 1, 2])), Some((3, 4)));
        assert!(!g.has_edge(idx(&[2, 4, 1, 3]), idx(&[4, 2, 1, 3])));
        let apex = idx(&[3, 4, 1, 2]);
        let labels: Vec<(usize, usize)> = g.neighbors(apex).iter().map(|&(_, l)| l).collect();
        assert_eq!(labels, vec![(1, 2), (2, 3), (3, 4)]);
        assert!(g.to_csv().contains("3,4,1,2;4,3,1,2;3,4\n"));
    }

    #[test]
    fn leftmost_chain_geodesic() {
        let b = br(&[1, 2], 4);
        let g = b.skeleton();
        let all = geodesics(&g, &b.apex(), &Permutation::identity(4), None).unwrap();
        assert!(all.iter().all(|p| p.labels.len() == 4));
        let chain = all.iter().find(|p| p.labels == vec![(1, 2), (2, 3), (1, 2), (2, 4)]).unwrap();
        let expected: Vec<Permutation> =
            [[3, 4, 1, 2], [3, 4, 2, 1], [2, 4, 3, 1], [1, 4, 3, 2], [1, 2, 3, 4]].iter().map(|v| perm(v)).collect();
        assert_eq!(chain.vertices, expected);
        assert_eq!(count_geodesics(&g, &b.apex(), &Permutation::identity(4)).unwrap(), all.len() as u128);
        let mut sorted = all.clone();
        sorted.sort_by(|a, b| a.labels.cmp(&b.labels));
        assert_eq!(sorted, all);
        let trivial = geodesics(&g, &b.apex(), &b.apex(), None).unwrap();
        assert_eq!(trivial.len(), 1);
        assert!(trivial[0].labels.is_empty());
        assert_eq!(geodesics(&g, &b.apex(), &Permutation::identity(4), Some(2)).unwrap().len(), 2);
    }

    #[test]
    fn lambda_examples() {
        let b = br(&[1, 2], 4);
        let set = b.point_set();
        let idx = |v: &[usize]| b.vertices.iter().position(|p| p.one_line() == v).unwrap();
        let lam = edge_certificate_lambda(&b, &perm(&[3, 4, 1, 2]), &perm(&[4, 3, 1, 2])).unwrap();
        assert_eq!(lam, vec![q(256), q(256), q(1), q(16)]);
        assert!(verify_argmax_certificate(&set, &lam, &[idx(&[3, 4, 1, 2]), idx(&[4, 3, 1, 2])]));
        let lam = edge_certificate_lambda(&b, &perm(&[3, 4, 1, 2]), &perm(&[3, 4, 2, 1])).unwrap();
        assert_eq!(lam, vec![q(16), q(256), q(1), q(1)]);
        assert!(matches!(
            edge_certificate_lambda(&b, &perm(&[2, 4, 1, 3]), &perm(&[4, 2, 1, 3])),
            Err(PolytopeError::NotAnEdge(..))
        ));
    }

    #[test]
    fn intervals_and_psi() {
        let w0 = Permutation::longest(4);
        assert_eq!(bruhat_interval_vertices(&Permutation::identity(4), &w0).unwrap().vertices.len(), 24);
        assert_eq!(bruhat_interval_vertices(&Permutation::identity(4), &perm(&[3, 4, 1, 2])).unwrap().vertices.len(), 14);
        assert!(bruhat_interval_vertices(&w0, &Permutation::identity(4)).is_err());
        let j = SubsetJ::new([1, 2], 4).unwrap();
        assert!(psi_check(&j).unwrap().ok());
        assert_eq!(psi(&j, &perm(&[3, 4, 1, 2])), Permutation::identity(4));
    }

    #[test]
    fn interval_edge_rules() {
        assert_eq!(permutohedron_skeleton(4).edges().len(), 36);
        // the position rule needs a Grassmannian w; for w0 the hull decides
        let w0 = Permutation::longest(4);
        let g = interval_edges_position_rule(&w0).unwrap();
        assert!(g.edge_set().is_superset(&permutohedron_skeleton(4).edge_set()));
        assert_ne!(g.edge_set(), permutohedron_skeleton(4).edge_set());
        let set = g.point_set();
        let hull: BTreeSet<(usize, usize)> = (0..24)
            .flat_map(|a| (a + 1..24).map(move |b| (a, b)))
            .filter(|&(a, b)| crate::hull_oracle::is_edge_lp(&set, a, b).0)
            .collect();
        assert_eq!(hull, permutohedron_skeleton(4).edge_set());

        let w = perm(&[3, 4, 1, 2]);
        let q = grassmannian_interval_edges(&w).unwrap();
        let j = SubsetJ::new([1, 2], 4).unwrap();
        let br = s_j_vertices(&j).skeleton();
        let pushed: BTreeSet<(usize, usize)> = br
            .edges()
            .iter()
            .map(|e| {
                let a = q.index_of(&psi(&j, &br.vertices()[e.u])).unwrap();
                let b = q.index_of(&psi(&j, &br.vertices()[e.v])).unwrap();
                (a.min(b), a.max(b))
            })
            .collect();
        assert_eq!(q.edge_set(), pushed);
        assert!(matches!(grassmannian_interval_edges(&Permutation::longest(4)), Err(PolytopeError::NotGrassmannian(_))));
        let g = grassmannian_interval_edges(&Permutation::identity(3)).unwrap();
        assert_eq!((g.vertices().len(), g.edges().len()), (1, 0));
    }
}

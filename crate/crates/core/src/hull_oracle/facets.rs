use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_traits::{Signed, Zero};

use super::{HullError, HullLimits, RationalPointSet};
use crate::exact::{affine_dimension, dot, nullspace, primitive, sub, Q};

/// `normal · x <= offset` on every point, with equality exactly on `points`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Facet {
    pub normal: Vec<Q>,
    pub offset: Q,
    pub points: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FaceLattice {
    pub dim: isize,
    pub facets: Vec<Facet>,
    /// `faces[d]` lists the faces of dimension `d` as sorted point-index sets.
    pub faces: Vec<Vec<Vec<usize>>>,
}

impl FaceLattice {
    pub fn faces_of_dim(&self, d: usize) -> &[Vec<usize>] {
        self.faces.get(d).map_or(&[], Vec::as_slice)
    }

    /// Face counts by dimension.
    pub fn f_vector(&self) -> Vec<usize> {
        self.faces.iter().map(Vec::len).collect()
    }
}

fn check_limits(v: &RationalPointSet, limits: &HullLimits) -> Result<(), HullError> {
    if v.len() > limits.max_points {
        return Err(HullError::Guardrail { what: "point count", value: v.len(), limit: limits.max_points });
    }
    let d = v.affine_dimension().max(0) as usize;
    if d > limits.max_dim {
        return Err(HullError::Guardrail { what: "affine dimension", value: d, limit: limits.max_dim });
    }
    Ok(())
}

/// Advances `idx` to the next `k`-combination of `0..m`; false when exhausted.
fn next_combination(idx: &mut [usize], m: usize) -> bool {
    let k = idx.len();
    let Some(p) = (0..k).rev().find(|&p| idx[p] < m - k + p) else { return false };
    idx[p] += 1;
    for t in p + 1..k {
        idx[t] = idx[t - 1] + 1;
    }
    true
}

/// Facets by brute force over affinely independent `d`-subsets, where `d` is
/// the affine dimension. Only `facets` is filled in.
pub fn facet_enumeration_small(v: &RationalPointSet, limits: &HullLimits) -> Result<FaceLattice, HullError> {
    check_limits(v, limits)?;
    let chart = v.chart();
    let d = chart.len();
    let dim = v.affine_dimension();
    if v.is_empty() || d == 0 {
        return Ok(FaceLattice { dim, ..Default::default() });
    }
    let pts = v.charted(&chart);
    let m = pts.len();
    let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut facets = Vec::new();
    let mut idx: Vec<usize> = (0..d).collect();
    loop {
        let inside_known = facets.iter().any(|f: &Facet| idx.iter().all(|i| f.points.binary_search(i).is_ok()));
        if !inside_known {
            let rows: Vec<Vec<Q>> = idx[1..].iter().map(|&i| sub(&pts[i], &pts[idx[0]])).collect();
            let ns = if rows.is_empty() { vec![vec![Q::from_integer(1.into())]] } else { nullspace(&rows, d) };
            if let [h] = ns.as_slice() {
                let mut h = primitive(h);
                let c = dot(&h, &pts[idx[0]]);
                let side: Vec<Q> = pts.iter().map(|p| dot(&h, p) - &c).collect();
                let above = side.iter().any(Q::is_positive);
                let below = side.iter().any(Q::is_negative);
                if !(above && below) {
                    if above {
                        h = h.iter().map(|x| -x).collect();
                    }
                    let points: Vec<usize> = (0..m).filter(|&i| side[i].is_zero()).collect();
                    if found.insert(points.clone()) {
                        let mut normal = vec![Q::zero(); v.dim()];
                        for (r, &col) in chart.iter().enumerate() {
                            normal[col] = h[r].clone();
                        }
                        let offset = dot(&normal, v.point(points[0]));
                        facets.push(Facet { normal, offset, points });
                    }
                }
            }
        }
        if !next_combination(&mut idx, m) {
            break;
        }
    }
    facets.sort_by(|a, b| a.points.cmp(&b.points));
    Ok(FaceLattice { dim, facets, faces: Vec::new() })
}

/// All nonempty faces: the whole set plus every intersection of facets,
/// graded by affine dimension.
pub fn face_lattice(v: &RationalPointSet, limits: &HullLimits) -> Result<FaceLattice, HullError> {
    let mut lattice = facet_enumeration_small(v, limits)?;
    if v.is_empty() {
        return Ok(lattice);
    }
    let whole: Vec<usize> = (0..v.len()).collect();
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::from([whole.clone()]);
    let mut queue: VecDeque<Vec<usize>> = VecDeque::from([whole]);
    while let Some(face) = queue.pop_front() {
        for f in &lattice.facets {
            let meet: Vec<usize> = face.iter().copied().filter(|i| f.points.binary_search(i).is_ok()).collect();
            if !meet.is_empty() && seen.insert(meet.clone()) {
                queue.push_back(meet);
            }
        }
    }
    let mut graded: BTreeMap<usize, Vec<Vec<usize>>> = BTreeMap::new();
    for face in seen {
        let refs: Vec<&[Q]> = face.iter().map(|&i| v.point(i)).collect();
        graded.entry(affine_dimension(&refs) as usize).or_default().push(face);
    }
    let top = lattice.dim.max(0) as usize;
    lattice.faces = (0..=top).map(|d| graded.remove(&d).unwrap_or_default()).collect();
    Ok(lattice)
}

//! Exact geometric oracle for small point sets: supporting functionals by
//! rational linear programming, brute-force facets and face lattices.
//!
//! Nothing here uses floating point. Point sets are first charted onto a set
//! of coordinates that is injective on their affine hull, so every LP and
//! every facet computation runs in the hull's own dimension.

mod facets;
mod lp;

pub use facets::{face_lattice, facet_enumeration_small, Facet, FaceLattice};

use std::collections::BTreeSet;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::{dot, format_q, parse_q, q, rref, sub, Q};
use crate::permcore::Permutation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HullError {
    #[error("{what} = {value} exceeds the limit {limit}")]
    Guardrail { what: &'static str, value: usize, limit: usize },
    #[error("point {index} has dimension {got}, expected {expected}")]
    Dimension { index: usize, got: usize, expected: usize },
    #[error("points {0} and {1} coincide")]
    Duplicate(usize, usize),
    #[error("cannot parse rational {0:?}")]
    Parse(String),
    #[error("json: {0}")]
    Json(String),
}

/// Scale limits for brute-force facet enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HullLimits {
    pub max_points: usize,
    pub max_dim: usize,
}

impl Default for HullLimits {
    fn default() -> Self {
        Self { max_points: 80, max_dim: 4 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalPointSet {
    points: Vec<Vec<Q>>,
    labels: Vec<String>,
}

impl RationalPointSet {
    pub fn new(points: Vec<Vec<Q>>, labels: Vec<String>) -> Result<Self, HullError> {
        let dim = points.first().map_or(0, Vec::len);
        for (index, p) in points.iter().enumerate() {
            if p.len() != dim {
                return Err(HullError::Dimension { index, got: p.len(), expected: dim });
            }
        }
        let mut seen = std::collections::HashMap::new();
        for (i, p) in points.iter().enumerate() {
            if let Some(j) = seen.insert(p.clone(), i) {
                return Err(HullError::Duplicate(j, i));
            }
        }
        let labels = if labels.len() == points.len() { labels } else { (0..points.len()).map(|i| i.to_string()).collect() };
        Ok(Self { points, labels })
    }

    /// Vertex coordinates `(π(1), …, π(n))`, labelled by one-line notation.
    pub fn from_permutations(perms: &[Permutation]) -> Result<Self, HullError> {
        let points = perms.iter().map(|p| p.one_line().iter().map(|&v| q(v as i64)).collect()).collect();
        Self::new(points, perms.iter().map(|p| p.to_string()).collect())
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.points.first().map_or(0, Vec::len)
    }

    pub fn point(&self, i: usize) -> &[Q] {
        &self.points[i]
    }

    pub fn points(&self) -> &[Vec<Q>] {
        &self.points
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Coordinates that chart the affine hull injectively.
    pub(crate) fn chart(&self) -> Vec<usize> {
        let Some(first) = self.points.first() else { return Vec::new() };
        let mut diffs: Vec<Vec<Q>> = self.points[1..].iter().map(|p| sub(p, first)).collect();
        rref(&mut diffs)
    }

    /// Points restricted to the chart coordinates.
    pub(crate) fn charted(&self, chart: &[usize]) -> Vec<Vec<Q>> {
        self.points.iter().map(|p| chart.iter().map(|&c| p[c].clone()).collect()).collect()
    }

    pub fn affine_dimension(&self) -> isize {
        if self.points.is_empty() {
            -1
        } else {
            self.chart().len() as isize
        }
    }

    pub fn to_json(&self) -> String {
        let j = PointSetJson {
            points: self.points.iter().map(|p| p.iter().map(format_q).collect()).collect(),
            labels: Some(self.labels.clone()),
        };
        serde_json::to_string_pretty(&j).expect("point set serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, HullError> {
        let j: PointSetJson = serde_json::from_str(s).map_err(|e| HullError::Json(e.to_string()))?;
        let points = j
            .points
            .iter()
            .map(|p| p.iter().map(|x| parse_q(x).ok_or_else(|| HullError::Parse(x.clone()))).collect())
            .collect::<Result<Vec<Vec<Q>>, _>>()?;
        Self::new(points, j.labels.unwrap_or_default())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct PointSetJson {
    points: Vec<Vec<String>>,
    #[serde(default)]
    labels: Option<Vec<String>>,
}

/// A functional `λ` together with its maximum over a point set and the
/// indices attaining it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearFunctionalCertificate {
    pub lambda: Vec<Q>,
    pub achieved_max: Q,
    pub tight_set: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub lambda: Vec<String>,
    pub achieved_max: String,
    pub tight_set: Vec<usize>,
}

impl LinearFunctionalCertificate {
    /// Evaluates `λ` on every point.
    pub fn from_lambda(v: &RationalPointSet, lambda: Vec<Q>) -> Self {
        let values: Vec<Q> = v.points.iter().map(|p| dot(&lambda, p)).collect();
        let achieved_max = values.iter().max().cloned().unwrap_or_else(Q::zero);
        let tight_set = (0..values.len()).filter(|&i| values[i] == achieved_max).collect();
        Self { lambda, achieved_max, tight_set }
    }

    pub fn to_json(&self) -> CertificateJson {
        CertificateJson {
            lambda: self.lambda.iter().map(format_q).collect(),
            achieved_max: format_q(&self.achieved_max),
            tight_set: self.tight_set.clone(),
        }
    }
}

/// True iff the maximizers of `λ·x` over `v` are exactly `claimed_tight`.
pub fn verify_argmax_certificate(v: &RationalPointSet, lambda: &[Q], claimed_tight: &[usize]) -> bool {
    if lambda.len() != v.dim() {
        return false;
    }
    let cert = LinearFunctionalCertificate::from_lambda(v, lambda.to_vec());
    let claimed: BTreeSet<usize> = claimed_tight.iter().copied().collect();
    cert.tight_set.iter().copied().collect::<BTreeSet<_>>() == claimed
}

/// A functional maximized exactly on the points `tight` (with margin 1 to
/// every other point), or `None` when no face of the hull has precisely
/// these points.
///
/// Feasibility is decided through the alternative system: `tight` spans a
/// face iff no convex combination of the other points, shifted by a
/// direction inside `tight`, returns to the base point. When that system is
/// infeasible its phase-one multipliers are the functional.
pub fn supporting_functional(v: &RationalPointSet, tight: &[usize]) -> Option<LinearFunctionalCertificate> {
    if tight.iter().any(|&i| i >= v.len()) {
        return None;
    }
    let tight_set: BTreeSet<usize> = tight.iter().copied().collect();
    let &base = tight_set.iter().next()?;
    let chart = v.chart();
    let pts = v.charted(&chart);
    let d = chart.len();
    let others: Vec<usize> = (0..v.len()).filter(|i| !tight_set.contains(i)).collect();
    let inside: Vec<usize> = tight_set.iter().copied().filter(|&i| i != base).collect();

    // columns: y_x for other points, then z⁺ and z⁻ for directions inside the tight set
    let ncols = others.len() + 2 * inside.len();
    let mut a = vec![vec![Q::zero(); ncols]; d + 1];
    for (c, &x) in others.iter().enumerate() {
        let diff = sub(&pts[base], &pts[x]);
        for r in 0..d {
            a[r][c] = diff[r].clone();
        }
        a[d][c] = Q::one();
    }
    for (t, &p) in inside.iter().enumerate() {
        let diff = sub(&pts[base], &pts[p]);
        let c = others.len() + 2 * t;
        for r in 0..d {
            a[r][c] = diff[r].clone();
            a[r][c + 1] = -diff[r].clone();
        }
    }
    let mut b = vec![Q::zero(); d + 1];
    b[d] = Q::one();
    let res = lp::phase_one(&a, &b);
    if res.feasible {
        return None;
    }
    let t = res.multipliers[d].clone();
    let mut lambda = vec![Q::zero(); v.dim()];
    for (r, &c) in chart.iter().enumerate() {
        lambda[c] = -&res.multipliers[r] / &t;
    }
    let cert = LinearFunctionalCertificate::from_lambda(v, lambda);
    debug_assert_eq!(cert.tight_set, tight_set.iter().copied().collect::<Vec<_>>());
    debug_assert!(others.iter().all(|&x| &cert.achieved_max - dot(&cert.lambda, v.point(x)) >= Q::one()));
    Some(cert)
}

/// Whether the segment `[a, b]` is an edge of the hull, with a certificate
/// `λ·a = λ·b >= λ·x + 1` for every other point `x`.
pub fn is_edge_lp(v: &RationalPointSet, a: usize, b: usize) -> (bool, Option<LinearFunctionalCertificate>) {
    if a == b {
        return (false, None);
    }
    let cert = supporting_functional(v, &[a, b]);
    (cert.is_some(), cert)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(rows: &[&[i64]]) -> RationalPointSet {
        RationalPointSet::new(rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect(), vec![]).unwrap()
    }

    /// Permutations of 4 with weak excedances forced at positions 1, 2.
    fn br24() -> (Vec<Permutation>, RationalPointSet) {
        let perms: Vec<Permutation> = Permutation::all(4)
            .into_iter()
            .filter(|p| p.at(1) >= 1 && p.at(2) >= 2 && p.at(3) <= 3 && p.at(4) <= 4)
            .collect();
        let set = RationalPointSet::from_permutations(&perms).unwrap();
        (perms, set)
    }

    #[test]
    fn unit_square_edges() {
        let s = pts(&[&[0, 0], &[0, 1], &[1, 0], &[1, 1]]);
        let (edge, cert) = is_edge_lp(&s, 0, 1);
        assert!(edge);
        let cert = cert.unwrap();
        assert!(verify_argmax_certificate(&s, &cert.lambda, &[0, 1]));
        assert!(!is_edge_lp(&s, 0, 3).0);
    }

    #[test]
    fn bridge_polytope_edges() {
        let (perms, set) = br24();
        assert_eq!(perms.len(), 14);
        let idx = |v: &[usize]| perms.iter().position(|p| p.one_line() == v).unwrap();
        let (edge, cert) = is_edge_lp(&set, idx(&[3, 4, 1, 2]), idx(&[4, 3, 1, 2]));
        assert!(edge);
        let cert = cert.unwrap();
        assert_eq!(cert.tight_set.len(), 2);
        assert!(!is_edge_lp(&set, idx(&[2, 4, 1, 3]), idx(&[4, 2, 1, 3])).0);
    }

    #[test]
    fn argmax_certificates() {
        let (perms, set) = br24();
        let idx = |v: &[usize]| perms.iter().position(|p| p.one_line() == v).unwrap();
        let lambda: Vec<Q> = [256, 256, 1, 16].iter().map(|&x| q(x)).collect();
        let pair = [idx(&[3, 4, 1, 2]), idx(&[4, 3, 1, 2])];
        assert!(verify_argmax_certificate(&set, &lambda, &pair));
        assert!(!verify_argmax_certificate(&set, &lambda, &pair[..1]));
        assert_eq!(LinearFunctionalCertificate::from_lambda(&set, lambda).achieved_max, q(1825));
        let all: Vec<usize> = (0..set.len()).collect();
        assert!(verify_argmax_certificate(&set, &vec![q(0); 4], &all));
    }

    #[test]
    fn chart_reduces_dimension() {
        let perms = Permutation::all(3);
        let set = RationalPointSet::from_permutations(&perms).unwrap();
        assert_eq!(set.affine_dimension(), 2);
        assert_eq!(set.chart().len(), 2);
    }

    #[test]
    fn json_round_trip_and_errors() {
        let s = pts(&[&[0, 1], &[2, 3]]);
        let back = RationalPointSet::from_json(&s.to_json()).unwrap();
        assert_eq!(back, s);
        assert!(s.to_json().contains("\"3/1\""));
        assert!(matches!(RationalPointSet::from_json(r#"{"points":[["x"]]}"#), Err(HullError::Parse(_))));
        assert!(matches!(
            RationalPointSet::new(vec![vec![q(1)], vec![q(1)]], vec![]),
            Err(HullError::Duplicate(0, 1))
        ));
    }
}

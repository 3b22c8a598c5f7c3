use std::collections::BTreeMap;

use super::{PlabicError, PlabicGraph, VertexColor};
use crate::permcore::{DecoratedPermutation, Permutation};

/// The directed path `T_i` from boundary vertex `start` to boundary vertex `end`.
/// `darts` lists the dart left by every step, so each step walks `d → α(d)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trip {
    pub start: usize,
    pub end: usize,
    pub darts: Vec<usize>,
}

/// Per edge (keyed by its smaller dart) the trip labels crossing it, in both directions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeTripLabels {
    labels: BTreeMap<usize, Vec<usize>>,
}

impl EdgeTripLabels {
    /// Sorted labels on the edge containing dart `d`.
    pub fn on_dart(&self, g: &PlabicGraph, d: usize) -> &[usize] {
        let key = d.min(g.partner(d));
        self.labels.get(&key).map_or(&[], Vec::as_slice)
    }

    /// `[i, j]` for an edge crossed by two distinct trips.
    pub fn pair(&self, g: &PlabicGraph, d: usize) -> Option<(usize, usize)> {
        match self.on_dart(g, d) {
            &[i, j] if i != j => Some((i, j)),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, serde::Serialize)]
pub struct ResonanceReport {
    pub reduced: bool,
    /// Internal non-leaf vertices whose labels fail the clockwise chain test.
    pub failing_vertices: Vec<usize>,
    /// Edges (smaller dart) away from lollipops without two distinct labels.
    pub failing_edges: Vec<usize>,
}

impl PlabicGraph {
    /// Dart taken when leaving a vertex after arriving along `arrived`.
    pub(crate) fn turn(&self, arrived: usize) -> usize {
        match self.color(self.dart_vertex(arrived)) {
            VertexColor::Black => self.rotate_ccw(arrived),
            VertexColor::White => self.rotate_cw(arrived),
            VertexColor::Boundary => arrived,
        }
    }

    /// Follows the rules of the road from boundary vertex `label`.
    pub fn trip(&self, label: usize) -> Result<Trip, PlabicError> {
        let limit = 2 * self.dart_count() + 2;
        let mut d = self.boundary_dart(label);
        let mut darts = vec![d];
        loop {
            let arrived = self.partner(d);
            let v = self.dart_vertex(arrived);
            if self.is_boundary(v) {
                return Ok(Trip { start: label, end: v + 1, darts });
            }
            d = self.turn(arrived);
            darts.push(d);
            if darts.len() > limit {
                return Err(PlabicError::TripDoesNotTerminate(label));
            }
        }
    }

    pub fn trips(&self) -> Result<Vec<Trip>, PlabicError> {
        (1..=self.n()).map(|i| self.trip(i)).collect()
    }

    /// Decorated trip permutation: `π(i) = j` when `T_i` ends at `j`; a white
    /// lollipop at `i` is a counterclockwise fixed point, a black one clockwise.
    pub fn trip_permutation(&self) -> Result<DecoratedPermutation, PlabicError> {
        let trips = self.trips()?;
        let one_line: Vec<usize> = trips.iter().map(|t| t.end).collect();
        let perm = Permutation::new(one_line).map_err(|e| PlabicError::Malformed(e.to_string()))?;
        let mut ccw = Vec::new();
        for t in &trips {
            if t.end == t.start {
                let v = self.neighbor(self.boundary_dart(t.start));
                match (self.is_lollipop(v), self.color(v)) {
                    (true, VertexColor::White) => ccw.push(t.start),
                    (true, _) => {}
                    (false, _) => return Err(PlabicError::AmbiguousFixedPoint(t.start)),
                }
            }
        }
        DecoratedPermutation::new(perm, ccw).map_err(|e| PlabicError::Malformed(e.to_string()))
    }

    pub fn edge_trip_labels(&self) -> Result<EdgeTripLabels, PlabicError> {
        let mut labels: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for t in self.trips()? {
            for &d in &t.darts {
                labels.entry(d.min(self.partner(d))).or_default().push(t.start);
            }
        }
        for l in labels.values_mut() {
            l.sort_unstable();
        }
        Ok(EdgeTripLabels { labels })
    }

    /// Reducedness through the resonance property. Lollipops and their edges
    /// are exempt; every other edge must carry two distinct trip labels, and
    /// around every internal non-leaf vertex the labels read clockwise must be
    /// `[i₁,i₂], [i₂,i₃], …, [i_{m-1},i_m], [i₁,i_m]` for some `i₁ < … < i_m`,
    /// up to rotation.
    pub fn resonance(&self) -> Result<ResonanceReport, PlabicError> {
        let labels = self.edge_trip_labels()?;
        let mut report = ResonanceReport::default();
        for (d, _) in self.edges() {
            let (u, v) = (self.dart_vertex(d), self.neighbor(d));
            if self.is_lollipop(u) || self.is_lollipop(v) {
                continue;
            }
            if labels.pair(self, d).is_none() {
                report.failing_edges.push(d);
            }
        }
        for v in self.internal_vertices() {
            if self.degree(v) < 2 {
                continue;
            }
            let read: Option<Vec<(usize, usize)>> = self.rotation(v).iter().map(|&d| labels.pair(self, d)).collect();
            let ok = read.is_some_and(|read| resonates(&read));
            if !ok {
                report.failing_vertices.push(v);
            }
        }
        report.reduced = report.failing_edges.is_empty() && report.failing_vertices.is_empty();
        Ok(report)
    }

    pub fn is_reduced(&self) -> Result<bool, PlabicError> {
        Ok(self.resonance()?.reduced)
    }
}

fn resonates(read: &[(usize, usize)]) -> bool {
    let m = read.len();
    let mut values: Vec<usize> = read.iter().flat_map(|&(a, b)| [a, b]).collect();
    values.sort_unstable();
    values.dedup();
    if values.len() != m {
        return false;
    }
    let expected: Vec<(usize, usize)> = values
        .windows(2)
        .map(|w| (w[0], w[1]))
        .chain(std::iter::once((values[0], values[m - 1])))
        .collect();
    (0..m).any(|s| (0..m).all(|t| read[(s + t) % m] == expected[t]))
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;

    use super::*;
    use crate::plabic::test_graphs::parallel_pair_gadget;

    #[test]
    fn resonance_pattern() {
        assert!(resonates(&[(1, 2), (2, 3), (1, 3)]));
        assert!(resonates(&[(2, 3), (1, 3), (1, 2)]));
        assert!(!resonates(&[(1, 3), (2, 3), (1, 2)]));
        assert!(resonates(&[(1, 4), (1, 2), (2, 4)]));
        assert!(!resonates(&[(1, 2), (1, 2), (1, 2)]));
    }

    #[test]
    fn single_white_lollipop() {
        let g = PlabicGraph::lollipops(1, &BTreeSet::from([1]));
        let d = g.trip_permutation().unwrap();
        assert!(d.perm().is_identity());
        assert!(d.ccw_fixed().contains(&1));
        assert!(g.is_reduced().unwrap());
    }

    #[test]
    fn lollipops_only_are_reduced() {
        let g = PlabicGraph::lollipops(4, &BTreeSet::from([1, 3]));
        assert!(g.is_reduced().unwrap());
        assert_eq!(g.trip_permutation().unwrap().k(), 2);
    }

    #[test]
    fn parallel_pair_is_not_reduced() {
        let g = parallel_pair_gadget();
        // both trips bounce back through the digon
        let ends: Vec<usize> = g.trips().unwrap().iter().map(|t| t.end).collect();
        assert_eq!(ends, vec![1, 2]);
        assert!(matches!(g.trip_permutation(), Err(PlabicError::AmbiguousFixedPoint(1))));
        assert!(!g.is_reduced().unwrap());
    }
}

//! Bridge decompositions of decorated permutations and the plabic graphs
//! they assemble into.
//!
//! A state is a bounded affine window together with its frozen positions. A
//! bridge `(i, j)` swaps positions `i < j` when both are unfrozen, everything
//! strictly between is frozen and `window[i] < window[j]`. Positions that end
//! up holding `p` or `p + n` freeze. Decomposition stops at a decoration of
//! the identity.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::permcore::{compose_seq, BoundedAffinePermutation, DecoratedPermutation, PermError, Permutation};
use crate::plabic::{MapBuilder, PlabicError, PlabicGraph, VertexColor};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BridgeError {
    #[error("invalid step {step} ({i},{j}): {reason}")]
    InvalidStep { step: usize, i: usize, j: usize, reason: String },
    #[error("steps end at {0}, which is not a decoration of the identity")]
    Incomplete(String),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Plabic(#[from] PlabicError),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BridgeState {
    affine: BoundedAffinePermutation,
    frozen: BTreeSet<usize>,
}

impl BridgeState {
    /// Initial state: positions already fixed start frozen.
    pub fn start(d: &DecoratedPermutation) -> Self {
        let affine = BoundedAffinePermutation::affinize(d);
        let frozen = (1..=affine.n()).filter(|&p| affine.is_fixed(p)).collect();
        Self { affine, frozen }
    }

    pub fn from_parts(affine: BoundedAffinePermutation, frozen: BTreeSet<usize>) -> Result<Self, PermError> {
        if let Some(&p) = frozen.iter().find(|&&p| p == 0 || p > affine.n() || !affine.is_fixed(p)) {
            return Err(PermError::ColorOnNonFixedPoint(p));
        }
        Ok(Self { affine, frozen })
    }

    pub fn affine(&self) -> &BoundedAffinePermutation {
        &self.affine
    }

    pub fn frozen(&self) -> &BTreeSet<usize> {
        &self.frozen
    }

    pub fn n(&self) -> usize {
        self.affine.n()
    }

    pub fn is_done(&self) -> bool {
        self.affine.is_decoration_of_identity()
    }

    /// Reason `(i, j)` is not a legal bridge, ignoring the window bounds.
    fn structural_violation(&self, i: usize, j: usize) -> Option<String> {
        let n = self.n();
        if i == 0 || i >= j || j > n {
            return Some(format!("positions must satisfy 1 <= i < j <= {n}"));
        }
        if self.frozen.contains(&i) || self.frozen.contains(&j) {
            return Some("endpoint is frozen".into());
        }
        if let Some(h) = (i + 1..j).find(|h| !self.frozen.contains(h)) {
            return Some(format!("position {h} between them is not frozen"));
        }
        if self.affine.at(i) > self.affine.at(j) {
            return Some(format!("{} > {} is not an ascent", self.affine.at(i), self.affine.at(j)));
        }
        None
    }

    /// Pairs meeting the bridge conditions whose swap would still leave the
    /// bounded window. Always empty in practice; kept observable for tests.
    pub fn excluded_by_bounds(&self) -> Vec<(usize, usize)> {
        self.candidate_pairs().filter(|&(i, j)| self.affine.swap_positions(i, j).is_err()).collect()
    }

    fn candidate_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.n();
        (1..=n).flat_map(move |i| (i + 1..=n).map(move |j| (i, j))).filter(|&(i, j)| self.structural_violation(i, j).is_none())
    }

    /// Legal bridges in lexicographic order.
    pub fn legal_bridge_pairs(&self) -> Vec<(usize, usize)> {
        self.candidate_pairs().filter(|&(i, j)| self.affine.swap_positions(i, j).is_ok()).collect()
    }

    pub fn apply_bridge(&self, i: usize, j: usize) -> Result<Self, BridgeError> {
        let invalid = |reason: String| BridgeError::InvalidStep { step: 1, i, j, reason };
        if let Some(reason) = self.structural_violation(i, j) {
            return Err(invalid(reason));
        }
        let affine = self.affine.swap_positions(i, j).map_err(|e| invalid(e.to_string()))?;
        let mut frozen = self.frozen.clone();
        for p in [i, j] {
            if affine.is_fixed(p) {
                frozen.insert(p);
            }
        }
        Ok(Self { affine, frozen })
    }

    /// The window as one table row, frozen entries bracketed.
    pub fn render_row(&self) -> String {
        (1..=self.n())
            .map(|p| {
                let v = self.affine.at(p);
                if self.frozen.contains(&p) {
                    format!("[{v}]")
                } else {
                    v.to_string()
                }
            })
            .map(|s| format!("{s:>4}"))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BridgeDecomposition {
    pub source: DecoratedPermutation,
    pub steps: Vec<(usize, usize)>,
    /// `steps.len() + 1` states, starting with the initial one.
    pub trace: Vec<BridgeState>,
}

impl BridgeDecomposition {
    /// Replays `steps`, requiring every step to be legal and the end to be a
    /// decoration of the identity.
    pub fn replay(source: &DecoratedPermutation, steps: &[(usize, usize)]) -> Result<Self, BridgeError> {
        let mut trace = vec![BridgeState::start(source)];
        for (idx, &(i, j)) in steps.iter().enumerate() {
            let next = trace.last().unwrap().apply_bridge(i, j).map_err(|e| match e {
                BridgeError::InvalidStep { i, j, reason, .. } => BridgeError::InvalidStep { step: idx + 1, i, j, reason },
                other => other,
            })?;
            trace.push(next);
        }
        let last = trace.last().unwrap();
        if !last.is_done() {
            return Err(BridgeError::Incomplete(last.affine.to_string()));
        }
        Ok(Self { source: source.clone(), steps: steps.to_vec(), trace })
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// The end state as a decorated identity.
    pub fn target(&self) -> DecoratedPermutation {
        self.trace.last().unwrap().affine.deaffinize()
    }

    /// Text table: each row shows a step and the window it acts on.
    pub fn render_trace(&self) -> String {
        let n = self.source.n();
        let mut out = String::new();
        let header: String = (1..=n).map(|p| format!("{p:>4}")).collect();
        writeln!(out, "{:<8}|{header}", "tau").unwrap();
        writeln!(out, "{}", "-".repeat(9 + 4 * n)).unwrap();
        for (state, &(i, j)) in self.trace.iter().zip(&self.steps) {
            writeln!(out, "{:<8}|{}", format!("({i}{j})"), state.render_row()).unwrap();
        }
        writeln!(out, "{:<8}|{}", "", self.trace.last().unwrap().render_row()).unwrap();
        out
    }

    pub fn to_json(&self) -> DecompositionJson {
        DecompositionJson {
            perm: self.source.perm().one_line().to_vec(),
            ccw_fixed: self.source.ccw_fixed().iter().copied().collect(),
            steps: self.steps.iter().map(|&(i, j)| [i, j]).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionJson {
    pub perm: Vec<usize>,
    pub ccw_fixed: Vec<usize>,
    pub steps: Vec<[usize; 2]>,
}

impl TryFrom<DecompositionJson> for BridgeDecomposition {
    type Error = BridgeError;

    fn try_from(j: DecompositionJson) -> Result<Self, BridgeError> {
        let source = DecoratedPermutation::new(Permutation::new(j.perm)?, j.ccw_fixed)?;
        let steps: Vec<(usize, usize)> = j.steps.iter().map(|&[a, b]| (a, b)).collect();
        Self::replay(&source, &steps)
    }
}

/// Depth-first stream of all bridge decompositions, choosing pairs in
/// lexicographic order at every branch.
pub struct Decompositions {
    source: DecoratedPermutation,
    /// Each frame: a state on the current path and the pairs still to try from it.
    stack: Vec<(BridgeState, std::vec::IntoIter<(usize, usize)>)>,
    steps: Vec<(usize, usize)>,
    remaining: Option<usize>,
    started: bool,
}

impl Iterator for Decompositions {
    type Item = BridgeDecomposition;

    fn next(&mut self) -> Option<BridgeDecomposition> {
        if self.remaining == Some(0) {
            return None;
        }
        loop {
            let top = self.stack.last_mut()?;
            if top.0.is_done() {
                if self.started {
                    // already emitted this leaf
                    self.stack.pop();
                    self.steps.pop();
                    self.started = false;
                    continue;
                }
                self.started = true;
                if let Some(r) = self.remaining.as_mut() {
                    *r -= 1;
                }
                let trace = self.stack.iter().map(|(s, _)| s.clone()).collect();
                return Some(BridgeDecomposition { source: self.source.clone(), steps: self.steps.clone(), trace });
            }
            match top.1.next() {
                Some((i, j)) => {
                    let next = top.0.apply_bridge(i, j).expect("legal pair applies");
                    let pairs = next.legal_bridge_pairs().into_iter();
                    self.stack.push((next, pairs));
                    self.steps.push((i, j));
                }
                None => {
                    self.stack.pop();
                    self.steps.pop();
                }
            }
        }
    }
}

pub fn enumerate_decompositions(d: &DecoratedPermutation, limit: Option<usize>) -> Decompositions {
    let start = BridgeState::start(d);
    let pairs = start.legal_bridge_pairs().into_iter();
    Decompositions { source: d.clone(), stack: vec![(start, pairs)], steps: Vec::new(), remaining: limit, started: false }
}

/// Number of decompositions, counted over the state graph.
pub fn count_decompositions(d: &DecoratedPermutation) -> u128 {
    fn go(s: &BridgeState, memo: &mut HashMap<BridgeState, u128>) -> u128 {
        if s.is_done() {
            return 1;
        }
        if let Some(&c) = memo.get(s) {
            return c;
        }
        let c = s.legal_bridge_pairs().into_iter().map(|(i, j)| go(&s.apply_bridge(i, j).unwrap(), memo)).sum();
        memo.insert(s.clone(), c);
        c
    }
    go(&BridgeState::start(d), &mut HashMap::new())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StepCheck {
    pub valid: bool,
    /// 1-based index of the first failing step, if a step failed.
    pub failed_step: Option<usize>,
    pub reason: Option<String>,
}

/// Replays `taus` against `d` and checks that the reversed product of the
/// transpositions equals the permutation.
pub fn verify_decomposition(d: &DecoratedPermutation, taus: &[(usize, usize)]) -> StepCheck {
    let fail = |step: Option<usize>, reason: String| StepCheck { valid: false, failed_step: step, reason: Some(reason) };
    let dec = match BridgeDecomposition::replay(d, taus) {
        Ok(dec) => dec,
        Err(BridgeError::InvalidStep { step, i, j, reason }) => return fail(Some(step), format!("({i},{j}): {reason}")),
        Err(e) => return fail(None, e.to_string()),
    };
    let reversed: Vec<(usize, usize)> = dec.steps.iter().rev().copied().collect();
    match compose_seq(&reversed, d.n()) {
        Ok(p) if &p == d.perm() => StepCheck { valid: true, failed_step: None, reason: None },
        Ok(p) => fail(None, format!("product of transpositions is {p}, expected {}", d.perm())),
        Err(e) => fail(None, e.to_string()),
    }
}

/// Builds the plabic graph of a decomposition.
///
/// Strands hang from the boundary vertices, laid out left to right. Every
/// bridge `(i, j)` adds a white trivalent vertex on strand `i` and a black one
/// on strand `j`, below all earlier bridges on those strands. A strand whose
/// position starts frozen becomes a lollipop, white for `p + n` and black for
/// `p`; a strand that freezes after carrying bridges simply ends at its last
/// bridge vertex, which is then bivalent and gets smoothed away.
pub fn assemble_plabic(dec: &BridgeDecomposition) -> Result<PlabicGraph, BridgeError> {
    let dec = BridgeDecomposition::replay(&dec.source, &dec.steps)?;
    let n = dec.source.n();
    let mut b = MapBuilder::new(n);
    let mut open: Vec<Option<usize>> = (1..=n).map(|p| Some(b.boundary_dart(p))).collect();
    let mut bridged = vec![false; n + 1];

    let start = &dec.trace[0];
    for p in 1..=n {
        if start.affine.is_fixed(p) {
            let color = if start.affine.at(p) == p + n { VertexColor::White } else { VertexColor::Black };
            let v = b.add_vertex(color);
            let d = b.add_dart(v);
            b.link(open[p - 1].take().unwrap(), d);
        }
    }
    for (state, &(i, j)) in dec.trace[1..].iter().zip(&dec.steps) {
        let wi = b.add_vertex(VertexColor::White);
        let (up_i, br_i, dn_i) = (b.add_dart(wi), b.add_dart(wi), b.add_dart(wi));
        let kj = b.add_vertex(VertexColor::Black);
        let (up_j, br_j, dn_j) = (b.add_dart(kj), b.add_dart(kj), b.add_dart(kj));
        // clockwise: i sees up, the bridge to its right, down; j sees up, down, the bridge to its left
        b.set_rotation(wi, vec![up_i, br_i, dn_i]);
        b.set_rotation(kj, vec![up_j, dn_j, br_j]);
        b.link(open[i - 1].take().expect("strand open"), up_i);
        b.link(open[j - 1].take().expect("strand open"), up_j);
        b.link(br_i, br_j);
        open[i - 1] = Some(dn_i);
        open[j - 1] = Some(dn_j);
        bridged[i] = true;
        bridged[j] = true;
        for p in [i, j] {
            if state.affine.is_fixed(p) {
                let d = open[p - 1].take().unwrap();
                let v = b.vertex_of(d);
                b.remove_dart(d);
                b.splice_out(v);
            }
        }
    }
    debug_assert!(open.iter().all(Option::is_none));
    Ok(b.finish()?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dec(v: &[usize], ccw: &[usize]) -> DecoratedPermutation {
        DecoratedPermutation::new(Permutation::new(v.to_vec()).unwrap(), ccw.iter().copied()).unwrap()
    }

    fn state(window: &[usize], frozen: &[usize]) -> BridgeState {
        BridgeState::from_parts(BoundedAffinePermutation::new(window.to_vec()).unwrap(), frozen.iter().copied().collect()).unwrap()
    }

    const TABLE: [(usize, usize); 8] = [(3, 4), (2, 3), (1, 2), (5, 6), (4, 5), (3, 4), (4, 6), (2, 4)];

    #[test]
    fn legal_pairs_examples() {
        assert_eq!(state(&[4, 6, 5, 7, 8, 9], &[]).legal_bridge_pairs(), vec![(1, 2), (3, 4), (4, 5), (5, 6)]);
        assert_eq!(state(&[7, 4, 6, 9, 5, 8], &[1, 5]).legal_bridge_pairs(), vec![(2, 3), (3, 4)]);
        assert!(state(&[1, 5, 3], &[1, 2, 3]).legal_bridge_pairs().is_empty());
    }

    #[test]
    fn apply_bridge_examples() {
        let s = state(&[4, 6, 5, 7, 8, 9], &[]).apply_bridge(3, 4).unwrap();
        assert_eq!(s, state(&[4, 6, 7, 5, 8, 9], &[]));
        let s = state(&[4, 7, 6, 5, 8, 9], &[]).apply_bridge(1, 2).unwrap();
        assert_eq!(s, state(&[7, 4, 6, 5, 8, 9], &[1]));
        assert!(matches!(state(&[4, 6, 5, 7, 8, 9], &[]).apply_bridge(2, 3), Err(BridgeError::InvalidStep { .. })));
        assert!(state(&[7, 4, 6, 9, 5, 8], &[1, 5]).apply_bridge(4, 6).is_err());
    }

    #[test]
    fn table_decomposition_replays() {
        let d = dec(&[4, 6, 5, 1, 2, 3], &[]);
        let r = BridgeDecomposition::replay(&d, &TABLE).unwrap();
        assert_eq!(r.trace.last().unwrap().affine.window(), &[7, 8, 9, 4, 5, 6]);
        assert_eq!(r.trace[4], state(&[7, 4, 6, 5, 9, 8], &[1]));
        assert!(verify_decomposition(&d, &TABLE).valid);
        let table = r.render_trace();
        assert!(table.contains("(56)    | [7]   4   6   5   8   9"), "{table}");
    }

    #[test]
    fn verify_failures() {
        let d = dec(&[3, 4, 1, 2], &[]);
        let c = verify_decomposition(&d, &[(1, 2), (1, 2)]);
        assert_eq!((c.valid, c.failed_step), (false, Some(2)));
        let c = verify_decomposition(&d, &[]);
        assert_eq!((c.valid, c.failed_step), (false, None));
        assert!(verify_decomposition(&d, &[(1, 2), (2, 3), (1, 2), (2, 4)]).valid);
    }

    #[test]
    fn enumeration_contains_table_sequence() {
        let d = dec(&[4, 6, 5, 1, 2, 3], &[]);
        let all: Vec<_> = enumerate_decompositions(&d, None).collect();
        assert!(all.iter().any(|x| x.steps == TABLE));
        assert!(all.iter().all(|x| x.len() == 8));
        assert_eq!(all.len() as u128, count_decompositions(&d));
        let mut sorted: Vec<_> = all.iter().map(|x| x.steps.clone()).collect();
        sorted.sort();
        assert_eq!(sorted, all.iter().map(|x| x.steps.clone()).collect::<Vec<_>>());
        assert_eq!(enumerate_decompositions(&d, Some(3)).count(), 3);
    }

    #[test]
    fn identity_has_one_empty_decomposition() {
        let d = dec(&[1, 2, 3], &[2]);
        let all: Vec<_> = enumerate_decompositions(&d, None).collect();
        assert_eq!(all.len(), 1);
        assert!(all[0].is_empty());
    }

    #[test]
    fn assembled_graphs_match_figures() {
        let d = dec(&[4, 6, 5, 1, 2, 3], &[]);
        let g = assemble_plabic(&BridgeDecomposition::replay(&d, &TABLE).unwrap()).unwrap();
        assert_eq!(g.trip_permutation().unwrap(), d);
        assert!(g.is_reduced().unwrap());
        let d = dec(&[3, 4, 1, 2], &[]);
        let g = assemble_plabic(&BridgeDecomposition::replay(&d, &[(1, 2), (2, 3), (1, 2), (2, 4)]).unwrap()).unwrap();
        assert_eq!(g.trip_permutation().unwrap(), d);
        assert!(g.is_reduced().unwrap());
    }

    #[test]
    fn empty_decomposition_gives_lollipops() {
        let d = dec(&[1, 2], &[1]);
        let g = assemble_plabic(&BridgeDecomposition::replay(&d, &[]).unwrap()).unwrap();
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.color(g.neighbor(g.boundary_dart(1))), VertexColor::White);
        assert_eq!(g.color(g.neighbor(g.boundary_dart(2))), VertexColor::Black);
    }

    #[test]
    fn json_round_trip() {
        let d = dec(&[3, 4, 1, 2], &[]);
        let r = BridgeDecomposition::replay(&d, &[(1, 2), (2, 3), (1, 2), (2, 4)]).unwrap();
        let s = serde_json::to_string(&r.to_json()).unwrap();
        assert_eq!(s, r#"{"perm":[3,4,1,2],"ccw_fixed":[],"steps":[[1,2],[2,3],[1,2],[2,4]]}"#);
        let back: DecompositionJson = serde_json::from_str(&s).unwrap();
        assert_eq!(BridgeDecomposition::try_from(back).unwrap(), r);
    }
}

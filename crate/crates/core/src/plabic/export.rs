use std::collections::BTreeMap;
use std::fmt::Write;

use serde::{Deserialize, Serialize};

use super::{PlabicError, PlabicGraph, VertexColor};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonVertex {
    pub id: usize,
    pub color: VertexColor,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonDart {
    pub id: usize,
    pub vertex: usize,
}

/// On-disk graph format. Vertex ids `0..n` are the boundary labels `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub vertices: Vec<JsonVertex>,
    pub darts: Vec<JsonDart>,
    pub edges: Vec<[usize; 2]>,
    /// Clockwise darts per vertex.
    pub rotation: BTreeMap<usize, Vec<usize>>,
}

impl From<&PlabicGraph> for GraphJson {
    fn from(g: &PlabicGraph) -> Self {
        Self {
            n: g.n(),
            vertices: (0..g.vertex_count()).map(|id| JsonVertex { id, color: g.color(id) }).collect(),
            darts: (0..g.dart_count()).map(|id| JsonDart { id, vertex: g.dart_vertex(id) }).collect(),
            edges: g.edges().into_iter().map(|(a, b)| [a, b]).collect(),
            rotation: (0..g.vertex_count()).map(|v| (v, g.rotation(v).to_vec())).collect(),
        }
    }
}

impl TryFrom<GraphJson> for PlabicGraph {
    type Error = PlabicError;

    fn try_from(j: GraphJson) -> Result<Self, PlabicError> {
        let malformed = |m: String| PlabicError::Malformed(m);
        let nv = j.vertices.len();
        let mut colors = vec![None; nv];
        for v in &j.vertices {
            let slot = colors.get_mut(v.id).ok_or_else(|| malformed(format!("vertex id {} out of range", v.id)))?;
            if slot.replace(v.color).is_some() {
                return Err(malformed(format!("vertex id {} repeated", v.id)));
            }
        }
        let colors: Vec<VertexColor> = colors.into_iter().map(|c| c.expect("ids are a permutation")).collect();
        let nd = j.darts.len();
        let mut involution = vec![usize::MAX; nd];
        for &[a, b] in &j.edges {
            if a >= nd || b >= nd || involution[a] != usize::MAX || involution[b] != usize::MAX {
                return Err(malformed(format!("edge [{a},{b}] is invalid")));
            }
            involution[a] = b;
            involution[b] = a;
        }
        if involution.contains(&usize::MAX) {
            return Err(malformed("a dart is not on any edge".into()));
        }
        let mut rotation = vec![Vec::new(); nv];
        for (&v, rot) in &j.rotation {
            let slot = rotation.get_mut(v).ok_or_else(|| malformed(format!("rotation for unknown vertex {v}")))?;
            *slot = rot.clone();
        }
        for d in &j.darts {
            if d.id >= nd || d.vertex >= nv || !rotation[d.vertex].contains(&d.id) {
                return Err(malformed(format!("dart {} does not match the rotation of vertex {}", d.id, d.vertex)));
            }
        }
        PlabicGraph::new(j.n, colors, rotation, involution)
    }
}

impl PlabicGraph {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&GraphJson::from(self)).expect("graph serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, PlabicError> {
        let j: GraphJson = serde_json::from_str(s).map_err(|e| PlabicError::Json(e.to_string()))?;
        PlabicGraph::try_from(j)
    }
}

/// Graphviz rendering in canonical numbering, so isomorphic graphs render identically.
pub fn to_dot(g: &PlabicGraph) -> Result<String, PlabicError> {
    let g = g.canonical_form().to_graph()?;
    let labels = g.edge_trip_labels()?;
    let mut out = String::new();
    match g.trip_permutation() {
        Ok(p) => {
            let ccw: Vec<String> = p.ccw_fixed().iter().map(usize::to_string).collect();
            writeln!(out, "// trip permutation {} ccw fixed {{{}}}", p.perm(), ccw.join(",")).unwrap();
        }
        Err(e) => writeln!(out, "// trip permutation unavailable: {e}").unwrap(),
    }
    writeln!(out, "graph plabic {{").unwrap();
    for v in 0..g.vertex_count() {
        let attrs = match g.color(v) {
            VertexColor::Boundary => format!("shape=square, label=\"{}\"", v + 1),
            VertexColor::Black => "shape=circle, style=filled, fillcolor=black, label=\"\"".to_string(),
            VertexColor::White => "shape=circle, style=filled, fillcolor=white, label=\"\"".to_string(),
        };
        writeln!(out, "  v{v} [{attrs}];").unwrap();
    }
    for (d, e) in g.edges() {
        let label = match labels.on_dart(&g, d) {
            &[i, j] => format!("[{i},{j}]"),
            other => format!("{other:?}").replace(' ', ""),
        };
        writeln!(out, "  v{} -- v{} [label=\"{label}\"];", g.dart_vertex(d), g.dart_vertex(e)).unwrap();
    }
    out.push_str("}\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;

    use super::*;
    use crate::plabic::test_graphs::parallel_pair_gadget;

    #[test]
    fn json_round_trip() {
        let g = parallel_pair_gadget();
        let back = PlabicGraph::from_json(&g.to_json()).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn json_rejects_bad_edges() {
        let mut j = GraphJson::from(&parallel_pair_gadget());
        j.edges.pop();
        assert!(PlabicGraph::try_from(j).is_err());
        assert!(matches!(PlabicGraph::from_json("{"), Err(PlabicError::Json(_))));
    }

    #[test]
    fn dot_marks_colors_and_labels() {
        let g = PlabicGraph::lollipops(2, &BTreeSet::from([1]));
        let dot = to_dot(&g).unwrap();
        assert!(dot.starts_with("// trip permutation (1,2) ccw fixed {1}"));
        assert!(dot.contains("shape=square"));
        assert!(dot.contains("fillcolor=white"));
        assert!(dot.contains("fillcolor=black"));
        let dot = to_dot(&parallel_pair_gadget()).unwrap();
        assert!(dot.contains("label=\"[1,1]\"") || dot.contains("[1,2]"));
    }
}

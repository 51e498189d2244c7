//! Structure graphs, state graphs and faces of planar rotation systems.

mod faces;
mod parse;
mod state;

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use faces::{Dart, Face, Parity};
pub use parse::parse_graph;
pub use state::{DirectedEdge, EdgeKind, StateGraph};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub a: usize,
    pub b: usize,
    pub label: String,
}

impl Edge {
    /// Endpoint opposite to `v`.
    pub fn other(&self, v: usize) -> usize {
        if v == self.a {
            self.b
        } else {
            self.a
        }
    }
}

/// Undirected simple graph with an optional rotation system.
#[derive(Clone, Debug)]
pub struct StructureGraph {
    vertex_count: usize,
    edges: Vec<Edge>,
    rotation: Option<Vec<Vec<usize>>>,
    outer_face_hint: Option<Vec<String>>,
    incidence: Vec<Vec<usize>>,
    by_label: HashMap<String, usize>,
}

impl StructureGraph {
    /// Validates and assembles a graph. `rotation[v]` lists edge indices
    /// incident to `v` in cyclic order.
    pub fn new(vertex_count: usize, edges: Vec<Edge>, rotation: Option<Vec<Vec<usize>>>, outer_face_hint: Option<Vec<String>>) -> Result<Self> {
        if vertex_count == 0 {
            return Err(Error::InvalidInput("graph needs at least one vertex".into()));
        }
        let mut by_label = HashMap::new();
        let mut seen_pairs = HashMap::new();
        let mut file_order = vec![Vec::new(); vertex_count];
        for (i, e) in edges.iter().enumerate() {
            for v in [e.a, e.b] {
                if v >= vertex_count {
                    return Err(Error::UnknownVertex(v));
                }
            }
            if e.a == e.b {
                return Err(Error::NotSimple(format!("edge `{}` is a loop", e.label)));
            }
            if by_label.insert(e.label.clone(), i).is_some() {
                return Err(Error::DuplicateLabel(e.label.clone()));
            }
            let key = (e.a.min(e.b), e.a.max(e.b));
            if let Some(prev) = seen_pairs.insert(key, i) {
                return Err(Error::NotSimple(format!("edges `{}` and `{}` are parallel", edges[prev].label, e.label)));
            }
            file_order[e.a].push(i);
            file_order[e.b].push(i);
        }

        let incidence = match &rotation {
            Some(rot) => {
                if rot.len() != vertex_count {
                    return Err(Error::InvalidRotation { vertex: rot.len().min(vertex_count), message: format!("expected {} vertex entries", vertex_count) });
                }
                for (v, order) in rot.iter().enumerate() {
                    let mut got = order.clone();
                    got.sort_unstable();
                    let mut want = file_order[v].clone();
                    want.sort_unstable();
                    if got != want {
                        return Err(Error::InvalidRotation { vertex: v, message: "must list every incident edge exactly once".into() });
                    }
                }
                rot.clone()
            }
            None => file_order,
        };

        let g = StructureGraph { vertex_count, edges, rotation, outer_face_hint, incidence, by_label };
        if !g.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(g)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> &Edge {
        &self.edges[e]
    }

    pub fn edge_by_label(&self, label: &str) -> Result<usize> {
        self.by_label.get(label).copied().ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn has_rotation(&self) -> bool {
        self.rotation.is_some()
    }

    pub fn outer_face_hint(&self) -> Option<&[String]> {
        self.outer_face_hint.as_deref()
    }

    /// Incident edges of `v`: rotation order when an embedding is present,
    /// file order otherwise.
    pub fn incident(&self, v: usize) -> &[usize] {
        &self.incidence[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.incidence[v].len()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.vertex_count).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn is_regular(&self, d: usize) -> bool {
        (0..self.vertex_count).all(|v| self.degree(v) == d)
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.incidence[v].iter().map(move |&e| self.edges[e].other(v))
    }

    fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.vertex_count];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for w in self.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == self.vertex_count
    }

    /// Breadth-first 2-coloring. Returns the side (0 or 1) of every vertex
    /// when the graph is bipartite.
    pub fn bipartition(&self) -> Option<Vec<u8>> {
        let mut side = vec![u8::MAX; self.vertex_count];
        side[0] = 0;
        let mut queue = VecDeque::from([0]);
        while let Some(v) = queue.pop_front() {
            for w in self.neighbors(v) {
                if side[w] == u8::MAX {
                    side[w] = 1 - side[v];
                    queue.push_back(w);
                } else if side[w] == side[v] {
                    return None;
                }
            }
        }
        Some(side)
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    /// Shortest-path distances from a set of source vertices.
    pub fn distances_from(&self, sources: &[usize]) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.vertex_count];
        let mut queue = VecDeque::new();
        for &s in sources {
            if dist[s] != 0 {
                dist[s] = 0;
                queue.push_back(s);
            }
        }
        while let Some(v) = queue.pop_front() {
            for w in self.neighbors(v) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Writes the graph back in the text file format.
    pub fn to_text(&self) -> String {
        let mut out = format!("vertices {}\n", self.vertex_count);
        for e in &self.edges {
            out.push_str(&format!("edge {} {} {}\n", e.label, e.a, e.b));
        }
        if let Some(rot) = &self.rotation {
            for (v, order) in rot.iter().enumerate() {
                if order.is_empty() {
                    continue;
                }
                let labels: Vec<&str> = order.iter().map(|&e| self.edges[e].label.as_str()).collect();
                out.push_str(&format!("rotation {}: {}\n", v, labels.join(" ")));
            }
        }
        if let Some(hint) = &self.outer_face_hint {
            out.push_str(&format!("outer_face: {}\n", hint.join(",")));
        }
        out
    }
}

/// Set of open structure edges.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Configuration {
    open: Vec<bool>,
}

impl Configuration {
    pub fn all(g: &StructureGraph) -> Self {
        Configuration { open: vec![true; g.edge_count()] }
    }

    pub fn empty(g: &StructureGraph) -> Self {
        Configuration { open: vec![false; g.edge_count()] }
    }

    pub fn from_mask(open: Vec<bool>) -> Self {
        Configuration { open }
    }

    pub fn from_labels<S: AsRef<str>>(g: &StructureGraph, labels: &[S]) -> Result<Self> {
        let mut c = Configuration::empty(g);
        for l in labels {
            c.open[g.edge_by_label(l.as_ref())?] = true;
        }
        Ok(c)
    }

    pub fn is_open(&self, e: usize) -> bool {
        self.open[e]
    }

    pub fn set(&mut self, e: usize, open: bool) {
        self.open[e] = open;
    }

    pub fn mask(&self) -> &[bool] {
        &self.open
    }

    pub fn len(&self) -> usize {
        self.open.len()
    }

    pub fn is_empty(&self) -> bool {
        self.open.is_empty()
    }

    pub fn open_count(&self) -> usize {
        self.open.iter().filter(|&&o| o).count()
    }

    pub fn labels<'g>(&self, g: &'g StructureGraph) -> Vec<&'g str> {
        (0..self.open.len()).filter(|&e| self.open[e]).map(|e| g.edge(e).label.as_str()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn corpus(name: &str) -> StructureGraph {
        let path = format!("{}/corpus/{}.graph", env!("CARGO_MANIFEST_DIR"), name);
        parse_graph(&std::fs::read_to_string(path).unwrap()).unwrap()
    }

    #[test]
    fn path_graph_counts() {
        let g = corpus("path3");
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edge_count(), 2);
        assert!(g.is_bipartite());
    }

    #[test]
    fn cube_is_simple_bipartite_cubic() {
        let g = corpus("cube");
        assert_eq!((g.vertex_count(), g.edge_count()), (8, 12));
        assert!(g.is_regular(3));
        let side = g.bipartition().unwrap();
        for e in g.edges() {
            assert_ne!(side[e.a], side[e.b]);
        }
    }

    #[test]
    fn odd_cycles_are_not_bipartite() {
        assert!(!corpus("triangle").is_bipartite());
        assert!(!corpus("k4").is_bipartite());
        assert!(!corpus("petersen").is_bipartite());
        assert!(corpus("k33").is_bipartite());
    }

    #[test]
    fn single_vertex_is_trivial() {
        let g = corpus("single");
        assert_eq!((g.vertex_count(), g.edge_count()), (1, 0));
        assert!(g.is_bipartite());
    }

    #[test]
    fn configuration_labels_round_trip() {
        let g = corpus("path3");
        let k = Configuration::from_labels(&g, &["C"]).unwrap();
        assert_eq!(k.labels(&g), vec!["C"]);
        assert!(Configuration::from_labels(&g, &["Z"]).is_err());
    }

    #[test]
    fn text_round_trip() {
        let g = corpus("cube");
        let h = parse_graph(&g.to_text()).unwrap();
        assert_eq!(g.edges(), h.edges());
        for v in 0..8 {
            assert_eq!(g.incident(v), h.incident(v));
        }
    }
}

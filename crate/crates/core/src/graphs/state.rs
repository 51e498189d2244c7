use std::ops::Range;

use super::{Dart, StructureGraph};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeKind {
    /// One direction of structure edge `edge`.
    Paired { edge: usize },
    /// Unpaired loop added for degree padding.
    Loop,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DirectedEdge {
    pub origin: usize,
    /// Equals `origin` for loops.
    pub head: usize,
    pub kind: EdgeKind,
    pub partner: usize,
}

/// Directed-edge basis of the walk.
///
/// Indices run over vertices in file order; within a vertex the outgoing
/// edges follow the rotation (or file) order and the added loops come last.
#[derive(Clone, Debug)]
pub struct StateGraph {
    structure: StructureGraph,
    edges: Vec<DirectedEdge>,
    offsets: Vec<usize>,
    // per structure edge: directed index leaving endpoint a, leaving b
    pairs: Vec<(usize, usize)>,
}

impl StateGraph {
    /// Builds the state graph, padding every vertex with unpaired loops up
    /// to `target_degree` when given.
    pub fn new(g: &StructureGraph, target_degree: Option<usize>) -> Result<Self> {
        let n = g.vertex_count();
        let mut edges = Vec::new();
        let mut offsets = Vec::with_capacity(n + 1);
        let mut pairs = vec![(usize::MAX, usize::MAX); g.edge_count()];
        for v in 0..n {
            offsets.push(edges.len());
            let deg = g.degree(v);
            let target = match target_degree {
                Some(t) if deg > t => return Err(Error::DegreeExceeded { vertex: v, degree: deg, limit: t }),
                Some(t) => t,
                None => deg,
            };
            for &e in g.incident(v) {
                let idx = edges.len();
                let se = g.edge(e);
                if se.a == v {
                    pairs[e].0 = idx;
                } else {
                    pairs[e].1 = idx;
                }
                edges.push(DirectedEdge { origin: v, head: se.other(v), kind: EdgeKind::Paired { edge: e }, partner: usize::MAX });
            }
            for _ in deg..target {
                let idx = edges.len();
                edges.push(DirectedEdge { origin: v, head: v, kind: EdgeKind::Loop, partner: idx });
            }
        }
        offsets.push(edges.len());
        for &(i, j) in &pairs {
            edges[i].partner = j;
            edges[j].partner = i;
        }
        Ok(StateGraph { structure: g.clone(), edges, offsets, pairs })
    }

    pub fn structure(&self) -> &StructureGraph {
        &self.structure
    }

    /// Hilbert-space dimension (number of directed edges).
    pub fn dim(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn edges(&self) -> &[DirectedEdge] {
        &self.edges
    }

    pub fn edge(&self, i: usize) -> &DirectedEdge {
        &self.edges[i]
    }

    pub fn partner(&self, i: usize) -> usize {
        self.edges[i].partner
    }

    pub fn is_loop(&self, i: usize) -> bool {
        self.edges[i].kind == EdgeKind::Loop
    }

    pub fn structure_edge(&self, i: usize) -> Option<usize> {
        match self.edges[i].kind {
            EdgeKind::Paired { edge } => Some(edge),
            EdgeKind::Loop => None,
        }
    }

    /// Outgoing edge indices of `v`, in slot order.
    pub fn outgoing(&self, v: usize) -> Range<usize> {
        self.offsets[v]..self.offsets[v + 1]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.vertex_count()).map(|v| self.degree(v)).collect()
    }

    /// Position of edge `i` among the outgoing edges of its origin.
    pub fn slot(&self, i: usize) -> usize {
        i - self.offsets[self.edges[i].origin]
    }

    pub fn loops(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.is_loop(i)).collect()
    }

    pub fn loop_count(&self) -> usize {
        self.edges.iter().filter(|e| e.kind == EdgeKind::Loop).count()
    }

    /// The two directed edges of structure edge `e`, leaving endpoint `a`
    /// and endpoint `b` respectively.
    pub fn pair(&self, e: usize) -> (usize, usize) {
        self.pairs[e]
    }

    /// Directed edge leaving `v` along structure edge `e`.
    pub fn directed(&self, e: usize, from: usize) -> usize {
        let (i, j) = self.pairs[e];
        if self.edges[i].origin == from {
            i
        } else {
            j
        }
    }

    pub fn dart_index(&self, d: &Dart) -> usize {
        self.directed(d.edge, d.tail)
    }

    /// Human-readable label: `LABEL@v` for paired edges, `loopK@v` for loops.
    pub fn label(&self, i: usize) -> String {
        let e = &self.edges[i];
        match e.kind {
            EdgeKind::Paired { edge } => format!("{}@{}", self.structure.edge(edge).label, e.origin),
            EdgeKind::Loop => {
                let k = i - self.offsets[e.origin] - self.structure.degree(e.origin);
                format!("loop{}@{}", k, e.origin)
            }
        }
    }

    /// Projector-diagonal indicator of the directed edges leaving any vertex
    /// in `vertices`.
    pub fn vertex_mask(&self, vertices: &[usize]) -> Vec<bool> {
        let mut mask = vec![false; self.dim()];
        for &v in vertices {
            for i in self.outgoing(v) {
                mask[i] = true;
            }
        }
        mask
    }
}

#[cfg(test)]
mod tests {
    use super::super::parse_graph;
    use super::*;

    fn corpus(name: &str) -> StructureGraph {
        let path = format!("{}/corpus/{}.graph", env!("CARGO_MANIFEST_DIR"), name);
        parse_graph(&std::fs::read_to_string(path).unwrap()).unwrap()
    }

    fn check_involution(sg: &StateGraph) {
        for i in 0..sg.dim() {
            let p = sg.partner(i);
            assert_eq!(sg.partner(p), i);
            assert_eq!(p == i, sg.is_loop(i));
            if !sg.is_loop(i) {
                assert_eq!(sg.edge(i).origin, sg.edge(p).head);
                assert_eq!(sg.structure_edge(i), sg.structure_edge(p));
            }
        }
        let total: usize = sg.degrees().iter().sum();
        assert_eq!(total, sg.dim());
        assert_eq!(sg.dim() - sg.loop_count(), 2 * sg.structure().edge_count());
    }

    #[test]
    fn path_with_target_two() {
        let sg = StateGraph::new(&corpus("path3"), Some(2)).unwrap();
        assert_eq!(sg.dim(), 6);
        assert_eq!(sg.loops(), vec![1, 5]);
        let labels: Vec<String> = (0..6).map(|i| sg.label(i)).collect();
        assert_eq!(labels, ["B@0", "loop0@0", "C@1", "B@1", "C@2", "loop0@2"]);
        assert_eq!(sg.partner(0), 3);
        assert_eq!(sg.partner(2), 4);
        check_involution(&sg);
    }

    #[test]
    fn cube_has_no_loops() {
        let sg = StateGraph::new(&corpus("cube"), Some(3)).unwrap();
        assert_eq!(sg.dim(), 24);
        assert_eq!(sg.loop_count(), 0);
        check_involution(&sg);
    }

    #[test]
    fn single_vertex_gets_three_loops() {
        let sg = StateGraph::new(&corpus("single"), Some(3)).unwrap();
        assert_eq!(sg.dim(), 3);
        assert!((0..3).all(|i| sg.partner(i) == i));
    }

    #[test]
    fn degree_limit_is_enforced() {
        assert!(matches!(StateGraph::new(&corpus("cube"), Some(2)), Err(Error::DegreeExceeded { limit: 2, .. })));
    }

    #[test]
    fn corpus_involutions() {
        for name in ["dodecahedron", "honeycomb", "triangle", "k4", "prism", "noncolorable", "petersen", "k33"] {
            check_involution(&StateGraph::new(&corpus(name), Some(3)).unwrap());
            check_involution(&StateGraph::new(&corpus(name), None).unwrap());
        }
    }
}

use super::StructureGraph;
use crate::error::{Error, Result};

/// Structure edge traversed from `tail` to `head`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Dart {
    pub edge: usize,
    pub tail: usize,
    pub head: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Odd,
    Even,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    /// Boundary walk in tracing order.
    pub darts: Vec<Dart>,
    pub is_outer: bool,
}

impl Face {
    pub fn len(&self) -> usize {
        self.darts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.darts.is_empty()
    }

    pub fn parity(&self) -> Parity {
        if self.darts.len().is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn is_odd(&self) -> bool {
        self.parity() == Parity::Odd
    }

    /// Vertices visited, one per dart (tails).
    pub fn vertices(&self) -> Vec<usize> {
        self.darts.iter().map(|d| d.tail).collect()
    }

    pub fn labels<'g>(&self, g: &'g StructureGraph) -> Vec<&'g str> {
        self.darts.iter().map(|d| g.edge(d.edge).label.as_str()).collect()
    }
}

impl StructureGraph {
    fn dart_id(&self, edge: usize, tail: usize, offsets: &[usize]) -> usize {
        let pos = self.incident(tail).iter().position(|&e| e == edge).expect("incident edge");
        offsets[tail] + pos
    }

    /// Traces the faces of the rotation system. From dart `u -> v` the
    /// boundary continues with the successor of `v -> u` in the rotation at
    /// `v`. Faces are numbered by their smallest dart, darts ordered by
    /// vertex and then rotation position.
    pub fn faces(&self) -> Result<Vec<Face>> {
        // cyclic orders of at most two edges are unique
        if !self.has_rotation() && self.max_degree() > 2 {
            return Err(Error::MissingRotation);
        }
        let n = self.vertex_count();
        let mut offsets = Vec::with_capacity(n + 1);
        let mut darts = Vec::new();
        for v in 0..n {
            offsets.push(darts.len());
            for &e in self.incident(v) {
                darts.push(Dart { edge: e, tail: v, head: self.edge(e).other(v) });
            }
        }
        offsets.push(darts.len());

        let mut faces = Vec::new();
        if darts.is_empty() {
            faces.push(Face { darts: Vec::new(), is_outer: true });
        }
        let mut visited = vec![false; darts.len()];
        for start in 0..darts.len() {
            if visited[start] {
                continue;
            }
            let mut boundary = Vec::new();
            let mut cur = start;
            while !visited[cur] {
                visited[cur] = true;
                let d = darts[cur];
                boundary.push(d);
                let rot = self.incident(d.head);
                let pos = rot.iter().position(|&e| e == d.edge).expect("incident edge");
                let next_edge = rot[(pos + 1) % rot.len()];
                cur = self.dart_id(next_edge, d.head, &offsets);
            }
            if cur != start {
                return Err(Error::InvalidRotation { vertex: darts[start].tail, message: "face tracing did not close".into() });
            }
            faces.push(Face { darts: boundary, is_outer: false });
        }

        let (f, e) = (faces.len(), self.edge_count());
        if f + n != e + 2 {
            return Err(Error::NonPlanarEmbedding { faces: f, vertices: n, edges: e });
        }

        let outer = match self.outer_face_hint() {
            Some(hint) => self.match_hint(&faces, hint)?,
            None => {
                let min_edge = |f: &Face| f.darts.iter().map(|d| d.edge).min().unwrap_or(usize::MAX);
                (0..faces.len()).min_by_key(|&i| (std::cmp::Reverse(faces[i].len()), min_edge(&faces[i]))).unwrap_or(0)
            }
        };
        faces[outer].is_outer = true;
        Ok(faces)
    }

    fn match_hint(&self, faces: &[Face], hint: &[String]) -> Result<usize> {
        let cyclic = faces.iter().position(|f| {
            let labels = f.labels(self);
            labels.len() == hint.len() && (0..labels.len()).any(|s| (0..labels.len()).all(|k| labels[(s + k) % labels.len()] == hint[k]))
        });
        if let Some(i) = cyclic {
            return Ok(i);
        }
        let mut want: Vec<&str> = hint.iter().map(String::as_str).collect();
        want.sort_unstable();
        faces
            .iter()
            .position(|f| {
                let mut got = f.labels(self);
                got.sort_unstable();
                got == want
            })
            .ok_or(Error::UnknownOuterFace)
    }

    /// The outer face (by hint or longest boundary).
    pub fn outer_face(&self) -> Result<Face> {
        Ok(self.faces()?.into_iter().find(|f| f.is_outer).expect("one outer face"))
    }
}

#[cfg(test)]
mod tests {
    use super::super::parse_graph;
    use super::*;
    use std::collections::HashSet;

    fn corpus(name: &str) -> StructureGraph {
        let path = format!("{}/corpus/{}.graph", env!("CARGO_MANIFEST_DIR"), name);
        parse_graph(&std::fs::read_to_string(path).unwrap()).unwrap()
    }

    fn each_dart_once(g: &StructureGraph, faces: &[Face]) {
        let mut seen = HashSet::new();
        for f in faces {
            for (k, d) in f.darts.iter().enumerate() {
                assert!(seen.insert(*d));
                assert_eq!(d.head, f.darts[(k + 1) % f.len()].tail);
            }
        }
        assert_eq!(seen.len(), 2 * g.edge_count());
        assert_eq!(faces.iter().filter(|f| f.is_outer).count(), 1);
    }

    #[test]
    fn cube_faces_are_quadrilaterals() {
        let g = corpus("cube");
        let faces = g.faces().unwrap();
        assert_eq!(faces.len(), 6);
        assert!(faces.iter().all(|f| f.len() == 4 && f.parity() == Parity::Even));
        each_dart_once(&g, &faces);
        let outer = g.outer_face().unwrap();
        let mut labels = outer.labels(&g);
        labels.sort_unstable();
        assert_eq!(labels, ["x45", "x67", "y46", "y57"]);
    }

    #[test]
    fn triangle_has_two_odd_faces() {
        let g = corpus("triangle");
        let faces = g.faces().unwrap();
        assert_eq!(faces.len(), 2);
        assert!(faces.iter().all(Face::is_odd));
        each_dart_once(&g, &faces);
    }

    #[test]
    fn honeycomb_inner_faces_are_hexagons() {
        let g = corpus("honeycomb");
        let faces = g.faces().unwrap();
        each_dart_once(&g, &faces);
        let inner: Vec<&Face> = faces.iter().filter(|f| !f.is_outer).collect();
        assert_eq!(inner.len(), 7);
        assert!(inner.iter().all(|f| f.len() == 6));
    }

    #[test]
    fn trees_and_points() {
        let path = corpus("path3").faces().unwrap();
        assert_eq!(path.len(), 1);
        assert_eq!(path[0].len(), 4);
        let single = corpus("single").faces().unwrap();
        assert_eq!(single.len(), 1);
        assert!(single[0].is_outer && single[0].is_empty());
    }

    #[test]
    fn corpus_embeddings_satisfy_euler() {
        for name in ["dodecahedron", "hexagon", "k4", "prism", "noncolorable", "line5"] {
            let g = corpus(name);
            each_dart_once(&g, &g.faces().unwrap());
        }
        assert!(matches!(corpus("petersen").faces(), Err(Error::MissingRotation)));
    }

    #[test]
    fn non_planar_rotation_is_rejected() {
        // tetrahedron with the rotation at vertex 0 reversed
        let text = "vertices 4\nedge a 0 1\nedge b 1 2\nedge c 2 0\nedge d 0 3\nedge e 1 3\nedge f 2 3\n\
                    rotation 0: a c d\nrotation 1: b e a\nrotation 2: c f b\nrotation 3: f d e\n";
        let g = parse_graph(text).unwrap();
        assert!(matches!(g.faces(), Err(Error::NonPlanarEmbedding { .. })));
    }
}

use std::collections::BTreeSet;

use super::{check_cubic_state_graph, check_max_degree};
use crate::error::Result;
use crate::graphs::{Face, StateGraph, StructureGraph};
use crate::linalg::{self, CMatrix, CVector, C64};

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum TrappedKind {
    /// Alternating signs around an even inner face.
    A,
    /// Two odd faces joined by a path.
    B,
    /// Two loops joined by a path.
    C,
    /// A loop joined to an odd face.
    D,
}

/// Common eigenstate at `-1` of the reflecting Grover walk with integer
/// entries over the directed-edge basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrappedState {
    pub kind: TrappedKind,
    pub values: Vec<i64>,
}

impl TrappedState {
    /// Entries as a complex vector, not normalized.
    pub fn raw(&self) -> CVector {
        CVector::from_iterator(self.values.len(), self.values.iter().map(|&x| C64::from(x as f64)))
    }

    pub fn vector(&self) -> CVector {
        let v = self.raw();
        let n = v.norm();
        v / C64::from(n)
    }

    /// Structure edges carrying nonzero entries.
    pub fn support_edges(&self, sg: &StateGraph) -> Vec<usize> {
        let set: BTreeSet<usize> = (0..self.values.len()).filter(|&i| self.values[i] != 0).filter_map(|i| sg.structure_edge(i)).collect();
        set.into_iter().collect()
    }

    pub fn support_loops(&self, sg: &StateGraph) -> Vec<usize> {
        (0..self.values.len()).filter(|&i| self.values[i] != 0 && sg.is_loop(i)).collect()
    }

    /// Exact check of the coin condition (entries at every vertex sum to
    /// zero) and the shift condition (paired entries agree).
    pub fn satisfies_conditions(&self, sg: &StateGraph) -> bool {
        let coin = (0..sg.vertex_count()).all(|v| sg.outgoing(v).map(|i| self.values[i]).sum::<i64>() == 0);
        let shift = (0..sg.dim()).all(|i| self.values[i] == self.values[sg.partner(i)]);
        coin && shift && self.values.iter().any(|&x| x != 0)
    }
}

#[derive(Clone, Copy, Debug)]
enum Step {
    Edge(usize),
    Loop(usize),
}

fn accumulate(sg: &StateGraph, steps: &[Step]) -> Vec<i64> {
    let mut values = vec![0i64; sg.dim()];
    let mut sign = 1;
    for s in steps {
        match *s {
            Step::Edge(e) => {
                let (i, j) = sg.pair(e);
                values[i] += sign;
                values[j] += sign;
            }
            Step::Loop(l) => values[l] += sign,
        }
        sign = -sign;
    }
    // positive on the lowest structure edge, or on the lowest loop
    let lead = (0..sg.structure().edge_count())
        .map(|e| values[sg.pair(e).0])
        .find(|&x| x != 0)
        .or_else(|| sg.loops().into_iter().map(|l| values[l]).find(|&x| x != 0));
    if lead.is_some_and(|x| x < 0) {
        values.iter_mut().for_each(|x| *x = -*x);
    }
    values
}

/// Edges of `face` as a closed walk starting at vertex `u`.
fn face_walk(face: &Face, u: usize) -> Vec<Step> {
    let start = face.darts.iter().position(|d| d.tail == u).expect("vertex on face");
    (0..face.len()).map(|k| Step::Edge(face.darts[(start + k) % face.len()].edge)).collect()
}

/// Shortest path from `from` to `to` as `(start, end, edges)`. Ties go to
/// the lexicographically smallest label sequence; a shared vertex gives
/// the empty path at the smallest such vertex.
fn connect(g: &StructureGraph, from: &BTreeSet<usize>, to: &BTreeSet<usize>) -> (usize, usize, Vec<usize>) {
    if let Some(&v) = from.intersection(to).next() {
        return (v, v, Vec::new());
    }
    let targets: Vec<usize> = to.iter().copied().collect();
    let dist = g.distances_from(&targets);
    let d = from.iter().map(|&v| dist[v]).min().expect("nonempty");
    let mut current: Vec<usize> = from.iter().copied().filter(|&v| dist[v] == d).collect();
    let mut path = Vec::with_capacity(d);
    let mut start = None;
    while dist[current[0]] > 0 {
        let mut best: Option<(&str, usize, usize, usize)> = None;
        for &v in &current {
            for &e in g.incident(v) {
                let w = g.edge(e).other(v);
                if dist[w] + 1 == dist[v] {
                    let label = g.edge(e).label.as_str();
                    if best.is_none_or(|b| label < b.0) {
                        best = Some((label, e, v, w));
                    }
                }
            }
        }
        let (_, e, v, w) = best.expect("distance decreases");
        start.get_or_insert(v);
        path.push(e);
        current = vec![w];
    }
    (start.expect("nonempty path"), current[0], path)
}

fn face_vertices(face: &Face) -> BTreeSet<usize> {
    face.vertices().into_iter().collect()
}

/// Basis of the localized common eigenstates at `-1`.
///
/// Inner even faces give A-type states. Without loops, B-type states join
/// the first odd inner face to every other one. With loops and no odd inner
/// face, C-type states join the first loop to every other loop; with loops
/// and odd faces, the B-type states are completed by one D-type state per
/// loop through the first odd face. The outer face is never used.
pub fn trapped_basis(sg: &StateGraph) -> Result<Vec<TrappedState>> {
    check_cubic_state_graph(sg)?;
    let g = sg.structure();
    let faces = g.faces()?;
    let inner: Vec<&Face> = faces.iter().filter(|f| !f.is_outer).collect();
    let odd: Vec<&Face> = inner.iter().copied().filter(|f| f.is_odd()).collect();
    let loops = sg.loops();
    let mut out = Vec::new();

    for f in inner.iter().filter(|f| !f.is_odd()) {
        let steps = face_walk(f, f.darts[0].tail);
        out.push(TrappedState { kind: TrappedKind::A, values: accumulate(sg, &steps) });
    }

    if let Some((first, rest)) = odd.split_first() {
        let fv = face_vertices(first);
        for other in rest {
            let (u, w, path) = connect(g, &fv, &face_vertices(other));
            let mut steps = face_walk(first, u);
            steps.extend(path.iter().map(|&e| Step::Edge(e)));
            steps.extend(face_walk(other, w));
            steps.extend(path.iter().rev().map(|&e| Step::Edge(e)));
            out.push(TrappedState { kind: TrappedKind::B, values: accumulate(sg, &steps) });
        }
        for &l in &loops {
            let x = sg.edge(l).origin;
            let (_, u, path) = connect(g, &BTreeSet::from([x]), &fv);
            let mut steps = vec![Step::Loop(l)];
            steps.extend(path.iter().map(|&e| Step::Edge(e)));
            steps.extend(face_walk(first, u));
            steps.extend(path.iter().rev().map(|&e| Step::Edge(e)));
            steps.push(Step::Loop(l));
            out.push(TrappedState { kind: TrappedKind::D, values: accumulate(sg, &steps) });
        }
    } else if let Some((&l0, rest)) = loops.split_first() {
        let x0 = sg.edge(l0).origin;
        for &l in rest {
            let x = sg.edge(l).origin;
            let (_, _, path) = connect(g, &BTreeSet::from([x0]), &BTreeSet::from([x]));
            let mut steps = vec![Step::Loop(l0)];
            steps.extend(path.iter().map(|&e| Step::Edge(e)));
            steps.push(Step::Loop(l));
            out.push(TrappedState { kind: TrappedKind::C, values: accumulate(sg, &steps) });
        }
    }
    Ok(out)
}

/// `2 #V - #E`, plus one for bipartite 3-regular graphs.
pub fn trapped_dimension(g: &StructureGraph) -> Result<usize> {
    check_max_degree(g)?;
    let base = 2 * g.vertex_count() as i64 - g.edge_count() as i64;
    let extra = (g.is_regular(3) && g.is_bipartite()) as i64;
    Ok((base + extra).max(0) as usize)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct RankCheck {
    /// One coin row per vertex.
    pub rows: usize,
    pub rank: usize,
    pub deficiency: usize,
    /// Whether the graph is bipartite and needs no loops.
    pub predicted_dependent: bool,
}

impl RankCheck {
    pub fn dependent(&self) -> bool {
        self.deficiency > 0
    }

    pub fn consistent(&self) -> bool {
        self.deficiency <= 1 && self.dependent() == self.predicted_dependent
    }
}

/// Rank of the coin conditions at `-1` once the shift condition has merged
/// paired entries: one row per vertex, one column per structure edge and
/// per loop.
pub fn condition_rank_check(sg: &StateGraph) -> Result<RankCheck> {
    check_cubic_state_graph(sg)?;
    let g = sg.structure();
    let loops = sg.loops();
    let cols = g.edge_count() + loops.len();
    let mut m = CMatrix::zeros(sg.vertex_count(), cols);
    for (e, edge) in g.edges().iter().enumerate() {
        m[(edge.a, e)] = C64::from(1.0);
        m[(edge.b, e)] = C64::from(1.0);
    }
    for (k, &l) in loops.iter().enumerate() {
        m[(sg.edge(l).origin, g.edge_count() + k)] = C64::from(1.0);
    }
    let rank = linalg::rank(&m, 1e-10);
    Ok(RankCheck { rows: sg.vertex_count(), rank, deficiency: sg.vertex_count() - rank, predicted_dependent: g.is_bipartite() && loops.is_empty() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::parse_graph;

    fn state(name: &str) -> StateGraph {
        let path = format!("{}/corpus/{}.graph", env!("CARGO_MANIFEST_DIR"), name);
        let g = parse_graph(&std::fs::read_to_string(path).unwrap()).unwrap();
        StateGraph::new(&g, Some(3)).unwrap()
    }

    #[test]
    fn cube_left_face_signs() {
        let sg = state("cube");
        let basis = trapped_basis(&sg).unwrap();
        assert_eq!(basis.len(), 5);
        assert!(basis.iter().all(|s| s.kind == TrappedKind::A && s.satisfies_conditions(&sg)));
        let g = sg.structure();
        let left: BTreeSet<usize> = ["x01", "z15", "x45", "z04"].iter().map(|l| g.edge_by_label(l).unwrap()).collect();
        let state = basis.iter().find(|s| s.support_edges(&sg).into_iter().collect::<BTreeSet<_>>() == left).unwrap();
        for e in left {
            let want = if g.edge(e).label.starts_with('x') { 1 } else { -1 };
            let (i, j) = sg.pair(e);
            assert_eq!((state.values[i], state.values[j]), (want, want));
        }
    }

    #[test]
    fn counts_match_dimension() {
        for name in ["cube", "triangle", "single", "path3", "honeycomb", "dodecahedron", "k4", "prism", "noncolorable", "hexagon", "line5"] {
            let sg = state(name);
            let basis = trapped_basis(&sg).unwrap();
            assert_eq!(basis.len(), trapped_dimension(sg.structure()).unwrap(), "{name}");
            assert!(basis.iter().all(|s| s.satisfies_conditions(&sg)), "{name}");
            let m = linalg::from_columns(sg.dim(), &basis.iter().map(TrappedState::raw).collect::<Vec<_>>());
            assert_eq!(linalg::rank(&m, 1e-10), basis.len(), "{name}");
        }
    }

    #[test]
    fn triangle_uses_d_type() {
        let sg = state("triangle");
        let basis = trapped_basis(&sg).unwrap();
        assert_eq!(basis.len(), 3);
        assert!(basis.iter().all(|s| s.kind == TrappedKind::D));
    }

    #[test]
    fn rank_criterion() {
        let cube = condition_rank_check(&state("cube")).unwrap();
        assert!(cube.dependent() && cube.consistent());
        for name in ["triangle", "path3", "honeycomb", "dodecahedron", "k4", "petersen", "k33", "prism"] {
            let r = condition_rank_check(&state(name)).unwrap();
            assert!(r.consistent(), "{name}");
        }
        assert!(condition_rank_check(&state("k33")).unwrap().dependent());
        assert!(!condition_rank_check(&state("triangle")).unwrap().dependent());
    }
}
